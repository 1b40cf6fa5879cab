import { describe, expect, it } from "vitest";

import { gaussianKde, sampleStd, scottBandwidth } from "../src/kde";

describe("scott bandwidth", () => {
  it("matches sigma * n^(-1/5)", () => {
    const values = [1, 2, 3, 4, 5];
    const sigma = Math.sqrt(10 / 4); // sample variance of 1..5 is 2.5
    expect(sampleStd(values)).toBeCloseTo(sigma, 12);
    expect(scottBandwidth(values)).toBeCloseTo(sigma * Math.pow(5, -0.2), 12);
  });
});

describe("gaussian kde", () => {
  const values = [0.2, 0.5, 0.9, 1.4, 1.7, 2.3, 2.4, 3.1];

  it("integrates to one", () => {
    const { x, density } = gaussianKde(values);
    let integral = 0;
    for (let i = 1; i < x.length; i++) {
      integral += ((density[i] + density[i - 1]) / 2) * (x[i] - x[i - 1]);
    }
    expect(integral).toBeCloseTo(1.0, 2);
    expect(Math.min(...density)).toBeGreaterThanOrEqual(0);
  });

  it("respects a bandwidth override", () => {
    const wide = gaussianKde(values, 2.0);
    expect(wide.x[0]).toBeCloseTo(Math.min(...values) - 6.0, 9);
    expect(wide.x[wide.x.length - 1]).toBeCloseTo(Math.max(...values) + 6.0, 9);
  });

  it("rejects degenerate inputs", () => {
    expect(() => gaussianKde([1.0])).toThrow(/at least 2/);
    expect(() => gaussianKde([1.0, 1.0])).toThrow(/bandwidth/);
  });
});
