import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";

import { describe, expect, it } from "vitest";

import { loadCsv, numericColumn, requireColumns, requireRows, SchemaError } from "../src/csv";

const FIXTURES = path.join(process.cwd(), "test", "fixtures");

describe("csv loading", () => {
  it("parses the trajectory schema", () => {
    const table = loadCsv(path.join(FIXTURES, "fig1", "trajectory.csv"));
    expect(table.columns.slice(0, 5)).toEqual(["trial", "n", "s2", "s3", "s4"]);
    expect(table.columns).toContain("s2_trunc_4");
    expect(table.rows.length).toBeGreaterThan(0);
    expect(typeof table.rows[0]["s2"]).toBe("number");
  });

  it("reports a schema diff for missing columns", () => {
    const table = loadCsv(path.join(FIXTURES, "pers", "persistence.csv"));
    let caught: SchemaError | undefined;
    try {
      requireColumns(table, ["trial", "n", "rescaled_max"], "persistence.csv");
    } catch (err) {
      caught = err as SchemaError;
    }
    expect(caught).toBeInstanceOf(SchemaError);
    expect(caught!.missing).toEqual(["trial", "rescaled_max"]);
    expect(caught!.message).toContain("missing columns: trial, rescaled_max");
    expect(caught!.message).toContain("found columns:");
  });

  it("turns nan cells into NaN numbers", () => {
    const table = loadCsv(path.join(FIXTURES, "pers", "persistence.csv"));
    const fixation = numericColumn(table, "fixation_fraction");
    expect(fixation.some((v) => Number.isNaN(v))).toBe(true);
    expect(fixation.some((v) => Number.isFinite(v))).toBe(true);
  });

  it("rejects header-only files", () => {
    const tmp = fs.mkdtempSync(path.join(os.tmpdir(), "plots-"));
    const file = path.join(tmp, "empty.csv");
    fs.writeFileSync(file, "trial,n,max_size,rescaled_max\n");
    const table = loadCsv(file);
    expect(() => requireRows(table, file)).toThrow(/no data rows/);
  });
});
