/**
 * One-dimensional Gaussian kernel density estimate with Scott's-rule
 * bandwidth (sigma * n^(-1/5)). Used for the rescaled maximal-component
 * density panels.
 */

export function sampleStd(values: number[]): number {
  const n = values.length;
  const mean = values.reduce((a, b) => a + b, 0) / n;
  const ss = values.reduce((a, b) => a + (b - mean) * (b - mean), 0);
  return Math.sqrt(ss / (n - 1));
}

export function scottBandwidth(values: number[]): number {
  return sampleStd(values) * Math.pow(values.length, -0.2);
}

export interface DensityCurve {
  x: number[];
  density: number[];
}

/**
 * Evaluate the KDE on an even grid covering the data plus three
 * bandwidths of margin. Callers must ensure n >= 2 and bandwidth > 0
 * (single points get a rug fallback instead).
 */
export function gaussianKde(
  values: number[],
  bandwidth?: number,
  gridSize = 256,
): DensityCurve {
  if (values.length < 2) {
    throw new Error(`KDE needs at least 2 points, got ${values.length}`);
  }
  const h = bandwidth ?? scottBandwidth(values);
  if (!(h > 0)) {
    throw new Error(`KDE bandwidth must be positive, got ${h}`);
  }
  const lo = Math.min(...values) - 3 * h;
  const hi = Math.max(...values) + 3 * h;
  const x: number[] = [];
  const density: number[] = [];
  const norm = 1 / (values.length * h * Math.sqrt(2 * Math.PI));
  for (let i = 0; i < gridSize; i++) {
    const xi = lo + ((hi - lo) * i) / (gridSize - 1);
    let acc = 0;
    for (const v of values) {
      const z = (xi - v) / h;
      acc += Math.exp(-0.5 * z * z);
    }
    x.push(xi);
    density.push(acc * norm);
  }
  return { x, density };
}
