/**
 * Renderers for the four artifact kinds. Inputs are the documented CSV
 * schemas; outputs are standalone SVG files. Annotations and overlay
 * lines use manifest values verbatim (String() of the parsed number), so
 * a figure can be traced back to its run at a glance.
 */

import * as fs from "node:fs";

import { CsvTable, loadCsv, numericColumn, requireColumns, requireRows } from "./csv";
import { gaussianKde, sampleStd } from "./kde";
import { loadManifest, Manifest, manifestBeside } from "./manifest";
import { linearScale, linearTicks, logScale, logTicks, Scale, Svg } from "./svg";

export type PlotKind = "density" | "trajectory" | "persistence" | "ccdf";

export interface PlotJob {
  inputCsv: string;
  outputImage: string;
  kind: PlotKind;
  manifestPath?: string;
  bandwidth?: number;
  field?: string;
}

const WIDTH = 640;
const MARGIN = { left: 62, right: 20, top: 34, bottom: 42 };
const PANEL_HEIGHT = 150;

const SCHEMAS: Record<PlotKind, string[]> = {
  density: ["trial", "n", "max_size", "rescaled_max"],
  trajectory: ["trial", "n"],
  persistence: ["n", "K", "fraction", "stderr", "fixation_fraction"],
  ccdf: ["k", "ccdf"],
};

export function render(job: PlotJob): string {
  const table = loadCsv(job.inputCsv);
  const manifest = loadManifest(job.manifestPath ?? manifestBeside(job.inputCsv));
  let svg: string;
  switch (job.kind) {
    case "density":
      svg = renderDensity(table, manifest, job.inputCsv, job.bandwidth);
      break;
    case "trajectory":
      svg = renderTrajectory(table, manifest, job.inputCsv, job.field ?? "s2");
      break;
    case "persistence":
      svg = renderPersistence(table, manifest, job.inputCsv);
      break;
    case "ccdf":
      svg = renderCcdf(table, manifest, job.inputCsv);
      break;
  }
  fs.writeFileSync(job.outputImage, svg);
  return svg;
}

function drawXAxis(svg: Svg, scale: Scale, y: number, ticks: number[], label: string) {
  svg.line(scale(scale.domain[0]), y, scale(scale.domain[1]), y, { stroke: "black" });
  for (const t of ticks) {
    const x = scale(t);
    svg.line(x, y, x, y + 5, { stroke: "black" });
    svg.text(x, y + 18, String(t), { "text-anchor": "middle", "font-size": 11 });
  }
  const mid = (scale(scale.domain[0]) + scale(scale.domain[1])) / 2;
  svg.text(mid, y + 34, label, { "text-anchor": "middle", "font-size": 12 });
}

function drawYAxis(svg: Svg, scale: Scale, x: number, ticks: number[], label: string) {
  svg.line(x, scale(scale.domain[0]), x, scale(scale.domain[1]), { stroke: "black" });
  for (const t of ticks) {
    const y = scale(t);
    svg.line(x - 5, y, x, y, { stroke: "black" });
    svg.text(x - 8, y + 4, shortNumber(t), { "text-anchor": "end", "font-size": 11 });
  }
  svg.text(14, scale(scale.domain[1]) - 10, label, { "font-size": 12 });
}

function shortNumber(v: number): string {
  if (v !== 0 && (Math.abs(v) >= 10000 || Math.abs(v) < 0.001)) {
    return v.toExponential(0);
  }
  return String(Number(v.toPrecision(6)));
}

const SERIES_COLORS = [
  "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
];

export function renderDensity(
  table: CsvTable,
  manifest: Manifest,
  path: string,
  bandwidth?: number,
): string {
  requireColumns(table, SCHEMAS.density, path);
  requireRows(table, path);
  const byN = new Map<number, number[]>();
  const ns = numericColumn(table, "n");
  const values = numericColumn(table, "rescaled_max");
  ns.forEach((n, i) => {
    if (Number.isFinite(values[i])) {
      if (!byN.has(n)) byN.set(n, []);
      byN.get(n)!.push(values[i]);
    }
  });
  if (byN.size === 0) {
    throw new Error(`${path}: rescaled_max has no finite values to plot`);
  }
  const panels = [...byN.keys()].sort((a, b) => a - b);
  const height = MARGIN.top + panels.length * PANEL_HEIGHT + MARGIN.bottom;
  const svg = new Svg(WIDTH, height);
  svg.text(
    MARGIN.left,
    20,
    `rescaled maximal component density - pi = ${manifest.pi}, alpha = ${manifest.alpha}`,
    { "font-size": 13, "font-weight": "bold" },
  );
  panels.forEach((n, p) => {
    const top = MARGIN.top + p * PANEL_HEIGHT;
    const bottom = top + PANEL_HEIGHT - 36;
    const vals = byN.get(n)!;
    const panelLabel = `n = ${n} (${vals.length} trial${vals.length === 1 ? "" : "s"})`;
    if (vals.length < 2 || sampleStd(vals) === 0) {
      // too few points for a KDE: rug fallback
      const lo = Math.min(...vals) - 0.5;
      const hi = Math.max(...vals) + 0.5;
      const x = linearScale(lo, hi, MARGIN.left, WIDTH - MARGIN.right);
      for (const v of vals) {
        svg.line(x(v), bottom - 24, x(v), bottom, { stroke: "#1f77b4", class: "rug" });
      }
      drawXAxis(svg, x, bottom, linearTicks(lo, hi), "rescaled max size");
      svg.text(WIDTH - MARGIN.right, top + 14, `${panelLabel} - rug`, {
        "text-anchor": "end",
        "font-size": 11,
      });
      return;
    }
    const curve = gaussianKde(vals, bandwidth);
    const x = linearScale(
      curve.x[0],
      curve.x[curve.x.length - 1],
      MARGIN.left,
      WIDTH - MARGIN.right,
    );
    const yMax = Math.max(...curve.density);
    const y = linearScale(0, yMax * 1.05, bottom, top + 18);
    svg.polyline(
      curve.x.map((xi, i) => [x(xi), y(curve.density[i])] as [number, number]),
      { stroke: "#1f77b4", "stroke-width": 1.5, class: "kde" },
    );
    drawXAxis(svg, x, bottom, linearTicks(x.domain[0], x.domain[1]), "rescaled max size");
    drawYAxis(svg, y, MARGIN.left, linearTicks(0, yMax * 1.05, 4), "density");
    svg.text(WIDTH - MARGIN.right, top + 14, panelLabel, {
      "text-anchor": "end",
      "font-size": 11,
    });
  });
  return svg.toString();
}

export function renderTrajectory(
  table: CsvTable,
  manifest: Manifest,
  path: string,
  field: string,
): string {
  requireColumns(table, [...SCHEMAS.trajectory, field], path);
  requireRows(table, path);
  const trials = numericColumn(table, "trial");
  const ns = numericColumn(table, "n");
  const ys = numericColumn(table, field);
  const byTrial = new Map<number, Array<[number, number]>>();
  trials.forEach((t, i) => {
    if (Number.isFinite(ys[i])) {
      if (!byTrial.has(t)) byTrial.set(t, []);
      byTrial.get(t)!.push([ns[i], ys[i]]);
    }
  });
  if (byTrial.size === 0) {
    throw new Error(`${path}: column "${field}" has no finite values to plot`);
  }
  const finite = ys.filter(Number.isFinite);
  const overlay = field === "s2" && manifest.s2_inf !== null ? manifest.s2_inf : null;
  const yLo = Math.min(...finite, overlay ?? Infinity) * 0.95;
  const yHi = Math.max(...finite, overlay ?? -Infinity) * 1.05;
  const height = 420;
  const svg = new Svg(WIDTH, height);
  const x = logScale(Math.min(...ns), Math.max(...ns), MARGIN.left, WIDTH - MARGIN.right);
  const y = linearScale(yLo, yHi, height - MARGIN.bottom, MARGIN.top + 10);
  svg.text(MARGIN.left, 20, `${field} trajectories - pi = ${manifest.pi}`, {
    "font-size": 13,
    "font-weight": "bold",
  });
  [...byTrial.keys()].sort((a, b) => a - b).forEach((t, i) => {
    const pts = byTrial
      .get(t)!
      .sort((a, b) => a[0] - b[0])
      .map(([n, v]) => [x(n), y(v)] as [number, number]);
    svg.polyline(pts, {
      stroke: SERIES_COLORS[i % SERIES_COLORS.length],
      "stroke-width": 1,
      opacity: 0.7,
      class: "trial",
    });
  });
  if (overlay !== null) {
    svg.line(x(x.domain[0]), y(overlay), x(x.domain[1]), y(overlay), {
      stroke: "black",
      "stroke-dasharray": "6,3",
      class: "overlay",
    });
    svg.text(WIDTH - MARGIN.right, y(overlay) - 6, `s2_inf = ${overlay}`, {
      "text-anchor": "end",
      "font-size": 12,
      class: "overlay-label",
    });
  }
  drawXAxis(svg, x, height - MARGIN.bottom, logTicks(x.domain[0], x.domain[1]), "n");
  drawYAxis(svg, y, MARGIN.left, linearTicks(yLo, yHi), field);
  return svg.toString();
}

export function renderPersistence(
  table: CsvTable,
  manifest: Manifest,
  path: string,
): string {
  requireColumns(table, SCHEMAS.persistence, path);
  requireRows(table, path);
  const ns = numericColumn(table, "n");
  const ks = numericColumn(table, "K");
  const fractions = numericColumn(table, "fraction");
  const byK = new Map<number, Array<[number, number]>>();
  ks.forEach((k, i) => {
    if (!byK.has(k)) byK.set(k, []);
    byK.get(k)!.push([ns[i], fractions[i]]);
  });
  const height = 420;
  const svg = new Svg(WIDTH, height);
  const x = logScale(Math.min(...ns), Math.max(...ns), MARGIN.left, WIDTH - MARGIN.right);
  const y = linearScale(0, 1.05, height - MARGIN.bottom, MARGIN.top + 10);
  svg.text(
    MARGIN.left,
    20,
    `oldest-label persistence fraction - pi = ${manifest.pi}`,
    { "font-size": 13, "font-weight": "bold" },
  );
  [...byK.keys()].sort((a, b) => a - b).forEach((k, i) => {
    const pts = byK.get(k)!.sort((a, b) => a[0] - b[0]);
    const steps: Array<[number, number]> = [];
    pts.forEach(([n, f], j) => {
      if (j > 0) steps.push([x(n), steps[steps.length - 1][1]]);
      steps.push([x(n), y(f)]);
    });
    const color = SERIES_COLORS[i % SERIES_COLORS.length];
    svg.polyline(steps, { stroke: color, "stroke-width": 1.5, class: "persistence" });
    svg.text(WIDTH - MARGIN.right, MARGIN.top + 14 + 14 * i, `K = ${k}`, {
      "text-anchor": "end",
      "font-size": 11,
      fill: color,
    });
  });
  drawXAxis(svg, x, height - MARGIN.bottom, logTicks(x.domain[0], x.domain[1]), "n");
  drawYAxis(svg, y, MARGIN.left, [0, 0.25, 0.5, 0.75, 1], "fraction");
  return svg.toString();
}

export function renderCcdf(table: CsvTable, manifest: Manifest, path: string): string {
  requireColumns(table, SCHEMAS.ccdf, path);
  requireRows(table, path);
  const ks: number[] = [];
  const cs: number[] = [];
  numericColumn(table, "k").forEach((k, i) => {
    const c = numericColumn(table, "ccdf")[i];
    if (c > 0) {
      ks.push(k);
      cs.push(c);
    }
  });
  const height = 420;
  const svg = new Svg(WIDTH, height);
  const x = logScale(Math.min(...ks), Math.max(...ks) * 1.1, MARGIN.left, WIDTH - MARGIN.right);
  const y = logScale(Math.min(...cs) * 0.8, 1.2, height - MARGIN.bottom, MARGIN.top + 10);
  svg.text(
    MARGIN.left,
    20,
    `component-size tail P(|C| >= k) - pi = ${manifest.pi}`,
    { "font-size": 13, "font-weight": "bold" },
  );
  svg.polyline(
    ks.map((k, i) => [x(k), y(cs[i])] as [number, number]),
    { stroke: "#1f77b4", "stroke-width": 1.5, class: "ccdf" },
  );
  if (manifest.alpha !== null && manifest.alpha > 0) {
    // visual reference only: power law with the conjectured exponent
    const slope = -1 / manifest.alpha;
    const k0 = ks[0];
    const c0 = cs[0];
    const kEnd = ks[ks.length - 1];
    const cEnd = c0 * Math.pow(kEnd / k0, slope);
    svg.line(x(k0), y(c0), x(kEnd), y(Math.max(cEnd, y.domain[0])), {
      stroke: "gray",
      "stroke-dasharray": "4,3",
      class: "reference",
    });
    svg.text(
      WIDTH - MARGIN.right,
      MARGIN.top + 14,
      `reference slope -1/alpha, alpha = ${manifest.alpha}`,
      { "text-anchor": "end", "font-size": 11, fill: "gray" },
    );
  }
  drawXAxis(svg, x, height - MARGIN.bottom, logTicks(x.domain[0], x.domain[1]), "k");
  drawYAxis(svg, y, MARGIN.left, logTicks(y.domain[0], y.domain[1]), "ccdf");
  return svg.toString();
}
