/**
 * Run manifest access. Every overlay value a plot shows (the limiting
 * susceptibility line, the growth exponent annotation, the reference
 * slope) comes from here, never from recomputation, so a figure always
 * reflects the run that produced its data.
 */

import * as fs from "node:fs";
import * as path from "node:path";

export interface Manifest {
  tool_version: string;
  m: number;
  pi: number;
  alpha: number | null;
  pi_c: number;
  s2_inf: number | null;
  n_max: number | null;
  trials: number;
  base_seed: number;
  checkpoint_ratio: number | null;
  L_list: number[];
  K_persistence: number[];
  created_at: string;
}

const REQUIRED_FIELDS = ["m", "pi", "alpha", "pi_c", "s2_inf", "trials"];

export function loadManifest(manifestPath: string): Manifest {
  const parsed = JSON.parse(fs.readFileSync(manifestPath, "utf-8"));
  for (const field of REQUIRED_FIELDS) {
    if (!(field in parsed)) {
      throw new Error(`${manifestPath}: manifest is missing field "${field}"`);
    }
  }
  return parsed as Manifest;
}

/** Default manifest location: manifest.json next to the input CSV. */
export function manifestBeside(inputCsv: string): string {
  return path.join(path.dirname(inputCsv), "manifest.json");
}
