#!/usr/bin/env node
/**
 * perc-lab-plot: turn perc-lab CSV artifacts into SVG figures.
 *
 *   perc-lab-plot --input runs/fig1/rescaled_max.csv --kind density \
 *       --output fig1.svg
 *
 * The manifest defaults to manifest.json next to the input. Exit code 1
 * on schema mismatches (the error lists the column diff) or any other
 * validation failure; no image is written on error.
 */

import yargs from "yargs";

import { SchemaError } from "./csv";
import { PlotKind, render } from "./plots";

export function main(argv: string[]): number {
  let args;
  try {
    args = yargs(argv)
      .option("input", { type: "string", demandOption: true, describe: "input CSV path" })
      .option("output", { type: "string", demandOption: true, describe: "output SVG path" })
      .option("kind", {
        choices: ["density", "trajectory", "persistence", "ccdf"] as const,
        demandOption: true,
        describe: "plot kind",
      })
      .option("manifest", { type: "string", describe: "manifest.json path (default: beside input)" })
      .option("bandwidth", { type: "number", describe: "KDE bandwidth override (density)" })
      .option("field", { type: "string", describe: "trajectory y column (default s2)" })
      .strict()
      .exitProcess(false)
      .parseSync();
  } catch (err) {
    console.error((err as Error).message);
    return 1;
  }

  try {
    render({
      inputCsv: args.input,
      outputImage: args.output,
      kind: args.kind as PlotKind,
      manifestPath: args.manifest,
      bandwidth: args.bandwidth,
      field: args.field,
    });
    console.log(`wrote ${args.output}`);
    return 0;
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(err.message);
    } else {
      console.error(`error: ${(err as Error).message}`);
    }
    return 1;
  }
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
