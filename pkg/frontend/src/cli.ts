#!/usr/bin/env node
/** CLI: render curve CSVs or a Monte Carlo table CSV to SVG.
 *
 *   matfac-plots curves <file-or-dir>... --output out.svg
 *   matfac-plots table <mc.csv> --output out.svg
 */

import { readdirSync, statSync, writeFileSync } from "node:fs";
import { join } from "node:path";
import { parseCurveFile } from "./curves.js";
import { parseMcCsv, toHeatmapCells } from "./mc.js";
import { renderHeatmap, renderRatioCurves } from "./svg.js";

const USAGE = `usage:
  matfac-plots curves <curves.csv | dir>... --output <out.svg>
  matfac-plots table <mc.csv> --output <out.svg>`;

class UsageError extends Error {}

function splitArgs(argv: string[]): { inputs: string[]; output: string } {
  const inputs: string[] = [];
  let output: string | null = null;
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (arg === "--output" || arg === "-o") {
      output = argv[++i];
      if (output === undefined) throw new UsageError("--output needs a value");
    } else if (arg.startsWith("-")) {
      throw new UsageError(`unknown flag ${arg}`);
    } else {
      inputs.push(arg);
    }
  }
  if (inputs.length === 0) throw new UsageError("no input files given");
  if (!output) throw new UsageError("--output is required");
  return { inputs, output };
}

function collectCurveFiles(inputs: string[]): string[] {
  const files: string[] = [];
  for (const input of inputs) {
    if (statSync(input).isDirectory()) {
      const found = readdirSync(input)
        .filter((name) => /^curves_.*\.csv$/.test(name))
        .sort()
        .map((name) => join(input, name));
      files.push(...found);
    } else {
      files.push(input);
    }
  }
  if (files.length === 0) throw new UsageError("no curve CSVs found in the given inputs");
  return files;
}

export function run(argv: string[]): number {
  try {
    const [command, ...rest] = argv;
    if (command === "curves") {
      const { inputs, output } = splitArgs(rest);
      const curves = collectCurveFiles(inputs).map(parseCurveFile);
      writeFileSync(output, renderRatioCurves(curves));
      console.log(`wrote ${output} (${curves.length} panel${curves.length === 1 ? "" : "s"})`);
    } else if (command === "table") {
      const { inputs, output } = splitArgs(rest);
      if (inputs.length !== 1) throw new UsageError("table takes exactly one CSV");
      const rows = parseMcCsv(inputs[0]);
      writeFileSync(output, renderHeatmap(toHeatmapCells(rows), "exact-hit frequency"));
      console.log(`wrote ${output} (${rows.length} cells)`);
    } else {
      throw new UsageError(command ? `unknown command ${command}` : "missing command");
    }
    return 0;
  } catch (err) {
    if (err instanceof UsageError) {
      console.error(`error: ${err.message}\n${USAGE}`);
      return 2;
    }
    console.error(`error: ${err instanceof Error ? err.message : String(err)}`);
    return 1;
  }
}

if (process.argv[1] && /cli\.(ts|js)$/.test(process.argv[1])) {
  process.exit(run(process.argv.slice(2)));
}
