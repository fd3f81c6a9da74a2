/** Curve-file model: parsed `curves_<side>_<mode>.csv` with metadata. */

import { readFileSync } from "node:fs";
import { basename } from "node:path";
import { CsvParseError, parseCsv, parseNumber, requireColumns } from "./csv.js";

export const METHODS = ["MR", "SR", "ER"] as const;
export type Method = (typeof METHODS)[number];

export interface CurveFile {
  side: string;
  mode: string;
  file: string;
  i: number[];
  tHat: number[];
  gHat: number[];
  /** Ratio curves; null past the search bound (blank cells). */
  ratios: Record<Method, (number | null)[]>;
}

const NAME_PATTERN = /^curves_([a-z]+)_([a-z-]+)\.csv$/;

export function metadataFromFilename(path: string): { side: string; mode: string } {
  const name = basename(path);
  const match = NAME_PATTERN.exec(name);
  if (!match) {
    throw new CsvParseError(path, 1, `filename "${name}" does not match curves_<side>_<mode>.csv`);
  }
  return { side: match[1], mode: match[2] };
}

export function parseCurveFile(path: string): CurveFile {
  const { side, mode } = metadataFromFilename(path);
  const table = parseCsv(readFileSync(path, "utf8"), path);
  const cols = requireColumns(table, ["i", "T_hat", "G_hat", "MR", "SR", "ER"], path);

  const out: CurveFile = {
    side,
    mode,
    file: path,
    i: [],
    tHat: [],
    gHat: [],
    ratios: { MR: [], SR: [], ER: [] },
  };
  for (const { line, fields } of table.rows) {
    out.i.push(parseNumber(fields[cols.get("i")!], path, line, "i"));
    out.tHat.push(parseNumber(fields[cols.get("T_hat")!], path, line, "T_hat"));
    out.gHat.push(parseNumber(fields[cols.get("G_hat")!], path, line, "G_hat"));
    for (const method of METHODS) {
      const value = fields[cols.get(method)!];
      out.ratios[method].push(
        value === "" ? null : parseNumber(value, path, line, method),
      );
    }
  }
  for (let k = 1; k < out.i.length; k++) {
    if (!(out.i[k] > out.i[k - 1])) {
      throw new CsvParseError(path, table.rows[k].line, "index column i must be strictly increasing");
    }
  }
  return out;
}

/** Index (1-based, from the i column) of the largest finite ratio; null if none. */
export function peakIndex(curve: CurveFile, method: Method): number | null {
  let best: number | null = null;
  let bestValue = -Infinity;
  curve.ratios[method].forEach((value, k) => {
    if (value === null) return;
    const v = Number.isFinite(value) ? value : Number.MAX_VALUE;
    if (v > bestValue) {
      bestValue = v;
      best = curve.i[k];
    }
  });
  return best;
}
