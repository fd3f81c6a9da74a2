/** Monte Carlo table parsing and heatmap cell layout. */

import { readFileSync } from "node:fs";
import { parseCsv, parseNumber, requireColumns } from "./csv.js";
import type { HeatmapCell } from "./svg.js";

const REQUIRED = [
  "p", "q", "n", "a", "delta", "omega", "noise_case",
  "method", "mode", "side", "x", "cell",
];

export interface McRow {
  p: number;
  q: number;
  n: number;
  a: number;
  delta: number;
  omega: number;
  noiseCase: string;
  method: string;
  mode: string;
  side: string;
  exactFrequency: number;
  cellText: string;
}

export function parseMcCsv(path: string): McRow[] {
  const table = parseCsv(readFileSync(path, "utf8"), path);
  const cols = requireColumns(table, REQUIRED, path);
  const get = (fields: string[], name: string) => fields[cols.get(name)!];
  return table.rows.map(({ line, fields }) => ({
    p: parseNumber(get(fields, "p"), path, line, "p"),
    q: parseNumber(get(fields, "q"), path, line, "q"),
    n: parseNumber(get(fields, "n"), path, line, "n"),
    a: parseNumber(get(fields, "a"), path, line, "a"),
    delta: parseNumber(get(fields, "delta"), path, line, "delta"),
    omega: parseNumber(get(fields, "omega"), path, line, "omega"),
    noiseCase: get(fields, "noise_case"),
    method: get(fields, "method"),
    mode: get(fields, "mode"),
    side: get(fields, "side"),
    exactFrequency: parseNumber(get(fields, "x"), path, line, "x"),
    cellText: get(fields, "cell"),
  }));
}

/** Pivot to heatmap cells: one column per (method, mode), one row per DGP cell and side. */
export function toHeatmapCells(rows: McRow[]): HeatmapCell[] {
  return rows.map((row) => ({
    rowLabel:
      `(${row.p},${row.q}) n=${row.n} a=${row.a} ` +
      `d=(${row.delta},${row.omega}) ${row.noiseCase} ${row.side}`,
    colLabel: row.mode === "one-step" ? `${row.method}_o` : row.method,
    value: row.exactFrequency,
    text: row.cellText,
  }));
}
