export { CsvParseError, parseCsv, parseNumber, requireColumns } from "./csv.js";
export { METHODS, metadataFromFilename, parseCurveFile, peakIndex } from "./curves.js";
export type { CurveFile, Method } from "./curves.js";
export { parseMcCsv, toHeatmapCells } from "./mc.js";
export type { McRow } from "./mc.js";
export { renderHeatmap, renderRatioCurves } from "./svg.js";
export type { HeatmapCell } from "./svg.js";
export { run } from "./cli.js";
