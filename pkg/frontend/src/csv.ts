/** Minimal strict CSV reading with file/line error reporting. */

export class CsvParseError extends Error {
  constructor(file: string, line: number, detail: string) {
    super(`${file}:${line}: ${detail}`);
    this.name = "CsvParseError";
  }
}

export interface CsvTable {
  header: string[];
  /** Data rows, each paired with its 1-based line number. */
  rows: { line: number; fields: string[] }[];
}

export function parseCsv(text: string, file: string): CsvTable {
  const lines = text.split(/\r?\n/);
  let header: string[] | null = null;
  const rows: CsvTable["rows"] = [];
  for (let idx = 0; idx < lines.length; idx++) {
    const raw = lines[idx];
    if (raw.trim() === "") continue;
    const fields = raw.split(",").map((f) => f.trim());
    if (header === null) {
      header = fields;
    } else {
      if (fields.length !== header.length) {
        throw new CsvParseError(
          file,
          idx + 1,
          `expected ${header.length} fields, got ${fields.length}`,
        );
      }
      rows.push({ line: idx + 1, fields });
    }
  }
  if (header === null) {
    throw new CsvParseError(file, 1, "empty file");
  }
  return { header, rows };
}

export function requireColumns(
  table: CsvTable,
  required: string[],
  file: string,
): Map<string, number> {
  const index = new Map<string, number>();
  table.header.forEach((name, i) => index.set(name, i));
  for (const name of required) {
    if (!index.has(name)) {
      throw new CsvParseError(file, 1, `missing required column "${name}"`);
    }
  }
  return index;
}

export function parseNumber(
  value: string,
  file: string,
  line: number,
  column: string,
): number {
  const lowered = value.toLowerCase();
  if (lowered === "inf" || lowered === "infinity") return Infinity;
  if (lowered === "-inf" || lowered === "-infinity") return -Infinity;
  const num = Number(value);
  if (value === "" || Number.isNaN(num)) {
    throw new CsvParseError(file, line, `non-numeric value "${value}" in column ${column}`);
  }
  return num;
}
