import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { CsvParseError, parseNumber } from "../src/csv.js";
import { metadataFromFilename, parseCurveFile, peakIndex } from "../src/curves.js";

const HEADER = "i,T_hat,G_hat,MR,SR,ER";

function writeCurves(name: string, lines: string[]): string {
  const dir = mkdtempSync(join(tmpdir(), "curves-"));
  const path = join(dir, name);
  writeFileSync(path, [HEADER, ...lines].join("\n") + "\n");
  return path;
}

describe("metadataFromFilename", () => {
  it("extracts side and mode", () => {
    expect(metadataFromFilename("/tmp/curves_row_two-step.csv")).toEqual({
      side: "row",
      mode: "two-step",
    });
  });

  it("rejects other names", () => {
    expect(() => metadataFromFilename("/tmp/whatever.csv")).toThrow(CsvParseError);
  });
});

describe("parseCurveFile", () => {
  it("parses values and blank ratio tails", () => {
    const path = writeCurves("curves_row_one-step.csv", [
      "1,30,10.29,15,1025,2",
      "2,2,0.04,1.05,1,1.1",
      "3,1.9,0.03,,,",
      "4,1.8,0.02,,,",
    ]);
    const curve = parseCurveFile(path);
    expect(curve.side).toBe("row");
    expect(curve.mode).toBe("one-step");
    expect(curve.i).toEqual([1, 2, 3, 4]);
    expect(curve.tHat[0]).toBe(30);
    expect(curve.ratios.SR).toEqual([1025, 1, null, null]);
  });

  it("accepts inf ratios", () => {
    const path = writeCurves("curves_col_two-step.csv", [
      "1,5,4,2,3,1.5",
      "2,1,0.5,inf,2,1.2",
      "3,0,0,,,",
    ]);
    const curve = parseCurveFile(path);
    expect(curve.ratios.MR[1]).toBe(Infinity);
    expect(peakIndex(curve, "MR")).toBe(2);
  });

  it("reports the file and line for malformed rows", () => {
    const path = writeCurves("curves_row_one-step.csv", ["1,30,10,2,3,1", "2,oops,1,1,1,1"]);
    expect(() => parseCurveFile(path)).toThrow(/curves_row_one-step\.csv:3: non-numeric/);
  });

  it("reports ragged rows with their line number", () => {
    const path = writeCurves("curves_row_one-step.csv", ["1,30,10,2,3,1", "2,1"]);
    expect(() => parseCurveFile(path)).toThrow(/:3: expected 6 fields, got 2/);
  });

  it("rejects a non-increasing index column", () => {
    const path = writeCurves("curves_row_one-step.csv", ["1,3,2,1,1,1", "1,2,1,1,1,1"]);
    expect(() => parseCurveFile(path)).toThrow(/strictly increasing/);
  });

  it("rejects missing columns", () => {
    const dir = mkdtempSync(join(tmpdir(), "curves-"));
    const path = join(dir, "curves_row_one-step.csv");
    writeFileSync(path, "i,T_hat\n1,2\n");
    expect(() => parseCurveFile(path)).toThrow(/missing required column "G_hat"/);
  });
});

describe("peakIndex", () => {
  it("returns the index of the largest ratio, first on ties", () => {
    const path = writeCurves("curves_row_one-step.csv", [
      "1,9,9,2,5,1",
      "2,8,8,2,5,1",
      "3,7,7,,,",
    ]);
    const curve = parseCurveFile(path);
    expect(peakIndex(curve, "SR")).toBe(1);
  });

  it("is null when every entry is blank", () => {
    const path = writeCurves("curves_row_one-step.csv", ["1,9,9,,,"]);
    expect(peakIndex(parseCurveFile(path), "MR")).toBeNull();
  });
});

describe("parseNumber", () => {
  it("maps inf spellings", () => {
    expect(parseNumber("inf", "f", 1, "c")).toBe(Infinity);
    expect(parseNumber("-Infinity", "f", 1, "c")).toBe(-Infinity);
  });

  it("throws on junk", () => {
    expect(() => parseNumber("abc", "f", 3, "c")).toThrow(/f:3/);
  });
});
