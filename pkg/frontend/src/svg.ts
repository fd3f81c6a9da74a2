/** SVG rendering for ratio-curve panels and frequency heatmaps.
 *
 * Figures are plain SVG strings built without a DOM; identical inputs
 * produce byte-identical output.
 */

import type { CurveFile, Method } from "./curves.js";
import { METHODS, peakIndex } from "./curves.js";

const PANEL_W = 360;
const PANEL_H = 240;
const MARGIN = { top: 34, right: 16, bottom: 38, left: 52 };
const COLORS: Record<Method, string> = { MR: "#d62728", SR: "#1f77b4", ER: "#7f7f7f" };

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function fmtTick(v: number): string {
  if (v === 0) return "0";
  const abs = Math.abs(v);
  if (abs >= 1000 || abs < 0.01) return v.toExponential(1);
  return String(Math.round(v * 100) / 100);
}

interface Point {
  x: number;
  y: number;
}

function polyline(points: Point[], color: string): string {
  const attr = points.map((p) => `${p.x.toFixed(2)},${p.y.toFixed(2)}`).join(" ");
  return `<polyline fill="none" stroke="${color}" stroke-width="1.5" points="${attr}"/>`;
}

/** One panel: ratio value vs index i, one line per method, peaks annotated. */
function curvePanel(curve: CurveFile, x0: number, y0: number): string {
  const innerW = PANEL_W - MARGIN.left - MARGIN.right;
  const innerH = PANEL_H - MARGIN.top - MARGIN.bottom;
  const plotted: { method: Method; i: number; value: number }[] = [];
  for (const method of METHODS) {
    curve.ratios[method].forEach((value, k) => {
      if (value !== null && Number.isFinite(value)) {
        plotted.push({ method, i: curve.i[k], value });
      }
    });
  }
  const iMin = Math.min(...curve.i);
  const iMax = Math.max(...plotted.map((p) => p.i), iMin + 1);
  const vMax = Math.max(...plotted.map((p) => p.value), 1);
  const sx = (i: number) => MARGIN.left + ((i - iMin) / (iMax - iMin)) * innerW;
  const sy = (v: number) => MARGIN.top + innerH - (v / vMax) * innerH;

  const parts: string[] = [];
  parts.push(
    `<g transform="translate(${x0},${y0})" data-panel-side="${curve.side}" data-panel-mode="${curve.mode}">`,
  );
  parts.push(
    `<rect x="0" y="0" width="${PANEL_W}" height="${PANEL_H}" fill="white" stroke="#cccccc"/>`,
  );
  parts.push(
    `<text x="${PANEL_W / 2}" y="18" text-anchor="middle" font-size="13" font-family="sans-serif">${esc(curve.side)} factors, ${esc(curve.mode)}</text>`,
  );
  // axes
  const axisY = MARGIN.top + innerH;
  parts.push(
    `<line x1="${MARGIN.left}" y1="${axisY}" x2="${MARGIN.left + innerW}" y2="${axisY}" stroke="#444444"/>`,
    `<line x1="${MARGIN.left}" y1="${MARGIN.top}" x2="${MARGIN.left}" y2="${axisY}" stroke="#444444"/>`,
  );
  for (let i = iMin; i <= iMax; i++) {
    parts.push(
      `<text x="${sx(i).toFixed(2)}" y="${axisY + 14}" text-anchor="middle" font-size="9" font-family="sans-serif">${i}</text>`,
    );
  }
  for (const frac of [0, 0.5, 1]) {
    const v = vMax * frac;
    parts.push(
      `<text x="${MARGIN.left - 6}" y="${(sy(v) + 3).toFixed(2)}" text-anchor="end" font-size="9" font-family="sans-serif">${fmtTick(v)}</text>`,
    );
  }
  parts.push(
    `<text x="${MARGIN.left + innerW / 2}" y="${PANEL_H - 8}" text-anchor="middle" font-size="10" font-family="sans-serif">index i</text>`,
  );
  // one line per method, clamped-infinite points drawn at the top edge
  for (const method of METHODS) {
    const pts: Point[] = [];
    curve.ratios[method].forEach((value, k) => {
      if (value === null) return;
      const v = Number.isFinite(value) ? value : vMax;
      pts.push({ x: sx(curve.i[k]), y: sy(Math.min(v, vMax)) });
    });
    if (pts.length > 1) parts.push(polyline(pts, COLORS[method]));
  }
  // peak markers
  for (const method of METHODS) {
    const peak = peakIndex(curve, method);
    if (peak === null) continue;
    const k = curve.i.indexOf(peak);
    const value = curve.ratios[method][k];
    const v = value !== null && Number.isFinite(value) ? Math.min(value, vMax) : vMax;
    const cx = sx(peak);
    const cy = sy(v);
    parts.push(
      `<circle cx="${cx.toFixed(2)}" cy="${cy.toFixed(2)}" r="3.5" fill="${COLORS[method]}" data-peak-method="${method}" data-peak-i="${peak}" data-side="${curve.side}" data-mode="${curve.mode}"/>`,
      `<text x="${cx.toFixed(2)}" y="${(cy - 6).toFixed(2)}" text-anchor="middle" font-size="10" font-family="sans-serif" fill="${COLORS[method]}">${method}: ${peak}</text>`,
    );
  }
  // legend
  METHODS.forEach((method, idx) => {
    const lx = MARGIN.left + 8 + idx * 56;
    parts.push(
      `<line x1="${lx}" y1="26" x2="${lx + 14}" y2="26" stroke="${COLORS[method]}" stroke-width="2"/>`,
      `<text x="${lx + 18}" y="29" font-size="9" font-family="sans-serif">${method}</text>`,
    );
  });
  parts.push("</g>");
  return parts.join("\n");
}

export function renderRatioCurves(curves: CurveFile[]): string {
  if (curves.length === 0) {
    throw new Error("no curve files to render");
  }
  const ordered = [...curves].sort((a, b) =>
    `${a.mode}/${a.side}`.localeCompare(`${b.mode}/${b.side}`),
  );
  const perRow = Math.min(2, ordered.length);
  const rows = Math.ceil(ordered.length / perRow);
  const width = perRow * PANEL_W;
  const height = rows * PANEL_H;
  const body = ordered
    .map((curve, idx) =>
      curvePanel(curve, (idx % perRow) * PANEL_W, Math.floor(idx / perRow) * PANEL_H),
    )
    .join("\n");
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">\n` +
    `${body}\n</svg>\n`
  );
}

export interface HeatmapCell {
  rowLabel: string;
  colLabel: string;
  value: number;
  text: string;
}

/** Blue ramp from 0 to 1. */
function rampColor(value: number): string {
  const t = Math.max(0, Math.min(1, value));
  const blend = (from: number, to: number) => Math.round(from + (to - from) * t);
  return `rgb(${blend(247, 8)},${blend(251, 81)},${blend(255, 156)})`;
}

export function renderHeatmap(cells: HeatmapCell[], title: string): string {
  if (cells.length === 0) {
    throw new Error("no cells to render");
  }
  const rowLabels = [...new Set(cells.map((c) => c.rowLabel))];
  const colLabels = [...new Set(cells.map((c) => c.colLabel))];
  const cellW = 86;
  const cellH = 30;
  const left = 170;
  const top = 56;
  const width = left + colLabels.length * cellW + 16;
  const height = top + rowLabels.length * cellH + 16;
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`,
    `<rect width="${width}" height="${height}" fill="white"/>`,
    `<text x="${width / 2}" y="20" text-anchor="middle" font-size="13" font-family="sans-serif">${esc(title)}</text>`,
  );
  colLabels.forEach((label, j) => {
    parts.push(
      `<text x="${left + j * cellW + cellW / 2}" y="${top - 8}" text-anchor="middle" font-size="10" font-family="sans-serif">${esc(label)}</text>`,
    );
  });
  rowLabels.forEach((label, i) => {
    parts.push(
      `<text x="${left - 8}" y="${top + i * cellH + cellH / 2 + 3}" text-anchor="end" font-size="10" font-family="sans-serif">${esc(label)}</text>`,
    );
  });
  for (const cell of cells) {
    const i = rowLabels.indexOf(cell.rowLabel);
    const j = colLabels.indexOf(cell.colLabel);
    const x = left + j * cellW;
    const y = top + i * cellH;
    const textColor = cell.value > 0.6 ? "white" : "#222222";
    parts.push(
      `<rect x="${x}" y="${y}" width="${cellW - 2}" height="${cellH - 2}" fill="${rampColor(cell.value)}" data-exact="${cell.value}"/>`,
      `<text x="${x + (cellW - 2) / 2}" y="${y + cellH / 2 + 3}" text-anchor="middle" font-size="9" font-family="sans-serif" fill="${textColor}">${esc(cell.text)}</text>`,
    );
  }
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
