// Pure SVG rendering of a board: rank layers, cover edges, clickable points.
// Pure string output keeps it testable without a DOM.

import { BoardState } from "./board-state.js";
import { Layout, layeredLayout } from "./poset.js";
import type { Badge } from "./types.js";

export const RENDER_CAP = 500;

const CELL_W = 72;
const CELL_H = 84;
const RADIUS = 16;
const MARGIN = 40;

export type RenderOptions = {
  legalMoves: string[];
  badges?: Record<string, Badge>;
  selected?: string | null;
};

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function pointFill(color: string | undefined): string {
  if (color === "black") return "#1c1c1e";
  if (color === "white") return "#ffffff";
  return "#8f9aa8"; // impartial
}

/** Collapsed per-layer summary for boards beyond the render cap. */
function renderSummary(state: BoardState, layout: Layout): string {
  const rows = layout.layers
    .map((ids, layer) => {
      const y = MARGIN + (layout.layers.length - 1 - layer) * 40;
      return (
        `<rect class="layer-box" x="${MARGIN}" y="${y - 18}" width="360" height="30" rx="6"/>` +
        `<text class="layer-label" x="${MARGIN + 10}" y="${y}">level ${layer}: ${ids.length} points</text>`
      );
    })
    .join("");
  const height = MARGIN * 2 + layout.layers.length * 40;
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" class="board summary" ` +
    `viewBox="0 0 440 ${height}">` +
    `<text class="notice" x="${MARGIN}" y="${MARGIN - 16}">` +
    `${state.current.points.length} points exceed the render cap (${RENDER_CAP}); showing levels only</text>` +
    rows +
    `</svg>`
  );
}

export function renderBoardSVG(state: BoardState, options: RenderOptions): string {
  const layout = layeredLayout(state.current);
  if (state.current.points.length > RENDER_CAP) {
    return renderSummary(state, layout);
  }
  const legal = new Set(options.legalMoves);
  const widest = Math.max(1, ...layout.layers.map((l) => l.length));
  const width = MARGIN * 2 + widest * CELL_W;
  const height = MARGIN * 2 + Math.max(1, layout.layers.length) * CELL_H;

  const place = (id: string) => {
    const pos = layout.positions.get(id)!;
    return {
      x: MARGIN + pos.x * CELL_W,
      y: MARGIN + RADIUS + pos.y * CELL_H,
    };
  };

  const edges = layout.edges
    .map(([lo, hi]) => {
      const a = place(lo);
      const b = place(hi);
      return `<line class="cover" x1="${a.x}" y1="${a.y}" x2="${b.x}" y2="${b.y}"/>`;
    })
    .join("");

  const nodes = state.current.points
    .map((p) => {
      const { x, y } = place(p.id);
      const classes = ["point"];
      if (legal.has(p.id)) classes.push("legal");
      if (options.selected === p.id) classes.push("selected");
      const badge = options.badges?.[p.id];
      const badgeMark = badge
        ? `<text class="badge badge-${badge}" x="${x + RADIUS}" y="${y - RADIUS}">` +
          `${badge === "winning" ? "+" : badge === "losing" ? "-" : "?"}</text>`
        : "";
      return (
        `<g class="${classes.join(" ")}" data-point="${escapeXml(p.id)}">` +
        `<circle cx="${x}" cy="${y}" r="${RADIUS}" fill="${pointFill(p.color)}" ` +
        `stroke="${legal.has(p.id) ? "#2f81f7" : "#44484f"}" ` +
        `stroke-width="${legal.has(p.id) ? 3 : 1.5}"/>` +
        `<text class="label" x="${x}" y="${y + RADIUS + 14}">${escapeXml(p.id)}</text>` +
        badgeMark +
        `</g>`
      );
    })
    .join("");

  return (
    `<svg xmlns="http://www.w3.org/2000/svg" class="board" ` +
    `viewBox="0 0 ${width} ${height}">` +
    edges +
    nodes +
    `</svg>`
  );
}
