// Client-side poset semantics: enough order machinery to apply moves locally
// (the same rule the service uses for /v1/whatif) and to lay out the board.

import type { PosetDoc, PosetPoint } from "./types.js";

/** Reachability closure of a document's edges: up.get(p) = everyone >= p. */
export function upSets(doc: PosetDoc): Map<string, Set<string>> {
  const adjacency = new Map<string, string[]>();
  for (const p of doc.points) adjacency.set(p.id, []);
  for (const [lo, hi] of doc.edges) {
    if (!adjacency.has(lo) || !adjacency.has(hi)) {
      throw new Error(`edge (${lo}, ${hi}) references an unknown point`);
    }
    adjacency.get(lo)!.push(hi);
  }
  const up = new Map<string, Set<string>>();
  for (const p of doc.points) {
    const seen = new Set<string>([p.id]);
    const stack = [p.id];
    while (stack.length) {
      for (const next of adjacency.get(stack.pop()!) || []) {
        if (!seen.has(next)) {
          seen.add(next);
          stack.push(next);
        }
      }
    }
    up.set(p.id, seen);
  }
  return up;
}

/** Play a point: remove it and everything above it (its up-set). */
export function applyMoveToDoc(doc: PosetDoc, move: string): PosetDoc {
  const up = upSets(doc);
  const removed = up.get(move);
  if (!removed) throw new Error(`point ${move} is not on the board`);
  const keep = new Set(
    doc.points.map((p) => p.id).filter((id) => !removed.has(id)),
  );
  return {
    format: doc.format,
    repr: doc.repr,
    points: doc.points.filter((p) => keep.has(p.id)),
    edges: doc.edges.filter(([lo, hi]) => keep.has(lo) && keep.has(hi)),
  };
}

export function isColored(doc: PosetDoc): boolean {
  return doc.points.some((p) => p.color !== undefined);
}

export function pointColor(doc: PosetDoc, id: string): PosetPoint["color"] {
  return doc.points.find((p) => p.id === id)?.color;
}

/** Stable content key for the analysis cache. */
export function positionDigest(doc: PosetDoc): string {
  const points = doc.points.map((p) => (p.color ? `${p.id}:${p.color}` : p.id));
  const edges = doc.edges.map(([lo, hi]) => `${lo}<${hi}`).sort();
  return `${points.join(",")}|${edges.join(",")}`;
}

export type Layout = {
  /** Point id -> {x, y, layer}; y grows downward, minimal points at the bottom. */
  positions: Map<string, { x: number; y: number; layer: number }>;
  /** Cover-ish edges to draw (the document's own edge list). */
  edges: [string, string][];
  layers: string[][];
};

/** Rank layering: a point's layer is the longest chain strictly below it. */
export function layeredLayout(doc: PosetDoc): Layout {
  const up = upSets(doc);
  const below = new Map<string, string[]>();
  for (const p of doc.points) below.set(p.id, []);
  for (const p of doc.points) {
    for (const above of up.get(p.id)!) {
      if (above !== p.id) below.get(above)!.push(p.id);
    }
  }
  const layerOf = new Map<string, number>();
  const layerFor = (id: string): number => {
    const known = layerOf.get(id);
    if (known !== undefined) return known;
    let layer = 0;
    for (const lower of below.get(id)!) {
      layer = Math.max(layer, layerFor(lower) + 1);
    }
    layerOf.set(id, layer);
    return layer;
  };
  const layers: string[][] = [];
  for (const p of doc.points) {
    const layer = layerFor(p.id);
    while (layers.length <= layer) layers.push([]);
    layers[layer].push(p.id);
  }
  const positions = new Map<string, { x: number; y: number; layer: number }>();
  const width = Math.max(1, ...layers.map((l) => l.length));
  layers.forEach((ids, layer) => {
    ids.forEach((id, index) => {
      const x = (index + 1) / (ids.length + 1);
      positions.set(id, { x: x * width, y: layers.length - 1 - layer, layer });
    });
  });
  return { positions, edges: doc.edges, layers };
}
