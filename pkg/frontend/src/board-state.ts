// Game state held by the playground; the service stays stateless.

import { applyMoveToDoc, isColored, pointColor, positionDigest } from "./poset.js";
import type { Badge, PosetDoc, Side } from "./types.js";

export type BoardState = {
  initial: PosetDoc;
  current: PosetDoc;
  history: string[];
  toMove: Side;
  engineSide: Side | null;
  /** what-if badges, keyed by `positionDigest|point|mover`. */
  analysisCache: Record<string, Badge>;
};

export function sidesFor(doc: PosetDoc): [Side, Side] {
  return isColored(doc) ? ["black", "white"] : ["p1", "p2"];
}

const OPPONENT: Record<Side, Side> = {
  black: "white",
  white: "black",
  p1: "p2",
  p2: "p1",
};

export function otherSide(side: Side): Side {
  return OPPONENT[side];
}

export function newGame(
  doc: PosetDoc,
  engineSide: Side | null = null,
): BoardState {
  const [first] = sidesFor(doc);
  return {
    initial: doc,
    current: doc,
    history: [],
    toMove: first,
    engineSide,
    analysisCache: {},
  };
}

export function legalMoves(state: BoardState): string[] {
  if (!isColored(state.current)) {
    return state.current.points.map((p) => p.id);
  }
  return state.current.points
    .filter((p) => p.color === state.toMove)
    .map((p) => p.id);
}

export function isLegal(state: BoardState, move: string): boolean {
  return legalMoves(state).includes(move);
}

/** The mover to move has no legal reply: they lose. */
export function isTerminal(state: BoardState): boolean {
  return legalMoves(state).length === 0;
}

export function winner(state: BoardState): Side | null {
  return isTerminal(state) ? otherSide(state.toMove) : null;
}

export function applyMove(state: BoardState, move: string): BoardState {
  if (!isLegal(state, move)) {
    throw new Error(`illegal move ${move} for ${state.toMove}`);
  }
  return {
    ...state,
    current: applyMoveToDoc(state.current, move),
    history: [...state.history, move],
    toMove: otherSide(state.toMove),
  };
}

/** Recompute the current position from the initial poset and the history. */
export function replay(state: BoardState): PosetDoc {
  let doc = state.initial;
  for (const move of state.history) doc = applyMoveToDoc(doc, move);
  return doc;
}

/** Undo one full turn (the human move and the engine reply). */
export function undoTwoPlies(state: BoardState): BoardState {
  if (state.engineSide === null) {
    throw new Error("undo is a two-ply rewind, only meaningful against the engine");
  }
  const history = state.history.slice(0, Math.max(0, state.history.length - 2));
  let rebuilt = newGame(state.initial, state.engineSide);
  for (const move of history) rebuilt = applyMove(rebuilt, move);
  return { ...rebuilt, analysisCache: state.analysisCache };
}

export function serialize(state: BoardState): string {
  return JSON.stringify(state);
}

export function deserialize(text: string): BoardState {
  const parsed = JSON.parse(text) as BoardState;
  const expected = positionDigest(replay(parsed));
  if (positionDigest(parsed.current) !== expected) {
    throw new Error("corrupt board state: history does not replay to the position");
  }
  // Moves must alternate legally; rebuilding validates color and presence.
  let rebuilt = newGame(parsed.initial, parsed.engineSide);
  for (const move of parsed.history) {
    if (isColored(rebuilt.current)) {
      const color = pointColor(rebuilt.current, move);
      if (color !== rebuilt.toMove) {
        throw new Error(`corrupt board state: ${move} was not ${rebuilt.toMove}'s move`);
      }
    }
    rebuilt = applyMove(rebuilt, move);
  }
  return parsed;
}

export function cacheKey(state: BoardState, move: string): string {
  return `${positionDigest(state.current)}|${move}|${state.toMove}`;
}
