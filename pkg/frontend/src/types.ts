// Wire types shared with the posetlab service (posetlab-v1 documents).

export type Color = "black" | "white";

export type PosetPoint = { id: string; color?: Color };

export type PosetDoc = {
  format: "posetlab-v1";
  repr: "PO" | "HD" | "AR";
  points: PosetPoint[];
  edges: [string, string][];
};

export type SolveResponse = {
  kind: "impartial" | "black-white";
  digest: string;
  outcome?: "exists" | "forall";
  grundy?: number;
  winning_moves?: string[];
  outcome_class?: "P" | "L" | "R" | "N";
  value?: string | null;
  best_black?: string | null;
  best_white?: string | null;
};

export type BestMoveResponse = {
  digest: string;
  toMove: string;
  move: string | null;
  outcome_after: string | null;
  any_move: string | null;
};

export type WhatIfResponse = {
  digest: string;
  move: string;
  toMove: string;
  winning_for_mover: boolean;
  resulting: SolveResponse;
};

// Sides: colored games use the point colors, impartial games just alternate.
export type Side = "black" | "white" | "p1" | "p2";

export type Badge = "winning" | "losing" | "unknown";
