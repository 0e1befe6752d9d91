// Orchestrates play: local move application (matching /v1/whatif semantics),
// engine replies over the service, and cached what-if hover analysis.

import { ServiceClient, ServiceError } from "./api.js";
import {
  applyMove,
  BoardState,
  cacheKey,
  isLegal,
  isTerminal,
  legalMoves,
  otherSide,
} from "./board-state.js";
import type { Badge, Side } from "./types.js";

export type TurnOutcome = {
  state: BoardState;
  engineMove: string | null;
  finished: boolean;
  winner: Side | null;
};

export class GameController {
  constructor(
    private client: ServiceClient,
    public state: BoardState,
  ) {}

  /** Submit the human's move; if the game continues, fetch the engine reply. */
  async submitMove(move: string): Promise<TurnOutcome> {
    if (this.state.engineSide !== null && this.state.toMove === this.state.engineSide) {
      throw new Error("it is the engine's turn");
    }
    if (!isLegal(this.state, move)) {
      throw new Error(`illegal move ${move} for ${this.state.toMove}`);
    }
    this.state = applyMove(this.state, move);
    if (isTerminal(this.state) || this.state.engineSide === null) {
      return this.finishTurn(null);
    }
    return this.engineReply();
  }

  /** Ask the service for the engine's move and apply it (winning move when
   * one exists, otherwise any legal move: the engine never resigns). */
  async engineReply(): Promise<TurnOutcome> {
    const toMove = this.state.toMove;
    const reply = await this.client.bestMove(
      this.state.current,
      toMove === "p1" || toMove === "p2" ? undefined : toMove,
    );
    const move = reply.move ?? reply.any_move;
    if (move === null) {
      return this.finishTurn(null);
    }
    this.state = applyMove(this.state, move);
    return this.finishTurn(move);
  }

  private finishTurn(engineMove: string | null): TurnOutcome {
    const finished = isTerminal(this.state);
    // The side to move with no reply loses.
    const winner = finished
      ? otherSide(this.state.toMove)
      : null;
    return { state: this.state, engineMove, finished, winner };
  }

  /** Badge a candidate move for the hoverer; cached per position digest. */
  async whatifPreview(move: string): Promise<Badge> {
    const key = cacheKey(this.state, move);
    const cached = this.state.analysisCache[key];
    if (cached) return cached;
    if (!isLegal(this.state, move)) return "unknown";
    let badge: Badge;
    try {
      const toMove = this.state.toMove;
      const response = await this.client.whatIf(
        this.state.current,
        move,
        toMove === "p1" || toMove === "p2" ? undefined : toMove,
      );
      badge = response.winning_for_mover ? "winning" : "losing";
    } catch (error) {
      if (error instanceof ServiceError) {
        return "unknown"; // timeout or rejection; never cache a guess
      }
      throw error;
    }
    this.state.analysisCache[key] = badge;
    return badge;
  }

  humanMoves(): string[] {
    if (this.state.engineSide !== null && this.state.toMove === this.state.engineSide) {
      return [];
    }
    return legalMoves(this.state);
  }
}
