// Browser entry point: wires the controller to the DOM.

import { ServiceClient } from "./api.js";
import {
  BoardState,
  deserialize,
  legalMoves,
  newGame,
  serialize,
  undoTwoPlies,
  winner,
} from "./board-state.js";
import { GameController } from "./controller.js";
import { renderBoardSVG } from "./render.js";
import type { Badge, PosetDoc, Side } from "./types.js";

const DEFAULT_SERVICE = "http://127.0.0.1:8080";

type Elements = {
  board: HTMLElement;
  status: HTMLElement;
  family: HTMLInputElement;
  params: HTMLInputElement;
  engineSide: HTMLSelectElement;
  service: HTMLInputElement;
  newGameBtn: HTMLButtonElement;
  undoBtn: HTMLButtonElement;
};

function grab(): Elements {
  const byId = <T extends HTMLElement>(id: string) =>
    document.getElementById(id) as T;
  return {
    board: byId("board"),
    status: byId("status"),
    family: byId<HTMLInputElement>("family"),
    params: byId<HTMLInputElement>("params"),
    engineSide: byId<HTMLSelectElement>("engine-side"),
    service: byId<HTMLInputElement>("service-url"),
    newGameBtn: byId<HTMLButtonElement>("new-game"),
    undoBtn: byId<HTMLButtonElement>("undo"),
  };
}

class App {
  private controller: GameController | null = null;
  private client: ServiceClient | null = null;
  private badges: Record<string, Badge> = {};
  private busy = false;
  private hoverToken = 0;

  constructor(private ui: Elements) {
    ui.newGameBtn.addEventListener("click", () => void this.startGame());
    ui.undoBtn.addEventListener("click", () => this.undo());
    ui.board.addEventListener("click", (event) => {
      const point = this.pointAt(event);
      if (point) void this.play(point);
    });
    ui.board.addEventListener("mouseover", (event) => {
      const point = this.pointAt(event);
      if (point) void this.hover(point);
    });
  }

  private pointAt(event: Event): string | null {
    const target = event.target as Element | null;
    const group = target?.closest?.("[data-point]");
    return group?.getAttribute("data-point") ?? null;
  }

  async startGame() {
    this.client = new ServiceClient(this.ui.service.value || DEFAULT_SERVICE);
    this.badges = {};
    try {
      const doc: PosetDoc = await this.client.generate(
        this.ui.family.value || "chomp",
        this.ui.params.value || "3,3",
      );
      const engine = this.ui.engineSide.value as Side | "off" | "first";
      const engineSide =
        engine === "off" ? null : engine === "first" ? this.firstSide(doc) : engine;
      this.controller = new GameController(this.client, newGame(doc, engineSide));
      this.saveState();
      this.setStatus("your move");
      if (engineSide !== null && this.controller.state.toMove === engineSide) {
        const turn = await this.controller.engineReply();
        this.report(turn.engineMove, turn.finished, turn.winner);
      }
      this.draw();
    } catch (error) {
      this.setStatus(`cannot start: ${(error as Error).message}`);
    }
  }

  private firstSide(doc: PosetDoc): Side {
    return doc.points.some((p) => p.color) ? "black" : "p1";
  }

  private async play(point: string) {
    if (!this.controller || this.busy) return;
    if (!this.controller.humanMoves().includes(point)) {
      this.setStatus(`${point} is not a legal move`);
      return;
    }
    this.busy = true;
    this.badges = {};
    try {
      this.setStatus("engine thinking...");
      const turn = await this.controller.submitMove(point);
      this.saveState();
      this.report(turn.engineMove, turn.finished, turn.winner);
    } catch (error) {
      this.setStatus((error as Error).message);
    } finally {
      this.busy = false;
      this.draw();
    }
  }

  private async hover(point: string) {
    if (!this.controller || this.busy) return;
    if (!this.controller.humanMoves().includes(point)) return;
    const token = ++this.hoverToken;
    const badge = await this.controller.whatifPreview(point);
    if (token === this.hoverToken) {
      this.badges[point] = badge;
      this.draw();
    }
  }

  private undo() {
    if (!this.controller || this.controller.state.engineSide === null) return;
    this.controller.state = undoTwoPlies(this.controller.state);
    this.badges = {};
    this.saveState();
    this.setStatus("rewound one full turn");
    this.draw();
  }

  private report(engineMove: string | null, finished: boolean, who: Side | null) {
    if (finished) {
      this.setStatus(`game over: ${who} wins`);
    } else if (engineMove) {
      this.setStatus(`engine played ${engineMove}; your move`);
    } else {
      this.setStatus("your move");
    }
  }

  private saveState() {
    if (this.controller) {
      try {
        window.sessionStorage.setItem("posetlab-board", serialize(this.controller.state));
      } catch {
        // storage may be unavailable; play on without persistence
      }
    }
  }

  restoreState(): boolean {
    const saved = window.sessionStorage.getItem("posetlab-board");
    if (!saved) return false;
    try {
      const state: BoardState = deserialize(saved);
      this.client = new ServiceClient(this.ui.service.value || DEFAULT_SERVICE);
      this.controller = new GameController(this.client, state);
      this.draw();
      this.setStatus(winner(state) ? `game over: ${winner(state)} wins` : "restored game");
      return true;
    } catch {
      return false;
    }
  }

  private setStatus(text: string) {
    this.ui.status.textContent = text;
  }

  private draw() {
    if (!this.controller) return;
    const state = this.controller.state;
    const finished = winner(state) !== null;
    this.ui.board.innerHTML = renderBoardSVG(state, {
      legalMoves: finished ? [] : this.controller.humanMoves(),
      badges: this.badges,
    });
    this.ui.undoBtn.disabled = state.engineSide === null || state.history.length < 2;
  }
}

const app = new App(grab());
if (!app.restoreState()) {
  void app.startGame();
}
