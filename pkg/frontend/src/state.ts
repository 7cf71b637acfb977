// Playground state and actions.  Pure data plus an action queue — no DOM in
// here, so the whole thing is testable against a fake or a live API client.
//
// Concurrency model: at most one engine request is in flight; actions that
// need the network are chained on a single promise queue in call order.
// Local rotations bypass the queue (they are synchronous) and are
// periodically reconciled against POST /api/apply.

import type { ApiClient, CheckItem, SpecTuple } from "./api";
import {
  applyMove,
  applyMoves,
  anchorLegal,
  cloneGrid,
  formatMoves,
  gridsEqual,
  isSolved,
  parseMoves,
  solvedGrid,
  type Grid,
  type Move,
  type Spec,
} from "./engine";

export type Badge = "solvable" | "unsolvable" | "unknown";

export type UiState = {
  spec: Spec;
  grid: Grid;
  selected: [number, number] | null;
  history: Move[];
  hint: { moves: Move[]; remaining: number } | null;
  badge: Badge;
  branch: string | null;
  failedChecks: CheckItem[];
  solved: boolean;
  error: string | null;
  busy: boolean;
};

/** Human-readable labels for the classifier's branch identifiers. */
export function branchLabel(branch: string): string {
  const table: Record<string, string> = {
    "single-block": "single block",
    "no-moves": "no moves exist",
    "b2-exceptional-2x3": "2×3 exceptional case",
    "b2-general": "b = 2 general",
    "b3-exceptional-3x4": "3×4 exceptional case",
    "b3-general": "b = 3 general",
    "b-mod8-2-6": "b ≡ 2,6 (mod 8)",
    "b-mod8-0-4": "b ≡ 0,4 (mod 8)",
    "b-mod8-3-5": "b ≡ 3,5 (mod 8)",
    "b-mod8-1-7": "b ≡ 1,7 (mod 8)",
  };
  return table[branch] ?? branch;
}

const RECONCILE_EVERY = 8; // local rotations between server cross-checks

export class PlaygroundStore {
  state: UiState;
  /** Set when a reconcile found the client grid diverging from the server. */
  driftDetected = false;

  private queue: Promise<void> = Promise.resolve();
  private listeners: Array<() => void> = [];
  private syncGrid: Grid; // last grid the server confirmed or produced
  private sinceSync: Move[] = [];

  constructor(
    private api: ApiClient,
    spec: Spec,
    grid?: Grid,
  ) {
    const g = grid ?? solvedGrid(spec);
    this.state = {
      spec,
      grid: g,
      selected: null,
      history: [],
      hint: null,
      badge: "unknown",
      branch: null,
      failedChecks: [],
      solved: isSolved(spec, g),
      error: null,
      busy: false,
    };
    this.syncGrid = cloneGrid(g);
  }

  subscribe(fn: () => void): void {
    this.listeners.push(fn);
  }

  /** Resolves when every queued engine request so far has settled. */
  idle(): Promise<void> {
    return this.queue;
  }

  private emit(): void {
    for (const fn of this.listeners) fn();
  }

  private set(patch: Partial<UiState>): void {
    this.state = { ...this.state, ...patch };
    this.emit();
  }

  private enqueue(task: () => Promise<void>): Promise<void> {
    this.queue = this.queue.then(async () => {
      this.set({ busy: true, error: null });
      try {
        await task();
      } catch (e) {
        // transport or request error: report it, leave the board alone
        this.set({ error: e instanceof Error ? e.message : String(e) });
      } finally {
        this.set({ busy: false });
      }
    });
    return this.queue;
  }

  // --- local actions --------------------------------------------------------

  /** Select a block by its top-left cell; illegal anchors change nothing. */
  select(anchor: [number, number]): boolean {
    if (!anchorLegal(this.state.spec, anchor)) {
      return false;
    }
    this.set({ selected: anchor });
    return true;
  }

  clearSelection(): void {
    this.set({ selected: null });
  }

  /**
   * Rotate a block locally (quarters counterclockwise).  Solvability is
   * invariant under legal moves, so the badge is carried over unchanged.
   */
  rotate(anchor: [number, number], quarters: number): boolean {
    const { spec } = this.state;
    if (!anchorLegal(spec, anchor) || ![1, 2, 3].includes(quarters)) {
      return false;
    }
    const move: Move = { anchor, quarters };
    const grid = applyMove(spec, this.state.grid, move);
    this.sinceSync.push(move);
    this.set({
      grid,
      history: [...this.state.history, move],
      hint: null,
      solved: isSolved(spec, grid),
    });
    if (this.sinceSync.length >= RECONCILE_EVERY) {
      void this.reconcile();
    }
    return true;
  }

  /** Replace the board outright (restored from storage, or fresh-solved). */
  load(spec: Spec, grid?: Grid): void {
    const g = grid ?? solvedGrid(spec);
    this.syncGrid = cloneGrid(g);
    this.sinceSync = [];
    this.set({
      spec,
      grid: g,
      selected: null,
      history: [],
      hint: null,
      badge: "unknown",
      branch: null,
      failedChecks: [],
      solved: isSolved(spec, g),
    });
  }

  reset(): void {
    this.load(this.state.spec, solvedGrid(this.state.spec));
  }

  // --- engine-backed actions -------------------------------------------------

  /** Re-play the moves made since the last sync on the server and compare. */
  reconcile(): Promise<void> {
    return this.enqueue(async () => {
      if (this.sinceSync.length === 0) return;
      const pending = this.sinceSync;
      this.sinceSync = [];
      const res = await this.api.apply(
        this.specTuple(),
        this.syncGrid,
        formatMoves(pending),
      );
      this.syncGrid = res.grid;
      if (!gridsEqual(res.grid, this.state.grid)) {
        // semantic drift: the server is the source of truth
        this.driftDetected = true;
        this.set({
          grid: res.grid,
          solved: res.solved,
          error: "client rotation disagreed with the engine; grid corrected",
        });
      }
    });
  }

  scramble(seed: number, k: number): Promise<void> {
    return this.enqueue(async () => {
      const res = await this.api.scramble(this.specTuple(), seed, k);
      const spec = this.state.spec;
      this.syncGrid = res.grid;
      this.sinceSync = [];
      this.set({
        grid: res.grid,
        selected: null,
        history: [],
        hint: null,
        solved: isSolved(spec, res.grid),
      });
      await this.refreshBadge();
    });
  }

  check(): Promise<void> {
    return this.enqueue(() => this.refreshBadge());
  }

  /** Ask the engine for the first `count` moves of a fresh full solution. */
  requestHint(count = 1): Promise<void> {
    return this.enqueue(async () => {
      const res = await this.api.hint(this.specTuple(), this.state.grid, count);
      if (!res.solvable) {
        this.set({
          hint: null,
          badge: "unsolvable",
          branch: res.branch,
          failedChecks: res.checks.filter((c) => !c.passed),
        });
        return;
      }
      this.set({
        hint: { moves: parseMoves(res.moves), remaining: res.remaining },
        badge: "solvable",
      });
    });
  }

  /**
   * Apply every move of the pending hint.  Hints are prefixes of one fresh
   * plan, so following the whole plan (ask with count = remaining + 1) is
   * the terminating way to play them out; re-planning after single moves may
   * oscillate.
   */
  applyHint(): void {
    const hint = this.state.hint;
    if (!hint || hint.moves.length === 0) return;
    const spec = this.state.spec;
    const grid = applyMoves(spec, this.state.grid, hint.moves);
    this.sinceSync.push(...hint.moves);
    this.set({
      grid,
      history: [...this.state.history, ...hint.moves],
      hint: null,
      solved: isSolved(spec, grid),
    });
    void this.reconcile();
  }

  private specTuple(): SpecTuple {
    const { n, m, b } = this.state.spec;
    return [n, m, b];
  }

  private async refreshBadge(): Promise<void> {
    const res = await this.api.check(this.specTuple(), this.state.grid);
    this.set({
      badge: res.solvable ? "solvable" : "unsolvable",
      branch: res.branch,
      failedChecks: res.checks.filter((c) => !c.passed),
    });
  }
}
