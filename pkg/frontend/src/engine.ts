// Local mirror of the engine's move semantics.  The server is the source of
// truth; this module exists so rotations feel instant in the browser.  Its
// output must match the JSON API bit-for-bit — the committed vector file in
// shared/apply-vectors.json and the e2e cross-validation tests enforce that.

export type Spec = { n: number; m: number; b: number };
export type Grid = number[][]; // grid[r][c], 0-indexed, values 1..n*m
export type Move = { anchor: [number, number]; quarters: number }; // 1-indexed anchor

export function specOf(n: number, m: number, b: number): Spec {
  if (!Number.isInteger(n) || !Number.isInteger(m) || !Number.isInteger(b)) {
    throw new Error("spec fields must be integers");
  }
  if (n < 1 || m < 1 || b < 1 || b > Math.min(n, m)) {
    throw new Error(`bad spec (${n}, ${m}, ${b})`);
  }
  return { n, m, b };
}

export function solvedGrid(spec: Spec): Grid {
  return Array.from({ length: spec.n }, (_, r) =>
    Array.from({ length: spec.m }, (_, c) => r * spec.m + c + 1),
  );
}

export function cloneGrid(grid: Grid): Grid {
  return grid.map((row) => row.slice());
}

export function gridsEqual(a: Grid, b: Grid): boolean {
  return (
    a.length === b.length &&
    a.every((row, r) => row.length === b[r]!.length && row.every((v, c) => v === b[r]![c]))
  );
}

export function isSolved(spec: Spec, grid: Grid): boolean {
  return gridsEqual(grid, solvedGrid(spec));
}

/** Every value 1..n*m exactly once — no UI action may ever break this. */
export function isPermutation(spec: Spec, grid: Grid): boolean {
  if (grid.length !== spec.n || grid.some((row) => row.length !== spec.m)) {
    return false;
  }
  const seen = new Set<number>();
  for (const row of grid) {
    for (const v of row) {
      if (!Number.isInteger(v) || v < 1 || v > spec.n * spec.m || seen.has(v)) {
        return false;
      }
      seen.add(v);
    }
  }
  return true;
}

/** Anchors are 1-indexed top-left cells of the rotating block. */
export function anchorLegal(spec: Spec, anchor: [number, number]): boolean {
  const [r, c] = anchor;
  return (
    spec.b >= 2 &&
    Number.isInteger(r) &&
    Number.isInteger(c) &&
    r >= 1 &&
    c >= 1 &&
    r + spec.b - 1 <= spec.n &&
    c + spec.b - 1 <= spec.m
  );
}

export function legalAnchors(spec: Spec): [number, number][] {
  const out: [number, number][] = [];
  if (spec.b < 2) return out;
  for (let r = 1; r + spec.b - 1 <= spec.n; r++) {
    for (let c = 1; c + spec.b - 1 <= spec.m; c++) {
      out.push([r, c]);
    }
  }
  return out;
}

/**
 * One block rotation.  A counterclockwise quarter sends the content of block
 * offset (oi, oj) to offset (b-1-oj, oi); q quarters iterate that map.
 */
export function applyMove(spec: Spec, grid: Grid, move: Move): Grid {
  const { anchor, quarters } = move;
  if (!anchorLegal(spec, anchor)) {
    throw new Error(`illegal anchor (${anchor[0]},${anchor[1]}) for b=${spec.b}`);
  }
  if (![1, 2, 3].includes(quarters)) {
    throw new Error(`quarters must be 1, 2 or 3, got ${quarters}`);
  }
  const b = spec.b;
  const [ar, ac] = [anchor[0] - 1, anchor[1] - 1]; // to 0-indexed
  const next = cloneGrid(grid);
  for (let oi = 0; oi < b; oi++) {
    for (let oj = 0; oj < b; oj++) {
      let di = oi;
      let dj = oj;
      for (let t = 0; t < quarters; t++) {
        [di, dj] = [b - 1 - dj, di];
      }
      next[ar + di]![ac + dj] = grid[ar + oi]![ac + oj]!;
    }
  }
  return next;
}

export function applyMoves(spec: Spec, grid: Grid, moves: Move[]): Grid {
  return moves.reduce((g, mv) => applyMove(spec, g, mv), grid);
}

/** Reverse the sequence and flip each turn (q -> 4-q). */
export function invertMoves(moves: Move[]): Move[] {
  return moves
    .slice()
    .reverse()
    .map((mv) => ({ anchor: mv.anchor, quarters: 4 - mv.quarters }));
}

// --- the wire format shared with the CLI and the JSON API ------------------

const TOKEN = /^\((\d+),(\d+)\):([123])$/;

export function formatMove(move: Move): string {
  return `(${move.anchor[0]},${move.anchor[1]}):${move.quarters}`;
}

export function formatMoves(moves: Move[]): string {
  return moves.map(formatMove).join(" ");
}

export function parseMoves(text: string): Move[] {
  const trimmed = text.trim();
  if (trimmed === "") return [];
  return trimmed.split(/\s+/).map((token) => {
    const m = TOKEN.exec(token);
    if (!m) {
      throw new Error(`bad move token: ${token}`);
    }
    return {
      anchor: [Number(m[1]), Number(m[2])] as [number, number],
      quarters: Number(m[3]),
    };
  });
}
