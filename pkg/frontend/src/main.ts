// DOM wiring for the playground.  All game logic lives in state.ts; this
// file renders UiState and translates clicks into store actions.

import "./style.css";
import { ApiClient } from "./api";
import { anchorLegal, formatMove, isPermutation, specOf, type Grid, type Spec } from "./engine";
import { branchLabel, PlaygroundStore, type UiState } from "./state";

// During `vite dev` the page runs on :5173 while the engine serves on :8000;
// built bundles default to same-origin.  Either way it is overridable.
const API_BASE =
  localStorage.getItem("rotpuzzle-api") ??
  (location.port === "5173" ? "http://127.0.0.1:8000" : "");

const STORAGE_KEY = "rotpuzzle-last-board";

const api = new ApiClient(API_BASE);

function restore(): { spec: Spec; grid: Grid } {
  const fallback = { spec: specOf(3, 3, 2), grid: null as Grid | null };
  try {
    const raw = localStorage.getItem(STORAGE_KEY);
    if (raw) {
      const saved = JSON.parse(raw) as { spec: [number, number, number]; grid: Grid };
      const spec = specOf(...saved.spec);
      if (isPermutation(spec, saved.grid)) {
        return { spec, grid: saved.grid };
      }
    }
  } catch {
    // fall through to a fresh board
  }
  return { spec: fallback.spec, grid: null as unknown as Grid };
}

const boot = restore();
const store = new PlaygroundStore(api, boot.spec, boot.grid ?? undefined);

const app = document.querySelector<HTMLDivElement>("#app")!;
app.innerHTML = `
  <h1>Number rotation puzzle</h1>
  <section class="controls">
    <label>board <select id="spec"></select></label>
    <label>seed <input id="seed" type="number" value="1" /></label>
    <label>moves <input id="k" type="number" value="30" min="0" /></label>
    <button id="scramble">Scramble</button>
    <button id="reset">Reset</button>
    <span id="badge" class="badge unknown">unknown</span>
  </section>
  <section id="board"></section>
  <section class="controls">
    <button id="ccw" title="rotate selected block counterclockwise">&#10226; CCW</button>
    <button id="cw" title="rotate selected block clockwise">&#10227; CW</button>
    <span class="tip">click a block's top-left cell to select it; click again (or use the
    buttons) to turn it counterclockwise, right-click for clockwise</span>
  </section>
  <section class="controls">
    <label>hint size <input id="hintCount" type="number" value="1" min="1" /></label>
    <button id="hint">Hint</button>
    <button id="applyHint" disabled>Apply hint</button>
    <span id="hintText"></span>
  </section>
  <section id="checks"></section>
  <section id="status"></section>
  <div id="toast" hidden></div>
`;

const el = {
  spec: document.querySelector<HTMLSelectElement>("#spec")!,
  seed: document.querySelector<HTMLInputElement>("#seed")!,
  k: document.querySelector<HTMLInputElement>("#k")!,
  scramble: document.querySelector<HTMLButtonElement>("#scramble")!,
  reset: document.querySelector<HTMLButtonElement>("#reset")!,
  badge: document.querySelector<HTMLSpanElement>("#badge")!,
  board: document.querySelector<HTMLDivElement>("#board")!,
  ccw: document.querySelector<HTMLButtonElement>("#ccw")!,
  cw: document.querySelector<HTMLButtonElement>("#cw")!,
  hintCount: document.querySelector<HTMLInputElement>("#hintCount")!,
  hint: document.querySelector<HTMLButtonElement>("#hint")!,
  applyHint: document.querySelector<HTMLButtonElement>("#applyHint")!,
  hintText: document.querySelector<HTMLSpanElement>("#hintText")!,
  checks: document.querySelector<HTMLDivElement>("#checks")!,
  status: document.querySelector<HTMLDivElement>("#status")!,
  toast: document.querySelector<HTMLDivElement>("#toast")!,
};

function inBlock(s: UiState, r: number, c: number): boolean {
  if (!s.selected) return false;
  const [ar, ac] = s.selected;
  return r >= ar && r < ar + s.spec.b && c >= ac && c < ac + s.spec.b;
}

function hintCells(s: UiState): Set<string> {
  const cells = new Set<string>();
  const first = s.hint?.moves[0];
  if (!first) return cells;
  for (let oi = 0; oi < s.spec.b; oi++) {
    for (let oj = 0; oj < s.spec.b; oj++) {
      cells.add(`${first.anchor[0] + oi},${first.anchor[1] + oj}`);
    }
  }
  return cells;
}

function render(): void {
  const s = store.state;
  const highlight = hintCells(s);

  el.board.innerHTML = "";
  const table = document.createElement("table");
  table.className = "grid";
  for (let r = 1; r <= s.spec.n; r++) {
    const tr = document.createElement("tr");
    for (let c = 1; c <= s.spec.m; c++) {
      const td = document.createElement("td");
      td.textContent = String(s.grid[r - 1]![c - 1]);
      if (anchorLegal(s.spec, [r, c])) td.classList.add("anchor");
      if (inBlock(s, r, c)) td.classList.add("outline");
      if (highlight.has(`${r},${c}`)) td.classList.add("hint");
      td.addEventListener("click", () => {
        const already =
          s.selected && s.selected[0] === r && s.selected[1] === c;
        if (already) {
          store.rotate([r, c], 1); // second click on the anchor: turn CCW
        } else if (!store.select([r, c])) {
          td.classList.add("rejected"); // visual rejection, no state change
          setTimeout(() => td.classList.remove("rejected"), 300);
        }
      });
      td.addEventListener("contextmenu", (ev) => {
        ev.preventDefault();
        if (store.select([r, c])) store.rotate([r, c], 3); // right click: CW
      });
      tr.appendChild(td);
    }
    table.appendChild(tr);
  }
  el.board.appendChild(table);

  el.badge.textContent =
    s.badge === "unknown"
      ? "unknown"
      : `${s.badge}${s.branch ? " — " + branchLabel(s.branch) : ""}`;
  el.badge.className = `badge ${s.badge}`;

  el.checks.innerHTML =
    s.badge === "unsolvable" && s.failedChecks.length
      ? `<b>failed checks:</b> ${s.failedChecks.map((c) => c.name).join(", ")}`
      : "";

  if (s.hint) {
    el.hintText.textContent =
      s.hint.moves.length === 0
        ? "no moves needed"
        : `${s.hint.moves.map(formatMove).join(" ")} (${s.hint.remaining} more after these)`;
  } else {
    el.hintText.textContent = "";
  }
  el.applyHint.disabled = !s.hint || s.hint.moves.length === 0;
  el.hint.disabled = s.badge === "unsolvable";

  el.status.textContent =
    `${s.history.length} moves played` +
    (s.solved ? " — solved!" : "") +
    (s.busy ? " …" : "");

  el.toast.hidden = !s.error;
  el.toast.textContent = s.error ?? "";

  localStorage.setItem(
    STORAGE_KEY,
    JSON.stringify({ spec: [s.spec.n, s.spec.m, s.spec.b], grid: s.grid }),
  );
}

store.subscribe(render);

el.scramble.addEventListener("click", () => {
  void store.scramble(Number(el.seed.value) || 0, Math.max(0, Number(el.k.value) || 0));
});
el.reset.addEventListener("click", () => {
  store.reset();
  void store.check();
});
el.ccw.addEventListener("click", () => {
  if (store.state.selected) store.rotate(store.state.selected, 1);
});
el.cw.addEventListener("click", () => {
  if (store.state.selected) store.rotate(store.state.selected, 3);
});
el.hint.addEventListener("click", () => {
  void store.requestHint(Math.max(1, Number(el.hintCount.value) || 1));
});
el.applyHint.addEventListener("click", () => store.applyHint());

el.spec.addEventListener("change", () => {
  const [n, m, b] = el.spec.value.split(",").map(Number);
  store.load(specOf(n!, m!, b!));
  void store.check();
});

async function bootstrap(): Promise<void> {
  render();
  try {
    const { specs } = await api.specs();
    el.spec.innerHTML = specs
      .map((t) => `<option value="${t.join(",")}">${t[0]}×${t[1]}, block ${t[2]}</option>`)
      .join("");
    const cur = [boot.spec.n, boot.spec.m, boot.spec.b].join(",");
    if ([...el.spec.options].some((o) => o.value === cur)) {
      el.spec.value = cur;
    }
  } catch {
    el.spec.innerHTML = `<option value="3,3,2">3×3, block 2</option>`;
  }
  void store.check();
}

void bootstrap();
