"""JSON API over the engine, for the browser playground and scripting.

Stateless: every request carries the full board; every response is a JSON
object with an ``ok`` flag.  Domain-negative outcomes (an unsolvable board)
are 200 responses with ``"solvable": false`` so clients can render the
failed invariant checks; only malformed requests produce HTTP 400.

Endpoints:

* ``POST /api/check``     {spec, grid} -> verdict with per-check results
* ``POST /api/solve``     {spec, grid} -> full solving move sequence
* ``POST /api/hint``      {spec, grid, count?} -> first moves of a solution
* ``POST /api/apply``     {spec, grid, moves} -> resulting grid
* ``POST /api/scramble``  {spec, seed?, k?} -> scrambled grid
* ``GET  /api/specs``     curated list of playable specs

Boards travel as ``{"spec": [n, m, b], "grid": [[row], ...]}``; moves as
the text token form ``"(r,c):q"`` joined by spaces.
"""
import json
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .core import (
    Board,
    PuzzleSpec,
    apply_sequence,
    parse_moves,
    scramble,
    serialize_moves,
)
from .solvability import is_solvable
from .solver import solve

# playable shapes offered to the UI: every solver branch is represented
PLAYABLE_SPECS = [
    [2, 3, 2],
    [3, 3, 2],
    [2, 4, 2],
    [3, 4, 3],
    [4, 4, 3],
    [3, 5, 3],
    [4, 5, 4],
    [5, 5, 3],
    [5, 6, 5],
    [6, 7, 6],
]


class ApiError(ValueError):
    """Client-side request problem; becomes an HTTP 400."""


def _parse_spec(raw):
    if (
        not isinstance(raw, (list, tuple))
        or len(raw) != 3
        or not all(isinstance(x, int) and not isinstance(x, bool) for x in raw)
    ):
        raise ApiError('"spec" must be three integers [n, m, b]')
    try:
        return PuzzleSpec(*raw)
    except ValueError as e:
        raise ApiError(str(e)) from None


def _parse_board(payload):
    spec = _parse_spec(payload.get("spec"))
    grid = payload.get("grid")
    if not isinstance(grid, list) or len(grid) != spec.n:
        raise ApiError(f'"grid" must be {spec.n} rows')
    vals = []
    for r, row in enumerate(grid, start=1):
        if not isinstance(row, list) or len(row) != spec.m:
            raise ApiError(f"grid row {r} must have {spec.m} entries")
        for v in row:
            if not isinstance(v, int) or isinstance(v, bool):
                raise ApiError(f"grid row {r} has a non-integer entry")
            vals.append(v)
    try:
        return Board(spec, tuple(vals))
    except ValueError as e:
        raise ApiError(str(e)) from None


def _grid(board):
    return [list(row) for row in board.grid]


def _checks(report):
    return [{"name": name, "passed": ok} for name, ok in report.checks]


def _require(payload):
    if not isinstance(payload, dict):
        raise ApiError("request body must be a JSON object")
    return payload


# ---------------------------------------------------------------------------
# endpoint bodies (pure: payload dict in, response dict out)
# ---------------------------------------------------------------------------

def api_check(payload):
    report = is_solvable(_parse_board(_require(payload)))
    return {
        "ok": True,
        "solvable": report.solvable,
        "branch": report.branch,
        "checks": _checks(report),
    }


def api_solve(payload):
    board = _parse_board(_require(payload))
    res = solve(board)
    if not res.solvable:
        return {
            "ok": True,
            "solvable": False,
            "branch": res.report.branch,
            "checks": _checks(res.report),
        }
    return {
        "ok": True,
        "solvable": True,
        "branch": res.stats["branch"],
        "moves": serialize_moves(res.moves),
        "stats": {k: v for k, v in res.stats.items() if k != "branch"},
    }


def api_hint(payload):
    payload = _require(payload)
    count = payload.get("count", 1)
    if not isinstance(count, int) or isinstance(count, bool) or count < 1:
        raise ApiError('"count" must be a positive integer')
    board = _parse_board(payload)
    res = solve(board)
    if not res.solvable:
        return {
            "ok": True,
            "solvable": False,
            "branch": res.report.branch,
            "checks": _checks(res.report),
        }
    return {
        "ok": True,
        "solvable": True,
        "moves": serialize_moves(res.moves[:count]),
        "remaining": max(0, len(res.moves) - count),
    }


def api_apply(payload):
    payload = _require(payload)
    board = _parse_board(payload)
    raw = payload.get("moves", "")
    if not isinstance(raw, str):
        raise ApiError('"moves" must be a move-token string')
    try:
        seq = parse_moves(raw)
        after = apply_sequence(board, seq)
    except ValueError as e:
        raise ApiError(str(e)) from None
    return {
        "ok": True,
        "spec": [board.spec.n, board.spec.m, board.spec.b],
        "grid": _grid(after),
        "solved": after.is_solved(),
    }


def api_scramble(payload):
    payload = _require(payload)
    spec = _parse_spec(payload.get("spec"))
    seed = payload.get("seed", 0)
    k = payload.get("k", 30)
    for name, v in (("seed", seed), ("k", k)):
        if not isinstance(v, int) or isinstance(v, bool):
            raise ApiError(f'"{name}" must be an integer')
    if k < 0:
        raise ApiError('"k" must be >= 0')
    try:
        board, seq = scramble(spec, k, seed)
    except ValueError as e:
        raise ApiError(str(e)) from None
    return {
        "ok": True,
        "spec": [spec.n, spec.m, spec.b],
        "grid": _grid(board),
        "moves": serialize_moves(seq),
    }


def api_specs(_payload=None):
    return {"ok": True, "specs": [list(s) for s in PLAYABLE_SPECS]}


POST_ROUTES = {
    "/api/check": api_check,
    "/api/solve": api_solve,
    "/api/hint": api_hint,
    "/api/apply": api_apply,
    "/api/scramble": api_scramble,
}
GET_ROUTES = {
    "/api/specs": api_specs,
}


class _Handler(BaseHTTPRequestHandler):
    server_version = "rotpuzzle-api"
    protocol_version = "HTTP/1.1"

    def log_message(self, *args):  # keep test and CLI output clean
        pass

    def _send(self, code, obj):
        body = json.dumps(obj).encode()
        self.send_response(code)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def do_OPTIONS(self):  # CORS preflight for the browser playground
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Content-Length", "0")
        self.end_headers()

    def do_GET(self):
        handler = GET_ROUTES.get(self.path)
        if handler is None:
            code = 405 if self.path in POST_ROUTES else 404
            self._send(code, {"ok": False, "error": f"no GET {self.path}"})
            return
        self._send(200, handler())

    def do_POST(self):
        handler = POST_ROUTES.get(self.path)
        if handler is None:
            code = 405 if self.path in GET_ROUTES else 404
            self._send(code, {"ok": False, "error": f"no POST {self.path}"})
            return
        try:
            length = int(self.headers.get("Content-Length", 0))
            payload = json.loads(self.rfile.read(length) or b"null")
        except (ValueError, json.JSONDecodeError):
            self._send(400, {"ok": False, "error": "malformed JSON body"})
            return
        try:
            self._send(200, handler(payload))
        except ApiError as e:
            self._send(400, {"ok": False, "error": str(e)})
        except Exception as e:  # engine bug: surface it, never hang the client
            self._send(500, {"ok": False, "error": f"internal error: {e}"})


def create_server(host="127.0.0.1", port=8000):
    """Bound, ready-to-serve threading HTTP server (``port=0`` picks a free
    port; read it back from ``server_address``)."""
    return ThreadingHTTPServer((host, port), _Handler)


def serve(host="127.0.0.1", port=8000):
    with create_server(host, port) as httpd:
        httpd.serve_forever()
