"""Command line surface: scramble, check, solve, apply, enumerate,
automorphism, macro catalog, placement replay, and the JSON API server.

Every command is non-interactive and deterministic given its flags.  Exit
codes: 0 success, 1 usage or internal error, 2 domain-negative (a valid
but unsolvable board).  ``--json`` switches any command's output to a
machine-readable document carrying the same information as the text form.
"""
import argparse
import json
import sys

from .core import (
    BoardFormatError,
    Coord,
    PuzzleSpec,
    apply_sequence,
    parse_board,
    parse_moves,
    scramble,
    serialize_board,
    serialize_moves,
)
from .groups import (
    StateLimitExceeded,
    bfs_reachable,
    build_movement_graphs,
    construct_psi,
    find_isomorphism,
    group_order,
    verify_outer,
)
from .macros import Embedding, catalog
from .placement import place_three
from .solvability import is_solvable, predicted_reachable_count
from .solver import solve

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNSOLVABLE = 2


class _Parser(argparse.ArgumentParser):
    """argparse defaults to exit code 2 on usage errors; the contract
    reserves 2 for unsolvable boards, so remap usage errors to 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _read_board(path):
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    return parse_board(text)


def _print_json(payload):
    json.dump(payload, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _grid(board):
    return [list(row) for row in board.grid]


def _report_payload(report):
    return {
        "solvable": report.solvable,
        "branch": report.branch,
        "checks": [{"name": name, "passed": ok} for name, ok in report.checks],
    }


def _print_report_text(report):
    spec = report.spec
    print(f"spec: {spec.n} {spec.m} {spec.b}")
    print(f"branch: {report.branch}")
    for name, ok in report.checks:
        print(f"  [{'ok' if ok else 'FAIL'}] {name}")
    print(f"solvable: {'yes' if report.solvable else 'no'}")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_scramble(args):
    spec = PuzzleSpec(*args.spec)
    board, seq = scramble(spec, args.moves, args.seed)
    if args.json:
        _print_json(
            {
                "ok": True,
                "spec": list(args.spec),
                "seed": args.seed,
                "k": args.moves,
                "moves": serialize_moves(seq),
                "grid": _grid(board),
            }
        )
    else:
        sys.stdout.write(serialize_board(board))
    return EXIT_OK


def cmd_check(args):
    report = is_solvable(_read_board(args.board))
    if args.json:
        _print_json({"ok": True, **_report_payload(report)})
    else:
        _print_report_text(report)
    return EXIT_OK if report.solvable else EXIT_UNSOLVABLE


def cmd_solve(args):
    board = _read_board(args.board)
    res = solve(board)
    if not res.solvable:
        if args.json:
            _print_json({"ok": True, **_report_payload(res.report)})
        else:
            _print_report_text(res.report)
        return EXIT_UNSOLVABLE
    if args.verify and not apply_sequence(board, res.moves).is_solved():
        print("error: verification failed: sequence does not solve", file=sys.stderr)
        return EXIT_ERROR
    stats = dict(res.stats)
    if args.json:
        _print_json(
            {
                "ok": True,
                "solvable": True,
                "branch": stats["branch"],
                "moves": serialize_moves(res.moves),
                "stats": stats,
            }
        )
    else:
        print(serialize_moves(res.moves))
        print(
            f"# {stats['moves']} moves, branch {stats['branch']}, "
            f"{stats['elapsed']:.3f}s",
            file=sys.stderr,
        )
    return EXIT_OK


def cmd_apply(args):
    board = _read_board(args.board)
    seq = parse_moves(args.moves)
    after = apply_sequence(board, seq)
    if args.json:
        _print_json({"ok": True, "spec": [board.spec.n, board.spec.m, board.spec.b],
                     "grid": _grid(after)})
    else:
        sys.stdout.write(serialize_board(after))
    return EXIT_OK


def cmd_enumerate(args):
    spec = PuzzleSpec(*args.spec)
    modes = args.mode or ["bfs", "order", "predict"]
    counts = {}
    if "bfs" in modes:
        counts["bfs"], _ = bfs_reachable(spec, limit=args.limit)
    if "order" in modes:
        counts["order"] = group_order(spec)
    if "predict" in modes:
        counts["predict"] = predicted_reachable_count(spec)
    agree = len(set(counts.values())) <= 1
    if args.json:
        _print_json({"ok": True, "spec": list(args.spec), "counts": counts,
                     "agree": agree})
    else:
        for mode, count in counts.items():
            print(f"{mode}: {count}")
        print(f"cross-check: {'agree' if agree else 'DISAGREE'}")
    return EXIT_OK if agree else EXIT_ERROR


def cmd_automorphism(args):
    g0, g1 = build_movement_graphs()
    isos = find_isomorphism(g0, g1)
    psi = construct_psi()
    report = verify_outer(psi, random_pairs=args.pairs, seed=args.seed)
    table = [
        {"from": list(src), "to": list(dst)}
        for src, dst in report["cycle_type_table"].items()
    ]
    payload = {
        "ok": bool(report["is_outer"]),
        "graph_isomorphisms": len(isos),
        "bijective": report["bijective"],
        "generator_products_ok": report["generator_products_ok"],
        "random_pairs_checked": report["random_pairs_checked"],
        "random_pairs_failed": report["random_pairs_failed"],
        "cycle_type_table": table,
        "transpositions_to_triple_transpositions": report[
            "transpositions_to_triple_transpositions"
        ],
        "psi_squared_inner": report["psi_squared_inner_by"] is not None,
        "is_outer": report["is_outer"],
    }
    if args.json:
        _print_json(payload)
    else:
        print(f"movement-graph isomorphisms found: {len(isos)}")
        print(f"pairing bijective: {report['bijective']}")
        print(f"homomorphism on generator products: {report['generator_products_ok']}")
        print(
            f"random pairs: {report['random_pairs_checked']} checked, "
            f"{report['random_pairs_failed']} failed"
        )
        print("cycle-type correspondence:")
        for row in table:
            src = "+".join(str(x) for x in row["from"])
            dst = "+".join(str(x) for x in row["to"])
            print(f"  {src:>12}  ->  {dst}")
        print(
            "transpositions -> 2+2+2: "
            f"{report['transpositions_to_triple_transpositions']}"
        )
        print(f"psi o psi is inner: {report['psi_squared_inner_by'] is not None}")
        print(f"outer automorphism verified: {report['is_outer']}")
    return EXIT_OK if report["is_outer"] else EXIT_ERROR


def cmd_macros(args):
    entries = []
    for mac in catalog(args.n):
        win = mac.window
        entries.append(
            {
                "name": mac.name,
                "window": [win.n, win.m, win.b],
                "word": serialize_moves(mac.moves),
                "anchors": [
                    list(a) for a in sorted({tuple(mv.anchor) for mv in mac.moves})
                ],
                "footprint": [list(c) for c in sorted(mac.footprint)],
                "cycles": [[list(c) for c in cyc] for cyc in mac.cycles()],
            }
        )
    _print_json({"ok": True, "n": args.n, "macros": entries})
    return EXIT_OK


def cmd_place3(args):
    board = _read_board(args.board)
    spec = board.spec
    b = spec.b
    emb = Embedding(Coord(*args.origin), b, b + 1)
    word = place_three(board, *args.values, emb)
    steps = []
    current = board
    for mv in word:
        current = apply_sequence(current, (mv,))
        steps.append((mv, current))
    payload = {
        "ok": True,
        "moves": serialize_moves(word),
        "grid": _grid(current if word else board),
    }
    if args.show_boards:
        payload["steps"] = [
            {"move": serialize_moves((mv,)), "grid": _grid(bd)} for mv, bd in steps
        ]
    if args.json:
        _print_json(payload)
    else:
        print(f"placing {args.values[0]}, {args.values[1]}, {args.values[2]} "
              f"via window at {tuple(args.origin)} ({len(word)} moves)")
        if args.show_boards:
            for k, (mv, bd) in enumerate(steps, start=1):
                print(f"step {k}: {serialize_moves((mv,))}")
                sys.stdout.write(serialize_board(bd))
        else:
            print(serialize_moves(word))
            sys.stdout.write(serialize_board(current if word else board))
    return EXIT_OK


def cmd_serve(args):
    from .server import create_server

    httpd = create_server(args.host, args.port)
    host, port = httpd.server_address[:2]
    print(f"serving on http://{host}:{port}", file=sys.stderr)
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        httpd.server_close()
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")

    parser = _Parser(prog="rotpuzzle", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("scramble", parents=[common],
                       help="deterministically scrambled board")
    p.add_argument("--spec", nargs=3, type=int, required=True,
                   metavar=("N", "M", "B"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--moves", type=int, default=30, help="scramble length")
    p.set_defaults(func=cmd_scramble)

    p = sub.add_parser("check", parents=[common],
                       help="solvability verdict for a board file")
    p.add_argument("board", help="board file, or - for stdin")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", parents=[common],
                       help="move sequence solving a board file")
    p.add_argument("board", help="board file, or - for stdin")
    p.add_argument("--verify", action="store_true",
                   help="re-apply the sequence and require the solved board")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("apply", parents=[common],
                       help="apply a move sequence to a board file")
    p.add_argument("board", help="board file, or - for stdin")
    p.add_argument("--moves", required=True,
                   help="move tokens like '(1,1):1 (2,3):2'")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("enumerate", parents=[common],
                       help="count reachable boards three independent ways")
    p.add_argument("--spec", nargs=3, type=int, required=True,
                   metavar=("N", "M", "B"))
    p.add_argument("--mode", action="append",
                   choices=["bfs", "order", "predict"],
                   help="repeatable; default runs all three")
    p.add_argument("--limit", type=int, default=2_000_000,
                   help="state cap for bfs mode")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("automorphism", parents=[common],
                       help="movement-graph pairing and the exotic S6 map")
    p.add_argument("--pairs", type=int, default=10_000,
                   help="random product pairs to test")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_automorphism)

    p = sub.add_parser("macros", parents=[common],
                       help="JSON catalog of the macro library")
    p.add_argument("--n", type=int, default=5,
                   help="board size for the parametric family")
    p.set_defaults(func=cmd_macros)

    p = sub.add_parser("place3", parents=[common],
                       help="replay a three-value placement step by step")
    p.add_argument("board", help="board file, or - for stdin")
    p.add_argument("--values", nargs=3, type=int, required=True,
                   metavar=("A1", "A2", "A3"))
    p.add_argument("--origin", nargs=2, type=int, default=[1, 1],
                   metavar=("I", "J"), help="window origin on the host")
    p.add_argument("--show-boards", action="store_true",
                   help="print the board after every move")
    p.set_defaults(func=cmd_place3)

    p = sub.add_parser("serve", parents=[common], help="run the JSON API")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (BoardFormatError, ValueError, StateLimitExceeded, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
