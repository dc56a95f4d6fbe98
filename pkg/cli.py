"""
Command-line surface: `cdt <subcommand> ...`.

Exit codes: 0 success, 1 malformed input, 2 infeasible query, 3 internal
invariant violation.
"""

import argparse
import logging
import sys
from typing import Optional

from bench import DEFAULT_REPS, DEFAULT_SEED, bench, load_suite
from dissection import DissectionGraph, Environment, dissect
from encoding import Encoding
from errors import InfeasibleError, InputError, InvalidTask
from geom import cost
from oracle import (
    funnel_shortest,
    grid_hag_configs,
    h_signature,
    visibility_shortest,
)
from planners import (
    PlanResult,
    TppQuery,
    tmv_plan_result,
    tpp_plan_result,
    utpp_plan_result,
    utpp_preprocess,
)
from render import Layers, render_svg
from tcs import TcsIndex, get_all_foc, tcs_preprocess
from utils import dump_json, load_json, parse_point, parse_points, parse_polyline

logger = logging.getLogger(__name__)

# Listed in usage; `oracle` is accepted but kept out of help
PUBLIC_COMMANDS = ["dissect", "tcs", "foc", "tpp", "tmv", "utpp", "bench"]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InvalidTask(message)


def _load_map(filename: str) -> DissectionGraph:
    return dissect(Environment.from_file(filename))


def _load_index(filename: str) -> TcsIndex:
    data = load_json(filename)
    try:
        return TcsIndex.from_json(data)
    except (KeyError, TypeError, ValueError, AssertionError) as e:
        raise InvalidTask("{} is not a tcs index: {}".format(filename, e))


def _write(filename: str, text: str):
    try:
        with open(filename, "w") as f:
            f.write(text)
    except OSError as e:
        raise InvalidTask("cannot write {}: {}".format(filename, e))


def _svg(args, g: DissectionGraph, layers: Layers):
    if args.svg:
        layers.outline = layers.cells = layers.cutlines = True
        _write(args.svg, render_svg(g, layers))


def _show_plan(args, r: PlanResult):
    if args.json:
        print(dump_json(r.to_json()))
    else:
        print("cost {:.6f} over {} waypoints".format(r.cost, len(r.path)))
        print("cells {}".format(list(r.seq)))


def cmd_dissect(args) -> None:
    g = _load_map(args.map)
    if args.output:
        _write(args.output, dump_json(g.to_json()))
    if args.json:
        print(dump_json(g.to_json()))
    else:
        print("{} cells, {} cutlines".format(len(g.cells), len(g.cutlines)))
    _svg(args, g, Layers())


def cmd_tcs(args) -> None:
    g = _load_map(args.map)
    idx = tcs_preprocess(
        g, parse_point(args.anchor), args.tether, args.max_encodings
    )
    if args.output:
        _write(args.output, dump_json(idx.to_json()))
    if args.json:
        print(
            dump_json(
                {"cellCount": len(g.cells), "encodingCount": idx.encoding_count()}
            )
        )
    else:
        print(
            "{} encodings over {} cells".format(idx.encoding_count(), len(g.cells))
        )
    _svg(args, g, Layers(anchor=idx.anchor))


def cmd_foc(args) -> None:
    idx = _load_index(args.index)
    configs = get_all_foc(idx, parse_point(args.goal))
    if args.json:
        print(dump_json(configs.to_json()))
    else:
        print("{} configurations".format(len(configs.configs)))
        for (_, c), s in zip(configs.configs, configs.seqs):
            print("  {:.6f} {}".format(c, list(s)))
    _svg(args, idx.graph, Layers(configs=[p for p, _ in configs.configs], anchor=idx.anchor))


def cmd_tpp(args) -> None:
    idx = _load_index(args.index)
    q = TppQuery(parse_polyline(args.config), parse_point(args.goal))
    r = tpp_plan_result(idx, q)
    _show_plan(args, r)
    _svg(args, idx.graph, Layers(paths=[r.path], configs=[q.start_config], anchor=idx.anchor))


def cmd_tmv(args) -> None:
    idx = _load_index(args.index)
    start = parse_polyline(args.config)
    r, calls = tmv_plan_result(idx, start, parse_points(args.targets))
    _show_plan(args, r)
    if not args.json:
        print("{} optimal-path solves".format(calls))
    _svg(args, idx.graph, Layers(paths=[r.path], configs=[start], anchor=idx.anchor))


def cmd_utpp(args) -> None:
    g = _load_map(args.map)
    idx = utpp_preprocess(g, parse_point(args.anchor), args.zeta_eff)
    r = utpp_plan_result(idx, parse_point(args.start), parse_point(args.goal))
    _show_plan(args, r)
    _svg(args, g, Layers(paths=[r.path], anchor=idx.anchor))


def cmd_bench(args) -> None:
    g = _load_map(args.map)
    tasks = load_suite(load_json(args.suite), g.env)
    report = bench(g, tasks, args.reps, args.seed, timing=not args.no_timing)
    if args.markdown:
        _write(args.markdown, report.to_markdown() + "\n")
    if args.output:
        _write(args.output, dump_json(report.to_json()))
    if args.json:
        print(dump_json(report.to_json()))
    else:
        print(report.to_markdown())


def cmd_oracle(args) -> None:
    g = _load_map(args.map)

    def need(name: str) -> str:
        v = getattr(args, name)
        if v is None:
            raise InvalidTask("oracle {} needs --{}".format(args.method, name))
        return v

    out: dict
    if args.method == "visibility":
        p = visibility_shortest(g.env, parse_point(need("start")), parse_point(need("goal")))
        out = {"path": p.to_json(), "cost": cost(p)}
    elif args.method == "funnel":
        try:
            seq = tuple(int(c) for c in need("seq").split(","))
        except ValueError:
            raise InvalidTask("cannot interpret that cell sequence: {}".format(args.seq))
        e = Encoding(parse_point(need("start")), seq, parse_point(need("goal")))
        p = funnel_shortest(g, e)
        out = {"path": p.to_json(), "cost": cost(p)}
    elif args.method == "hsig":
        out = {"signature": str(h_signature(g.env, parse_polyline(need("path"))))}
    else:
        found = grid_hag_configs(
            g.env,
            parse_point(need("anchor")),
            float(need("tether")),
            parse_point(need("goal")),
            args.resolution,
        )
        out = {
            "classes": [
                {"signature": str(h), "cost": c, "path": p.to_json()}
                for h, c, p in found
            ]
        }
    if args.json:
        print(dump_json(out))
    else:
        for k, v in out.items():
            print("{}: {}".format(k, v))


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="JSON on stdout")
    common.add_argument("--svg", metavar="OUT", help="write an SVG picture")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--no-timing", action="store_true")
    common.add_argument("-o", "--output", metavar="OUT")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="cdt", description="Tethered robot path planning")
    sub = parser.add_subparsers(
        dest="command", required=True, metavar="{" + ",".join(PUBLIC_COMMANDS) + "}"
    )

    p = sub.add_parser("dissect", parents=[common], help="convex dissection of a map")
    p.add_argument("map")
    p.set_defaults(fn=cmd_dissect)

    p = sub.add_parser("tcs", parents=[common], help="build a tether index")
    p.add_argument("map")
    p.add_argument("--anchor", required=True)
    p.add_argument("--tether", type=float, required=True)
    p.add_argument("--max-encodings", type=int, default=None)
    p.set_defaults(fn=cmd_tcs)

    p = sub.add_parser("foc", parents=[common], help="taut configurations at a goal")
    p.add_argument("index")
    p.add_argument("--goal", required=True)
    p.set_defaults(fn=cmd_foc)

    p = sub.add_parser("tpp", parents=[common], help="tethered path to one goal")
    p.add_argument("index")
    p.add_argument("--config", required=True, help="x,y;x,y;... from the anchor")
    p.add_argument("--goal", required=True)
    p.set_defaults(fn=cmd_tpp)

    p = sub.add_parser("tmv", parents=[common], help="tethered tour of targets")
    p.add_argument("index")
    p.add_argument("--config", required=True)
    p.add_argument("--targets", required=True, help="x,y;x,y;...")
    p.set_defaults(fn=cmd_tmv)

    p = sub.add_parser("utpp", parents=[common], help="untethered shortest path")
    p.add_argument("map")
    p.add_argument("--anchor", required=True)
    p.add_argument("--zeta-eff", type=float, default=None)
    p.add_argument("--start", required=True)
    p.add_argument("--goal", required=True)
    p.set_defaults(fn=cmd_utpp)

    p = sub.add_parser("bench", parents=[common], help="time a task suite")
    p.add_argument("map")
    p.add_argument("suite")
    p.add_argument("--reps", type=int, default=DEFAULT_REPS)
    p.add_argument("--markdown", metavar="OUT")
    p.set_defaults(fn=cmd_bench)

    p = sub.add_parser("oracle", parents=[common])
    p.add_argument("method", choices=["visibility", "funnel", "hsig", "grid"])
    p.add_argument("map")
    p.add_argument("--start")
    p.add_argument("--goal")
    p.add_argument("--anchor")
    p.add_argument("--tether", type=float)
    p.add_argument("--seq", help="cell ids, comma separated")
    p.add_argument("--path", help="x,y;x,y;...")
    p.add_argument("--resolution", type=float)
    p.set_defaults(fn=cmd_oracle)
    return parser


def run(argv: Optional[list[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(
            level=logging.DEBUG if args.verbose else logging.WARNING,
            format="%(levelname)s %(name)s: %(message)s",
        )
        args.fn(args)
    except InputError as e:
        print("error: {}".format(e), file=sys.stderr)
        return 1
    except InfeasibleError as e:
        print("infeasible: {}".format(e), file=sys.stderr)
        return 2
    except AssertionError as e:
        print("internal error: {}".format(e), file=sys.stderr)
        return 3
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 0
    except Exception as e:
        logger.debug("unexpected failure", exc_info=True)
        print("internal error: {}: {}".format(type(e).__name__, e), file=sys.stderr)
        return 3
    return 0


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
