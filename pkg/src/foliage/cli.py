"""``foliage`` command-line front end.

Every command prints (or writes with ``--json``) a JSON document carrying
``"format": 1``, the seed and a list of assertions.  Exit codes: 0 when every
assertion passed, 1 on any failure, 2 on an input error, 3 when nothing
failed but something was inconclusive.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional

from .exterior import PForm
from .foliation import (
    EXACT,
    Foliation1D,
    Mode,
    euler_relation_check,
    is_integrable,
    omega_from_1d,
    pullback_foliation,
    radial_check,
)
from .hypotheses import ScenarioError, parse_scenario, run_assertion
from .report import EXIT_INPUT, Assertion, build_report, check, passed
from .serialization import (
    check_format,
    dumps,
    foliation_from_json,
    foliation_to_json,
    form_from_json,
    form_to_json,
    map_from_json,
    point_from_json,
    point_report_to_json,
)
from .singular import analyze_point, is_prime
from .suites import SUITES, run_suite
from .text import (
    ParseError,
    format_form,
    format_poly,
    format_vector_field,
    parse_form,
    parse_poly,
    parse_vector_field,
)

DEFAULT_SEED = 0


class InputError(Exception):
    pass


def resolve_seed(flag: Optional[int]) -> int:
    if flag is not None:
        return flag
    env = os.environ.get("FOLIAGE_SEED")
    if env is None or env == "":
        return DEFAULT_SEED
    try:
        seed = int(env, 0)
    except ValueError:
        raise InputError(f"FOLIAGE_SEED is not an integer: {env!r}") from None
    if not 0 <= seed < 2 ** 64:
        raise InputError("FOLIAGE_SEED must be an unsigned 64-bit integer")
    return seed


def _u64(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _prob(text: str):
    try:
        p, t = (int(x, 0) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected <prime>,<trials>") from None
    if not is_prime(p):
        raise argparse.ArgumentTypeError(f"{p} is not prime")
    if t < 1:
        raise argparse.ArgumentTypeError("trials must be positive")
    return p, t


def make_mode(args, seed: int) -> Mode:
    if args.prob is None:
        return EXACT
    p, t = args.prob
    return Mode("probabilistic", p, t, seed)


def mode_json(mode: Mode) -> dict:
    if mode.exact:
        return {"kind": "exact"}
    return {"kind": "probabilistic", "prime": str(mode.prime), "trials": mode.trials}


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: line {e.lineno}, column {e.colno}: {e.msg}") from None
    try:
        check_format(obj)
    except ValueError as e:
        raise InputError(f"{path}: {e}") from None
    return obj


def _text_arg(s: str) -> str:
    if s.startswith("@"):
        try:
            with open(s[1:], encoding="utf-8") as fh:
                return fh.read().strip()
        except OSError as e:
            raise InputError(f"{s[1:]}: {e.strerror}") from None
    return s


def _load_form(path: str) -> PForm:
    obj = _read_json(path)
    if isinstance(obj, dict) and "kind" in obj:
        F = foliation_from_json(obj)
        return omega_from_1d(F) if isinstance(F, Foliation1D) else F.eta
    if isinstance(obj, dict) and isinstance(obj.get("foliation"), dict):
        F = foliation_from_json(obj["foliation"])
        return omega_from_1d(F) if isinstance(F, Foliation1D) else F.eta
    return form_from_json(obj)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_parse(args, seed: int, mode: Mode) -> dict:
    text = _text_arg(args.text)
    kind = args.kind
    if kind == "poly":
        v = parse_poly(text, args.nvars)
        value = {"nvars": v.nvars, "text": format_poly(v)}
    elif kind == "form":
        a = parse_form(text, args.nvars)
        value = dict(form_to_json(a), text=format_form(a))
    elif kind == "field":
        X = parse_vector_field(text, args.nvars)
        value = {"nvars": X.nvars, "text": format_vector_field(X)}
    else:
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as e:
            raise InputError(f"line {e.lineno}, column {e.colno}: {e.msg}") from None
        sc = parse_scenario(obj)
        value = {"name": sc.name, "assertions": len(sc.assertions),
                 "maps": sorted(sc.maps), "foliations": sorted(sc.foliations)}
    return build_report("parse", [], seed, args.timing, kind=kind, value=value)


def cmd_pullback(args, seed: int, mode: Mode) -> dict:
    f = map_from_json(_read_json(args.map))
    G = foliation_from_json(_read_json(args.foliation))
    if not isinstance(G, Foliation1D):
        raise InputError("pullback needs a 1d foliation")
    F = pullback_foliation(f, G, integrability=None)
    eta = F.eta
    pred = F.meta["predicted_degree"]
    assertions = [
        check("degree", lambda: passed(F.theta == pred, "exact", degree=F.theta, predicted=pred)),
        check("radial", lambda: passed(radial_check(eta, mode), mode.kind)),
        check("euler", lambda: passed(euler_relation_check(eta, mode), mode.kind)),
        check("integrable", lambda: passed(is_integrable(eta, mode), mode.kind)),
    ]
    meta = {
        "degree": F.theta,
        "predicted_degree": pred,
        "prediction_matches": F.theta == pred,
        "removed_degree": F.removed_degree,
        "nu": F.meta["nu"],
        "d": F.meta["d"],
        "m": F.meta["m"],
    }
    foliation = foliation_to_json(F)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dumps(dict(foliation, format=1)))
    return build_report("pullback", assertions, seed, args.timing, mode=mode_json(mode),
                        foliation=foliation, metadata=meta)


_EXPECT_KEYS = ("singular", "kupka", "nilpotent", "conic")


def _parse_expect(items: List[str]) -> dict:
    out = {}
    for item in items or []:
        for part in item.split(","):
            key, _, val = part.partition("=")
            key = key.strip()
            if key not in _EXPECT_KEYS or val.strip() not in ("true", "false"):
                raise InputError(f"bad expectation {part!r}; use KEY=true|false with KEY in "
                                 + ", ".join(_EXPECT_KEYS))
            out[key] = val.strip() == "true"
    return out


def cmd_analyze(args, seed: int, mode: Mode) -> dict:
    a = _load_form(args.form)
    try:
        p = point_from_json(args.point)
    except (ValueError, ZeroDivisionError) as e:
        raise InputError(f"malformed point {args.point!r}: {e}") from None
    plane = None
    if args.plane:
        plane = json.loads(_text_arg(args.plane))
        if not isinstance(plane, dict) or "dirs" not in plane:
            raise InputError("a plane spec needs 'dirs' (and optionally 'base')")
        base = plane.get("base")
        plane = {"base": p if base is None else point_from_json(base),
                 "dirs": [point_from_json(v) for v in plane["dirs"]]}
    expect = _parse_expect(args.expect)
    if "conic" in expect and args.d is None:
        raise InputError("conic=... needs --d")
    rep = analyze_point(a, p, args.d, plane, mode)
    found = {
        "singular": rep.is_singular,
        "kupka": rep.is_kupka,
        "nilpotent": rep.is_nilpotent_rot,
        "conic": rep.conic_ngk is not None,
    }
    assertions = [
        Assertion(f"expect-{k}", "pass" if found[k] == v else "fail",
                  rep.conic_ngk.mode if k == "conic" and rep.conic_ngk else "exact",
                  {"expected": v, "found": found[k]})
        for k, v in sorted(expect.items())
    ]
    return build_report("analyze", assertions, seed, args.timing, mode=mode_json(mode),
                        point_report=point_report_to_json(rep))


def cmd_hypotheses(args, seed: int, mode: Mode) -> dict:
    sc = parse_scenario(_read_json(args.scenario))

    def run(item):
        i, spec = item
        name = spec.get("name") or f"{i:02d}-{spec['property']}"
        a = check(name, lambda: run_assertion(sc, spec, mode))
        a.detail.setdefault("property", spec["property"])
        return a

    with ThreadPoolExecutor(max_workers=args.jobs) as pool:
        assertions = list(pool.map(run, enumerate(sc.assertions)))
    return build_report("hypotheses", assertions, seed, args.timing, mode=mode_json(mode), scenario=sc.name)


def cmd_verify(args, seed: int, mode: Mode) -> dict:
    assertions = run_suite(args.suite, mode)
    return build_report("verify", assertions, seed, args.timing, mode=mode_json(mode), suite=args.suite)


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_mutually_exclusive_group()
    g.add_argument("--exact", action="store_true", help="decide identities over Q (default)")
    g.add_argument("--prob", type=_prob, metavar="PRIME,TRIALS",
                   help="decide identities by evaluation at random points mod PRIME")
    common.add_argument("--seed", type=_u64, help="random seed (falls back to FOLIAGE_SEED, then 0)")
    common.add_argument("--json", metavar="OUT", help="write the report here instead of stdout")
    common.add_argument("--timing", action="store_true", help="record wall-clock seconds per assertion")

    ap = argparse.ArgumentParser(prog="foliage", description=__doc__.split("\n\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", parents=[common], help="parse and canonicalize text input")
    p.add_argument("kind", choices=("poly", "form", "field", "scenario"))
    p.add_argument("text", help="the input, or @FILE to read it from a file")
    p.add_argument("--nvars", type=int)
    p.set_defaults(fn=cmd_parse)

    p = sub.add_parser("pullback", parents=[common], help="pull a 1d foliation back by a rational map")
    p.add_argument("map")
    p.add_argument("foliation")
    p.add_argument("-o", "--out", help="also write the pulled-back foliation JSON here")
    p.set_defaults(fn=cmd_pullback)

    p = sub.add_parser("analyze", parents=[common], help="point report for a form")
    p.add_argument("form", help="form or foliation JSON file")
    p.add_argument("--point", required=True, help="e.g. 1:1:1:2 or 0,0,1/2")
    p.add_argument("--d", type=int, help="expected conic degree")
    p.add_argument("--plane", help='JSON {"base": [...], "dirs": [[...], ...]} or @FILE')
    p.add_argument("--expect", action="append", metavar="KEY=BOOL",
                   help="singular, kupka, nilpotent or conic; repeatable or comma separated")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("hypotheses", parents=[common], help="run a scenario's property checks")
    p.add_argument("scenario")
    p.add_argument("--jobs", type=int, default=4)
    p.set_defaults(fn=cmd_hypotheses)

    p = sub.add_parser("verify", parents=[common], help="run a built-in verification suite")
    p.add_argument("suite", choices=SUITES)
    p.set_defaults(fn=cmd_verify)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else 0
    try:
        seed = resolve_seed(args.seed)
        mode = make_mode(args, seed)
        report = args.fn(args, seed, mode)
    except ParseError as e:
        print(f"foliage: syntax error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (InputError, ScenarioError, ValueError, TypeError, KeyError) as e:
        print(f"foliage: input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    text = dumps(report)
    if args.json:
        try:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as e:
            print(f"foliage: {args.json}: {e.strerror}", file=sys.stderr)
            return EXIT_INPUT
        s = report["summary"]
        print(f"{args.command}: {s['pass']} pass, {s['fail']} fail, {s['inconclusive']} inconclusive "
              f"(seed {seed})")
    else:
        sys.stdout.write(text)
    return report["exit_code"]


if __name__ == "__main__":
    sys.exit(main())
