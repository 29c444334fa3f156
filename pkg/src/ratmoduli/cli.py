"""Command-line front end.  Every verb prints one JSON object on stdout.

Exit status: 0 on success, 1 for domain errors (with ``{"error": code,
"detail": ...}``), 2 for unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from typing import Callable, Optional, Sequence

from .conic import DEFAULT_HEIGHT_BOUND
from .errors import ParseError, RatModuliError
from .field import format_element, parse_element
from .forms import RationalMap, conjugate, merge, split
from .inv2 import InvariantTuple2, check_relation2, invariants2
from .inv3 import InvariantTuple3, check_relation3, invariants3
from .moduli import (ModuliPoint2, ModuliPoint3, Stratum, WeightedPoint,
                     classify_aut, is_deeper_or_equal, validate2, validate3,
                     wp_equal)
from .randomgen import (NORMAL_FORMS, random_map, random_normal_form,
                        random_sl2)
from .reconstruct import descend3, reconstruct2
from .serialize import (SCHEMA, descent_to_json, dumps, map_from_json,
                        map_to_json, pair_to_json, point_from_json,
                        point_to_json, require_same_field)

HEIGHT_ENV = "RATMODULI_HEIGHT_BOUND"


class InputError(Exception):
    """Unreadable file or payload that does not match a schema (exit 2)."""

    def __init__(self, code: str, detail: str):
        super().__init__(detail)
        self.code = code
        self.detail = detail


def _load(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise InputError("io_error", f"{path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError("schema_error", f"{path}: invalid JSON ({exc.msg})") from exc
    if not isinstance(obj, dict):
        raise InputError("schema_error", f"{path}: expected a JSON object")
    if obj.get("schema", SCHEMA) != SCHEMA:
        raise InputError("schema_error", f"{path}: unsupported schema {obj.get('schema')!r}")
    return obj


def _parse(path: str, parser: Callable[[dict], object]):
    obj = _load(path)
    try:
        return parser(obj)
    except (ParseError, KeyError, TypeError, ValueError) as exc:
        raise InputError("schema_error", f"{path}: {exc}") from exc


def _load_map(path: str) -> RationalMap:
    return _parse(path, map_from_json)


def _load_point(path: str) -> WeightedPoint:
    return _parse(path, point_from_json)


def _load_map_or_point(path: str) -> WeightedPoint:
    obj = _load(path)
    if "F0" in obj:
        m = _parse(path, map_from_json)
        return _point_of_map(m)
    return _parse(path, point_from_json)


def _point_of_map(m: RationalMap) -> WeightedPoint:
    pair = split(m)
    if m.degree == 3:
        return ModuliPoint3(invariants3(pair))
    if m.degree == 2:
        return ModuliPoint2(invariants2(pair))
    raise InputError("schema_error", f"degree {m.degree} is not supported (only 2 and 3)")


def _check_degree(P: WeightedPoint, degree: Optional[int]) -> None:
    actual = 3 if isinstance(P, ModuliPoint3) else 2
    if degree is not None and degree != actual:
        raise InputError("schema_error",
                         f"--degree {degree} does not match a degree-{actual} point")


def _default_height_bound() -> int:
    raw = os.environ.get(HEIGHT_ENV)
    if raw is None:
        return DEFAULT_HEIGHT_BOUND
    try:
        value = int(raw)
    except ValueError:
        raise InputError("schema_error", f"{HEIGHT_ENV}={raw!r} is not an integer") from None
    if value < 1:
        raise InputError("schema_error", f"{HEIGHT_ENV} must be positive")
    return value


# -- verbs -----------------------------------------------------------------

def cmd_invariants(args) -> dict:
    m = _load_map(args.map)
    if args.degree is not None and args.degree != m.degree:
        raise InputError("schema_error", f"--degree {args.degree} but the map has degree {m.degree}")
    P = _point_of_map(m)
    names = InvariantTuple3._fields if isinstance(P, ModuliPoint3) else InvariantTuple2._fields
    out = dict(zip(names, (format_element(c) for c in P.coords)))
    out.update(point_to_json(P))
    out["degree"] = m.degree
    return out


def cmd_classify(args) -> dict:
    P = _load_map_or_point(args.input)
    if not isinstance(P, ModuliPoint3):
        raise InputError("schema_error", "classify needs a degree-3 map or point")
    return {"stratum": classify_aut(P).value}


def cmd_validate(args) -> dict:
    P = _load_point(args.point)
    _check_degree(P, args.degree)
    status = validate3(P) if isinstance(P, ModuliPoint3) else validate2(P)
    return {"status": status}


def cmd_equivalent(args) -> dict:
    P = _load_map_or_point(args.first)
    Q = _load_map_or_point(args.second)
    require_same_field(P.field, Q.field)
    if type(P) is not type(Q):
        raise InputError("schema_error", "inputs have different degrees")
    return {"equivalent": wp_equal(P, Q)}


def cmd_descend(args) -> dict:
    P = _load_point(args.point)
    _check_degree(P, args.degree)
    if not isinstance(P, ModuliPoint3):
        raise InputError("schema_error", "descend handles degree 3; use reconstruct2 for degree 2")
    bound = args.height_bound if args.height_bound is not None else _default_height_bound()
    return descent_to_json(descend3(P, bound))


def _parse_w(text: Optional[str]):
    if text is None:
        return ((1, 0), (0, 1))
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 4:
        raise InputError("schema_error", "--W takes four comma-separated entries p,q,r,s")
    try:
        p, q, r, s = (parse_element(x) for x in parts)
    except ParseError as exc:
        raise InputError("schema_error", f"--W: {exc}") from exc
    return ((p, q), (r, s))


def cmd_reconstruct2(args) -> dict:
    P = _load_point(args.point)
    if not isinstance(P, ModuliPoint2):
        raise InputError("schema_error", "reconstruct2 needs a degree-2 point")
    pair = reconstruct2(P, _parse_w(args.W))
    return {"outcome": "model", "pair": pair_to_json(pair), "map": map_to_json(merge(pair))}


def selftest(seed: int = 0, trials: int = 20) -> list[dict]:
    """A quick randomized battery over the whole pipeline."""
    rng = random.Random(seed)
    checks: list[dict] = []

    def record(name: str, fn: Callable[[], bool]) -> None:
        try:
            ok, detail = fn(), ""
        except RatModuliError as exc:
            ok, detail = False, f"{exc.code}: {exc}"
        entry = {"check": name, "passed": bool(ok)}
        if detail:
            entry["detail"] = detail
        checks.append(entry)

    maps3 = [random_map(rng, 3, 6) for _ in range(trials)]
    maps2 = [random_map(rng, 2, 6) for _ in range(trials)]

    def relations() -> bool:
        return (all(check_relation3(invariants3(split(m))) for m in maps3)
                and all(check_relation2(invariants2(split(m))) for m in maps2))

    def invariance() -> bool:
        for m in maps3[:5] + maps2[:5]:
            N = random_sl2(rng)
            before, after = _point_of_map(m), _point_of_map(conjugate(m, N))
            if not wp_equal(before, after):
                return False
        return True

    def round_trip3() -> bool:
        for m in maps3:
            P = ModuliPoint3(invariants3(split(m)))
            if classify_aut(P) != Stratum.Trivial:
                continue
            res = descend3(P)
            if res.outcome == "model":
                if not wp_equal(ModuliPoint3(invariants3(res.pair)), P):
                    return False
            elif res.outcome != "search_exhausted":
                return False
        return True

    def round_trip2() -> bool:
        for m in maps2:
            P = ModuliPoint2(invariants2(split(m)))
            if P.coords.r and not wp_equal(ModuliPoint2(invariants2(reconstruct2(P))), P):
                return False
        return True

    def strata() -> bool:
        for stratum in NORMAL_FORMS:
            pair = random_normal_form(rng, stratum)
            if pair is None or not is_deeper_or_equal(classify_aut(invariants3(pair)), stratum):
                return False
        return True

    record("relations", relations)
    record("sl2_invariance", invariance)
    record("round_trip_degree3", round_trip3)
    record("round_trip_degree2", round_trip2)
    record("strata_normal_forms", strata)
    return checks


def cmd_selftest(args) -> dict:
    checks = selftest(args.seed, args.trials)
    return {"passed": all(c["passed"] for c in checks), "checks": checks}


def _human(verb: str, out: dict) -> str:
    if "error" in out:
        return f"error ({out['error']}): {out['detail']}"
    if verb == "invariants":
        return "[" + " : ".join(out["coords"]) + "]"
    if verb == "classify":
        return f"stratum {out['stratum']}"
    if verb == "validate":
        return f"status {out['status']}"
    if verb == "equivalent":
        return "equivalent" if out["equivalent"] else "not equivalent"
    if verb in ("descend", "reconstruct2"):
        lines = [f"outcome {out['outcome']}"]
        if "map" in out:
            lines.append(f"F0 = {out['map']['F0']}, F1 = {out['map']['F1']}")
        if "conic" in out:
            terms = [f"{v}*{k}" for k, v in out["conic"]["coefficients"].items() if v != "0"]
            lines.append("conic " + " + ".join(terms) + " = 0")
        if "certificate" in out:
            lines.append(f"certificate {out['certificate']}")
        if "diagnostic" in out:
            lines.append(out["diagnostic"])
        return "\n".join(lines)
    if verb == "selftest":
        return "\n".join(f"{'PASS' if c['passed'] else 'FAIL'} {c['check']}"
                         for c in out["checks"])
    return ""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ratmoduli",
        description="Invariants, automorphism strata and fields of definition "
                    "for rational maps of degree 2 and 3.")
    parser.add_argument("--human", action="store_true",
                        help="also print a readable summary on stderr")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("invariants", help="invariants of a map file")
    p.add_argument("--degree", type=int, choices=(2, 3))
    p.add_argument("--map", required=True)
    p.set_defaults(run=cmd_invariants)

    p = sub.add_parser("classify", help="automorphism stratum of a cubic map or point")
    p.add_argument("input", nargs="?")
    p.add_argument("--map", dest="map_path")
    p.add_argument("--point", dest="point_path")
    p.set_defaults(run=cmd_classify)

    p = sub.add_parser("validate", help="check that a point lies on the moduli space")
    p.add_argument("--degree", type=int, choices=(2, 3))
    p.add_argument("--point", required=True)
    p.set_defaults(run=cmd_validate)

    p = sub.add_parser("equivalent", help="weighted projective equality of two maps or points")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(run=cmd_equivalent)

    p = sub.add_parser("descend", help="model over the base field or an obstruction")
    p.add_argument("--degree", type=int, choices=(3,), default=3)
    p.add_argument("--point", required=True)
    p.add_argument("--height-bound", type=int,
                   help=f"conic search bound (default ${HEIGHT_ENV} or {DEFAULT_HEIGHT_BOUND})")
    p.set_defaults(run=cmd_descend)

    p = sub.add_parser("reconstruct2", help="model of a degree-2 point with r != 0")
    p.add_argument("--point", required=True)
    p.add_argument("--W", help="unimodular matrix entries p,q,r,s (default identity)")
    p.set_defaults(run=cmd_reconstruct2)

    p = sub.add_parser("selftest", help="randomized checks of the whole pipeline")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=20)
    p.set_defaults(run=cmd_selftest)
    return parser


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    if args.verb == "classify":
        given = [x for x in (args.input, args.map_path, args.point_path) if x]
        if len(given) != 1:
            print(dumps({"schema": SCHEMA, "error": "usage",
                         "detail": "classify takes exactly one map or point file"}), file=stdout)
            return 2
        args.input = given[0]
    try:
        out, code = args.run(args), 0
        if args.verb == "selftest" and not out["passed"]:
            code = 1
    except InputError as exc:
        out, code = {"error": exc.code, "detail": exc.detail}, 2
    except RatModuliError as exc:
        out, code = {"error": exc.code, "detail": str(exc)}, 1
    out["schema"] = SCHEMA
    print(dumps(out), file=stdout)
    if args.human:
        print(_human(args.verb, out), file=stderr)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
