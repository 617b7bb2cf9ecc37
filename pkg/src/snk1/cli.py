"""Command line interface ``snk1``.

Exit codes: 0 success, 1 user error (bad syntax, bad indices), 2 computation
error (non-unit, element outside the required ideal), 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .core_algebra import SnElement, ideal_level, scalar, to_split
from .k1 import (
    NotInCongruenceIdeal,
    NotInLevel,
    StructuralAnomaly,
    bdet,
    decompose,
    det_I,
    deg_nIj,
    k1_report,
)
from .laurent import LaurentUnit, NonScalarComponent, NotAUnit, format_laurent, laurent_reduce
from .matrix_group import (
    CornerMatrix,
    GroupWord,
    NotInCongruenceForm,
    as_element,
    as_matrix,
    factor_theta_elementary,
    gen_mu,
    gen_theta,
    word_eval,
)
from .parser import ParseError, format_element, format_scalar, format_split, parse_element

EXIT_USER = 1
EXIT_COMPUTE = 2
EXIT_VERIFY = 3

_COMPUTE_ERRORS = (
    NotAUnit,
    NotInLevel,
    NotInCongruenceIdeal,
    NotInCongruenceForm,
    NonScalarComponent,
    StructuralAnomaly,
    ArithmeticError,
)


class UserError(Exception):
    pass


# ---------------------------------------------------------------------------
# Input and output helpers
# ---------------------------------------------------------------------------


def parse_index_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UserError(f"expected a comma separated index list, got {text!r}") from None


def matrix_from_json(data: dict) -> CornerMatrix:
    try:
        n = int(data["n"])
        entries = {}
        for item in data.get("entries", []):
            entries[(int(item["row"]), int(item["col"]))] = parse_element(str(item["value"]), n - 1)
    except (KeyError, TypeError) as exc:
        raise UserError(f"malformed matrix JSON: {exc}") from None
    return CornerMatrix(n, entries)


def matrix_to_json(m: CornerMatrix) -> dict:
    return {
        "n": m.n,
        "entries": [{"row": r, "col": c, "value": format_element(v)} for (r, c), v in sorted(m.entries.items())],
    }


def _load_json_arg(text: str):
    if text.lstrip().startswith("{"):
        return json.loads(text)
    if os.path.isfile(text):
        with open(text) as fh:
            return json.load(fh)
    return None


def read_element(text: str, n: int | None) -> SnElement:
    """Element text, or a matrix JSON (inline or a file path) read as a unit of S_n."""
    data = _load_json_arg(text)
    if data is not None:
        m = matrix_from_json(data)
        if n is not None and n != m.n:
            raise UserError(f"--n {n} disagrees with matrix ambient {m.n}")
        return as_element(m)
    return parse_element(text, n)


def read_matrix(text: str, n: int | None) -> CornerMatrix:
    data = _load_json_arg(text)
    if data is not None:
        return matrix_from_json(data)
    return as_matrix(parse_element(text, n))


def format_unit(u: LaurentUnit) -> str:
    return format_laurent(u.as_element())


def format_word(w: GroupWord) -> list[str]:
    return [f"e_{t.i}{t.j}({format_element(t.a)})" for t in w.tokens]


def emit(args, payload, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_eval(args) -> int:
    a = read_element(args.expr, args.n)
    emit(args, {"n": a.n, "element": format_element(a)}, format_element(a))
    return 0


def cmd_mul(args) -> int:
    n = args.n
    if n is None:
        n = max(_ambient(args.a), _ambient(args.b))
    a, b = read_element(args.a, n), read_element(args.b, n)
    p = a * b
    emit(args, {"n": n, "element": format_element(p)}, format_element(p))
    return 0


def _ambient(text: str) -> int:
    from .parser import infer_n

    data = _load_json_arg(text)
    return int(data["n"]) if data is not None else infer_n(text)


def cmd_split(args) -> int:
    a = read_element(args.expr, args.n)
    text = format_split(to_split(a))
    emit(args, {"n": a.n, "split": text}, text)
    return 0


def cmd_laurent(args) -> int:
    a = read_element(args.expr, args.n)
    drop = parse_index_list(args.drop) if args.drop else None
    r = laurent_reduce(a, drop)
    text = format_laurent(r)
    emit(args, {"vars": list(r.vars), "laurent": text}, text)
    return 0


def cmd_level(args) -> int:
    a = read_element(args.expr, args.n)
    lvl = ideal_level(a)
    emit(args, {"n": a.n, "level": lvl}, str(lvl))
    return 0


def _unit_payload(u: LaurentUnit) -> dict:
    return {"coeff": format_scalar(u.coeff), "exponents": dict(zip(map(str, u.vars), u.expo)), "unit": format_unit(u)}


def cmd_bdet(args) -> int:
    m = read_matrix(args.matrix, args.n)
    u = bdet(m)
    emit(args, _unit_payload(u), format_unit(u))
    return 0


def cmd_detI(args) -> int:
    a = read_element(args.expr, args.n)
    u = det_I(a, parse_index_list(args.I))
    emit(args, _unit_payload(u), format_unit(u))
    return 0


def cmd_deg(args) -> int:
    a = read_element(args.expr, args.n)
    d = deg_nIj(a, parse_index_list(args.I), args.j)
    emit(args, {"deg": d}, str(d))
    return 0


def _require_n(args) -> int:
    if args.n is None:
        raise UserError("--n is required")
    return args.n


def cmd_theta(args) -> int:
    n = _require_n(args)
    th = gen_theta(n, args.i, args.j, parse_index_list(args.J))
    payload = {"n": n, "element": format_element(th)}
    text = format_element(th)
    if args.matrix:
        m = as_matrix(th)
        payload["matrix"] = matrix_to_json(m)
        text += "\n" + json.dumps(matrix_to_json(m))
    emit(args, payload, text)
    return 0


def cmd_mu(args) -> int:
    n = _require_n(args)
    mu = gen_mu(n, parse_index_list(args.I), scalar(args.lam))
    payload = {"n": n, "element": format_element(mu)}
    text = format_element(mu)
    if args.matrix:
        m = as_matrix(mu)
        payload["matrix"] = matrix_to_json(m)
        text += "\n" + json.dumps(matrix_to_json(m))
    emit(args, payload, text)
    return 0


def _report_text(rep) -> str:
    lines = [f"n_{i}{j} = {v}" for (i, j), v in sorted(rep.n_ij.items())]
    lines += [f"lambda_{k} = {format_scalar(v)}" for k, v in sorted(rep.lambda_k.items())]
    lines.append(f"residual = {format_element(rep.residual)}")
    lines.append(f"is_elementary = {str(rep.is_elementary).lower()}")
    return "\n".join(lines)


def cmd_decompose(args) -> int:
    a = read_element(args.expr, args.n)
    rep = decompose(a, parse_index_list(args.support))
    emit(args, rep.to_json(), _report_text(rep))
    return 0


def cmd_is_elementary(args) -> int:
    a = read_element(args.expr, args.n)
    rep = decompose(a, parse_index_list(args.support))
    emit(args, {"is_elementary": rep.is_elementary}, str(rep.is_elementary).lower())
    return 0


def cmd_factor_theta(args) -> int:
    n = _require_n(args)
    J = parse_index_list(args.J)
    w = factor_theta_elementary(n, args.i, args.j, J)
    target = CornerMatrix.diag(n, [gen_theta(n - 1, args.i, args.j, J)])
    ok = w.is_elementary() and word_eval(w) == target
    tokens = format_word(w)
    payload = {
        "n": n,
        "tokens": [{"row": t.i, "col": t.j, "value": format_element(t.a)} for t in w.tokens],
        "length": len(w),
        "check": "pass" if ok else "fail",
    }
    emit(args, payload, "\n".join(tokens + [f"length = {len(w)}", f"check = {payload['check']}"]))
    return 0 if ok else EXIT_VERIFY


def cmd_k1(args) -> int:
    n = _require_n(args)
    support = parse_index_list(args.support) if args.support else None
    rep = k1_report(n, support)
    text = rep.structure
    if args.verbose:
        text += f"\ngenerator_count = {rep.generator_count}\n" + "\n".join(rep.k1_generators)
    emit(args, rep.to_json(), text)
    return 0


def cmd_verify(args) -> int:
    from .verify import run_all

    checks = run_all()
    ok = all(c.passed for c in checks)
    if args.json:
        print(json.dumps([c.to_json() for c in checks], indent=2))
    else:
        for c in checks:
            print(f"{c.status.upper():4s}  {c.id:30s} {c.detail}")
        print(f"{sum(c.passed for c in checks)}/{len(checks)} checks passed")
    return 0 if ok else EXIT_VERIFY


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=None, help="ambient number of components")
    common.add_argument("--json", action="store_true", help="machine readable output")

    p = argparse.ArgumentParser(prog="snk1", description="Exact computations in S_n and its K_1 group.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(func=fn)
        return sp

    add("eval", cmd_eval, "print the normal form").add_argument("expr")
    sp = add("mul", cmd_mul, "multiply two elements")
    sp.add_argument("a")
    sp.add_argument("b")
    add("split", cmd_split, "print the split-basis expansion").add_argument("expr")
    sp = add("laurent", cmd_laurent, "reduce to the Laurent ring")
    sp.add_argument("expr")
    sp.add_argument("--drop", help="components reduced to Laurent variables (default all)")
    add("level", cmd_level, "largest s with the element in a_{n,s}").add_argument("expr")
    add("bdet", cmd_bdet, "det-bar of a congruence unit (element or matrix JSON)").add_argument("matrix")
    sp = add("detI", cmd_detI, "det_I of a unit in 1 + a_{n,|I|}")
    sp.add_argument("expr")
    sp.add_argument("--I", required=True)
    sp = add("deg", cmd_deg, "deg_{n,I,j}")
    sp.add_argument("expr")
    sp.add_argument("--I", required=True)
    sp.add_argument("--j", type=int, required=True)
    for name, fn, help in (("theta", cmd_theta, "theta_ij(J)"), ("factor-theta", cmd_factor_theta, "elementary word for diag(theta_ij(J), 1)")):
        sp = add(name, fn, help)
        sp.add_argument("--i", type=int, required=True)
        sp.add_argument("--j", type=int, required=True)
        sp.add_argument("--J", required=True)
        if name == "theta":
            sp.add_argument("--matrix", action="store_true")
    sp = add("mu", cmd_mu, "mu_I(lambda)")
    sp.add_argument("--I", required=True)
    sp.add_argument("--lam", required=True)
    sp.add_argument("--matrix", action="store_true")
    for name, fn, help in (("decompose", cmd_decompose, "theta/mu/elementary decomposition"), ("is-elementary", cmd_is_elementary, "membership in the p-elementary group")):
        sp = add(name, fn, help)
        sp.add_argument("expr")
        sp.add_argument("--support", required=True)
    sp = add("k1", cmd_k1, "K_1 structure report")
    sp.add_argument("--support")
    sp.add_argument("--verbose", action="store_true")
    add("verify-paper", cmd_verify, "replay all identities and invariant batteries")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USER if exc.code else 0
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USER
    except _COMPUTE_ERRORS as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except (UserError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USER


if __name__ == "__main__":
    sys.exit(main())
