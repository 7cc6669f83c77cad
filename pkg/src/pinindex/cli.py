"""Command-line front end.

Every command produces a :class:`Report`: the command echo, a result payload
of exact values (rationals rendered as ``"p/q"`` strings), and a ``passed``
flag for verification commands. ``--json`` prints the report as one JSON
object; the default is a plain ``key: value`` listing.

Exit codes: 0 success or pass, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

__all__ = ["Report", "UsageError", "build_parser", "main", "run"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class Report:
    command: list[str]
    result: dict = field(default_factory=dict)
    passed: bool | None = None
    error: str | None = None

    def as_dict(self) -> dict:
        return {"command": self.command, "result": self.result, "passed": self.passed, "error": self.error}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        d = json.loads(text)
        return cls(d["command"], d["result"], d["passed"], d["error"])

    def to_text(self) -> str:
        lines = [f"command: {' '.join(self.command)}"]
        if self.error:
            lines.append(f"error: {self.error}")
        # the verdict is printed once, last
        lines.extend(_text_lines({k: v for k, v in self.result.items() if k != "passed"}))
        if self.passed is not None:
            lines.append(f"passed: {'yes' if self.passed else 'NO'}")
        return "\n".join(lines)


def _text_lines(obj, indent: str = "") -> list[str]:
    out = []
    for key, value in obj.items():
        if isinstance(value, dict):
            out.append(f"{indent}{key}:")
            out.extend(_text_lines(value, indent + "  "))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            out.append(f"{indent}{key}:")
            for item in value:
                out.append(indent + "  - " + ", ".join(f"{k}={v}" for k, v in item.items()))
        else:
            out.append(f"{indent}{key}: {value}")
    return out


def _q(x) -> str:
    return str(Fraction(x))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pinindex", description="Exact computations around a mod 2 index for pin- manifolds.")
    p.add_argument("--json", action="store_true", help="print the report as JSON (accepted anywhere)")
    top = p.add_subparsers(dest="group", required=True, parser_class=_Parser)

    g = top.add_parser("clifford", help="Clifford algebras and their representations")
    sub = g.add_subparsers(dest="action", required=True, parser_class=_Parser)
    sub.add_parser("classify").add_argument("--n", type=int, required=True)
    sub.add_parser("rep-check").add_argument("--n", type=int, required=True)

    g = top.add_parser("exterior", help="operators on the exterior algebra")
    sub = g.add_subparsers(dest="action", required=True, parser_class=_Parser)
    sub.add_parser("s-spectrum").add_argument("--m", type=int, required=True)
    o = sub.add_parser("oscillator")
    o.add_argument("--m", type=int, required=True)
    o.add_argument("--deg", type=int, required=True)

    g = top.add_parser("rp", help="real projective spaces")
    sub = g.add_subparsers(dest="action", required=True, parser_class=_Parser)
    sub.add_parser("sw").add_argument("--q", type=int, required=True)
    sub.add_parser("kind").add_argument("--q", type=int, required=True)

    g = top.add_parser("ko", help="KO(RP^{8k+2}) and the index q")
    sub = g.add_subparsers(dest="action", required=True, parser_class=_Parser)
    o = sub.add_parser("index")
    o.add_argument("--k", type=int, required=True)
    o.add_argument("--m", type=int, required=True)
    o.add_argument("--n", type=int, required=True)
    sub.add_parser("order").add_argument("--k", type=int, required=True)

    g = top.add_parser("series", help="exact power series")
    sub = g.add_subparsers(dest="action", required=True, parser_class=_Parser)
    o = sub.add_parser("identity")
    o.add_argument("--which", choices=("a45", "a8"), required=True)
    o.add_argument("--order", type=int, required=True)
    sub.add_parser("ahat").add_argument("--max-i", type=int, required=True)

    g = top.add_parser("congruence", help="Rokhlin-type congruences on supplied data")
    sub = g.add_subparsers(dest="action", required=True, parser_class=_Parser)
    o = sub.add_parser("check")
    o.add_argument("--which", choices=("a1", "a6", "a7", "a8", "a9"), required=True)
    o.add_argument("--data", required=True, help="path to a congruence data file")

    top.add_parser("verify-all", help="run every property suite")
    return p


# -- handlers ------------------------------------------------------------------

def _clifford_classify(a):
    from .clifford import classify
    t = classify(a.n)
    return {"n": a.n, "kind": t.kind, "field": t.field, "summands": t.summands,
            "irrep_dim": t.irrep_dim, "irrep_real_dim": t.irrep_real_dim}, None


def _clifford_rep_check(a):
    from .clifford import ExactMatrix, build_rep, classify
    rep = build_rep(a.n)
    relations = rep.check_relations()
    dim_ok = rep.dim == classify(a.n).irrep_real_dim
    result = {"n": a.n, "dim": rep.dim, "relations": relations, "dim_matches_classification": dim_ok}
    ok = relations and dim_ok
    if a.n % 4 == 3:
        plus = rep.volume_matrix() == ExactMatrix.identity(rep.dim)
        result["volume_is_identity"] = plus
        ok = ok and plus
    return result, ok


def _exterior_s_spectrum(a):
    from math import comb
    from .exterior import lowest_eigenspace, s_spectrum
    spectrum = s_spectrum(a.m)
    expected: dict[int, int] = {}
    for p in range(a.m + 1):
        v = (-1) ** p * (2 * p - a.m)
        expected[v] = expected.get(v, 0) + comb(a.m, p)
    low = lowest_eigenspace(a.m)
    ok = spectrum == sorted(expected.items()) and spectrum[0][0] == -a.m and len(low) == 1
    return {"m": a.m, "spectrum": [{"eigenvalue": v, "multiplicity": k} for v, k in spectrum],
            "lowest": spectrum[0][0], "lowest_multiplicity": len(low)}, ok


def _exterior_oscillator(a):
    from .exterior import oscillator_kernel
    ker = oscillator_kernel(a.m, a.deg)
    basis = []
    for vec in ker.basis:
        basis.append(" + ".join(f"{c}*Z^{list(alpha)}*blade{blade}" for (alpha, blade), c in sorted(vec.terms.items())))
    return {"m": a.m, "degree": a.deg, "dimension": ker.dimension, "basis": basis}, ker.dimension == 1


def _rp_sw(a):
    from .projective import sw_total, sw_total_by_powering
    w = sw_total(a.q)
    return {"q": a.q, "w": str(w), "coefficients": w.coeffs()}, w == sw_total_by_powering(a.q)


def _rp_kind(a):
    from .projective import pin_obstruction, structure_kind
    return {"q": a.q, "kind": structure_kind(a.q).value, "obstruction": pin_obstruction(a.q)}, None


def _ko_index(a):
    from .ko import KOClassRP, q_index
    c = KOClassRP(a.k, a.m, a.n)
    return {"k": a.k, "m": c.m, "n": c.n, "q": _q(q_index(c).value)}, None


def _ko_order(a):
    from .ko import ko_order
    return {"k": a.k, "order": ko_order(a.k)}, None


def _series_identity(a):
    from .series import identity_a8_sides, identity_a45_sides
    lhs, rhs = (identity_a45_sides if a.which == "a45" else identity_a8_sides)(a.order)
    holds = lhs == rhs
    result = {"which": a.which, "order": a.order, "holds": holds}
    if not holds:
        result["first_mismatch"] = next(j for j in range(a.order + 1) if lhs[j] != rhs[j])
    return result, holds


def _series_ahat(a):
    from .charclasses import a_hat_polys
    return {"max_i": a.max_i, "A": {f"A{i}": str(p) for i, p in enumerate(a_hat_polys(a.max_i))}}, None


def _congruence_check(a):
    from .congruence import congruence_check, parse_congruence_data
    try:
        with open(a.data, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read data file: {exc}") from None
    report = congruence_check(a.which, parse_congruence_data(text))
    return report.as_dict(), report.passed


def _verify_all(a):
    from .verify import verify_all
    results = verify_all()
    return {"checks": [r.as_dict() for r in results]}, all(r.passed for r in results)


HANDLERS = {
    ("clifford", "classify"): _clifford_classify,
    ("clifford", "rep-check"): _clifford_rep_check,
    ("exterior", "s-spectrum"): _exterior_s_spectrum,
    ("exterior", "oscillator"): _exterior_oscillator,
    ("rp", "sw"): _rp_sw,
    ("rp", "kind"): _rp_kind,
    ("ko", "index"): _ko_index,
    ("ko", "order"): _ko_order,
    ("series", "identity"): _series_identity,
    ("series", "ahat"): _series_ahat,
    ("congruence", "check"): _congruence_check,
    ("verify-all", None): _verify_all,
}


def run(argv) -> tuple[Report, int]:
    argv = list(argv)
    echo = [a for a in argv if a != "--json"]
    try:
        args = build_parser().parse_args(echo)
        handler = HANDLERS[(args.group, getattr(args, "action", None))]
        result, passed = handler(args)
    except UsageError as exc:
        return Report(echo, error=str(exc)), EXIT_USAGE
    except ValueError as exc:  # bad input values, malformed data, size guards
        return Report(echo, error=str(exc)), EXIT_USAGE
    report = Report(echo, result, passed)
    return report, EXIT_FAIL if passed is False else EXIT_OK


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if any(a in ("-h", "--help") for a in argv):
        try:
            build_parser().parse_args(argv)
        except SystemExit as exc:
            return int(exc.code or 0)
    report, code = run(argv)
    out = report.to_json() if "--json" in argv else report.to_text()
    print(out, file=sys.stderr if code == EXIT_USAGE and "--json" not in argv else sys.stdout)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
