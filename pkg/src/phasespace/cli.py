"""Command-line entry point: ``phasespace {demo,star,dispersion,verify}``.

Exit status is 0 on success, 1 when a verification fails and 2 on usage
errors (bad flags, unparsable expressions, unknown suites).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional

import numpy as np

from . import ensembles, oscillator, verify
from .errors import PhaseSpaceError
from .parser import format_symbol, parse_observable, parse_rational
from .grid import PhaseSpaceGrid, eval_symbol
from .star import INTERIOR_MARGIN, star_grid, star_poly
from .weyl import PolySymbol, quantize_poly

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class Result:
    name: str
    value: Any
    equation_tag: str
    tolerance: Optional[float] = None


@dataclass
class RunReport:
    command: str
    params: Dict[str, Any]
    results: List[Result] = field(default_factory=list)
    payloads: Dict[str, Dict[str, list]] = field(default_factory=dict)

    def add(self, name, value, tag, tolerance=None):
        self.results.append(Result(name, value, tag, tolerance))

    def to_dict(self):
        return {
            "command": self.command,
            "params": self.params,
            "results": [vars(r) for r in self.results],
            "payloads": self.payloads,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, default=_jsonable)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "value", "equation_tag", "tolerance"])
        for r in self.results:
            w.writerow([r.name, _jsonable(r.value), r.equation_tag,
                        "" if r.tolerance is None else r.tolerance])
        for name, table in self.payloads.items():
            buf.write(f"\n# {name}\n")
            cols = list(table)
            w.writerow(cols)
            for row in zip(*(table[c] for c in cols)):
                w.writerow(row)
        return buf.getvalue()


def _jsonable(x):
    if isinstance(x, Fraction):
        return float(x)
    if isinstance(x, complex):
        return x.real if x.imag == 0 else {"re": x.real, "im": x.imag}
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    return x


def _number(x):
    x = _jsonable(x)
    return float(x) if isinstance(x, (int, float)) else x


def _params(args) -> oscillator.OscillatorParams:
    return oscillator.OscillatorParams(args.m, args.omega)


def cmd_demo(args) -> RunReport:
    params = _params(args)
    g = args.grid
    rep = RunReport("demo", {"m": str(params.m), "omega": str(params.omega),
                             "grid": _grid_text(g), "bins": args.bins,
                             "order": 4 if args.order is None else args.order})
    w = oscillator.ground_wigner(params, g)
    H = oscillator.hamiltonian_symbol(params)
    q2 = ensembles.expectation(PolySymbol.monomial(2, 0), w)
    p2 = ensembles.expectation(PolySymbol.monomial(0, 2), w)
    report = ensembles.dispersion_gap(H, w)
    marginal = oscillator.energy_marginal(w, params, args.bins)
    e0 = float(params.e0)

    rep.add("q_variance", q2, "ground-wigner-position-spread", 1e-6)
    rep.add("p_variance", p2, "ground-wigner-momentum-spread", 1e-6)
    rep.add("uncertainty_product", q2 * p2, "ground-wigner-uncertainty-product", 1e-6)
    rep.add("energy_mean", report.mean, "ground-wigner-energy-mean", 1e-6)
    rep.add("classical_variance", report.variance, "phase-space-dispersion", 1e-6)
    rep.add("star_variance", report.star_variance, "star-dispersion-of-eigenprojector", 1e-8)
    rep.add("gap", report.gap, "dispersion-gap", 1e-6)
    rep.add("hilbert_variance",
            ensembles.hilbert_dispersion(quantize_poly(H), 0, params),
            "hilbert-dispersion-of-eigenprojector", 1e-10)
    order = 4 if args.order is None else args.order
    m = INTERIOR_MARGIN
    hh = star_grid(eval_symbol(H, g), eval_symbol(H, g), order)
    dev = float(np.abs(hh.values - eval_symbol(star_poly(H, H), g).values)[m:-m, m:-m].max())
    rep.add("grid_star_deviation", dev, "grid-vs-exact-star-product", 1e-6)
    rep.add("marginal_mean", marginal.mean, "energy-marginal-mean", 1e-3 * e0)
    rep.add("marginal_variance", marginal.variance, "energy-marginal-variance", 1e-2 * e0 * e0)
    lo, hi = marginal.bin_edges[:-1], marginal.bin_edges[1:]
    reference = (np.exp(-lo / e0) - np.exp(-hi / e0)) / (hi - lo)
    rep.payloads["energy_marginal"] = {
        "e_lo": lo.tolist(),
        "e_hi": hi.tolist(),
        "density": marginal.density.tolist(),
        "exponential_reference": reference.tolist(),
    }
    return rep


def cmd_star(args) -> RunReport:
    a = parse_observable(args.a)
    b = parse_observable(args.b)
    rep = RunReport("star", {"a": a.source, "b": b.source})
    rep.add("star_product", format_symbol(star_poly(a.symbol, b.symbol)), "moyal-star-product", 0.0)
    return rep


def _ensemble(args):
    kind = args.kind
    x, y = parse_rational(args.x), parse_rational(args.y)
    if kind == "delta":
        return ensembles.DeltaAt(x, y), {"ensemble": "delta", "q": str(x), "p": str(y)}
    params = oscillator.OscillatorParams(x, y)
    return (oscillator.ground_wigner(params, args.grid),
            {"ensemble": "ground", "m": str(x), "omega": str(y), "grid": _grid_text(args.grid)})


def cmd_dispersion(args) -> RunReport:
    obs = parse_observable(args.expr)
    A = obs.symbol
    e, eparams = _ensemble(args)
    rep = RunReport("dispersion", {"expr": obs.source, **eparams})
    if isinstance(e, ensembles.DeltaAt):
        # exact pointwise values; the star terms are evaluated at the point
        mean = ensembles.expectation_exact(A, e)
        second = ensembles.expectation_exact(A * A, e)
        star_second = star_poly(A, A).evaluate(e.q, e.p)
        vals = {
            "mean": mean,
            "second_moment": second,
            "variance": ensembles.classical_dispersion_exact(A, e),
            "star_variance": star_second - mean * mean,
            "gap": second - star_second,
        }
        for name, v in vals.items():
            rep.add(name, _number(complex(v)), "point-ensemble-exact", 0.0)
    else:
        for name, v in ensembles.dispersion_gap(A, e).as_dict().items():
            rep.add(name, v, "wigner-ensemble-" + name.replace("_", "-"), 1e-6)
    return rep


def cmd_verify(args) -> RunReport:
    results = verify.run_suite(args.suite, args.seed)
    rep = RunReport("verify", {"suite": args.suite, "seed": args.seed})
    for r in results:
        rep.add(f"{r.suite}.{r.name}", "pass" if r.passed else "fail", f"invariant:{r.suite}")
    rep.payloads["details"] = {
        "check": [f"{r.suite}.{r.name}" for r in results],
        "detail": [r.detail for r in results],
    }
    return rep


def _grid_text(g: PhaseSpaceGrid) -> str:
    return f"{g.q_min:g},{g.q_max:g},{g.n_q},{g.p_min:g},{g.p_max:g},{g.n_p}"


def _grid_arg(text: str) -> PhaseSpaceGrid:
    try:
        return PhaseSpaceGrid.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rational_arg(text: str) -> Fraction:
    try:
        value = parse_rational(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=_rational_arg, default=Fraction(1), help="mass, e.g. 1 or 3/2")
    common.add_argument("--omega", type=_rational_arg, default=Fraction(1), help="angular frequency")
    common.add_argument("--grid", type=_grid_arg, default=PhaseSpaceGrid.default(),
                        help="qmin,qmax,nq,pmin,pmax,np (default -8,8,256,-8,8,256)")
    common.add_argument("--bins", type=int, default=64, help="energy-marginal bins")
    common.add_argument("--order", type=int, default=None, help="star-series truncation for grid paths")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "csv"), default="json")

    parser = argparse.ArgumentParser(prog="phasespace", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("demo", parents=[common], help="ground-state oscillator pipeline")
    p.set_defaults(func=cmd_demo)

    p = sub.add_parser("star", parents=[common], help="exact star product of two expressions")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_star)

    p = sub.add_parser("dispersion", parents=[common],
                       help="dispersion report; ensemble is 'delta Q P' or 'ground M OMEGA'")
    p.add_argument("expr")
    p.add_argument("kind", choices=("delta", "ground"))
    p.add_argument("x")
    p.add_argument("y")
    p.set_defaults(func=cmd_dispersion)

    p = sub.add_parser("verify", parents=[common], help="run invariant suites")
    p.add_argument("suite", nargs="?", default="all",
                   help="algebra, weyl, star, ensembles, oscillator or all")
    p.set_defaults(func=cmd_verify)
    return parser


def _join_grid(argv):
    """Attach the --grid value so a leading '-' is not read as an option."""
    out = []
    it = iter(argv)
    for a in it:
        if a == "--grid":
            out.append("--grid=" + next(it, ""))
        else:
            out.append(a)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(_join_grid(sys.argv[1:] if argv is None else argv))
    start = time.perf_counter()
    try:
        report = args.func(args)
    except (PhaseSpaceError, ValueError, ZeroDivisionError) as exc:
        print(f"phasespace: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = report.to_json() if args.format == "json" else report.to_csv()
    sys.stdout.write(out if out.endswith("\n") else out + "\n")
    if report.command == "verify":
        failed = [r for r in report.results if r.value != "pass"]
        elapsed = time.perf_counter() - start
        print(f"{len(report.results) - len(failed)}/{len(report.results)} checks passed "
              f"in {elapsed:.1f}s", file=sys.stderr)
        return EXIT_FAIL if failed else EXIT_OK
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
