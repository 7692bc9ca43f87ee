"""Command-line entry point: ``qdist fig1|fig2|fig3|properties|criteria|qjsd|simulate``.

Exit codes: 0 success, 1 validation or usage error, 2 property or bound failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import density, distinguishability, figures, properties, simplex
from .errors import SingularityError, ValidationError
from .figures import BoundViolation
from .hilbert import PureState

EXIT_OK, EXIT_USAGE, EXIT_PROPERTY = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _emit(text: str, out: str | None):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, newline="\n")


def _fmt(v) -> str:
    return "inf" if isinstance(v, float) and math.isinf(v) else f"{v:.12g}" if isinstance(v, float) else str(v)


def cmd_fig1(args):
    t = figures.fig1(args.a, args.b_start, args.b_stop, args.b_step)
    _emit(t.to_csv(), args.out)


def cmd_fig2(args):
    t = figures.fig2(args.phi, args.n_theta, args.tolerance)
    _emit(t.to_csv(), args.out)


def cmd_fig3(args):
    t = figures.fig3(args.n_theta, args.n_phi, args.tolerance)
    _emit(t.to_csv(), args.out)


def cmd_properties(args):
    results = properties.run_suite(args.suite, args.samples, args.seed)
    _emit(properties.report_json(results) + "\n", args.out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_PROPERTY


def cmd_criteria(args):
    p1, p2 = simplex.ProbVec(args.p1), simplex.ProbVec(args.p2)
    L = args.trials if args.trials is not None else 1
    lines = []
    try:
        w = distinguishability.wootters_criterion(p1, p2, L)
        lines.append(("wootters", w))
    except SingularityError as exc:
        lines.append(("wootters", f"singular chi-square denominator ({exc})"))
    lines.append(("jsd", distinguishability.jsd_criterion(p1, p2, L)))
    buf = []
    for name, v in lines:
        if isinstance(v, str):
            buf.append(f"{name}: {v}")
            continue
        verdict = f" distinguishable_at_L={args.trials}: {v.distinguishable}" if args.trials is not None else ""
        buf.append(f"{name}: statistic={_fmt(v.statistic)} threshold={_fmt(v.threshold)}"
                   f" min_trials={_fmt(v.min_trials)}{verdict}")
    _emit("\n".join(buf) + "\n", args.out)


def _state_or_matrix(arg: str, normalize: bool) -> density.DensityMatrix:
    path = Path(arg)
    if path.is_file():
        return density.load_density_matrix(path)
    amps = np.array([density.parse_complex(t) for t in arg.split(",")], dtype=complex)
    if normalize:
        return density.from_pure_state(PureState.from_vector(amps))
    return density.from_pure_state(PureState(amps))


def cmd_qjsd(args):
    r1 = _state_or_matrix(args.rho1, args.normalize)
    r2 = _state_or_matrix(args.rho2, args.normalize)
    v = density.quantum_jsd(r1, r2)
    _emit(
        f"quantum_jsd={_fmt(float(v))}\n"
        f"entropy_rho1={_fmt(density.von_neumann_entropy(r1))}\n"
        f"entropy_rho2={_fmt(density.von_neumann_entropy(r2))}\n",
        args.out,
    )


def cmd_simulate(args):
    r = distinguishability.monte_carlo_discrimination(
        simplex.ProbVec(args.p1), simplex.ProbVec(args.p2), args.trials, args.experiments, args.seed)
    _emit(f"success_rate={r.success_rate:.12g}\nstderr={r.stderr:.12g}\n"
          f"experiments={r.experiments}\ntrials={r.trials}\nseed={r.seed}\n", args.out)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="qdist", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, tol=None):
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--seed", type=int, default=7, help="64-bit RNG seed")
        if tol is not None:
            p.add_argument("--tolerance", type=float, default=tol, help=f"bound slack (default {tol:g})")

    p = sub.add_parser("fig1", help="JSD and W^2/2 for (a, 1-a) vs (b, 1-b)")
    p.add_argument("--a", type=float, default=0.5)
    p.add_argument("--b-start", type=float, default=0.001)
    p.add_argument("--b-stop", type=float, default=0.999)
    p.add_argument("--b-step", type=float, default=0.001)
    common(p)
    p.set_defaults(func=cmd_fig1)

    p = sub.add_parser("fig2", help="sqrt(2 JSD) against theta for fixed phi")
    p.add_argument("--phi", type=_floats, default=[0.5, 0.8], help="comma-separated phi values")
    p.add_argument("--n-theta", type=int, default=1024)
    common(p, figures.BOUND_SLACK)
    p.set_defaults(func=cmd_fig2)

    p = sub.add_parser("fig3", help="sqrt(2 JSD) over the (theta, phi) grid")
    p.add_argument("--n-theta", type=int, default=128)
    p.add_argument("--n-phi", type=int, default=128)
    common(p, figures.BOUND_SLACK)
    p.set_defaults(func=cmd_fig3)

    p = sub.add_parser("properties", help="run a randomized property suite")
    p.add_argument("suite", choices=sorted(properties.SUITES) + ["all"])
    p.add_argument("--samples", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_properties)

    p = sub.add_parser("criteria", help="evaluate both distinguishability criteria")
    p.add_argument("p1", type=_floats)
    p.add_argument("p2", type=_floats)
    p.add_argument("--trials", "-L", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_criteria)

    p = sub.add_parser("qjsd", help="quantum JSD of two density matrices or pure states")
    p.add_argument("rho1", help="matrix file, or comma-separated amplitudes like 1,0 or 0.6,0.8i")
    p.add_argument("rho2")
    p.add_argument("--normalize", action="store_true", help="normalize inline state vectors")
    common(p)
    p.set_defaults(func=cmd_qjsd)

    p = sub.add_parser("simulate", help="Monte-Carlo ML discrimination success rate")
    p.add_argument("p1", type=_floats)
    p.add_argument("p2", type=_floats)
    p.add_argument("--trials", "-L", type=int, required=True)
    p.add_argument("--experiments", type=int, default=10_000)
    common(p)
    p.set_defaults(func=cmd_simulate)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code = args.func(args)
    except BoundViolation as exc:
        print(f"qdist: bound check failed: {exc}", file=sys.stderr)
        return EXIT_PROPERTY
    except (ValidationError, SingularityError, ValueError, OSError) as exc:
        print(f"qdist: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return code or EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
