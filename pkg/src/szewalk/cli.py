"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 input parse error, 3 domain error
(a structurally valid input outside the mathematical domain).  All reports
are deterministic for a fixed seed, byte for byte.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import line as walkline
from . import markov, sampling, szegedy
from .errors import DomainError, ParseError
from .tolerances import TOL

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_DOMAIN = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse calls sys.exit(2) on bad flags; route through our own codes
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    """Everything a subcommand needs, decoupled from argparse."""

    command: str
    input: Path | None = None
    matrix: Path | None = None
    T: int = 20000
    t: int = 200
    L: int | None = None
    init: tuple[complex, complex, complex] | None = None
    seed: int = 0
    trials: int = 20
    n: int = 4
    out: Path | None = None
    tol: float | None = None


def _parse_init(text: str) -> tuple[complex, complex, complex]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(
            f"--init needs exactly three comma-separated amplitudes, got {len(parts)}"
        )
    try:
        a, b, g = (complex(p) for p in parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad amplitude in --init: {exc}") from exc
    return (a, b, g)


def _build_parser() -> _Parser:
    chain_src = _Parser(add_help=False)
    chain_src.add_argument("--input", type=Path, default=None,
                           help="edge-list chain file")
    chain_src.add_argument("--matrix", type=Path, default=None,
                           help="JSON transition-matrix file")

    parser = _Parser(prog="szewalk", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[chain_src],
                       help="classify a chain and compare pi with the quantum limit")
    p.add_argument("--T", type=int, default=20000,
                   help="horizon for the empirical Cesaro average")
    p.add_argument("--tol", type=float, default=1e-6,
                   help="mismatch threshold for the pi vs limit comparison")
    p.add_argument("--out", type=Path, default=None)

    p = sub.add_parser("quantize", parents=[chain_src],
                       help="emit the spectral report of the quantized walk")
    p.add_argument("--out", type=Path, default=None)

    p = sub.add_parser("evolve", parents=[chain_src],
                       help="Cesaro-averaged vertex distribution of the quantum walk")
    p.add_argument("--T", type=int, default=20000, help="averaging horizon")
    p.add_argument("--out", type=Path, default=None)

    p = sub.add_parser("line", help="lazy-walk-on-the-line simulation and weak limit")
    p.add_argument("--t", type=int, default=200, help="number of steps")
    p.add_argument("--L", type=int, default=None, help="truncation radius (default t+2)")
    p.add_argument("--init", type=_parse_init, default=None,
                   help="three comma-separated launch amplitudes (normalized)")
    p.add_argument("--out", type=Path, default=None,
                   help="directory for position/cdf/density CSV files")

    p = sub.add_parser("conjecture-probe",
                       help="random-chain scan of the limiting-distribution conjecture")
    p.add_argument("--n", type=int, default=4, help="number of states")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path, default=None)

    p = sub.add_parser("lemmas", parents=[chain_src],
                       help="check the spectral overlap identities on a chain")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--out", type=Path, default=None)

    return parser


def parse_args(argv=None) -> RunConfig:
    ns = _build_parser().parse_args(argv)
    kwargs = {k: v for k, v in vars(ns).items() if v is not None}
    return RunConfig(**kwargs)


def _load_chain(cfg: RunConfig) -> markov.TransitionMatrix:
    if (cfg.input is None) == (cfg.matrix is None):
        raise UsageError(f"{cfg.command} needs exactly one of --input or --matrix")
    if cfg.input is not None:
        return markov.parse_edge_file(cfg.input.read_text())
    return markov.parse_matrix_file(cfg.matrix.read_text())


def _fmt_vector(v) -> str:
    return "[" + ", ".join(f"{x:.12g}" for x in np.asarray(v)) + "]"


def _emit(text: str, out: Path | None) -> None:
    if out is not None:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)
    else:
        sys.stdout.write(text)


def cmd_analyze(cfg: RunConfig) -> int:
    if cfg.T < 1:
        raise UsageError("--T must be at least 1")
    tm = _load_chain(cfg)
    profile = markov.classify(tm)
    walk = szegedy.quantize(tm)
    basis = szegedy.spectral_basis(walk)
    alpha0 = szegedy.uniform_initial_state(walk)
    pbar = szegedy.limiting_distribution(walk, basis, alpha0)
    averaged = szegedy.cesaro_average(walk, alpha0, cfg.T)

    period = "none" if profile.period is None else str(profile.period)
    reversible = {True: "yes", False: "no", None: "undefined"}[profile.reversible]
    lines = [f"states: {tm.n}"]
    for j, row in enumerate(np.asarray(tm.entries)):
        lines.append(f"P[{j + 1}]: {_fmt_vector(row)}")
    lines += [
        f"irreducible: {'yes' if profile.irreducible else 'no'}",
        f"period: {period}",
        f"aperiodic: {'yes' if profile.aperiodic else 'no'}",
        f"ergodic: {'yes' if profile.ergodic else 'no'}",
        f"reversible: {reversible}",
    ]
    if profile.stationary is None:
        lines.append("stationary: not unique")
    else:
        lines.append(f"stationary: {_fmt_vector(profile.stationary)}")
    lines.append(f"spectral basis size: {basis.m} of {tm.n * tm.n}")
    lines.append(f"eigenvalue groups: {len(basis.groups)}")
    lines.append(f"limiting distribution: {_fmt_vector(pbar)}")
    lines.append(f"cesaro average (T={cfg.T}): {_fmt_vector(averaged)}")
    if profile.stationary is not None:
        dev = float(np.max(np.abs(pbar - profile.stationary)))
        threshold = cfg.tol if cfg.tol is not None else 1e-6
        if dev > threshold:
            lines.append(
                f"NOTE: limiting distribution deviates from stationary "
                f"(max deviation {dev:.6g})"
            )
        else:
            lines.append(
                f"limiting distribution matches stationary within {dev:.6g}"
            )
    _emit("\n".join(lines) + "\n", cfg.out)
    return EXIT_OK


def cmd_quantize(cfg: RunConfig) -> int:
    tm = _load_chain(cfg)
    walk = szegedy.quantize(tm)
    basis = szegedy.spectral_basis(walk)
    alpha0 = szegedy.uniform_initial_state(walk)
    _emit(szegedy.spectral_report(basis, alpha0) + "\n", cfg.out)
    return EXIT_OK


def cmd_evolve(cfg: RunConfig) -> int:
    if cfg.T < 1:
        raise UsageError("--T must be at least 1")
    tm = _load_chain(cfg)
    walk = szegedy.quantize(tm)
    alpha0 = szegedy.uniform_initial_state(walk)
    averaged = szegedy.cesaro_average(walk, alpha0, cfg.T)
    _emit(szegedy.distribution_csv(averaged), cfg.out)
    return EXIT_OK


def cmd_line(cfg: RunConfig) -> int:
    if cfg.t < 0:
        raise UsageError("--t must be non-negative")
    raw = cfg.init if cfg.init is not None else (1.0, 1.0, 1.0)
    init = walkline.LineInitialState.normalized(*raw)
    dist = walkline.simulate(init, cfg.t, cfg.L)
    d = walkline.density_coefficients(init)
    total = walkline.density_moment(d, 0)

    lines = [
        f"t: {cfg.t}",
        f"L: {dist.x[-1]}",
        f"init: {init.alpha:.12g}, {init.beta:.12g}, {init.gamma:.12g}",
        f"point_mass_at_zero: {d.c:.12g}",
        f"density coefficients: a0={d.a0:.12g} a1={d.a1:.12g} a2={d.a2:.12g}",
        f"total mass (atom + integral): {total:.12g}",
    ]
    if cfg.t > 0:
        ks = walkline.kolmogorov_distance(dist, cfg.t, d)
        lines += [
            f"kolmogorov_distance: {ks:.12g}",
            f"moment 1: empirical {walkline.moment(dist, cfg.t, 1):.12g}, "
            f"weak limit {walkline.density_moment(d, 1):.12g}",
            f"moment 2: empirical {walkline.moment(dist, cfg.t, 2):.12g}, "
            f"weak limit {walkline.density_moment(d, 2):.12g}",
        ]
    else:
        lines.append("empirical comparison skipped: rescaling needs t >= 1")
    lines.append(f"max group speed: {walkline.max_group_speed():.12g}")
    report = "\n".join(lines) + "\n"

    if cfg.out is not None:
        outdir = cfg.out
        outdir.mkdir(parents=True, exist_ok=True)
        (outdir / "position.csv").write_text(walkline.position_csv(dist))
        if cfg.t > 0:
            (outdir / "cdf.csv").write_text(
                walkline.cdf_comparison_csv(dist, cfg.t, d)
            )
        edge = walkline.SUPPORT_RADIUS
        ys = np.linspace(-edge, edge, 403)[1:-1]
        (outdir / "density.csv").write_text(walkline.density_csv(d, ys))
        (outdir / "report.txt").write_text(report)
    sys.stdout.write(report)
    return EXIT_OK


def cmd_conjecture_probe(cfg: RunConfig) -> int:
    if cfg.trials < 1:
        raise UsageError("--trials must be at least 1")
    if cfg.n < 2:
        raise UsageError("--n must be at least 2")
    rng = sampling.SplitMix64(cfg.seed)
    lines = [f"conjecture probe: n={cfg.n} trials={cfg.trials} seed={cfg.seed}"]
    candidates = 0
    worst = 0.0
    for trial in range(cfg.trials):
        # alternate samplers so both conjecture branches get exercised
        symmetrized = trial % 2 == 1
        if symmetrized:
            tm = sampling.random_symmetric_stochastic(cfg.n, rng)
        else:
            tm = sampling.random_stochastic(cfg.n, rng)
        profile = markov.classify(tm)
        walk = szegedy.quantize(tm)
        basis = szegedy.spectral_basis(walk)
        alpha0 = szegedy.uniform_initial_state(walk)
        pbar = szegedy.limiting_distribution(walk, basis, alpha0)
        if not profile.irreducible or profile.stationary is None:
            lines.append(f"trial {trial:3d} skipped: not irreducible")
            continue
        if profile.reversible:
            target_name = "pi"
            target = profile.stationary
        else:
            target_name = "uniform"
            target = np.full(cfg.n, 1.0 / cfg.n)
        dev = float(np.max(np.abs(pbar - target)))
        worst = max(worst, dev)
        flag = ""
        if dev > TOL.probe_candidate:
            candidates += 1
            flag = "  CANDIDATE"
        sampler = "symmetrized" if symmetrized else "raw"
        lines.append(
            f"trial {trial:3d} sampler={sampler:<11s} "
            f"reversible={'yes' if profile.reversible else 'no':<3s} "
            f"target={target_name:<7s} max_dev={dev:.6e}{flag}"
        )
    lines.append(
        f"candidates above {TOL.probe_candidate:g}: {candidates} of {cfg.trials}; "
        f"largest deviation {worst:.6e}"
    )
    lines.append("the probe reports deviations only; it draws no conclusion beyond them")
    _emit("\n".join(lines) + "\n", cfg.out)
    return EXIT_OK


def cmd_lemmas(cfg: RunConfig) -> int:
    tm = _load_chain(cfg)
    walk = szegedy.quantize(tm)
    report = szegedy.verify_lemma_identities(walk, tol=cfg.tol)
    lines = []
    for check in report.checks:
        if not check.applicable:
            lines.append(f"lemma {check.index} ({check.name}): not applicable - {check.detail}")
        else:
            verdict = "PASS" if check.passed else "FAIL"
            lines.append(
                f"lemma {check.index} ({check.name}): "
                f"max deviation {check.max_deviation:.6e}  {verdict}"
            )
    lines.append(f"overall: {'PASS' if report.all_passed else 'FAIL'}")
    _emit("\n".join(lines) + "\n", cfg.out)
    return EXIT_OK


_COMMANDS = {
    "analyze": cmd_analyze,
    "quantize": cmd_quantize,
    "evolve": cmd_evolve,
    "line": cmd_line,
    "conjecture-probe": cmd_conjecture_probe,
    "lemmas": cmd_lemmas,
}


def main(argv=None) -> int:
    try:
        cfg = parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return _COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"parse error: cannot read input: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (DomainError, ValueError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def entry() -> None:
    sys.exit(main())
