"""Command line front end; every subcommand writes CSV.

Exit codes: 0 success, 2 parse error, 3 solver error.
"""
from __future__ import annotations

import argparse
import csv
import sys
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass

import numpy as np

from . import analytic, classical, liouvillian
from .config import ConfigError, hard_params, parse_config
from .errors import SolverError
from .fock import DensityMatrix, FockSpace
from .model import HardParams

SWEEP_HEADER = ["gamma", "rho0_a", "rho1_a", "rho2_a", "rho0_n", "rho1_n", "rho2_n", "band", "max_err"]

EXIT_PARSE = 2
EXIT_SOLVER = 3


def fmt(x) -> str:
    """17 significant digits, enough for an exact float round trip."""
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


@contextmanager
def _open_out(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _writer(fh):
    return csv.writer(fh, lineterminator="\n")


@dataclass(frozen=True)
class SweepRecord:
    gamma: float
    rho0_a: float
    rho1_a: float
    rho2_a: float
    band: str
    rho0_n: float | None = None
    rho1_n: float | None = None
    rho2_n: float | None = None
    max_err: float | None = None

    def row(self) -> list[str]:
        return [fmt(getattr(self, k)) if k != "band" else self.band for k in SWEEP_HEADER]


def sweep_record(gamma: float, eps1: float, numeric: bool, c: float = 1.0, cutoff: int | None = None) -> SweepRecord:
    ana = analytic.populations_gamma(gamma)
    band = analytic.classify(gamma).band
    if not numeric:
        return SweepRecord(gamma, *ana, band)
    try:
        res = liouvillian.solve_steady(HardParams.from_gamma(gamma, eps1, c=c), cutoff=cutoff)
    except SolverError as exc:
        raise type(exc)(f"gamma = {gamma!r}: {exc}") from exc
    num = res.populations[:3]
    err = float(np.max(np.abs(num - np.array(ana))))
    return SweepRecord(gamma, *ana, band, *map(float, num), err)


def _sweep_worker(args):
    return sweep_record(*args)


def sweep(gamma_min, gamma_max, steps, eps1=1e-3, numeric=False, c=1.0, cutoff=None, workers=1) -> list[SweepRecord]:
    if not (0 <= gamma_min < gamma_max):
        raise ValueError("need 0 <= gamma_min < gamma_max")
    if steps < 2:
        raise ValueError("steps must be >= 2")
    if numeric and not eps1 > 0:
        raise ValueError("eps1 must be > 0 for numeric sweeps")
    grid = np.linspace(gamma_min, gamma_max, steps)
    jobs = [(float(g), eps1, numeric, c, cutoff) for g in grid]
    if workers > 1 and numeric:
        with ProcessPoolExecutor(workers) as pool:
            return list(pool.map(_sweep_worker, jobs))
    return [_sweep_worker(j) for j in jobs]


def write_sweep(records, fh) -> None:
    w = _writer(fh)
    w.writerow(SWEEP_HEADER)
    for r in records:
        w.writerow(r.row())


def cmd_sweep(args) -> None:
    records = sweep(args.gamma_min, args.gamma_max, args.steps, args.eps1, args.numeric, args.c, args.cutoff, args.workers)
    with _open_out(args.out) as fh:
        write_sweep(records, fh)


def _config_params(args):
    cfg = parse_config(args.config)
    p = hard_params(cfg)
    cutoff = getattr(args, "cutoff", None)
    if cutoff is None:
        cutoff = cfg.get("cutoff")
    return p, cutoff


def cmd_steady(args) -> None:
    p, cutoff = _config_params(args)
    res = liouvillian.solve_steady(p, cutoff=cutoff)
    with _open_out(args.out) as fh:
        fh.write(f"# residual={fmt(res.residual)}\n")
        fh.write(f"# kernel_gap={fmt(res.kernel_gap)}\n")
        fh.write(f"# cutoff_used={res.cutoff_used}\n")
        w = _writer(fh)
        w.writerow(["n", "population"])
        for n, pop in enumerate(res.populations):
            w.writerow([n, fmt(pop)])


def cmd_evolve(args) -> None:
    p, cutoff = _config_params(args)
    space = FockSpace(cutoff if cutoff is not None else liouvillian.initial_cutoff(p))
    L = liouvillian.hard_liouvillian(p, space)
    rho0 = DensityMatrix.fock_state(space, args.n0)
    times, states = liouvillian.evolve_path(L, rho0, args.tfinal, args.dt, args.samples)
    with _open_out(args.out) as fh:
        w = _writer(fh)
        w.writerow(["t", "rho0", "rho1", "rho2", "trace"])
        for t, x in zip(times, states):
            diag = np.real(np.diag(x))
            w.writerow([fmt(t), *map(fmt, diag[:3]), fmt(np.trace(x).real)])


def cmd_soft(args) -> None:
    pop = analytic.soft_populations(args.nu, args.nmax)
    with _open_out(args.out) as fh:
        w = _writer(fh)
        w.writerow(["n", "population"])
        for n, v in enumerate(pop.values):
            w.writerow([n, fmt(v)])


def cmd_classical(args) -> None:
    p, _ = _config_params(args)
    traj = classical.integrate(p, args.z0, args.tfinal, args.dt)
    with _open_out(args.out) as fh:
        w = _writer(fh)
        w.writerow(["t", "re_z", "im_z", "abs2_z"])
        for t, z, r in zip(traj.times[:: args.every], traj.z_values[:: args.every], traj.abs2[:: args.every]):
            w.writerow([fmt(t), fmt(z.real), fmt(z.imag), fmt(r)])


def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hardosc", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sweep", help="regime populations over a gamma grid")
    s.add_argument("--gamma-min", type=float, default=0.0)
    s.add_argument("--gamma-max", type=float, default=1.0)
    s.add_argument("--steps", type=int, default=50)
    s.add_argument("--eps1", type=float, default=1e-3)
    s.add_argument("--c", type=float, default=1.0)
    s.add_argument("--numeric", action="store_true", help="add Liouvillian steady-state columns")
    s.add_argument("--cutoff", type=int, default=None)
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("steady", help="stationary populations from the Liouvillian kernel")
    s.add_argument("--config", required=True)
    s.add_argument("--cutoff", type=int, default=None)
    s.set_defaults(func=cmd_steady)

    s = sub.add_parser("evolve", help="RK4 evolution of the master equation from a Fock state")
    s.add_argument("--config", required=True)
    s.add_argument("--tfinal", type=float, required=True)
    s.add_argument("--cutoff", type=int, default=None)
    s.add_argument("--dt", type=float, default=None)
    s.add_argument("--n0", type=int, default=0, help="initial Fock state")
    s.add_argument("--samples", type=int, default=101)
    s.set_defaults(func=cmd_evolve)

    s = sub.add_parser("soft", help="soft-excitation populations from the hypergeometric series")
    s.add_argument("--nu", type=float, required=True)
    s.add_argument("--nmax", type=int, default=20)
    s.set_defaults(func=cmd_soft)

    s = sub.add_parser("classical", help="classical amplitude trajectory")
    s.add_argument("--config", required=True)
    s.add_argument("--z0", type=_complex, required=True)
    s.add_argument("--tfinal", type=float, required=True)
    s.add_argument("--dt", type=float, default=None)
    s.add_argument("--every", type=int, default=1, help="write every k-th step")
    s.set_defaults(func=cmd_classical)

    for p in sub.choices.values():
        p.add_argument("--out", default=None, help="output CSV path (stdout if omitted)")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        args.func(args)
    except (ConfigError, ValueError) as exc:
        print(f"hardosc {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SolverError as exc:
        print(f"hardosc {args.command}: solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except OSError as exc:
        print(f"hardosc {args.command}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
