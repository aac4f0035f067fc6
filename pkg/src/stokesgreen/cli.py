"""Command-line front end: deterministic data tables and verification reports.

Commands: ``kernel``, ``resolvent``, ``solve``, ``verify``, ``biot-savart``.
Parameters come from flags, optionally seeded by a JSON config file
(``--config``); flags override the file.  CSV output uses 17-significant-digit
round-trip floats and '#' provenance headers naming the formulas and contour
parameters used, so identical configs produce byte-identical files.

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import biot_savart as bs
from . import kernels, solver
from .core import FourierMode, HalfLineGrid, ModeField, SpectralPoint
from .errors import StokesGreenError
from .resolvent import (
    BoundaryOperatorD,
    check_resolvent_bound,
    resolvent_apply,
    resolvent_apply_general,
)

__all__ = ["main", "cmd_kernel", "cmd_resolvent", "cmd_solve", "cmd_verify",
           "cmd_biot_savart"]

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _parse_grid(spec: str) -> HalfLineGrid:
    try:
        a, b, n = spec.split(":")
        a, b, n = float(a), float(b), int(n)
    except ValueError as exc:
        raise ValueError(f"grid spec must be A:B:N, got {spec!r}") from exc
    if a != 0.0:
        raise ValueError("grid must start at 0")
    if n % 2 == 0:
        n += 1  # composite Simpson needs an odd node count
    return HalfLineGrid.uniform(b, n)


def _parse_general_bc(spec: str, mode: FourierMode) -> BoundaryOperatorD:
    kv = {}
    for item in spec.split(","):
        key, _, val = item.partition("=")
        kv[key.strip()] = float(val)
    return BoundaryOperatorD(alpha=kv.get("alpha", 0.0), beta=kv.get("beta", 0.0),
                             gamma_off=kv.get("gamma", kv.get("gamma_off", 0.0)),
                             c0=kv.get("c0", 1.0), mode=mode)


def _write_lines(path: str | None, lines: list[str]) -> None:
    text = "\n".join(lines) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _bump_params(ncomp: int, seed: int, z_max: float, interior: bool = False):
    """Random Gaussian bump parameters; ``interior`` keeps the bumps away from
    both boundaries (needed when data must be compatible with the BC)."""
    rng = np.random.default_rng(seed)
    lo = 0.25 * z_max if interior else 0.5
    centers = rng.uniform(lo, 0.5 * z_max, size=(ncomp, 1))
    widths = (rng.uniform(0.6, 1.0, size=(ncomp, 1)) if interior
              else rng.uniform(0.3, 1.5, size=(ncomp, 1)))
    amps = rng.normal(size=(ncomp, 2)) @ np.array([1.0, 1j])
    return centers, widths, amps


def _bump_values(grid: HalfLineGrid, params) -> np.ndarray:
    centers, widths, amps = params
    return amps[:, None] * np.exp(-((grid.nodes - centers) / widths) ** 2)


def _bump_field(grid: HalfLineGrid, ncomp: int, seed: int) -> np.ndarray:
    return _bump_values(grid, _bump_params(ncomp, seed, grid.z_max))


# ---------------------------------------------------------------------------
# commands


def cmd_kernel(args) -> int:
    mode = FourierMode(args.xi[0], args.xi[1])
    grid = _parse_grid(args.grid)
    D = _parse_general_bc(args.general_bc, mode) if args.general_bc else None
    sample = kernels.sample_green_function(args.t, args.nu, mode,
                                           grid.nodes, grid.nodes, D=D)
    # quadrature drift estimate from node doubling at the worst corner (y=z=0)
    if D is None:
        coarse = kernels.residual_kernel_time(args.t, args.nu, mode, 0.0, 0.0)
        fine = kernels.residual_kernel_time(args.t, args.nu, mode, 0.0, 0.0,
                                            n_arm=512, n_arc=256)
    else:
        coarse = kernels.residual_kernel_general(args.t, args.nu, mode, D, 0.0, 0.0)
        fine = kernels.residual_kernel_general(args.t, args.nu, mode, D, 0.0, 0.0,
                                               n_arm=512, n_arc=256)
    drift = max(np.max(np.abs(fine[k] - coarse[k])) for k in ("R1", "R2"))
    kind = "no-slip vorticity kernel" if D is None else \
        f"general-bc kernel alpha={D.alpha} beta={D.beta} gamma={D.gamma_off}"
    lines = [
        f"# green-function sample: heat-image part + residual contour quadrature ({kind})",
        f"# xi=({mode.xi1},{mode.xi2}) nu={_fmt(args.nu)} t={_fmt(args.t)} "
        f"regime={sample.regime} grid=0:{_fmt(grid.z_max)}:{grid.n}",
        f"# quadrature node-doubling drift estimate: {_fmt(drift)}",
        "y,z,entry,part,re,im",
    ]
    parts = {"H": sample.H[..., None, None] * np.eye(2), "R1": sample.R1, "R2": sample.R2}
    for i, y in enumerate(sample.y_nodes):
        for j, z in enumerate(sample.z_nodes):
            for a in range(2):
                for b in range(2):
                    for pname, arr in parts.items():
                        v = arr[i, j, a, b]
                        lines.append(f"{_fmt(y)},{_fmt(z)},{a + 1}{b + 1},{pname},"
                                     f"{_fmt(v.real)},{_fmt(v.imag)}")
    _write_lines(args.out, lines)
    return EXIT_OK


def cmd_resolvent(args) -> int:
    mode = FourierMode(args.xi[0], args.xi[1])
    grid = _parse_grid(args.grid)
    lam = complex(args.lam[0], args.lam[1])
    point = SpectralPoint(lam=lam, nu=args.nu, mode=mode)
    f = ModeField(grid, _bump_field(grid, 2, args.seed))
    if args.general_bc:
        D = _parse_general_bc(args.general_bc, mode)
        sol = resolvent_apply_general(f, point, D)
        kind = f"general-bc alpha={D.alpha} beta={D.beta} gamma={D.gamma_off}"
    else:
        sol = resolvent_apply(f, point)
        kind = "no-slip vorticity condition"
    lines = [
        "# resolvent solve u = v + w: even-image free part + boundary-layer correction",
        f"# xi=({mode.xi1},{mode.xi2}) nu={_fmt(args.nu)} lambda={_fmt(lam.real)}"
        f"{lam.imag:+.17g}j mu={_fmt(point.mu.real)}{point.mu.imag:+.17g}j ({kind})",
        f"# seed={args.seed} boundary_residual={_fmt(sol.boundary_residual())}",
        "z,component,part,re,im",
    ]
    for name, fld in (("u", sol.u), ("v", sol.v), ("w", sol.w), ("f", f)):
        for comp in range(2):
            for z, v in zip(grid.nodes, fld.values[comp]):
                lines.append(f"{_fmt(z)},{comp + 1},{name},{_fmt(v.real)},{_fmt(v.imag)}")
    _write_lines(args.out, lines)
    return EXIT_OK


def cmd_solve(args) -> int:
    mode = FourierMode(args.xi[0], args.xi[1])
    grid = _parse_grid(args.grid)
    bump = _bump_params(3, args.seed, grid.z_max, interior=True)
    vals = _bump_values(grid, bump)
    vals[2, 0] = 0.0
    problem = solver.StokesProblem(mode=mode, nu=args.nu,
                                   omega0=ModeField(grid, vals), t_final=args.t)
    times = np.linspace(0.0, args.t, 5)
    traj = solver.duhamel_solve(problem, times)
    lines = [
        "# per-mode evolution by the Green's-function (Duhamel) representation",
        f"# xi=({mode.xi1},{mode.xi2}) nu={_fmt(args.nu)} t_final={_fmt(args.t)} "
        f"seed={args.seed} grid=0:{_fmt(grid.z_max)}:{grid.n}",
        "t,z,component,re,im",
    ]
    for t, st in zip(traj.times, traj.states):
        for comp in range(3):
            for z, v in zip(grid.nodes, st.values[comp]):
                lines.append(f"{_fmt(t)},{_fmt(z)},{comp + 1},{_fmt(v.real)},{_fmt(v.imag)}")
    _write_lines(args.out, lines)
    if args.oracle:
        # run the oracle on a 4x refined grid so its own O(h^2) error does not
        # dominate the comparison; the coarse nodes are a subset of the fine ones
        refine = 4
        fine = HalfLineGrid.uniform(grid.z_max, refine * (grid.n - 1) + 1)
        fine_vals = _bump_values(fine, bump)
        fine_vals[2, 0] = 0.0
        fine_problem = solver.StokesProblem(mode=mode, nu=args.nu,
                                            omega0=ModeField(fine, fine_vals),
                                            t_final=args.t)
        oracle = solver.crank_nicolson_oracle(fine_problem, dt=args.t / 2000,
                                              snapshot_times=times[1:])
        errs = {}
        for t in times[1:]:
            a = traj.state_at(t).values
            b = oracle.state_at(t).values[:, ::refine]
            errs[_fmt(t)] = float(np.max(np.abs(a - b)) / max(np.max(np.abs(b)), 1e-300))
        report = {"comparison": "finite-difference oracle, ghost-node boundary",
                  "max_rel_errors": errs, "tol": args.tol,
                  "pass": all(e < args.tol for e in errs.values())}
        path = (args.out + ".oracle.json") if args.out and args.out != "-" else None
        _write_lines(path, [json.dumps(report, indent=2, sort_keys=True)])
        if not report["pass"]:
            return EXIT_NUMERICAL
    return EXIT_OK


def cmd_verify(args) -> int:
    mode = FourierMode(args.xi[0], args.xi[1])
    checks = []

    bounds = kernels.verify_kernel_bounds(
        nu_values=(1.0, 0.04) if args.full else (1.0,),
        xi_values=tuple(range(1, 9)) if args.full else (1, 4, 8),
        t_values=(0.01, 0.0316, 0.1, 0.316, 1.0) if args.full else (0.01, 0.1, 1.0),
        theta0=args.theta0)
    checks.append({"name": "kernel_bound_certificate",
                   "sup_ratios": {k: bounds[k]["sup"] for k in ("no_slip", "general")},
                   "drift": {k: bounds[k]["drift"] for k in ("no_slip", "general")},
                   "tolerance": bounds["drift_tol"], "pass": bounds["pass"]})

    point = SpectralPoint(lam=3.0 + 0.0j, nu=args.nu, mode=mode)
    rb = check_resolvent_bound(point, trials=10, seed=args.seed)
    rb_pass = np.isfinite(rb["l2_ratio"]) and np.isfinite(rb["h1_ratio"])
    checks.append({"name": "resolvent_sector_bound", "report": rb,
                   "tolerance": "finite sup ratios", "pass": bool(rb_pass)})

    grid = _parse_grid(args.grid)
    stream = np.exp(-((grid.nodes - 0.5 * grid.z_max) / (0.1 * grid.z_max)) ** 2)
    W = ModeField(grid, np.array([stream, 0.5 * stream, 0.2 * stream]))
    h = bs.curl_mode(W, mode)
    rt = bs.check_biot_savart_roundtrip(h, mode)
    checks.append({"name": "biot_savart_roundtrip", "report": rt,
                   "tolerance": args.tol, "pass": rt["rel_error"] < args.tol})

    report = {"checks": checks, "pass": all(c["pass"] for c in checks)}
    _write_lines(args.out, [json.dumps(report, indent=2, sort_keys=True, default=str)])
    return EXIT_OK if report["pass"] else EXIT_NUMERICAL


def cmd_biot_savart(args) -> int:
    mode = FourierMode(args.xi[0], args.xi[1])
    grid = _parse_grid(args.grid)
    rng = np.random.default_rng(args.seed)
    c = rng.uniform(0.4, 0.5) * grid.z_max
    w = 0.07 * grid.z_max
    stream = np.exp(-((grid.nodes - c) / w) ** 2)
    amps = rng.normal(size=3)
    W = ModeField(grid, np.array([amps[0] * stream, amps[1] * stream, amps[2] * stream]))
    h = bs.curl_mode(W, mode)
    rt = bs.check_biot_savart_roundtrip(h, mode)
    fvals = np.exp(-2.0 * grid.nodes)
    lap = (mode.norm**2 - 4.0) * fvals
    errs = bs.check_trace_identities(ModeField(grid, fvals), mode,
                                     laplacian=lap, df0=-2.0)
    report = {"roundtrip": rt,
              "trace_identity_errors": {"dirichlet": errs[0], "neumann": errs[1]},
              "seed": args.seed, "tolerance": args.tol,
              "pass": bool(rt["rel_error"] < args.tol and max(errs) < args.tol)}
    _write_lines(args.out, [json.dumps(report, indent=2, sort_keys=True)])
    return EXIT_OK if report["pass"] else EXIT_NUMERICAL


# ---------------------------------------------------------------------------
# argument plumbing


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stokesgreen",
                                     description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="JSON file of defaults; flags override")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--xi", nargs=2, type=int, default=[1, 0], metavar=("I", "J"))
        p.add_argument("--nu", type=float, default=1.0)
        p.add_argument("--grid", default="0:10:256", metavar="A:B:N")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None, metavar="PATH")
        p.add_argument("--tol", type=float, default=1e-3)

    p = sub.add_parser("kernel", help="sample the Green's function on a grid")
    common(p)
    p.add_argument("--t", type=float, default=0.5)
    p.add_argument("--general-bc", default=None, metavar="K=V[,K=V...]")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("resolvent", help="solve one resolvent problem")
    common(p)
    p.add_argument("--lambda", dest="lam", nargs=2, type=float, default=[3.0, 0.0],
                   metavar=("RE", "IM"))
    p.add_argument("--general-bc", default=None, metavar="K=V[,K=V...]")
    p.set_defaults(func=cmd_resolvent)

    p = sub.add_parser("solve", help="evolve one mode and optionally compare oracles")
    common(p)
    p.add_argument("--t", type=float, default=0.5)
    p.add_argument("--oracle", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="run the verification suites")
    common(p)
    p.add_argument("--full", action="store_true", help="full bound-certificate sweep")
    p.add_argument("--theta0", type=float, default=0.25)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("biot-savart", help="roundtrip and trace-identity checks")
    common(p)
    p.set_defaults(func=cmd_biot_savart)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args, remaining = parser.parse_known_args(argv)
    if remaining:
        parser.error(f"unrecognized arguments: {' '.join(remaining)}")
    if args.config:
        try:
            with open(args.config) as fh:
                config = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            print(f"error: cannot read config: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        # config supplies defaults only where the flag was not given
        given = set()
        for a in (argv if argv is not None else sys.argv[1:]):
            if a.startswith("--"):
                given.add(a[2:].split("=")[0].replace("-", "_"))
        for key, val in config.items():
            attr = key.replace("-", "_")
            if hasattr(args, attr) and attr not in given:
                setattr(args, attr, val)
    try:
        if args.nu <= 0:
            raise ValueError(f"viscosity must be positive, got {args.nu}")
        if not (0.0 < args.tol < 1.0):
            raise ValueError(f"tolerance must be in (0,1), got {args.tol}")
        if hasattr(args, "t") and args.t <= 0:
            raise ValueError(f"time must be positive, got {args.t}")
        return args.func(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except StokesGreenError as exc:
        print(f"numerical error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
