"""Command-line front end: figure data, thresholds, validation, sampling.

Subcommands emit flat files (CSV or JSON) with a stable schema so plotting
stays a pure view of the data. Flags override an optional TOML config file,
which overrides built-in defaults. The RELBELL_OUT_DIR environment variable
supplies the output directory when --out is not given.

Exit codes: 0 success, 1 numerical failure, 2 invalid arguments.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path
from typing import List, Optional

import numpy as np

from .chsh import (
    ChshSetting,
    Direction,
    ThresholdNotReachableError,
    chsh_constrained,
    chsh_value,
    pair_expectation,
    reduced_density_matrix,
    sample_outcomes,
    threshold_rapidity,
    threshold_width,
)
from .decoherence import (
    McConfig,
    QuadratureConfig,
    decoherence_factor,
    decoherence_factor_smallwidth,
    decoherence_factor_ultra,
    mc_decoherence_factor,
)
from .quadrature import QuadratureConvergenceError
from .wavepacket import PacketSpec

CSV_COLUMNS = ("phi", "f", "alpha", "k", "w", "v")
OUT_DIR_ENV = "RELBELL_OUT_DIR"


def _fmt(x: float) -> str:
    return "%.17g" % x


def _out_path(out: Optional[str], default_name: str) -> Path:
    if out:
        return Path(out)
    return Path(os.environ.get(OUT_DIR_ENV, ".")) / default_name


def _json_alpha(alpha: float):
    return "inf" if math.isinf(alpha) else alpha


def _write_sweep(rows: List[dict], path: Path, fmt: str) -> None:
    rows = sorted(rows, key=lambda r: (r["alpha"], r["phi"], r["w"]))
    path.parent.mkdir(parents=True, exist_ok=True)
    if fmt == "csv":
        with open(path, "w", newline="") as fh:
            fh.write(",".join(CSV_COLUMNS) + "\n")
            for r in rows:
                fh.write(",".join(_fmt(r[c]) for c in CSV_COLUMNS) + "\n")
    else:
        records = [dict(r, alpha=_json_alpha(r["alpha"])) for r in rows]
        with open(path, "w") as fh:
            json.dump(records, fh, indent=2)
            fh.write("\n")


def _quad_config(tol: Optional[float]) -> QuadratureConfig:
    if tol is None:
        return QuadratureConfig()
    return QuadratureConfig(rel_tol=tol)


def cmd_fig1(
    k: float,
    w: float,
    alphas: List[float],
    phi_points: int,
    out: Path,
    fmt: str = "csv",
    tol: Optional[float] = None,
) -> Path:
    """Sweep of the constrained CHSH value over phi, one curve per rapidity.

    One quadrature evaluation per rapidity, reused across the whole phi
    grid; both detectors carry the same factor by the mirror symmetry of
    the back-to-back configuration.
    """
    cfg = _quad_config(tol)
    packet = PacketSpec(k, w)
    phis = np.linspace(0.0, 2.0 * math.pi, phi_points, endpoint=False)
    rows = []
    for alpha in alphas:
        v = decoherence_factor(alpha, packet, cfg).value
        for phi in phis:
            rows.append(
                {
                    "phi": float(phi),
                    "f": chsh_constrained(v, v, float(phi)),
                    "alpha": float(alpha),
                    "k": k,
                    "w": w,
                    "v": v,
                }
            )
    _write_sweep(rows, out, fmt)
    return out


def cmd_fig2(
    k: float,
    widths: List[float],
    phi_points: int,
    out: Path,
    fmt: str = "csv",
    tol: Optional[float] = None,
) -> Path:
    """Same sweep in the saturated large-rapidity limit, one curve per width.

    The rapidity column carries the sentinel inf so both figures share one
    schema.
    """
    cfg = _quad_config(tol)
    phis = np.linspace(0.0, 2.0 * math.pi, phi_points, endpoint=False)
    rows = []
    for w in widths:
        v = decoherence_factor_ultra(PacketSpec(k, w), cfg).value
        for phi in phis:
            rows.append(
                {
                    "phi": float(phi),
                    "f": chsh_constrained(v, v, float(phi)),
                    "alpha": math.inf,
                    "k": k,
                    "w": w,
                    "v": v,
                }
            )
    _write_sweep(rows, out, fmt)
    return out


def cmd_threshold(
    mode: str,
    k: float,
    w: Optional[float],
    tol: float,
    out: Path,
) -> int:
    """Locate the loss-of-violation threshold and write a JSON record."""
    record = {"mode": mode, "k": k, "w": w}
    try:
        if mode == "rapidity":
            res = threshold_rapidity(PacketSpec(k, w), tol=tol)
        else:
            res = threshold_width(k, tol=tol)
    except ThresholdNotReachableError as exc:
        record["error"] = str(exc)
        _write_json(record, out)
        print(f"threshold not reachable: {exc}", file=sys.stderr)
        return 1
    record.update(
        threshold=res.parameter,
        bracket_lo=res.bracket[0],
        bracket_hi=res.bracket[1],
        iterations=res.iterations,
    )
    _write_json(record, out)
    return 0


def _write_json(record, out: Path) -> None:
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w") as fh:
        json.dump(record, fh, indent=2)
        fh.write("\n")


def _chsh_trace_oracle(V: float, W: float, s: ChshSetting) -> float:
    # independent route: explicit operator trace against the density matrix
    tau = reduced_density_matrix(V, W).matrix
    op = np.kron(s.a2.operator(), s.b1.operator() + s.b2.operator()) + np.kron(
        s.a1.operator(), s.b1.operator() - s.b2.operator()
    )
    return abs(float(np.real(np.trace(tau @ op))))


def cmd_validate(
    seed: int,
    out: Optional[Path] = None,
    fmt: str = "text",
    corrupt_tolerance: bool = False,
) -> int:
    """Cross-route consistency suite; exit 0 only if every check passes."""
    checks = []
    analytic_tol = 0.0 if corrupt_tolerance else 1e-2

    # quadrature vs Monte Carlo on representative parameter points
    worst_z = 0.0
    for i, (alpha, k, w) in enumerate([(0.5, 0.01, 1.0), (2.0, 1.0, 1.0), (5.0, 100.0, 4.0)]):
        packet = PacketSpec(k, w)
        vq = decoherence_factor(alpha, packet).value
        est, se = mc_decoherence_factor(alpha, packet, McConfig(10**6, seed + i))
        worst_z = max(worst_z, abs(vq - est) / se)
    checks.append(("quadrature-vs-mc", worst_z <= 3.0, f"max |z| = {worst_z:.3f}"))

    # quadrature vs narrow-packet closed form
    worst_rel = 0.0
    for alpha in (1.0, 2.0):
        vq = decoherence_factor(alpha, PacketSpec(0.0, 0.01)).value
        va = decoherence_factor_smallwidth(alpha, 0.01).value
        worst_rel = max(worst_rel, abs(vq - va) / va)
    checks.append(
        ("quadrature-vs-analytic", worst_rel <= analytic_tol, f"max rel = {worst_rel:.3e}")
    )

    # factorized value vs explicit trace
    gen = np.random.Generator(np.random.Philox(key=seed))
    worst_tr = 0.0
    for _ in range(20):
        vv, ww = gen.uniform(0.0, 0.45, size=2)
        angs = gen.uniform(0.0, 2.0 * math.pi, size=4)
        setting = ChshSetting(*(Direction(t) for t in angs))
        worst_tr = max(
            worst_tr, abs(chsh_value(vv, ww, setting) - _chsh_trace_oracle(vv, ww, setting))
        )
    checks.append(("trace-oracle", worst_tr <= 1e-12, f"max diff = {worst_tr:.3e}"))

    # density matrix structure on the factor grid
    worst_struct = 0.0
    for vv in np.arange(0.0, 0.51, 0.1):
        for ww in np.arange(0.0, 0.51, 0.1):
            tau = reduced_density_matrix(float(vv), float(ww)).matrix
            herm = float(np.max(np.abs(tau - tau.conj().T)))
            tr = abs(float(np.real(np.trace(tau))) - 1.0)
            mineig = float(np.min(np.linalg.eigvalsh(tau)))
            worst_struct = max(worst_struct, herm, tr, max(0.0, -mineig - 1e-10))
    checks.append(("state-structure", worst_struct <= 1e-12, f"max defect = {worst_struct:.3e}"))

    # sampler against the closed-form expectation
    state = reduced_density_matrix(0.1, 0.2)
    a, b = Direction(0.0), Direction(math.pi / 3.0)
    e_hat, se = sample_outcomes(state, a, b, 10**5, seed + 7)
    pred = pair_expectation(0.1, 0.2, a, b)
    z = abs(e_hat - pred) / se
    checks.append(("sampler-soundness", z <= 4.0, f"|z| = {z:.3f}"))

    lines = []
    for name, ok, detail in checks:
        lines.append(f"{name:<24} {'PASS' if ok else 'FAIL'}  {detail}")
    n_fail = sum(1 for _, ok, _ in checks if not ok)
    lines.append(f"{len(checks) - n_fail}/{len(checks)} checks passed")
    if fmt == "json":
        report = json.dumps(
            [{"check": n, "status": "PASS" if ok else "FAIL", "detail": d} for n, ok, d in checks],
            indent=2,
        ) + "\n"
    else:
        report = "\n".join(lines) + "\n"
    sys.stdout.write(report)
    if out is not None:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(report)
    return 0 if n_fail == 0 else 1


def cmd_sample(
    k: float,
    w: float,
    alpha: float,
    theta_a: float,
    theta_b: float,
    n: int,
    seed: int,
    out: Optional[Path] = None,
    fmt: str = "text",
    tol: Optional[float] = None,
) -> int:
    """Simulate n joint measurements and compare with the closed form."""
    v = decoherence_factor(alpha, PacketSpec(k, w), _quad_config(tol)).value
    state = reduced_density_matrix(v, v)
    a, b = Direction(theta_a), Direction(theta_b)
    e_hat, se = sample_outcomes(state, a, b, n, seed)
    pred = pair_expectation(v, v, a, b)
    if fmt == "json":
        report = json.dumps(
            {
                "e_hat": e_hat,
                "std_error": se,
                "prediction": pred,
                "v": v,
                "n": n,
                "seed": seed,
            },
            indent=2,
        ) + "\n"
    else:
        report = (
            f"estimate   {_fmt(e_hat)}\n"
            f"std_error  {_fmt(se)}\n"
            f"prediction {_fmt(pred)}\n"
            f"v          {_fmt(v)}\n"
        )
    sys.stdout.write(report)
    if out is not None:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(report)
    return 0


def _load_config(path: Optional[str], command: str) -> dict:
    if not path:
        return {}
    try:
        import tomllib
    except ImportError:
        import tomli as tomllib
    with open(path, "rb") as fh:
        data = tomllib.load(fh)
    merged = {k: v for k, v in data.items() if not isinstance(v, dict)}
    merged.update(data.get(command, {}))
    return merged


def _pick(args_value, config: dict, key: str, default):
    if args_value is not None:
        return args_value
    if key in config:
        return config[key]
    return default


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="relbell",
        description="CHSH correlations seen by relativistically moving detectors",
    )
    p.add_argument("--config", help="TOML config file; flags take precedence")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt_default=None):
        sp.add_argument("--out", help="output path (default under $%s)" % OUT_DIR_ENV)
        sp.add_argument("--format", choices=("csv", "json"), default=fmt_default)
        sp.add_argument("--seed", type=int)
        sp.add_argument("--tol", type=float)

    f1 = sub.add_parser("fig1", help="F(phi) sweep, one curve per rapidity")
    f1.add_argument("--k", type=float)
    f1.add_argument("--w", type=float)
    f1.add_argument("--alpha", type=float, action="append")
    f1.add_argument("--phi-points", type=int, dest="phi_points")
    common(f1)

    f2 = sub.add_parser("fig2", help="saturated-limit sweep, one curve per width")
    f2.add_argument("--k", type=float)
    f2.add_argument("--w", type=float, action="append")
    f2.add_argument("--phi-points", type=int, dest="phi_points")
    common(f2)

    th = sub.add_parser("threshold", help="loss-of-violation threshold")
    th.add_argument("mode", choices=("rapidity", "width"))
    th.add_argument("--k", type=float)
    th.add_argument("--w", type=float)
    common(th)

    va = sub.add_parser("validate", help="cross-route consistency suite")
    va.add_argument(
        "--debug-corrupt-tolerance",
        action="store_true",
        help="force a failing check (exercises the failure exit path)",
    )
    common(va)

    sa = sub.add_parser("sample", help="simulate joint spin measurements")
    sa.add_argument("--k", type=float)
    sa.add_argument("--w", type=float)
    sa.add_argument("--alpha", type=float)
    sa.add_argument("--theta-a", type=float, dest="theta_a")
    sa.add_argument("--theta-b", type=float, dest="theta_b")
    sa.add_argument("--n", type=int)
    common(sa)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args.config, args.command)
    except (OSError, ValueError) as exc:
        print(f"cannot read config: {exc}", file=sys.stderr)
        return 2

    try:
        if args.command == "fig1":
            k = _pick(args.k, config, "k", 0.01)
            w = _pick(args.w, config, "w", 4.0)
            alphas = _pick(args.alpha, config, "alpha", [0.0, 1.0, 2.0, 3.0])
            phi_points = _pick(args.phi_points, config, "phi_points", 512)
            fmt = _pick(args.format, config, "format", "csv")
            if phi_points < 2:
                parser.error("phi-points must be at least 2")
            out = _out_path(args.out or config.get("out"), f"fig1.{fmt}")
            cmd_fig1(k, w, list(alphas), phi_points, out, fmt, args.tol)
            return 0
        if args.command == "fig2":
            k = _pick(args.k, config, "k", 0.01)
            widths = _pick(args.w, config, "w", [0.1, 0.5, 1.0, 2.0, 4.0])
            phi_points = _pick(args.phi_points, config, "phi_points", 512)
            fmt = _pick(args.format, config, "format", "csv")
            if phi_points < 2:
                parser.error("phi-points must be at least 2")
            out = _out_path(args.out or config.get("out"), f"fig2.{fmt}")
            cmd_fig2(k, list(widths), phi_points, out, fmt, args.tol)
            return 0
        if args.command == "threshold":
            k = _pick(args.k, config, "k", 0.01)
            w = _pick(args.w, config, "w", None)
            tol = _pick(args.tol, config, "tol", 1e-3)
            if tol <= 0:
                parser.error("tol must be positive")
            if args.mode == "rapidity" and w is None:
                parser.error("rapidity mode requires --w")
            out = _out_path(args.out or config.get("out"), "threshold.json")
            return cmd_threshold(args.mode, k, w, tol, out)
        if args.command == "validate":
            seed = _pick(args.seed, config, "seed", 12345)
            fmt = _pick(args.format, config, "format", "text")
            out = args.out or config.get("out")
            return cmd_validate(
                seed,
                Path(out) if out else None,
                fmt,
                corrupt_tolerance=args.debug_corrupt_tolerance,
            )
        if args.command == "sample":
            k = _pick(args.k, config, "k", 0.01)
            w = _pick(args.w, config, "w", 4.0)
            alpha = _pick(args.alpha, config, "alpha", 2.0)
            theta_a = _pick(args.theta_a, config, "theta_a", 0.0)
            theta_b = _pick(args.theta_b, config, "theta_b", math.pi / 3.0)
            n = _pick(args.n, config, "n", 10**6)
            seed = _pick(args.seed, config, "seed", 12345)
            fmt = _pick(args.format, config, "format", "text")
            if n < 1:
                parser.error("n must be at least 1")
            out = args.out or config.get("out")
            return cmd_sample(
                k, w, alpha, theta_a, theta_b, n, seed,
                Path(out) if out else None, fmt, args.tol,
            )
    except (QuadratureConvergenceError, ThresholdNotReachableError, RuntimeError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"invalid arguments: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
