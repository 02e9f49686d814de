#!/usr/bin/env python3
"""Regenerate the CHSH sweep data files and, when the renderer is
installed, the figures.

Everything goes through the command line interfaces so this script
doubles as an end-to-end smoke test of the published entry points.

Usage:
    python3 scripts/reproduce_figures.py --out-dir out
"""

from __future__ import annotations

import argparse
import shutil
import subprocess
import sys
from pathlib import Path

from relbell import cli

# Rapidity sweep at the reference packet (k = 0.01, w = 4). 1.39 sits
# right at the edge where the constrained maximum drops through 2.
FIG1_ALPHAS = ["0", "1", "1.39", "2", "3"]

# Width sweep in the infinite-rapidity limit.
FIG2_WIDTHS = ["0.1", "0.5", "1", "2", "4"]

THRESHOLDS = [
    ("rapidity", ["--k", "0.01", "--w", "4"]),
    ("rapidity", ["--k", "100", "--w", "4"]),
    ("width", ["--k", "0.01"]),
    ("width", ["--k", "100"]),
]


def run_sweeps(out_dir: Path) -> dict[str, Path]:
    fig1 = out_dir / "fig1.csv"
    argv = ["fig1", "--k", "0.01", "--w", "4", "--phi-points", "512", "--out", str(fig1)]
    for a in FIG1_ALPHAS:
        argv += ["--alpha", a]
    rc = cli.main(argv)
    if rc != 0:
        raise SystemExit(f"fig1 sweep failed with exit code {rc}")

    fig2 = out_dir / "fig2.csv"
    argv = ["fig2", "--k", "0.01", "--phi-points", "512", "--out", str(fig2)]
    for w in FIG2_WIDTHS:
        argv += ["--w", w]
    rc = cli.main(argv)
    if rc != 0:
        raise SystemExit(f"fig2 sweep failed with exit code {rc}")

    return {"fig1": fig1, "fig2": fig2}


def run_thresholds(out_dir: Path) -> None:
    for i, (mode, extra) in enumerate(THRESHOLDS):
        out = out_dir / f"threshold_{mode}_{i}.json"
        rc = cli.main(["threshold", mode, "--format", "json", "--out", str(out)] + extra)
        status = "ok" if rc == 0 else "not reachable"
        print(f"threshold {mode} {' '.join(extra)}: {status} -> {out}")


def render_figures(files: dict[str, Path], out_dir: Path) -> None:
    renderer = shutil.which("relbell-plots")
    if renderer is None:
        print("relbell-plots not installed; skipping image rendering")
        return
    jobs = [
        (files["fig1"], out_dir / "fig1.svg", "alpha", "constrained CHSH vs detector rapidity"),
        (files["fig2"], out_dir / "fig2.svg", "w", "ultrarelativistic limit vs packet width"),
    ]
    for src, img, group, title in jobs:
        proc = subprocess.run(
            [
                renderer,
                "render",
                "--input",
                str(src),
                "--output",
                str(img),
                "--group-by",
                group,
                "--title",
                title,
            ],
            capture_output=True,
            text=True,
        )
        if proc.returncode != 0:
            raise SystemExit(f"render failed for {src}: {proc.stderr.strip()}")
        print(proc.stdout.strip())


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", type=Path, default=Path("out"))
    parser.add_argument("--skip-render", action="store_true", help="data files only")
    args = parser.parse_args(argv)

    args.out_dir.mkdir(parents=True, exist_ok=True)
    files = run_sweeps(args.out_dir)
    run_thresholds(args.out_dir)
    if not args.skip_render:
        render_figures(files, args.out_dir)
    return 0


if __name__ == "__main__":
    sys.exit(main())
