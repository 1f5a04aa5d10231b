#!/usr/bin/env python3
"""Panel grid of 2D projection outlines written by `nearopt run --outlines`."""

import argparse
import csv
import math
import re
from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

COLORS = {
    "planar_reference": "black",
    "funplex": "tab:blue",
    "spores": "tab:orange",
    "random_directions": "tab:green",
}


def read_outline(path):
    polys = defaultdict(list)
    with open(path, newline="") as f:
        reader = csv.reader(f)
        header = next(reader)
        for source, _, x, y in reader:
            polys[source].append((float(x), float(y)))
    return header[2], header[3], polys


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("dir", type=Path, help="directory with outline_<i>_<j>.csv files")
    ap.add_argument("-o", "--out", type=Path, help="image path (default: <dir>/outlines.png)")
    ap.add_argument("--prefix", default="", help="record prefix, e.g. r0_ for sweep tables")
    args = ap.parse_args()

    pattern = re.compile(re.escape(args.prefix) + r"outline_(\d+)_(\d+)\.csv$")
    files = sorted(
        (p for p in args.dir.iterdir() if pattern.match(p.name)),
        key=lambda p: tuple(int(g) for g in pattern.match(p.name).groups()),
    )
    if not files:
        raise SystemExit(f"no outline files in {args.dir}")

    cols = min(3, len(files))
    rows = math.ceil(len(files) / cols)
    fig, axes = plt.subplots(rows, cols, figsize=(4.2 * cols, 3.8 * rows), squeeze=False)
    for ax, path in zip(axes.flat, files):
        xname, yname, polys = read_outline(path)
        for source, pts in polys.items():
            color = COLORS.get(source, "gray")
            xs, ys = zip(*(pts + pts[:1]))
            if source == "planar_reference":
                ax.plot(xs, ys, color=color, lw=1.0, ls="--", label=source)
            else:
                ax.plot(xs, ys, color=color, lw=1.5, label=source)
                ax.fill(xs, ys, color=color, alpha=0.2)
        ax.set_xlabel(xname)
        ax.set_ylabel(yname)
    for ax in list(axes.flat)[len(files):]:
        ax.axis("off")
    handles, labels = axes.flat[0].get_legend_handles_labels()
    fig.legend(handles, labels, loc="lower center", ncol=max(1, len(labels)), frameon=False)
    fig.tight_layout(rect=(0, 0.05, 1, 1))
    out = args.out or args.dir / "outlines.png"
    fig.savefig(out, dpi=150)
    print(out)


if __name__ == "__main__":
    main()
