"""Graph and report rendering: DOT exports, Hasse-diagram figures, and
suite-report charts.

The specialization relation drawn everywhere is: an arrow u -> v means u
lies in every neighborhood of v, so arrows flow from widely-spread dense
points toward the special points that crowd onto them (a cone's apex
collects one arrow from each point it glues together).  Only covering
pairs are drawn.
"""

from __future__ import annotations

import csv
from typing import Iterable, Sequence, TextIO

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .bitsets import bits
from .harness import PropertyReport
from .spaces import TopSpace


def _hasse_edges(space: TopSpace) -> list[tuple[int, int]]:
    n = space.n
    # strict relation: u below v when u is in v's minimal neighborhood
    below = [[False] * n for _ in range(n)]
    for v in range(n):
        for u in bits(space.min_nbrs[v]):
            if u != v:
                below[u][v] = True
    edges = []
    for u in range(n):
        for v in range(n):
            if not below[u][v]:
                continue
            if any(below[u][w] and below[w][v] for w in range(n)):
                continue
            edges.append((u, v))
    return edges


def _quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def write_dot(space: TopSpace, out: TextIO, graph_name: str = "space") -> None:
    """Hasse diagram of the specialization relation in DOT format."""
    out.write(f"digraph {_quote(graph_name)} {{\n")
    out.write("  rankdir=BT;\n")
    for x in range(space.n):
        out.write(f"  n{x} [label={_quote(space.label(x))}];\n")
    for u, v in _hasse_edges(space):
        out.write(f"  n{u} -> n{v};\n")
    out.write("}\n")


def dot_text(space: TopSpace, graph_name: str = "space") -> str:
    import io

    buf = io.StringIO()
    write_dot(space, buf, graph_name)
    return buf.getvalue()


def _layers(space: TopSpace) -> list[int]:
    n = space.n
    edges = _hasse_edges(space)
    preds = [[] for _ in range(n)]
    for u, v in edges:
        preds[v].append(u)
    depth = [None] * n

    def rank(v: int) -> int:
        if depth[v] is None:
            depth[v] = 0  # break cycles defensively; the relation is acyclic
            depth[v] = 1 + max((rank(u) for u in preds[v]), default=-1)
        return depth[v]

    for v in range(n):
        rank(v)
    return depth


def hasse_figure(space: TopSpace, path: str, title: str | None = None) -> None:
    """Layered drawing of the Hasse diagram to an image file."""
    n = space.n
    depth = _layers(space)
    layers: dict[int, list[int]] = {}
    for x in range(n):
        layers.setdefault(depth[x], []).append(x)
    pos = {}
    for d, members in layers.items():
        for i, x in enumerate(members):
            pos[x] = ((i + 1) / (len(members) + 1), d)
    height = max(layers) + 1 if layers else 1
    fig, ax = plt.subplots(figsize=(max(4, min(16, n * 0.6)), 1.5 * height + 1))
    for u, v in _hasse_edges(space):
        (x0, y0), (x1, y1) = pos[u], pos[v]
        ax.plot([x0, x1], [y0, y1], color="#888888", zorder=1, linewidth=1)
    xs = [pos[x][0] for x in range(n)]
    ys = [pos[x][1] for x in range(n)]
    ax.scatter(xs, ys, s=240, color="#d8e6f3", edgecolors="#2b5d8a", zorder=2)
    small = n > 24
    for x in range(n):
        ax.annotate(
            space.label(x),
            pos[x],
            ha="center",
            va="center",
            fontsize=5 if small else 8,
            zorder=3,
        )
    ax.set_xlim(-0.05, 1.05)
    ax.set_ylim(-0.5, height - 0.5)
    ax.axis("off")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def write_reports_csv(reports: Sequence[PropertyReport], path: str) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(
            ["suite", "attempted", "passed", "skipped", "failed", "seconds"]
        )
        for r in reports:
            writer.writerow(
                [r.suite, r.attempted, r.passed, r.skipped, len(r.failures), f"{r.seconds:.3f}"]
            )


def write_failures_csv(reports: Sequence[PropertyReport], path: str) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["suite", "trial", "invariant", "instance"])
        for r in reports:
            for f in r.failures:
                writer.writerow([r.suite, f.trial, f.invariant, f.instance])


def suite_figure(reports: Iterable[PropertyReport], path: str) -> None:
    """Stacked horizontal bars of passed / skipped / failed per suite."""
    rows = list(reports)
    names = [r.suite for r in rows]
    passed = [r.passed for r in rows]
    skipped = [r.skipped for r in rows]
    failed = [len(r.failures) for r in rows]
    y = range(len(rows))
    fig, ax = plt.subplots(figsize=(8, 0.5 * len(rows) + 1.5))
    ax.barh(y, passed, color="#3a7d44", label="passed")
    ax.barh(y, skipped, left=passed, color="#d9a441", label="skipped")
    ax.barh(
        y,
        failed,
        left=[p + s for p, s in zip(passed, skipped)],
        color="#b33939",
        label="failed",
    )
    ax.set_yticks(list(y))
    ax.set_yticklabels(names, fontsize=8)
    ax.invert_yaxis()
    ax.set_xlabel("trials")
    ax.legend(loc="lower right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


__all__ = [
    "write_dot",
    "dot_text",
    "hasse_figure",
    "write_reports_csv",
    "write_failures_csv",
    "suite_figure",
]
