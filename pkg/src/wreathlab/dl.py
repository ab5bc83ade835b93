"""Diestel-Leader graphs DL(m, n) and the element-to-vertex map for G ≀ Z.

A vertex of the first tree at height ``h`` is described by digits at
positions ``p <= h``; its ``m`` children (height ``h + 1``) add a digit at
position ``h + 1`` and its parent forgets the digit at ``h``.  The second
tree is mirrored: at height ``h`` it carries positions ``p >= 1 - h``.
Zero digits are omitted.

An element with cursor ``k`` sits at ``(v1, v2)`` where ``v1`` holds the
lamps at positions ``<= k`` (height ``k``) and ``v2`` the lamps at
positions ``>= k + 1`` (height ``-k``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .groups import CapacityError, FiniteGroup, GroupError, cyclic
from .wreath import (
    DEFAULT_BALL_CAP,
    TA,
    WreathElement,
    identity,
    mul,
    sphere_sizes,
    symmetric_generators,
)

DEFAULT_RADIUS_CAP = DEFAULT_BALL_CAP


@dataclass(frozen=True)
class TreeVertex:
    tree: int
    height: int
    digits: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.tree not in (1, 2):
            raise GroupError("tree tag must be 1 or 2")
        for p, d in self.digits:
            if d == 0:
                raise GroupError("zero digits must be omitted")
            if self.tree == 1 and p > self.height:
                raise GroupError(f"T1 digit at {p} above height {self.height}")
            if self.tree == 2 and p < 1 - self.height:
                raise GroupError(f"T2 digit at {p} below {1 - self.height}")

    def child(self, digit: int) -> "TreeVertex":
        h = self.height + 1
        pos = h if self.tree == 1 else -self.height
        digits = dict(self.digits)
        if digit:
            digits[pos] = digit
        return TreeVertex(self.tree, h, tuple(sorted(digits.items())))

    def parent(self) -> "TreeVertex":
        drop = self.height if self.tree == 1 else 1 - self.height
        return TreeVertex(self.tree, self.height - 1, tuple((p, d) for p, d in self.digits if p != drop))


@dataclass(frozen=True)
class DLVertex:
    v1: TreeVertex
    v2: TreeVertex = field()

    def __post_init__(self):
        if self.v1.tree != 1 or self.v2.tree != 2:
            raise GroupError("DL vertex needs a T1 and a T2 coordinate")
        if self.v1.height + self.v2.height != 0:
            raise GroupError("heights must sum to zero")

    @property
    def height(self) -> int:
        return self.v1.height

    def __str__(self) -> str:
        return format_vertex(self)


ORIGIN = DLVertex(TreeVertex(1, 0), TreeVertex(2, 0))


def format_vertex(v: DLVertex) -> str:
    """Canonical string ``h1:[p=d,...] | h2:[p=d,...]``."""

    def tree(t: TreeVertex) -> str:
        return f"{t.height}:[" + ",".join(f"{p}={d}" for p, d in t.digits) + "]"

    return f"{tree(v.v1)} | {tree(v.v2)}"


_TREE = re.compile(r"^\s*(-?\d+)\s*:\s*\[(.*)\]\s*$")


def parse_vertex(text: str) -> DLVertex:
    try:
        left, right = text.split("|")
    except ValueError as exc:
        raise GroupError(f"bad vertex {text!r}") from exc
    trees = []
    for tag, part in ((1, left), (2, right)):
        m = _TREE.match(part)
        if not m:
            raise GroupError(f"bad tree coordinate {part!r}")
        digits = []
        if m.group(2).strip():
            for item in m.group(2).split(","):
                p, d = item.split("=")
                digits.append((int(p), int(d)))
        trees.append(TreeVertex(tag, int(m.group(1)), tuple(sorted(digits))))
    return DLVertex(*trees)


def vertex_of_element(g: WreathElement) -> DLVertex:
    k = g.shift
    v1 = TreeVertex(1, k, tuple((p, v) for p, v in g.lamps if p <= k))
    v2 = TreeVertex(2, -k, tuple((p, v) for p, v in g.lamps if p > k))
    return DLVertex(v1, v2)


def element_of_vertex(v: DLVertex, group: FiniteGroup) -> WreathElement:
    k = v.v1.height
    lamps = list(v.v1.digits) + list(v.v2.digits)
    positions = [p for p, _ in lamps]
    if len(set(positions)) != len(positions):
        raise GroupError("digit domains overlap")
    for p, d in lamps:
        if not 0 < d < group.order:
            raise GroupError(f"digit {d} is not an element of {group.name}")
    if group.identity != 0:
        raise GroupError("digit encoding needs the identity at index 0")
    return WreathElement(group, tuple(sorted(lamps)), k)


def graph_neighbors(v: DLVertex, m: int, n: int) -> set[DLVertex]:
    """The ``m + n`` neighbours: up in T1 (``m`` digit choices) with the
    parent step in T2, or down in T1 with ``n`` digit choices in T2."""
    out = set()
    up2 = v.v2.parent()
    for d in range(m):
        out.add(DLVertex(v.v1.child(d), up2))
    down1 = v.v1.parent()
    for d in range(n):
        out.add(DLVertex(down1, v.v2.child(d)))
    return out


def action_neighbors(g: WreathElement) -> set[WreathElement]:
    """Right multiples ``g·s`` for ``s`` in ``{t·x}^{±1}``."""
    return {mul(g, s) for s in symmetric_generators(g.group, TA)}


def dl_ball(m: int, n: int, radius: int) -> dict[DLVertex, int]:
    dist = {ORIGIN: 0}
    frontier = [ORIGIN]
    for r in range(1, radius + 1):
        nxt = []
        for v in frontier:
            for w in graph_neighbors(v, m, n):
                if w not in dist:
                    dist[w] = r
                    nxt.append(w)
        frontier = nxt
    return dist


def _sorted_neighbors(v: DLVertex, m: int, n: int) -> list[DLVertex]:
    return sorted(graph_neighbors(v, m, n), key=format_vertex)


def adjacency_dump(m: int, n: int, radius: int) -> list[str]:
    ball = dl_ball(m, n, radius)
    lines = []
    for v in sorted(ball, key=lambda v: (ball[v], format_vertex(v))):
        nbrs = [format_vertex(w) for w in _sorted_neighbors(v, m, n)]
        lines.append(format_vertex(v) + " -> " + " ; ".join(nbrs))
    return lines


@dataclass
class IsoReport:
    m: int
    radius: int
    cayley_spheres: list[int]
    dl_spheres: list[int]
    checked_vertices: int = 0
    checked_edges: int = 0
    passed: bool = True
    mismatch: str | None = None

    def fail(self, msg: str) -> None:
        if self.passed:
            self.passed = False
            self.mismatch = msg

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "radius": self.radius,
            "cayley_spheres": self.cayley_spheres,
            "dl_spheres": self.dl_spheres,
            "checked_vertices": self.checked_vertices,
            "checked_edges": self.checked_edges,
            "passed": self.passed,
            "mismatch": self.mismatch,
        }


def check_cayley_isomorphism(m: int, radius: int, group: FiniteGroup | None = None, cap: int = DEFAULT_RADIUS_CAP) -> IsoReport:
    """Compare the ``TA`` Cayley ball of ``G ≀ Z`` (``|G| = m``) with the
    ball of ``DL(m, m)`` around the origin: bijection, matching distances,
    edge-by-edge equivariance and degree ``2m``."""
    if radius > cap:
        raise CapacityError(f"isomorphism check at radius {radius}", cap, "--ball-cap")
    G = group if group is not None else cyclic(m)
    if G.order != m:
        raise GroupError(f"group order {G.order} differs from m = {m}")
    cay: dict[WreathElement, int] = {identity(G): 0}
    frontier = [identity(G)]
    for r in range(1, radius + 1):
        nxt = []
        for x in frontier:
            for y in action_neighbors(x):
                if y not in cay:
                    cay[y] = r
                    nxt.append(y)
        frontier = nxt
    dl = dl_ball(m, m, radius)
    report = IsoReport(m, radius, sphere_sizes(cay), sphere_sizes(dl))
    if report.cayley_spheres != report.dl_spheres:
        report.fail(f"sphere sizes differ: {report.cayley_spheres} vs {report.dl_spheres}")
    images = set()
    for g, d in cay.items():
        v = vertex_of_element(g)
        report.checked_vertices += 1
        if element_of_vertex(v, G) != g:
            report.fail(f"round trip fails at {g}")
        if v in images:
            report.fail(f"two elements map to {format_vertex(v)}")
        images.add(v)
        if dl.get(v) != d:
            report.fail(f"{g} at distance {d} maps to {format_vertex(v)} at distance {dl.get(v)}")
        nbrs = action_neighbors(g)
        dl_nbrs = graph_neighbors(v, m, m)
        if len(nbrs) != 2 * m or len(dl_nbrs) != 2 * m:
            report.fail(f"degree at {g}: {len(nbrs)} / {len(dl_nbrs)}, expected {2 * m}")
        mapped = {vertex_of_element(h) for h in nbrs}
        report.checked_edges += len(nbrs)
        if mapped != dl_nbrs:
            report.fail(f"adjacency differs at {g}")
    if images != set(dl):
        report.fail("image of the Cayley ball is not the DL ball")
    return report
