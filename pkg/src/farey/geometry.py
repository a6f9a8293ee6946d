"""Ford spheres, walls, Farey polygons, standard cells and the d=7 tessellation."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .field import (
    ComplexRational,
    QElem,
    cross_norm,
    embed,
    from_coords,
    infinity,
    make,
    q_conj,
    to_json as cusp_json,
)
from .moebius import Matrix2, Reflection, act, reflect
from .ring import EUCLIDEAN_D, RingElem, conj_ab, norm_ab, unit_pairs


# -- Ford spheres ---------------------------------------------------------

@dataclass(frozen=True)
class FordSphere:
    """Horosphere at a cusp; for a finite cusp the radius is size/(2 N(q))."""

    cusp: QElem
    size: Fraction

    def __post_init__(self):
        object.__setattr__(self, "size", Fraction(self.size))
        if self.size <= 0:
            raise ValueError(f"sphere size must be positive, got {self.size}")

    @property
    def radius(self) -> Fraction | None:
        if self.cusp.is_inf():
            return None
        return self.size / (2 * self.cusp.qnorm())

    @property
    def top(self) -> Fraction:
        """Highest point: the diameter, or the plane height for infinity."""
        if self.cusp.is_inf():
            return self.size
        return self.size / self.cusp.qnorm()


def ford(v: QElem, size=1) -> FordSphere:
    return FordSphere(v, Fraction(size))


def tangent(f1: FordSphere, f2: FordSphere) -> str:
    """'tangent', 'disjoint' or 'overlap', by exact comparison.

    Two finite spheres: N(p1 q2 - p2 q1) against size1*size2.  A finite
    sphere against the plane at infinity: its top against the plane height.
    """
    a, b = f1.cusp, f2.cusp
    if a.d != b.d:
        raise ValueError("spheres live over different fields")
    if a.is_inf() and b.is_inf():
        return "overlap"
    if a.is_inf() or b.is_inf():
        plane, sph = (f1, f2) if a.is_inf() else (f2, f1)
        lhs, rhs = plane.size, sph.top
    else:
        lhs, rhs = Fraction(cross_norm(a, b)), f1.size * f2.size
    if a == b:
        return "overlap"
    if lhs == rhs:
        return "tangent"
    return "disjoint" if lhs > rhs else "overlap"


def tangent_geometric(f1: FordSphere, f2: FordSphere) -> str:
    """Same classification from centres and radii in exact coordinates.

    Finite spheres resting on C touch iff the horizontal distance h of
    their base points satisfies h^2 = 4 r1 r2.
    """
    a, b = f1.cusp, f2.cusp
    if a == b:
        return "overlap"
    if a.is_inf() or b.is_inf():
        plane, sph = (f1, f2) if a.is_inf() else (f2, f1)
        lhs, rhs = plane.size, 2 * sph.radius
    else:
        h2 = (embed(a) - embed(b)).abs2()
        lhs, rhs = h2, 4 * f1.radius * f2.radius
    if lhs == rhs:
        return "tangent"
    return "disjoint" if lhs > rhs else "overlap"


# -- walls ------------------------------------------------------------------

def omega_point(d: int) -> ComplexRational:
    return embed(make(RingElem(d, 0, 1), 1))


@dataclass(frozen=True)
class Wall:
    """The vertical half-plane over the line through a and b."""

    a: ComplexRational
    b: ComplexRational
    name: str = ""

    def side(self, z: ComplexRational) -> int:
        # sign of the cross product (b - a) x (z - a); the common sqrt(d) factor drops out
        u, v = self.b - self.a, z - self.a
        s = u.x * v.y - u.y * v.x
        return (s > 0) - (s < 0)


def wall_list(d: int) -> list[Wall]:
    """Walls over the sides of W_d: rectangle 0, 1, w+1, w or triangle 0, 1, w."""
    if d not in EUCLIDEAN_D:
        raise ValueError(f"unsupported d={d}")
    zero = ComplexRational(d, Fraction(0), Fraction(0))
    one = ComplexRational(d, Fraction(1), Fraction(0))
    w = omega_point(d)
    if d in (1, 2):
        w1 = w + one
        return [Wall(zero, one, "lower"), Wall(one, w1, "right"), Wall(w1, w, "upper"), Wall(w, zero, "left")]
    return [Wall(zero, one, "lower"), Wall(one, w, "right"), Wall(w, zero, "left")]


def crosses_wall(e: tuple[QElem, QElem], w: Wall) -> bool:
    """Strict crossing of the geodesic over e through the wall's plane.

    The geodesic projects to the segment between the endpoints, so it
    crosses iff the endpoints sit strictly on opposite sides.  A vertical
    geodesic (one endpoint at infinity) stays in one vertical line and never
    crosses strictly.
    """
    x, y = e
    if x.is_inf() or y.is_inf():
        return False
    return w.side(embed(x)) * w.side(embed(y)) < 0


# -- Farey polygons -----------------------------------------------------------

KIND_SIZE = {"digon": 2, "triangle": 3, "quadrangle": 4, "hexagon": 6}
SIZE_KIND = {v: k for k, v in KIND_SIZE.items()}


def _kind_ok(kind: str, d: int) -> bool:
    if kind == "quadrangle":
        return d in (2, 7)
    if kind == "hexagon":
        return d == 11
    return kind in KIND_SIZE


def seed_columns(kind: str, d: int) -> list[tuple[RingElem, RingElem]]:
    """Seed cusp columns (p, q) of each polygon kind."""
    if kind not in KIND_SIZE:
        raise ValueError(f"unknown polygon kind {kind!r}; expected one of {sorted(KIND_SIZE)}")
    if not _kind_ok(kind, d):
        raise ValueError(f"a Farey {kind} needs d in {(2, 7) if kind == 'quadrangle' else (11,)}, got d={d}")
    o, z = RingElem(d, 1), RingElem(d, 0)
    w = RingElem(d, 0, 1)
    wb = w.conj()
    two = RingElem(d, 2)
    return {
        "digon": [(z, o), (o, z)],
        "triangle": [(z, o), (o, z), (o, o)],
        "quadrangle": [(z, o), (o, z), (w, o), (o, wb)],
        "hexagon": [(z, o), (o, z), (w, o), (two, wb), (w, two), (o, wb)],
    }[kind]


def seed_cusps(kind: str, d: int) -> list[QElem]:
    return [make(p, q) for p, q in seed_columns(kind, d)]


@dataclass(frozen=True)
class FareyPolygon:
    """The polygon A(seed) for a unit-determinant A."""

    kind: str
    cusps: tuple[QElem, ...]
    generator: Matrix2

    @property
    def d(self) -> int:
        return self.generator.d

    def edges(self) -> list[tuple[QElem, QElem]]:
        n = len(self.cusps)
        if n == 2:
            return [(self.cusps[0], self.cusps[1])]
        return [(self.cusps[i], self.cusps[(i + 1) % n]) for i in range(n)]

    def cusp_set(self) -> frozenset:
        return frozenset(self.cusps)

    def edge_set(self) -> frozenset:
        return frozenset(frozenset(e) for e in self.edges())

    def to_json(self):
        return {
            "kind": self.kind,
            "cusps": [cusp_json(c) for c in self.cusps],
            "generator": self.generator.to_json(),
        }


def farey_polygon(kind: str, A: Matrix2) -> FareyPolygon:
    if A.det.norm() != 1:
        raise ValueError(f"the generator must have unit determinant, got {A.det}")
    cusps = tuple(act(A, c) for c in seed_cusps(kind, A.d))
    return FareyPolygon(kind, cusps, A)


def polygon_relation(p1: FareyPolygon, p2: FareyPolygon) -> str:
    """'equal', 'shared_edge', 'shared_cusp' or 'disjoint' from cusp and edge sets."""
    if p1.d != p2.d:
        raise ValueError("polygons over different fields")
    if p1.cusp_set() == p2.cusp_set():
        return "equal"
    if p1.edge_set() & p2.edge_set():
        return "shared_edge"
    if p1.cusp_set() & p2.cusp_set():
        return "shared_cusp"
    return "disjoint"


def _column(x: QElem) -> tuple[RingElem, RingElem]:
    return x.p, x.q


def match_polygon(cusps, d: int) -> FareyPolygon | None:
    """Recognize an ordered cusp cycle as a Farey polygon.

    Every rotation and reversal of the cycle is tried.  With A(0) and A(inf)
    fixed, the columns of A are fixed up to unit factors, and only their
    ratio matters, so the remaining freedom is a finite unit loop.
    """
    n = len(cusps)
    kind = SIZE_KIND.get(n)
    if kind is None or not _kind_ok(kind, d):
        return None
    orders = []
    for r in range(n):
        rot = list(cusps[r:]) + list(cusps[:r])
        orders.append(rot)
        orders.append([rot[0]] + rot[1:][::-1])
    units = [RingElem(d, *u) for u in unit_pairs(d)]
    seed = seed_cusps(kind, d)
    for order in orders:
        (p0, q0), (p1, q1) = _column(order[0]), _column(order[1])
        if (p1 * q0 - p0 * q1).norm() != 1:
            continue
        for v in units:
            A = Matrix2(v * p1, p0, v * q1, q0, d=d)
            if all(act(A, s) == c for s, c in zip(seed[2:], order[2:])):
                return FareyPolygon(kind, tuple(order), A)
    return None


# -- standard cells ------------------------------------------------------------

def _q(d, pa, pb, qa, qb) -> QElem:
    return make(RingElem(d, pa, pb), RingElem(d, qa, qb))


def _cell_cusps(d: int) -> list[QElem]:
    # (p, q) pairs in the basis {1, w}; w1 = w + 1 and so on
    table = {
        1: [(0, 0, 1, 0), (1, 0, 0, 0), (1, 0, 1, 0), (0, 1, 1, 0), (1, 1, 1, 0), (1, 0, 1, -1)],
        2: [(0, 0, 1, 0), (1, 0, 0, 0), (1, 0, 1, 0), (0, 1, 1, 0), (1, 1, 1, 0), (1, 0, 0, -1),
            (1, -1, 0, -1), (1, 1, 2, 0), (-1, 1, 1, 1), (2, 0, 1, -1), (1, 0, 1, -1), (0, 1, 1, 1)],
        3: [(0, 0, 1, 0), (1, 0, 0, 0), (1, 0, 1, 0), (0, 1, 1, 0)],
        7: [(0, 0, 1, 0), (1, 0, 0, 0), (1, 0, 1, 0), (0, 1, 1, 0), (1, 0, 1, -1), (-1, 1, 0, 1)],
        11: [(0, 0, 1, 0), (1, 0, 0, 0), (1, 0, 1, 0), (0, 1, 1, 0), (1, 0, 1, -1), (-1, 1, 0, 1),
             (0, 1, 2, 0), (1, 1, 2, 0), (-2, 1, 0, 1), (2, 0, 1, -1), (-1, 1, 1, 1), (2, 0, 2, -1)],
    }
    return [_q(d, *t) for t in table[d]]


CELL_FACES = {1: 8, 2: 14, 3: 4, 7: 5, 11: 8}


@dataclass
class StandardCell:
    d: int
    cusps: list[QElem]
    faces: list[FareyPolygon]
    conjugated: bool = False

    def face_indices(self) -> list[list[int]]:
        pos = {c: i for i, c in enumerate(self.cusps)}
        return [[pos[c] for c in f.cusps] for f in self.faces]


def _cycles(adj: dict[int, set[int]], n: int, length: int) -> list[tuple[int, ...]]:
    """Chordless cycles of the given length, each listed once (least vertex first)."""
    out = []

    def grow(path):
        if len(path) == length:
            if path[0] in adj[path[-1]] and path[1] < path[-1]:
                out.append(tuple(path))
            return
        for w in sorted(adj[path[-1]]):
            if w <= path[0] or w in path:
                continue
            # chordless: w may touch only its predecessor (and the start, at the end)
            if any(w in adj[u] for u in path[1:-1]):
                continue
            if len(path) + 1 < length and w in adj[path[0]] and len(path) > 1:
                continue
            grow(path + [w])

    for s in range(n):
        grow([s])
    return out


def faces_over(cusps: list[QElem], d: int) -> list[FareyPolygon]:
    """All Farey polygons whose edges join neighbouring cusps of the list."""
    n = len(cusps)
    adj = {i: set() for i in range(n)}
    for i, j in combinations(range(n), 2):
        if cross_norm(cusps[i], cusps[j]) == 1:
            adj[i].add(j)
            adj[j].add(i)
    sizes = [3] + ([4] if d in (2, 7) else []) + ([6] if d == 11 else [])
    out = []
    for L in sizes:
        for cyc in _cycles(adj, n, L):
            poly = match_polygon([cusps[i] for i in cyc], d)
            if poly is not None:
                out.append(poly)
    return out


def standard_cell(d: int, conjugated: bool = False) -> StandardCell:
    if d not in EUCLIDEAN_D:
        raise ValueError(f"unsupported d={d}")
    if conjugated and d not in (3, 7, 11):
        raise ValueError(f"the conjugate cell is only used for d in (3, 7, 11), got d={d}")
    cusps = _cell_cusps(d)
    if conjugated:
        cusps = [q_conj(c) for c in cusps]
    return StandardCell(d, cusps, faces_over(cusps, d), conjugated)


# -- the d = 7 tessellation ------------------------------------------------------

def reflections_d7() -> list[Reflection]:
    """Face maps of C_7 as holomorphic maps w -> M(w), det -1.

    R1, R2, R3 pair the lower, right and left walls; R4 pairs the lower
    quadrangle {0, 1, (1+w)/2, w/2} and R5 the upper triangle
    {w, w/2, (1+w)/2}.
    """
    d = 7
    w = RingElem(d, 0, 1)
    mats = {
        "R1": Matrix2(-1, 1, 0, 1, d=d),
        "R2": Matrix2(-1, w + 1, 0, 1, d=d),
        "R3": Matrix2(-1, w, 0, 1, d=d),
        "R4": Matrix2(1, -w, 1, -1 - w, d=d),
        "R5": Matrix2(w, -1, 1, w - 1, d=d),
    }
    return [Reflection(m, name, anti=False) for name, m in mats.items()]


@dataclass
class Cell:
    """A cell g(C_7) with faces indexing into its cusp list."""

    g: Matrix2
    cusps: list[QElem]
    faces: list[list[int]]
    generation: int = 0

    def key(self) -> tuple:
        return tuple(sorted(c.key for c in self.cusps))

    def face_cusps(self, i: int) -> list[QElem]:
        return [self.cusps[j] for j in self.faces[i]]

    def face_key(self, i: int) -> frozenset:
        return frozenset(self.face_cusps(i))


def reflect_cell(cell, R: Reflection):
    """Apply R to every cusp of a cell; the face index lists are kept."""
    cusps = [reflect(R, c) for c in cell.cusps]
    if isinstance(cell, StandardCell):
        return Cell(R.mat, cusps, cell.face_indices())
    return Cell(cell.g @ R.mat, cusps, [list(f) for f in cell.faces], cell.generation)


def _face_maps(base: StandardCell) -> list[Reflection]:
    """For each face F of C_7, the map R with R(C_7) the neighbour across F.

    That neighbour meets C_7 in exactly the cusps of F.
    """
    maps = reflections_d7()
    cset = set(base.cusps)
    out = []
    for f in base.faces:
        hit = [R for R in maps if {reflect(R, c) for c in base.cusps} & cset == f.cusp_set()]
        if len(hit) != 1:
            raise AssertionError(f"face {[str(c) for c in f.cusps]} has {len(hit)} face maps")
        out.append(hit[0])
    return out


@dataclass
class Tessellation:
    d: int
    generation: int
    cells: list[Cell] = field(default_factory=list)

    def new_faces(self, gen: int) -> list[frozenset]:
        seen = {}
        for c in self.cells:
            for i in range(len(c.faces)):
                k = c.face_key(i)
                seen.setdefault(k, c.generation)
        return [k for k, g in seen.items() if g == gen]


def tessellate(generations: int, below: bool = True) -> Tessellation:
    """Grow cells from C_7 by reflecting across faces first seen in the last generation.

    With below=True generation 1 only uses the two faces of C_7 that do not
    contain infinity, so the growth goes downward towards the plane.
    """
    if generations < 0:
        raise ValueError("generations must be >= 0")
    d = 7
    base = standard_cell(d)
    face_maps = _face_maps(base)
    idx = base.face_indices()
    c0 = Cell(Matrix2.identity(d), list(base.cusps), idx, 0)
    cells = {c0.key(): c0}
    face_gen = {c0.face_key(i): 0 for i in range(len(idx))}
    inf = infinity(d)
    frontier = [(c0, i) for i in range(len(idx)) if not (below and inf in c0.face_cusps(i))]
    for gen in range(1, generations + 1):
        fresh = []
        for cell, i in frontier:
            g = cell.g @ face_maps[i].mat
            cusps = [act(g, c) for c in base.cusps]
            new = Cell(g, cusps, idx, gen)
            k = new.key()
            if k in cells:
                continue
            cells[k] = new
            fresh.append(new)
        frontier = []
        for cell in sorted(fresh, key=Cell.key):
            for i in range(len(idx)):
                fk = cell.face_key(i)
                if fk not in face_gen:
                    face_gen[fk] = gen
                    frontier.append((cell, i))
    out = sorted(cells.values(), key=lambda c: (c.generation, c.key()))
    return Tessellation(d, generations, out)


def generation_counts(t: Tessellation) -> list[tuple[int, int]]:
    """(new cells, new faces) per generation."""
    faces = {}
    for c in t.cells:
        for i in range(len(c.faces)):
            faces.setdefault(c.face_key(i), c.generation)
    out = []
    for g in range(t.generation + 1):
        nc = sum(1 for c in t.cells if c.generation == g)
        nf = sum(1 for v in faces.values() if v == g)
        out.append((nc, nf))
    return out


def export_json(t: Tessellation) -> str:
    cells = [
        {"cusps": [cusp_json(c) for c in cell.cusps], "faces": cell.faces, "generation": cell.generation}
        for cell in t.cells
    ]
    return json.dumps({"d": t.d, "generation": t.generation, "cells": cells}, sort_keys=True)


def export_svg(t: Tessellation, width: int = 1024) -> str:
    """Projection to C: faces as grey polygons, darker for later generations."""
    d = t.d
    s = d ** 0.5
    top = float(omega_point(d).y) * s
    x0, x1, y0, y1 = -0.25, 1.25, -0.25, top + 0.25
    scale = width / (x1 - x0)
    height = round((y1 - y0) * scale)

    def px(c: QElem) -> str:
        z = embed(c)
        X = (float(z.x) - x0) * scale
        Y = (y1 - float(z.y) * s) * scale
        return f"{X:.3f},{Y:.3f}"

    n = max(t.generation, 1)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    drawn = set()
    dots = set()
    for cell in t.cells:
        grey = round(235 - 180 * cell.generation / n)
        for i in range(len(cell.faces)):
            fk = cell.face_key(i)
            fc = cell.face_cusps(i)
            if fk in drawn or any(c.is_inf() for c in fc):
                continue
            drawn.add(fk)
            pts = " ".join(px(c) for c in fc)
            lines.append(
                f'<polygon points="{pts}" fill="rgb({grey},{grey},{grey})" fill-opacity="0.5" '
                f'stroke="black" stroke-width="0.8"/>'
            )
            dots.update(fc)
    for c in sorted(dots):
        X, Y = px(c).split(",")
        lines.append(f'<circle cx="{X}" cy="{Y}" r="2" fill="black"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
