"""Exact polytope geometry: vertices, volumes and F-signature tables.

Volumes are computed from a pulling triangulation. The lexicographically
first vertex of a face is coned over the triangulations of the facets of
that face which avoid it; faces are found as tight sets of the defining
inequalities. Simplex volumes come from exact integer determinants.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, gcd, lcm
from typing import Iterable, Sequence

from .classgroup import project_divisor
from .conic import cell_of, conic_polytope, enumerate_conic
from .exact import Constraint, as_fraction, integer_determinants, rank, solve_linear_system
from .hasse import SpanningTree, choose_spanning_tree
from .poset import AugmentedPoset

__all__ = [
    "UnboundedPolyhedronError",
    "VPolytope",
    "weak_rows",
    "vertex_enumeration",
    "vertex_enumeration_bruteforce",
    "facets_from_vertices",
    "volume",
    "simplex_count",
    "eulerian",
    "eulerian_by_descents",
    "signature_table",
    "signature_table_by_alcoves",
    "cube",
    "standard_simplex",
    "join",
    "join_volume_check",
]


class UnboundedPolyhedronError(ValueError):
    """The inequalities do not describe a bounded set."""


@dataclass(frozen=True)
class VPolytope:
    """A polytope in ``Q^dim`` given by its vertices.

    ``inequalities`` optionally records weak rows ``a.x <= b`` describing
    the same set; when present they are used to find faces.
    """

    dim: int
    vertices: tuple[tuple[Fraction, ...], ...]
    inequalities: tuple[tuple[tuple[Fraction, ...], Fraction], ...] | None = None

    @classmethod
    def from_points(cls, dim: int, points: Iterable[Sequence], inequalities=None) -> "VPolytope":
        verts = sorted({tuple(as_fraction(v) for v in p) for p in points})
        if any(len(v) != dim for v in verts):
            raise ValueError("vertex dimension mismatch")
        return cls(dim, tuple(verts), inequalities)

    @property
    def affine_dimension(self) -> int:
        if not self.vertices:
            return -1
        v0 = self.vertices[0]
        return rank([[a - b for a, b in zip(v, v0)] for v in self.vertices[1:]]) if len(self.vertices) > 1 else 0

    @property
    def full_dimensional(self) -> bool:
        return self.affine_dimension == self.dim


def weak_rows(constraints: Iterable[Constraint]) -> list[tuple[tuple[Fraction, ...], Fraction]]:
    """Rewrite constraints as ``a.x <= b`` rows, strict senses closed up."""
    rows = []
    for c in constraints:
        a, b = c.coefficients, c.bound
        if c.sense in ("<", "<=", "="):
            rows.append((a, b))
        if c.sense in (">", ">=", "="):
            rows.append((tuple(-v for v in a), -b))
    return rows


def _primitive(vec: Sequence[int]) -> tuple[int, ...]:
    g = gcd(*vec)
    return tuple(v // g for v in vec) if g > 1 else tuple(vec)


def _int_row(row: Sequence[Fraction]) -> tuple[int, ...]:
    den = lcm(*(v.denominator for v in row))
    return _primitive([int(v * den) for v in row])


def _double_description(rows: list[tuple[int, ...]], D: int) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone ``{z : h.z >= 0 for h in rows}``.

    Incremental double description with the combinatorial adjacency test.
    Rays are kept as primitive integer vectors.
    """
    chosen: list[int] = []
    for i in range(len(rows)):
        if rank([rows[k] for k in chosen + [i]]) == len(chosen) + 1:
            chosen.append(i)
            if len(chosen) == D:
                break
    if len(chosen) < D:
        raise UnboundedPolyhedronError("cone is not pointed")
    basis = [rows[i] for i in chosen]
    rays: list[tuple[tuple[int, ...], int]] = []
    for col in range(D):
        e = [0] * D
        e[col] = 1
        # column of the inverse: tight on every chosen row except one
        sol = solve_linear_system(basis, e)
        ray = _int_row(sol)
        zero = 0
        for pos, i in enumerate(chosen):
            if pos != col:
                zero |= 1 << i
        rays.append((ray, zero))
    done = set(chosen)
    for i, h in enumerate(rows):
        if i in done:
            continue
        bit = 1 << i
        vals = [sum(a * b for a, b in zip(h, r)) for r, _ in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        new = [(r, z | bit) if vals[k] == 0 else (r, z) for k, (r, z) in enumerate(rays) if vals[k] >= 0]
        zsets = [z for _, z in rays]
        for p in pos:
            zp = zsets[p]
            for q in neg:
                common = zp & zsets[q]
                if common.bit_count() < D - 2:
                    continue
                if any(k != p and k != q and (zk & common) == common for k, zk in enumerate(zsets)):
                    continue
                rp, rq = rays[p][0], rays[q][0]
                vp, vq = vals[p], vals[q]
                comb_ray = _primitive([vp * b - vq * a for a, b in zip(rp, rq)])
                new.append((comb_ray, common | bit))
        rays = new
        done.add(i)
    return [r for r, _ in rays]


def vertex_enumeration(constraints: Sequence[Constraint], dim: int) -> VPolytope:
    """Vertices of the closure of a bounded constraint system.

    Strict conditions are replaced by their closures. The result carries
    the weak rows as its inequality description.

    Raises
    ------
    UnboundedPolyhedronError
        If the closure is unbounded.
    """
    rows = weak_rows(constraints)
    if dim == 0:
        ok = all(b >= 0 for _, b in rows)
        return VPolytope(0, ((),) if ok else (), tuple(rows))
    # homogenize: b*x0 - a.x >= 0, x0 >= 0
    hom = [_int_row([-v for v in a] + [b]) for a, b in rows]
    hom.append(tuple([0] * dim + [1]))
    rays = _double_description(hom, dim + 1)
    verts = set()
    for r in rays:
        if r[-1] == 0:
            if any(r[:-1]):
                raise UnboundedPolyhedronError("closure is unbounded")
            continue
        verts.add(tuple(Fraction(v, r[-1]) for v in r[:-1]))
    return VPolytope(dim, tuple(sorted(verts)), tuple(rows))


def vertex_enumeration_bruteforce(constraints: Sequence[Constraint], dim: int) -> list[tuple[Fraction, ...]]:
    """Vertices by solving every ``dim``-subset of rows; for small inputs only."""
    rows = weak_rows(constraints)
    verts = set()
    for combo in itertools.combinations(rows, dim):
        A = [a for a, _ in combo]
        try:
            x = solve_linear_system(A, [b for _, b in combo])
        except ValueError:
            continue
        if all(sum(c * v for c, v in zip(a, x)) <= b for a, b in rows):
            verts.add(x)
    return sorted(verts)


def facets_from_vertices(vertices: Sequence[Sequence[Fraction]], dim: int) -> list[tuple[tuple[Fraction, ...], Fraction]]:
    """Facet rows ``a.x <= b`` of the convex hull of full-dimensional points.

    Double description on the cone of valid inequalities.
    """
    rows = [_int_row([-as_fraction(v) for v in p] + [Fraction(1)]) for p in vertices]
    rays = _double_description(rows, dim + 1)
    return [(tuple(Fraction(v) for v in r[:-1]), Fraction(r[-1])) for r in rays if any(r[:-1])]


def _affine_rank(points: list[tuple[int, ...]]) -> int:
    if len(points) <= 1:
        return len(points) - 1
    p0 = points[0]
    return rank([[a - b for a, b in zip(p, p0)] for p in points[1:]])


def _pulling_triangulation(points: list[tuple[int, ...]], tight: list[int], dim: int) -> list[tuple[int, ...]]:
    ranks: dict[int, int] = {}

    def affdim(mask: int) -> int:
        if mask not in ranks:
            ranks[mask] = _affine_rank([points[i] for i in range(len(points)) if mask >> i & 1])
        return ranks[mask]

    memo: dict[int, list[tuple[int, ...]]] = {}

    def pull(mask: int, k: int) -> list[tuple[int, ...]]:
        if mask in memo:
            return memo[mask]
        v0 = (mask & -mask).bit_length() - 1
        if k == 0:
            out = [(v0,)]
        else:
            out = []
            seen = set()
            for t in tight:
                sub = mask & t
                if sub == mask or sub in seen or sub >> v0 & 1 or not sub:
                    continue
                seen.add(sub)
                if affdim(sub) != k - 1:
                    continue
                out.extend((v0,) + s for s in pull(sub, k - 1))
        memo[mask] = out
        return out

    return pull((1 << len(points)) - 1, dim)


def _scaled_vertices(poly: VPolytope) -> tuple[list[tuple[int, ...]], int]:
    den = lcm(*(v.denominator for p in poly.vertices for v in p)) if poly.vertices else 1
    return [tuple(int(v * den) for v in p) for p in poly.vertices], den


def _triangulate(poly: VPolytope) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]], int]:
    pts, den = _scaled_vertices(poly)
    rows = poly.inequalities
    if rows is None:
        rows = facets_from_vertices(poly.vertices, poly.dim)
    tight = []
    for a, b in rows:
        ia = _int_row(list(a) + [b])
        *ia, ib = ia
        mask = 0
        for i, p in enumerate(pts):
            if sum(c * v for c, v in zip(ia, p)) == ib * den:
                mask |= 1 << i
        tight.append(mask)
    tight = sorted(set(tight))
    return pts, _pulling_triangulation(pts, tight, poly.dim), den


def simplex_count(poly: VPolytope) -> int:
    """Number of simplices in the pulling triangulation used by :func:`volume`."""
    if not poly.full_dimensional:
        return 0
    return len(_triangulate(poly)[1])


def volume(poly: VPolytope, chunk: int = 20000) -> Fraction:
    """Exact Euclidean volume of a polytope.

    Lower-dimensional input has volume 0; check ``poly.full_dimensional``
    to tell that case apart.

    Examples
    --------
    >>> sq = VPolytope.from_points(2, [(0, 0), (1, 0), (0, 1), (1, 1)])
    >>> volume(sq)
    Fraction(1, 1)
    """
    d = poly.dim
    if d == 0:
        return Fraction(1 if poly.vertices else 0)
    if not poly.full_dimensional:
        return Fraction(0)
    pts, simplices, den = _triangulate(poly)
    total = 0
    for start in range(0, len(simplices), chunk):
        block = simplices[start:start + chunk]
        mats = [[[a - b for a, b in zip(pts[i], pts[s[0]])] for i in s[1:]] for s in block]
        total += sum(abs(v) for v in integer_determinants(mats))
    return Fraction(total, factorial(d) * den ** d)


def eulerian(d: int, p: int) -> int:
    """Eulerian number ``A(d, p)``: permutations of ``d`` letters with ``p - 1`` descents.

    Computed as ``sum_{i=0}^{p} (-1)^i C(d+1, i) (p-i)^d``.
    """
    return sum((-1) ** i * comb(d + 1, i) * (p - i) ** d for i in range(p + 1))


def eulerian_by_descents(d: int) -> list[int]:
    """Counts of permutations of ``d`` letters by number of descents (brute force)."""
    counts = [0] * max(d, 1)
    for perm in itertools.permutations(range(d)):
        counts[sum(a > b for a, b in zip(perm, perm[1:]))] += 1
    return counts


def signature_table(ap: AugmentedPoset, tree: SpanningTree | None = None) -> dict[tuple[int, ...], Fraction]:
    """Generalized F-signature of every conic class, as exact cell volumes.

    Classes are listed in lexicographic order; the values sum to 1.

    Raises
    ------
    ValueError
        If some cell is not full-dimensional. Conic cells always are, so
        this signals an inconsistent input.
    """
    if tree is None:
        tree = choose_spanning_tree(ap)
    table = {}
    for klass in enumerate_conic(conic_polytope(ap, tree)):
        cell = cell_of(tree, klass)
        poly = vertex_enumeration(cell.constraints, cell.dim)
        if not poly.full_dimensional:
            raise ValueError(f"cell of class {klass} is degenerate")
        table[klass] = volume(poly)
    return table


def signature_table_by_alcoves(ap: AugmentedPoset, tree: SpanningTree | None = None) -> dict[tuple[int, ...], Fraction]:
    """F-signatures by counting orderings of fractional parts.

    Every form ``sigma_e`` is a difference of coordinates (or minus one
    coordinate), so on each simplex ``{0 < x_{w(1)} < ... < x_{w(d)} < 1}``
    the divisor ``ceil(sigma(x))`` is constant. These ``d!`` simplices of
    volume ``1/d!`` tile a fundamental domain of the torus, so the value for a
    class is the share of orderings landing in it. Cost grows like ``d!``.
    """
    if tree is None:
        tree = choose_spanning_tree(ap)
    d = ap.d
    counts: dict[tuple[int, ...], int] = {}
    for perm in itertools.permutations(range(1, d + 1)):
        # x_i = perm[i] / (d + 1), the top coordinate is 0
        xs = list(perm) + [0]
        a = [(1 if xs[i] > xs[j] else 0) if j != d else 0 for i, j in ap.edges]
        klass = project_divisor(tree, a)
        counts[klass] = counts.get(klass, 0) + 1
    total = factorial(d)
    return {k: Fraction(counts[k], total) for k in sorted(counts)}


def cube(e: int, low: int = 0, high: int = 1) -> VPolytope:
    """The cube ``[low, high]^e`` with its inequality description."""
    rows = []
    for i in range(e):
        u = tuple(Fraction(int(i == j)) for j in range(e))
        rows.append((u, Fraction(high)))
        rows.append((tuple(-v for v in u), Fraction(-low)))
    return VPolytope.from_points(e, itertools.product((low, high), repeat=e), tuple(rows))


def standard_simplex(e: int) -> VPolytope:
    """``conv(0, e_1, ..., e_e)`` with its inequality description."""
    pts = [tuple(int(i == j) for j in range(e)) for i in range(e)] + [(0,) * e]
    rows = [(tuple(Fraction(-int(i == j)) for j in range(e)), Fraction(0)) for i in range(e)]
    rows.append((tuple(Fraction(1) for _ in range(e)), Fraction(1)))
    return VPolytope.from_points(e, pts, tuple(rows))


def join(P: VPolytope, Q: VPolytope) -> VPolytope:
    """The join ``conv({(0, 0, p)} u {(1, q, 0)})`` in ``Q^(1 + dim Q + dim P)``.

    Coordinates are ``(lam, y_Q, y_P)``. When both inputs carry inequality
    descriptions, the join gets ``y_P in (1 - lam) P``, ``y_Q in lam Q`` and
    ``0 <= lam <= 1``.
    """
    e, f = P.dim, Q.dim
    zero_p, zero_q = (Fraction(0),) * e, (Fraction(0),) * f
    pts = [(Fraction(0),) + zero_q + p for p in P.vertices]
    pts += [(Fraction(1),) + q + zero_p for q in Q.vertices]
    rows = None
    if P.inequalities is not None and Q.inequalities is not None:
        rows = [((Fraction(-1),) + zero_q + zero_p, Fraction(0)), ((Fraction(1),) + zero_q + zero_p, Fraction(1))]
        for a, b in P.inequalities:
            rows.append(((b,) + zero_q + tuple(a), b))
        for a, b in Q.inequalities:
            rows.append(((-b,) + tuple(a) + zero_p, Fraction(0)))
        rows = tuple(rows)
    return VPolytope.from_points(1 + e + f, pts, rows)


def join_volume_check(P: VPolytope, Q: VPolytope) -> tuple[Fraction, Fraction]:
    """Both sides of ``vol(P * Q) (e+f+1)! = vol(P) vol(Q) e! f!``."""
    e, f = P.dim, Q.dim
    lhs = volume(join(P, Q)) * factorial(e + f + 1)
    rhs = volume(P) * volume(Q) * factorial(e) * factorial(f)
    return lhs, rhs
