"""Exact-rational geometric simplicial complexes.

All geometry runs over ``fractions.Fraction``; no floating point enters
any semantic decision. Simplices are sorted tuples of vertex ids; the
canonical display name joins the sorted ids (``"acd"`` when every id
is a single character, comma-separated otherwise).

Definable sets store simplex flags only (lower sets of the face poset
for closed polarity, upper sets for open); geometry enters exclusively
through carrier() and member().
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    AffinelyDependent,
    DimensionMismatch,
    DuplicateVertex,
    OutsideSupport,
    PolarityMismatch,
    UnknownSimplex,
    WrongDimension,
)
from .poset import Poset, from_covers, poset_to_json

__all__ = [
    "Complex",
    "DefinableSet",
    "build_complex",
    "verify_complex",
    "complex_from_json",
    "complex_to_json",
    "complex_to_off",
    "sample_points",
    "parse_rational",
]

Point = tuple[Fraction, ...]
SimplexKey = tuple[str, ...]  # sorted vertex ids


def parse_rational(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    return Fraction(str(s))


# ---------------------------------------------------------------------------
# Exact linear algebra helpers


def _gauss_rank(rows: list[list[Fraction]]) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for col in range(cols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pr = rows[rank]
        inv = 1 / pr[col]
        rows[rank] = [x * inv for x in pr]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def affinely_independent(points: list[Point]) -> bool:
    if len(points) <= 1:
        return True
    base = points[0]
    rows = [[p[i] - base[i] for i in range(len(base))] for p in points[1:]]
    return _gauss_rank(rows) == len(points) - 1


def barycentric_coordinates(points: list[Point], x: Point):
    """Solve x = sum r_i p_i with sum r_i = 1; None if x is not in the
    affine hull of the (affinely independent) points."""
    k = len(points)
    n = len(x)
    # rows: one per ambient coordinate plus the normalisation row
    aug = [[points[j][i] for j in range(k)] + [x[i]] for i in range(n)]
    aug.append([Fraction(1)] * k + [Fraction(1)])
    # Gaussian elimination on the k unknowns
    rank = 0
    where = [-1] * k
    for col in range(k):
        pivot = next((r for r in range(rank, len(aug)) if aug[r][col] != 0), None)
        if pivot is None:
            continue
        aug[rank], aug[pivot] = aug[pivot], aug[rank]
        inv = 1 / aug[rank][col]
        aug[rank] = [v * inv for v in aug[rank]]
        for r in range(len(aug)):
            if r != rank and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[rank])]
        where[col] = rank
        rank += 1
    for r in range(rank, len(aug)):
        if aug[r][-1] != 0:
            return None  # inconsistent: x outside the affine hull
    return [aug[where[c]][-1] if where[c] >= 0 else Fraction(0) for c in range(k)]


# ---------------------------------------------------------------------------
# Complex


class Complex:
    """Geometric simplicial complex closed under nonempty faces."""

    def __init__(self, vertices: dict[str, Point], simplices: set[SimplexKey], ambient: int):
        self.vertices = dict(vertices)
        self.ambient = ambient
        self.simplices: list[SimplexKey] = sorted(simplices, key=lambda s: (len(s), s))
        self._set = set(self.simplices)
        self._multichar = any(len(v) != 1 for v in self.vertices)

    def __len__(self):
        return len(self.simplices)

    def __contains__(self, key: SimplexKey):
        return tuple(key) in self._set

    def name(self, key: SimplexKey) -> str:
        sep = "," if self._multichar else ""
        return sep.join(key)

    def key_of(self, name: str) -> SimplexKey:
        key = tuple(sorted(name.split(","))) if self._multichar else tuple(sorted(name))
        if key not in self._set:
            raise UnknownSimplex(name)
        return key

    def points_of(self, key: SimplexKey) -> list[Point]:
        return [self.vertices[v] for v in key]

    def dim(self) -> int:
        if not self.simplices:
            return -1
        return max(len(s) for s in self.simplices) - 1

    def face_poset(self) -> Poset:
        names = [self.name(s) for s in self.simplices]
        covers = []
        for s in self.simplices:
            if len(s) == 1:
                continue
            for drop in range(len(s)):
                face = s[:drop] + s[drop + 1:]
                covers.append((self.name(face), self.name(s)))
        return from_covers(names, sorted(set(covers)))

    # -- geometry ---------------------------------------------------------

    def _check_point(self, x: Point):
        if len(x) != self.ambient:
            raise DimensionMismatch(
                f"point has {len(x)} coordinates, ambient dimension is {self.ambient}"
            )

    def carrier(self, x: Point) -> SimplexKey:
        """The unique simplex whose relative interior contains x."""
        self._check_point(x)
        for s in self.simplices:
            coords = barycentric_coordinates(self.points_of(s), x)
            if coords is not None and all(c > 0 for c in coords):
                return s
        raise OutsideSupport(x)

    def contains_point(self, key: SimplexKey, x: Point) -> bool:
        """Exact test x in conv(vertices of key)."""
        coords = barycentric_coordinates(self.points_of(key), x)
        return coords is not None and all(c >= 0 for c in coords)

    def open_star(self, key: SimplexKey) -> "DefinableSet":
        key = tuple(key)
        if key not in self._set:
            raise UnknownSimplex("".join(key))
        flags = frozenset(t for t in self.simplices if set(key) <= set(t))
        return DefinableSet(self, "open", flags)

    def definable(self, polarity: str, keys) -> "DefinableSet":
        return DefinableSet(self, polarity, frozenset(tuple(k) for k in keys))

    def full_set(self, polarity: str) -> "DefinableSet":
        return DefinableSet(self, polarity, frozenset(self._set))

    def empty_set(self, polarity: str) -> "DefinableSet":
        return DefinableSet(self, polarity, frozenset())

    def faces_of(self, key: SimplexKey) -> list[SimplexKey]:
        return [t for t in self.simplices if set(t) <= set(key)]

    def cofaces_of(self, key: SimplexKey) -> list[SimplexKey]:
        return [t for t in self.simplices if set(key) <= set(t)]


@dataclass(frozen=True)
class DefinableSet:
    """A lower set (closed) or upper set (open) of the face poset, with
    geometric membership via carrier()."""

    complex: Complex
    polarity: str  # "closed" | "open"
    flags: frozenset

    def __post_init__(self):
        if self.polarity not in ("closed", "open"):
            raise PolarityMismatch(f"bad polarity {self.polarity!r}")
        for s in self.flags:
            if s not in self.complex._set:
                raise UnknownSimplex("".join(s))
        for s in self.flags:
            if self.polarity == "closed":
                bad = [t for t in self.complex.faces_of(s) if t not in self.flags]
            else:
                bad = [t for t in self.complex.cofaces_of(s) if t not in self.flags]
            if bad:
                kind = "down" if self.polarity == "closed" else "up"
                raise PolarityMismatch(
                    f"flags not {kind}-closed at {self.complex.name(s)}"
                )

    def _same(self, other: "DefinableSet"):
        if self.complex is not other.complex or self.polarity != other.polarity:
            raise PolarityMismatch("operands disagree on complex or polarity")

    def union(self, other: "DefinableSet") -> "DefinableSet":
        self._same(other)
        return DefinableSet(self.complex, self.polarity, self.flags | other.flags)

    def intersection(self, other: "DefinableSet") -> "DefinableSet":
        self._same(other)
        return DefinableSet(self.complex, self.polarity, self.flags & other.flags)

    def complement(self) -> "DefinableSet":
        """Flag complement: swaps polarity (closed <-> open)."""
        pol = "open" if self.polarity == "closed" else "closed"
        return DefinableSet(self.complex, pol, frozenset(self.complex._set) - self.flags)

    def member(self, x: Point) -> bool:
        return self.complex.carrier(x) in self.flags

    def names(self) -> list[str]:
        return [self.complex.name(s) for s in sorted(self.flags, key=lambda s: (len(s), s))]


def heyting_implication(u: DefinableSet, v: DefinableSet) -> DefinableSet:
    """U -> V in PC^o: the up-set {s : every coface of s in U is in V}."""
    if u.polarity != "open" or v.polarity != "open":
        raise PolarityMismatch("heyting implication needs open operands")
    u._same(v)
    k = u.complex
    flags = frozenset(
        s for s in k.simplices
        if all(t in v.flags for t in k.cofaces_of(s) if t in u.flags)
    )
    return DefinableSet(k, "open", flags)


def co_implication(c: DefinableSet, d: DefinableSet) -> DefinableSet:
    """C <= D in PC^c: the closure of C \\ D, i.e. all faces of simplices
    in C \\ D."""
    if c.polarity != "closed" or d.polarity != "closed":
        raise PolarityMismatch("co-implication needs closed operands")
    c._same(d)
    k = c.complex
    residue = c.flags - d.flags
    flags = set()
    for s in residue:
        flags.update(k.faces_of(s))
    return DefinableSet(k, "closed", frozenset(flags))


def definable_algebras(k: Complex, cap: int | None = None):
    """(PC^c(K) as Lo(face poset), PC^o(K) as Up(face poset))."""
    from .algebra import FiniteCoHeyting, FiniteHeyting
    from .poset import DEFAULT_UPSET_CAP

    cap = DEFAULT_UPSET_CAP if cap is None else cap
    fp = k.face_poset()
    return FiniteCoHeyting(fp, cap), FiniteHeyting(fp, cap)


# ---------------------------------------------------------------------------
# Construction


def build_complex(vertices: dict, maximal_simplices) -> Complex:
    """Close the listed simplices under faces, checking exact affine
    independence of every listed simplex."""
    verts: dict[str, Point] = {}
    ambient = None
    for name, coords in vertices.items():
        if name in verts:
            raise DuplicateVertex(name)
        pt = tuple(parse_rational(c) for c in coords)
        if ambient is None:
            ambient = len(pt)
        elif len(pt) != ambient:
            raise DimensionMismatch(
                f"vertex {name!r} has {len(pt)} coordinates, expected {ambient}"
            )
        verts[name] = pt
    if ambient is None:
        ambient = 0
    seen_points = {}
    for name, pt in verts.items():
        if pt in seen_points:
            raise DuplicateVertex(f"{name} duplicates {seen_points[pt]}")
        seen_points[pt] = name
    simplices: set[SimplexKey] = set()
    for raw in maximal_simplices:
        ids = tuple(sorted(raw))
        if len(set(ids)) != len(ids):
            raise DuplicateVertex(f"repeated vertex in simplex {raw}")
        for v in ids:
            if v not in verts:
                raise DuplicateVertex(f"simplex references unknown vertex {v!r}")
        if not affinely_independent([verts[v] for v in ids]):
            raise AffinelyDependent(ids)
        # all nonempty subsets are faces
        m = len(ids)
        for mask in range(1, 1 << m):
            face = tuple(ids[i] for i in range(m) if mask >> i & 1)
            simplices.add(face)
    return Complex(verts, simplices, ambient)


# ---------------------------------------------------------------------------
# Condition (2) verification: pairwise intersections are common faces.
#
# For a pair (s, t) with shared vertex ids S, a violation is a common
# point whose weight is not entirely on S in one of the two barycentric
# representations. Checked by exact Fourier-Motzkin feasibility of the
# system "lam, mu >= 0, sum lam = sum mu = 1, sum lam_i v_i = sum mu_j w_j"
# together with one strict inequality per non-shared weight.


def _fm_feasible(eqs, ineqs) -> bool:
    """eqs: (coeffs, const) meaning sum c_i x_i + const = 0.
    ineqs: (coeffs, const, strict) meaning sum c_i x_i + const >= 0 (> 0)."""
    eqs = [(list(c), k) for c, k in eqs]
    ineqs = [(list(c), k, s) for c, k, s in ineqs]
    nvars = len(eqs[0][0]) if eqs else (len(ineqs[0][0]) if ineqs else 0)
    live = list(range(nvars))
    # eliminate variables using equalities first
    while eqs:
        coeffs, const = eqs.pop()
        j = next((v for v in live if coeffs[v] != 0), None)
        if j is None:
            if const != 0:
                return False
            continue
        # x_j = -(const + sum_{i != j} c_i x_i) / c_j
        cj = coeffs[j]
        live.remove(j)

        def subst(tc, tk):
            f = tc[j] / cj
            nc = [tc[v] - f * coeffs[v] for v in range(nvars)]
            nc[j] = Fraction(0)
            return nc, tk - f * const

        eqs = [(*subst(c, k),) for c, k in eqs]
        ineqs = [(*subst(c, k), s) for c, k, s in ineqs]
    # Fourier-Motzkin on the remaining inequalities
    for j in live:
        pos = [t for t in ineqs if t[0][j] > 0]
        neg = [t for t in ineqs if t[0][j] < 0]
        rest = [t for t in ineqs if t[0][j] == 0]
        new = list(rest)
        for pc, pk, ps in pos:
            for nc, nk, ns in neg:
                a, b = pc[j], -nc[j]
                cc = [b * pc[v] + a * nc[v] for v in range(nvars)]
                new.append((cc, b * pk + a * nk, ps or ns))
        ineqs = new
    for coeffs, const, strict in ineqs:
        if strict:
            if const <= 0:
                return False
        elif const < 0:
            return False
    return True


def _pair_violates(k: Complex, s: SimplexKey, t: SimplexKey) -> bool:
    pa = k.points_of(s)
    pb = k.points_of(t)
    shared = set(s) & set(t)
    na, nb = len(pa), len(pb)
    nvars = na + nb
    eqs = []
    for i in range(k.ambient):
        coeffs = [p[i] for p in pa] + [-q[i] for q in pb]
        eqs.append((coeffs, Fraction(0)))
    one = [Fraction(1)] * na + [Fraction(0)] * nb
    eqs.append((one, Fraction(-1)))
    two = [Fraction(0)] * na + [Fraction(1)] * nb
    eqs.append((two, Fraction(-1)))
    nonneg = [
        ([Fraction(int(v == j)) for v in range(nvars)], Fraction(0), False)
        for j in range(nvars)
    ]
    strict_vars = [j for j, vid in enumerate(s) if vid not in shared]
    strict_vars += [na + j for j, vid in enumerate(t) if vid not in shared]
    if not shared:
        return _fm_feasible(eqs, nonneg)
    for j in strict_vars:
        strict = ([Fraction(int(v == j)) for v in range(nvars)], Fraction(0), True)
        if _fm_feasible(eqs, nonneg + [strict]):
            return True
    return False


@dataclass
class ComplexReport:
    violations: list[tuple[str, str]]

    @property
    def ok(self):
        return not self.violations


def verify_complex(k: Complex) -> ComplexReport:
    """Exact check of the pairwise-intersection condition."""
    bad = []
    for i, s in enumerate(k.simplices):
        for t in k.simplices[i + 1:]:
            if set(s) <= set(t) or set(t) <= set(s):
                continue
            if _pair_violates(k, s, t):
                bad.append((k.name(s), k.name(t)))
    return ComplexReport(bad)


# ---------------------------------------------------------------------------
# Pseudo-manifold check


def is_closed_pseudomanifold(k: Complex, d: int):
    """True iff every (d-1)-simplex is a face of exactly two d-simplices.
    Returns (verdict, witnesses)."""
    if k.dim() != d:
        raise WrongDimension(f"complex has dimension {k.dim()}, expected {d}")
    witnesses = []
    tops = [s for s in k.simplices if len(s) == d + 1]
    for s in k.simplices:
        if len(s) != d:
            continue
        count = sum(1 for t in tops if set(s) <= set(t))
        if count != 2:
            witnesses.append(k.name(s))
    return not witnesses, witnesses


# ---------------------------------------------------------------------------
# Sampling


def sample_points(k: Complex, per_simplex: int, seed: int = 0):
    """Per simplex: the barycenter plus pseudo-random strictly positive
    rational barycentric combinations. Deterministic for a fixed seed.
    Returns [(point, carrier_key)]."""
    if per_simplex < 1:
        raise ValueError("per_simplex must be >= 1")
    rng = random.Random(seed)
    out = []
    for s in k.simplices:
        pts = k.points_of(s)
        m = len(pts)
        weight_sets = [[1] * m]
        for _ in range(per_simplex - 1):
            weight_sets.append([rng.randint(1, 97) for _ in range(m)])
        for ws in weight_sets:
            total = sum(ws)
            coords = tuple(
                sum(Fraction(w, total) * p[i] for w, p in zip(ws, pts))
                for i in range(k.ambient)
            )
            out.append((coords, s))
    return out


# ---------------------------------------------------------------------------
# Serialisation


def complex_from_json(data) -> Complex:
    if isinstance(data, str):
        data = json.loads(data)
    return build_complex(data["vertices"], data["maximal"])


def _maximal_of(k: Complex) -> list[SimplexKey]:
    return [
        s for s in k.simplices
        if not any(s != t and set(s) < set(t) for t in k.simplices)
    ]


def complex_to_json(k: Complex) -> dict:
    return {
        "dim": k.ambient,
        "vertices": {v: [str(c) for c in pt] for v, pt in k.vertices.items()},
        "maximal": [list(s) for s in _maximal_of(k)],
    }


def complex_to_off(k: Complex) -> str:
    """OFF export; ambient dimension must be <= 3 (padded with zeros)."""
    if k.ambient > 3:
        raise DimensionMismatch("OFF export requires ambient dimension <= 3")
    order = list(k.vertices)
    idx = {v: i for i, v in enumerate(order)}
    faces = [s for s in _maximal_of(k) if len(s) >= 2]
    lines = ["OFF", f"{len(order)} {len(faces)} 0"]
    for v in order:
        pt = list(k.vertices[v]) + [Fraction(0)] * (3 - k.ambient)
        lines.append(" ".join(str(float(c)) for c in pt))
    for s in faces:
        lines.append(" ".join([str(len(s))] + [str(idx[v]) for v in s]))
    return "\n".join(lines) + "\n"


def face_poset_json(k: Complex) -> dict:
    return poset_to_json(k.face_poset())
