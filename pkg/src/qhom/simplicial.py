"""
Finite semi-simplicial sets (face maps only) and their q-deformed chains.

Face identity convention: ``faces[(n, x)][i]`` is the i-th face of the n-cell
x.  Composition reads right to left, so d_i d_j (x) means "apply d_j, then
d_i", and the identity checked is

    d_i d_j = d_j d_(i+1)    for all j <= i.

Under that reading it is the usual semi-simplicial identity d_i d_j =
d_(j-1) d_i (i < j) with the indices relabelled; deleting vertices of an
ordered simplex satisfies it.

The border is sum_i q^i d_i.  A finite model computes the homology of exactly
that model: a face-only point truncated at some top degree is not the
(infinite) point, so such models are built with ``open_top=True`` and their
top degrees are flagged by the homology report.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .cyclotomic import CyclotomicInt, CyclotomicRational, parse_coeffs, q_power, qbasic, qfactorial_extended
from .linalg import Matrix
from .ncomplex import GradedMorphism, GradedNComplex, StructuralError, build_point_complex


class SimplicialStructureError(StructuralError):
    """Face table is not total or points outside the declared cells."""


@dataclass(frozen=True)
class SemiSimplicialSet:
    cells: dict  # degree -> tuple of cell ids
    faces: dict  # (degree, cell) -> tuple of face ids (d_0, ..., d_n)
    open_top: bool = False
    _index: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        cells = {int(n): tuple(xs) for n, xs in self.cells.items() if xs}
        object.__setattr__(self, "cells", cells)
        seen = {}
        for n, xs in cells.items():
            if n < 0:
                raise SimplicialStructureError(f"negative degree {n}")
            for x in xs:
                if x in seen:
                    raise SimplicialStructureError(f"cell {x!r} declared in degrees {seen[x]} and {n}")
                seen[x] = n
            self._index[n] = {x: i for i, x in enumerate(xs)}
        for n, xs in cells.items():
            if n == 0:
                continue
            lower = self._index.get(n - 1, {})
            for x in xs:
                img = self.faces.get((n, x))
                if img is None:
                    raise SimplicialStructureError(f"missing faces for {n}-cell {x!r}")
                if len(img) != n + 1:
                    raise SimplicialStructureError(f"{n}-cell {x!r} needs {n + 1} faces, got {len(img)}")
                for i, y in enumerate(img):
                    if y not in lower:
                        raise SimplicialStructureError(f"face d_{i} of {x!r} is {y!r}, not a {n - 1}-cell")

    @property
    def top(self) -> int:
        return max(self.cells) if self.cells else -1

    def cells_in(self, n: int) -> tuple:
        return self.cells.get(n, ())

    def count(self, n: int) -> int:
        return len(self.cells.get(n, ()))

    def index(self, n: int, x) -> int:
        return self._index[n][x]

    def face(self, n: int, x, i: int):
        return self.faces[(n, x)][i]

    def degree_of(self, x) -> int:
        for n, idx in self._index.items():
            if x in idx:
                return n
        raise KeyError(x)

    def restrict(self, keep) -> "SemiSimplicialSet":
        """Sub-object on the cells in ``keep``; must be closed under faces."""
        keep = set(keep)
        cells = {n: tuple(x for x in xs if x in keep) for n, xs in self.cells.items()}
        faces = {(n, x): img for (n, x), img in self.faces.items() if x in keep}
        for (n, x), img in faces.items():
            missing = [y for y in img if y not in keep]
            if missing:
                raise SimplicialStructureError(f"subset not closed under faces: {x!r} has face {missing[0]!r}")
        return SemiSimplicialSet(cells, faces, open_top=False)


def validate_simplicial(x: SemiSimplicialSet):
    """(True, None) or (False, (i, j, cell)) for the first failure of d_i d_j = d_j d_(i+1), j <= i."""
    for n in sorted(x.cells):
        if n < 2:
            continue
        for c in x.cells[n]:
            for i in range(n):
                for j in range(i + 1):
                    lhs = x.face(n - 1, x.face(n, c, j), i)
                    rhs = x.face(n - 1, x.face(n, c, i + 1), j)
                    if lhs != rhs:
                        return False, (i, j, c)
    return True, None


# ---------------------------------------------------------------------------
# chains


@dataclass(frozen=True)
class QChain:
    degree: int
    coeffs: dict  # cell -> nonzero cyclotomic coefficient

    def __post_init__(self):
        object.__setattr__(self, "coeffs", {k: v for k, v in self.coeffs.items() if not v.is_zero()})

    @classmethod
    def zero(cls, degree: int) -> "QChain":
        return cls(degree, {})

    @classmethod
    def cell(cls, degree: int, x, order: int) -> "QChain":
        return cls(degree, {x: CyclotomicInt.one(order)})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "QChain") -> "QChain":
        if other.degree != self.degree and not (self.is_zero() or other.is_zero()):
            raise ValueError("cannot add chains of different degree")
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out[k] + v if k in out else v
        return QChain(self.degree if not self.is_zero() else other.degree, out)

    def __neg__(self):
        return QChain(self.degree, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a) -> "QChain":
        return QChain(self.degree, {k: a * v for k, v in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, QChain):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.coeffs == other.coeffs

    __hash__ = object.__hash__


def face_chain(x: SemiSimplicialSet, c: QChain, i: int) -> QChain:
    """Apply the single face map d_i linearly."""
    if c.degree < 1:
        return QChain.zero(c.degree - 1)
    out = {}
    for cell, a in c.coeffs.items():
        y = x.face(c.degree, cell, i)
        out[y] = out[y] + a if y in out else a
    return QChain(c.degree - 1, out)


def chain_border(x: SemiSimplicialSet, order: int, c: QChain) -> QChain:
    """sum_i q^i d_i(c); the zero chain in degree -1 for 0-chains."""
    n = c.degree
    if n < 1:
        return QChain.zero(n - 1)
    out = {}
    for cell, a in c.coeffs.items():
        for i, y in enumerate(x.faces[(n, cell)]):
            t = q_power(order, i) * a
            out[y] = out[y] + t if y in out else t
    return QChain(n - 1, out)


def chain_border_power(x: SemiSimplicialSet, order: int, c: QChain, k: int) -> QChain:
    for _ in range(k):
        c = chain_border(x, order, c)
    return c


def iterated_faces_closed_form(x: SemiSimplicialSet, order: int, c: QChain, k: int) -> QChain:
    """[k]_q! * sum over i_1 <= ... <= i_k of q^(i_1+...+i_k) d_(i_k) ... d_(i_1)(c), enumerated."""
    n = c.degree
    if k == 0:
        return c
    if k > n:
        return QChain.zero(n - k)
    total = QChain.zero(n - k)
    for idx in itertools.combinations_with_replacement(range(n - k + 2), k):
        term = c
        for i in idx:
            term = face_chain(x, term, i)
        total = total + term.scale(q_power(order, sum(idx)))
    return total.scale(qfactorial_extended(order, k))


def iteration_rule_check(x: SemiSimplicialSet, order: int, c: QChain, k: int) -> bool:
    if not 0 <= k <= order:
        raise ValueError(f"k must lie in [0, N], got {k}")
    return chain_border_power(x, order, c, k) == iterated_faces_closed_form(x, order, c, k)


def chain_to_vector(x: SemiSimplicialSet, c: QChain, order: int) -> tuple:
    z = CyclotomicInt.zero(order)
    v = [z] * x.count(c.degree)
    for cell, a in c.coeffs.items():
        v[x.index(c.degree, cell)] = a
    return tuple(v)


def vector_to_chain(x: SemiSimplicialSet, degree: int, v) -> QChain:
    return QChain(degree, {cell: a for cell, a in zip(x.cells_in(degree), v)})


def border_matrix(x: SemiSimplicialSet, order: int, n: int) -> Matrix:
    rows, cols = x.count(n - 1), x.count(n)
    data = [[CyclotomicInt.zero(order)] * cols for _ in range(rows)]
    for j, cell in enumerate(x.cells_in(n)):
        for i, y in enumerate(x.faces[(n, cell)]):
            r = x.index(n - 1, y)
            data[r][j] = data[r][j] + q_power(order, i)
    return Matrix.from_rows(order, data, ncols=cols)


def to_ncomplex(x: SemiSimplicialSet, order: int, hi: int) -> GradedNComplex:
    ok, bad = validate_simplicial(x)
    if not ok:
        raise SimplicialStructureError(f"face identity fails at (i, j, cell) = {bad}")
    if x.open_top:
        # nothing is known above the top of an open model
        hi = min(hi, x.top)
    ranks = tuple(x.count(n) for n in range(hi + 1))
    borders = {n: border_matrix(x, order, n) for n in range(1, hi + 1)}
    truncated = x.open_top or x.top > hi
    return GradedNComplex(order, 0, hi, ranks, borders, truncated=truncated)


def augmentation_morphism(x: SemiSimplicialSet, order: int, hi: int) -> GradedMorphism:
    """Chains of x -> chains of the point: every n-cell goes to the point's n-cell."""
    src = to_ncomplex(x, order, hi)
    tgt = build_point_complex(order, hi)
    mats = {n: Matrix.from_rows(order, [[1] * x.count(n)], ncols=x.count(n)) for n in range(hi + 1)}
    return GradedMorphism(src, tgt, 0, mats)


def cell_map_morphism(x: SemiSimplicialSet, y: SemiSimplicialSet, cell_map: dict, order: int, hi: int,
                      source: GradedNComplex | None = None, target: GradedNComplex | None = None) -> GradedMorphism:
    """Chain map induced by a face-compatible map of cells x -> y."""
    src = source or to_ncomplex(x, order, hi)
    tgt = target or to_ncomplex(y, order, hi)
    mats = {}
    for n in range(hi + 1):
        data = [[0] * x.count(n) for _ in range(y.count(n))]
        for j, cell in enumerate(x.cells_in(n)):
            data[y.index(n, cell_map[cell])][j] = 1
        mats[n] = Matrix.from_rows(order, data, ncols=x.count(n))
    return GradedMorphism(src, tgt, 0, mats)


# ---------------------------------------------------------------------------
# standard models


def point_model(top: int) -> SemiSimplicialSet:
    """One cell p<n> per degree 0..top, all faces equal."""
    cells = {n: (f"p{n}",) for n in range(top + 1)}
    faces = {(n, f"p{n}"): (f"p{n - 1}",) * (n + 1) for n in range(1, top + 1)}
    return SemiSimplicialSet(cells, faces, open_top=True)


def _label(vs) -> str:
    return "v" + "".join(str(v) for v in vs) if max(vs, default=0) < 10 else "v" + "_".join(map(str, vs))


def simplex_model(k: int, proper: bool = False) -> SemiSimplicialSet:
    """Ordered simplex on vertices 0..k (faces delete a vertex); ``proper`` drops the top cell."""
    cells, faces = {}, {}
    top = k - 1 if proper else k
    for n in range(top + 1):
        subsets = list(itertools.combinations(range(k + 1), n + 1))
        cells[n] = tuple(_label(s) for s in subsets)
        if n:
            for s in subsets:
                faces[(n, _label(s))] = tuple(_label(s[:i] + s[i + 1:]) for i in range(n + 1))
    return SemiSimplicialSet(cells, faces)


def boundary_model(k: int) -> SemiSimplicialSet:
    return simplex_model(k, proper=True)


def interval_model() -> SemiSimplicialSet:
    """Edge e with d_0 e = v1 and d_1 e = v0."""
    return SemiSimplicialSet({0: ("v0", "v1"), 1: ("e",)}, {(1, "e"): ("v1", "v0")})


# ---------------------------------------------------------------------------
# JSON


def simplicial_from_json(data: dict) -> SemiSimplicialSet:
    try:
        cells = {int(n): tuple(xs) for n, xs in data["cells"].items()}
        faces = {}
        for n, table in data.get("faces", {}).items():
            for cell, img in table.items():
                faces[(int(n), cell)] = tuple(img)
    except (KeyError, AttributeError, TypeError, ValueError) as exc:
        raise SimplicialStructureError(f"malformed simplicial JSON: {exc}") from None
    return SemiSimplicialSet(cells, faces, open_top=bool(data.get("open_top", False)))


def simplicial_to_json(x: SemiSimplicialSet) -> dict:
    out = {
        "cells": {str(n): list(xs) for n, xs in sorted(x.cells.items())},
        "faces": {},
    }
    for (n, cell), img in sorted(x.faces.items(), key=lambda kv: (kv[0][0], x.index(*kv[0]))):
        out["faces"].setdefault(str(n), {})[cell] = list(img)
    if x.open_top:
        out["open_top"] = True
    return out


def chain_from_json(data: dict, order: int) -> QChain:
    return QChain(int(data["degree"]), {k: parse_coeffs(v, order) for k, v in data["coeffs"].items()})


__all__ = [
    "SimplicialStructureError",
    "SemiSimplicialSet",
    "QChain",
    "validate_simplicial",
    "face_chain",
    "chain_border",
    "chain_border_power",
    "iterated_faces_closed_form",
    "iteration_rule_check",
    "chain_to_vector",
    "vector_to_chain",
    "border_matrix",
    "to_ncomplex",
    "augmentation_morphism",
    "cell_map_morphism",
    "point_model",
    "simplex_model",
    "boundary_model",
    "interval_model",
    "simplicial_from_json",
    "simplicial_to_json",
    "chain_from_json",
]
