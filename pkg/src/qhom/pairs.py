"""
Relative q-chains of pairs and triples, and instance-level exactness checks.

For face-closed B <= A <= X the cell-wise short exact sequence

    0 -> C(A, B) -> C(X, B) -> C(X, A) -> 0

gives, for every amplitude m and degree n, the junctions

    H_{m,n}(A,B) -> H_{m,n}(X,B) -> H_{m,n}(X,A) -> H_{N-m,n-m}(A,B) -> H_{N-m,n-m}(X,B) -> ...

where the connecting map lifts a relative m-cycle to X, applies border^m and
reads the result in A.  A pair is the triple with B empty.  Exactness is
checked numerically: the composite vanishes and rank(in) + rank(out) equals
the dimension of the middle term.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .cyclotomic import CyclotomicInt, CyclotomicRational
from .linalg import Matrix
from .ncomplex import (
    AmplitudeHomologyReport,
    GradedMorphism,
    GradedNComplex,
    build_point_complex,
    homology_report,
    homology_space,
    induced_homology_map,
)
from .simplicial import (
    SemiSimplicialSet,
    SimplicialStructureError,
    augmentation_morphism,
    border_matrix,
    to_ncomplex,
    validate_simplicial,
)


@dataclass(frozen=True)
class SimplicialPair:
    ambient: SemiSimplicialSet
    sub: frozenset
    base: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "sub", frozenset(self.sub))
        object.__setattr__(self, "base", frozenset(self.base))
        x = self.ambient
        known = {c for xs in x.cells.values() for c in xs}
        for name, part in (("subcomplex", self.sub), ("base", self.base)):
            missing = part - known
            if missing:
                raise SimplicialStructureError(f"{name} cell {sorted(missing)[0]!r} is not a cell of X")
            for (n, c), img in x.faces.items():
                if c in part:
                    outside = [y for y in img if y not in part]
                    if outside:
                        raise SimplicialStructureError(
                            f"{name} is not closed under faces: {c!r} has face {outside[0]!r}"
                        )
        if not self.base <= self.sub:
            raise SimplicialStructureError("base of a triple must lie inside the subcomplex")

    def cells_outside(self, part: frozenset, n: int) -> tuple:
        return tuple(c for c in self.ambient.cells_in(n) if c not in part)

    def cells_between(self, n: int) -> tuple:
        """Cells of A not in B, in X's order."""
        return tuple(c for c in self.ambient.cells_in(n) if c in self.sub and c not in self.base)


def _cell_complex(x: SemiSimplicialSet, order: int, hi: int, basis: dict, truncated: bool) -> GradedNComplex:
    """Complex spanned by ``basis[n]`` with the border of X followed by projection onto that span."""
    ranks = tuple(len(basis.get(n, ())) for n in range(hi + 1))
    borders = {}
    for n in range(1, hi + 1):
        full = border_matrix(x, order, n)
        rows = [x.index(n - 1, c) for c in basis.get(n - 1, ())]
        cols = [x.index(n, c) for c in basis.get(n, ())]
        data = [[full[r, c] for c in cols] for r in rows]
        borders[n] = Matrix.from_rows(order, data, ncols=len(cols))
    return GradedNComplex(order, 0, hi, ranks, borders, truncated=truncated)


@dataclass
class TripleSequence:
    """The three complexes of 0 -> C(A,B) -> C(X,B) -> C(X,A) -> 0 and the maps between them."""

    pair: SimplicialPair
    order: int
    hi: int
    sub_rel: GradedNComplex = field(init=False)  # C(A, B)
    mid: GradedNComplex = field(init=False)  # C(X, B)
    quot: GradedNComplex = field(init=False)  # C(X, A)
    inclusion: GradedMorphism = field(init=False)
    projection: GradedMorphism = field(init=False)

    def __post_init__(self):
        p, x = self.pair, self.pair.ambient
        ok, bad = validate_simplicial(x)
        if not ok:
            raise SimplicialStructureError(f"face identity fails at (i, j, cell) = {bad}")
        if x.open_top:
            self.hi = min(self.hi, x.top)
        truncated = x.open_top or x.top > self.hi
        degrees = range(self.hi + 1)
        self.basis_ab = {n: p.cells_between(n) for n in degrees}
        self.basis_xb = {n: p.cells_outside(p.base, n) for n in degrees}
        self.basis_xa = {n: p.cells_outside(p.sub, n) for n in degrees}
        self.sub_rel = _cell_complex(x, self.order, self.hi, self.basis_ab, truncated)
        self.mid = _cell_complex(x, self.order, self.hi, self.basis_xb, truncated)
        self.quot = _cell_complex(x, self.order, self.hi, self.basis_xa, truncated)
        self.inclusion = GradedMorphism(self.sub_rel, self.mid, 0, {
            n: self._selection(self.basis_xb[n], self.basis_ab[n]) for n in degrees
        })
        self.projection = GradedMorphism(self.mid, self.quot, 0, {
            n: self._selection(self.basis_xa[n], self.basis_xb[n]) for n in degrees
        })

    def _selection(self, rows, cols) -> Matrix:
        pos = {c: i for i, c in enumerate(rows)}
        data = [[0] * len(cols) for _ in rows]
        for j, c in enumerate(cols):
            if c in pos:
                data[pos[c]][j] = 1
        return Matrix.from_rows(self.order, data, ncols=len(cols))

    def lift(self, n: int, v) -> tuple:
        """C(X, A)_n -> C(X, B)_n, zero on the cells of A."""
        pos = {c: i for i, c in enumerate(self.basis_xa.get(n, ()))}
        zero = CyclotomicInt.zero(self.order)
        return tuple(v[pos[c]] if c in pos else zero for c in self.basis_xb.get(n, ()))

    def restrict_to_sub(self, n: int, v) -> tuple:
        """Read a chain of C(X, B)_n that lies in C(A, B)_n in A's coordinates."""
        pos = {c: i for i, c in enumerate(self.basis_xb.get(n, ()))}
        for c, i in pos.items():
            if c not in self.pair.sub and not v[i].is_zero():
                raise ValueError(f"chain is not supported in the subcomplex (cell {c!r})")
        return tuple(v[pos[c]] for c in self.basis_ab.get(n, ()))

    def connecting_image(self, m: int, n: int, z, adjust=None) -> tuple:
        """Coordinates in H_{N-m,n-m}(A,B) of the connecting image of relative m-cycle z.

        ``adjust`` (a chain of C(X,B)_n supported on A) changes the lift; the
        answer must not depend on it.
        """
        lifted = self.lift(n, z)
        if adjust is not None:
            lifted = tuple(a + b for a, b in zip(lifted, adjust))
        pushed = self.mid.border_power(m, n).apply(lifted)
        target = homology_space(self.sub_rel, self.order - m, n - m)
        return target.coordinates(self.restrict_to_sub(n - m, pushed))

    def connecting_matrix(self, m: int, n: int) -> Matrix:
        src = homology_space(self.quot, m, n)
        tgt = homology_space(self.sub_rel, self.order - m, n - m)
        cols = [self.connecting_image(m, n, z) for z in src.classes]
        return Matrix.from_columns(self.order, cols, tgt.dim)


def relative_complex(p: SimplicialPair, order: int, hi: int) -> GradedNComplex:
    return TripleSequence(p, order, hi).quot


def connecting_morphism(p: SimplicialPair, order: int, m: int, n: int, hi: int | None = None) -> Matrix:
    """H_{m,n}(X,A) -> H_{N-m,n-m}(A,B) as a matrix in the standard homology bases."""
    if not 1 <= m <= order - 1:
        raise ValueError(f"amplitude must satisfy 1 <= m <= N-1, got {m}")
    hi = p.ambient.top if hi is None else hi
    return TripleSequence(p, order, max(hi, n)).connecting_matrix(m, n)


# ---------------------------------------------------------------------------
# exactness audit


@dataclass(frozen=True)
class Junction:
    where: str  # which homology the junction sits at
    m: int
    n: int
    dim_middle: int
    rank_in: int
    rank_out: int
    composite_zero: bool

    @property
    def passed(self) -> bool:
        return self.composite_zero and self.rank_in + self.rank_out == self.dim_middle


@dataclass
class ExactnessReport:
    order: int
    junctions: list
    excluded: list
    euler_residuals: dict

    @property
    def passed(self) -> bool:
        return all(j.passed for j in self.junctions) and not any(self.euler_residuals.values())

    def failures(self) -> list:
        return [j for j in self.junctions if not j.passed]

    def lines(self) -> list[str]:
        out = []
        for j in self.junctions:
            status = "PASS" if j.passed else "FAIL"
            out.append(
                f"{status} {j.where:<10} m={j.m} n={j.n} dim={j.dim_middle} "
                f"rank_in={j.rank_in} rank_out={j.rank_out} composite_zero={j.composite_zero}"
            )
        for e in self.excluded:
            out.append(f"SKIP {e}")
        for k, v in sorted(self.euler_residuals.items()):
            out.append(f"{'PASS' if v == 0 else 'FAIL'} euler sequence {k}: residual {v}")
        return out


def _matrix_or_zero(maps: dict, n: int, order: int, rows: int, cols: int) -> Matrix:
    mat = maps.get(n)
    return mat if mat is not None else Matrix.zeros(order, rows, cols)


def exactness_audit(p: SimplicialPair, order: int, hi: int | None = None) -> ExactnessReport:
    hi = p.ambient.top if hi is None else hi
    seq = TripleSequence(p, order, hi)
    a, x, r = seq.sub_rel, seq.mid, seq.quot
    induced_i = {m: induced_homology_map(seq.inclusion, m) for m in range(1, order)}
    induced_j = {m: induced_homology_map(seq.projection, m) for m in range(1, order)}

    def dim(c, m, n):
        return homology_space(c, m, n).dim if 0 <= n <= hi else 0

    def i_map(m, n):
        return _matrix_or_zero(induced_i[m], n, order, dim(x, m, n), dim(a, m, n))

    def j_map(m, n):
        return _matrix_or_zero(induced_j[m], n, order, dim(r, m, n), dim(x, m, n))

    def delta(m, n):
        if n < 0 or n > hi:
            return Matrix.zeros(order, dim(a, order - m, n - m), dim(r, m, n))
        return seq.connecting_matrix(m, n)

    def reliable(m, n):
        return all(c.is_reliable(m, n) for c in (a, x, r))

    junctions, excluded = [], []
    for m in range(1, order):
        for n in range(0, hi + 1):
            steps = [
                ("H(X)", m, n, i_map(m, n), j_map(m, n), dim(x, m, n), [(m, n)]),
                ("H(X,A)", m, n, j_map(m, n), delta(m, n), dim(r, m, n), [(m, n), (order - m, n - m)]),
                ("H(A)", order - m, n - m, delta(m, n), i_map(order - m, n - m), dim(a, order - m, n - m),
                 [(m, n), (order - m, n - m)]),
            ]
            for where, mm, nn, fin, fout, dmid, spots in steps:
                if not all(reliable(s, t) for s, t in spots if t >= 0):
                    excluded.append(f"{where} m={mm} n={nn}: truncation window")
                    continue
                comp = (fout @ fin).is_zero()
                junctions.append(Junction(where, mm, nn, dmid, fin.rank(), fout.rank(), comp))

    # alternating dimension sums along each unrolled sequence
    residuals = {}
    if not any(c.truncated for c in (a, x, r)):
        seen = set()
        for m in range(1, order):
            for start in range(hi, hi + order):
                stages = []
                mm, nn = m, start
                while nn >= -order:
                    stages.append((mm, nn))
                    mm, nn = order - mm, nn - mm
                key = frozenset(stages)
                if any(key <= s for s in seen):
                    continue
                seen.add(key)
                total = 0
                for t, (sm, sn) in enumerate(stages):
                    sign = 1 if t % 2 == 0 else -1
                    total += sign * (dim(a, sm, sn) - dim(x, sm, sn) + dim(r, sm, sn))
                residuals[f"m={m} from n={start}"] = total
    junctions.sort(key=lambda j: (j.m, j.n, j.where))
    return ExactnessReport(order, junctions, excluded, residuals)


# ---------------------------------------------------------------------------
# reduced homology


@dataclass
class ReducedHomology:
    report: AmplitudeHomologyReport  # dims of ker(H(X) -> H(point))
    full: AmplitudeHomologyReport
    augmentation_ranks: dict  # (m, n) -> rank of the induced map
    pattern: str  # which indexing the nonzero ranks follow

    def splitting_holds(self) -> bool:
        """dim H(X) = dim reduced + rank of the augmentation, everywhere."""
        return all(
            self.full.dim(m, n) == self.report.dim(m, n) + self.augmentation_ranks.get((m, n), 0)
            for (m, n) in self.full.dims
        )


def reduced_homology(x: SemiSimplicialSet, order: int, hi: int | None = None) -> ReducedHomology:
    """Kernel of the map induced by the augmentation onto the point.

    The point complex is a truncated window, so by default the window of a
    finite X runs N - 1 degrees past its top; that keeps the target reliable
    at every degree where X has cells.  An open-top X is never read past its
    top, where its chains are unknown.
    """
    if not x.cells:
        raise ValueError("reduced homology needs a nonempty simplicial set")
    if hi is None:
        hi = x.top if x.open_top else x.top + order - 1
    elif x.open_top:
        hi = min(hi, x.top)
    gamma = augmentation_morphism(x, order, hi)
    full = homology_report(gamma.source)
    ranks, dims, bad = {}, {}, set(full.unreliable)
    for m in range(1, order):
        induced = induced_homology_map(gamma, m)
        for n in range(hi + 1):
            rk = induced[n].rank()
            ranks[(m, n)] = rk
            dims[(m, n)] = full.dim(m, n) - rk
            if not gamma.target.is_reliable(m, n):
                bad.add((m, n))
    report = AmplitudeHomologyReport(order, 0, hi, dims, frozenset(bad))
    hits = [k for k, v in ranks.items() if v and k not in bad]
    point_like = all(n == m - 1 for m, n in hits)
    display_like = all(n == m for m, n in hits)
    if not hits:
        pattern = "none"
    elif point_like:
        pattern = "n = m-1"
    elif display_like:
        pattern = "n = m"
    else:
        pattern = "mixed"
    return ReducedHomology(report, full, ranks, pattern)


def pair_from_json(data: dict, x: SemiSimplicialSet | None = None) -> SimplicialPair:
    from .simplicial import simplicial_from_json

    x = x or simplicial_from_json(data)
    return SimplicialPair(x, frozenset(data.get("subcomplex", ())), frozenset(data.get("base", ())))


__all__ = [
    "SimplicialPair",
    "TripleSequence",
    "Junction",
    "ExactnessReport",
    "ReducedHomology",
    "relative_complex",
    "connecting_morphism",
    "exactness_audit",
    "reduced_homology",
    "pair_from_json",
]
