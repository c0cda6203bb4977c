"""
Graded N-complexes over Q(q) held as finite windows of matrices.

A complex lives in degrees ``lo..hi`` (rank zero elsewhere) and carries one
border matrix per degree d, mapping degree d to degree d-1.  Homology with
amplitude m at degree n is ker(border^m at n) / im(border^(N-m) into n), and is
reported by its dimension over Q(q).

When a complex is only a window of something infinite (``truncated=True``),
the image side of H_{m,n} needs degrees up to n + N - m; degrees past
hi - (N - m) are flagged unreliable instead of silently under-counting borders.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .cyclotomic import CyclotomicInt, CyclotomicRational, is_prime, parse_coeffs, q_power, qbasic
from .linalg import Matrix, extend_basis, solve


class StructuralError(ValueError):
    """Shapes or degrees of complex data are inconsistent."""


@dataclass(frozen=True)
class GradedNComplex:
    order: int
    lo: int
    hi: int
    ranks: tuple
    borders: dict = field(hash=False)
    truncated: bool = False
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if not is_prime(self.order):
            raise StructuralError(f"N must be prime, got {self.order}")
        if self.hi < self.lo:
            raise StructuralError("empty degree window")
        if len(self.ranks) != self.hi - self.lo + 1:
            raise StructuralError(f"expected {self.hi - self.lo + 1} ranks, got {len(self.ranks)}")
        if any(r < 0 for r in self.ranks):
            raise StructuralError("ranks must be nonnegative")
        for d, mat in self.borders.items():
            if mat.order != self.order:
                raise StructuralError(f"border at degree {d} has order {mat.order}")
            want = (self.rank(d - 1), self.rank(d))
            if mat.shape != want:
                raise StructuralError(f"border at degree {d} has shape {mat.shape}, expected {want}")

    def rank(self, d: int) -> int:
        if self.lo <= d <= self.hi:
            return self.ranks[d - self.lo]
        return 0

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def border(self, d: int) -> Matrix:
        mat = self.borders.get(d)
        if mat is None:
            return Matrix.zeros(self.order, self.rank(d - 1), self.rank(d))
        return mat

    def border_power(self, k: int, d: int) -> Matrix:
        """Matrix of border^k starting at degree d (identity for k = 0)."""
        if not 0 <= k <= self.order:
            raise ValueError(f"power must lie in [0, N], got {k}")
        key = ("pow", k, d)
        if key not in self._cache:
            result = Matrix.identity(self.order, self.rank(d))
            for j in range(k):
                result = self.border(d - j) @ result
            self._cache[key] = result
        return self._cache[key]

    @property
    def reliable_top(self):
        return self.hi if self.truncated else None

    def is_reliable(self, m: int, n: int) -> bool:
        if not self.truncated:
            return True
        return n <= self.hi - (self.order - m)


def border_power(c: GradedNComplex, k: int, d: int) -> Matrix:
    return c.border_power(k, d)


def validate_ncomplex(c: GradedNComplex):
    """(True, None) if border^N vanishes everywhere, else (False, first bad degree)."""
    n = c.order
    for d in range(c.lo, c.hi + 1):
        if d - n < c.lo - 1:
            continue
        if not c.border_power(n, d).is_zero():
            return False, d
    return True, None


# ---------------------------------------------------------------------------
# homology


@dataclass(frozen=True)
class HomologySpace:
    """Bases realising H_{m,n} = Z_m / B_m at one degree."""

    order: int
    dim_ambient: int
    cycles: tuple
    borders: tuple
    classes: tuple

    @property
    def dim(self) -> int:
        return len(self.classes)

    def coordinates(self, z):
        """Coordinates of the class of cycle z in the basis ``classes``."""
        x = solve(self.order, list(self.borders) + list(self.classes), z, self.dim_ambient)
        if x is None:
            raise ValueError("vector is not an amplitude cycle")
        return x[len(self.borders):]


def homology_space(c: GradedNComplex, m: int, n: int) -> HomologySpace:
    if not 1 <= m <= c.order - 1:
        raise ValueError(f"amplitude must satisfy 1 <= m <= N-1, got {m}")
    key = ("H", m, n)
    if key in c._cache:
        return c._cache[key]
    dim = c.rank(n)
    cycles = tuple(c.border_power(m, n).nullspace()) if dim else ()
    image = c.border_power(c.order - m, n + c.order - m).columns() if dim else []
    borders = tuple(extend_basis(c.order, [], image, dim))
    classes = tuple(extend_basis(c.order, borders, cycles, dim))
    space = HomologySpace(c.order, dim, cycles, borders, classes)
    c._cache[key] = space
    return space


@dataclass(frozen=True)
class AmplitudeHomologyReport:
    order: int
    lo: int
    hi: int
    dims: dict
    unreliable: frozenset = frozenset()

    def dim(self, m: int, n: int) -> int:
        return self.dims.get((m, n), 0)

    def reliable(self, m: int, n: int) -> bool:
        return (m, n) not in self.unreliable

    def nonzero(self, reliable_only: bool = True) -> list[tuple[int, int]]:
        return sorted(k for k, v in self.dims.items() if v and (not reliable_only or k not in self.unreliable))

    def amplitudes(self) -> list[int]:
        return sorted({m for m, _ in self.dims})

    def merge(self, other: "AmplitudeHomologyReport") -> "AmplitudeHomologyReport":
        return AmplitudeHomologyReport(
            self.order, min(self.lo, other.lo), max(self.hi, other.hi),
            {**self.dims, **other.dims}, self.unreliable | other.unreliable,
        )

    def to_json(self) -> dict:
        return {
            "N": self.order,
            "lo": self.lo,
            "hi": self.hi,
            "entries": [
                {"m": m, "n": n, "dim": d, "reliable": (m, n) not in self.unreliable}
                for (m, n), d in sorted(self.dims.items())
            ],
        }

    def table(self) -> str:
        ms = self.amplitudes()
        lines = ["m\\n " + " ".join(f"{n:>3}" for n in range(self.lo, self.hi + 1))]
        for m in ms:
            cells = []
            for n in range(self.lo, self.hi + 1):
                d = self.dim(m, n)
                mark = "?" if (m, n) in self.unreliable else " "
                cells.append(f"{d:>2}{mark}")
            lines.append(f"{m:>3} " + " ".join(cells))
        if self.unreliable:
            lines.append("? = truncation window too short to see all borders")
        return "\n".join(lines)


def amplitude_homology(c: GradedNComplex, m: int) -> AmplitudeHomologyReport:
    """One amplitude's row of dim H_{m,n} for every degree n of the window."""
    if not 1 <= m <= c.order - 1:
        raise ValueError(f"amplitude must satisfy 1 <= m <= N-1, got {m}")
    dims = {}
    bad = set()
    for n in c.degrees():
        dims[(m, n)] = homology_space(c, m, n).dim
        if not c.is_reliable(m, n):
            bad.add((m, n))
    return AmplitudeHomologyReport(c.order, c.lo, c.hi, dims, frozenset(bad))


def homology_report(c: GradedNComplex, amplitudes=None) -> AmplitudeHomologyReport:
    ms = list(amplitudes) if amplitudes is not None else list(range(1, c.order))
    report = AmplitudeHomologyReport(c.order, c.lo, c.hi, {}, frozenset())
    for m in ms:
        report = report.merge(amplitude_homology(c, m))
    return report


# ---------------------------------------------------------------------------
# standard complexes


def build_point_complex(order: int, hi: int) -> GradedNComplex:
    """Z[q] in degrees 0..hi, border at degree n >= 1 is multiplication by [n+1]_q."""
    if hi < 0:
        raise ValueError("hi must be >= 0")
    borders = {n: Matrix.from_rows(order, [[qbasic(order, n + 1)]]) for n in range(1, hi + 1)}
    return GradedNComplex(order, 0, hi, (1,) * (hi + 1), borders, truncated=True)


def build_scalar_complex(order: int) -> GradedNComplex:
    """Z[q] in degrees 0..N-2 with border [k+1]_q at degree k; the target of the index map."""
    top = order - 2
    borders = {k: Matrix.from_rows(order, [[qbasic(order, k + 1)]]) for k in range(1, top + 1)}
    return GradedNComplex(order, 0, top, (1,) * (top + 1), borders, truncated=False)


def zero_complex(order: int, lo: int = 0, hi: int = 0) -> GradedNComplex:
    return GradedNComplex(order, lo, hi, (0,) * (hi - lo + 1), {}, truncated=False)


# ---------------------------------------------------------------------------
# morphisms


@dataclass(frozen=True)
class GradedMorphism:
    """Family of matrices source_n -> target_(n + shift)."""

    source: GradedNComplex
    target: GradedNComplex
    shift: int
    matrices: dict = field(hash=False)

    def __post_init__(self):
        if self.source.order != self.target.order:
            raise StructuralError("source and target have different N")
        for n, mat in self.matrices.items():
            want = (self.target.rank(n + self.shift), self.source.rank(n))
            if mat.shape != want:
                raise StructuralError(f"morphism at degree {n} has shape {mat.shape}, expected {want}")

    @property
    def order(self) -> int:
        return self.source.order

    def at(self, n: int) -> Matrix:
        mat = self.matrices.get(n)
        if mat is None:
            return Matrix.zeros(self.order, self.target.rank(n + self.shift), self.source.rank(n))
        return mat

    def __add__(self, other: "GradedMorphism") -> "GradedMorphism":
        _same_frame(self, other)
        return GradedMorphism(self.source, self.target, self.shift,
                              {n: self.at(n) + other.at(n) for n in self.source.degrees()})

    def __sub__(self, other: "GradedMorphism") -> "GradedMorphism":
        _same_frame(self, other)
        return GradedMorphism(self.source, self.target, self.shift,
                              {n: self.at(n) - other.at(n) for n in self.source.degrees()})

    def scale(self, c) -> "GradedMorphism":
        return GradedMorphism(self.source, self.target, self.shift,
                              {n: self.at(n).scale(c) for n in self.source.degrees()})

    def is_zero(self) -> bool:
        return all(self.at(n).is_zero() for n in self.source.degrees())

    def __eq__(self, other):
        if not isinstance(other, GradedMorphism):
            return NotImplemented
        return (self.source is other.source or self.source == other.source) and self.shift == other.shift and all(
            self.at(n) == other.at(n) for n in self.source.degrees()
        )

    __hash__ = object.__hash__


def _same_frame(f: GradedMorphism, g: GradedMorphism):
    if f.shift != g.shift or f.source.ranks != g.source.ranks or f.target.ranks != g.target.ranks:
        raise StructuralError("morphisms do not share source, target and shift")


def identity_morphism(c: GradedNComplex) -> GradedMorphism:
    return GradedMorphism(c, c, 0, {n: Matrix.identity(c.order, c.rank(n)) for n in c.degrees()})


def zero_morphism(source: GradedNComplex, target: GradedNComplex, shift: int = 0) -> GradedMorphism:
    return GradedMorphism(source, target, shift, {})


def compose(g: GradedMorphism, f: GradedMorphism) -> GradedMorphism:
    """g after f."""
    mats = {n: g.at(n + f.shift) @ f.at(n) for n in f.source.degrees()}
    return GradedMorphism(f.source, g.target, f.shift + g.shift, mats)


def check_chain_map(f: GradedMorphism) -> bool:
    if f.shift != 0:
        raise ValueError("chain-map check needs a degree-0 morphism")
    src, tgt = f.source, f.target
    for n in range(src.lo, src.hi + 2):
        if not src.rank(n) and not src.rank(n - 1):
            continue
        if f.at(n - 1) @ src.border(n) != tgt.border(n) @ f.at(n):
            return False
    return True


def induced_homology_map(f: GradedMorphism, m: int) -> dict:
    """Matrix of H_{m,n}(source) -> H_{m,n}(target) in the bases of :func:`homology_space`."""
    if not check_chain_map(f):
        raise ValueError("induced map requested for a morphism that does not commute with the borders")
    out = {}
    for n in f.source.degrees():
        hs = homology_space(f.source, m, n)
        ht = homology_space(f.target, m, n)
        cols = [ht.coordinates(f.at(n).apply(z)) for z in hs.classes]
        out[n] = Matrix.from_columns(f.order, cols, ht.dim)
    return out


def hom_differential(f: GradedMorphism) -> GradedMorphism:
    """D(f) = sum_i q^(i (deg f + 1)) delta^i f border^(N-i-1); shifts degree by deg f - (N - 1)."""
    src, tgt = f.source, f.target
    n_ord = f.order
    d = f.shift
    out_shift = d - (n_ord - 1)
    mats = {}
    for n in src.degrees():
        acc = Matrix.zeros(n_ord, tgt.rank(n + out_shift), src.rank(n))
        for i in range(n_ord):
            j = n_ord - i - 1
            inner = f.at(n - j) @ src.border_power(j, n)
            term = tgt.border_power(i, n - j + d) @ inner
            acc = acc + term.scale(q_power(n_ord, i * (d + 1)))
        mats[n] = acc
    return GradedMorphism(src, tgt, out_shift, mats)


@dataclass(frozen=True)
class HomotopyWitness:
    maps: tuple  # K_0 .. K_(N-1), each of shift N - 1

    def __post_init__(self):
        if not self.maps:
            raise StructuralError("empty homotopy witness")
        n_ord = self.maps[0].order
        if len(self.maps) != n_ord:
            raise StructuralError(f"need N = {n_ord} maps, got {len(self.maps)}")
        for k in self.maps:
            if k.shift != n_ord - 1:
                raise StructuralError(f"homotopy components must raise degree by N-1, got {k.shift}")

    @classmethod
    def constant(cls, k: GradedMorphism) -> "HomotopyWitness":
        return cls(tuple([k] * k.order))


def homotopy_sum(witness: HomotopyWitness) -> GradedMorphism:
    """sum_m (border')^m K_m border^(N-m-1), a degree-0 family."""
    ks = witness.maps
    src, tgt = ks[0].source, ks[0].target
    n_ord = src.order
    mats = {}
    for n in src.degrees():
        acc = Matrix.zeros(n_ord, tgt.rank(n), src.rank(n))
        for m, k in enumerate(ks):
            j = n_ord - m - 1
            acc = acc + tgt.border_power(m, n - j + n_ord - 1) @ (k.at(n - j) @ src.border_power(j, n))
        mats[n] = acc
    return GradedMorphism(src, tgt, 0, mats)


def check_homotopy(witness: HomotopyWitness, f: GradedMorphism, g: GradedMorphism) -> bool:
    _same_frame(f, g)
    k0 = witness.maps[0]
    if k0.source.ranks != f.source.ranks or k0.target.ranks != f.target.ranks:
        raise StructuralError("witness does not match the morphisms' source and target")
    return homotopy_sum(witness) == (f - g)


# ---------------------------------------------------------------------------
# JSON


def complex_to_json(c: GradedNComplex) -> dict:
    return {
        "N": c.order,
        "lo": c.lo,
        "hi": c.hi,
        "ranks": list(c.ranks),
        "borders": {str(d): mat.to_strings() for d, mat in sorted(c.borders.items())},
        "truncated": c.truncated,
    }


def complex_from_json(data: dict) -> GradedNComplex:
    try:
        order = int(data["N"])
        lo, hi = int(data["lo"]), int(data["hi"])
        ranks = tuple(int(r) for r in data["ranks"])
        raw = data.get("borders", {})
    except (KeyError, TypeError) as exc:
        raise StructuralError(f"malformed complex JSON: {exc}") from None
    if not is_prime(order):
        raise StructuralError(f"N must be prime, got {order}")
    borders = {}
    for key, rows in raw.items():
        d = int(key)
        nrows = ranks[d - 1 - lo] if lo <= d - 1 <= hi else 0
        ncols = ranks[d - lo] if lo <= d <= hi else 0
        if len(rows) != nrows:
            raise StructuralError(f"border at degree {d} has {len(rows)} rows, expected {nrows}")
        borders[d] = Matrix.from_rows(order, [[parse_coeffs(x, order) for x in r] for r in rows], ncols=ncols)
    return GradedNComplex(order, lo, hi, ranks, borders, truncated=bool(data.get("truncated", False)))


def scalar_entry(order: int, x) -> CyclotomicRational:
    return CyclotomicRational.from_any(x, order)


__all__ = [
    "StructuralError",
    "GradedNComplex",
    "GradedMorphism",
    "HomotopyWitness",
    "HomologySpace",
    "AmplitudeHomologyReport",
    "validate_ncomplex",
    "border_power",
    "amplitude_homology",
    "homology_report",
    "homology_space",
    "build_point_complex",
    "build_scalar_complex",
    "zero_complex",
    "identity_morphism",
    "zero_morphism",
    "compose",
    "check_chain_map",
    "induced_homology_map",
    "hom_differential",
    "homotopy_sum",
    "check_homotopy",
    "complex_to_json",
    "complex_from_json",
]
