"""
Singular q-chains realised on affine simplices with rational vertices.

An affine simplex is its ordered vertex tuple.  For affine tau and sigma the
convex product evaluates at (alpha; beta) to sum alpha_i x_i + sum beta_j y_j,
because |alpha| tau(alpha/|alpha|) = sum alpha_i x_i; so tau * sigma is again
affine, on the concatenated vertex tuple.  Everything below is therefore exact
rational bookkeeping with coefficients in Z[q] or Q(q).

Degenerate simplices (repeated vertices, constant maps) are ordinary basis
elements keyed by their vertex tuple; nothing is ever identified or dropped.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import (
    CyclotomicInt,
    CyclotomicRational,
    parse_coeffs,
    q_power,
    qbasic,
    qbinomial,
    qfactorial,
    qfactorial_extended,
)
from .linalg import Matrix
from .ncomplex import GradedMorphism, GradedNComplex, build_scalar_complex


class Point(tuple):
    """Rational point; a tuple of Fractions whose hash is computed once."""

    def __new__(cls, coords):
        if isinstance(coords, Point):
            return coords
        obj = super().__new__(cls, (Fraction(c) for c in coords))
        obj._h = tuple.__hash__(obj)
        return obj

    def __hash__(self):
        return self._h

    def __repr__(self):
        return "(" + ", ".join(str(c) for c in self) + ")"


class AffineSimplex(tuple):
    """Ordered tuple of vertices (Points)."""

    __slots__ = ()

    def __new__(cls, vertices):
        verts = tuple(Point(v) for v in vertices)
        if not verts:
            raise ValueError("a simplex needs at least one vertex")
        d = len(verts[0])
        if any(len(v) != d for v in verts):
            raise ValueError("vertices must share one ambient dimension")
        return super().__new__(cls, verts)

    @classmethod
    def _raw(cls, verts: tuple) -> "AffineSimplex":
        return tuple.__new__(cls, verts)

    @property
    def vertices(self) -> tuple:
        return tuple(self)

    @property
    def degree(self) -> int:
        return len(self) - 1

    @property
    def ambient(self) -> int:
        return len(self[0])

    def __repr__(self):
        return "<" + ", ".join(repr(v) for v in self) + ">"


def face(s: AffineSimplex, j: int) -> AffineSimplex:
    """Drop vertex j."""
    n = s.degree
    if n < 1 or not 0 <= j <= n:
        raise IndexError(f"face index {j} out of range for a {n}-simplex")
    return AffineSimplex._raw(s[:j] + s[j + 1:])


def constant_simplex(point, n: int) -> AffineSimplex:
    p = Point(point)
    return AffineSimplex._raw((p,) * (n + 1))


# ---------------------------------------------------------------------------
# chains


class AffineChain:
    """Formal Z[q]- (or Q(q)-) combination of affine n-simplices in R^d."""

    __slots__ = ("degree", "ambient", "order", "terms")

    def __init__(self, degree: int, ambient: int, order: int, terms=None):
        self.degree = degree
        self.ambient = ambient
        self.order = order
        clean = {}
        for s, a in (terms or {}).items():
            if not isinstance(s, AffineSimplex):
                s = AffineSimplex(s)
            if s.degree != degree or s.ambient != ambient:
                raise ValueError(f"simplex {s!r} does not fit a degree-{degree} chain in R^{ambient}")
            if isinstance(a, int):
                a = CyclotomicInt.scalar(order, a)
            if not a.is_zero():
                clean[s] = a
        self.terms = clean

    @classmethod
    def _raw(cls, degree, ambient, order, terms):
        obj = object.__new__(cls)
        obj.degree, obj.ambient, obj.order, obj.terms = degree, ambient, order, terms
        return obj

    @classmethod
    def of(cls, s: AffineSimplex, order: int, coeff=None) -> "AffineChain":
        a = CyclotomicInt.one(order) if coeff is None else coeff
        return cls(s.degree, s.ambient, order, {s: a})

    @classmethod
    def zero(cls, degree: int, ambient: int, order: int) -> "AffineChain":
        return cls._raw(degree, ambient, order, {})

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def coefficient_sum(self):
        total = CyclotomicInt.zero(self.order)
        for a in self.terms.values():
            total = total + a
        return total

    def _check(self, other: "AffineChain"):
        if other.order != self.order or other.ambient != self.ambient:
            raise ValueError("chains live over different N or ambient spaces")
        if other.degree != self.degree and self.terms and other.terms:
            raise ValueError(f"cannot add degree {self.degree} to degree {other.degree}")

    def __add__(self, other: "AffineChain") -> "AffineChain":
        self._check(other)
        out = dict(self.terms)
        for s, a in other.terms.items():
            if s in out:
                b = out[s] + a
                if b.is_zero():
                    del out[s]
                else:
                    out[s] = b
            else:
                out[s] = a
        degree = self.degree if self.terms or not other.terms else other.degree
        return AffineChain._raw(degree, self.ambient, self.order, out)

    def __neg__(self):
        return AffineChain._raw(self.degree, self.ambient, self.order, {s: -a for s, a in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "AffineChain":
        if isinstance(c, int):
            c = CyclotomicInt.scalar(self.order, c)
        if c.is_zero():
            return AffineChain.zero(self.degree, self.ambient, self.order)
        return AffineChain._raw(self.degree, self.ambient, self.order, {s: c * a for s, a in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, AffineChain):
            return NotImplemented
        if not self.terms and not other.terms:
            return True
        return self.degree == other.degree and self.terms == other.terms

    __hash__ = None

    def __repr__(self):
        if not self.terms:
            return f"AffineChain(0, degree={self.degree})"
        parts = [f"{a}*{s!r}" for s, a in self.terms.items()]
        return "AffineChain(" + " + ".join(parts) + ")"


def _accumulate(out: dict, s, a):
    if s in out:
        b = out[s] + a
        if b.is_zero():
            del out[s]
        else:
            out[s] = b
    else:
        out[s] = a


def affine_border(c: AffineChain, order: int | None = None) -> AffineChain:
    """sum_i q^i face_i, extended linearly; zero on 0-chains."""
    order = order or c.order
    if c.degree < 1:
        return AffineChain.zero(c.degree - 1, c.ambient, order)
    n = c.degree
    powers = [q_power(order, i) for i in range(n + 1)]
    out = {}
    for s, a in c.terms.items():
        for i in range(n + 1):
            _accumulate(out, AffineSimplex._raw(s[:i] + s[i + 1:]), powers[i] * a)
    return AffineChain._raw(n - 1, c.ambient, order, out)


def border_power(c: AffineChain, k: int, order: int | None = None) -> AffineChain:
    for _ in range(k):
        c = affine_border(c, order)
    return c


def convex_product(tau: AffineChain, sigma: AffineChain) -> AffineChain:
    """Bilinear extension of <x_0..x_m> * <y_0..y_n> = <x_0..x_m, y_0..y_n>."""
    if tau.ambient != sigma.ambient:
        raise ValueError(f"ambient mismatch: R^{tau.ambient} vs R^{sigma.ambient}")
    if tau.order != sigma.order:
        raise ValueError("order mismatch")
    out = {}
    for s, a in tau.terms.items():
        for t, b in sigma.terms.items():
            _accumulate(out, AffineSimplex._raw(s + t), a * b)
    return AffineChain._raw(tau.degree + sigma.degree + 1, tau.ambient, tau.order, out)


def as_chain(x, order: int) -> AffineChain:
    if isinstance(x, AffineChain):
        return x
    return AffineChain.of(x, order)


def leibnitz_check(tau, sigma, order: int) -> bool:
    """border(tau * sigma) == border(tau) * sigma + q^(m+1) tau * border(sigma), for m, n > 0."""
    tau, sigma = as_chain(tau, order), as_chain(sigma, order)
    if tau.degree * sigma.degree <= 0:
        raise ValueError("Leibnitz rule needs both degrees positive (m*n > 0)")
    lhs = affine_border(convex_product(tau, sigma), order)
    rhs = convex_product(affine_border(tau, order), sigma) + convex_product(
        tau, affine_border(sigma, order)
    ).scale(q_power(order, tau.degree + 1))
    return lhs == rhs


def cone_border_check(point, sigma, order: int) -> bool:
    """border(<P> * sigma) == sigma + q <P> * border(sigma); for a 0-chain sigma the last term is q<P>."""
    p = as_chain(point, order)
    sigma = as_chain(sigma, order)
    if p.degree != 0:
        raise ValueError("cone vertex must be a 0-chain")
    lhs = affine_border(convex_product(p, sigma), order)
    if sigma.degree == 0:
        rhs = sigma.scale(p.coefficient_sum()) + p.scale(sigma.coefficient_sum() * q_power(order, 1))
    else:
        rhs = sigma.scale(p.coefficient_sum()) + convex_product(p, affine_border(sigma, order)).scale(q_power(order, 1))
    return lhs == rhs


# ---------------------------------------------------------------------------
# Newton's terms
#
# An operand is an AffineChain, a bare cyclotomic scalar, or None (zero).


def newton_term(tau, i: int, order: int):
    """border^i(tau) for i <= m, the scalar [m+1]_q! (times the coefficient sum) at i = m+1, else None."""
    tau = as_chain(tau, order)
    m = tau.degree
    if i < 0:
        raise ValueError("Newton term index must be nonnegative")
    if i <= m:
        return border_power(tau, i, order)
    if i == m + 1:
        return qfactorial_extended(order, m + 1) * tau.coefficient_sum()
    return None


def newton_star(a, b, degree: int, ambient: int, order: int) -> AffineChain:
    """Product of two operands, returned as a chain of the given degree."""
    if a is None or b is None:
        return AffineChain.zero(degree, ambient, order)
    a_chain, b_chain = isinstance(a, AffineChain), isinstance(b, AffineChain)
    if a_chain and b_chain:
        return convex_product(a, b)
    if a_chain:
        return a.scale(b)
    if b_chain:
        return b.scale(a)
    return AffineChain.zero(degree, ambient, order)


def newton_polynomial_rhs(tau, sigma, k: int, order: int) -> AffineChain:
    tau, sigma = as_chain(tau, order), as_chain(sigma, order)
    m, n = tau.degree, sigma.degree
    degree = m + n + 1 - k
    total = AffineChain.zero(degree, tau.ambient, order)
    for i in range(k + 1):
        if k >= order:
            weight = _qbinomial_unbounded(order, k, i)
        else:
            weight = qbinomial(order, k, i)
        if weight.is_zero():
            continue
        weight = q_power(order, i * (m + 1 - k + i)) * weight
        term = newton_star(newton_term(tau, k - i, order), newton_term(sigma, i, order), degree, tau.ambient, order)
        if not term.is_zero():
            total = total + term.scale(weight)
    return total


def _qbinomial_unbounded(order: int, k: int, i: int):
    # q-Pascal rule carried past N-1; used only when k >= N in Newton expansions
    row = [CyclotomicInt.one(order)]
    for r in range(1, k + 1):
        new = [CyclotomicInt.one(order)]
        for j in range(1, r):
            new.append(row[j - 1] + q_power(order, j) * row[j])
        new.append(CyclotomicInt.one(order))
        row = new
    return row[i]


def newton_polynomial_check(tau, sigma, k: int, order: int):
    """(equal?, lhs, rhs) for border^k(tau * sigma) against the Newton expansion."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    tau, sigma = as_chain(tau, order), as_chain(sigma, order)
    lhs = border_power(convex_product(tau, sigma), k, order)
    rhs = newton_polynomial_rhs(tau, sigma, k, order)
    return lhs == rhs, lhs, rhs


# ---------------------------------------------------------------------------
# tail formulas


def _single(x, order: int) -> AffineSimplex:
    if isinstance(x, AffineSimplex):
        return x
    if isinstance(x, AffineChain) and len(x) == 1:
        (s, a), = x.terms.items()
        if a.is_one():
            return s
    raise ValueError("tail formula #1 is stated for a single simplex")


def tail1_check(tau, order: int) -> bool:
    """border^m(tau) == [m]_q! * sum_j q^j <T_(m-j)> for an m-simplex tau."""
    s = _single(tau, order)
    m = s.degree
    lhs = border_power(AffineChain.of(s, order), m, order)
    rhs = AffineChain.zero(0, s.ambient, order)
    for j in range(m + 1):
        rhs = rhs + AffineChain.of(AffineSimplex._raw((s[m - j],)), order, q_power(order, j))
    return lhs == rhs.scale(qfactorial_extended(order, m))


def tail2_check(tau, sigma, order: int) -> bool:
    """border(border^m tau * border^n sigma) == [m+1]! border^n sigma + q [n+1]! border^m tau.

    For chains the factorials pick up the coefficient sums of tau and sigma, the
    linear extension of the single-simplex statement.
    """
    tau, sigma = as_chain(tau, order), as_chain(sigma, order)
    m, n = tau.degree, sigma.degree
    dt, ds = border_power(tau, m, order), border_power(sigma, n, order)
    lhs = affine_border(convex_product(dt, ds), order)
    rhs = ds.scale(qfactorial_extended(order, m + 1) * tau.coefficient_sum()) + dt.scale(
        q_power(order, 1) * qfactorial_extended(order, n + 1) * sigma.coefficient_sum()
    )
    return lhs == rhs


def tail3_rhs(tau, sigma, k: int, order: int) -> AffineChain:
    tau, sigma = as_chain(tau, order), as_chain(sigma, order)
    m, n = tau.degree, sigma.degree
    dt = border_power(tau, m, order)
    et, es = tau.coefficient_sum(), sigma.coefficient_sum()
    fm1 = qfactorial_extended(order, m + 1) * et
    degree = n + 1 - k
    if k == 0:
        return convex_product(dt, sigma)
    if 1 <= k <= n:
        return border_power(sigma, k - 1, order).scale(fm1 * qbasic(order, k)) + convex_product(
            dt, border_power(sigma, k, order)
        ).scale(q_power(order, k))
    if k == n + 1:
        return border_power(sigma, n, order).scale(fm1 * qbasic(order, n + 1)) + dt.scale(
            qfactorial_extended(order, n + 1) * es * q_power(order, n + 1)
        )
    return AffineChain.zero(degree, tau.ambient, order)


def tail3_check(tau, sigma, k: int, order: int) -> bool:
    """Three-branch formula for border^k(border^m tau * sigma), m*n > 0."""
    tau, sigma = as_chain(tau, order), as_chain(sigma, order)
    if tau.degree * sigma.degree <= 0:
        raise ValueError("tail formula #3 needs both degrees positive (m*n > 0)")
    if k < 0:
        raise ValueError("k must be nonnegative")
    lhs = border_power(convex_product(border_power(tau, tau.degree, order), sigma), k, order)
    return lhs == tail3_rhs(tau, sigma, k, order)


# ---------------------------------------------------------------------------
# augmentation, index map, section


def augmentation_eps(c: AffineChain):
    """Coefficient sum of a 0-chain."""
    if c.degree != 0 and not c.is_zero():
        raise ValueError(f"augmentation is defined on 0-chains, got degree {c.degree}")
    return c.coefficient_sum()


def index_map_eta(c: AffineChain, order: int | None = None):
    """Coefficient sum in degrees 0..N-2, zero from N-1 on."""
    order = order or c.order
    if 0 <= c.degree <= order - 2:
        return c.coefficient_sum()
    return CyclotomicInt.zero(order)


def index_map_morphism(source: GradedNComplex) -> GradedMorphism:
    """Index map from a cell complex (any chain complex with a cell basis) to the scalar complex."""
    order = source.order
    target = build_scalar_complex(order)
    mats = {}
    for n in source.degrees():
        r = source.rank(n)
        if 0 <= n <= order - 2:
            mats[n] = Matrix.from_rows(order, [[1] * r], ncols=r)
    return GradedMorphism(source, target, 0, mats)


def section_phat(order: int, basepoint) -> list[AffineSimplex]:
    """nu_n = constant n-simplex at the basepoint, 0 <= n <= N-2."""
    return [constant_simplex(basepoint, n) for n in range(order - 1)]


def phat(value, degree: int, order: int, basepoint) -> AffineChain:
    """Image of ``value`` in degree ``degree`` of the scalar complex."""
    d = len(basepoint)
    if not 0 <= degree <= order - 2:
        return AffineChain.zero(degree, d, order)
    return AffineChain.of(constant_simplex(basepoint, degree), order, value)


def phat_eta(c: AffineChain, basepoint) -> AffineChain:
    return phat(index_map_eta(c), c.degree, c.order, basepoint)


# ---------------------------------------------------------------------------
# homotopy operator


def default_iota(order: int, basepoint) -> AffineSimplex:
    return constant_simplex(basepoint, order - 2)


def inverse_factorial(order: int) -> CyclotomicInt:
    """1 / [N-1]_q! as an element of Z[q] (a unit there since N is prime)."""
    return qfactorial(order, order - 1).unit_inverse()


def homotopy_K(sigma, iota: AffineSimplex, order: int) -> AffineChain:
    """(1/[N-1]_q!) (iota * sigma); raises degree by N-1."""
    sigma = as_chain(sigma, order)
    if iota.degree != order - 2:
        raise ValueError(f"iota must be an (N-2)-simplex, got degree {iota.degree}")
    if iota.ambient != sigma.ambient:
        raise ValueError("iota and sigma live in different ambient spaces")
    return convex_product(AffineChain.of(iota, order), sigma).scale(inverse_factorial(order))


def homotopy_sum(sigma, iota: AffineSimplex, order: int) -> AffineChain:
    """sum_(k=0)^(N-1) border^k K border^(N-k-1)(sigma), evaluated term by term."""
    sigma = as_chain(sigma, order)
    total = AffineChain.zero(sigma.degree, sigma.ambient, order)
    lower = sigma
    downs = [sigma]
    for _ in range(order - 1):
        lower = affine_border(lower, order)
        downs.append(lower)
    for k in range(order):
        inner = downs[order - k - 1]
        if inner.is_zero():
            continue
        total = total + border_power(homotopy_K(inner, iota, order), k, order)
    return total


def homotopy_identity_check(sigma, iota: AffineSimplex, order: int):
    """(holds?, computed sum): the sum should be sigma in degrees >= N-1 and 0 below."""
    sigma = as_chain(sigma, order)
    total = homotopy_sum(sigma, iota, order)
    if sigma.degree >= order - 1:
        expected = sigma
    else:
        expected = AffineChain.zero(sigma.degree, sigma.ambient, order)
    return total == expected, total


def homotopy_residual(sigma, iota: AffineSimplex, order: int, basepoint):
    """Both sides of sum = id - P_hat eta on sigma, and their difference."""
    sigma = as_chain(sigma, order)
    lhs = homotopy_sum(sigma, iota, order)
    rhs = sigma - phat_eta(sigma, basepoint)
    return lhs, rhs, lhs - rhs


# ---------------------------------------------------------------------------
# coefficient table


@dataclass(frozen=True)
class CoefficientTable:
    order: int
    entries: dict  # (k, i) -> q^(i(N-1-k+i)) [k choose i]
    column_sums: tuple  # alpha_l, l = 0..N-1
    betas: dict  # s -> beta_s, s = 1..N-1, from its own defining sum

    def alpha(self, l: int):
        return self.column_sums[l]

    def checks(self) -> dict:
        n = self.order
        one = CyclotomicInt.one(n)
        out = {
            "alpha_l_zero": all(self.column_sums[l].is_zero() for l in range(n - 1)),
            "alpha_top_one": self.column_sums[n - 1] == one,
            "beta_1_zero": self.betas[1].is_zero(),
            "beta_matches_alpha": all(self.betas[s] == self.column_sums[n - 1 - s] for s in range(1, n)),
            "beta_recursion": all(
                self.betas[s + 1] == (one - q_power(n, s)) * self.betas[s] for s in range(1, n - 1)
            ),
        }
        return out

    def ok(self) -> bool:
        return all(self.checks().values())

    def to_json(self) -> dict:
        return {
            "N": self.order,
            "entries": [
                {"k": k, "i": i, "l": k - i, "value": str(v)} for (k, i), v in sorted(self.entries.items())
            ],
            "column_sums": {str(l): str(v) for l, v in enumerate(self.column_sums)},
            "betas": {str(s): str(v) for s, v in sorted(self.betas.items())},
            "checks": self.checks(),
        }

    def render(self) -> str:
        n = self.order
        lines = []
        for k in range(n):
            cells = []
            for i in range(k + 1):
                e = (i * (n - 1 - k + i)) % n
                power = "" if e == 0 else ("q" if e == 1 else f"q^{e}")
                if i in (0, k):
                    binom = ""
                elif i in (1, k - 1):
                    binom = f"[{k}]"
                else:
                    binom = f"[{k} {i}]"
                cell = (power + binom) or "1"
                cells.append(f"l={k - i}: {cell}")
            lines.append(f"k={k}  " + ", ".join(cells))
        lines.append("column sums: " + ", ".join(f"a{l}={v}" for l, v in enumerate(self.column_sums)))
        lines.append("beta: " + ", ".join(f"b{s}={v}" for s, v in sorted(self.betas.items())))
        return "\n".join(lines)


def coefficient_table(order: int) -> CoefficientTable:
    entries = {}
    for k in range(order):
        for i in range(k + 1):
            entries[(k, i)] = q_power(order, i * (order - 1 - k + i)) * qbinomial(order, k, i)
    sums = []
    for l in range(order):
        total = CyclotomicInt.zero(order)
        for (k, i), v in entries.items():
            if k - i == l:
                total = total + v
        sums.append(total)
    betas = {}
    for s in range(1, order):
        total = CyclotomicInt.zero(order)
        for i in range(s + 1):
            total = total + q_power(order, i * s) * qbinomial(order, order - 1 - s + i, order - 1 - s)
        betas[s] = total
    return CoefficientTable(order, entries, tuple(sums), betas)


# ---------------------------------------------------------------------------
# JSON


def chain_from_json(data: dict, order: int) -> AffineChain:
    try:
        d = int(data["d"])
        degree = int(data["degree"])
        terms = {}
        for t in data["terms"]:
            s = AffineSimplex([[Fraction(c) for c in v] for v in t["vertices"]])
            a = parse_coeffs(t["coeff"], order)
            terms[s] = terms[s] + a if s in terms else a
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed affine chain JSON: {exc}") from None
    return AffineChain(degree, d, order, terms)


def chain_to_json(c: AffineChain) -> dict:
    return {
        "d": c.ambient,
        "degree": c.degree,
        "terms": [
            {"coeff": str(a), "vertices": [[str(x) for x in v] for v in s]}
            for s, a in sorted(c.terms.items(), key=lambda kv: kv[0])
        ],
    }


__all__ = [
    "Point",
    "AffineSimplex",
    "AffineChain",
    "CoefficientTable",
    "face",
    "constant_simplex",
    "affine_border",
    "border_power",
    "convex_product",
    "as_chain",
    "leibnitz_check",
    "cone_border_check",
    "newton_term",
    "newton_star",
    "newton_polynomial_rhs",
    "newton_polynomial_check",
    "tail1_check",
    "tail2_check",
    "tail3_rhs",
    "tail3_check",
    "augmentation_eps",
    "index_map_eta",
    "index_map_morphism",
    "section_phat",
    "phat",
    "phat_eta",
    "default_iota",
    "inverse_factorial",
    "homotopy_K",
    "homotopy_sum",
    "homotopy_identity_check",
    "homotopy_residual",
    "coefficient_table",
    "chain_from_json",
    "chain_to_json",
]
