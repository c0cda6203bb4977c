"""
Exact arithmetic in Z[q] and Q(q), q a primitive N-th root of unity, N prime.

Elements are stored as coefficient tuples over the basis 1, q, ..., q^(N-2) of
Z[x]/(1 + x + ... + x^(N-1)).  Whenever a product produces a q^(N-1) term it is
rewritten as -(1 + q + ... + q^(N-2)), so every stored tuple is canonical and
two elements are equal iff their tuples are.

>>> q = CyclotomicInt.gen(3)
>>> q * q
CyclotomicInt(3, [-1, -1])
>>> qbasic(5, 5).is_zero()
True
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

__all__ = [
    "is_prime",
    "CyclotomicInt",
    "CyclotomicRational",
    "Cyclotomic",
    "QNumberTable",
    "q_power",
    "qbasic",
    "qfactorial",
    "qfactorial_extended",
    "qbinomial",
    "qbinomial_by_quotient",
    "invert_qbasic",
    "permutation_sum",
    "inversions",
    "parse_coeffs",
    "MAX_PERMUTATION_N",
]

MAX_PERMUTATION_N = 8


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@functools.lru_cache(maxsize=None)
def _check_order(order: int) -> int:
    if not isinstance(order, int) or not is_prime(order):
        raise ValueError(f"cyclotomic order must be a prime integer, got {order!r}")
    return order


def _reduce(order: int, full) -> tuple:
    """Fold a length-N coefficient list (exponents mod N) onto the canonical basis."""
    top = full[order - 1]
    if top:
        return tuple(full[i] - top for i in range(order - 1))
    return tuple(full[: order - 1])


class _CyclotomicBase:
    __slots__ = ("order", "coeffs")

    _coerce_coeff = staticmethod(int)

    def __init__(self, order: int, coeffs=()):
        order = _check_order(order)
        coeffs = list(coeffs)
        if len(coeffs) > order - 1:
            # exponents beyond N-2 are taken mod N and folded
            full = [0] * order
            for i, c in enumerate(coeffs):
                full[i % order] += c
            coeffs = list(_reduce(order, full))
        else:
            coeffs += [0] * (order - 1 - len(coeffs))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(self._coerce_coeff(c) for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("cyclotomic elements are immutable")

    @classmethod
    def _raw(cls, order: int, coeffs: tuple):
        obj = object.__new__(cls)
        object.__setattr__(obj, "order", order)
        object.__setattr__(obj, "coeffs", coeffs)
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, order: int):
        order = _check_order(order)
        return cls._raw(order, (cls._coerce_coeff(0),) * (order - 1))

    @classmethod
    def one(cls, order: int):
        return cls.scalar(order, 1)

    @classmethod
    def scalar(cls, order: int, value):
        order = _check_order(order)
        zero = cls._coerce_coeff(0)
        return cls._raw(order, (cls._coerce_coeff(value),) + (zero,) * (order - 2))

    @classmethod
    def gen(cls, order: int):
        """The root of unity q itself."""
        order = _check_order(order)
        return cls(order, [0, 1])

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])

    def is_integral(self) -> bool:
        return all(Fraction(c).denominator == 1 for c in self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    # -- coercion -----------------------------------------------------------

    def _other(self, other):
        if isinstance(other, _CyclotomicBase):
            if other.order != self.order:
                raise ValueError(f"order mismatch: {self.order} vs {other.order}")
            return other
        if isinstance(other, (int, Fraction)):
            cls = CyclotomicInt if isinstance(other, int) else CyclotomicRational
            return cls.scalar(self.order, other)
        return NotImplemented

    @staticmethod
    def _result_type(a, b):
        if isinstance(a, CyclotomicInt) and isinstance(b, CyclotomicInt):
            return CyclotomicInt
        return CyclotomicRational

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        cls = self._result_type(self, other)
        return cls._raw(self.order, tuple(cls._coerce_coeff(a + b) for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return type(self)._raw(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        n = self.order
        cls = self._result_type(self, other)
        a, b = self.coeffs, other.coeffs
        full = [0] * n
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        full[(i + j) % n] += x * y
        return cls._raw(n, tuple(cls._coerce_coeff(c) for c in _reduce(n, full)))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = type(self).one(self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conjugate(self, a: int):
        """Galois action q -> q^a for a coprime to N."""
        n = self.order
        if a % n == 0:
            raise ValueError("Galois exponent must be coprime to the order")
        full = [0] * n
        for i, c in enumerate(self.coeffs):
            full[(i * a) % n] += c
        return type(self)._raw(n, tuple(type(self)._coerce_coeff(c) for c in _reduce(n, full)))

    def norm(self) -> Fraction:
        """Product of all Galois conjugates; a rational number."""
        prod = self
        for a in range(2, self.order):
            prod = prod * self.conjugate(a)
        c = prod.coeffs
        assert not any(c[1:]), "norm must be rational"
        return Fraction(c[0])

    def inverse(self) -> "CyclotomicRational":
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse in Q(q)")
        others = CyclotomicRational.one(self.order)
        for a in range(2, self.order):
            others = others * self.conjugate(a)
        nrm = (self * others).coeffs[0]
        return CyclotomicRational._raw(self.order, tuple(Fraction(c) / nrm for c in others.coeffs))

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def unit_inverse(self) -> "CyclotomicInt":
        """Inverse inside Z[q]; raises if self is not a unit there."""
        inv = self.inverse()
        if not inv.is_integral():
            raise ValueError(f"{self} is not a unit in Z[q]")
        return CyclotomicInt(self.order, inv.coeffs)

    # -- comparison / hashing -------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CyclotomicRational.scalar(self.order, other)
        if not isinstance(other, _CyclotomicBase):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    # -- rendering ------------------------------------------------------------

    def to_list(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    def __str__(self):
        return "[" + ", ".join(str(c) for c in self.coeffs) + "]"

    def __repr__(self):
        return f"{type(self).__name__}({self.order}, {self})"

    def pretty(self, var: str = "q") -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


class CyclotomicInt(_CyclotomicBase):
    """Element of Z[q]."""

    __slots__ = ()

    @staticmethod
    def _coerce_coeff(c):
        if isinstance(c, int):
            return c
        f = Fraction(c)
        if f.denominator != 1:
            raise ValueError(f"non-integral coefficient {c!r} for CyclotomicInt")
        return f.numerator


class CyclotomicRational(_CyclotomicBase):
    """Element of the fraction field Q(q)."""

    __slots__ = ()

    _coerce_coeff = staticmethod(Fraction)

    @classmethod
    def from_any(cls, x, order: int | None = None) -> "CyclotomicRational":
        if isinstance(x, _CyclotomicBase):
            return cls._raw(x.order, tuple(Fraction(c) for c in x.coeffs))
        if order is None:
            raise ValueError("order required to embed a plain number")
        return cls.scalar(order, x)


Cyclotomic = Union[CyclotomicInt, CyclotomicRational]


def parse_coeffs(text: str, order: int) -> Cyclotomic:
    """Parse the canonical rendering, e.g. ``"[1, -1/2]"``.

    Integral input yields a CyclotomicInt, anything else a CyclotomicRational.
    """
    if isinstance(text, (list, tuple)):
        items = [str(t) for t in text]
    else:
        s = text.strip()
        if not (s.startswith("[") and s.endswith("]")):
            raise ValueError(f"coefficient list must be bracketed: {text!r}")
        body = s[1:-1].strip()
        # entries may be quoted, as in '["1/2", "0"]'
        items = [t.strip().strip("\"'") for t in body.split(",")] if body else []
    if len(items) > order - 1:
        raise ValueError(f"expected at most {order - 1} coefficients for N={order}, got {len(items)}")
    values = [Fraction(t) for t in items]
    if all(v.denominator == 1 for v in values):
        return CyclotomicInt(order, [int(v) for v in values])
    return CyclotomicRational(order, values)


# ---------------------------------------------------------------------------
# q-numbers


@functools.lru_cache(maxsize=None)
def q_power(order: int, e: int) -> CyclotomicInt:
    order = _check_order(order)
    e %= order
    full = [0] * order
    full[e] = 1
    return CyclotomicInt._raw(order, _reduce(order, full))


@functools.lru_cache(maxsize=None)
def qbasic(order: int, k: int) -> CyclotomicInt:
    """[k]_q = 1 + q + ... + q^(k-1); [0]_q = 0."""
    order = _check_order(order)
    if k < 0:
        raise ValueError("k must be nonnegative")
    full = [0] * order
    for i in range(k):
        full[i % order] += 1
    return CyclotomicInt._raw(order, _reduce(order, full))


@functools.lru_cache(maxsize=None)
def qfactorial(order: int, k: int) -> CyclotomicInt:
    order = _check_order(order)
    if not 0 <= k <= order - 1:
        raise ValueError(f"q-factorial defined for 0 <= k <= N-1, got k={k}, N={order}")
    result = CyclotomicInt.one(order)
    for j in range(1, k + 1):
        result = result * qbasic(order, j)
    return result


@functools.lru_cache(maxsize=None)
def qbinomial(order: int, k: int, l: int) -> CyclotomicInt:
    """Gaussian binomial via the q-Pascal rule [k, l] = [k-1, l-1] + q^l [k-1, l]."""
    order = _check_order(order)
    if not 0 <= l <= k <= order - 1:
        raise ValueError(f"q-binomial needs 0 <= l <= k <= N-1, got k={k}, l={l}, N={order}")
    if l == 0 or l == k:
        return CyclotomicInt.one(order)
    return qbinomial(order, k - 1, l - 1) + q_power(order, l) * qbinomial(order, k - 1, l)


@functools.lru_cache(maxsize=None)
def qfactorial_extended(order: int, k: int) -> CyclotomicInt:
    """[1]_q ... [k]_q for any k >= 0; zero once k >= N."""
    order = _check_order(order)
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k >= order:
        return CyclotomicInt.zero(order)
    return qfactorial(order, k)


def qbinomial_by_quotient(order: int, k: int, l: int) -> CyclotomicRational:
    """[k]! / ([l]! [k-l]!) computed in Q(q); reference for the Pascal route."""
    return qfactorial(order, k) / (qfactorial(order, l) * qfactorial(order, k - l))


def invert_qbasic(order: int, n: int) -> CyclotomicInt:
    """Inverse of [n]_q in Z[q], namely [a]_{q^n} with a*n + b*N = 1."""
    order = _check_order(order)
    if n % order == 0:
        raise ValueError(f"[{n}]_q is zero for N={order}; not a unit")
    a = pow(n, -1, order)
    # [a]_{q^n} = 1 + q^n + ... + q^(n(a-1))
    full = [0] * order
    for j in range(a):
        full[(n * j) % order] += 1
    return CyclotomicInt._raw(order, _reduce(order, full))


def inversions(perm) -> int:
    return sum(1 for i, j in itertools.combinations(range(len(perm)), 2) if perm[i] > perm[j])


def permutation_sum(order: int, n: int) -> CyclotomicInt:
    """Sum over S_n of q^inv(sigma), by brute-force enumeration."""
    order = _check_order(order)
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > MAX_PERMUTATION_N:
        raise ValueError(f"enumeration of S_{n} refused; limit is n <= {MAX_PERMUTATION_N}")
    full = [0] * order
    for perm in itertools.permutations(range(n)):
        full[inversions(perm) % order] += 1
    return CyclotomicInt._raw(order, _reduce(order, full))


@dataclass(frozen=True)
class QNumberTable:
    order: int
    basics: tuple
    factorials: tuple
    binomials: tuple

    @classmethod
    def build(cls, order: int) -> "QNumberTable":
        order = _check_order(order)
        return cls(
            order=order,
            basics=tuple(qbasic(order, k) for k in range(order + 1)),
            factorials=tuple(qfactorial(order, k) for k in range(order)),
            binomials=tuple(
                tuple(qbinomial(order, k, l) for l in range(k + 1)) for k in range(order)
            ),
        )
