"""Exact arithmetic in the truncated algebra C_k = Q[eps]/(eps^(k+1)).

An element is stored by its coordinate vector (a(0), ..., a(k)) with respect
to the basis (eps^i / i!), so multiplication is the Leibniz rule on
coordinates.  Everything is a Fraction; nothing here ever touches floats.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Iterator, Sequence


class NotInvertible(ArithmeticError):
    """Raised when an inverse is requested of a non-unit."""


def _coerce(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) or isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class CkScalar:
    """Element of C_k, coordinates (a(0), ..., a(k)) over the basis eps^i/i!."""

    __slots__ = ("k", "coords")

    def __init__(self, k: int, coords: Iterable):
        coords = tuple(_coerce(c) for c in coords)
        if k < 0:
            raise ValueError("order k must be >= 0")
        if len(coords) != k + 1:
            raise ValueError(f"order {k} needs {k + 1} coordinates, got {len(coords)}")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("CkScalar is immutable")

    @classmethod
    def zero(cls, k: int) -> "CkScalar":
        return cls(k, (0,) * (k + 1))

    @classmethod
    def one(cls, k: int) -> "CkScalar":
        return cls(k, (1,) + (0,) * k)

    @classmethod
    def eps(cls, k: int) -> "CkScalar":
        if k < 1:
            raise ValueError("eps needs k >= 1")
        return cls(k, (0, 1) + (0,) * (k - 1))

    @classmethod
    def from_rational(cls, k: int, value) -> "CkScalar":
        return cls(k, (_coerce(value),) + (Fraction(0),) * k)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CkScalar)
            and self.k == other.k
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.k, self.coords))

    def __repr__(self):
        return f"CkScalar(k={self.k}, coords={tuple(str(c) for c in self.coords)})"

    def __add__(self, other: "CkScalar") -> "CkScalar":
        _check_order(self, other)
        return CkScalar(self.k, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "CkScalar") -> "CkScalar":
        _check_order(self, other)
        return CkScalar(self.k, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "CkScalar":
        return CkScalar(self.k, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, CkScalar):
            return ck_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "CkScalar":
        c = _coerce(c)
        return CkScalar(self.k, tuple(c * a for a in self.coords))

    def inverse(self) -> "CkScalar":
        return ck_inverse(self)


def _check_order(a: CkScalar, b: CkScalar) -> None:
    if a.k != b.k:
        raise ValueError(f"order mismatch: k={a.k} vs k={b.k}")


def ck_mul(a: CkScalar, b: CkScalar) -> CkScalar:
    """Product in C_k: gamma(i) = sum_j C(i,j) a(j) b(i-j)."""
    _check_order(a, b)
    k = a.k
    coords = tuple(
        sum((comb(i, j) * a.coords[j] * b.coords[i - j] for j in range(i + 1)), Fraction(0))
        for i in range(k + 1)
    )
    return CkScalar(k, coords)


def ck_prod_many(factors: Sequence[CkScalar]) -> CkScalar:
    """Left fold of ck_mul over a non-empty list of uniform order."""
    if not factors:
        raise ValueError("product of an empty list of C_k scalars")
    acc = factors[0]
    for f in factors[1:]:
        acc = ck_mul(acc, f)
    return acc


def ck_inverse(a: CkScalar) -> CkScalar:
    """Inverse in C_k by triangular back-substitution; needs a(0) != 0."""
    if a.coords[0] == 0:
        raise NotInvertible("first coordinate is zero")
    k = a.k
    inv0 = 1 / a.coords[0]
    out = [inv0]
    for i in range(1, k + 1):
        # solve sum_j C(i,j) a(j) x(i-j) = 0 for x(i)
        s = sum((comb(i, j) * a.coords[j] * out[i - j] for j in range(1, i + 1)), Fraction(0))
        out.append(-inv0 * s)
    return CkScalar(k, out)


@dataclass(frozen=True)
class LambdaVector:
    """Weak composition (lambda_1, ..., lambda_n) of the integer `target`."""

    entries: tuple
    target: int

    def __post_init__(self):
        entries = tuple(int(e) for e in self.entries)
        object.__setattr__(self, "entries", entries)
        if any(e < 0 for e in entries):
            raise ValueError("lambda entries must be non-negative")
        if sum(entries) != self.target:
            raise ValueError(f"lambda entries sum to {sum(entries)}, expected {self.target}")

    def __len__(self):
        return len(self.entries)


def compositions(n: int, total: int) -> Iterator[tuple]:
    """All weak compositions of `total` into n parts, lexicographic."""
    if n == 0:
        if total == 0:
            yield ()
        return
    if n == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(n - 1, total - first):
            yield (first,) + rest


def lambda_vectors(n: int, total: int) -> Iterator[LambdaVector]:
    for parts in compositions(n, total):
        yield LambdaVector(parts, total)


def multinomial(total: int, parts: Sequence[int]) -> int:
    """C_total^(parts) = total! / prod(parts_j!); parts must sum to total."""
    if sum(parts) != total:
        raise ValueError("multinomial parts must sum to the top index")
    num = factorial(total)
    for p in parts:
        num //= factorial(p)
    return num


def to_toeplitz(a: CkScalar) -> tuple:
    """Upper-triangular Toeplitz matrix of a, entry a(d)/d! on offset d."""
    k = a.k
    return tuple(
        tuple(
            a.coords[c - r] / factorial(c - r) if c >= r else Fraction(0)
            for c in range(k + 1)
        )
        for r in range(k + 1)
    )


class CkSeries:
    """Truncated power series over C_k.

    Degrees 1..trunc are stored in `coeffs`; `const` is the degree-0 term,
    zero for the moment/R-series world and nonzero only for Fourier images.
    Binary operations truncate to the smaller trunc.
    """

    __slots__ = ("k", "trunc", "const", "coeffs")

    def __init__(self, k: int, trunc: int, coeffs: Iterable, const: CkScalar | None = None):
        if trunc < 1:
            raise ValueError("trunc must be >= 1")
        coeffs = tuple(coeffs)
        if len(coeffs) != trunc:
            raise ValueError(f"need {trunc} coefficients for degrees 1..{trunc}, got {len(coeffs)}")
        if const is None:
            const = CkScalar.zero(k)
        for c in coeffs + (const,):
            if not isinstance(c, CkScalar):
                raise TypeError("series coefficients must be CkScalar")
            if c.k != k:
                raise ValueError(f"order mismatch in coefficients: k={c.k} vs k={k}")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "trunc", trunc)
        object.__setattr__(self, "const", const)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("CkSeries is immutable")

    @classmethod
    def zero(cls, k: int, trunc: int) -> "CkSeries":
        return cls(k, trunc, tuple(CkScalar.zero(k) for _ in range(trunc)))

    @classmethod
    def from_rationals(cls, k: int, values: Sequence, trunc: int | None = None) -> "CkSeries":
        """Series with scalar (order-0 embedded) coefficients, degrees 1..len."""
        if trunc is None:
            trunc = len(values)
        coeffs = [CkScalar.from_rational(k, v) for v in values]
        coeffs += [CkScalar.zero(k)] * (trunc - len(coeffs))
        return cls(k, trunc, coeffs)

    def coeff(self, m: int) -> CkScalar:
        """Coefficient of z^m, m in 0..trunc."""
        if m == 0:
            return self.const
        if 1 <= m <= self.trunc:
            return self.coeffs[m - 1]
        raise IndexError(f"degree {m} out of range 0..{self.trunc}")

    def truncate(self, trunc: int) -> "CkSeries":
        if trunc > self.trunc:
            raise ValueError("cannot extend a truncated series")
        return CkSeries(self.k, trunc, self.coeffs[:trunc], self.const)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CkSeries)
            and self.k == other.k
            and self.trunc == other.trunc
            and self.const == other.const
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.k, self.trunc, self.const, self.coeffs))

    def __repr__(self):
        return f"CkSeries(k={self.k}, trunc={self.trunc}, const={self.const!r}, coeffs={list(self.coeffs)!r})"

    def __add__(self, other: "CkSeries") -> "CkSeries":
        _check_series(self, other)
        n = min(self.trunc, other.trunc)
        return CkSeries(
            self.k,
            n,
            tuple(self.coeffs[i] + other.coeffs[i] for i in range(n)),
            self.const + other.const,
        )

    def __sub__(self, other: "CkSeries") -> "CkSeries":
        _check_series(self, other)
        n = min(self.trunc, other.trunc)
        return CkSeries(
            self.k,
            n,
            tuple(self.coeffs[i] - other.coeffs[i] for i in range(n)),
            self.const - other.const,
        )

    def __mul__(self, other: "CkSeries") -> "CkSeries":
        return series_mul(self, other)


def _check_series(f: CkSeries, g: CkSeries) -> None:
    if f.k != g.k:
        raise ValueError(f"order mismatch: k={f.k} vs k={g.k}")


def series_mul(f: CkSeries, g: CkSeries) -> CkSeries:
    """Cauchy product truncated at min(f.trunc, g.trunc); constants included."""
    _check_series(f, g)
    n = min(f.trunc, g.trunc)
    coeffs = []
    for m in range(1, n + 1):
        acc = CkScalar.zero(f.k)
        for i in range(0, m + 1):
            acc = acc + ck_mul(f.coeff(i), g.coeff(m - i))
        coeffs.append(acc)
    return CkSeries(f.k, n, coeffs, ck_mul(f.const, g.const))


def series_compose(f: CkSeries, g: CkSeries) -> CkSeries:
    """f(g(z)) truncated at min trunc; the inner series must have zero constant."""
    _check_series(f, g)
    if not g.const.is_zero():
        raise ValueError("composition needs a zero constant term in the inner series")
    n = min(f.trunc, g.trunc)
    k = f.k
    out = [CkScalar.zero(k) for _ in range(n)]
    gcoef = [g.coeffs[i] for i in range(n)]
    current = None  # coefficients of g^j for degrees 1..n
    for j in range(1, n + 1):
        if current is None:
            current = list(gcoef)
        else:
            nxt = [CkScalar.zero(k) for _ in range(n)]
            for d1 in range(1, n + 1):
                if current[d1 - 1].is_zero():
                    continue
                for d2 in range(1, n - d1 + 1):
                    nxt[d1 + d2 - 1] = nxt[d1 + d2 - 1] + ck_mul(current[d1 - 1], gcoef[d2 - 1])
            current = nxt
        fj = f.coeffs[j - 1] if j <= f.trunc else CkScalar.zero(k)
        for d in range(1, n + 1):
            out[d - 1] = out[d - 1] + ck_mul(fj, current[d - 1])
    return CkSeries(k, n, out, f.const)


def series_comp_inverse(f: CkSeries) -> CkSeries:
    """Compositional inverse g with f(g(z)) = z up to trunc.

    Degree-by-degree triangular solve; the degree-1 coefficient must be
    invertible in C_k and the constant term must vanish.
    """
    if not f.const.is_zero():
        raise ValueError("compositional inverse needs a zero constant term")
    n = f.trunc
    k = f.k
    a1_inv = ck_inverse(f.coeffs[0])  # NotInvertible if leading coefficient is not a unit
    g = [a1_inv]
    for d in range(2, n + 1):
        # z^d coefficient of sum_{j>=2} a_j g(z)^j with g known below degree d
        acc = CkScalar.zero(k)
        current = [c for c in g] + [CkScalar.zero(k)] * (d - len(g))
        for j in range(2, d + 1):
            nxt = [CkScalar.zero(k) for _ in range(d)]
            for d1 in range(1, d):
                if current[d1 - 1].is_zero():
                    continue
                for d2 in range(1, d - d1 + 1):
                    if d2 <= len(g):
                        nxt[d1 + d2 - 1] = nxt[d1 + d2 - 1] + ck_mul(current[d1 - 1], g[d2 - 1])
            current = nxt
            if j <= n:
                acc = acc + ck_mul(f.coeffs[j - 1], current[d - 1])
        g.append(ck_mul(-a1_inv, acc))
    return CkSeries(k, n, g)
