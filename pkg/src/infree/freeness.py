"""Infinitesimal freeness: free products, product tuples, the moment
characterization, derivation upgrades, and derivatives of free convolutions.

The freeness checker works with the one-parameter functional
phi_t = sum_i phi^(i) t^i / i! evaluated symbolically, so the vanishing
condition on centered alternating products becomes exact polynomial
identities: the t-coefficients 0..k must all be zero.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as iter_product
from math import factorial
from typing import Iterator

from .ck import CkScalar
from .cumulants import (
    CumulantTable,
    InfLaw,
    all_words,
    cumulants_to_moments,
    moments_to_cumulants,
    restrict,
)
from .convolve import additive_convolve, multiplicative_convolve
from .partitions import enumerate_nc, kreweras


class NcPolynomial:
    """Polynomial in non-commuting variables: finite map word -> rational.

    The empty word carries the constant term; zero coefficients are never
    stored.  Multiplication concatenates words bilinearly.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        store = {}
        for w, c in (terms or {}).items():
            c = Fraction(c)
            if c != 0:
                store[tuple(w)] = c
        object.__setattr__(self, "terms", store)

    def __setattr__(self, name, value):
        raise AttributeError("NcPolynomial is immutable")

    @classmethod
    def variable(cls, v: int) -> "NcPolynomial":
        return cls({(v,): 1})

    @classmethod
    def constant(cls, c) -> "NcPolynomial":
        return cls({(): c})

    @classmethod
    def word(cls, w: tuple) -> "NcPolynomial":
        return cls({tuple(w): 1})

    def __eq__(self, other) -> bool:
        return isinstance(other, NcPolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __add__(self, other: "NcPolynomial") -> "NcPolynomial":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, Fraction(0)) + c
        return NcPolynomial(out)

    def __sub__(self, other: "NcPolynomial") -> "NcPolynomial":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, Fraction(0)) - c
        return NcPolynomial(out)

    def __mul__(self, other: "NcPolynomial") -> "NcPolynomial":
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = out.get(w, Fraction(0)) + c1 * c2
        return NcPolynomial(out)

    def scale(self, c) -> "NcPolynomial":
        c = Fraction(c)
        return NcPolynomial({w: c * v for w, v in self.terms.items()})

    def max_degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def __repr__(self):
        body = " + ".join(f"{c}*{w}" for w, c in sorted(self.terms.items()))
        return f"NcPolynomial({body or '0'})"


class Derivation:
    """Linear map fixed by its images on the variables, extended by Leibniz."""

    __slots__ = ("images",)

    def __init__(self, images: dict):
        store = {}
        for v, p in images.items():
            if not isinstance(p, NcPolynomial):
                raise TypeError("derivation images must be NcPolynomial")
            store[int(v)] = p
        object.__setattr__(self, "images", store)

    def __setattr__(self, name, value):
        raise AttributeError("Derivation is immutable")

    def __eq__(self, other) -> bool:
        return isinstance(other, Derivation) and self.images == other.images

    def __hash__(self):
        return hash(tuple(sorted(self.images.items())))

    def image(self, v: int) -> NcPolynomial:
        return self.images.get(v, NcPolynomial())

    def max_image_degree(self) -> int:
        return max((p.max_degree() for p in self.images.values()), default=0)

    def apply_once(self, p: NcPolynomial) -> NcPolynomial:
        out = NcPolynomial()
        for w, c in p.terms.items():
            for pos, v in enumerate(w):
                piece = NcPolynomial.word(w[:pos]) * self.image(v) * NcPolynomial.word(w[pos + 1:])
                out = out + piece.scale(c)
        return out


def apply_derivation(d: Derivation, p: NcPolynomial, power: int = 1) -> NcPolynomial:
    """power-fold application of the derivation."""
    if power < 0:
        raise ValueError("power must be >= 0")
    for _ in range(power):
        p = d.apply_once(p)
    return p


@dataclass(frozen=True)
class Coloring:
    """Assignment of each variable 1..num_vars to a subalgebra label."""

    colors: tuple

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(int(c) for c in self.colors))
        if not self.colors:
            raise ValueError("coloring must cover at least one variable")

    @property
    def num_vars(self) -> int:
        return len(self.colors)

    def color_of(self, v: int) -> int:
        return self.colors[v - 1]

    def palette(self) -> tuple:
        return tuple(sorted(set(self.colors)))


def free_product_joint(laws: list, max_len: int):
    """Joint law of the disjoint union of the inputs' variables, free by
    construction: mixed cumulants vanish, pure-color cumulants come from the
    corresponding factor.  Returns the law and the coloring."""
    if not laws:
        raise ValueError("need at least one factor")
    k = laws[0].k
    if any(law.k != k for law in laws):
        raise ValueError("factors must share the order k")
    if any(law.max_len < max_len for law in laws):
        raise ValueError(f"every factor needs moments up to length {max_len}")
    colors = []
    offset_of = []
    offset = 0
    for idx, law in enumerate(laws, start=1):
        offset_of.append(offset)
        colors.extend([idx] * law.num_vars)
        offset += law.num_vars
    coloring = Coloring(tuple(colors))
    factor_cums = [moments_to_cumulants(law) for law in laws]
    zero = CkScalar.zero(k)
    table = {}
    for w in all_words(offset, max_len):
        cset = {colors[v - 1] for v in w}
        if len(cset) > 1:
            table[w] = zero
        else:
            c = cset.pop()
            local = tuple(v - offset_of[c - 1] for v in w)
            table[w] = factor_cums[c - 1].value(local)
    joint = cumulants_to_moments(CumulantTable(k, offset, max_len, table))
    return joint, coloring


def _require_two_equal_colors(coloring: Coloring):
    palette = coloring.palette()
    if len(palette) != 2:
        raise ValueError("product tuples need exactly two colors")
    first = [v for v in range(1, coloring.num_vars + 1) if coloring.color_of(v) == palette[0]]
    second = [v for v in range(1, coloring.num_vars + 1) if coloring.color_of(v) == palette[1]]
    if len(first) != len(second):
        raise ValueError("the two colors must pair up variable for variable")
    return first, second


def product_tuple_cumulants(joint: CumulantTable, coloring: Coloring, max_len: int) -> CumulantTable:
    """Cumulants of the pairwise products a_j b_j for a free two-color tuple.

    kappa_m of the products is the sum over non-crossing p of the p-indexed
    cumulants of the a's times the complement-indexed cumulants of the b's.
    """
    if coloring.num_vars != joint.num_vars:
        raise ValueError("coloring does not match the table")
    if max_len > joint.max_len:
        raise ValueError("joint table is too short for the requested length")
    first, second = _require_two_equal_colors(coloring)
    check_len = min(joint.max_len, 4)
    for w in all_words(joint.num_vars, check_len):
        if len({coloring.color_of(v) for v in w}) > 1 and not joint.value(w).is_zero():
            raise ValueError(f"mixed cumulant does not vanish on {w}")
    npairs = len(first)
    out = {}
    for w in all_words(npairs, max_len):
        m = len(w)
        acc = CkScalar.zero(joint.k)
        for p in enumerate_nc(m):
            aw = tuple(first[j - 1] for j in w)
            bw = tuple(second[j - 1] for j in w)
            left = [joint.value(restrict(aw, b)) for b in p.blocks]
            right = [joint.value(restrict(bw, b)) for b in kreweras(p).blocks]
            term = CkScalar.one(joint.k)
            for f in left + right:
                term = term * f
            acc = acc + term
        out[w] = acc
    return CumulantTable(joint.k, npairs, max_len, out)


# --- symbolic polynomials in t, truncated beyond degree k ---


def _poly_mul(a: tuple, b: tuple, k: int) -> tuple:
    out = [Fraction(0)] * (k + 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if i + j > k:
                break
            out[i + j] += x * y
    return tuple(out)


def _phi_t(law: InfLaw, w: tuple) -> tuple:
    """phi_t(w) as t-polynomial coefficients (degree 0..k)."""
    return tuple(
        law.moment(w).coords[i] / factorial(i) for i in range(law.k + 1)
    )


@dataclass(frozen=True)
class Witness:
    word: tuple
    component: int
    value: Fraction


@dataclass(frozen=True)
class FreenessVerdict:
    passed: bool
    witness: Witness | None


def _runs(w: tuple, coloring: Coloring) -> list:
    runs = []
    for v in w:
        c = coloring.color_of(v)
        if runs and coloring.color_of(runs[-1][0]) == c:
            runs[-1].append(v)
        else:
            runs.append([v])
    return [tuple(r) for r in runs]


def check_inf_freeness(joint: InfLaw, coloring: Coloring, max_len: int) -> FreenessVerdict:
    """Bounded moment test of infinitesimal freeness of order k.

    Every word of length <= max_len splits into maximal same-color runs;
    the runs are the alternating monomials.  For each such product the
    centered expectation phi_t(prod(m_r - phi_t(m_r))) is expanded
    symbolically in t and its coefficients 0..k must vanish.  Any reported
    failure is a genuine one; a pass certifies freeness up to the budget.
    """
    if coloring.num_vars != joint.num_vars:
        raise ValueError("coloring does not match the law")
    if max_len > joint.max_len:
        raise ValueError("law is too short for the requested length budget")
    k = joint.k
    one = (Fraction(1),) + (Fraction(0),) * k
    for w in all_words(joint.num_vars, max_len):
        runs = _runs(w, coloring)
        if len(runs) < 2:
            continue
        centers = [_phi_t(joint, r) for r in runs]
        total = [Fraction(0)] * (k + 1)
        for keep in iter_product((False, True), repeat=len(runs)):
            word = tuple(v for r, kept in zip(runs, keep) if kept for v in r)
            coeff = one
            sign = 1
            for c, kept in zip(centers, keep):
                if not kept:
                    coeff = _poly_mul(coeff, c, k)
                    sign = -sign
            term = _poly_mul(coeff, _phi_t(joint, word), k)
            for i in range(k + 1):
                total[i] += sign * term[i]
        for i in range(k + 1):
            if total[i] != 0:
                return FreenessVerdict(False, Witness(w, i, total[i]))
    return FreenessVerdict(True, None)


def upgraded_law(base: InfLaw, d: Derivation, k: int, max_len: int) -> InfLaw:
    """Order-k law from an order-0 law and a derivation: component i of each
    moment is the base expectation of the i-th derivative of the word."""
    if base.k != 0:
        raise ValueError("base law must have order 0")
    growth = max(d.max_image_degree() - 1, 0)
    needed = max_len + k * growth
    if base.max_len < needed:
        raise ValueError(
            f"base law supports length {base.max_len}, need {needed} "
            f"(= {max_len} + {k} * {growth})"
        )

    def evaluate(p: NcPolynomial) -> Fraction:
        acc = Fraction(0)
        for word, c in p.terms.items():
            acc += c * base.moment(word).coords[0]
        return acc

    table = {}
    for w in all_words(base.num_vars, max_len):
        comps = []
        p = NcPolynomial.word(w)
        for i in range(k + 1):
            comps.append(evaluate(p))
            if i < k:
                p = d.apply_once(p)
        table[w] = CkScalar(k, comps)
    return InfLaw(k, base.num_vars, max_len, table)


def derivative_of_convolution(mu: InfLaw, nu: InfLaw, mode: str) -> InfLaw:
    """Derivatives at t=0 of the convolution of two one-parameter families,
    given as the laws of derivative tuples."""
    if mode == "additive":
        return additive_convolve(mu, nu)
    if mode == "multiplicative":
        return multiplicative_convolve(mu, nu)
    raise ValueError(f"mode must be 'additive' or 'multiplicative', not {mode!r}")


def law_at_t(derivs: InfLaw, t) -> InfLaw:
    """Taylor evaluation: order-0 law with moments sum_i m^(i) t^i / i!."""
    t = Fraction(t)
    table = {}
    for w in derivs.words():
        coords = derivs.moment(w).coords
        val = sum(
            (coords[i] * t**i / factorial(i) for i in range(derivs.k + 1)),
            Fraction(0),
        )
        table[w] = CkScalar(0, (val,))
    return InfLaw(0, derivs.num_vars, derivs.max_len, table)
