"""Boxed convolutions of series and free convolutions of one-variable laws.

Three routes to the same product: the type-A boxed convolution over C_k,
the type-B double sum at k=1, and the type-k sum weighted by shapes.  The
first is the production path; the other two exist to witness the equality
theorems and are computed from enumerated partitions, with per-degree term
descriptors memoized.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .ck import CkScalar, CkSeries, ck_mul, ck_prod_many, multinomial, series_comp_inverse
from .cumulants import CumulantTable, InfLaw, cumulants_to_moments, moments_to_cumulants
from .partitions import NcPartition, enumerate_nc, kreweras, ordered_blocks
from .typek import enumerate_type_k, r_of_shape


def special_series(kind: str, k: int, trunc: int) -> CkSeries:
    """The unit (delta), all-ones (zeta) and inverse-of-zeta (moebius)
    series for the boxed convolution."""
    if trunc < 1:
        raise ValueError("trunc must be >= 1")
    one = CkScalar.one(k)
    zero = CkScalar.zero(k)
    if kind == "delta":
        return CkSeries(k, trunc, (one,) + (zero,) * (trunc - 1))
    if kind == "zeta":
        return CkSeries(k, trunc, (one,) * trunc)
    if kind == "moebius":
        return boxed_inverse(special_series("zeta", k, trunc))
    raise ValueError(f"unknown special series kind: {kind!r}")


@lru_cache(maxsize=None)
def _block_profiles(m: int) -> tuple:
    """(sizes of p's blocks, sizes of Kr(p)'s blocks) over p in NC(m)."""
    out = []
    for p in enumerate_nc(m):
        out.append(
            (
                tuple(len(b) for b in p.blocks),
                tuple(len(b) for b in kreweras(p).blocks),
            )
        )
    return tuple(out)


def boxed_conv_ck(f: CkSeries, g: CkSeries) -> CkSeries:
    """gamma_m = sum over NC(m) of prod alpha_{block sizes of p} times
    prod beta_{block sizes of Kr(p)}, all products in C_k."""
    if f.k != g.k:
        raise ValueError(f"order mismatch: k={f.k} vs k={g.k}")
    n = min(f.trunc, g.trunc)
    k = f.k
    coeffs = []
    for m in range(1, n + 1):
        acc = CkScalar.zero(k)
        for p_sizes, kr_sizes in _block_profiles(m):
            factors = [f.coeffs[s - 1] for s in p_sizes] + [g.coeffs[s - 1] for s in kr_sizes]
            acc = acc + ck_prod_many(factors)
        coeffs.append(acc)
    return CkSeries(k, n, coeffs)


def boxed_inverse(f: CkSeries) -> CkSeries:
    """g with f boxed g = delta; exists iff the degree-1 coefficient is a
    unit of C_k.  Triangular: beta_m occurs only in the p = 0_m term."""
    k = f.k
    n = f.trunc
    a1_inv = f.coeffs[0].inverse()
    lead_pow = {}

    def a1_inv_pow(e: int) -> CkScalar:
        if e not in lead_pow:
            lead_pow[e] = ck_prod_many([a1_inv] * e) if e else CkScalar.one(k)
        return lead_pow[e]

    g: list = []
    for m in range(1, n + 1):
        acc = CkScalar.zero(k)
        for p_sizes, kr_sizes in _block_profiles(m):
            if len(p_sizes) == m:  # p = 0_m carries the unknown beta_m
                continue
            factors = [f.coeffs[s - 1] for s in p_sizes] + [g[s - 1] for s in kr_sizes]
            acc = acc + ck_prod_many(factors)
        target = CkScalar.one(k) if m == 1 else CkScalar.zero(k)
        # 0_m term is (alpha_1)^m beta_m
        g.append(ck_mul(a1_inv_pow(m), target - acc))
    return CkSeries(k, n, g)


def _mirror_reps(blocks: tuple, m: int) -> tuple:
    """Split an inversion-invariant partition of [2m] into its zero-block
    (None if absent) and one representative per mirror pair of blocks."""
    zero = None
    reps = []
    for b in blocks:
        mirrored = tuple(sorted(x + m if x <= m else x - m for x in b))
        if mirrored == b:
            if zero is not None:
                raise ValueError("two inversion-invariant blocks")
            zero = b
        elif min(b) < min(mirrored):
            reps.append(b)
    return zero, tuple(reps)


@lru_cache(maxsize=None)
def _type_b_terms(m: int) -> tuple:
    """Descriptors (alpha side, beta side) for the order-1 double sum at
    degree m.  Each side is (zero_block_half_size or None, pair sizes)."""
    terms = []
    for p in enumerate_nc(2 * m):
        inv_blocks = {
            tuple(sorted(x + m if x <= m else x - m for x in b)) for b in p.blocks
        }
        if inv_blocks != set(p.blocks):
            continue
        a_zero, a_reps = _mirror_reps(p.blocks, m)
        kr = kreweras(p)
        b_zero, b_reps = _mirror_reps(kr.blocks, m)
        if (a_zero is None) == (b_zero is None):
            raise ValueError("exactly one of the pair must own the zero-block")
        terms.append(
            (
                None if a_zero is None else len(a_zero) // 2,
                tuple(len(b) for b in a_reps),
                None if b_zero is None else len(b_zero) // 2,
                tuple(len(b) for b in b_reps),
            )
        )
    return tuple(terms)


def boxed_conv_type_b(f: CkSeries, g: CkSeries) -> CkSeries:
    """The two-coordinate double sum over inversion-invariant partitions;
    defined only at order 1."""
    if f.k != 1 or g.k != 1:
        raise ValueError("type-B convolution is defined at order k=1")
    n = min(f.trunc, g.trunc)
    coeffs = []
    for m in range(1, n + 1):
        prime = Fraction(0)
        second = Fraction(0)
        for p_sizes, kr_sizes in _block_profiles(m):
            term = Fraction(1)
            for s in p_sizes:
                term *= f.coeffs[s - 1].coords[0]
            for s in kr_sizes:
                term *= g.coeffs[s - 1].coords[0]
            prime += term
        for a_zero, a_pairs, b_zero, b_pairs in _type_b_terms(m):
            term = Fraction(1)
            for s in a_pairs:
                term *= f.coeffs[s - 1].coords[0]
            for s in b_pairs:
                term *= g.coeffs[s - 1].coords[0]
            if a_zero is not None:
                term *= f.coeffs[a_zero - 1].coords[1]
            else:
                term *= g.coeffs[b_zero - 1].coords[1]
            second += term
        coeffs.append(CkScalar(1, (prime, second)))
    return CkSeries(1, n, coeffs)


@lru_cache(maxsize=None)
def _type_k_terms(m: int, i: int) -> tuple:
    """Descriptors for component i of degree m: (weight, alpha side, beta
    side), each side a tuple of (block size, component index) read off the
    separated block list of the reduction."""
    terms = []
    for tk in enumerate_type_k(m, i):
        q = tk.reduction
        mix_list, sep_list = ordered_blocks(q)
        entry_of = dict(zip(mix_list, tk.shape.entries))
        weight = Fraction(
            multinomial(i, tk.shape.entries), r_of_shape(tk.shape, m, i)
        )
        nb = q.num_blocks()
        alpha = tuple((len(blk), entry_of[blk]) for blk in sep_list[:nb])
        beta = tuple((len(blk), entry_of[blk]) for blk in sep_list[nb:])
        terms.append((weight, alpha, beta))
    return tuple(terms)


def boxed_conv_type_k(f: CkSeries, g: CkSeries) -> CkSeries:
    """Componentwise sum over type-i partitions, i = 0..k, weighted by the
    shape multinomial over the shape count r."""
    if f.k != g.k:
        raise ValueError(f"order mismatch: k={f.k} vs k={g.k}")
    k = f.k
    n = min(f.trunc, g.trunc)
    coeffs = []
    for m in range(1, n + 1):
        comps = []
        for i in range(k + 1):
            acc = Fraction(0)
            for weight, alpha, beta in _type_k_terms(m, i):
                term = weight
                for size, comp in alpha:
                    term *= f.coeffs[size - 1].coords[comp]
                for size, comp in beta:
                    term *= g.coeffs[size - 1].coords[comp]
                acc += term
            comps.append(acc)
        coeffs.append(CkScalar(k, comps))
    return CkSeries(k, n, coeffs)


def r_from_moments(m: CkSeries) -> CkSeries:
    """R-series from the moment series: boxed convolution with moebius."""
    return boxed_conv_ck(m, special_series("moebius", m.k, m.trunc))


def moments_from_r(r: CkSeries) -> CkSeries:
    """Moment series from the R-series: boxed convolution with zeta."""
    return boxed_conv_ck(r, special_series("zeta", r.k, r.trunc))


def fourier_transform(f: CkSeries) -> CkSeries:
    """(1/z) times the compositional inverse; turns boxed convolution into
    coefficientwise series multiplication.  Needs trunc >= 2 so at least one
    non-constant coefficient survives the shift."""
    if f.trunc < 2:
        raise ValueError("fourier transform needs trunc >= 2")
    inv = series_comp_inverse(f)  # raises NotInvertible on a bad leading term
    return CkSeries(f.k, f.trunc - 1, inv.coeffs[1:], inv.coeffs[0])


def s_transform(law: InfLaw) -> CkSeries:
    """Fourier transform of the R-series; needs an invertible first moment."""
    r = r_from_moments(moment_series(law))
    return fourier_transform(r)


def moment_series(law: InfLaw) -> CkSeries:
    """Moments of a one-variable law as a series, degrees 1..max_len."""
    if law.num_vars != 1:
        raise ValueError("moment series needs a one-variable law")
    return CkSeries(
        law.k, law.max_len, [law.moment((1,) * m) for m in range(1, law.max_len + 1)]
    )


def law_from_moment_series(m: CkSeries) -> InfLaw:
    return InfLaw(
        m.k, 1, m.trunc, {(1,) * d: m.coeffs[d - 1] for d in range(1, m.trunc + 1)}
    )


def _check_pair(mu: InfLaw, nu: InfLaw) -> None:
    if mu.num_vars != 1 or nu.num_vars != 1:
        raise ValueError("convolution acts on one-variable laws")
    if mu.k != nu.k or mu.max_len != nu.max_len:
        raise ValueError("laws must share k and max_len")


def additive_convolve(mu: InfLaw, nu: InfLaw) -> InfLaw:
    """Free additive convolution: cumulants add."""
    _check_pair(mu, nu)
    cm = moments_to_cumulants(mu)
    cn = moments_to_cumulants(nu)
    summed = {w: cm.value(w) + cn.value(w) for w in cm.words()}
    return cumulants_to_moments(CumulantTable(mu.k, 1, mu.max_len, summed))


def multiplicative_convolve(mu: InfLaw, nu: InfLaw) -> InfLaw:
    """Free multiplicative convolution: R-series compose under the boxed
    convolution.  Works for zero first moments too; the S-transform product
    is a cross-checked secondary route, not this one."""
    _check_pair(mu, nu)
    r = boxed_conv_ck(r_from_moments(moment_series(mu)), r_from_moments(moment_series(nu)))
    return law_from_moment_series(moments_from_r(r))


def example_law(kind: str, params: CkScalar, k: int, max_len: int) -> InfLaw:
    """Named one-variable laws given by constant cumulant patterns:
    semicircular has kappa_2 = params and nothing else; free_poisson has
    kappa_n = params for every n."""
    if params.k != k:
        raise ValueError(f"params has order {params.k}, expected {k}")
    zero = CkScalar.zero(k)
    if kind == "semicircular":
        table = {(1,) * m: (params if m == 2 else zero) for m in range(1, max_len + 1)}
    elif kind == "free_poisson":
        table = {(1,) * m: params for m in range(1, max_len + 1)}
    else:
        raise ValueError(f"unknown example law kind: {kind!r}")
    return cumulants_to_moments(CumulantTable(k, 1, max_len, table))
