"""Subspace families, complements and the two sampling sets.

A design fixes ``(p, r, t)``, picks the smallest admissible subspace
dimension ``h``, lifts a full-spark Vandermonde multiset of F_q^s
(q = p^h, s = ceil(r/h)) to an m-generating family of h-dimensional
subspaces H_1..H_n of F_p^r, and completes each H_i to a basis of F_p^r
with standard basis vectors.  Everything is deterministic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .field import (
    ExtField,
    all_vectors,
    complete_basis,
    decode,
    encode,
    inverse_mod,
    is_prime,
    rank,
    rank_and_span,
)


class TooManyPoints(ValueError):
    pass


class DesignError(ValueError):
    """An invalid or inconsistent design (bad parameters, singular solve matrix)."""


@dataclass(frozen=True)
class DesignParams:
    p: int
    r: int
    t: int
    h: int
    m: int
    n: int

    @property
    def q(self) -> int:
        return self.p**self.h

    @property
    def s(self) -> int:
        return -(-self.r // self.h)

    @property
    def threshold(self) -> int:
        """Vote count a label must exceed: 2t(m-1)."""
        return 2 * self.t * (self.m - 1)


def select_parameters(p: int, r: int, t: int) -> DesignParams:
    """Smallest h >= 1 with 4t(ceil(r/h) - 1) <= p^h, then m and n."""
    if not is_prime(p):
        raise DesignError("p must be prime")
    if r < 1 or t < 1:
        raise DesignError("r and t must be positive")
    for h in range(1, r + 1):
        m = -(-r // h)
        if 4 * t * (m - 1) <= p**h:
            return DesignParams(p, r, t, h, m, 4 * t * (m - 1) + 1)
    raise AssertionError("unreachable: h = r always qualifies")


def exponent_set(p: int) -> tuple:
    """K = {0} u {2^i : 0 <= i <= k}, k minimal with 2^k >= p/3, as a list
    ``[0, 1, 2, 4, ..., 2^k]`` reduced mod p."""
    k = 0
    while 3 * 2**k < p:
        k += 1
    return (0,) + tuple(pow(2, i, p) for i in range(k + 1))


exponent_set_K = exponent_set


def vandermonde_set(fq: ExtField, s: int, n: int) -> list:
    """First n points of {(1, x, ..., x^(s-1)) : x in F_q} u {(0, ..., 0, 1)}.

    Field elements are taken in coefficient-lexicographic order; the point
    (0, ..., 0, 1) is reached only when n == q + 1.  For s == 1 every point
    is (1,), so the result is a multiset.
    """
    q = fq.q
    if n > q + 1:
        raise TooManyPoints(f"at most q + 1 = {q + 1} points exist, asked for {n}")
    pts = []
    for x in fq.elements()[: min(n, q)]:
        pts.append(tuple(x**e for e in range(s)))
    if n == q + 1:
        pts.append(tuple(fq.zero() for _ in range(s - 1)) + (fq.one(),))
    return pts


def project(vec, r: int) -> tuple:
    """The map F_q^s -> F_p^r: flatten coefficients, keep the first r."""
    flat = [c for x in vec for c in x.coeffs]
    return tuple(flat[:r])


def lifted_span(a, fq: ExtField, r: int) -> list:
    """Generators of pi(span_{F_q}{a}) over F_p: pi(z^k a) for k < h."""
    z = fq.generator()
    gens = []
    zk = fq.one()
    for _ in range(fq.h):
        gens.append(project(tuple(zk * x for x in a), r))
        zk = zk * z
    return gens


@dataclass
class SubspaceFamily:
    """Bases, complements and solve matrices for H_1..H_n.

    ``bases[i]`` is (h, r), ``complements[i]`` is (r-h, r); ``solve[i]``
    stacks them (rows B_i then X_i) and ``inverse[i]`` is its inverse mod p.
    """

    p: int
    r: int
    h: int
    bases: np.ndarray
    complements: np.ndarray
    solve: np.ndarray = field(init=False)
    inverse: np.ndarray = field(init=False)

    def __post_init__(self):
        n = self.bases.shape[0]
        self.solve = np.concatenate([self.bases, self.complements], axis=1) % self.p
        inv = np.empty_like(self.solve)
        for i in range(n):
            try:
                inv[i] = inverse_mod(self.solve[i], self.p)
            except ValueError as exc:
                raise DesignError(f"subspace {i + 1}: basis and complements do not span F_p^r") from exc
        self.inverse = inv

    @property
    def n(self) -> int:
        return self.bases.shape[0]


def lift_family(params: DesignParams, points, fq: ExtField) -> SubspaceFamily:
    p, r, h = params.p, params.r, params.h
    bases, comps = [], []
    for a in points:
        k, basis = rank_and_span(lifted_span(a, fq, r), p, r)
        # pad with e_1, e_2, ... when the image is too small
        j = 0
        while k < h:
            e = tuple(1 if i == j else 0 for i in range(r))
            k2, b2 = rank_and_span(basis + [e], p, r)
            if k2 > k:
                k, basis = k2, b2
            j += 1
        bases.append(basis)
        comps.append(complete_basis(basis, r, p))
    b = np.array(bases, dtype=np.int64).reshape(len(bases), h, r)
    x = np.array(comps, dtype=np.int64).reshape(len(comps), r - h, r)
    return SubspaceFamily(p, r, h, b, x)


@dataclass
class SamplingSet:
    """Union of cosets H_i + shift.

    ``shifts`` is (n, S, r) and ``cosets`` is (n, S, p^h) point codes; coset
    points are listed in lexicographic order of their coefficient tuple over
    B_i.  ``points`` holds the sorted, deduplicated codes of the union.
    """

    variant: str
    p: int
    r: int
    K: tuple
    shifts: np.ndarray
    cosets: np.ndarray
    points: np.ndarray

    def __len__(self):
        return len(self.points)

    def shift_index(self, l: int, k: int) -> int:
        """Column of ``cosets`` holding H_i + k x_{l,i} (0-based l)."""
        if k % self.p == 0:
            return 0
        if self.variant != "gamma2":
            raise KeyError("gamma1 only holds the unshifted cosets")
        nz = self.K[1:]
        return 1 + l * len(nz) + nz.index(k % self.p)

    def coset(self, i: int, l: int = 0, k: int = 0) -> np.ndarray:
        """Points of H_i + k x_{l,i} as rows (0-based i and l)."""
        return decode(self.cosets[i, self.shift_index(l, k)], self.p, self.r)

    def point_tuples(self) -> list:
        return [tuple(int(c) for c in row) for row in decode(self.points, self.p, self.r)]


def _build(family: SubspaceFamily, shifts: np.ndarray, variant: str, K: tuple) -> SamplingSet:
    p, r = family.p, family.r
    grid = all_vectors(p, family.h)  # (p^h, h)
    # (n, p^h, r): all F_p-combinations of each basis
    spans = np.einsum("ck,ikr->icr", grid, family.bases) % p
    pts = (shifts[:, :, None, :] + spans[:, None, :, :]) % p
    codes = encode(pts, p)
    return SamplingSet(variant, p, r, K, shifts, codes, np.unique(codes))


def build_gamma1(family: SubspaceFamily, K: tuple = (0,)) -> SamplingSet:
    shifts = np.zeros((family.n, 1, family.r), dtype=np.int64)
    return _build(family, shifts, "gamma1", tuple(K))


def build_gamma2(family: SubspaceFamily, K: tuple) -> SamplingSet:
    p, n, r = family.p, family.n, family.r
    nz = [k for k in K if k % p]
    nshift = 1 + (r - family.h) * len(nz)
    shifts = np.zeros((n, nshift, r), dtype=np.int64)
    for i in range(n):
        col = 1
        for x in family.complements[i]:
            for k in nz:
                shifts[i, col] = (k * x) % p
                col += 1
    return _build(family, shifts, "gamma2", tuple(K))


@dataclass
class SamplingDesign:
    params: DesignParams
    family: SubspaceFamily
    K: tuple

    @property
    def p(self):
        return self.params.p

    @property
    def r(self):
        return self.params.r

    def gamma1(self) -> SamplingSet:
        if not hasattr(self, "_gamma1"):
            self._gamma1 = build_gamma1(self.family, self.K)
        return self._gamma1

    def gamma2(self) -> SamplingSet:
        if not hasattr(self, "_gamma2"):
            self._gamma2 = build_gamma2(self.family, self.K)
        return self._gamma2

    def sampling_set(self, variant: str) -> SamplingSet:
        if variant == "gamma1":
            return self.gamma1()
        if variant == "gamma2":
            return self.gamma2()
        raise ValueError(f"unknown variant {variant!r}")


def build_design(p: int, r: int, t: int) -> SamplingDesign:
    params = select_parameters(p, r, t)
    fq = ExtField(p, params.h)
    pts = vandermonde_set(fq, params.s, params.n)
    return SamplingDesign(params, lift_family(params, pts, fq), exponent_set(p))


# ---------------------------------------------------------------------------
# checks


def verify_m_generating(bases, m: int, p: int, r: int) -> bool:
    """Brute force: every m of the subspaces jointly span F_p^r."""
    bases = [np.asarray(b, dtype=np.int64).reshape(-1, r) for b in bases]
    for combo in itertools.combinations(range(len(bases)), m):
        if rank(np.concatenate([bases[i] for i in combo], axis=0), p) < r:
            return False
    return True


def annihilator_counts(bases, p: int, r: int, chunk: int = 1 << 14) -> np.ndarray:
    """For every label y (lexicographic), the number of i with y in H_i^perp."""
    bases = np.asarray(bases, dtype=np.int64)
    ys = all_vectors(p, r)
    out = np.zeros(len(ys), dtype=np.int64)
    for start in range(0, len(ys), chunk):
        blk = ys[start : start + chunk]
        dots = np.einsum("ikr,yr->yik", bases, blk) % p
        out[start : start + chunk] = (dots == 0).all(axis=2).sum(axis=1)
    return out


def coherence_ok(bases, m: int, p: int, r: int) -> bool:
    """|{i : chi_y in H_i^perp}| <= m - 1 for every y != 0."""
    counts = annihilator_counts(bases, p, r)
    return bool((counts[1:] <= m - 1).all())


def gamma1_bound(p: int, t: int, r: int) -> int:
    return 16 * p * t * t * r * r


def within_gamma2_bound(size: int, p: int, t: int, r: int) -> bool:
    """size <= 16 p t^2 r^3 (2 + log2 p), decided in exact integer arithmetic."""
    c = 16 * p * t * t * r**3
    excess = size - 2 * c
    if excess <= 0:
        return True
    # excess <= c log2 p  <=>  2^excess <= p^c
    return 2**excess <= p**c


def gamma2_bound(p: int, t: int, r: int) -> float:
    return 16 * p * t * t * r**3 * (2 + math.log2(p))


def family_size_ok(params: DesignParams) -> bool:
    """n p^h < 16 p t^2 r^2."""
    return params.n * params.p**params.h < gamma1_bound(params.p, params.t, params.r)
