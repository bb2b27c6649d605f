import itertools

import numpy as np
import pytest

from fvsampling.design import (
    DesignError,
    DesignParams,
    SubspaceFamily,
    TooManyPoints,
    build_design,
    build_gamma1,
    build_gamma2,
    coherence_ok,
    exponent_set,
    family_size_ok,
    gamma1_bound,
    lift_family,
    lifted_span,
    select_parameters,
    vandermonde_set,
    verify_m_generating,
    within_gamma2_bound,
)
from fvsampling.field import ExtField, all_vectors, encode, rank


def brute_params(p, r, t):
    h = next(h for h in range(1, r + 1) if 4 * t * (-(-r // h) - 1) <= p**h)
    m = -(-r // h)
    return h, m, 4 * t * (m - 1) + 1


# --- parameters -------------------------------------------------------------


@pytest.mark.parametrize(
    "p,r,t,expect",
    [(3, 4, 1, (2, 2, 5)), (5, 1, 3, (1, 1, 1)), (2, 8, 2, (4, 2, 9)), (2, 3, 1, (2, 2, 5)), (3, 2, 1, (2, 1, 1))],
)
def test_parameter_examples(p, r, t, expect):
    prm = select_parameters(p, r, t)
    assert (prm.h, prm.m, prm.n) == expect


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
@pytest.mark.parametrize("r", [1, 2, 3, 4, 5, 6])
@pytest.mark.parametrize("t", [1, 2, 3, 5])
def test_parameters_match_definition(p, r, t):
    prm = select_parameters(p, r, t)
    assert (prm.h, prm.m, prm.n) == brute_params(p, r, t)
    assert prm.n <= prm.q + 1
    assert prm.s == prm.m


def test_nonprime_rejected():
    with pytest.raises(DesignError, match="p must be prime"):
        select_parameters(4, 2, 1)


# --- exponent set -----------------------------------------------------------


@pytest.mark.parametrize("p,K", [(2, (0, 1)), (3, (0, 1)), (5, (0, 1, 2)), (7, (0, 1, 2, 4)), (13, (0, 1, 2, 4, 8))])
def test_exponent_set(p, K):
    assert exponent_set(p) == K


def test_exponent_set_minimality():
    for p in [5, 7, 11, 13, 17, 31, 101]:
        K = exponent_set(p)
        k = len(K) - 2
        assert 3 * 2**k >= p and (k == 0 or 3 * 2 ** (k - 1) < p)


# --- Vandermonde multiset ---------------------------------------------------


def _as_tuples(pts):
    return [tuple(x.coeffs for x in v) for v in pts]


def test_vandermonde_q2():
    f2 = ExtField(2, 1)
    assert _as_tuples(vandermonde_set(f2, 2, 3)) == [((1,), (0,)), ((1,), (1,)), ((0,), (1,))]


def test_vandermonde_q4():
    f4 = ExtField(2, 2)
    got = _as_tuples(vandermonde_set(f4, 2, 5))
    one, zero = (1, 0), (0, 0)
    assert got == [(one, zero), (one, one), (one, (0, 1)), (one, (1, 1)), (zero, one)]


def test_vandermonde_multiset_s1():
    f3 = ExtField(3, 1)
    assert _as_tuples(vandermonde_set(f3, 1, 4)) == [((1,),)] * 4


def test_vandermonde_too_many():
    with pytest.raises(TooManyPoints):
        vandermonde_set(ExtField(3, 1), 2, 5)


def _full_spark(pts, fq, s):
    # every s-subset has nonzero determinant over F_q (Leibniz expansion)
    for sub in itertools.combinations(pts, s):
        det = fq.zero()
        for perm in itertools.permutations(range(s)):
            inv = sum(1 for i in range(s) for j in range(i + 1, s) if perm[i] > perm[j])
            term = fq.one()
            for row, col in enumerate(perm):
                term = term * sub[row][col]
            det = det - term if inv % 2 else det + term
        if det.is_zero():
            return False
    return True


@pytest.mark.parametrize("p,h,s", [(2, 1, 2), (2, 2, 2), (2, 2, 3), (3, 1, 2), (3, 2, 2), (5, 1, 3), (2, 3, 3)])
def test_vandermonde_full_spark(p, h, s):
    fq = ExtField(p, h)
    pts = vandermonde_set(fq, s, fq.q + 1)
    assert _full_spark(pts, fq, s)


# --- lifting ----------------------------------------------------------------


def test_lift_h1_is_identity():
    prm = DesignParams(3, 2, 1, h=1, m=2, n=4)
    f3 = ExtField(3, 1)
    fam = lift_family(prm, vandermonde_set(f3, 2, 4), f3)
    assert fam.bases[0].tolist() == [[1, 0]]
    assert fam.bases[1].tolist() == [[1, 1]]
    assert fam.bases[2].tolist() == [[1, 2]]
    assert fam.bases[3].tolist() == [[0, 1]]
    assert verify_m_generating(fam.bases, 2, 3, 2)


def test_lift_pads_with_standard_vectors():
    # image of span{(0,1)} over F_4 truncated to F_2^3 is span{(0,0,1)}, padded with e_1
    f4 = ExtField(2, 2)
    prm = select_parameters(2, 3, 1)
    a = (f4.zero(), f4.one())
    assert rank(lifted_span(a, f4, 3), 2) == 1
    fam = lift_family(prm, [a], f4)
    assert sorted(map(tuple, fam.bases[0].tolist())) == [(0, 0, 1), (1, 0, 0)]
    assert fam.complements[0].tolist() == [[0, 1, 0]]


def test_singular_family_rejected():
    b = np.array([[[1, 0]]])
    with pytest.raises(DesignError):
        SubspaceFamily(3, 2, 1, b, np.array([[[2, 0]]]))


@pytest.mark.parametrize("p,r,t", [(2, 3, 1), (3, 4, 1), (3, 3, 2), (5, 4, 2), (7, 4, 3), (2, 6, 1)])
def test_family_structure(p, r, t):
    d = build_design(p, r, t)
    prm = d.params
    assert d.family.bases.shape == (prm.n, prm.h, r)
    for i in range(prm.n):
        assert rank(d.family.bases[i], p) == prm.h
        assert (d.family.solve[i] @ d.family.inverse[i] % p == np.eye(r, dtype=int)).all()
    assert verify_m_generating(d.family.bases, prm.m, p, r)


# --- sampling sets ----------------------------------------------------------


def test_gamma1_example():
    d = build_design(3, 4, 1)
    g1 = d.gamma1()
    assert 9 <= len(g1) <= 45
    assert 0 in g1.points


def test_gamma1_is_union_of_subspaces():
    d = build_design(5, 3, 2)
    p = 5
    want = set()
    for b in d.family.bases:
        for c in all_vectors(p, d.params.h):
            want.add(int(encode(c @ b % p, p)))
    assert set(d.gamma1().points.tolist()) == want


def test_full_space_when_h_equals_r():
    d = build_design(5, 1, 3)
    assert d.params.h == 1 and d.params.m == 1
    assert d.gamma1().points.tolist() == list(range(5))
    assert d.gamma2().points.tolist() == list(range(5))


def test_gamma2_cosets():
    d = build_design(5, 3, 1)
    g2 = d.gamma2()
    p = 5
    for i in range(d.params.n):
        for l in range(d.params.r - d.params.h):
            for k in d.K:
                pts = g2.coset(i, l, k)
                shift = k * d.family.complements[i, l] % p
                base = all_vectors(p, d.params.h) @ d.family.bases[i] % p
                assert (pts == (base + shift) % p).all()
    assert set(d.gamma1().points.tolist()) <= set(g2.points.tolist())


def test_gamma2_tiny_case_is_full_space():
    # p=3, r=2, t=1 collapses to h=r; both sets are all of F_3^2
    d = build_design(3, 2, 1)
    assert len(d.gamma2()) == 9


def test_gamma2_with_manual_family():
    prm = DesignParams(3, 2, 1, h=1, m=2, n=4)
    f3 = ExtField(3, 1)
    fam = lift_family(prm, vandermonde_set(f3, 2, 4), f3)
    g2 = build_gamma2(fam, exponent_set(3))
    assert g2.shifts.shape == (4, 2, 2)
    assert len(g2) <= 9
    assert set(build_gamma1(fam).points.tolist()) <= set(g2.points.tolist())


def test_construction_deterministic():
    a, b = build_design(5, 4, 2), build_design(5, 4, 2)
    assert (a.family.bases == b.family.bases).all()
    assert (a.gamma2().points == b.gamma2().points).all()


# --- checks -----------------------------------------------------------------


def test_m_generating_examples():
    dup = np.array([[[1, 0, 0]], [[1, 0, 0]]])
    assert not verify_m_generating(dup, 2, 3, 3)
    assert verify_m_generating(np.eye(2, dtype=int)[None], 1, 5, 2)


def test_coherence_fails_for_duplicates():
    dup = np.array([[[1, 0]], [[1, 0]]])
    assert not coherence_ok(dup, 2, 3, 2)


def test_gamma2_bound_exact():
    # 2c + c log2 p with c = 16 p t^2 r^3
    p, t, r = 5, 1, 2
    c = 16 * p * r**3
    assert within_gamma2_bound(2 * c, p, t, r)
    assert within_gamma2_bound(2 * c + int(c * 2.3219), p, t, r)
    assert not within_gamma2_bound(2 * c + int(c * 2.3220) + 1, p, t, r)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
@pytest.mark.parametrize("r", [2, 3, 4])
@pytest.mark.parametrize("t", [1, 2, 3])
def test_size_bounds(p, r, t):
    d = build_design(p, r, t)
    assert len(d.gamma1()) <= gamma1_bound(p, t, r)
    assert within_gamma2_bound(len(d.gamma2()), p, t, r)
    assert family_size_ok(d.params)
