import itertools

import numpy as np
import pytest

import oracles
from fvsampling import kernels
from fvsampling.design import build_design, exponent_set
from fvsampling.field import all_vectors, encode
from fvsampling.recovery import reconstruct
from fvsampling.spectral import random_sparse_spectrum, sample_signal

BACKENDS = sorted(kernels.backends())


def naive_dft(row, p, h):
    pts = list(itertools.product(range(p), repeat=h))
    return np.array(
        [sum(row[i] * oracles.omega(p, -oracles.dot(x, lam, p)) for i, x in enumerate(pts)) / p**h for lam in pts]
    )


def test_compiled_backend_built():
    # the extension is part of a normal install; the fallback covers broken toolchains
    assert "python" in BACKENDS
    assert kernels.BACKEND in BACKENDS


@pytest.mark.parametrize("name", BACKENDS)
@pytest.mark.parametrize("p,h", [(2, 1), (2, 3), (3, 2), (5, 2), (7, 1), (11, 2)])
def test_coset_dft_matches_naive(name, p, h):
    mod = kernels.backends()[name]
    rng = np.random.default_rng(p * h)
    vals = rng.normal(size=(3, p**h)) + 1j * rng.normal(size=(3, p**h))
    got = mod.coset_dft(vals, p, h)
    for row, out in zip(vals, got):
        assert np.allclose(out, naive_dft(row, p, h), atol=1e-12)


@pytest.mark.parametrize("name", BACKENDS)
def test_coset_dft_leaves_input_alone(name):
    vals = np.arange(9, dtype=complex)[None]
    kernels.backends()[name].coset_dft(vals, 3, 2)
    assert (vals == np.arange(9)).all()


@pytest.mark.parametrize("name", BACKENDS)
@pytest.mark.parametrize("p,r,t", [(3, 3, 1), (5, 4, 2), (2, 6, 1)])
def test_coset_members(name, p, r, t):
    d = build_design(p, r, t)
    h = d.params.h
    mod = kernels.backends()[name]
    labels = all_vectors(p, h)
    for j in range(d.params.n):
        got = mod.coset_members(d.family.inverse[j], labels, p)
        for lam, row in zip(labels, got):
            # members of the label class: y with B_j y = lam
            want = [int(encode(y, p)) for y in all_vectors(p, r) if ((d.family.bases[j] @ y - lam) % p == 0).all()]
            assert sorted(row.tolist()) == want


@pytest.mark.parametrize("name", BACKENDS)
def test_decoder_matches_loop(name):
    mod = kernels.backends()[name]
    rng = np.random.default_rng(4)
    for p in [5, 7, 11, 13, 31, 101]:
        K = exponent_set(p)
        rows = rng.normal(size=(200, len(K))) + 1j * rng.normal(size=(200, len(K)))
        rows[:5] = 0
        rows[5:10, 0] = 0
        got = mod.decode_one_sparse_batch(rows, p)
        assert got.tolist() == [oracles.decode_loop(list(r_), K, p) for r_ in rows]


def test_backends_agree_end_to_end():
    if len(BACKENDS) < 2:
        pytest.skip("compiled backend not built")
    d = build_design(5, 4, 2)
    rng = np.random.default_rng(0)
    specs = [random_sparse_spectrum(5, 4, 5, rng) for _ in range(5)]
    results = {}
    try:
        for name in BACKENDS:
            kernels.use(name)
            results[name] = [
                reconstruct(sample_signal(s, d.sampling_set(v)), d, v).spectrum for s in specs for v in ("gamma1", "gamma2")
            ]
    finally:
        kernels.use(kernels.BACKEND if kernels.BACKEND in BACKENDS else "python")
    a, b = results["cython"], results["python"]
    for x, y in zip(a, b):
        assert x.support() == y.support()
        assert x.l1_distance(y) < 1e-12


def test_use_rejects_unknown():
    with pytest.raises(ValueError):
        kernels.use("fortran")
