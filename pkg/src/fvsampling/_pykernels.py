"""Reference (numpy) implementations of the hot kernels.

Every function here has a twin in ``_ckernels.pyx`` with the same
signature and the same output up to floating point round-off.
"""

import numpy as np

ZERO_TOL = 1e-12


def coset_dft(values, p, h):
    """Normalised forward DFT of each row over F_p^h.

    Row entries are indexed by the big-endian code of the coefficient tuple
    c in F_p^h; output entry lam is ``p**-h * sum_c v[c] * w**(-<c, lam>)``
    with ``w = exp(2 pi i / p)``.
    """
    v = np.asarray(values, dtype=np.complex128)
    n = v.shape[0]
    if h == 0:
        return v.copy()
    cube = v.reshape((n,) + (p,) * h)
    out = np.fft.fftn(cube, axes=tuple(range(1, h + 1)))
    return out.reshape(n, p**h) / p**h


def coset_members(minv, labels, p):
    """Codes of every label y with ``B y == lam`` for each row lam of labels.

    ``minv`` is the inverse of the solve matrix whose first h rows span H;
    the coset is ``{minv @ (lam, u) : u in F_p^(r-h)}``, enumerated with u in
    lexicographic order.
    """
    minv = np.asarray(minv, dtype=np.int64)
    labels = np.asarray(labels, dtype=np.int64)
    r = minv.shape[0]
    h = labels.shape[1]
    k = r - h
    if k:
        u = np.indices((p,) * k).reshape(k, -1).T
    else:
        u = np.zeros((1, 0), dtype=np.int64)
    base = labels @ minv[:, :h].T % p  # (N, r)
    fiber = u @ minv[:, h:].T % p  # (p^k, r)
    pts = (base[:, None, :] + fiber[None, :, :]) % p
    weights = p ** np.arange(r - 1, -1, -1, dtype=np.int64)
    return pts @ weights


def decode_one_sparse_batch(values, p):
    """Dominant frequency of each row of samples on K = [0, 1, 2, ..., 2^k].

    Runs the elimination rule row by row: drop every j for which some
    ``| p b_l / (2 pi) - 2^l j |_p >= p / 6``; return the smallest survivor
    or 0 when nothing survives.
    """
    v = np.asarray(values, dtype=np.complex128)
    n, width = v.shape
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    powers = 2.0 ** np.arange(width - 1)
    f0 = v[:, :1]
    fl = v[:, 1:]
    zero = (np.abs(f0) < ZERO_TOL) | (np.abs(fl) < ZERO_TOL)
    with np.errstate(divide="ignore", invalid="ignore"):
        b = np.mod(np.angle(fl / np.where(np.abs(f0) < ZERO_TOL, 1.0, f0)), 2 * np.pi)
    b = np.where(zero, 0.0, b)
    j = np.arange(p, dtype=np.float64)
    x = p * b[:, :, None] / (2 * np.pi) - powers[None, :, None] * j[None, None, :]
    d = np.mod(x, p)
    d = np.minimum(d, p - d)
    eliminated = (d >= p / 6).any(axis=1)  # (N, p)
    alive = ~eliminated
    first = np.argmax(alive, axis=1)
    return np.where(alive.any(axis=1), first, 0).astype(np.int64)
