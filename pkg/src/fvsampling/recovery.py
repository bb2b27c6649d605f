"""Sparse Fourier reconstruction from samples on the two sampling sets.

``reconstruct_gamma1`` votes with whole H_j^perp-cosets and therefore
touches p^(r-h) labels per selected coset.  ``reconstruct_gamma2`` instead
pins down one label per selected coset by running the 1-sparse decoder on
the shifted-coset transforms.  Both finish with a componentwise median over
the n coset transforms and keep the t largest estimates.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .field import decode, encode
from .spectral import AMPLITUDE_TOL, SampleTable, SparseSpectrum, coset_label_codes


class EvenLength(ValueError):
    pass


@dataclass
class RecoveryReport:
    spectrum: SparseSpectrum
    variant: str
    selected: list = field(default_factory=list)  # per j: selected label codes in F_p^h
    votes: dict = field(default_factory=dict)  # label code in F_p^r -> count (candidates only)
    candidates: np.ndarray = None  # label codes that passed the vote
    median_inputs: np.ndarray = None  # (len(candidates), n) coset values


def median_complex(values) -> complex:
    """Median of the real parts plus i times the median of the imaginary parts."""
    v = np.asarray(values, dtype=np.complex128)
    if v.size % 2 == 0:
        raise EvenLength("median needs an odd number of values")
    return complex(_median_rows(v[None, :])[0])


def _median_rows(x: np.ndarray) -> np.ndarray:
    mid = x.shape[-1] // 2
    re = np.sort(x.real, axis=-1)[..., mid]
    im = np.sort(x.imag, axis=-1)[..., mid]
    return re + 1j * im


def _largest(mags: np.ndarray, count: int) -> np.ndarray:
    # magnitude descending, index (= lexicographic label) ascending on ties
    order = np.argsort(-mags, kind="stable")
    return order[:count]


def decode_one_sparse(values, K, p: int) -> int:
    """Dominant frequency y' in F_p of x -> sum_y a_y w^(xy), from samples on K.

    ``values`` maps each element of K to the sample there (dict or sequence
    aligned with K).  Correct whenever |a_y'| > 2 sum_{y != y'} |a_y|.
    """
    if isinstance(values, dict):
        row = [values[k] for k in K]
    else:
        row = list(values)
    if len(row) != len(K):
        raise ValueError("need one sample per element of K")
    return int(kernels.decode_one_sparse_batch(np.array([row], dtype=np.complex128), p)[0])


def solve_character(design, j: int, label, u) -> tuple:
    """The unique w with <b_k, w> = label_k and <x_l, w> = u_l (0-based j)."""
    v = np.concatenate([np.asarray(label, dtype=np.int64), np.asarray(u, dtype=np.int64)])
    w = design.family.inverse[j] @ v % design.p
    return tuple(int(c) for c in w)


def _coset_transforms(samples: SampleTable, sset, p: int, h: int) -> np.ndarray:
    vals = samples.gather(sset.cosets)  # (n, S, p^h)
    n, s, size = vals.shape
    return kernels.coset_dft(vals.reshape(n * s, size), p, h).reshape(n, s, size)


def _finish(design, c0: np.ndarray, cand_codes: np.ndarray, variant: str, selected, votes) -> RecoveryReport:
    p, r, t = design.p, design.r, design.params.t
    cand_codes = np.sort(np.asarray(cand_codes, dtype=np.int64))
    if cand_codes.size == 0:
        return RecoveryReport(SparseSpectrum(p, r), variant, selected, votes, cand_codes, np.zeros((0, c0.shape[0]), complex))
    ys = decode(cand_codes, p, r)
    lab = coset_label_codes(design.family.bases, ys, p)  # (n, L)
    x = np.take_along_axis(c0, lab, axis=1).T  # (L, n)
    est = _median_rows(x)
    keep = _largest(np.abs(est), t)
    keep = keep[np.abs(est[keep]) >= AMPLITUDE_TOL]
    spec = SparseSpectrum.from_arrays(p, r, ys[keep], est[keep])
    return RecoveryReport(spec, variant, selected, votes, cand_codes, x)


def reconstruct_gamma1(samples: SampleTable, design) -> RecoveryReport:
    prm = design.params
    p, h = prm.p, prm.h
    sset = design.gamma1()
    c0 = _coset_transforms(samples, sset, p, h)[:, 0, :]  # (n, p^h)
    width = min(2 * prm.t - 1, c0.shape[1])
    selected, members = [], []
    for j in range(prm.n):
        sel = _largest(np.abs(c0[j]), width)
        selected.append(sel)
        members.append(kernels.coset_members(design.family.inverse[j], decode(sel, p, h), p).ravel())
    codes, counts = np.unique(np.concatenate(members), return_counts=True)
    passed = counts > prm.threshold
    votes = dict(zip(codes[passed].tolist(), counts[passed].tolist()))
    return _finish(design, c0, codes[passed], "gamma1", selected, votes)


def reconstruct_gamma2(samples: SampleTable, design) -> RecoveryReport:
    prm = design.params
    p, r, h = prm.p, prm.r, prm.h
    sset = design.gamma2()
    K = design.K
    c = _coset_transforms(samples, sset, p, h)  # (n, S, p^h)
    c0 = c[:, 0, :]
    width = min(2 * prm.t - 1, c0.shape[1])
    selected = [_largest(np.abs(c0[j]), width) for j in range(prm.n)]
    sel = np.array(selected, dtype=np.int64)  # (n, width)
    nl = r - h
    if nl:
        cols = np.array([[sset.shift_index(l, k) for k in K] for l in range(nl)])  # (nl, |K|)
        # rows a -> c_{j, a x_l}(lam) for every (j, lam, l)
        rows = c[np.arange(prm.n)[:, None, None, None], cols[None, None, :, :], sel[:, :, None, None]]
        u = kernels.decode_one_sparse_batch(rows.reshape(-1, len(K)), p).reshape(prm.n, width, nl)
    else:
        u = np.zeros((prm.n, width, 0), dtype=np.int64)
    v = np.concatenate([decode(sel, p, h), u], axis=2)  # (n, width, r)
    w = np.einsum("jab,jsb->jsa", design.family.inverse, v) % p
    wcodes = encode(w, p)
    tally = Counter()
    z = []
    for code in wcodes.ravel().tolist():
        tally[code] += 1
        if tally[code] == prm.threshold + 1:
            z.append(code)
    votes = {k: tally[k] for k in z}
    return _finish(design, c0, np.array(z, dtype=np.int64), "gamma2", selected, votes)


def reconstruct(samples: SampleTable, design, variant: str) -> RecoveryReport:
    if variant == "gamma1":
        return reconstruct_gamma1(samples, design)
    if variant == "gamma2":
        return reconstruct_gamma2(samples, design)
    raise ValueError(f"unknown variant {variant!r}")
