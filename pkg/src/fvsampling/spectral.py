"""Characters of F_p^r, the brute-force DFT oracle, and subgroup transforms.

Conventions: ``chi_y(x) = w^<x, y>`` with ``w = exp(2 pi i / p)``;
``f_hat(y) = p^-r sum_x f(x) conj(chi_y(x))`` so that
``f = sum_y f_hat(y) chi_y``.  Subgroup transforms use the same pairing with
normalisation ``p^-h``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .field import all_vectors, decode, encode

AMPLITUDE_TOL = 1e-12


class MissingSamples(KeyError):
    """A required sample point is absent from the table."""

    def __init__(self, point):
        self.point = tuple(int(c) for c in point)
        super().__init__(f"missing sample at point {self.point}")

    def __str__(self):
        return self.args[0]


def roots_of_unity(p: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(p) / p)


def evaluate_character(y, x, p: int) -> complex:
    e = int(np.dot(np.asarray(y, dtype=np.int64), np.asarray(x, dtype=np.int64)) % p)
    return complex(roots_of_unity(p)[e])


@dataclass
class SparseSpectrum:
    """Finitely supported map from character labels (tuples) to amplitudes."""

    p: int
    r: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {
            tuple(int(c) % self.p for c in y): complex(a)
            for y, a in self.terms.items()
            if abs(a) >= AMPLITUDE_TOL
        }
        for y in self.terms:
            if len(y) != self.r:
                raise ValueError(f"label {y} has length {len(y)}, expected {self.r}")

    @classmethod
    def from_arrays(cls, p, r, labels, amps):
        labels = np.asarray(labels, dtype=np.int64).reshape(-1, r)
        terms = {}
        for y, a in zip(labels, np.asarray(amps).ravel()):
            key = tuple(int(c) for c in y)
            terms[key] = terms.get(key, 0) + complex(a)
        return cls(p, r, terms)

    @classmethod
    def from_dense(cls, p, r, amps):
        amps = np.asarray(amps).ravel()
        keep = np.nonzero(np.abs(amps) >= AMPLITUDE_TOL)[0]
        return cls.from_arrays(p, r, decode(keep, p, r), amps[keep])

    def __len__(self):
        return len(self.terms)

    def __getitem__(self, y):
        return self.terms.get(tuple(y), 0j)

    def support(self) -> list:
        return sorted(self.terms)

    def labels(self) -> np.ndarray:
        return np.array(self.support(), dtype=np.int64).reshape(-1, self.r)

    def amplitudes(self) -> np.ndarray:
        return np.array([self.terms[y] for y in self.support()], dtype=np.complex128)

    def dense(self) -> np.ndarray:
        out = np.zeros(self.p**self.r, dtype=np.complex128)
        if self.terms:
            out[encode(self.labels(), self.p)] = self.amplitudes()
        return out

    def l1_norm(self) -> float:
        return float(sum(abs(a) for a in self.terms.values()))

    def l1_distance(self, other: "SparseSpectrum") -> float:
        keys = set(self.terms) | set(other.terms)
        return float(sum(abs(self[k] - other[k]) for k in keys))

    def __add__(self, other: "SparseSpectrum") -> "SparseSpectrum":
        out = dict(self.terms)
        for k, a in other.terms.items():
            out[k] = out.get(k, 0) + a
        return SparseSpectrum(self.p, self.r, out)


@dataclass
class SampleTable:
    """Signal values on a set of points, stored as sorted point codes."""

    p: int
    r: int
    codes: np.ndarray
    values: np.ndarray
    variant: str = ""

    def __post_init__(self):
        codes = np.asarray(self.codes, dtype=np.int64)
        order = np.argsort(codes, kind="stable")
        self.codes = codes[order]
        self.values = np.asarray(self.values, dtype=np.complex128)[order]
        if len(self.codes) > 1 and (np.diff(self.codes) == 0).any():
            raise ValueError("duplicate sample points")

    @classmethod
    def from_dict(cls, p, r, mapping, variant=""):
        pts = list(mapping)
        codes = encode(np.array(pts, dtype=np.int64).reshape(-1, r), p) if pts else np.zeros(0, np.int64)
        return cls(p, r, codes, np.array([mapping[x] for x in pts], dtype=np.complex128), variant)

    def __len__(self):
        return len(self.codes)

    def points(self) -> np.ndarray:
        return decode(self.codes, self.p, self.r)

    def as_dict(self) -> dict:
        return {tuple(int(c) for c in x): complex(v) for x, v in zip(self.points(), self.values)}

    def __getitem__(self, point):
        return complex(self.gather(encode(np.asarray([point]), self.p))[0])

    def gather(self, codes) -> np.ndarray:
        """Values at the given point codes (any shape); raises MissingSamples."""
        codes = np.asarray(codes, dtype=np.int64)
        flat = codes.ravel()
        pos = np.searchsorted(self.codes, flat)
        pos_c = np.minimum(pos, max(len(self.codes) - 1, 0))
        ok = (pos < len(self.codes)) & (self.codes[pos_c] == flat) if len(self.codes) else np.zeros(flat.shape, bool)
        if not ok.all():
            bad = flat[np.argmin(ok)]
            raise MissingSamples(decode(bad, self.p, self.r))
        return self.values[pos_c].reshape(codes.shape)


@dataclass
class CosetSpectrum:
    """Transform over H_j of x -> f(shift + x), indexed by the label code in F_p^h."""

    j: int
    shift: tuple
    values: np.ndarray


# ---------------------------------------------------------------------------


def full_dft_oracle(f, p: int, r: int, chunk: int = 512) -> SparseSpectrum:
    """Direct-summation transform of a complete table on F_p^r.

    ``f`` is a SampleTable covering all p^r points or a length p^r array in
    lexicographic point order.  O(p^(2r)); for tests only.
    """
    if isinstance(f, SampleTable):
        if len(f) != p**r:
            raise ValueError("oracle needs the complete value table")
        vals = f.values  # sorted codes == lexicographic order
    else:
        vals = np.asarray(f, dtype=np.complex128).ravel()
        if vals.size != p**r:
            raise ValueError("oracle needs the complete value table")
    xs = all_vectors(p, r)
    conj_w = np.conj(roots_of_unity(p))
    out = np.empty(p**r, dtype=np.complex128)
    for start in range(0, p**r, chunk):
        ys = xs[start : start + chunk]
        out[start : start + chunk] = conj_w[(ys @ xs.T) % p] @ vals
    return SparseSpectrum.from_dense(p, r, out / p**r)


def synthesize_samples(spec: SparseSpectrum, points, chunk: int = 4096, variant: str = "") -> SampleTable:
    """f(x) = sum_y spec(y) chi_y(x) at each requested point, by direct summation.

    ``points`` may be an array of point codes or of coordinate rows.
    """
    p, r = spec.p, spec.r
    pts = np.asarray(points, dtype=np.int64)
    codes = pts if pts.ndim == 1 else encode(pts.reshape(-1, r), p)
    rows = decode(codes, p, r)
    vals = np.zeros(len(codes), dtype=np.complex128)
    if len(spec):
        w = roots_of_unity(p)
        ys, amps = spec.labels(), spec.amplitudes()
        for start in range(0, len(codes), chunk):
            blk = rows[start : start + chunk]
            vals[start : start + chunk] = w[(blk @ ys.T) % p] @ amps
    return SampleTable(p, r, codes, vals, variant)


def synthesize_dense(spec: SparseSpectrum) -> np.ndarray:
    """The full table of f on F_p^r (lexicographic order) via an inverse FFT."""
    p, r = spec.p, spec.r
    cube = spec.dense().reshape((p,) * r)
    return (np.fft.ifftn(cube) * p**r).ravel()


def sample_signal(spec: SparseSpectrum, sset, dense_threshold: int = 64) -> SampleTable:
    """Samples of f on a SamplingSet; dense spectra go through the full-grid FFT."""
    if len(spec) > dense_threshold:
        table = synthesize_dense(spec)
        return SampleTable(spec.p, spec.r, sset.points, table[sset.points], sset.variant)
    return synthesize_samples(spec, sset.points, variant=sset.variant)


def annihilator_contains(h_basis, y, p: int) -> bool:
    """True iff <b, y> = 0 mod p for every basis vector b of H."""
    b = np.asarray(h_basis, dtype=np.int64)
    if b.size == 0:
        return True
    return bool(((b.reshape(-1, len(y)) @ np.asarray(y, dtype=np.int64)) % p == 0).all())


def coset_label(design, j: int, y) -> tuple:
    """(<b_1, y>, ..., <b_h, y>) mod p over the basis of H_j (0-based j)."""
    b = design.family.bases[j]
    return tuple(int(c) for c in (b @ np.asarray(y, dtype=np.int64)) % design.p)


def coset_label_codes(bases, ys, p: int) -> np.ndarray:
    """Label codes of every row of ``ys`` for every subspace: shape (n, len(ys))."""
    labels = np.einsum("jkr,yr->jyk", np.asarray(bases, dtype=np.int64), np.asarray(ys, dtype=np.int64)) % p
    return encode(labels, p)


def subgroup_dft(samples: SampleTable, design, j: int, shift=None) -> CosetSpectrum:
    """Transform over H_j of y -> f(shift + y), labels indexed via B_j."""
    p, r, h = design.p, design.r, design.params.h
    b = design.family.bases[j]
    shift = np.zeros(r, dtype=np.int64) if shift is None else np.asarray(shift, dtype=np.int64) % p
    pts = (shift[None, :] + all_vectors(p, h) @ b) % p
    vals = samples.gather(encode(pts, p))
    out = kernels.coset_dft(vals[None, :], p, h)[0]
    return CosetSpectrum(j, tuple(int(c) for c in shift), out)


def random_sparse_spectrum(p: int, r: int, t: int, rng) -> SparseSpectrum:
    """t distinct labels with standard complex normal amplitudes."""
    t = min(t, p**r)
    codes = rng.choice(p**r, size=t, replace=False)
    amps = rng.normal(size=t) + 1j * rng.normal(size=t)
    return SparseSpectrum.from_arrays(p, r, decode(codes, p, r), amps)


def random_noise(p: int, r: int, budget: float, exclude: SparseSpectrum, rng) -> SparseSpectrum:
    """Noise of l1 mass ``budget`` spread uniformly (Dirichlet) over a random
    number of random labels outside the support of ``exclude``."""
    if budget <= 0:
        return SparseSpectrum(p, r)
    taken = set(encode(exclude.labels(), p).tolist()) if len(exclude) else set()
    free = np.array([c for c in range(p**r) if c not in taken], dtype=np.int64)
    if free.size == 0:
        raise ValueError("no off-support labels left for noise")
    count = int(rng.integers(1, free.size + 1))
    codes = rng.choice(free, size=count, replace=False)
    mass = rng.dirichlet(np.ones(count)) * budget
    phase = np.exp(2j * np.pi * rng.random(count))
    return SparseSpectrum.from_arrays(p, r, decode(codes, p, r), mass * phase)
