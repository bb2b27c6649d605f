"""Arithmetic over F_p and F_q = F_{p^h}, plus dense linear algebra mod p.

Vectors of F_p^r are plain tuples of ints in ``range(p)``; matrices are
``int64`` numpy arrays with entries reduced mod p.  Elements of F_q are
:class:`ExtFieldElement` instances holding ``h`` coefficients
``b_0 + b_1 z + ... + b_{h-1} z^{h-1}`` modulo a fixed monic irreducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

FpVector = tuple  # tuple[int, ...] with entries in range(p)


class SingularMatrix(ValueError):
    """Raised when a linear solve or inversion hits a singular matrix mod p."""


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


# ---------------------------------------------------------------------------
# polynomials over F_p, little-endian coefficient lists, no trailing zeros

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, m, p):
    a = _trim(a)
    m = _trim(m)
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = (a[-1] * inv_lead) % p
        shift = len(a) - len(m)
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a = _trim(a)
    return a


def _poly_mulmod(a, b, m, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_mod(out, m, p)


def _poly_gcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _poly_powmod(base, e, m, p):
    result = [1]
    base = _poly_mod(base, m, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, m, p)
        base = _poly_mulmod(base, base, m, p)
        e >>= 1
    return result


def is_irreducible(poly, p: int) -> bool:
    """Ben-Or test: a monic f of degree h is irreducible over F_p iff
    gcd(z^(p^i) - z, f) = 1 for all 1 <= i <= h // 2."""
    f = _trim(poly)
    h = len(f) - 1
    if h < 1:
        return False
    if h == 1:
        return True
    if f[0] == 0:
        return False
    # cheap exhaustive root test first
    for x in range(p):
        acc = 0
        for c in reversed(f):
            acc = (acc * x + c) % p
        if acc == 0:
            return False
    zp = [0, 1]
    for _ in range(h // 2):
        zp = _poly_powmod(zp, p, f, p)
        diff = list(zp) + [0] * max(0, 2 - len(zp))
        diff[1] = (diff[1] - 1) % p
        g = _poly_gcd(f, diff, p)
        if len(g) > 1:
            return False
    return True


def find_irreducible(p: int, h: int) -> tuple:
    """Smallest monic irreducible of degree h over F_p.

    Candidates are scanned with the constant term varying fastest, i.e. in
    increasing order of ``sum(c_i * p**i)`` over the non-leading
    coefficients.  Returns little-endian coefficients including the
    leading 1.
    """
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if h < 1:
        raise ValueError("h must be positive")
    for code in range(p**h):
        low = [(code // p**i) % p for i in range(h)]
        cand = low + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("unreachable: irreducibles exist for every degree")


# ---------------------------------------------------------------------------
# extension field


class ExtField:
    """The field F_{p^h} realised as F_p[z] / (modulus)."""

    def __init__(self, p: int, h: int, modulus=None):
        self.p = p
        self.h = h
        self.modulus = tuple(modulus) if modulus is not None else find_irreducible(p, h)
        if len(self.modulus) != h + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree h")

    @property
    def q(self) -> int:
        return self.p**self.h

    def __eq__(self, other):
        return (
            isinstance(other, ExtField)
            and (self.p, self.h, self.modulus) == (other.p, other.h, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.h, self.modulus))

    def __repr__(self):
        return f"ExtField(p={self.p}, h={self.h}, modulus={self.modulus})"

    def __call__(self, coeffs) -> "ExtFieldElement":
        if isinstance(coeffs, int):
            coeffs = [coeffs]
        coeffs = [c % self.p for c in coeffs]
        if len(coeffs) > self.h:
            coeffs = _poly_mod(coeffs, list(self.modulus), self.p)
        coeffs = list(coeffs) + [0] * (self.h - len(coeffs))
        return ExtFieldElement(tuple(coeffs), self)

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def generator(self):
        """The class of z.  For h == 1 this is the residue 0."""
        return self([0, 1])

    def from_index(self, idx: int) -> "ExtFieldElement":
        return ExtFieldElement(tuple((idx // self.p**i) % self.p for i in range(self.h)), self)

    def elements(self):
        """All q elements, coefficient-lexicographic with b_0 varying fastest."""
        return [self.from_index(i) for i in range(self.q)]


@dataclass(frozen=True)
class ExtFieldElement:
    coeffs: tuple
    field: ExtField

    def _check(self, other):
        if not isinstance(other, ExtFieldElement):
            return self.field(other)
        if other.field != self.field:
            raise ValueError("elements belong to different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        p = self.field.p
        return ExtFieldElement(tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)), self.field)

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return ExtFieldElement(tuple((-a) % p for a in self.coeffs), self.field)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        other = self._check(other)
        f = self.field
        prod = _poly_mulmod(_trim(self.coeffs), _trim(other.coeffs), list(f.modulus), f.p)
        return f(prod) if prod else f.zero()

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in F_q")
        return self ** (self.field.q - 2)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
                terms.append(f"{c}{mono}" if c != 1 or i == 0 else mono)
        return " + ".join(terms) if terms else "0"


def ext_arith(a: ExtFieldElement, b: ExtFieldElement, op: str) -> ExtFieldElement:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# linear algebra mod p


def as_matrix(rows, p: int, ncols: int | None = None) -> np.ndarray:
    """Stack vectors into an int64 matrix reduced mod p."""
    rows = list(rows)
    if not rows:
        return np.zeros((0, ncols or 0), dtype=np.int64)
    return np.asarray(rows, dtype=np.int64).reshape(len(rows), -1) % p


def row_reduce(mat, p: int):
    """Reduced row echelon form over F_p.

    Returns ``(rref, pivot_columns)``; rref has only the nonzero rows.
    """
    a = np.array(mat, dtype=np.int64) % p
    if a.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    nrows, ncols = a.shape
    pivots = []
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        nz = np.nonzero(a[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + nz[0]
        if piv != row:
            a[[row, piv]] = a[[piv, row]]
        a[row] = (a[row] * pow(int(a[row, col]), p - 2, p)) % p
        factors = a[:, col].copy()
        factors[row] = 0
        a = (a - np.outer(factors, a[row])) % p
        pivots.append(col)
        row += 1
    return a[:row], pivots


def rank_and_span(vectors, p: int, r: int | None = None):
    """Rank of the F_p-span of ``vectors`` and a reduced row-echelon basis.

    The basis is returned as a list of tuples.
    """
    vectors = list(vectors)
    if not vectors:
        return 0, []
    rref, _ = row_reduce(as_matrix(vectors, p, r), p)
    return rref.shape[0], [tuple(int(c) for c in row) for row in rref]


def rank(mat, p: int) -> int:
    mat = np.asarray(mat)
    if mat.size == 0:
        return 0
    return row_reduce(mat, p)[0].shape[0]


def complete_basis(basis, r: int, p: int) -> list:
    """Standard basis vectors e_1, e_2, ... (in index order) that extend
    ``basis`` to a basis of F_p^r, each chosen only if it enlarges the span."""
    current = [tuple(v) for v in basis]
    k = rank(as_matrix(current, p, r), p) if current else 0
    if k != len(current):
        raise ValueError("input vectors are not linearly independent")
    added = []
    for j in range(r):
        if k == r:
            break
        e = tuple(1 if i == j else 0 for i in range(r))
        trial = rank(as_matrix(current + [e], p, r), p)
        if trial > k:
            current.append(e)
            added.append(e)
            k = trial
    return added


def inverse_mod(mat, p: int) -> np.ndarray:
    """Inverse of a square matrix over F_p via Gauss-Jordan on [M | I]."""
    m = np.asarray(mat, dtype=np.int64) % p
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("matrix must be square")
    aug = np.concatenate([m, np.eye(n, dtype=np.int64)], axis=1)
    rref, pivots = row_reduce(aug, p)
    if rref.shape[0] < n or pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is singular mod p")
    return rref[:, n:].copy()


def solve_linear(mat, v, p: int) -> tuple:
    """Return w with ``mat @ w == v`` (mod p); raises SingularMatrix."""
    minv = inverse_mod(mat, p)
    w = minv @ (np.asarray(v, dtype=np.int64) % p) % p
    return tuple(int(c) for c in w)


def matvec(mat, v, p: int) -> tuple:
    return tuple(int(c) for c in (np.asarray(mat, dtype=np.int64) @ np.asarray(v, dtype=np.int64)) % p)


def all_vectors(p: int, r: int) -> np.ndarray:
    """Every point of F_p^r as rows, lexicographic (last coordinate fastest)."""
    if r == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(itertools.product(range(p), repeat=r)), dtype=np.int64)


def encode(points, p: int) -> np.ndarray:
    """Integer code of each row, big-endian base p (matches :func:`all_vectors` order)."""
    pts = np.asarray(points, dtype=np.int64)
    r = pts.shape[-1]
    weights = p ** np.arange(r - 1, -1, -1, dtype=np.int64)
    return pts @ weights


def decode(codes, p: int, r: int) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.int64)
    out = np.empty(codes.shape + (r,), dtype=np.int64)
    c = codes.copy()
    for k in range(r - 1, -1, -1):
        out[..., k] = c % p
        c //= p
    return out
