"""Slow reference implementations used only by the tests.

They share no code with the package beyond the point encoding, so a bug in
the vectorised paths cannot hide in both.
"""

import cmath
import itertools
import math


def omega(p, e):
    return cmath.exp(2j * math.pi * (e % p) / p)


def dot(x, y, p):
    return sum(a * b for a, b in zip(x, y)) % p


def points(p, r):
    return list(itertools.product(range(p), repeat=r))


def evaluate(terms, x, p):
    """f(x) = sum_y a_y w^<x,y> for a dict spectrum."""
    return sum(a * omega(p, dot(x, y, p)) for y, a in terms.items())


def in_annihilator(basis, y, p):
    return all(dot(b, y, p) == 0 for b in basis)


def coset_sum(terms, basis, z, shift, p):
    """sum of a_y chi_y(shift) over y in z + H^perp."""
    total = 0j
    for y, a in terms.items():
        diff = tuple((yi - zi) % p for yi, zi in zip(y, z))
        if in_annihilator(basis, diff, p):
            total += a * omega(p, dot(shift, y, p))
    return total


def neighbour_mass(terms, basis, z, p):
    """sum of |a_y| over y in z + H^perp with y != z."""
    total = 0.0
    for y, a in terms.items():
        if y == tuple(z):
            continue
        diff = tuple((yi - zi) % p for yi, zi in zip(y, z))
        if in_annihilator(basis, diff, p):
            total += abs(a)
    return total


def pdist(x, p):
    d = x % p
    return min(d, p - d)


def decode_loop(samples, K, p):
    """Literal elimination loop for the 1-sparse decoder; samples aligned with K."""
    f0 = samples[0]
    alive = set(range(p))
    for l in range(len(K) - 1):
        fl = samples[l + 1]
        if abs(f0) < 1e-12 or abs(fl) < 1e-12:
            b = 0.0
        else:
            b = cmath.phase(fl / f0) % (2 * math.pi)
        for j in list(alive):
            if pdist(p * b / (2 * math.pi) - 2**l * j, p) >= p / 6:
                alive.discard(j)
    return min(alive) if alive else 0
