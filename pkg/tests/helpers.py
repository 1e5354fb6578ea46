"""Shared test utilities.

The chain formulas here are deliberately written in their long display
forms (geometric sums, explicit subset sums, sorted eigenvalue lists) so
they provide an independent route against the package's reduced product
implementations.
"""

import math
from itertools import combinations

import numpy as np


def ginibre_matrix(rng):
    """Random density matrix rho = G G+ / Tr(G G+)."""
    g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    m = g @ g.conj().T
    return m / m.trace().real


def random_tetrahedron_point(rng):
    while True:
        t1, t2, t3 = rng.uniform(-1.0, 1.0, size=3)
        if (
            1 - t1 - t2 - t3 >= 0
            and 1 - t1 + t2 + t3 >= 0
            and 1 + t1 - t2 + t3 >= 0
            and 1 + t1 + t2 - t3 >= 0
        ):
            return (float(t1), float(t2), float(t3))


def prod(values):
    out = 1.0
    for v in values:
        out *= v
    return out


def geometric_tail(eta, n):
    """sum_{i=0}^{n-1} eta^(n-1-i) (eta + 4(1-eta))^i"""
    return math.fsum(eta ** (n - 1 - i) * (eta + 4.0 * (1.0 - eta)) ** i for i in range(n))


def failed_subset_tail(etas):
    """sum over non-empty failure subsets of 4^|S| prod(1-eta_S) prod(eta_rest)."""
    n = len(etas)
    terms = []
    for size in range(1, n + 1):
        for failed in combinations(range(n), size):
            term = 4.0 ** size
            for i, eta in enumerate(etas):
                term *= (1.0 - eta) if i in failed else eta
            terms.append(term)
    return math.fsum(terms)


def perfect_werner_concurrence(ps):
    return max(0.0, (3.0 * prod(ps) - 1.0) / 2.0)


def same_eta_werner_concurrence(p, eta, n):
    """Identical links, identical nodes, via the geometric-sum display form."""
    tail = 4.0 * (1.0 - eta) * geometric_tail(eta, n)
    norm = eta ** n + tail
    numerator = eta ** n * (3.0 * p ** (n + 1) - 1.0) - tail
    return max(0.0, numerator / (2.0 * norm))


def different_eta_werner_concurrence(ps, etas):
    """Different links, different nodes, via the subset-sum display form."""
    n = len(etas)
    tail = failed_subset_tail(etas)
    norm = prod(etas) + tail
    numerator = prod(etas) * (3.0 * prod(ps) - 1.0) - tail
    return max(0.0, numerator / (2.0 * norm))


def tripartite_ratio_werner_concurrence(p1, p2):
    """Single-swap display form written through the input concurrences."""
    c12 = (3.0 * p1 - 1.0) / 2.0
    c23 = (3.0 * p2 - 1.0) / 2.0
    ratio = 2.0 * (3.0 * p1 * p2 - 1.0) / ((3.0 * p1 - 1.0) * (3.0 * p2 - 1.0))
    return max(0.0, ratio * c12 * c23)


def different_eta_bds_concurrence(ts, etas):
    """Sorted-eigenvalue display form for a Bell-diagonal chain."""
    n = len(etas)
    tail = failed_subset_tail(etas)
    norm = prod(etas) + tail
    a = prod(t[0] for t in ts)
    b = prod(t[1] for t in ts)
    c = prod(t[2] for t in ts)
    sign_b = (-1.0) ** n * b
    raw = sorted(
        (
            prod(etas) * (1 + a - sign_b + c) + tail,
            prod(etas) * (1 - a + sign_b + c) + tail,
            prod(etas) * (1 + a + sign_b - c) + tail,
            prod(etas) * (1 - a - sign_b - c) + tail,
        ),
        reverse=True,
    )
    return max(0.0, (raw[0] - raw[1] - raw[2] - raw[3]) / (4.0 * norm))


def brute_min_eigenvalue(matrix):
    return float(np.linalg.eigvalsh((matrix + matrix.conj().T) / 2.0)[0])
