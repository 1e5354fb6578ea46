"""Entanglement and teleportation-usefulness measures for two-qubit states."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .states import BdsParams, _as_matrix, pauli_decompose

_YY = np.kron(
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
)

#: A state is useful as a teleportation channel only above this fidelity.
CLASSICAL_FIDELITY = 2.0 / 3.0


@dataclass(frozen=True)
class MeasureReport:
    """Concurrence and fidelity of a state plus the two threshold flags."""

    concurrence: float
    fidelity: float
    entangled: bool
    useful_for_teleportation: bool


def concurrence(state) -> float:
    """Spin-flip concurrence of a two-qubit state.

    C = max(0, sqrt(mu1) - sqrt(mu2) - sqrt(mu3) - sqrt(mu4)) where mu_i
    are the descending eigenvalues of rho (sy x sy) rho* (sy x sy) and the
    conjugate is entrywise in the computational basis.
    """
    m = _as_matrix(state)
    product = m @ _YY @ m.conj() @ _YY
    # abs() guards sqrt against fp-negative eigenvalues of the product
    mu = np.sqrt(np.abs(np.sort(np.linalg.eigvals(product).real)[::-1]))
    return max(0.0, mu[0] - mu[1] - mu[2] - mu[3])


def concurrence_werner(p: float) -> float:
    """Closed-form concurrence max(0, (3p - 1)/2) of a visibility-p state."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"visibility must lie in [0, 1], got {p}")
    return max(0.0, (3.0 * p - 1.0) / 2.0)


def concurrence_bds(params: BdsParams | tuple) -> float:
    """Closed-form concurrence of a Bell-diagonal state.

    Equals max(0, 2 L - 1) with L the largest Bell-basis eigenvalue.
    """
    if not isinstance(params, BdsParams):
        params = BdsParams(*(float(t) for t in params))
    return max(0.0, 2.0 * max(params.eigenvalues()) - 1.0)


def teleportation_fidelity(state) -> float:
    """Best average fidelity of standard teleportation through the state.

    F = (1 + N/3)/2 where N is the sum of the singular values of the
    correlation matrix T.  Singular values (not eigenvalues) keep the
    formula correct for correlation matrices with negative entries.
    """
    T = pauli_decompose(state).T
    n = np.linalg.svd(T, compute_uv=False).sum()
    return (1.0 + n / 3.0) / 2.0


def octahedron_separable(params: BdsParams | tuple) -> bool:
    """True iff |t1| + |t2| + |t3| <= 1 (the boundary counts as separable)."""
    if not isinstance(params, BdsParams):
        params = BdsParams(*(float(t) for t in params))
    return abs(params.t1) + abs(params.t2) + abs(params.t3) <= 1.0


def report(state) -> MeasureReport:
    """Bundle concurrence, fidelity and the strict threshold flags."""
    c = concurrence(state)
    f = teleportation_fidelity(state)
    return MeasureReport(c, f, c > 0.0, f > CLASSICAL_FIDELITY)
