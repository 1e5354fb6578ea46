"""Closed-form end-to-end quantities for Werner and Bell-diagonal chains.

Every formula reduces to two per-chain quantities: the surviving Werner
visibility and the surviving Bell-diagonal correlation triple.  Each
measuring node contributes a factor eta_i / (4 - 3 eta_i), so a chain of
n swaps scales its family parameters by prod eta_i / prod(4 - 3 eta_i).
The product form is equivalent to the expansion over subsets of failed
nodes (see :func:`subset_sum_normalization`) because
4 - 3 eta = eta + 4 (1 - eta).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .errors import DomainError
from .measures import concurrence_bds
from .states import BdsParams
from .swap import NoiseModel

#: Returned by max_entangled_swaps when no number of swaps kills entanglement.
UNBOUNDED = math.inf

# Relative slack on the entanglement inequality; boundary equality counts
# as not entangled.
_SLACK = 1e-12


@dataclass(frozen=True)
class WernerChainQuery:
    """n+1 link visibilities plus n per-node success probabilities."""

    ps: tuple[float, ...]
    etas: NoiseModel

    def __post_init__(self):
        object.__setattr__(self, "ps", tuple(float(p) for p in self.ps))
        if not isinstance(self.etas, NoiseModel):
            object.__setattr__(self, "etas", NoiseModel(tuple(self.etas)))
        if len(self.ps) != len(self.etas) + 1:
            raise DomainError(
                f"{len(self.ps)} links require {len(self.ps) - 1} eta values, "
                f"got {len(self.etas)}"
            )
        for p in self.ps:
            if not 0.0 <= p <= 1.0:
                raise DomainError(f"visibility must lie in [0, 1], got {p}")


@dataclass(frozen=True)
class BdsChainQuery:
    """n+1 link correlation triples plus n per-node success probabilities."""

    ts: tuple[BdsParams, ...]
    etas: NoiseModel

    def __post_init__(self):
        object.__setattr__(
            self,
            "ts",
            tuple(t if isinstance(t, BdsParams) else BdsParams(*t) for t in self.ts),
        )
        if not isinstance(self.etas, NoiseModel):
            object.__setattr__(self, "etas", NoiseModel(tuple(self.etas)))
        if len(self.ts) != len(self.etas) + 1:
            raise DomainError(
                f"{len(self.ts)} links require {len(self.ts) - 1} eta values, "
                f"got {len(self.etas)}"
            )


def _node_scale(etas: NoiseModel) -> float:
    scale = 1.0
    for eta in etas.etas:
        scale *= eta / (4.0 - 3.0 * eta)
    return scale


def werner_final_visibility(query: WernerChainQuery) -> float:
    """Visibility surviving the chain: prod(p_i) scaled per node by eta/(4-3 eta)."""
    p = 1.0
    for pi in query.ps:
        p *= pi
    return p * _node_scale(query.etas)


def werner_chain_concurrence(query: WernerChainQuery) -> float:
    """End-to-end concurrence max(0, (3 p_final - 1)/2) of a Werner chain."""
    return max(0.0, (3.0 * werner_final_visibility(query) - 1.0) / 2.0)


def werner_chain_fidelity(query: WernerChainQuery) -> float:
    """End-to-end teleportation fidelity (1 + p_final)/2 of a Werner chain."""
    return (1.0 + werner_final_visibility(query)) / 2.0


def bds_final_correlations(query: BdsChainQuery) -> BdsParams:
    """Correlation triple surviving a Bell-diagonal chain.

    Component-wise products of the link triples, with the middle component
    picking up one sign per swap, all scaled by the per-node noise factor:
    (scale prod t1, scale (-1)^n prod t2, scale prod t3).
    """
    n = len(query.etas)
    scale = _node_scale(query.etas)
    c1 = c2 = c3 = 1.0
    for t in query.ts:
        c1 *= t.t1
        c2 *= t.t2
        c3 *= t.t3
    return BdsParams(scale * c1, scale * (-1.0) ** n * c2, scale * c3)


def bds_chain_concurrence(query: BdsChainQuery) -> float:
    """End-to-end concurrence of a Bell-diagonal chain."""
    return concurrence_bds(bds_final_correlations(query))


def bds_chain_fidelity(query: BdsChainQuery) -> float:
    """End-to-end teleportation fidelity of a Bell-diagonal chain."""
    c = bds_final_correlations(query)
    return (1.0 + (abs(c.t1) + abs(c.t2) + abs(c.t3)) / 3.0) / 2.0


def eta_threshold() -> float:
    """Success probability at or below which a single swap never entangles: 2/3."""
    return 2.0 / 3.0


def visibility_product_threshold() -> float:
    """Product of link visibilities a perfect chain must exceed: 1/3."""
    return 1.0 / 3.0


def _entangled_after(n: int, eta: float, p: float) -> bool:
    # log-space form of 3 p^(n+1) eta^n > (4 - 3 eta)^n, robust for large n
    margin = (
        math.log(3.0)
        + (n + 1) * math.log(p)
        + n * (math.log(eta) - math.log(4.0 - 3.0 * eta))
    )
    return margin > _SLACK


def max_entangled_swaps(eta: float, p: float) -> int | float:
    """Largest number of swaps after which identical links stay entangled.

    Links share visibility p and every node succeeds with probability eta.
    Returns UNBOUNDED for the loss-free perfect chain (eta = p = 1) and 0
    when even a single swap breaks entanglement.
    """
    if not 0.0 < eta <= 1.0:
        raise DomainError(f"eta must lie in (0, 1], got {eta}")
    if not 1.0 / 3.0 < p <= 1.0:
        raise DomainError(f"p must lie in (1/3, 1], got {p}")
    if eta == 1.0 and p == 1.0:
        return UNBOUNDED
    # the survival margin shrinks by log((4-3 eta)/(eta p)) > 0 per swap;
    # seed the search near the analytic crossover, then settle it exactly
    per_swap = math.log(4.0 - 3.0 * eta) - math.log(eta) - math.log(p)
    n = max(0, int((math.log(3.0) + math.log(p)) / per_swap) - 2)
    while _entangled_after(n + 1, eta, p):
        n += 1
    while n > 0 and not _entangled_after(n, eta, p):
        n -= 1
    return n


def subset_sum_normalization(etas) -> float:
    """Chain normalization summed over every subset of failed nodes.

    Each subset S contributes 4^|S| prod_{i in S}(1 - eta_i)
    prod_{i not in S} eta_i.  Telescopes to prod_i (4 - 3 eta_i); kept as
    an independent route for cross-checks.
    """
    etas = tuple(float(e) for e in etas)
    terms = []
    for size in range(len(etas) + 1):
        for failed in combinations(range(len(etas)), size):
            term = 4.0 ** size
            for i, eta in enumerate(etas):
                term *= (1.0 - eta) if i in failed else eta
            terms.append(term)
    return math.fsum(terms)
