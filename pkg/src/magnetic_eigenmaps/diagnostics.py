"""Synchronization diagnostics, partition energies, holonomies and eigenvalue bounds.

Conventions: for a linked pair the transporter is ``t_ij = exp(i*theta_ij)``
with ``theta_ij = 2*pi*g*a_ji``.  A node potential ``h`` satisfies
``a_ij = h_j - h_i`` on every edge.  For a cotree pair ``(u, v)`` (``u < v``)
the fundamental cycle runs ``u -> v`` across the pair and back to ``u``
through the tree; its integer flux is ``a_uv + h_u - h_v`` where ``h`` is the
tree potential rooted at the tree root.
"""

from __future__ import annotations

import dataclasses
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from .eigensolver import EigenSystem, eig_dense, rayleigh_quotient
from .embedding import modulus_variability, wrap_phase
from .exceptions import (
    EmptySideError,
    MissingSpectralGapError,
    NoPotentialError,
    SubsetOutOfRangeError,
)
from .graph import SpanningTree, SymmetrizedView, spanning_tree, symmetrize
from .laplacian import MagneticLaplacian, _assemble, as_charge, build_magnetic_laplacian, transporter, unit_phase

__all__ = [
    "Frustration",
    "PartitionEnergy",
    "HolonomyReport",
    "Bound",
    "frustration",
    "synchronize",
    "partition_energy",
    "cut_function",
    "exhaustive_partitions",
    "recover_potential",
    "tree_potential",
    "holonomies",
    "gauge_unitary",
    "gauge_transform",
    "bound_ledger",
    "diagnostic_report",
]


@dataclass(frozen=True, eq=False)
class Frustration:
    value: float
    subgraph: np.ndarray
    theta: np.ndarray


@dataclass(frozen=True, eq=False)
class PartitionEnergy:
    """Terms of the partition energy ``E_{A, Abar}(theta*)``.

    ``terms`` keeps the four summands in order: the two volume-weighted
    subgraph frustrations, the normalized cut and the generalized cut divided
    by ``vol(G)``.  ``gamma`` is the generalized cut itself; it carries the
    printed ``-4 sum sin^2`` sign and is therefore never positive.
    """

    A: np.ndarray
    terms: dict
    total: float
    cut: float
    gamma: float
    vol_A: float
    vol_Abar: float


@dataclass(frozen=True, eq=False)
class HolonomyReport:
    """Fundamental-cycle holonomies of one spanning tree.

    ``epsilon`` is the largest ``|t_C - 1|`` over the fundamental cycles of
    this tree only (a "fundamental-cycle epsilon"), not over all simple cycles.
    """

    g: Fraction
    cotree_pairs: np.ndarray
    flux: np.ndarray
    holonomy: np.ndarray
    epsilon: float
    beta1: int
    cotree_weight: float
    tree: SpanningTree = field(repr=False)


@dataclass(frozen=True)
class Bound:
    name: str
    lhs: float
    rhs: float

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    def as_dict(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs, "slack": self.slack}


def _subset_mask(n, S):
    if S is None:
        return np.ones(n, dtype=bool)
    S = np.asarray(S)
    if S.dtype == bool:
        if S.shape != (n,):
            raise SubsetOutOfRangeError(f"boolean subset of length {len(S)} for {n} nodes")
        return S.copy()
    S = S.astype(np.int64).reshape(-1)
    if len(S) and (S.min() < 0 or S.max() >= n):
        raise SubsetOutOfRangeError(f"subset indices must lie in [0, {n})")
    mask = np.zeros(n, dtype=bool)
    mask[S] = True
    return mask


def _edge_errors(sym, g, theta):
    """``|exp(i theta_i) - t_ij exp(i theta_j)|^2`` per stored pair."""
    z = np.exp(1j * np.asarray(theta, dtype=float))
    i, j = sym.pairs[:, 0], sym.pairs[:, 1]
    t = transporter(sym, g)
    return np.abs(z[i] - t * z[j]) ** 2


def frustration(sym: SymmetrizedView, g, theta, S=None, normalization: str = "graph") -> Frustration:
    """Frustration ``eta_S(theta)`` of an angle assignment.

    ``(1/2) sum_{i,j in S} wbar_ij |e^{i theta_i} - e^{i theta_ij} e^{i theta_j}|^2``
    over ordered pairs, divided by ``vol(G)`` (``normalization="graph"``) or by
    ``vol(S)`` (``"subgraph"``).  With the graph normalization ``eta_V(theta)``
    equals the Rayleigh quotient of ``exp(i theta)``.
    """
    g = as_charge(g)
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (sym.n,):
        raise SubsetOutOfRangeError(f"theta must have length {sym.n}")
    mask = _subset_mask(sym.n, S)
    inside = mask[sym.pairs[:, 0]] & mask[sym.pairs[:, 1]]
    num = float(np.sum(sym.wbar[inside] * _edge_errors(sym, g, theta)[inside]))
    if normalization == "graph":
        denom = sym.volume
    elif normalization == "subgraph":
        denom = float(sym.degrees[mask].sum())
    else:
        raise ValueError(f"unknown normalization {normalization!r}")
    value = num / denom if denom > 0 else 0.0
    return Frustration(value=value, subgraph=np.flatnonzero(mask), theta=theta)


def synchronize(lap: MagneticLaplacian, es: EigenSystem | None = None) -> Frustration:
    """Angles ``phase(phi_0)`` and their frustration over the whole graph."""
    if es is None:
        es = eig_dense(lap, k=1)
    theta = wrap_phase(np.angle(es.phi[:, 0]))
    return frustration(lap.sym, lap.g, theta)


def _split(sym, A):
    mask = _subset_mask(sym.n, A)
    vol_a = float(sym.degrees[mask].sum())
    vol_b = float(sym.degrees[~mask].sum())
    if not mask.any() or mask.all() or vol_a <= 0 or vol_b <= 0:
        raise EmptySideError("both sides of the partition must be nonempty with positive volume")
    return mask, vol_a, vol_b


def cut_function(sym: SymmetrizedView, theta_star, A) -> np.ndarray:
    """Relaxation vector of a partition.

    ``f_i = sqrt(vol(Abar)/vol(A)) e^{i theta*_i}`` on ``A`` and
    ``-sqrt(vol(A)/vol(Abar)) e^{i theta*_i}`` on the complement.
    """
    mask, vol_a, vol_b = _split(sym, A)
    z = np.exp(1j * np.asarray(theta_star, dtype=float))
    return np.where(mask, np.sqrt(vol_b / vol_a) * z, -np.sqrt(vol_a / vol_b) * z)


def partition_energy(sym: SymmetrizedView, g, theta_star, A) -> PartitionEnergy:
    """Evaluate ``E_{A,Abar}(theta*)`` term by term.

    The subgraph frustrations are normalized by their own volume, which is the
    normalization under which ``E`` equals the Rayleigh quotient of
    :func:`cut_function`.
    """
    g = as_charge(g)
    mask, vol_a, vol_b = _split(sym, A)
    theta_star = np.asarray(theta_star, dtype=float)
    vol = sym.volume
    eta_a = frustration(sym, g, theta_star, mask, normalization="subgraph").value
    eta_b = frustration(sym, g, theta_star, ~mask, normalization="subgraph").value
    i, j = sym.pairs[:, 0], sym.pairs[:, 1]
    crossing = mask[i] != mask[j]
    cut = float(sym.wbar[crossing].sum())
    # orient each crossing pair as (a in A, b in Abar); theta_ab = 2 pi g a_ba
    a_node = np.where(mask[i], i, j)[crossing]
    b_node = np.where(mask[i], j, i)[crossing]
    flow_ab = np.where(mask[i], sym.flow, -sym.flow)[crossing].astype(float)
    theta_ab = 2 * np.pi * float(g) * (-flow_ab)
    s = np.sin((theta_star[a_node] - theta_star[b_node] - theta_ab) / 2)
    gamma = float(-4.0 * np.sum(sym.wbar[crossing] * s**2))
    terms = {
        "frustration_A": vol_b / vol * eta_a,
        "frustration_Abar": vol_a / vol * eta_b,
        "normalized_cut": cut / vol_a + cut / vol_b,
        "generalized_cut": gamma / vol,
    }
    return PartitionEnergy(
        A=np.flatnonzero(mask),
        terms=terms,
        total=float(sum(terms.values())),
        cut=cut,
        gamma=gamma,
        vol_A=vol_a,
        vol_Abar=vol_b,
    )


def exhaustive_partitions(sym: SymmetrizedView, g, theta_star, max_n: int = 16):
    """Energy of every nontrivial partition (node 0 kept in ``A``); expensive.

    Returns a list of ``(A, energy)`` sorted by energy.  Refuses ``n > max_n``.
    """
    n = sym.n
    if n > max_n:
        raise ValueError(f"exhaustive search limited to n <= {max_n}, got {n}")
    out = []
    for bits in itertools.product((True, False), repeat=n - 1):
        mask = np.array((True,) + bits)
        if mask.all():
            continue
        try:
            e = partition_energy(sym, g, theta_star, mask).total
        except EmptySideError:
            continue
        out.append((np.flatnonzero(mask), e))
    out.sort(key=lambda item: item[1])
    return out


def tree_potential(sym: SymmetrizedView, tree: SpanningTree) -> np.ndarray:
    """Integer ``h`` with ``h_root = 0`` and ``a_ij = h_j - h_i`` on every tree edge."""
    h = np.zeros(sym.n, dtype=np.int64)
    for v in tree.order[1:].tolist():
        u = int(tree.parent[v])
        h[v] = h[u] + sym.flow_between(u, v)
    return h


def recover_potential(sym: SymmetrizedView, modulus: int | None = None) -> np.ndarray:
    """Integer potential ``h`` with ``a_ij = h_j - h_i`` on every edge.

    With ``modulus=m`` the identity only has to hold modulo ``m``, which is the
    gauge-triviality condition for a charge ``g = k/m`` in lowest terms.

    Raises
    ------
    NoPotentialError
        Naming the first pair (in storage order) where the identity fails.
    """
    tree = spanning_tree(sym)
    h = tree_potential(sym, tree)
    i, j = sym.pairs[:, 0], sym.pairs[:, 1]
    mismatch = sym.flow.astype(np.int64) - (h[j] - h[i])
    if modulus:
        mismatch = np.mod(mismatch, int(modulus))
    bad = np.flatnonzero(mismatch != 0)
    if len(bad):
        e = int(bad[0])
        raise NoPotentialError((int(i[e]), int(j[e])), int(mismatch[e]))
    return h


def holonomies(sym: SymmetrizedView, tree: SpanningTree, g) -> HolonomyReport:
    """Flux and holonomy of every fundamental cycle of ``tree``."""
    g = as_charge(g)
    h = tree_potential(sym, tree)
    co = tree.cotree_edges
    u, v = sym.pairs[co, 0], sym.pairs[co, 1]
    flux = sym.flow[co].astype(np.int64) + h[u] - h[v]
    hol = unit_phase(flux, g)
    eps = float(np.max(np.abs(hol - 1))) if len(co) else 0.0
    return HolonomyReport(
        g=g,
        cotree_pairs=sym.pairs[co],
        flux=flux,
        holonomy=hol,
        epsilon=eps,
        beta1=len(co),
        cotree_weight=float(sym.wbar[co].sum()),
        tree=tree,
    )


def gauge_unitary(sym: SymmetrizedView, tree: SpanningTree, g) -> np.ndarray:
    """Diagonal of ``U``: ``U_ii`` is the transporter along the tree path root -> i."""
    return unit_phase(tree_potential(sym, tree), as_charge(g))


def gauge_transform(lap: MagneticLaplacian, tree: SpanningTree | None = None) -> MagneticLaplacian:
    """``U^† L U`` with ``U`` from :func:`gauge_unitary`.

    Assembled from exact integer phases: tree pairs come out as ``-wbar``
    exactly, and cotree pair ``(u, v)`` carries ``-wbar * conj(t_C)`` at
    ``(u, v)`` and ``-wbar * t_C`` at ``(v, u)`` where ``t_C`` is its holonomy.
    """
    sym = lap.sym
    tree = tree if tree is not None else spanning_tree(sym)
    h = tree_potential(sym, tree)
    i, j = sym.pairs[:, 0], sym.pairs[:, 1]
    # exponent of entry (i, j): a_ji + h_j - h_i
    t = unit_phase(-sym.flow.astype(np.int64) + h[j] - h[i], lap.g)
    matrix = _assemble(sym, t, lap.degrees)
    out = dataclasses.replace(lap, matrix=matrix, normalized=None)
    if lap.normalized is not None:
        from .laplacian import normalize

        out = normalize(out)
    return out


def _spectral_gap(sym: SymmetrizedView) -> float:
    es0 = eig_dense(build_magnetic_laplacian(sym, 0), k=min(2, sym.n))
    return float(es0.eigenvalues[1]) if es0.k > 1 else 0.0


def bound_ledger(
    lap: MagneticLaplacian,
    es: EigenSystem,
    hol: HolonomyReport | None = None,
    lambda1_comb: float | None = None,
) -> list[Bound]:
    """Left- and right-hand sides of the bounds on ``lambda_0`` and on ``|phi_0|``.

    * ``modulus_variability``: relative variance of ``|phi_0|`` vs ``lambda_0 / lambda_1^(0)``.
    * ``cotree_rayleigh``: ``lambda_0`` vs the Rayleigh quotient of the constant
      vector for the gauge-transformed Laplacian.
    * ``cotree_epsilon``: ``lambda_0`` vs ``eps^2 * sum_{cotree} wbar / vol``.
    * ``betti_binary``: ``lambda_0`` vs ``eps^2 * beta1 / (2|E|)``.
    * ``epsilon_half``: ``lambda_0`` vs ``eps^2 / 2``.
    """
    sym = lap.sym
    if hol is None:
        hol = holonomies(sym, spanning_tree(sym), lap.g)
    if lambda1_comb is None:
        lambda1_comb = _spectral_gap(sym)
    if lambda1_comb <= 1e-12:
        raise MissingSpectralGapError("lambda_1 of the combinatorial Laplacian is zero: graph is disconnected")
    lam0 = float(es.eigenvalues[0])
    eps2 = hol.epsilon**2
    vol = sym.volume
    cotree = hol.tree.cotree_edges
    rayleigh_const = float(np.sum(sym.wbar[cotree] * np.abs(1 - hol.holonomy) ** 2) / vol)
    return [
        Bound("modulus_variability", modulus_variability(es.phi[:, 0], sym.degrees), lam0 / lambda1_comb),
        Bound("cotree_rayleigh", lam0, rayleigh_const),
        Bound("cotree_epsilon", lam0, eps2 * hol.cotree_weight / vol),
        Bound("betti_binary", lam0, eps2 * hol.beta1 / (2 * sym.n_edges) if sym.n_edges else 0.0),
        Bound("epsilon_half", lam0, eps2 / 2),
    ]


def diagnostic_report(lap: MagneticLaplacian, es: EigenSystem) -> dict:
    """JSON-ready summary: frustration, epsilon, beta1, bound ledger, potential."""
    sym = lap.sym
    tree = spanning_tree(sym)
    hol = holonomies(sym, tree, lap.g)
    sync = synchronize(lap, es)
    bounds = bound_ledger(lap, es, hol)
    try:
        h = recover_potential(sym, modulus=lap.g.denominator)
        potential = {"exists": True, "h": h.tolist()}
    except NoPotentialError as exc:
        potential = {"exists": False, "violating_edge": list(exc.edge)}
    return {
        "g": str(lap.g),
        "n": sym.n,
        "n_edges": sym.n_edges,
        "lambda_0": float(es.eigenvalues[0]),
        "frustration": sync.value,
        "epsilon": hol.epsilon,
        "epsilon_kind": "fundamental-cycle",
        "beta1": hol.beta1,
        "bounds": [b.as_dict() for b in bounds],
        "potential": potential,
    }
