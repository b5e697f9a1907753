"""Independent brute-force evaluators built from dense matrices and explicit loops."""

import numpy as np


def dense_parts(graph, g):
    W = graph.adjacency().toarray().astype(float)
    Wbar = (W + W.T) / 2
    A = W - W.T
    theta_ij = 2 * np.pi * float(g) * A.T  # theta_ij = 2 pi g a_ji
    return Wbar, theta_ij


def brute_eta(graph, g, theta, S, norm):
    """Half the ordered-pair sum over S x S, divided by vol(G) or vol(S)."""
    Wbar, th = dense_parts(graph, g)
    d = Wbar.sum(axis=1)
    total = 0.0
    for i in S:
        for j in S:
            total += Wbar[i, j] * abs(np.exp(1j * theta[i]) - np.exp(1j * th[i, j]) * np.exp(1j * theta[j])) ** 2
    denom = d.sum() if norm == "graph" else d[list(S)].sum()
    return 0.5 * total / denom


def brute_energy(graph, g, theta, A):
    Wbar, th = dense_parts(graph, g)
    d = Wbar.sum(axis=1)
    n = graph.n
    A = sorted(A)
    B = [i for i in range(n) if i not in A]
    vol, va, vb = d.sum(), d[A].sum(), d[B].sum()
    cut = sum(Wbar[i, j] for i in A for j in B)
    gamma = -4 * sum(Wbar[i, j] * np.sin((theta[i] - theta[j] - th[i, j]) / 2) ** 2 for i in A for j in B)
    return (
        vb / vol * brute_eta(graph, g, theta, A, "subgraph")
        + va / vol * brute_eta(graph, g, theta, B, "subgraph")
        + cut / va
        + cut / vb
        + gamma / vol
    )


def naive_laplacian(graph, g):
    """Entry-by-entry L = D - T * Wbar with t_ij = exp(i 2 pi g a_ji), in floating point."""
    Wbar, th = dense_parts(graph, g)
    return np.diag(Wbar.sum(axis=1)) - np.exp(1j * th) * Wbar


def brute_rayleigh(graph, g, f):
    L = naive_laplacian(graph, g)
    d = L.diagonal().real
    f = np.asarray(f, dtype=complex)
    return float((f.conj() @ L @ f).real / np.sum(d * np.abs(f) ** 2))
