"""Independent floating-point SGD reference for oracle-equivalence tests.

Written against the math alone, with no imports from the package, so it
can arbitrate: a single-layer network y = f(W^T x + b) with the
(-1, 1) logistic activation, trained per-sample by

    w_ij <- clip(w_ij + eta * (lam / 2) * (Y_j - y_j) * (1 - y_j^2) * x_i)

where the bias uses x = 1 and clipping keeps weights representable in
the hardware window [-1, 1].
"""

import math


def oracle_activate(z, lam):
    return 2.0 / (1.0 + math.exp(-lam * z)) - 1.0


def oracle_forward(weights, x_full):
    """weights: list of rows (one per input incl. bias) of per-node lists."""
    n_nodes = len(weights[0])
    return [sum(weights[i][j] * x_full[i] for i in range(len(x_full)))
            for j in range(n_nodes)]


def oracle_train(weights, X, Y, eta, lam, epochs):
    """Runs SGD in place over the given sample order; returns snapshots.

    ``weights`` is a (n_inputs + 1) x n_nodes nested list, bias row last.
    Returns the list of per-sample weight snapshots (deep copies) in
    presentation order, to compare trajectories step by step.
    """
    snapshots = []
    n_rows = len(weights)
    n_nodes = len(weights[0])
    for _ in range(epochs):
        for x, target in zip(X, Y):
            x_full = list(x) + [1.0]
            z = oracle_forward(weights, x_full)
            y = [oracle_activate(v, lam) for v in z]
            for i in range(n_rows):
                for j in range(n_nodes):
                    delta = (eta * 0.5 * lam * (target[j] - y[j])
                             * (1.0 - y[j] * y[j]) * x_full[i])
                    w = weights[i][j] + delta
                    weights[i][j] = min(1.0, max(-1.0, w))
            snapshots.append([row[:] for row in weights])
    return snapshots
