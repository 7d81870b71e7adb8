"""Shared helpers: random Seifert-matrix generators and the float signature oracle."""

from __future__ import annotations

import numpy as np


def random_unimodular(rng, n, ops=4):
    """Integer matrix of determinant +/-1: elementary row operations on the identity."""
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(ops):
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-1, 1])
        for k in range(n):
            m[i][k] += c * m[j][k]
    if rng.random() < 0.5:
        i, j = rng.sample(range(n), 2)
        m[i], m[j] = m[j], m[i]
    return m


def random_skew_unimodular(rng, n, ops=3):
    """P J P^T for the standard symplectic block form J; skew with determinant 1."""
    jmat = [[0] * n for _ in range(n)]
    for k in range(0, n, 2):
        jmat[k][k + 1] = 1
        jmat[k + 1][k] = -1
    p = random_unimodular(rng, n, ops)
    pj = [[sum(p[i][k] * jmat[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return [[sum(pj[i][k] * p[j][k] for k in range(n)) for j in range(n)] for i in range(n)]


def make_valid_seifert(rng, n, bound=5):
    """Entries of a valid Seifert matrix (V - V^T unimodular) within |entry| <= bound."""
    while True:
        skew = random_skew_unimodular(rng, n, ops=rng.randint(0, 3))
        sym = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(i):
                sym[i][j] = sym[j][i]
        v = [[sym[i][j] + (skew[i][j] if i < j else 0) for j in range(n)] for i in range(n)]
        if all(abs(x) <= bound for row in v for x in row):
            return v


def make_invalid_seifert(rng, n, bound=5):
    """Random even-size integer matrix with det(V - V^T) != +/-1."""
    from slicegate.seifert import _det_int

    while True:
        v = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)]
        skew = [[v[i][j] - v[j][i] for j in range(n)] for i in range(n)]
        if _det_int(skew) not in (1, -1):
            return v


def float_signature(entries, tol=1e-9):
    """Independent oracle: eigenvalue sign count of V + V^T in floating point."""
    n = len(entries)
    if n == 0:
        return 0
    sym = np.array([[entries[i][j] + entries[j][i] for j in range(n)] for i in range(n)],
                   dtype=float)
    eigs = np.linalg.eigvalsh(sym)
    return int((eigs > tol).sum()) - int((eigs < -tol).sum())
