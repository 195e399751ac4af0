"""Independent oracles shared by the test modules.

Nothing here calls the code under test for the quantity it checks: the
oracles recompute from definitions with plain loops.
"""
import itertools

import numpy as np
import pytest


def all_latin_squares(n):
    """Every Latin square of order n, by brute force over row permutations."""
    perms = list(itertools.permutations(range(n)))
    out = []

    def extend(rows):
        if len(rows) == n:
            out.append(np.array(rows))
            return
        for p in perms:
            if all(p[c] != r[c] for r in rows for c in range(n)):
                extend(rows + [p])

    extend([])
    return out


def brute_mwols(L, K):
    n = len(L)
    for i in range(n):
        for j in range(n):
            hits = sum(1 for s in range(n) if L[i][s] == K[j][s])
            if hits != 1:
                return False
    return True


def brute_mols(L, K):
    n = len(L)
    pairs = {(L[i][j], K[i][j]) for i in range(n) for j in range(n)}
    return len(pairs) == n * n


def projector_partial_trace(v, dims, keep):
    """Reduce |v><v| by summing diagonal blocks of the full D x D projector."""
    d1, d2, d3 = dims
    P = np.outer(v, np.conj(v))
    dk = dims[keep - 1]
    rho = np.zeros((dk, dk), dtype=complex)
    for a in range(d1 * d2 * d3):
        ia = (a // (d2 * d3), (a // d3) % d2, a % d3)
        for b in range(d1 * d2 * d3):
            ib = (b // (d2 * d3), (b // d3) % d2, b % d3)
            rest_a = ia[:keep - 1] + ia[keep:]
            rest_b = ib[:keep - 1] + ib[keep:]
            if rest_a == rest_b:
                rho[ia[keep - 1], ib[keep - 1]] += P[a, b]
    return rho


def ket(dims, i, j, k):
    v = np.zeros(dims[0] * dims[1] * dims[2], dtype=complex)
    v[(i * dims[1] + j) * dims[2] + k] = 1
    return v


@pytest.fixture(scope="session")
def order3_squares():
    return all_latin_squares(3)
