"""Independent oracles that freeze expected values for the test suite.

Everything here is computed from first principles: closed forms,
character counting, geometric-series expansion, and exhaustive search.
Nothing imports the enumeration, recursion, or transfer-matrix code
under test, so agreement between the two sides is meaningful.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np


# ---------------------------------------------------------------------------
# closed forms for the rank-one quantum group at level k


def su2_sine_smatrix(k: int) -> np.ndarray:
    """S[a, b] = sqrt(2/(k+2)) sin(pi (a+1)(b+1) / (k+2))."""
    n = k + 1
    kappa = k + 2
    a = np.arange(1, n + 1)
    return np.sqrt(2.0 / kappa) * np.sin(np.pi * np.outer(a, a) / kappa)


def su2_twist_fractions(k: int) -> list[Fraction]:
    """t_a = a(a+2) / (4(k+2)) reduced mod 1."""
    return [Fraction(a * (a + 2), 4 * (k + 2)) % 1 for a in range(k + 1)]


def su2_dims(k: int) -> np.ndarray:
    """d_a = sin(pi (a+1)/(k+2)) / sin(pi/(k+2))."""
    kappa = k + 2
    a = np.arange(1, k + 2)
    return np.sin(np.pi * a / kappa) / np.sin(np.pi / kappa)


def su2_central_charge(k: int) -> Fraction:
    """c = 3k / (k+2)."""
    return Fraction(3 * k, k + 2)


# ---------------------------------------------------------------------------
# exhaustive search for coupling matrices at small level


def brute_force_invariants(k: int, tol: float = 1e-9) -> list[np.ndarray]:
    """All integer matrices commuting with S and T, by direct search.

    A cell (a, b) may be non-zero only when the twists agree exactly
    (diagonal T commutation) and is bounded by d_a d_b (vacuum-coupling
    bound with Z[0, 0] = 1).  Every assignment within the bounds is
    tested against the S commutator.
    """
    S = su2_sine_smatrix(k)
    t = su2_twist_fractions(k)
    d = su2_dims(k)
    n = k + 1
    cells = [(a, b) for a in range(n) for b in range(n)
             if t[a] == t[b] and (a, b) != (0, 0)]
    bounds = [int(math.floor(d[a] * d[b] + 1e-9)) for a, b in cells]

    # residual of S Z - Z S is linear in the cell values
    base = np.zeros((n, n))
    base[0, 0] = 1.0
    base_res = (S @ base - base @ S).ravel()
    coeff = np.empty((len(cells), n * n))
    for i, (a, b) in enumerate(cells):
        E = np.zeros((n, n))
        E[a, b] = 1.0
        coeff[i] = (S @ E - E @ S).ravel()

    out = []
    batch, vals = 4096, []
    candidates = itertools.product(*(range(b + 1) for b in bounds))

    def flush():
        if not vals:
            return
        V = np.array(vals, dtype=float)
        res = np.abs(V @ coeff + base_res).max(axis=1)
        for row, r in zip(vals, res):
            if r < tol:
                Z = np.zeros((n, n), dtype=np.int64)
                Z[0, 0] = 1
                for (a, b), v in zip(cells, row):
                    Z[a, b] = v
                out.append(Z)
        vals.clear()

    for row in candidates:
        vals.append(row)
        if len(vals) >= batch:
            flush()
    flush()
    return out


# ---------------------------------------------------------------------------
# frozen coupling-matrix forms (diagonal-pair, permutation, exceptional)


def _block_sum(n: int, blocks, pairs=()) -> np.ndarray:
    """Sum of |chi_B|^2 blocks plus explicit off-diagonal pairs."""
    Z = np.zeros((n, n), dtype=np.int64)
    for coeff, block in blocks:
        for a in block:
            for b in block:
                Z[a, b] += coeff
    for a, b in pairs:
        Z[a, b] += 1
    return Z


def coupling_forms(k: int) -> dict[str, np.ndarray]:
    """Expected complete catalogues for the levels used in the tests."""
    n = k + 1
    forms = {"diagonal": np.eye(n, dtype=np.int64)}
    if k % 4 == 0 and k >= 4:
        blocks = [(1, (lam, k - lam)) for lam in range(0, k // 2, 2)]
        blocks.append((2, (k // 2,)))
        forms["pair-blocks"] = _block_sum(n, blocks)
    if k % 4 == 2 and k >= 6:
        Z = np.zeros((n, n), dtype=np.int64)
        for lam in range(n):
            Z[lam, lam if lam % 2 == 0 else k - lam] = 1
        forms["conjugating-permutation"] = Z
    if k == 10:
        forms["height-12"] = _block_sum(n, [(1, (0, 6)), (1, (3, 7)),
                                            (1, (4, 10))])
    if k == 16:
        forms["height-18"] = _block_sum(
            n, [(1, (0, 16)), (1, (4, 12)), (1, (6, 10)), (1, (8,))],
            pairs=[(2, 8), (8, 2), (14, 8), (8, 14)])
    if k == 28:
        forms["height-30"] = _block_sum(n, [(1, (0, 10, 18, 28)),
                                            (1, (6, 12, 16, 22))])
    return forms


# ---------------------------------------------------------------------------
# character counting for restrictions to a cyclic subgroup


def cyclic_restriction_counts(n_vertices: int, J: int) -> np.ndarray:
    """Multiplicities of the n-th roots-of-unity characters in the
    restriction of the (j+1)-dimensional irreducible representation.

    The weights of that representation are j, j-2, ..., -j; character
    gamma receives one count per weight congruent to gamma mod n.
    """
    n = n_vertices
    out = np.zeros((J + 1, n), dtype=np.int64)
    for j in range(J + 1):
        for r in range(j + 1):
            out[j, (j - 2 * r) % n] += 1
    return out


def expand_rational_series(p: np.ndarray, r: int, s: int, J: int) -> np.ndarray:
    """Power-series coefficients of p(q) / ((1 - q^r)(1 - q^s)) up to q^J.

    Dividing by (1 - q^r) is a prefix sum at stride r.
    """
    out = np.zeros(J + 1, dtype=np.int64)
    m = min(len(p), J + 1)
    out[:m] = p[:m]
    for j in range(r, J + 1):
        out[j] += out[j - r]
    for j in range(s, J + 1):
        out[j] += out[j - s]
    return out


# ---------------------------------------------------------------------------
# closed forms for the nearest-neighbour partition function on a torus


def ising_ring(n_sites: int, beta: float, coupling: float = 1.0) -> float:
    """One-row torus (M = 1) with n_sites >= 3 columns.

    Each column carries a self-bond (the vertical wrap of a single row),
    so the partition function is e^{beta J n} times the plain ring sum
    lam_+^n + lam_-^n over the transfer eigenvalues
    lam_+ = e^{beta J} + e^{-beta J} and lam_- = e^{beta J} - e^{-beta J}.
    """
    x = beta * coupling
    lam_p = math.exp(x) + math.exp(-x)
    lam_m = math.exp(x) - math.exp(-x)
    return math.exp(x * n_sites) * (lam_p ** n_sites + lam_m ** n_sites)


def ising_direct(M: int, N: int, beta: float, coupling: float = 1.0) -> float:
    """Configuration sum with one bond per (site, axis) pair, wrapping
    modulo the axis length (self-bonds at length 1, doubled at 2)."""
    bits = np.arange(2 ** (M * N))[:, None] >> np.arange(M * N) & 1
    grid = (1 - 2 * bits).reshape(-1, M, N)
    E = (grid * np.roll(grid, -1, axis=1)).sum(axis=(1, 2))
    E = E + (grid * np.roll(grid, -1, axis=2)).sum(axis=(1, 2))
    return float(np.exp(beta * coupling * E).sum())
