"""Nimreps over ADE graphs via the fundamental-generator recursion.

A nimrep at level k assigns to every label j = 0..k a non-negative
integer matrix G_j over the graph vertices representing the level-k
fusion ring.  Here the whole family is generated from the adjacency
matrix by the same Chebyshev recursion that generates the fusion
matrices themselves:

    G_0 = 1,  G_1 = adjacency,  G_{j+1} = G_1 G_j - G_{j-1}

The construction succeeds exactly when the graph's Coxeter number is
k + 2: otherwise a negative entry appears or the closure relation
G_1 G_k = G_{k-1} (i.e. "G_{k+1} = 0") breaks, and the failure names
the first offending step and cell.

The spectral test: diagonalising G_l must reproduce the diagonal of a
coupling matrix Z for the same level, eigenvalue S[l, m]/S[0, m] with
multiplicity Z[m, m].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .catalog import Graph
from .fusion_core import FusionSystem
from .modular_data import ModularData
from .reports import Check, Report

__all__ = ["NimrepBuildError", "Nimrep", "build_nimrep_su2", "verify_nimrep",
           "spectrum_check"]


class NimrepBuildError(RuntimeError):
    """The recursion left the non-negative cone or failed to close."""

    def __init__(self, kind: str, step: int, cell: tuple[int, int], value: int):
        self.kind = kind                  # "negative" or "closure"
        self.step = step
        self.cell = cell
        self.value = value
        what = ("entry went negative" if kind == "negative"
                else "closure G_1 G_k - G_{k-1} != 0")
        super().__init__(f"{what} at step {step}, cell {cell} "
                         f"(value {value}); graph Coxeter number "
                         f"does not match level + 2")


@dataclass(frozen=True, eq=False)
class Nimrep:
    graph: Graph
    level: int
    G: tuple[np.ndarray, ...]

    @property
    def n_vertices(self) -> int:
        return self.graph.n_vertices


def build_nimrep_su2(graph: Graph, k: int) -> Nimrep:
    """Chebyshev family over an ordinary graph; raises NimrepBuildError
    when the level does not match the graph."""
    if graph.affine:
        raise ValueError("nimreps are built over ordinary graphs")
    if k < 1:
        raise ValueError("level must be >= 1")
    nv = graph.n_vertices
    adj = graph.adjacency.astype(np.int64)
    mats = [np.eye(nv, dtype=np.int64), adj.copy()]
    for j in range(1, k):
        nxt = adj @ mats[j] - mats[j - 1]
        if (nxt < 0).any():
            a, b = np.argwhere(nxt < 0)[0]
            raise NimrepBuildError("negative", j + 1, (int(a), int(b)),
                                   int(nxt[a, b]))
        mats.append(nxt)
    closure = adj @ mats[k] - mats[k - 1]
    if closure.any():
        a, b = np.argwhere(closure != 0)[0]
        raise NimrepBuildError("closure", k + 1, (int(a), int(b)),
                               int(closure[a, b]))
    for m in mats:
        m.setflags(write=False)
    return Nimrep(graph=graph, level=k, G=tuple(mats))


def verify_nimrep(nim: Nimrep, F: FusionSystem, tol: float = 1e-9) -> Report:
    """Exact integer checks of the nimrep axioms plus the top-label
    symmetry and the Perron-Frobenius cross-check."""
    G = nim.G
    k = nim.level
    nv = nim.n_vertices
    checks: list[Check] = []
    checks.append(Check("unit", bool(np.array_equal(G[0], np.eye(nv, dtype=np.int64))),
                        "G_0 = 1"))
    checks.append(Check("non-negative", bool(all((g >= 0).all() for g in G))))
    sym = all(np.array_equal(G[lam], G[F.conj[lam]].T) for lam in range(k + 1))
    checks.append(Check("transpose-conjugate", bool(sym),
                        "G_conj(l) = G_l^T"))
    rep_dev = 0
    for lam in range(k + 1):
        for mu in range(k + 1):
            want = sum(int(F.N[lam, mu, rho]) * G[rho] for rho in range(k + 1))
            dev = int(np.max(np.abs(G[lam] @ G[mu] - want)))
            rep_dev = max(rep_dev, dev)
    checks.append(Check("representation", rep_dev == 0,
                        f"max deviation {rep_dev} (exact integers)"))
    top = G[k]
    is_perm = (np.all((top == 0) | (top == 1))
               and np.all(top.sum(axis=0) == 1) and np.all(top.sum(axis=1) == 1))
    involution = np.array_equal(top.T @ top, np.eye(nv, dtype=np.int64))
    checks.append(Check("top-permutation", bool(is_perm and involution),
                        "G_k is a permutation with G_k^T G_k = 1"))
    pf = float(np.linalg.eigvalsh(nim.graph.adjacency.astype(float))[-1])
    want_pf = 2.0 * np.cos(np.pi / (k + 2))
    checks.append(Check("pf-eigenvalue", abs(pf - want_pf) <= tol,
                        f"|adjacency PF {pf:.12f} - 2cos(pi/{k + 2})| "
                        f"= {abs(pf - want_pf):.3e}"))
    return Report(title=f"nimrep axioms ({nim.graph.name} at level {k})",
                  checks=tuple(checks))


def spectrum_check(nim: Nimrep, Z: np.ndarray, md: ModularData,
                   tol: float = 1e-7) -> Report:
    """Eigenvalues of every G_l against the coupling-matrix diagonal.

    The expected multiset for G_l is S[l, m]/S[0, m] with multiplicity
    Z[m, m]; both sides are real (symmetric matrices, real ratios), so
    sorted greedy pairing decides equality.
    """
    Z = np.asarray(Z)
    k = nim.level
    nv = nim.n_vertices
    trace = int(np.trace(Z))
    if trace != nv:
        return Report(
            title=f"nimrep spectrum ({nim.graph.name} vs coupling diagonal)",
            checks=(Check("sector-count", False,
                          f"tr Z = {trace} but graph has {nv} vertices"),))
    S = md.S
    ratios = (S / S[0]).real              # imaginary parts vanish for su2
    mult = np.diag(Z)
    checks: list[Check] = [Check("sector-count", True, f"tr Z = {trace} = |V|")]
    worst = 0.0
    for lam in range(k + 1):
        got = np.sort(np.linalg.eigvalsh(nim.G[lam].astype(float)))
        want = np.sort(np.repeat(ratios[lam], mult))
        dev = float(np.max(np.abs(got - want)))
        worst = max(worst, dev)
        checks.append(Check(f"spectrum[{lam}]", dev <= tol,
                            f"max eigenvalue deviation {dev:.3e}"))
    checks.append(Check("worst-mismatch", worst <= tol, f"{worst:.3e}"))
    return Report(title=f"nimrep spectrum ({nim.graph.name} vs coupling "
                        f"diagonal)", checks=tuple(checks))
