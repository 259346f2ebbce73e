"""Enumeration and classification of coupling matrices.

A coupling matrix for modular data (S, T) is a square matrix Z of
non-negative integers with Z[0, 0] = 1 commuting with both S and T.
Commutation with T is exact combinatorics: Z[a, b] can be non-zero only
when t_a = t_b as rationals.  Commutation with S cuts the remaining
cells down to a small linear space, and the integer points of that
space inside the entry bound Z[a, b] <= d_a d_b form the catalogue.

Pipeline:

1. collect the free cells {(a, b) : t_a = t_b};
2. build the commutant equations S Z - Z S = 0 restricted to those
   cells and extract a nullspace basis by SVD, requiring a clean
   singular value gap;
3. choose pivot cells (the vacuum cell first, then small entry bounds
   first) so every solution is an affine function Z = C p of its pivot
   values, and snap C to exact rationals when possible;
4. depth-first search over integer pivot vectors with interval pruning,
   the entry bounds, and the identity d^T Z d = w, which follows from
   S Z S = Z C and Z[0, 0] = 1;
5. verify every accepted matrix against S in float and again at high
   precision via mpmath before it enters the result.

The search is exhaustive within the entry bounds, so the result is a
complete catalogue, not a sample.  A node budget guards against
pathological inputs; exceeding it raises BudgetExceededError rather
than returning a silently truncated list.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .fusion_core import FusionSystem
from .modular_data import ModularData, modular_data_mp

__all__ = [
    "EnumerationError",
    "BudgetExceededError",
    "EnumerationResult",
    "free_cells",
    "twist_classes",
    "commutant_basis",
    "enumerate_invariants",
    "matrix_stats",
    "is_permutation_matrix",
    "type_I_factor",
    "twist_factor",
    "build_records",
]

GAP_DROP = 1e-8      # singular values below GAP_DROP * smax are null
GAP_KEEP = 1e-4      # singular values above GAP_KEEP * smax are rank
SNAP_TOL = 1e-8      # float-to-rational snap acceptance
INT_TOL = 1e-6       # integrality slack inside the search
MP_DPS = 40          # digits for the high precision recheck
MP_TOL = 1e-9        # residual bound at high precision


class EnumerationError(RuntimeError):
    pass


class BudgetExceededError(EnumerationError):
    def __init__(self, nodes: int, budget: int, depth: int):
        self.nodes = nodes
        self.budget = budget
        self.depth = depth
        super().__init__(
            f"search budget exceeded: {nodes} nodes (budget {budget}), "
            f"deepest level {depth}; raise the budget or tighten the input")


def twist_classes(F: FusionSystem) -> list[list[int]]:
    """Labels grouped by exact twist value, in order of first appearance."""
    if F.twists is None:
        raise ValueError("fusion system carries no twists")
    groups: dict[Fraction, list[int]] = {}
    for a, t in enumerate(F.twists):
        groups.setdefault(t, []).append(a)
    return list(groups.values())


def free_cells(F: FusionSystem) -> list[tuple[int, int]]:
    """Cells (a, b) allowed by T-commutation, row-major."""
    classes = twist_classes(F)
    cells = [(a, b) for cls in classes for a in cls for b in cls]
    cells.sort()
    return cells


def _nullspace(A: np.ndarray) -> np.ndarray:
    """Nullspace basis with a clean-gap requirement on singular values."""
    _, sigma, Vt = np.linalg.svd(A, full_matrices=True)
    m = A.shape[1]
    smax = sigma[0] if len(sigma) else 0.0
    if smax == 0.0:
        return np.eye(m)
    gray = [s for s in sigma if GAP_DROP * smax <= s <= GAP_KEEP * smax]
    if gray:
        raise EnumerationError(
            f"no clean singular value gap: {len(gray)} values inside "
            f"[{GAP_DROP:g}, {GAP_KEEP:g}] * smax; commutant dimension ambiguous")
    rank = int(np.sum(sigma > GAP_KEEP * smax))
    basis = Vt[rank:].T                   # (m, dim), orthonormal columns
    if basis.shape[1] == 0:
        raise EnumerationError("empty commutant; the identity must always lie "
                               "in it, so the linear algebra failed")
    return basis


def _select_pivots(V: np.ndarray, cells: list[tuple[int, int]],
                   bounds: np.ndarray) -> list[int]:
    """Greedy choice of dim well-spread rows of V.

    The vacuum cell comes first when it spans a new direction (it always
    does: the identity matrix has Z[0, 0] = 1).  Remaining candidates are
    ordered by entry bound so the search ranges stay small.
    """
    m, dim = V.shape
    order = sorted(range(m), key=lambda i: (cells[i] != (0, 0), bounds[i], cells[i]))
    for threshold in (0.05, 1e-6):
        picked: list[int] = []
        Q = np.zeros((dim, 0))
        for i in order:
            r = V[i] - Q @ (Q.T @ V[i])
            nr = float(np.linalg.norm(r))
            if nr >= threshold:
                picked.append(i)
                Q = np.concatenate([Q, (r / nr)[:, None]], axis=1)
                if len(picked) == dim:
                    return picked
    raise EnumerationError("could not select a full pivot set; commutant basis "
                           "is numerically degenerate")


def _snap_rational(C: np.ndarray, pivots: list[int]):
    """Try to identify C with a rational matrix.  None when it is not one."""
    m, dim = C.shape
    F = [[None] * dim for _ in range(m)]
    for i in range(m):
        for j in range(dim):
            f = Fraction(float(C[i, j])).limit_denominator(10 ** 6)
            if abs(float(f) - C[i, j]) > SNAP_TOL:
                return None
            F[i][j] = f
    for row, i in enumerate(pivots):
        for j in range(dim):
            if F[i][j] != (1 if j == row else 0):
                return None
    return F


@dataclass(frozen=True)
class EnumerationResult:
    md: ModularData
    invariants: tuple[np.ndarray, ...]
    cells: tuple[tuple[int, int], ...]
    commutant_dim: int
    pivots: tuple[tuple[int, int], ...]
    nodes: int
    mode: str                             # "rational" or "float"

    def __len__(self) -> int:
        return len(self.invariants)


def commutant_basis(md: ModularData):
    """(cells, C, pivot indices, mode): solutions of [Z, S] = [Z, T] = 0
    supported on the free cells are exactly Z[cells] = C @ p with p the
    values at the pivot cells.  mode says whether C is exactly rational."""
    F = md.system
    S = md.S
    n = F.n
    cells = free_cells(F)
    m = len(cells)
    A = np.zeros((2 * n * n, m))
    for col, (a, b) in enumerate(cells):
        Mc = np.zeros((n, n), dtype=complex)
        Mc[:, b] += S[:, a]               # S E_ab
        Mc[a, :] -= S[b, :]               # E_ab S
        A[: n * n, col] = Mc.real.ravel()
        A[n * n:, col] = Mc.imag.ravel()
    V = _nullspace(A)
    d = F.d
    bounds = np.array([np.floor(d[a] * d[b] + 1e-9) for a, b in cells])
    pivots = _select_pivots(V, cells, bounds)
    C = V @ np.linalg.inv(V[pivots])
    C_frac = _snap_rational(C, pivots)
    if C_frac is not None:
        C = np.array([[float(f) for f in row] for row in C_frac])
        mode = "rational"
    else:
        mode = "float"
    return cells, C, C_frac, pivots, bounds, mode


def _leaf_matrix_exact(C_frac, p: list[int], m: int, dim: int):
    """Exact cell values at a leaf, or None if any is not an integer >= 0."""
    values = []
    for i in range(m):
        v = sum(C_frac[i][j] * p[j] for j in range(dim))
        if v.denominator != 1 or v < 0:
            return None
        values.append(int(v))
    return values


def enumerate_invariants(md: ModularData, budget: int = 10 ** 6,
                         tol: float = 1e-9) -> EnumerationResult:
    """Complete list of coupling matrices for md, canonically sorted."""
    F = md.system
    n = F.n
    d = F.d
    w = F.w
    cells, C, C_frac, pivots, bounds, mode = commutant_basis(md)
    m, dim = C.shape
    g = np.array([d[a] * d[b] for a, b in cells])      # d^T Z d weights
    pos = np.maximum(C, 0.0) * bounds[pivots]          # per-pivot interval tops
    neg = np.minimum(C, 0.0) * bounds[pivots]
    int_tol = INT_TOL

    accepted: list[np.ndarray] = []
    nodes = 0
    deepest = 0

    def descend(depth: int, base: np.ndarray, p: list[int]) -> None:
        nonlocal nodes, deepest
        nodes += 1
        deepest = max(deepest, depth)
        if nodes > budget:
            raise BudgetExceededError(nodes, budget, deepest)
        rest = slice(depth, dim)
        lo = base + neg[:, rest].sum(axis=1)
        hi = base + pos[:, rest].sum(axis=1)
        if np.any(hi < -int_tol) or np.any(lo > bounds + int_tol):
            return
        xlo = np.maximum(lo, 0.0)
        xhi = np.minimum(hi, bounds)
        if g @ xlo > w + 1e-6 or g @ xhi < w - 1e-6:
            return                        # d^T Z d = w is unreachable
        if depth == dim:
            settled = np.rint(base)
            if np.max(np.abs(base - settled)) > int_tol:
                return
            if C_frac is not None:
                exact = _leaf_matrix_exact(C_frac, p, m, dim)
                if exact is None:
                    return
                settled = np.array(exact, dtype=float)
            Z = np.zeros((n, n), dtype=np.int64)
            for (a, b), v in zip(cells, settled):
                Z[a, b] = int(round(v))
            accepted.append(Z)
            return
        # cells already fully determined must sit near integers
        determined = hi - lo < 2 * int_tol
        frac = np.abs(base - np.rint(base))
        if np.any(determined & (frac > int_tol)):
            return
        i = pivots[depth]
        vlo = int(np.ceil(max(lo[i], 0.0) - int_tol))
        vhi = int(np.floor(min(hi[i], bounds[i]) + int_tol))
        for v in range(vlo, vhi + 1):
            descend(depth + 1, base + C[:, depth] * v, p + [v])

    if pivots and cells[pivots[0]] == (0, 0):
        descend(1, C[:, 0] * 1.0, [1])    # vacuum cell is pinned to 1
    else:
        # vacuum cell was not independent; search all pivots, filter later
        descend(0, np.zeros(m), [])

    # verify in float, then at high precision
    S = md.S
    final: list[np.ndarray] = []
    mp_cache = None
    for Z in accepted:
        if Z[0, 0] != 1:
            continue
        if np.max(np.abs(S @ Z - Z @ S)) > max(tol, 1e-8):
            if mode == "rational":
                raise EnumerationError("rational solution fails float commutant "
                                       "check; pipeline inconsistency")
            continue
        if mp_cache is None:
            mp_cache = modular_data_mp(F, dps=MP_DPS)
        if _mp_residual(mp_cache[0], Z) > MP_TOL:
            if mode == "rational":
                raise EnumerationError("rational solution fails high precision "
                                       "recheck; pipeline inconsistency")
            continue
        final.append(Z)

    final.sort(key=lambda Z: tuple(Z.ravel().tolist()))
    for Z in final:
        Z.setflags(write=False)
    return EnumerationResult(
        md=md, invariants=tuple(final), cells=tuple(cells),
        commutant_dim=dim, pivots=tuple(cells[i] for i in pivots),
        nodes=nodes, mode=mode)


def _mp_residual(S_mp, Z: np.ndarray) -> float:
    import mpmath as mp

    n = Z.shape[0]
    Zm = mp.matrix(Z.tolist())
    R = S_mp * Zm - Zm * S_mp
    return float(max(abs(R[i, j]) for i in range(n) for j in range(n)))


def matrix_stats(Z: np.ndarray) -> dict:
    Z = np.asarray(Z)
    return {
        "trace": int(np.trace(Z)),
        "total": int(Z.sum()),
        "sum_sq": int((Z * Z).sum()),
        "permutation": bool(is_permutation_matrix(Z)),
    }


def is_permutation_matrix(Z: np.ndarray) -> bool:
    Z = np.asarray(Z)
    return (Z.shape[0] == Z.shape[1]
            and bool(np.all((Z == 0) | (Z == 1)))
            and bool(np.all(Z.sum(axis=0) == 1))
            and bool(np.all(Z.sum(axis=1) == 1)))


def _first_support(v: np.ndarray) -> int:
    nz = np.nonzero(v)[0]
    return int(nz[0]) if len(nz) else len(v)


def type_I_factor(Z: np.ndarray) -> np.ndarray | None:
    """Rows b with Z = b^T b (as a sum of outer squares), or None.

    Rows are produced in canonical order: ascending first support, and
    non-increasing lexicographically among rows sharing the support.
    The search subtracts candidate rows from the residual, which must
    stay non-negative; any residual with a non-zero entry on a zero
    diagonal is unreachable.
    """
    Z = np.asarray(Z, dtype=np.int64)
    n = Z.shape[0]

    def dead(R: np.ndarray) -> bool:
        zero_diag = np.diag(R) == 0
        return bool(np.any(R[zero_diag, :] != 0) or np.any(R[:, zero_diag] != 0))

    rows: list[np.ndarray] = []

    def search(R: np.ndarray, prev: np.ndarray | None, prev_s: int) -> bool:
        if not R.any():
            return True
        if dead(R):
            return False
        s = _first_support(np.diag(R))
        if s >= n:
            return False                  # zero diagonal but R != 0
        sq = np.floor(np.sqrt(np.diag(R) + 0.5)).astype(np.int64)
        for vs in range(1, sq[s] + 1):
            caps = np.minimum(sq, R[s] // vs)
            v = np.zeros(n, dtype=np.int64)
            v[s] = vs

            def fill(a: int) -> bool:
                if a == n:
                    if prev is not None and s == prev_s:
                        if tuple(v) > tuple(prev):
                            return False  # keep rows non-increasing
                    R2 = R - np.outer(v, v)
                    if (R2 < 0).any():
                        return False
                    rows.append(v.copy())
                    if search(R2, v.copy(), s):
                        return True
                    rows.pop()
                    return False
                for va in range(caps[a] + 1):
                    v[a] = va
                    if fill(a + 1):
                        return True
                v[a] = 0
                return False

            if fill(s + 1):
                return True
        return False

    if dead(Z):
        return None
    if search(Z.copy(), None, -1):
        return np.array(rows, dtype=np.int64)
    return None


def twist_factor(Z: np.ndarray, b: np.ndarray) -> tuple[int, ...] | None:
    """Permutation theta of the rows of b with Z = sum_t outer(b_t, b_theta(t)),
    or None.  For a type I matrix with its own factor this returns the
    identity permutation."""
    Z = np.asarray(Z, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    r = b.shape[0]
    used = [False] * r
    theta: list[int] = []

    def search(R: np.ndarray) -> bool:
        t = len(theta)
        if t == r:
            return not R.any()
        for cand in range(r):
            if used[cand]:
                continue
            R2 = R - np.outer(b[t], b[cand])
            if (R2 < 0).any():
                continue
            used[cand] = True
            theta.append(cand)
            if search(R2):
                return True
            theta.pop()
            used[cand] = False
        return False

    if search(Z.copy()):
        return tuple(theta)
    return None


def build_records(result: EnumerationResult) -> list[dict]:
    """Catalogue records: stats, type I factor, and for matrices without
    one, the first type I sibling whose rows realise it through a twist."""
    records: list[dict] = []
    factors: list[np.ndarray | None] = []
    for Z in result.invariants:
        b = type_I_factor(Z)
        factors.append(b)
        records.append({
            "Z": Z.tolist(),
            **matrix_stats(Z),
            "type_I": None if b is None else b.tolist(),
            "twist": None,
        })
    for idx, (rec, b) in enumerate(zip(records, factors)):
        if b is not None:
            continue
        for parent, pb in enumerate(factors):
            if pb is None:
                continue
            theta = twist_factor(result.invariants[idx], pb)
            if theta is not None:
                rec["twist"] = {"parent": parent, "theta": list(theta)}
                break
    return records
