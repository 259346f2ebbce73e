"""Global index identities and degenerate-subsystem invariants.

Quantities attached to a coupling matrix Z over a fusion system:

    w / w+  = sum_l d_l Z[l, 0]        w / w-   = sum_l Z[0, l] d_l
    w^2 / w_alpha = d^T Z d            w0 = w+ w- / w_alpha

together with identities tying them to the degenerate sectors: the
vacuum-coupled norm sums A and B, the commutation residuals of Z with Y
and Omega, and the counting consequences of the induced full system
(w_Delta = w^2 and the factorised sector count).

The degenerate-subsystem construction builds a coupling matrix from a
fusion- and conjugation-closed label subset Gamma whose degenerate part
Theta is purely bosonic with integer dimensions:

    Z[l, m] = sum_{th in Theta} N[conj(l), th, m] * d_th   (l, m in Gamma)

and zero outside Gamma, then certifies Omega- and Y-commutation and the
closure assumption that Y rows outside Gamma pair to zero with the
vacuum column over Gamma.

All operations accept either a FusionSystem with twists or a full
ModularData; only Y and Omega are ever needed, so fully degenerate
systems (where S does not exist) are first-class inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fusion_core import FusionSystem, make_fusion_system, normalize_twist
from .modular_data import ModularData, build_Y, degenerate_sectors
from .reports import Check, Report

__all__ = [
    "GlobalIndices",
    "global_indices",
    "chiral_norm_check",
    "commutant_check",
    "lr_counting",
    "YClosureError",
    "degenerate_invariant",
    "product_system",
    "verify_extension",
]


class YClosureError(RuntimeError):
    """Gamma is not Y-closed: a row outside Gamma pairs non-trivially
    with the vacuum column over Gamma."""


def _system_of(x) -> FusionSystem:
    return x.system if isinstance(x, ModularData) else x


@dataclass(frozen=True)
class GlobalIndices:
    w: float
    w_plus: float
    w_minus: float
    w_alpha: float
    w_zero: float


def global_indices(Z: np.ndarray, d: np.ndarray) -> GlobalIndices:
    """The five index quantities of a coupling matrix."""
    Z = np.asarray(Z)
    if Z[0, 0] != 1:
        raise ValueError("coupling matrix must have Z[0, 0] = 1")
    w = float(d @ d)
    s_plus = float(d @ Z[:, 0])
    s_minus = float(Z[0, :] @ d)
    s_alpha = float(d @ Z @ d)
    w_alpha = w * w / s_alpha
    w_plus = w / s_plus
    w_minus = w / s_minus
    return GlobalIndices(w=w, w_plus=w_plus, w_minus=w_minus, w_alpha=w_alpha,
                         w_zero=w_plus * w_minus / w_alpha)


def _omega_support_ok(F: FusionSystem, Z: np.ndarray) -> bool:
    """Omega Z = Z Omega, decided exactly on the rational twists."""
    rows, cols = np.nonzero(Z)
    return all(F.twists[a] == F.twists[b] for a, b in zip(rows, cols))


def chiral_norm_check(system, Z: np.ndarray, tol: float = 1e-6) -> Report:
    """Vacuum-coupled norm sums against the degenerate-sector prediction.

    A = sum Y[0,l] Y[l,m] Z[m,0] and B likewise with Z[0,m] must both
    equal w * sum_{l degenerate} d_l Z[l,0]; the phase-dressed double sum
    C = sum d_l (omega_l^-1 omega_m) Z[l,m] d_m must equal d^T Z d since
    Z is supported where the twists agree.
    """
    F = _system_of(system)
    Z = np.asarray(Z)
    if not _omega_support_ok(F, Z):
        raise ValueError("Z does not commute with Omega; precondition failed")
    Y = build_Y(F)
    omega = np.array([np.exp(2j * np.pi * float(t)) for t in F.twists])
    deg = degenerate_sectors(F, tol=tol)
    d = F.d
    w = F.w
    A = complex(Y[0] @ Y @ Z[:, 0].astype(float))
    B = complex(Y[0] @ Y @ Z[0, :].astype(float))
    target = w * float(sum(d[lam] * Z[lam, 0] for lam in deg))
    C = complex((d / omega) @ (Z * omega[None, :]) @ d)
    dZd = float(d @ Z @ d)
    checks = (
        Check("norm-plus", abs(A - target) <= tol * max(1.0, abs(target)),
              f"A = {A:.6f}, w*deg-sum = {target:.6f}"),
        Check("norm-minus", abs(B - target) <= tol * max(1.0, abs(target)),
              f"B = {B:.6f}, w*deg-sum = {target:.6f}"),
        Check("phase-aligned", abs(C - dZd) <= tol * max(1.0, abs(dZd)),
              f"C = {C:.6f}, d Z d = {dZd:.6f}"),
    )
    return Report(title=f"chiral norms (n={F.n})", checks=checks)


def commutant_check(system, Z: np.ndarray, tol: float = 1e-8) -> Report:
    """Residuals of Z against Y and Omega plus the degenerate-sum bound."""
    F = _system_of(system)
    Z = np.asarray(Z).astype(float)
    Y = build_Y(F)
    omega = np.array([np.exp(2j * np.pi * float(t)) for t in F.twists])
    res_y = float(np.max(np.abs(Y @ Z - Z @ Y)))
    res_omega = float(np.max(np.abs(omega[:, None] * Z - Z * omega[None, :])))
    deg = degenerate_sectors(F)
    lhs = float(sum(F.d[lam] * Z[lam, 0] for lam in deg))
    rhs = float(F.d @ Z @ F.d) / F.w      # w / w_alpha
    checks = (
        Check("y-commutant", res_y <= tol, f"max residual {res_y:.3e}"),
        Check("omega-commutant", res_omega <= tol,
              f"max residual {res_omega:.3e}"),
        Check("degenerate-bound", lhs <= rhs + 1e-9,
              f"deg-sum = {lhs:.6f} <= w/w_alpha = {rhs:.6f}"),
    )
    return Report(title=f"commutant residuals (n={F.n})", checks=checks)


def lr_counting(Z: np.ndarray, d: np.ndarray, rel_tol: float = 1e-8) -> Report:
    """Counting consequences of full induction.

    v0 = (d^T Z d)^2 so w_Delta = w^4 / v0; the verdict is whether
    w_Delta = w^2, i.e. d^T Z d = w.  The doubled-system sector count
    factorises: sum over two index pairs of (Z Z)^2 equals (sum Z^2)^2.
    """
    Z = np.asarray(Z)
    if Z[0, 0] != 1:
        raise ValueError("coupling matrix must have Z[0, 0] = 1")
    w = float(d @ d)
    dZd = float(d @ Z @ d)
    v0 = dZd ** 2
    w_delta = w ** 4 / v0
    ok = abs(w_delta - w * w) <= rel_tol * w * w
    xi_sq = int(np.einsum("lm,rn->", (Z * Z).astype(np.int64),
                          (Z * Z).astype(np.int64)))
    zz = int((Z * Z).sum())
    checks = (
        Check("full-index", ok,
              f"w_Delta = {w_delta:.8f}, w^2 = {w * w:.8f}, d Z d = {dZd:.8f}"),
        Check("sector-count", xi_sq == zz * zz,
              f"sum Xi^2 = {xi_sq} = (sum Z^2)^2 = {zz * zz}"),
    )
    return Report(title="induced-system counting", checks=checks)


def degenerate_invariant(system, gamma, theta, tol: float = 1e-6) -> np.ndarray:
    """Coupling matrix of the subsystem spanned by Gamma.

    Builds Z[lam, mu] = sum_theta N[lam, theta, mu] * d_theta on Gamma x
    Gamma (multiplicity of mu in lam x theta), zero outside Gamma.  The
    same matrix equals the normalized pairing
    sum_{g in Gamma} conj(Y[lam, g]) Y[mu, g] / w_Gamma, which is checked.

    Preconditions: Gamma contains the vacuum and is closed under fusion
    and conjugation; Theta equals the degenerate sectors inside Gamma;
    every member of Theta is bosonic (twist exactly 0) with integer
    dimension.  Raises YClosureError when a row outside Gamma fails the
    closure assumption sum_{g in Gamma} conj(Y[lam, g]) Y[0, g] = 0.
    """
    F = _system_of(system)
    if F.twists is None:
        raise ValueError("fusion system carries no twists")
    gamma = sorted(set(int(g) for g in gamma))
    theta = sorted(set(int(t) for t in theta))
    gset = set(gamma)
    if 0 not in gset:
        raise ValueError("Gamma must contain the vacuum label 0")
    for a in gamma:
        if F.conj[a] not in gset:
            raise ValueError(f"Gamma not closed under conjugation at {a}")
        for b in gamma:
            hit = np.nonzero(F.N[a, b])[0]
            if not set(hit.tolist()) <= gset:
                raise ValueError(f"Gamma not closed under fusion at ({a}, {b})")
    deg = degenerate_sectors(F, tol=tol)
    if theta != sorted(set(deg) & gset):
        raise ValueError("Theta must be the degenerate sectors inside Gamma; "
                         f"expected {sorted(set(deg) & gset)}, got {theta}")
    for th in theta:
        if F.twists[th] != 0:
            raise ValueError(f"Theta member {th} is not bosonic "
                             f"(twist {F.twists[th]})")
    d_int = {}
    for th in theta:
        r = round(float(F.d[th]))
        if abs(F.d[th] - r) > 1e-9:
            raise ValueError(f"Theta member {th} has non-integer dimension "
                             f"{F.d[th]!r}")
        d_int[th] = r

    n = F.n
    Z = np.zeros((n, n), dtype=np.int64)
    for lam in gamma:
        for mu in gamma:
            Z[lam, mu] = sum(int(F.N[lam, th, mu]) * d_int[th]
                             for th in theta)

    Y = build_Y(F)
    vac_pair = np.conj(Y[:, gamma]) @ Y[0, gamma]
    for lam in range(n):
        if lam not in gset and abs(vac_pair[lam]) > tol * max(1.0, F.w):
            raise YClosureError(
                f"Gamma not Y-closed: row {lam} pairs with the vacuum column "
                f"to {vac_pair[lam]:.6g}")
    if Z[0, 0] != 1:
        raise RuntimeError("constructed matrix has Z[0, 0] != 1")
    if not _omega_support_ok(F, Z):
        raise RuntimeError("constructed matrix fails exact Omega-commutation")
    res_y = float(np.max(np.abs(Y @ Z - Z.astype(float) @ Y)))
    if res_y > tol * max(1.0, F.w):
        raise RuntimeError(f"constructed matrix fails Y-commutation "
                           f"(residual {res_y:.3e})")
    w_gamma = float(sum(F.d[g] ** 2 for g in gamma))
    Yg = Y[np.ix_(gamma, gamma)]
    cross = np.conj(Yg) @ Yg.T / w_gamma  # cross[i, j] = Z on Gamma x Gamma
    sub = Z[np.ix_(gamma, gamma)]
    if np.max(np.abs(cross - sub)) > tol * max(1.0, w_gamma):
        raise RuntimeError("integer formula disagrees with the Y pairing "
                           "cross-check on Gamma x Gamma")
    Z.setflags(write=False)
    return Z


def product_system(F1: FusionSystem, F2: FusionSystem) -> FusionSystem:
    """Tensor product: fusion tensors multiply, twists add mod 1.

    The pair (a1, a2) becomes index a1 * n2 + a2, matching np.kron.
    """
    n1, n2 = F1.n, F2.n
    n = n1 * n2
    N = np.einsum("abc,xyz->axbycz", F1.N, F2.N).reshape(n, n, n)
    labels = [f"({l1},{l2})" for l1 in F1.labels for l2 in F2.labels]
    conj = [F1.conj[a1] * n2 + F2.conj[a2]
            for a1 in range(n1) for a2 in range(n2)]
    twists = None
    if F1.twists is not None and F2.twists is not None:
        twists = [normalize_twist(F1.twists[a1] + F2.twists[a2])
                  for a1 in range(n1) for a2 in range(n2)]
    return make_fusion_system(labels, N, conj, twists)


def verify_extension(md: ModularData, S_ext: np.ndarray, T_ext: np.ndarray,
                     b_plus: np.ndarray, b_minus: np.ndarray,
                     Z: np.ndarray | None = None,
                     tol: float = 1e-8) -> Report:
    """Intertwining checks for user-supplied extension data.

    b_plus and b_minus are branching matrices with one row per extended
    sector and one column per label; they must intertwine the extended
    (S, T) with the base (S, T), and conj(b+)^T b- is the coupling
    matrix they induce.
    """
    S, T = md.S, md.T
    bp = np.asarray(b_plus)
    bm = np.asarray(b_minus)
    checks = [
        Check("branching-integer",
              bool(np.all(bp >= 0) and np.all(bm >= 0)
                   and np.issubdtype(bp.dtype, np.integer)
                   and np.issubdtype(bm.dtype, np.integer)),
              "b+ and b- are non-negative integer matrices"),
    ]
    for name, b in (("plus", bp), ("minus", bm)):
        dev_s = float(np.max(np.abs(S_ext @ b - b @ S)))
        dev_t = float(np.max(np.abs(T_ext @ b - b @ T)))
        checks.append(Check(f"s-intertwine-{name}", dev_s <= tol,
                            f"max dev {dev_s:.3e}"))
        checks.append(Check(f"t-intertwine-{name}", dev_t <= tol,
                            f"max dev {dev_t:.3e}"))
    Zc = np.conj(bp).T @ bm
    if Z is not None:
        match = bool(np.max(np.abs(Zc - np.asarray(Z))) <= tol)
        checks.append(Check("coupling-product", match,
                            "conj(b+)^T b- reproduces Z"))
    return Report(title=f"extension data ({bp.shape[0]} extended sectors)",
                  checks=tuple(checks))
