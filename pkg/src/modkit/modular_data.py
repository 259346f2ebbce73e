"""Modular data (S, T) of a fusion system with rational twists.

With omega_lambda = exp(2 pi i t_lambda), the unnormalised matrix

    Y[l, m] = omega_l * omega_m * sum_r N[l, m, r] * d_r / omega_r

always exists; it carries the degeneracy structure even when the Gauss
sum z = sum_rho d_rho^2 omega_rho vanishes and no S-matrix can be
normalised.  When z != 0, S = Y / |z| and T = exp(-i pi c / 12) Omega
with c = 4 arg(z) / pi.  The twists pin c only mod 8, and shifting c by
8 rescales T by a cube root of unity that cancels in every modular
relation, so c is normalised to the principal value in (-4, 4] and
reported mod 8 separately.

A fusion system with twists need not be modular; verify_modular checks
unitarity of S and T, T S T S T = S, that S^2 is the conjugation
permutation, and (separately) the Verlinde reconstruction of the fusion
coefficients.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp
import numpy as np

from .fusion_core import FusionSystem
from .reports import Check, Report

__all__ = [
    "DegenerateNormalizationError",
    "DichotomyViolation",
    "ModularData",
    "twist_phases",
    "build_Y",
    "central_charge",
    "modular_data",
    "conjugation_matrix",
    "verlinde_fusion",
    "verify_modular",
    "verlinde_check",
    "degenerate_sectors",
    "modular_data_mp",
]


class DegenerateNormalizationError(ValueError):
    """|z| is numerically zero: S is undefined, only Y and Omega exist."""


class DichotomyViolation(RuntimeError):
    """A Y row sum against the vacuum was neither w d_lambda nor 0."""

    def __init__(self, label: int, value: complex, w: float):
        self.label = label
        self.value = value
        self.w = w
        super().__init__(
            f"label {label}: row sum {value:.6g} is neither 0 nor w*d "
            f"(w = {w:.6g}); input data inconsistent")


def twist_phases(F: FusionSystem) -> np.ndarray:
    """omega_lambda = exp(2 pi i t_lambda) as a complex vector."""
    if F.twists is None:
        raise ValueError("fusion system carries no twists")
    return np.array([cmath.exp(2j * math.pi * float(t)) for t in F.twists])


def build_Y(F: FusionSystem, convention: str = "product") -> np.ndarray:
    """Unnormalised Y matrix.

    convention "product" puts omega_l omega_m / omega_r inside the fusion
    sum; "inverse" uses the reciprocal phase and yields conj(Y).  The two
    appear interchangeably in the literature, so the choice is explicit.
    """
    omega = twist_phases(F)
    if convention == "inverse":
        omega = np.conj(omega)
    elif convention != "product":
        raise ValueError(f"unknown phase convention {convention!r}")
    weighted = F.N @ (F.d / omega)        # sum_r N[l, m, r] d_r / omega_r
    Y = omega[:, None] * omega[None, :] * weighted
    Y.setflags(write=False)
    return Y


def central_charge(F: FusionSystem) -> tuple[complex, float]:
    """Gauss sum z and principal central charge c = 4 arg(z) / pi."""
    omega = twist_phases(F)
    z = complex(np.sum(F.d * F.d * omega))
    if abs(z) < 1e-9 * max(1.0, F.w):
        raise DegenerateNormalizationError(
            "Gauss sum z vanishes; S has no normalisation (use Y and Omega)")
    c = 4.0 * math.atan2(z.imag, z.real) / math.pi
    return z, c


def _snap_c(c: float) -> Fraction | None:
    f = Fraction(c).limit_denominator(10 ** 4)
    return f if abs(float(f) - c) < 1e-9 else None


@dataclass(frozen=True, eq=False)
class ModularData:
    """S, T and the Gauss sum of a fusion system with twists.

    c is the principal central charge in (-4, 4]; c_rational is its
    continued-fraction snap when that is exact to 1e-9 (always, for the
    built-in systems).  Y = |z| S has the quantum dimensions as row 0.
    """

    system: FusionSystem
    S: np.ndarray
    T: np.ndarray
    z: complex
    c: float
    c_rational: Fraction | None

    @property
    def n(self) -> int:
        return self.system.n

    @property
    def Y(self) -> np.ndarray:
        return abs(self.z) * self.S

    @property
    def omega(self) -> np.ndarray:
        return twist_phases(self.system)

    @property
    def c_mod8(self) -> float:
        return self.c % 8.0


def modular_data(F: FusionSystem, convention: str = "product") -> ModularData:
    """Compute (S, T) from fusion coefficients, dimensions and twists."""
    z, c = central_charge(F)
    if convention == "inverse":
        z, c = z.conjugate(), -c
    Y = build_Y(F, convention)
    S = Y / abs(z)
    omega = twist_phases(F)
    if convention == "inverse":
        omega = np.conj(omega)
    T = cmath.exp(-1j * math.pi * c / 12.0) * np.diag(omega)
    S.setflags(write=False)
    T.setflags(write=False)
    return ModularData(system=F, S=S, T=T, z=z, c=c, c_rational=_snap_c(c))


def conjugation_matrix(F: FusionSystem) -> np.ndarray:
    C = np.zeros((F.n, F.n), dtype=np.int64)
    C[np.arange(F.n), list(F.conj)] = 1
    return C


def verlinde_fusion(S: np.ndarray) -> tuple[np.ndarray, float]:
    """Fusion coefficients from S by the Verlinde formula.

    N[l, m, r] = sum_n S[l, n] S[m, n] conj(S[r, n]) / S[0, n].

    Returns the rounded integer array and the largest deviation of the
    raw values from those integers.
    """
    ratio = S / S[0]                      # ratio[l, n] = S[l, n] / S[0, n]
    raw = np.einsum("ln,mn,rn->lmr", S, ratio, np.conj(S))
    N = np.rint(raw.real).astype(np.int64)
    dev = float(np.max(np.abs(raw - N)))
    return N, dev


def verify_modular(md: ModularData, tol: float = 1e-9) -> Report:
    """Check that (S, T) represent the modular relations."""
    F = md.system
    S, T = md.S, md.T
    n = F.n
    checks: list[Check] = []

    def add(name: str, dev: float, extra: str = "") -> None:
        detail = f"max dev {dev:.3e}" + (f"; {extra}" if extra else "")
        checks.append(Check(name, bool(dev <= tol), detail))

    Idn = np.eye(n)
    add("s-unitary", float(np.max(np.abs(S @ np.conj(S.T) - Idn))))
    add("t-unitary", float(np.max(np.abs(T @ np.conj(T.T) - Idn))))
    add("s-symmetric", float(np.max(np.abs(S - S.T))))
    add("st-relation", float(np.max(np.abs(T @ S @ T @ S @ T - S))),
        "T S T S T = S")
    C_raw = S @ S
    C = np.rint(C_raw.real).astype(np.int64)
    perm = (np.all((C == 0) | (C == 1)) and np.all(C.sum(axis=0) == 1)
            and np.all(C.sum(axis=1) == 1))
    dev_c = float(np.max(np.abs(C_raw - C)))
    checks.append(Check("conjugation-permutation", bool(perm and dev_c <= tol),
                        f"max dev {dev_c:.3e}"))
    if perm:
        add("conjugation-involution", float(np.max(np.abs(C @ C - Idn))))
        match = np.array_equal(np.nonzero(C)[1], np.array(F.conj))
        checks.append(Check("conjugation-match", bool(match),
                            "S^2 sends each label to its conjugate"))
    add("s-row0", float(np.max(np.abs(S[0] / S[0, 0] - F.d))),
        "S[0, m] / S[0, 0] = d_m")
    add("global-index", abs(abs(md.z) ** 2 - F.w) / max(1.0, F.w),
        f"|z|^2 = {abs(md.z) ** 2:.6f}, w = {F.w:.6f}")
    c_txt = str(md.c_rational) if md.c_rational is not None else f"{md.c:.9f}"
    return Report(title=f"modular data (n={n}, c={c_txt}, c mod 8 = "
                        f"{md.c_mod8:.6f})", checks=tuple(checks))


def verlinde_check(md: ModularData, tol: float = 1e-7) -> Report:
    """Verlinde reconstruction of the integer fusion tensor from S."""
    Nv, dev = verlinde_fusion(md.S)
    ok = bool(np.array_equal(Nv, md.system.N) and dev <= tol)
    check = Check("verlinde", ok,
                  f"max dev {dev:.3e}; integers "
                  + ("match" if np.array_equal(Nv, md.system.N) else "DIFFER"))
    return Report(title=f"verlinde reconstruction (n={md.n})", checks=(check,))


def degenerate_sectors(F: FusionSystem, tol: float = 1e-6) -> list[int]:
    """Labels l with sum_m Y[l, m] d_m = w d_l.

    Every row sum must land within tol of either w d_l (degenerate) or 0
    (non-degenerate); anything in between raises DichotomyViolation.  On
    a modular system only the vacuum is degenerate; a fully degenerate
    system returns every label.
    """
    Y = build_Y(F)
    R = Y @ F.d                           # Y[m, 0] = d_m
    scale = max(1.0, F.w)
    out = []
    for lam in range(F.n):
        if abs(R[lam] - F.w * F.d[lam]) < tol * scale:
            out.append(lam)
        elif abs(R[lam]) >= tol * scale:
            raise DichotomyViolation(lam, complex(R[lam]), F.w)
    return out


def _mp_omega(t: Fraction):
    angle = 2 * mp.pi * mp.mpf(t.numerator) / mp.mpf(t.denominator)
    return mp.e ** (1j * angle)


def modular_data_mp(F: FusionSystem, dps: int = 40):
    """High precision (S, omega, z) as mpmath matrices.

    The quantum dimensions are refined from the float values by Rayleigh
    quotient iteration on M = sum_a N_a, then S is rebuilt from the
    exact rational twists.  Used to re-certify enumeration output far
    below float round-off.  Returns (S, omega, z) at `dps` digits.
    """
    if F.twists is None:
        raise ValueError("fusion system carries no twists")
    n = F.n
    with mp.workdps(dps):
        M = mp.matrix(F.N.sum(axis=0).tolist())
        v = mp.matrix([mp.mpf(x) for x in F.d])
        for _ in range(60):
            sigma = (v.T * (M * v))[0, 0] / (v.T * v)[0, 0]
            try:
                y = mp.lu_solve(M - sigma * mp.eye(n), v)
            except ZeroDivisionError:
                break                     # sigma is (numerically) exact
            v = y / mp.norm(y)
            if mp.norm(M * v - sigma * v) < mp.mpf(10) ** (-(dps - 3)):
                break
        d = v / v[0]
        omega = mp.matrix([_mp_omega(t) for t in F.twists])
        z = mp.mpc(0)
        for r in range(n):
            z += d[r] * d[r] * omega[r]
        S = mp.zeros(n, n)
        for l in range(n):
            for m in range(n):
                acc = mp.mpc(0)
                Nlm = F.N[l, m]
                for r in range(n):
                    if Nlm[r]:
                        acc += Nlm[r] * d[r] / omega[r]
                S[l, m] = omega[l] * omega[m] * acc / abs(z)
        return S, omega, z
