"""Two-mode polarization states with fixed total photon number.

A pure state of n photons shared by two field modes lives in the (n+1)-dimensional
span of the product number states |m, n-m>, m = 0..n.  Amplitudes are indexed by m,
the photon number in mode 1.  States are treated as equivalence classes up to a
global phase; use `state_overlap` moduli for equality checks, not componentwise
amplitudes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

NORM_ATOL = 1e-12

ANALYTIC_KINDS = frozenset({"glauber", "thermal", "tmsv"})


@dataclass(frozen=True)
class PureFockState:
    """Pure state with definite total photon number n; amps[m] multiplies |m, n-m>."""

    n: int
    amps: np.ndarray

    def __post_init__(self):
        if self.n < 0 or self.n != int(self.n):
            raise ValueError(f"total photon number must be a nonnegative integer, got {self.n}")
        amps = np.array(self.amps, dtype=complex)
        if amps.shape != (self.n + 1,):
            raise ValueError(f"expected {self.n + 1} amplitudes, got shape {amps.shape}")
        norm2 = float(np.sum(np.abs(amps) ** 2))
        if abs(norm2 - 1.0) > NORM_ATOL:
            raise ValueError(f"amplitudes not normalized: sum |c_m|^2 = {norm2!r}")
        amps.flags.writeable = False
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "amps", amps)


@dataclass(frozen=True)
class MixedState:
    """Convex mixture of pure states; components may carry different photon numbers."""

    components: tuple[tuple[float, PureFockState], ...]

    def __post_init__(self):
        comps = tuple((float(w), s) for w, s in self.components)
        if not comps:
            raise ValueError("mixture needs at least one component")
        weights = np.array([w for w, _ in comps])
        if np.any(weights < 0):
            raise ValueError("mixture weights must be nonnegative")
        total = float(weights.sum())
        if abs(total - 1.0) > NORM_ATOL:
            raise ValueError(f"mixture weights must sum to 1, got {total!r}")
        object.__setattr__(self, "components", comps)


@dataclass(frozen=True)
class AnalyticQFamily:
    """Closed-form Q-function family tag: 'glauber', 'thermal' or 'tmsv', with mean
    total photon number nbar."""

    kind: str
    nbar: float

    def __post_init__(self):
        if self.kind not in ANALYTIC_KINDS:
            raise ValueError(f"unknown family {self.kind!r}; expected one of {sorted(ANALYTIC_KINDS)}")
        nbar = float(self.nbar)
        if not np.isfinite(nbar) or nbar < 0:
            raise ValueError(f"mean photon number must be finite and >= 0, got {self.nbar!r}")
        object.__setattr__(self, "nbar", nbar)


@dataclass(frozen=True)
class EulerRotation:
    """z-y-z Euler angles of an SU(2) transformation: R = e^{-i a Jz} e^{-i b Jy} e^{-i g Jz}."""

    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        if not 0.0 <= self.beta <= np.pi:
            raise ValueError(f"beta must lie in [0, pi], got {self.beta!r}")
        for name in ("alpha", "gamma"):
            v = getattr(self, name)
            if not -np.pi < v <= np.pi:
                raise ValueError(f"{name} must lie in (-pi, pi], got {v!r}")


def _basis_state(n: int, occupied: dict[int, complex]) -> PureFockState:
    amps = np.zeros(n + 1, dtype=complex)
    for m, c in occupied.items():
        amps[m] = c
    return PureFockState(n=n, amps=amps)


def make_coherent(n: int) -> PureFockState:
    """SU(2) coherent state pointing at the north pole: all n photons in mode 1."""
    if n < 0:
        raise ValueError(f"photon number must be >= 0, got {n}")
    return _basis_state(n, {n: 1.0})


def make_phase(n: int) -> PureFockState:
    """Phase state (phi = 0 representative): uniform amplitudes 1/sqrt(n+1)."""
    if n < 0:
        raise ValueError(f"photon number must be >= 0, got {n}")
    return PureFockState(n=n, amps=np.full(n + 1, 1.0 / np.sqrt(n + 1), dtype=complex))


def make_squeezed(n: int) -> PureFockState:
    """Twin-number state |n/2, n/2> for even n; for odd n the balanced superposition
    of |(n+1)/2, (n-1)/2> and |(n-1)/2, (n+1)/2>.

    n = 0, 1 leave no twin structure and are rejected.
    """
    if n < 2:
        raise ValueError(f"squeezed (twin-number) state needs n >= 2, got {n}")
    if n % 2 == 0:
        return _basis_state(n, {n // 2: 1.0})
    r = 1.0 / np.sqrt(2)
    return _basis_state(n, {(n + 1) // 2: r, (n - 1) // 2: r})


def make_noon(n: int) -> PureFockState:
    """N00N state (|n,0> + |0,n>)/sqrt(2)."""
    if n < 1:
        raise ValueError(f"N00N state needs n >= 1, got {n}")
    r = 1.0 / np.sqrt(2)
    return _basis_state(n, {0: r, n: r})


def make_hs_extremal(n: int) -> PureFockState:
    """Most nonclassical state by Hilbert-Schmidt distance from coherent mixtures.

    Known instances only: n = 2, 3 coincide with the N00N states;
    n = 4 is (|0,4> + sqrt(2)|3,1>)/sqrt(3); n = 5 is (|1,4> + |4,1>)/sqrt(2).
    """
    if n in (2, 3):
        return make_noon(n)
    if n == 4:
        return _basis_state(4, {0: 1.0 / np.sqrt(3), 3: np.sqrt(2.0 / 3.0)})
    if n == 5:
        r = 1.0 / np.sqrt(2)
        return _basis_state(5, {1: r, 4: r})
    raise ValueError(f"Hilbert-Schmidt extremal state known only for n in 2..5, got {n}")


def make_analytic(kind: str, nbar: float) -> AnalyticQFamily:
    """Tag a closed-form Q family; no state vector is materialized."""
    return AnalyticQFamily(kind=kind, nbar=nbar)


def random_pure(n: int, seed) -> PureFockState:
    """Haar-uniform pure state in the n-photon subspace.

    i.i.d. standard complex Gaussian amplitudes, normalized; deterministic for a
    given seed.
    """
    if n < 0:
        raise ValueError(f"photon number must be >= 0, got {n}")
    rng = np.random.default_rng(seed)
    z = rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1)
    return PureFockState(n=n, amps=z / np.linalg.norm(z))


def state_overlap(a: PureFockState, b: PureFockState) -> complex:
    """<a|b>; zero when the photon numbers differ."""
    if a.n != b.n:
        return 0.0 + 0.0j
    return complex(np.vdot(a.amps, b.amps))


def _log_factorials(n: int) -> np.ndarray:
    from scipy.special import gammaln

    return gammaln(np.arange(n + 1) + 1.0)


# The alternating factorial sum cancels catastrophically as n grows (error ~1e-13
# at n=20, ~1e-9 at n=40), so larger n switches to exponentiating the tridiagonal
# Jx, whose eigendecomposition is backward-stable at any n.
_FACTORIAL_SUM_MAX_N = 20


def _wigner_d_eigh(n: int, beta: float) -> np.ndarray:
    r = np.arange(n)
    off = 0.5 * np.sqrt((r + 1.0) * (n - r))
    jx = np.diag(off, 1) + np.diag(off, -1)
    lam, v = np.linalg.eigh(jx)
    mj = np.arange(n + 1) - n / 2.0
    z = np.exp(-1j * (np.pi / 2.0) * mj)  # e^{-i b Jy} = e^{-i pi/2 Jz} e^{-i b Jx} e^{+i pi/2 Jz}
    core = (v * np.exp(-1j * beta * lam)) @ v.T
    return (z[:, None] * core * z.conj()[None, :]).real


def wigner_d_matrix(n: int, beta: float) -> np.ndarray:
    """Wigner little-d matrix for j = n/2 in two-mode index convention.

    d[r, c] = <j, r - j | e^{-i beta Jy} | j, c - j> with integer row/column indices
    r, c = 0..n (photons in mode 1).  Small n uses the explicit factorial sum with
    log-factorials; large n the spectral form of e^{-i beta Jy}.
    """
    cb, sb = np.cos(beta / 2.0), np.sin(beta / 2.0)
    if sb == 0.0:
        return np.sign(cb) ** n * np.eye(n + 1)  # beta = 0 mod 2pi; 2pi flips odd-n sign
    if cb == 0.0:
        d = np.zeros((n + 1, n + 1))
        c = np.arange(n + 1)
        d[n - c, c] = (-1.0) ** (n - c)
        return d
    if n > _FACTORIAL_SUM_MAX_N:
        return _wigner_d_eigh(n, beta)
    lf = _log_factorials(n)
    lcb, lsb = np.log(cb), np.log(sb)
    r = np.arange(n + 1)[:, None]
    c = np.arange(n + 1)[None, :]
    prefactor = 0.5 * (lf[r] + lf[n - r] + lf[c] + lf[n - c])
    d = np.zeros((n + 1, n + 1))
    for k in range(n + 1):
        valid = (k >= c - r) & (k <= c) & (k <= n - r)
        i1 = np.clip(c - k, 0, n)
        i2 = np.clip(n - r - k, 0, n)
        i3 = np.clip(k - c + r, 0, n)
        logterm = (prefactor - lf[i1] - lf[k] - lf[i2] - lf[i3]
                   + (n - 2 * k + c - r) * lcb + (2 * k - c + r) * lsb)
        sign = np.where((k - c + r) % 2 == 0, 1.0, -1.0)
        d += sign * np.exp(np.where(valid, logterm, -np.inf))
    return d


def apply_su2(state: PureFockState, rot: EulerRotation) -> PureFockState:
    """Rotate a state by R(alpha, beta, gamma) = e^{-i a Jz} e^{-i b Jy} e^{-i g Jz}.

    With this convention, rotating the north-pole coherent state by
    (alpha=phi, beta=theta, gamma=anything) yields the coherent state pointing at
    (theta, phi), up to a global phase.
    """
    n = state.n
    mj = np.arange(n + 1) - n / 2.0
    d = wigner_d_matrix(n, rot.beta)
    big_d = np.exp(-1j * mj * rot.alpha)[:, None] * d * np.exp(-1j * mj * rot.gamma)[None, :]
    out = big_d @ state.amps
    # renormalize away rounding drift; the map is unitary
    return PureFockState(n=n, amps=out / np.linalg.norm(out))


def _su2_2x2(rot: EulerRotation) -> np.ndarray:
    a, b, g = rot.alpha, rot.beta, rot.gamma
    ry = np.array([[np.cos(b / 2), -np.sin(b / 2)], [np.sin(b / 2), np.cos(b / 2)]])
    za = np.diag([np.exp(-1j * a / 2), np.exp(1j * a / 2)])
    zg = np.diag([np.exp(-1j * g / 2), np.exp(1j * g / 2)])
    return za @ ry @ zg


def _wrap_angle(x: float) -> float:
    y = (x + np.pi) % (2 * np.pi) - np.pi
    return np.pi if y == -np.pi else y


def compose_rotations(second: EulerRotation, first: EulerRotation) -> EulerRotation:
    """Euler angles of `second` applied after `first` (matrix product R2 R1)."""
    u = _su2_2x2(second) @ _su2_2x2(first)
    beta = 2.0 * np.arctan2(abs(u[1, 0]), abs(u[0, 0]))
    if abs(u[1, 0]) < 1e-14:      # beta ~ 0: only alpha+gamma is defined
        return EulerRotation(_wrap_angle(2.0 * np.angle(u[1, 1])), 0.0, 0.0)
    if abs(u[0, 0]) < 1e-14:      # beta ~ pi: only alpha-gamma is defined
        return EulerRotation(_wrap_angle(2.0 * np.angle(u[1, 0])), np.pi, 0.0)
    alpha = np.angle(u[1, 1]) + np.angle(u[1, 0])
    gamma = np.angle(u[1, 1]) - np.angle(u[1, 0])
    return EulerRotation(_wrap_angle(alpha), float(beta), _wrap_angle(gamma))


def rotation_matrix(rot: EulerRotation) -> np.ndarray:
    """SO(3) matrix Rz(alpha) Ry(beta) Rz(gamma) acting on Poincare-sphere vectors."""

    def rz(t):
        return np.array([[np.cos(t), -np.sin(t), 0.0], [np.sin(t), np.cos(t), 0.0], [0.0, 0.0, 1.0]])

    def ry(t):
        return np.array([[np.cos(t), 0.0, np.sin(t)], [0.0, 1.0, 0.0], [-np.sin(t), 0.0, np.cos(t)]])

    return rz(rot.alpha) @ ry(rot.beta) @ rz(rot.gamma)
