"""Correlated Ornstein-Uhlenbeck noise pair.

The two driving fields obey dE = -A E dt + B dW with diagonal relaxation A,
diagonal amplitude B, and Wiener increments correlated by
Xi = [[1, xi], [xi, 1]].  This module certifies the noise statistics and the
orthogonal transform that decouples the pair; it does not feed numbers into
the master-equation engine at runtime.

Sampling uses numpy's PCG64 generator, so trajectories are reproducible from
an integer seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter

from .operators import ValidationError

__all__ = [
    "OUParams",
    "NoiseTrajectory",
    "sample_ou",
    "stationary_covariance",
    "spectral_density",
    "correlation_transform",
    "save_trajectory_csv",
]


@dataclass(frozen=True)
class OUParams:
    """Relaxation rates ``a``, noise amplitudes ``b`` (per channel), and the
    cross-correlation ``xi`` of the two Wiener drivers."""

    a: tuple[float, float] = (1.0, 1.0)
    b: tuple[float, float] = (1.0, 1.0)
    xi: float = 0.0

    def __post_init__(self):
        if len(self.a) != 2 or len(self.b) != 2:
            raise ValidationError("a and b must each hold two diagonal entries")
        if min(self.a) <= 0.0:
            raise ValidationError(f"relaxation rates must be positive, got {self.a}")
        if min(self.b) < 0.0:
            raise ValidationError(f"noise amplitudes must be >= 0, got {self.b}")
        if abs(self.xi) > 1.0:
            raise ValidationError(f"|xi| must be <= 1, got {self.xi}")

    @property
    def correlation_matrix(self) -> np.ndarray:
        return np.array([[1.0, self.xi], [self.xi, 1.0]])


@dataclass(frozen=True)
class NoiseTrajectory:
    """Uniformly sampled pair of noise records E1(t), E2(t)."""

    times: np.ndarray
    values: np.ndarray  # shape (n, 2)

    def __post_init__(self):
        object.__setattr__(self, "times", np.asarray(self.times, dtype=float))
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))
        if self.values.shape != (self.times.size, 2):
            raise ValidationError("values must have shape (len(times), 2)")
        dt = np.diff(self.times)
        if self.times.size < 2 or dt.min() <= 0 or np.ptp(dt) > 1e-9 * dt[0]:
            raise ValidationError("times must be a strictly increasing uniform grid")

    @property
    def e1(self) -> np.ndarray:
        return self.values[:, 0]

    @property
    def e2(self) -> np.ndarray:
        return self.values[:, 1]


def _chol2(m: np.ndarray) -> np.ndarray:
    """Lower Cholesky factor of a 2x2 PSD matrix, valid on the singular edge.

    The off-diagonal uses the ratio form (m10/m00) * l11 so that fully
    correlated inputs factor into bit-identical rows.
    """
    l11 = np.sqrt(max(m[0, 0], 0.0))
    l21 = (m[1, 0] / m[0, 0]) * l11 if m[0, 0] > 0.0 else 0.0
    l22 = np.sqrt(max(m[1, 1] - l21 * l21, 0.0))
    return np.array([[l11, 0.0], [l21, l22]])


def sample_ou(
    params: OUParams,
    dt: float,
    n_steps: int,
    seed: int,
    method: str = "euler",
) -> NoiseTrajectory:
    """Sample one trajectory of the correlated OU pair, E(0) = 0.

    ``method="euler"`` is the Euler-Maruyama discretization of the SDE with
    correlated Wiener increments built from two independent standard normals
    through the Cholesky factor of Xi dt.  ``method="exact"`` uses the exact
    one-step update (exponential decay plus a Gaussian increment with the
    exact step covariance) and is free of discretization bias, which is what
    the statistical self-tests rely on.
    """
    if dt <= 0.0:
        raise ValidationError(f"dt must be positive, got {dt}")
    if n_steps < 1:
        raise ValidationError(f"n_steps must be >= 1, got {n_steps}")
    a = np.asarray(params.a, dtype=float)
    b = np.asarray(params.b, dtype=float)
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((n_steps, 2))

    if method == "euler":
        l_xi = _chol2(params.correlation_matrix)
        incr = (z @ l_xi.T) * b * np.sqrt(dt)
        decay = 1.0 - a * dt
    elif method == "exact":
        asum = a[:, None] + a[None, :]
        cov = (np.outer(b, b) * params.correlation_matrix
               * (1.0 - np.exp(-asum * dt)) / asum)
        incr = z @ _chol2(cov).T
        decay = np.exp(-a * dt)
    else:
        raise ValidationError(f"unknown sampling method {method!r}")

    values = np.zeros((n_steps + 1, 2))
    for ch in (0, 1):
        # AR(1) recursion E[n+1] = decay * E[n] + incr[n], run in C by lfilter
        values[1:, ch] = lfilter([1.0], [1.0, -decay[ch]], incr[:, ch])
    times = np.arange(n_steps + 1) * dt
    return NoiseTrajectory(times, values)


def stationary_covariance(params: OUParams) -> np.ndarray:
    """Equal-time covariance of the stationary process.

    Solves A S + S A = B Xi B^T for diagonal A, giving
    S_ij = (B Xi B^T)_ij / (a_i + a_j); equal to (b^2/2a) Xi for symmetric
    channels.
    """
    a = np.asarray(params.a, dtype=float)
    b = np.asarray(params.b, dtype=float)
    forcing = np.outer(b, b) * params.correlation_matrix
    return forcing / (a[:, None] + a[None, :])


def spectral_density(params: OUParams, omega: float) -> np.ndarray:
    """Two-sided spectral density J(w) = (A+iw)^-1 B Xi B^T (A-iw)^-1 / 2pi.

    Hermitian, and positive semidefinite whenever |xi| <= 1.
    """
    a = np.diag(np.asarray(params.a, dtype=float)).astype(complex)
    b = np.diag(np.asarray(params.b, dtype=float))
    eye = np.eye(2)
    left = np.linalg.inv(a + 1j * omega * eye)
    right = np.linalg.inv(a - 1j * omega * eye)
    return left @ b @ params.correlation_matrix @ b.T @ right / (2.0 * np.pi)


def correlation_transform(xi: float) -> tuple[np.ndarray, tuple[float, float]]:
    """Orthogonal transform diagonalizing the noise correlation matrix.

    Returns ``(T, (1+xi, 1-xi))`` with T = [[1, 1], [1, -1]]/sqrt(2): the
    symmetric combination carries weight 1+xi, the antisymmetric one 1-xi.
    These are the rates inherited by the collective jump operators.
    """
    if abs(xi) > 1.0:
        raise ValidationError(f"|xi| must be <= 1, got {xi}")
    t = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)
    return t, (1.0 + xi, 1.0 - xi)


def save_trajectory_csv(path, traj: NoiseTrajectory) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("t,E1,E2\n")
        for t, (e1, e2) in zip(traj.times, traj.values):
            fh.write(f"{t:.17g},{e1:.17g},{e2:.17g}\n")
