"""Quasi-periodic Dirichlet-to-Neumann map on the top boundary.

The radiation condition enters the periodized variational form through
the boundary operator whose Fourier symbol is i beta_n(alpha) with
beta_n = sqrt(k^2 - (Lambda* n - alpha)^2), branch chosen with
nonnegative real and imaginary parts. The bilinear contribution on the
top boundary is assembled from exact per-element Fourier coefficients of
the piecewise-linear trace.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import WoodAnomalyWarning
from .mesh import PeriodicCellMesh


@dataclass(frozen=True)
class DtNConfig:
    """Wavenumber, reciprocal period and symmetric mode cutoff."""

    k: float
    Lambda_star: float
    J_dtn: int

    def __post_init__(self):
        if self.k <= 0 or self.Lambda_star <= 0:
            raise ValueError("k and Lambda_star must be positive")
        needed = required_modes(self.k, self.Lambda_star)
        if self.J_dtn < needed:
            raise ValueError(
                f"J_dtn = {self.J_dtn} < {needed}: all propagating modes "
                "must be inside the cutoff")


def required_modes(k: float, Lambda_star: float) -> int:
    """Minimal admissible cutoff: ceil(k / Lambda*) + 2."""
    return int(np.ceil(k / Lambda_star)) + 2


def default_mode_cutoff(k: float, Lambda_star: float, nx: int) -> int:
    """min(nx // 2, 60) capped below by the propagating-mode requirement.

    Modes beyond the boundary-mesh Nyquist are unresolvable and the
    evanescent symbol only grows linearly, so over-truncation is safe.
    """
    return max(required_modes(k, Lambda_star), min(nx // 2, 60))


def beta(config: DtNConfig, j, alpha):
    """Rayleigh wavenumber sqrt(k^2 - xi^2), xi = Lambda* j - alpha.

    Real nonnegative for propagating modes (|xi| <= k), i * positive for
    evanescent ones; warns when |beta| < 1e-8 k (Wood anomaly).
    """
    xi = config.Lambda_star * np.asarray(j, dtype=float) - alpha
    val = config.k ** 2 - xi ** 2
    b = np.sqrt(np.asarray(val, dtype=np.complex128))
    if np.any(np.abs(b) < 1e-8 * config.k):
        warnings.warn("Rayleigh wavenumber numerically at cutoff",
                      WoodAnomalyWarning, stacklevel=2)
    return b if np.ndim(j) or np.ndim(alpha) else complex(b)


def _element_fourier(omega, a, length):
    """Exact integrals (I0, I1) of e^{-i omega (a + s)} and
    s e^{-i omega (a + s)} over s in [0, length], with a series branch
    for small |omega * length|."""
    w = np.asarray(omega, dtype=float)
    L = length
    x = w * L
    small = np.abs(x) < 1e-5
    xs = np.where(small, 1.0, x)
    eL = np.exp(-1j * x)
    i0 = np.where(small,
                  L * (1 - 1j * x / 2 - x ** 2 / 6 + 1j * x ** 3 / 24),
                  L * (1 - eL) / (1j * xs))
    i1 = np.where(small,
                  L * L * (0.5 - 1j * x / 3 - x ** 2 / 8 + 1j * x ** 3 / 30),
                  L * L * (eL * (1 + 1j * xs) - 1) / (xs ** 2))
    return np.exp(-1j * w * a) * i0, np.exp(-1j * w * a) * i1


def top_trace_matrix(mesh: PeriodicCellMesh, J: int) -> np.ndarray:
    """Phi[n, t]: Fourier coefficient of the t-th top hat function.

    Phi[n, t] = (1/Lambda) integral of phi_t(x1) e^{-i Lambda* n x1}
    over one period, n = -J..J, computed exactly per boundary element.
    """
    nx = mesh.nx
    dx = mesh.dx
    lam = mesh.Lambda
    ns = np.arange(-J, J + 1)
    omega = 2 * np.pi / lam * ns
    phi = np.zeros((ns.size, nx), dtype=np.complex128)
    # top nodes sit at x1 = dx..Lambda (index order left to right);
    # element e spans [e dx, (e+1) dx] with left node e-1 and right node e
    # (left node of the first element is the wrapped last node).
    for e in range(nx):
        a = e * dx
        i0, i1 = _element_fourier(omega, a, dx)
        left = (e - 1) % nx
        right = e
        phi[:, left] += (i0 - i1 / dx) / lam
        phi[:, right] += (i1 / dx) / lam
    return phi


def boundary_fourier_coeffs(mesh: PeriodicCellMesh, boundary_values,
                            J: int) -> np.ndarray:
    """Fourier coefficients of the piecewise-linear top trace.

    ``boundary_values`` holds one value per top node, ordered like
    ``mesh.top_nodes``; returns the 2J + 1 coefficients for n = -J..J.
    """
    values = np.asarray(boundary_values, dtype=np.complex128)
    if values.shape[-1] != mesh.nx:
        raise ValueError("need one value per top node")
    return top_trace_matrix(mesh, J) @ values


def dtn_bilinear_matrix(config: DtNConfig, mesh: PeriodicCellMesh,
                        alpha: float) -> np.ndarray:
    """Dense top-boundary matrix Q(alpha) over the top nodes.

    Q[m, l] = -Lambda sum_n i beta_n(alpha) phihat_l(n) conj(phihat_m(n));
    rank at most 2 J_dtn + 1, Hermitian up to the anti-Hermitian
    propagating part.
    """
    J = config.J_dtn
    phi = top_trace_matrix(mesh, J)
    b = beta(config, np.arange(-J, J + 1), alpha)
    return -mesh.Lambda * (phi.conj().T * (1j * b)[None, :]) @ phi
