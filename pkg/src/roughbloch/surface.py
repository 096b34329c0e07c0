"""Rough-surface profiles, the strip-flattening map, and its coefficients.

The physical domain above the surface height function is pulled back to
the flat strip [h0, H] by a vertical diffeomorphism that sends the line
x2 = h0 onto the surface and is the identity above x2 = H0. The change
of variables turns the Laplacian into a variable-coefficient operator
with matrix coefficient A_theta and scalar c_theta; what the solver
consumes are the perturbations A = A_theta - I and c = c_theta - 1,
supported in h0 <= x2 < H0, restricted per translated cell and masked to
the central band of cells.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import SingularMapError

PROFILE_CONSTANT = 0
PROFILE_SINE = 1
PROFILE_CUSTOM = 2


@dataclass(frozen=True)
class SurfaceProfile:
    """Surface height function with derivative and global bounds.

    ``kind``/``params`` mirror eval/deriv for the named profiles so that
    compiled kernels can evaluate the surface without Python callbacks.
    """

    eval: Callable
    deriv: Callable
    inf_height: float
    sup_height: float
    lipschitz_bound: float
    kind: int = PROFILE_CUSTOM
    params: tuple = field(default=())


def constant_profile(height: float) -> SurfaceProfile:
    h = float(height)
    return SurfaceProfile(
        eval=lambda t: np.full_like(np.asarray(t, dtype=float), h),
        deriv=lambda t: np.zeros_like(np.asarray(t, dtype=float)),
        inf_height=h,
        sup_height=h,
        lipschitz_bound=0.0,
        kind=PROFILE_CONSTANT,
        params=(h,),
    )


def sine_profile(mean: float, amplitude: float, frequency: float) -> SurfaceProfile:
    m, a, f = float(mean), float(amplitude), float(frequency)
    return SurfaceProfile(
        eval=lambda t: m + a * np.sin(f * np.asarray(t, dtype=float)),
        deriv=lambda t: a * f * np.cos(f * np.asarray(t, dtype=float)),
        inf_height=m - abs(a),
        sup_height=m + abs(a),
        lipschitz_bound=abs(a * f),
        kind=PROFILE_SINE,
        params=(m, a, f),
    )


def custom_profile(func: Callable, deriv: Optional[Callable] = None,
                   inf_height: float = None, sup_height: float = None,
                   lipschitz_bound: float = None,
                   fd_scale: float = 2 * np.pi) -> SurfaceProfile:
    """Profile from a user callable; derivative by central differences
    (step 1e-6 * fd_scale) when none is supplied."""
    if deriv is None:
        step = 1e-6 * fd_scale

        def deriv(t, _f=func, _s=step):
            t = np.asarray(t, dtype=float)
            return (_f(t + _s) - _f(t - _s)) / (2.0 * _s)

    if inf_height is None or sup_height is None or lipschitz_bound is None:
        t = np.linspace(-64 * np.pi, 64 * np.pi, 65537)
        v = np.asarray(func(t), dtype=float)
        d = np.asarray(deriv(t), dtype=float)
        inf_height = float(v.min()) if inf_height is None else inf_height
        sup_height = float(v.max()) if sup_height is None else sup_height
        if lipschitz_bound is None:
            lipschitz_bound = float(np.abs(d).max())
    return SurfaceProfile(eval=func, deriv=deriv, inf_height=inf_height,
                          sup_height=sup_height, lipschitz_bound=lipschitz_bound)


def eval_profile(profile: SurfaceProfile, t):
    """Height and slope of the surface at t. Rejects non-finite t."""
    arr = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("profile argument must be finite")
    h = np.asarray(profile.eval(arr), dtype=float)
    s = np.asarray(profile.deriv(arr), dtype=float)
    if arr.ndim == 0:
        return float(h), float(s)
    return h, s


def _cubic_weight(x2, h0, H0):
    """(H0 - x2)^3 / (H0 - h0)^3 on [h0, H0), zero above H0."""
    x2 = np.asarray(x2, dtype=float)
    w = (H0 - x2) ** 3 / (H0 - h0) ** 3
    return np.where(x2 >= H0, 0.0, w)


def _cubic_weight_d(x2, h0, H0):
    x2 = np.asarray(x2, dtype=float)
    d = -3.0 * (H0 - x2) ** 2 / (H0 - h0) ** 3
    return np.where(x2 >= H0, 0.0, d)


@dataclass(frozen=True)
class FlatteningMap:
    """Vertical diffeomorphism from the flat strip onto the physical domain.

    Maps (x1, h0) to (x1, zeta(x1)), is the identity for x2 >= H0, and is
    checked for strict monotonicity in x2 on a 1024x64 sample grid at
    construction (SingularMapError on failure).
    """

    profile: SurfaceProfile
    h0: float
    H0: float
    H: float
    period: float = 2 * np.pi

    def __post_init__(self):
        if not (self.h0 < self.H0 < self.H):
            raise ValueError(
                f"need h0 < H0 < H, got {self.h0}, {self.H0}, {self.H}")
        p = self.profile
        if not (self.h0 < p.inf_height <= p.sup_height < self.H0):
            raise ValueError(
                "surface must lie strictly between h0 and H0: "
                f"[{p.inf_height}, {p.sup_height}] vs ({self.h0}, {self.H0})")
        x1 = np.linspace(0.0, self.period, 1024)
        x2 = np.linspace(self.h0, self.H0, 64)
        zeta = np.asarray(p.eval(x1), dtype=float)
        d2 = 1.0 + _cubic_weight_d(x2, self.h0, self.H0)[None, :] \
            * (zeta[:, None] - self.h0)
        if np.any(d2 <= 0.0):
            i, j = np.unravel_index(np.argmin(d2), d2.shape)
            raise SingularMapError(
                "flattening map is not a diffeomorphism: d theta2/d x2 = "
                f"{d2[i, j]:.3e} at x1={x1[i]:.4f}, x2={x2[j]:.4f}")


def theta_map(fmap: FlatteningMap, x):
    """Image of strip point(s) x under the flattening map.

    x may be a pair or an (n, 2) array; x2 < h0 is a domain error.
    """
    pts = np.asarray(x, dtype=float)
    single = pts.ndim == 1
    pts = np.atleast_2d(pts)
    if np.any(pts[:, 1] < fmap.h0 - 1e-14):
        raise ValueError("theta_map defined only for x2 >= h0")
    zeta = np.asarray(fmap.profile.eval(pts[:, 0]), dtype=float)
    w = _cubic_weight(pts[:, 1], fmap.h0, fmap.H0)
    out = pts.copy()
    out[:, 1] = pts[:, 1] + w * (zeta - fmap.h0)
    return out[0] if single else out


def theta_jacobian_parts(fmap: FlatteningMap, x1, x2):
    """(d1 theta2, d2 theta2) on arrays; theta1 = x1 so the Jacobian is
    [[1, 0], [e, d]] with e, d returned here."""
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    zeta = np.asarray(fmap.profile.eval(x1), dtype=float)
    dzeta = np.asarray(fmap.profile.deriv(x1), dtype=float)
    w = _cubic_weight(x2, fmap.h0, fmap.H0)
    wd = _cubic_weight_d(x2, fmap.h0, fmap.H0)
    e = w * dzeta
    d = 1.0 + wd * (zeta - fmap.h0)
    return e, d


def theta_coefficients(fmap: FlatteningMap, x):
    """(A_theta, c_theta) at one strip point.

    c_theta = |det grad theta|, A_theta = c_theta (grad theta)^-1
    (grad theta)^-T; with the vertical map this reduces to
    A_theta = [[d, -e], [-e, (1 + e^2)/d]] and c_theta = d.
    """
    x = np.asarray(x, dtype=float)
    if x[1] < fmap.h0 - 1e-14:
        raise ValueError("theta_coefficients defined only for x2 >= h0")
    e, d = theta_jacobian_parts(fmap, x[0], x[1])
    e = float(e)
    d = float(d)
    if d <= 0.0:
        raise SingularMapError(f"det grad theta = {d:.3e} <= 0 at {x}")
    a = np.array([[d, -e], [-e, (1.0 + e * e) / d]])
    return a, d


@dataclass(frozen=True)
class CoefficientField:
    """Perturbation coefficients A = A_theta - I and c = c_theta - 1.

    Both vanish identically for x2 >= support_top (= H0). ``components``
    evaluates (A11, A12, A22, c) on arrays; A21 = A12 by symmetry.
    """

    fmap: FlatteningMap

    @property
    def support_top(self) -> float:
        return self.fmap.H0

    def components(self, x1, x2):
        e, d = theta_jacobian_parts(self.fmap, x1, x2)
        above = np.asarray(x2, dtype=float) >= self.fmap.H0
        if np.any(d <= 0.0):
            raise SingularMapError("det grad theta <= 0 inside the band")
        a11 = d - 1.0
        a12 = -e
        a22 = (1.0 + e * e) / d - 1.0
        c = d - 1.0
        zero = np.zeros_like(a11)
        return (np.where(above, zero, a11), np.where(above, zero, a12),
                np.where(above, zero, a22), np.where(above, zero, c))

    def matrix_at(self, x):
        """(A 2x2, c) at a single point, exact zeros above the support."""
        a11, a12, a22, c = self.components(
            np.asarray([x[0]]), np.asarray([x[1]]))
        return np.array([[a11[0], a12[0]], [a12[0], a22[0]]]), float(c[0])


def truncation_cells(N: int) -> np.ndarray:
    """Index set Z_N = {-N/2 + 1, ..., N/2} of retained cells (N even)."""
    if N <= 0 or N % 2:
        raise ValueError(f"N must be a positive even integer, got {N}")
    return np.arange(-N // 2 + 1, N // 2 + 1)


def masked_cell_coefficients(cfield: CoefficientField, x, m: int, N: int):
    """Per-cell restricted, mask-truncated coefficients.

    Returns (A(x1 + Lambda*m, x2), c(...)) when m lies in Z_N, and exact
    zeros otherwise. The cell period Lambda is the one carried by the
    underlying flattening map.
    """
    cells = truncation_cells(N)
    if m < cells[0] or m > cells[-1]:
        return np.zeros((2, 2)), 0.0
    lam = cfield.fmap.period
    return cfield.matrix_at((x[0] + lam * m, x[1]))
