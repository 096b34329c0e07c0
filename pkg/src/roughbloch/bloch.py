"""Discrete Floquet-Bloch transform machinery.

The quasi-periodicity parameter alpha lives on the interval
(-pi/Lambda, pi/Lambda], sampled at N midpoints of equal subintervals.
A discrete field is a table of complex coefficients w[j, l] over
(alpha-interval j, FEM basis node l); its physical-space synthesis over
translated cells factorizes into per-interval phases times the sinc-type
envelope s(t) = 2 sin(pi t / (N Lambda)) / t, which is what makes an
FFT-accelerated cell synthesis possible.

Sign conventions are fixed so that the three operations compose
consistently (forward transform of data, per-cell synthesis, and the
adjoint data phases); see ``cell_synthesis_matrix`` and
``cell_data_phases``.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class BlochGrid:
    """Quasi-periodicity grid: N midpoints of the Brillouin interval."""

    N: int
    Lambda: float
    alphas: np.ndarray       # (N,)
    C_Lambda: float          # sqrt(Lambda / (2 pi))

    @property
    def interval_width(self) -> float:
        return 2 * np.pi / (self.N * self.Lambda)

    @property
    def Lambda_star(self) -> float:
        return 2 * np.pi / self.Lambda


def alpha_grid(N: int, Lambda: float) -> BlochGrid:
    """Midpoint grid alpha_j = -pi/Lambda + (2j - 1) pi / (N Lambda)."""
    if N < 2 or N % 2:
        raise ValueError(f"N must be an even integer >= 2, got {N}")
    if Lambda <= 0:
        raise ValueError("Lambda must be positive")
    j = np.arange(1, N + 1)
    alphas = -np.pi / Lambda + (2 * j - 1) * np.pi / (N * Lambda)
    return BlochGrid(N=N, Lambda=Lambda, alphas=alphas,
                     C_Lambda=np.sqrt(Lambda / (2 * np.pi)))


@dataclass
class BlochField:
    """Discrete unknown: N x M' complex coefficients over a mesh."""

    grid: BlochGrid
    mesh: object
    coeffs: np.ndarray       # (N, M') complex

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=np.complex128)
        if self.coeffs.shape[0] != self.grid.N:
            raise ValueError("coefficient rows must match grid.N")
        if not np.all(np.isfinite(self.coeffs.view(np.float64))):
            raise ValueError("non-finite Bloch coefficients")


def sinc_envelope(grid: BlochGrid, t):
    """s(t) = 2 sin(pi t / (N Lambda)) / t with a series branch near 0.

    Equals the width 2 pi / (N Lambda) of one alpha interval at t = 0.
    """
    t = np.asarray(t, dtype=float)
    NL = grid.N * grid.Lambda
    small = np.abs(t) < 1e-6 * NL
    ts = np.where(small, 1.0, t)
    out = 2.0 * np.sin(np.pi * t / NL) / ts
    x2 = (np.pi * t / NL) ** 2
    series = (2 * np.pi / NL) * (1.0 - x2 / 6.0 + x2 * x2 / 120.0)
    return np.where(small, series, out)


def sinc_envelope_d(grid: BlochGrid, t):
    """d/dt of the envelope, with the matching series branch."""
    t = np.asarray(t, dtype=float)
    NL = grid.N * grid.Lambda
    a = np.pi / NL
    small = np.abs(t) < 1e-6 * NL
    ts = np.where(small, 1.0, t)
    out = 2.0 * (a * np.cos(a * t) * ts - np.sin(a * t)) / (ts * ts)
    x = a * t
    series = 2.0 * a * a * t * (-1.0 / 3.0 + x * x / 30.0)
    return np.where(small, series, out)


def g_factor(grid: BlochGrid, j: int, m: int, x1):
    """Inverse-transform kernel g_N^(j, m)(x1), j in 1..N.

    Evaluates exp(-i alpha_j (x1 - Lambda m)) * s(x1 - Lambda m); equal
    to 2 pi / (N Lambda) at x1 = Lambda m.
    """
    if not 1 <= j <= grid.N:
        raise ValueError(f"j must lie in 1..{grid.N}")
    t = np.asarray(x1, dtype=float) - grid.Lambda * m
    return np.exp(-1j * grid.alphas[j - 1] * t) * sinc_envelope(grid, t)


def forward_bloch(grid: BlochGrid, cell_samples: dict, alpha):
    """C_Lambda * sum_m samples[m] e^{-i alpha Lambda m} over given cells."""
    alpha = np.asarray(alpha, dtype=float)
    acc = None
    for m, val in sorted(cell_samples.items()):
        term = np.asarray(val) * np.exp(-1j * alpha * grid.Lambda * m)
        acc = term if acc is None else acc + term
    if acc is None:
        raise ValueError("cell_samples must contain at least one cell")
    return grid.C_Lambda * acc


def inverse_bloch_eval(field: BlochField, m: int, x, basis_eval):
    """Pointwise inverse transform at cell m.

    C_Lambda sum_j g_N^(j,m)(x1) sum_l w[j,l] phi_l(x); ``basis_eval``
    maps a node index to phi_l(x) or is a dense (M',) array of values.
    """
    grid = field.grid
    if callable(basis_eval):
        phi = np.array([basis_eval(l) for l in range(field.coeffs.shape[1])])
    else:
        phi = np.asarray(basis_eval)
    nodal = field.coeffs @ phi.astype(np.complex128)       # (N,)
    x1 = np.asarray(x, dtype=float).reshape(-1)[0]
    g = np.array([g_factor(grid, j, m, x1) for j in range(1, grid.N + 1)])
    return grid.C_Lambda * np.sum(g * nodal)


def cell_synthesis_matrix(grid: BlochGrid, x1, cells):
    """Synthesis kernels K[j, p, q] = exp(-i alpha_j (x1 + Lambda p)) s(...).

    The physical field at cell p is C_Lambda sum_j K[j, p, q] V_j(q) for
    nodal syntheses V_j; this dense kernel backs the direct summation
    path of :func:`synthesize_cells` and the test oracles.
    """
    x1 = np.asarray(x1, dtype=float)
    cells = np.asarray(cells, dtype=int)
    t = x1[None, :] + grid.Lambda * cells[:, None]          # (P, Q)
    phase = np.exp(-1j * grid.alphas[:, None, None] * t[None])
    return phase * sinc_envelope(grid, t)[None]


def synthesize_cells(grid: BlochGrid, values: np.ndarray, x1,
                     cells, force_path: str | None = None) -> np.ndarray:
    """Sum_j exp(-i alpha_j (x1 + Lambda p)) s(x1 + Lambda p) values[j, q].

    values has shape (N, Q); returns (P, Q) over the requested cells.
    Uses a length-N FFT with a per-point phase twist for N >= 32, direct
    summation otherwise; ``force_path`` in {"fft", "direct"} overrides.
    """
    values = np.asarray(values, dtype=np.complex128)
    x1 = np.asarray(x1, dtype=float)
    cells = np.asarray(cells, dtype=int)
    path = force_path or ("fft" if grid.N >= 32 else "direct")
    if path == "direct":
        kern = cell_synthesis_matrix(grid, x1, cells)
        return np.einsum('jpq,jq->pq', kern, values)
    # alpha_j = alpha_1 + (j-1) d with d Lambda = 2 pi / N, so the p
    # dependence of the phase is a pure DFT index.
    d = grid.interval_width
    twist = np.exp(-1j * d * np.arange(grid.N)[:, None] * x1[None, :])
    F = np.fft.fft(values * twist, axis=0)                  # (N, Q)
    t = x1[None, :] + grid.Lambda * cells[:, None]          # (P, Q)
    rows = np.mod(cells, grid.N)
    pref = np.exp(-1j * grid.alphas[0] * t) * sinc_envelope(grid, t)
    return pref * F[rows, :]


def cell_data_phases(grid: BlochGrid, x1, cells) -> np.ndarray:
    """Adjoint phases exp(+i alpha_j (x1 + Lambda p)) for data transforms.

    The Bloch data of per-cell boundary traces tr_p(x1) at interval j is
    C_Lambda sum_p tr_p(x1) * phases[j, p, q]: the conjugate of the
    synthesis phase, which is what makes forward and inverse compose to
    the identity on band-limited data.
    """
    x1 = np.asarray(x1, dtype=float)
    cells = np.asarray(cells, dtype=int)
    t = x1[None, :] + grid.Lambda * cells[:, None]
    return np.exp(1j * grid.alphas[:, None, None] * t[None])


def weighted_translate_norm(norms, r: float) -> float:
    """Squared weighted norm sum_l (1 + l^2)^r ||.||^2 over translates.

    ``norms`` maps cell index l to the (unsquared) norm of the l-th
    translate coefficient, or is a sequence indexed from l = 0.
    """
    if isinstance(norms, dict):
        items = norms.items()
    else:
        items = enumerate(norms)
    return float(sum((1.0 + l * l) ** r * abs(v) ** 2 for l, v in items))
