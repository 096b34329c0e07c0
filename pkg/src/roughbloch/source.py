"""Point-source incident data and the manufactured exact solution.

The manufactured setup imposes the trace of the half-space Green's
function G( . , y) (source y below the surface) as Dirichlet data on the
truncated rough surface, so the exact scattered field is G itself and
the trace G( . , (x1, H)) on the top boundary is the reference every run
is measured against.

The Bloch data table c[j, l] is the windowed transform of the per-cell
surface traces: rough-surface trace inside the retained band Z_N, trace
on the flat line h0 outside it (the truncated-surface reading of the
mask).
"""

import logging
import warnings
from dataclasses import dataclass

import numpy as np

from .bloch import BlochGrid
from .mesh import PeriodicCellMesh
from .special import hankel_h0
from .surface import SurfaceProfile, truncation_cells

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PointSource:
    """Source position y (with 0 < y2) and wavenumber k."""

    y: tuple
    k: float

    def __post_init__(self):
        if not (self.y[1] > 0):
            raise ValueError("source must lie above x2 = 0")
        if self.k <= 0:
            raise ValueError("wavenumber must be positive")


def hankel_H0(z):
    """First-kind Hankel function H0^(1) on positive reals."""
    return hankel_h0(z)


def greens_halfspace(x, y, k: float):
    """Half-space Green's function with image point y' = (y1, -y2).

    (i/4) [H0^(1)(k |x - y|) - H0^(1)(k |x - y'|)]; vanishes on x2 = 0.
    ``x`` may be a single point or an (..., 2) array.
    """
    pts = np.asarray(x, dtype=float)
    single = pts.ndim == 1
    x1 = pts[..., 0]
    x2 = pts[..., 1]
    r = np.hypot(x1 - y[0], x2 - y[1])
    ri = np.hypot(x1 - y[0], x2 + y[1])
    if np.any(r == 0.0):
        raise ValueError("Green's function evaluated at the source point")
    val = 0.25j * (hankel_h0(r) - hankel_h0(ri))
    return complex(val) if single else val


def exact_reference_on_gamma_H(x1, source: PointSource, k: float, H: float):
    """Exact scattered trace G((x1, H), y) on the top boundary."""
    x1 = np.asarray(x1, dtype=float)
    pts = np.stack([x1, np.full_like(x1, H)], axis=-1)
    return greens_halfspace(pts, source.y, k)


def surface_trace_table(profile: SurfaceProfile, source: PointSource,
                        x1, h0: float, Lambda: float, cells_rough,
                        N_bc: int) -> np.ndarray:
    """Traces tr_p(x1) = G at the cell-p surface point, all window cells.

    Rows run over p = -N_bc..N_bc; the surface height is zeta(x1 + p
    Lambda) for p in ``cells_rough`` and h0 (the truncated flat line)
    otherwise.
    """
    x1 = np.asarray(x1, dtype=float)
    p = np.arange(-N_bc, N_bc + 1)
    X = x1[None, :] + Lambda * p[:, None]
    heights = np.full_like(X, h0)
    rough = np.isin(p, np.asarray(cells_rough))
    if rough.any():
        heights[rough] = np.asarray(profile.eval(X[rough]), dtype=float)
    pts = np.stack([X, heights], axis=-1)
    return greens_halfspace(pts, source.y, source.k)


def bloch_dirichlet_data(grid: BlochGrid, mesh: PeriodicCellMesh,
                         profile: SurfaceProfile, source: PointSource,
                         N: int | None = None, N_bc: int = 2000) -> np.ndarray:
    """Boundary coefficient table c[j, l] over bottom nodes.

    c[j, l] = C_Lambda sum_{|p| <= N_bc} tr_p(x1_l) e^{i alpha_j (x1_l +
    Lambda p)} with the truncated-surface traces of
    :func:`surface_trace_table`. Emits a warning when the last window
    term is not negligible against the partial sum.
    """
    N = grid.N if N is None else N
    if N != grid.N:
        raise ValueError("truncation N must match the alpha grid")
    if N_bc < N // 2:
        raise ValueError("window N_bc must cover the retained cells")
    bottom = mesh.bottom_nodes
    x1 = mesh.nodes[bottom, 0]
    traces = surface_trace_table(profile, source, x1, mesh.h0, mesh.Lambda,
                                 truncation_cells(N), N_bc)
    cells = np.arange(-N_bc, N_bc + 1)
    # e^{i alpha_j (x1 + Lambda p)} factors into a (j, p) matrix times a
    # (j, l) matrix, so the window sum is a single matmul.
    cell_phase = np.exp(1j * np.outer(grid.alphas, grid.Lambda * cells))
    node_phase = np.exp(1j * np.outer(grid.alphas, x1))
    c = grid.C_Lambda * node_phase * (cell_phase @ traces.astype(complex))

    tail = np.abs(traces[-1]).max() + np.abs(traces[0]).max()
    scale = np.abs(c).max() / grid.C_Lambda
    if scale > 0 and tail > 1e-6 * scale:
        warnings.warn(
            f"Bloch data window may be short: edge terms ~{tail:.2e} "
            f"against partial sums ~{scale:.2e}", stacklevel=2)
    logger.debug("Bloch data table built: %d alphas x %d bottom nodes, "
                 "window %d cells", grid.N, x1.size, cells.size)
    return c
