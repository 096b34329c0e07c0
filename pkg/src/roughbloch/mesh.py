"""Structured periodic triangulation of one cell of the flattened strip.

The cell [0, Lambda] x [h0, H] is meshed by an nx-by-ny grid of
rectangles, each split bottom-left to top-right into two triangles.
Left-edge nodes are identified with their right-edge partners and are
not basis nodes; basis nodes therefore sit at x1 = dx, 2 dx, ..., Lambda.
Basis ordering: interior rows first, then the top row, then the bottom
row, so indices 0..M-1 are non-bottom and M..M'-1 lie on the bottom
boundary.

Node classes: 0 = interior, 1 = top boundary, 2 = bottom boundary.
"""

from dataclasses import dataclass

import numpy as np

NODE_INTERIOR = 0
NODE_TOP = 1
NODE_BOTTOM = 2


@dataclass(frozen=True)
class PeriodicCellMesh:
    nodes: np.ndarray        # (M', 2) basis node coordinates, x1 in (0, Lambda]
    triangles: np.ndarray    # (ntri, 3) basis node indices (periodic wrap)
    tri_coords: np.ndarray   # (ntri, 3, 2) vertex coordinates incl. seam shift
    node_class: np.ndarray   # (M',) int8
    h_target: float
    Lambda: float
    h0: float
    H: float
    nx: int
    ny: int
    dx: float
    dy: float
    M: int
    M_prime: int

    @property
    def n_triangles(self) -> int:
        return self.triangles.shape[0]

    @property
    def top_nodes(self) -> np.ndarray:
        """Basis indices of the top-boundary nodes, left to right."""
        return np.where(self.node_class == NODE_TOP)[0]

    @property
    def bottom_nodes(self) -> np.ndarray:
        return np.where(self.node_class == NODE_BOTTOM)[0]


def node_ordering(node_class: np.ndarray, nx: int):
    """Permutation putting non-bottom nodes first, bottom nodes last.

    Returns (M, M_prime, perm) where perm[new] = old index; the relative
    order within each group is preserved.
    """
    node_class = np.asarray(node_class)
    non_bottom = np.where(node_class != NODE_BOTTOM)[0]
    bottom = np.where(node_class == NODE_BOTTOM)[0]
    if bottom.size != nx:
        raise ValueError(f"expected {nx} bottom nodes, found {bottom.size}")
    perm = np.concatenate([non_bottom, bottom])
    return non_bottom.size, node_class.size, perm


def build_periodic_mesh(Lambda: float, h0: float, H: float,
                        h: float) -> PeriodicCellMesh:
    """Uniform periodic triangulation with target mesh size h.

    nx = ceil(Lambda/h) columns and ny = ceil((H - h0)/h) rows; each
    rectangle is split into two triangles along the bottom-left to
    top-right diagonal.
    """
    if Lambda <= 0 or H <= h0:
        raise ValueError("need Lambda > 0 and H > h0")
    if not (0 < h <= (H - h0) / 2):
        raise ValueError(f"mesh size h = {h} outside (0, {(H - h0) / 2}]")
    nx = int(np.ceil(Lambda / h - 1e-12))
    ny = int(np.ceil((H - h0) / h - 1e-12))
    dx = Lambda / nx
    dy = (H - h0) / ny

    # raw grid layout: column i = 1..nx (x1 = i dx), row j = 0..ny
    xs = dx * np.arange(1, nx + 1)
    ys = h0 + dy * np.arange(0, ny + 1)
    raw_nodes = np.empty((nx * (ny + 1), 2))
    raw_class = np.empty(nx * (ny + 1), dtype=np.int8)
    for j in range(ny + 1):
        sl = slice(j * nx, (j + 1) * nx)
        raw_nodes[sl, 0] = xs
        raw_nodes[sl, 1] = ys[j]
        raw_class[sl] = (NODE_BOTTOM if j == 0
                         else NODE_TOP if j == ny else NODE_INTERIOR)

    def raw_id(i, j):
        # column i = 0 is the left edge, identified with column nx
        col = nx if i == 0 else i
        return j * nx + (col - 1)

    tris = np.empty((2 * nx * ny, 3), dtype=np.int64)
    coords = np.empty((2 * nx * ny, 3, 2))
    t = 0
    for j in range(ny):
        for i in range(nx):
            # rectangle [x_{i-1}, x_i] x [y_j, y_{j+1}], i from 1..nx
            ii = i + 1
            x_left = dx * (ii - 1)
            x_right = dx * ii
            bl, br = raw_id(ii - 1, j), raw_id(ii, j)
            tl, tr = raw_id(ii - 1, j + 1), raw_id(ii, j + 1)
            tris[t] = (bl, br, tr)
            coords[t] = ((x_left, ys[j]), (x_right, ys[j]),
                         (x_right, ys[j + 1]))
            tris[t + 1] = (bl, tr, tl)
            coords[t + 1] = ((x_left, ys[j]), (x_right, ys[j + 1]),
                             (x_left, ys[j + 1]))
            t += 2

    M, M_prime, perm = node_ordering(raw_class, nx)
    inv = np.empty_like(perm)
    inv[perm] = np.arange(perm.size)
    return PeriodicCellMesh(
        nodes=raw_nodes[perm],
        triangles=inv[tris],
        tri_coords=coords,
        node_class=raw_class[perm],
        h_target=h, Lambda=Lambda, h0=h0, H=H,
        nx=nx, ny=ny, dx=dx, dy=dy, M=M, M_prime=M_prime,
    )


def triangle_geometry(mesh: PeriodicCellMesh):
    """Areas (ntri,) and constant P1 basis gradients (ntri, 3, 2)."""
    v = mesh.tri_coords
    d1 = v[:, 1] - v[:, 0]
    d2 = v[:, 2] - v[:, 0]
    det = d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0]
    area = 0.5 * det
    grads = np.empty((mesh.n_triangles, 3, 2))
    # grad phi_i = rotated opposite edge / (2 area)
    for i in range(3):
        a = v[:, (i + 1) % 3]
        b = v[:, (i + 2) % 3]
        grads[:, i, 0] = (a[:, 1] - b[:, 1]) / det
        grads[:, i, 1] = (b[:, 0] - a[:, 0]) / det
    return area, grads


_QUAD_RULES = {
    3: (
        np.array([[0.5, 0.5, 0.0], [0.0, 0.5, 0.5], [0.5, 0.0, 0.5]]),
        np.array([1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0]),
    ),
    7: (
        np.array([
            [1 / 3, 1 / 3, 1 / 3],
            [0.797426985353087, 0.101286507323456, 0.101286507323456],
            [0.101286507323456, 0.797426985353087, 0.101286507323456],
            [0.101286507323456, 0.101286507323456, 0.797426985353087],
            [0.059715871789770, 0.470142064105115, 0.470142064105115],
            [0.470142064105115, 0.059715871789770, 0.470142064105115],
            [0.470142064105115, 0.470142064105115, 0.059715871789770],
        ]),
        np.array([0.225,
                  0.125939180544827, 0.125939180544827, 0.125939180544827,
                  0.132394152788506, 0.132394152788506, 0.132394152788506]),
    ),
}


def tri_quadrature(npoints: int = 3):
    """Barycentric points and weights (summing to 1) on the triangle."""
    try:
        return _QUAD_RULES[npoints]
    except KeyError:
        raise ValueError(f"no {npoints}-point rule; available: 3, 7") from None


def quadrature_points(mesh: PeriodicCellMesh, npoints: int = 3):
    """Physical quadrature points (ntri, nq, 2) and weights (ntri, nq)."""
    bary, w = tri_quadrature(npoints)
    area, _ = triangle_geometry(mesh)
    pts = np.einsum('qk,tkd->tqd', bary, mesh.tri_coords)
    weights = area[:, None] * w[None, :]
    return pts, weights


def dump_mesh(mesh: PeriodicCellMesh, stream) -> None:
    """Plain-text dump: one "x y class" line per node, then "i j k" per
    triangle."""
    names = {NODE_INTERIOR: "interior", NODE_TOP: "top", NODE_BOTTOM: "bottom"}
    for p, c in zip(mesh.nodes, mesh.node_class):
        stream.write(f"{p[0]:.17g} {p[1]:.17g} {names[int(c)]}\n")
    for t in mesh.triangles:
        stream.write(f"{t[0]} {t[1]} {t[2]}\n")
