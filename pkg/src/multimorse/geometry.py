"""Affine/metric geometry of the SYZ base for CP^2.

Moment polytope P = {x1 >= 0, x2 >= 0, x1 + x2 <= 1}, the fan of CP^2,
the Legendre transform between tropical coordinates xi and moment
coordinates x, and the Fubini-Study induced metric.  Everything downstream
flows in moment coordinates, where the metric degeneration at the boundary
is absorbed into polynomial factors.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# A point is "on the boundary" when some facet slack falls below this.
BOUNDARY_TOL = 1e-9


class DomainError(ValueError):
    """Raised when a point lies outside the domain of a chart map."""


@dataclass(frozen=True)
class Fan:
    """Complete fan in N_R given by primitive ray generators and 2-cones."""

    rays: tuple = (((1, 1)), (-1, 0), (0, -1))
    maximal_cones: tuple = ((1, 2), (2, 0), (0, 1))

    def validate(self) -> None:
        rays = [np.asarray(r, dtype=float) for r in self.rays]
        for i in range(len(rays)):
            for j in range(i + 1, len(rays)):
                if abs(np.cross(rays[i], rays[j])) < 1e-12:
                    raise ValueError("fan rays must be pairwise non-parallel")
        # completeness: the angular sectors of the cones must cover 2*pi
        total = 0.0
        for (i, j) in self.maximal_cones:
            a, b = rays[i], rays[j]
            ang = np.arctan2(np.cross(a, b), np.dot(a, b)) % (2 * np.pi)
            total += ang
        if abs(total - 2 * np.pi) > 1e-9:
            raise ValueError("maximal cones do not cover the plane")


@dataclass(frozen=True)
class MomentPolytope:
    """The triangle P with facet data <n, x> >= c.

    Facet order: x1 >= 0 (left edge), x2 >= 0 (bottom edge),
    1 - x1 - x2 >= 0 (hypotenuse).
    """

    vertices: tuple = ((0.0, 0.0), (1.0, 0.0), (0.0, 1.0))
    facet_normals: tuple = ((1.0, 0.0), (0.0, 1.0), (-1.0, -1.0))
    facet_offsets: tuple = (0.0, 0.0, -1.0)
    # vertex indices of each facet's endpoints, in ccw boundary order
    facet_vertices: tuple = field(default=((2, 0), (0, 1), (1, 2)))

    def slacks(self, x) -> np.ndarray:
        """Facet slack values <n, x> - c, shape (..., 3)."""
        x = np.asarray(x, dtype=float)
        s0 = x[..., 0]
        s1 = x[..., 1]
        s2 = 1.0 - x[..., 0] - x[..., 1]
        return np.stack([s0, s1, s2], axis=-1)

    def contains(self, x, tol: float = 0.0) -> np.ndarray:
        return np.all(self.slacks(x) >= -tol, axis=-1)

    def min_slack(self, x) -> np.ndarray:
        return np.min(self.slacks(x), axis=-1)

    def on_boundary(self, x, tol: float = BOUNDARY_TOL) -> np.ndarray:
        s = self.slacks(x)
        return np.logical_and(np.all(s >= -tol, axis=-1), np.any(s < tol, axis=-1))

    def active_facets(self, x, tol: float = BOUNDARY_TOL) -> list:
        """Indices of facets whose slack is below tol at x (a single point)."""
        s = self.slacks(np.asarray(x, dtype=float))
        return [i for i in range(3) if s[i] < tol]

    def minimal_face_tangent(self, x, tol: float = BOUNDARY_TOL):
        """Tangent directions of the smallest face containing x.

        Returns a list of unit vectors spanning the tangent space: two for
        interior points, one for edge points, none for vertices.
        """
        active = self.active_facets(x, tol=tol)
        if not active:
            return [np.array([1.0, 0.0]), np.array([0.0, 1.0])]
        if len(active) == 1:
            n = np.asarray(self.facet_normals[active[0]], dtype=float)
            t = np.array([-n[1], n[0]])
            return [t / np.linalg.norm(t)]
        return []

    def project(self, x) -> np.ndarray:
        """Clamp a point onto P (used to keep flows from drifting outside)."""
        x = np.array(x, dtype=float)
        x[0] = max(x[0], 0.0)
        x[1] = max(x[1], 0.0)
        excess = x[0] + x[1] - 1.0
        if excess > 0.0:
            x -= excess / 2.0
            x[0] = max(x[0], 0.0)
            x[1] = max(x[1], 0.0)
        return x


FAN = Fan()
POLYTOPE = MomentPolytope()

# ccw boundary structure: edge index by facet, corner -> (prev edge, next edge)
# boundary runs sigma0 -> sigma1 -> sigma2 along facets bottom(1), hyp(2), left(0)
CORNER_EDGES = {
    0: (0, 1),  # sigma0 = (0,0): arrive along left edge, leave along bottom
    1: (1, 2),  # sigma1 = (1,0): arrive along bottom, leave along hypotenuse
    2: (2, 0),  # sigma2 = (0,1): arrive along hypotenuse, leave along left
}


def legendre(xi) -> np.ndarray:
    """Legendre map N_R -> Int(P): x_i = e^{2 xi_i} / (1 + e^{2 xi_1} + e^{2 xi_2}).

    Evaluated in a shifted form so large |xi| never overflows.
    """
    xi = np.asarray(xi, dtype=float)
    e = 2.0 * xi
    m = np.maximum(np.max(e, axis=-1), 0.0)
    z0 = np.exp(-m)
    z1 = np.exp(e[..., 0] - m)
    z2 = np.exp(e[..., 1] - m)
    den = z0 + z1 + z2
    return np.stack([z1 / den, z2 / den], axis=-1)


def legendre_inverse(x) -> np.ndarray:
    """Inverse Legendre map: xi_i = 0.5 * log(x_i / (1 - x1 - x2)).

    Rejects points on or outside the boundary of P.
    """
    x = np.asarray(x, dtype=float)
    s = POLYTOPE.slacks(x)
    if np.any(s <= BOUNDARY_TOL):
        raise DomainError("legendre_inverse requires a point strictly inside P")
    sigma = s[..., 2]
    return 0.5 * np.stack(
        [np.log(x[..., 0] / sigma), np.log(x[..., 1] / sigma)], axis=-1
    )


def metric_upper_x(x) -> np.ndarray:
    """Induced metric g^{ij} as a function of moment coordinates, shape (..., 2, 2).

    g^{ij} = [[2 x1 (1 - x1), -2 x1 x2], [-2 x1 x2, 2 x2 (1 - x2)]];
    this equals the Hessian of psi and degenerates polynomially on dP.
    """
    x = np.asarray(x, dtype=float)
    a = x[..., 0]
    b = x[..., 1]
    g = np.empty(x.shape[:-1] + (2, 2))
    g[..., 0, 0] = 2.0 * a * (1.0 - a)
    g[..., 0, 1] = -2.0 * a * b
    g[..., 1, 0] = -2.0 * a * b
    g[..., 1, 1] = 2.0 * b * (1.0 - b)
    return g


def metric_upper(xi) -> np.ndarray:
    """g^{ij} at a tropical point xi (equals the Hessian of psi at xi)."""
    return metric_upper_x(legendre(xi))


def metric_lower_x(x, clip: float = 1e-12) -> np.ndarray:
    """Inverse metric g_{ij} in moment coordinates (diverges at dP; clipped)."""
    x = np.asarray(x, dtype=float)
    a = np.clip(x[..., 0], clip, None)
    b = np.clip(x[..., 1], clip, None)
    sigma = np.clip(1.0 - x[..., 0] - x[..., 1], clip, None)
    g = np.empty(x.shape[:-1] + (2, 2))
    g[..., 0, 0] = (1.0 - b) / (2.0 * a * sigma)
    g[..., 0, 1] = 1.0 / (2.0 * sigma)
    g[..., 1, 0] = g[..., 0, 1]
    g[..., 1, 1] = (1.0 - a) / (2.0 * b * sigma)
    return g


def psi(xi) -> np.ndarray:
    """The symplectic potential psi = 0.5 log(1 + e^{2 xi_1} + e^{2 xi_2})."""
    xi = np.asarray(xi, dtype=float)
    e = 2.0 * xi
    m = np.maximum(np.max(e, axis=-1), 0.0)
    return 0.5 * (
        m + np.log(np.exp(-m) + np.exp(e[..., 0] - m) + np.exp(e[..., 1] - m))
    )
