"""Shared fixtures-in-code: random transforms, reference models, grids.

The two Monte Carlo models have exactly known population moment matrices:

* Spherical-cap model on CP^1: Z = (cos(t/2), e^{i p} sin(t/2)) with
  cos t ~ Uniform(1-h, 1) and p ~ Uniform(0, 2pi).  The population moment
  matrix is diag(1 - h/4, h/4), so the antimean is [e2] with tangent basis
  {e1}, exactly.

* Anisotropic model on RP^2: X = normalize(e3 + d1 g1 e1 + d2 g2 e2) with
  g ~ N(0, 1) and 0 < d1 < d2.  By sign symmetry the population moment
  matrix is diagonal with E[X1^2] < E[X2^2] < E[X3^2], so the antimean is
  [e1] with tangent basis {e2, e3}, exactly.
"""

import numpy as np

import antimean as am


def random_unitary(rng, d):
    """Haar-ish special unitary matrix (determinant exactly normalized out)."""
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(g)
    q = q * (np.diag(r).conj() / np.abs(np.diag(r)))[None, :]
    q[:, 0] = q[:, 0] / np.linalg.det(q)
    return q


def random_rotation(rng, d):
    """Haar-ish special orthogonal matrix."""
    g = rng.standard_normal((d, d))
    q, r = np.linalg.qr(g)
    q = q * np.sign(np.diag(r))[None, :]
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def points_from_rows(rows):
    return [am.ProjectivePoint.from_vector(row) for row in rows]


def sample_from_rows(rows, weights=None):
    return am.SampleOnProjectiveSpace(points_from_rows(rows), weights=weights)


def random_complex_rows(rng, n, d):
    z = rng.standard_normal((n, d)) + 1j * rng.standard_normal((n, d))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def random_real_rows(rng, n, d):
    x = rng.standard_normal((n, d))
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def two_axes_sample():
    """Axes at 0 and 45 degrees on RP^1: every closed-form fixture uses it."""
    return sample_from_rows(
        np.array([[1.0, 0.0], [np.cos(np.pi / 4), np.sin(np.pi / 4)]])
    )


CAP_H = 0.4
CAP_ANTIMEAN = np.array([0.0 + 0.0j, 1.0 + 0.0j])


def draw_cap_rows(rng, n, h=CAP_H):
    theta = np.arccos(1.0 - h * rng.random(n))
    phi = 2.0 * np.pi * rng.random(n)
    return np.stack([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)], axis=1)


RP2_D1 = 0.15
RP2_D2 = 0.30
RP2_ANTIMEAN = np.array([1.0, 0.0, 0.0])


def draw_rp2_rows(rng, n, d1=RP2_D1, d2=RP2_D2):
    g = rng.standard_normal((n, 2))
    x = np.stack([d1 * g[:, 0], d2 * g[:, 1], np.ones(n)], axis=1)
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def rp1_grid(m=10_000):
    ang = np.linspace(0.0, np.pi, m, endpoint=False)
    return np.stack([np.cos(ang), np.sin(ang)], axis=1)


def cp1_grid(m_theta=100, m_phi=100):
    theta = np.linspace(0.0, np.pi, m_theta)
    phi = np.linspace(0.0, 2.0 * np.pi, m_phi, endpoint=False)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    return np.stack(
        [np.cos(tt / 2).ravel(), (np.exp(1j * pp) * np.sin(tt / 2)).ravel()], axis=1
    )


def frechet_values_on_rows(mm, rows):
    """Vectorized closed-form Fréchet values at many candidate rows."""
    quad = np.einsum("ri,ij,rj->r", rows.conj(), mm.matrix.entries, rows).real
    return mm.trace_square + 1.0 - 2.0 * quad


def ks_distance(values, cdf):
    """Exact Kolmogorov-Smirnov sup distance between a sample and a CDF."""
    x = np.sort(np.asarray(values))
    n = x.shape[0]
    f = cdf(x)
    grid_hi = np.arange(1, n + 1) / n
    grid_lo = np.arange(0, n) / n
    return float(max(np.max(np.abs(grid_hi - f)), np.max(np.abs(grid_lo - f))))
