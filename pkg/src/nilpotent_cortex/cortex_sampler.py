"""
Floating approximation of the cortex of a two-step algebra.

Images ad*_X(ell) are sampled with ell shrinking through a scale schedule and X
growing like 1/scale, kept when their max-coordinate norm falls in a window and
then normalized onto the unit max-norm sphere. The resulting cloud is numeric
evidence only; exact verdicts come from nilpotent_cortex.cortex.
"""
import logging

import numpy as np
import pandas as pd
from sklearn.neighbors import NearestNeighbors

from nilpotent_cortex import parameters
from nilpotent_cortex.coadjoint import require_two_step
from nilpotent_cortex.exactmath import from_qq
from nilpotent_cortex.liealg import structure_tensor, z_perp

logger = logging.getLogger(__name__)


class CortexSampler():
    """
    CortexSampler class for point clouds of normalized coadjoint images.
    """
    def __init__(self,
                 samples=10000,
                 scales=parameters.SCALES,
                 window=parameters.WINDOW,
                 x_radius=parameters.X_RADIUS,
                 random_state=parameters.DEFAULT_SEED):
        """
        Parameters:
        - samples (int): Number of (X, ell) draws.
        - scales (sequence of float): Scale schedule; draw i uses scales[i % len(scales)].
        - window (tuple): (r_lo, r_hi) accepted max-norm range of the raw images.
        - x_radius (float): X is drawn in the max-norm ball of radius x_radius / scale.
        - random_state (int): Random seed for reproducibility.
        """
        self.samples = samples
        self.scales = tuple(scales)
        self.window = tuple(window)
        self.x_radius = x_radius
        self.random_state = random_state
        self.rng = np.random.default_rng(random_state)

    def draw(self, n):
        """
        Draw the (samples x n) blocks of ell and X, row i at scale scales[i % len(scales)].

        Returns:
        - tuple: (ell block, X block) as numpy.ndarray.
        """
        if not self.scales:
            raise ValueError("the scale schedule is empty")
        delta = np.resize(np.asarray(self.scales, dtype=float), self.samples)[:, None]
        ell = delta * self.rng.uniform(-1.0, 1.0, size=(self.samples, n))
        x = (self.x_radius / delta) * self.rng.uniform(-1.0, 1.0, size=(self.samples, n))
        return ell, x

    def images(self, tensor, ell, x):
        # (ad*_X ell)_b = -sum_{a,k} X_a c_ab^k ell_k
        return -np.einsum('sa,abk,sk->sb', x, tensor, ell, optimize=True)

    def fit(self, alg):
        """
        Sample the cloud for a two-step algebra.

        Parameters:
        - alg (LieAlgebra): The algebra.

        Returns:
        - CortexSampler: Fitted sampler with cloud_ (pandas.DataFrame, columns u1..un)
          and accepted_ (number of kept images).
        """
        require_two_step(alg)
        if self.samples < 0:
            raise ValueError("number of samples must be non-negative")
        n = alg.dim
        columns = [f"u{i + 1}" for i in range(n)]
        r_lo, r_hi = self.window

        if self.samples == 0 or n == 0:
            points = np.zeros((0, n))
        else:
            ell, x = self.draw(n)
            images = self.images(structure_tensor(alg), ell, x)
            norms = np.abs(images).max(axis=1)
            keep = (norms >= r_lo) & (norms <= r_hi) & (norms > 0)
            points = images[keep] / norms[keep][:, None]
        logger.info("Kept %d of %d sampled images", points.shape[0], self.samples)

        self.cloud_ = pd.DataFrame(points, columns=columns)
        self.accepted_ = points.shape[0]
        return self


def approximate_cortex(alg, samples, scales=None, window=None, seed=None):
    """
    Normalized point cloud of sampled images ad*_X(ell), deterministic given the seed.

    An empty window yields an empty cloud.
    """
    sampler = CortexSampler(
        samples=samples,
        scales=parameters.SCALES if scales is None else scales,
        window=parameters.WINDOW if window is None else window,
        random_state=parameters.DEFAULT_SEED if seed is None else seed)
    return sampler.fit(alg).cloud_

def sphere_reference(alg, n_points, seed=None):
    """
    Points of the unit max-norm sphere of z^perp: random combinations of a z^perp basis,
    divided by their max-coordinate norm.
    """
    rng = np.random.default_rng(parameters.DEFAULT_SEED if seed is None else seed)
    perp = z_perp(alg)
    columns = [f"u{i + 1}" for i in range(alg.dim)]
    if perp.dim == 0 or n_points == 0:
        return pd.DataFrame(np.zeros((0, alg.dim)), columns=columns)
    basis = np.array([[float(v) for v in b] for b in perp.basis])
    points = rng.uniform(-1.0, 1.0, size=(n_points, perp.dim)) @ basis
    norms = np.abs(points).max(axis=1)
    points = points[norms > 0] / norms[norms > 0][:, None]
    return pd.DataFrame(points, columns=columns)

def cloud_coverage(cloud, reference):
    """
    Directed Hausdorff distance (max-coordinate norm) from the reference points to the cloud.

    Returns:
    - float: max over reference points of the distance to the nearest cloud point;
      inf when the cloud is empty, 0 when the reference is empty.
    """
    cloud = np.asarray(cloud, dtype=float)
    reference = np.asarray(reference, dtype=float)
    if reference.shape[0] == 0:
        return 0.0
    if cloud.shape[0] == 0:
        return float('inf')
    neighbors = NearestNeighbors(n_neighbors=1, metric='chebyshev')
    neighbors.fit(cloud)
    dist, _ = neighbors.kneighbors(reference)
    return float(dist.max())

def max_abs_poly(p, cloud):
    """Largest |p| over the cloud rows, evaluated in floating point."""
    points = np.asarray(cloud, dtype=float)
    if points.shape[0] == 0:
        return 0.0
    values = np.zeros(points.shape[0])
    for exponents, coeff in p.items():
        term = np.full(points.shape[0], float(from_qq(coeff)))
        for i, e in enumerate(exponents):
            if e:
                term = term * points[:, i] ** e
        values += term
    return float(np.abs(values).max())
