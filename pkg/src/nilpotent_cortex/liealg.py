import logging
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations

import numpy as np

from nilpotent_cortex.errors import DimensionError
from nilpotent_cortex.exactmath import (RatMatrix, ZERO, basis_vector, check_length, dot,
                                        rank_and_kernel, span_basis, vec_add, vec_scale,
                                        zero_vector)
from nilpotent_cortex.utils import as_vector, to_fraction

logger = logging.getLogger(__name__)

_IDENTIFIER = re.compile(r'^[A-Za-z][A-Za-z0-9_]*$')


@dataclass(frozen=True)
class LieAlgebra:
    """
    Lie algebra given by structure constants over an ordered basis U_1..U_n.

    Only brackets [U_i, U_j] with i < j are stored (0-based pairs); the (j, i)
    entry is their negation, so antisymmetry holds by construction.

    Attributes:
    - basis (tuple of str): Basis labels.
    - brackets (tuple): Sorted pairs ((i, j), c_ij) with i < j and c_ij a nonzero
      rational vector of length n.
    """
    basis: tuple
    brackets: tuple

    @classmethod
    def from_brackets(cls, basis, brackets):
        """
        Build an algebra from {(i, j): vector or {k: coefficient}} with 0-based indices.
        Pairs with i > j are stored negated; zero brackets are dropped.
        """
        basis = tuple(basis)
        n = len(basis)
        if len(set(basis)) != n:
            raise DimensionError("basis labels must be distinct")
        table = {}
        for (i, j), value in brackets.items():
            if not (0 <= i < n and 0 <= j < n):
                raise DimensionError(f"bracket index ({i}, {j}) out of range for dim {n}")
            if isinstance(value, dict):
                vector = [ZERO] * n
                for k, c in value.items():
                    if not 0 <= k < n:
                        raise DimensionError(f"coefficient index {k} out of range for dim {n}")
                    vector[k] = to_fraction(c)
                vector = tuple(vector)
            else:
                vector = as_vector(value)
                check_length(vector, n, 'bracket vector')
            if i == j:
                if any(vector):
                    raise DimensionError(f"[U_{i+1}, U_{i+1}] must vanish")
                continue
            if i > j:
                i, j, vector = j, i, vec_scale(-1, vector)
            table[i, j] = vec_add(table.get((i, j), zero_vector(n)), vector)
        items = tuple(sorted((key, v) for key, v in table.items() if any(v)))
        return cls(basis, items)

    @property
    def dim(self):
        return len(self.basis)

    @cached_property
    def bracket_map(self):
        return dict(self.brackets)

    def structure_vector(self, i, j):
        """[U_i, U_j] for 0-based i, j."""
        if i == j:
            return zero_vector(self.dim)
        if i < j:
            return self.bracket_map.get((i, j), zero_vector(self.dim))
        return vec_scale(-1, self.bracket_map.get((j, i), zero_vector(self.dim)))

    @cached_property
    def coordinate_labels(self):
        """Names of the dual coordinates, used as polynomial variables."""
        labels = tuple(b.lower() for b in self.basis)
        if len(set(labels)) == self.dim and all(_IDENTIFIER.match(b) for b in labels):
            return labels
        return tuple(f"u{i + 1}" for i in range(self.dim))


@dataclass(frozen=True)
class Subspace:
    """Subspace of Q^n given by a linearly independent basis."""
    ambient_dim: int
    basis: tuple

    @classmethod
    def spanned_by(cls, vectors, n):
        return cls(n, tuple(span_basis(vectors, n)))

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, vector):
        check_length(vector, self.ambient_dim)
        if not any(vector):
            return True
        return len(span_basis(list(self.basis) + [as_vector(vector)], self.ambient_dim)) == self.dim

    def same_as(self, other):
        if self.ambient_dim != other.ambient_dim or self.dim != other.dim:
            return False
        return all(self.contains(v) for v in other.basis)


@dataclass(frozen=True)
class ValidationReport:
    """
    Outcome of validate().

    Attributes:
    - jacobi (bool): Jacobi identity holds on every basis triple.
    - witness (tuple or None): First failing triple (1-based), if any.
    - nilpotency_class (int or None): Length of the lower central series, None if not nilpotent.
    - lower_central_dims (tuple of int): dim g, dim [g,g], dim [g,[g,g]], ...
    """
    jacobi: bool
    witness: tuple
    nilpotency_class: int
    lower_central_dims: tuple

    @property
    def two_step(self):
        return self.jacobi and self.nilpotency_class is not None and self.nilpotency_class <= 2


def bracket(alg, x, y):
    """
    Bilinear expansion of [x, y] through the structure constants.
    """
    check_length(x, alg.dim, 'x')
    check_length(y, alg.dim, 'y')
    x, y = as_vector(x), as_vector(y)
    result = zero_vector(alg.dim)
    for (i, j), c in alg.brackets:
        coeff = x[i] * y[j] - x[j] * y[i]
        if coeff:
            result = vec_add(result, vec_scale(coeff, c))
    return result

def bracket_with_basis(alg, x, k):
    """[x, U_k] for 0-based k."""
    result = zero_vector(alg.dim)
    for i, xi in enumerate(x):
        if xi:
            result = vec_add(result, vec_scale(xi, alg.structure_vector(i, k)))
    return result

def _commutator_span(alg, subspace_basis):
    """Basis of [g, V] for V spanned by subspace_basis."""
    vectors = [bracket_with_basis(alg, v, k) for v in subspace_basis for k in range(alg.dim)]
    return span_basis([v for v in vectors if any(v)], alg.dim)

def lower_central_series(alg, max_length=None):
    """
    Dimensions of g, [g,g], [g,[g,g]], ... until the series vanishes or stabilises.
    """
    n = alg.dim
    current = [basis_vector(n, i) for i in range(n)]
    dims = [len(current)]
    max_length = n + 1 if max_length is None else max_length
    while current and len(dims) <= max_length:
        nxt = _commutator_span(alg, current)
        if len(nxt) == len(current):
            break
        current = nxt
        dims.append(len(current))
    return tuple(dims)

@lru_cache(maxsize=128)
def validate(alg):
    """
    Check the Jacobi identity on every basis triple and compute the nilpotency class.

    Returns:
    - ValidationReport: failures are report entries, never exceptions.
    """
    witness = None
    for i, j, k in combinations(range(alg.dim), 3):
        cyclic = vec_add(
            vec_add(bracket_with_basis(alg, alg.structure_vector(i, j), k),
                    bracket_with_basis(alg, alg.structure_vector(j, k), i)),
            bracket_with_basis(alg, alg.structure_vector(k, i), j))
        if any(cyclic):
            witness = (i + 1, j + 1, k + 1)
            logger.debug("Jacobi fails on triple %s", witness)
            break
    dims = lower_central_series(alg)
    if dims[-1] == 0:
        nilpotency_class = len(dims) - 1
    else:
        nilpotency_class = None
    return ValidationReport(witness is None, witness, nilpotency_class, dims)

def ad_matrix_stack(alg):
    """
    Matrix with rows indexed by (j, k) and columns by i, entry c_ij^k; its kernel is the center.
    """
    n = alg.dim
    rows = []
    for j in range(n):
        columns = [alg.structure_vector(i, j) for i in range(n)]
        for k in range(n):
            rows.append([columns[i][k] for i in range(n)])
    return RatMatrix.from_rows(rows, n)

@lru_cache(maxsize=128)
def center(alg):
    """
    The center z: v is central iff [v, U_j] = 0 for every j.
    """
    if alg.dim == 0:
        return Subspace(0, ())
    _, kernel = rank_and_kernel(ad_matrix_stack(alg))
    return Subspace(alg.dim, tuple(kernel))

@lru_cache(maxsize=128)
def z_perp(alg):
    """The annihilator of the center, as a subspace of coordinate vectors of g*."""
    z = center(alg)
    if z.dim == 0:
        return Subspace(alg.dim, tuple(basis_vector(alg.dim, i) for i in range(alg.dim)))
    _, kernel = rank_and_kernel(RatMatrix.from_rows(z.basis, alg.dim))
    return Subspace(alg.dim, tuple(kernel))

def in_z_perp(alg, ell, z=None):
    """
    True iff ell vanishes on every basis vector of the center.
    """
    check_length(ell, alg.dim, 'covector')
    z = center(alg) if z is None else z
    ell = as_vector(ell)
    return all(dot(ell, v) == 0 for v in z.basis)

def structure_tensor(alg):
    """
    Dense floating tensor C[i, j, k] = c_ij^k, antisymmetric in (i, j).
    """
    n = alg.dim
    tensor = np.zeros((n, n, n))
    for (i, j), c in alg.brackets:
        values = np.array([float(v) for v in c])
        tensor[i, j] = values
        tensor[j, i] = -values
    return tensor

def is_isomorphism(source, target, image):
    """
    Check that the basis map U_i -> U'_{image[i]} (a permutation) preserves brackets.
    """
    n = source.dim
    if target.dim != n or sorted(image) != list(range(n)):
        return False

    def push(v):
        out = [ZERO] * n
        for i, vi in enumerate(v):
            out[image[i]] = vi
        return tuple(out)

    for i, j in combinations(range(n), 2):
        if push(source.structure_vector(i, j)) != target.structure_vector(image[i], image[j]):
            return False
    return True

def transport_covector(image, ell):
    """
    Pull a covector of the target back along U_i -> U'_{image[i]}: (phi* ell)(U_i) = ell(U'_{image[i]}).
    """
    check_length(ell, len(image), 'covector')
    ell = as_vector(ell)
    return tuple(ell[image[i]] for i in range(len(image)))

def heisenberg():
    """Three-dimensional Heisenberg algebra with [X, Y] = Z."""
    return LieAlgebra.from_brackets(('X', 'Y', 'Z'), {(0, 1): {2: 1}})

def abelian(n):
    return LieAlgebra.from_brackets(tuple(f"A{i + 1}" for i in range(n)), {})
