"""
The family g_d (d >= 2) of 4d-dimensional two-step nilpotent Lie algebras.

Basis order is frozen to (Z_1..Z_d, Y_1..Y_2d, X_1..X_d) and the nontrivial brackets are

    [X_i, Y_{2i-1}] = Z_1             i = 1..d
    [X_k, Y_{2k}]   = Z_{k+1}         k = 1..d-1
    [X_d, Y_{2d}]   = Z_2 + ... + Z_d

Dual coordinates are written ell = (z_1..z_d, y_1..y_2d, x_1..x_d).
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from operator import mul

from nilpotent_cortex.coadjoint import JumpIndexSet, coadjoint_exp, layer_predicate_gd
from nilpotent_cortex.errors import DimensionError, OutOfLayerError
from nilpotent_cortex.exactmath import ZERO, check_length, poly_variables, zero_vector
from nilpotent_cortex.liealg import LieAlgebra, center, validate
from nilpotent_cortex.utils import as_vector, to_fraction

logger = logging.getLogger(__name__)

@dataclass(frozen=True)
class GdDescriptor:
    d: int
    algebra: LieAlgebra

def _check_d(d):
    if not isinstance(d, int) or d < 2:
        raise DimensionError(f"the family g_d needs an integer d >= 2, got {d!r}")

# 0-based positions of the basis vectors
def z_index(d, i):
    return i - 1

def y_index(d, j):
    return d + j - 1

def x_index(d, k):
    return 3 * d + k - 1

def basis_labels(d):
    return (tuple(f"Z{i}" for i in range(1, d + 1))
            + tuple(f"Y{j}" for j in range(1, 2 * d + 1))
            + tuple(f"X{k}" for k in range(1, d + 1)))

def coordinate_labels(d):
    return tuple(label.lower() for label in basis_labels(d))

@lru_cache(maxsize=None, typed=True)
def make_gd(d):
    """
    Build g_d and check that it is a two-step nilpotent Lie algebra with center span(Z).

    Parameters:
    - d (int): Family index, d >= 2.

    Returns:
    - GdDescriptor: d and the 4d-dimensional algebra.
    """
    _check_d(d)
    brackets = {}
    for i in range(1, d + 1):
        brackets[x_index(d, i), y_index(d, 2 * i - 1)] = {z_index(d, 1): 1}
    for k in range(1, d):
        brackets[x_index(d, k), y_index(d, 2 * k)] = {z_index(d, k + 1): 1}
    brackets[x_index(d, d), y_index(d, 2 * d)] = {z_index(d, i): 1 for i in range(2, d + 1)}
    algebra = LieAlgebra.from_brackets(basis_labels(d), brackets)

    report = validate(algebra)
    if not report.two_step or report.nilpotency_class != 2 or center(algebra).dim != d:
        raise AssertionError(f"g_{d} failed its structural checks: {report}")
    logger.debug("Built g_%d of dimension %d", d, algebra.dim)
    return GdDescriptor(d, algebra)

def _ring_gens(d):
    gens = poly_variables(coordinate_labels(d))
    z = gens[:d]
    y = gens[d:3 * d]
    x = gens[3 * d:]
    return z, y, x

def _product(factors, one):
    return reduce(mul, factors, one)

@lru_cache(maxsize=None, typed=True)
def cortex_poly(d):
    """
    Q_d = y_{2d-1} * sum_{i<d} y_{2i} prod_{j<d, j!=i} y_{2j-1} - y_{2d} prod_{j<d} y_{2j-1},
    a homogeneous polynomial of degree d in the 4d dual coordinates.
    """
    _check_d(d)
    _, y, _ = _ring_gens(d)
    one = y[0].ring.one
    odd = [y[2 * j - 2] for j in range(1, d)]        # y_1, y_3, ..., y_{2d-3}
    even = [y[2 * i - 1] for i in range(1, d)]       # y_2, y_4, ..., y_{2d-2}
    summed = sum((even[i] * _product(odd[:i] + odd[i + 1:], one) for i in range(d - 1)),
                 y[0].ring.zero)
    return y[2 * d - 2] * summed - y[2 * d - 1] * _product(odd, one)

@lru_cache(maxsize=None, typed=True)
def invariant_generators(d):
    """
    z_1..z_d, z_1 y_{2k} - z_{k+1} y_{2k-1} (k < d) and z_1 y_{2d} - (z_2+...+z_d) y_{2d-1}.
    """
    _check_d(d)
    z, y, _ = _ring_gens(d)
    generators = list(z)
    for k in range(1, d):
        generators.append(z[0] * y[2 * k - 1] - z[k] * y[2 * k - 2])
    generators.append(z[0] * y[2 * d - 1] - sum(z[1:], y[0].ring.zero) * y[2 * d - 2])
    return tuple(generators)

@lru_cache(maxsize=None, typed=True)
def expected_jump_set(d):
    _check_d(d)
    return JumpIndexSet(tuple(range(d + 1, 3 * d, 2)) + tuple(range(3 * d + 1, 4 * d + 1)))

def cross_section_map(d, ell):
    """
    The map P_d from the layer z_1 != 0 onto the cross-section Sigma_d.

    Each Y_{2i} coordinate is shifted along the orbit until the jump coordinates
    y_{2i-1} and x_k vanish; the result is constant on coadjoint orbits.

    Parameters:
    - d (int): Family index.
    - ell (sequence of rationals): Covector of length 4d with z_1 != 0.

    Returns:
    - tuple of Fraction: Covector supported on Z_1*..Z_d*, Y_2*, Y_4*, ..., Y_2d*.
    """
    _check_d(d)
    if not layer_predicate_gd(d, ell):
        raise OutOfLayerError("cross-section map needs z_1 != 0")
    ell = as_vector(ell)
    z = ell[:d]
    y = ell[d:3 * d]
    result = [ZERO] * (4 * d)
    result[:d] = z
    for i in range(1, d):
        result[y_index(d, 2 * i)] = y[2 * i - 1] - z[i] / z[0] * y[2 * i - 2]
    result[y_index(d, 2 * d)] = y[2 * d - 1] - sum(z[1:], ZERO) / z[0] * y[2 * d - 2]
    return tuple(result)

def in_cross_section(d, ell):
    """True iff ell is in the layer and every jump coordinate vanishes."""
    _check_d(d)
    ell = as_vector(ell)
    if not layer_predicate_gd(d, ell):
        return False
    return all(ell[j - 1] == 0 for j in expected_jump_set(d))

def orbit_point(d, ell, t, s):
    """
    prod_i Ad*_{exp t_i Y_{2i-1}} Ad*_{exp s_i X_i} (ell), composed right to left.
    """
    _check_d(d)
    check_length(t, d, 't')
    check_length(s, d, 's')
    alg = make_gd(d).algebra
    point = as_vector(ell)
    for i in range(d, 0, -1):
        x = list(zero_vector(4 * d))
        x[x_index(d, i)] = to_fraction(s[i - 1])
        point = coadjoint_exp(alg, x, point)
        y = list(zero_vector(4 * d))
        y[y_index(d, 2 * i - 1)] = to_fraction(t[i - 1])
        point = coadjoint_exp(alg, y, point)
    return point

def orbit_table(d, ell, t, s):
    """
    Closed-form coordinates of the same orbit point:
    lambda_i = z_i, gamma_{2j-1} = y_{2j-1} - s_j z_1, gamma_{2j} = y_{2j} - s_j z_{j+1},
    gamma_{2d} = y_{2d} - s_d (z_2+...+z_d), beta_k = x_k + t_k z_1.
    """
    _check_d(d)
    check_length(ell, 4 * d, 'covector')
    t, s, ell = as_vector(t), as_vector(s), as_vector(ell)
    z, y, x = ell[:d], list(ell[d:3 * d]), list(ell[3 * d:])
    for j in range(1, d + 1):
        y[2 * j - 2] -= s[j - 1] * z[0]
    for j in range(1, d):
        y[2 * j - 1] -= s[j - 1] * z[j]
    y[2 * d - 1] -= s[d - 1] * sum(z[1:], ZERO)
    for k in range(1, d + 1):
        x[k - 1] += t[k - 1] * z[0]
    return tuple(z) + tuple(y) + tuple(x)

# ----------------------------------------------------------------------------
# the eight-dimensional quadric example, isomorphic to g_2
# ----------------------------------------------------------------------------

QUADRIC_LABELS = ('X1', 'X2', 'X3', 'X4', 'X5', 'X6', 'Z1', 'Z2')

# X1->X1, X2->X2, X3->Y3, X4->Y4, X5->Y1, X6->Y2, Z1->Z1, Z2->Z2 as positions in g_2
QUADRIC_TO_GD2 = (6, 7, 4, 5, 2, 3, 0, 1)

@lru_cache(maxsize=None, typed=True)
def quadric_example():
    """Basis (X_1..X_6, Z_1, Z_2), [X1,X5] = [X2,X3] = Z1, [X1,X6] = [X2,X4] = Z2."""
    return LieAlgebra.from_brackets(QUADRIC_LABELS, {
        (0, 4): {6: 1}, (1, 2): {6: 1},
        (0, 5): {7: 1}, (1, 3): {7: 1},
    })

def quadric_example_poly():
    """t_3 t_6 - t_4 t_5 in the coordinates (t_1..t_6, z_1, z_2)."""
    t = poly_variables(quadric_example().coordinate_labels)
    return t[2] * t[5] - t[3] * t[4]

def quadric_example_invariants():
    """z_1, z_2, z_1 t_4 - z_2 t_3, z_1 t_6 - z_2 t_5."""
    t = poly_variables(quadric_example().coordinate_labels)
    z1, z2 = t[6], t[7]
    return (z1, z2, z1 * t[3] - z2 * t[2], z1 * t[5] - z2 * t[4])

def split_coordinates(d, ell):
    """(z, y, x) blocks of a g_d* covector."""
    check_length(ell, 4 * d, 'covector')
    ell = as_vector(ell)
    return ell[:d], ell[d:3 * d], ell[3 * d:]

def join_coordinates(z, y, x):
    return tuple(as_vector(z)) + tuple(as_vector(y)) + tuple(as_vector(x))

def solve_last_y(d, y):
    """
    Given y_1..y_{2d-1} with y_{2j-1} != 0 for j < d, the y_{2d} putting y on Q_d = 0.
    """
    y = as_vector(y)
    ratio_sum = sum((y[2 * j - 1] / y[2 * j - 2] for j in range(1, d)), Fraction(0))
    return y[2 * d - 2] * ratio_sum
