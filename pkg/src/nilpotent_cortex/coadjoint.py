"""
Coadjoint action of a two-step nilpotent Lie algebra on its dual.

Sign convention, used everywhere: (ad*_X ell)(Y) = -ell([X, Y]). With it,
exp(s X_j) moves y_{2j-1} to y_{2j-1} - s z_1 in g_d*, and
Ad*_{exp X} = Id + ad*_X holds exactly when [g, [g, g]] = 0.
"""
from dataclasses import dataclass
from functools import cached_property

from nilpotent_cortex.errors import ClassError
from nilpotent_cortex.exactmath import (RatMatrix, ZERO, basis_vector, check_length, dot,
                                        independent_rows, rank, vec_add)
from nilpotent_cortex.liealg import Subspace, validate
from nilpotent_cortex.utils import as_vector

@dataclass(frozen=True)
class SkewForm:
    """
    M(ell)_{ij} = ell([U_i, U_j]); its rank is the dimension of the orbit through ell.
    """
    matrix: RatMatrix

    @cached_property
    def rank(self):
        return rank(self.matrix)

@dataclass(frozen=True)
class JumpIndexSet:
    """Sorted 1-based basis positions where the incremental row rank of M(ell) increases."""
    indices: tuple

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

def ad_star(alg, x, ell):
    """
    The coadjoint action of x on ell: (ad*_x ell)_b = -ell([x, U_b]).
    """
    check_length(x, alg.dim, 'x')
    check_length(ell, alg.dim, 'covector')
    x, ell = as_vector(x), as_vector(ell)
    result = [ZERO] * alg.dim
    for (i, j), c in alg.brackets:
        if not (x[i] or x[j]):
            continue
        value = dot(ell, c)
        if not value:
            continue
        # [U_i, U_j] = c and [U_j, U_i] = -c
        result[j] -= x[i] * value
        result[i] += x[j] * value
    return tuple(result)

def require_two_step(alg):
    report = validate(alg)
    if not report.two_step:
        raise ClassError(
            f"algebra is not two-step nilpotent (jacobi={report.jacobi}, "
            f"class={report.nilpotency_class})")
    return report

def coadjoint_exp(alg, x, ell):
    """
    Ad*_{exp x}(ell) = ell + ad*_x ell, exact for two-step algebras only.
    """
    require_two_step(alg)
    return vec_add(as_vector(ell), ad_star(alg, x, ell))

def skew_form(alg, ell):
    check_length(ell, alg.dim, 'covector')
    ell = as_vector(ell)
    n = alg.dim
    rows = [[ZERO] * n for _ in range(n)]
    for (i, j), c in alg.brackets:
        value = dot(ell, c)
        rows[i][j] = value
        rows[j][i] = -value
    return SkewForm(RatMatrix.from_rows(rows, n))

def orbit_dimension(alg, ell):
    return skew_form(alg, ell).rank

def tangent_space(alg, ell):
    """
    T_ell O spanned by ad*_{U_b} ell, b = 1..n, keeping the vectors that raise the rank.
    """
    vectors = [ad_star(alg, basis_vector(alg.dim, b), ell) for b in range(alg.dim)]
    if not vectors:
        return Subspace(0, ())
    keep = independent_rows(RatMatrix.from_rows(vectors, alg.dim))
    return Subspace(alg.dim, tuple(vectors[b] for b in keep))

def jump_indices(alg, ell):
    """
    Basis positions (1-based) where the row rank of M(ell) grows, in basis order.
    """
    form = skew_form(alg, ell)
    return JumpIndexSet(tuple(j + 1 for j in independent_rows(form.matrix)))

def layer_predicate_gd(d, ell):
    """Membership of the generic layer Omega_d = {ell : ell(Z_1) != 0} of g_d*."""
    check_length(ell, 4 * d, 'covector')
    return as_vector(ell)[0] != 0
