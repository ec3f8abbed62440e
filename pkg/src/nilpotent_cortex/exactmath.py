"""
Exact rational scalars, dense rational linear algebra and sparse multivariate
polynomials.

Scalars are ``fractions.Fraction``; vectors are tuples of Fractions. Row
reduction is delegated to sympy's ``DomainMatrix`` over ``QQ`` and polynomials
are elements of a sympy ``PolyRing`` over ``QQ`` (a dict from exponent tuple to
nonzero coefficient).
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from sympy import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyRing

from nilpotent_cortex.errors import DimensionError
from nilpotent_cortex.utils import as_vector, to_fraction

ZERO = Fraction(0)
ONE = Fraction(1)

# ----------------------------------------------------------------------------
# vectors
# ----------------------------------------------------------------------------

def zero_vector(n):
    return (ZERO,) * n

def basis_vector(n, i):
    return tuple(ONE if k == i else ZERO for k in range(n))

def check_length(vector, n, name='vector'):
    if len(vector) != n:
        raise DimensionError(f"{name} has length {len(vector)}, expected {n}")

def vec_add(u, v):
    check_length(v, len(u))
    return tuple(a + b for a, b in zip(u, v))

def vec_sub(u, v):
    check_length(v, len(u))
    return tuple(a - b for a, b in zip(u, v))

def vec_scale(c, u):
    c = to_fraction(c)
    return tuple(c * a for a in u)

def dot(u, v):
    check_length(v, len(u))
    return sum((a * b for a, b in zip(u, v)), ZERO)

def max_norm(u):
    return max((abs(a) for a in u), default=ZERO)

def to_qq(value):
    value = to_fraction(value)
    return QQ(value.numerator, value.denominator)

def from_qq(value):
    return Fraction(int(value.numerator), int(value.denominator))

# ----------------------------------------------------------------------------
# matrices
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class RatMatrix:
    """
    Dense rational matrix stored row-major.

    Attributes:
    - rows (int): Number of rows.
    - cols (int): Number of columns.
    - entries (tuple of Fraction): Row-major entries, length rows * cols.
    """
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, got {len(self.entries)}")

    @classmethod
    def from_rows(cls, rows, cols=None):
        rows = [as_vector(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            check_length(r, cols, 'row')
        return cls(len(rows), cols, tuple(e for r in rows for e in r))

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def identity(cls, n):
        return cls.from_rows([basis_vector(n, i) for i in range(n)], n)

    def __getitem__(self, index):
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def transpose(self):
        return RatMatrix.from_rows(
            [[self[i, j] for i in range(self.rows)] for j in range(self.cols)], self.rows)

    def apply(self, vector):
        check_length(vector, self.cols)
        return tuple(dot(self.row(i), vector) for i in range(self.rows))

    def to_domain_matrix(self):
        return DomainMatrix([[to_qq(e) for e in self.row(i)] for i in range(self.rows)],
                            (self.rows, self.cols), QQ)

def _rref(m):
    """Reduced row echelon form as a list of Fraction rows, plus pivot columns."""
    if m.rows == 0 or m.cols == 0:
        return [list(m.row(i)) for i in range(m.rows)], ()
    reduced, pivots = m.to_domain_matrix().rref()
    rows = [[from_qq(e) for e in r] for r in reduced.to_list()]
    return rows, tuple(pivots)

def rank(m):
    return len(_rref(m)[1])

def rank_and_kernel(m):
    """
    Rank and a basis of the right kernel {v : m v = 0}.

    Parameters:
    - m (RatMatrix): Input matrix.

    Returns:
    - tuple: (rank, list of kernel basis vectors), rank + len(kernel) == m.cols.
    """
    reduced, pivots = _rref(m)
    pivot_set = set(pivots)
    kernel = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = [ZERO] * m.cols
        v[free] = ONE
        for r, p in enumerate(pivots):
            v[p] = -reduced[r][free]
        kernel.append(tuple(v))
    return len(pivots), kernel

def independent_rows(m):
    """0-based indices of the rows that are not in the span of the rows above them."""
    if m.rows == 0 or m.cols == 0:
        return ()
    # pivot columns of rref(m^T) are exactly those rows
    return _rref(m.transpose())[1]

def incremental_row_ranks(m):
    """
    r_j = rank of the first j rows, for j = 1..rows.
    """
    jumps = set(independent_rows(m))
    ranks, r = [], 0
    for j in range(m.rows):
        r += j in jumps
        ranks.append(r)
    return ranks

def span_basis(vectors, n):
    """Linearly independent subfamily of vectors spanning the same space, in order."""
    vectors = [as_vector(v) for v in vectors]
    if not vectors:
        return []
    keep = independent_rows(RatMatrix.from_rows(vectors, n))
    return [vectors[i] for i in keep]

# ----------------------------------------------------------------------------
# sparse polynomials
# ----------------------------------------------------------------------------

@lru_cache(maxsize=None)
def poly_ring(labels):
    """
    Polynomial ring over QQ whose generators are named by labels, in order.
    """
    return PolyRing(tuple(labels), QQ, lex)

def poly_variables(labels):
    return poly_ring(tuple(labels)).gens

def poly_from_terms(labels, terms):
    """
    Build a polynomial from {exponent tuple: coefficient}; zero coefficients are dropped.
    """
    ring = poly_ring(tuple(labels))
    for exponents in terms:
        check_length(exponents, ring.ngens, 'exponent vector')
    return ring.from_dict({tuple(e): to_qq(c) for e, c in terms.items() if to_fraction(c) != 0})

def poly_eval(p, point):
    """
    Exact value of p at a rational point (length = number of variables).
    """
    check_length(point, p.ring.ngens, 'point')
    if not p.ring.ngens:
        return from_qq(p.coeff(1))
    return from_qq(p.evaluate([(x, to_qq(v)) for x, v in zip(p.ring.gens, point)]))

def poly_compose(p, substitutions):
    """
    Substitute the i-th variable of p by substitutions[i]; all substitutions
    must live in one target ring.
    """
    check_length(substitutions, p.ring.ngens, 'substitution list')
    if not substitutions:
        return p
    target = substitutions[0].ring
    for s in substitutions:
        if s.ring != target:
            raise DimensionError("substitutions do not share one variable space")
    result = target.zero
    powers = {}
    for exponents, coeff in p.items():
        term = target.ground_new(coeff)
        for i, e in enumerate(exponents):
            if not e:
                continue
            if (i, e) not in powers:
                powers[i, e] = substitutions[i] ** e
            term = term * powers[i, e]
        result += term
    return result

def poly_partial(p, var):
    if not 0 <= var < p.ring.ngens:
        raise DimensionError(f"variable index {var} out of range for {p.ring.ngens} variables")
    return p.diff(p.ring.gens[var])

def total_degree(p):
    return max((sum(m) for m in p.monoms()), default=0)

def is_homogeneous(p):
    return len({sum(m) for m in p.monoms()}) <= 1

def format_poly(p):
    return str(p) if p else '0'
