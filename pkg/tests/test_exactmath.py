from fractions import Fraction

import pytest

from nilpotent_cortex.coadjoint import skew_form
from nilpotent_cortex.errors import DimensionError
from nilpotent_cortex.exactmath import (RatMatrix, format_poly, incremental_row_ranks,
                                        is_homogeneous, poly_compose, poly_eval,
                                        poly_from_terms, poly_partial, poly_variables, rank,
                                        rank_and_kernel, total_degree)
from nilpotent_cortex.gd_family import cortex_poly, make_gd
from nilpotent_cortex.utils import as_vector, choose_random_rational_vector


def test_rank_and_kernel_trivial_cases():
    assert rank_and_kernel(RatMatrix.identity(2)) == (2, [])

    r, kernel = rank_and_kernel(RatMatrix.zeros(2, 2))
    assert r == 0
    assert kernel == [(1, 0), (0, 1)]

    assert rank_and_kernel(RatMatrix.zeros(0, 3))[1] == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]


def test_kernel_vectors_are_annihilated(rng):
    rows = [choose_random_rational_vector(5, rng, bound=5) for _ in range(3)]
    rows.append(tuple(a + b for a, b in zip(rows[0], rows[1])))
    m = RatMatrix.from_rows(rows, 5)

    r, kernel = rank_and_kernel(m)

    assert r == 3
    assert r + len(kernel) == m.cols
    for v in kernel:
        assert m.apply(v) == (0, 0, 0, 0)


def test_rank_of_transpose(rng):
    for _ in range(10):
        rows = [choose_random_rational_vector(4, rng, bound=3) for _ in range(6)]
        m = RatMatrix.from_rows(rows, 4)
        assert rank(m) == rank(m.transpose())


def test_skew_form_rank_at_z1():
    alg = make_gd(2).algebra
    ell = as_vector([1, 0, 0, 0, 0, 0, 0, 0])
    assert rank(skew_form(alg, ell).matrix) == 4


def test_incremental_row_ranks():
    assert incremental_row_ranks(RatMatrix.identity(3)) == [1, 2, 3]

    v, w = (1, 2, 0), (0, 1, 1)
    assert incremental_row_ranks(RatMatrix.from_rows([v, v, w])) == [1, 1, 2]


def test_incremental_row_ranks_of_generic_g2_form(rng):
    alg = make_gd(2).algebra
    ell = choose_random_rational_vector(8, rng, nonzero=(0,))
    ranks = incremental_row_ranks(skew_form(alg, ell).matrix)

    increments = {j + 1 for j, r in enumerate(ranks) if r > (ranks[j - 1] if j else 0)}
    assert increments == {3, 5, 7, 8}


def test_poly_eval():
    labels = ('x0', 'x1')
    p = poly_from_terms(labels, {(1, 1): 1})
    assert poly_eval(p, (2, 3)) == 6

    q2 = cortex_poly(2)
    assert poly_eval(q2, as_vector([0, 0, 1, 2, 3, 6, 0, 0])) == 0
    assert poly_eval(q2, as_vector([0, 0, 1, 0, 0, 1, 0, 0])) == -1

    x = poly_variables(('x0', 'x1', 'x2'))
    half = poly_from_terms(('x0', 'x1', 'x2'), {(0, 0, 0): Fraction(1, 2)})
    cubic = x[0] ** 3 - half * x[1] * x[2] + 4
    value = poly_eval(cubic, (Fraction(-1, 3), "2/5", 7))
    assert value == Fraction(-1, 27) - Fraction(7, 5) + 4
    assert isinstance(value, Fraction)
    assert poly_eval(x[0] - x[0], (1, 2, 3)) == 0

    with pytest.raises(DimensionError):
        poly_eval(p, (1, 2, 3))


def test_poly_compose():
    x0, = poly_variables(('x0',))
    a, b = poly_variables(('a', 'b'))

    assert poly_compose(x0 ** 2, [a + b]) == a ** 2 + 2 * a * b + b ** 2

    x = poly_variables(('x0', 'x1', 'x2', 'x3'))
    zero = a.ring.zero
    assert not poly_compose(x[0] * x[1] - x[2] * x[3], [zero] * 4)

    with pytest.raises(DimensionError):
        poly_compose(x0 ** 2, [a, b])


def test_poly_compose_commutes_with_evaluation(rng):
    x = poly_variables(('x0', 'x1', 'x2'))
    s, t = poly_variables(('s', 't'))
    c = poly_from_terms(("x0", "x1", "x2"), {(0, 0, 0): Fraction(3, 2)})
    p = x[0] ** 2 * x[1] - c * x[2] + 7
    subs = [s * t, s - t, t ** 3 + 1]
    for _ in range(5):
        point = choose_random_rational_vector(2, rng, bound=20)
        inner = [poly_eval(q, point) for q in subs]
        assert poly_eval(poly_compose(p, subs), point) == poly_eval(p, inner)


def test_poly_partial():
    x = poly_variables(('x0', 'x1'))
    assert poly_partial(x[0] ** 2 * x[1], 0) == 2 * x[0] * x[1]
    assert not poly_partial(poly_from_terms(('x0', 'x1'), {(0, 0): 5}), 0)

    q2 = cortex_poly(2)
    y2, y3 = q2.ring.gens[3], q2.ring.gens[4]
    assert poly_partial(q2, 4) == y2
    assert poly_partial(q2, 4) != y3

    with pytest.raises(DimensionError):
        poly_partial(q2, 8)


def test_poly_partial_matches_exact_difference_quotient(rng):
    x = poly_variables(('x0', 'x1', 'x2'))
    half = poly_from_terms(("x0", "x1", "x2"), {(0, 0, 0): Fraction(1, 2)})
    p = 3 * x[0] ** 2 - x[0] * x[1] + half * x[2] ** 2 + x[1] - 4
    h = Fraction(1, 7)
    for _ in range(5):
        point = list(choose_random_rational_vector(3, rng, bound=50))
        for k in range(3):
            up, down = list(point), list(point)
            up[k] += h
            down[k] -= h
            quotient = (poly_eval(p, up) - poly_eval(p, down)) / (2 * h)
            assert quotient == poly_eval(poly_partial(p, k), point)


def test_degree_helpers():
    q3 = cortex_poly(3)
    assert total_degree(q3) == 3
    assert is_homogeneous(q3)
    assert not is_homogeneous(cortex_poly(2) + 1)
    assert format_poly(q3.ring.zero) == '0'
