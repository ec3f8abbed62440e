"""
End-to-end checks of the g_d results at desk scale, seeded throughout.
"""
from fractions import Fraction

import numpy as np
import pytest

from nilpotent_cortex.cli import main
from nilpotent_cortex.coadjoint import coadjoint_exp, jump_indices, orbit_dimension
from nilpotent_cortex.cortex import (codim_classifier, corollary_witness, cortex_membership_gd,
                                     icor_membership, pullback_on_image, random_cortex_target,
                                     random_image_points, witness_sequence)
from nilpotent_cortex.cortex_sampler import approximate_cortex, cloud_coverage, sphere_reference
from nilpotent_cortex.exactmath import max_norm, poly_eval, vec_scale
from nilpotent_cortex.gd_family import (QUADRIC_TO_GD2, cortex_poly, cross_section_map,
                                        expected_jump_set, in_cross_section, invariant_generators,
                                        make_gd, quadric_example, quadric_example_poly)
from nilpotent_cortex.liealg import heisenberg, in_z_perp, is_isomorphism, transport_covector
from nilpotent_cortex.utils import choose_random_rational_vector

FAMILY = range(2, 9)
EPSILONS = (Fraction(1, 10), Fraction(1, 100), Fraction(1, 1000))


@pytest.mark.parametrize('d', FAMILY)
def test_generic_orbits_and_jump_indices(d):
    rng = np.random.default_rng(d)
    alg = make_gd(d).algebra
    jumps = expected_jump_set(d)
    assert tuple(jumps) == tuple(range(d + 1, 3 * d, 2)) + tuple(range(3 * d + 1, 4 * d + 1))
    for _ in range(100):
        ell = choose_random_rational_vector(4 * d, rng, nonzero=(0,))
        assert orbit_dimension(alg, ell) == 2 * d
        assert jump_indices(alg, ell) == jumps


@pytest.mark.parametrize('d', FAMILY)
def test_cortex_necessity(d):
    assert not pullback_on_image(d)
    q = cortex_poly(d)
    for point in random_image_points(make_gd(d).algebra, 1000, seed=d):
        assert not any(point[:d])
        assert poly_eval(q, point) == 0


@pytest.mark.parametrize('d', FAMILY)
def test_cortex_sufficiency_on_generic_stratum(d):
    rng = np.random.default_rng(100 + d)
    for _ in range(100):
        target = random_cortex_target(d, rng)
        schedule, _ = witness_sequence(d, target, EPSILONS)
        first = schedule.steps[0]
        for step in schedule.steps:
            scale = step.epsilon / first.epsilon
            assert step.image[d:] == target[d:]
            assert step.residual == vec_scale(scale, first.residual)
            assert max_norm(step.ell) == scale * max_norm(first.ell)


def test_quadric_example_matches_g2():
    g2 = make_gd(2).algebra
    assert is_isomorphism(quadric_example(), g2, QUADRIC_TO_GD2)

    rng = np.random.default_rng(7)
    quadric, q2 = quadric_example_poly(), cortex_poly(2)
    for k in range(50):
        ell = list(choose_random_rational_vector(8, rng, bound=3))
        if k % 2:
            ell[:2] = [0, 0]
        pulled = transport_covector(QUADRIC_TO_GD2, ell)
        assert poly_eval(quadric, pulled) == poly_eval(q2, ell)
        on_quadric = not any(pulled[6:]) and poly_eval(quadric, pulled) == 0
        assert on_quadric == cortex_membership_gd(2, ell)

    for _ in range(10):
        pulled = transport_covector(QUADRIC_TO_GD2, random_cortex_target(2, rng))
        assert not any(pulled[6:]) and poly_eval(quadric, pulled) == 0


@pytest.mark.parametrize('d', FAMILY)
def test_icor_is_z_perp_and_strictly_larger(d):
    rng = np.random.default_rng(200 + d)
    alg = make_gd(d).algebra
    gens = invariant_generators(d)
    for k in range(200):
        ell = list(choose_random_rational_vector(4 * d, rng))
        if k % 2:
            ell[:d] = [0] * d
        assert icor_membership(gens, ell) == (not any(ell[:d]))
        assert icor_membership(gens, ell) == in_z_perp(alg, ell)

    witness = corollary_witness(d)
    assert icor_membership(gens, witness)
    assert not cortex_membership_gd(d, witness)


def test_heisenberg_cortex_fills_z_perp():
    h3 = heisenberg()
    verdict = codim_classifier(h3, seed=0)
    assert verdict.applies and verdict.verdict.startswith("Cor = z^⊥")

    cloud = approximate_cortex(h3, 10000, seed=0)
    assert cloud_coverage(cloud, sphere_reference(h3, 1000, seed=1)) <= 1e-2

    for d in (2, 3):
        verdict = codim_classifier(make_gd(d).algebra, seed=0)
        assert not verdict.applies
        assert verdict.generic_codim == d


@pytest.mark.parametrize('d', range(2, 7))
def test_cross_section_is_a_section(d):
    rng = np.random.default_rng(300 + d)
    alg = make_gd(d).algebra
    jumps = expected_jump_set(d)
    for _ in range(100):
        ell = choose_random_rational_vector(4 * d, rng, nonzero=(0,))
        x = choose_random_rational_vector(4 * d, rng)
        image = cross_section_map(d, ell)
        assert cross_section_map(d, coadjoint_exp(alg, x, ell)) == image
        assert cross_section_map(d, image) == image
        assert in_cross_section(d, image)
        assert all(image[j - 1] == 0 for j in jumps)


def test_cli_output_is_reproducible(raw_file, capsys):
    runs = []
    for _ in range(2):
        assert main(['classify', raw_file('quadric_example.json'), '--seed', '5']) == 0
        assert main(['cloud', raw_file('heisenberg.json'), '--samples', '300', '--seed', '5',
                     '--format', 'record']) == 0
        runs.append(capsys.readouterr().out)
    assert runs[0] == runs[1]
