"""
Exact tools for the cortex Cor(g*) and the set ICor(g*).

For a two-step algebra the cortex is the closure of the image set
{ad*_X(ell) : X in g, ell in g*}. Non-membership is only ever certified by a
polynomial that vanishes identically on that image (hence on its closure);
sampling supports density claims, never exclusion.
"""
import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import pandas as pd

from nilpotent_cortex import parameters
from nilpotent_cortex.coadjoint import ad_star, coadjoint_exp, orbit_dimension, require_two_step
from nilpotent_cortex.errors import DegenerateStratumError, DimensionError, MembershipError
from nilpotent_cortex.exactmath import (ZERO, basis_vector, check_length, format_poly, max_norm,
                                        poly_compose, poly_eval, poly_partial, poly_variables,
                                        to_qq, vec_add, vec_sub, zero_vector)
from nilpotent_cortex.gd_family import (_check_d, cortex_poly, make_gd, solve_last_y, x_index,
                                        y_index, z_index)
from nilpotent_cortex.liealg import center, in_z_perp, z_perp
from nilpotent_cortex.utils import (as_vector, choose_random_rational_vector, format_rational,
                                     to_fraction)

logger = logging.getLogger(__name__)

@dataclass
class CortexReport:
    """
    Human- and machine-readable outcome of a cortex computation.

    Attributes:
    - title (str): What was computed.
    - verdict (str): One-line verdict.
    - passed (bool): Truth value of the verdict (drives the CLI exit status).
    - residuals (dict): Label -> exact rational (or float when numeric is set).
    - table (pandas.DataFrame or None): Per-row details, cells already formatted as strings.
    - numeric (bool): True when the numbers come from a floating or sampling path.
    """
    title: str
    verdict: str
    passed: bool
    residuals: dict = field(default_factory=dict)
    table: pd.DataFrame = None
    numeric: bool = False

    def _format(self, value):
        if isinstance(value, float):
            return parameters.CSV_FLOAT_FORMAT % value
        if isinstance(value, (Fraction, int)):
            return format_rational(value)
        return str(value)

    def to_text(self):
        lines = [self.title, self.verdict]
        if self.numeric:
            lines.append("(numeric evidence)")
        for label, value in self.residuals.items():
            lines.append(f"  {label} = {self._format(value)}")
        if self.table is not None and len(self.table):
            lines.append(self.table.to_string(index=False))
        return "\n".join(lines) + "\n"

    def to_record(self):
        record = {
            'title': self.title,
            'verdict': self.verdict,
            'passed': self.passed,
            'numeric': self.numeric,
            'residuals': {k: self._format(v) for k, v in self.residuals.items()},
            'table': [] if self.table is None else self.table.astype(str).to_dict(orient='records'),
        }
        return json.dumps(record, sort_keys=True, ensure_ascii=False, indent=2) + "\n"

    def to_csv(self):
        if self.table is not None:
            return self.table.to_csv(index=False, float_format=parameters.CSV_FLOAT_FORMAT)
        rows = pd.DataFrame({'label': list(self.residuals),
                             'value': [self._format(v) for v in self.residuals.values()]})
        return rows.to_csv(index=False)

# ----------------------------------------------------------------------------
# image set and the symbolic vanishing proof
# ----------------------------------------------------------------------------

def image_point(alg, x, ell):
    """ad*_x(ell); its central coordinates are -ell([x, Z]) = 0, so it lies in z^perp."""
    return ad_star(alg, x, ell)

def pullback_on_image(d):
    """
    Q_d composed with the tangent-space coordinates
    y_{2j-1} -> -a_j z_1, y_{2j} -> -a_j z_{j+1}, y_{2d} -> -a_d (z_2+...+z_d),
    as a polynomial in (a_1..a_d, z_1..z_d). It is the zero polynomial.
    """
    _check_d(d)
    target = poly_variables(tuple(f"a{j}" for j in range(1, d + 1))
                            + tuple(f"z{i}" for i in range(1, d + 1)))
    a, z = target[:d], target[d:]
    ring = a[0].ring
    subs = [ring.zero] * (4 * d)
    for i in range(1, d + 1):
        subs[z_index(d, i)] = z[i - 1]
    for j in range(1, d + 1):
        subs[y_index(d, 2 * j - 1)] = -a[j - 1] * z[0]
    for j in range(1, d):
        subs[y_index(d, 2 * j)] = -a[j - 1] * z[j]
    subs[y_index(d, 2 * d)] = -a[d - 1] * sum(z[1:], ring.zero)
    return poly_compose(cortex_poly(d), subs)

# ----------------------------------------------------------------------------
# membership
# ----------------------------------------------------------------------------

def variety_membership(alg, polys, ell):
    """ell in z^perp and every polynomial vanishes at ell."""
    return in_z_perp(alg, ell) and all(poly_eval(p, ell) == 0 for p in polys)

def cortex_membership_gd(d, ell):
    """
    ell in Cor(g_d*) iff every z-coordinate is 0 and Q_d(ell) = 0 (x is free).
    """
    _check_d(d)
    check_length(ell, 4 * d, 'covector')
    return variety_membership(make_gd(d).algebra, [cortex_poly(d)], as_vector(ell))

def membership_report(d, ell):
    _check_d(d)
    check_length(ell, 4 * d, 'covector')
    ell = as_vector(ell)
    z_ok = not any(ell[:d])
    q_value = poly_eval(cortex_poly(d), ell)
    passed = z_ok and q_value == 0
    verdict = "{}: z=0 {}, Q_{} = {} {}".format(
        "MEMBER" if passed else "NON-MEMBER",
        "✓" if z_ok else "✗", d, format_rational(q_value), "✓" if q_value == 0 else "✗")
    residuals = {f"z{i + 1}": v for i, v in enumerate(ell[:d])}
    residuals[f"Q_{d}"] = q_value
    return CortexReport(f"Cortex membership in g_{d}*", verdict, passed, residuals)

def icor_membership(generators, ell):
    """
    ell in ICor iff every invariant generator takes at ell its value at 0.
    """
    if not generators:
        return True
    zero = zero_vector(generators[0].ring.ngens)
    return all(poly_eval(p, ell) == poly_eval(p, zero) for p in generators)

# ----------------------------------------------------------------------------
# witness schedules
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class WitnessStep:
    epsilon: Fraction
    ell: tuple
    x: tuple
    image: tuple
    residual: tuple

@dataclass(frozen=True)
class WitnessSchedule:
    """
    Pairs (X(eps), ell(eps)) with ell(eps) -> 0 and Ad*_{exp X(eps)} ell(eps) -> target.
    """
    d: int
    target: tuple
    steps: tuple

def _witness_ratios(d, y):
    ratios = []
    for j in range(1, d):
        odd, even = y[2 * j - 2], y[2 * j - 1]
        if odd:
            ratios.append(even / odd)
        elif even:
            raise DegenerateStratumError(
                f"y{2 * j - 1} = 0 but y{2 * j} != 0: no closed-form schedule, "
                "use the perturbation mode")
        else:
            ratios.append(ZERO)
    return ratios

def witness_sequence(d, target, epsilons):
    """
    Closed-form witnesses that target lies in the cortex of g_d*.

    For each eps: ell(eps) has z_1 = eps, z_{j+1} = eps y_{2j}/y_{2j-1} and every
    other coordinate 0; X(eps) = sum_j s_j X_j + sum_k t_k Y_{2k-1} with
    s_j = -y_{2j-1}/eps and t_k = x_k/eps.

    Parameters:
    - d (int): Family index.
    - target (sequence of rationals): Point of the cortex variety.
    - epsilons (sequence of rationals): Positive scales.

    Returns:
    - tuple: (WitnessSchedule, CortexReport).
    """
    _check_d(d)
    check_length(target, 4 * d, 'target')
    target = as_vector(target)
    if not cortex_membership_gd(d, target):
        raise MembershipError("target is not on the cortex variety z = 0, Q_d = 0")
    epsilons = [to_fraction(e) for e in epsilons]
    if any(e <= 0 for e in epsilons):
        raise ValueError("witness scales must be positive")

    alg = make_gd(d).algebra
    y, xs = target[d:3 * d], target[3 * d:]
    ratios = _witness_ratios(d, y)
    bound_factor = max([Fraction(1)] + [abs(r) for r in ratios])

    steps, rows = [], []
    for eps in epsilons:
        ell = [ZERO] * (4 * d)
        ell[z_index(d, 1)] = eps
        for j in range(1, d):
            ell[z_index(d, j + 1)] = eps * ratios[j - 1]
        x = [ZERO] * (4 * d)
        for j in range(1, d + 1):
            x[x_index(d, j)] = -y[2 * j - 2] / eps
        for k in range(1, d + 1):
            x[y_index(d, 2 * k - 1)] = xs[k - 1] / eps
        ell, x = tuple(ell), tuple(x)
        image = coadjoint_exp(alg, x, ell)
        residual = vec_sub(image, target)
        if any(residual[d:]):
            raise DegenerateStratumError(
                "closed-form schedule misses the target in the y/x coordinates, "
                "use the perturbation mode")
        steps.append(WitnessStep(eps, ell, x, image, residual))
        row = {'epsilon': format_rational(eps), 'ell_norm': format_rational(max_norm(ell))}
        row.update({f"residual_z{i + 1}": format_rational(residual[i]) for i in range(d)})
        row['bound'] = format_rational(eps * bound_factor)
        rows.append(row)
        logger.debug("Witness step eps=%s built", eps)

    schedule = WitnessSchedule(d, target, tuple(steps))
    report = CortexReport(
        f"Witness schedule in g_{d}*",
        f"WITNESS: image matches target in every y, x coordinate for {len(steps)} scales",
        True,
        table=pd.DataFrame(rows))
    return schedule, report

def perturb_target(d, target, eta):
    """
    Move a target off the degenerate stratum: zero y_{2j-1} (j < d) become eta and the
    target is put back on Q_d = 0 by re-solving y_{2d} or y_{2d-1}, whichever moves less.
    """
    z, y, x = target[:d], list(target[d:3 * d]), target[3 * d:]
    for j in range(1, d):
        if y[2 * j - 2] == 0:
            y[2 * j - 2] = eta
    last = list(y)
    last[2 * d - 1] = solve_last_y(d, y)
    candidates = [last]
    # on the generic stratum Q_d = 0 reads y_{2d} = y_{2d-1} * sum_j y_{2j}/y_{2j-1}
    ratio_sum = sum((y[2 * j - 1] / y[2 * j - 2] for j in range(1, d)), Fraction(0))
    if ratio_sum:
        before = list(y)
        before[2 * d - 2] = y[2 * d - 1] / ratio_sum
        candidates.append(before)
    original = target[d:3 * d]
    best = min(candidates, key=lambda c: max_norm(vec_sub(tuple(c), original)))
    return tuple(z) + tuple(best) + tuple(x)


def perturbed_witness(d, target, etas, epsilons):
    """
    Two-parameter witnesses for targets on the degenerate stratum.

    Returns:
    - CortexReport: per (eta, eps), the max-norm distance from the image to the
      original target and the size of ell(eps); flagged as numeric evidence.
    """
    _check_d(d)
    check_length(target, 4 * d, 'target')
    target = as_vector(target)
    if not cortex_membership_gd(d, target):
        raise MembershipError("target is not on the cortex variety z = 0, Q_d = 0")
    etas = [to_fraction(e) for e in etas]
    epsilons = [to_fraction(e) for e in epsilons]
    if len(etas) != len(epsilons):
        raise DimensionError("perturbation needs as many eta values as epsilon values")
    if any(eta == 0 for eta in etas):
        raise ValueError("perturbation parameters must be nonzero")
    rows = []
    for eta, eps in zip(etas, epsilons):
        moved = perturb_target(d, target, eta)
        schedule, _ = witness_sequence(d, moved, [eps])
        step = schedule.steps[0]
        distance = max_norm(vec_sub(step.image, target))
        rows.append({'eta': format_rational(eta), 'epsilon': format_rational(eps),
                     'distance': format_rational(distance),
                     'distance_float': parameters.CSV_FLOAT_FORMAT % float(distance),
                     'ell_norm': format_rational(max_norm(step.ell))})
    return CortexReport(
        f"Perturbed witness schedule in g_{d}*",
        "PERTURBED WITNESS: distance to target along the (eta, epsilon) schedule",
        True, table=pd.DataFrame(rows), numeric=True)

# ----------------------------------------------------------------------------
# invariance
# ----------------------------------------------------------------------------

def coadjoint_derivation(alg, p, b):
    """
    D_b p (ell) = sum_k dp/du_k (ell) * (ad*_{U_b} ell)_k, a polynomial in ell.
    p is invariant under the connected group iff D_b p = 0 for every b.
    """
    ring = p.ring
    if ring.ngens != alg.dim:
        raise DimensionError(f"polynomial has {ring.ngens} variables, algebra has dim {alg.dim}")
    if not 0 <= b < alg.dim:
        raise DimensionError(f"basis index {b} out of range for dim {alg.dim}")
    u = ring.gens
    result = ring.zero
    for k in range(alg.dim):
        c = alg.structure_vector(b, k)
        if not any(c):
            continue
        # (ad*_{U_b} ell)_k = -ell([U_b, U_k])
        linear = -sum((ring.ground_new(to_qq(c[m])) * u[m] for m in range(alg.dim) if c[m]),
                      ring.zero)
        partial = poly_partial(p, k)
        if partial:
            result += partial * linear
    return result

def invariance_report(alg, generators):
    """
    Every coadjoint derivation of every generator, with an all-vanish verdict.
    """
    rows, all_zero = [], True
    for p in generators:
        for b in range(alg.dim):
            derivation = coadjoint_derivation(alg, p, b)
            all_zero = all_zero and not derivation
            rows.append({'generator': format_poly(p), 'basis': alg.basis[b],
                         'derivation': format_poly(derivation)})
    verdict = "all derivations vanish: {}".format("✓" if all_zero else "✗")
    residuals = {f"P{i + 1}": format_poly(p) for i, p in enumerate(generators)}
    return CortexReport(f"Invariant generators ({len(generators)})", verdict, all_zero,
                        residuals, pd.DataFrame(rows))

# ----------------------------------------------------------------------------
# codimension classifier
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class ClassifierVerdict:
    center_dim: int
    z_perp_dim: int
    orbit_dims: tuple
    generic_orbit_dim: int
    generic_codim: int
    max_codim: int
    applies: bool
    verdict: str

    def to_report(self):
        residuals = {
            'dim z': self.center_dim,
            'dim z^perp': self.z_perp_dim,
            'generic orbit dim': self.generic_orbit_dim,
            'generic codim': self.generic_codim,
            'max sampled codim': self.max_codim,
        }
        table = pd.DataFrame({'trial': range(1, len(self.orbit_dims) + 1),
                              'orbit_dim': list(self.orbit_dims)})
        return CortexReport("Codimension classifier", self.verdict, self.applies,
                            residuals, table, numeric=True)

def codim_classifier(alg, trials=None, seed=None):
    """
    Apply the codimension-0/1 criterion on the generic layer.

    The generic orbit dimension is the maximum of orbit_dimension over `trials`
    seeded random rational covectors. If generic orbits have codimension <= 1 in
    z^perp the cortex is all of z^perp; otherwise the criterion says nothing.

    Parameters:
    - alg (LieAlgebra): A two-step nilpotent algebra.
    - trials (int): Number of random covectors.
    - seed (int): Random seed.

    Returns:
    - ClassifierVerdict
    """
    require_two_step(alg)
    trials = parameters.CLASSIFIER_TRIALS if trials is None else trials
    seed = parameters.DEFAULT_SEED if seed is None else seed
    rng = np.random.default_rng(seed)
    n = alg.dim
    z_dim = center(alg).dim
    perp_dim = z_perp(alg).dim
    dims = tuple(orbit_dimension(alg, choose_random_rational_vector(n, rng)) for _ in range(trials))
    generic = max(dims, default=0)
    generic_codim = perp_dim - generic
    max_codim = perp_dim - min(dims, default=0)
    applies = generic_codim <= 1
    basis = (f"generic layer of {trials} seeded samples; maximum sampled codimension "
             f"{max_codim}; the hypothesis is checked on generic orbits only")
    if applies and perp_dim == 0:
        verdict = (f"Cor = z^⊥ = {{0}} (codimension 0/1 criterion: generic orbits have "
                   f"codimension 0 in z^⊥; {basis})")
    elif applies:
        verdict = (f"Cor = z^⊥ (codimension 0/1 criterion: generic orbits have codimension "
                   f"{generic_codim} <= 1 in z^⊥; {basis})")
    else:
        verdict = (f"inconclusive: codimension 0/1 criterion does not apply, generic orbits "
                   f"have codimension {generic_codim} in z^⊥ ({basis}); "
                   f"use membership/witness tools")
    logger.info("Classifier: dim z^perp=%d, generic orbit dim=%d", perp_dim, generic)
    return ClassifierVerdict(z_dim, perp_dim, dims, generic, generic_codim, max_codim,
                             applies, verdict)

def random_image_points(alg, count, seed=None):
    """
    `count` exact points ad*_x(ell) for seeded random rational x, ell.
    """
    rng = np.random.default_rng(parameters.DEFAULT_SEED if seed is None else seed)
    points = []
    for _ in range(count):
        x = choose_random_rational_vector(alg.dim, rng)
        ell = choose_random_rational_vector(alg.dim, rng)
        points.append(image_point(alg, x, ell))
    return points

def random_cortex_target(d, rng):
    """A seeded random point of the generic stratum of the cortex variety."""
    y = list(choose_random_rational_vector(2 * d, rng, nonzero=range(0, 2 * d - 2, 2)))
    y[2 * d - 1] = solve_last_y(d, y)
    x = choose_random_rational_vector(d, rng)
    return (ZERO,) * d + tuple(y) + tuple(x)

def corollary_witness(d):
    """
    z = 0, y_{2j-1} = 1 for all j, y_{2d} = 1, other coordinates 0:
    in ICor(g_d*) but not in Cor(g_d*).
    """
    alg = make_gd(d).algebra
    ell = zero_vector(alg.dim)
    for label in [f"Y{2 * j - 1}" for j in range(1, d + 1)] + [f"Y{2 * d}"]:
        ell = vec_add(ell, unit_covector(alg, label))
    return ell

def unit_covector(alg, label):
    """Dual basis covector U* for the basis vector with the given label."""
    return basis_vector(alg.dim, alg.basis.index(label))
