from fractions import Fraction

import numpy as np

from nilpotent_cortex import parameters
from nilpotent_cortex.errors import ParseError

def to_fraction(value):
    """
    Convert an int, Fraction, sympy QQ element or rational string to a Fraction.
    Floats are refused: every exact path stays exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, float):
        raise TypeError(f"refusing floating value {value!r} on an exact path")
    # sympy QQ elements (PythonMPQ, gmpy2.mpq) and sympy Rational
    numerator = getattr(value, 'numerator', getattr(value, 'p', None))
    denominator = getattr(value, 'denominator', getattr(value, 'q', None))
    if numerator is None or denominator is None:
        raise TypeError(f"cannot interpret {value!r} as a rational")
    return Fraction(int(numerator), int(denominator))

def parse_rational(text, location=None):
    """
    Parse "p/q", "p", "-p/q" (the Unicode minus is accepted too).
    """
    cleaned = text.strip().replace('−', '-')
    try:
        return Fraction(cleaned)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational string: {text!r}", location) from None

def format_rational(value):
    return str(to_fraction(value))

def as_vector(values):
    return tuple(to_fraction(v) for v in values)

def choose_random_rational_vector(size, rng, bound=None, denominators=None, nonzero=()):
    """
    Draw a rational vector with numerators uniform in [-bound, bound] and
    denominators picked from a fixed grid.

    Parameters:
    - size (int): Vector length.
    - rng (numpy.random.Generator): Source of randomness.
    - bound (int): Numerator bound B.
    - denominators (sequence of int): Denominator grid.
    - nonzero (iterable of int): 0-based positions redrawn until nonzero.

    Returns:
    - tuple of Fraction: The sample.
    """
    bound = parameters.NUMERATOR_BOUND if bound is None else bound
    denominators = np.asarray(parameters.DENOMINATORS if denominators is None else denominators)
    numerators = rng.integers(-bound, bound, size=size, endpoint=True)
    dens = rng.choice(denominators, size=size)
    for i in nonzero:
        while numerators[i] == 0:
            numerators[i] = rng.integers(-bound, bound, endpoint=True)
    return tuple(Fraction(int(n), int(q)) for n, q in zip(numerators, dens))

def choose_random_rational(rng, bound=None, denominators=None, nonzero=False):
    return choose_random_rational_vector(1, rng, bound, denominators, (0,) if nonzero else ())[0]
