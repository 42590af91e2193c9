"""The integral Euler cocycle, the homogeneous real cocycle tau, and the
floor cocycle on the integers."""

import math
import operator
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from ._config import DEFAULT_TOL, INT_TOL
from .errors import NotAnInteger
from .lifts import CircleMap, Compose, evaluate, standard_lift, translation_number


def _lift_of(f):
    return f.lift if isinstance(f, CircleMap) else f


def integral_euler_cocycle(f, g, x0=0.0):
    """f~(g~(x0)) - (fg)~(x0), where ~ is the lift with displacement at x0 in [0, 1)."""
    fl = standard_lift(_lift_of(f), x0)
    gl = standard_lift(_lift_of(g), x0)
    a = evaluate(fl, evaluate(gl, x0))
    b = evaluate(standard_lift(Compose(fl, gl), x0), x0)
    v = a - b
    k = round(v)
    if abs(v - k) > INT_TOL:
        raise NotAnInteger(f"cocycle value {v!r} is not within {INT_TOL} of an integer")
    return int(k)


def basepoint_change(f, x0, x1):
    """q(f) with lift_x1(f) = lift_x0(f) + q(f); c_x1 - c_x0 is its coboundary."""
    lift = _lift_of(f)
    v = evaluate(standard_lift(lift, x1), 0.0) - evaluate(standard_lift(lift, x0), 0.0)
    return int(round(v))


@dataclass(frozen=True)
class TauValue:
    value: float
    err: float

    def __iter__(self):
        return iter((self.value, self.err))


def tau(f, g, tol=DEFAULT_TOL):
    """rott(fg) - rott(f) - rott(g) with the summed enclosure widths as error."""
    fl, gl = _lift_of(f), _lift_of(g)
    ef = translation_number(fl, tol)
    eg = translation_number(gl, tol)
    efg = translation_number(Compose(fl, gl), tol)
    return TauValue(efg.mid - ef.mid - eg.mid, efg.width + ef.width + eg.width)


def _exact(alpha):
    if isinstance(alpha, str):
        return Fraction(alpha)
    if isinstance(alpha, Rational):
        return Fraction(alpha)
    return None


def floor_cocycle(alpha, n, m):
    """floor(alpha(n+m)) - floor(alpha n) - floor(alpha m).

    Exact for rational alpha (int, Fraction or a "p/q" string); a float alpha
    is floored in floating point and may misround next to integers.
    """
    a = _exact(alpha)
    if a is None:
        a = float(alpha)
        return math.floor(a * (n + m)) - math.floor(a * n) - math.floor(a * m)
    return math.floor(a * (n + m)) - math.floor(a * n) - math.floor(a * m)


@dataclass(frozen=True)
class ResidualReport:
    """``residual`` is the largest |delta c|; ``excess`` subtracts the error bars."""

    residual: float
    excess: float
    worst: int
    count: int


def _split(v):
    if isinstance(v, TauValue):
        return v.value, v.err
    if isinstance(v, tuple):
        return float(v[0]), float(v[1])
    return v, 0.0


def cocycle_residual(c, triples, mul=operator.mul):
    """Largest |c(g2,g3) - c(g1 g2,g3) + c(g1,g2 g3) - c(g1,g2)| over ``triples``.

    ``c`` may return plain numbers or (value, err) pairs; with pairs the
    report's ``excess`` is the largest residual minus its summed error bars.
    """
    residual = 0
    excess = -math.inf
    worst = -1
    count = 0
    for idx, (g1, g2, g3) in enumerate(triples):
        terms = [
            _split(c(g2, g3)),
            _split(c(mul(g1, g2), g3)),
            _split(c(g1, mul(g2, g3))),
            _split(c(g1, g2)),
        ]
        r = abs(terms[0][0] - terms[1][0] + terms[2][0] - terms[3][0])
        e = r - sum(t[1] for t in terms)
        if worst < 0 or r > residual:
            residual, worst = r, idx
        excess = max(excess, e)
        count += 1
    if count == 0:
        excess = 0.0
    return ResidualReport(residual, excess, worst, count)
