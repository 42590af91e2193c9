"""Lifts of circle homeomorphisms.

A lift is an increasing map of the real line commuting with ``x -> x + 1``.
Lifts are kept as expression trees over three kinds of primitive (rotation,
piecewise linear, Mobius) and are compiled, on first use, into a flat
program of primitives in application order.  Adjacent primitives are merged
where this is exact or nearly so, which keeps words in Mobius generators at
a single matrix.
"""

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import kernels
from ._config import DEFAULT_TOL, DET_TOL, MAX_STEPS, TRACE_EPS
from .errors import IterationLimit, NonMonotonePL, SchemaError, SingularMatrix

PL_KNOT_CAP = 2000
ORBIT_GRID = 64


class Lift:
    """Base class of all lift nodes."""

    def __call__(self, x):
        return evaluate(self, x)

    def __mul__(self, other):
        if not isinstance(other, Lift):
            return NotImplemented
        return Compose(self, other)

    def __pow__(self, k):
        return power(self, k)

    def inverse(self):
        return Inverse(self)

    def translate(self, k):
        return IntTranslate(int(k), self)

    @cached_property
    def program(self):
        """Merged primitives in the order they are applied."""
        return _merge(self._flat)

    @cached_property
    def _packed(self):
        return _pack(self.program)

    def to_json(self):
        return lift_to_json(self)


class Primitive(Lift):
    @property
    def _flat(self):
        return (self,)


@dataclass(frozen=True, eq=False)
class Rotation(Primitive):
    """Translation ``x -> x + alpha``."""

    alpha: float

    def __post_init__(self):
        a = float(self.alpha)
        if not math.isfinite(a):
            raise SchemaError("rotation amount must be finite")
        object.__setattr__(self, "alpha", a)

    def inverse_primitive(self):
        return Rotation(-self.alpha)

    def eval_scalar(self, x):
        return x + self.alpha


@dataclass(frozen=True, eq=False)
class PiecewiseLinear(Primitive):
    """Periodic piecewise linear lift.

    ``breakpoints`` are pairs (x, y) with x strictly increasing in [0, 1),
    y strictly increasing and y_last < y_first + 1.  The lift sends x to y
    plus ``shift`` and interpolates linearly, wrapping once per period.
    """

    breakpoints: tuple
    shift: int = 0

    def __post_init__(self):
        pts = tuple((float(x), float(y)) for x, y in self.breakpoints)
        object.__setattr__(self, "breakpoints", pts)
        object.__setattr__(self, "shift", int(self.shift))
        if not pts:
            raise NonMonotonePL("piecewise linear map needs at least one breakpoint")
        xs = np.array([p[0] for p in pts])
        ys = np.array([p[1] for p in pts])
        if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ys))):
            raise NonMonotonePL("breakpoints must be finite")
        if xs[0] < 0.0 or xs[-1] >= 1.0:
            raise NonMonotonePL("breakpoint abscissae must lie in [0, 1)")
        if np.any(np.diff(xs) <= 0):
            raise NonMonotonePL("breakpoint abscissae must be strictly increasing")
        if np.any(np.diff(ys) <= 0) or not ys[-1] < ys[0] + 1.0:
            raise NonMonotonePL("breakpoint values must increase strictly within one period")

    @classmethod
    def from_graph(cls, xs, ys):
        """Build from graph points spanning less than one period, anywhere on the line."""
        xs = np.asarray(xs, dtype=np.float64)
        ys = np.asarray(ys, dtype=np.float64)
        n = np.floor(xs)
        xr = xs - n
        wrap = xr >= 1.0
        xr[wrap] -= 1.0
        n[wrap] += 1.0
        yr = ys - n
        order = np.argsort(xr, kind="stable")
        xr, yr = xr[order], yr[order]
        shift = math.floor(yr[0])
        yr = yr - shift
        return cls(tuple(zip(xr.tolist(), yr.tolist())), shift)

    @cached_property
    def knots(self):
        """Extended knot arrays covering [0, 1], values include the shift."""
        xs = np.array([p[0] for p in self.breakpoints])
        ys = np.array([p[1] for p in self.breakpoints]) + self.shift
        kx = np.concatenate(([xs[-1] - 1.0], xs, [xs[0] + 1.0]))
        ky = np.concatenate(([ys[-1] - 1.0], ys, [ys[0] + 1.0]))
        return kx, ky

    def graph(self):
        xs = np.array([p[0] for p in self.breakpoints])
        ys = np.array([p[1] for p in self.breakpoints]) + self.shift
        return xs, ys

    def inverse_primitive(self):
        xs, ys = self.graph()
        return PiecewiseLinear.from_graph(ys, xs)

    def eval_array(self, x):
        x = np.asarray(x, dtype=np.float64)
        kx, ky = self.knots
        fl = np.floor(x)
        return np.interp(x - fl, kx, ky) + fl

    def eval_scalar(self, x):
        return float(self.eval_array(np.array([x]))[0])


def _mobius_parts(m):
    a, b, c, d = m
    u0 = math.atan2(c, a) / math.pi
    if u0 < 0.0:
        u0 += 1.0
    return a * a + c * c, a * b + c * d, u0


def _mobius_eval(m, branch, x):
    p, q, u0 = _mobius_parts(m)
    fl = math.floor(x)
    t = math.pi * (x - fl)
    return u0 + math.atan2(math.sin(t), p * math.cos(t) + q * math.sin(t)) / math.pi + fl + branch


def _det_tol(m):
    """DET_TOL plus the rounding error of a 2x2 determinant with these entries."""
    return DET_TOL + 8 * np.finfo(np.float64).eps * float(np.sum(np.square(m)))


def _as_sl2(matrix):
    m = np.asarray(matrix, dtype=np.float64)
    if m.shape == (4,):
        m = m.reshape(2, 2)
    if m.shape != (2, 2) or not np.all(np.isfinite(m)):
        raise SingularMatrix("Mobius matrix must be a finite 2x2 array")
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if abs(det - 1.0) > _det_tol(m):
        raise SingularMatrix(f"determinant {det!r} differs from 1")
    m = m / math.sqrt(det)
    return tuple(float(v) for v in m.reshape(-1))


@dataclass(frozen=True, eq=False)
class Mobius(Primitive):
    """Boundary action of an SL(2,R) matrix on lines through the origin.

    The point x of R corresponds to the line at angle pi*x.  ``branch``
    selects the integer translate of the lift.
    """

    matrix: tuple
    branch: int = 0

    def __post_init__(self):
        object.__setattr__(self, "matrix", _as_sl2(self.matrix))
        object.__setattr__(self, "branch", int(self.branch))

    @classmethod
    def from_rotation(cls, alpha):
        """The rotation matrix by pi*alpha, as a lift equal to x + alpha."""
        c, s = math.cos(math.pi * alpha), math.sin(math.pi * alpha)
        return cls(((c, -s), (s, c)), math.floor(alpha))

    @property
    def array(self):
        return np.array(self.matrix).reshape(2, 2)

    @property
    def trace(self):
        return self.matrix[0] + self.matrix[3]

    def eval_scalar(self, x):
        return _mobius_eval(self.matrix, self.branch, x)

    def inverse_primitive(self):
        a, b, c, d = self.matrix
        inv = (d, -b, -c, a)
        base = _mobius_eval(inv, 0, self.eval_scalar(0.0))
        return Mobius(inv, round(-base))

    def fixed_direction(self):
        """A point whose line is fixed by the matrix, or None if elliptic."""
        a, b, c, d = self.matrix
        tr = a + d
        disc = tr * tr - 4.0
        if disc < 0.0:
            return None
        lam = 0.5 * (tr + math.copysign(math.sqrt(disc), tr))
        v1 = (b, lam - a)
        v2 = (lam - d, c)
        v = v1 if math.hypot(*v1) >= math.hypot(*v2) else v2
        if math.hypot(*v) == 0.0:
            return 0.0
        x = math.atan2(v[1], v[0]) / math.pi
        return x % 1.0


@dataclass(frozen=True, eq=False)
class Compose(Lift):
    """``outer`` after ``inner``."""

    outer: Lift
    inner: Lift

    @cached_property
    def _flat(self):
        return self.inner._flat + self.outer._flat


@dataclass(frozen=True, eq=False)
class Inverse(Lift):
    arg: Lift

    @cached_property
    def _flat(self):
        return tuple(p.inverse_primitive() for p in reversed(self.arg._flat))


@dataclass(frozen=True, eq=False)
class IntTranslate(Lift):
    """``arg`` followed by the translation by the integer ``k``."""

    k: int
    arg: Lift

    @cached_property
    def _flat(self):
        return self.arg._flat + (Rotation(float(self.k)),)


IDENTITY = Rotation(0.0)


def power(f, k):
    """f composed with itself k times, built by repeated squaring."""
    k = int(k)
    if k == 0:
        return IDENTITY
    if k < 0:
        return power(Inverse(f), -k)
    result = None
    sq = f
    while k:
        if k & 1:
            result = sq if result is None else Compose(sq, result)
        k >>= 1
        if k:
            sq = Compose(sq, sq)
    return result


def lift_algebra(op, *args, k=None):
    """Dispatch ``Compose``, ``Inverse`` or ``Power`` on lifts."""
    op = op.lower()
    if op == "compose":
        if not args:
            return IDENTITY
        out = args[-1]
        for f in reversed(args[:-1]):
            out = Compose(f, out)
        return out
    if op == "inverse":
        (f,) = args
        return Inverse(f)
    if op == "power":
        (f,) = args
        return power(f, k)
    raise ValueError(f"unknown lift operation {op!r}")


# ---------------------------------------------------------------- merging


def _mob_compose(outer, inner):
    a1, b1, c1, d1 = outer.matrix
    a2, b2, c2, d2 = inner.matrix
    m = (a1 * a2 + b1 * c2, a1 * b2 + b1 * d2, c1 * a2 + d1 * c2, c1 * b2 + d1 * d2)
    det = m[0] * m[3] - m[1] * m[2]
    s = math.sqrt(det)
    m = tuple(v / s for v in m)
    target = outer.eval_scalar(inner.eval_scalar(0.0))
    base = _mobius_eval(m, 0, 0.0)
    return Mobius(m, round(target - base))


def _pl_compose(outer, inner):
    xs_in, _ = inner.graph()
    p0 = inner.eval_scalar(0.0)
    qx, _ = outer.graph()
    base = math.floor(p0)
    cand = np.concatenate([qx + k for k in (base - 1, base, base + 1)])
    cand = cand[(cand >= p0) & (cand < p0 + 1.0)]
    pre = inner.inverse_primitive().eval_array(cand)
    pre = pre - np.floor(pre)
    pts = np.unique(np.concatenate((xs_in, pre)))
    pts = pts[(pts >= 0.0) & (pts < 1.0)]
    if len(pts) > 1:
        keep = np.concatenate(([True], np.diff(pts) > 1e-14))
        pts = pts[keep]
    if len(pts) > PL_KNOT_CAP:
        return None
    vals = outer.eval_array(inner.eval_array(pts))
    try:
        return PiecewiseLinear.from_graph(pts, vals)
    except NonMonotonePL:
        return None


def _merge_pair(p, q):
    """Single primitive equal to q after p, or None."""
    if isinstance(p, Rotation) and isinstance(q, Rotation):
        return Rotation(p.alpha + q.alpha)
    if isinstance(p, Mobius) and isinstance(q, Rotation):
        if q.alpha == math.floor(q.alpha):
            return Mobius(p.matrix, p.branch + int(q.alpha))
        return _mob_compose(Mobius.from_rotation(q.alpha), p)
    if isinstance(p, Rotation) and isinstance(q, Mobius):
        if p.alpha == math.floor(p.alpha):
            return Mobius(q.matrix, q.branch + int(p.alpha))
        return _mob_compose(q, Mobius.from_rotation(p.alpha))
    if isinstance(p, Mobius) and isinstance(q, Mobius):
        return _mob_compose(q, p)
    if isinstance(p, PiecewiseLinear) and isinstance(q, Rotation):
        if q.alpha == math.floor(q.alpha):
            return PiecewiseLinear(p.breakpoints, p.shift + int(q.alpha))
        xs, ys = p.graph()
        return PiecewiseLinear.from_graph(xs, ys + q.alpha)
    if isinstance(p, Rotation) and isinstance(q, PiecewiseLinear):
        xs, ys = q.graph()
        return PiecewiseLinear.from_graph(xs - p.alpha, ys)
    if isinstance(p, PiecewiseLinear) and isinstance(q, PiecewiseLinear):
        return _pl_compose(q, p)
    return None


def _simplify(prim):
    """Replace primitives that are integer translations by exact rotations."""
    if isinstance(prim, Mobius):
        a, b, c, d = prim.matrix
        if abs(b) <= 1e-13 and abs(c) <= 1e-13 and abs(a - d) <= 1e-13 and abs(abs(a) - 1.0) <= 1e-13:
            return Rotation(float(round(prim.eval_scalar(0.0))))
    elif isinstance(prim, PiecewiseLinear):
        xs, ys = prim.graph()
        k = round(ys[0] - xs[0])
        if np.abs(ys - xs - k).max() <= 1e-14:
            return Rotation(float(k))
    return prim


def _merge(flat):
    stack = []
    for prim in flat:
        if isinstance(prim, Rotation) and prim.alpha == 0.0:
            continue
        stack.append(prim)
        while len(stack) >= 2:
            merged = _merge_pair(stack[-2], stack[-1])
            if merged is None:
                break
            merged = _simplify(merged)
            stack[-2:] = [merged]
            if isinstance(merged, Rotation) and merged.alpha == 0.0:
                stack.pop()
    return tuple(stack)


def _pack(program):
    kinds, offsets, data = [], [], []
    for prim in program:
        offsets.append(len(data))
        if isinstance(prim, Rotation):
            kinds.append(kernels.KIND_TRANSLATE)
            data.append(prim.alpha)
        elif isinstance(prim, PiecewiseLinear):
            kinds.append(kernels.KIND_PL)
            kx, ky = prim.knots
            data.append(float(len(kx)))
            data.extend(kx.tolist())
            data.extend(ky.tolist())
        else:
            kinds.append(kernels.KIND_MOBIUS)
            p, q, u0 = _mobius_parts(prim.matrix)
            data.extend((p, q, u0, float(prim.branch)))
    return (
        np.array(kinds, dtype=np.int32),
        np.array(offsets, dtype=np.int64),
        np.array(data, dtype=np.float64),
    )


# ------------------------------------------------------------- operations


def evaluate(lift, x):
    """Value of the lift at x (scalar or array)."""
    kinds, offsets, data = lift._packed
    scalar = np.ndim(x) == 0
    y = kernels.apply_program(kinds, offsets, data, np.atleast_1d(np.asarray(x, dtype=np.float64)))
    if scalar:
        return float(y[0])
    return y.reshape(np.shape(x))


@dataclass(frozen=True, eq=False)
class CircleMap:
    """A circle homeomorphism, held through its standard lift at 0."""

    lift: Lift
    normalized: bool = True

    @classmethod
    def from_lift(cls, lift):
        return cls(standard_lift(lift), True)

    @classmethod
    def rotation(cls, alpha):
        return cls.from_lift(Rotation(alpha))

    def __mul__(self, other):
        if not isinstance(other, CircleMap):
            return NotImplemented
        return CircleMap.from_lift(Compose(self.lift, other.lift))

    def inverse(self):
        return CircleMap.from_lift(Inverse(self.lift))

    def __pow__(self, k):
        return CircleMap.from_lift(power(self.lift, k))

    def __call__(self, x):
        y = evaluate(self.lift, x)
        return y - np.floor(y)

    def lift_at(self, x0=0.0):
        return standard_lift(self.lift, x0)


def standard_lift(c, x0=0.0):
    """The integer translate g of c with g(x0) - x0 in [0, 1)."""
    lift = c.lift if isinstance(c, CircleMap) else c
    v = evaluate(lift, x0) - x0
    k = -math.floor(v)
    if k == 0:
        return lift
    return IntTranslate(k, lift)


@dataclass(frozen=True)
class Enclosure:
    lo: float
    hi: float
    iterations: int

    @property
    def mid(self):
        return 0.5 * (self.lo + self.hi)

    @property
    def width(self):
        return self.hi - self.lo

    def contains(self, x, slack=0.0):
        return self.lo - slack <= x <= self.hi + slack

    def to_json(self):
        return {"lo": self.lo, "hi": self.hi, "iterations": self.iterations}


def _orbit_grid(program, grid):
    xs = [np.arange(grid, dtype=np.float64) / grid]
    for prim in program:
        if isinstance(prim, Mobius):
            x = prim.fixed_direction()
            if x is not None:
                xs.append(np.array([x, (x + 0.5) % 1.0]))
    pts = np.unique(np.concatenate(xs))
    return pts[(pts >= 0.0) & (pts < 1.0)]


def simplest_fraction(lo, hi):
    """The fraction with least denominator in the closed interval [lo, hi]."""
    lo, hi = Fraction(lo), Fraction(hi)
    fl = math.floor(lo)
    if fl + 1 <= hi or fl == lo:
        return Fraction(math.ceil(lo))
    # lo and hi share the integer part fl, recurse on reciprocals of the tails
    inner = simplest_fraction(1 / (hi - fl), 1 / (lo - fl))
    return fl + 1 / inner


PROBE_OFFSETS = (0.0, 1e-3, 1e-5, 1e-7, 1e-9, 1e-11, -1e-3, -1e-5, -1e-7, -1e-9, -1e-11)
PROBE_MAX_DENOMINATOR = 1 << 14


def _probe(packed, points, lo, hi):
    """Try to certify a rational rotation number p/q inside [lo, hi].

    Looks for sign changes of f^q(y) - y - p near the current orbit; any
    value also tightens the bracket through floor/ceil of the displacement.
    """
    # the float bracket may exclude its own exact endpoint by an ulp
    slack = 4 * math.ulp(max(abs(lo), abs(hi), 1.0))
    frac = simplest_fraction(lo - slack, hi + slack)
    q = frac.denominator
    if q > PROBE_MAX_DENOMINATOR:
        return lo, hi
    y = (points[:, None] + np.array(PROBE_OFFSETS)[None, :]).reshape(-1)
    disp = kernels.iterate_displacement(*packed, y, q)
    lo = max(lo, math.floor(disp.max()) / q)
    hi = min(hi, math.ceil(disp.min()) / q)
    return lo, hi


def translation_number(lift, tol=DEFAULT_TOL, grid=ORBIT_GRID, max_steps=MAX_STEPS):
    """Certified enclosure of lim f^n(x)/n with width at most ``tol``.

    The orbit of a grid is iterated; after q steps the value lies between
    floor(max disp)/q and ceil(min disp)/q, and between the grid-gap bounds.
    Between blocks of steps the simplest fraction in the current bracket is
    probed near the orbit, which certifies rational values exactly.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    program = lift.program
    if not program:
        return Enclosure(0.0, 0.0, 0)
    if len(program) == 1 and isinstance(program[0], Rotation):
        a = program[0].alpha
        return Enclosure(a, a, 0)
    if len(program) == 1 and isinstance(program[0], Mobius):
        x = program[0].fixed_direction()
        if x is not None:
            d = program[0].eval_scalar(x) - x
            k = round(d)
            if abs(d - k) <= 1e-9:
                return Enclosure(float(k), float(k), 1)
    packed = lift._packed
    xs = _orbit_grid(program, grid)
    r = xs.copy()
    n = np.zeros_like(xs)
    lo, hi, q = -math.inf, math.inf, 0
    block = 64
    while True:
        stop = min(max_steps, q + block)
        inner = tol - 2 * math.ulp(max(abs(lo), abs(hi), 1.0)) if math.isfinite(hi - lo) else tol
        lo, hi, q = kernels.orbit_enclosure(*packed, xs, r, n, q, inner, stop, lo, hi)
        if _narrow(lo, hi, tol) or q >= max_steps:
            break
        lo, hi = _probe(packed, r, lo, hi)
        if hi < lo:
            lo = hi = 0.5 * (lo + hi)
        if _narrow(lo, hi, tol):
            break
        block *= 2
    if not _narrow(lo, hi, tol):
        raise IterationLimit(f"width {hi - lo:.3g} > {tol:g} after {q} steps")
    # bounds like p/q are rounded to nearest; step outward so they still bracket
    return Enclosure(math.nextafter(float(lo), -math.inf), math.nextafter(float(hi), math.inf), int(q))


def _narrow(lo, hi, tol):
    """Is [lo, hi] within tol once widened by an ulp on each side?"""
    return hi - lo + 2 * math.ulp(max(abs(lo), abs(hi), 1.0)) <= tol


def rotation_number(c, tol=DEFAULT_TOL):
    """Rotation number in [0, 1)."""
    lift = c.lift if isinstance(c, CircleMap) else c
    enc = translation_number(lift, tol)
    r = enc.mid % 1.0
    return 0.0 if r >= 1.0 else r


def displacement_range(lift, grid_size=ORBIT_GRID):
    """(min, max) of f(x) - x over a uniform grid on [0, 1)."""
    if grid_size < 2:
        raise ValueError("grid_size must be at least 2")
    xs = np.arange(grid_size, dtype=np.float64) / grid_size
    d = evaluate(lift, xs) - xs
    return float(d.min()), float(d.max())


class MobiusKind(str, Enum):
    ELLIPTIC = "Elliptic"
    PARABOLIC = "Parabolic"
    HYPERBOLIC = "Hyperbolic"
    IDENTITY = "Identity"


@dataclass(frozen=True)
class MobiusClass:
    kind: MobiusKind
    trace: float


def mobius_classify(matrix, eps_tr=TRACE_EPS):
    """Elliptic / parabolic / hyperbolic by |trace|; plus or minus I is Identity."""
    m = np.asarray(matrix, dtype=np.float64)
    if m.shape != (2, 2):
        raise SingularMatrix("expected a 2x2 matrix")
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if abs(det - 1.0) > _det_tol(m):
        raise SingularMatrix(f"determinant {det!r} differs from 1")
    tr = float(m[0, 0] + m[1, 1])
    eye = np.eye(2)
    scale = max(1.0, float(np.abs(m).max()))
    if np.abs(m - eye).max() <= 1e-12 * scale or np.abs(m + eye).max() <= 1e-12 * scale:
        return MobiusClass(MobiusKind.IDENTITY, tr)
    if abs(abs(tr) - 2.0) <= eps_tr:
        return MobiusClass(MobiusKind.PARABOLIC, tr)
    if abs(tr) < 2.0:
        return MobiusClass(MobiusKind.ELLIPTIC, tr)
    return MobiusClass(MobiusKind.HYPERBOLIC, tr)


# ------------------------------------------------------------------ JSON


def lift_to_json(lift):
    if isinstance(lift, Rotation):
        return {"kind": "rotation", "alpha": lift.alpha}
    if isinstance(lift, PiecewiseLinear):
        return {"kind": "pl", "breakpoints": [list(p) for p in lift.breakpoints], "shift": lift.shift}
    if isinstance(lift, Mobius):
        a, b, c, d = lift.matrix
        return {"kind": "mobius", "matrix": [[a, b], [c, d]], "branch": lift.branch}
    if isinstance(lift, Compose):
        return {"kind": "compose", "outer": lift_to_json(lift.outer), "inner": lift_to_json(lift.inner)}
    if isinstance(lift, Inverse):
        return {"kind": "inverse", "arg": lift_to_json(lift.arg)}
    if isinstance(lift, IntTranslate):
        return {"kind": "translate", "k": lift.k, "arg": lift_to_json(lift.arg)}
    raise TypeError(f"not a lift: {lift!r}")


def lift_from_json(doc, path=()):
    """Inverse of ``lift_to_json``; structural errors raise SchemaError."""
    if not isinstance(doc, dict) or "kind" not in doc:
        raise SchemaError("lift must be an object with a 'kind'", path)
    kind = doc["kind"]
    try:
        if kind == "rotation":
            return Rotation(doc["alpha"])
        if kind == "pl":
            return PiecewiseLinear(tuple(tuple(p) for p in doc["breakpoints"]), doc.get("shift", 0))
        if kind == "mobius":
            return Mobius(doc["matrix"], doc.get("branch", 0))
        if kind == "compose":
            return Compose(lift_from_json(doc["outer"], path + ("outer",)), lift_from_json(doc["inner"], path + ("inner",)))
        if kind == "inverse":
            return Inverse(lift_from_json(doc["arg"], path + ("arg",)))
        if kind == "translate":
            return IntTranslate(int(doc["k"]), lift_from_json(doc["arg"], path + ("arg",)))
    except KeyError as exc:
        raise SchemaError(f"missing field {exc.args[0]!r}", path) from None
    except (TypeError, ValueError) as exc:
        raise SchemaError(str(exc), path) from None
    raise SchemaError(f"unknown lift kind {kind!r}", path)
