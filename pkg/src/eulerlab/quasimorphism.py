"""Reduced words in free groups, Rolli quasimorphisms, defect and homogenization."""

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional

from .errors import BadIndex, BallTooLarge, IterationLimit, RankMismatch, SchemaError

PAIR_BUDGET = 10**7
MAX_BALL_RADIUS = 8


class Word(tuple):
    """A freely reduced word.  Letter i stands for s_i, -i for its inverse.

    ``*`` concatenates and reduces, ``**`` takes powers.
    """

    __slots__ = ()

    def __mul__(self, other):
        return reduce_word(tuple(self) + tuple(other))

    def __pow__(self, n):
        return power_word(self, n)

    def inverse(self):
        return Word(-a for a in reversed(self))

    def __repr__(self):
        return f"Word({list(self)})"


def reduce_word(letters, rank=None):
    """Free reduction of a sequence of signed generator indices."""
    out = []
    for a in letters:
        if isinstance(a, bool) or not isinstance(a, int) or a == 0:
            raise BadIndex(f"letter {a!r} is not a nonzero integer")
        if rank is not None and abs(a) > rank:
            raise BadIndex(f"letter {a} exceeds rank {rank}")
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return Word(out)


def power_word(w, n):
    """w^n, using the cyclic reduction w = u c u^-1."""
    w = Word(w)
    if n < 0:
        return power_word(w.inverse(), -n)
    if n == 0 or not w:
        return Word()
    k = 0
    while k < len(w) // 2 and w[k] == -w[-1 - k]:
        k += 1
    u, core = w[:k], w[k : len(w) - k]
    return Word(tuple(u) + tuple(core) * n + tuple(-a for a in reversed(u)))


@lru_cache(maxsize=1 << 16)
def syllables(w):
    """Maximal powers s_i^n in w, as (i, n) pairs."""
    out = []
    for gen, run in itertools.groupby(w, key=abs):
        run = list(run)
        out.append((gen, len(run) if run[0] > 0 else -len(run)))
    return tuple(out)


def ball(rank, radius):
    """All reduced words of length at most ``radius``, shortest first."""
    letters = [i for g in range(1, rank + 1) for i in (g, -g)]
    layers = [[Word()]]
    for _ in range(radius):
        nxt = []
        for w in layers[-1]:
            for a in letters:
                if w and w[-1] == -a:
                    continue
                nxt.append(Word(w + (a,)))
        layers.append(nxt)
    return [w for layer in layers for w in layer]


def ball_size(rank, radius):
    if rank == 1:
        return 1 + 2 * radius
    b = 2 * rank - 1
    return 1 + 2 * rank * (b**radius - 1) // (b - 1)


@dataclass(frozen=True)
class OddSequence:
    """alpha on the integers with alpha(-n) = -alpha(n), given on n > 0."""

    support: dict

    def __post_init__(self):
        clean = {}
        for n, v in dict(self.support).items():
            n = int(n)
            if n <= 0:
                raise SchemaError(f"support keys must be positive, got {n}")
            clean[n] = float(v)
        object.__setattr__(self, "support", clean)

    @property
    def bound(self):
        return max((abs(v) for v in self.support.values()), default=0.0)

    def __call__(self, n):
        if n > 0:
            return self.support.get(n, 0.0)
        if n < 0:
            return -self.support.get(-n, 0.0)
        return 0.0

    def __hash__(self):
        return hash(tuple(sorted(self.support.items())))

    @classmethod
    def unit_sign(cls):
        """alpha(1) = 1, alpha(-1) = -1, zero elsewhere."""
        return cls({1: 1.0})

    @classmethod
    def from_json(cls, doc):
        if not isinstance(doc, dict):
            raise SchemaError("odd sequence must be an object mapping n to alpha(n)")
        try:
            return cls({int(k): float(v) for k, v in doc.items()})
        except (TypeError, ValueError) as exc:
            raise SchemaError(str(exc)) from None

    def to_json(self):
        return {str(k): v for k, v in sorted(self.support.items())}


@dataclass(frozen=True)
class Quasimorphism:
    evaluator: Callable
    defect_bound: Optional[float] = None
    label: str = ""
    cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __call__(self, w):
        w = Word(w)
        try:
            return self.cache[w]
        except KeyError:
            v = self.cache[w] = self.evaluator(w)
            return v


def rolli_eval(alpha, w, rank=2):
    """Sum of alpha over the exponents of the syllables of w."""
    for a in w:
        if abs(a) > rank:
            raise RankMismatch(f"letter {a} outside rank {rank}")
    return float(sum(alpha(n) for _, n in syllables(Word(w))))


def rolli(alpha, rank=2):
    return Quasimorphism(lambda w: rolli_eval(alpha, w, rank), None, f"rolli{alpha.to_json()}")


def exponent_sum(i):
    """The homomorphism counting signed occurrences of s_i."""
    return Quasimorphism(lambda w: float(sum((a > 0) - (a < 0) for a in w if abs(a) == i)), 0.0, f"exp{i}")


def constant(c):
    return Quasimorphism(lambda w: float(c), abs(float(c)), f"const{c}")


def bar_coboundary(f, g1, g2):
    """f(g1) + f(g2) - f(g1 g2)."""
    g1, g2 = Word(g1), Word(g2)
    return f(g1) + f(g2) - f(g1 * g2)


def defect_witness(f, radius, rank=2, budget=PAIR_BUDGET):
    """(value, g1, g2) maximizing |bar_coboundary| over the ball of given radius."""
    if radius < 1:
        raise ValueError("radius must be at least 1")
    if radius > MAX_BALL_RADIUS:
        raise BallTooLarge(f"radius {radius} exceeds {MAX_BALL_RADIUS}")
    size = ball_size(rank, radius)
    if size * size > budget:
        raise BallTooLarge(f"{size * size} pairs exceed the budget {budget}")
    words = ball(rank, radius)
    values = [f(w) for w in words]
    best = (0.0, Word(), Word())
    for w1, v1 in zip(words, values):
        for w2, v2 in zip(words, values):
            d = abs(v1 + v2 - f(w1 * w2))
            if d > best[0]:
                best = (d, w1, w2)
    return best


def defect_lower_bound(f, radius, rank=2, budget=PAIR_BUDGET):
    """max |f(g1) + f(g2) - f(g1 g2)| over the ball; a lower bound for the defect."""
    return defect_witness(f, radius, rank, budget)[0]


def homogenize(f, g, defect, tol, max_power=1 << 24):
    """(f(g^n)/n, defect/n) with n a power of two and defect/n <= tol.

    The error bar bounds the distance to the homogenization only when
    ``defect`` is at least the true defect of f.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    if defect < 0:
        raise ValueError("defect must be non-negative")
    n = 1
    while defect / n > tol:
        n *= 2
        if n > max_power:
            raise IterationLimit(f"power {n} exceeds {max_power}")
    return f(power_word(g, n)) / n, defect / n
