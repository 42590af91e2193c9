"""Central extensions of groups by the integers from normalized 2-cocycles.

Base groups are finite multiplication tables or a window {-W..W} of the
integers.  On a window only triples whose partial sums stay inside are
checked; everything else is exhaustive.
"""

from dataclasses import dataclass

import numpy as np

from .errors import AssociativityFailure, InputError, NotACocycle, NotASection, SchemaError

MAX_ORDER = 512


@dataclass(frozen=True, eq=False)
class FiniteGroupTable:
    """Group on {0..order-1} given by its multiplication table."""

    mul: np.ndarray
    identity: int
    inverse: np.ndarray

    def __post_init__(self):
        mul = np.asarray(self.mul, dtype=np.int64)
        object.__setattr__(self, "mul", mul)
        n = mul.shape[0]
        if mul.ndim != 2 or mul.shape != (n, n) or n == 0:
            raise SchemaError("multiplication table must be square and non-empty")
        if n > MAX_ORDER:
            raise SchemaError(f"order {n} exceeds {MAX_ORDER}")
        if mul.min() < 0 or mul.max() >= n:
            raise SchemaError("table entries out of range")
        e = int(self.identity)
        object.__setattr__(self, "identity", e)
        idx = np.arange(n)
        if not (np.array_equal(mul[e], idx) and np.array_equal(mul[:, e], idx)):
            raise SchemaError("identity law fails")
        inv = np.asarray(self.inverse, dtype=np.int64)
        object.__setattr__(self, "inverse", inv)
        if inv.shape != (n,) or not (np.all(mul[idx, inv] == e) and np.all(mul[inv, idx] == e)):
            raise SchemaError("inverse law fails")
        for a in range(n):
            if not np.array_equal(mul[mul[a]], mul[a][mul]):
                raise SchemaError(f"associativity fails at first factor {a}")

    @property
    def order(self):
        return self.mul.shape[0]

    def op(self, a, b):
        return int(self.mul[a, b])

    def inv(self, a):
        return int(self.inverse[a])

    def elements(self):
        return range(self.order)

    @classmethod
    def from_table(cls, table, identity=None):
        mul = np.asarray(table, dtype=np.int64)
        n = mul.shape[0]
        if identity is None:
            hits = [e for e in range(n) if np.array_equal(mul[e], np.arange(n))]
            if not hits:
                raise SchemaError("table has no identity row")
            identity = hits[0]
        inv = np.full(n, -1)
        for a in range(n):
            (cands,) = np.nonzero(mul[a] == identity)
            if len(cands) != 1:
                raise SchemaError(f"element {a} has no unique inverse")
            inv[a] = cands[0]
        return cls(mul, identity, inv)

    @classmethod
    def cyclic(cls, m):
        idx = np.arange(m)
        return cls((idx[:, None] + idx[None, :]) % m, 0, (-idx) % m)

    def to_json(self):
        return {"table": self.mul.tolist(), "identity": self.identity}


@dataclass(frozen=True)
class IntWindow:
    """The integers -W..W under addition, used as a truncated base group."""

    W: int

    identity = 0

    def op(self, a, b):
        return a + b

    def inv(self, a):
        return -a

    def elements(self):
        return range(-self.W, self.W + 1)

    def contains(self, a):
        return -self.W <= a <= self.W

    def to_json(self):
        return {"window": self.W}


def group_from_json(doc):
    if not isinstance(doc, dict):
        raise SchemaError("group must be an object")
    if "cyclic" in doc:
        return FiniteGroupTable.cyclic(int(doc["cyclic"]))
    if "window" in doc:
        return IntWindow(int(doc["window"]))
    if "table" in doc:
        return FiniteGroupTable.from_table(doc["table"], doc.get("identity"))
    raise SchemaError("group needs one of 'cyclic', 'window', 'table'")


def triples(base):
    """Triples on which identities are checked."""
    if isinstance(base, IntWindow):
        W = base.W
        for g in range(-W, W + 1):
            for h in range(-W, W + 1):
                if not base.contains(g + h):
                    continue
                for k in range(-W, W + 1):
                    if base.contains(h + k) and base.contains(g + h + k):
                        yield g, h, k
    else:
        n = base.order
        for g in range(n):
            for h in range(n):
                for k in range(n):
                    yield g, h, k


@dataclass(frozen=True, eq=False)
class TwoCocycle:
    """Integer function on pairs of base elements.

    For a finite base ``values[g, h]``; for a window ``values[g + W, h + W]``.
    """

    base: object
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values)
        if not np.issubdtype(vals.dtype, np.integer):
            if not np.all(vals == np.round(vals)):
                raise SchemaError("cocycle values must be integers")
        vals = vals.astype(np.int64)
        n = self._size()
        if vals.shape != (n, n):
            raise SchemaError(f"cocycle table must be {n}x{n}")
        object.__setattr__(self, "values", vals)

    def _size(self):
        if isinstance(self.base, IntWindow):
            return 2 * self.base.W + 1
        return self.base.order

    def _index(self, g):
        return g + self.base.W if isinstance(self.base, IntWindow) else g

    def __call__(self, g, h):
        return int(self.values[self._index(g), self._index(h)])

    @classmethod
    def from_function(cls, base, fn):
        els = list(base.elements())
        return cls(base, np.array([[fn(g, h) for h in els] for g in els], dtype=np.int64))

    @property
    def normalized(self):
        e = self._index(self.base.identity)
        return bool(np.all(self.values[e, :] == 0) and np.all(self.values[:, e] == 0))

    def defect_triples(self):
        """Triples where the cocycle identity fails."""
        op = self.base.op
        for g, h, k in triples(self.base):
            if self(h, k) - self(op(g, h), k) + self(g, op(h, k)) - self(g, h) != 0:
                yield g, h, k

    def residual(self):
        """Largest |delta phi| over the checked triples (vectorized when finite)."""
        if isinstance(self.base, FiniteGroupTable):
            mul, v = self.base.mul, self.values
            worst = 0
            for g in range(self.base.order):
                # rows h, columns k
                r = v - v[mul[g], :] + v[g][mul] - v[g][:, None]
                worst = max(worst, int(np.abs(r).max()))
            return worst
        op = self.base.op
        return max(
            (abs(self(h, k) - self(op(g, h), k) + self(g, op(h, k)) - self(g, h)) for g, h, k in triples(self.base)),
            default=0,
        )

    def to_json(self):
        return {"values": self.values.tolist()}


def cocycle_from_json(base, doc):
    if not isinstance(doc, dict) or "values" not in doc:
        raise SchemaError("cocycle must be an object with 'values'")
    try:
        return TwoCocycle(base, np.array(doc["values"]))
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def normalize_cocycle(phi):
    """Subtract the constant phi(1,1) so that phi(g,1) = phi(1,g) = 0."""
    for bad in phi.defect_triples():
        raise NotACocycle(f"cocycle identity fails at {bad}", bad)
    e = phi.base.identity
    k0 = phi(e, e)
    if k0 == 0:
        return phi
    return TwoCocycle(phi.base, phi.values - k0)


@dataclass(frozen=True, eq=False)
class ExtensionGroup:
    """Pairs (a, g) with (a, g)(b, h) = (a + b + phi(g, h), gh)."""

    base: object
    cocycle: TwoCocycle
    window: int = 16

    @property
    def identity(self):
        return (0, self.base.identity)

    def mul(self, x, y):
        (a, g), (b, h) = x, y
        return (a + b + self.cocycle(g, h), self.base.op(g, h))

    def inv(self, x):
        a, g = x
        gi = self.base.inv(g)
        return (-a - self.cocycle(g, gi), gi)

    def power(self, x, k):
        if k < 0:
            return self.power(self.inv(x), -k)
        out = self.identity
        for _ in range(k):
            out = self.mul(out, x)
        return out

    def contains(self, x):
        a, g = x
        if abs(a) > self.window:
            return False
        if isinstance(self.base, IntWindow):
            return self.base.contains(g)
        return 0 <= g < self.base.order

    def elements(self):
        for a in range(-self.window, self.window + 1):
            for g in self.base.elements():
                yield (a, g)

    def central(self):
        """Does (1, e) commute with every (0, g)?"""
        z = (1, self.base.identity)
        return all(self.mul(z, (0, g)) == self.mul((0, g), z) for g in self.base.elements())


def build_extension(base, phi, window=16):
    """The extension defined by a normalized cocycle, after checking associativity."""
    if not phi.normalized:
        raise InputError("cocycle must be normalized; call normalize_cocycle first")
    E = ExtensionGroup(base, phi, window)
    for g, h, k in triples(base):
        x, y, z = (0, g), (0, h), (0, k)
        if E.mul(E.mul(x, y), z) != E.mul(x, E.mul(y, z)):
            raise AssociativityFailure(f"((xy)z) != (x(yz)) for base triple {(g, h, k)}", (x, y, z))
    return E


def canonical_section(E):
    return lambda g: (0, g)


def _section_value(s, g):
    v = s(g) if callable(s) else s[g]
    if isinstance(v, (int, np.integer)):
        return (int(v), g)
    return (int(v[0]), v[1])


def interior_pairs(base):
    """Boolean mask of the pairs whose product stays in the base (all of them when finite)."""
    els = np.array(list(base.elements()))
    if isinstance(base, IntWindow):
        return np.abs(els[:, None] + els[None, :]) <= base.W
    return np.ones((len(els), len(els)), dtype=bool)


def cocycle_from_section(E, s):
    """phi_s(g1, g2) = s(g1 g2)^-1 s(g1) s(g2), read in the central copy of Z.

    ``s`` maps base elements to pairs (a, g) or just to the integer a.  On a
    window, pairs whose product leaves the window are set to 0.
    """
    base = E.base
    cache = {g: _section_value(s, g) for g in base.elements()}
    for g, (_, img) in cache.items():
        if img != g:
            raise NotASection(f"s({g}) projects to {img}")
    els = list(base.elements())
    vals = np.zeros((len(els), len(els)), dtype=np.int64)
    inside = interior_pairs(base)
    for i, g1 in enumerate(els):
        for j, g2 in enumerate(els):
            if not inside[i, j]:
                continue
            prod = E.mul(cache[g1], cache[g2])
            a, g = E.mul(E.inv(cache[base.op(g1, g2)]), prod)
            if g != base.identity:
                raise NotASection(f"section values do not multiply into the center at {(g1, g2)}")
            vals[i, j] = a
    return TwoCocycle(base, vals)


def coboundary(base, u):
    """The integer 2-cochain (g, h) -> u(g) + u(h) - u(gh)."""
    uf = u if callable(u) else (lambda g: u[g])
    return TwoCocycle.from_function(base, lambda g, h: uf(g) + uf(h) - uf(base.op(g, h)))


def isomorphic_via(E1, E2, u):
    """Does (a, g) -> (a + u(g), g) carry E1 onto E2 multiplicatively?"""
    uf = u if callable(u) else (lambda g: u[g])
    base = E1.base
    op = base.op
    for g in base.elements():
        for h in base.elements():
            if isinstance(base, IntWindow) and not base.contains(op(g, h)):
                continue
            lhs = E1.mul((0, g), (0, h))
            lhs = (lhs[0] + uf(lhs[1]), lhs[1])
            rhs = E2.mul((uf(g), g), (uf(h), h))
            if lhs != rhs:
                return False
    return True
