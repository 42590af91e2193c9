"""Fundamental cycles of closed surfaces from the 4g-gon and simplicial-volume bounds.

The polygon has corners P0..P(4g-1); side k runs from Pk to Pk+1 and the
sides read a1 b1 a1^-1 b1^-1 ... ag bg ag^-1 bg^-1.  The fan from P0 gives
triangles (P0, Pk, Pk+1), each oriented counterclockwise.  An oriented
corner pair (Pi, Pj) maps to an edge class and a sign +-1.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InputError


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        self.parent[self.find(a)] = self.find(b)


@dataclass(frozen=True)
class QuotientComplex:
    genus: int
    triangles: tuple
    edge_map: dict
    edge_names: tuple
    vertex_class: tuple

    @property
    def V(self):
        return len(set(self.vertex_class))

    @property
    def E(self):
        return len(self.edge_names)

    @property
    def F(self):
        return len(self.triangles)

    @property
    def chi(self):
        return self.V - self.E + self.F

    def edge(self, i, j):
        """(edge class, sign) of the oriented corner pair (Pi, Pj)."""
        if (i, j) in self.edge_map:
            return self.edge_map[(i, j)]
        cls, sign = self.edge_map[(j, i)]
        return cls, -sign

    def triangle_boundary(self, t):
        """[(edge class, sign)] of d(p0, p1, p2) = [p1,p2] - [p0,p2] + [p0,p1]."""
        p0, p1, p2 = self.triangles[t]
        out = []
        for (a, b), s in (((p1, p2), 1), ((p0, p2), -1), ((p0, p1), 1)):
            cls, sign = self.edge(a, b)
            out.append((cls, s * sign))
        return out

    def canonical_cycle(self):
        return Chain2(tuple((1.0, t) for t in range(self.F)))


def polygon_triangulation(g):
    """Fan triangulation of the 4g-gon with the standard side pairing."""
    if g < 1:
        raise InputError("genus must be at least 1")
    N = 4 * g
    edge_map = {}
    names = []
    uf = _UnionFind(N)
    for i in range(g):
        for letter, first, second in (("a", 4 * i, 4 * i + 2), ("b", 4 * i + 1, 4 * i + 3)):
            cls = len(names)
            names.append(f"{letter}{i + 1}")
            s, e = first, (first + 1) % N
            edge_map[(s, e)] = (cls, 1)
            # the partner side is read backwards
            s2, e2 = second, (second + 1) % N
            edge_map[(e2, s2)] = (cls, 1)
            uf.union(s, e2)
            uf.union(e, s2)
    for k in range(2, N - 1):
        edge_map[(0, k)] = (len(names), 1)
        names.append(f"d{k}")
    triangles = tuple((0, k, k + 1) for k in range(1, N - 1))
    roots = [uf.find(v) for v in range(N)]
    relabel = {r: i for i, r in enumerate(dict.fromkeys(roots))}
    K = QuotientComplex(g, triangles, edge_map, tuple(names), tuple(relabel[r] for r in roots))
    _check_closed(K)
    return K


def _check_closed(K):
    slots = {}
    for t in range(K.F):
        for cls, sign in K.triangle_boundary(t):
            slots.setdefault(cls, []).append(sign)
    for cls in range(K.E):
        s = slots.get(cls, [])
        if sorted(s) != [-1, 1]:
            raise AssertionError(f"edge {K.edge_names[cls]} appears with signs {s}")


@dataclass(frozen=True)
class Chain2:
    """Real 2-chain: (coefficient, triangle index) pairs."""

    terms: tuple = ()

    def combined(self):
        out = {}
        for c, t in self.terms:
            out[t] = out.get(t, 0.0) + float(c)
        return out


def l1_norm(c):
    return float(sum(abs(v) for v in c.combined().values()))


def boundary_residual(c, K):
    """l1-norm of the boundary of c after edge identifications."""
    acc = np.zeros(K.E)
    for t, coef in c.combined().items():
        if not 0 <= t < K.F:
            raise InputError(f"triangle {t} not in the complex")
        for cls, sign in K.triangle_boundary(t):
            acc[cls] += sign * coef
    return float(np.abs(acc).sum())


@dataclass(frozen=True)
class SurfaceBounds:
    genus: int
    punctures: int
    cover_degree: int
    exact: int
    lower: float
    upper_d: float
    cover_genus: int
    provenance: dict

    def to_json(self):
        return {
            "genus": self.genus,
            "punctures": self.punctures,
            "cover": self.cover_degree,
            "exact": self.exact,
            "lower": self.lower,
            "upper": self.upper_d,
            "cover_genus": self.cover_genus,
            "provenance": self.provenance,
        }


def surface_bounds(g, n=0, d=1):
    """Exact simplicial volume max(0, -2 chi) with the lower and covering upper bounds.

    For closed surfaces of genus g >= 1, a degree-d cover has genus
    g' = d(g-1)+1 and a fan cycle with 4g'-2 triangles, so the volume is at
    most (4g'-2)/d = 2|chi| + 2/d.
    """
    if g < 0 or n < 0:
        raise InputError("genus and punctures must be non-negative")
    if d < 1:
        raise InputError("cover degree must be at least 1")
    chi = 2 - 2 * g - n
    exact = max(0, -2 * chi)
    prov = {"exact": "max(0, -2 chi)"}
    if n == 0 and g >= 2:
        lower = 2.0 * abs(chi)
        prov["lower"] = "2|chi|: maximal flat bundle, Euler number 2g-2 against Euler class sup-norm 1/2"
    else:
        lower = float(exact)
        prov["lower"] = "equal to the exact value"
    if n == 0 and g >= 1:
        gp = d * (g - 1) + 1
        upper = (4 * gp - 2) / d
        prov["upper"] = f"fan cycle on the degree-{d} cover of genus {gp}, divided by {d}"
    else:
        gp, upper = None, None
        prov["upper"] = "not computed"
    return SurfaceBounds(g, n, d, exact, lower, upper, gp, prov)
