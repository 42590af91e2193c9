"""Reference representations, built here and shipped as JSON under ``fixtures/``.

    octagon        genus 2, side pairings of the regular hyperbolic octagon
    sanov          thrice-punctured sphere, c1 = [[1,2],[0,1]], c2 = [[1,0],[2,1]]^-1
    sanov_torus    the same two matrices as a1, b1 of a punctured torus
    modular_torus  punctured torus with parabolic commutator
    glued_sanov    genus 2 from two copies of sanov_torus
    glued_modular  genus 2 from two copies of modular_torus
    trivial_genus2 all generators the identity

Regenerate with ``python -m eulerlab.fixtures``.
"""

import json
import math
import sys
from importlib import resources
from pathlib import Path

import numpy as np

from .surfacereps import LiftedRep, trivial_rep

NAMES = ("octagon", "sanov", "sanov_torus", "modular_torus", "glued_sanov", "glued_modular", "trivial_genus2")


def _rot(phi):
    c, s = math.cos(phi / 2), math.sin(phi / 2)
    return np.array([[c, s], [-s, c]])


def _boost(length):
    return np.diag([math.exp(length / 2), math.exp(-length / 2)])


def octagon_matrices():
    """Side pairings of the regular octagon with angles 2pi/8, centred at i.

    Side k has its midpoint in direction 2pi k/8 at distance d with
    cosh d = cot(pi/8).  Pairing i -> j is rot(theta_i) T(2d) rot(pi - theta_j).
    """
    d = math.acosh(1 / math.tan(math.pi / 8))
    theta = [2 * math.pi * k / 8 for k in range(8)]

    def pair(i, j):
        return _rot(theta[i]) @ _boost(2 * d) @ _rot(math.pi - theta[j])

    return {"a1": pair(0, 2), "b1": pair(3, 1), "a2": pair(4, 6), "b2": pair(7, 5)}


def _inv(m):
    return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]])


def _comm(a, b):
    return a @ b @ _inv(a) @ _inv(b)


def _flow(c, t):
    """c^t along the one-parameter subgroup through +-c (hyperbolic or parabolic)."""
    if np.trace(c) < 0:
        c = -c
    tr = np.trace(c)
    if abs(tr - 2.0) < 1e-12:
        return np.eye(2) + t * (c - np.eye(2))
    w, v = np.linalg.eig(c)
    w, v = w.real, v.real
    h = v @ np.diag(w**t) @ np.linalg.inv(v)
    h /= math.sqrt(np.linalg.det(h))
    return h


def glued(a1, b1, t=0.5):
    """Genus-2 matrices with a2 = h b1 h^-1, b2 = h a1 h^-1 for h = [a1,b1]^t.

    Then [a2,b2] = [a1,b1]^-1, so the relator holds.
    """
    a1, b1 = np.asarray(a1, float), np.asarray(b1, float)
    h = _flow(_comm(a1, b1), t)
    hi = _inv(h)
    return {"a1": a1, "b1": b1, "a2": h @ b1 @ hi, "b2": h @ a1 @ hi}


SANOV_A = [[1.0, 2.0], [0.0, 1.0]]
SANOV_B = [[1.0, 0.0], [2.0, 1.0]]
MODULAR_A = [[1.0, 1.0], [1.0, 2.0]]
MODULAR_B = [[1.0, -1.0], [-1.0, 2.0]]


def build(name):
    if name == "octagon":
        return LiftedRep.from_matrices(2, 0, octagon_matrices(), name)
    if name == "sanov":
        return LiftedRep.from_matrices(0, 3, {"c1": SANOV_A, "c2": _inv(np.array(SANOV_B))}, name)
    if name == "sanov_torus":
        return LiftedRep.from_matrices(1, 1, {"a1": SANOV_A, "b1": SANOV_B}, name)
    if name == "modular_torus":
        return LiftedRep.from_matrices(1, 1, {"a1": MODULAR_A, "b1": MODULAR_B}, name)
    if name == "glued_sanov":
        return LiftedRep.from_matrices(2, 0, glued(SANOV_A, SANOV_B), name)
    if name == "glued_modular":
        return LiftedRep.from_matrices(2, 0, glued(MODULAR_A, MODULAR_B), name)
    if name == "trivial_genus2":
        r = trivial_rep(2, 0)
        return LiftedRep(r.presentation, r.lifts, name)
    raise KeyError(name)


def fixture_path(name):
    return resources.files("eulerlab").joinpath("fixtures", f"{name}.json")


def load(name):
    return LiftedRep.from_json(json.loads(fixture_path(name).read_text()))


def main(argv=None):
    out = Path(__file__).with_name("fixtures")
    out.mkdir(exist_ok=True)
    for name in NAMES:
        (out / f"{name}.json").write_text(json.dumps(build(name).to_json(), indent=1, sort_keys=True) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
