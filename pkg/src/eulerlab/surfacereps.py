"""Circle representations of surface groups and their Euler numbers.

A surface of genus g with n punctures has generators a1, b1, ..., ag, bg,
c1, ..., cn and the single relator [a1,b1]...[ag,bg] c1...cn.  Words are
tuples of signed 1-based indices into ``free_names``.
"""

import math
import warnings
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ._config import DEFAULT_TOL, TRACE_EPS
from .errors import BallTooLarge, FingerprintMismatch, FixedPointHazard, InputError, NotARepresentation, SchemaError
from .lifts import (
    IDENTITY,
    Compose,
    Inverse,
    Lift,
    Mobius,
    MobiusKind,
    Rotation,
    displacement_range,
    evaluate,
    lift_from_json,
    lift_to_json,
    mobius_classify,
    standard_lift,
    translation_number,
)
from .quasimorphism import ball, ball_size
from .validation import validate

RELATOR_GRID = 64
SURVEY_MAX_L = 8
SURVEY_WORD_BUDGET = 2 * 10**6
FINGERPRINT_MAX_L = 4
SEMICONJ_MAX_L = 5


@dataclass(frozen=True)
class SurfacePresentation:
    genus: int
    punctures: int

    def __post_init__(self):
        if self.genus < 0 or self.punctures < 0:
            raise SchemaError("genus and punctures must be non-negative")

    @property
    def chi(self):
        return 2 - 2 * self.genus - self.punctures

    @property
    def mw_bound(self):
        """The Milnor-Wood bound max(0, -chi)."""
        return max(0, -self.chi)

    @property
    def generator_names(self):
        names = [f"{x}{i}" for i in range(1, self.genus + 1) for x in "ab"]
        return names + [f"c{j}" for j in range(1, self.punctures + 1)]

    @property
    def free_names(self):
        """Generators whose lifts are supplied; cn is left out when n >= 1."""
        names = self.generator_names
        return names[:-1] if self.punctures else names

    @property
    def rank(self):
        return len(self.free_names)


def _commutator(a, b):
    return Compose(Compose(a, b), Compose(Inverse(a), Inverse(b)))


@dataclass(frozen=True, eq=False)
class LiftedRep:
    presentation: SurfacePresentation
    lifts: dict
    name: str = ""

    def __post_init__(self):
        pres = self.presentation
        given = set(self.lifts)
        want = set(pres.free_names)
        if pres.punctures and f"c{pres.punctures}" in given:
            raise SchemaError(f"c{pres.punctures} is derived from the relator and must not be supplied", ("generators",))
        missing = sorted(want - given)
        if missing:
            raise SchemaError(f"missing generator {missing[0]}", ("generators",))
        extra = sorted(given - want)
        if extra:
            raise SchemaError(f"unknown generator {extra[0]}", ("generators", extra[0]))
        for k, v in self.lifts.items():
            if not isinstance(v, Lift):
                raise SchemaError(f"generator {k} is not a lift", ("generators", k))

    @property
    def genus(self):
        return self.presentation.genus

    @property
    def punctures(self):
        return self.presentation.punctures

    @property
    def free_names(self):
        return self.presentation.free_names

    def commutator(self, i):
        """The lift of [a_i, b_i], i counted from 1."""
        return _commutator(self.lifts[f"a{i}"], self.lifts[f"b{i}"])

    def commutator_product(self):
        out = IDENTITY
        for i in range(1, self.genus + 1):
            out = Compose(out, self.commutator(i))
        return out

    @cached_property
    def derived_last(self):
        """cn's lift: the inverse of [a1,b1]...[ag,bg] c1...c(n-1)."""
        if not self.punctures:
            raise InputError("closed surfaces have no derived generator")
        prefix = self.commutator_product()
        for j in range(1, self.punctures):
            prefix = Compose(prefix, self.lifts[f"c{j}"])
        return Inverse(prefix)

    def lift(self, name):
        if self.punctures and name == f"c{self.punctures}":
            return self.derived_last
        return self.lifts[name]

    def generator(self, letter):
        g = self.lifts[self.free_names[abs(letter) - 1]]
        return g if letter > 0 else Inverse(g)

    def word_lift(self, word):
        out = IDENTITY
        for a in word:
            out = Compose(out, self.generator(a))
        return out

    def word_name(self, word):
        if not word:
            return "1"
        return " ".join(self.free_names[abs(a) - 1] + ("" if a > 0 else "^-1") for a in word)

    @classmethod
    def from_json(cls, doc):
        validate(doc, "rep")
        pres = SurfacePresentation(doc["genus"], doc["punctures"])
        lifts = {k: lift_from_json(v, ("generators", k)) for k, v in doc["generators"].items()}
        return cls(pres, lifts, doc.get("name", ""))

    @classmethod
    def from_matrices(cls, genus, punctures, matrices, name=""):
        return cls(SurfacePresentation(genus, punctures), {k: Mobius(m) for k, m in matrices.items()}, name)

    def to_json(self):
        doc = {
            "genus": self.genus,
            "punctures": self.punctures,
            "generators": {k: lift_to_json(v) for k, v in self.lifts.items()},
        }
        if self.name:
            doc["name"] = self.name
        return doc

    def conjugate(self, h):
        """All generator lifts replaced by h g h^-1."""
        hi = Inverse(h)
        return LiftedRep(self.presentation, {k: Compose(Compose(h, g), hi) for k, g in self.lifts.items()}, self.name)


def trivial_rep(genus, punctures):
    pres = SurfacePresentation(genus, punctures)
    return LiftedRep(pres, {k: IDENTITY for k in pres.free_names}, "trivial")


def relator_translation(r, tol=DEFAULT_TOL):
    """(e, residual): the product of lifted commutators is translation by e."""
    if r.punctures:
        raise InputError("relator_translation needs a closed surface")
    if not tol > 0:
        raise ValueError("tol must be positive")
    xs = np.linspace(0.0, 1.0, RELATOR_GRID + 2)
    d = evaluate(r.commutator_product(), xs) - xs
    e = int(round(float(np.median(d))))
    residual = float(np.abs(d - e).max())
    if residual > tol:
        raise NotARepresentation(f"relator product is not an integer translation: residual {residual:.3g} > {tol:g}")
    return e, residual


def euler_number_punctured(r, tol=DEFAULT_TOL):
    """(e, err) with e = -sum of the translation numbers of the boundary lifts."""
    if not r.punctures:
        raise InputError("euler_number_punctured needs at least one puncture")
    if r.presentation.chi >= 0:
        warnings.warn("Euler number of a surface with chi >= 0", UserWarning, stacklevel=2)
    e = err = 0.0
    for j in range(1, r.punctures + 1):
        enc = translation_number(r.lift(f"c{j}"), tol)
        e -= enc.mid
        err += enc.width
    return e + 0.0, err


def euler_number(r, tol=DEFAULT_TOL):
    """(e, err) by the closed or punctured formula as appropriate."""
    if r.punctures:
        return euler_number_punctured(r, tol)
    e, _ = relator_translation(r, tol)
    return float(e), 0.0


@dataclass(frozen=True)
class MWReport:
    e: float
    err: float
    chi: int
    bound: int
    ok: bool
    equality: bool

    def to_json(self):
        return {"e": self.e, "err": self.err, "chi": self.chi, "bound": self.bound, "ok": self.ok, "equality": self.equality}


def milnor_wood_check(r, tol=DEFAULT_TOL):
    e, err = euler_number(r, tol)
    bound = r.presentation.mw_bound
    return MWReport(
        e,
        err,
        r.presentation.chi,
        bound,
        abs(e) <= bound + err + tol,
        abs(abs(e) - bound) <= err + tol,
    )


def mobius_matrix(lift):
    """The SL(2,R) matrix of a lift whose program merges to one Möbius map."""
    prog = lift.program
    if not prog:
        return np.eye(2)
    if len(prog) == 1:
        p = prog[0]
        if isinstance(p, Mobius):
            return p.array
        if isinstance(p, Rotation):
            return Mobius.from_rotation(p.alpha).array
    raise InputError("lift is not a Möbius map")


def elliptic_survey(r, L, eps_tr=TRACE_EPS):
    """Non-identity elliptic elements among reduced words of length <= L, as (word, trace)."""
    if L > SURVEY_MAX_L:
        raise BallTooLarge(f"L = {L} exceeds {SURVEY_MAX_L}")
    if ball_size(r.presentation.rank, L) > SURVEY_WORD_BUDGET:
        raise BallTooLarge(f"{ball_size(r.presentation.rank, L)} words exceed {SURVEY_WORD_BUDGET}")
    gens = [mobius_matrix(r.lifts[k]) for k in r.free_names]
    mats = {}
    for i, m in enumerate(gens, start=1):
        mats[i] = m
        mats[-i] = np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]])
    out = []
    stack = [((), np.eye(2))]
    while stack:
        word, m = stack.pop()
        if word:
            cls = mobius_classify(m, eps_tr)
            if cls.kind == MobiusKind.ELLIPTIC:
                out.append((word, cls.trace))
        if len(word) == L:
            continue
        for a in sorted(mats, reverse=True):
            if word and word[-1] == -a:
                continue
            stack.append((word + (a,), m @ mats[a]))
    out.sort(key=lambda wt: (len(wt[0]), wt[0]))
    return out


@dataclass(frozen=True)
class MaximalityReport:
    e: float
    err: float
    bound: int
    maximal: bool
    margin: float
    elliptic_witnesses: list
    status: str

    def to_json(self, rep=None):
        name = rep.word_name if rep is not None else list
        return {
            "e": self.e,
            "err": self.err,
            "bound": self.bound,
            "maximal": self.maximal,
            "margin": self.margin,
            "elliptic_witnesses": [{"word": name(w), "trace": t} for w, t in self.elliptic_witnesses],
            "status": self.status,
        }


def maximality_check(r, L, tol=DEFAULT_TOL):
    """Maximality of |e| together with the elliptic survey at length L.

    ``margin`` is bound - |e| - err, positive when |e| is certified below the
    bound.  A maximal rep with no elliptic words up to L is reported as
    "consistent" with being geometric; finite L never proves it.
    """
    e, err = euler_number(r, tol)
    bound = r.presentation.mw_bound
    maximal = bound > 0 and abs(abs(e) - bound) <= err + tol
    witnesses = elliptic_survey(r, L)
    if not maximal:
        status = "not maximal"
    elif witnesses:
        status = "inconsistent"
    else:
        status = "consistent"
    return MaximalityReport(e, err, bound, maximal, bound - abs(e) - err, witnesses, status)


@dataclass(frozen=True)
class Fingerprint:
    words: list
    tau_table: dict
    rot_gens: dict
    names: list = field(default_factory=list)

    def to_json(self, rep=None):
        name = rep.word_name if rep is not None else (lambda w: list(w))
        return {
            "words": [name(w) for w in self.words],
            "tau": [[name(w1), name(w2), v, e] for (w1, w2), (v, e) in self.tau_table.items()],
            "rot": {k: list(v) for k, v in self.rot_gens.items()},
        }


def fingerprint(r, L, tol=DEFAULT_TOL):
    """tau on all pairs of reduced words of length <= L and rot of the generators."""
    if L > FINGERPRINT_MAX_L:
        raise BallTooLarge(f"L = {L} exceeds {FINGERPRINT_MAX_L}")
    words = ball(r.presentation.rank, L)
    lifts = {w: r.word_lift(w) for w in words}
    rott = {w: translation_number(lifts[w], tol) for w in words}
    table = {}
    for w1 in words:
        for w2 in words:
            prod = translation_number(Compose(lifts[w1], lifts[w2]), tol)
            table[(w1, w2)] = (
                prod.mid - rott[w1].mid - rott[w2].mid,
                prod.width + rott[w1].width + rott[w2].width,
            )
    rot = {}
    for k in r.free_names:
        enc = translation_number(r.lifts[k], tol)
        rot[k] = (enc.mid % 1.0, enc.width)
    return Fingerprint(words, table, rot, list(r.free_names))


def _circle_gap(a, b):
    d = abs(a - b) % 1.0
    return min(d, 1.0 - d)


def compare_fingerprints(f1, f2, tol=DEFAULT_TOL):
    """(equal, worst excess) where excess = |difference| - summed errors - tol."""
    worst = -math.inf
    for key, (v1, e1) in f1.tau_table.items():
        v2, e2 = f2.tau_table[key]
        worst = max(worst, abs(v1 - v2) - e1 - e2 - tol)
    for k, (v1, e1) in f1.rot_gens.items():
        v2, e2 = f2.rot_gens[k]
        worst = max(worst, _circle_gap(v1, v2) - e1 - e2 - tol)
    return worst <= 0, worst


@dataclass(frozen=True)
class SemiConjugacy:
    xs: np.ndarray
    values: np.ndarray
    monotonicity_violations: int
    periodicity_error: float
    equivariance_residual: float

    def to_json(self):
        return {
            "x": self.xs.tolist(),
            "phi": self.values.tolist(),
            "monotonicity_violations": self.monotonicity_violations,
            "periodicity_error": self.periodicity_error,
            "equivariance_residual": self.equivariance_residual,
        }


def _matched(r):
    return {k: standard_lift(v) for k, v in r.lifts.items()}


def semi_conjugacy_map(r1, r2, L, grid=256, tol=DEFAULT_TOL):
    """Samples of x -> max over words w of r1(w)^-1 r2(w) x, with standard lifts.

    The result is increasing and commutes with x -> x+1.  The equivariance
    residual measures how far it is from intertwining r2 with r1 modulo
    integers.
    """
    if L > SEMICONJ_MAX_L:
        raise BallTooLarge(f"L = {L} exceeds {SEMICONJ_MAX_L}")
    if r1.presentation != r2.presentation:
        raise InputError("representations of different surfaces")
    if all(displacement_range(g)[0] <= 0.0 <= displacement_range(g)[1] for g in r1.lifts.values()):
        warnings.warn("every generator of the first rep has a fixed point; matching may fail", FixedPointHazard, stacklevel=2)
    equal, excess = compare_fingerprints(fingerprint(r1, 1, tol), fingerprint(r2, 1, tol), tol)
    if not equal:
        warnings.warn(f"fingerprints differ by {excess:.3g} beyond errors", FingerprintMismatch, stacklevel=2)

    m1 = LiftedRep(r1.presentation, _matched(r1))
    m2 = LiftedRep(r2.presentation, _matched(r2))
    terms = [Compose(Inverse(m1.word_lift(w)), m2.word_lift(w)) for w in ball(r1.presentation.rank, L)]

    def phi(x):
        out = np.full(np.shape(x), -np.inf)
        for t in terms:
            np.maximum(out, evaluate(t, x), out=out)
        return out

    xs = np.arange(grid + 1, dtype=np.float64) / grid
    vals = phi(xs)
    violations = int(np.count_nonzero(np.diff(vals) < 0))
    periodicity = float(np.abs(phi(xs + 1.0) - vals - 1.0).max())
    resid = 0.0
    for k in r1.free_names:
        lhs = evaluate(m1.lifts[k], vals)
        rhs = phi(evaluate(m2.lifts[k], xs))
        d = lhs - rhs
        resid = max(resid, float(np.abs(d - np.round(d)).max()))
    return SemiConjugacy(xs, vals, violations, periodicity, resid)


@dataclass(frozen=True)
class AdditivityReport:
    e: int
    e1: float
    e2: float
    err: float
    ok: bool

    def to_json(self):
        return {"e": self.e, "e1": self.e1, "e2": self.e2, "err": self.err, "ok": self.ok}


def additivity_check(r, tol=DEFAULT_TOL):
    """e of a closed genus-2 rep against the Euler numbers of its two punctured-torus halves."""
    if r.genus != 2 or r.punctures:
        raise InputError("additivity_check needs a closed genus-2 rep")
    e, _ = relator_translation(r, tol)
    enc1 = translation_number(r.commutator(1), tol)
    enc2 = translation_number(r.commutator(2), tol)
    err = enc1.width + enc2.width
    return AdditivityReport(e, enc1.mid, enc2.mid, err, abs(e - (enc1.mid + enc2.mid)) <= err + tol)
