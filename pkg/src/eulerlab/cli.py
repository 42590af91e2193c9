"""``eulerlab`` command line.  Results go to stdout as JSON; messages go to stderr.

Exit status: 0 on success, 1 on input errors, 2 when a mathematical check fails.
"""

import argparse
import json
import math
import sys
import warnings
from pathlib import Path

from . import __version__
from ._config import DEFAULT_TOL
from .errors import EulerlabError, InputError, SchemaError
from .lifts import Mobius, PiecewiseLinear, Rotation, lift_from_json, translation_number
from .validation import validate


def _load_json(text_or_path, what):
    p = Path(text_or_path)
    try:
        if p.exists():
            return json.loads(p.read_text())
        if not text_or_path.lstrip().startswith(("{", "[")):
            raise InputError(f"{what}: no such file {text_or_path!r}")
        return json.loads(text_or_path)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{what}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    except OSError as exc:
        raise InputError(f"{what}: {exc}") from None


def _floats(text):
    try:
        return [float(x) for x in text.split(",")]
    except ValueError:
        raise SchemaError(f"bad number list {text!r}") from None


def parse_lift(text):
    """A lift from shorthand, inline JSON or a JSON file.

    Shorthand: ``rotation:0.3``, ``mobius:a,b,c,d`` (optionally ``@branch``),
    ``pl:x0,y0;x1,y1;...`` (breakpoints of one period).
    """
    kind, sep, rest = text.partition(":")
    if sep and kind == "rotation":
        return Rotation(_floats(rest)[0])
    if sep and kind == "mobius":
        entries, _, branch = rest.partition("@")
        vals = _floats(entries)
        if len(vals) != 4:
            raise SchemaError("mobius shorthand needs four entries")
        return Mobius(vals, int(branch or 0))
    if sep and kind == "pl":
        pts = [tuple(_floats(p)) for p in rest.split(";") if p]
        return PiecewiseLinear.from_graph([p[0] for p in pts], [p[1] for p in pts])
    if sep and kind.isalpha():
        raise SchemaError(f"unknown lift shorthand {kind!r}; use rotation:, mobius: or pl:")
    doc = _load_json(text, "lift")
    validate(doc, "lift")
    return lift_from_json(doc)


def parse_rep(path, tol=DEFAULT_TOL):
    """Load and validate a representation file; closed surfaces must satisfy the relator."""
    from .surfacereps import LiftedRep, relator_translation

    r = LiftedRep.from_json(_load_json(path, "representation"))
    if r.punctures == 0:
        relator_translation(r, tol)
    return r


def _parse_word(text):
    w = _load_json(text, "word")
    if not isinstance(w, list) or not all(isinstance(a, int) and a != 0 for a in w):
        raise SchemaError("word must be an array of nonzero integers")
    return tuple(w)


def _enc(enc):
    return {"lo": enc.lo, "hi": enc.hi, "mid": enc.mid, "width": enc.width, "iterations": enc.iterations}


# ---------------------------------------------------------------- commands


def cmd_rot(args):
    enc = translation_number(parse_lift(args.lift), args.tol)
    doc = _enc(enc)
    doc["rot"] = enc.mid % 1.0
    return doc, 0


def cmd_tau(args):
    from .eulercocycle import tau

    if args.rep:
        r = parse_rep(args.rep, args.tol)
        pairs = _load_json(args.pairs, "pairs")
        out = []
        for w1, w2 in pairs:
            w1, w2 = tuple(w1), tuple(w2)
            v = tau(r.word_lift(w1), r.word_lift(w2), args.tol)
            out.append({"g": list(w1), "h": list(w2), "value": v.value, "err": v.err})
        return {"records": out}, 0
    if not (args.f and args.g):
        raise InputError("tau needs --f and --g, or --rep and --pairs")
    v = tau(parse_lift(args.f), parse_lift(args.g), args.tol)
    return {"value": v.value, "err": v.err}, 0


def cmd_euler(args):
    from .surfacereps import euler_number_punctured, relator_translation

    r = parse_rep(args.rep, args.tol)
    doc = {"genus": r.genus, "punctures": r.punctures, "chi": r.presentation.chi}
    if r.punctures:
        e, err = euler_number_punctured(r, args.tol)
        doc.update(e=e, err=err, method="minus the sum of boundary translation numbers")
    else:
        e, residual = relator_translation(r, args.tol)
        doc.update(e=e, err=0.0, residual=residual, method="translation of the product of lifted commutators")
    return doc, 0


def cmd_mw(args):
    from .surfacereps import milnor_wood_check

    report = milnor_wood_check(parse_rep(args.rep, args.tol), args.tol)
    return report.to_json(), 0 if report.ok else 2


def cmd_survey(args):
    from .surfacereps import elliptic_survey

    r = parse_rep(args.rep, args.tol)
    hits = elliptic_survey(r, args.ball)
    return {"ball": args.ball, "elliptic": [{"word": list(w), "name": r.word_name(w), "trace": t} for w, t in hits]}, 0


def cmd_fingerprint(args):
    from .surfacereps import fingerprint

    r = parse_rep(args.rep, args.tol)
    fp = fingerprint(r, args.ball, args.tol)
    doc = fp.to_json(r)
    doc["ball"] = args.ball
    return doc, 0


def cmd_semiconj(args):
    from .surfacereps import semi_conjugacy_map

    r1 = parse_rep(args.rep, args.tol)
    r2 = parse_rep(args.rep2, args.tol)
    res = semi_conjugacy_map(r1, r2, args.ball, args.grid, args.tol)
    doc = res.to_json()
    doc["ball"] = args.ball
    ok = res.monotonicity_violations == 0 and res.periodicity_error <= 1e-9
    return doc, 0 if ok else 2


def _alpha(text):
    from .quasimorphism import OddSequence

    if text in ("unit", "sign"):
        return OddSequence.unit_sign()
    return OddSequence.from_json(_load_json(text, "alpha"))


def cmd_qm(args):
    from .quasimorphism import defect_witness, homogenize, rolli

    f = rolli(_alpha(args.alpha), args.rank)
    doc = {"alpha": _alpha(args.alpha).to_json(), "rank": args.rank}
    if args.word is not None:
        w = _parse_word(args.word)
        doc["word"] = list(w)
        doc["value"] = f(w)
        if args.defect is not None:
            v, err = homogenize(f, w, args.defect, args.tol)
            doc["homogenized"] = {"value": v, "err": err, "defect": args.defect}
    if args.ball:
        d, w1, w2 = defect_witness(f, args.ball, args.rank)
        doc["defect_lower_bound"] = {"ball": args.ball, "value": d, "g1": list(w1), "g2": list(w2)}
    return doc, 0


def _group(text):
    from .extensions import FiniteGroupTable, IntWindow, group_from_json

    kind, sep, rest = text.partition(":")
    if sep and kind == "cyclic":
        return FiniteGroupTable.cyclic(int(rest))
    if sep and kind == "window":
        return IntWindow(int(rest))
    return group_from_json(_load_json(text, "group"))


def _cocycle(base, text):
    from .eulercocycle import floor_cocycle
    from .extensions import FiniteGroupTable, TwoCocycle, cocycle_from_json

    kind, sep, rest = text.partition(":")
    if sep and kind == "floor":
        return TwoCocycle.from_function(base, lambda n, m: floor_cocycle(rest, n, m))
    if text == "carry" and isinstance(base, FiniteGroupTable):
        m = base.order
        return TwoCocycle.from_function(base, lambda g, h: int(g + h >= m))
    return cocycle_from_json(base, _load_json(text, "cocycle"))


def cmd_ext(args):
    from .extensions import (
        FiniteGroupTable,
        build_extension,
        canonical_section,
        cocycle_from_section,
        interior_pairs,
        normalize_cocycle,
    )

    base = _group(args.group)
    phi = _cocycle(base, args.cocycle)
    if args.action == "check":
        res = phi.residual()
        e = base.identity
        doc = {"residual": res, "normalized": phi.normalized, "constant": phi(e, e), "cocycle": res == 0}
        return doc, 0 if res == 0 else 2
    norm = normalize_cocycle(phi)
    E = build_extension(base, norm, args.window)
    recovered = cocycle_from_section(E, canonical_section(E))
    doc = {
        "associative": True,
        "central": E.central(),
        "normalized_by": phi(base.identity, base.identity),
        "section_round_trip": bool((recovered.values == norm.values)[interior_pairs(base)].all()),
        "identity": list(E.identity),
    }
    if isinstance(base, FiniteGroupTable) and base.order > 1:
        doc["order"] = base.order
    if isinstance(base, FiniteGroupTable):
        # a generator's lift raised to the order of the base lands in the center
        for g in base.elements():
            k, h = 1, g
            while h != base.identity:
                h, k = base.op(h, g), k + 1
            if k == base.order:
                doc["generator"] = g
                doc["generator_power"] = list(E.power((0, g), k))
                break
    return doc, 0 if doc["central"] and doc["section_round_trip"] else 2


def cmd_it(args):
    import numpy as np

    from .ivanovturaev import eul_estimate

    mats = np.asarray(_load_json(args.matrices, "matrices"), dtype=float)
    if mats.ndim != 3 or mats.shape[1:] != (args.dim + 1, args.dim + 1) or mats.shape[0] != args.dim + 2:
        raise InputError(f"need {args.dim + 2} matrices of size {args.dim + 1}")
    est = eul_estimate(list(mats), args.samples, args.delta, args.seed)
    doc = est.to_json()
    doc["bound"] = 2.0 ** (-args.dim - 1)
    doc["within_bound"] = abs(est.mean) <= doc["bound"] + est.half_width
    return doc, 0 if doc["within_bound"] else 2


def cmd_simpvol(args):
    from .simplicialvolume import boundary_residual, l1_norm, polygon_triangulation, surface_bounds

    doc = surface_bounds(args.genus, args.punctures, args.cover).to_json()
    if args.punctures == 0 and args.genus >= 1:
        K = polygon_triangulation(args.genus)
        c = K.canonical_cycle()
        doc["triangulation"] = {
            "triangles": K.F,
            "vertices": K.V,
            "edges": K.E,
            "chi": K.chi,
            "l1": l1_norm(c),
            "boundary_residual": boundary_residual(c, K),
        }
    return doc, 0


# ---------------------------------------------------------------- parser


def _positive(text):
    v = float(text)
    if not v > 0 or math.isinf(v):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=_positive, default=DEFAULT_TOL)
    common.add_argument("--ball", type=int, default=2, metavar="L")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--output", "-o", default=None)

    p = argparse.ArgumentParser(prog="eulerlab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"eulerlab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("rot", parents=[common], help="translation number enclosure")
    s.add_argument("--lift", required=True)
    s.set_defaults(run=cmd_rot)

    s = sub.add_parser("tau", parents=[common], help="the real Euler cocycle tau")
    s.add_argument("--f")
    s.add_argument("--g")
    s.add_argument("--rep")
    s.add_argument("--pairs")
    s.set_defaults(run=cmd_tau)

    for name, fn, text in (
        ("euler", cmd_euler, "Euler number of a representation"),
        ("mw", cmd_mw, "Milnor-Wood check"),
        ("survey", cmd_survey, "elliptic words up to length L"),
        ("fingerprint", cmd_fingerprint, "tau table and generator rotation numbers"),
    ):
        s = sub.add_parser(name, parents=[common], help=text)
        s.add_argument("--rep", required=True)
        s.set_defaults(run=fn)

    s = sub.add_parser("semiconj", parents=[common], help="truncated semi-conjugacy map")
    s.add_argument("--rep", required=True)
    s.add_argument("--rep2", required=True)
    s.add_argument("--grid", type=int, default=256)
    s.set_defaults(run=cmd_semiconj)

    s = sub.add_parser("qm", parents=[common], help="Rolli quasimorphisms")
    s.add_argument("--alpha", default="unit", help="'unit' or a JSON map n -> alpha(n)")
    s.add_argument("--rank", type=int, default=2)
    s.add_argument("--word", help="JSON array of signed generator indices")
    s.add_argument("--defect", type=float, help="defect bound used to homogenize --word")
    s.set_defaults(run=cmd_qm)

    s = sub.add_parser("ext", parents=[common], help="central extensions by Z")
    s.add_argument("action", choices=("build", "check"))
    s.add_argument("--group", required=True, help="cyclic:m, window:W or a JSON file")
    s.add_argument("--cocycle", required=True, help="carry, floor:p/q or a JSON file")
    s.add_argument("--window", type=int, default=16)
    s.set_defaults(run=cmd_ext)

    s = sub.add_parser("it", parents=[common], help="the bounded Euler cocycle of GL+(n+1)")
    s.add_argument("action", choices=("eul",))
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--matrices", required=True)
    s.add_argument("--samples", type=int, default=100000)
    s.add_argument("--delta", type=float, default=1e-3)
    s.set_defaults(run=cmd_it, stochastic=True)

    s = sub.add_parser("simpvol", parents=[common], help="simplicial volume bounds of surfaces")
    s.add_argument("--genus", type=int, required=True)
    s.add_argument("--punctures", type=int, default=0)
    s.add_argument("--cover", type=int, default=1)
    s.set_defaults(run=cmd_simpvol)
    return p


def _emit(doc, output):
    text = json.dumps(doc, sort_keys=True, allow_nan=False) + "\n"
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    if getattr(args, "stochastic", False) and args.seed is None:
        print("eulerlab: --seed is required for this command", file=sys.stderr)
        return 1
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            doc, code = args.run(args)
        except EulerlabError as exc:
            err = {"error": type(exc).__name__, "message": str(exc)}
            loc = getattr(exc, "location", None)
            if loc:
                err["location"] = list(loc)
            triple = getattr(exc, "triple", None)
            if triple is not None:
                err["triple"] = [list(t) if isinstance(t, tuple) else t for t in triple]
            _emit(err, None)
            print(f"eulerlab: {type(exc).__name__}: {exc}", file=sys.stderr)
            return exc.exit_code
        except ValueError as exc:
            _emit({"error": "InputError", "message": str(exc)}, None)
            print(f"eulerlab: {exc}", file=sys.stderr)
            return 1
    doc["command"] = args.command
    if args.seed is not None:
        doc["seed"] = args.seed
    if caught:
        doc["warnings"] = [f"{w.category.__name__}: {w.message}" for w in caught]
        for w in caught:
            print(f"eulerlab: warning: {w.message}", file=sys.stderr)
    _emit(doc, args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
