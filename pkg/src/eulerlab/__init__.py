"""Invariants of circle actions: rotation numbers, bounded Euler cocycles,
quasimorphisms, Euler numbers of surface-group representations."""

from .kernels import BACKEND
from .lifts import (
    CircleMap,
    Compose,
    Enclosure,
    IntTranslate,
    Inverse,
    Lift,
    Mobius,
    PiecewiseLinear,
    Rotation,
    displacement_range,
    evaluate,
    mobius_classify,
    rotation_number,
    standard_lift,
    translation_number,
)

__version__ = "0.1.0"
