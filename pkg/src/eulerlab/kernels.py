"""Kernel backend chosen at import: compiled if available, numpy otherwise.

Set ``EULERLAB_PURE=1`` to force the numpy kernels.
"""

import os

from . import _pykernels

if os.environ.get("EULERLAB_PURE", "") not in ("", "0"):
    _backend = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _backend

        BACKEND = "cython"
    except ImportError:  # extension not built
        _backend = _pykernels
        BACKEND = "python"

apply_program = _backend.apply_program
orbit_enclosure = _backend.orbit_enclosure
iterate_displacement = _backend.iterate_displacement
t_values = _backend.t_values

KIND_TRANSLATE = _pykernels.KIND_TRANSLATE
KIND_PL = _pykernels.KIND_PL
KIND_MOBIUS = _pykernels.KIND_MOBIUS
