from .ade import NOT_SIMPLE, UNDETERMINED, ade_type, intersection_multiplicity, milnor_number
from .germ import *  # noqa: F401,F403
from .germ import __all__ as _germ_all
from .poly import Poly
from .scan import singular_scan_fp

__all__ = [
    "NOT_SIMPLE",
    "UNDETERMINED",
    "Poly",
    "ade_type",
    "intersection_multiplicity",
    "milnor_number",
    "singular_scan_fp",
    *_germ_all,
]
