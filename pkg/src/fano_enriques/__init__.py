"""Fano threefolds as double covers of rational scrolls, computed from monomials."""

from .ambient import (
    L,
    M,
    CoxAmbient,
    DivisorClass,
    StratumSet,
    canonical_class,
    degree_and_genus,
    ramification_class,
    scroll,
    triple_intersection,
    wps,
)
from .involutions import SignInvolution, canonical_forms, fixed_locus, reference_sigma
from .linear_systems import MonomialSystem, basis, h0, m_system_invariant, parity_decompose
from .strata import base_locus, fixed_component, generic_avoidance, mult_along, restrict_to_stratum

__version__ = "0.1.0"
