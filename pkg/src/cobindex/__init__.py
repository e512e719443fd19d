"""Exact computations around indices of hypersurfaces and the algebraic cobordism lattice.

The numerical kernels have a compiled implementation (``cobindex._ckernels``)
and a pure-Python one; :data:`BACKEND` says which was picked at import.
Set ``COBINDEX_PURE_PYTHON=1`` to force the fallback.
"""
from .charclass import CharClassPoly, build_Rf, build_Sf, catalogue_class, l_polynomial, segre_substitute
from .chow import InternalConsistencyError, Milnor, Proj, VarietyModel, build_variety, parse_variety
from .cobordism import (
    FundamentalVector,
    check_integral_class,
    fundamental_polynomial,
    hattori_stong_verify,
    lattice_I,
    lattice_Iprime,
    lattice_L,
    pairing,
)
from .exactalg import IntegerLattice, dual_lattice, hermite_normal_form, lattice_membership
from .hrr import euler_characteristic, half_euler_check, parse_bundle, signature, verify_cobord_sf
from .index import chi_hypersurface, fermat_certificate, index_bound, unit_index_threshold, verify_gcd_lemma
from .kernels import BACKEND
from .symfun import ChernPolynomial, MultiIndex, c_I, partitions_of

__version__ = "0.1.0"
