"""Exact tensor-product multiplicities and spherical Hecke structure constants.

The two families of constants attached to a tuple of dominant coweights
``mu_1..mu_r`` and a dominant ``lam`` of a split reductive group ``G``:
``dim (V_mu1 (x) ... (x) V_mur)^lam`` for the dual group, and the coefficient
``c^lam(q)`` of ``f_lam`` in ``f_mu1 * ... * f_mur``.  Fiber recursions, a
finite-field lattice oracle and tree polygon certificates cross-check them.
"""

from .errors import (
    CapabilityError,
    DatumMismatchError,
    DecompositionError,
    InconsistencyError,
    ParityError,
    PrecisionError,
    PreconditionError,
    StructConstError,
    TriangleInequalityError,
)
from .fiber import (
    component_count_recursion,
    equidimensionality_audit,
    point_count_recursion,
    pulling_apart,
)
from .hecke import hecke_nonvanishing, structure_constants
from .latoracle import enumerate_fiber, interpolate_polynomial, relative_position
from .qpoly import QPoly
from .repring import (
    prv_witness_search,
    rep_nonvanishing,
    tensor_decompose,
    tensor_multiplicity,
    weyl_dimension,
)
from .rgon import special_rgon, tree_rgon, weak_triangle_check
from .rootdata import RootDatum, WeightVec, adjoint_group, root_datum
from .weyl import WeylGroup

__version__ = "0.1.0"
