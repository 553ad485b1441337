"""Exact multilinear algebra for jets and higher-order stresses.

The package computes with compressed symmetric tensors over exact
rationals, takes jets of polynomial fields, and evaluates the power and
boundary tractions of higher-order stresses, including the restriction
formula that turns a traction stress into the traction it induces on any
hyperplane frame.
"""
from .multiindex import (
    PERMUTATION_CAP,
    CardinalityIndex,
    MultiIndex,
    Permutation,
    apply_permutation,
    cardinality,
    enumerate_nondecreasing,
    epsilon_abs,
    kron_delta,
    mi_factorial,
    multiplicity,
    permutations_of,
    rank,
    sym_dim,
    unrank,
)
from .symtensor import (
    DenseTensor,
    SymTensor,
    compress,
    convert_convention,
    cosymmetrize_extend,
    cosymmetrize_project,
    include,
    inclusion_matrix,
    pair,
    symmetrization_matrix,
    symmetrize_dense,
)
from .altforms import CoDimOneForm, TopForm, Vector, contract, evaluate, restrict
from .polyfield import Point, PolyField, Polynomial, box_integral
from .jet import (
    ChartMap,
    JetCovector,
    JetElement,
    compose_charts,
    jet_of,
    pair_jet,
    realize,
    source,
    transform_1jet,
    truncate,
)
from .hyperstress import (
    BoxRegion,
    HyperTraction,
    TractionHyperStress,
    TractionStressField,
    VariationalHyperStress,
    VariationalStressField,
    boundary_power_flux,
    box_face_frame,
    cauchy_traction,
    power_density,
    total_power,
    traction_density,
)

__version__ = "0.1.0"

__all__ = [
    "PERMUTATION_CAP",
    "BoxRegion",
    "CardinalityIndex",
    "ChartMap",
    "CoDimOneForm",
    "DenseTensor",
    "HyperTraction",
    "JetCovector",
    "JetElement",
    "MultiIndex",
    "Permutation",
    "Point",
    "PolyField",
    "Polynomial",
    "SymTensor",
    "TopForm",
    "TractionHyperStress",
    "TractionStressField",
    "VariationalHyperStress",
    "VariationalStressField",
    "Vector",
    "apply_permutation",
    "boundary_power_flux",
    "box_face_frame",
    "box_integral",
    "cardinality",
    "cauchy_traction",
    "compose_charts",
    "compress",
    "contract",
    "convert_convention",
    "cosymmetrize_extend",
    "cosymmetrize_project",
    "enumerate_nondecreasing",
    "epsilon_abs",
    "evaluate",
    "include",
    "inclusion_matrix",
    "jet_of",
    "kron_delta",
    "mi_factorial",
    "multiplicity",
    "pair",
    "pair_jet",
    "permutations_of",
    "power_density",
    "rank",
    "realize",
    "restrict",
    "source",
    "symmetrization_matrix",
    "symmetrize_dense",
    "total_power",
    "traction_density",
    "transform_1jet",
    "truncate",
    "unrank",
    "sym_dim",
]
