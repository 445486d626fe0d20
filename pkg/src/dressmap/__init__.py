"""Exact computation of the Dress map A(G) -> GW(k) for finite Galois extensions."""

from .dress import (
    DressReport,
    DressTable,
    KernelLattice,
    analyze,
    dress_table,
    image_contains,
    injectivity_predicate,
    is_sum_of_squares,
    kernel_lattice,
    lemma_squares_check,
    pythagoras_length,
    surjective_exact,
    surjectivity_criterion,
    verify_prop_cyclic,
    witness_odd_prime,
    witness_two_power,
)
from .extensions import (
    GaloisExtensionDatum,
    cyclotomic,
    euclidean_gaussian,
    finite_field_tower,
    fixed_field,
    multiquadratic,
    trace_form,
)
from .fields import BaseField
from .groups import BurnsideRing, FiniteGroup, subgroup_lattice, table_of_marks
from .qforms import GWElement, QuadraticForm, equivalent, gw_is_zero, hilbert_symbol, invariant_vector

__version__ = "0.1.0"

__all__ = [
    "BaseField",
    "BurnsideRing",
    "DressReport",
    "DressTable",
    "FiniteGroup",
    "GWElement",
    "GaloisExtensionDatum",
    "KernelLattice",
    "QuadraticForm",
    "analyze",
    "cyclotomic",
    "dress_table",
    "equivalent",
    "euclidean_gaussian",
    "finite_field_tower",
    "fixed_field",
    "gw_is_zero",
    "hilbert_symbol",
    "image_contains",
    "injectivity_predicate",
    "invariant_vector",
    "is_sum_of_squares",
    "kernel_lattice",
    "lemma_squares_check",
    "multiquadratic",
    "pythagoras_length",
    "subgroup_lattice",
    "surjective_exact",
    "surjectivity_criterion",
    "table_of_marks",
    "trace_form",
    "verify_prop_cyclic",
    "witness_odd_prime",
    "witness_two_power",
]
