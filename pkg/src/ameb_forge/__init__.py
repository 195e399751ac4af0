"""Mutually unbiased tripartite AME bases from weak orthogonal Latin squares.

Submodules: ``gf`` (finite fields), ``latin`` (squares and their
constructions), ``basis`` (state builders and basis files), ``verify``
(numerical certificates), ``catalog`` (bundled data and pipelines) and
``cli``.
"""
from .basis import (
    BasisLabel,
    CoefficientVector,
    LabeledBasis,
    StateVector,
    TripartiteDims,
    build_ameb_equal_dims,
    build_ameb_mixed_dims,
    build_product_basis,
    flat_fourier_coeffs,
    read_basis,
    write_basis,
)
from .catalog import (
    TABLE,
    append_product_basis,
    construct_muameb_family,
    load_datum,
    reproduce_example,
    reproduce_table,
)
from .errors import *  # noqa: F401,F403
from .gf import FieldElement, FieldSpec, enumerate_field, finv, make_field, primitive_element
from .latin import (
    LatinSquare,
    RowConstantArray,
    are_mols,
    are_mwols,
    cyclic_square,
    direct_product,
    find_resolution,
    gf_mwols_family,
    is_latin,
    row_constant_array,
    shift_symbols,
    transversal_companion,
)
from .verify import (
    VerificationReport,
    ame_check,
    gram_check,
    partial_trace,
    unbiased_check,
    verify_mub_family,
)

__version__ = "0.1.0"
