"""Graded complexes over Z[U], homology, homotopies and sign classes."""

from .upoly import ONE, U, UPoly, ZERO
from .complexes import (
    ChainMap,
    Generator,
    GradedComplex,
    NotAChainMap,
    SignClass,
    check_chain_map,
    compose,
    cone_blocks,
    direct_sum,
    free_module,
    mapping_cone,
    pin_gradings,
    power,
    shift,
    specialize_hat,
    tensor_product,
    truncate,
    validate_complex,
    zero_complex,
)
from .homology import (
    FlavorError,
    HomologyPresentation,
    Reduction,
    homology_hat,
    homology_minus,
    reduce_complex,
    truncated_homology,
)
from .homotopy import (
    MODES,
    homotopic,
    homotopy_inverse,
    homotopy_witness,
    inverse_in_mode,
    is_identity,
    maps_agree,
    normalize_mode,
    projectively_homotopic,
    strict_inverse,
    weaker_mode,
)

__all__ = [n for n in dir() if not n.startswith("_")]
