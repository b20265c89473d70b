"""Matroid h-vectors, pure O-sequences and rank-3 certificates."""
from __future__ import annotations

from .complexes import (
    ComplexError,
    SimplicialComplex,
    circuits,
    coloops,
    deletion,
    f_vector,
    from_circuits,
    from_facets,
    h_vector,
    is_matroid,
    link,
    tutte_h,
)
from .enumeration import enumerate_matroids
from .orderideals import OrderIdeal, downward_closure, lex_segment_ideal
from .osequences import (
    is_differentiable,
    is_flawless,
    is_O_sequence,
    is_pure_O_sequence,
    macaulay_next_bound,
    pure_witness_search,
    shifted_sum,
)
from .stanley import StanleyCertificate, ccc_test, rank3_certificate, stanley_check
from .verdict import Verdict

__all__ = [
    "ComplexError",
    "OrderIdeal",
    "SimplicialComplex",
    "StanleyCertificate",
    "Verdict",
    "ccc_test",
    "circuits",
    "coloops",
    "deletion",
    "downward_closure",
    "enumerate_matroids",
    "f_vector",
    "from_circuits",
    "from_facets",
    "h_vector",
    "is_O_sequence",
    "is_differentiable",
    "is_flawless",
    "is_matroid",
    "is_pure_O_sequence",
    "lex_segment_ideal",
    "link",
    "macaulay_next_bound",
    "pure_witness_search",
    "rank3_certificate",
    "shifted_sum",
    "stanley_check",
    "tutte_h",
]
