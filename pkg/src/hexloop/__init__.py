"""Exact enumeration of hexagonal fully packed loop configurations, their
oriented versions, blue-red path tangles, Knutson-Tao puzzles and the
identities relating their counts.

Set ``HEXLOOP_NO_JIT=1`` before import to run the search kernels as plain
Python instead of compiling them with numba.
"""
from ._jit import backend_name
from .boundary import Boundary, BoundarySizeMismatch
from .hfpl import HfplConfig, InvalidConfig, count_hfpl, enumerate_hfpl, validate_hfpl
from .lattice import HexGrid, InvalidSize, SizeVector, build_grid
from .linkpatterns import DirectedLinkPattern, ExtendedLinkPattern, directed_elp, elp_of_word, word_of_elp
from .oriented import OrientedHfpl, count_oriented, enumerate_oriented, turn_balance, weighted_count
from .puzzles import LrInput, enumerate_hexagonal, enumerate_triangular, hex_embed_triangular, lr_of_boundary, lr_oracle
from .qring import CycloInt, LaurentPoly, build_matrix, recover_h
from .tangle import PathTangle, TangleEndpoints, endpoints, enumerate_tangles, from_tangle, to_tangle
from .theorems import SweepScope, excess, excess1_formula, moves, verify

__version__ = "0.1.0"

__all__ = [
    "Boundary",
    "BoundarySizeMismatch",
    "CycloInt",
    "DirectedLinkPattern",
    "ExtendedLinkPattern",
    "HexGrid",
    "HfplConfig",
    "InvalidConfig",
    "InvalidSize",
    "LaurentPoly",
    "LrInput",
    "OrientedHfpl",
    "PathTangle",
    "SizeVector",
    "SweepScope",
    "TangleEndpoints",
    "backend_name",
    "build_grid",
    "build_matrix",
    "count_hfpl",
    "count_oriented",
    "directed_elp",
    "elp_of_word",
    "endpoints",
    "enumerate_hexagonal",
    "enumerate_hfpl",
    "enumerate_oriented",
    "enumerate_tangles",
    "enumerate_triangular",
    "excess",
    "excess1_formula",
    "from_tangle",
    "hex_embed_triangular",
    "lr_of_boundary",
    "lr_oracle",
    "moves",
    "recover_h",
    "to_tangle",
    "turn_balance",
    "validate_hfpl",
    "verify",
    "weighted_count",
    "word_of_elp",
]
