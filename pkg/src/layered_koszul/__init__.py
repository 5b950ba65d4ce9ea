"""Quadratic algebras attached to layered graphs, with exact Koszulity checks.

Everything is exact: linear algebra runs over a prime field GF(p) (default
p = 32003) or over the rationals.
"""

from .basis import BasisPair, composable, count_basis, enumerate_basis, hilbert_from_basis, hilbert_from_linalg
from .errors import (
    AmbientCapExceeded,
    CapExceeded,
    GraphFormatError,
    LatticeCapExceeded,
    NonUniformGraphError,
    PathCapExceeded,
)
from .field import GF, QQ, Field, Subspace, nullspace, rank, rref, subspace_intersect, subspace_sum
from .graph import LayeredGraph, chain, complete_layered, dumps, hypercube, is_uniform, loads, non_uniform_witness
from .koszul import (
    GradedQuotient,
    euler_check,
    hilbert_dims,
    is_distributive,
    lattice_closure,
    lemma42_check,
    lemma44_check,
    quadratic_dual,
    theorem46_check,
    tor_table,
)
from .relations import (
    QuadraticPresentation,
    full_relation_span,
    presentation,
    quadratic_ideal_component,
    quadratic_relations_A,
    quadratic_relations_gr,
)
from .tensor import Alphabet, TensorVector

__version__ = "0.1.0"
