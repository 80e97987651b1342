"""Exact edge-ideal computations for finite simple graphs.

Graphs, their edge ideals with ordinary and symbolic powers,
multigraded Betti numbers with the derived regularity, combinatorial
invariants with checkable certificates, the clique-attachment
constructions, and a harness that tests the regularity statements on
generated corpora.
"""

from ._caps import (
    CapExceeded,
    MinusInfinity,
    RegValue,
    SearchBudgetExceeded,
)
from .graphs import (
    Graph,
    build_graph,
    complement,
    complete_bipartite_graph,
    complete_graph,
    connected_components,
    cycle_graph,
    delete_vertices,
    disjoint_union,
    empty_graph,
    induced_subgraph,
    is_connected,
    is_simplicial,
    neighborhood,
    path_graph,
)
from .invariants import (
    Bipartition,
    CoChordalCover,
    EliminationOrder,
    MatchingCertificate,
    VertexCoverList,
    cochordal_cover_interval,
    cochordal_cover_number,
    induced_matching_number,
    is_bipartite,
    is_cameron_walker,
    is_chordal,
    is_cochordal,
    is_vertex_cover,
    is_weakly_chordal,
    matching_number,
    maximal_independent_sets,
    minimal_vertex_covers,
)
from .monomials import (
    MonomialIdeal,
    add_variable_gen,
    colon,
    edge_ideal,
    equals,
    intersect,
    membership,
    minimalize,
    monomial_from_vertices,
    power,
    symbolic_membership,
    symbolic_power_by_intersection,
    symbolic_power_edge,
    unit_ideal,
    zero_ideal,
)
from .resolution import (
    DEFAULT_PRIME,
    BettiTable,
    SimplicialComplex,
    betti_table,
    lcm_lattice,
    reduced_homology_dims,
    regularity_additive,
    regularity_additive_table,
    regularity_quotient,
    upper_koszul,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
