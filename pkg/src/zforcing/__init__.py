"""Zero forcing sets and strong structural controllability of leader/follower systems."""

from .control import (
    NumericalAmbiguityError,
    Verdict,
    check_strong_structural,
    is_controllable_pair,
    leader_matrix,
    lmin_graph,
    lmin_matrix,
    rational_rank,
)
from .forcing import (
    BudgetExhausted,
    ZfsSearchResult,
    applicable_forces,
    derived_set,
    enumerate_minimal_zfs,
    is_zfs,
    replay_chronicle,
    zero_forcing_number,
    zfs_of_size,
)
from .graphs import (
    Digraph,
    GraphError,
    GraphParseError,
    UndirectedGraph,
    gen_circulant,
    gen_complete,
    gen_cycle,
    gen_path,
    gen_random_digraph,
    gen_random_ditree,
    is_ditree,
    lift_undirected,
    parse_edge_list,
    reachable_from,
    to_edge_list,
)
from .pathcover import PathCover, leaders_from_cover, minimal_path_cover, path_cover_number
from .qualitative import (
    PatternMatrix,
    SubclassSpec,
    conforms,
    qss_insufficiency_witness,
    realify_pbh_null,
    sample_matrix,
    symmetric_rich_witness,
    uncontrollable_witness,
)

__version__ = "0.1.0"
