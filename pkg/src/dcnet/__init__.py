"""Distinct-cluster phylogenetic networks: inheritance matrices, distances and simplification."""

from .dot import export_dot
from .errors import DcnetError
from .hybrid import contract_o1, d_o1, expand_o1, is_extended_dc, is_o1, o1_networks_equal
from .matrix import adjacency_matrix, count_paths_oracle, inheritance_matrix, network_from_inheritance
from .metric import (
    ClusterIndex,
    Distance,
    cluster_index,
    embed,
    gen_powerset_network,
    gen_trivial_tree,
    inheritance_distance,
    p_norm_distance,
    reference_distance_formula,
)
from .network import (
    Network,
    NetworkClass,
    classify,
    format_cluster,
    is_distinct_cluster,
    networks_equal,
    parse_network,
    read_network,
    redundant_arcs,
    serialize,
    topological_order,
)
from .search import SearchReport, best_fitting_cps_tree, best_fitting_in_class, enumerate_cps_candidates
from .simplify import (
    CpsCertificate,
    CpsVerdict,
    DeleteRedundantArc,
    DeleteVertex,
    apply_sequence,
    apply_step,
    canonical_cps,
    delete_redundant_arc,
    delete_vertex,
    is_cps,
    transitive_reduction,
)

__version__ = "0.1.0"
