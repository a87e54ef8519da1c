"""Link component numbers of plane multigraphs.

Three independent counts (strand tracing on a rotation system, the Tutte
value at (-1, -1), and the GF(2) bicycle dimension) plus the reduction
calculus that reads the count of a suspended tree off its TypeIII moves.
"""

__version__ = "0.1.0"

from .embedding import (
    RotationSystem,
    default_embedding,
    insert_edge_in_face,
    random_embedding,
    strand_components,
    validate_genus0,
)
from .graph import Multigraph, blocks, build_graph, contract_edge, delete_edge, delete_vertex, is_tree, leaves, random_tree
from .linkcount import LinkCount
from .oracles import bicycle_dim, cross_check, l_from_bicycle, l_from_tutte, tutte_neg1
from .reduction import l_by_blocks, l_suspended, l_suspended_forest, reduce, replay
from .suspension import normalize_apex, suspend_forest, suspend_tree, suspend_tree_embedded
