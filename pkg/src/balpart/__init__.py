"""Balanced k-way graph partitioning: synchronous label-propagation partitioners,
prioritized restreaming, and the analysis tools used to compare them."""

from .bounds import check_ambivalence_bounds
from .errors import (BalpartError, EdgeListParseError, EmptyGraphError, InfeasibleBalanceError,
                     InvalidOrderError, MissingPartitionError, SingleShardError)
from .experiments import correlate_orders, run_partition, sweep_incumbency, sweep_k
from .graph import Graph, GraphStats, from_edges, graph_stats, load_edge_list
from .kendall import weighted_kendall_tau
from .metrics import (adjusted_ambivalence, ambivalence, colocation_counts, cut_size,
                      external_gain, gain, internal_edge_fraction, node_scores)
from .orders import (StreamOrder, order_ambivalence, order_bfs, order_cc, order_degree,
                     order_gain, order_random)
from .partition import (BalanceSpec, Partition, PartitionHistory, periodicity,
                        periodicity_histogram, random_balanced_init)
from .report import RunReport, emit_report
from .streaming import StreamState, reldg_assign, reldg_iteration, run_restream
from .sync import (blp_iteration, blp_solve_relocation, build_queues, klshp_iteration,
                   run_synchronous, shp1_iteration, shp2_iteration)

__version__ = "0.1.0"

__all__ = [
    "BalanceSpec", "BalpartError", "EdgeListParseError", "EmptyGraphError", "Graph", "GraphStats",
    "InfeasibleBalanceError", "InvalidOrderError", "MissingPartitionError", "Partition",
    "PartitionHistory", "RunReport", "SingleShardError", "StreamOrder", "StreamState",
    "adjusted_ambivalence", "ambivalence", "blp_iteration", "blp_solve_relocation", "build_queues",
    "check_ambivalence_bounds", "colocation_counts", "correlate_orders", "cut_size", "emit_report",
    "external_gain", "from_edges", "gain", "graph_stats", "internal_edge_fraction", "klshp_iteration",
    "load_edge_list", "node_scores", "order_ambivalence", "order_bfs", "order_cc", "order_degree",
    "order_gain", "order_random", "periodicity", "periodicity_histogram", "random_balanced_init",
    "reldg_assign", "reldg_iteration", "run_partition", "run_restream", "run_synchronous",
    "shp1_iteration", "shp2_iteration", "sweep_incumbency", "sweep_k", "weighted_kendall_tau",
]
