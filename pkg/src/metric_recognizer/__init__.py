"""Recognize and reconstruct distance matrices of positive-weighted graphs.

Families covered: n-hypercubes with every edge useful, the 3-cube with
arbitrary positive weights, the Petersen graph with every edge useful, and
trees on exactly the indexed vertices. Vertex indices are 0-based in the
Python API and 1-based in every serialized form.
"""
from .checks import Check
from .errors import (
    Disconnected,
    DisconnectedSkeleton,
    MetricError,
    NotATree,
    OrderError,
    OrderNot8,
    OrderNot10,
    OrderNotPowerOfTwo,
    ParseError,
    RangeError,
    ShapeError,
    SizeGuard,
    SpecError,
    TriangleViolation,
    VerificationFailed,
)
from .graph import (
    Embedding,
    Graph,
    WeightedGraph,
    count_geodesics,
    counterexample_graph,
    embed_into_q3,
    hypercube,
    is_bipartite,
    is_hypercube,
    is_zero_two_graph,
    petersen,
)
from .matrix import (
    DistanceMatrix,
    EntryClassification,
    LayerPartition,
    PredistanceMatrix,
    TowerMatrix,
    classify,
    four_point_condition,
    indecomposable_paths,
    is_median,
    layer_partition,
    skeleton,
    tower,
    validate,
)
from .matrix_io import format_matrix, parse_matrix, read_matrix, write_matrix
from .oracle import GeneratorSpec, gen_weighted, mutate, oracle_realizable
from .recognizers import (
    Verdict,
    reconstruct_and_verify,
    recognize,
    recognize_hypercube_count,
    recognize_hypercube_layers,
    recognize_petersen,
    recognize_q3_general,
    recognize_tree,
)
from .weighted import apsp, useful_edges

__version__ = "0.1.0"
