"""Hyperbolic network embedding: PSO-family generators, ncMCE and HyperMap
embedders, an angular log-loss optimizer, and embedding quality metrics."""

from ._core import (
    ConnectivityError,
    DataError,
    DegreeKind,
    Embedding,
    EpsoParams,
    ExtremeValueFit,
    FitDirection,
    GeneratedNetwork,
    Graph,
    GreedyScore,
    LossBreakdown,
    OptimizationTrace,
    OptimizerSchedule,
    ParamError,
    PolarCoord,
    QualityReport,
    RepeatOptions,
    RepeatResult,
    RoundStats,
    angular_difference,
    assign_radial_coordinates,
    candidate_positions,
    connection_probability,
    cutoff_radius,
    degrees,
    epso_generate,
    estimate_parameters,
    expected_internal_links,
    fit_best_of_n,
    gpso_generate,
    greedy_route,
    greedy_routing_score,
    gumbel_correction,
    hyperbolic_distance,
    hypermap_embed,
    internal_degree_curve,
    is_connected,
    largest_component_subgraph,
    load_edge_list,
    logarithmic_loss,
    loss_delta_for_move,
    ncmce_embed,
    normalize_angle,
    optimize,
    optimize_round,
    pso_generate,
    repeat_embeddings,
    shortest_path_lengths,
)

__all__ = [
    "ConnectivityError",
    "DataError",
    "DegreeKind",
    "Embedding",
    "EpsoParams",
    "ExtremeValueFit",
    "FitDirection",
    "GeneratedNetwork",
    "Graph",
    "GreedyScore",
    "LossBreakdown",
    "OptimizationTrace",
    "OptimizerSchedule",
    "ParamError",
    "PolarCoord",
    "QualityReport",
    "RepeatOptions",
    "RepeatResult",
    "RoundStats",
    "angular_difference",
    "assign_radial_coordinates",
    "candidate_positions",
    "connection_probability",
    "cutoff_radius",
    "degrees",
    "epso_generate",
    "estimate_parameters",
    "expected_internal_links",
    "fit_best_of_n",
    "gpso_generate",
    "greedy_route",
    "greedy_routing_score",
    "gumbel_correction",
    "hyperbolic_distance",
    "hypermap_embed",
    "internal_degree_curve",
    "is_connected",
    "largest_component_subgraph",
    "load_edge_list",
    "logarithmic_loss",
    "loss_delta_for_move",
    "ncmce_embed",
    "normalize_angle",
    "optimize",
    "optimize_round",
    "pso_generate",
    "repeat_embeddings",
    "shortest_path_lengths",
]

__version__ = "0.1.0"
