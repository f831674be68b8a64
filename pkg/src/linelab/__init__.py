"""Online self-adjusting line networks: cost model, GREAD, adversary, oracles."""

from .adversary import AdversaryResult, adversary_run, distortion, partition_XY, reveal_batch, swap_distortion_delta
from .analysis import average_involution_weight, involutions, ratio_R, staircase_constant, telephone
from .classic import MoveCenter, mtf_serve, optimal_list_update, star_sequence
from .core import (
    Configuration,
    CostLedger,
    NeverSwap,
    NonlinearDemandError,
    OnlineAlgorithm,
    Request,
    RequestGraph,
    UsageError,
    kendall_distance,
    morph,
    run,
    serve,
)
from .distributed import DistributedGread, run_distributed_gread
from .gread import Gread, MergeTree, gread_step, potential
from .oracle import offline_line_baseline, optimal_offline, replay
from .workloads import random_line_demand

__all__ = [
    "AdversaryResult",
    "Configuration",
    "CostLedger",
    "DistributedGread",
    "Gread",
    "MergeTree",
    "MoveCenter",
    "NeverSwap",
    "NonlinearDemandError",
    "OnlineAlgorithm",
    "Request",
    "RequestGraph",
    "UsageError",
    "adversary_run",
    "average_involution_weight",
    "distortion",
    "gread_step",
    "involutions",
    "kendall_distance",
    "morph",
    "mtf_serve",
    "offline_line_baseline",
    "optimal_list_update",
    "optimal_offline",
    "partition_XY",
    "potential",
    "random_line_demand",
    "ratio_R",
    "replay",
    "reveal_batch",
    "run",
    "run_distributed_gread",
    "serve",
    "staircase_constant",
    "star_sequence",
    "swap_distortion_delta",
    "telephone",
]
