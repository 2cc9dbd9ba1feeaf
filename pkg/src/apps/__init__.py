"""Rank-one approximation and radar code design"""

from .radar import (
    RadarObjective,
    ambiguity,
    ambiguity_rows,
    bin_support,
    build_radar_objective,
    build_shift_matrix,
    doppler_bins,
    penalty_form,
    radar_weights,
    solve_radar,
    steering_vector,
)
from .rank_one import coupled_sphere_ascent, embed_rank_one_as_geig, rank_one_als, rank_one_via_geig

__all__ = [
    "RadarObjective",
    "ambiguity",
    "ambiguity_rows",
    "bin_support",
    "build_radar_objective",
    "build_shift_matrix",
    "coupled_sphere_ascent",
    "doppler_bins",
    "embed_rank_one_as_geig",
    "penalty_form",
    "radar_weights",
    "rank_one_als",
    "rank_one_via_geig",
    "solve_radar",
    "steering_vector",
]
