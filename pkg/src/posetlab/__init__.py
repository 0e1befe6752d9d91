"""posetlab: solvers, values, and hardness gadgets for poset games."""

__version__ = "0.1.0"

from .dyadic import DyadicRational
from .errors import PosetLabError
from .impartial import (
    GSet,
    ImpartialOutcome,
    SolveBudget,
    analyze,
    grundy,
    gset,
    mex,
    nim_best_move,
    outcome,
    winning_moves,
    xor,
)
from .nfree import NWitness, SPTree, decompose, find_n, grundy_nfree
from .partisan import Arena, Game, OutcomeClass, best_move_bw, from_bw_poset
from .poset import (
    BLACK,
    WHITE,
    PointId,
    Poset,
    articulation_point,
    from_edges,
    generate,
    parallel,
    play,
    series,
    symmetry_analysis,
    width,
)

__all__ = [
    "Arena",
    "BLACK",
    "DyadicRational",
    "GSet",
    "Game",
    "ImpartialOutcome",
    "NWitness",
    "OutcomeClass",
    "PointId",
    "Poset",
    "PosetLabError",
    "SPTree",
    "SolveBudget",
    "WHITE",
    "analyze",
    "articulation_point",
    "best_move_bw",
    "decompose",
    "find_n",
    "from_bw_poset",
    "from_edges",
    "generate",
    "grundy",
    "grundy_nfree",
    "gset",
    "mex",
    "nim_best_move",
    "outcome",
    "parallel",
    "play",
    "series",
    "symmetry_analysis",
    "width",
    "winning_moves",
    "xor",
]
