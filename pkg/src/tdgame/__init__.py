"""Total domination game on graphs, transversal game on hypergraphs.

Core pieces: graph parsing and the open neighborhood hypergraph, the weight
function with special-vertex marking, a trace-recording game engine, the
greedy Dominator strategy with exact minimax and worst-case-Staller solvers,
and a verification harness for the length guarantees.
"""

from .engine import (
    DOMINATOR,
    STALLER,
    GameState,
    Trace,
    TurnRecord,
    apply_move,
    graph_legal_moves,
    legal_moves,
    play_game,
    replay_moves_on_graph,
    replay_trace,
)
from .errors import (
    CapabilityError,
    GenerationError,
    GraphInputError,
    IllegalMoveError,
    InternalConsistencyError,
    PolicyError,
    PreconditionError,
    TdgameError,
)
from .graph import (
    ComponentReport,
    Graph,
    brute_force_domination_number,
    brute_force_total_domination_number,
    build_onh,
    components,
    cycle_graph,
    disjoint_union,
    graph_to_text,
    parse_graph,
    path_graph,
    star_graph,
    validate_min_component_order,
)
from .hypergraph import (
    LabeledHypergraph,
    ResidualStats,
    SpecialMarking,
    StructuralAudit,
    count_discount_components,
    render_hypergraph,
    residual_stats,
    select_special_vertices,
    structural_audit,
)
from .potential import (
    DEFAULT_SCHEME,
    PhasePartition,
    WeightScheme,
    classify_phases,
    move_decrease,
    weight_of_residual,
)
from .strategies import (
    SolveResult,
    greedy_dominator_move,
    solve_exact_game,
    solve_exact_game_reference,
    solve_exact_total_domination_game,
    staller_myopic_move,
    staller_random_move,
    worst_staller_vs_greedy,
)

__version__ = "0.1.0"
