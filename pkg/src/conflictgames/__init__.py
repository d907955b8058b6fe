"""Assignment games with pairwise conflicts and friendships: exact evaluation,
equilibrium enumeration, smoothness certificates, and best-response dynamics."""

from .games import (
    GameKind,
    Instance,
    InvalidInstanceError,
    best_response,
    canonical_deviation_profile,
    deviation_gain,
    harmonic,
    make_instance,
    player_value,
    player_values,
    point_mass_profile,
    potential,
    social_value,
    uniform_profile,
)
from .instances import (
    InstanceFormatError,
    gen_bwc_multipartite,
    gen_bwcf_lower,
    gen_bwf_cliques,
    gen_maxcut_edge,
    gen_path4,
    gen_random,
    gen_swc_pos,
    gen_swf_nostrong,
    load_instance,
    parse_instance,
    save_instance,
    write_instance,
)
from .oracle import (
    CceSolution,
    EquilibriumReport,
    OracleLimits,
    StateSpaceExceeded,
    enumerate_states,
    equilibrium_report,
    expected_player_value,
    optimum,
    pure_nash_set,
    strong_nash_set,
    verify_mixed_ne,
    worst_cce_value,
)
from .smoothness import (
    SmoothnessParams,
    certificate_params,
    check_nice,
    check_opt_lower_bounds,
    check_semi_smooth,
    max_rho_pure_sigma,
    semi_smooth_lhs,
)
from .dynamics import (
    Trace,
    check_convergence_theorems,
    run_br,
    sandwich_constants,
    steps_to_quality,
    trace_csv,
)
from .verdicts import VerdictReport, make_verdict, render_csv, render_text

__all__ = [name for name in dir() if not name.startswith("_")]
