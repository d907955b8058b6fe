"""Numeric certification of semi-smoothness, niceness, the known
price-of-total-anarchy parameters, and the optimum lower-bound inequalities.

All verdicts are exact: the per-state inequalities are evaluated in scaled
integers (or Fractions on the general-profile path), never floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import oracle
from .fastpath import StateEvaluator, to_internal, to_public
from .games import (
    GameKind,
    Instance,
    MixedProfile,
    State,
    canonical_deviation_profile,
    validate_profile,
    validate_state,
)
from .oracle import DEFAULT_LIMITS, OracleLimits, StateSpaceExceeded, state_count


@dataclass(frozen=True)
class SmoothnessParams:
    """(lambda, mu) plus the derived ratio rho (lambda/(1-mu) for cost kinds,
    lambda/(1+mu) for payoff kinds)."""

    lam: Fraction
    mu: Fraction
    rho: Fraction


def make_params(kind: GameKind, lam, mu) -> SmoothnessParams:
    lam, mu = Fraction(lam), Fraction(mu)
    if lam < 0:
        raise ValueError(f"lambda must be >= 0, got {lam}")
    if kind.minimizes:
        if mu >= 1:
            raise ValueError(f"cost-side mu must be < 1 for a meaningful ratio, got {mu}")
        rho = lam / (1 - mu)
    else:
        rho = lam / (1 + mu)
    return SmoothnessParams(lam=lam, mu=mu, rho=rho)


@dataclass(frozen=True)
class SmoothnessVerdict:
    """Exact per-state scan result; slack is the tightest margin (negative when
    the inequality fails somewhere) and worst_state attains it."""

    holds: bool
    worst_state: State
    slack: Fraction


# ---------------------------------------------------------------------------
# the semi-smoothness left-hand side


def semi_smooth_lhs(inst: Instance, state: State, profile: MixedProfile) -> Fraction:
    """Sum over players of the expected value of redrawing only your own
    machine from the profile, everyone else pinned at ``state``."""
    validate_state(inst, state)
    validate_profile(inst, profile)
    ev = StateEvaluator(inst)
    aux = ev.analyze(to_internal(state))
    total = Fraction(0)
    for i in range(inst.n):
        row = profile[i]
        for k in range(inst.m):
            q = row[k]
            if q != 0:
                total += q * ev.value(aux, i, k)
    return total / ev.value_scale


def _closed_lhs_constant(inst: Instance, ev: StateEvaluator) -> Optional[int]:
    """State-independent LHS of the canonical profile, scaled by m*value_scale;
    None when the LHS is state-dependent (sharing kinds)."""
    n, m = inst.n, inst.m
    if inst.kind.balancing:
        e_minus = len(inst.conflict_edges)
        e_plus = len(inst.friendship_edges)
        return ev._a * n * (n + m - 1) + 2 * ev._b * e_minus + 2 * ev._g * (m - 1) * e_plus
    if inst.kind is GameKind.MAXCUT:
        return 2 * len(inst.conflict_edges)  # |E| times m*value_scale = 2
    return None


def _sharing_lhs_scaled(ev: StateEvaluator, support: list[int], state, loads) -> int:
    """Sharing-kind LHS of the canonical profile at one state, scaled by
    t*value_scale where t = len(support)."""
    n = ev.n
    t = len(support)
    in_support = [False] * ev.m
    for l in support:
        in_support[l] = True
    machine = 0
    for l in support:
        x = loads[l]
        if x:
            machine += ev._share[l][1]
        if x < n:
            machine += (n - x) * ev._share[l][x + 1]
    ends_in_support = 0
    for a, b, w in ev._wedges:
        ends_in_support += w * (in_support[state[a]] + in_support[state[b]])
    if ev.kind is GameKind.SWC:
        total_w = sum(w for _, _, w in ev._wedges)
        return machine + 2 * t * total_w - ends_in_support
    return machine + ends_in_support


def check_semi_smooth(
    inst: Instance,
    params: SmoothnessParams,
    profile: Optional[MixedProfile] = None,
    limits: OracleLimits = DEFAULT_LIMITS,
) -> SmoothnessVerdict:
    """Exact scan of the semi-smoothness inequality over every state.

    Cost kinds:    LHS <= lam * c(opt) + mu * c(s)
    Payoff kinds:  LHS >= lam * u(opt) - mu * u(s)

    ``profile`` defaults to the canonical deviation profile, for which a
    closed form of the LHS is used; arbitrary product profiles fall back to
    the definitional sum.
    """
    canonical = canonical_deviation_profile(inst)
    if profile is None:
        profile = canonical
    else:
        validate_profile(inst, profile)
    ev = StateEvaluator(inst)
    _, opt_value = oracle.optimum(inst, limits)
    opt_scaled = int(opt_value * ev.value_scale)

    if profile == canonical:
        support = [k for k in range(inst.m) if canonical[0][k] != 0]
        t = len(support)
        const = _closed_lhs_constant(inst, ev)

        def lhs_scaled(state, loads):  # times t * value_scale
            if const is not None:
                return const
            return _sharing_lhs_scaled(ev, support, state, loads)

    else:
        t = 1

        def lhs_scaled(state, loads):
            aux = (tuple(state), loads, *_tables(ev, state))
            total = Fraction(0)
            for i in range(inst.n):
                for k in range(inst.m):
                    q = profile[i][k]
                    if q != 0:
                        total += q * ev.value(aux, i, k)
            return total  # exact Fraction, times value_scale

    # slack scaled by t * value_scale * lam.den * mu.den, all integer arithmetic
    ln, ld = params.lam.numerator, params.lam.denominator
    un, ud = params.mu.numerator, params.mu.denominator
    minimizes = inst.kind.minimizes
    worst_state = None
    worst_slack = None
    for s in oracle._states0(inst):
        loads = ev.loads(s)
        lhs = lhs_scaled(s, loads) * ld * ud
        social = ev.social(s)
        rhs = ln * ud * t * opt_scaled + un * ld * t * social * (1 if minimizes else -1)
        slack = rhs - lhs if minimizes else lhs - rhs
        if worst_slack is None or slack < worst_slack:
            worst_slack, worst_state = slack, s
    denom = t * ev.value_scale * ld * ud
    slack_frac = (
        Fraction(worst_slack, denom)
        if isinstance(worst_slack, int)
        else worst_slack / denom
    )
    return SmoothnessVerdict(
        holds=slack_frac >= 0, worst_state=to_public(worst_state), slack=slack_frac
    )


def _tables(ev: StateEvaluator, state):
    aux = ev.analyze(state)
    return aux[2], aux[3]


def check_nice(
    inst: Instance, params: SmoothnessParams, limits: OracleLimits = DEFAULT_LIMITS
) -> SmoothnessVerdict:
    """Niceness check with the deviation target at the joint best responses:
    for every state, sum_i value_i(best response, s_-i) against
    lam * extremal +/- mu * value(s)."""
    ev = StateEvaluator(inst)
    _, opt_value = oracle.optimum(inst, limits)
    opt_scaled = int(opt_value * ev.value_scale)
    ln, ld = params.lam.numerator, params.lam.denominator
    un, ud = params.mu.numerator, params.mu.denominator
    minimizes = inst.kind.minimizes
    pick = min if minimizes else max
    worst_state = None
    worst_slack = None
    for s in oracle._states0(inst):
        aux = ev.analyze(s)
        lhs = sum(
            pick(ev.value(aux, i, k) for k in range(inst.m)) for i in range(inst.n)
        )
        social = ev.social(s)
        rhs = ln * ud * opt_scaled + un * ld * social * (1 if minimizes else -1)
        slack = rhs - lhs * ld * ud if minimizes else lhs * ld * ud - rhs
        if worst_slack is None or slack < worst_slack:
            worst_slack, worst_state = slack, s
    slack_frac = Fraction(worst_slack, ev.value_scale * ld * ud)
    return SmoothnessVerdict(
        holds=slack_frac >= 0, worst_state=to_public(worst_state), slack=slack_frac
    )


# ---------------------------------------------------------------------------
# the best pure-deviation ratio (payoff kinds)


def max_rho_pure_sigma(
    inst: Instance,
    sigma_state: State,
    limits: OracleLimits = DEFAULT_LIMITS,
    width: Fraction = Fraction(1, 10**9),
) -> tuple[Fraction, Fraction]:
    """Certified interval [lo, hi) around the supremum of lambda/(1+mu) over
    nonnegative (lambda, mu) that satisfy the semi-smoothness inequality with
    the given PURE deviation state at every state.

    Binary search on rho; each candidate reduces to a one-dimensional linear
    feasibility problem in mu (one constraint per state), solved exactly.
    """
    if inst.kind.minimizes:
        raise ValueError("pure-deviation ratio search applies to payoff kinds only")
    validate_state(inst, sigma_state)
    ev = StateEvaluator(inst)
    sigma0 = to_internal(sigma_state)
    _, opt_value = oracle.optimum(inst, limits)
    if opt_value == 0:
        raise ValueError("degenerate instance: the optimum value is 0, every ratio works")
    rows = []
    for s in oracle._states0(inst):
        aux = ev.analyze(s)
        lhs = Fraction(
            sum(ev.value(aux, i, sigma0[i]) for i in range(inst.n)), ev.value_scale
        )
        rows.append((Fraction(ev.social(s), ev.value_scale), lhs))

    def feasible(rho: Fraction) -> bool:
        # lambda = rho * (1 + mu); need mu >= 0 with, per state s,
        #   mu * (rho * opt - u(s)) <= L(s) - rho * opt
        lower = Fraction(0)
        upper = None
        for u_s, l_s in rows:
            a = rho * opt_value - u_s
            b = l_s - rho * opt_value
            if a > 0:
                if b < 0:
                    return False
                bound = b / a
                if upper is None or bound < upper:
                    upper = bound
            elif a == 0:
                if b < 0:
                    return False
            else:
                bound = b / a
                if bound > lower:
                    lower = bound
        return upper is None or lower <= upper

    lo = Fraction(0)
    hi = Fraction(1)
    while feasible(hi):
        lo, hi = hi, hi * 2
    while hi - lo > width:
        mid = (lo + hi) / 2
        if feasible(mid):
            lo = mid
        else:
            hi = mid
    return lo, hi


# ---------------------------------------------------------------------------
# known certificate parameters and CCE quality bounds


def certificate_params(
    kind: GameKind,
    n: int,
    m: int,
    alpha: Optional[Fraction] = None,
    beta: Optional[Fraction] = None,
    gamma: Optional[Fraction] = None,
) -> tuple[SmoothnessParams, Fraction]:
    """The certified (lambda, mu) for the kind and the implied bound on the
    worst-CCE-to-optimum ratio.  Degenerate m = 1 games are trivially (1, 0)
    with ratio 1."""
    if n < 1 or m < 1:
        raise ValueError("n and m must be >= 1")
    if m == 1:
        params = make_params(kind, 1, 0)
        return params, Fraction(1)
    if kind is GameKind.BWC:
        lam = (
            2 - Fraction(1, m) + Fraction(m - 1, n)
            if n >= m
            else 1 + Fraction(2 * n - 2, m)
        )
        params = make_params(kind, lam, 0)
    elif kind is GameKind.BWF:
        params = make_params(kind, 2 - Fraction(1, m), 0)
    elif kind is GameKind.BWCF:
        if alpha is None or beta is None or gamma is None:
            raise ValueError("the combined kind needs alpha, beta, gamma")
        a, b, g = Fraction(alpha), Fraction(beta), Fraction(gamma)
        if a >= g:
            lam = (
                1
                + Fraction(m - 1, n)
                + (b / a) * Fraction(m - 1, m)
                + (g / a) * (Fraction(m - 1, m) - Fraction(m - 1, n))
            )
        else:
            lam = 1 + (b / a) * Fraction(m - 1, m) + (g / a) * Fraction(m - 1, m)
        params = make_params(kind, lam, 0)
    elif kind is GameKind.SWC:
        # with n < m the deviation profile spreads over n machines only, and
        # the certified pair scales with that support size (same ratio of 2)
        t = min(n, m)
        if t == 1:
            params = make_params(kind, 1, 0)
        else:
            params = make_params(kind, Fraction(t - 1, t), Fraction(t - 2, t))
    elif kind is GameKind.SWF:
        params = make_params(kind, Fraction(1, m), 0)
    else:  # cut game
        params = make_params(kind, Fraction(1, 2), 0)
    pota = params.rho if kind.minimizes else 1 / params.rho
    return params, pota


# ---------------------------------------------------------------------------
# optimum lower-bound inequalities (cost kinds)


@dataclass(frozen=True)
class LowerBoundVerdict:
    holds: bool
    checks: tuple[str, ...]
    witness: Optional[tuple[str, State, Fraction]]  # first failing (check, state, value)


def check_opt_lower_bounds(
    inst: Instance, limits: OracleLimits = DEFAULT_LIMITS
) -> LowerBoundVerdict:
    """Verify the kind's social-cost floors at every state (scaled integers).

    BwC:  m*c >= alpha*n^2  and, for m >= 2,  (m-1)*c >= 2|E-|.
    BwF:  m*c >= alpha*n^2  and  c >= 2|E+| + n.
    BwCF: the load floor, the conflict-volume floor, and the friendship floor
          for its alpha-vs-gamma branch (the alpha <= gamma floor uses the
          provable alpha*n constant term).
    Payoff kinds have no such floors; the verdict is trivially true.
    """
    if not inst.kind.balancing:
        return LowerBoundVerdict(holds=True, checks=(), witness=None)
    if state_count(inst) > limits.max_states:
        raise StateSpaceExceeded("max_states", state_count(inst), limits.max_states)
    ev = StateEvaluator(inst)
    n, m = inst.n, inst.m
    vs = ev.value_scale
    a_n, b_n, g_n = ev._a, ev._b, ev._g
    e_minus = len(inst.conflict_edges)
    e_plus = len(inst.friendship_edges)

    checks: list[tuple[str, int, int]] = []  # (name, multiplier on c, floor)
    checks.append(("load_floor", m, a_n * n * n))
    if inst.kind is GameKind.BWC:
        if m >= 2:
            checks.append(("conflict_volume", m - 1, 2 * vs * e_minus))
    elif inst.kind is GameKind.BWF:
        checks.append(("friend_volume", 1, vs * (2 * e_plus + n)))
    else:
        checks.append(
            ("conflict_volume", m, (a_n - b_n * (m - 1)) * n * n + 2 * b_n * m * e_minus)
        )
        if inst.alpha >= inst.gamma:
            checks.append(
                ("friend_volume", m, (a_n - g_n) * n * n + m * (2 * g_n * e_plus + g_n * n))
            )
        if inst.alpha <= inst.gamma:
            checks.append(("friend_volume_heavy", 1, 2 * a_n * e_plus + a_n * n))

    for s in oracle._states0(inst):
        social = ev.social(s)
        for name, mult, floor in checks:
            if mult * social < floor:
                return LowerBoundVerdict(
                    holds=False,
                    checks=tuple(name for name, _, _ in checks),
                    witness=(name, to_public(s), ev.as_value(social)),
                )
    return LowerBoundVerdict(
        holds=True, checks=tuple(name for name, _, _ in checks), witness=None
    )
