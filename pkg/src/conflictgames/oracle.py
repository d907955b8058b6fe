"""Brute-force ground truth: state enumeration, optima, pure/strong Nash sets,
exact expectations for product profiles, and the worst coarse-correlated
equilibrium via an exact-rational LP.

Enumeration passes run on the scaled-integer evaluator; every reported value
is an exact Fraction.  Ties (optimum, worst equilibrium) always resolve to the
lexicographically smallest state, so results are deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

import numpy as np

from . import simplex
from .fastpath import StateEvaluator, to_public
from .games import (
    GameKind,
    Instance,
    MixedProfile,
    State,
    validate_profile,
    weighted_neighbors,
    conflict_neighbors,
    friendship_neighbors,
)


@dataclass(frozen=True)
class OracleLimits:
    """State-space caps; exceeding one raises :class:`StateSpaceExceeded`."""

    max_states: int = 2_000_000
    lp_max_states: int = 2_000
    strong_max_players: int = 8


DEFAULT_LIMITS = OracleLimits()

# beyond this magnitude the int64 vector path could overflow; fall back
_INT64_SAFE = 1 << 60


class StateSpaceExceeded(RuntimeError):
    def __init__(self, limit_name: str, needed, allowed):
        super().__init__(
            f"state space needs {needed} but the configured {limit_name} allows {allowed}"
        )
        self.limit_name = limit_name


def state_count(inst: Instance) -> int:
    return inst.m ** inst.n


def _guard(inst: Instance, cap: int, name: str) -> None:
    if state_count(inst) > cap:
        raise StateSpaceExceeded(name, state_count(inst), cap)


def enumerate_states(inst: Instance, limits: OracleLimits = DEFAULT_LIMITS) -> Iterator[State]:
    """All m^n states exactly once, lexicographic order, 1-based entries."""
    _guard(inst, limits.max_states, "max_states")
    return itertools.product(range(1, inst.m + 1), repeat=inst.n)


def _states0(inst: Instance):
    return itertools.product(range(inst.m), repeat=inst.n)


def optimum(inst: Instance, limits: OracleLimits = DEFAULT_LIMITS) -> tuple[State, Fraction]:
    """Social optimum (min for cost kinds, max for payoff kinds); lex-smallest tie."""
    _guard(inst, limits.max_states, "max_states")
    ev = StateEvaluator(inst)
    minimizes = inst.kind.minimizes
    best_state = None
    best = 0
    for s in _states0(inst):
        v = ev.social(s)
        if best_state is None or (v < best if minimizes else v > best):
            best_state, best = s, v
    return to_public(best_state), ev.as_value(best)


def worst_social_state(
    inst: Instance, limits: OracleLimits = DEFAULT_LIMITS
) -> tuple[State, Fraction]:
    """The socially worst state (max cost / min utility); lex-smallest tie.
    Used by the worst-start mode of the dynamics."""
    _guard(inst, limits.max_states, "max_states")
    ev = StateEvaluator(inst)
    minimizes = inst.kind.minimizes
    best_state = None
    best = 0
    for s in _states0(inst):
        v = ev.social(s)
        if best_state is None or (v > best if minimizes else v < best):
            best_state, best = s, v
    return to_public(best_state), ev.as_value(best)


def _is_pure_ne(ev: StateEvaluator, aux) -> bool:
    state = aux[0]
    n, m = ev.n, ev.m
    minimizes = ev.minimizes
    for i in range(n):
        cur = ev.value(aux, i, state[i])
        for k in range(m):
            if k == state[i]:
                continue
            dev = ev.value(aux, i, k)
            if dev < cur if minimizes else dev > cur:
                return False
    return True


def pure_nash_set(
    inst: Instance, limits: OracleLimits = DEFAULT_LIMITS
) -> list[tuple[State, Fraction]]:
    """All states with no strictly improving unilateral deviation, lex order."""
    _guard(inst, limits.max_states, "max_states")
    ev = StateEvaluator(inst)
    out = []
    for s in _states0(inst):
        aux = ev.analyze(s)
        if _is_pure_ne(ev, aux):
            out.append((to_public(s), ev.as_value(ev.social(s))))
    return out


# ---------------------------------------------------------------------------
# strong Nash equilibria
#
# A coalition deviation (C, s'_C) strictly improving every member exists iff
# the set D of players that actually change machines (nonempty, D subseteq C)
# strictly improves under the same outcome: non-movers in C never affect the
# outcome, and movers are themselves a valid coalition.  So a state is a
# strong equilibrium iff no alternative state strictly improves all of its
# movers, which needs one pass over ordered state pairs instead of the
# 2^n-coalition definition.  The two routes are equivalence-tested.


def strong_nash_set(
    inst: Instance, limits: OracleLimits = DEFAULT_LIMITS
) -> list[tuple[State, Fraction]]:
    """All states no coalition can leave with every member strictly better off."""
    if inst.n > limits.strong_max_players:
        raise StateSpaceExceeded("strong_max_players", inst.n, limits.strong_max_players)
    _guard(inst, limits.max_states, "max_states")
    ev = StateEvaluator(inst)
    states = list(_states0(inst))
    vals = [ev.values(ev.analyze(s)) for s in states]
    if inst.m == 2 and max(max(map(abs, row)) for row in vals) < _INT64_SAFE:
        flags = _strong_flags_two_machines(vals, inst.n, ev.minimizes)
    else:
        flags = _strong_flags_generic(states, vals, ev.minimizes)
    return [
        (to_public(s), ev.as_value(ev.social(s)))
        for s, ok in zip(states, flags)
        if ok
    ]


def _strong_flags_generic(states, vals, minimizes: bool) -> list[bool]:
    count = len(states)
    n = len(states[0])
    flags = [True] * count
    for si in range(count):
        s = states[si]
        vs = vals[si]
        for ti in range(count):
            if ti == si:
                continue
            t = states[ti]
            vt = vals[ti]
            refutes = True
            for i in range(n):
                if s[i] != t[i]:
                    better = vt[i] < vs[i] if minimizes else vt[i] > vs[i]
                    if not better:
                        refutes = False
                        break
            if refutes:
                flags[si] = False
                break
    return flags


def _strong_flags_two_machines(vals, n: int, minimizes: bool) -> list[bool]:
    """Vectorized pair scan for m = 2: states are bitmasks (player 0 is the
    most significant bit, matching lexicographic enumeration), alternative
    states are XOR masks.  Values are small exact integers, so int64 is exact."""
    arr = np.asarray(vals, dtype=np.int64)
    count = len(vals)
    idx = np.arange(count)
    refuted = np.zeros(count, dtype=bool)
    for mask in range(1, count):
        movers = [i for i in range(n) if (mask >> (n - 1 - i)) & 1]
        target = idx ^ mask
        ok = np.ones(count, dtype=bool)
        for i in movers:
            if minimizes:
                ok &= arr[target, i] < arr[idx, i]
            else:
                ok &= arr[target, i] > arr[idx, i]
            if not ok.any():
                break
        refuted |= ok
    return [not r for r in refuted]


def strong_nash_set_by_coalitions(
    inst: Instance, limits: OracleLimits = DEFAULT_LIMITS
) -> list[tuple[State, Fraction]]:
    """Literal definition: every nonempty coalition, every joint deviation.
    Exponentially slower than :func:`strong_nash_set`; kept as the reference
    the fast route is checked against."""
    if inst.n > limits.strong_max_players:
        raise StateSpaceExceeded("strong_max_players", inst.n, limits.strong_max_players)
    _guard(inst, limits.max_states, "max_states")
    ev = StateEvaluator(inst)
    n, m = inst.n, inst.m
    players = range(n)
    out = []
    for s in _states0(inst):
        aux = ev.analyze(s)
        vs = ev.values(aux)
        stable = True
        for size in range(1, n + 1):
            for coalition in itertools.combinations(players, size):
                for joint in itertools.product(range(m), repeat=size):
                    t = list(s)
                    for i, k in zip(coalition, joint):
                        t[i] = k
                    if tuple(t) == s:
                        continue
                    taux = ev.analyze(t)
                    if all(
                        (ev.value(taux, i, t[i]) < vs[i])
                        if ev.minimizes
                        else (ev.value(taux, i, t[i]) > vs[i])
                        for i in coalition
                    ):
                        stable = False
                        break
                if not stable:
                    break
            if not stable:
                break
        if stable:
            out.append((to_public(s), ev.as_value(ev.social(s))))
    return out


# ---------------------------------------------------------------------------
# exact expectations under product profiles


def expected_player_value(
    inst: Instance, profile: MixedProfile, i: int, k: int
) -> Fraction:
    """E[value of player i | s_i = k] with all other players drawn from the
    product profile.  Balancing kinds reduce to pairwise marginals; sharing
    kinds need the exact distribution of the co-located count (a dynamic
    program over the independent indicator sum)."""
    validate_profile(inst, profile)
    if not 1 <= i <= inst.n:
        raise ValueError(f"player id {i} out of range 1..{inst.n}")
    if not 1 <= k <= inst.m:
        raise ValueError(f"machine id {k} out of range 1..{inst.m}")
    kind = inst.kind
    if kind.balancing:
        load = 1 + sum(profile[j - 1][k - 1] for j in range(1, inst.n + 1) if j != i)
        conf_here = sum(profile[j - 1][k - 1] for j in conflict_neighbors(inst)[i - 1])
        friends_away = sum(1 - profile[j - 1][k - 1] for j in friendship_neighbors(inst)[i - 1])
        return inst.alpha * load + inst.beta * conf_here + inst.gamma * friends_away
    if kind is GameKind.MAXCUT:
        return sum(
            (1 - profile[j - 1][k - 1] for j in conflict_neighbors(inst)[i - 1]), Fraction(0)
        )
    # sharing kinds: share term p_k * E[1/(1+Y)], Y = co-located others
    dist = [Fraction(1)]
    for j in range(1, inst.n + 1):
        if j == i:
            continue
        q = profile[j - 1][k - 1]
        if q == 0:
            continue
        nxt = [Fraction(0)] * (len(dist) + 1)
        for cnt, pr in enumerate(dist):
            nxt[cnt] += pr * (1 - q)
            nxt[cnt + 1] += pr * q
        dist = nxt
    share = inst.machine_values[k - 1] * sum(
        (pr / (cnt + 1) for cnt, pr in enumerate(dist)), Fraction(0)
    )
    if kind is GameKind.SWC:
        edge = sum(
            (w * (1 - profile[j - 1][k - 1]) for j, w in weighted_neighbors(inst)[i - 1]),
            Fraction(0),
        )
    else:
        edge = sum(
            (w * profile[j - 1][k - 1] for j, w in weighted_neighbors(inst)[i - 1]),
            Fraction(0),
        )
    return share + edge


def profile_expected_value(inst: Instance, profile: MixedProfile, i: int) -> Fraction:
    """E[value of player i] with everyone (including i) drawn from the profile."""
    return sum(
        (
            profile[i - 1][k - 1] * expected_player_value(inst, profile, i, k)
            for k in range(1, inst.m + 1)
            if profile[i - 1][k - 1] != 0
        ),
        Fraction(0),
    )


def verify_mixed_ne(inst: Instance, profile: MixedProfile) -> bool:
    """Exact check: no player can improve in expectation by a pure deviation."""
    validate_profile(inst, profile)
    minimizes = inst.kind.minimizes
    for i in range(1, inst.n + 1):
        current = profile_expected_value(inst, profile, i)
        for k in range(1, inst.m + 1):
            dev = expected_player_value(inst, profile, i, k)
            if dev < current if minimizes else dev > current:
                return False
    return True


# ---------------------------------------------------------------------------
# worst coarse-correlated equilibrium (exact LP)


@dataclass(frozen=True)
class CceSolution:
    """Worst CCE: positive-mass states with probabilities, and the social value."""

    distribution: tuple[tuple[State, Fraction], ...]
    value: Fraction


def worst_cce_value(inst: Instance, limits: OracleLimits = DEFAULT_LIMITS) -> CceSolution:
    """Extremal social value over the CCE polytope (max cost / min utility).

    One LP variable per state; n*m unilateral-deviation constraints plus the
    probability simplex; solved with the exact simplex.  The polytope always
    contains the pure equilibria, so infeasibility is an internal error.
    """
    count = state_count(inst)
    if count > limits.lp_max_states:
        raise StateSpaceExceeded("lp_max_states", count, limits.lp_max_states)
    ev = StateEvaluator(inst)
    states = list(_states0(inst))
    socials = []
    deviation_rows = [
        [0] * count for _ in range(inst.n * inst.m)
    ]
    for idx, s in enumerate(states):
        aux = ev.analyze(s)
        socials.append(ev.social(s))
        for i in range(inst.n):
            cur = ev.value(aux, i, s[i])
            for k in range(inst.m):
                diff = ev.value(aux, i, k) - cur
                # cost: E[dev - cur] >= 0;  payoff: E[cur - dev] >= 0
                deviation_rows[i * inst.m + k][idx] = diff if ev.minimizes else -diff
    try:
        sol = simplex.solve(
            objective=socials,
            a_eq=[[1] * count],
            b_eq=[1],
            a_ge=deviation_rows,
            b_ge=[0] * (inst.n * inst.m),
            maximize=ev.minimizes,
        )
    except simplex.LpInfeasible as exc:  # pure equilibria always exist
        raise RuntimeError("internal error: CCE polytope reported empty") from exc
    support = tuple(
        (to_public(states[idx]), q) for idx, q in enumerate(sol.x) if q != 0
    )
    return CceSolution(distribution=support, value=sol.value / ev.value_scale)


# ---------------------------------------------------------------------------
# full per-instance report


@dataclass(frozen=True)
class EquilibriumReport:
    optimum: tuple[State, Fraction]
    pure_ne: tuple[tuple[State, Fraction], ...]
    strong_ne: tuple[tuple[State, Fraction], ...]
    poa: Optional[Fraction]
    pos: Optional[Fraction]
    strong_poa: Optional[Fraction]


def _ratio(kind: GameKind, opt_value: Fraction, eq_value: Fraction) -> Optional[Fraction]:
    """Quality ratio >= 1; None when the payoff-side denominator is zero."""
    if eq_value == opt_value:
        return Fraction(1)
    if kind.minimizes:
        return eq_value / opt_value
    return opt_value / eq_value if eq_value != 0 else None


def equilibrium_report(
    inst: Instance, limits: OracleLimits = DEFAULT_LIMITS, with_strong: bool = True
) -> EquilibriumReport:
    opt_state, opt_value = optimum(inst, limits)
    pure = pure_nash_set(inst, limits)
    if not pure:
        raise RuntimeError("internal error: potential games always have a pure equilibrium")
    values = [v for _, v in pure]
    if inst.kind.minimizes:
        worst, best = max(values), min(values)
    else:
        worst, best = min(values), max(values)
    strong: tuple = ()
    strong_poa = None
    if with_strong:
        strong = tuple(strong_nash_set(inst, limits))
        if strong:
            svalues = [v for _, v in strong]
            sworst = max(svalues) if inst.kind.minimizes else min(svalues)
            strong_poa = _ratio(inst.kind, opt_value, sworst)
    return EquilibriumReport(
        optimum=(opt_state, opt_value),
        pure_ne=tuple(pure),
        strong_ne=strong,
        poa=_ratio(inst.kind, opt_value, worst),
        pos=_ratio(inst.kind, opt_value, best),
        strong_poa=strong_poa,
    )
