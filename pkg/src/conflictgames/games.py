"""Core model: assignment games with pairwise conflicts and friendships.

Players 1..n each pick one machine 1..m.  The three cost-minimizing kinds
charge machine load plus edge penalties (same-machine conflicts, separated
friends, or an (alpha, beta, gamma)-weighted mix of both); the two sharing
kinds split a machine value among its occupants and add edge utility for
separated enemies or co-located friends; the two-partition cut kind rewards
separated neighbours only.

All arithmetic is exact (`fractions.Fraction`).  A state is a plain tuple of
machine ids, 1-based; players are 1-based throughout the public API.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Union

Edge = tuple[int, int]
State = tuple[int, ...]
MixedProfile = tuple[tuple[Fraction, ...], ...]
Rational = Union[int, str, Fraction]


class GameKind(enum.Enum):
    """The six supported game kinds.  The value is the canonical file tag."""

    BWC = "BwC"
    BWF = "BwF"
    BWCF = "BwCF"
    SWC = "SwC"
    SWF = "SwF"
    MAXCUT = "MaxCut"

    @property
    def minimizes(self) -> bool:
        """True for the cost games, False for the payoff games."""
        return self in (GameKind.BWC, GameKind.BWF, GameKind.BWCF)

    @property
    def balancing(self) -> bool:
        return self.minimizes

    @property
    def sharing(self) -> bool:
        return self in (GameKind.SWC, GameKind.SWF)


class InvalidInstanceError(ValueError):
    """Validation failure; ``field`` names the offending field (dotted path)."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


def as_fraction(value: Rational, field: str = "value") -> Fraction:
    """Coerce int/str/Fraction to an exact Fraction.  Floats are rejected."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise InvalidInstanceError(field, f"not an exact rational: {value!r}")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise InvalidInstanceError(field, f"not a rational: {value!r}") from exc


def improves(kind: GameKind, new: Fraction, old: Fraction) -> bool:
    """True when ``new`` is strictly better than ``old`` for the kind."""
    return new < old if kind.minimizes else new > old


@dataclass(frozen=True)
class Instance:
    """One game instance.  Build through :func:`make_instance`.

    ``conflict_edges`` holds the interaction graph of BwC, SwC, and the cut
    game; ``friendship_edges`` the one of BwF and SwF; BwCF uses both
    (disjointly).  ``machine_values`` and ``edge_weights`` exist only for the
    sharing kinds.  ``alpha``/``beta``/``gamma`` are the load/conflict/
    friendship weights; they are fixed at (1,1,0) for BwC and (1,0,1) for BwF
    so the weighted cost formula covers all three balancing kinds.
    """

    kind: GameKind
    n: int
    m: int
    conflict_edges: frozenset[Edge]
    friendship_edges: frozenset[Edge]
    machine_values: Optional[tuple[Fraction, ...]]
    edge_weights: Optional[tuple[tuple[Edge, Fraction], ...]]
    alpha: Fraction
    beta: Fraction
    gamma: Fraction


_FIXED_WEIGHTS = {
    GameKind.BWC: (Fraction(1), Fraction(1), Fraction(0)),
    GameKind.BWF: (Fraction(1), Fraction(0), Fraction(1)),
    GameKind.SWC: (Fraction(1), Fraction(0), Fraction(0)),
    GameKind.SWF: (Fraction(1), Fraction(0), Fraction(0)),
    GameKind.MAXCUT: (Fraction(1), Fraction(0), Fraction(0)),
}


def _normalize_edges(edges: Iterable, n: int, field: str) -> frozenset[Edge]:
    out = set()
    for raw in edges:
        try:
            a, b = raw
            a, b = int(a), int(b)
        except (TypeError, ValueError) as exc:
            raise InvalidInstanceError(field, f"not a pair of player ids: {raw!r}") from exc
        if a == b:
            raise InvalidInstanceError(field, f"self-loop at player {a}")
        if not (1 <= a <= n and 1 <= b <= n):
            raise InvalidInstanceError(field, f"endpoint out of range 1..{n}: ({a}, {b})")
        out.add((min(a, b), max(a, b)))
    return frozenset(out)


def make_instance(
    kind: GameKind,
    n: int,
    m: int,
    conflict_edges: Iterable = (),
    friendship_edges: Iterable = (),
    machine_values: Optional[Iterable[Rational]] = None,
    edge_weights: Optional[Mapping] = None,
    alpha: Optional[Rational] = None,
    beta: Optional[Rational] = None,
    gamma: Optional[Rational] = None,
) -> Instance:
    """Validate and canonicalize an :class:`Instance`."""
    if not isinstance(kind, GameKind):
        raise InvalidInstanceError("kind", f"unknown game kind: {kind!r}")
    if not isinstance(n, int) or n < 1:
        raise InvalidInstanceError("n", f"player count must be an integer >= 1, got {n!r}")
    if not isinstance(m, int) or m < 1:
        raise InvalidInstanceError("m", f"machine count must be an integer >= 1, got {m!r}")
    if kind is GameKind.MAXCUT and m != 2:
        raise InvalidInstanceError("m", "the cut game is played on exactly 2 partitions")

    conf = _normalize_edges(conflict_edges, n, "conflict_edges")
    fr = _normalize_edges(friendship_edges, n, "friendship_edges")
    if conf & fr:
        raise InvalidInstanceError(
            "friendship_edges", f"edges appear in both sets: {sorted(conf & fr)}"
        )
    if kind in (GameKind.BWC, GameKind.SWC, GameKind.MAXCUT) and fr:
        raise InvalidInstanceError("friendship_edges", f"{kind.value} uses conflict edges only")
    if kind in (GameKind.BWF, GameKind.SWF) and conf:
        raise InvalidInstanceError("conflict_edges", f"{kind.value} uses friendship edges only")

    if kind.sharing:
        if machine_values is None:
            raise InvalidInstanceError("machine_values", f"required for {kind.value}")
        values = tuple(
            as_fraction(v, f"machine_values[{idx}]") for idx, v in enumerate(machine_values)
        )
        if len(values) != m:
            raise InvalidInstanceError(
                "machine_values", f"expected {m} values, got {len(values)}"
            )
        for idx, v in enumerate(values):
            if v < 0:
                raise InvalidInstanceError(f"machine_values[{idx}]", f"must be >= 0, got {v}")
    else:
        if machine_values is not None:
            raise InvalidInstanceError("machine_values", f"not allowed for {kind.value}")
        values = None

    if edge_weights is not None:
        if not kind.sharing:
            raise InvalidInstanceError("edge_weights", f"only the sharing kinds take weights")
        own_edges = conf if kind is GameKind.SWC else fr
        canon: dict[Edge, Fraction] = {}
        for raw_edge, raw_w in dict(edge_weights).items():
            a, b = raw_edge
            e = (min(int(a), int(b)), max(int(a), int(b)))
            if e not in own_edges:
                raise InvalidInstanceError("edge_weights", f"weight for non-edge {e}")
            w = as_fraction(raw_w, f"edge_weights[{e}]")
            if w <= 0:
                raise InvalidInstanceError(f"edge_weights[{e}]", f"must be > 0, got {w}")
            canon[e] = w
        weights = tuple(sorted(canon.items()))
    else:
        weights = None

    if kind is GameKind.BWCF:
        a = as_fraction(alpha if alpha is not None else 1, "alpha")
        b = as_fraction(beta if beta is not None else 1, "beta")
        g = as_fraction(gamma if gamma is not None else 1, "gamma")
        if a <= 0:
            raise InvalidInstanceError("alpha", f"must be > 0, got {a}")
        if b < 0:
            raise InvalidInstanceError("beta", f"must be >= 0, got {b}")
        if g < 0:
            raise InvalidInstanceError("gamma", f"must be >= 0, got {g}")
    else:
        a, b, g = _FIXED_WEIGHTS[kind]
        for name, given, fixed in (("alpha", alpha, a), ("beta", beta, b), ("gamma", gamma, g)):
            if given is not None and as_fraction(given, name) != fixed:
                raise InvalidInstanceError(name, f"fixed to {fixed} for {kind.value}")

    return Instance(kind, n, m, conf, fr, values, weights, a, b, g)


# ---------------------------------------------------------------------------
# cached per-instance structure


@lru_cache(maxsize=None)
def conflict_neighbors(inst: Instance) -> tuple[tuple[int, ...], ...]:
    """Adjacency over conflict edges; entry i-1 lists i's neighbours."""
    adj: list[list[int]] = [[] for _ in range(inst.n)]
    for a, b in sorted(inst.conflict_edges):
        adj[a - 1].append(b)
        adj[b - 1].append(a)
    return tuple(tuple(row) for row in adj)


@lru_cache(maxsize=None)
def friendship_neighbors(inst: Instance) -> tuple[tuple[int, ...], ...]:
    adj: list[list[int]] = [[] for _ in range(inst.n)]
    for a, b in sorted(inst.friendship_edges):
        adj[a - 1].append(b)
        adj[b - 1].append(a)
    return tuple(tuple(row) for row in adj)


@lru_cache(maxsize=None)
def sharing_weights(inst: Instance) -> dict[Edge, Fraction]:
    """Edge -> weight map for the sharing kinds (default weight 1)."""
    own = inst.conflict_edges if inst.kind is GameKind.SWC else inst.friendship_edges
    weights = {e: Fraction(1) for e in own}
    if inst.edge_weights:
        weights.update(dict(inst.edge_weights))
    return weights


@lru_cache(maxsize=None)
def weighted_neighbors(inst: Instance) -> tuple[tuple[tuple[int, Fraction], ...], ...]:
    """Weighted adjacency over the sharing kind's own edge set."""
    adj: list[list[tuple[int, Fraction]]] = [[] for _ in range(inst.n)]
    for (a, b), w in sorted(sharing_weights(inst).items()):
        adj[a - 1].append((b, w))
        adj[b - 1].append((a, w))
    return tuple(tuple(row) for row in adj)


_HARMONIC = [Fraction(0)]


def harmonic(j: int) -> Fraction:
    """H_j = 1 + 1/2 + ... + 1/j, with H_0 = 0."""
    if j < 0:
        raise ValueError(f"harmonic index must be >= 0, got {j}")
    while len(_HARMONIC) <= j:
        _HARMONIC.append(_HARMONIC[-1] + Fraction(1, len(_HARMONIC)))
    return _HARMONIC[j]


# ---------------------------------------------------------------------------
# state checks


def validate_state(inst: Instance, state: State) -> None:
    if len(state) != inst.n:
        raise ValueError(f"state length {len(state)} != n = {inst.n}")
    for i, k in enumerate(state, start=1):
        if not (isinstance(k, int) and 1 <= k <= inst.m):
            raise ValueError(f"state[{i}] = {k!r} not a machine id in 1..{inst.m}")


def _check_player(inst: Instance, i: int) -> None:
    if not (isinstance(i, int) and 1 <= i <= inst.n):
        raise ValueError(f"player id {i!r} out of range 1..{inst.n}")


def _check_machine(inst: Instance, k: int) -> None:
    if not (isinstance(k, int) and 1 <= k <= inst.m):
        raise ValueError(f"machine id {k!r} out of range 1..{inst.m}")


def machine_loads(inst: Instance, state: State) -> tuple[int, ...]:
    """Occupancy vector (x_1, ..., x_m)."""
    loads = [0] * inst.m
    for k in state:
        loads[k - 1] += 1
    return tuple(loads)


# ---------------------------------------------------------------------------
# per-player and aggregate evaluation


def _player_value_unchecked(inst: Instance, state: State, i: int) -> Fraction:
    k = state[i - 1]
    kind = inst.kind
    if kind.balancing:
        load = sum(1 for x in state if x == k)
        conf_here = sum(1 for j in conflict_neighbors(inst)[i - 1] if state[j - 1] == k)
        friends_away = sum(1 for j in friendship_neighbors(inst)[i - 1] if state[j - 1] != k)
        return inst.alpha * load + inst.beta * conf_here + inst.gamma * friends_away
    if kind is GameKind.SWC:
        load = sum(1 for x in state if x == k)
        share = inst.machine_values[k - 1] / load
        away = sum(w for j, w in weighted_neighbors(inst)[i - 1] if state[j - 1] != k)
        return share + away
    if kind is GameKind.SWF:
        load = sum(1 for x in state if x == k)
        share = inst.machine_values[k - 1] / load
        here = sum(w for j, w in weighted_neighbors(inst)[i - 1] if state[j - 1] == k)
        return share + here
    # cut game
    return Fraction(sum(1 for j in conflict_neighbors(inst)[i - 1] if state[j - 1] != k))


def player_value(inst: Instance, state: State, i: int) -> Fraction:
    """Cost (balancing kinds) or utility (sharing/cut kinds) of player ``i``."""
    _check_player(inst, i)
    validate_state(inst, state)
    return _player_value_unchecked(inst, state, i)


def player_values(inst: Instance, state: State) -> tuple[Fraction, ...]:
    validate_state(inst, state)
    return tuple(_player_value_unchecked(inst, state, i) for i in range(1, inst.n + 1))


def social_value(inst: Instance, state: State) -> Fraction:
    """Sum of player values, computed through the closed per-machine aggregate."""
    validate_state(inst, state)
    kind = inst.kind
    loads = machine_loads(inst, state)
    if kind.balancing:
        squares = sum(x * x for x in loads)
        conf_same = sum(1 for a, b in inst.conflict_edges if state[a - 1] == state[b - 1])
        friends_cross = sum(1 for a, b in inst.friendship_edges if state[a - 1] != state[b - 1])
        return inst.alpha * squares + 2 * inst.beta * conf_same + 2 * inst.gamma * friends_cross
    if kind is GameKind.SWC:
        base = sum((p for p, x in zip(inst.machine_values, loads) if x), Fraction(0))
        cut = sum(
            (w for (a, b), w in sharing_weights(inst).items() if state[a - 1] != state[b - 1]),
            Fraction(0),
        )
        return base + 2 * cut
    if kind is GameKind.SWF:
        base = sum((p for p, x in zip(inst.machine_values, loads) if x), Fraction(0))
        together = sum(
            (w for (a, b), w in sharing_weights(inst).items() if state[a - 1] == state[b - 1]),
            Fraction(0),
        )
        return base + 2 * together
    cut = sum(1 for a, b in inst.conflict_edges if state[a - 1] != state[b - 1])
    return Fraction(2 * cut)


def social_value_from_players(inst: Instance, state: State) -> Fraction:
    """Definitional route: sum of :func:`player_value`.  Must equal
    :func:`social_value` exactly on every state (tested exhaustively)."""
    return sum(player_values(inst, state), Fraction(0))


def potential(inst: Instance, state: State) -> Fraction:
    """Exact potential: any unilateral move changes it by the mover's value change."""
    validate_state(inst, state)
    kind = inst.kind
    if kind.balancing:
        return social_value(inst, state) / 2
    loads = machine_loads(inst, state)
    if kind is GameKind.SWC:
        shares = sum((p * harmonic(x) for p, x in zip(inst.machine_values, loads)), Fraction(0))
        cut = sum(
            (w for (a, b), w in sharing_weights(inst).items() if state[a - 1] != state[b - 1]),
            Fraction(0),
        )
        return shares + cut
    if kind is GameKind.SWF:
        shares = sum((p * harmonic(x) for p, x in zip(inst.machine_values, loads)), Fraction(0))
        together = sum(
            (w for (a, b), w in sharing_weights(inst).items() if state[a - 1] == state[b - 1]),
            Fraction(0),
        )
        return shares + together
    cut = sum(1 for a, b in inst.conflict_edges if state[a - 1] != state[b - 1])
    return Fraction(cut)


def deviation_gain(inst: Instance, state: State, i: int, k: int) -> Fraction:
    """Value improvement of player ``i`` unilaterally moving to machine ``k``.

    Positive means strictly improving for both orientations; 0 when k = s_i.
    """
    _check_player(inst, i)
    _check_machine(inst, k)
    validate_state(inst, state)
    if state[i - 1] == k:
        return Fraction(0)
    moved = state[: i - 1] + (k,) + state[i:]
    before = _player_value_unchecked(inst, state, i)
    after = _player_value_unchecked(inst, moved, i)
    return before - after if inst.kind.minimizes else after - before


def best_response(inst: Instance, state: State, i: int) -> tuple[int, Fraction]:
    """Machine with the largest deviation gain and that gain (always >= 0).

    Staying put wins zero-gain ties; among strictly improving machines the
    lowest index wins.
    """
    _check_player(inst, i)
    validate_state(inst, state)
    best_k = state[i - 1]
    best_gain = Fraction(0)
    for k in range(1, inst.m + 1):
        if k == state[i - 1]:
            continue
        gain = deviation_gain(inst, state, i, k)
        if gain > best_gain:
            best_k, best_gain = k, gain
    return best_k, best_gain


# ---------------------------------------------------------------------------
# mixed profiles


def validate_profile(inst: Instance, profile: MixedProfile) -> None:
    if len(profile) != inst.n:
        raise ValueError(f"profile has {len(profile)} rows, expected n = {inst.n}")
    for i, row in enumerate(profile, start=1):
        if len(row) != inst.m:
            raise ValueError(f"profile row {i} has {len(row)} entries, expected m = {inst.m}")
        total = Fraction(0)
        for k, q in enumerate(row, start=1):
            if not isinstance(q, (int, Fraction)) or isinstance(q, bool) or q < 0:
                raise ValueError(f"profile[{i}][{k}] = {q!r} not a nonnegative rational")
            total += q
        if total != 1:
            raise ValueError(f"profile row {i} sums to {total}, expected exactly 1")


def uniform_profile(inst: Instance) -> MixedProfile:
    row = (Fraction(1, inst.m),) * inst.m
    return (row,) * inst.n


def point_mass_profile(inst: Instance, state: State) -> MixedProfile:
    validate_state(inst, state)
    rows = []
    for k in state:
        row = [Fraction(0)] * inst.m
        row[k - 1] = Fraction(1)
        rows.append(tuple(row))
    return tuple(rows)


def canonical_deviation_profile(inst: Instance) -> MixedProfile:
    """The deviation profile used by the smoothness certificates.

    Uniform over all machines, except conflict sharing with fewer players
    than machines: there the m - n lowest-value machines are excluded and the
    profile is uniform over the n highest-value ones (ties broken by lowest
    machine index).  Friendship sharing keeps the full uniform profile -- its
    certificate needs the empty low-value machines as deviation targets.
    """
    if inst.kind is GameKind.SWC and inst.n < inst.m:
        order = sorted(range(inst.m), key=lambda k: (-inst.machine_values[k], k))
        support = sorted(order[: inst.n])
        row = [Fraction(0)] * inst.m
        for k in support:
            row[k] = Fraction(1, inst.n)
        return (tuple(row),) * inst.n
    return uniform_profile(inst)
