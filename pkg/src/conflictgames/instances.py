"""Named instance generators, seeded random instances, and the instance file
format.

The file format is a single UTF-8 JSON document with fixed field names
(kind, n, m, alpha, beta, gamma, conflict_edges, friendship_edges,
machine_values, edge_weights).  Rationals are written as "num/den" strings so
that exact values survive a round trip; floats are rejected on parse.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .games import (
    GameKind,
    Instance,
    InvalidInstanceError,
    Rational,
    as_fraction,
    make_instance,
)


# ---------------------------------------------------------------------------
# named generators


def gen_bwc_multipartite(m: int) -> Instance:
    """Complete m-partite conflict graph, m parts of m nodes, m machines."""
    if m < 2:
        raise InvalidInstanceError("m", f"multipartite generator needs m >= 2, got {m}")
    n = m * m
    part = lambda p: (p - 1) // m
    edges = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1) if part(a) != part(b)]
    return make_instance(GameKind.BWC, n, m, conflict_edges=edges)


def gen_bwf_cliques(m: int) -> Instance:
    """m disjoint friendship cliques of size m, m machines."""
    if m < 2:
        raise InvalidInstanceError("m", f"clique generator needs m >= 2, got {m}")
    n = m * m
    part = lambda p: (p - 1) // m
    edges = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1) if part(a) == part(b)]
    return make_instance(GameKind.BWF, n, m, friendship_edges=edges)


def gen_bwcf_lower(m: int, alpha: Rational, beta: Rational, gamma: Rational) -> Instance:
    """Friendship cliques within parts, conflicts across parts (m parts of m)."""
    if m < 2:
        raise InvalidInstanceError("m", f"lower-bound generator needs m >= 2, got {m}")
    n = m * m
    part = lambda p: (p - 1) // m
    fr = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1) if part(a) == part(b)]
    conf = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1) if part(a) != part(b)]
    return make_instance(
        GameKind.BWCF, n, m, conflict_edges=conf, friendship_edges=fr,
        alpha=alpha, beta=beta, gamma=gamma,
    )


def gen_path4() -> Instance:
    """Conflict path on four nodes, two machines."""
    return make_instance(GameKind.BWC, 4, 2, conflict_edges=[(1, 2), (2, 3), (3, 4)])


def gen_swc_pos(m: int, eps: Rational) -> Instance:
    """n = m players on a conflict clique; one valuable machine, the rest worth 0.

    Machine 1 carries m^2 - m + eps; the unique pure equilibrium crowds onto it.
    """
    if m < 2:
        raise InvalidInstanceError("m", f"needs m >= 2, got {m}")
    e = as_fraction(eps, "eps")
    if e <= 0:
        raise InvalidInstanceError("eps", f"must be > 0, got {e}")
    edges = [(a, b) for a in range(1, m + 1) for b in range(a + 1, m + 1)]
    values = [Fraction(m * m - m) + e] + [Fraction(0)] * (m - 1)
    return make_instance(GameKind.SWC, m, m, conflict_edges=edges, machine_values=values)


def gen_swf_nostrong(eps: Rational) -> Instance:
    """Two friend pairs, machine values 2+eps and 4+3eps: no strong equilibrium."""
    e = as_fraction(eps, "eps")
    if e <= 0:
        raise InvalidInstanceError("eps", f"must be > 0, got {e}")
    return make_instance(
        GameKind.SWF, 4, 2,
        friendship_edges=[(1, 2), (3, 4)],
        machine_values=[2 + e, 4 + 3 * e],
    )


def gen_maxcut_edge() -> Instance:
    """Two nodes, one edge, two partitions."""
    return make_instance(GameKind.MAXCUT, 2, 2, conflict_edges=[(1, 2)])


# ---------------------------------------------------------------------------
# seeded random instances

# value / weight grid: hundredths in (0, 10]
_GRID_DEN = 100
_GRID_MAX = 10 * _GRID_DEN

_ALPHA_CHOICES = (Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2), Fraction(3))
_BETA_GAMMA_CHOICES = (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3))


def _bernoulli(rng: random.Random, prob: Fraction) -> bool:
    return rng.randrange(prob.denominator) < prob.numerator


def gen_random(
    n: int,
    m: int,
    kind: GameKind,
    edge_prob: Rational,
    seed: int,
    alpha: Optional[Rational] = None,
    beta: Optional[Rational] = None,
    gamma: Optional[Rational] = None,
    weighted: bool = False,
) -> Instance:
    """Erdos-Renyi edge sets per kind, a pure function of its arguments.

    BwCF samples conflict and friendship edges disjointly (conflict first).
    Sharing kinds draw machine values, and optionally edge weights, from the
    hundredths grid in (0, 10].  When the BwCF weights are not given they are
    drawn from small grids as well.
    """
    prob = as_fraction(edge_prob, "edge_prob")
    if not (0 <= prob <= 1):
        raise InvalidInstanceError("edge_prob", f"must be in [0, 1], got {prob}")
    rng = random.Random(seed)
    pairs = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]

    conflict: list[tuple[int, int]] = []
    friendship: list[tuple[int, int]] = []
    if kind is GameKind.BWCF:
        for e in pairs:
            if _bernoulli(rng, prob):
                conflict.append(e)
            elif _bernoulli(rng, prob):
                friendship.append(e)
    elif kind in (GameKind.BWF, GameKind.SWF):
        friendship = [e for e in pairs if _bernoulli(rng, prob)]
    else:
        conflict = [e for e in pairs if _bernoulli(rng, prob)]

    values = None
    weights = None
    if kind.sharing:
        values = [Fraction(rng.randrange(1, _GRID_MAX + 1), _GRID_DEN) for _ in range(m)]
        if weighted:
            own = conflict if kind is GameKind.SWC else friendship
            weights = {
                e: Fraction(rng.randrange(1, _GRID_MAX + 1), _GRID_DEN) for e in own
            }

    if kind is GameKind.BWCF:
        if alpha is None:
            alpha = rng.choice(_ALPHA_CHOICES)
        if beta is None:
            beta = rng.choice(_BETA_GAMMA_CHOICES)
        if gamma is None:
            gamma = rng.choice(_BETA_GAMMA_CHOICES)

    return make_instance(
        kind, n, m,
        conflict_edges=conflict,
        friendship_edges=friendship,
        machine_values=values,
        edge_weights=weights,
        alpha=alpha, beta=beta, gamma=gamma,
    )


@dataclass(frozen=True)
class InstanceSpec:
    """A generator name plus its parameters; reproducible instance reference."""

    name: str
    params: tuple[tuple[str, object], ...] = ()

    def label(self) -> str:
        inner = ",".join(f"{k}={v}" for k, v in self.params)
        return f"{self.name}({inner})"

    def build(self) -> Instance:
        kwargs = dict(self.params)
        builder = _GENERATORS.get(self.name)
        if builder is None:
            raise InvalidInstanceError("generator", f"unknown generator {self.name!r}")
        return builder(**kwargs)


_GENERATORS = {
    "bwc-multipartite": gen_bwc_multipartite,
    "bwf-cliques": gen_bwf_cliques,
    "bwcf-lower": gen_bwcf_lower,
    "path4": gen_path4,
    "swc-pos": gen_swc_pos,
    "swf-nostrong": gen_swf_nostrong,
    "maxcut-edge": gen_maxcut_edge,
    "random": gen_random,
}

GENERATOR_NAMES = tuple(sorted(_GENERATORS))


# ---------------------------------------------------------------------------
# file format


class InstanceFormatError(ValueError):
    """Parse/schema failure; ``field`` names the offending field."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def write_instance(inst: Instance) -> str:
    """Serialize to the canonical JSON document (deterministic bytes)."""
    doc: dict = {
        "kind": inst.kind.value,
        "n": inst.n,
        "m": inst.m,
        "alpha": _frac_str(inst.alpha),
        "beta": _frac_str(inst.beta),
        "gamma": _frac_str(inst.gamma),
        "conflict_edges": [list(e) for e in sorted(inst.conflict_edges)],
        "friendship_edges": [list(e) for e in sorted(inst.friendship_edges)],
    }
    if inst.machine_values is not None:
        doc["machine_values"] = [_frac_str(p) for p in inst.machine_values]
    if inst.edge_weights is not None:
        doc["edge_weights"] = [[a, b, _frac_str(w)] for (a, b), w in inst.edge_weights]
    return json.dumps(doc, indent=2) + "\n"


def _parse_rational(raw, field: str) -> Fraction:
    if isinstance(raw, float):
        raise InstanceFormatError(field, f"floats are not exact; write '{raw}' as num/den")
    if isinstance(raw, bool) or not isinstance(raw, (int, str)):
        raise InstanceFormatError(field, f"expected a rational string, got {raw!r}")
    try:
        return Fraction(raw)
    except (ValueError, ZeroDivisionError) as exc:
        raise InstanceFormatError(field, f"not a rational: {raw!r}") from exc


def parse_instance(text: str) -> Instance:
    """Parse the JSON document; errors carry the offending field path."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError("document", f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InstanceFormatError("document", "top level must be an object")

    known = {
        "kind", "n", "m", "alpha", "beta", "gamma",
        "conflict_edges", "friendship_edges", "machine_values", "edge_weights",
    }
    for key in doc:
        if key not in known:
            raise InstanceFormatError(key, "unknown field")
    for key in ("kind", "n", "m"):
        if key not in doc:
            raise InstanceFormatError(key, "missing required field")

    try:
        kind = GameKind(doc["kind"])
    except ValueError:
        raise InstanceFormatError("kind", f"unknown kind {doc['kind']!r}") from None
    n, m = doc["n"], doc["m"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise InstanceFormatError("n", f"must be an integer, got {n!r}")
    if not isinstance(m, int) or isinstance(m, bool):
        raise InstanceFormatError("m", f"must be an integer, got {m!r}")

    def edge_list(key: str) -> list[tuple[int, int]]:
        raw = doc.get(key, [])
        if not isinstance(raw, list):
            raise InstanceFormatError(key, "must be a list of [i, j] pairs")
        out = []
        for idx, pair in enumerate(raw):
            if not (isinstance(pair, list) and len(pair) == 2
                    and all(isinstance(x, int) and not isinstance(x, bool) for x in pair)):
                raise InstanceFormatError(f"{key}[{idx}]", f"not an [i, j] pair: {pair!r}")
            out.append((pair[0], pair[1]))
        return out

    machine_values = None
    if "machine_values" in doc:
        raw = doc["machine_values"]
        if not isinstance(raw, list):
            raise InstanceFormatError("machine_values", "must be a list of rationals")
        machine_values = [
            _parse_rational(v, f"machine_values[{i}]") for i, v in enumerate(raw)
        ]

    edge_weights = None
    if "edge_weights" in doc:
        raw = doc["edge_weights"]
        if not isinstance(raw, list):
            raise InstanceFormatError("edge_weights", "must be a list of [i, j, w] triples")
        edge_weights = {}
        for idx, trip in enumerate(raw):
            if not (isinstance(trip, list) and len(trip) == 3):
                raise InstanceFormatError(f"edge_weights[{idx}]", f"not an [i, j, w] triple")
            a, b, w = trip
            if not all(isinstance(x, int) and not isinstance(x, bool) for x in (a, b)):
                raise InstanceFormatError(f"edge_weights[{idx}]", "endpoints must be integers")
            edge_weights[(a, b)] = _parse_rational(w, f"edge_weights[{idx}]")

    def weight_field(key: str) -> Optional[Fraction]:
        return _parse_rational(doc[key], key) if key in doc else None

    try:
        return make_instance(
            kind, n, m,
            conflict_edges=edge_list("conflict_edges"),
            friendship_edges=edge_list("friendship_edges"),
            machine_values=machine_values,
            edge_weights=edge_weights,
            alpha=weight_field("alpha"),
            beta=weight_field("beta"),
            gamma=weight_field("gamma"),
        )
    except InvalidInstanceError as exc:
        raise InstanceFormatError(exc.field, str(exc)) from exc


def load_instance(path) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_instance(fh.read())


def save_instance(inst: Instance, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(write_instance(inst))
