"""Scaled-integer state evaluation for enumeration-heavy passes.

Everything here is 0-based: a state is any sequence of machine indexes in
0..m-1 and players are 0..n-1.  Each quantity is an exact integer equal to
the true rational times a fixed per-instance scale: player values and the
social value carry ``value_scale``, the potential carries ``potential_scale``.
Comparisons between like-scaled integers are therefore exact, and the
Fraction API is recovered by dividing out the scale (``as_value`` /
``as_potential``).

Equivalence with the public Fraction evaluation in :mod:`conflictgames.games`
is enforced exhaustively by the test suite.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .games import GameKind, Instance, sharing_weights


class StateEvaluator:
    """Per-instance tables plus O(n*m + |E|) per-state evaluation."""

    def __init__(self, inst: Instance):
        self.inst = inst
        self.n = inst.n
        self.m = inst.m
        self.kind = inst.kind
        self.minimizes = inst.kind.minimizes
        n, m = self.n, self.m

        self._conf = [(a - 1, b - 1) for a, b in sorted(inst.conflict_edges)]
        self._fr = [(a - 1, b - 1) for a, b in sorted(inst.friendship_edges)]

        if inst.kind.balancing:
            den = lcm(inst.alpha.denominator, inst.beta.denominator, inst.gamma.denominator)
            self.value_scale = den
            self.potential_scale = 2 * den
            self._a = int(inst.alpha * den)
            self._b = int(inst.beta * den)
            self._g = int(inst.gamma * den)
            self._fr_deg = [0] * n
            for a, b in self._fr:
                self._fr_deg[a] += 1
                self._fr_deg[b] += 1
        elif inst.kind.sharing:
            weights = sharing_weights(inst)
            dens = [p.denominator for p in inst.machine_values]
            dens += [w.denominator for w in weights.values()]
            d = lcm(*dens) if dens else 1
            ell = lcm(*range(1, n + 1))
            self.value_scale = d * ell
            self.potential_scale = d * ell
            p_scaled = [int(p * d) for p in inst.machine_values]
            # share_table[k][x] = p_k / x  (scaled); index 0 unused
            self._share = [[0] + [pk * (ell // x) for x in range(1, n + 1)] for pk in p_scaled]
            hsum = [0]
            for x in range(1, n + 1):
                hsum.append(hsum[-1] + ell // x)
            # pot_share[k][x] = p_k * H_x  (scaled)
            self._pot_share = [[pk * h for h in hsum] for pk in p_scaled]
            self._wedges = [
                (a - 1, b - 1, int(w * d) * ell) for (a, b), w in sorted(weights.items())
            ]
            self._w_deg = [0] * n
            for a, b, w in self._wedges:
                self._w_deg[a] += w
                self._w_deg[b] += w
        else:  # cut game
            self.value_scale = 1
            self.potential_scale = 1
            self._deg = [0] * n
            for a, b in self._conf:
                self._deg[a] += 1
                self._deg[b] += 1

    # -- conversions --------------------------------------------------------

    def as_value(self, scaled: int) -> Fraction:
        return Fraction(scaled, self.value_scale)

    def as_potential(self, scaled: int) -> Fraction:
        return Fraction(scaled, self.potential_scale)

    # -- whole-state aggregates (no deviation tables) ------------------------

    def loads(self, state) -> list[int]:
        loads = [0] * self.m
        for k in state:
            loads[k] += 1
        return loads

    def social(self, state) -> int:
        loads = self.loads(state)
        if self.kind.balancing:
            squares = sum(x * x for x in loads)
            same = sum(1 for a, b in self._conf if state[a] == state[b])
            cross = sum(1 for a, b in self._fr if state[a] != state[b])
            return self._a * squares + 2 * self._b * same + 2 * self._g * cross
        if self.kind.sharing:
            # share[k][1] is p_k at full scale
            base = sum(self._share[k][1] for k in range(self.m) if loads[k])
            if self.kind is GameKind.SWC:
                edge = sum(w for a, b, w in self._wedges if state[a] != state[b])
            else:
                edge = sum(w for a, b, w in self._wedges if state[a] == state[b])
            return base + 2 * edge
        return 2 * sum(1 for a, b in self._conf if state[a] != state[b])

    def potential(self, state) -> int:
        if self.kind.balancing:
            return self.social(state)  # potential_scale is twice value_scale
        loads = self.loads(state)
        if self.kind.sharing:
            shares = sum(self._pot_share[k][x] for k, x in enumerate(loads))
            if self.kind is GameKind.SWC:
                edge = sum(w for a, b, w in self._wedges if state[a] != state[b])
            else:
                edge = sum(w for a, b, w in self._wedges if state[a] == state[b])
            return shares + edge
        return sum(1 for a, b in self._conf if state[a] != state[b])

    # -- per-state deviation tables ------------------------------------------

    def analyze(self, state):
        """Aux bundle for :meth:`value`: (state, loads, conflict table,
        friendship/weight table).  Tables are flat n*m lists: entry i*m+k is
        the (scaled) weight of i's relevant edges into machine k."""
        n, m = self.n, self.m
        loads = self.loads(state)
        if self.kind.balancing:
            conf = [0] * (n * m)
            fr = [0] * (n * m)
            for a, b in self._conf:
                conf[a * m + state[b]] += 1
                conf[b * m + state[a]] += 1
            for a, b in self._fr:
                fr[a * m + state[b]] += 1
                fr[b * m + state[a]] += 1
            return (tuple(state), loads, conf, fr)
        if self.kind.sharing:
            tab = [0] * (n * m)
            for a, b, w in self._wedges:
                tab[a * m + state[b]] += w
                tab[b * m + state[a]] += w
            return (tuple(state), loads, tab, None)
        tab = [0] * (n * m)
        for a, b in self._conf:
            tab[a * m + state[b]] += 1
            tab[b * m + state[a]] += 1
        return (tuple(state), loads, tab, None)

    def value(self, aux, i: int, k: int) -> int:
        """Scaled value of player ``i`` if assigned to ``k``, all others fixed
        at the analyzed state.  Exact both for k == s_i and for deviations."""
        state, loads, tab, tab2 = aux
        m = self.m
        if self.kind.balancing:
            load = loads[k] if state[i] == k else loads[k] + 1
            return (
                self._a * load
                + self._b * tab[i * m + k]
                + self._g * (self._fr_deg[i] - tab2[i * m + k])
            )
        if self.kind is GameKind.SWC:
            occ = loads[k] if state[i] == k else loads[k] + 1
            return self._share[k][occ] + self._w_deg[i] - tab[i * m + k]
        if self.kind is GameKind.SWF:
            occ = loads[k] if state[i] == k else loads[k] + 1
            return self._share[k][occ] + tab[i * m + k]
        return self._deg[i] - tab[i * m + k]

    def values(self, aux) -> list[int]:
        state = aux[0]
        return [self.value(aux, i, state[i]) for i in range(self.n)]


def to_internal(state: tuple[int, ...]) -> tuple[int, ...]:
    """Public 1-based state -> internal 0-based."""
    return tuple(k - 1 for k in state)


def to_public(state) -> tuple[int, ...]:
    """Internal 0-based state -> public 1-based."""
    return tuple(k + 1 for k in state)
