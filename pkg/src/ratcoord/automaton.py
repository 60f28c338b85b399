"""Vector-output NFAs and a constructive Parikh-image computation.

Transitions emit integer vectors; the Parikh image of a run is the sum of
the emitted vectors, and the Parikh image of the automaton is the set of
Parikh images over all accepting runs (the empty run counts when some state
is both initial and final).

The image is computed support by support: every accepting run reduces, by
repeatedly removing simple cycles that leave its transition support intact,
to a run over the same support of length at most ``num_states * (support
size + 1)``; the removed cycles become the periods.  The run-enumeration
oracle provides the ground truth this construction is tested against.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from . import _kernels
from .errors import BudgetExceeded
from .periodic_graph import PeriodicGraph
from .semilinear import LinearSet, SemilinearSet, _positive_functional

ParikhVector = tuple[int, ...]


@dataclass(frozen=True)
class VectorNFA:
    """Finite automaton whose transitions output integer vectors.

    States are 1-based.  The transition list may contain repeats; the set of
    distinct transitions is what all computations consume.
    """

    out_dim: int
    num_states: int
    initial: frozenset[int]
    final: frozenset[int]
    transitions: tuple[tuple[int, tuple[int, ...], int], ...]

    def __post_init__(self):
        if self.out_dim < 1:
            raise ValueError("out_dim must be positive")
        if self.num_states < 1:
            raise ValueError("num_states must be positive")
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "final", frozenset(self.final))
        for state in self.initial | self.final:
            if not (1 <= state <= self.num_states):
                raise ValueError(f"state {state} out of range")
        normalized = []
        for source, output, target in self.transitions:
            output = tuple(int(x) for x in output)
            if len(output) != self.out_dim:
                raise ValueError(f"output {output} has wrong arity")
            if not (1 <= source <= self.num_states and 1 <= target <= self.num_states):
                raise ValueError(f"transition {(source, output, target)} out of range")
            normalized.append((source, output, target))
        object.__setattr__(self, "transitions", tuple(normalized))

    @property
    def distinct_transitions(self):
        return tuple(sorted(set(self.transitions)))


def build_coordination_nfa(
    g: PeriodicGraph, origin_orbit: int, target_orbit: int
) -> VectorNFA:
    """Automaton whose Parikh image is the set of (cell, length-bound) pairs.

    One state per vertex orbit; each edge orbit contributes both traversal
    directions with outputs (offset, 1) and (-offset, 1); every state gets a
    waiting self-loop with output (0, ..., 0, 1).  A run from the origin to
    the target orbit of length y then witnesses a path of length at most y
    ending in the cell given by the first d output coordinates.
    """
    for orbit in (origin_orbit, target_orbit):
        if not (1 <= orbit <= g.num_orbits):
            raise ValueError(f"orbit index {orbit} out of range")
    transitions = []
    for source, target, offset in g.edge_orbits:
        transitions.append((source, offset + (1,), target))
        transitions.append((target, tuple(-x for x in offset) + (1,), source))
    stay = (0,) * g.dim + (1,)
    for state in range(1, g.num_orbits + 1):
        transitions.append((state, stay, state))
    return VectorNFA(
        out_dim=g.dim + 1,
        num_states=g.num_orbits,
        initial=frozenset({origin_orbit}),
        final=frozenset({target_orbit}),
        transitions=tuple(transitions),
    )


def _run_profiles(a: VectorNFA, max_len, max_entries, prune):
    distinct = a.distinct_transitions
    accepted = _kernels.accepting_run_profiles(
        a.num_states,
        [s - 1 for s, _, _ in distinct],
        [t - 1 for _, _, t in distinct],
        [output for _, output, _ in distinct],
        [s - 1 for s in sorted(a.initial)],
        [s - 1 for s in sorted(a.final)],
        max_len,
        max_entries,
        a.num_states if prune else 0,
    )
    return distinct, accepted


def run_parikh_oracle(
    a: VectorNFA, max_len: int, max_entries: int = 5_000_000
) -> set[ParikhVector]:
    """Exact set of Parikh images of accepting runs of length <= max_len.

    Exhaustive over runs, deduplicated on (state, used transitions, length,
    accumulated vector); runs collapsed this way admit identical
    continuations, so the set of Parikh images is preserved exactly.  Raises
    BudgetExceeded when the search outgrows ``max_entries``.
    """
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    _, accepted = _run_profiles(a, max_len, max_entries, prune=False)
    return {parikh for _, _, parikh in accepted}


def _elementary_circuits(num_states, transitions, cap):
    """Elementary circuits as tuples of transition indices.

    Each circuit visits pairwise distinct states and is anchored at its
    smallest state, so every circuit appears exactly once; parallel
    transitions yield distinct circuits.
    """
    by_source = defaultdict(list)
    for idx, (source, _, target) in enumerate(transitions):
        by_source[source].append((idx, target))
    circuits = []

    def dfs(anchor, state, on_path, path):
        for idx, nxt in by_source[state]:
            if nxt == anchor:
                if len(circuits) >= cap:
                    raise BudgetExceeded(
                        f"more than {cap} elementary circuits"
                    )
                circuits.append(tuple(path + [idx]))
            elif nxt > anchor and nxt not in on_path:
                on_path.add(nxt)
                dfs(anchor, nxt, on_path, path + [idx])
                on_path.remove(nxt)

    for anchor in range(1, num_states + 1):
        dfs(anchor, anchor, {anchor}, [])
    return circuits


def parikh_image(
    a: VectorNFA,
    max_entries: int = 2_000_000,
    cycle_cap: int = 100_000,
    prune: bool = True,
) -> SemilinearSet:
    """Semilinear set equal to the Parikh image of the automaton.

    For every transition support T realized by some accepting run: the bases
    are the Parikh vectors of accepting runs with support exactly T and
    length at most ``num_states * (|T| + 1)``, and the periods are the Parikh
    vectors of elementary circuits using only transitions of T.  Bases that
    are another base plus a period are dropped (their linear set is
    contained in the other's); this is the only pruning and it never changes
    the union.

    The construction is exponential in the number of distinct transitions
    and intended for small automata; it raises BudgetExceeded beyond
    ``max_entries`` enumeration states or ``cycle_cap`` circuits.
    """
    distinct, accepted = _run_profiles(
        a, a.num_states * (len(a.distinct_transitions) + 1), max_entries, prune=True
    )
    bases_by_support: dict[int, set] = {}
    for mask, length, parikh in accepted:
        if length <= a.num_states * (bin(mask).count("1") + 1):
            bases_by_support.setdefault(mask, set()).add(parikh)

    circuits = _elementary_circuits(a.num_states, distinct, cycle_cap)
    circuit_masks = []
    circuit_vectors = []
    for circuit in circuits:
        mask = 0
        vec = [0] * a.out_dim
        for idx in circuit:
            mask |= 1 << idx
            output = distinct[idx][1]
            for d in range(a.out_dim):
                vec[d] += output[d]
        circuit_masks.append(mask)
        circuit_vectors.append(tuple(vec))

    parts = []
    zero = (0,) * a.out_dim
    for support in sorted(bases_by_support):
        periods = sorted(
            {
                vec
                for vec, cmask in zip(circuit_vectors, circuit_masks)
                if cmask & ~support == 0 and vec != zero
            }
        )
        bases = bases_by_support[support]
        if prune and periods:
            weights = _positive_functional(tuple(periods), a.out_dim)
            if weights is not None:
                # a base reachable from another base by adding periods is
                # redundant; chains bottom out because each period strictly
                # increases the functional, so checking against the full base
                # set (not just kept ones) is sound
                all_bases = set(bases)
                bases = {
                    base
                    for base in bases
                    if not any(
                        tuple(x - y for x, y in zip(base, p)) in all_bases
                        for p in periods
                    )
                }
        for base in sorted(bases):
            part = LinearSet(base, tuple(periods))
            if part not in parts:
                parts.append(part)
    return SemilinearSet(tuple(parts))
