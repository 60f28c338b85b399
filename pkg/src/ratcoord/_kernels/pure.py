"""Pure-Python reference implementations of the hot kernels.

The compiled twin in ``_speed.pyx`` must produce bit-identical results; the
test suite checks the two backends against each other.  All indices here are
0-based (the public modules use 1-based orbits/states and convert).
"""

from __future__ import annotations

from ..errors import BudgetExceeded

BACKEND = "python"


def bfs_layer_counts(dim, neighbor_specs, origin_orbit, depth, max_visited):
    """Layer sizes of breadth-first search on the infinite cover.

    ``neighbor_specs[orbit]`` is a sequence of ``(target_orbit, offset)``
    pairs with both traversal directions already expanded.  Returns the list
    ``[c_0, ..., c_depth]`` of vertices at each exact distance from
    ``(origin_orbit, 0)``.
    """
    origin = (origin_orbit, (0,) * dim)
    visited = {origin}
    frontier = [origin]
    counts = [1]
    for _ in range(depth):
        nxt = []
        for orbit, shift in frontier:
            for target, offset in neighbor_specs[orbit]:
                vertex = (target, tuple(a + b for a, b in zip(shift, offset)))
                if vertex not in visited:
                    if len(visited) >= max_visited:
                        raise BudgetExceeded(
                            f"BFS visited more than {max_visited} cover vertices"
                        )
                    visited.add(vertex)
                    nxt.append(vertex)
        counts.append(len(nxt))
        frontier = nxt
    return counts


def accepting_run_profiles(
    num_states,
    sources,
    targets,
    outputs,
    initial,
    final,
    max_len,
    max_entries,
    prune_states,
):
    """Profiles (support mask, length, Parikh vector) of accepting runs.

    A run is a walk from an initial to a final state; its profile records
    which transition indices it used (as a bitmask), its length, and the sum
    of the output vectors.  Two runs with equal profiles admit the same
    continuations and contribute identically downstream, so deduplicating on
    (state, profile) preserves the profile set exactly.  With
    ``prune_states = q > 0`` partial runs that can no longer satisfy
    ``length <= q * (support + 1)`` for any future support size are dropped;
    every accepting profile within the bound for its own support survives.
    Pass 0 to keep every run up to ``max_len`` (oracle mode).
    """
    ntrans = len(sources)
    out_by_state = [[] for _ in range(num_states)]
    for t in range(ntrans):
        out_by_state[sources[t]].append((t, 1 << t, targets[t], outputs[t]))
    final_set = set(final)

    zero = (0,) * (len(outputs[0]) if outputs else 0)
    accepted = set()
    if any(s in final_set for s in initial):
        accepted.add((0, 0, zero))
    frontier = [(s, 0, zero) for s in sorted(set(initial))]
    visited = {(s, 0, 0, zero) for s in set(initial)}
    if prune_states:
        slack = prune_states * (ntrans + 1) - ntrans
    for length in range(1, max_len + 1):
        nxt = []
        for state, mask, parikh in frontier:
            for t, bit, target, output in out_by_state[state]:
                mask2 = mask | bit
                if prune_states:
                    support2 = bin(mask2).count("1")
                    if length > slack + support2:
                        continue
                parikh2 = tuple(a + b for a, b in zip(parikh, output))
                key = (target, mask2, length, parikh2)
                if key in visited:
                    continue
                if len(visited) >= max_entries:
                    raise BudgetExceeded(
                        f"run enumeration exceeded {max_entries} states"
                    )
                visited.add(key)
                nxt.append((target, mask2, parikh2))
                if target in final_set:
                    accepted.add((mask2, length, parikh2))
        frontier = nxt
    return accepted


def linear_points_in_box(base, periods, lo, hi, weights, max_nodes):
    """All points ``base + sum n_j * periods[j]`` inside the box ``[lo, hi]``.

    ``weights`` is an integer functional with ``weights . p >= 1`` for every
    period (or None).  Bounds on each multiplicity come from coordinates
    where all remaining periods share a sign, and from the weight functional;
    levels with no derivable bound fall back to the node budget, so the
    search always terminates (possibly with BudgetExceeded).
    """
    dim = len(base)
    k = len(periods)
    # suffix_nonneg[j][i]: periods[j:] are all >= 0 in coordinate i
    suffix_nonneg = [[True] * dim for _ in range(k + 1)]
    suffix_nonpos = [[True] * dim for _ in range(k + 1)]
    for j in range(k - 1, -1, -1):
        for i in range(dim):
            suffix_nonneg[j][i] = suffix_nonneg[j + 1][i] and periods[j][i] >= 0
            suffix_nonpos[j][i] = suffix_nonpos[j + 1][i] and periods[j][i] <= 0
    if weights is not None:
        whi = sum(
            w * (h if w > 0 else l) for w, l, h in zip(weights, lo, hi)
        )
        wperiods = [sum(w * p for w, p in zip(weights, per)) for per in periods]

    out = set()
    nodes = 0
    seen = set()  # (level, point): dependent periods revisit subtrees

    def recurse(j, cur):
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            raise BudgetExceeded(f"box enumeration exceeded {max_nodes} nodes")
        if j == k:
            if all(l <= c <= h for l, c, h in zip(lo, cur, hi)):
                out.add(tuple(cur))
            return
        key = (j, tuple(cur))
        if key in seen:
            return
        seen.add(key)
        for i in range(dim):
            if suffix_nonneg[j][i] and cur[i] > hi[i]:
                return
            if suffix_nonpos[j][i] and cur[i] < lo[i]:
                return
        period = periods[j]
        bound = None
        for i in range(dim):
            if period[i] > 0 and suffix_nonneg[j + 1][i]:
                b = (hi[i] - cur[i]) // period[i]
                if bound is None or b < bound:
                    bound = b
            elif period[i] < 0 and suffix_nonpos[j + 1][i]:
                b = (cur[i] - lo[i]) // (-period[i])
                if bound is None or b < bound:
                    bound = b
        if weights is not None:
            room = whi - sum(w * c for w, c in zip(weights, cur))
            b = room // wperiods[j]
            if bound is None or b < bound:
                bound = b
        if bound is None:
            bound = max_nodes  # no structural bound; the budget backstops
        point = list(cur)
        for _ in range(bound + 1):
            recurse(j + 1, point)
            point = [c + p for c, p in zip(point, period)]

    recurse(0, list(base))
    return out
