# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twins of the pure-Python kernels.

Same algorithms, same results, bit for bit; states are packed into 64-bit
integers for C-speed hashing.  Inputs that do not fit the packing raise
OverflowError, which the dispatching wrapper turns into a pure-Python call.
"""

from libcpp.unordered_set cimport unordered_set
from libcpp.vector cimport vector

ctypedef long long i64
ctypedef unsigned long long u64

from ratcoord.errors import BudgetExceeded

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil

BACKEND = "compiled"


cdef int _bits(long long value):
    """Bits needed to store values 0..value (at least 1)."""
    cdef int n = 1
    while value >= (1LL << n):
        n += 1
    return n


def bfs_layer_counts(int dim, neighbor_specs, int origin_orbit, int depth,
                     long long max_visited):
    cdef int num_orbits = len(neighbor_specs)
    cdef long long max_offset = 0
    cdef long long value
    for spec in neighbor_specs:
        for _, offset in spec:
            for x in offset:
                value = x if x >= 0 else -x
                if value > max_offset:
                    max_offset = value
    cdef long long radius = <long long>depth * max_offset
    cdef long long span = 2 * radius + 1

    # capacity check: num_orbits * span^dim must stay far below 2^63
    cdef double capacity = num_orbits
    cdef int i
    for i in range(dim):
        capacity *= span
        if capacity > 2.0e18:
            raise OverflowError("bfs key does not fit in 64 bits")

    cdef vector[i64] stride = vector[i64](dim)
    cdef long long acc = num_orbits
    for i in range(dim):
        stride[i] = acc
        acc *= span

    # per-orbit packed deltas: crossing an edge adds a constant to the key
    cdef vector[vector[i64]] deltas = vector[vector[i64]](num_orbits)
    cdef long long delta
    cdef int orbit
    for orbit in range(num_orbits):
        for target, offset in neighbor_specs[orbit]:
            delta = <long long>target - orbit
            for i in range(dim):
                delta += <long long>offset[i] * stride[i]
            deltas[orbit].push_back(delta)

    cdef long long origin = origin_orbit
    for i in range(dim):
        origin += radius * stride[i]

    cdef unordered_set[i64] visited
    cdef vector[i64] frontier, nxt
    visited.insert(origin)
    frontier.push_back(origin)
    counts = [1]
    cdef size_t idx, j
    cdef long long vertex, neighbor
    cdef int level
    for level in range(depth):
        nxt.clear()
        for idx in range(frontier.size()):
            vertex = frontier[idx]
            orbit = <int>(vertex % num_orbits)
            for j in range(deltas[orbit].size()):
                neighbor = vertex + deltas[orbit][j]
                if visited.find(neighbor) == visited.end():
                    if <long long>visited.size() >= max_visited:
                        raise BudgetExceeded(
                            f"BFS visited more than {max_visited} cover vertices"
                        )
                    visited.insert(neighbor)
                    nxt.push_back(neighbor)
        counts.append(nxt.size())
        frontier.swap(nxt)
    return counts


def accepting_run_profiles(int num_states, sources, targets, outputs,
                           initial, final, int max_len,
                           long long max_entries, int prune_states):
    cdef int ntrans = len(sources)
    cdef int dim = len(outputs[0]) if ntrans else 0

    cdef long long max_out = 1
    cdef long long value
    for output in outputs:
        for x in output:
            value = x if x >= 0 else -x
            if value > max_out:
                max_out = value
    cdef long long coord_radius = <long long>max_len * max_out
    cdef int coord_bits = _bits(2 * coord_radius)
    cdef int state_bits = _bits(num_states - 1)
    cdef int length_bits = _bits(max_len)
    cdef int total_bits = state_bits + ntrans + length_bits + dim * coord_bits
    if total_bits > 62:
        raise OverflowError("run profile does not fit in 64 bits")

    # layout (low to high): state | mask | length | coords (each + radius)
    cdef int mask_shift = state_bits
    cdef int length_shift = mask_shift + ntrans
    cdef int coord_shift = length_shift + length_bits
    cdef unsigned long long length_one = 1ULL << length_shift

    cdef vector[i64] out_flat = vector[i64](ntrans * dim)
    cdef vector[int] src = vector[int](ntrans)
    cdef vector[int] dst = vector[int](ntrans)
    cdef vector[u64] tbit = vector[u64](ntrans)
    cdef int t, i
    for t in range(ntrans):
        src[t] = sources[t]
        dst[t] = targets[t]
        tbit[t] = 1ULL << (mask_shift + t)
        for i in range(dim):
            out_flat[t * dim + i] = outputs[t][i]

    cdef vector[vector[int]] by_state = vector[vector[int]](num_states)
    for t in range(ntrans):
        by_state[src[t]].push_back(t)

    cdef vector[bint] is_final = vector[bint](num_states)
    for i in range(num_states):
        is_final[i] = 0
    for s in final:
        is_final[<int>s] = 1

    cdef unsigned long long base = 0
    for i in range(dim):
        base += (<unsigned long long>coord_radius) << (coord_shift + i * coord_bits)

    cdef unordered_set[u64] visited
    cdef unordered_set[u64] accepted
    cdef vector[u64] frontier, nxt
    cdef unsigned long long state_mask = (1ULL << state_bits) - 1
    cdef unsigned long long key, profile
    for s in sorted(set(initial)):
        key = base + <unsigned long long>(<int>s)
        if visited.find(key) == visited.end():
            visited.insert(key)
            frontier.push_back(key)
            if is_final[<int>s]:
                accepted.insert(key >> mask_shift << mask_shift)

    cdef long long slack = 0
    if prune_states:
        slack = <long long>prune_states * (ntrans + 1) - ntrans

    cdef size_t idx, j
    cdef int state, support
    cdef unsigned long long cur, mask2, key2
    cdef unsigned long long coord_field_mask = (1ULL << coord_bits) - 1
    cdef long long coord
    cdef int length, shift
    for length in range(1, max_len + 1):
        nxt.clear()
        for idx in range(frontier.size()):
            cur = frontier[idx]
            state = <int>(cur & state_mask)
            for j in range(by_state[state].size()):
                t = by_state[state][j]
                mask2 = cur | tbit[t]
                if prune_states:
                    support = __builtin_popcountll(
                        (mask2 >> mask_shift) & ((1ULL << ntrans) - 1)
                    )
                    if length > slack + support:
                        continue
                # rebuild each coordinate field so negative outputs cannot
                # carry into the neighboring field
                key2 = (mask2 & ~state_mask) + length_one \
                    + <unsigned long long>dst[t]
                for i in range(dim):
                    shift = coord_shift + i * coord_bits
                    coord = <long long>((cur >> shift) & coord_field_mask) \
                        + out_flat[t * dim + i]
                    key2 = (key2 & ~(coord_field_mask << shift)) \
                        + ((<unsigned long long>coord) << shift)
                key = key2
                if visited.find(key) != visited.end():
                    continue
                if <long long>visited.size() >= max_entries:
                    raise BudgetExceeded(
                        f"run enumeration exceeded {max_entries} states"
                    )
                visited.insert(key)
                nxt.push_back(key)
                if is_final[dst[t]]:
                    accepted.insert(key >> mask_shift << mask_shift)
        frontier.swap(nxt)

    # decode accepted profiles into Python tuples
    result = set()
    cdef unsigned long long packed, mask_field
    for packed in accepted:
        mask_field = (packed >> mask_shift) & ((1ULL << ntrans) - 1)
        length = <int>((packed >> length_shift) & ((1ULL << length_bits) - 1))
        coords = []
        for i in range(dim):
            coord = <long long>((packed >> (coord_shift + i * coord_bits))
                                & coord_field_mask) - coord_radius
            coords.append(coord)
        result.add((int(mask_field), length, tuple(coords)))
    return result


cdef class _BoxEnum:
    cdef int dim, k
    cdef bint have_w, memo_on
    cdef long long whi, nodes, max_nodes
    cdef vector[i64] lo, hi, cur, wvec, wper, pack_lo, pack_span
    cdef vector[i64] periods          # k * dim, row major
    cdef vector[bint] sufnn, sufnp          # (k + 1) * dim
    cdef unordered_set[u64] memo
    cdef unordered_set[u64] found

    cdef bint pack_point(self, unsigned long long* out_key, int level):
        cdef unsigned long long key = <unsigned long long>level
        cdef int i
        cdef long long offset
        for i in range(self.dim):
            offset = self.cur[i] - self.pack_lo[i]
            if offset < 0 or offset >= self.pack_span[i]:
                return 0  # outside the memoizable window: skip memo, stay exact
            key = key * <unsigned long long>self.pack_span[i] \
                + <unsigned long long>offset
        out_key[0] = key
        return 1

    cdef int recurse(self, int j) except -1:
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise BudgetExceeded(
                f"box enumeration exceeded {self.max_nodes} nodes"
            )
        cdef int i
        cdef long long n
        cdef unsigned long long key
        cdef bint in_box
        if j == self.k:
            in_box = 1
            for i in range(self.dim):
                if self.cur[i] < self.lo[i] or self.cur[i] > self.hi[i]:
                    in_box = 0
                    break
            if in_box:
                key = 0
                for i in range(self.dim):
                    key = key * <unsigned long long>self.pack_span[i] \
                        + <unsigned long long>(self.cur[i] - self.pack_lo[i])
                self.found.insert(key)
            return 0
        for i in range(self.dim):
            if self.sufnn[j * self.dim + i] and self.cur[i] > self.hi[i]:
                return 0
            if self.sufnp[j * self.dim + i] and self.cur[i] < self.lo[i]:
                return 0
        if self.memo_on:
            if self.pack_point(&key, j):
                if self.memo.find(key) != self.memo.end():
                    return 0
                self.memo.insert(key)
        cdef long long bound = -1
        cdef long long b, p, room
        cdef bint unbounded = 1
        for i in range(self.dim):
            p = self.periods[j * self.dim + i]
            if p > 0 and self.sufnn[(j + 1) * self.dim + i]:
                b = (self.hi[i] - self.cur[i]) // p
                if unbounded or b < bound:
                    bound = b
                    unbounded = 0
            elif p < 0 and self.sufnp[(j + 1) * self.dim + i]:
                b = (self.cur[i] - self.lo[i]) // (-p)
                if unbounded or b < bound:
                    bound = b
                    unbounded = 0
        if self.have_w:
            room = self.whi
            for i in range(self.dim):
                room -= self.wvec[i] * self.cur[i]
            b = room // self.wper[j]
            if b < 0:
                b = -1
            if unbounded or b < bound:
                bound = b
                unbounded = 0
        if unbounded:
            bound = self.max_nodes  # budget backstops termination
        for n in range(bound + 1):
            self.recurse(j + 1)
            for i in range(self.dim):
                self.cur[i] += self.periods[j * self.dim + i]
        for i in range(self.dim):
            self.cur[i] -= (bound + 1) * self.periods[j * self.dim + i]
        return 0


def linear_points_in_box(base, periods, lo, hi, weights, long long max_nodes):
    cdef int dim = len(base)
    cdef int k = len(periods)
    if dim > 12:
        raise OverflowError("dimension too large for the packed enumerator")

    cdef _BoxEnum ctx = _BoxEnum()
    ctx.dim = dim
    ctx.k = k
    ctx.nodes = 0
    ctx.max_nodes = max_nodes
    ctx.lo = vector[i64](dim)
    ctx.hi = vector[i64](dim)
    ctx.cur = vector[i64](dim)
    ctx.pack_lo = vector[i64](dim)
    ctx.pack_span = vector[i64](dim)
    ctx.periods = vector[i64](k * dim)
    ctx.sufnn = vector[bint]((k + 1) * dim)
    ctx.sufnp = vector[bint]((k + 1) * dim)

    cdef int i, j
    cdef long long max_period = 0, value, margin
    for j in range(k):
        for i in range(dim):
            value = periods[j][i]
            ctx.periods[j * dim + i] = value
            if value < 0:
                value = -value
            if value > max_period:
                max_period = value
    for i in range(dim):
        ctx.lo[i] = lo[i]
        ctx.hi[i] = hi[i]
        ctx.cur[i] = base[i]
        if abs(<object>base[i]) > 2**40 or abs(<object>lo[i]) > 2**40 \
                or abs(<object>hi[i]) > 2**40:
            raise OverflowError("coordinates too large for the packed enumerator")

    # memo window: generous padding around the box and base; points outside
    # simply skip memoization
    margin = 4 * (max_period + 1) * (k + 1)
    cdef double capacity = k + 1
    for i in range(dim):
        value = ctx.cur[i]
        ctx.pack_lo[i] = min(ctx.lo[i], value) - margin
        ctx.pack_span[i] = max(ctx.hi[i], value) + margin - ctx.pack_lo[i] + 1
        capacity *= ctx.pack_span[i]
    ctx.memo_on = capacity <= 1.8e18
    if capacity > 1.8e18:
        # found-point packing must always fit; refuse and fall back
        raise OverflowError("box too large for the packed enumerator")

    for i in range(dim):
        ctx.sufnn[k * dim + i] = 1
        ctx.sufnp[k * dim + i] = 1
    for j in range(k - 1, -1, -1):
        for i in range(dim):
            ctx.sufnn[j * dim + i] = (
                ctx.sufnn[(j + 1) * dim + i] and ctx.periods[j * dim + i] >= 0
            )
            ctx.sufnp[j * dim + i] = (
                ctx.sufnp[(j + 1) * dim + i] and ctx.periods[j * dim + i] <= 0
            )

    ctx.have_w = weights is not None
    if ctx.have_w:
        ctx.wvec = vector[i64](dim)
        ctx.wper = vector[i64](k)
        ctx.whi = 0
        for i in range(dim):
            ctx.wvec[i] = weights[i]
            if ctx.wvec[i] > 0:
                ctx.whi += ctx.wvec[i] * ctx.hi[i]
            else:
                ctx.whi += ctx.wvec[i] * ctx.lo[i]
        for j in range(k):
            value = 0
            for i in range(dim):
                value += ctx.wvec[i] * ctx.periods[j * dim + i]
            ctx.wper[j] = value

    ctx.recurse(0)

    out = set()
    cdef unsigned long long packed
    cdef long long coord
    for packed in ctx.found:
        coords = [0] * dim
        for i in range(dim - 1, -1, -1):
            coord = <long long>(packed % <unsigned long long>ctx.pack_span[i])
            coords[i] = coord + ctx.pack_lo[i]
            packed //= <unsigned long long>ctx.pack_span[i]
        out.add(tuple(coords))
    return out
