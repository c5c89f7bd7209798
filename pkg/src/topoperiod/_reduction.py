"""Compiled kernels for Rips persistence.

The dimension-0 pass is Kruskal-style union-find over edges in filtration
order.  The dimension-1 pass reduces the coboundary matrix: columns are the
positive (non-tree) edges processed in decreasing filtration rank, column
entries are cofacet triangles keyed by (filtration value, lexicographic
vertex code), and the pivot is the minimal key.  Reducing this transposed
ordering yields exactly the same persistence pairs as reducing the boundary
matrix of triangles while touching only one column per positive edge, and
H0-negative (tree) edges can be skipped outright.

Two standard devices keep the reduction cheap:

- A column whose initial pivot is unowned pairs immediately, so the frequent
  zero-persistence pairs cost one scan of the edge's cofacets and no heap.
- Reduced columns are never materialized.  Each paired column stores only the
  edges whose original cofacet columns sum to it; on a pivot collision those
  cofacets are replayed into a lazy min-heap where duplicate entries cancel
  in pairs (field Z/2) during pivot extraction.

Triangle codes pack the sorted vertex triple (x < y < z) as (x*N + y)*N + z,
which orders codes exactly like the lexicographic vertex order used for
filtration ties.  Value comparisons are exact float64 comparisons; triangle
values are maxima of edge values, so ties are exact.
"""
from __future__ import annotations

import numpy as np
from numba import njit

_GOLD = np.uint64(0x9E3779B97F4A7C15)


@njit(cache=True)
def _h0_scan(ei, ej, n_points):
    """Union-find over edges in filtration order.

    Returns (positive, neg): a bool mask of positive (cycle-creating) edges
    and the ranks of negative (merging) edges in order.  The surviving
    representative of a merge is the smaller root index.
    """
    parent = np.arange(n_points)
    n_edges = ei.size
    positive = np.zeros(n_edges, np.bool_)
    neg = np.empty(n_edges, np.int64)
    nn = 0
    for e in range(n_edges):
        a = ei[e]
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        b = ej[e]
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        if a == b:
            positive[e] = True
        else:
            if a > b:
                a, b = b, a
            parent[b] = a
            neg[nn] = e
            nn += 1
    return positive, neg[:nn]


@njit(cache=True)
def _heap_push(hv, hc, size, v, c):
    """Sift (v, c) into the min-heap ordered by (value, code); returns new size."""
    i = size
    while i > 0:
        p = (i - 1) >> 1
        if hv[p] > v or (hv[p] == v and hc[p] > c):
            hv[i] = hv[p]
            hc[i] = hc[p]
            i = p
        else:
            break
    hv[i] = v
    hc[i] = c
    return size + 1


@njit(cache=True)
def _heap_pop(hv, hc, size):
    """Pop the heap root; returns (value, code, new size)."""
    v = hv[0]
    c = hc[0]
    size -= 1
    if size > 0:
        lv = hv[size]
        lc = hc[size]
        i = 0
        while True:
            child = 2 * i + 1
            if child >= size:
                break
            right = child + 1
            if right < size and (
                hv[right] < hv[child] or (hv[right] == hv[child] and hc[right] < hc[child])
            ):
                child = right
            if hv[child] < lv or (hv[child] == lv and hc[child] < lc):
                hv[i] = hv[child]
                hc[i] = hc[child]
                i = child
            else:
                break
        hv[i] = lv
        hc[i] = lc
    return v, c, size


@njit(cache=True)
def _h1_pairs(dm, cap, ei, ej, ev, pos):
    """Dimension-1 persistence pairs of the Rips 2-skeleton.

    Parameters: dense distance matrix, cap, edge endpoint/value arrays sorted
    ascending by (value, lexicographic endpoints), and the ranks of positive
    edges (ascending).  Returns (births, deaths, essential_edge_ranks);
    births/deaths include zero-persistence pairs, callers filter them.
    """
    n_pts = dm.shape[0]
    n_cols = pos.size
    out_birth = np.empty(max(n_cols, 1), np.float64)
    out_death = np.empty(max(n_cols, 1), np.float64)
    n_out = 0
    ess = np.empty(max(n_cols, 1), np.int64)
    n_ess = 0
    if n_cols == 0:
        return out_birth[:0], out_death[:0], ess[:0]

    # pivot-owner table: open addressing, multiply-shift hash, linear probe
    cap_bits = 2
    while (1 << cap_bits) < 4 * n_cols:
        cap_bits += 1
    hmask = (1 << cap_bits) - 1
    hshift = np.uint64(64 - cap_bits)
    hkey = np.full(hmask + 1, -1, np.int64)
    hval = np.empty(hmask + 1, np.int64)

    # per-owner generator lists: edges whose cofacet columns sum to the
    # reduced column (the paired edge itself comes first)
    gen_edge = np.empty(4 * n_cols, np.int64)
    gen_used = 0
    gen_start = np.empty(n_cols, np.int64)
    gen_len = np.empty(n_cols, np.int64)
    n_owned = 0

    cof_v = np.empty(n_pts, np.float64)
    cof_c = np.empty(n_pts, np.int64)
    heap_v = np.empty(4 * n_pts + 64, np.float64)
    heap_c = np.empty(4 * n_pts + 64, np.int64)
    vbuf = np.empty(256, np.int64)

    big = np.int64(n_pts)
    for t in range(n_cols - 1, -1, -1):
        r = pos[t]
        a = ei[r]
        b = ej[r]
        bv = ev[r]
        # gather cofacet triangles of edge (a, b) and track the minimal one
        m = 0
        min_v = np.inf
        min_c = np.int64(-1)
        for c in range(n_pts):
            if c == a or c == b:
                continue
            dac = dm[a, c]
            dbc = dm[b, c]
            if dac <= cap and dbc <= cap:
                v = bv
                if dac > v:
                    v = dac
                if dbc > v:
                    v = dbc
                if c < a:
                    code = (c * big + a) * big + b
                elif c < b:
                    code = (a * big + c) * big + b
                else:
                    code = (a * big + b) * big + c
                cof_v[m] = v
                cof_c[m] = code
                m += 1
                if v < min_v or (v == min_v and code < min_c):
                    min_v = v
                    min_c = code
        if m == 0:
            ess[n_ess] = r
            n_ess += 1
            continue

        slot = np.int64((np.uint64(min_c) * _GOLD) >> hshift)
        while hkey[slot] != -1 and hkey[slot] != min_c:
            slot = (slot + 1) & hmask
        if hkey[slot] == -1:
            # unowned initial pivot: pair without touching the heap
            hkey[slot] = min_c
            hval[slot] = n_owned
            if gen_used + 1 > gen_edge.size:
                nb = np.empty(gen_edge.size * 2, np.int64)
                nb[:gen_used] = gen_edge[:gen_used]
                gen_edge = nb
            gen_start[n_owned] = gen_used
            gen_len[n_owned] = 1
            gen_edge[gen_used] = r
            gen_used += 1
            n_owned += 1
            out_birth[n_out] = bv
            out_death[n_out] = min_v
            n_out += 1
            continue

        # collision: reduce properly with a lazy heap
        if m > heap_v.size:
            grow = heap_v.size
            while grow < m:
                grow *= 2
            heap_v = np.empty(grow, np.float64)
            heap_c = np.empty(grow, np.int64)
        hsize = 0
        for q in range(m):
            hsize = _heap_push(heap_v, heap_c, hsize, cof_v[q], cof_c[q])
        vlen = 1
        vbuf[0] = r

        while True:
            # extract pivot: entries cancel in pairs over Z/2
            have_pivot = False
            pv = 0.0
            pc = np.int64(0)
            while hsize > 0:
                pv, pc, hsize = _heap_pop(heap_v, heap_c, hsize)
                odd = True
                while hsize > 0 and heap_v[0] == pv and heap_c[0] == pc:
                    _, _, hsize = _heap_pop(heap_v, heap_c, hsize)
                    odd = not odd
                if odd:
                    have_pivot = True
                    break
            if not have_pivot:
                ess[n_ess] = r
                n_ess += 1
                break

            slot = np.int64((np.uint64(pc) * _GOLD) >> hshift)
            while hkey[slot] != -1 and hkey[slot] != pc:
                slot = (slot + 1) & hmask
            if hkey[slot] == -1:
                hkey[slot] = pc
                hval[slot] = n_owned
                if gen_used + vlen > gen_edge.size:
                    grow = gen_edge.size
                    while grow < gen_used + vlen:
                        grow *= 2
                    nb = np.empty(grow, np.int64)
                    nb[:gen_used] = gen_edge[:gen_used]
                    gen_edge = nb
                gen_start[n_owned] = gen_used
                gen_len[n_owned] = vlen
                for q in range(vlen):
                    gen_edge[gen_used + q] = vbuf[q]
                gen_used += vlen
                n_owned += 1
                out_birth[n_out] = bv
                out_death[n_out] = pv
                n_out += 1
                break

            # put the pivot back; the owner's replay cancels it
            if hsize + 1 > heap_v.size:
                nv = np.empty(heap_v.size * 2, np.float64)
                nc = np.empty(heap_c.size * 2, np.int64)
                nv[:hsize] = heap_v[:hsize]
                nc[:hsize] = heap_c[:hsize]
                heap_v = nv
                heap_c = nc
            hsize = _heap_push(heap_v, heap_c, hsize, pv, pc)

            own = hval[slot]
            s = gen_start[own]
            length = gen_len[own]
            if vlen + length > vbuf.size:
                grow = vbuf.size
                while grow < vlen + length:
                    grow *= 2
                nb = np.empty(grow, np.int64)
                nb[:vlen] = vbuf[:vlen]
                vbuf = nb
            for gq in range(length):
                g = gen_edge[s + gq]
                vbuf[vlen] = g
                vlen += 1
                ga = ei[g]
                gb = ej[g]
                gv = ev[g]
                if hsize + n_pts > heap_v.size:
                    grow = heap_v.size
                    while grow < hsize + n_pts:
                        grow *= 2
                    nv = np.empty(grow, np.float64)
                    nc = np.empty(grow, np.int64)
                    nv[:hsize] = heap_v[:hsize]
                    nc[:hsize] = heap_c[:hsize]
                    heap_v = nv
                    heap_c = nc
                for c in range(n_pts):
                    if c == ga or c == gb:
                        continue
                    dac = dm[ga, c]
                    dbc = dm[gb, c]
                    if dac <= cap and dbc <= cap:
                        v = gv
                        if dac > v:
                            v = dac
                        if dbc > v:
                            v = dbc
                        if c < ga:
                            code = (c * big + ga) * big + gb
                        elif c < gb:
                            code = (ga * big + c) * big + gb
                        else:
                            code = (ga * big + gb) * big + c
                        hsize = _heap_push(heap_v, heap_c, hsize, v, code)

    return out_birth[:n_out], out_death[:n_out], ess[:n_ess]


def warmup() -> None:
    """Force JIT compilation with a tiny input (compiled code is disk-cached)."""
    dm = np.array([[0.0, 1.0, 1.0], [1.0, 0.0, 1.0], [1.0, 1.0, 0.0]])
    ei = np.array([0, 0, 1], dtype=np.int64)
    ej = np.array([1, 2, 2], dtype=np.int64)
    ev = np.array([1.0, 1.0, 1.0])
    positive, _ = _h0_scan(ei, ej, 3)
    _h1_pairs(dm, 1.0, ei, ej, ev, np.flatnonzero(positive))
