"""Search kernels.  Every function here is numba-compatible and is compiled
with ``njit`` unless ``HEXLOOP_NO_JIT`` is set.

Conventions shared with :mod:`hexloop.lattice`:

* edge ``k`` joins ``eu[k]`` and ``ev[k]``; horizontal edges are stored
  (left, right) and vertical ones (upper, lower);
* orientation states are 0 (absent), 1 (``eu -> ev``), 2 (``ev -> eu``);
* step directions are coded R=0, U=1, L=2, D=3 (counter-clockwise order).
"""
from __future__ import annotations

import numpy as np

from ._jit import njit

DIR_R, DIR_U, DIR_L, DIR_D = 0, 1, 2, 3

# columns of the statistics table produced by trace_oriented
ST_RL_B, ST_RL_T, ST_CCW, ST_CW, ST_LD, ST_DL, ST_UL, ST_LU, ST_SAME_SIDE, ST_T_TO_B, ST_B_TO_T = range(11)
N_STATS = 11


@njit
def _grow_u8(buf, n):
    if n < buf.shape[0]:
        return buf
    new = np.zeros((buf.shape[0] * 2, buf.shape[1]), dtype=buf.dtype)
    new[:n] = buf[:n]
    return new


@njit
def enumerate_degree_subgraphs(eu, ev, nv, dmin, dmax):
    """All edge subsets whose vertex degrees lie in [dmin, dmax].

    Returns a uint8 array with one row per subset (1 = edge used), in
    lexicographic order of the rows (unused before used).
    """
    ne = eu.shape[0]
    deg = np.zeros(nv, dtype=np.int64)
    rem = np.zeros(nv, dtype=np.int64)
    for k in range(ne):
        rem[eu[k]] += 1
        rem[ev[k]] += 1
    for v in range(nv):
        if rem[v] < dmin[v] or dmax[v] < 0:
            return np.zeros((0, ne), dtype=np.uint8)
    out = np.zeros((64, ne), dtype=np.uint8)
    n = 0
    choice = -np.ones(ne, dtype=np.int64)
    i = 0
    while i >= 0:
        if i == ne:
            out = _grow_u8(out, n)
            for k in range(ne):
                out[n, k] = choice[k]
            n += 1
            i -= 1
            continue
        a = eu[i]
        b = ev[i]
        c = choice[i]
        if c == -1:
            rem[a] -= 1
            rem[b] -= 1
        elif c == 1:
            deg[a] -= 1
            deg[b] -= 1
        c += 1
        ok = False
        while c <= 1:
            if c == 1:
                if deg[a] >= dmax[a] or deg[b] >= dmax[b]:
                    c += 1
                    continue
                deg[a] += 1
                deg[b] += 1
            if deg[a] + rem[a] >= dmin[a] and deg[b] + rem[b] >= dmin[b]:
                ok = True
                break
            if c == 1:
                deg[a] -= 1
                deg[b] -= 1
            c += 1
        if ok:
            choice[i] = c
            i += 1
        else:
            choice[i] = -1
            rem[a] += 1
            rem[b] += 1
            i -= 1
    return out[:n].copy()


@njit
def _orient_ok(v, din, dout, rem, in_min, in_max, out_min, out_max, tot_min, tot_max):
    i = din[v]
    o = dout[v]
    if i > in_max[v] or o > out_max[v] or i + o > tot_max[v]:
        return False
    need = 0
    if in_min[v] > i:
        need += in_min[v] - i
    if out_min[v] > o:
        need += out_min[v] - o
    if need > rem[v]:
        return False
    if i + o + rem[v] < tot_min[v]:
        return False
    return True


@njit
def enumerate_orientations(eu, ev, nv, in_min, in_max, out_min, out_max, tot_min, tot_max):
    """All partial orientations (states 0/1/2 per edge) meeting the per-vertex
    in/out/total degree windows.  Rows come out in lexicographic order."""
    ne = eu.shape[0]
    din = np.zeros(nv, dtype=np.int64)
    dout = np.zeros(nv, dtype=np.int64)
    rem = np.zeros(nv, dtype=np.int64)
    for k in range(ne):
        rem[eu[k]] += 1
        rem[ev[k]] += 1
    for v in range(nv):
        if not _orient_ok(v, din, dout, rem, in_min, in_max, out_min, out_max, tot_min, tot_max):
            return np.zeros((0, ne), dtype=np.uint8)
    out = np.zeros((64, ne), dtype=np.uint8)
    n = 0
    choice = -np.ones(ne, dtype=np.int64)
    i = 0
    while i >= 0:
        if i == ne:
            out = _grow_u8(out, n)
            for k in range(ne):
                out[n, k] = choice[k]
            n += 1
            i -= 1
            continue
        a = eu[i]
        b = ev[i]
        c = choice[i]
        if c == -1:
            rem[a] -= 1
            rem[b] -= 1
        elif c == 1:
            dout[a] -= 1
            din[b] -= 1
        elif c == 2:
            din[a] -= 1
            dout[b] -= 1
        c += 1
        ok = False
        while c <= 2:
            if c == 1:
                dout[a] += 1
                din[b] += 1
            elif c == 2:
                din[a] += 1
                dout[b] += 1
            if _orient_ok(a, din, dout, rem, in_min, in_max, out_min, out_max, tot_min, tot_max) and _orient_ok(
                b, din, dout, rem, in_min, in_max, out_min, out_max, tot_min, tot_max
            ):
                ok = True
                break
            if c == 1:
                dout[a] -= 1
                din[b] -= 1
            elif c == 2:
                din[a] -= 1
                dout[b] -= 1
            c += 1
        if ok:
            choice[i] = c
            i += 1
        else:
            choice[i] = -1
            rem[a] += 1
            rem[b] += 1
            i -= 1
    return out[:n].copy()


@njit
def _other_end(k, v, eu, ev):
    if eu[k] == v:
        return ev[k]
    return eu[k]


@njit
def trace_ordinary(confs, eu, ev, slot_edges, kind, fam_id, fam_pos, bit_offset, nbits):
    """Boundary bits, loop counts, link-pattern partners and condition-(4)
    violations for a batch of undirected configurations.

    ``partner[n, v]`` is the far endpoint of the path starting at family
    vertex ``v`` (or -1).  ``bad[n]`` counts paths joining two left or two
    right family vertices.
    """
    n = confs.shape[0]
    nv = slot_edges.shape[0]
    bits = np.zeros((n, nbits), dtype=np.uint8)
    loops = np.zeros(n, dtype=np.int64)
    bad = np.zeros(n, dtype=np.int64)
    partner = -np.ones((n, nv), dtype=np.int64)
    seen = np.zeros(nv, dtype=np.bool_)
    deg = np.zeros(nv, dtype=np.int64)
    for r in range(n):
        for v in range(nv):
            seen[v] = False
            d = 0
            for s in range(4):
                k = slot_edges[v, s]
                if k >= 0 and confs[r, k]:
                    d += 1
            deg[v] = d
        for v in range(nv):
            if kind[v] == 0 or deg[v] != 1 or seen[v]:
                continue
            prev_edge = -1
            cur = v
            seen[cur] = True
            while True:
                nxt_edge = -1
                for s in range(4):
                    k = slot_edges[cur, s]
                    if k >= 0 and k != prev_edge and confs[r, k]:
                        nxt_edge = k
                        break
                if nxt_edge < 0:
                    break
                cur = _other_end(nxt_edge, cur, eu, ev)
                seen[cur] = True
                prev_edge = nxt_edge
            partner[r, v] = cur
            partner[r, cur] = v
            if kind[v] == kind[cur] and (kind[v] == 1 or kind[v] == 2):
                bad[r] += 1
        for v in range(nv):
            if seen[v] or deg[v] != 2:
                continue
            loops[r] += 1
            prev_edge = -1
            cur = v
            while not seen[cur]:
                seen[cur] = True
                for s in range(4):
                    k = slot_edges[cur, s]
                    if k >= 0 and k != prev_edge and confs[r, k]:
                        prev_edge = k
                        break
                cur = _other_end(prev_edge, cur, eu, ev)
        for v in range(nv):
            f = fam_id[v]
            if f < 0:
                continue
            pos = bit_offset[f] + fam_pos[v]
            p = partner[r, v]
            if f == 0 or f == 3:  # l_T, r_B: 1 iff degree 1
                bits[r, pos] = deg[v]
            elif f == 2 or f == 5:  # r_T, l_B: 0 iff degree 1
                bits[r, pos] = 1 - deg[v]
            elif f == 1:  # t
                zero = kind[p] == 1 or kind[p] == 4 or (kind[p] == 3 and fam_pos[p] < fam_pos[v])
                bits[r, pos] = 0 if zero else 1
            else:  # b
                zero = kind[p] == 2 or kind[p] == 3 or (kind[p] == 4 and fam_pos[p] > fam_pos[v])
                bits[r, pos] = 0 if zero else 1
    return bits, loops, bad, partner


@njit
def _in_out_dirs(states, r, v, eu, ev, slot_edges):
    """Direction of travel on the internal in-edge and out-edge of v (-1 if none),
    together with the id of the out-edge."""
    in_dir = -1
    out_dir = -1
    out_edge = -1
    for s in range(4):
        k = slot_edges[v, s]
        if k < 0:
            continue
        st = states[r, k]
        if st == 0:
            continue
        # st == 1 means eu -> ev; slot 0 (left) and 2 (up) have v == ev
        into_v = (st == 1) == (s == 0 or s == 2)
        if s == 0:
            d_in, d_out = 0, 2
        elif s == 1:
            d_in, d_out = 2, 0
        elif s == 2:
            d_in, d_out = 3, 1
        else:
            d_in, d_out = 1, 3
        if into_v:
            in_dir = d_in
        else:
            out_dir = d_out
            out_edge = k
    return in_dir, out_dir, out_edge


@njit
def _closed_dirs(states, r, v, eu, ev, slot_edges, kind, ext_up):
    """In/out directions of v in the closure with external edges attached."""
    in_dir, out_dir, out_edge = _in_out_dirs(states, r, v, eu, ev, slot_edges)
    kv = kind[v]
    if kv == 1:  # left family: horizontal external edge comes in from the left
        in_dir = 0
        if out_dir < 0:
            out_dir = 1 if ext_up[v] else 3
    elif kv == 2:  # right family: horizontal external edge leaves to the right
        out_dir = 0
        if in_dir < 0:
            in_dir = 3 if ext_up[v] else 1
    elif kv == 3:  # top: external edge above
        if in_dir < 0:
            in_dir = 3
        else:
            out_dir = 1
    elif kv == 4:  # bottom: external edge below
        if in_dir < 0:
            in_dir = 1
        else:
            out_dir = 3
    return in_dir, out_dir, out_edge


@njit
def trace_oriented(states, eu, ev, slot_edges, kind, fam_id, fam_pos, ext_up, bit_offset, nbits):
    """Boundary bits and path/loop/turn statistics for oriented configurations.

    Returns ``(bits, stats)`` where ``stats`` columns are indexed by the
    ``ST_*`` constants of this module.
    """
    n = states.shape[0]
    nv = slot_edges.shape[0]
    bits = np.zeros((n, nbits), dtype=np.uint8)
    stats = np.zeros((n, N_STATS), dtype=np.int64)
    seen = np.zeros(nv, dtype=np.bool_)
    ind = np.zeros(nv, dtype=np.int64)
    outd = np.zeros(nv, dtype=np.int64)
    cin = np.zeros(nv, dtype=np.int64)
    cout = np.zeros(nv, dtype=np.int64)
    onext = np.zeros(nv, dtype=np.int64)
    for r in range(n):
        for v in range(nv):
            seen[v] = False
            i_d, o_d, o_e = _in_out_dirs(states, r, v, eu, ev, slot_edges)
            ind[v] = 1 if i_d >= 0 else 0
            outd[v] = 1 if o_d >= 0 else 0
            onext[v] = _other_end(o_e, v, eu, ev) if o_e >= 0 else -1
            ci, co, _ = _closed_dirs(states, r, v, eu, ev, slot_edges, kind, ext_up)
            cin[v] = ci
            cout[v] = co
            if ci >= 0 and co >= 0:
                if ci == 2 and co == 3:
                    stats[r, 4] += 1
                elif ci == 3 and co == 2:
                    stats[r, 5] += 1
                elif ci == 1 and co == 2:
                    stats[r, 6] += 1
                elif ci == 2 and co == 1:
                    stats[r, 7] += 1
        # open paths: start where there is an internal out-edge but no in-edge
        for v in range(nv):
            if outd[v] == 1 and ind[v] == 0:
                cur = v
                seen[cur] = True
                while onext[cur] >= 0:
                    cur = onext[cur]
                    seen[cur] = True
                ks = kind[v]
                ke = kind[cur]
                if ks == 4 and ke == 4 and fam_pos[cur] < fam_pos[v]:
                    stats[r, 0] += 1
                if ks == 3 and ke == 3 and fam_pos[cur] < fam_pos[v]:
                    stats[r, 1] += 1
                if ks == ke and (ks == 1 or ks == 2):
                    stats[r, 8] += 1
                if ks == 3 and ke == 4:
                    stats[r, 9] += 1
                if ks == 4 and ke == 3:
                    stats[r, 10] += 1
        # closed loops: orientation from the total turning
        for v in range(nv):
            if seen[v] or outd[v] == 0:
                continue
            turn = 0
            cur = v
            while not seen[cur]:
                seen[cur] = True
                delta = (cout[cur] - cin[cur]) % 4
                if delta == 1:
                    turn += 1
                elif delta == 3:
                    turn -= 1
                cur = onext[cur]
            if turn > 0:
                stats[r, 2] += 1
            else:
                stats[r, 3] += 1
        for v in range(nv):
            f = fam_id[v]
            if f < 0:
                continue
            pos = bit_offset[f] + fam_pos[v]
            if f == 0:
                bits[r, pos] = outd[v]
            elif f == 1 or f == 2:
                bits[r, pos] = 1 - ind[v]
            elif f == 3 or f == 4:
                bits[r, pos] = ind[v]
            else:
                bits[r, pos] = 1 - outd[v]
    return bits, stats


@njit
def enumerate_tangle_states(px0, py0, px1, py1, color, ymin, ymax, lookup, x0, ne):
    """Depth-first enumeration of blue/red path families.

    Paths are given by doubled start/end coordinates ``(px0, py0) -> (px1,
    py1)``; ``color`` is 0 (blue, moving left) or 1 (red, moving right) and
    all blue paths precede all red paths.  ``lookup[X - x0, Y - ymin]`` maps a
    doubled point to a grid edge id: odd X addresses the horizontal edge with
    that midpoint, even X the vertical edge from row Y to row Y+1.

    Each emitted row is the per-edge tangle state: on a horizontal edge 1 means
    a path vertex of the edge's own colour and 2 additionally a horizontal
    step of the other colour through it; on a vertical edge 1 is a blue and 2
    a red diagonal step.  Returns ``(rows, error)``; ``error`` is nonzero if a
    path would use a point that is not a grid edge midpoint.
    """
    npaths = px0.shape[0]
    width = lookup.shape[0]
    height = lookup.shape[1]
    occ = np.zeros((2, width, height), dtype=np.bool_)
    vused = np.zeros((width, height), dtype=np.bool_)
    n_red = 0
    maxdepth = 1
    for k in range(npaths):
        if color[k] == 1:
            n_red += 1
        dx = px1[k] - px0[k]
        if dx < 0:
            dx = -dx
        maxdepth += dx // 2 + 1
    out = np.zeros((64, ne), dtype=np.uint8)
    n = 0
    error = 0
    if npaths == 0:
        out = _grow_u8(out, n)
        return out[:1].copy(), error
    sk = np.zeros(maxdepth, dtype=np.int64)
    sx = np.zeros(maxdepth, dtype=np.int64)
    sy = np.zeros(maxdepth, dtype=np.int64)
    sopt = np.zeros(maxdepth, dtype=np.int64)
    sarr = np.zeros(maxdepth, dtype=np.int64)  # 0 start, 1 diagonal, 2 horizontal
    sax = np.zeros(maxdepth, dtype=np.int64)  # doubled x of vertical edge / midpoint
    say = np.zeros(maxdepth, dtype=np.int64)
    row = np.zeros(ne, dtype=np.uint8)

    # place the start of path 0
    depth = 0
    c0 = color[0]
    ix = px0[0] - x0
    iy = py0[0] - ymin
    if ix < 0 or ix >= width or iy < 0 or iy >= height:
        return out[:0].copy(), 1
    occ[c0, ix, iy] = True
    sk[0] = 0
    sx[0] = px0[0]
    sy[0] = py0[0]
    sopt[0] = 0
    sarr[0] = 0
    depth = 1
    while depth > 0:
        e = depth - 1
        k = sk[e]
        X = sx[e]
        Y = sy[e]
        c = color[k]
        if X == px1[k] and Y == py1[k]:
            if sopt[e] == 0:
                sopt[e] = 3
                if k == npaths - 1:
                    good = True
                    for j in range(depth):
                        if sarr[j] == 2 and color[sk[j]] == 0:
                            if not occ[1, sax[j] - x0, say[j] - ymin]:
                                good = False
                                break
                    if good:
                        for q in range(ne):
                            row[q] = 0
                        for j in range(depth):
                            eid = lookup[sx[j] - x0, sy[j] - ymin]
                            if eid < 0:
                                error = 1
                                good = False
                                break
                            row[eid] = 1
                            if sarr[j] == 1:
                                vid = lookup[sax[j] - x0, say[j] - ymin]
                                if vid < 0:
                                    error = 1
                                    good = False
                                    break
                                row[vid] = 1 + color[sk[j]]
                        if good:
                            for j in range(depth):
                                if sarr[j] == 2:
                                    row[lookup[sax[j] - x0, say[j] - ymin]] = 2
                            out = _grow_u8(out, n)
                            for q in range(ne):
                                out[n, q] = row[q]
                            n += 1
                else:
                    nk = k + 1
                    nc = color[nk]
                    ix = px0[nk] - x0
                    iy = py0[nk] - ymin
                    if ix < 0 or ix >= width or iy < 0 or iy >= height:
                        error = 1
                    elif not occ[nc, ix, iy]:
                        occ[nc, ix, iy] = True
                        sk[depth] = nk
                        sx[depth] = px0[nk]
                        sy[depth] = py0[nk]
                        sopt[depth] = 0
                        sarr[depth] = 0
                        depth += 1
                        continue
            # backtrack: remove this entry
            occ[c, X - x0, Y - ymin] = False
            if sarr[e] == 1 and c == 0:
                vused[sax[e] - x0, say[e] - ymin] = False
            depth -= 1
            continue
        sign = -1 if c == 0 else 1
        advanced = False
        while sopt[e] < 3:
            o = sopt[e]
            sopt[e] += 1
            if o == 0:
                nx = X + 2 * sign
                ny = Y + 1
            elif o == 1:
                nx = X + 2 * sign
                ny = Y - 1
            else:
                nx = X + 4 * sign
                ny = Y
            if ny < ymin or ny > ymax:
                continue
            remx = (nx - px1[k]) * (-sign) // 2
            dy = ny - py1[k]
            if dy < 0:
                dy = -dy
            if remx < dy:
                continue
            ix = nx - x0
            iy = ny - ymin
            if ix < 0 or ix >= width:
                error = 1
                continue
            if occ[c, ix, iy]:
                continue
            if o < 2:
                ax = X + sign
                ay = Y if ny > Y else ny
                if c == 1 and vused[ax - x0, ay - ymin]:
                    continue
            else:
                ax = X + 2 * sign
                ay = Y
                if c == 1:
                    if not occ[0, ax - x0, ay - ymin]:
                        continue
                elif n_red == 0:
                    continue
            occ[c, ix, iy] = True
            if o < 2 and c == 0:
                vused[ax - x0, ay - ymin] = True
            sk[depth] = k
            sx[depth] = nx
            sy[depth] = ny
            sopt[depth] = 0
            sarr[depth] = 1 if o < 2 else 2
            sax[depth] = ax
            say[depth] = ay
            depth += 1
            advanced = True
            break
        if not advanced:
            occ[c, X - x0, Y - ymin] = False
            if sarr[e] == 1 and c == 0:
                vused[sax[e] - x0, say[e] - ymin] = False
            depth -= 1
    return out[:n].copy(), error


@njit
def canonical_orient(confs, eu, ev, slot_edges, kind, fam_pos, vx, vy):
    """Orient undirected configurations canonically.

    Closed loops become clockwise, paths between two bottom (or two top)
    vertices run left to right, bottom-top paths run from the bottom, and
    paths at left/right family vertices leave the left and enter the right.
    """
    n = confs.shape[0]
    ne = eu.shape[0]
    nv = slot_edges.shape[0]
    states = np.zeros((n, ne), dtype=np.uint8)
    seen = np.zeros(nv, dtype=np.bool_)
    deg = np.zeros(nv, dtype=np.int64)
    for r in range(n):
        for v in range(nv):
            seen[v] = False
            d = 0
            for s in range(4):
                k = slot_edges[v, s]
                if k >= 0 and confs[r, k]:
                    d += 1
            deg[v] = d
        for v in range(nv):
            if kind[v] == 0 or deg[v] != 1 or seen[v]:
                continue
            # find the other end first
            prev_edge = -1
            cur = v
            while True:
                nxt = -1
                for s in range(4):
                    k = slot_edges[cur, s]
                    if k >= 0 and k != prev_edge and confs[r, k]:
                        nxt = k
                        break
                if nxt < 0:
                    break
                cur = _other_end(nxt, cur, eu, ev)
                prev_edge = nxt
            p = cur
            kv = kind[v]
            kp = kind[p]
            if kv == 1:
                src = v
            elif kp == 1:
                src = p
            elif kv == 2:
                src = p
            elif kp == 2:
                src = v
            elif kv == kp:
                src = v if fam_pos[v] < fam_pos[p] else p
            elif kv == 4:
                src = v
            else:
                src = p
            prev_edge = -1
            cur = src
            seen[cur] = True
            while True:
                nxt = -1
                for s in range(4):
                    k = slot_edges[cur, s]
                    if k >= 0 and k != prev_edge and confs[r, k]:
                        nxt = k
                        break
                if nxt < 0:
                    break
                states[r, nxt] = 1 if eu[nxt] == cur else 2
                cur = _other_end(nxt, cur, eu, ev)
                seen[cur] = True
                prev_edge = nxt
            seen[v] = True
            seen[p] = True
        for v in range(nv):
            if seen[v] or deg[v] != 2:
                continue
            # walk once to get the signed area, then orient
            area2 = 0
            prev_edge = -1
            cur = v
            while True:
                nxt = -1
                for s in range(4):
                    k = slot_edges[cur, s]
                    if k >= 0 and k != prev_edge and confs[r, k]:
                        nxt = k
                        break
                w = _other_end(nxt, cur, eu, ev)
                area2 += vx[cur] * vy[w] - vx[w] * vy[cur]
                states[r, nxt] = 1 if eu[nxt] == cur else 2
                seen[cur] = True
                prev_edge = nxt
                cur = w
                if cur == v:
                    break
            if area2 > 0:  # counter-clockwise: reverse every edge of this loop
                prev_edge = -1
                cur = v
                while True:
                    nxt = -1
                    for s in range(4):
                        k = slot_edges[cur, s]
                        if k >= 0 and k != prev_edge and confs[r, k]:
                            nxt = k
                            break
                    states[r, nxt] = 3 - states[r, nxt]
                    prev_edge = nxt
                    cur = _other_end(nxt, cur, eu, ev)
                    if cur == v:
                        break
    return states


@njit
def tangle_statistics(rows, eu, ev, slot_edges, upper_odd, horizontal, left_odd):
    """Per-tangle step tallies and intersecting pairs from tangle-state rows.

    Output columns: blue_down, blue_up, blue_horiz, red_down, red_up,
    red_horiz, n_blue, n_red, intersecting_pairs.
    """
    n = rows.shape[0]
    ne = eu.shape[0]
    out = np.zeros((n, 9), dtype=np.int64)
    label = -np.ones(ne, dtype=np.int64)
    has_pred = np.zeros(ne, dtype=np.bool_)
    pair = np.zeros((ne + 1, ne + 1), dtype=np.bool_)
    for r in range(n):
        for k in range(ne):
            label[k] = -1
            has_pred[k] = False
            st = rows[r, k]
            if st == 0:
                continue
            if not horizontal[k]:
                blue = st == 1
                down = upper_odd[k]
                if blue:
                    if down:
                        out[r, 0] += 1
                    else:
                        out[r, 1] += 1
                else:
                    if down:
                        out[r, 3] += 1
                    else:
                        out[r, 4] += 1
            elif st == 2:
                if left_odd[k]:
                    out[r, 5] += 1  # red step through a blue point
                else:
                    out[r, 2] += 1  # blue step through a red point
        # successor links: succ of a horizontal point edge
        nb = 0
        nr = 0
        for pass_color in range(2):
            for k in range(ne):
                if not horizontal[k] or rows[r, k] == 0:
                    continue
                is_blue_edge = left_odd[k]
                if (pass_color == 0) != is_blue_edge:
                    continue
                # predecessor test
                if is_blue_edge:
                    w = ev[k]  # right vertex, even
                    pred = False
                    for s in (2, 3):
                        q = slot_edges[w, s]
                        if q >= 0 and rows[r, q] == 1:
                            pred = True
                    q = slot_edges[w, 1]
                    if q >= 0 and rows[r, q] == 2:
                        pred = True
                else:
                    w = eu[k]  # left vertex, even
                    pred = False
                    for s in (2, 3):
                        q = slot_edges[w, s]
                        if q >= 0 and rows[r, q] == 2:
                            pred = True
                    q = slot_edges[w, 0]
                    if q >= 0 and rows[r, q] == 2:
                        pred = True
                if pred:
                    continue
                pid = nb if is_blue_edge else nr
                if is_blue_edge:
                    nb += 1
                else:
                    nr += 1
                cur = k
                while True:
                    label[cur] = pid
                    nxt = -1
                    if is_blue_edge:
                        v = eu[cur]  # odd vertex on the left of the point
                        for s in (2, 3):
                            q = slot_edges[v, s]
                            if q >= 0 and rows[r, q] == 1:
                                other = eu[q] if s == 2 else ev[q]
                                nxt = slot_edges[other, 0]
                        q = slot_edges[v, 0]
                        if nxt < 0 and q >= 0 and rows[r, q] == 2:
                            nxt = slot_edges[eu[q], 0]
                    else:
                        v = ev[cur]  # odd vertex on the right of the point
                        for s in (2, 3):
                            q = slot_edges[v, s]
                            if q >= 0 and rows[r, q] == 2:
                                other = eu[q] if s == 2 else ev[q]
                                nxt = slot_edges[other, 1]
                        q = slot_edges[v, 1]
                        if nxt < 0 and q >= 0 and rows[r, q] == 2:
                            nxt = slot_edges[ev[q], 1]
                    if nxt < 0:
                        break
                    cur = nxt
        out[r, 6] = nb
        out[r, 7] = nr
        for i in range(nb + 1):
            for j in range(nr + 1):
                pair[i, j] = False
        cnt = 0
        for k in range(ne):
            if horizontal[k] and rows[r, k] == 2:
                if left_odd[k]:
                    # blue point crossed by a red horizontal step through it
                    b = label[k]
                    # the red step passing through: the red points on either side
                    v = eu[k]
                    q = slot_edges[v, 0]
                    rr = label[q]
                else:
                    rr = label[k]
                    w = ev[k]
                    q = slot_edges[w, 1]
                    b = label[q]
                if b >= 0 and rr >= 0 and not pair[b, rr]:
                    pair[b, rr] = True
                    cnt += 1
        out[r, 8] = cnt
    return out


# triangle labellings read counter-clockwise: 000, 111 and the three
# rotations of 012 (label 2 marks the inner edge of a rhombus piece)
PIECES_CCW = np.array([[0, 0, 0], [1, 1, 1], [0, 1, 2], [1, 2, 0], [2, 0, 1]], dtype=np.int64)


@njit
def enumerate_puzzles(tri, ne, pieces, allowed, out_edges):
    """All labellings of a triangulated region.

    ``tri[t]`` lists the three edges of triangle ``t`` counter-clockwise;
    triangles should be ordered so that each shares edges with earlier
    ones.  ``allowed[e]`` is a bit mask of permitted labels.  Returns, for
    every valid labelling, the labels of ``out_edges``.
    """
    nt = tri.shape[0]
    npieces = pieces.shape[0]
    lab = -np.ones(ne, dtype=np.int64)
    owner = -np.ones(ne, dtype=np.int64)  # triangle that assigned the edge
    choice = np.zeros(nt, dtype=np.int64)
    out = np.zeros((64, out_edges.shape[0]), dtype=np.uint8)
    nout = 0
    if nt == 0:
        return out[:1]
    t = 0
    choice[0] = -1
    while t >= 0:
        # undo the previous choice of triangle t
        for j in range(3):
            e = tri[t, j]
            if owner[e] == t:
                owner[e] = -1
                lab[e] = -1
        c = choice[t] + 1
        placed = False
        while c < npieces:
            ok = True
            for j in range(3):
                e = tri[t, j]
                p = pieces[c, j]
                if lab[e] >= 0:
                    if lab[e] != p:
                        ok = False
                        break
                elif (allowed[e] >> p) & 1 == 0:
                    ok = False
                    break
            if ok:
                break
            c += 1
        if c < npieces:
            choice[t] = c
            for j in range(3):
                e = tri[t, j]
                if lab[e] < 0:
                    lab[e] = pieces[c, j]
                    owner[e] = t
            placed = True
        if not placed:
            t -= 1
            continue
        if t == nt - 1:
            out = _grow_u8(out, nout)
            for j in range(out_edges.shape[0]):
                out[nout, j] = lab[out_edges[j]]
            nout += 1
        else:
            t += 1
            choice[t] = -1
    return out[:nout]
