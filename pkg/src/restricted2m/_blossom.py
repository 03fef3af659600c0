"""Maximum-weight matching in general graphs (Edmonds' blossom method).

Array-based primal-dual implementation in the style of Galil's O(n^3)
formulation, written in the subset of Python that numba compiles.  Edge
weights must be integers; dual variables are stored doubled so that every
quantity stays integral.

Conventions: edge ``k`` joins ``ei[k]`` and ``ej[k]``; its endpoints are
``2k`` (at ``ei[k]``) and ``2k + 1`` (at ``ej[k]``).  Blossom ids ``>= nv``
are non-trivial blossoms.  ``mate[v]`` holds the remote endpoint index while
the algorithm runs and is translated to a vertex at the end.
"""

from __future__ import annotations

import numpy as np

from ._accel import kernel


@kernel
def _slack(k, ei, ej, wt, dualvar):
    return dualvar[ei[k]] + dualvar[ej[k]] - 2 * wt[k]


@kernel
def _leaves(b, nv, childs, out, stack):
    if b < nv:
        out[0] = b
        return 1
    cnt = 0
    sp = 1
    stack[0] = b
    while sp > 0:
        sp -= 1
        ch = childs[stack[sp]]
        for i in range(ch.shape[0]):
            t = ch[i]
            if t < nv:
                out[cnt] = t
                cnt += 1
            else:
                stack[sp] = t
                sp += 1
    return cnt


@kernel
def _label_s(b, nv, childs, queue, st, leafbuf, stackbuf):
    cnt = _leaves(b, nv, childs, leafbuf, stackbuf)
    for i in range(cnt):
        queue[st[0]] = leafbuf[i]
        st[0] += 1


@kernel
def _assign_label(w, t, p, nv, endpoint, mate, label, labelend, inblossom,
                  blossombase, bestedge, childs, queue, st, leafbuf, stackbuf):
    b = inblossom[w]
    label[w] = t
    label[b] = t
    labelend[w] = p
    labelend[b] = p
    bestedge[w] = -1
    bestedge[b] = -1
    if t == 1:
        _label_s(b, nv, childs, queue, st, leafbuf, stackbuf)
    else:
        # T-blossom: its base's mate becomes an S-vertex
        mb = mate[blossombase[b]]
        w2 = endpoint[mb]
        b2 = inblossom[w2]
        label[w2] = 1
        label[b2] = 1
        labelend[w2] = mb ^ 1
        labelend[b2] = mb ^ 1
        bestedge[w2] = -1
        bestedge[b2] = -1
        _label_s(b2, nv, childs, queue, st, leafbuf, stackbuf)


@kernel
def _scan_blossom(v, w, endpoint, label, labelend, inblossom, blossombase, pathbuf):
    """Trace back from ``v`` and ``w``; return the base of a new blossom or -1."""
    plen = 0
    base = -1
    while v != -1 or w != -1:
        b = inblossom[v]
        if label[b] & 4:
            base = blossombase[b]
            break
        pathbuf[plen] = b
        plen += 1
        label[b] = 5
        if labelend[b] == -1:
            v = -1
        else:
            v = endpoint[labelend[b]]
            b = inblossom[v]
            v = endpoint[labelend[b]]
        if w != -1:
            v, w = w, v
    for i in range(plen):
        label[pathbuf[i]] = 1
    return base


@kernel
def _add_blossom(base, k, nv, ei, ej, wt, endpoint, nbstart, nbend, mate, label,
                 labelend, inblossom, blossomparent, childs, endps, blossombase,
                 bestedge, bbe, has_bbe, unused, dualvar, queue, st, bestedgeto,
                 touched, tmp_a, tmp_b, tmp_c, tmp_d, leafbuf, stackbuf):
    v = ei[k]
    w = ej[k]
    bb = inblossom[base]
    bv = inblossom[v]
    bw = inblossom[w]
    st[1] -= 1
    b = unused[st[1]]
    blossombase[b] = base
    blossomparent[b] = -1
    blossomparent[bb] = b
    n1 = 0
    while bv != bb:
        blossomparent[bv] = b
        tmp_a[n1] = bv
        tmp_b[n1] = labelend[bv]
        n1 += 1
        v = endpoint[labelend[bv]]
        bv = inblossom[v]
    n2 = 0
    while bw != bb:
        blossomparent[bw] = b
        tmp_c[n2] = bw
        tmp_d[n2] = labelend[bw] ^ 1
        n2 += 1
        w = endpoint[labelend[bw]]
        bw = inblossom[w]
    size = 1 + n1 + n2
    path = np.empty(size, np.int64)
    eps = np.empty(size, np.int64)
    path[0] = bb
    for i in range(n1):
        path[1 + i] = tmp_a[n1 - 1 - i]
        eps[i] = tmp_b[n1 - 1 - i]
    eps[n1] = 2 * k
    for i in range(n2):
        path[1 + n1 + i] = tmp_c[i]
        eps[n1 + 1 + i] = tmp_d[i]
    childs[b] = path
    endps[b] = eps
    label[b] = 1
    labelend[b] = labelend[bb]
    dualvar[b] = 0
    cnt = _leaves(b, nv, childs, leafbuf, stackbuf)
    for i in range(cnt):
        x = leafbuf[i]
        if label[inblossom[x]] == 2:
            # T-vertices become S-vertices inside the new blossom
            queue[st[0]] = x
            st[0] += 1
        inblossom[x] = b
    # least-slack edges from the new blossom to neighbouring S-blossoms
    nt = 0
    for pi in range(size):
        sub = path[pi]
        if has_bbe[sub]:
            lst = bbe[sub]
            for q in range(lst.shape[0]):
                k2 = lst[q]
                i2 = ei[k2]
                j2 = ej[k2]
                if inblossom[j2] == b:
                    j2 = i2
                bj = inblossom[j2]
                if bj != b and label[bj] == 1:
                    cur = bestedgeto[bj]
                    if cur == -1:
                        touched[nt] = bj
                        nt += 1
                        bestedgeto[bj] = k2
                    elif _slack(k2, ei, ej, wt, dualvar) < _slack(cur, ei, ej, wt, dualvar):
                        bestedgeto[bj] = k2
        else:
            cnt = _leaves(sub, nv, childs, leafbuf, stackbuf)
            for li in range(cnt):
                x = leafbuf[li]
                for q in range(nbstart[x], nbstart[x + 1]):
                    k2 = nbend[q] >> 1
                    j2 = endpoint[nbend[q]]
                    bj = inblossom[j2]
                    if bj != b and label[bj] == 1:
                        cur = bestedgeto[bj]
                        if cur == -1:
                            touched[nt] = bj
                            nt += 1
                            bestedgeto[bj] = k2
                        elif _slack(k2, ei, ej, wt, dualvar) < _slack(cur, ei, ej, wt, dualvar):
                            bestedgeto[bj] = k2
        has_bbe[sub] = False
        bbe[sub] = np.empty(0, np.int64)
        bestedge[sub] = -1
    lst = np.empty(nt, np.int64)
    best = -1
    for q in range(nt):
        k2 = bestedgeto[touched[q]]
        lst[q] = k2
        bestedgeto[touched[q]] = -1
        if best == -1 or _slack(k2, ei, ej, wt, dualvar) < _slack(best, ei, ej, wt, dualvar):
            best = k2
    bbe[b] = lst
    has_bbe[b] = True
    bestedge[b] = best


@kernel
def _index_of(arr, x):
    for i in range(arr.shape[0]):
        if arr[i] == x:
            return i
    return -1


@kernel
def _release_blossom(b, label, labelend, childs, endps, blossombase, bbe, has_bbe,
                     bestedge, unused, st):
    label[b] = -1
    labelend[b] = -1
    childs[b] = np.empty(0, np.int64)
    endps[b] = np.empty(0, np.int64)
    blossombase[b] = -1
    bbe[b] = np.empty(0, np.int64)
    has_bbe[b] = False
    bestedge[b] = -1
    unused[st[1]] = b
    st[1] += 1


@kernel
def _expand_blossom(b, endstage, nv, endpoint, mate, label, labelend, inblossom,
                    blossomparent, childs, endps, blossombase, bestedge, bbe, has_bbe,
                    unused, dualvar, allowedge, queue, st, leafbuf, stackbuf, expstack):
    sp = 1
    expstack[0] = b
    while sp > 0:
        sp -= 1
        cur = expstack[sp]
        ch = childs[cur]
        for i in range(ch.shape[0]):
            s = ch[i]
            blossomparent[s] = -1
            if s < nv:
                inblossom[s] = s
            elif endstage and dualvar[s] == 0:
                expstack[sp] = s
                sp += 1
            else:
                cnt = _leaves(s, nv, childs, leafbuf, stackbuf)
                for q in range(cnt):
                    inblossom[leafbuf[q]] = s
        if (not endstage) and label[cur] == 2:
            # Relabel the sub-blossoms on the even path through the expanded
            # T-blossom; the rest become unlabeled or keep reachability.
            ep = endps[cur]
            entrychild = inblossom[endpoint[labelend[cur] ^ 1]]
            j = _index_of(ch, entrychild)
            if j & 1:
                j -= ch.shape[0]
                jstep = 1
                endptrick = 0
            else:
                jstep = -1
                endptrick = 1
            p = labelend[cur]
            while j != 0:
                label[endpoint[p ^ 1]] = 0
                label[endpoint[ep[j - endptrick] ^ endptrick ^ 1]] = 0
                _assign_label(endpoint[p ^ 1], 2, p, nv, endpoint, mate, label, labelend,
                              inblossom, blossombase, bestedge, childs, queue, st,
                              leafbuf, stackbuf)
                allowedge[ep[j - endptrick] >> 1] = True
                j += jstep
                p = ep[j - endptrick] ^ endptrick
                allowedge[p >> 1] = True
                j += jstep
            bv = ch[j]
            label[endpoint[p ^ 1]] = 2
            label[bv] = 2
            labelend[endpoint[p ^ 1]] = p
            labelend[bv] = p
            bestedge[bv] = -1
            j += jstep
            while ch[j] != entrychild:
                bv = ch[j]
                if label[bv] == 1:
                    j += jstep
                    continue
                cnt = _leaves(bv, nv, childs, leafbuf, stackbuf)
                found = -1
                for q in range(cnt):
                    if label[leafbuf[q]] != 0:
                        found = leafbuf[q]
                        break
                if found >= 0:
                    label[found] = 0
                    label[endpoint[mate[blossombase[bv]]]] = 0
                    _assign_label(found, 2, labelend[found], nv, endpoint, mate, label,
                                  labelend, inblossom, blossombase, bestedge, childs,
                                  queue, st, leafbuf, stackbuf)
                j += jstep
        _release_blossom(cur, label, labelend, childs, endps, blossombase, bbe, has_bbe,
                         bestedge, unused, st)


@kernel
def _augment_blossom(b, v, nv, endpoint, mate, blossomparent, childs, endps,
                     blossombase, stk_b, stk_v):
    sp = 1
    stk_b[0] = b
    stk_v[0] = v
    while sp > 0:
        sp -= 1
        b = stk_b[sp]
        v = stk_v[sp]
        t = v
        while blossomparent[t] != b:
            t = blossomparent[t]
        if t >= nv:
            stk_b[sp] = t
            stk_v[sp] = v
            sp += 1
        ch = childs[b]
        ep = endps[b]
        i = _index_of(ch, t)
        j = i
        if i & 1:
            j -= ch.shape[0]
            jstep = 1
            endptrick = 0
        else:
            jstep = -1
            endptrick = 1
        while j != 0:
            j += jstep
            t = ch[j]
            p = ep[j - endptrick] ^ endptrick
            if t >= nv:
                stk_b[sp] = t
                stk_v[sp] = endpoint[p]
                sp += 1
            j += jstep
            t = ch[j]
            if t >= nv:
                stk_b[sp] = t
                stk_v[sp] = endpoint[p ^ 1]
                sp += 1
            mate[endpoint[p]] = p ^ 1
            mate[endpoint[p ^ 1]] = p
        childs[b] = np.concatenate((ch[i:], ch[:i]))
        endps[b] = np.concatenate((ep[i:], ep[:i]))
        blossombase[b] = v


@kernel
def _augment_matching(k, nv, ei, ej, endpoint, mate, label, labelend, inblossom,
                      blossomparent, childs, endps, blossombase, stk_b, stk_v):
    for side in range(2):
        if side == 0:
            s = ei[k]
            p = 2 * k + 1
        else:
            s = ej[k]
            p = 2 * k
        while True:
            bs = inblossom[s]
            if bs >= nv:
                _augment_blossom(bs, s, nv, endpoint, mate, blossomparent, childs, endps,
                                 blossombase, stk_b, stk_v)
            mate[s] = p
            if labelend[bs] == -1:
                break
            t = endpoint[labelend[bs]]
            bt = inblossom[t]
            s = endpoint[labelend[bt]]
            j = endpoint[labelend[bt] ^ 1]
            if bt >= nv:
                _augment_blossom(bt, j, nv, endpoint, mate, blossomparent, childs, endps,
                                 blossombase, stk_b, stk_v)
            mate[j] = labelend[bt]
            p = labelend[bt] ^ 1


@kernel
def max_weight_matching(nv, ei, ej, wt):
    """Maximum-weight matching; returns ``mate`` with -1 for single vertices.

    ``ei``, ``ej``, ``wt`` are int64 arrays of equal length describing a
    simple graph on ``nv`` vertices.  Negative-weight edges are allowed and
    never improve the matching.
    """
    m = ei.shape[0]
    mate = np.full(nv, -1, np.int64)
    if m == 0 or nv == 0:
        return mate
    maxw = 0
    for k in range(m):
        if wt[k] > maxw:
            maxw = wt[k]
    endpoint = np.empty(2 * m, np.int64)
    deg = np.zeros(nv + 1, np.int64)
    for k in range(m):
        endpoint[2 * k] = ei[k]
        endpoint[2 * k + 1] = ej[k]
        deg[ei[k] + 1] += 1
        deg[ej[k] + 1] += 1
    nbstart = np.cumsum(deg)
    fill = nbstart[:-1].copy()
    nbend = np.empty(2 * m, np.int64)
    for k in range(m):
        nbend[fill[ei[k]]] = 2 * k + 1
        fill[ei[k]] += 1
        nbend[fill[ej[k]]] = 2 * k
        fill[ej[k]] += 1

    nb = 2 * nv
    label = np.zeros(nb, np.int64)
    labelend = np.full(nb, -1, np.int64)
    inblossom = np.arange(nv)
    blossomparent = np.full(nb, -1, np.int64)
    childs = [np.empty(0, np.int64) for _ in range(nb)]
    endps = [np.empty(0, np.int64) for _ in range(nb)]
    bbe = [np.empty(0, np.int64) for _ in range(nb)]
    has_bbe = np.zeros(nb, np.bool_)
    blossombase = np.full(nb, -1, np.int64)
    blossombase[:nv] = np.arange(nv)
    bestedge = np.full(nb, -1, np.int64)
    unused = np.empty(nv, np.int64)
    for i in range(nv):
        unused[i] = nv + i
    dualvar = np.zeros(nb, np.int64)
    dualvar[:nv] = maxw
    allowedge = np.zeros(m, np.bool_)
    queue = np.empty(2 * nb + 2, np.int64)
    st = np.zeros(2, np.int64)  # queue length, unused-stack length
    st[1] = nv
    bestedgeto = np.full(nb, -1, np.int64)
    touched = np.empty(nb, np.int64)
    tmp_a = np.empty(nb, np.int64)
    tmp_b = np.empty(nb, np.int64)
    tmp_c = np.empty(nb, np.int64)
    tmp_d = np.empty(nb, np.int64)
    leafbuf = np.empty(nv, np.int64)
    stackbuf = np.empty(nb, np.int64)
    expstack = np.empty(nb, np.int64)
    stk_b = np.empty(nb, np.int64)
    stk_v = np.empty(nb, np.int64)

    for _stage in range(nv):
        label[:] = 0
        bestedge[:] = -1
        for b in range(nv, nb):
            if has_bbe[b]:
                has_bbe[b] = False
                bbe[b] = np.empty(0, np.int64)
        allowedge[:] = False
        st[0] = 0
        for v in range(nv):
            if mate[v] == -1 and label[inblossom[v]] == 0:
                _assign_label(v, 1, -1, nv, endpoint, mate, label, labelend, inblossom,
                              blossombase, bestedge, childs, queue, st, leafbuf, stackbuf)
        augmented = False
        while True:
            while st[0] > 0 and not augmented:
                st[0] -= 1
                v = queue[st[0]]
                for q in range(nbstart[v], nbstart[v + 1]):
                    p = nbend[q]
                    k = p >> 1
                    w = endpoint[p]
                    if inblossom[v] == inblossom[w]:
                        continue
                    kslack = 0
                    if not allowedge[k]:
                        kslack = _slack(k, ei, ej, wt, dualvar)
                        if kslack <= 0:
                            allowedge[k] = True
                    if allowedge[k]:
                        if label[inblossom[w]] == 0:
                            _assign_label(w, 2, p ^ 1, nv, endpoint, mate, label, labelend,
                                          inblossom, blossombase, bestedge, childs, queue,
                                          st, leafbuf, stackbuf)
                        elif label[inblossom[w]] == 1:
                            base = _scan_blossom(v, w, endpoint, label, labelend, inblossom,
                                                 blossombase, tmp_a)
                            if base >= 0:
                                _add_blossom(base, k, nv, ei, ej, wt, endpoint, nbstart, nbend,
                                             mate, label, labelend, inblossom, blossomparent,
                                             childs, endps, blossombase, bestedge, bbe,
                                             has_bbe, unused, dualvar, queue, st, bestedgeto,
                                             touched, tmp_a, tmp_b, tmp_c, tmp_d, leafbuf,
                                             stackbuf)
                            else:
                                _augment_matching(k, nv, ei, ej, endpoint, mate, label,
                                                  labelend, inblossom, blossomparent, childs,
                                                  endps, blossombase, stk_b, stk_v)
                                augmented = True
                                break
                        elif label[w] == 0:
                            label[w] = 2
                            labelend[w] = p ^ 1
                    elif label[inblossom[w]] == 1:
                        b = inblossom[v]
                        if bestedge[b] == -1 or kslack < _slack(bestedge[b], ei, ej, wt, dualvar):
                            bestedge[b] = k
                    elif label[w] == 0:
                        if bestedge[w] == -1 or kslack < _slack(bestedge[w], ei, ej, wt, dualvar):
                            bestedge[w] = k
            if augmented:
                break

            # no augmenting path under the current duals: pick the dual step
            deltatype = 1
            delta = dualvar[0]
            for v in range(1, nv):
                if dualvar[v] < delta:
                    delta = dualvar[v]
            deltaedge = -1
            deltablossom = -1
            for v in range(nv):
                if label[inblossom[v]] == 0 and bestedge[v] != -1:
                    d = _slack(bestedge[v], ei, ej, wt, dualvar)
                    if d < delta:
                        delta = d
                        deltatype = 2
                        deltaedge = bestedge[v]
            for b in range(nb):
                if blossomparent[b] == -1 and label[b] == 1 and bestedge[b] != -1:
                    d = _slack(bestedge[b], ei, ej, wt, dualvar) // 2
                    if d < delta:
                        delta = d
                        deltatype = 3
                        deltaedge = bestedge[b]
            for b in range(nv, nb):
                if (blossombase[b] >= 0 and blossomparent[b] == -1 and label[b] == 2
                        and dualvar[b] < delta):
                    delta = dualvar[b]
                    deltatype = 4
                    deltablossom = b

            for v in range(nv):
                lb = label[inblossom[v]]
                if lb == 1:
                    dualvar[v] -= delta
                elif lb == 2:
                    dualvar[v] += delta
            for b in range(nv, nb):
                if blossombase[b] >= 0 and blossomparent[b] == -1:
                    if label[b] == 1:
                        dualvar[b] += delta
                    elif label[b] == 2:
                        dualvar[b] -= delta

            if deltatype == 1:
                break
            elif deltatype == 2:
                allowedge[deltaedge] = True
                i = ei[deltaedge]
                if label[inblossom[i]] == 0:
                    i = ej[deltaedge]
                queue[st[0]] = i
                st[0] += 1
            elif deltatype == 3:
                allowedge[deltaedge] = True
                queue[st[0]] = ei[deltaedge]
                st[0] += 1
            else:
                _expand_blossom(deltablossom, False, nv, endpoint, mate, label, labelend,
                                inblossom, blossomparent, childs, endps, blossombase,
                                bestedge, bbe, has_bbe, unused, dualvar, allowedge, queue,
                                st, leafbuf, stackbuf, expstack)
        if not augmented:
            break
        for b in range(nv, nb):
            if (blossomparent[b] == -1 and blossombase[b] >= 0 and label[b] == 1
                    and dualvar[b] == 0):
                _expand_blossom(b, True, nv, endpoint, mate, label, labelend, inblossom,
                                blossomparent, childs, endps, blossombase, bestedge, bbe,
                                has_bbe, unused, dualvar, allowedge, queue, st, leafbuf,
                                stackbuf, expstack)

    out = np.full(nv, -1, np.int64)
    for v in range(nv):
        if mate[v] >= 0:
            out[v] = endpoint[mate[v]]
    return out
