# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Must stay result-identical to ``_pure.py``."""
import numpy as np

cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t

cnp.import_array()

cdef uint64_t _XS_MULT = 2685821657736338717UL


cdef inline uint64_t _xs_step(uint64_t *state) nogil:
    cdef uint64_t s = state[0]
    s ^= s >> 12
    s ^= s << 25
    s ^= s >> 27
    state[0] = s
    return s * _XS_MULT


cdef inline uint64_t _xs_seed(uint64_t seed) nogil:
    cdef uint64_t s = seed * 0x9E3779B97F4A7C15UL + 0xBF58476D1CE4E5B9UL
    if s == 0:
        s = 0x2545F4914F6CDD1DUL
    return s


def edge_cut(int64_t[::1] xadj, int64_t[::1] adjncy, int64_t[::1] adjwgt,
             int64_t[::1] part):
    cdef int64_t total = 0
    cdef Py_ssize_t n = xadj.shape[0] - 1
    cdef Py_ssize_t u, j
    cdef int64_t pu
    for u in range(n):
        pu = part[u]
        for j in range(xadj[u], xadj[u + 1]):
            if part[adjncy[j]] != pu:
                total += adjwgt[j]
    return int(total // 2)


def comm_volume(int64_t[::1] xadj, int64_t[::1] adjncy, int64_t[::1] part,
                Py_ssize_t k):
    cdef Py_ssize_t n = xadj.shape[0] - 1
    per_block_arr = np.zeros(k, dtype=np.int64)
    seen_arr = np.full(k, -1, dtype=np.int64)
    cdef int64_t[::1] per_block = per_block_arr
    cdef int64_t[::1] seen = seen_arr
    cdef int64_t total = 0, d, pu, pv
    cdef Py_ssize_t u, j
    for u in range(n):
        pu = part[u]
        d = 0
        for j in range(xadj[u], xadj[u + 1]):
            pv = part[adjncy[j]]
            if pv != pu and seen[pv] != u:
                seen[pv] = u
                d += 1
        total += d
        per_block[pu] += d
    return int(total), per_block_arr


def boundary_mask(int64_t[::1] xadj, int64_t[::1] adjncy, int64_t[::1] part):
    cdef Py_ssize_t n = xadj.shape[0] - 1
    mask_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] mask = mask_arr
    cdef Py_ssize_t u, j
    cdef int64_t pu
    for u in range(n):
        pu = part[u]
        for j in range(xadj[u], xadj[u + 1]):
            if part[adjncy[j]] != pu:
                mask[u] = 1
                break
    return mask_arr


def contract_csr(int64_t[::1] xadj, int64_t[::1] adjncy, int64_t[::1] adjwgt,
                 int64_t[::1] vwgt, int64_t[::1] cluster_of, Py_ssize_t nc):
    cdef Py_ssize_t n = xadj.shape[0] - 1
    cdef Py_ssize_t v, j, c, idx, t
    cdef int64_t d

    cvwgt_arr = np.zeros(nc, dtype=np.int64)
    cdef int64_t[::1] cvwgt = cvwgt_arr
    for v in range(n):
        cvwgt[cluster_of[v]] += vwgt[v]

    starts_arr = np.zeros(nc + 1, dtype=np.int64)
    cdef int64_t[::1] starts = starts_arr
    for v in range(n):
        starts[cluster_of[v] + 1] += 1
    for c in range(nc):
        starts[c + 1] += starts[c]
    members_arr = np.empty(n, dtype=np.int64)
    fill_arr = starts_arr[:-1].copy()
    cdef int64_t[::1] members = members_arr
    cdef int64_t[::1] fill = fill_arr
    for v in range(n):
        c = cluster_of[v]
        members[fill[c]] = v
        fill[c] += 1

    acc_arr = np.zeros(nc, dtype=np.int64)
    touched_arr = np.empty(nc, dtype=np.int64)
    cdef int64_t[::1] acc = acc_arr
    cdef int64_t[::1] touched = touched_arr
    cxadj_arr = np.zeros(nc + 1, dtype=np.int64)
    cdef int64_t[::1] cxadj = cxadj_arr

    out_adj = []
    out_wgt = []
    cdef Py_ssize_t ntouched
    for c in range(nc):
        ntouched = 0
        for idx in range(starts[c], starts[c + 1]):
            v = members[idx]
            for j in range(xadj[v], xadj[v + 1]):
                d = cluster_of[adjncy[j]]
                if d == c:
                    continue
                if acc[d] == 0:
                    touched[ntouched] = d
                    ntouched += 1
                acc[d] += adjwgt[j]
        sub = np.sort(touched_arr[:ntouched])
        for t in range(ntouched):
            d = sub[t]
            out_adj.append(int(d))
            out_wgt.append(int(acc[d]))
            acc[d] = 0
        cxadj[c + 1] = len(out_adj)
    return (cxadj_arr,
            np.asarray(out_adj, dtype=np.int64),
            np.asarray(out_wgt, dtype=np.int64),
            cvwgt_arr)


def lp_sweep(int64_t[::1] xadj, int64_t[::1] adjncy, int64_t[::1] adjwgt,
             int64_t[::1] vwgt, int64_t[::1] labels,
             int64_t[::1] cluster_weight, int64_t[::1] order,
             int64_t ubound, uint64_t seed, class_of):
    cdef Py_ssize_t n = xadj.shape[0] - 1
    cdef uint64_t state = _xs_seed(seed)
    acc_arr = np.zeros(n, dtype=np.int64)
    touched_arr = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] acc = acc_arr
    cdef int64_t[::1] touched = touched_arr
    cdef int64_t[::1] cls
    cdef bint has_cls = class_of is not None
    if has_cls:
        cls = class_of
    cdef Py_ssize_t i, j, t, ntouched
    cdef int64_t v, u, own, cv, lu, best, best_w, ties, w, lab
    cdef int64_t moves = 0
    for i in range(order.shape[0]):
        v = order[i]
        own = labels[v]
        cv = vwgt[v]
        ntouched = 0
        for j in range(xadj[v], xadj[v + 1]):
            u = adjncy[j]
            if has_cls and cls[u] != cls[v]:
                continue
            lu = labels[u]
            if acc[lu] == 0 and lu != own:
                touched[ntouched] = lu
                ntouched += 1
            acc[lu] += adjwgt[j]
        best = own
        best_w = acc[own]
        ties = 1
        for t in range(ntouched):
            lab = touched[t]
            w = acc[lab]
            acc[lab] = 0
            if cluster_weight[lab] + cv > ubound:
                continue
            if w > best_w:
                best = lab
                best_w = w
                ties = 1
            elif w == best_w:
                ties += 1
                if _xs_step(&state) % <uint64_t>ties == 0:
                    best = lab
        acc[own] = 0
        if best != own:
            cluster_weight[own] -= cv
            cluster_weight[best] += cv
            labels[v] = best
            moves += 1
    return int(moves)
