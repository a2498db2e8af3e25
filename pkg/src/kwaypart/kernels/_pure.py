"""Pure-Python kernel implementations.

These mirror the compiled kernels in ``_speedups.pyx`` bit for bit, including
the xorshift64* stream used for random tie-breaking, so either backend can be
selected at import time without changing results.
"""
import numpy as np

_MASK = (1 << 64) - 1
_XS_MULT = 2685821657736338717


def _xs_next(state):
    state ^= (state >> 12)
    state = (state ^ (state << 25)) & _MASK
    state ^= (state >> 27)
    return state, (state * _XS_MULT) & _MASK


def _xs_seed(seed):
    # 0 is an absorbing state for xorshift; splitmix-style scramble avoids it.
    s = (seed * 0x9E3779B97F4A7C15 + 0xBF58476D1CE4E5B9) & _MASK
    return s if s != 0 else 0x2545F4914F6CDD1D


def edge_cut(xadj, adjncy, adjwgt, part):
    total = 0
    n = len(xadj) - 1
    for u in range(n):
        pu = part[u]
        for j in range(xadj[u], xadj[u + 1]):
            if part[adjncy[j]] != pu:
                total += int(adjwgt[j])
    return total // 2


def comm_volume(xadj, adjncy, part, k):
    n = len(xadj) - 1
    per_block = np.zeros(k, dtype=np.int64)
    total = 0
    seen = np.full(k, -1, dtype=np.int64)
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
    return total, per_block


def boundary_mask(xadj, adjncy, part):
    n = len(xadj) - 1
    mask = np.zeros(n, dtype=np.uint8)
    for u in range(n):
        pu = part[u]
        for j in range(xadj[u], xadj[u + 1]):
            if part[adjncy[j]] != pu:
                mask[u] = 1
                break
    return mask


def contract_csr(xadj, adjncy, adjwgt, vwgt, cluster_of, nc):
    n = len(xadj) - 1
    cvwgt = np.zeros(nc, dtype=np.int64)
    for v in range(n):
        cvwgt[cluster_of[v]] += vwgt[v]

    # Bucket fine nodes by cluster so each coarse node is built in one scan.
    counts = np.zeros(nc + 1, dtype=np.int64)
    for v in range(n):
        counts[cluster_of[v] + 1] += 1
    starts = np.cumsum(counts)
    members = np.empty(n, dtype=np.int64)
    fill = starts[:-1].copy()
    for v in range(n):
        c = cluster_of[v]
        members[fill[c]] = v
        fill[c] += 1

    acc = np.zeros(nc, dtype=np.int64)
    cxadj = np.zeros(nc + 1, dtype=np.int64)
    cadjncy = []
    cadjwgt = []
    for c in range(nc):
        touched = []
        for idx in range(starts[c], starts[c + 1]):
            v = members[idx]
            for j in range(xadj[v], xadj[v + 1]):
                d = cluster_of[adjncy[j]]
                if d == c:
                    continue
                if acc[d] == 0:
                    touched.append(d)
                acc[d] += int(adjwgt[j])
        touched.sort()
        for d in touched:
            cadjncy.append(d)
            cadjwgt.append(int(acc[d]))
            acc[d] = 0
        cxadj[c + 1] = len(cadjncy)
    return (cxadj,
            np.asarray(cadjncy, dtype=np.int64),
            np.asarray(cadjwgt, dtype=np.int64),
            cvwgt)


def lp_sweep(xadj, adjncy, adjwgt, vwgt, labels, cluster_weight, order,
             ubound, seed, class_of):
    """One label-propagation sweep over ``order``; mutates labels/weights.

    A node adopts the incident label with maximum total edge weight among
    labels whose cluster weight plus the node weight stays within ``ubound``
    (its own label always qualifies). Ties are broken uniformly at random via
    the shared xorshift stream. When ``class_of`` is given, only neighbors in
    the same class contribute candidate labels. Returns the move count.
    """
    n = len(xadj) - 1
    state = _xs_seed(seed)
    acc = np.zeros(n, dtype=np.int64)
    moves = 0
    for v in order:
        own = int(labels[v])
        cv = int(vwgt[v])
        touched = []
        for j in range(xadj[v], xadj[v + 1]):
            u = adjncy[j]
            if class_of is not None and class_of[u] != class_of[v]:
                continue
            lu = labels[u]
            if acc[lu] == 0 and lu != own:
                touched.append(int(lu))
            acc[lu] += int(adjwgt[j])
        best = own
        best_w = int(acc[own])
        ties = 1
        for lab in touched:
            w = int(acc[lab])
            if int(cluster_weight[lab]) + cv > ubound:
                acc[lab] = 0
                continue
            acc[lab] = 0
            if w > best_w:
                best, best_w, ties = lab, w, 1
            elif w == best_w:
                ties += 1
                state, r = _xs_next(state)
                if r % ties == 0:
                    best = lab
        acc[own] = 0
        if best != own:
            cluster_weight[own] -= cv
            cluster_weight[best] += cv
            labels[v] = best
            moves += 1
    return moves
