"""Pure-Python implementations of the hot kernels.

Bitsets are Python ints. :mod:`stanleydepth.kernels` picks the compiled
versions from ``_ckernels`` when the extension is importable and falls back
to these otherwise; both must return identical results.
"""
from __future__ import annotations

from math import comb

BACKEND = "python"


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _pair_points(need, cand_masks, cover_of):
    """Need points whose covering candidates are all pairs {p, q}, q not needed.

    Once only such points remain open the rest is a bipartite matching.
    Returns the mask of those points and, per candidate, the partner bit.
    """
    partner = [0] * len(cand_masks)
    pair_mask = 0
    for p in _bits(need):
        ok = True
        for c in cover_of[p]:
            other = cand_masks[c] & ~(1 << p)
            if other.bit_count() != 1 or other & need:
                ok = False
            else:
                partner[c] = other
        if ok:
            pair_mask |= 1 << p
    return pair_mask, partner


def _match(open_pts, avail, cover_of, partner):
    """Kuhn augmenting paths; chosen candidate ids or None."""
    owner = {}  # partner bit -> (point, candidate)
    for p in _bits(open_pts):
        seen = 0

        def aug(q):
            nonlocal seen
            for c in cover_of[q]:
                t = partner[c]
                if not t & avail or t & seen:
                    continue
                seen |= t
                if t not in owner or aug(owner[t][0]):
                    owner[t] = (q, c)
                    return True
            return False

        if not aug(p):
            return None
    return [c for _, c in sorted(owner.values())]


def cover_search(need, avail, cand_masks, cover_of,
                 cc_masks=None, cc_k=0, up_masks=None, memo_cap=1 << 20):
    """Exact cover of the ``need`` points by disjoint candidate intervals.

    Points are bit positions; ``cand_masks[c]`` is the point set of candidate
    ``c`` and ``cover_of[p]`` lists the candidates containing point ``p``.
    ``avail`` holds the unused points (need points and optional tops). Each
    node branches on the open need point with the fewest live candidates.
    When every open point only has two-point candidates the remainder is
    solved as a bipartite matching.

    ``cc_masks`` enables the counting prune on the residual: entry ``j`` is
    the mask of ``j``-sets, intervals being topped at size ``cc_k``.
    ``up_masks`` additionally applies it to the up set of every open point.

    Returns ``(chosen candidate ids or None, nodes expanded)``.
    """
    failed: set[int] = set()
    nodes = 0
    pair_mask, partner = _pair_points(need, cand_masks, cover_of)
    binoms = [[comb(cc_k - i, j - i) if j >= i else 0 for j in range(cc_k + 1)]
              for i in range(cc_k + 1)]

    def counts_ok(mask, base):
        a = [(mask & cc_masks[j]).bit_count() for j in range(cc_k + 1)]
        for i in range(base, cc_k + 1):
            ai = a[i]
            if ai:
                row = binoms[i]
                for j in range(i + 1, cc_k + 1):
                    a[j] -= ai * row[j]
                    if a[j] < 0:
                        return False
        return True

    def fail(avail):
        if len(failed) >= memo_cap:
            failed.clear()
        failed.add(avail)
        return None

    def rec(avail):
        nonlocal nodes
        nodes += 1
        open_need = avail & need
        if not open_need:
            return []
        if avail in failed:
            return None
        if open_need & ~pair_mask == 0:
            got = _match(open_need, avail, cover_of, partner)
            return got if got is not None else fail(avail)
        if cc_masks is not None:
            if not counts_ok(avail, 0):
                return fail(avail)
            if up_masks is not None:
                for p in _bits(open_need):
                    base = 0
                    while not (1 << p) & cc_masks[base]:
                        base += 1
                    if not counts_ok(avail & up_masks[p], base):
                        return fail(avail)
        best_live = None
        for p in _bits(open_need):
            live = [c for c in cover_of[p] if cand_masks[c] & ~avail == 0]
            if not live:
                return fail(avail)
            if best_live is None or len(live) < len(best_live):
                best_live = live
                if len(live) == 1:
                    break
        for c in best_live:
            sub = rec(avail & ~cand_masks[c])
            if sub is not None:
                sub.append(c)
                return sub
        return fail(avail)

    result = rec(avail)
    if result is not None:
        result.reverse()
    return result, nodes


def edge_images(edges, perms):
    """Bit-position maps of edge-set masks under each vertex permutation.

    Edge ``edges[i]`` occupies bit ``len(edges) - 1 - i`` of a mask, so with
    ``edges`` in canonical order a larger mask means a lexicographically
    smaller member list.
    """
    m = len(edges)
    pos = {e: m - 1 - i for i, e in enumerate(edges)}
    out = []
    for perm in perms:
        row = [0] * m
        for e in edges:
            r = 0
            for v in _bits(e):
                r |= 1 << perm[v]
            row[pos[e]] = pos[r]
        out.append(row)
    return out


def relabel_mask(mask, image):
    r = 0
    for i in _bits(mask):
        r |= 1 << image[i]
    return r


def canonical_mask(mask, images):
    """Largest image of ``mask`` over all permutation maps in ``images``."""
    best = mask
    for image in images:
        r = 0
        for i in _bits(mask):
            r |= 1 << image[i]
        if r > best:
            best = r
    return best


def is_canonical(mask, images):
    for image in images:
        r = 0
        for i in _bits(mask):
            r |= 1 << image[i]
        if r > mask:
            return False
    return True


def canonical_filter(lo, hi, images):
    """Masks in ``[lo, hi)`` that are the largest in their orbit."""
    import numpy as np

    masks = np.arange(lo, hi, dtype=np.int64)
    width = len(images[0]) if images else 0
    # cheap vectorised rejection with a handful of maps first
    for image in images[:64]:
        if not len(masks):
            break
        img = np.zeros_like(masks)
        for i in range(width):
            img |= ((masks >> i) & 1) << image[i]
        masks = masks[masks >= img]
    return [int(m) for m in masks if is_canonical(int(m), images)]
