# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels in :mod:`stanleydepth._pykernels`.

Bitsets are arrays of 64-bit words. Search order, memo policy and node
counts follow the pure-Python code exactly, so both backends return the
same candidate ids.
"""
from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, calloc, free
from libc.string cimport memcpy
from cpython.bytes cimport PyBytes_FromStringAndSize

from . import _pykernels as _py

BACKEND = "cython"

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int _pop(uint64_t x) nogil:
    return __builtin_popcountll(x)


cdef inline int _ctz(uint64_t x) nogil:
    return __builtin_ctzll(x)


cdef void _to_words(object mask, uint64_t* out, int W):
    cdef int w
    m = int(mask)
    for w in range(W):
        out[w] = <uint64_t>(m & 0xFFFFFFFFFFFFFFFF)
        m >>= 64


cdef class _Search:
    cdef int W, npts, ncand, cc_k, has_cc, has_up
    cdef uint64_t* need
    cdef uint64_t* pair
    cdef uint64_t* cand
    cdef int* cov_start
    cdef int* cov_ids
    cdef int* partner
    cdef uint64_t* cc
    cdef uint64_t* up
    cdef int* level
    cdef int64_t* binom
    cdef int64_t* counts
    cdef uint64_t* stack
    cdef int* owner_pt
    cdef int* owner_c
    cdef uint64_t* seen
    cdef public long long nodes
    cdef object failed
    cdef Py_ssize_t memo_cap

    def __cinit__(self):
        self.need = self.pair = self.cand = self.cc = self.up = self.stack = self.seen = NULL
        self.cov_start = self.cov_ids = self.partner = self.level = NULL
        self.owner_pt = self.owner_c = NULL
        self.binom = self.counts = NULL

    def __dealloc__(self):
        free(self.need); free(self.pair); free(self.cand); free(self.cc); free(self.up)
        free(self.stack); free(self.seen); free(self.cov_start); free(self.cov_ids)
        free(self.partner); free(self.level); free(self.owner_pt); free(self.owner_c)
        free(self.binom); free(self.counts)

    def __init__(self, need, cand_masks, cover_of, cc_masks, int cc_k, up_masks, memo_cap):
        cdef int W, i, j, c, p, total, depth
        self.npts = len(cover_of)
        self.ncand = len(cand_masks)
        W = max(1, (self.npts + 63) // 64)
        self.W = W
        self.need = <uint64_t*>calloc(W, sizeof(uint64_t))
        self.pair = <uint64_t*>calloc(W, sizeof(uint64_t))
        self.cand = <uint64_t*>calloc(max(1, self.ncand) * W, sizeof(uint64_t))
        self.cov_start = <int*>calloc(self.npts + 1, sizeof(int))
        self.partner = <int*>malloc(max(1, self.ncand) * sizeof(int))
        _to_words(need, self.need, W)
        for c in range(self.ncand):
            _to_words(cand_masks[c], self.cand + c * W, W)
        total = 0
        for p in range(self.npts):
            self.cov_start[p] = total
            total += len(cover_of[p])
        self.cov_start[self.npts] = total
        self.cov_ids = <int*>malloc(max(1, total) * sizeof(int))
        for p in range(self.npts):
            j = self.cov_start[p]
            for c in cover_of[p]:
                self.cov_ids[j] = c
                j += 1
        pair_mask, partner = _py._pair_points(need, cand_masks, cover_of)
        _to_words(pair_mask, self.pair, W)
        for c in range(self.ncand):
            self.partner[c] = (<object>partner[c]).bit_length() - 1
        self.has_cc = cc_masks is not None
        self.has_up = up_masks is not None
        self.cc_k = cc_k
        if self.has_cc:
            self.cc = <uint64_t*>calloc((cc_k + 1) * W, sizeof(uint64_t))
            for j in range(cc_k + 1):
                _to_words(cc_masks[j], self.cc + j * W, W)
            self.binom = <int64_t*>calloc((cc_k + 1) * (cc_k + 1), sizeof(int64_t))
            self.counts = <int64_t*>calloc(cc_k + 1, sizeof(int64_t))
            from math import comb
            for i in range(cc_k + 1):
                for j in range(i, cc_k + 1):
                    self.binom[i * (cc_k + 1) + j] = comb(cc_k - i, j - i)
        if self.has_up:
            self.up = <uint64_t*>calloc(self.npts * W, sizeof(uint64_t))
            self.level = <int*>calloc(self.npts, sizeof(int))
            for p in range(self.npts):
                _to_words(up_masks[p], self.up + p * W, W)
                i = 0
                while not (self.cc[i * W + p // 64] >> (p % 64)) & 1:
                    i += 1
                self.level[p] = i
        depth = 0
        for i in range(W):
            depth += _pop(self.need[i])
        self.stack = <uint64_t*>calloc((depth + 2) * W, sizeof(uint64_t))
        self.owner_pt = <int*>malloc(max(1, self.npts) * sizeof(int))
        self.owner_c = <int*>malloc(max(1, self.npts) * sizeof(int))
        self.seen = <uint64_t*>calloc(W, sizeof(uint64_t))
        self.nodes = 0
        self.failed = set()
        self.memo_cap = memo_cap

    cdef bint _counts_ok(self, uint64_t* mask, uint64_t* restrict, int base):
        cdef int W = self.W, K = self.cc_k, i, j, w
        cdef int64_t ai, s
        for j in range(K + 1):
            s = 0
            for w in range(W):
                if restrict == NULL:
                    s += _pop(mask[w] & self.cc[j * W + w])
                else:
                    s += _pop(mask[w] & restrict[w] & self.cc[j * W + w])
            self.counts[j] = s
        for i in range(base, K + 1):
            ai = self.counts[i]
            if ai:
                for j in range(i + 1, K + 1):
                    self.counts[j] -= ai * self.binom[i * (K + 1) + j]
                    if self.counts[j] < 0:
                        return False
        return True

    cdef object _fail(self, bytes key):
        if len(self.failed) >= self.memo_cap:
            self.failed.clear()
        self.failed.add(key)
        return None

    cdef bint _aug(self, int q, uint64_t* avail):
        cdef int j, c, t
        for j in range(self.cov_start[q], self.cov_start[q + 1]):
            c = self.cov_ids[j]
            t = self.partner[c]
            if not (avail[t >> 6] >> (t & 63)) & 1 or (self.seen[t >> 6] >> (t & 63)) & 1:
                continue
            self.seen[t >> 6] |= (<uint64_t>1) << (t & 63)
            if self.owner_pt[t] < 0 or self._aug(self.owner_pt[t], avail):
                self.owner_pt[t] = q
                self.owner_c[t] = c
                return True
        return False

    cdef object _match(self, uint64_t* open_pts, uint64_t* avail):
        cdef int W = self.W, w, p, t
        cdef uint64_t x
        for t in range(self.npts):
            self.owner_pt[t] = -1
        for w in range(W):
            x = open_pts[w]
            while x:
                p = w * 64 + _ctz(x)
                x &= x - 1
                for t in range(W):
                    self.seen[t] = 0
                if not self._aug(p, avail):
                    return None
        pairs = []
        for t in range(self.npts):
            if self.owner_pt[t] >= 0:
                pairs.append((self.owner_pt[t], self.owner_c[t]))
        pairs.sort()
        return [c for _, c in pairs]

    cdef object _rec(self, int depth):
        cdef int W = self.W, w, p, j, c, best_p = -1, best_n = -1, live
        cdef uint64_t* avail = self.stack + depth * W
        cdef uint64_t* nxt = avail + W
        cdef uint64_t x
        cdef bint any_open = False, all_pair = True, ok
        cdef uint64_t* cm
        self.nodes += 1
        for w in range(W):
            x = avail[w] & self.need[w]
            if x:
                any_open = True
                if x & ~self.pair[w]:
                    all_pair = False
        if not any_open:
            return []
        key = PyBytes_FromStringAndSize(<char*>avail, W * 8)
        if key in self.failed:
            return None
        if all_pair:
            for w in range(W):
                nxt[w] = avail[w] & self.need[w]
            got = self._match(nxt, avail)
            return got if got is not None else self._fail(key)
        if self.has_cc:
            if not self._counts_ok(avail, NULL, 0):
                return self._fail(key)
            if self.has_up:
                for w in range(W):
                    x = avail[w] & self.need[w]
                    while x:
                        p = w * 64 + _ctz(x)
                        x &= x - 1
                        if not self._counts_ok(avail, self.up + p * W, self.level[p]):
                            return self._fail(key)
        for w in range(W):
            x = avail[w] & self.need[w]
            while x:
                p = w * 64 + _ctz(x)
                x &= x - 1
                live = 0
                for j in range(self.cov_start[p], self.cov_start[p + 1]):
                    cm = self.cand + self.cov_ids[j] * W
                    ok = True
                    for c in range(W):
                        if cm[c] & ~avail[c]:
                            ok = False
                            break
                    if ok:
                        live += 1
                if live == 0:
                    return self._fail(key)
                if best_n < 0 or live < best_n:
                    best_n = live
                    best_p = p
                    if live == 1:
                        break
            if best_n == 1:
                break
        for j in range(self.cov_start[best_p], self.cov_start[best_p + 1]):
            c = self.cov_ids[j]
            cm = self.cand + c * W
            ok = True
            for w in range(W):
                if cm[w] & ~avail[w]:
                    ok = False
                    break
            if not ok:
                continue
            for w in range(W):
                nxt[w] = avail[w] & ~cm[w]
            sub = self._rec(depth + 1)
            if sub is not None:
                sub.append(c)
                return sub
        return self._fail(key)

    def run(self, avail):
        _to_words(avail, self.stack, self.W)
        result = self._rec(0)
        if result is not None:
            result.reverse()
        return result


def cover_search(need, avail, cand_masks, cover_of,
                 cc_masks=None, cc_k=0, up_masks=None, memo_cap=1 << 20):
    """Same contract as the pure-Python ``cover_search``."""
    s = _Search(need, cand_masks, cover_of, cc_masks, cc_k, up_masks, memo_cap)
    return s.run(avail), s.nodes


cdef class _Images:
    cdef int count, width
    cdef unsigned char* pos
    cdef object source

    def __cinit__(self, images):
        cdef int i, j
        self.source = images
        self.count = len(images)
        self.width = len(images[0]) if self.count else 0
        self.pos = <unsigned char*>malloc(max(1, self.count * self.width))
        for i in range(self.count):
            row = images[i]
            for j in range(self.width):
                self.pos[i * self.width + j] = row[j]

    def __dealloc__(self):
        free(self.pos)


# keyed by id(); the table holds a reference to its source so the id stays valid
_tables = {}


cdef _Images _table(images):
    t = _tables.get(id(images))
    if t is None:
        if len(_tables) > 64:
            _tables.clear()
        t = _Images(images)
        _tables[id(images)] = t
    return <_Images>t


cdef inline uint64_t _image(uint64_t mask, unsigned char* row) nogil:
    cdef uint64_t r = 0
    while mask:
        r |= (<uint64_t>1) << row[_ctz(mask)]
        mask &= mask - 1
    return r


cdef bint _canon(uint64_t mask, _Images t) nogil:
    cdef int i
    for i in range(t.count):
        if _image(mask, t.pos + i * t.width) > mask:
            return False
    return True


def canonical_mask(mask, images):
    """Largest image of ``mask`` over all permutation maps in ``images``."""
    if not images or len(images[0]) > 64:
        return _py.canonical_mask(mask, images)
    cdef _Images t = _table(images)
    cdef uint64_t m = mask, best = m, r
    cdef int i
    with nogil:
        for i in range(t.count):
            r = _image(m, t.pos + i * t.width)
            if r > best:
                best = r
    return best


def is_canonical(mask, images):
    if not images or len(images[0]) > 64:
        return _py.is_canonical(mask, images)
    cdef _Images t = _table(images)
    return _canon(<uint64_t>mask, t)


def canonical_filter(lo, hi, images):
    """Masks in ``[lo, hi)`` that are the largest in their orbit."""
    if not images or len(images[0]) > 63:
        return _py.canonical_filter(lo, hi, images)
    cdef _Images t = _table(images)
    cdef uint64_t m, a = lo, b = hi
    out = []
    m = a
    while m < b:
        if _canon(m, t):
            out.append(m)
        m += 1
    return out
