# cython: language_level=3
# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled tree kernel.

Mirrors the pure-Python kernel operation for operation: identical
structures, identical return values, identical statistics.  Nodes carry
their coordinates in C arrays, the bulk builder works on flat index
orderings, and the partition/sort sweeps release the GIL so parallel
rebuild threads can overlap.
"""

import threading

cimport cython
from libc.stdlib cimport free, malloc
from libc.string cimport memcpy

from .errors import (
    DimensionMismatchError,
    DuplicateDatumError,
    EmptySubtreeError,
)
from .node import Node as PyNode
from .validate import VerifyReport, verify_subtree

_VARIANTS = {"knlogn": 0, "nlogn": 1}


@cython.final
cdef class _Node:
    cdef long long* pt
    cdef _Node less
    cdef _Node greater
    cdef int height

    def __dealloc__(self):
        if self.pt != NULL:
            free(self.pt)


cdef _Node _new_node(const long long* src, int k):
    cdef _Node nd = _Node.__new__(_Node)
    nd.pt = <long long*> malloc(k * sizeof(long long))
    if nd.pt == NULL:
        raise MemoryError()
    memcpy(nd.pt, src, k * sizeof(long long))
    nd.height = 1
    return nd


cdef inline int _cmp(const long long* a, const long long* b, int p, int k) noexcept nogil:
    cdef int i = p
    cdef int step
    for step in range(k):
        if a[i] < b[i]:
            return -1
        if a[i] > b[i]:
            return 1
        i += 1
        if i == k:
            i = 0
    return 0


cdef inline bint _balanced(bint is_avl, int max_diff, int hl, int hr) noexcept nogil:
    cdef int lo, hi
    if hl < hr:
        lo = hl
        hi = hr
    else:
        lo = hr
        hi = hl
    if is_avl:
        return hi - lo <= max_diff
    if lo == 0:
        return hi - lo <= 1
    return hi <= 2 * lo


cdef inline int _height(_Node node) noexcept:
    return 0 if node is None else node.height


cdef Py_ssize_t _count(_Node node) noexcept:
    if node is None:
        return 0
    return 1 + _count(node.less) + _count(node.greater)


cdef void _fill_inorder(_Node node, long long* out, Py_ssize_t* pos, int k) noexcept:
    if node is None:
        return
    _fill_inorder(node.less, out, pos, k)
    memcpy(out + pos[0] * k, node.pt, k * sizeof(long long))
    pos[0] += 1
    _fill_inorder(node.greater, out, pos, k)


cdef tuple _as_tuple(const long long* pt, int k):
    cdef int i
    return tuple([pt[i] for i in range(k)])


cdef _Node _extreme_node(_Node node, int level, int dim, bint want_max, int k):
    cdef _Node best, cand, child
    cdef int c
    if level % k == dim:
        child = node.greater if want_max else node.less
        if child is None:
            return node
        return _extreme_node(child, level + 1, dim, want_max, k)
    best = node
    if node.less is not None:
        cand = _extreme_node(node.less, level + 1, dim, want_max, k)
        c = _cmp(cand.pt, best.pt, dim, k)
        if (c > 0) if want_max else (c < 0):
            best = cand
    if node.greater is not None:
        cand = _extreme_node(node.greater, level + 1, dim, want_max, k)
        c = _cmp(cand.pt, best.pt, dim, k)
        if (c > 0) if want_max else (c < 0):
            best = cand
    return best


cdef struct _KeyIdx:
    long long key
    Py_ssize_t idx


cdef void _sort_gather(const long long* data, Py_ssize_t n, int k, int p,
                       long long* dest, _KeyIdx* pairs, _KeyIdx* tmp) noexcept nogil:
    """Write the n rows of data into dest, sorted by the super key at p.

    Sorts (leading coordinate, row index) pairs, falling back to a full
    super-key comparison only on equal leading coordinates, then gathers
    the rows once.
    """
    cdef Py_ssize_t i
    for i in range(n):
        pairs[i].key = data[i * k + p]
        pairs[i].idx = i
    _msort_pairs(data, k, p, pairs, tmp, n)
    for i in range(n):
        memcpy(dest + i * k, data + pairs[i].idx * k, k * sizeof(long long))


cdef inline bint _pair_le(const long long* data, int k, int p, _KeyIdx a,
                          _KeyIdx b) noexcept nogil:
    if a.key != b.key:
        return a.key < b.key
    return _cmp(data + a.idx * k, data + b.idx * k, p, k) <= 0


cdef void _msort_pairs(const long long* data, int k, int p, _KeyIdx* pairs,
                       _KeyIdx* tmp, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t width = 1
    cdef Py_ssize_t i, l, r, e, x, y, z
    cdef _KeyIdx* src = pairs
    cdef _KeyIdx* dst = tmp
    cdef _KeyIdx* swap
    while width < n:
        i = 0
        while i < n:
            l = i
            r = i + width
            e = r + width
            if r > n:
                r = n
            if e > n:
                e = n
            x = l
            y = r
            z = l
            while x < r and y < e:
                if _pair_le(data, k, p, src[x], src[y]):
                    dst[z] = src[x]
                    x += 1
                else:
                    dst[z] = src[y]
                    y += 1
                z += 1
            while x < r:
                dst[z] = src[x]
                x += 1
                z += 1
            while y < e:
                dst[z] = src[y]
                y += 1
                z += 1
            i += 2 * width
        swap = src
        src = dst
        dst = swap
        width *= 2
    if src != pairs:
        memcpy(pairs, src, n * sizeof(_KeyIdx))


cdef void _split_level(long long** src, long long** dst, long long* out,
                       Py_ssize_t lo, Py_ssize_t hi, int p, int k,
                       int variant) noexcept nogil:
    """One level's median split: partition src[q][lo..hi] into dst[q].

    The median row is written to out first so it survives the overwrite;
    dst receives less rows, the median, then greater rows, stably, for
    every ordering.  The nlogn variant moves the discriminant ordering's
    two halves positionally instead of re-comparing them.
    """
    cdef Py_ssize_t m = hi - lo + 1
    cdef Py_ssize_t nl = (m - 1) // 2
    cdef size_t row = k * sizeof(long long)
    cdef const long long* mpt
    cdef long long* s
    cdef long long* d
    cdef Py_ssize_t i, a, b
    cdef int q, c

    memcpy(out + (lo + nl) * k, src[p] + (lo + nl) * k, row)
    mpt = out + (lo + nl) * k
    for q in range(k):
        s = src[q]
        d = dst[q]
        if variant == 1 and q == p:
            memcpy(d + lo * k, s + lo * k, nl * row)
            memcpy(d + (lo + nl + 1) * k, s + (lo + nl + 1) * k,
                   (m - 1 - nl) * row)
            continue
        a = lo
        b = lo + nl + 1
        for i in range(lo, hi + 1):
            c = _cmp(s + i * k, mpt, p, k)
            if c < 0:
                memcpy(d + a * k, s + i * k, row)
                a += 1
            elif c > 0:
                memcpy(d + b * k, s + i * k, row)
                b += 1


cdef void _layout_seq(long long** src, long long** dst, long long* out,
                      Py_ssize_t lo, Py_ssize_t hi, int level, int k,
                      int variant) noexcept nogil:
    """Fill out[] with every range's median row, single-threaded."""
    cdef Py_ssize_t m = hi - lo + 1
    cdef Py_ssize_t nl
    if m <= 0:
        return
    cdef int p = level % k
    if m == 1:
        memcpy(out + lo * k, src[p] + lo * k, k * sizeof(long long))
        return
    nl = (m - 1) // 2
    _split_level(src, dst, out, lo, hi, p, k, variant)
    _layout_seq(dst, src, out, lo, lo + nl - 1, level + 1, k, variant)
    _layout_seq(dst, src, out, lo + nl + 1, hi, level + 1, k, variant)


cdef _Node _materialize(const long long* out, Py_ssize_t lo, Py_ssize_t hi,
                        int k):
    """Build nodes from the layout; ranges and medians are positional."""
    cdef Py_ssize_t m = hi - lo + 1
    if m <= 0:
        return None
    cdef Py_ssize_t nl = (m - 1) // 2
    cdef _Node node = _new_node(out + (lo + nl) * k, k)
    node.less = _materialize(out, lo, lo + nl - 1, k)
    node.greater = _materialize(out, lo + nl + 1, hi, k)
    cdef int hl = _height(node.less)
    cdef int hr = _height(node.greater)
    node.height = 1 + (hl if hl > hr else hr)
    return node


cdef class _SortJob:
    """Sorts one super-key ordering in a worker thread."""
    cdef long long* data
    cdef Py_ssize_t n
    cdef int k, p
    cdef long long* dest
    cdef _KeyIdx* pairs
    cdef _KeyIdx* tmp

    def run(self):
        with nogil:
            _sort_gather(self.data, self.n, self.k, self.p, self.dest,
                         self.pairs, self.tmp)


cdef class _LayoutJob:
    """Carries one half of a parallel layout into a worker thread."""
    cdef CyEngine eng
    cdef long long** src
    cdef long long** dst
    cdef long long* out
    cdef Py_ssize_t lo, hi
    cdef int level, workers, variant
    cdef object error

    def run(self):
        try:
            self.eng._layout_par(self.src, self.dst, self.out, self.lo,
                                 self.hi, self.level, self.workers,
                                 self.variant)
        except BaseException as exc:
            self.error = exc


@cython.final
cdef class CyEngine:
    """Compiled engine behind KdTree; see the pure engine for semantics."""

    cdef readonly int k
    cdef bint is_avl
    cdef int max_diff
    cdef bint higher_strategy
    cdef readonly int workers
    cdef readonly Py_ssize_t parallel_threshold
    cdef _Node root
    cdef readonly Py_ssize_t size
    cdef Py_ssize_t _largest
    cdef Py_ssize_t _rebuilds
    cdef long long* _ptbuf
    cdef bint _did

    def __cinit__(self, int k, policy, strategy, int workers,
                  parallel_threshold):
        self.k = k
        self.is_avl = policy.kind == "avl"
        self.max_diff = policy.max_diff
        self.higher_strategy = strategy == "higher"
        self.workers = workers
        self.parallel_threshold = parallel_threshold
        self.root = None
        self.size = 0
        self._largest = 0
        self._rebuilds = 0
        self._ptbuf = <long long*> malloc(k * sizeof(long long))
        if self._ptbuf == NULL:
            raise MemoryError()

    def __dealloc__(self):
        if self._ptbuf != NULL:
            free(self._ptbuf)

    @property
    def backend_name(self):
        return "compiled"

    @property
    def height(self):
        return _height(self.root)

    @property
    def largest_rebuild(self):
        return self._largest

    @property
    def rebuild_count(self):
        return self._rebuilds

    def reset_stats(self):
        self._largest = 0
        self._rebuilds = 0

    cdef int _fill(self, pt, long long* buf) except -1:
        if len(pt) != self.k:
            raise DimensionMismatchError(
                f"expected a {self.k}-d tuple, got {len(pt)}-d {tuple(pt)}"
            )
        cdef int i
        for i in range(self.k):
            buf[i] = pt[i]
        return 0

    cdef inline void _record(self, Py_ssize_t m) noexcept:
        self._rebuilds += 1
        if m > self._largest:
            self._largest = m

    # -- dynamic operations -------------------------------------------------

    def insert(self, pt):
        self._fill(pt, self._ptbuf)
        self._did = False
        self.root = self._insert(self.root, self._ptbuf, 0)
        if self._did:
            self.size += 1
        return self._did

    cdef _Node _insert(self, _Node node, long long* pt, int level):
        if node is None:
            self._did = True
            return _new_node(pt, self.k)
        cdef int c = _cmp(pt, node.pt, level % self.k, self.k)
        if c == 0:
            return node
        if c < 0:
            node.less = self._insert(node.less, pt, level + 1)
        else:
            node.greater = self._insert(node.greater, pt, level + 1)
        if self._did:
            node = self._restore(node, level)
        return node

    def delete(self, pt):
        self._fill(pt, self._ptbuf)
        self._did = False
        self.root = self._delete(self.root, self._ptbuf, 0)
        if self._did:
            self.size -= 1
        return self._did

    cdef _Node _delete(self, _Node node, long long* pt, int level):
        if node is None:
            return None
        cdef int c = _cmp(pt, node.pt, level % self.k, self.k)
        if c == 0:
            self._did = True
            return self._remove(node, level)
        if c < 0:
            node.less = self._delete(node.less, pt, level + 1)
        else:
            node.greater = self._delete(node.greater, pt, level + 1)
        if self._did:
            node = self._restore(node, level)
        return node

    cdef _Node _remove(self, _Node node, int level):
        cdef int k = self.k
        cdef Py_ssize_t m, pos
        cdef long long* data
        cdef long long* tmp
        cdef _Node out, repl
        cdef int p
        cdef bint use_pred

        if node.height <= 2:
            # at most 3 nodes here: rebuild the survivors directly
            m = _count(node) - 1
            self._record(m)
            if m == 0:
                return None
            data = <long long*> malloc(m * k * sizeof(long long))
            if data == NULL:
                raise MemoryError()
            pos = 0
            _fill_inorder(node.less, data, &pos, k)
            _fill_inorder(node.greater, data, &pos, k)
            out = self._small(data, m, level)
            free(data)
            return out

        p = level % k
        if node.less is not None and node.greater is not None:
            use_pred = self.higher_strategy and node.less.height > node.greater.height
        else:
            use_pred = node.greater is None

        tmp = <long long*> malloc(k * sizeof(long long))
        if tmp == NULL:
            raise MemoryError()
        try:
            if use_pred:
                repl = _extreme_node(node.less, level + 1, p, True, k)
                memcpy(tmp, repl.pt, k * sizeof(long long))
                memcpy(node.pt, tmp, k * sizeof(long long))
                node.less = self._delete(node.less, tmp, level + 1)
            else:
                repl = _extreme_node(node.greater, level + 1, p, False, k)
                memcpy(tmp, repl.pt, k * sizeof(long long))
                memcpy(node.pt, tmp, k * sizeof(long long))
                node.greater = self._delete(node.greater, tmp, level + 1)
        finally:
            free(tmp)
        return self._restore(node, level)

    cdef _Node _restore(self, _Node node, int level):
        cdef int hl = _height(node.less)
        cdef int hr = _height(node.greater)
        if _balanced(self.is_avl, self.max_diff, hl, hr):
            node.height = 1 + (hl if hl > hr else hr)
            return node
        return self._rebuild(node, level)

    cdef _Node _rebuild(self, _Node node, int level):
        cdef int k = self.k
        cdef Py_ssize_t m = _count(node)
        cdef Py_ssize_t pos = 0
        cdef long long* data = <long long*> malloc(m * k * sizeof(long long))
        if data == NULL:
            raise MemoryError()
        cdef _Node out
        self._record(m)
        _fill_inorder(node, data, &pos, k)
        try:
            if m <= 3:
                out = self._small(data, m, level)
            else:
                out = self._build_flat(data, m, level, self.workers, 1)
        finally:
            free(data)
        return out

    cdef _Node _small(self, long long* d, Py_ssize_t m, int level):
        """Subtree of up to 3 rows of d, at most 3 super-key comparisons."""
        cdef int k = self.k
        cdef int p = level % k
        cdef long long* a
        cdef long long* b
        cdef long long* c
        cdef long long* t
        cdef _Node root
        if m == 0:
            return None
        if m == 1:
            return _new_node(d, k)
        a = d
        b = d + k
        if m == 2:
            if _cmp(a, b, p, k) > 0:
                t = a; a = b; b = t
            root = _new_node(a, k)
            root.greater = _new_node(b, k)
            root.height = 2
            return root
        c = d + 2 * k
        if _cmp(a, b, p, k) > 0:
            t = a; a = b; b = t
        if _cmp(b, c, p, k) > 0:
            t = b; b = c; c = t
            if _cmp(a, b, p, k) > 0:
                t = a; a = b; b = t
        root = _new_node(b, k)
        root.less = _new_node(a, k)
        root.greater = _new_node(c, k)
        root.height = 2
        return root

    def contains(self, pt):
        self._fill(pt, self._ptbuf)
        cdef _Node node = self.root
        cdef int level = 0
        cdef int c
        while node is not None:
            c = _cmp(self._ptbuf, node.pt, level % self.k, self.k)
            if c == 0:
                return True
            node = node.less if c < 0 else node.greater
            level += 1
        return False

    def find_extreme(self, dim, direction):
        if direction not in ("min", "max"):
            raise ValueError(f"direction must be 'min' or 'max'")
        if not 0 <= dim < self.k:
            raise ValueError(f"dimension {dim} out of range for k={self.k}")
        if self.root is None:
            raise EmptySubtreeError("cannot search an empty subtree")
        cdef _Node found = _extreme_node(
            self.root, 0, dim, direction == "max", self.k
        )
        return _as_tuple(found.pt, self.k)

    # -- bulk construction ---------------------------------------------------

    def build(self, points, variant="nlogn"):
        if variant not in _VARIANTS:
            raise ValueError(f"unknown build variant {variant!r}")
        cdef Py_ssize_t n = len(points)
        cdef int k = self.k
        cdef Py_ssize_t i
        cdef int j
        if n == 0:
            self.root = None
            self.size = 0
            return
        cdef long long* data = <long long*> malloc(n * k * sizeof(long long))
        if data == NULL:
            raise MemoryError()
        try:
            for i in range(n):
                pt = points[i]
                if len(pt) != k:
                    raise DimensionMismatchError(
                        f"expected a {k}-d tuple, got {len(pt)}-d {tuple(pt)}"
                    )
                for j in range(k):
                    data[i * k + j] = pt[j]
            self.root = self._build_flat(data, n, 0, self.workers, _VARIANTS[variant])
        finally:
            free(data)
        self.size = n

    cdef _Node _build_flat(self, long long* data, Py_ssize_t n, int level,
                           int workers, int variant):
        """Build from n rows: one sorted row array per super key, recursive
        median splits into a layout array, then node materialization."""
        cdef int k = self.k
        cdef long long* rows_mem = NULL
        cdef long long** rows_a = NULL
        cdef long long** rows_b = NULL
        cdef long long* out = NULL
        cdef _KeyIdx* pairs = NULL
        cdef _Node root
        cdef int p
        cdef Py_ssize_t i
        cdef bint parallel = workers > 1 and n > self.parallel_threshold
        try:
            # two buffer sets per super key; splits ping-pong between them
            rows_mem = <long long*> malloc((2 * k + 1) * n * k * sizeof(long long))
            rows_a = <long long**> malloc(k * sizeof(long long*))
            rows_b = <long long**> malloc(k * sizeof(long long*))
            pairs = <_KeyIdx*> malloc((k + 1 if parallel else 2) * n * sizeof(_KeyIdx))
            if rows_mem == NULL or rows_a == NULL or rows_b == NULL or pairs == NULL:
                raise MemoryError()
            for p in range(k):
                rows_a[p] = rows_mem + p * n * k
                rows_b[p] = rows_mem + (k + p) * n * k
            out = rows_mem + 2 * k * n * k
            self._sort_orderings(data, n, rows_a, pairs, parallel)
            for i in range(n - 1):
                if _cmp(rows_a[0] + i * k, rows_a[0] + (i + 1) * k, 0, k) == 0:
                    raise DuplicateDatumError(_as_tuple(rows_a[0] + i * k, k))
            if parallel:
                self._layout_par(rows_a, rows_b, out, 0, n - 1, level,
                                 workers, variant)
            else:
                with nogil:
                    _layout_seq(rows_a, rows_b, out, 0, n - 1, level, k,
                                variant)
            root = _materialize(out, 0, n - 1, k)
        finally:
            free(pairs)
            free(rows_b)
            free(rows_a)
            free(rows_mem)
        return root

    cdef int _sort_orderings(self, long long* data, Py_ssize_t n,
                             long long** dest, _KeyIdx* pairs,
                             bint parallel) except -1:
        """Sort the k orderings, in worker threads when allowed.

        The pairs buffer holds k+1 lanes when parallel (one per sort plus a
        shared merge scratch is not shareable, so each sort gets its own
        scratch lane pair) and 2 lanes otherwise.
        """
        cdef int k = self.k
        cdef int p
        cdef _KeyIdx* tmp_mem
        cdef _SortJob job
        if not parallel or k == 1:
            with nogil:
                for p in range(k):
                    _sort_gather(data, n, k, p, dest[p], pairs, pairs + n)
            return 0
        tmp_mem = <_KeyIdx*> malloc((k - 1) * n * sizeof(_KeyIdx))
        if tmp_mem == NULL:
            raise MemoryError()
        threads = []
        for p in range(1, k):
            job = _SortJob()
            job.data = data
            job.n = n
            job.k = k
            job.p = p
            job.dest = dest[p]
            job.pairs = pairs + p * n
            job.tmp = tmp_mem + (p - 1) * n
            thread = threading.Thread(target=job.run)
            threads.append(thread)
            thread.start()
        try:
            with nogil:
                _sort_gather(data, n, k, 0, dest[0], pairs, pairs + k * n)
        finally:
            for thread in threads:
                thread.join()
            free(tmp_mem)
        return 0

    cdef int _layout_par(self, long long** src, long long** dst,
                         long long* out, Py_ssize_t lo, Py_ssize_t hi,
                         int level, int workers, int variant) except -1:
        """Layout with the two halves of a big split in concurrent threads.

        All heavy work happens in nogil regions; this wrapper only splits
        ranges and joins threads.
        """
        cdef Py_ssize_t m = hi - lo + 1
        cdef int k = self.k
        cdef Py_ssize_t nl
        cdef int p
        cdef _LayoutJob job
        if m <= 0:
            return 0
        if workers <= 1 or m <= self.parallel_threshold:
            with nogil:
                _layout_seq(src, dst, out, lo, hi, level, k, variant)
            return 0
        p = level % k
        nl = (m - 1) // 2
        with nogil:
            _split_level(src, dst, out, lo, hi, p, k, variant)
        job = _LayoutJob()
        job.eng = self
        job.src = dst
        job.dst = src
        job.out = out
        job.lo = lo
        job.hi = lo + nl - 1
        job.level = level + 1
        job.workers = workers // 2
        job.variant = variant
        worker = threading.Thread(target=job.run)
        worker.start()
        try:
            self._layout_par(dst, src, out, lo + nl + 1, hi, level + 1,
                             workers - workers // 2, variant)
        finally:
            worker.join()
        if job.error is not None:
            raise job.error
        return 0

    # -- inspection ----------------------------------------------------------

    def tuples(self):
        out = []
        _append_inorder(self.root, out, self.k)
        return out

    def snapshot(self):
        return _snap(self.root, self.k)

    def structure(self):
        return _struct(self.root, self.k)

    def verify(self, policy):
        """Fast full check; falls back to the pure verifier for details."""
        cdef bint is_avl = policy.kind == "avl"
        cdef int max_diff = policy.max_diff
        cdef Py_ssize_t nodes = 0, bad = 0
        cdef int tree_height = 0
        cdef long long** lower = NULL
        cdef long long** upper = NULL
        cdef int i
        if self.root is not None:
            lower = <long long**> malloc(self.k * sizeof(long long*))
            upper = <long long**> malloc(self.k * sizeof(long long*))
            if lower == NULL or upper == NULL:
                free(lower)
                free(upper)
                raise MemoryError()
            for i in range(self.k):
                lower[i] = NULL
                upper[i] = NULL
            tree_height = _verify_walk(
                self.root, 0, self.k, is_avl, max_diff, lower, upper,
                &nodes, &bad,
            )
            free(lower)
            free(upper)
        if bad == 0:
            return VerifyReport(nodes, tree_height, [])
        return verify_subtree(self.snapshot(), self.k, policy)


cdef void _append_inorder(_Node node, list out, int k):
    if node is None:
        return
    _append_inorder(node.less, out, k)
    out.append(_as_tuple(node.pt, k))
    _append_inorder(node.greater, out, k)


cdef _snap(_Node node, int k):
    if node is None:
        return None
    return PyNode(
        _as_tuple(node.pt, k), _snap(node.less, k), _snap(node.greater, k),
        node.height,
    )


cdef _struct(_Node node, int k):
    if node is None:
        return None
    return (
        _as_tuple(node.pt, k), node.height, _struct(node.less, k),
        _struct(node.greater, k),
    )


cdef int _verify_walk(_Node node, int level, int k, bint is_avl, int max_diff,
                      long long** lower, long long** upper,
                      Py_ssize_t* nodes, Py_ssize_t* bad) noexcept:
    cdef int p = level % k
    cdef long long* saved
    cdef int hl = 0, hr = 0, height

    nodes[0] += 1
    if lower[p] != NULL and _cmp(node.pt, lower[p], p, k) <= 0:
        bad[0] += 1
    if upper[p] != NULL and _cmp(node.pt, upper[p], p, k) >= 0:
        bad[0] += 1

    if node.less is not None:
        saved = upper[p]
        upper[p] = node.pt
        hl = _verify_walk(node.less, level + 1, k, is_avl, max_diff,
                          lower, upper, nodes, bad)
        upper[p] = saved
    if node.greater is not None:
        saved = lower[p]
        lower[p] = node.pt
        hr = _verify_walk(node.greater, level + 1, k, is_avl, max_diff,
                          lower, upper, nodes, bad)
        lower[p] = saved

    height = 1 + (hl if hl > hr else hr)
    if node.height != height:
        bad[0] += 1
    if not _balanced(is_avl, max_diff, hl, hr):
        bad[0] += 1
    return height
