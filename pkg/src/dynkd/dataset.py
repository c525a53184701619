"""Deterministic benchmark datasets.

The coordinate pool is n integers equally spaced across the full signed
64-bit range.  Each dimension receives its own shuffle of that pool, all
drawn sequentially from a single 64-bit Mersenne Twister stream, so a
fixed (n, k, seed) always yields the same tuples.  Every dimension is a
permutation of n distinct values, hence the tuples are pairwise distinct.
"""

from math import log2

from .superkey import INT64_MIN

DEFAULT_SEED = 5489  # the generator's standard default seed

_MASK64 = (1 << 64) - 1
_N = 312
_M = 156
_MATRIX_A = 0xB5026F5AA96619E9
_UPPER_MASK = 0xFFFFFFFF80000000
_LOWER_MASK = 0x7FFFFFFF


class MersenneTwister64:
    """MT19937-64 pseudo-random generator (64-bit output words)."""

    def __init__(self, seed=DEFAULT_SEED):
        mt = [0] * _N
        mt[0] = seed & _MASK64
        for i in range(1, _N):
            mt[i] = (6364136223846793005 * (mt[i - 1] ^ (mt[i - 1] >> 62)) + i) & _MASK64
        self._mt = mt
        self._index = _N

    def _twist(self):
        mt = self._mt
        for i in range(_N):
            x = (mt[i] & _UPPER_MASK) | (mt[(i + 1) % _N] & _LOWER_MASK)
            xa = x >> 1
            if x & 1:
                xa ^= _MATRIX_A
            mt[i] = mt[(i + _M) % _N] ^ xa
        self._index = 0

    def next64(self):
        """Next 64-bit word of the stream."""
        if self._index >= _N:
            self._twist()
        y = self._mt[self._index]
        self._index += 1
        y ^= (y >> 29) & 0x5555555555555555
        y ^= (y << 17) & 0x71D67FFFEDA60000
        y ^= (y << 37) & 0xFFF7EEE000000000
        y ^= y >> 43
        return y & _MASK64

    def below(self, bound):
        """Uniform integer in [0, bound) via masked rejection (unbiased)."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        mask = (1 << (bound - 1).bit_length()) - 1 if bound > 1 else 0
        while True:
            r = self.next64() & mask
            if r < bound:
                return r

    def shuffle(self, seq):
        """In-place Fisher-Yates shuffle consuming the stream sequentially."""
        for i in range(len(seq) - 1, 0, -1):
            j = self.below(i + 1)
            seq[i], seq[j] = seq[j], seq[i]


def coordinate_pool(n):
    """The n equally spaced signed 64-bit values, ascending.

    Spacing is floor(r / n) for the full range r = 2**64 - 1, computed in
    unbounded integer arithmetic; the largest value never overflows.
    """
    step = ((1 << 64) - 1) // n
    return [INT64_MIN + i * step for i in range(n)]


def generate_random(n, k, seed=DEFAULT_SEED):
    """n distinct k-d tuples: one fresh shuffle of the pool per dimension."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if k < 1:
        raise ValueError("k must be >= 1")
    pool = coordinate_pool(n)
    rng = MersenneTwister64(seed)
    columns = []
    for _ in range(k):
        col = list(pool)
        rng.shuffle(col)
        columns.append(col)
    return list(zip(*columns))


def generate_sorted(n, k, seed=DEFAULT_SEED):
    """The same tuples as generate_random, in ascending super-key order.

    Sorting by the dimension-0 super key is plain lexicographic tuple
    order.  Feeding this sequence to insert-all or delete-all is the
    worst case for rebuild sizes.
    """
    return sorted(generate_random(n, k, seed))


def solve_n(target):
    """The tuple count n whose n*log2(n) lands nearest the target value.

    Monotone search brackets the target, then the closer of the two
    neighbouring candidates wins (the smaller n on an exact tie).
    """
    if target <= 0:
        raise ValueError("target must be positive")

    def weight(n):
        return n * log2(n)

    hi = 2
    while weight(hi) < target:
        hi *= 2
    lo = max(hi // 2, 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid > 1 and weight(mid) >= target:
            hi = mid
        else:
            lo = mid + 1
    if lo > 2 and abs(weight(lo - 1) - target) <= abs(weight(lo) - target):
        return lo - 1
    return lo
