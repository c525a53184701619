"""The dynamic, self-balancing k-d tree."""

from . import rebuild
from ._backend import AUTO, engine_class
from .policy import REPLACEMENT_STRATEGIES, BalancePolicy, HIGHER_SUBTREE
from .superkey import check_point


class KdTree:
    """A k-d tree over distinct k-dimensional signed 64-bit integer tuples.

    Insertion and deletion keep the tree balanced under the configured
    policy by rebuilding any subtree the mutation unbalances.  One writer
    at a time; reads may run concurrently only while no writer is active.

    Parameters
    ----------
    k: dimension count (>= 1).
    policy: BalancePolicy, default AVL with height difference 1.
    strategy: replacement choice for deleted two-child nodes, ``higher``
        (taller child subtree, ties to successor) or ``successor``.
    workers: worker threads usable by subtree rebuilds (1 = sequential).
    parallel_threshold: sub-problem size a rebuild split must exceed
        before it may go parallel.
    backend: ``auto``, ``compiled`` or ``pure`` kernel selection.
    """

    def __init__(
        self,
        k,
        policy=None,
        strategy=HIGHER_SUBTREE,
        workers=1,
        parallel_threshold=rebuild.PARALLEL_THRESHOLD,
        backend=AUTO,
    ):
        if k < 1:
            raise ValueError("dimension count k must be >= 1")
        if strategy not in REPLACEMENT_STRATEGIES:
            raise ValueError(f"unknown replacement strategy {strategy!r}")
        if workers < 1:
            raise ValueError("workers must be >= 1")
        if policy is None:
            policy = BalancePolicy.avl(1)
        self.k = k
        self.policy = policy
        self.strategy = strategy
        self._engine = engine_class(backend)(
            k, policy, strategy, workers, parallel_threshold
        )

    @classmethod
    def from_tuples(cls, tuples, k=None, variant=rebuild.NLOGN, **kwargs):
        """Build a static, balanced tree from all tuples at once.

        Tuples must be pairwise distinct.  The result can be mutated
        afterwards like any dynamically grown tree.
        """
        pts = [tuple(t) for t in tuples]
        if k is None:
            if not pts:
                raise ValueError("cannot infer k from an empty tuple list")
            k = len(pts[0])
        tree = cls(k, **kwargs)
        pts = [check_point(t, k) for t in pts]
        tree._engine.build(pts, variant)
        return tree

    @property
    def backend(self):
        return self._engine.backend_name

    @property
    def size(self):
        return self._engine.size

    def __len__(self):
        return self._engine.size

    @property
    def height(self):
        return self._engine.height

    @property
    def largest_rebuild(self):
        """Node count of the largest subtree rebuilt since the last reset."""
        return self._engine.largest_rebuild

    def reset_stats(self):
        self._engine.reset_stats()

    def insert(self, point):
        """Insert a tuple; returns True iff it was not already present."""
        return self._engine.insert(check_point(point, self.k))

    def delete(self, point):
        """Delete a tuple; returns True iff it was present."""
        return self._engine.delete(check_point(point, self.k))

    def contains(self, point):
        return self._engine.contains(check_point(point, self.k))

    __contains__ = contains

    def find_extreme(self, dim, direction):
        """Tuple with the extreme super key at ``dim`` (raises when empty)."""
        return self._engine.find_extreme(dim, direction)

    def tuples(self):
        """All stored tuples in in-order traversal order."""
        return self._engine.tuples()

    def __iter__(self):
        return iter(self._engine.tuples())

    def verify(self, policy=None):
        """Validate ordering, cached heights and balance; returns a report."""
        return self._engine.verify(policy or self.policy)

    def to_nodes(self):
        """Detached pure-node copy of the tree (safe to inspect and mutate)."""
        return self._engine.snapshot()

    def structure(self):
        """Nested-tuple snapshot; equal snapshots mean identical trees."""
        return self._engine.structure()
