"""Pure-Python tree engine: the fallback kernel behind KdTree."""

from . import node as nodemod
from . import ops, rebuild
from .validate import verify_subtree


class PyEngine:
    """Owns the root link, the size counter and rebuild statistics."""

    backend_name = "pure"

    __slots__ = (
        "k",
        "policy",
        "strategy",
        "workers",
        "parallel_threshold",
        "root",
        "size",
        "stats",
        "_builder",
    )

    def __init__(self, k, policy, strategy, workers, parallel_threshold):
        self.k = k
        self.policy = policy
        self.strategy = strategy
        self.workers = workers
        self.parallel_threshold = parallel_threshold
        self.root = None
        self.size = 0
        self.stats = ops.RebuildStats()
        if workers > 1:
            self._builder = lambda tuples, level: rebuild.build_parallel(
                tuples, level, workers=workers, threshold=parallel_threshold
            )
        else:
            self._builder = rebuild.build_balanced

    def insert(self, point):
        self.root, added = ops.insert_into(
            self.root, point, 0, self.k, self.policy, self._builder, self.stats
        )
        if added:
            self.size += 1
        return added

    def delete(self, point):
        self.root, removed = ops.delete_from(
            self.root,
            point,
            0,
            self.k,
            self.policy,
            self.strategy,
            self._builder,
            self.stats,
        )
        if removed:
            self.size -= 1
        return removed

    def contains(self, point):
        return ops.contains_in(self.root, point, 0, self.k)

    def find_extreme(self, dim, direction):
        return ops.find_extreme(self.root, 0, dim, direction, self.k).point

    def build(self, points, variant=rebuild.NLOGN):
        if self.workers > 1:
            self.root = rebuild.build_parallel(
                points,
                0,
                workers=self.workers,
                threshold=self.parallel_threshold,
                variant=variant,
            )
        else:
            self.root = rebuild.build_balanced(points, 0, variant=variant)
        self.size = len(points)

    def tuples(self):
        return nodemod.collect_subtree(self.root)

    @property
    def height(self):
        return nodemod.node_height(self.root)

    @property
    def largest_rebuild(self):
        return self.stats.largest

    @property
    def rebuild_count(self):
        return self.stats.count

    def reset_stats(self):
        self.stats = ops.RebuildStats()

    def verify(self, policy):
        return verify_subtree(self.root, self.k, policy)

    def snapshot(self):
        return nodemod.copy_subtree(self.root)

    def structure(self):
        return nodemod.structure(self.root)
