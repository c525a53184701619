"""Full structural validation: ordering, cached heights, balance.

Ordering is checked by range narrowing: each node constrains its
descendants' super keys at its own level, and only the tightest bound per
dimension needs to be carried down, so the whole check costs O(n * k)
comparisons without materializing sorted lists.
"""

from dataclasses import dataclass, field

from .policy import is_balanced
from .superkey import _cmp

ORDERING = "ordering"
HEIGHT = "height"
BALANCE = "balance"


@dataclass(frozen=True)
class Violation:
    kind: str
    path: str
    detail: str

    def __str__(self):
        return f"[{self.kind}] at {self.path}: {self.detail}"


@dataclass
class VerifyReport:
    node_count: int = 0
    tree_height: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def describe(self):
        """Human-readable dump for test diagnostics."""
        head = f"{self.node_count} nodes, height {self.tree_height}"
        if self.ok:
            return head + ", no violations"
        lines = [head, f"{len(self.violations)} violation(s):"]
        lines += [f"  {v}" for v in self.violations]
        return "\n".join(lines)


def verify_subtree(root, k, policy, level=0):
    """Check every node of a subtree whose root discriminant is ``level``.

    Violations are reported as data; an invalid tree does not raise.
    """
    report = VerifyReport()
    if root is None:
        return report
    lower = [None] * k
    upper = [None] * k
    height = _check(root, level, k, policy, lower, upper, ("root",), report)
    report.tree_height = height
    return report


def _check(node, level, k, policy, lower, upper, path, report):
    """Returns the recomputed height of ``node``; fills the report."""
    report.node_count += 1
    p = level % k
    pt = node.point

    if lower[p] is not None and _cmp(pt, lower[p], p) <= 0:
        report.violations.append(
            Violation(
                ORDERING,
                ".".join(path),
                f"{pt} must compare greater than {lower[p]} at dimension {p}",
            )
        )
    if upper[p] is not None and _cmp(pt, upper[p], p) >= 0:
        report.violations.append(
            Violation(
                ORDERING,
                ".".join(path),
                f"{pt} must compare less than {upper[p]} at dimension {p}",
            )
        )

    hl = hr = 0
    if node.less is not None:
        saved = upper[p]
        upper[p] = pt
        hl = _check(node.less, level + 1, k, policy, lower, upper, path + ("less",), report)
        upper[p] = saved
    if node.greater is not None:
        saved = lower[p]
        lower[p] = pt
        hr = _check(
            node.greater, level + 1, k, policy, lower, upper, path + ("greater",), report
        )
        lower[p] = saved

    height = 1 + (hl if hl > hr else hr)
    if node.height != height:
        report.violations.append(
            Violation(
                HEIGHT,
                ".".join(path),
                f"cached height {node.height} but recomputed {height} at {pt}",
            )
        )
    if not is_balanced(policy, hl, hr):
        report.violations.append(
            Violation(
                BALANCE,
                ".".join(path),
                f"child heights ({hl}, {hr}) violate {policy.label} at {pt}",
            )
        )
    return height
