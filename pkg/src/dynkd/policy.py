"""Balance criteria and deletion-replacement strategies."""

from dataclasses import dataclass

AVL = "avl"
RED_BLACK = "redblack"

# Replacement choice for a deleted node with two children.
HIGHER_SUBTREE = "higher"
ALWAYS_SUCCESSOR = "successor"

REPLACEMENT_STRATEGIES = (HIGHER_SUBTREE, ALWAYS_SUCCESSOR)


@dataclass(frozen=True)
class BalancePolicy:
    """Decides whether a node with child subtree heights (hl, hr) is balanced.

    ``avl`` requires the heights to differ by at most ``max_diff`` (1 to 4).
    ``redblack`` requires the taller subtree to be at most twice the height
    of the shorter; when one child is absent that test is vacuous, so it
    falls back to the AVL test with difference 1.
    """

    kind: str
    max_diff: int = 1

    def __post_init__(self):
        if self.kind not in (AVL, RED_BLACK):
            raise ValueError(f"unknown balance kind {self.kind!r}")
        if self.kind == AVL and self.max_diff not in (1, 2, 3, 4):
            raise ValueError("AVL height difference must be in [1, 4]")

    @classmethod
    def avl(cls, max_diff=1):
        return cls(AVL, max_diff)

    @classmethod
    def red_black(cls):
        return cls(RED_BLACK)

    @property
    def label(self):
        if self.kind == AVL:
            return f"avl{self.max_diff}"
        return "redblack"

    @classmethod
    def from_label(cls, label):
        if label == "redblack":
            return cls.red_black()
        if label.startswith("avl") and label[3:] in ("1", "2", "3", "4"):
            return cls.avl(int(label[3:]))
        raise ValueError(f"unknown balance policy label {label!r}")


def is_balanced(policy, hl, hr):
    """True iff child subtree heights hl, hr satisfy the policy."""
    if policy.kind == AVL:
        return abs(hl - hr) <= policy.max_diff
    if hl == 0 or hr == 0:
        return abs(hl - hr) <= 1
    return (hr if hr > hl else hl) <= 2 * (hl if hl < hr else hr)
