"""Integer partitions, dominance order, and nilpotent strata membership.

A PartitionFunction assigns a partition of a common n to each embedding
label. The partial order used for strata is reverse dominance applied
label by label: P <= P' here means P(label) dominates P'(label) for every
label, so the single-block partition is the smallest element and
(1, ..., 1) the largest.
"""

import enum

from .errors import NonNilpotentMonodromy
from .linalg import kernel_dim

__all__ = [
    "Partition",
    "PartitionFunction",
    "Dominance",
    "conjugate",
    "partitions_of",
    "dominates",
    "compare",
    "paper_leq",
    "strata_thresholds",
    "stratum_member",
]


class Partition:
    """Weakly decreasing tuple of positive integers (possibly empty)."""

    __slots__ = ("parts",)

    def __init__(self, parts):
        parts = tuple(int(x) for x in parts)
        if any(x < 1 for x in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    def __setattr__(self, name, value):
        raise AttributeError("Partition is immutable")

    @property
    def total(self):
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f"Partition{self.parts}"


def conjugate(p):
    """Transpose of the Young diagram: row lengths become column lengths."""
    if not p.parts:
        return Partition(())
    return Partition(tuple(sum(1 for x in p.parts if x >= i) for i in range(1, p.parts[0] + 1)))


def partitions_of(n, cap=None):
    """All partitions of n, parts bounded by cap, lexicographically largest first."""
    if n == 0:
        yield Partition(())
        return
    cap = n if cap is None else min(cap, n)
    for first in range(cap, 0, -1):
        for rest in partitions_of(n - first, first):
            yield Partition((first,) + rest.parts)


def _partial_sums(parts, length):
    out = []
    acc = 0
    for i in range(length):
        acc += parts[i] if i < len(parts) else 0
        out.append(acc)
    return out


def dominates(a, b):
    """Natural dominance: every partial sum of a is >= that of b.

    Requires partitions of the same total; conjugation reverses the order.
    """
    if a.total != b.total:
        raise ValueError(f"totals differ: {a.total} vs {b.total}")
    length = max(len(a), len(b))
    return all(x >= y for x, y in zip(_partial_sums(a.parts, length), _partial_sums(b.parts, length)))


class Dominance(enum.Enum):
    EQUAL = "equal"
    GREATER = "greater"
    LESS = "less"
    INCOMPARABLE = "incomparable"


def compare(a, b):
    """Three-valued dominance comparison exposing incomparability."""
    forward = dominates(a, b)
    backward = dominates(b, a)
    if forward and backward:
        return Dominance.EQUAL
    if forward:
        return Dominance.GREATER
    if backward:
        return Dominance.LESS
    return Dominance.INCOMPARABLE


class PartitionFunction:
    """A partition attached to each embedding label."""

    __slots__ = ("assignments",)

    def __init__(self, mapping):
        items = []
        for label in sorted(mapping):
            value = mapping[label]
            if not isinstance(value, Partition):
                value = Partition(value)
            items.append((str(label), value))
        if not items:
            raise ValueError("at least one label is required")
        object.__setattr__(self, "assignments", tuple(items))

    def __setattr__(self, name, value):
        raise AttributeError("PartitionFunction is immutable")

    @property
    def labels(self):
        return tuple(label for label, _ in self.assignments)

    def __getitem__(self, label):
        for key, value in self.assignments:
            if key == label:
                return value
        raise KeyError(label)

    def items(self):
        return self.assignments

    def __eq__(self, other):
        if not isinstance(other, PartitionFunction):
            return NotImplemented
        return self.assignments == other.assignments

    def __hash__(self):
        return hash(self.assignments)

    def __repr__(self):
        body = ", ".join(f"{label}: {p.parts}" for label, p in self.assignments)
        return f"PartitionFunction({body})"


def paper_leq(p, p_prime):
    """P <= P' in the stratification order: P(label) dominates P'(label) everywhere."""
    if p.labels != p_prime.labels:
        raise ValueError(f"label sets differ: {p.labels} vs {p_prime.labels}")
    return all(dominates(p[label], p_prime[label]) for label in p.labels)


def strata_thresholds(p, n):
    """Kernel-dimension thresholds m_1, ..., m_n of the stratum of P.

    m_i sums min(i, part) over all parts of all labels; a point lies in the
    stratum when its summed kernel dimensions reach every threshold.
    """
    n = int(n)
    for label, part in p.items():
        if part.total != n:
            raise ValueError(f"partition at {label!r} has total {part.total}, expected {n}")
    return tuple(
        sum(min(i, x) for _, part in p.items() for x in part.parts)
        for i in range(1, n + 1)
    )


def stratum_member(nilpotents, p):
    """Whether the family of nilpotents lies in the stratum of P.

    ``nilpotents`` maps each label of P to a square matrix of size n; the
    test compares sum-over-labels kernel dimensions of powers against the
    thresholds of P.
    """
    labels = tuple(sorted(nilpotents))
    if labels != p.labels:
        raise ValueError(f"label sets differ: {labels} vs {p.labels}")
    sizes = {m.nrows for m in nilpotents.values()}
    if len(sizes) != 1 or not all(m.is_square for m in nilpotents.values()):
        raise ValueError("all matrices must be square of one common size")
    n = sizes.pop()
    thresholds = strata_thresholds(p, n)
    totals = [0] * n
    for label in labels:
        power = nilpotents[label]
        dim = 0
        for i in range(n):
            if i:
                power = power @ nilpotents[label]
            dim = kernel_dim(power)
            totals[i] += dim
        # dim ker(N^n) = n is exactly nilpotency, so no separate power needed
        if dim != n:
            raise NonNilpotentMonodromy(n)
    return all(t >= m for t, m in zip(totals, thresholds))
