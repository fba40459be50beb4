"""
Module for partitions, cycle types and the orders on them.

Partitions index the irreducible characters of S_n and cycle types index its
conjugacy classes. Both are immutable values, so every function here is pure and
safe to call from any thread.
"""

import logging
import re
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod

from django.db import models

from .exceptions import DomainError, ResourceLimitError, UnsupportedKindError

logger = logging.getLogger(__name__)

ENUMERATION_CAP = 40

_ATOM_PATTERN = re.compile(r"^(\d+)(?:\^(\d+))?$")


class OrderKind(models.TextChoices):
    """The six orders on cycle types and partitions."""

    CL = "cl", "Cycle lexicographic"
    NEG_CL = "neg-cl", "Reversed cycle lexicographic"
    ALT_CL = "alt-cl", "Alternating cycle lexicographic"
    MAJORIZATION = "majorization", "Majorization"
    REVERSE_LEX = "reverse-lex", "Reverse lexicographic"
    LULOV_LEX = "lulov-lex", "Lulov lexicographic"


CL_FAMILY = (OrderKind.CL, OrderKind.NEG_CL, OrderKind.ALT_CL)
TOTAL_KINDS = tuple(kind for kind in OrderKind if kind != OrderKind.MAJORIZATION)


class Comparison(models.TextChoices):
    """Outcome of comparing two classes under an order."""

    GREATER = "greater", "Greater"
    LESS = "less", "Less"
    EQUAL = "equal", "Equal"
    INCOMPARABLE = "incomparable", "Incomparable"


class Parity(models.TextChoices):
    """Restriction to even permutations, odd permutations or neither."""

    ANY = "any", "Any"
    EVEN = "even", "Even"
    ODD = "odd", "Odd"

    def admits(self, sign):
        """Whether a class of the given sign (+1/-1) belongs to this restriction."""
        if self == Parity.ANY:
            return True
        return (sign == 1) == (self == Parity.EVEN)


@dataclass(frozen=True)
class Partition:
    """
    A weakly decreasing sequence of positive integers.

    Attributes:
        parts (tuple[int]): The parts, largest first. The empty tuple is the
            partition of 0.
    """

    parts: tuple

    def __post_init__(self):
        parts = tuple(int(part) for part in self.parts)
        if any(part < 1 for part in parts):
            raise DomainError(f"Partition parts must be positive: {parts}")
        if any(left < right for left, right in zip(parts, parts[1:])):
            raise DomainError(f"Partition parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text):
        """Parse the text form "4,2" (brackets and spaces are tolerated)."""
        cleaned = str(text).strip().strip("[]()").replace(" ", "")
        if not cleaned:
            return cls(())
        try:
            return cls(tuple(int(part) for part in cleaned.split(",")))
        except ValueError as exc:
            raise DomainError(f"Malformed partition: {text!r}") from exc

    @classmethod
    def two_row(cls, n, i):
        """The two-row partition [n-i, i]."""
        if not 0 <= 2 * i <= n:
            raise DomainError(f"Two-row shape needs 0 <= i <= n/2, got n={n}, i={i}")
        return cls((n - i, i) if i else (n,))

    @classmethod
    def near_two_row(cls, n, i, k):
        """The shape [n-i, i-k, 1^k]; k = 0 gives the two-row shape."""
        if not (0 <= k < i and 2 * i <= n):
            raise DomainError(f"Need 0 <= k < i <= n/2, got n={n}, i={i}, k={k}")
        return cls((n - i, i - k) + (1,) * k)

    @classmethod
    def hook(cls, n, k):
        """The hook [n-k, 1^k] with leg length k."""
        if not 0 <= k < n:
            raise DomainError(f"Hook needs 0 <= k < n, got n={n}, k={k}")
        return cls((n - k,) + (1,) * k)

    @property
    def n(self):
        """The partitioned integer."""
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, index):
        return self.parts[index]

    def __str__(self):
        return ",".join(str(part) for part in self.parts)

    def conjugate(self):
        """Transpose of the Ferrers diagram."""
        if not self.parts:
            return self
        return Partition(
            tuple(
                sum(1 for part in self.parts if part > col)
                for col in range(self.parts[0])
            )
        )

    def cells(self):
        """Yield the (row, col) cells of the diagram, 1-based."""
        for row, part in enumerate(self.parts, start=1):
            for col in range(1, part + 1):
                yield row, col

    def hook_length(self, row, col):
        """
        Hook length at cell (row, col), 1-based.

        Raises:
            DomainError: If the cell is outside the diagram.
        """
        if not (1 <= row <= len(self.parts) and 1 <= col <= self.parts[row - 1]):
            raise DomainError(f"Cell ({row}, {col}) is not in {self.parts}")
        conjugate = self.conjugate()
        return self.parts[row - 1] - col + conjugate[col - 1] - row + 1

    def hook_lengths(self):
        """All hook lengths, row by row."""
        conjugate = self.conjugate()
        return tuple(
            self.parts[row - 1] - col + conjugate[col - 1] - row + 1
            for row, col in self.cells()
        )

    def contents(self):
        """Contents col - row of all cells, row by row."""
        return tuple(col - row for row, col in self.cells())

    def frobenius(self):
        """Frobenius coordinates (arms, legs) along the main diagonal."""
        conjugate = self.conjugate()
        rank = sum(1 for index, part in enumerate(self.parts, start=1) if part >= index)
        arms = tuple(self.parts[j] - j - 1 for j in range(rank))
        legs = tuple(conjugate[j] - j - 1 for j in range(rank))
        return arms, legs

    def subhook_lengths(self):
        """Hook lengths at cells (2,1) and (1,2), 0 where the cell is missing."""
        if not self.parts:
            return 0, 0
        conjugate = self.conjugate()
        h21 = self.parts[1] + conjugate[0] - 2 if len(self.parts) > 1 else 0
        h12 = self.parts[0] + conjugate[1] - 2 if self.parts[0] > 1 else 0
        return h21, h12

    def is_hook(self):
        return len(self.parts) < 2 or self.parts[1] == 1

    def hook_leg(self):
        """Leg length k of a hook [n-k, 1^k]."""
        if not self.is_hook():
            raise DomainError(f"{self.parts} is not a hook")
        return len(self.parts) - 1 if self.parts else 0


@dataclass(frozen=True)
class CycleType:
    """
    A conjugacy class of S_n given by its cycle counts.

    Attributes:
        multiplicities (tuple[int]): a_1, ..., a_n where a_i is the number of
            i-cycles, padded with zeros to length n.
    """

    multiplicities: tuple

    def __post_init__(self):
        counts = [int(count) for count in self.multiplicities]
        if any(count < 0 for count in counts):
            raise DomainError(f"Cycle counts must be nonnegative: {tuple(counts)}")
        n = sum(index * count for index, count in enumerate(counts, start=1))
        counts = counts[:n] + [0] * max(0, n - len(counts))
        object.__setattr__(self, "multiplicities", tuple(counts))

    @classmethod
    def from_parts(cls, parts):
        """Build the class of a permutation with the given cycle lengths."""
        parts = [int(part) for part in parts]
        if any(part < 1 for part in parts):
            raise DomainError(f"Cycle lengths must be positive: {parts}")
        counts = [0] * sum(parts)
        for part in parts:
            counts[part - 1] += 1
        return cls(tuple(counts))

    @classmethod
    def identity(cls, n):
        return cls.from_parts((1,) * n)

    @classmethod
    def parse(cls, text):
        """Parse the text form "1^2 4" (commas and parentheses are tolerated)."""
        cleaned = str(text).strip().strip("()[]").replace(",", " ")
        parts = []
        for atom in cleaned.split():
            match = _ATOM_PATTERN.match(atom)
            if not match or int(match.group(1)) < 1:
                raise DomainError(f"Malformed cycle type atom {atom!r} in {text!r}")
            parts.extend([int(match.group(1))] * int(match.group(2) or 1))
        return cls.from_parts(parts)

    @property
    def n(self):
        return len(self.multiplicities)

    def a(self, i):
        """Number of i-cycles (0 beyond n)."""
        if i < 1:
            raise DomainError(f"Cycle index must be positive, got {i}")
        return self.multiplicities[i - 1] if i <= self.n else 0

    @property
    def parts(self):
        """Cycle lengths, largest first."""
        return tuple(
            length
            for length in range(self.n, 0, -1)
            for _ in range(self.multiplicities[length - 1])
        )

    @property
    def num_cycles(self):
        return sum(self.multiplicities)

    @property
    def sign(self):
        return -1 if (self.n - self.num_cycles) % 2 else 1

    @property
    def z(self):
        """Centralizer order prod a_i! * i^a_i."""
        return prod(
            factorial(count) * index**count
            for index, count in enumerate(self.multiplicities, start=1)
        )

    @property
    def class_size(self):
        return factorial(self.n) // self.z

    def as_partition(self):
        return Partition(self.parts)

    def __str__(self):
        atoms = []
        for index, count in enumerate(self.multiplicities, start=1):
            if count == 1:
                atoms.append(str(index))
            elif count > 1:
                atoms.append(f"{index}^{count}")
        return " ".join(atoms)


def _validate_degree(n):
    if n < 1:
        raise DomainError(f"n must be a positive integer, got {n}")
    if n > ENUMERATION_CAP:
        raise ResourceLimitError(f"n={n} exceeds the enumeration cap {ENUMERATION_CAP}")


@lru_cache(maxsize=None)
def _bounded_partitions(n, largest):
    if n == 0:
        return ((),)
    return tuple(
        (first,) + rest
        for first in range(min(n, largest), 0, -1)
        for rest in _bounded_partitions(n - first, first)
    )


def enumerate_partitions(n):
    """
    All partitions of n in reverse-lexicographic order of parts.

    Args:
        n (int): 1 <= n <= ENUMERATION_CAP.

    Returns:
        tuple[Partition]: [n] first, [1^n] last.

    Raises:
        DomainError: If n < 1.
        ResourceLimitError: If n is above the cap.
    """
    _validate_degree(n)
    return tuple(Partition(parts) for parts in _bounded_partitions(n, n))


def enumerate_cycle_types(n, parity=Parity.ANY):
    """Cycle types of S_n, ordered like `enumerate_partitions`, filtered by sign."""
    parity = Parity(parity)
    classes = (
        CycleType.from_parts(partition.parts) for partition in enumerate_partitions(n)
    )
    return tuple(alpha for alpha in classes if parity.admits(alpha.sign))


def conjugate(partition):
    return partition.conjugate()


def subhook_lengths(partition):
    """(h21, h12) of a partition."""
    return partition.subhook_lengths()


def is_i_cycle_detector(partition, i):
    """
    Whether both subhooks of `partition` have length at least i.

    Raises:
        DomainError: If i is not in 1..n.
    """
    if not 1 <= i <= partition.n:
        raise DomainError(f"Cycle index i={i} out of range 1..{partition.n}")
    return min(partition.subhook_lengths()) >= i


def i_cycle_detectors(n, i):
    """Every i-cycle detector of n, in enumeration order."""
    return tuple(
        partition
        for partition in enumerate_partitions(n)
        if is_i_cycle_detector(partition, i)
    )


def z_alpha(alpha):
    return alpha.z


def first_difference(alpha, beta):
    """Smallest i with a_i != b_i, or None when the classes are equal."""
    if alpha.n != beta.n:
        raise DomainError(f"Cycle types of different degrees: {alpha.n} and {beta.n}")
    for index, (left, right) in enumerate(
        zip(alpha.multiplicities, beta.multiplicities), start=1
    ):
        if left != right:
            return index
    return None


def _as_cycle_type(value):
    return value if isinstance(value, CycleType) else CycleType.from_parts(value.parts)


def _padded_parts(value, n):
    parts = value.parts
    return parts + (0,) * (n - len(parts))


def compare(kind, alpha, beta):
    """
    Compare two classes (or partitions) under one of the six orders.

    The cycle lexicographic family reads multiplicities; the other three read
    the sorted part sequences, padded with zeros to length n.

    Returns:
        Comparison: INCOMPARABLE only ever comes back for majorization.

    Raises:
        DomainError: If the two arguments have different degrees.
    """
    kind = OrderKind(kind)
    if alpha.n != beta.n:
        raise DomainError(f"Cannot compare classes of S_{alpha.n} and S_{beta.n}")

    if kind in CL_FAMILY:
        left, right = _as_cycle_type(alpha), _as_cycle_type(beta)
        i = first_difference(left, right)
        if i is None:
            return Comparison.EQUAL
        more = left.a(i) > right.a(i)
        if kind == OrderKind.CL:
            greater = more
        elif kind == OrderKind.NEG_CL:
            greater = not more
        else:
            greater = more if i % 2 else not more
        return Comparison.GREATER if greater else Comparison.LESS

    n = alpha.n
    left, right = _padded_parts(alpha, n), _padded_parts(beta, n)
    if left == right:
        return Comparison.EQUAL

    if kind == OrderKind.MAJORIZATION:
        left_sum = right_sum = 0
        dominates = dominated = True
        for x, y in zip(left, right):
            left_sum += x
            right_sum += y
            dominates &= left_sum >= right_sum
            dominated &= left_sum <= right_sum
        if dominates:
            return Comparison.GREATER
        if dominated:
            return Comparison.LESS
        return Comparison.INCOMPARABLE

    differing = [index for index, (x, y) in enumerate(zip(left, right)) if x != y]
    if kind == OrderKind.REVERSE_LEX:
        index = differing[0]
        greater = left[index] > right[index]
    else:
        index = differing[-1]
        greater = left[index] < right[index]
    return Comparison.GREATER if greater else Comparison.LESS


def extremes(kind, n, parity=Parity.ANY):
    """
    Largest and smallest class of a cycle lexicographic order.

    Args:
        kind (OrderKind): One of CL, NEG_CL, ALT_CL.
        n (int): n >= 4.
        parity (Parity): Restrict to even or odd classes.

    Returns:
        tuple[CycleType, CycleType]: (max, min).

    Raises:
        UnsupportedKindError: For the three orders outside the CL family.
        DomainError: If n < 4.
    """
    kind = OrderKind(kind)
    parity = Parity(parity)
    if kind not in CL_FAMILY:
        raise UnsupportedKindError(
            f"Extremes are only tabulated for the CL family, not {kind}"
        )
    if n < 4:
        raise DomainError(f"Extremes need n >= 4, got {n}")

    def of_sign(*candidates):
        # exactly one of the candidates has each sign
        if parity == Parity.ANY:
            return candidates[0]
        return next(ct for ct in candidates if parity.admits(ct.sign))

    identity = CycleType.identity(n)
    transposition = CycleType.from_parts((2,) + (1,) * (n - 2))
    full_cycle = CycleType.from_parts((n,))
    balanced = CycleType.from_parts(((n + 1) // 2, n // 2))

    cl_max = of_sign(identity, transposition)
    cl_min = of_sign(full_cycle, balanced)
    if kind == OrderKind.CL:
        return cl_max, cl_min
    if kind == OrderKind.NEG_CL:
        return cl_min, cl_max

    if n % 2 == 0:
        most_pairs = CycleType.from_parts((2,) * (n // 2))
        runner_up = CycleType.from_parts((2,) * ((n - 4) // 2) + (4,))
    else:
        most_pairs = CycleType.from_parts((2,) * ((n - 3) // 2) + (3,))
        runner_up = CycleType.from_parts((2,) * ((n - 5) // 2) + (5,))
    return cl_max, of_sign(most_pairs, runner_up)
