"""
Module for irreducible characters of the symmetric group.

Character values come from the Murnaghan-Nakayama rule on the abacus of beta
numbers: removing a border strip of length k is moving one bead k places down
into a free position, and the strip height is the number of beads jumped over.
Dimensions come from the hook-length formula. The closed forms for the three
walks are kept next to the general rule so that tests can play them off
against each other.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import comb, factorial, prod

from .exceptions import DomainError, InvariantViolation, ResourceLimitError
from .partitions import Partition, enumerate_cycle_types, enumerate_partitions
from .utils import get_table_cap

logger = logging.getLogger(__name__)


def _dimension_of_parts(parts):
    partition = Partition(parts)
    return factorial(partition.n) // prod(partition.hook_lengths())


@lru_cache(maxsize=None)
def _murnaghan_nakayama(parts, cycles):
    """Character of the shape `parts` at the cycle lengths `cycles` (largest first)."""
    if not cycles:
        return 1 if not parts else 0
    if cycles[0] == 1:
        return _dimension_of_parts(parts)

    length, rest = cycles[0], cycles[1:]
    rows = len(parts)
    beads = [part + rows - 1 - index for index, part in enumerate(parts)]
    occupied = set(beads)
    total = 0
    for bead in beads:
        target = bead - length
        if target < 0 or target in occupied:
            continue
        height = sum(1 for other in beads if target < other < bead)
        moved = sorted(
            (target if other == bead else other for other in beads), reverse=True
        )
        shape = tuple(
            part
            for part in (b - (rows - 1 - index) for index, b in enumerate(moved))
            if part
        )
        total += (-1) ** height * _murnaghan_nakayama(shape, rest)
    return total


def character(partition, alpha):
    """
    Irreducible character value chi_partition(alpha).

    Args:
        partition (Partition): The irreducible.
        alpha (CycleType): The conjugacy class, of the same degree.

    Returns:
        int: The exact character value.

    Raises:
        DomainError: If the degrees differ.
    """
    if partition.n != alpha.n:
        raise DomainError(
            f"Size mismatch: partition of {partition.n} against class of S_{alpha.n}"
        )
    return _murnaghan_nakayama(partition.parts, alpha.parts)


def dimension(partition):
    """Dimension of the irreducible, by the hook-length formula."""
    return _dimension_of_parts(partition.parts)


def char_ratio(partition, alpha):
    """Normalized character chi(alpha) / d as an exact fraction."""
    return Fraction(character(partition, alpha), dimension(partition))


def content_ratio(partition):
    """
    Character ratio at a transposition from the contents of the diagram.

    The sum of contents over C(n, 2) equals chi(tau)/d.
    """
    n = partition.n
    if n < 2:
        raise DomainError(f"Transpositions need n >= 2, got {n}")
    return Fraction(sum(partition.contents()), comb(n, 2))


def transposition_ratio_lambda_ik(n, i, k=0):
    """
    Closed form 1 - i(n-i+k+1)/C(n,2) for the shape [n-i, i-k, 1^k].

    Raises:
        DomainError: Unless 0 <= k < i <= n/2.
    """
    if not (0 <= k < i and 2 * i <= n):
        raise DomainError(f"Need 0 <= k < i <= n/2, got n={n}, i={i}, k={k}")
    return 1 - Fraction(i * (n - i + k + 1), comb(n, 2))


def lambda_i_dimension(n, i):
    """Dimension C(n,i)(n-2i+1)/(n-i+1) of the two-row shape [n-i, i]."""
    return lambda_ik_dimension(n, i, 0) if i else 1


def lambda_ik_dimension(n, i, k):
    """Dimension C(n,i) C(i-1,k) (n-2i+k+1)/(n-i+k+1) of [n-i, i-k, 1^k]."""
    if not (0 <= k < i and 2 * i <= n):
        raise DomainError(f"Need 0 <= k < i <= n/2, got n={n}, i={i}, k={k}")
    value = Fraction(comb(n, i) * comb(i - 1, k) * (n - 2 * i + k + 1), n - i + k + 1)
    if value.denominator != 1:
        raise InvariantViolation(
            f"Non-integral dimension {value} for n={n}, i={i}, k={k}"
        )
    return value.numerator


def hook_dimension(n, k):
    """Dimension C(n-1, k) of the hook [n-k, 1^k]."""
    return comb(n - 1, k)


def three_cycle_ratio(partition):
    """
    Character ratio at a 3-cycle from the Frobenius coordinates.

    With M_3 the sum over arms and legs x of x(x+1)(2x+1), the ratio is
    M_3 / (2 (n)_3) - 3 / (2 (n-2)).

    Raises:
        DomainError: If n < 3.
    """
    n = partition.n
    if n < 3:
        raise DomainError(f"3-cycles need n >= 3, got {n}")
    arms, legs = partition.frobenius()
    moment = sum(x * (x + 1) * (2 * x + 1) for x in arms + legs)
    return Fraction(moment, 2 * n * (n - 1) * (n - 2)) - Fraction(3, 2 * (n - 2))


def three_cycle_hook_ratio(n, i):
    """Closed form 1 - 3i(n-i-1)/((n-1)(n-2)) for the hook [n-i, 1^i]."""
    if n < 3 or not 0 <= i < n:
        raise DomainError(f"Need n >= 3 and 0 <= i < n, got n={n}, i={i}")
    return 1 - Fraction(3 * i * (n - i - 1), (n - 1) * (n - 2))


def ncycle_character(partition):
    """Character at an n-cycle: (-1)^k on the hook [n-k, 1^k], 0 elsewhere."""
    if not partition.is_hook():
        return 0
    return (-1) ** partition.hook_leg()


@dataclass(frozen=True)
class CharacterTable:
    """
    The full character table of S_n.

    Attributes:
        n (int): The degree.
        partitions (tuple[Partition]): Row labels, reverse-lexicographic.
        classes (tuple[CycleType]): Column labels, identity first.
        chi (tuple[tuple[int]]): Row-major character values.
        dims (tuple[int]): Dimensions of the rows.
    """

    n: int
    partitions: tuple
    classes: tuple
    chi: tuple
    dims: tuple

    @cached_property
    def _row_index(self):
        return {partition: index for index, partition in enumerate(self.partitions)}

    @cached_property
    def _column_index(self):
        return {alpha: index for index, alpha in enumerate(self.classes)}

    def value(self, partition, alpha):
        return self.chi[self._row_index[partition]][self._column_index[alpha]]

    def verify(self):
        """
        Check both orthogonality relations and sum of squared dimensions.

        Raises:
            InvariantViolation: If any relation fails.
        """
        order = factorial(self.n)
        if sum(d * d for d in self.dims) != order:
            raise InvariantViolation(f"Sum of squared dimensions is not {order}")
        sizes = [alpha.class_size for alpha in self.classes]
        for row, first in enumerate(self.chi):
            for other in range(row, len(self.chi)):
                inner = sum(s * x * y for s, x, y in zip(sizes, first, self.chi[other]))
                if inner != (order if row == other else 0):
                    raise InvariantViolation(
                        f"Row orthogonality fails at rows {row}, {other}"
                    )
        columns = list(zip(*self.chi))
        for col, first in enumerate(columns):
            for other in range(col, len(columns)):
                inner = sum(x * y for x, y in zip(first, columns[other]))
                expected = self.classes[col].z if col == other else 0
                if inner != expected:
                    raise InvariantViolation(
                        f"Column orthogonality fails at columns {col}, {other}"
                    )


def build_table(n):
    """
    Build and verify the character table of S_n.

    Raises:
        DomainError: If n < 1.
        ResourceLimitError: If n exceeds SYMWALK_TABLE_CAP.
    """
    cap = get_table_cap()
    if n < 1:
        raise DomainError(f"n must be a positive integer, got {n}")
    if n > cap:
        raise ResourceLimitError(
            f"Full character tables are capped at n={cap}, got {n}"
        )
    partitions = enumerate_partitions(n)
    classes = tuple(reversed(enumerate_cycle_types(n)))
    table = CharacterTable(
        n=n,
        partitions=partitions,
        classes=classes,
        chi=tuple(
            tuple(character(lam, alpha) for alpha in classes) for lam in partitions
        ),
        dims=tuple(dimension(lam) for lam in partitions),
    )
    table.verify()
    logger.info("Built character table for n=%s (%s classes)", n, len(classes))
    return table
