"""
Module for class-function random walks on S_n.

A walk is given by its per-element step probabilities on conjugacy classes plus
an optional holding probability. Its time-t law is again a class function,
computed exactly by Fourier inversion over the irreducible characters, and
independently by repeated multiplication in the class algebra.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import factorial
from typing import NamedTuple

from django.db import models
from sympy.combinatorics import Permutation
from sympy.combinatorics.named_groups import SymmetricGroup

from .characters import character, dimension
from .exceptions import DomainError, InvariantViolation, ResourceLimitError
from .partitions import CycleType, enumerate_cycle_types, enumerate_partitions
from .utils import format_fraction, get_oracle_cap, parallel_map, parse_fraction

logger = logging.getLogger(__name__)

ORACLE_MAX_TIME = 64


class WalkKind(models.TextChoices):
    """Walk families understood by `parse_walk`."""

    TRANSPOSITION = "transposition", "Random transpositions"
    LAZY = "lazy", "Lazy random transpositions"
    THREE_CYCLE = "three-cycle", "Random 3-cycles"
    N_CYCLE = "n-cycle", "Random n-cycles"
    CYCLE = "cycle", "Random k-cycles"
    CUSTOM = "custom", "Custom class function"


class WalkStep(NamedTuple):
    """One class in the support of a step, with its per-element probability."""

    cycle_type: CycleType
    prob: Fraction


def _class_order_key(alpha):
    return alpha.parts


@dataclass(frozen=True)
class WalkSpec:
    """
    A random walk on S_n driven by a class function.

    Attributes:
        n (int): The degree.
        step (tuple[WalkStep]): Per-element probabilities of one move, already
            scaled by the probability of moving.
        hold (Fraction): Probability of staying put.
        name (str): Text form of the walk, e.g. "lazy:1/2".
    """

    n: int
    step: tuple
    hold: Fraction = Fraction(0)
    name: str = WalkKind.CUSTOM.value

    def __post_init__(self):
        hold = Fraction(self.hold)
        if self.n < 1:
            raise DomainError(f"Walks need n >= 1, got {self.n}")
        if not 0 <= hold < 1:
            raise DomainError(f"Holding probability must lie in [0, 1), got {hold}")
        merged = {}
        for alpha, prob in self.step:
            prob = Fraction(prob)
            if alpha.n != self.n:
                raise DomainError(f"Step class {alpha} is not a class of S_{self.n}")
            if prob < 0:
                raise DomainError(f"Negative probability {prob} on class {alpha}")
            if alpha in merged:
                raise DomainError(f"Class {alpha} appears twice in the step")
            merged[alpha] = prob
        steps = tuple(
            WalkStep(alpha, merged[alpha])
            for alpha in sorted(merged, key=_class_order_key, reverse=True)
            if merged[alpha]
        )
        if not steps:
            raise DomainError("The step distribution has empty support")
        total = hold + sum(alpha.class_size * prob for alpha, prob in steps)
        if total != 1:
            raise DomainError(f"Step probabilities and hold sum to {total}, not 1")
        object.__setattr__(self, "hold", hold)
        object.__setattr__(self, "step", steps)

    def probability(self, alpha):
        """Per-element probability of `alpha` after one step, hold included."""
        prob = sum((p for beta, p in self.step if beta == alpha), Fraction(0))
        if alpha == CycleType.identity(self.n):
            prob += self.hold
        return prob

    def support_sign(self):
        """The common sign of every element the step can produce, or None if mixed."""
        signs = {alpha.sign for alpha, _ in self.step}
        if self.hold:
            signs.add(1)
        return signs.pop() if len(signs) == 1 else None

    def reachable_sign(self, t):
        """Sign of every element reachable in exactly t steps, or None if both are."""
        sign = self.support_sign()
        if sign is None or self.n < 2:
            return None
        return sign**t

    def is_transposition_family(self):
        """Whether every move is a transposition (holding allowed)."""
        if self.n < 2:
            return False
        transposition = CycleType.from_parts((2,) + (1,) * (self.n - 2))
        return all(alpha == transposition for alpha, _ in self.step)


def custom_walk(n, step, hold=0, name=WalkKind.CUSTOM.value):
    """
    Build a walk from class -> per-element probability, as a mapping or pairs.

    Raises:
        DomainError: If the probabilities are negative or do not sum to 1.
    """
    pairs = step.items() if hasattr(step, "items") else step
    return WalkSpec(
        n=n,
        step=tuple(WalkStep(alpha, Fraction(prob)) for alpha, prob in pairs),
        hold=Fraction(hold),
        name=name,
    )


def cycle_walk(n, k, hold=0, name=None):
    """Uniform walk on the k-cycles of S_n, holding with probability `hold`."""
    if not 2 <= k <= n:
        raise DomainError(f"k-cycle walks need 2 <= k <= n, got n={n}, k={k}")
    alpha = CycleType.from_parts((k,) + (1,) * (n - k))
    hold = Fraction(hold)
    return custom_walk(
        n,
        {alpha: (1 - hold) / alpha.class_size},
        hold=hold,
        name=name or f"{WalkKind.CYCLE.value}:{k}",
    )


def builtin_walk(kind, n, parameter=None):
    """
    Build one of the named walks.

    Args:
        kind (WalkKind): transposition, lazy, three-cycle, n-cycle or cycle.
        n (int): The degree, at least 3.
        parameter: The holding probability for `lazy`, the cycle length for `cycle`.

    Returns:
        WalkSpec: The walk.

    Raises:
        DomainError: On an unknown kind or out-of-range parameters.
    """
    try:
        kind = WalkKind(kind)
    except ValueError as exc:
        raise DomainError(f"Unknown walk kind {kind!r}") from exc
    if n < 3:
        raise DomainError(f"Built-in walks need n >= 3, got {n}")

    if kind == WalkKind.TRANSPOSITION:
        return cycle_walk(n, 2, name=kind.value)
    if kind == WalkKind.LAZY:
        hold = parse_fraction(parameter)
        return cycle_walk(n, 2, hold=hold, name=f"{kind.value}:{format_fraction(hold)}")
    if kind == WalkKind.THREE_CYCLE:
        return cycle_walk(n, 3, name=kind.value)
    if kind == WalkKind.N_CYCLE:
        return cycle_walk(n, n, name=kind.value)
    if kind == WalkKind.CYCLE:
        try:
            k = int(parameter)
        except (TypeError, ValueError) as exc:
            raise DomainError(
                f"cycle walks need an integer length, got {parameter!r}"
            ) from exc
        return cycle_walk(n, k)
    raise DomainError("Custom walks are loaded from a walk specification file")


def parse_walk(text, n):
    """Parse `transposition | lazy:<p> | three-cycle | n-cycle | cycle:<k>`."""
    kind, _, parameter = str(text).strip().partition(":")
    return builtin_walk(kind, n, parameter or None)


def eigenvalue(walk, partition):
    """
    Eigenvalue hold + sum over the step of |kappa| P(kappa) chi(kappa)/d.

    Raises:
        DomainError: If the degrees differ.
    """
    if partition.n != walk.n:
        raise DomainError(f"Partition of {partition.n} for a walk on S_{walk.n}")
    d = dimension(partition)
    return walk.hold + sum(
        (
            alpha.class_size * prob * Fraction(character(partition, alpha), d)
            for alpha, prob in walk.step
        ),
        Fraction(0),
    )


@lru_cache(maxsize=64)
def spectrum(walk):
    """(partition, eigenvalue) for every partition of n."""
    return tuple(
        (partition, eigenvalue(walk, partition))
        for partition in enumerate_partitions(walk.n)
    )


@dataclass(frozen=True)
class ClassDistribution:
    """
    The law of a walk at time t, per element of each conjugacy class.

    Attributes:
        n (int): The degree.
        t (int): Number of steps.
        walk (str): Text form of the walk.
        probs (tuple[tuple[CycleType, Fraction]]): Per-element probabilities,
            every class of S_n, in enumeration order.
        coset_sign (int | None): Sign of the coset the walk lives on at time t,
            None when both cosets are reachable.
    """

    n: int
    t: int
    walk: str
    probs: tuple
    coset_sign: int = None

    @cached_property
    def _lookup(self):
        return dict(self.probs)

    @property
    def classes(self):
        return tuple(alpha for alpha, _ in self.probs)

    def probability(self, alpha):
        return self._lookup[alpha]

    def class_total(self, alpha):
        """Probability of the whole class rather than of one element."""
        return alpha.class_size * self._lookup[alpha]

    def total(self):
        return sum((self.class_total(alpha) for alpha in self.classes), Fraction(0))

    def support(self):
        """Classes with positive probability."""
        return tuple(alpha for alpha, prob in self.probs if prob > 0)

    def admissible(self):
        """Classes in the support of the stationary law at time t."""
        if self.coset_sign is None or self.n < 2:
            return self.classes
        return tuple(alpha for alpha in self.classes if alpha.sign == self.coset_sign)

    def stationary_probability(self, alpha):
        """Per-element probability of the uniform law on the coset reached at time t."""
        if self.coset_sign is None or self.n < 2:
            return Fraction(1, factorial(self.n))
        if alpha.sign != self.coset_sign:
            return Fraction(0)
        return Fraction(2, factorial(self.n))

    def verify(self):
        """
        Check exact normalization and nonnegativity.

        Raises:
            InvariantViolation: If either fails.
        """
        if any(prob < 0 for _, prob in self.probs):
            raise InvariantViolation(
                f"Negative probability in {self.walk} at t={self.t}"
            )
        total = self.total()
        if total != 1:
            raise InvariantViolation(
                f"{self.walk} at t={self.t} sums to {total}, not 1"
            )


def distribution(walk, t):
    """
    Exact law at time t by Fourier inversion:
    P^t(alpha) = (1/n!) sum over lambda of chi(alpha) d e^t.

    Raises:
        DomainError: If t is negative.
    """
    if t < 0:
        raise DomainError(f"t must be nonnegative, got {t}")
    classes = enumerate_cycle_types(walk.n)

    def contribution(item):
        partition, value = item
        weight = dimension(partition) * value**t
        if not weight:
            return [Fraction(0)] * len(classes)
        return [weight * character(partition, alpha) for alpha in classes]

    columns = parallel_map(contribution, spectrum(walk))
    order = factorial(walk.n)
    probs = tuple(
        (alpha, sum((column[j] for column in columns), Fraction(0)) / order)
        for j, alpha in enumerate(classes)
    )
    result = ClassDistribution(
        n=walk.n, t=t, walk=walk.name, probs=probs, coset_sign=walk.reachable_sign(t)
    )
    result.verify()
    logger.debug(
        "Computed %s on S_%s at t=%s over %s irreducibles",
        walk.name,
        walk.n,
        t,
        len(columns),
    )
    return result


def difference(walk, t, alpha, beta):
    """
    P^t(alpha) - P^t(beta) straight from the character differences.

    Raises:
        DomainError: If the classes are not classes of S_n or t is negative.
    """
    if alpha.n != walk.n or beta.n != walk.n:
        raise DomainError(
            f"Classes {alpha} and {beta} are not both classes of S_{walk.n}"
        )
    if t < 0:
        raise DomainError(f"t must be nonnegative, got {t}")
    total = Fraction(0)
    for partition, value in spectrum(walk):
        if t and not value:
            continue
        delta = character(partition, alpha) - character(partition, beta)
        if delta:
            total += delta * dimension(partition) * value**t
    return total / factorial(walk.n)


def _class_of(permutation, index):
    structure = permutation.cycle_structure
    parts = [length for length, count in structure.items() for _ in range(count)]
    return index[CycleType.from_parts(parts)]


def _representative(alpha):
    array, start = [], 0
    for length in alpha.parts:
        block = list(range(start, start + length))
        array.extend(block[1:] + block[:1])
        start += length
    return Permutation(array)


@lru_cache(maxsize=None)
def class_structure_constants(n):
    """
    Class algebra structure constants of S_n by brute force.

    Returns:
        tuple[dict]: For each class c (enumeration order), a mapping (a, b)
        -> number of x in class a with x^-1 z in class b, for a fixed z in c.
    """
    cap = get_oracle_cap()
    if n > cap:
        raise ResourceLimitError(
            f"The convolution oracle is capped at n={cap}, got {n}"
        )
    classes = enumerate_cycle_types(n)
    index = {alpha: j for j, alpha in enumerate(classes)}
    elements = list(SymmetricGroup(n).generate()) if n > 1 else [Permutation([0])]
    element_classes = [_class_of(x, index) for x in elements]
    constants = []
    for gamma in classes:
        z = _representative(gamma)
        counts = {}
        for x, a in zip(elements, element_classes):
            key = (a, _class_of(~x * z, index))
            counts[key] = counts.get(key, 0) + 1
        constants.append(counts)
    logger.info(
        "Computed class structure constants for S_%s (%s classes)", n, len(classes)
    )
    return tuple(constants)


def oracle_series(walk, t_max):
    """
    Laws at t = 0..t_max by repeated convolution in the class algebra.

    Raises:
        ResourceLimitError: If n is above SYMWALK_ORACLE_CAP.
        DomainError: If t_max is outside 0..ORACLE_MAX_TIME.
    """
    if not 0 <= t_max <= ORACLE_MAX_TIME:
        raise DomainError(
            f"Oracle times must lie in 0..{ORACLE_MAX_TIME}, got {t_max}"
        )
    cap = get_oracle_cap()
    if walk.n > cap:
        raise ResourceLimitError(
            f"The convolution oracle is capped at n={cap}, got {walk.n}"
        )
    constants = class_structure_constants(walk.n)
    classes = enumerate_cycle_types(walk.n)
    step = [walk.probability(alpha) for alpha in classes]
    identity = CycleType.identity(walk.n)
    current = [Fraction(int(alpha == identity)) for alpha in classes]
    series = []
    for t in range(t_max + 1):
        result = ClassDistribution(
            n=walk.n,
            t=t,
            walk=walk.name,
            probs=tuple(zip(classes, current)),
            coset_sign=walk.reachable_sign(t),
        )
        result.verify()
        series.append(result)
        current = [
            sum(
                (
                    current[a] * step[b] * count
                    for (a, b), count in constants[c].items()
                ),
                Fraction(0),
            )
            for c in range(len(classes))
        ]
    return series


def convolve_oracle(walk, t):
    """Law at time t from the class algebra, with no character theory involved."""
    return oracle_series(walk, t)[-1]
