"""
Module for likelihood orders of a walk and how they settle over time.

P^t(alpha) - P^t(beta) is a sum over irreducibles of (chi(alpha) - chi(beta)) d e^t.
Grouping the terms by |e| gives, for each residue of t mod 2, one coefficient per
level. Once the largest level with a nonzero coefficient outweighs the absolute sum
of all smaller levels, the sign of the difference is fixed for good; the time this
first happens is the certified stabilization time of the pair.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from typing import NamedTuple

from django.db import models

from .characters import character, dimension
from .exceptions import DomainError, InvariantViolation, UnsupportedKindError
from .partitions import (
    Comparison,
    OrderKind,
    Parity,
    compare,
    enumerate_cycle_types,
    first_difference,
)
from .utils import get_max_certified_time, parallel_map
from .walks import distribution, spectrum

logger = logging.getLogger(__name__)

_RESIDUES = {Parity.ANY: (0, 1), Parity.EVEN: (0,), Parity.ODD: (1,)}


class CertificateReason(models.TextChoices):
    """Outcome of a stabilization search."""

    CERTIFIED = "certified", "Certified"
    SIGN_ALTERNATES = "sign-alternates", "Eventual sign depends on the parity of t"
    VANISHING = "vanishing", "Difference vanishes for every t >= 1 of some parity"
    HORIZON = "horizon", "Dominance not reached within the search horizon"


@dataclass(frozen=True)
class RankReport:
    """
    Classes of a distribution ranked from most to least likely.

    Attributes:
        t (int): The time of the distribution.
        groups (tuple[tuple[CycleType]]): Classes of equal per-element
            probability, most likely group first.
        probabilities (tuple[Fraction]): The probability shared by each group.
        restricted_parity (Parity): The coset the walk lives on at time t.
    """

    t: int
    groups: tuple
    probabilities: tuple
    restricted_parity: str = Parity.ANY


class Inversion(NamedTuple):
    """A pair ordered one way by an order and the other way by probability."""

    greater: object
    lesser: object
    greater_prob: Fraction
    lesser_prob: Fraction


@dataclass(frozen=True)
class StabilizationCertificate:
    """
    Proof that the sign of P^t(alpha) - P^t(beta) is fixed from t_star on.

    Attributes:
        alpha (CycleType): First class.
        beta (CycleType): Second class.
        i (int): Smallest cycle length on which the classes differ.
        parity (Parity): The times the certificate speaks about.
        lead (tuple[Partition]): Irreducibles of the dominant level.
        t_star (int | None): First admissible time from which every admissible
            time has the eventual sign. None when uncertified.
        eventual_sign (int | None): +1 when alpha ends up more likely.
        reason (CertificateReason): Why the certificate is or is not issued.
    """

    alpha: object
    beta: object
    i: int
    parity: str
    lead: tuple
    t_star: int = None
    eventual_sign: int = None
    reason: str = CertificateReason.CERTIFIED

    @property
    def certified(self):
        return self.reason == CertificateReason.CERTIFIED


@dataclass(frozen=True)
class StabilizationReport:
    """
    Every pairwise certificate of a walk, aggregated into one order.

    Attributes:
        walk (str): Text form of the walk.
        n (int): The degree.
        parity (Parity): The times the report speaks about.
        t_max (int): Largest certified t_star (0 when nothing was certified).
        order (tuple[CycleType]): Classes from eventually most to least likely.
        certificates (tuple[StabilizationCertificate]): One per unordered pair.
        uncertified (tuple[tuple[CycleType, CycleType]]): Pairs left open.
    """

    walk: str
    n: int
    parity: str
    t_max: int
    order: tuple
    certificates: tuple = field(repr=False)
    uncertified: tuple = ()


class DistanceRow(NamedTuple):
    """Distances to stationarity at one time."""

    t: int
    tv: Fraction
    sep: Fraction
    linf: Fraction


@dataclass(frozen=True)
class StationarySplit:
    """
    Classes above, at and below their stationary probability at time t.

    Only classes in the support of the stationary law at time t are listed.
    """

    t: int
    above: tuple
    equal: tuple
    below: tuple


class SplitRule(NamedTuple):
    """Predicates on cycle types: predicted above and below uniform."""

    above: object
    below: object


def rank(dist):
    """
    Group the supported classes of `dist` by per-element probability.

    Args:
        dist (ClassDistribution): The law at some time t.

    Returns:
        RankReport: Groups in decreasing probability; zero-probability classes
        are left out.
    """
    by_prob = {}
    for alpha in dist.support():
        by_prob.setdefault(dist.probability(alpha), []).append(alpha)
    ordered = sorted(by_prob, reverse=True)
    if dist.coset_sign is None:
        parity = Parity.ANY
    else:
        parity = Parity.EVEN if dist.coset_sign == 1 else Parity.ODD
    return RankReport(
        t=dist.t,
        groups=tuple(tuple(by_prob[prob]) for prob in ordered),
        probabilities=tuple(ordered),
        restricted_parity=parity,
    )


def check_order(dist, kind):
    """
    Pairs on which a total order disagrees with the probabilities at time t.

    Classes are taken from the stationary support at time t, so a class the
    walk cannot reach yet still counts. Equal probabilities never count.

    Raises:
        UnsupportedKindError: For majorization, which is only partial.
    """
    kind = OrderKind(kind)
    if kind == OrderKind.MAJORIZATION:
        raise UnsupportedKindError("Majorization is a partial order")
    classes = dist.admissible()
    inversions = []
    for index, alpha in enumerate(classes):
        for beta in classes[index + 1 :]:
            if compare(kind, alpha, beta) == Comparison.LESS:
                high, low = beta, alpha
            else:
                high, low = alpha, beta
            p, q = dist.probability(high), dist.probability(low)
            if p < q:
                inversions.append(Inversion(high, low, p, q))
    logger.debug(
        "%s inversions of %s for %s at t=%s", len(inversions), kind, dist.walk, dist.t
    )
    return tuple(inversions)


def _admissible_residues(walk, alpha, beta, parity):
    requested = _RESIDUES[Parity(parity)]
    sign = walk.support_sign() if walk.n >= 2 else None
    if sign is None:
        return requested
    if alpha.sign != beta.sign:
        raise DomainError(
            f"{alpha} and {beta} are never reachable at the same time by {walk.name}"
        )
    if sign == 1:
        if alpha.sign != 1:
            raise DomainError(f"{walk.name} never reaches the odd classes")
        return requested
    residue = 0 if alpha.sign == 1 else 1
    if residue not in requested:
        raise DomainError(
            f"{alpha} and {beta} are not reachable at {Parity(parity).value} times"
        )
    return (residue,)


def _levels(walk, alpha, beta):
    """
    (|e|, coefficient at +|e|, coefficient at -|e|, partitions) per nonzero level,
    largest first.
    """
    levels = {}
    for partition, value in spectrum(walk):
        if not value:
            continue
        delta = character(partition, alpha) - character(partition, beta)
        if not delta:
            continue
        level = levels.setdefault(abs(value), [0, 0, []])
        level[0 if value > 0 else 1] += delta * dimension(partition)
        level[2].append(partition)
    return [
        (magnitude, plus, minus, tuple(partitions))
        for magnitude, (plus, minus, partitions) in sorted(
            levels.items(), reverse=True
        )
    ]


def _combined(levels, residue):
    """Levels with their coefficient at times t = residue mod 2, zeros dropped."""
    combined = []
    for magnitude, plus, minus, partitions in levels:
        coefficient = plus + minus if residue == 0 else plus - minus
        if coefficient:
            combined.append((magnitude, coefficient, partitions))
    return combined


def _dominates(lead, rest, t):
    magnitude, coefficient, _ = lead
    bound = sum(
        (abs(c) * (r / magnitude) ** t for r, c, _ in rest),
        Fraction(0),
    )
    return bound < abs(coefficient)


def _first_dominant_time(lead, rest, start, horizon):
    """Smallest t = start mod 2, start <= t <= horizon, with lead dominating."""
    if start > horizon:
        return None
    if _dominates(lead, rest, start):
        return start
    # t = start + 2k; k = low fails, k = high holds
    last = (horizon - start) // 2
    low, high = 0, 1
    while True:
        if high >= last:
            if not _dominates(lead, rest, start + 2 * last):
                return None
            high = last
            break
        if _dominates(lead, rest, start + 2 * high):
            break
        low, high = high, high * 2
    while high - low > 1:
        middle = (low + high) // 2
        if _dominates(lead, rest, start + 2 * middle):
            high = middle
        else:
            low = middle
    return start + 2 * high


def _residue_leads(walk, alpha, beta, residues):
    levels = _levels(walk, alpha, beta)
    return {residue: _combined(levels, residue) for residue in residues}


def lead_detectors(walk, alpha, beta, parity=Parity.ANY):
    """
    Irreducibles of the dominant level of P^t(alpha) - P^t(beta).

    Returns:
        tuple[Partition]: Lead partitions over every admissible parity, in
        enumeration order.
    """
    _validate_pair(walk, alpha, beta)
    residues = _admissible_residues(walk, alpha, beta, parity)
    found = set()
    for combined in _residue_leads(walk, alpha, beta, residues).values():
        if combined:
            found.update(combined[0][2])
    return tuple(
        partition for partition, _ in spectrum(walk) if partition in found
    )


def _validate_pair(walk, alpha, beta):
    if alpha.n != walk.n or beta.n != walk.n:
        raise DomainError(
            f"Classes {alpha} and {beta} are not both classes of S_{walk.n}"
        )
    if alpha == beta:
        raise DomainError(f"Cannot certify a class against itself: {alpha}")


def certified_stabilization_time(walk, alpha, beta, parity=Parity.ANY):
    """
    Certify the eventual sign of P^t(alpha) - P^t(beta).

    Args:
        walk (WalkSpec): The walk.
        alpha (CycleType): First class.
        beta (CycleType): Second class, different from alpha.
        parity (Parity): Restrict to even or odd times.

    Returns:
        StabilizationCertificate: Certified, or carrying the reason it is not.

    Raises:
        DomainError: If the classes are equal, of another degree, or never
            reachable together at the requested times.
    """
    parity = Parity(parity)
    _validate_pair(walk, alpha, beta)
    residues = _admissible_residues(walk, alpha, beta, parity)
    horizon = get_max_certified_time()
    per_residue = _residue_leads(walk, alpha, beta, residues)
    i = first_difference(alpha, beta)

    lead, signs, firsts, reason = set(), set(), {}, CertificateReason.CERTIFIED
    for residue, combined in per_residue.items():
        if not combined:
            if reason == CertificateReason.CERTIFIED:
                reason = CertificateReason.VANISHING
            continue
        head, rest = combined[0], combined[1:]
        lead.update(head[2])
        signs.add(1 if head[1] > 0 else -1)
        start = 2 if residue == 0 else 1
        first = _first_dominant_time(head, rest, start, horizon)
        if first is None and reason == CertificateReason.CERTIFIED:
            reason = CertificateReason.HORIZON
        firsts[residue] = first
    if reason == CertificateReason.CERTIFIED and len(signs) > 1:
        reason = CertificateReason.SIGN_ALTERNATES
    lead = tuple(partition for partition, _ in spectrum(walk) if partition in lead)

    if reason != CertificateReason.CERTIFIED:
        logger.debug("Pair %s / %s on %s: %s", alpha, beta, walk.name, reason)
        return StabilizationCertificate(
            alpha=alpha, beta=beta, i=i, parity=parity, lead=lead, reason=reason
        )

    # every admissible time after the last failing one is good
    last_bad = max(first - 2 for first in firsts.values())
    t_star = min(
        t
        for t in range(max(last_bad + 1, 1), max(last_bad + 1, 1) + 2)
        if t % 2 in residues
    )
    sign = signs.pop()
    logger.debug(
        "Pair %s / %s on %s: sign %+d from t=%s", alpha, beta, walk.name, sign, t_star
    )
    return StabilizationCertificate(
        alpha=alpha,
        beta=beta,
        i=i,
        parity=parity,
        lead=lead,
        t_star=t_star,
        eventual_sign=sign,
    )


def dominance_holds(walk, alpha, beta, t):
    """Whether the lead level outweighs all smaller ones at time t exactly."""
    _validate_pair(walk, alpha, beta)
    if t < 1:
        return False
    combined = _combined(_levels(walk, alpha, beta), t % 2)
    return bool(combined) and _dominates(combined[0], combined[1:], t)


def heuristic_time(walk, alpha, beta, parity=Parity.ANY):
    """
    Approximate time at which the lead term beats every single smaller level.

    For each smaller level with coefficient c and magnitude r this is
    ln(|c| / |c_lead|) / ln(R / r); the largest over levels and parities is
    returned as a float, never below 0.
    """
    _validate_pair(walk, alpha, beta)
    residues = _admissible_residues(walk, alpha, beta, parity)
    estimate = 0.0
    for combined in _residue_leads(walk, alpha, beta, residues).values():
        if not combined:
            continue
        big, lead_c, _ = combined[0]
        for small, c, _ in combined[1:]:
            ratio = math.log(abs(c) / abs(lead_c)) / math.log(big / small)
            estimate = max(estimate, ratio)
    return estimate


def report_classes(walk, parity=Parity.ANY):
    """
    The classes a stabilization report ranks.

    Raises:
        DomainError: For parity "any" on a walk that alternates between cosets.
    """
    parity = Parity(parity)
    sign = walk.support_sign() if walk.n >= 2 else None
    if sign is None:
        return enumerate_cycle_types(walk.n)
    if sign == 1:
        return enumerate_cycle_types(walk.n, Parity.EVEN)
    if parity == Parity.ANY:
        raise DomainError(
            f"{walk.name} alternates between cosets; ask for even or odd times"
        )
    return enumerate_cycle_types(walk.n, parity)


def stabilization_report(walk, parity=Parity.ANY):
    """
    Certify every pair of classes and assemble the eventual order.

    Args:
        walk (WalkSpec): The walk.
        parity (Parity): Restrict to even or odd times.

    Returns:
        StabilizationReport: The order by number of certified wins, t_max and
        the pairs left uncertified.

    Raises:
        DomainError: As `report_classes`.
        InvariantViolation: If the certified signs are not transitive.
    """
    parity = Parity(parity)
    classes = report_classes(walk, parity)
    pairs = [
        (alpha, beta)
        for index, alpha in enumerate(classes)
        for beta in classes[index + 1 :]
    ]
    certificates = parallel_map(
        lambda pair: certified_stabilization_time(walk, *pair, parity), pairs
    )

    wins = {alpha: 0 for alpha in classes}
    for certificate in certificates:
        if certificate.certified:
            if certificate.eventual_sign > 0:
                wins[certificate.alpha] += 1
            else:
                wins[certificate.beta] += 1
    position = {alpha: index for index, alpha in enumerate(classes)}
    order = tuple(sorted(classes, key=lambda alpha: (-wins[alpha], position[alpha])))

    placed = {alpha: index for index, alpha in enumerate(order)}
    for certificate in certificates:
        if not certificate.certified:
            continue
        alpha_first = placed[certificate.alpha] < placed[certificate.beta]
        if alpha_first != (certificate.eventual_sign > 0):
            raise InvariantViolation(
                f"Certified signs of {walk.name} are not transitive at "
                f"{certificate.alpha} / {certificate.beta}"
            )

    uncertified = tuple(
        (certificate.alpha, certificate.beta)
        for certificate in certificates
        if not certificate.certified
    )
    t_max = max(
        (certificate.t_star for certificate in certificates if certificate.certified),
        default=0,
    )
    logger.info(
        "Report for %s on S_%s (%s): %s pairs, %s uncertified, t_max=%s",
        walk.name,
        walk.n,
        parity,
        len(pairs),
        len(uncertified),
        t_max,
    )
    return StabilizationReport(
        walk=walk.name,
        n=walk.n,
        parity=parity,
        t_max=t_max,
        order=order,
        certificates=tuple(certificates),
        uncertified=uncertified,
    )


def verify_report(walk, report):
    """
    Check every certified sign against the exact law at t_max.

    Raises:
        InvariantViolation: If the exact probabilities contradict a certificate.
    """
    certified = [
        certificate for certificate in report.certificates if certificate.certified
    ]
    if not certified or report.t_max < 1:
        return
    dist = distribution(walk, report.t_max)
    for certificate in certified:
        gap = dist.probability(certificate.alpha) - dist.probability(certificate.beta)
        if not gap or (gap > 0) != (certificate.eventual_sign > 0):
            raise InvariantViolation(
                f"Certified sign of {certificate.alpha} / {certificate.beta} "
                f"fails at t={report.t_max} for {walk.name}"
            )
    logger.info("Verified %s certificates at t=%s", len(certified), report.t_max)


def settled_ranking(walk, report):
    """
    Rank the classes of a report at the first time from t_max on, of the
    report's parity, at which every one of them has positive probability.

    Classes the walk cannot reach yet are left out of `rank`, so t_max alone
    can miss the least likely class. Along times of one parity the support
    only grows, and once it repeats it stays put.

    Raises:
        DomainError: If the walk never reaches every class of the report at once.
    """
    residues = set(_RESIDUES[Parity(report.parity)])
    wanted = set(report.order)
    supports, t = {}, report.t_max
    while residues:
        residue = t % 2
        if residue in residues:
            dist = distribution(walk, t)
            support = frozenset(dist.support())
            if wanted <= support:
                logger.info("Ranking %s on S_%s at t=%s", walk.name, walk.n, t)
                return rank(dist)
            if supports.get(residue) == support:
                residues.discard(residue)
            supports[residue] = support
        t += 1
    raise DomainError(f"{walk.name} never reaches every class of the report at once")


def sort_by_order(classes, kind):
    """Classes sorted from greatest to least under a total order."""
    kind = OrderKind(kind)
    if kind == OrderKind.MAJORIZATION:
        raise UnsupportedKindError("Majorization is a partial order")

    def by_kind(alpha, beta):
        outcome = compare(kind, alpha, beta)
        if outcome == Comparison.GREATER:
            return -1
        return 1 if outcome == Comparison.LESS else 0

    return tuple(sorted(classes, key=cmp_to_key(by_kind)))


def _distances(dist):
    tv, sep, linf = Fraction(0), Fraction(0), Fraction(0)
    for alpha in dist.classes:
        p = dist.probability(alpha)
        pi = dist.stationary_probability(alpha)
        if p > pi:
            tv += alpha.class_size * (p - pi)
        if pi:
            ratio = p / pi
            sep = max(sep, 1 - ratio)
            linf = max(linf, abs(ratio - 1))
    return tv, sep, linf


def tv_distance(walk, t):
    """Total variation distance to the stationary law at time t."""
    return _distances(distribution(walk, t))[0]


def separation(walk, t):
    """max over the stationary support of 1 - P^t(g) / pi(g)."""
    return _distances(distribution(walk, t))[1]


def linf(walk, t):
    """max over the stationary support of |P^t(g) / pi(g) - 1|."""
    return _distances(distribution(walk, t))[2]


def distance_curve(walk, t_max):
    """
    All three distances for t = 0..t_max.

    Raises:
        DomainError: If t_max is negative.
    """
    if t_max < 0:
        raise DomainError(f"t_max must be nonnegative, got {t_max}")
    rows = []
    for t in range(t_max + 1):
        rows.append(DistanceRow(t, *_distances(distribution(walk, t))))
    logger.info("Distance curve for %s on S_%s up to t=%s", walk.name, walk.n, t_max)
    return tuple(rows)


def stationary_split(walk, t):
    """Classes of the stationary support above, at or below pi at time t."""
    dist = distribution(walk, t)
    above, equal, below = [], [], []
    for alpha in dist.admissible():
        p, pi = dist.probability(alpha), dist.stationary_probability(alpha)
        if p > pi:
            above.append(alpha)
        elif p == pi:
            equal.append(alpha)
        else:
            below.append(alpha)
    return StationarySplit(
        t=t, above=tuple(above), equal=tuple(equal), below=tuple(below)
    )


def _predicted_above(alpha):
    return alpha.a(1) >= 2 or (alpha.a(1) == 1 and alpha.a(2) >= 2)


def _predicted_below(alpha):
    return alpha.a(1) == 0 or (alpha.a(1) == 1 and alpha.a(2) <= 1)


def predicted_split(n, walk=None):
    """
    Which classes a transposition walk leaves above or below uniform.

    At least two fixed points, or one fixed point and at least two 2-cycles,
    is above; every other class is below.

    Raises:
        DomainError: If n < 2.
        UnsupportedKindError: If `walk` is given and is not a transposition walk.
    """
    if n < 2:
        raise DomainError(f"The split needs n >= 2, got {n}")
    if walk is not None and not walk.is_transposition_family():
        raise UnsupportedKindError(
            f"The split rule is only known for transposition walks, not {walk.name}"
        )
    return SplitRule(above=_predicted_above, below=_predicted_below)


def predicted_side(alpha):
    return "above" if _predicted_above(alpha) else "below"


def transposition_order_bound(n):
    """Time after which the transposition walk is known to follow its order."""
    log_n = math.log(n)
    return max(
        4.14 * n * n + 6 * n * log_n + 6 * math.log(2) * n,
        2 * math.log(2) * n * n + 24 * n * log_n + 36 * n,
    )


def split_time_bound(n):
    """Time after which the transposition walk shows the predicted split."""
    return 6 * n * math.log(n) + 30 * math.log(n)


def lazy_time_factor(hold):
    """Slow-down factor 1/(p(1-p)) of holding with probability p."""
    hold = Fraction(hold)
    if not 0 < hold < 1:
        raise DomainError(f"Holding probability must lie in (0, 1), got {hold}")
    return 1 / (hold * (1 - hold))


def lazy_sign_threshold(n):
    """
    Holding probability 1/n below which the sign representation outweighs
    [n-1,1] in the lazy transposition walk.

    Below it, classes of opposite sign that differ in fixed points swap places
    with every step, so the eventual order is not CL. Meeting it is necessary
    for CL over all of S_n, not sufficient: pairs first differing at larger
    cycle lengths can need a larger p.
    """
    if n < 3:
        raise DomainError(f"The lazy transposition walk needs n >= 3, got {n}")
    return Fraction(1, n)
