from fractions import Fraction
from math import factorial

from django.test import SimpleTestCase, override_settings

from likelihood.exceptions import DomainError, ResourceLimitError
from likelihood.partitions import (
    Comparison,
    CycleType,
    OrderKind,
    Parity,
    Partition,
    compare,
    enumerate_cycle_types,
    enumerate_partitions,
)
from likelihood.walks import (
    ORACLE_MAX_TIME,
    WalkStep,
    builtin_walk,
    convolve_oracle,
    custom_walk,
    cycle_walk,
    difference,
    distribution,
    eigenvalue,
    oracle_series,
    parse_walk,
    spectrum,
)


def ct(*parts):
    return CycleType.from_parts(parts)


def mixed_walk(n):
    """Half transpositions, half n-cycles."""
    tau = ct(2, *([1] * (n - 2)))
    step = {tau: Fraction(1, n * (n - 1)), ct(n): Fraction(1, 2 * factorial(n - 1))}
    return custom_walk(n, step, name="mixed")


class WalkSpecTests(SimpleTestCase):
    def test_builtin_names_and_steps(self):
        walk = parse_walk("lazy:1/2", 4)
        self.assertEqual(walk.name, "lazy:1/2")
        self.assertEqual(walk.hold, Fraction(1, 2))
        self.assertEqual(walk.step, (WalkStep(ct(2, 1, 1), Fraction(1, 12)),))
        self.assertEqual(walk.probability(CycleType.identity(4)), Fraction(1, 2))
        self.assertEqual(parse_walk("cycle:4", 5).name, "cycle:4")
        self.assertEqual(parse_walk(" three-cycle ", 5).name, "three-cycle")

    def test_support_signs(self):
        self.assertEqual(parse_walk("transposition", 5).support_sign(), -1)
        self.assertEqual(parse_walk("three-cycle", 5).support_sign(), 1)
        self.assertEqual(parse_walk("n-cycle", 4).support_sign(), -1)
        self.assertEqual(parse_walk("n-cycle", 5).support_sign(), 1)
        self.assertIsNone(parse_walk("lazy:1/3", 5).support_sign())
        self.assertEqual(parse_walk("transposition", 5).reachable_sign(3), -1)
        self.assertEqual(parse_walk("transposition", 5).reachable_sign(4), 1)

    def test_transposition_family(self):
        self.assertTrue(parse_walk("transposition", 4).is_transposition_family())
        self.assertTrue(parse_walk("lazy:1/4", 4).is_transposition_family())
        self.assertFalse(parse_walk("three-cycle", 4).is_transposition_family())

    def test_custom_walk_from_mapping_and_pairs(self):
        step = {ct(2, 1): Fraction(1, 6), ct(3): Fraction(1, 4)}
        walk = custom_walk(3, step)
        self.assertIsNone(walk.support_sign())
        self.assertEqual(walk, custom_walk(3, list(step.items())))
        self.assertEqual([alpha for alpha, _ in walk.step], [ct(3), ct(2, 1)])

    def test_invalid_walks(self):
        cases = {
            "hold of one": lambda: cycle_walk(4, 2, hold=1),
            "negative": lambda: custom_walk(
                3, {ct(2, 1): Fraction(1, 2), ct(3): Fraction(-1, 4)}
            ),
            "wrong degree": lambda: custom_walk(3, {ct(2, 2): Fraction(1, 3)}),
            "duplicate": lambda: custom_walk(
                3, [(ct(2, 1), Fraction(1, 6)), (ct(2, 1), Fraction(1, 6))]
            ),
            "not normalized": lambda: custom_walk(3, {ct(2, 1): Fraction(1, 2)}),
            "empty": lambda: custom_walk(3, {}, hold=Fraction(1, 2)),
            "unknown kind": lambda: parse_walk("bogus", 5),
            "bad length": lambda: parse_walk("cycle:x", 5),
            "long cycle": lambda: parse_walk("cycle:7", 5),
            "small n": lambda: parse_walk("transposition", 2),
            "custom": lambda: parse_walk("custom", 5),
            "lazy one": lambda: parse_walk("lazy:1", 5),
            "lazy text": lambda: parse_walk("lazy:abc", 5),
        }
        for label, build in cases.items():
            with self.subTest(label):
                with self.assertRaises(DomainError):
                    build()


class SpectrumTests(SimpleTestCase):
    def test_trivial_and_sign_eigenvalues(self):
        walk = parse_walk("transposition", 5)
        self.assertEqual(eigenvalue(walk, Partition((5,))), 1)
        self.assertEqual(eigenvalue(walk, Partition((1,) * 5)), -1)
        self.assertEqual(eigenvalue(walk, Partition((4, 1))), Fraction(1, 2))

    def test_lazy_eigenvalues_are_shifted(self):
        plain = dict(spectrum(parse_walk("transposition", 6)))
        lazy = dict(spectrum(parse_walk("lazy:1/3", 6)))
        for partition in enumerate_partitions(6):
            with self.subTest(partition=str(partition)):
                expected = Fraction(1, 3) + Fraction(2, 3) * plain[partition]
                self.assertEqual(lazy[partition], expected)

    def test_degree_mismatch(self):
        with self.assertRaises(DomainError):
            eigenvalue(parse_walk("transposition", 5), Partition((3, 1)))


class DistributionTests(SimpleTestCase):
    def test_two_transpositions_on_three_points(self):
        dist = distribution(parse_walk("transposition", 3), 2)
        self.assertEqual(dist.probability(ct(1, 1, 1)), Fraction(1, 3))
        self.assertEqual(dist.probability(ct(2, 1)), 0)
        self.assertEqual(dist.probability(ct(3)), Fraction(1, 3))
        self.assertEqual(dist.support(), (ct(3), ct(1, 1, 1)))
        self.assertEqual(dist.total(), 1)

    def test_time_zero_is_the_identity(self):
        dist = distribution(parse_walk("three-cycle", 5), 0)
        for alpha in dist.classes:
            expected = 1 if alpha == CycleType.identity(5) else 0
            self.assertEqual(dist.probability(alpha), expected)

    def test_lazy_walk_charges_every_class(self):
        dist = distribution(parse_walk("lazy:1/2", 4), 5)
        self.assertEqual(dist.support(), dist.classes)
        self.assertIsNone(dist.coset_sign)
        self.assertEqual(dist.stationary_probability(ct(4)), Fraction(1, 24))

    def test_parity_restricted_stationary_law(self):
        dist = distribution(parse_walk("transposition", 5), 3)
        self.assertEqual(dist.coset_sign, -1)
        self.assertEqual(dist.stationary_probability(ct(2, 1, 1, 1)), Fraction(1, 60))
        self.assertEqual(dist.stationary_probability(ct(3, 1, 1)), 0)
        self.assertTrue(all(alpha.sign == -1 for alpha in dist.admissible()))
        self.assertTrue(all(alpha.sign == -1 for alpha in dist.support()))

    def test_negative_time(self):
        with self.assertRaises(DomainError):
            distribution(parse_walk("transposition", 4), -1)

    def test_difference_matches_distribution(self):
        walk = parse_walk("lazy:1/4", 6)
        dist = distribution(walk, 7)
        for alpha, beta in ((ct(2, 2, 1, 1), ct(4, 1, 1)), (ct(3, 3), ct(6))):
            with self.subTest(alpha=str(alpha), beta=str(beta)):
                self.assertEqual(
                    difference(walk, 7, alpha, beta),
                    dist.probability(alpha) - dist.probability(beta),
                )
        with self.assertRaises(DomainError):
            difference(walk, 7, ct(2, 1), ct(3))

    def test_lazy_walk_has_full_support_from_n_steps(self):
        for n in range(3, 9):
            walk = parse_walk("lazy:1/2", n)
            for t in (n, n + 1):
                with self.subTest(n=n, t=t):
                    dist = distribution(walk, t)
                    self.assertEqual(dist.support(), dist.classes)

    def test_n_cycle_walk_orders_fixed_points_at_time_four(self):
        walk = parse_walk("n-cycle", 18)
        classes = enumerate_cycle_types(18, Parity.EVEN)
        wrong = []
        for index, alpha in enumerate(classes):
            for beta in classes[index + 1 :]:
                if alpha.a(1) == beta.a(1):
                    continue
                greater = compare(OrderKind.ALT_CL, alpha, beta) == Comparison.GREATER
                if (difference(walk, 4, alpha, beta) > 0) != greater:
                    wrong.append((str(alpha), str(beta)))
        self.assertEqual(wrong, [])

    def test_difference_at_time_zero(self):
        walk = parse_walk("n-cycle", 6)
        identity = CycleType.identity(6)
        self.assertEqual(difference(walk, 0, identity, ct(6)), 1)
        self.assertEqual(difference(walk, 0, ct(6), ct(3, 3)), 0)

    @override_settings(SYMWALK_THREADS=4)
    def test_threads_do_not_change_results(self):
        walk = parse_walk("three-cycle", 7)
        threaded = distribution(walk, 9)
        with self.settings(SYMWALK_THREADS=1):
            serial = distribution(walk, 9)
        self.assertEqual(threaded.probs, serial.probs)


class OracleTests(SimpleTestCase):
    def test_fourier_inversion_matches_convolution(self):
        for n in range(3, 8):
            walks = [
                parse_walk(text, n)
                for text in ("transposition", "lazy:1/3", "three-cycle", "n-cycle")
            ]
            walks.append(mixed_walk(n))
            for walk in walks:
                for oracle in oracle_series(walk, 30):
                    with self.subTest(n=n, walk=walk.name, t=oracle.t):
                        self.assertEqual(
                            distribution(walk, oracle.t).probs, oracle.probs
                        )

    def test_single_time(self):
        walk = parse_walk("transposition", 4)
        self.assertEqual(convolve_oracle(walk, 3).probs, distribution(walk, 3).probs)

    @override_settings(SYMWALK_ORACLE_CAP=3)
    def test_degree_cap(self):
        with self.assertRaises(ResourceLimitError):
            oracle_series(parse_walk("transposition", 4), 2)

    def test_time_cap(self):
        with self.assertRaises(DomainError):
            oracle_series(parse_walk("transposition", 3), ORACLE_MAX_TIME + 1)
