from functools import cmp_to_key

from django.test import SimpleTestCase
from sympy import npartitions

from likelihood.exceptions import DomainError, ResourceLimitError, UnsupportedKindError
from likelihood.partitions import (
    CL_FAMILY,
    TOTAL_KINDS,
    Comparison,
    CycleType,
    OrderKind,
    Parity,
    Partition,
    compare,
    enumerate_cycle_types,
    enumerate_partitions,
    extremes,
    first_difference,
    i_cycle_detectors,
    is_i_cycle_detector,
    subhook_lengths,
    z_alpha,
)


def ct(*parts):
    return CycleType.from_parts(parts)


def dominates(upper, lower):
    return compare(OrderKind.MAJORIZATION, upper, lower) == Comparison.GREATER


class PartitionTests(SimpleTestCase):
    def test_rejects_bad_parts(self):
        with self.assertRaises(DomainError):
            Partition((2, 3))
        with self.assertRaises(DomainError):
            Partition((2, 0))
        with self.assertRaises(DomainError):
            Partition.parse("2,a")

    def test_parse_and_text(self):
        self.assertEqual(Partition.parse("[4, 2]"), Partition((4, 2)))
        self.assertEqual(str(Partition((4, 2))), "4,2")
        self.assertEqual(Partition.parse(""), Partition(()))

    def test_named_shapes(self):
        self.assertEqual(Partition.two_row(8, 3), Partition((5, 3)))
        self.assertEqual(Partition.two_row(8, 0), Partition((8,)))
        self.assertEqual(Partition.near_two_row(9, 3, 1), Partition((6, 2, 1)))
        self.assertEqual(Partition.hook(6, 2), Partition((4, 1, 1)))
        with self.assertRaises(DomainError):
            Partition.two_row(5, 3)

    def test_conjugate(self):
        self.assertEqual(Partition((4, 2)).conjugate(), Partition((2, 2, 1, 1)))
        self.assertEqual(Partition((3, 2, 1)).conjugate(), Partition((3, 2, 1)))

    def test_hooks_and_contents(self):
        self.assertEqual(Partition((2, 1)).hook_lengths(), (3, 1, 1))
        self.assertEqual(Partition((4, 2)).hook_length(1, 1), 5)
        self.assertEqual(Partition((2, 1)).contents(), (0, 1, -1))
        with self.assertRaises(DomainError):
            Partition((2, 1)).hook_length(2, 2)

    def test_frobenius(self):
        self.assertEqual(Partition((4, 2)).frobenius(), ((3, 0), (1, 0)))
        self.assertEqual(Partition((1,)).frobenius(), ((0,), (0,)))

    def test_subhook_lengths(self):
        self.assertEqual(subhook_lengths(Partition((4, 2))), (2, 4))
        self.assertEqual(subhook_lengths(Partition((5, 1))), (1, 4))
        self.assertEqual(subhook_lengths(Partition((6,))), (0, 5))

    def test_hook_leg(self):
        self.assertTrue(Partition((3, 1, 1)).is_hook())
        self.assertEqual(Partition((3, 1, 1)).hook_leg(), 2)
        with self.assertRaises(DomainError):
            Partition((2, 2)).hook_leg()


class CycleTypeTests(SimpleTestCase):
    def test_parse(self):
        alpha = CycleType.parse("1^2 4")
        self.assertEqual(alpha.multiplicities, (2, 0, 0, 1, 0, 0))
        self.assertEqual(alpha.n, 6)
        self.assertEqual(str(alpha), "1^2 4")
        self.assertEqual(alpha.parts, (4, 1, 1))

    def test_parse_rejects_garbage(self):
        for text in ("0", "2^x", "a b"):
            with self.subTest(text=text):
                with self.assertRaises(DomainError):
                    CycleType.parse(text)

    def test_centralizer_and_class_size(self):
        alpha = ct(4, 1, 1)
        self.assertEqual(alpha.z, 8)
        self.assertEqual(alpha.class_size, 90)
        self.assertEqual(ct(2, 2, 2).z, 48)
        self.assertEqual(z_alpha(ct(3, 1, 1)), 6)

    def test_sign(self):
        self.assertEqual(ct(4, 1, 1).sign, -1)
        self.assertEqual(ct(3, 3).sign, 1)
        self.assertEqual(CycleType.identity(5).sign, 1)

    def test_a_beyond_n_is_zero(self):
        self.assertEqual(ct(2, 1).a(7), 0)
        with self.assertRaises(DomainError):
            ct(2, 1).a(0)


class EnumerationTests(SimpleTestCase):
    def test_counts_match_partition_numbers(self):
        for n in range(1, 16):
            with self.subTest(n=n):
                self.assertEqual(len(enumerate_partitions(n)), npartitions(n))

    def test_reverse_lexicographic_order(self):
        self.assertEqual(
            [partition.parts for partition in enumerate_partitions(4)],
            [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)],
        )

    def test_class_sizes_sum_to_factorial(self):
        sizes = [alpha.class_size for alpha in enumerate_cycle_types(7)]
        self.assertEqual(sum(sizes), 5040)

    def test_parity_filter(self):
        even = enumerate_cycle_types(5, Parity.EVEN)
        odd = enumerate_cycle_types(5, Parity.ODD)
        self.assertEqual(len(even) + len(odd), 7)
        self.assertTrue(all(alpha.sign == 1 for alpha in even))
        self.assertEqual(sum(alpha.class_size for alpha in odd), 60)

    def test_bounds(self):
        with self.assertRaises(DomainError):
            enumerate_partitions(0)
        with self.assertRaises(ResourceLimitError):
            enumerate_partitions(41)


class DetectorTests(SimpleTestCase):
    def test_two_cycle_detectors_of_six(self):
        detectors = i_cycle_detectors(6, 2)
        self.assertIn(Partition((4, 2)), detectors)
        self.assertNotIn(Partition((5, 1)), detectors)

    def test_no_detectors_above_half(self):
        self.assertEqual(i_cycle_detectors(6, 4), ())

    def test_detectors_are_closed_under_conjugation(self):
        for n in range(2, 13):
            with self.subTest(n=n):
                for partition in enumerate_partitions(n):
                    conjugate = partition.conjugate()
                    for i in range(1, n + 1):
                        self.assertEqual(
                            is_i_cycle_detector(partition, i),
                            is_i_cycle_detector(conjugate, i),
                        )

    def test_index_range(self):
        with self.assertRaises(DomainError):
            is_i_cycle_detector(Partition((3, 1)), 0)
        with self.assertRaises(DomainError):
            is_i_cycle_detector(Partition((3, 1)), 5)


class CompareTests(SimpleTestCase):
    def test_first_difference(self):
        self.assertEqual(first_difference(ct(1, 1, 2, 2), ct(1, 1, 4)), 2)
        self.assertIsNone(first_difference(ct(3, 1), ct(1, 3)))

    def test_cycle_lexicographic_family(self):
        # first difference at i = 2: (1^2 2^2) has more 2-cycles
        alpha, beta = ct(1, 1, 2, 2), ct(1, 1, 4)
        self.assertEqual(compare(OrderKind.CL, alpha, beta), Comparison.GREATER)
        self.assertEqual(compare(OrderKind.NEG_CL, alpha, beta), Comparison.LESS)
        self.assertEqual(compare(OrderKind.ALT_CL, alpha, beta), Comparison.LESS)
        self.assertEqual(compare(OrderKind.CL, alpha, alpha), Comparison.EQUAL)

    def test_incompatible_triples(self):
        five_one, four_two = ct(5, 1), ct(4, 2)
        twos, three_ones = ct(2, 2, 2), ct(3, 1, 1, 1)
        cases = [
            (OrderKind.MAJORIZATION, five_one, four_two, Comparison.GREATER),
            (OrderKind.MAJORIZATION, four_two, three_ones, Comparison.GREATER),
            (OrderKind.MAJORIZATION, five_one, twos, Comparison.GREATER),
            (OrderKind.MAJORIZATION, twos, three_ones, Comparison.INCOMPARABLE),
            (OrderKind.LULOV_LEX, five_one, twos, Comparison.GREATER),
            (OrderKind.LULOV_LEX, twos, three_ones, Comparison.GREATER),
            (OrderKind.LULOV_LEX, four_two, three_ones, Comparison.GREATER),
            (OrderKind.REVERSE_LEX, five_one, four_two, Comparison.GREATER),
            (OrderKind.REVERSE_LEX, three_ones, twos, Comparison.GREATER),
            (OrderKind.CL, three_ones, five_one, Comparison.GREATER),
            (OrderKind.CL, five_one, twos, Comparison.GREATER),
            (OrderKind.CL, four_two, three_ones, Comparison.LESS),
        ]
        for kind, alpha, beta, expected in cases:
            with self.subTest(kind=kind, alpha=str(alpha), beta=str(beta)):
                self.assertEqual(compare(kind, alpha, beta), expected)

    def test_partitions_compare_like_classes(self):
        self.assertEqual(
            compare(OrderKind.MAJORIZATION, Partition((4, 2)), Partition((3, 3))),
            Comparison.GREATER,
        )

    def test_degree_mismatch(self):
        with self.assertRaises(DomainError):
            compare(OrderKind.CL, ct(2, 1), ct(2, 2))


class OrderPropertyTests(SimpleTestCase):
    flipped = {
        Comparison.GREATER: Comparison.LESS,
        Comparison.LESS: Comparison.GREATER,
        Comparison.EQUAL: Comparison.EQUAL,
    }

    def test_total_orders_are_strict_and_transitive(self):
        for n in range(1, 9):
            classes = enumerate_cycle_types(n)
            for kind in TOTAL_KINDS:
                with self.subTest(n=n, kind=kind):
                    outcome = {
                        (alpha, beta): compare(kind, alpha, beta)
                        for alpha in classes
                        for beta in classes
                    }
                    for (alpha, beta), result in outcome.items():
                        self.assertEqual(result == Comparison.EQUAL, alpha == beta)
                        self.assertEqual(outcome[beta, alpha], self.flipped[result])
                    above = {
                        alpha: {
                            beta
                            for beta in classes
                            if outcome[alpha, beta] == Comparison.GREATER
                        }
                        for alpha in classes
                    }
                    for alpha in classes:
                        for beta in above[alpha]:
                            self.assertLessEqual(above[beta], above[alpha])

    def test_conjugation_reverses_majorization(self):
        for n in range(1, 9):
            partitions = enumerate_partitions(n)
            for upper in partitions:
                for lower in partitions:
                    if not dominates(upper, lower):
                        continue
                    with self.subTest(upper=str(upper), lower=str(lower)):
                        self.assertEqual(
                            compare(
                                OrderKind.MAJORIZATION,
                                lower.conjugate(),
                                upper.conjugate(),
                            ),
                            Comparison.GREATER,
                        )

    def test_reverse_lex_extends_majorization(self):
        for n in range(1, 9):
            classes = enumerate_cycle_types(n)
            for upper in classes:
                for lower in classes:
                    if not dominates(upper, lower):
                        continue
                    with self.subTest(upper=str(upper), lower=str(lower)):
                        self.assertEqual(
                            compare(OrderKind.REVERSE_LEX, upper, lower),
                            Comparison.GREATER,
                        )


class ExtremesTests(SimpleTestCase):
    def test_matches_brute_force(self):
        for n in range(4, 13):
            for kind in CL_FAMILY:
                for parity in Parity:
                    with self.subTest(n=n, kind=kind, parity=parity):
                        classes = sorted(
                            enumerate_cycle_types(n, parity),
                            key=cmp_to_key(
                                lambda a, b, kind=kind: 1
                                if compare(kind, a, b) == Comparison.GREATER
                                else -1
                            ),
                        )
                        self.assertEqual(
                            extremes(kind, n, parity), (classes[-1], classes[0])
                        )

    def test_known_entries(self):
        self.assertEqual(
            extremes(OrderKind.CL, 6, Parity.EVEN), (CycleType.identity(6), ct(3, 3))
        )
        self.assertEqual(extremes(OrderKind.ALT_CL, 7, Parity.ANY)[1], ct(2, 2, 3))
        self.assertEqual(extremes(OrderKind.CL, 7, Parity.ODD)[1], ct(4, 3))

    def test_unsupported(self):
        with self.assertRaises(UnsupportedKindError):
            extremes(OrderKind.MAJORIZATION, 6)
        with self.assertRaises(DomainError):
            extremes(OrderKind.CL, 3)
