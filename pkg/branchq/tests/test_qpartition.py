import random

from django.test import SimpleTestCase, override_settings

from branchq.exceptions import InvalidGeneratorSetError, OracleOutOfRangeError
from branchq.qpartition import (
    SHARED_MEMO,
    GeneratorSet,
    PartitionFunction,
    QPoly,
    brute_qcount,
    descending_certificate,
    iota_generators,
    iota_vector,
    levi_generators,
    make_generators,
    omega_generators,
    q_eta_generators,
    qcount,
    so_eta_generators,
    theta_generators,
)
from branchq.rootdata import Family, GroupSpec, LeviSpec, compositions, pairing, s_gi

SP2 = GroupSpec(Family.SP, 2)


class QPolyTests(SimpleTestCase):
    def test_rendering(self):
        self.assertEqual(str(QPoly({8: 1, 7: 2, 2: 1})), 'q^8 + 2q^7 + q^2')
        self.assertEqual(str(QPoly({11: 1, 8: -1})), 'q^11 - q^8')
        self.assertEqual(str(QPoly({1: 1})), 'q')
        self.assertEqual(str(QPoly({0: -2})), '-2')
        self.assertEqual(str(QPoly.ZERO), '0')

    def test_arithmetic(self):
        a = QPoly({1: 1, 0: 1})
        self.assertEqual(a * a, QPoly({2: 1, 1: 2, 0: 1}))
        self.assertEqual(a - a, QPoly.ZERO)
        self.assertEqual(a + 1, QPoly({1: 1, 0: 2}))
        self.assertEqual(a.shift(3), QPoly({4: 1, 3: 1}))
        self.assertEqual(a(2), 3)
        self.assertEqual((a * -1).min_coefficient, -1)
        self.assertTrue(QPoly.monomial(4).is_monomial)
        self.assertEqual(QPoly({5: 1, 2: 3}).degree, 5)

    def test_dict_form(self):
        poly = QPoly({11: 1, 8: -1})
        self.assertEqual(poly.to_dict(), {'11': '1', '8': '-1'})
        self.assertEqual(QPoly.from_dict(poly.to_dict()), poly)

    def test_zero_coefficients_are_dropped(self):
        self.assertEqual(QPoly({3: 0, 1: 2}), QPoly({1: 2}))
        self.assertFalse(QPoly({2: 0}))


class GeneratorTests(SimpleTestCase):
    def test_certificate_must_be_positive(self):
        with self.assertRaises(InvalidGeneratorSetError):
            GeneratorSet((((1, -1), 1),), (1, 1))
        with self.assertRaises(InvalidGeneratorSetError):
            GeneratorSet((((1, -1), 0),), (2, 1))

    def test_q_eta(self):
        gens = q_eta_generators((1, 1)).gens
        self.assertEqual(set(gens), {((1, -1), 1), ((-1, -1), 1)})

    def test_so_eta(self):
        self.assertEqual(so_eta_generators((2,)).gens, ())
        self.assertEqual(len(so_eta_generators((1, 2)).gens), 4)

    def test_omega(self):
        self.assertEqual(omega_generators(SP2, (2,)).gens, (((-1, -1), 1),))
        so4 = GroupSpec(Family.SO_EVEN, 2)
        self.assertEqual(
            set(omega_generators(so4, (2,)).gens), {((-2, 0), 1), ((-1, -1), 1), ((0, -2), 1)}
        )
        so5 = GroupSpec(Family.SO_ODD, 2)
        self.assertIn(((-1, 0), 2), omega_generators(so5, (2,)).gens)

    def test_certificate_is_positive_on_every_levi(self):
        for family in Family:
            for n in range(2 if family == Family.SO_EVEN else 1, 6):
                group = GroupSpec(family, n)
                certificate = descending_certificate(n)
                for levi in LeviSpec.every(group):
                    with self.subTest(group=str(group), levi=levi.label):
                        roots = s_gi(group, levi)
                        self.assertTrue(all(pairing(certificate, alpha) >= 1 for alpha in roots))
                        self.assertEqual(len(levi_generators(group, levi).gens), len(roots))

    def test_q_eta_reflects_to_so_eta(self):
        rng = random.Random(19)
        for n in range(1, 4):
            for parts in compositions(n):
                mirrored = iota_generators(q_eta_generators(parts))
                reflected = so_eta_generators(tuple(reversed(parts)))
                self.assertEqual(sorted(mirrored.gens), sorted(reflected.gens))
        for _ in range(100):
            parts = rng.choice(list(compositions(rng.randint(2, 3))))
            beta = tuple(rng.randint(-3, 3) for _ in range(sum(parts)))
            with self.subTest(parts=parts, beta=beta):
                self.assertEqual(
                    qcount(q_eta_generators(parts), beta),
                    qcount(so_eta_generators(tuple(reversed(parts))), iota_vector(beta)),
                )

    def test_unknown_kind(self):
        with self.assertRaises(InvalidGeneratorSetError):
            make_generators('nope')

    def test_iota(self):
        self.assertEqual(iota_vector((0, 0)), (0, 0))
        self.assertEqual(iota_vector((3, 1, 0)), (0, -1, -3))
        rng = random.Random(3)
        for _ in range(20):
            beta = tuple(rng.randint(-4, 4) for _ in range(4))
            self.assertEqual(iota_vector(iota_vector(beta)), beta)


class QCountTests(SimpleTestCase):
    def test_zero_target(self):
        gs = levi_generators(SP2, LeviSpec.empty())
        self.assertEqual(qcount(gs, (0, 0)), QPoly.ONE)

    def test_single_generator(self):
        gs = GeneratorSet((((1, -1), 1),), (2, 1))
        self.assertEqual(qcount(gs, (3, -3)), QPoly.monomial(3))

    def test_positive_roots_of_c2(self):
        gs = levi_generators(SP2, LeviSpec.empty())
        self.assertEqual(qcount(gs, (2, 0)), QPoly({1: 1, 2: 1}))

    def test_weighted_generator(self):
        gs = GeneratorSet((((-1, 0), 2),), (-1, -2))
        self.assertEqual(qcount(gs, (-3, 0)), QPoly.monomial(6))

    def test_empty_cases(self):
        gs = levi_generators(SP2, LeviSpec.empty())
        self.assertEqual(qcount(gs, (-1, 0)), QPoly.ZERO)
        self.assertEqual(qcount(GeneratorSet((), (2, 1)), (1, 0)), QPoly.ZERO)

    def test_weighted_theta_is_not_a_power_of_half_the_size(self):
        gs = theta_generators(GroupSpec(Family.SO_ODD, 1), weighted=True)
        self.assertEqual(qcount(gs, (2,)), QPoly.monomial(4))

    def test_iota_invariance(self):
        rng = random.Random(11)
        for parts in ((1, 2), (2, 1), (1, 1, 1)):
            gs = so_eta_generators(parts)
            mirrored = iota_generators(gs)
            for _ in range(10):
                beta = tuple(rng.randint(-2, 3) for _ in range(3))
                self.assertEqual(qcount(mirrored, iota_vector(beta)), qcount(gs, beta))

    def test_small_memo_gives_the_same_answers(self):
        gs = levi_generators(GroupSpec(Family.SO_ODD, 3), LeviSpec.of(1))
        tiny = PartitionFunction(gs, memo_limit=4)
        for beta in ((2, 1, 0), (3, 1, 1), (1, 1, 1), (4, 0, -1)):
            self.assertEqual(tiny(beta), qcount(gs, beta))
        self.assertGreater(tiny.memo_size, 0)
        tiny.clear()
        self.assertEqual(tiny.memo_size, 0)

    def test_small_memo_stays_within_its_limit(self):
        gs = levi_generators(GroupSpec(Family.SP, 3), LeviSpec.empty())
        tiny = PartitionFunction(gs, memo_limit=8)
        for beta in ((3, 1, 0), (4, 2, 0), (2, 2, 2)):
            self.assertEqual(tiny(beta), brute_qcount(gs, beta))
            self.assertLessEqual(tiny.memo_size, 8)
        self.assertGreater(tiny.memo_size, 0)

    def test_configured_cap_bounds_every_partition_function(self):
        first = levi_generators(GroupSpec(Family.SO_ODD, 3), LeviSpec.empty())
        second = theta_generators(GroupSpec(Family.SP, 3))
        with override_settings(BRANCHQ_MEMO_ENTRIES=50):
            for beta in ((3, 2, 1), (4, 2, 0), (2, 2, 2)):
                self.assertEqual(qcount(first, beta), brute_qcount(first, beta))
                self.assertEqual(qcount(second, beta), brute_qcount(second, beta))
                self.assertLessEqual(len(SHARED_MEMO), 50)


class OracleTests(SimpleTestCase):
    def test_matches_memoized_count(self):
        rng = random.Random(5)
        groups = [SP2, GroupSpec(Family.SO_ODD, 2), GroupSpec(Family.SO_EVEN, 3)]
        for group in groups:
            for levi in list(LeviSpec.every(group))[::2]:
                gs = levi_generators(group, levi)
                for _ in range(5):
                    beta = tuple(rng.randint(-2, 3) for _ in range(group.rank))
                    if gs.value(beta) > 12:
                        continue
                    self.assertEqual(brute_qcount(gs, beta), qcount(gs, beta))

    def test_bound(self):
        gs = levi_generators(SP2, LeviSpec.empty())
        with self.assertRaises(OracleOutOfRangeError):
            brute_qcount(gs, (5, 5), bound=10)
