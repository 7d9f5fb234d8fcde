from django.test import SimpleTestCase

from branchq.qpartition import QPoly
from branchq.rootdata import Family, GroupSpec, LeviSpec
from branchq.serializers import (
    KPolyJobSerializer,
    PolyResultSerializer,
    QPolyField,
    ScanJobSerializer,
    TensorJobSerializer,
    VerifyJobSerializer,
    describe,
)


class KPolyJobSerializerTests(SimpleTestCase):
    def job(self, **overrides):
        data = {'group': 'sp', 'rank': '4', 'levi': 'a1,a2,a3', 'lambda': '4,2,2,1', 'mu': '3,1,1,0'}
        data.update(overrides)
        return KPolyJobSerializer(data=data)

    def test_valid(self):
        serializer = self.job()
        self.assertTrue(serializer.is_valid(), serializer.errors)
        job = serializer.validated_data
        self.assertEqual(job['group'], GroupSpec(Family.SP, 4))
        self.assertEqual(job['levi'], LeviSpec.of(1, 2, 3))
        self.assertEqual(job['lam'], (4, 2, 2, 1))
        self.assertEqual(job['variant'], 'standard')

    def test_levi_keywords(self):
        serializer = self.job(levi='all')
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.validated_data['levi'], LeviSpec.of(1, 2, 3, 4))
        serializer = self.job(levi='none')
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.validated_data['levi'], LeviSpec.empty())

    def test_gl_all_stops_at_the_last_simple_root(self):
        serializer = self.job(group='gl', rank='2', levi='all', **{'lambda': '2,0', 'mu': '1,1'})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.validated_data['levi'], LeviSpec.of(1))

    def test_missing_mu(self):
        data = {'group': 'sp', 'rank': '2', 'lambda': '1,0'}
        serializer = KPolyJobSerializer(data=data)
        self.assertFalse(serializer.is_valid())
        self.assertIn('mu', serializer.errors)

    def test_bad_weights(self):
        self.assertFalse(self.job(mu='3,x,1,0').is_valid())
        self.assertFalse(self.job(mu='3,1,1').is_valid())
        self.assertFalse(self.job(levi='b2').is_valid())
        self.assertFalse(self.job(levi='a7').is_valid())
        self.assertFalse(self.job(group='e8').is_valid())

    def test_rank_guard(self):
        nine = ','.join(['0'] * 9)
        serializer = self.job(rank='9', **{'lambda': nine, 'mu': nine})
        self.assertFalse(serializer.is_valid())
        self.assertIn('--rank-guard', str(serializer.errors))
        relaxed = KPolyJobSerializer(
            data={'group': 'sp', 'rank': '9', 'lambda': nine, 'mu': nine}, context={'rank_guard': 9}
        )
        self.assertTrue(relaxed.is_valid(), relaxed.errors)

    def test_h_variant_needs_so_odd(self):
        self.assertFalse(self.job(variant='h').is_valid())


class ResultSerializerTests(SimpleTestCase):
    def test_poly_result(self):
        data = PolyResultSerializer(
            {
                'group': Family.SP,
                'rank': 4,
                'levi': LeviSpec.of(1, 3, 4),
                'lam': (4, 2, 2, 1),
                'mu': (3, 1, 1, 0),
                'variant': 'standard',
                'poly': QPoly.monomial(4, 2),
            }
        ).data
        self.assertEqual(data['group'], 'sp')
        self.assertEqual(data['levi'], ['a1', 'a3', 'a4'])
        self.assertEqual(data['lambda'], [4, 2, 2, 1])
        self.assertEqual(data['poly'], {'4': '2'})

    def test_qpoly_field_reads_its_own_output(self):
        field = QPolyField()
        poly = QPoly({8: 1, 7: 2, 3: -4})
        self.assertEqual(field.to_internal_value(field.to_representation(poly)), poly)

    def test_describe(self):
        self.assertEqual(describe((4, 2, 2, 1)), '4,2,2,1')
        self.assertEqual(describe(((5,), (4, 4))), '5;4,4')
        self.assertEqual(describe(LeviSpec.empty()), 'none')
        self.assertEqual(describe(None), 'n/a')


class TensorJobSerializerTests(SimpleTestCase):
    def test_blocks(self):
        serializer = TensorJobSerializer(
            data={'family': 'd', 'eta': '1,2,2', 'blocks': '5;4,4;2,2', 'lambda': '1,1,1,0,0'}
        )
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.validated_data['blocks'].flat, (5, 4, 4, 2, 2))
        self.assertIsNone(serializer.validated_data['group'])

    def test_dfrak_needs_a_group(self):
        serializer = TensorJobSerializer(
            data={'family': 'dfrak', 'eta': '2', 'blocks': '1,1', 'lambda': '0,0'}
        )
        self.assertFalse(serializer.is_valid())
        self.assertIn('--group', str(serializer.errors))

    def test_blocks_must_fit(self):
        serializer = TensorJobSerializer(
            data={'family': 'c', 'eta': '1,1', 'blocks': '2,1;1', 'lambda': '2,1'}
        )
        self.assertFalse(serializer.is_valid())


class VerifyJobSerializerTests(SimpleTestCase):
    def test_single_instance(self):
        serializer = VerifyJobSerializer(
            data={'identity': 'stable-shift', 'group': 'sp', 'rank': '2', 'lambda': '2,1', 'mu': '1,0'}
        )
        self.assertTrue(serializer.is_valid(), serializer.errors)
        instance = serializer.validated_data['instance']
        self.assertEqual(instance['group'], GroupSpec(Family.SP, 2))
        self.assertEqual(instance['levi'], LeviSpec.empty())
        self.assertEqual(instance['lambda'], (2, 1))

    def test_missing_flag_is_named(self):
        serializer = VerifyJobSerializer(
            data={'identity': 'stable-shift', 'group': 'sp', 'rank': '2', 'lambda': '2,1'}
        )
        self.assertFalse(serializer.is_valid())
        self.assertIn('--mu', str(serializer.errors))

    def test_oracle_needs_a_mode(self):
        self.assertFalse(VerifyJobSerializer(data={'identity': 'oracle'}).is_valid())
        serializer = VerifyJobSerializer(data={'identity': 'oracle', 'random': '5'})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertIsNone(serializer.validated_data['instance'])
        self.assertEqual(serializer.validated_data['bounds'].rank, 2)

    def test_modes_are_exclusive(self):
        serializer = VerifyJobSerializer(data={'identity': 'kostka', 'random': '5', 'exhaustive': True})
        self.assertFalse(serializer.is_valid())

    def test_eta_sets_the_rank(self):
        serializer = VerifyJobSerializer(data={'identity': 'dual-d', 'eta': '1,1,1', 'exhaustive': True})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.validated_data['bounds'].eta, (1, 1, 1))
        self.assertEqual(serializer.validated_data['rank'], 3)


class ScanJobSerializerTests(SimpleTestCase):
    def test_valid(self):
        serializer = ScanJobSerializer(data={'conjecture': 'positivity', 'group': 'sp', 'rank': '2', 'max_weight': '3'})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.validated_data['group'], GroupSpec(Family.SP, 2))

    def test_dfrak_target_needs_a_classical_group(self):
        serializer = ScanJobSerializer(
            data={'conjecture': 'rectangular', 'group': 'gl', 'rank': '2', 'max_weight': '3', 'target': 'dfrak'}
        )
        self.assertFalse(serializer.is_valid())
