import json
import os
import tempfile
from io import StringIO

from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase


def run(*args):
    out = StringIO()
    call_command(*args, stdout=out)
    return out.getvalue()


class KPolyCommandTests(SimpleTestCase):
    def test_sp8_json(self):
        output = run(
            'kpoly', '--group', 'sp', '--rank', '4', '--levi', 'a1,a2,a3',
            '--lambda', '4,2,2,1', '--mu', '3,1,1,0', '--format', 'json', '--jobs', '1',
        )
        data = json.loads(output)
        self.assertEqual(data['poly'], {'2': '1'})
        self.assertEqual(data['lambda'], [4, 2, 2, 1])
        self.assertEqual(data['levi'], ['a1', 'a2', 'a3'])

    def test_kostka_foulkes_text(self):
        output = run(
            'kpoly', '--group', 'gl', '--rank', '2', '--levi', 'none',
            '--lambda', '2,0', '--mu', '1,1', '--jobs', '1',
        )
        self.assertEqual(output.strip(), 'q')

    def test_memo_limit_is_restored(self):
        configured = settings.BRANCHQ_MEMO_ENTRIES
        output = run(
            'kpoly', '--group', 'gl', '--rank', '2', '--levi', 'none',
            '--lambda', '2,0', '--mu', '1,1', '--memo-limit', '10', '--jobs', '1',
        )
        self.assertEqual(output.strip(), 'q')
        self.assertEqual(settings.BRANCHQ_MEMO_ENTRIES, configured)

    def test_csv(self):
        output = run(
            'kpoly', '--group', 'so-odd', '--rank', '1', '--lambda', '2', '--mu', '0',
            '--variant', 'h', '--format', 'csv', '--jobs', '1',
        )
        header, row = output.strip().splitlines()
        self.assertEqual(header, 'group,rank,levi,lambda,mu,variant,poly,min_coeff')
        self.assertEqual(row, 'so-odd,1,none,2,0,h,q^4,1')

    def test_missing_mu(self):
        with self.assertRaises(CommandError) as raised:
            run('kpoly', '--group', 'sp', '--rank', '2', '--lambda', '1,0')
        self.assertEqual(raised.exception.returncode, 2)
        self.assertIn('mu', str(raised.exception))

    def test_rank_guard(self):
        nine = ','.join(['0'] * 9)
        with self.assertRaises(CommandError) as raised:
            run('kpoly', '--group', 'sp', '--rank', '9', '--lambda', nine, '--mu', nine)
        self.assertEqual(raised.exception.returncode, 2)
        self.assertIn('--rank-guard', str(raised.exception))

    def test_engine_errors_exit_with_two(self):
        with self.assertRaises(CommandError) as raised:
            run('kpoly', '--group', 'sp', '--rank', '2', '--lambda', '0,1', '--mu', '0,0', '--jobs', '1')
        self.assertEqual(raised.exception.returncode, 2)


class TensorCommandTests(SimpleTestCase):
    args = ('--eta', '1,2,2', '--blocks', '5;4,4;2,2', '--lambda', '1,1,1,0,0', '--jobs', '1')

    def test_negative_q_analogue(self):
        data = json.loads(run('tensor', '--family', 'd', '--q', '--format', 'json', *self.args))
        self.assertEqual(data['poly'], {'11': '1', '8': '-1'})
        self.assertNotIn('value', data)

    def test_value_at_one(self):
        self.assertEqual(run('tensor', '--family', 'd', *self.args).strip(), '0')

    def test_dfrak(self):
        output = run(
            'tensor', '--family', 'dfrak', '--group', 'sp', '--eta', '2', '--blocks', '1,1',
            '--lambda', '0,0', '--q', '--format', 'json', '--jobs', '1',
        )
        self.assertEqual(json.loads(output)['poly'], {'1': '1'})

    def test_c_value(self):
        output = run(
            'tensor', '--family', 'c', '--eta', '3,3', '--blocks', '2,1;2,1',
            '--lambda', '3,2,1,0,0,0', '--jobs', '1',
        )
        self.assertEqual(output.strip(), '2')


class VerifyCommandTests(SimpleTestCase):
    def test_single_instance(self):
        output = run(
            'verify', '--identity', 'stable-shift', '--group', 'sp', '--rank', '2',
            '--lambda', '2,1', '--mu', '1,0', '--jobs', '1',
        )
        self.assertIn('stable-shift: 1 checked, 0 failed', output)

    def test_perturbed_run_exits_with_three(self):
        out = StringIO()
        with self.assertRaises(CommandError) as raised:
            call_command(
                'verify', '--identity', 'kostka', '--lambda', '2,1,0', '--mu', '1,1,1',
                '--perturb', '--jobs', '1', stdout=out,
            )
        self.assertEqual(raised.exception.returncode, 3)
        self.assertIn('FAIL', out.getvalue())
        self.assertIn('alternating:', out.getvalue())

    def test_missing_instance_flags(self):
        with self.assertRaises(CommandError) as raised:
            run('verify', '--identity', 'stable-shift', '--group', 'sp', '--lambda', '2,1')
        self.assertEqual(raised.exception.returncode, 2)
        self.assertIn('--mu', str(raised.exception))

    def test_exhaustive_json(self):
        output = run(
            'verify', '--identity', 'kostka', '--exhaustive', '--rank', '2', '--max-weight', '3',
            '--format', 'json', '--jobs', '1',
        )
        data = json.loads(output)
        self.assertEqual(data['identity'], 'kostka')
        self.assertEqual(data['failed'], 0)
        self.assertEqual(data['failures'], [])
        self.assertGreater(data['checked'], 0)

    def test_dual_d_exhaustive(self):
        output = run(
            'verify', '--identity', 'dual-d', '--eta', '1,1', '--exhaustive', '--rank', '2',
            '--max-weight', '2', '--jobs', '1',
        )
        self.assertIn('0 failed', output)

    def test_dec_k_c_exhaustive(self):
        output = run(
            'verify', '--identity', 'dec-k-c', '--group', 'sp', '--rank', '2', '--exhaustive',
            '--max-weight', '3', '--jobs', '1',
        )
        self.assertIn('0 failed', output)

    def test_random_oracle_is_independent_of_workers(self):
        args = ('verify', '--identity', 'oracle', '--random', '50', '--seed', '4', '--format', 'json')
        serial = json.loads(run(*args, '--jobs', '1'))
        pooled = json.loads(run(*args, '--jobs', '2'))
        self.assertEqual(serial, pooled)
        self.assertEqual(serial['checked'], 50)
        self.assertEqual(serial['failed'], 0)


class ScanCommandTests(SimpleTestCase):
    def test_csv_to_stdout(self):
        output = run('scan', '--conjecture', 'positivity', '--group', 'sp', '--rank', '2', '--max-weight', '1')
        lines = output.strip().splitlines()
        self.assertEqual(lines[0], 'group,rank,levi,lambda,mu,variant,poly,min_coeff')
        self.assertTrue(lines[-1].startswith('violations: '))
        # four Levis, lambda in {0, (1,0)}: 1 + 2 pairs each
        self.assertEqual(len(lines), 1 + 12 + 1)

    def test_empty_scan(self):
        output = run('scan', '--group', 'sp', '--rank', '2', '--max-weight', '-1')
        self.assertEqual(
            output.strip().splitlines(),
            ['group,rank,levi,lambda,mu,variant,poly,min_coeff', 'violations: 0'],
        )

    def test_out_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'scan.csv')
            output = run(
                'scan', '--conjecture', 'rectangular', '--group', 'sp', '--rank', '2',
                '--max-weight', '2', '--out', path,
            )
            with open(path, encoding='utf-8') as handle:
                content = handle.read().splitlines()
        self.assertEqual(output.strip(), 'violations: 0')
        self.assertEqual(content[0], 'group,rank,levi,lambda,mu,variant,poly,min_coeff')
        self.assertGreater(len(content), 1)

    def test_bad_variant(self):
        with self.assertRaises(CommandError) as raised:
            run('scan', '--group', 'sp', '--rank', '2', '--max-weight', '2', '--variant', 'h')
        self.assertEqual(raised.exception.returncode, 2)


class ReproduceCommandTests(SimpleTestCase):
    def test_text_table(self):
        output = run('reproduce', 'sp8-table', '--jobs', '1')
        lines = output.strip().splitlines()
        self.assertEqual(len(lines), 17)
        self.assertTrue(lines[0].startswith('Sp_8'))
        self.assertIn('GL_4', output)
        self.assertNotIn('MISMATCH', output)

    def test_json_table(self):
        data = json.loads(run('reproduce', 'sp8-table', '--format', 'json', '--jobs', '1'))
        self.assertEqual(len(data['rows']), 16)
        self.assertTrue(all(row['matches'] for row in data['rows']))
        gl2_sp4 = next(row for row in data['rows'] if row['label'] == 'GL_2×Sp_4')
        self.assertEqual(gl2_sp4['poly'], {'2': '2'})


class SettingsTests(SimpleTestCase):
    def test_only_the_engine_apps_are_installed(self):
        self.assertEqual(settings.INSTALLED_APPS, ['rest_framework', 'branchq'])
