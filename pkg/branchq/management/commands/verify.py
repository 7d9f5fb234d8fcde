import logging
import random

from django.core.management.base import CommandError

from branchq.identities import checker, get_identity
from branchq.jobs import run_parallel
from branchq.management.base import IDENTITY_VIOLATED, BranchqCommand
from branchq.serializers import IdentityResultSerializer, VerifyJobSerializer, identity_payload

logger = logging.getLogger(__name__)


class Command(BranchqCommand):
    help = 'Check one of the branching and tensor identities on given, exhaustive or random instances'
    serializer_class = VerifyJobSerializer
    parallel = True

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument(
            '--identity',
            help='stable-shift, dec-k-c, dual-d, dual-dfrak, mul-sum, iso-levi, kostka or oracle',
        )
        parser.add_argument('--group', help='Restrict to one family')
        parser.add_argument('--rank', help='Rank (the largest rank with --exhaustive/--random)')
        parser.add_argument('--levi', help='Simple roots in I')
        parser.add_argument('--lambda', dest='lambda')
        parser.add_argument('--mu')
        parser.add_argument('--nu')
        parser.add_argument('--plus', help='Partition lambda+ of the GL_n target')
        parser.add_argument('--eta')
        parser.add_argument('--blocks')
        parser.add_argument('--exhaustive', action='store_true')
        parser.add_argument('--random', help='Number of random instances')
        parser.add_argument('--seed', default='0')
        parser.add_argument('--max-weight', dest='max_weight', default='4')
        parser.add_argument(
            '--perturb', action='store_true', help='Corrupt one side of every instance (self-test)'
        )

    def run(self, options):
        keys = (
            'identity', 'group', 'rank', 'levi', 'lambda', 'mu', 'nu', 'plus', 'eta', 'blocks',
            'random', 'seed', 'max_weight',
        )
        data = {key: options.get(key) for key in keys}
        data['exhaustive'] = options['exhaustive']
        job = self.validated(data, options)
        identity = get_identity(job['identity'])

        if job['instance'] is not None:
            instances = [job['instance']]
        elif job.get('random'):
            rng = random.Random(job['seed'])
            instances = [identity.sample(rng, job['bounds']) for _ in range(job['random'])]
        else:
            instances = list(identity.exhaustive(job['bounds']))

        workers = self.workers(options)
        logger.info('Checking %s on %d instances with %d workers', identity.name, len(instances), workers)
        results = run_parallel(checker(identity.name, options['perturb']), instances, workers)
        failures = [result for result in results if not result.holds]
        noted = [result for result in results if result.notes and result.holds]

        if options['format'] == 'json':
            self.emit_json({
                'identity': identity.name,
                'checked': len(results),
                'failed': len(failures),
                'failures': IdentityResultSerializer(map(identity_payload, failures), many=True).data,
                'notes': IdentityResultSerializer(map(identity_payload, noted), many=True).data,
            })
        else:
            for result in failures:
                self._describe(result, self.style.ERROR('FAIL'))
            for result in noted:
                self._describe(result, self.style.WARNING('NOTE'))
            self.stdout.write(f'{identity.name}: {len(results)} checked, {len(failures)} failed')

        if failures:
            raise CommandError(
                f'{identity.name}: {len(failures)} of {len(results)} instances violate the identity',
                returncode=IDENTITY_VIOLATED,
            )
        if options['format'] != 'json':
            self.stdout.write(self.style.SUCCESS(f'{identity.name} holds'))

    def _describe(self, result, status):
        payload = identity_payload(result)
        instance = ' '.join(f'{key}={value}' for key, value in payload['instance'].items())
        self.stdout.write(f'{status} {instance}')
        for side, value in payload['sides'].items():
            self.stdout.write(f'    {side}: {value}')
        for note in payload['notes']:
            self.stdout.write(f'    note: {note}')
