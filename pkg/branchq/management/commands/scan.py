import csv
import logging

from branchq.management.base import BranchqCommand
from branchq.qanalogue import positivity_scan, rectangular_stable_scan
from branchq.serializers import ScanJobSerializer, ScanRowSerializer, scan_payload
from branchq.tensorq import rectangular_dfrak_scan

logger = logging.getLogger(__name__)

HEADER = ['group', 'rank', 'levi', 'lambda', 'mu', 'variant', 'poly', 'min_coeff']


class Command(BranchqCommand):
    help = 'Scan for negative coefficients and write every computed polynomial as CSV'
    serializer_class = ScanJobSerializer
    formats = ('csv',)

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--conjecture', default='positivity', help='positivity or rectangular')
        parser.add_argument('--group')
        parser.add_argument('--rank')
        parser.add_argument('--max-weight', dest='max_weight')
        parser.add_argument('--variant', default='standard', help='standard or h (so-odd only)')
        parser.add_argument(
            '--target', default='kpoly', help='For rectangular scans: kpoly (stable K) or dfrak'
        )
        parser.add_argument('--out', help='CSV file (default: standard output)')

    def run(self, options):
        job = self.validated(
            {key: options.get(key) for key in ('conjecture', 'group', 'rank', 'max_weight', 'variant', 'target')},
            options,
        )
        group, max_weight = job['group'], job['max_weight']
        if job['conjecture'] == 'rectangular':
            if job['target'] == 'dfrak':
                rows = rectangular_dfrak_scan(group, max_weight)
            else:
                rows = rectangular_stable_scan(group, max_weight)
        else:
            rows = positivity_scan(group, max_weight, job['variant'])

        if options['out']:
            with open(options['out'], 'w', newline='', encoding='utf-8') as handle:
                violations, negative = self._write(csv.writer(handle), rows)
        else:
            violations, negative = self._write(csv.writer(self.stdout, lineterminator='\n'), rows)

        if negative and not violations:
            logger.info('%d polynomials with negative coefficients (not counted for this variant)', negative)
        self.stdout.write(f'violations: {violations}')

    def _write(self, writer, rows):
        writer.writerow(HEADER)
        violations = negative = 0
        for row in rows:
            data = ScanRowSerializer(scan_payload(row)).data
            writer.writerow([data[column] for column in HEADER])
            if row.min_coeff < 0:
                negative += 1
            if row.violation:
                violations += 1
                logger.warning('negative coefficient: %s %s %s %s: %s',
                               row.group, row.levi.label, row.lam, row.mu, row.poly)
        return violations, negative
