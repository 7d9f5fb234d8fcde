import csv

from branchq.management.base import BranchqCommand
from branchq.qanalogue import k_poly, k_poly_h, k_tilde
from branchq.serializers import KPolyJobSerializer, PolyResultSerializer


class Command(BranchqCommand):
    help = 'Compute the parabolic q-analogue K^{G,I}_{lambda,mu}(q) for one instance'
    serializer_class = KPolyJobSerializer
    formats = ('text', 'json', 'csv')
    parallel = True

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--group', help='gl, so-odd, sp or so-even')
        parser.add_argument('--rank', help='Rank n')
        parser.add_argument('--levi', default='none', help='Simple roots in I, e.g. a1,a3 (or none/all)')
        parser.add_argument('--lambda', dest='lambda', help='Highest weight, e.g. 4,2,2,1')
        parser.add_argument('--mu', help='Levi highest weight, e.g. 3,1,1,0')
        parser.add_argument(
            '--variant',
            default='standard',
            help='standard, h (so-odd with q^2 on short roots) or stable (symmetric group sum)',
        )

    def run(self, options):
        job = self.validated(
            {
                'group': options['group'],
                'rank': options['rank'],
                'levi': options['levi'],
                'lambda': options['lambda'],
                'mu': options['mu'],
                'variant': options['variant'],
            },
            options,
        )
        group, levi, lam, mu = job['group'], job['levi'], job['lam'], job['mu']
        workers = self.workers(options)
        if job['variant'] == 'h':
            poly = k_poly_h(group.rank, levi, lam, mu, workers=workers)
        elif job['variant'] == 'stable':
            poly = k_tilde(group, levi, lam, mu, workers=workers)
        else:
            poly = k_poly(group, levi, lam, mu, workers=workers)

        result = PolyResultSerializer(
            {
                'group': group.family,
                'rank': group.rank,
                'levi': levi,
                'lam': lam,
                'mu': mu,
                'variant': job['variant'],
                'poly': poly,
            }
        ).data
        if options['format'] == 'json':
            self.emit_json(result)
        elif options['format'] == 'csv':
            writer = csv.writer(self.stdout, lineterminator='\n')
            writer.writerow(['group', 'rank', 'levi', 'lambda', 'mu', 'variant', 'poly', 'min_coeff'])
            writer.writerow([
                group.family.value,
                group.rank,
                levi.label,
                ','.join(map(str, lam)),
                ','.join(map(str, mu)),
                job['variant'],
                str(poly),
                poly.min_coefficient,
            ])
        else:
            self.stdout.write(str(poly))
