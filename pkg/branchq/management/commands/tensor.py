from branchq.management.base import BranchqCommand
from branchq.serializers import TensorJobSerializer, TensorResultSerializer
from branchq.tensorq import c_poly, d_poly, dfrak_poly


class Command(BranchqCommand):
    help = 'Tensor product coefficients c, d and dfrak, or their q-analogues with --q'
    serializer_class = TensorJobSerializer
    parallel = True

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--family', help='c, d or dfrak')
        parser.add_argument('--q', action='store_true', help='Print the q-analogue instead of its value at q=1')
        parser.add_argument('--group', help='Classical group for the dfrak family')
        parser.add_argument('--eta', help='Block sizes, e.g. 1,2,2')
        parser.add_argument('--blocks', help="Block partitions, e.g. '5;4,4;2,2'")
        parser.add_argument('--lambda', dest='lambda', help='Target partition')

    def run(self, options):
        job = self.validated(
            {
                'family': options['family'],
                'q': options['q'],
                'group': options['group'],
                'eta': options['eta'],
                'blocks': options['blocks'],
                'lambda': options['lambda'],
            },
            options,
        )
        eta, blocks, lam = job['eta'], job['blocks'], job['lam']
        workers = self.workers(options)
        if job['family'] == 'c':
            poly = c_poly(eta, lam, blocks, workers=workers)
        elif job['family'] == 'd':
            poly = d_poly(eta, lam, blocks, workers=workers)
        else:
            poly = dfrak_poly(job['group'], eta, lam, blocks, workers=workers)

        result = {
            'family': job['family'],
            'group': job['group'].family if job['group'] else None,
            'eta': eta.parts,
            'blocks': blocks.blocks,
            'lam': lam,
        }
        if job['q']:
            result['poly'] = poly
            text = str(poly)
        else:
            result['value'] = str(poly(1))
            text = result['value']
        if options['format'] == 'json':
            self.emit_json(TensorResultSerializer(result).data)
        else:
            self.stdout.write(text)
