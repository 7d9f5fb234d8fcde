from django.core.management.base import CommandError

from branchq.identities import SP8_GROUP, SP8_LAMBDA, SP8_MU, reproduce_sp8_table
from branchq.management.base import IDENTITY_VIOLATED, BranchqCommand
from branchq.serializers import describe

TABLES = ('sp8-table',)


class Command(BranchqCommand):
    help = 'Recompute a published example table and compare it row by row'
    parallel = True

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('table', choices=TABLES)

    def run(self, options):
        rows = reproduce_sp8_table(self.workers(options))
        if options['format'] == 'json':
            self.emit_json({
                'group': str(SP8_GROUP),
                'lambda': list(SP8_LAMBDA),
                'mu': list(SP8_MU),
                'rows': [
                    {
                        'levi': [f'a{i}' for i in result.row.levi],
                        'label': result.label,
                        'printed': result.row.printed,
                        'poly': result.computed.to_dict(),
                        'matches': result.matches,
                        'note': result.annotation,
                    }
                    for result in rows
                ],
            })
        else:
            self.stdout.write(f'{SP8_GROUP}  lambda={describe(SP8_LAMBDA)}  mu={describe(SP8_MU)}')
            for result in rows:
                status = self.style.SUCCESS('ok') if result.matches else self.style.ERROR('MISMATCH')
                line = f'{result.label:<22} {str(result.computed):<44} {status}'
                if result.row.suspect:
                    line += f'  ({result.annotation})'
                self.stdout.write(line)

        mismatched = [result for result in rows if not result.matches]
        if mismatched:
            labels = ', '.join(result.row.label for result in mismatched)
            raise CommandError(f'rows differ from the table: {labels}', returncode=IDENTITY_VIOLATED)
