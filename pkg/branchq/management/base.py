from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from branchq.exceptions import BranchqError
from branchq.jobs import default_workers
from branchq.serializers import render_json

INVALID_INPUT = 2
IDENTITY_VIOLATED = 3


def format_errors(errors):
    """Flatten serializer errors into one line."""
    parts = []
    for field, messages in errors.items():
        if isinstance(messages, dict):
            messages = [format_errors(messages)]
        text = '; '.join(str(message) for message in messages)
        parts.append(text if field == 'non_field_errors' else f'{field}: {text}')
    return '; '.join(parts)


class BranchqCommand(BaseCommand):
    """Common flags and error handling for the computation commands.

    Subclasses implement ``run(options)``. Invalid input of any kind ends
    with exit status 2.
    """

    serializer_class = None
    formats = ('text', 'json')
    parallel = False

    def add_arguments(self, parser):
        parser.add_argument('--format', choices=self.formats, default='text', help='Output format')
        parser.add_argument(
            '--rank-guard',
            dest='rank_guard',
            type=int,
            default=None,
            help=f'Largest rank accepted (default {settings.BRANCHQ_RANK_GUARD})',
        )
        parser.add_argument(
            '--memo-limit',
            dest='memo_limit',
            type=int,
            default=None,
            help='Partition-function cache entries kept before the least recently used are evicted',
        )
        if self.parallel:
            parser.add_argument(
                '--jobs', type=int, default=None, help='Worker processes (default BRANCHQ_JOBS)'
            )

    def handle(self, *args, **options):
        configured = settings.BRANCHQ_MEMO_ENTRIES
        if options.get('memo_limit'):
            settings.BRANCHQ_MEMO_ENTRIES = options['memo_limit']
        try:
            self.run(options)
        except BranchqError as exc:
            raise CommandError(str(exc), returncode=INVALID_INPUT)
        finally:
            settings.BRANCHQ_MEMO_ENTRIES = configured

    def run(self, options):
        raise NotImplementedError

    def validated(self, data, options):
        data = {key: value for key, value in data.items() if value is not None}
        serializer = self.serializer_class(data=data, context={'rank_guard': options.get('rank_guard')})
        if not serializer.is_valid():
            raise CommandError(format_errors(serializer.errors), returncode=INVALID_INPUT)
        return serializer.validated_data

    def workers(self, options):
        return options.get('jobs') or default_workers()

    def emit_json(self, data):
        self.stdout.write(render_json(data))
