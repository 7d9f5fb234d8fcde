from django.conf import settings
from rest_framework import serializers
from rest_framework.renderers import JSONRenderer

from .exceptions import BranchqError
from .identities import IDENTITIES, Bounds
from .qpartition import QPoly
from .rootdata import CLASSICAL_FAMILIES, Family, GroupSpec, LeviSpec
from .tensorq import Composition, PartitionTuple


def _integers(text, what):
    try:
        return tuple(int(part) for part in text.split(',') if part.strip() != '')
    except ValueError:
        raise serializers.ValidationError(f'{what} must be comma-separated integers, got {text!r}')


class WeightField(serializers.Field):
    """A weight written as "4,2,2,1" (or given as a list)."""

    default_error_messages = {'invalid': 'Expected comma-separated integers.'}

    def to_internal_value(self, data):
        if isinstance(data, (list, tuple)):
            try:
                return tuple(int(x) for x in data)
            except (TypeError, ValueError):
                self.fail('invalid')
        if not isinstance(data, str):
            self.fail('invalid')
        return _integers(data, self.field_name)

    def to_representation(self, value):
        return [int(x) for x in value]


class BlocksField(serializers.Field):
    """Blocks written as "5;4,4;2,2": ";" between blocks, "," inside one."""

    def to_internal_value(self, data):
        if isinstance(data, (list, tuple)):
            return tuple(tuple(int(x) for x in block) for block in data)
        if not isinstance(data, str):
            raise serializers.ValidationError("Expected blocks such as '5;4,4;2,2'.")
        return tuple(_integers(block, 'each block') for block in data.split(';'))

    def to_representation(self, value):
        return [[int(x) for x in block] for block in value]


class LeviField(serializers.Field):
    """Simple roots as "a1,a3", or "none", or "all" (resolved once the group is known)."""

    def to_internal_value(self, data):
        if isinstance(data, LeviSpec):
            return data.included
        if isinstance(data, (list, tuple)):
            labels = list(data)
        elif isinstance(data, str):
            text = data.strip().lower()
            if text in ('all', 'none', ''):
                return 'all' if text == 'all' else frozenset()
            labels = text.split(',')
        else:
            raise serializers.ValidationError("Expected simple roots such as 'a1,a3'.")
        indices = set()
        for label in labels:
            label = str(label).strip().lower()
            if not label.startswith('a') or not label[1:].isdigit():
                raise serializers.ValidationError(f'{label!r} is not a simple root label a1..an')
            indices.add(int(label[1:]))
        return frozenset(indices)

    def to_representation(self, value):
        return [f'a{i}' for i in value]


class QPolyField(serializers.Field):
    """{"<exponent>": "<coefficient>"} with decimal strings, highest exponent first."""

    def to_internal_value(self, data):
        if not isinstance(data, dict):
            raise serializers.ValidationError('Expected an object of exponent: coefficient.')
        try:
            return QPoly.from_dict(data)
        except (TypeError, ValueError):
            raise serializers.ValidationError('Exponents and coefficients must be integers.')

    def to_representation(self, value):
        return value.to_dict()


class LambdaFieldMixin:
    """Publishes the ``lam`` field under the key ``lambda``."""

    def get_fields(self):
        return {
            ('lambda' if name == 'lam' else name): field
            for name, field in super().get_fields().items()
        }


def _rank_guard(serializer):
    return serializer.context.get('rank_guard') or settings.BRANCHQ_RANK_GUARD


def _check_rank(serializer, rank):
    guard = _rank_guard(serializer)
    if rank > guard:
        raise serializers.ValidationError(
            f'rank {rank} exceeds the rank guard {guard}; raise it with --rank-guard'
        )


def _group(family, rank):
    try:
        return GroupSpec(family, rank)
    except BranchqError as exc:
        raise serializers.ValidationError(str(exc))


def _levi(group, raw):
    included = frozenset(range(1, group.rank if group.is_gl else group.rank + 1)) if raw == 'all' else raw
    try:
        return LeviSpec(included).validate(group)
    except BranchqError as exc:
        raise serializers.ValidationError(str(exc))


def _length(name, weight, n):
    if weight is not None and len(weight) != n:
        raise serializers.ValidationError(f'{name} has {len(weight)} entries, expected {n}')


class KPolyJobSerializer(LambdaFieldMixin, serializers.Serializer):
    group = serializers.ChoiceField(choices=Family.choices)
    rank = serializers.IntegerField(min_value=1)
    levi = LeviField(required=False, default=frozenset())
    lam = WeightField(source='lam')
    mu = WeightField()
    variant = serializers.ChoiceField(choices=['standard', 'h', 'stable'], default='standard')

    def validate(self, attrs):
        _check_rank(self, attrs['rank'])
        group = _group(attrs['group'], attrs['rank'])
        _length('lambda', attrs['lam'], group.rank)
        _length('mu', attrs['mu'], group.rank)
        if attrs['variant'] == 'h' and group.family != Family.SO_ODD:
            raise serializers.ValidationError('variant h is defined for so-odd only')
        attrs['group'] = group
        attrs['levi'] = _levi(group, attrs['levi'])
        return attrs


class TensorJobSerializer(LambdaFieldMixin, serializers.Serializer):
    family = serializers.ChoiceField(choices=['c', 'd', 'dfrak'])
    q = serializers.BooleanField(default=False)
    group = serializers.ChoiceField(choices=Family.choices, required=False, allow_null=True)
    eta = WeightField()
    blocks = BlocksField()
    lam = WeightField(source='lam')

    def validate(self, attrs):
        try:
            eta = Composition.of(attrs['eta'])
            _check_rank(self, eta.n)
            blocks = PartitionTuple.from_blocks(eta, attrs['blocks'])
        except BranchqError as exc:
            raise serializers.ValidationError(str(exc))
        _length('lambda', attrs['lam'], eta.n)
        if attrs['family'] == 'dfrak':
            if not attrs.get('group'):
                raise serializers.ValidationError('--group is required for the dfrak family')
            attrs['group'] = _group(attrs['group'], eta.n)
        else:
            attrs['group'] = None
        attrs['eta'] = eta
        attrs['blocks'] = blocks
        return attrs


class VerifyJobSerializer(LambdaFieldMixin, serializers.Serializer):
    identity = serializers.ChoiceField(choices=list(IDENTITIES))
    group = serializers.ChoiceField(choices=Family.choices, required=False, allow_null=True)
    rank = serializers.IntegerField(min_value=1, required=False, allow_null=True)
    levi = LeviField(required=False, allow_null=True)
    lam = WeightField(source='lam', required=False, allow_null=True)
    mu = WeightField(required=False, allow_null=True)
    nu = WeightField(required=False, allow_null=True)
    plus = WeightField(required=False, allow_null=True)
    eta = WeightField(required=False, allow_null=True)
    blocks = BlocksField(required=False, allow_null=True)
    exhaustive = serializers.BooleanField(default=False)
    random = serializers.IntegerField(min_value=1, required=False, allow_null=True)
    seed = serializers.IntegerField(default=0)
    max_weight = serializers.IntegerField(min_value=0, default=4)

    def validate(self, attrs):
        modes = [attrs['exhaustive'], bool(attrs.get('random'))]
        if sum(modes) > 1:
            raise serializers.ValidationError('choose one of --exhaustive and --random')
        rank = attrs.get('rank')
        if rank is None and attrs.get('eta'):
            rank = sum(attrs['eta'])
        if rank is None and attrs['identity'] == 'iso-levi':
            rank = 4
        if rank is None:
            rank = 2
        _check_rank(self, rank)
        attrs['rank'] = rank
        families = (Family(attrs['group']),) if attrs.get('group') else CLASSICAL_FAMILIES
        if any(modes) or attrs['identity'] == 'iso-levi':
            attrs['bounds'] = Bounds(
                families=families,
                rank=rank,
                max_weight=attrs['max_weight'],
                eta=tuple(attrs['eta']) if attrs.get('eta') else None,
            )
            attrs['instance'] = None
        else:
            attrs['bounds'] = None
            attrs['instance'] = self._instance(attrs, families, rank)
        return attrs

    def _instance(self, attrs, families, rank):
        identity = attrs['identity']
        need = {
            'stable-shift': ('group', 'lam', 'mu'),
            'dec-k-c': ('group', 'lam', 'mu'),
            'dual-d': ('eta', 'blocks', 'lam'),
            'dual-dfrak': ('group', 'eta', 'blocks', 'lam'),
            'mul-sum': ('group', 'nu', 'plus'),
            'kostka': ('lam', 'mu'),
            'oracle': (),
        }[identity]
        if identity == 'oracle':
            raise serializers.ValidationError('the oracle identity runs with --random or --exhaustive')
        missing = [name for name in need if attrs.get(name) is None]
        if missing:
            flags = ', '.join('--lambda' if name == 'lam' else f'--{name}' for name in missing)
            raise serializers.ValidationError(f'missing {flags} (or use --exhaustive / --random)')
        instance = {}
        if 'group' in need:
            group = _group(families[0], rank)
            instance['group'] = group
            if identity in ('stable-shift', 'dec-k-c'):
                instance['levi'] = _levi(group, attrs.get('levi') or frozenset())
        for name in ('lam', 'mu', 'nu', 'plus'):
            if name in need:
                instance['lambda' if name == 'lam' else name] = tuple(attrs[name])
        if 'eta' in need:
            instance['eta'] = tuple(attrs['eta'])
            instance['blocks'] = tuple(attrs['blocks'])
        if identity == 'kostka':
            _length('mu', instance['mu'], len(instance['lambda']))
        else:
            for name in ('lambda', 'mu', 'nu'):
                if name in instance:
                    _length(name, instance[name], rank)
        return instance


class ScanJobSerializer(serializers.Serializer):
    conjecture = serializers.ChoiceField(choices=['positivity', 'rectangular'])
    group = serializers.ChoiceField(choices=Family.choices)
    rank = serializers.IntegerField(min_value=1)
    max_weight = serializers.IntegerField()
    variant = serializers.ChoiceField(choices=['standard', 'h'], default='standard')
    target = serializers.ChoiceField(choices=['kpoly', 'dfrak'], default='kpoly')

    def validate(self, attrs):
        _check_rank(self, attrs['rank'])
        attrs['group'] = _group(attrs['group'], attrs['rank'])
        if attrs['variant'] == 'h' and attrs['group'].family != Family.SO_ODD:
            raise serializers.ValidationError('variant h is defined for so-odd only')
        if attrs['target'] == 'dfrak' and attrs['group'].is_gl:
            raise serializers.ValidationError('the dfrak scan needs a classical group')
        return attrs


class PolyResultSerializer(LambdaFieldMixin, serializers.Serializer):
    group = serializers.ChoiceField(choices=Family.choices)
    rank = serializers.IntegerField()
    levi = LeviField()
    lam = WeightField(source='lam')
    mu = WeightField()
    variant = serializers.CharField()
    poly = QPolyField()


class TensorResultSerializer(LambdaFieldMixin, serializers.Serializer):
    family = serializers.CharField()
    group = serializers.CharField(allow_null=True)
    eta = WeightField()
    blocks = BlocksField()
    lam = WeightField(source='lam')
    poly = QPolyField(required=False)
    value = serializers.CharField(required=False)


class IdentityResultSerializer(serializers.Serializer):
    identity = serializers.CharField()
    instance = serializers.DictField(child=serializers.CharField())
    sides = serializers.DictField(child=serializers.CharField())
    holds = serializers.BooleanField()
    notes = serializers.ListField(child=serializers.CharField())


class ScanRowSerializer(LambdaFieldMixin, serializers.Serializer):
    group = serializers.CharField()
    rank = serializers.IntegerField()
    levi = serializers.CharField()
    lam = serializers.CharField(source='lam')
    mu = serializers.CharField()
    variant = serializers.CharField()
    poly = serializers.CharField()
    min_coeff = serializers.IntegerField()


def render_json(data):
    return JSONRenderer().render(data).decode()


def describe(value):
    """Text form of instance values and identity sides."""
    if value is None:
        return 'n/a'
    if isinstance(value, LeviSpec):
        return value.label
    if isinstance(value, GroupSpec):
        return str(value)
    if isinstance(value, tuple) and value and all(isinstance(x, tuple) for x in value):
        return ';'.join(','.join(map(str, block)) for block in value)
    if isinstance(value, tuple):
        return ','.join(map(str, value))
    if isinstance(value, dict):
        return ' '.join(f'{key}={describe(item)}' for key, item in value.items())
    return str(value)


def identity_payload(result):
    return {
        'identity': result.identity,
        'instance': {key: describe(value) for key, value in result.instance.items()},
        'sides': {key: describe(value) for key, value in result.sides.items()},
        'holds': result.holds,
        'notes': list(result.notes),
    }


def scan_payload(row):
    return {
        'group': row.group.family.value,
        'rank': row.group.rank,
        'levi': row.levi.label,
        'lam': describe(row.lam),
        'mu': describe(row.mu),
        'variant': row.variant,
        'poly': str(row.poly),
        'min_coeff': row.min_coeff,
    }
