"""Quantized vector partition functions.

``qcount(gs, beta)`` is the coefficient of e^beta in
prod_{(g, e) in gs} 1 / (1 - q^e e^g): every way of writing beta as a
nonnegative combination of the generators contributes q to the total
weight of the generators used.
"""

import itertools
import logging
from collections import OrderedDict
from dataclasses import dataclass
from functools import lru_cache, total_ordering

from django.conf import settings

from .exceptions import InvalidCompositionError, InvalidGeneratorSetError, OracleOutOfRangeError
from .rootdata import Family, pairing, s_gi, sub, theta_set, unit

logger = logging.getLogger(__name__)


@total_ordering
class QPoly:
    """A polynomial in q with integer coefficients, stored sparsely.

    Zero coefficients are never stored, so two equal polynomials always have
    equal dictionaries.
    """

    __slots__ = ('_coeffs',)

    def __init__(self, coeffs=None):
        self._coeffs = {int(e): int(c) for e, c in (coeffs or {}).items() if c}
        if any(e < 0 for e in self._coeffs):
            raise ValueError('QPoly exponents must be nonnegative')

    @classmethod
    def _trusted(cls, coeffs):
        """Wrap a dict already free of zero coefficients and negative exponents."""
        poly = object.__new__(cls)
        poly._coeffs = coeffs
        return poly

    @classmethod
    def monomial(cls, exponent, coefficient=1):
        return cls({exponent: coefficient})

    @classmethod
    def from_dict(cls, data):
        """Inverse of to_dict: {"<exp>": "<coeff>"}."""
        return cls({int(e): int(c) for e, c in data.items()})

    def to_dict(self):
        return {str(e): str(c) for e, c in self.terms()}

    def terms(self):
        """(exponent, coefficient) pairs, highest exponent first."""
        return sorted(self._coeffs.items(), reverse=True)

    def coefficient(self, exponent):
        return self._coeffs.get(exponent, 0)

    @property
    def degree(self):
        return max(self._coeffs, default=-1)

    @property
    def min_coefficient(self):
        return min(self._coeffs.values(), default=0)

    @property
    def is_monomial(self):
        return len(self._coeffs) == 1

    def shift(self, k):
        """Multiply by q^k."""
        return QPoly({e + k: c for e, c in self._coeffs.items()})

    def plus_shifted(self, other, k):
        """self + q^k * other for k >= 0, in one pass."""
        coeffs = dict(self._coeffs)
        for e, c in other._coeffs.items():
            total = coeffs.get(e + k, 0) + c
            if total:
                coeffs[e + k] = total
            else:
                del coeffs[e + k]
        return QPoly._trusted(coeffs)

    def __call__(self, q):
        return sum(c * q ** e for e, c in self._coeffs.items())

    def _coerce(self, other):
        if isinstance(other, QPoly):
            return other
        if isinstance(other, int):
            return QPoly({0: other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.plus_shifted(other, 0)

    __radd__ = __add__

    def __neg__(self):
        return QPoly({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + -other

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        if isinstance(other, int):
            return QPoly({e: c * other for e, c in self._coeffs.items()})
        if not isinstance(other, QPoly):
            return NotImplemented
        coeffs = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                coeffs[e1 + e2] = coeffs.get(e1 + e2, 0) + c1 * c2
        return QPoly(coeffs)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._coeffs == other._coeffs

    def __lt__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.terms() < other.terms()

    def __hash__(self):
        return hash(frozenset(self._coeffs.items()))

    def __bool__(self):
        return bool(self._coeffs)

    def __repr__(self):
        return f'QPoly({dict(self.terms())})'

    def __str__(self):
        if not self._coeffs:
            return '0'
        text = ''
        for e, c in self.terms():
            sign = '-' if c < 0 else '+'
            c = abs(c)
            if e == 0:
                body = str(c)
            else:
                power = 'q' if e == 1 else f'q^{e}'
                body = power if c == 1 else f'{c}{power}'
            text += f' {sign} {body}' if text else ('-' + body if sign == '-' else body)
        return text


QPoly.ZERO = QPoly()
QPoly.ONE = QPoly({0: 1})


@dataclass(frozen=True)
class GeneratorSet:
    """Generators (vector, q-exponent) with a certificate f, f(g) >= 1 for every g."""

    gens: tuple
    certificate: tuple
    kind: str = ''

    def __post_init__(self):
        for vector, qexp in self.gens:
            if len(vector) != len(self.certificate):
                raise InvalidGeneratorSetError(f'generator {vector} has the wrong length')
            if qexp < 1:
                raise InvalidGeneratorSetError(f'generator {vector} has q-exponent {qexp}')
            if pairing(self.certificate, vector) < 1:
                raise InvalidGeneratorSetError(
                    f'certificate {self.certificate} is not positive on {vector}'
                )

    @property
    def dimension(self):
        return len(self.certificate)

    def value(self, beta):
        return pairing(self.certificate, beta)

    def vectors(self):
        return [vector for vector, _ in self.gens]


def descending_certificate(n):
    """f(beta) = sum (n - i + 1) beta_i."""
    return tuple(n - i for i in range(n))


def ascending_certificate(n):
    """f(beta) = -sum i * beta_i."""
    return tuple(-(i + 1) for i in range(n))


def _weighted(group, alpha):
    """h(alpha) = 2 on the short roots eps_i of SOodd."""
    if group.family == Family.SO_ODD and sum(abs(x) for x in alpha) == 1:
        return 2
    return 1


def levi_generators(group, levi, weighted=False):
    n = group.rank
    gens = tuple((alpha, _weighted(group, alpha) if weighted else 1) for alpha in s_gi(group, levi))
    kind = 'levi_h' if weighted else 'levi'
    return GeneratorSet(gens, descending_certificate(n), f'{kind}:{group}:{levi.label}')


def theta_generators(group, weighted=False):
    n = group.rank
    gens = tuple((alpha, _weighted(group, alpha) if weighted else 1) for alpha in theta_set(group))
    kind = 'theta_h' if weighted else 'theta'
    return GeneratorSet(gens, descending_certificate(n), f'{kind}:{group}')


def _check_composition(parts):
    parts = tuple(parts)
    if not parts or any(not isinstance(p, int) or p < 1 for p in parts):
        raise InvalidCompositionError(f'{parts} is not a composition into positive parts')
    return parts


def cross_pairs(parts):
    """E_eta: pairs i < j (from 1) lying in different blocks of eta."""
    parts = _check_composition(parts)
    block_of = []
    for index, part in enumerate(parts):
        block_of.extend([index] * part)
    n = len(block_of)
    return tuple(
        (i + 1, j + 1) for i in range(n) for j in range(i + 1, n) if block_of[i] != block_of[j]
    )


def so_eta_generators(parts):
    """P^eta: eps_i - eps_j and eps_i + eps_j over E_eta."""
    n = sum(_check_composition(parts))
    gens = []
    for i, j in cross_pairs(parts):
        gens.append((sub(unit(n, i), unit(n, j)), 1))
        gens.append((tuple(a + b for a, b in zip(unit(n, i), unit(n, j))), 1))
    return GeneratorSet(tuple(gens), descending_certificate(n), f'so_eta:{parts}')


def q_eta_generators(parts):
    """Q^eta: eps_i - eps_j and -eps_i - eps_j over E_eta."""
    n = sum(_check_composition(parts))
    gens = []
    for i, j in cross_pairs(parts):
        gens.append((sub(unit(n, i), unit(n, j)), 1))
        gens.append((tuple(-a - b for a, b in zip(unit(n, i), unit(n, j))), 1))
    return GeneratorSet(tuple(gens), ascending_certificate(n), f'q_eta:{parts}')


def omega_generators(group, parts):
    """The quantized Omega family for a classical group.

    eps_i - eps_j over E_eta, then -eps_r - eps_s for r < s (r <= s for
    SOeven), plus -eps_i with q-exponent 2 for SOodd.
    """
    n = sum(_check_composition(parts))
    gens = [(sub(unit(n, i), unit(n, j)), 1) for i, j in cross_pairs(parts)]
    for r in range(1, n + 1):
        for s in range(r, n + 1):
            if r == s and group.family != Family.SO_EVEN:
                continue
            gens.append((tuple(-a - b for a, b in zip(unit(n, r), unit(n, s))), 1))
    if group.family == Family.SO_ODD:
        gens.extend((unit(n, i, -1), 2) for i in range(1, n + 1))
    return GeneratorSet(tuple(gens), ascending_certificate(n), f'omega:{group.family}:{parts}')


def iota_vector(beta):
    return tuple(-x for x in reversed(beta))


def iota_generators(gs):
    """Image of a generator set under iota(beta) = (-beta_n, ..., -beta_1)."""
    gens = tuple((iota_vector(vector), qexp) for vector, qexp in gs.gens)
    return GeneratorSet(gens, iota_vector(gs.certificate), f'iota:{gs.kind}')


GENERATOR_KINDS = {
    'levi': lambda group, levi: levi_generators(group, levi),
    'levi_h': lambda group, levi: levi_generators(group, levi, weighted=True),
    'theta': lambda group: theta_generators(group),
    'theta_h': lambda group: theta_generators(group, weighted=True),
    'so_eta': lambda parts: so_eta_generators(parts),
    'q_eta': lambda parts: q_eta_generators(parts),
    'omega': lambda group, parts: omega_generators(group, parts),
}


def make_generators(kind, **params):
    try:
        build = GENERATOR_KINDS[kind]
    except KeyError:
        raise InvalidGeneratorSetError(f'Unknown generator family {kind!r}')
    return build(**params)


class MemoCache(OrderedDict):
    """Least-recently-used memo; one entry is evicted per insertion past the limit.

    ``limit`` of None follows settings.BRANCHQ_MEMO_ENTRIES at call time.
    """

    def __init__(self, limit=None):
        super().__init__()
        self.limit = limit

    def capacity(self):
        return self.limit or settings.BRANCHQ_MEMO_ENTRIES

    def shrink(self, capacity):
        while len(self) > capacity:
            self.popitem(last=False)


# Shared by every partition function without a limit of its own, so the
# configured cap bounds them together.
SHARED_MEMO = MemoCache()

_tokens = itertools.count()


class PartitionFunction:
    """Memoized qcount for one generator set.

    count(beta, k) uses generators k.. only:
    count(beta, k) = count(beta, k + 1) + q^e_k * count(beta - g_k, k).
    A coordinate that no generator from k on can raise (lower) must already
    be <= 0 (>= 0), which prunes most dead branches before the memo.
    """

    def __init__(self, gs, memo_limit=None):
        self.gs = gs
        self.memo_limit = memo_limit
        self._memo = MemoCache(memo_limit) if memo_limit else SHARED_MEMO
        self._token = next(_tokens)
        self._zero = (0,) * gs.dimension
        self._steps = tuple(gs.value(vector) for vector in gs.vectors())
        self._signs = self._suffix_signs()
        self._capacity = self._memo.capacity()

    def _suffix_signs(self):
        """Per k: (coordinates forced <= 0, coordinates forced >= 0) for generators k.."""
        n = self.gs.dimension
        raised, lowered = set(), set()
        signs = [(tuple(range(n)), tuple(range(n)))]
        for vector, _ in reversed(self.gs.gens):
            raised.update(i for i, x in enumerate(vector) if x > 0)
            lowered.update(i for i, x in enumerate(vector) if x < 0)
            signs.append((
                tuple(i for i in range(n) if i not in raised),
                tuple(i for i in range(n) if i not in lowered),
            ))
        return tuple(reversed(signs))

    def __call__(self, beta):
        beta = tuple(beta)
        if len(beta) != self.gs.dimension:
            raise ValueError(f'{beta} has length {len(beta)}, expected {self.gs.dimension}')
        self._capacity = self._memo.capacity()
        if len(self._memo) > self._capacity:
            logger.debug('memo over %d entries, evicting the oldest', self._capacity)
            self._memo.shrink(self._capacity)
        return self._count(beta, self.gs.value(beta), 0)

    def _count(self, beta, value, k):
        if beta == self._zero:
            return QPoly.ONE
        if value < 1:
            return QPoly.ZERO
        nonpositive, nonnegative = self._signs[k]
        for i in nonpositive:
            if beta[i] > 0:
                return QPoly.ZERO
        for i in nonnegative:
            if beta[i] < 0:
                return QPoly.ZERO
        memo = self._memo
        key = (self._token, beta, k)
        cached = memo.get(key)
        if cached is not None:
            memo.move_to_end(key)
            return cached
        vector, qexp = self.gs.gens[k]
        step = self._steps[k]
        result = self._count(beta, value, k + 1)
        if step <= value:
            rest = self._count(tuple(b - g for b, g in zip(beta, vector)), value - step, k)
            if rest:
                result = result.plus_shifted(rest, qexp)
        memo[key] = result
        if len(memo) > self._capacity:
            memo.popitem(last=False)
        return result

    @property
    def memo_size(self):
        """Entries in the cache this function writes to (shared unless memo_limit was given)."""
        return len(self._memo)

    def clear(self):
        self._memo.clear()


@lru_cache(maxsize=512)
def partition_function(gs):
    return PartitionFunction(gs)


def qcount(gs, beta):
    return partition_function(gs)(beta)


def brute_qcount(gs, beta, bound=None):
    """Memo-free oracle for qcount.

    Walks the generators from last to first and tries every multiplicity
    the certificate allows.
    """
    beta = tuple(beta)
    bound = settings.BRANCHQ_ORACLE_BOUND if bound is None else bound
    budget = gs.value(beta)
    if budget > bound:
        raise OracleOutOfRangeError(f'f({beta}) = {budget} exceeds the oracle bound {bound}')
    if budget < 0:
        return QPoly.ZERO
    zero = (0,) * gs.dimension
    total = {}

    def walk(remaining, index, weight):
        if index < 0:
            if remaining == zero:
                total[weight] = total.get(weight, 0) + 1
            return
        vector, qexp = gs.gens[index]
        step = gs.value(vector)
        current = remaining
        for multiplicity in range(gs.value(remaining) // step + 1):
            walk(current, index - 1, weight + multiplicity * qexp)
            current = sub(current, vector)

    walk(beta, len(gs.gens) - 1, 0)
    return QPoly(total)
