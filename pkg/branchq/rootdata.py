"""Root data for the classical groups GL_n, SO_{2n+1}, Sp_{2n} and SO_{2n}.

Weights are plain tuples of integers on the orthonormal basis
eps_1..eps_n. The half sum of positive roots is the only quantity that can
be half-integral, so it is handed out doubled.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from django.db import models

from .exceptions import InvalidFamilyError, InvalidGroupError, InvalidLeviError

logger = logging.getLogger(__name__)

Weight = tuple[int, ...]


class Family(models.TextChoices):
    GL = 'gl', 'GL'
    SO_ODD = 'so-odd', 'SOodd'
    SP = 'sp', 'Sp'
    SO_EVEN = 'so-even', 'SOeven'


CLASSICAL_FAMILIES = (Family.SO_ODD, Family.SP, Family.SO_EVEN)


def unit(n, i, coefficient=1):
    """The weight coefficient * eps_i, with i counted from 1."""
    return tuple(coefficient if k == i else 0 for k in range(1, n + 1))


def add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def shift(beta, k):
    """beta + k * kappa with kappa = (1, ..., 1)."""
    return tuple(x + k for x in beta)


def size(beta):
    return sum(beta)


def pairing(a, b):
    return sum(x * y for x, y in zip(a, b))


def is_partition(beta):
    return all(x >= y for x, y in zip(beta, beta[1:])) and (not beta or beta[-1] >= 0)


def is_decreasing(beta):
    return all(x >= y for x, y in zip(beta, beta[1:]))


@dataclass(frozen=True)
class GroupSpec:
    family: Family
    rank: int

    def __post_init__(self):
        try:
            family = Family(self.family)
        except ValueError:
            raise InvalidFamilyError(f'Unknown group family: {self.family!r}')
        object.__setattr__(self, 'family', family)
        if isinstance(self.rank, bool) or not isinstance(self.rank, int) or self.rank < 1:
            raise InvalidGroupError(f'Rank must be a positive integer, got {self.rank!r}')
        if family == Family.SO_EVEN and self.rank < 2:
            raise InvalidGroupError('SOeven needs rank >= 2 (D_1 is not supported)')

    @property
    def is_gl(self):
        return self.family == Family.GL

    def __str__(self):
        n = self.rank
        return {
            Family.GL: f'GL_{n}',
            Family.SO_ODD: f'SO_{2 * n + 1}',
            Family.SP: f'Sp_{2 * n}',
            Family.SO_EVEN: f'SO_{2 * n}',
        }[self.family]


def require_classical(group):
    if group.is_gl:
        raise InvalidFamilyError(f'{group} has no theta set; a classical family is required')


@lru_cache(maxsize=None)
def simple_roots(group):
    n = group.rank
    roots = [sub(unit(n, i), unit(n, i + 1)) for i in range(1, n)]
    if group.family == Family.SO_ODD:
        roots.append(unit(n, n))
    elif group.family == Family.SP:
        roots.append(unit(n, n, 2))
    elif group.family == Family.SO_EVEN:
        roots.append(add(unit(n, n - 1), unit(n, n)))
    return tuple(roots)


@lru_cache(maxsize=None)
def positive_roots(group):
    """R_G^+ in a fixed order: eps_i - eps_j, then eps_i + eps_j, then the long/short roots."""
    n = group.rank
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    roots = [sub(unit(n, i), unit(n, j)) for i, j in pairs]
    if group.is_gl:
        return tuple(roots)
    roots.extend(add(unit(n, i), unit(n, j)) for i, j in pairs)
    if group.family == Family.SO_ODD:
        roots.extend(unit(n, i) for i in range(1, n + 1))
    elif group.family == Family.SP:
        roots.extend(unit(n, i, 2) for i in range(1, n + 1))
    return tuple(roots)


@lru_cache(maxsize=None)
def rho(group):
    """Twice rho_G.

    GL uses rho = (n, ..., 1) instead of the half sum: the two differ by a
    multiple of kappa, which the symmetric group fixes.
    """
    n = group.rank
    if group.is_gl:
        return tuple(2 * (n - i) for i in range(n))
    doubled = (0,) * n
    for alpha in positive_roots(group):
        doubled = add(doubled, alpha)
    return doubled


@lru_cache(maxsize=None)
def theta_set(group):
    require_classical(group)
    n = group.rank
    roots = [add(unit(n, i), unit(n, j)) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    if group.family == Family.SO_ODD:
        roots.extend(unit(n, i) for i in range(1, n + 1))
    elif group.family == Family.SP:
        roots.extend(unit(n, i, 2) for i in range(1, n + 1))
    return tuple(roots)


@lru_cache(maxsize=None)
def theta_star(group):
    removed = simple_roots(group)[-1]
    return tuple(alpha for alpha in theta_set(group) if alpha != removed)


def simple_root_coefficients(group, beta):
    """Exact coordinates of beta on the simple roots (Gauss-Jordan over Fraction)."""
    alphas = simple_roots(group)
    width = len(alphas)
    rows = [
        [Fraction(alpha[k]) for alpha in alphas] + [Fraction(beta[k])]
        for k in range(group.rank)
    ]
    pivots = []
    top = 0
    for col in range(width):
        pivot = next((r for r in range(top, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[top], rows[pivot] = rows[pivot], rows[top]
        lead = rows[top][col]
        rows[top] = [x / lead for x in rows[top]]
        for r, row in enumerate(rows):
            if r != top and row[col]:
                factor = row[col]
                rows[r] = [x - factor * y for x, y in zip(row, rows[top])]
        pivots.append(col)
        top += 1
    if any(row[width] for row in rows[top:]):
        raise ValueError(f'{beta} is not in the span of the simple roots of {group}')
    coefficients = [Fraction(0)] * width
    for r, col in enumerate(pivots):
        coefficients[col] = rows[r][width]
    return tuple(coefficients)


def support(group, beta):
    """Indices (from 1) of the simple roots used by beta."""
    return frozenset(
        i for i, c in enumerate(simple_root_coefficients(group, beta), start=1) if c
    )


@dataclass(frozen=True)
class LeviSpec:
    """A subset I of simple roots, numbered a1..an as alpha_1..alpha_n."""

    included: frozenset

    @classmethod
    def of(cls, *indices):
        return cls(frozenset(indices))

    @classmethod
    def full(cls, group):
        return cls(frozenset(range(1, len(simple_roots(group)) + 1)))

    @classmethod
    def empty(cls):
        return cls(frozenset())

    @classmethod
    def every(cls, group):
        """All 2^n subsets of simple roots, largest first."""
        top = len(simple_roots(group))
        for count in range(top, -1, -1):
            for chosen in combinations(range(1, top + 1), count):
                yield cls(frozenset(chosen))

    def validate(self, group):
        top = len(simple_roots(group))
        bad = sorted(i for i in self.included if not isinstance(i, int) or not 1 <= i <= top)
        if bad:
            raise InvalidLeviError(
                f'Simple roots {bad} are out of range for {group} (a1..a{top})'
            )
        return self

    @property
    def label(self):
        if not self.included:
            return 'none'
        return ','.join(f'a{i}' for i in sorted(self.included))

    def __contains__(self, index):
        return index in self.included

    def __iter__(self):
        return iter(sorted(self.included))


@dataclass(frozen=True)
class LeviFactor:
    kind: str
    rank: int

    @property
    def label(self):
        if self.kind == 'GL':
            return f'GL_{self.rank}'
        if self.kind == 'SL':
            return f'SL_{self.rank + 1}'
        if self.kind == 'SOodd':
            return f'SO_{2 * self.rank + 1}'
        if self.kind == 'Sp':
            return f'Sp_{2 * self.rank}'
        return f'SO_{2 * self.rank}'


@dataclass(frozen=True)
class LeviType:
    factors: tuple
    lengths: tuple

    @property
    def tail(self):
        """l_{r+1}: size of the classical block (0 when the Levi is GL-only)."""
        gl_total = sum(f.rank for f in self.factors if f.kind == 'GL')
        return sum(self.lengths) - gl_total

    @property
    def label(self):
        return '×'.join(f.label for f in self.factors)

    def split(self, flat):
        """Cut a flat weight into the coordinate blocks of this Levi."""
        blocks, start = [], 0
        for length in self.lengths:
            blocks.append(tuple(flat[start:start + length]))
            start += length
        return tuple(blocks)


def _tail_factors(family, tail):
    if tail == 0:
        return ()
    if tail == 1:
        return (LeviFactor('SL', 1),)
    if family == Family.SO_ODD:
        return (LeviFactor('SOodd', tail),)
    if family == Family.SP:
        return (LeviFactor('Sp', tail),)
    if tail == 2:
        return (LeviFactor('SL', 1), LeviFactor('SL', 1))
    if tail == 3:
        return (LeviFactor('SL', 3),)
    return (LeviFactor('SOeven', tail),)


@lru_cache(maxsize=None)
def levi_decomposition(group, levi):
    levi.validate(group)
    n = group.rank
    included = set(levi.included)
    if group.family == Family.SO_EVEN and n - 1 not in included and n in included:
        # diagram automorphism swapping alpha_{n-1} and alpha_n
        included = (included - {n}) | {n - 1}
    excluded = sorted(set(range(1, len(simple_roots(group)) + 1)) - included)
    cuts = [0] + [j for j in excluded if j < n]
    if group.is_gl or (excluded and excluded[-1] == n):
        cuts.append(n)
    lengths = [b - a for a, b in zip(cuts, cuts[1:])]
    factors = [LeviFactor('GL', length) for length in lengths]
    if not group.is_gl:
        tail = n - cuts[-1]
        if tail:
            lengths.append(tail)
        factors.extend(_tail_factors(group.family, tail))
    result = LeviType(tuple(factors), tuple(lengths))
    logger.debug('Levi of %s for %s: %s', group, levi.label, result.label)
    return result


@lru_cache(maxsize=None)
def levi_positive_roots(group, levi):
    levi.validate(group)
    return tuple(
        alpha for alpha in positive_roots(group) if support(group, alpha) <= levi.included
    )


@lru_cache(maxsize=None)
def s_gi(group, levi):
    """S_{G,I}: positive roots whose simple-root support leaves I."""
    levi.validate(group)
    return tuple(
        alpha
        for alpha in positive_roots(group)
        if not support(group, alpha) <= levi.included
    )


def is_levi_dominant(group, levi, mu):
    alphas = simple_roots(group)
    return all(pairing(mu, alphas[i - 1]) >= 0 for i in levi.included)


def eta_levi(n, parts):
    """The Levi whose GL blocks are the parts of a composition of n (alpha_n never included)."""
    boundaries, total = set(), 0
    for part in parts[:-1]:
        total += part
        boundaries.add(total)
    return LeviSpec(frozenset(i for i in range(1, n) if i not in boundaries))


def compositions(n):
    """Every composition of n, coarsest first."""
    if n == 0:
        yield ()
        return
    for first in range(n, 0, -1):
        for rest in compositions(n - first):
            yield (first,) + rest
