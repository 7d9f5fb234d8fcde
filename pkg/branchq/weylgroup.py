"""Weyl groups of the classical families as signed permutations.

An element w sends a weight beta to the weight whose i-th coordinate is
+-beta[w(i)]. The sign (-1)^l(w) is read off as the determinant of the
signed permutation matrix; reduced words are never needed.
"""

import logging
import math
from dataclasses import dataclass
from itertools import islice, permutations, product

from .exceptions import ParityError
from .rootdata import Family, GroupSpec, rho, sub

logger = logging.getLogger(__name__)


def permutation_parity(image):
    """+1 for an even permutation of range(n), -1 for an odd one (cycle count)."""
    seen = [False] * len(image)
    parity = 1
    for start in range(len(image)):
        if seen[start]:
            continue
        length, k = 0, start
        while not seen[k]:
            seen[k] = True
            k = image[k]
            length += 1
        if length % 2 == 0:
            parity = -parity
    return parity


@dataclass(frozen=True)
class SignedPerm:
    image: tuple
    negate: tuple
    group: GroupSpec

    def __post_init__(self):
        n = self.group.rank
        if sorted(self.image) != list(range(n)) or len(self.negate) != n:
            raise ValueError(f'{self.image} is not a permutation of {n} positions')
        flips = sum(self.negate)
        if self.group.is_gl and flips:
            raise ValueError('GL Weyl group elements carry no sign changes')
        if self.group.family == Family.SO_EVEN and flips % 2:
            raise ValueError('SOeven Weyl group elements need an even number of sign changes')

    @classmethod
    def identity(cls, group):
        n = group.rank
        return cls(tuple(range(n)), (False,) * n, group)

    @classmethod
    def transposition(cls, group, i):
        """s_i for 1 <= i < n: swaps positions i and i+1."""
        image = list(range(group.rank))
        image[i - 1], image[i] = image[i], image[i - 1]
        return cls(tuple(image), (False,) * group.rank, group)

    @classmethod
    def last_generator(cls, group):
        """s_n: sign change of position n (B, C) or the swap-and-negate of D."""
        n = group.rank
        if group.family == Family.SO_EVEN:
            image = list(range(n))
            image[n - 2], image[n - 1] = n - 1, n - 2
            return cls(tuple(image), (False,) * (n - 2) + (True, True), group)
        return cls(tuple(range(n)), (False,) * (n - 1) + (True,), group)

    @property
    def sign(self):
        parity = permutation_parity(self.image)
        return -parity if sum(self.negate) % 2 else parity

    @property
    def is_permutation(self):
        return not any(self.negate)

    def apply(self, beta):
        return tuple(
            -beta[k] if flip else beta[k] for k, flip in zip(self.image, self.negate)
        )

    def __mul__(self, other):
        """(self * other)(beta) = self(other(beta))."""
        image = tuple(other.image[k] for k in self.image)
        negate = tuple(flip != other.negate[k] for k, flip in zip(self.image, self.negate))
        return SignedPerm(image, negate, self.group)

    def inverse(self):
        n = len(self.image)
        image = [0] * n
        negate = [False] * n
        for i, k in enumerate(self.image):
            image[k] = i
            negate[k] = self.negate[i]
        return SignedPerm(tuple(image), tuple(negate), self.group)


def weyl_order(group, permutations_only=False):
    n = group.rank
    if group.is_gl or permutations_only:
        return math.factorial(n)
    if group.family == Family.SO_EVEN:
        return 2 ** (n - 1) * math.factorial(n)
    return 2 ** n * math.factorial(n)


def _sign_masks(group, permutations_only):
    n = group.rank
    if group.is_gl or permutations_only:
        return [(False,) * n]
    masks = product((False, True), repeat=n)
    if group.family == Family.SO_EVEN:
        return [mask for mask in masks if sum(mask) % 2 == 0]
    return list(masks)


def iterate_weyl(group, permutations_only=False, start=0, stop=None, reject=None):
    """Yield (w, sign) over W_G, or over its S_n copy.

    Order is lexicographic in the permutation, then binary in the sign mask,
    so ``start``/``stop`` cut reproducible ranges. ``reject(w)`` drops
    elements after the cut, which leaves the ranges unchanged.
    """
    masks = _sign_masks(group, permutations_only)

    def elements():
        for image in permutations(range(group.rank)):
            for mask in masks:
                yield SignedPerm(image, mask, group)

    for w in islice(elements(), start, stop):
        if reject is not None and reject(w):
            continue
        yield w, w.sign


def parabolic_subgroup(group, levi):
    """(w, sign) over W_I, the subgroup generated by the simple reflections in I."""
    levi.validate(group)
    n = group.rank
    reflections = [
        SignedPerm.last_generator(group) if i == n else SignedPerm.transposition(group, i)
        for i in sorted(levi.included)
    ]
    elements = {SignedPerm.identity(group)}
    frontier = list(elements)
    while frontier:
        found = []
        for w in frontier:
            for s in reflections:
                v = w * s
                if v not in elements:
                    elements.add(v)
                    found.append(v)
        frontier = found
    ordered = sorted(elements, key=lambda w: (w.image, w.negate))
    return [(w, w.sign) for w in ordered]


def dot_action(w, lam):
    """w o lambda = w(lambda + rho_G) - rho_G, evaluated in doubled coordinates."""
    rho2 = rho(w.group)
    doubled = sub(w.apply(tuple(2 * x + r for x, r in zip(lam, rho2))), rho2)
    if any(x % 2 for x in doubled):
        raise ParityError(f'odd entry in doubled dot action {doubled}')
    return tuple(x // 2 for x in doubled)


@dataclass(frozen=True)
class StraightenResult:
    sign: int = 0
    dominant: tuple = None

    @property
    def is_zero(self):
        return self.sign == 0


def straighten(xi):
    """Bring xi to the dominant chamber of GL_n under the dot action.

    With rho = (n, ..., 1): zero if xi + rho repeats an entry, otherwise the
    sign of the sorting permutation and sorted(xi + rho) - rho.
    """
    n = len(xi)
    shifted = [x + n - i for i, x in enumerate(xi)]
    if len(set(shifted)) < n:
        return StraightenResult()
    order = sorted(range(n), key=lambda i: -shifted[i])
    dominant = tuple(shifted[k] - (n - i) for i, k in enumerate(order))
    return StraightenResult(permutation_parity(order), dominant)
