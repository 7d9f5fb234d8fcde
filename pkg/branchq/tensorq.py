"""Tensor product multiplicities of the classical groups and their q-analogues.

c is the GL_n Littlewood-Richardson family, d the tensor multiplicities of
the orthogonal and symplectic groups (independent of the group), and
dfrak the multiplicities in tensor products of the modules built from
Schur functors of the defining representation. The duality checks compare
each against a branching problem for a different group.
"""

import logging
from dataclasses import dataclass

from .exceptions import InvalidCompositionError, InvalidFamilyError, InvalidHighestWeightError
from .qanalogue import (
    ScanRow,
    alternating_sum,
    branch_gln,
    graded_branching,
    k_poly,
    k_tilde,
    littlewood_class,
    rectangle_sequences,
    weyl_sum,
)
from .qpartition import (
    QPoly,
    cross_pairs,
    iota_vector,
    omega_generators,
    q_eta_generators,
    so_eta_generators,
)
from .rootdata import Family, GroupSpec, compositions, eta_levi, is_partition, shift, size
from .tableaux import iterated_lr, kostka_charge, lr_coeff, partitions, partitions_up_to

__all__ = [
    'Composition',
    'PartitionTuple',
    'HatPair',
    'hat_pair',
    'iota',
    'dual_group',
    'lr_coeff',
    'kostka_charge',
    'iterated_lr',
    'c_poly',
    'd_coeff',
    'd_poly',
    'branch_so_eta',
    'duality_d_check',
    'dfrak_poly',
    'dfrak_littlewood',
    'qdual_check',
    'rectangular_dfrak_scan',
]

logger = logging.getLogger(__name__)

iota = iota_vector


@dataclass(frozen=True)
class Composition:
    parts: tuple

    def __post_init__(self):
        parts = tuple(self.parts)
        if not parts or any(isinstance(p, bool) or not isinstance(p, int) or p < 1 for p in parts):
            raise InvalidCompositionError(f'{parts} is not a composition into positive parts')
        object.__setattr__(self, 'parts', parts)

    @classmethod
    def of(cls, value):
        return value if isinstance(value, cls) else cls(tuple(value))

    @property
    def n(self):
        return sum(self.parts)

    def reversed(self):
        return Composition(self.parts[::-1])

    def cross_pairs(self):
        return cross_pairs(self.parts)

    def levi(self):
        return eta_levi(self.n, self.parts)

    def cut(self, flat):
        blocks, start = [], 0
        for part in self.parts:
            blocks.append(tuple(flat[start:start + part]))
            start += part
        return tuple(blocks)

    def __str__(self):
        return ','.join(map(str, self.parts))


@dataclass(frozen=True)
class PartitionTuple:
    """One partition per block of eta, each padded to the block length."""

    blocks: tuple
    flat: tuple

    @classmethod
    def from_blocks(cls, eta, blocks):
        eta = Composition.of(eta)
        blocks = [tuple(block) for block in blocks]
        if len(blocks) != len(eta.parts):
            raise InvalidHighestWeightError(
                f'{len(blocks)} blocks given for the composition {eta}'
            )
        padded = []
        for block, length in zip(blocks, eta.parts):
            trimmed = tuple(block)
            while len(trimmed) > length and trimmed[-1] == 0:
                trimmed = trimmed[:-1]
            if len(trimmed) > length or not is_partition(trimmed):
                raise InvalidHighestWeightError(
                    f'block {block} is not a partition with at most {length} parts'
                )
            padded.append(trimmed + (0,) * (length - len(trimmed)))
        return cls(tuple(padded), tuple(x for block in padded for x in block))

    @classmethod
    def from_flat(cls, eta, flat):
        return cls.from_blocks(eta, Composition.of(eta).cut(tuple(flat)))


@dataclass(frozen=True)
class HatPair:
    lamhat: tuple
    muhat: tuple
    shift: int


def hat_pair(lam, mu):
    """iota(lam) + a kappa and iota(mu) + a kappa for the least a making both nonnegative."""
    a = max(0, *lam, *mu)
    return HatPair(shift(iota(lam), a), shift(iota(mu), a), a)


DUAL_FAMILIES = {
    Family.SP: Family.SO_EVEN,
    Family.SO_EVEN: Family.SP,
    Family.SO_ODD: Family.SO_ODD,
}


def dual_group(group):
    """Sp_2n and SO_2n trade places; SO_2n+1 is its own partner."""
    if group.is_gl:
        raise InvalidFamilyError(f'{group} has no dual classical group')
    return GroupSpec(DUAL_FAMILIES[group.family], group.rank)


def _operands(eta, lam, mu):
    eta = Composition.of(eta)
    lam = tuple(lam)
    if len(lam) != eta.n or not is_partition(lam):
        raise InvalidHighestWeightError(f'{lam} is not a partition with {eta.n} parts')
    if not isinstance(mu, PartitionTuple):
        mu = PartitionTuple.from_blocks(eta, mu)
    if len(mu.flat) != eta.n:
        raise InvalidHighestWeightError(f'blocks {mu.blocks} do not fill {eta}')
    return eta, lam, mu


def c_poly(eta, lam, mu, workers=1):
    """GL_n tensor coefficient q-analogue: K^{GL_n,I} for the Levi GL_eta."""
    eta, lam, mu = _operands(eta, lam, mu)
    return k_poly(GroupSpec(Family.GL, eta.n), eta.levi(), lam, mu.flat, workers=workers)


def d_poly(eta, lam, mu, workers=1):
    eta, lam, mu = _operands(eta, lam, mu)
    gl = GroupSpec(Family.GL, eta.n)
    return weyl_sum(gl, lam, mu.flat, q_eta_generators(eta.parts), workers=workers)


def d_coeff(eta, lam, mu):
    """Multiplicity of V(lam) in V(mu^(1)) x ... x V(mu^(r)) for SO_2n+1, Sp_2n or SO_2n."""
    return d_poly(eta, lam, mu)(1)


def branch_so_eta(eta, lam, mu):
    """[V(lam)^{SO_2n} : V(mu)^{SO_2eta_1 x ... x SO_2eta_r}]."""
    eta = Composition.of(eta)
    lam, mu = tuple(lam), tuple(mu.flat if isinstance(mu, PartitionTuple) else mu)
    group = GroupSpec(Family.SO_EVEN, eta.n)
    if len(lam) != eta.n or len(mu) != eta.n:
        raise InvalidHighestWeightError(f'weights must have {eta.n} coordinates')
    return alternating_sum(group, lam, mu, so_eta_generators(eta.parts))(1)


@dataclass(frozen=True)
class DualityReport:
    eta: Composition
    lam: tuple
    mu: tuple
    tensor: int
    branching: int
    hat: HatPair
    shift: int

    @property
    def holds(self):
        return self.tensor == self.branching


def duality_d_check(eta, lam, mu):
    """d^lam_mu against SO_2n -> SO_eta-bar branching of the reflected weights."""
    eta, lam, mu = _operands(eta, lam, mu)
    hat = hat_pair(lam, mu.flat)
    reverse = eta.reversed()
    muhat = reverse.cut(hat.muhat)
    if not all(is_partition(block) for block in muhat):
        raise InvalidHighestWeightError(f'reflected blocks {muhat} are not partitions')
    k = max(0, (size(mu.flat) - size(lam) + 1) // 2)
    tensor = d_coeff(eta, lam, mu)
    branching = branch_so_eta(reverse, shift(hat.lamhat, k), shift(hat.muhat, k))
    report = DualityReport(eta, lam, mu.flat, tensor, branching, hat, k)
    if not report.holds:
        logger.warning('tensor/branching duality fails for %s %s %s', eta, lam, mu.blocks)
    return report


def dfrak_poly(group, eta, lam, mu, workers=1):
    if group.is_gl:
        return c_poly(eta, lam, mu, workers=workers)
    eta, lam, mu = _operands(eta, lam, mu)
    if group.rank != eta.n:
        raise InvalidCompositionError(f'{eta} does not sum to the rank of {group}')
    gl = GroupSpec(Family.GL, eta.n)
    return weyl_sum(gl, lam, mu.flat, omega_generators(group, eta.parts), workers=workers)


def dfrak_littlewood(group, eta, lam, mu):
    """dfrak at q = 1 from LR coefficients alone.

    sum over nu of (sum over gamma of c^nu_{gamma,lam}) * c^nu_{mu blocks},
    with gamma in the Littlewood class of the dual group.
    """
    eta, lam, mu = _operands(eta, lam, mu)
    if group.is_gl:
        raise InvalidFamilyError('the Littlewood form of dfrak needs a classical group')
    admissible = littlewood_class(DUAL_FAMILIES[group.family])
    gap = size(mu.flat) - size(lam)
    if gap < 0:
        return 0
    total = 0
    for nu in partitions(size(mu.flat), eta.n):
        tensor = iterated_lr(nu, mu.blocks)
        if not tensor:
            continue
        total += tensor * sum(
            lr_coeff(nu, gamma, lam) for gamma in partitions(gap, eta.n) if admissible(gamma)
        )
    return total


@dataclass(frozen=True)
class QDualityReport:
    group: GroupSpec
    eta: Composition
    lam: tuple
    mu: tuple
    dfrak: QPoly
    stable: QPoly
    graded: QPoly
    monomial: QPoly
    littlewood: int

    @property
    def holds(self):
        return (
            self.dfrak == self.stable == self.graded
            and self.dfrak(1) == self.littlewood
        )

    @property
    def monomial_asserted(self):
        return self.group.family != Family.SO_ODD

    @property
    def monomial_holds(self):
        return self.monomial is None or self.dfrak == self.monomial

    @property
    def passed(self):
        return self.holds and (self.monomial_holds or not self.monomial_asserted)


def qdual_check(group, eta, lam, mu):
    """dfrak(q), the stable K~ of the dual group and the graded branching sum, side by side."""
    if group.is_gl:
        raise InvalidFamilyError('the q-duality compares classical groups only')
    eta, lam, mu = _operands(eta, lam, mu)
    n = eta.n
    dual = dual_group(group)
    gl = GroupSpec(Family.GL, n)
    dfrak = dfrak_poly(group, eta, lam, mu)
    hat = hat_pair(lam, mu.flat)
    stable = k_tilde(dual, eta.reversed().levi(), hat.lamhat, hat.muhat)
    graded = QPoly.ZERO
    ungraded = QPoly.ZERO
    for nu in partitions(size(mu.flat), n):
        kostka = k_poly(gl, eta.levi(), nu, mu.flat)
        if not kostka:
            continue
        graded = graded + graded_branching(dual, nu, lam) * kostka
        multiplicity = branch_gln(dual, nu, lam)
        if multiplicity:
            ungraded = ungraded + kostka * multiplicity
    gap = size(mu.flat) - size(lam)
    if gap % 2 == 0:
        monomial = ungraded.shift(gap // 2) if gap >= 0 else QPoly.ZERO
    elif dual.family == Family.SO_ODD:
        monomial = None
    else:
        monomial = ungraded
    report = QDualityReport(
        group, eta, lam, mu.flat, dfrak, stable, graded, monomial,
        dfrak_littlewood(group, eta, lam, mu),
    )
    if not report.passed:
        logger.warning('q-duality fails for %s %s %s %s', group, eta, lam, mu.blocks)
    return report


def rectangular_dfrak_scan(group, max_weight):
    """dfrak(q) for every composition and rectangular blocks of decreasing size."""
    n = group.rank
    for parts in compositions(n):
        eta = Composition(parts)
        for blocks in rectangle_sequences(parts, max_weight):
            mu = PartitionTuple.from_blocks(eta, blocks)
            for lam in partitions_up_to(size(mu.flat), n):
                poly = dfrak_poly(group, eta, lam, mu)
                yield ScanRow(group, eta.levi(), lam, mu.flat, 'rectangular', poly)
