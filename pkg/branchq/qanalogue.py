"""Alternating Weyl sums: Lusztig q-analogues, their stable limits and branching rules.

Everything here is a signed sum over the Weyl group (or its symmetric
group copy) of a quantized partition function evaluated at w o lambda - mu.
"""

import logging
from dataclasses import dataclass
from functools import partial
from math import prod

from .exceptions import InvalidFamilyError, InvalidHighestWeightError, InvalidLeviError
from .jobs import run_parallel, split_range
from .qpartition import QPoly, levi_generators, partition_function, theta_generators
from .rootdata import (
    Family,
    GroupSpec,
    LeviSpec,
    compositions,
    eta_levi,
    is_decreasing,
    is_levi_dominant,
    is_partition,
    levi_decomposition,
    levi_positive_roots,
    pairing,
    positive_roots,
    require_classical,
    rho,
    shift,
    size,
    sub,
)
from .tableaux import (
    has_even_columns,
    has_even_rows,
    iterated_lr,
    lr_coeff,
    partitions,
    partitions_up_to,
)
from .weylgroup import dot_action, iterate_weyl, parabolic_subgroup, weyl_order

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LeviDominant:
    """A highest weight for a Levi subgroup, flat and cut into its factor blocks."""

    blocks: tuple
    flat: tuple

    @classmethod
    def from_flat(cls, group, levi, flat):
        flat = tuple(flat)
        if len(flat) != group.rank:
            raise InvalidHighestWeightError(
                f'{flat} has length {len(flat)}, expected {group.rank}'
            )
        if not is_levi_dominant(group, levi, flat):
            raise InvalidHighestWeightError(
                f'{flat} is not dominant for the Levi {levi.label} of {group}'
            )
        return cls(levi_decomposition(group, levi).split(flat), flat)

    @classmethod
    def from_blocks(cls, group, levi, blocks):
        blocks = tuple(tuple(block) for block in blocks)
        result = cls.from_flat(group, levi, [x for block in blocks for x in block])
        if result.blocks != blocks:
            raise InvalidHighestWeightError(
                f'blocks {blocks} do not match {levi_decomposition(group, levi).label}'
            )
        return result


def _flat(group, levi, mu):
    if isinstance(mu, LeviDominant):
        return mu.flat
    return LeviDominant.from_flat(group, levi, mu).flat


def _highest_weight(group, lam):
    lam = tuple(lam)
    if len(lam) != group.rank:
        raise InvalidHighestWeightError(f'{lam} has length {len(lam)}, expected {group.rank}')
    if group.is_gl and not is_decreasing(lam):
        raise InvalidHighestWeightError(f'{lam} is not dominant for {group}')
    if not group.is_gl and not is_partition(lam):
        raise InvalidHighestWeightError(f'{lam} is not a partition')
    return lam


def _decreasing(group, beta, name):
    beta = tuple(beta)
    if len(beta) != group.rank or not is_decreasing(beta):
        raise InvalidHighestWeightError(
            f'{name}={beta} must be weakly decreasing of length {group.rank}'
        )
    return beta


def alternating_sum(group, lam, mu, gs, permutations_only=False, start=0, stop=None):
    """sum over w of sign(w) * qcount(gs, w o lam - mu), restricted to a slice of W.

    Terms whose target has nonpositive certificate value (and is nonzero)
    vanish and are rejected before the partition function is consulted.
    """
    count = partition_function(gs)

    def target(w):
        return sub(dot_action(w, lam), mu)

    def vanishes(w):
        beta = target(w)
        return any(beta) and gs.value(beta) < 1

    total = QPoly.ZERO
    kept = 0
    for w, sign in iterate_weyl(group, permutations_only, start, stop, reject=vanishes):
        kept += 1
        term = count(target(w))
        if term:
            total = total + term * sign
    logger.debug('%s: %d Weyl terms kept', gs.kind, kept)
    return total


def _sum_slice(job, bounds):
    group, lam, mu, gs, permutations_only = job
    return alternating_sum(group, lam, mu, gs, permutations_only, *bounds)


def weyl_sum(group, lam, mu, gs, permutations_only=False, workers=1):
    """alternating_sum over the whole group, optionally split across processes."""
    if workers <= 1:
        return alternating_sum(group, lam, mu, gs, permutations_only)
    slices = split_range(weyl_order(group, permutations_only), workers)
    job = (group, lam, mu, gs, permutations_only)
    total = QPoly.ZERO
    for part in run_parallel(partial(_sum_slice, job), slices, workers):
        total = total + part
    return total


def k_poly(group, levi, lam, mu, workers=1):
    """K^{G,I}_{lam,mu}(q) over the full Weyl group."""
    levi.validate(group)
    lam = _highest_weight(group, lam)
    mu = _flat(group, levi, mu)
    if group.is_gl and size(lam) != size(mu):
        return QPoly.ZERO
    if size(lam) < size(mu):
        return QPoly.ZERO
    return weyl_sum(group, lam, mu, levi_generators(group, levi), workers=workers)


def k_poly_h(n, levi, lam, mu, workers=1):
    """The SOodd q-analogue where the short roots eps_i carry q^2."""
    group = GroupSpec(Family.SO_ODD, n)
    levi.validate(group)
    lam = _highest_weight(group, lam)
    mu = _flat(group, levi, mu)
    if size(lam) < size(mu):
        return QPoly.ZERO
    return weyl_sum(group, lam, mu, levi_generators(group, levi, weighted=True), workers=workers)


def k_tilde(group, levi, lam, mu, workers=1):
    """Stable limit: the same sum over S_n only; lam may be any weakly decreasing weight."""
    levi.validate(group)
    lam = _decreasing(group, lam, 'lambda')
    mu = _flat(group, levi, mu)
    gs = levi_generators(group, levi, weighted=group.family == Family.SO_ODD)
    return weyl_sum(group, lam, mu, gs, permutations_only=True, workers=workers)


def r_count(group, beta):
    require_classical(group)
    return partition_function(theta_generators(group))(tuple(beta))(1)


def branch_levi(group, levi, lam, mu):
    """[V(lam)^G : V(mu)^L] as K^{G,I} at q = 1."""
    return k_poly(group, levi, lam, mu)(1)


def branch_levi_by_weights(group, levi, lam, mu):
    """[V(lam)^G : V(mu)^L] from the weight multiplicities of V(lam).

    sum over w in W_I of sign(w) * dim V(lam)_{w o mu}. The weight
    multiplicities are K^{G,empty} at q = 1, so the Levi generator set is
    never used and the result checks branch_levi independently.
    """
    levi.validate(group)
    lam = _highest_weight(group, lam)
    mu = _flat(group, levi, mu)
    torus = levi_generators(group, LeviSpec.empty())
    return sum(
        sign * alternating_sum(group, lam, dot_action(w, mu), torus)(1)
        for w, sign in parabolic_subgroup(group, levi)
    )


def mixed_weight(n, plus, minus):
    """(plus_1, .., plus_p, 0, .., 0, -minus_q, .., -minus_1)."""
    plus, minus = tuple(x for x in plus if x), tuple(x for x in minus if x)
    if len(plus) + len(minus) > n:
        raise InvalidHighestWeightError(f'{plus} and {minus} need more than {n} coordinates')
    return plus + (0,) * (n - len(plus) - len(minus)) + tuple(-x for x in reversed(minus))


def branch_gln(group, nu, gamma):
    """[V(nu)^G : V(gamma)^{GL_n}] as the alternating sum of r_G."""
    require_classical(group)
    nu = _highest_weight(group, nu)
    gamma = _decreasing(group, gamma, 'gamma')
    return alternating_sum(group, nu, gamma, theta_generators(group))(1)


def littlewood_class(family):
    """Partitions gamma allowed in the Littlewood restriction rule for the family."""
    if family == Family.SP:
        return has_even_rows
    if family == Family.SO_EVEN:
        return has_even_columns
    if family == Family.SO_ODD:
        return lambda shape: True
    raise InvalidFamilyError(f'{family} has no Littlewood restriction rule')


def branch_gln_littlewood(group, nu, plus, minus=()):
    """sum over gamma, delta of c^nu_{gamma,delta} c^delta_{plus,minus}, gamma in the family's class."""
    require_classical(group)
    n = group.rank
    nu = _highest_weight(group, nu)
    mixed_weight(n, plus, minus)
    admissible = littlewood_class(group.family)
    inner_size = size(plus) + size(minus)
    outer_size = size(nu) - inner_size
    if outer_size < 0:
        return 0
    total = 0
    for delta in partitions(inner_size, n):
        inner = lr_coeff(delta, plus, minus)
        if not inner:
            continue
        total += inner * sum(
            lr_coeff(nu, gamma, delta) for gamma in partitions(outer_size, n) if admissible(gamma)
        )
    return total


def bounded_weights(total, upper, lower):
    """Weakly decreasing vectors v with lower <= v_i <= upper[i] and sum total."""
    n = len(upper)

    def build(index, remaining, cap):
        if index == n:
            if remaining == 0:
                yield ()
            return
        slots = n - index - 1
        for value in range(min(cap, upper[index]), lower - 1, -1):
            rest = remaining - value
            if rest > slots * value:
                break
            if rest < slots * lower:
                continue
            for tail in build(index + 1, rest, value):
                yield (value,) + tail

    if n == 0:
        if total == 0:
            yield ()
        return
    yield from build(0, total, upper[0])


def levi_branching_via_gln(group, parts, lam, mu):
    """Branching to the GL-only Levi GL_eta through GL_n.

    sum over GL_n-dominant nu of [V(lam)^G : V(nu)^{GL_n}] times the
    GL_n -> GL_eta multiplicity, the latter from LR coefficients after a
    determinant twist making every weight a partition. The weights of V(lam)
    have entries in [-lam_1, lam_1], which bounds nu.
    """
    require_classical(group)
    n = group.rank
    lam = _highest_weight(group, lam)
    levi = eta_levi(n, tuple(parts))
    mu = _flat(group, levi, mu)
    blocks = levi_decomposition(group, levi).split(mu)
    top = lam[0] if lam else 0
    total = 0
    for nu in bounded_weights(size(mu), (top,) * n, -top):
        twist = max(0, -min(nu + mu))
        tensor = iterated_lr(shift(nu, twist), [shift(block, twist) for block in blocks])
        if tensor:
            total += tensor * branch_gln(group, lam, nu)
    return total


def _weyl_dimension(group, roots, lam):
    rho2 = rho(group)
    shifted = tuple(2 * x + r for x, r in zip(lam, rho2))
    numerator = prod(pairing(shifted, alpha) for alpha in roots)
    denominator = prod(pairing(rho2, alpha) for alpha in roots)
    return numerator // denominator


def dim_irrep(group, lam):
    return _weyl_dimension(group, positive_roots(group), _highest_weight(group, lam))


def dim_levi_irrep(group, levi, mu):
    return _weyl_dimension(group, levi_positive_roots(group, levi), _flat(group, levi, mu))


def graded_branching(group, nu, gamma):
    """S_n alternating sum of the q-graded Theta series (short roots at q^2 for SOodd)."""
    require_classical(group)
    nu = _decreasing(group, nu, 'nu')
    gamma = _decreasing(group, gamma, 'gamma')
    gs = theta_generators(group, weighted=group.family == Family.SO_ODD)
    return alternating_sum(group, nu, gamma, gs, permutations_only=True)


@dataclass(frozen=True)
class DecompositionReport:
    group: GroupSpec
    levi: LeviSpec
    lam: tuple
    mu: tuple
    stable: QPoly
    graded: QPoly
    monomial: QPoly
    shift: int

    @property
    def holds(self):
        return self.stable == self.graded

    @property
    def monomial_asserted(self):
        return self.group.family in (Family.SP, Family.SO_EVEN, Family.GL)

    @property
    def monomial_holds(self):
        return self.monomial is None or self.stable == self.monomial

    @property
    def passed(self):
        return self.holds and (self.monomial_holds or not self.monomial_asserted)


def stable_candidates(lam, mu):
    """gamma weakly decreasing, gamma <= lam, gamma_n >= |mu| - |lam|, |gamma| = |mu|."""
    return bounded_weights(size(mu), lam, size(mu) - size(lam))


def stable_decomposition_check(group, levi, lam, mu):
    """Both sides of K~ = sum_gamma (graded branching) * K^{GL,I}_{gamma,mu}."""
    levi.validate(group)
    n = group.rank
    lam = _highest_weight(group, lam)
    mu = _flat(group, levi, mu)
    if not group.is_gl and n in levi:
        raise InvalidLeviError(f'{levi.label} contains a{n}; the decomposition needs a GL-only Levi')
    gap = size(lam) - size(mu)
    if gap < 0:
        raise InvalidHighestWeightError(f'|lambda| < |mu| for {lam}, {mu}')
    stable = k_tilde(group, levi, lam, mu)
    if group.is_gl:
        return DecompositionReport(group, levi, lam, mu, stable, stable, stable, 0)
    gl = GroupSpec(Family.GL, n)
    k = (gap + 1) // 2
    graded = QPoly.ZERO
    ungraded = QPoly.ZERO
    for gamma in stable_candidates(lam, mu):
        kostka = k_poly(gl, levi, gamma, mu)
        if not kostka:
            continue
        graded = graded + graded_branching(group, lam, gamma) * kostka
        multiplicity = branch_gln(group, shift(lam, k), shift(gamma, k))
        if multiplicity:
            ungraded = ungraded + kostka * multiplicity
    if gap % 2 == 0:
        monomial = ungraded.shift(gap // 2)
    elif group.family == Family.SO_ODD:
        monomial = None
    else:
        monomial = ungraded
    report = DecompositionReport(group, levi, lam, mu, stable, graded, monomial, k)
    if not report.passed:
        logger.warning('decomposition fails for %s %s %s %s', group, levi.label, lam, mu)
    return report


@dataclass(frozen=True)
class ScanRow:
    group: GroupSpec
    levi: LeviSpec
    lam: tuple
    mu: tuple
    variant: str
    poly: QPoly

    @property
    def min_coeff(self):
        return self.poly.min_coefficient

    @property
    def violation(self):
        return self.variant != 'h' and self.min_coeff < 0


def positivity_scan(group, max_weight, variant='standard'):
    """K^{G,I}_{lam,mu} for every I, partition lam with |lam| <= max_weight, partition mu.

    Variant "h" computes the SOodd q^2-weighted polynomial; its negative
    coefficients are recorded but are not violations.
    """
    if variant == 'h' and group.family != Family.SO_ODD:
        raise InvalidFamilyError('the h variant exists for SOodd only')
    n = group.rank
    for levi in LeviSpec.every(group):
        for lam in partitions_up_to(max_weight, n):
            sizes = [size(lam)] if group.is_gl else range(size(lam) + 1)
            for total in sizes:
                for mu in partitions(total, n):
                    if variant == 'h':
                        poly = k_poly_h(n, levi, lam, mu)
                    else:
                        poly = k_poly(group, levi, lam, mu)
                    yield ScanRow(group, levi, lam, mu, variant, poly)


def rectangle_sequences(parts, max_total):
    """Block tuples of rectangles c^h (padded to eta_p) with heights and widths weakly decreasing."""

    def build(index, budget, height_cap, width_cap):
        if index == len(parts):
            yield ()
            return
        length = parts[index]
        for height in range(min(length, height_cap), -1, -1):
            widths = [0] if height == 0 else range(min(width_cap, budget // height), 0, -1)
            for width in widths:
                block = (width,) * height + (0,) * (length - height)
                for rest in build(index + 1, budget - width * height, height, width):
                    yield (block,) + rest

    yield from build(0, max_total, max(parts), max_total)


def rectangular_stable_scan(group, max_weight):
    """K~^{G,I} for GL-only Levis whose mu blocks are rectangles of decreasing size."""
    n = group.rank
    for parts in compositions(n):
        levi = eta_levi(n, parts)
        for blocks in rectangle_sequences(parts, max_weight):
            mu = tuple(x for block in blocks for x in block)
            for lam in partitions_up_to(max_weight, n):
                if size(lam) < size(mu):
                    continue
                yield ScanRow(group, levi, lam, mu, 'rectangular', k_tilde(group, levi, lam, mu))
