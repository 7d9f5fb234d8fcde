"""Tableau combinatorics used as independent oracles.

Littlewood-Richardson coefficients are counted directly on skew tableaux
and Kostka-Foulkes polynomials through the charge statistic, so neither
touches the partition-function code they are compared against.
"""

from functools import lru_cache

from .qpartition import QPoly


def strip(shape):
    """Drop trailing zero parts."""
    shape = tuple(shape)
    while shape and shape[-1] == 0:
        shape = shape[:-1]
    return shape


def partitions(total, max_parts, max_part=None):
    """Partitions of ``total`` with at most ``max_parts`` parts, largest first, padded."""
    if max_part is None:
        max_part = total

    def build(remaining, parts_left, cap):
        if remaining == 0:
            yield ()
            return
        if parts_left == 0:
            return
        for first in range(min(remaining, cap), 0, -1):
            for rest in build(remaining - first, parts_left - 1, first):
                yield (first,) + rest

    for shape in build(total, max_parts, max_part):
        yield shape + (0,) * (max_parts - len(shape))


def partitions_up_to(max_total, max_parts):
    for total in range(max_total + 1):
        yield from partitions(total, max_parts)


def conjugate(shape):
    shape = strip(shape)
    if not shape:
        return ()
    return tuple(sum(1 for part in shape if part > col) for col in range(shape[0]))


def has_even_rows(shape):
    return all(part % 2 == 0 for part in shape)


def has_even_columns(shape):
    return all(part % 2 == 0 for part in conjugate(shape))


def contains(outer, inner):
    outer, inner = strip(outer), strip(inner)
    return len(inner) <= len(outer) and all(a >= b for a, b in zip(outer, inner))


@lru_cache(maxsize=None)
def _lr(nu, gamma, delta):
    gamma = gamma + (0,) * (len(nu) - len(gamma))
    cells = [(row, col) for row in range(len(nu)) for col in range(nu[row] - 1, gamma[row] - 1, -1)]
    letters = len(delta)
    filling = {}
    counts = [0] * (letters + 1)

    def place(index):
        if index == len(cells):
            return 1
        row, col = cells[index]
        top = letters
        right = filling.get((row, col + 1))
        if right is not None:
            top = min(top, right)
        above = filling.get((row - 1, col)) if row > 0 and col >= gamma[row - 1] else None
        bottom = 1 if above is None else above + 1
        found = 0
        for value in range(bottom, top + 1):
            if counts[value] == delta[value - 1]:
                continue
            if value > 1 and counts[value] + 1 > counts[value - 1]:
                continue
            counts[value] += 1
            filling[(row, col)] = value
            found += place(index + 1)
            del filling[(row, col)]
            counts[value] -= 1
        return found

    return place(0)


def lr_coeff(nu, gamma, delta):
    """c^nu_{gamma, delta}: LR tableaux of shape nu/gamma with content delta.

    Cells are filled in reading order (rows top to bottom, each right to
    left) so the lattice condition can be checked letter by letter.
    """
    nu, gamma, delta = strip(nu), strip(gamma), strip(delta)
    if sum(gamma) + sum(delta) != sum(nu) or not contains(nu, gamma):
        return 0
    if not delta:
        return 1
    return _lr(nu, gamma, delta)


def iterated_lr(lam, blocks):
    """Multiplicity of s_lam in the product s_{blocks[0]} ... s_{blocks[-1]}."""
    lam = strip(lam)
    blocks = [strip(b) for b in blocks if strip(b)]
    if not blocks:
        return 1 if not lam else 0
    if len(blocks) == 1:
        return 1 if blocks[0] == lam else 0
    *head, last = blocks
    total = sum(sum(b) for b in head)
    return sum(
        lr_coeff(lam, tau, last) * iterated_lr(tau, head)
        for tau in map(strip, partitions(total, max(len(lam), 1)))
        if contains(lam, tau)
    )


def semistandard_tableaux(shape, content):
    """Rows of every SSYT of the given shape and content."""
    shape, content = strip(shape), strip(content)
    if sum(shape) != sum(content):
        return
    rows = [[None] * part for part in shape]
    cells = [(r, c) for r in range(len(shape)) for c in range(shape[r])]
    remaining = list(content)

    def fill(index):
        if index == len(cells):
            yield tuple(tuple(row) for row in rows)
            return
        r, c = cells[index]
        low = 1
        if c > 0:
            low = max(low, rows[r][c - 1])
        if r > 0:
            low = max(low, rows[r - 1][c] + 1)
        for value in range(low, len(content) + 1):
            if not remaining[value - 1]:
                continue
            remaining[value - 1] -= 1
            rows[r][c] = value
            yield from fill(index + 1)
            remaining[value - 1] += 1
        rows[r][c] = None

    yield from fill(0)


def charge(word):
    """Lascoux-Schutzenberger charge of a word with partition content."""
    letters = list(enumerate(word))
    total = 0
    while letters:
        present = sorted({letter for _, letter in letters})
        top = 0
        while top < len(present) and present[top] == top + 1:
            top += 1
        chosen = []
        cursor = len(letters)
        for letter in range(1, top + 1):
            # scan leftwards cyclically from the cursor for this letter
            order = list(range(cursor - 1, -1, -1)) + list(range(len(letters) - 1, cursor - 1, -1))
            pick = next(k for k in order if letters[k][1] == letter and k not in chosen)
            chosen.append(pick)
            cursor = pick
        index = 0
        for previous, current in zip(chosen, chosen[1:]):
            if letters[current][0] > letters[previous][0]:
                index += 1
            total += index
        letters = [entry for k, entry in enumerate(letters) if k not in chosen]
    return total


def reading_word(rows):
    """Rows from bottom to top, each read left to right."""
    return [value for row in reversed(rows) for value in row]


def kostka_charge(lam, mu):
    """Kostka-Foulkes polynomial as the charge generating function over SSYT(lam, mu)."""
    total = QPoly.ZERO
    for rows in semistandard_tableaux(lam, mu):
        total = total + QPoly.monomial(charge(reading_word(rows)))
    return total
