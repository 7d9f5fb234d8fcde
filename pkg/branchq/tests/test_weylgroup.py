from itertools import product

from django.test import SimpleTestCase

from branchq.rootdata import Family, GroupSpec, LeviSpec
from branchq.weylgroup import (
    SignedPerm,
    StraightenResult,
    dot_action,
    iterate_weyl,
    parabolic_subgroup,
    straighten,
    weyl_order,
)


class EnumerationTests(SimpleTestCase):
    def test_orders(self):
        self.assertEqual(len(list(iterate_weyl(GroupSpec(Family.GL, 3)))), 6)
        self.assertEqual(len(list(iterate_weyl(GroupSpec(Family.SP, 3)))), 48)
        self.assertEqual(weyl_order(GroupSpec(Family.SO_ODD, 3)), 48)
        self.assertEqual(weyl_order(GroupSpec(Family.SP, 4)), 384)
        self.assertEqual(weyl_order(GroupSpec(Family.SP, 3), permutations_only=True), 6)

    def test_so_even_has_even_sign_changes(self):
        elements = list(iterate_weyl(GroupSpec(Family.SO_EVEN, 3)))
        self.assertEqual(len(elements), 24)
        self.assertTrue(all(sum(w.negate) % 2 == 0 for w, _ in elements))

    def test_permutations_only(self):
        elements = list(iterate_weyl(GroupSpec(Family.SP, 3), permutations_only=True))
        self.assertEqual(len(elements), 6)
        self.assertTrue(all(w.is_permutation for w, _ in elements))

    def test_slices_cover_the_group(self):
        group = GroupSpec(Family.SO_ODD, 2)
        whole = [w for w, _ in iterate_weyl(group)]
        pieces = []
        for start, stop in ((0, 3), (3, 5), (5, None)):
            pieces.extend(w for w, _ in iterate_weyl(group, start=start, stop=stop))
        self.assertEqual(pieces, whole)

    def test_signs_cancel(self):
        for family in Family:
            for n in range(2, 5):
                group = GroupSpec(family, n)
                with self.subTest(group=str(group)):
                    signs = [sign for _, sign in iterate_weyl(group)]
                    self.assertEqual(len(signs), weyl_order(group))
                    self.assertEqual(sum(signs), 0)

    def test_reject_drops_elements(self):
        group = GroupSpec(Family.SP, 3)
        kept = list(iterate_weyl(group, reject=lambda w: not w.is_permutation))
        self.assertEqual(len(kept), 6)
        everything = list(iterate_weyl(group, reject=lambda w: False))
        self.assertEqual(everything, list(iterate_weyl(group)))

    def test_reject_keeps_slice_boundaries(self):
        group = GroupSpec(Family.SO_ODD, 2)
        cut = [w for w, _ in iterate_weyl(group, start=2, stop=6)]
        kept = [w for w, _ in iterate_weyl(group, start=2, stop=6, reject=lambda w: w.sign < 0)]
        self.assertEqual(kept, [w for w in cut if w.sign > 0])


class ParabolicTests(SimpleTestCase):
    def test_orders(self):
        sp8 = GroupSpec(Family.SP, 4)
        self.assertEqual(len(parabolic_subgroup(sp8, LeviSpec.of(1, 3, 4))), 16)
        self.assertEqual(len(parabolic_subgroup(sp8, LeviSpec.empty())), 1)
        self.assertEqual(len(parabolic_subgroup(sp8, LeviSpec.full(sp8))), 384)
        so8 = GroupSpec(Family.SO_EVEN, 4)
        self.assertEqual(len(parabolic_subgroup(so8, LeviSpec.of(3, 4))), 4)

    def test_elements_lie_in_the_group(self):
        group = GroupSpec(Family.SO_ODD, 3)
        whole = set(iterate_weyl(group))
        part = parabolic_subgroup(group, LeviSpec.of(2, 3))
        self.assertEqual(len(part), 8)
        self.assertTrue(set(part) <= whole)
        self.assertEqual(sum(sign for _, sign in part), 0)


class ActionTests(SimpleTestCase):
    def test_apply(self):
        b2 = GroupSpec(Family.SO_ODD, 2)
        self.assertEqual(SignedPerm.identity(b2).apply((3, 5)), (3, 5))
        self.assertEqual(SignedPerm.last_generator(b2).apply((3, 5)), (3, -5))
        self.assertEqual(SignedPerm.transposition(b2, 1).apply((3, 5)), (5, 3))

    def test_signs_of_generators(self):
        for family in (Family.SO_ODD, Family.SP, Family.SO_EVEN):
            group = GroupSpec(family, 3)
            self.assertEqual(SignedPerm.identity(group).sign, 1)
            self.assertEqual(SignedPerm.transposition(group, 2).sign, -1)
            self.assertEqual(SignedPerm.last_generator(group).sign, -1)

    def test_composition_and_inverse(self):
        group = GroupSpec(Family.SP, 2)
        elements = [w for w, _ in iterate_weyl(group)]
        beta = (3, -5)
        for w, v in product(elements, repeat=2):
            self.assertEqual((w * v).apply(beta), w.apply(v.apply(beta)))
            self.assertEqual((w * v).sign, w.sign * v.sign)
        for w in elements:
            self.assertEqual(w * w.inverse(), SignedPerm.identity(group))

    def test_gl_rejects_sign_changes(self):
        with self.assertRaises(ValueError):
            SignedPerm((0, 1), (True, False), GroupSpec(Family.GL, 2))


class DotActionTests(SimpleTestCase):
    def test_identity(self):
        group = GroupSpec(Family.SP, 3)
        self.assertEqual(dot_action(SignedPerm.identity(group), (2, 1, 0)), (2, 1, 0))

    def test_b2_sign_flip(self):
        b2 = GroupSpec(Family.SO_ODD, 2)
        self.assertEqual(dot_action(SignedPerm.last_generator(b2), (0, 0)), (0, -1))

    def test_gl2_swap(self):
        gl2 = GroupSpec(Family.GL, 2)
        self.assertEqual(dot_action(SignedPerm.transposition(gl2, 1), (2, 0)), (-1, 3))

    def test_dot_action_is_an_action(self):
        group = GroupSpec(Family.SO_EVEN, 3)
        lam = (2, 1, 1)
        elements = [w for w, _ in iterate_weyl(group)]
        for w in elements[::5]:
            for v in elements[::7]:
                self.assertEqual(dot_action(w * v, lam), dot_action(w, dot_action(v, lam)))


class StraightenTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(straighten((3, 1, 0)), StraightenResult(1, (3, 1, 0)))
        self.assertTrue(straighten((0, 1)).is_zero)
        self.assertEqual(straighten((0, 2)), StraightenResult(-1, (1, 1)))

    def test_undoes_the_dot_action(self):
        group = GroupSpec(Family.GL, 3)
        lam = (2, 1, 0)
        for w, sign in iterate_weyl(group):
            self.assertEqual(straighten(dot_action(w, lam)), StraightenResult(sign, lam))
