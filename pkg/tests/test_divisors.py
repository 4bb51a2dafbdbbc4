import pytest

from orbitint.divisors import (
    BiForm,
    DivisorError,
    b_component,
    build_tower,
    diagonal_critical_intersections,
    diagonal_form,
    exact_divide,
    g_form,
    leading_form_check,
    multi_intersection_probe,
)
from orbitint.projective import INFINITY, ProjPoint
from orbitint.ratmap import critical_data, make_map

SAMPLE_POINTS = [
    ProjPoint(0, 1),
    ProjPoint(1, 1),
    ProjPoint(-1, 1),
    ProjPoint(2, 1),
    ProjPoint(-3, 2),
    INFINITY,
]


class TestBiForm:
    def test_normalized(self):
        f = BiForm.from_dict({(1, 0): -4, (0, 1): 4}, (1, 1))
        g = f.normalized()
        # lex-leading key (1, 0) made positive, content divided out
        assert g.as_dict == {(1, 0): 1, (0, 1): -1}

    def test_multiply_degree_and_values(self):
        d = diagonal_form()
        sq = d.multiply(d)
        assert sq.bidegree == (2, 2)
        for x in SAMPLE_POINTS:
            for y in SAMPLE_POINTS:
                assert sq.evaluate(x, y) == d.evaluate(x, y) ** 2

    def test_swap_antisymmetry_of_diagonal(self):
        d = diagonal_form()
        assert d.swap_xy() == d.negate()

    def test_restrict_to_diagonal(self):
        d = diagonal_form()
        assert d.restrict_to_diagonal() == (0, 0, 0)
        f = BiForm.from_dict({(1, 1): 1, (0, 0): -1}, (1, 1))  # x*y - 1
        assert f.restrict_to_diagonal() == (1, 0, -1)

    def test_serialize_sorted(self):
        d = diagonal_form()
        assert d.serialize() == "(1,0,0,1):1 (0,1,1,0):-1"


class TestGForms:
    def test_g1_squaring(self):
        g1 = g_form(make_map([1, 0, 0], [1]), 1)
        # x^2 y^2 antisymmetrization: x0^2 y1^2 - y0^2 x1^2
        assert g1.as_dict == {(2, 0): 1, (0, 2): -1}
        assert g1.bidegree == (2, 2)

    def test_antisymmetry(self, corpus):
        for f in corpus:
            for n in (1, 2):
                g = g_form(f, n)
                assert g.swap_xy() == g.negate()
                assert g.content() == 1

    def test_vanishes_iff_images_agree(self, corpus):
        from orbitint.ratmap import iterate

        for f in corpus[:8]:
            g = g_form(f, 2)
            for x in SAMPLE_POINTS:
                for y in SAMPLE_POINTS:
                    same = iterate(f, x, 2) == iterate(f, y, 2)
                    assert (g.evaluate(x, y) == 0) == same

    def test_requires_positive_n(self):
        with pytest.raises(DivisorError):
            g_form(make_map([1, 0, 0], [1]), 0)


class TestTower:
    def test_squaring_layers(self):
        tower = build_tower(make_map([1, 0, 0], [1]), 2)
        assert b_component(tower, 0) == diagonal_form()
        # B_1 = x0 y1 + x1 y0 (affine x + y), B_2 = x0^2 y1^2 + x1^2 y0^2
        assert b_component(tower, 1).as_dict == {(1, 0): 1, (0, 1): 1}
        assert b_component(tower, 2).as_dict == {(2, 0): 1, (0, 2): 1}

    def test_telescoping(self, corpus):
        for f in corpus:
            tower = build_tower(f, 2)
            prod = tower.b_forms[0]
            for b in tower.b_forms[1:]:
                prod = prod.multiply(b)
            gn = tower.g_forms[-1]
            assert prod.normalized() == gn
            # sign: the product is +-G_n exactly
            assert prod in (gn, gn.negate())

    def test_bidegree_bookkeeping(self, corpus):
        for f in corpus:
            d = f.degree
            tower = build_tower(f, 2)
            assert tower.b_forms[0].bidegree == (1, 1)
            assert tower.b_forms[1].bidegree == (d - 1, d - 1)
            assert tower.b_forms[2].bidegree == (d * d - d, d * d - d)
            assert tower.g_forms[1].bidegree == (d * d, d * d)

    def test_effectivity_exact_division(self, corpus):
        # G_{k-1} | G_k exactly for k <= 3 (build_tower raises otherwise)
        for f in corpus:
            if f.degree**3 > 27:
                build_tower(f, 2)
            else:
                build_tower(f, 3)

    def test_non_exact_division_raises(self):
        num = BiForm.from_dict({(1, 1): 1, (0, 0): 1}, (1, 1))
        with pytest.raises(DivisorError, match="non-exact"):
            exact_divide(num, diagonal_form())

    def test_index_bounds(self):
        tower = build_tower(make_map([1, 0, 0], [1]), 1)
        with pytest.raises(DivisorError):
            b_component(tower, 5)


class TestLeadingForm:
    def test_polynomial_corpus(self, poly_corpus):
        for f in poly_corpus:
            for n in (1, 2):
                assert leading_form_check(f, n)

    def test_rejects_non_polynomial(self):
        with pytest.raises(DivisorError):
            leading_form_check(make_map([1, 0, 1], [1, 0]), 1)


class TestDiagonalIntersections:
    def test_squaring(self):
        tower = build_tower(make_map([1, 0, 0], [1]), 1)
        got = diagonal_critical_intersections(tower)
        assert set(got) == {ProjPoint(0, 1), INFINITY}

    def test_plus_inverse(self):
        tower = build_tower(make_map([1, 0, 1], [1, 0]), 1)
        got = diagonal_critical_intersections(tower)
        assert set(got) == {ProjPoint(1, 1), ProjPoint(-1, 1)}

    def test_matches_critical_points_on_b1(self, corpus):
        for f in corpus:
            tower = build_tower(f, 1)
            got = set(diagonal_critical_intersections(tower))
            b1 = tower.b_forms[1]
            expected = {
                c.point
                for c in critical_data(f)
                if c.point is not None and b1.evaluate(c.point, c.point) == 0
            }
            assert got == expected


class TestProbe:
    def test_generic_diagonal_point_vanishes_only_on_b0(self):
        f = make_map([1, 0, 0], [1])
        tower = build_tower(f, 2)
        p = ProjPoint(3, 1)
        rep = multi_intersection_probe(tower, p, p, [0, 1, 2])
        assert rep.vanishing_indices == (0,)

    def test_single_layer_has_no_chain(self):
        # x^2: B_1 = x + y vanishes at (1, -1) but B_0 and B_2 do not.
        f = make_map([1, 0, 0], [1])
        tower = build_tower(f, 2)
        rep = multi_intersection_probe(
            tower, ProjPoint(1, 1), ProjPoint(-1, 1), [0, 1, 2]
        )
        assert rep.vanishing_indices == (1,)
        assert rep.chain == ()

    def test_multi_layer_critical_chain(self):
        # x^2 at (0, 0): every layer vanishes and each common image is the
        # critical point 0.
        f = make_map([1, 0, 0], [1])
        tower = build_tower(f, 2)
        zero = ProjPoint(0, 1)
        rep = multi_intersection_probe(tower, zero, zero, [0, 1, 2])
        assert rep.vanishing_indices == (0, 1, 2)
        assert [c.index for c in rep.chain] == [1, 2]
        for check in rep.chain:
            assert check.images_equal
            assert check.image == zero
            assert check.image_is_critical

    def test_index_validation(self):
        tower = build_tower(make_map([1, 0, 0], [1]), 1)
        with pytest.raises(DivisorError):
            multi_intersection_probe(tower, ProjPoint(1, 1), ProjPoint(2, 1), [3])
