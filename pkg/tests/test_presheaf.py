"""Presheaf construction, functoriality validation, constant/yoneda,
restriction composites, morphisms."""

import pytest

from posetcoh.abelian import IntMatrix
from posetcoh.errors import InvalidInput
from posetcoh.poset import from_covers
from posetcoh.presheaf import (
    Presheaf,
    PresheafMorphism,
    collapse_to_value,
    constant,
    validate_presheaf,
    yoneda,
)

from test_poset import subset_lattice


def square_poset():
    # {} < {1}, {2} < {1,2} as a cover square
    return from_covers(
        ["o", "a", "b", "t"],
        [("o", "a"), ("o", "b"), ("a", "t"), ("b", "t")],
    )


class TestConstant:
    def test_all_identities(self):
        p = subset_lattice(2)
        f = constant(p, 1)
        for x in p.elements:
            for y in p.up_set(x):
                assert f.restriction(x, y) == IntMatrix.identity(1)

    def test_zero_presheaf(self):
        p = subset_lattice(2)
        f = constant(p, 0)
        assert f.total_dim() == 0

    def test_rank_two_on_chain(self):
        p = from_covers(["a", "b"], [("a", "b")])
        f = constant(p, 2)
        assert f.dim("a") == f.dim("b") == 2
        assert f.restriction("a", "b") == IntMatrix.identity(2)

    def test_validates(self):
        assert validate_presheaf(constant(subset_lattice(3), 2)) is None


class TestYoneda:
    def test_at_maximum_of_chain(self):
        p = from_covers(["a", "b", "c"], [("a", "b"), ("b", "c")])
        f = yoneda(p, "c", 1)
        assert all(f.dim(e) == 1 for e in p.elements)
        assert validate_presheaf(f) is None

    def test_at_minimal(self):
        p = subset_lattice(2)
        f = yoneda(p, "{}", 3)
        assert f.dim("{}") == 3
        assert all(f.dim(e) == 0 for e in p.elements if e != "{}")

    def test_b2_middle(self):
        p = subset_lattice(2)
        f = yoneda(p, "{1}", 1)
        assert f.dim("{1}") == 1 and f.dim("{}") == 1
        assert f.dim("{2}") == 0 and f.dim("{1,2}") == 0
        assert validate_presheaf(f) is None


class TestValidation:
    def test_sign_flip_caught(self):
        p = square_poset()
        maps = {c: IntMatrix.identity(1) for c in p.covers}
        maps[("b", "t")] = IntMatrix.from_rows([[-1]])
        with pytest.raises(InvalidInput):
            Presheaf.build(p, {e: 1 for e in p.elements}, maps)
        broken = Presheaf.build(
            p, {e: 1 for e in p.elements}, maps, validate=False
        )
        report = validate_presheaf(broken)
        assert report is not None
        assert {report.x, report.y} == {"o", "t"}

    def test_chain_vacuous(self):
        p = from_covers(["a", "b", "c"], [("a", "b"), ("b", "c")])
        maps = {
            ("a", "b"): IntMatrix.from_rows([[2]]),
            ("b", "c"): IntMatrix.from_rows([[3]]),
        }
        f = Presheaf.build(p, {"a": 1, "b": 1, "c": 1}, maps)
        assert f.restriction("a", "c") == IntMatrix.from_rows([[6]])

    def test_missing_map_rejected(self):
        p = square_poset()
        maps = {c: IntMatrix.identity(1) for c in list(p.covers)[:-1]}
        with pytest.raises(InvalidInput):
            Presheaf.build(p, {e: 1 for e in p.elements}, maps)


class TestRestriction:
    def test_identity_at_equal(self):
        p = subset_lattice(2)
        f = constant(p, 2)
        assert f.restriction("{1}", "{1}") == IntMatrix.identity(2)

    def test_composite_functorial(self):
        p = subset_lattice(3)
        f = yoneda(p, "{1,2,3}", 2)
        for x in p.elements:
            for y in p.up_set(x):
                for z in p.up_set(y):
                    lhs = f.restriction(x, z)
                    rhs = f.restriction(x, y) @ f.restriction(y, z)
                    assert lhs == rhs

    def test_incomparable_rejected(self):
        p = subset_lattice(2)
        f = constant(p, 1)
        with pytest.raises(InvalidInput):
            f.restriction("{1}", "{2}")


class TestMorphism:
    def test_collapse_to_value_natural(self):
        p = subset_lattice(2)
        interval = p.restrict(p.up_set("{}"))
        f = Presheaf(
            interval,
            {e: 1 for e in interval.elements},
            {c: IntMatrix.from_rows([[2]]) for c in interval.covers},
        )
        assert validate_presheaf(f) is None
        kappa = collapse_to_value(f, "{}")
        assert kappa.is_natural()
        assert kappa.component("{1,2}") == IntMatrix.from_rows([[4]])

    def test_non_natural_rejected(self):
        p = square_poset()
        f = constant(p, 1)
        comps = {e: IntMatrix.identity(1) for e in p.elements}
        comps["t"] = IntMatrix.from_rows([[2]])
        with pytest.raises(InvalidInput):
            PresheafMorphism.build(f, f, comps)


class TestJson:
    def test_round_trip(self):
        p = subset_lattice(2)
        f = yoneda(p, "{1}", 2)
        d = f.to_json_dict()
        g = Presheaf.from_json_dict(p, d)
        assert g.dims == f.dims
        for c in p.covers:
            assert g.cover_maps[c] == f.cover_maps[c]
