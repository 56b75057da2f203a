"""Nerve complexes, cohomology, induced maps, the pair sequence."""

import random

import pytest

from posetcoh.abelian import IntMatrix, complex_cohomology
from posetcoh.errors import InvalidInput, PreconditionError
from posetcoh.poset import filtration_level, from_covers, open_interval
from posetcoh.presheaf import Presheaf, PresheafMorphism, collapse_to_value, constant
from posetcoh.singular import (
    all_simplices,
    check_monotone,
    cohomology,
    degeneracy,
    face,
    full_nerve_complex,
    limit,
    long_exact_sequence_check,
    nerve_complex,
    nondegenerate_simplices,
    presheaf_map_on_complex,
    pullback_map,
    pushforward_map,
    reduced_nerve_complex,
    relative_nerve_complex,
    singular_cohomology,
)

from conftest import (
    random_monotone_map,
    random_poset,
    random_presheaf,
    square_circle_poset,
)
from test_poset import subset_lattice


def hexagon_poset():
    """Proper nonempty subsets of a 3-set: the order complex is a circle."""
    b3 = subset_lattice(3)
    return b3.restrict([e for e in b3.elements if e not in ("{}", "{1,2,3}")])


def two_chain():
    return from_covers(["a", "b"], [("a", "b")])


def empty_poset():
    return from_covers([], [])


def one_point():
    return from_covers(["x"], [])


class TestSimplices:
    def test_two_chain_degree_one(self):
        p = two_chain()
        assert nondegenerate_simplices(p, 1) == [("a", "b")]

    def test_hexagon_counts(self):
        p = hexagon_poset()
        assert len(nondegenerate_simplices(p, 0)) == 6
        assert len(nondegenerate_simplices(p, 1)) == 6
        assert nondegenerate_simplices(p, 2) == []

    def test_basepoint(self):
        assert nondegenerate_simplices(two_chain(), -1) == [()]
        assert all_simplices(empty_poset(), -1) == [()]

    def test_faces_follow_index_convention(self):
        s = ("a", "b")
        assert face(s, 0) == ("a",)
        assert face(s, 1) == ("b",)

    def test_degeneracy(self):
        assert degeneracy(("a",), 0) == ("a", "a")
        assert degeneracy(("a", "b"), 1) == ("a", "a", "b")

    def test_simplicial_identity(self):
        rng = random.Random(0)
        for _ in range(30):
            p = random_poset(rng)
            top = p.longest_chain_degree
            if top < 2:
                continue
            for s in nondegenerate_simplices(p, top):
                n = top
                for j in range(1, n + 1):
                    for i in range(j):
                        assert face(face(s, j), i) == face(face(s, i), j - 1)

    def test_out_of_range(self):
        with pytest.raises(InvalidInput):
            face(("a", "b"), 2)


class TestNerveComplex:
    def test_two_chain_differential(self):
        p = two_chain()
        cx = nerve_complex(p, constant(p, 1))
        assert cx.group(0).generators == 2
        assert cx.group(1).generators == 1
        assert cx.diff(0).matrix == IntMatrix.from_rows([[1, -1]])

    def test_empty_poset_zero_complex(self):
        p = empty_poset()
        cx = nerve_complex(p, constant(p, 1))
        assert cx.hi < cx.lo
        assert cohomology(cx).degrees == ()

    def test_one_point(self):
        p = one_point()
        rep = singular_cohomology(p, constant(p, 1))
        assert rep.invariants(0) == (1, ())
        assert rep.top_degree() == 0

    def test_base_mismatch(self):
        p, q = two_chain(), one_point()
        with pytest.raises(InvalidInput):
            nerve_complex(p, constant(q, 1))


class TestFullNerveComplex:
    def test_one_point_degenerate_chains(self):
        p = one_point()
        cx = full_nerve_complex(p, constant(p, 1), 2)
        assert [cx.group(n).generators for n in (0, 1, 2)] == [1, 1, 1]

    def test_two_chain_degree_one(self):
        p = two_chain()
        cx = full_nerve_complex(p, constant(p, 1), 2)
        assert cx.group(1).generators == 3  # (a,b), (a,a), (b,b)

    def test_degree_bound_enforced(self):
        p = two_chain()
        with pytest.raises(PreconditionError):
            full_nerve_complex(p, constant(p, 1), 1)

    def test_matches_nondegenerate_cohomology(self):
        rng = random.Random(1)
        done = 0
        while done < 12:
            p = random_poset(rng, 5)
            f = random_presheaf(rng, p)
            top = p.longest_chain_degree
            a = cohomology(nerve_complex(p, f))
            b = cohomology(full_nerve_complex(p, f, top + 1))
            for n in range(0, top + 1):
                assert a.invariants(n) == b.invariants(n)
            done += 1


class TestRelative:
    def test_whole_pair_is_zero(self):
        p = hexagon_poset()
        cx = relative_nerve_complex(p, p, constant(p, 1))
        assert all(cx.group(n).generators == 0 for n in range(cx.lo, cx.hi + 1))

    def test_empty_subposet_recovers_total(self):
        p = hexagon_poset()
        f = constant(p, 1)
        cx = relative_nerve_complex(p, empty_poset(), f)
        full = nerve_complex(p, f)
        for n in range(full.lo, full.hi + 1):
            assert cx.group(n).generators == full.group(n).generators
            assert cx.diff(n).matrix == full.diff(n).matrix

    def test_interval_pair_generators(self):
        p = square_circle_poset()
        closed = p.restrict(p.up_set("e1"))
        opened = open_interval(p, "e1")
        f = constant(closed, 1)
        cx = relative_nerve_complex(closed, opened, f)
        labels = cx.labels[1]
        assert [lab[0] for lab in labels] == [("e1", "v1"), ("e1", "v2")]

    def test_non_induced_rejected(self):
        p = from_covers(["a", "b", "c"], [("a", "b"), ("b", "c")])
        q = from_covers(["a", "c"], [])  # drops the order between a and c
        with pytest.raises(InvalidInput):
            relative_nerve_complex(p, q, constant(p, 1))


class TestReduced:
    def test_one_point_reduced_trivial(self):
        rep = cohomology(reduced_nerve_complex(one_point(), 1))
        assert all(e.is_zero() for e in rep.degrees)

    def test_hexagon_circle(self):
        rep = cohomology(reduced_nerve_complex(hexagon_poset(), 1))
        assert rep.invariants(-1) == (0, ())
        assert rep.invariants(0) == (0, ())
        assert rep.invariants(1) == (1, ())

    def test_empty_poset_minus_one(self):
        rep = cohomology(reduced_nerve_complex(empty_poset(), 1))
        assert rep.invariants(-1) == (1, ())


class TestCohomology:
    def test_two_chain_contractible(self):
        p = two_chain()
        rep = singular_cohomology(p, constant(p, 1))
        assert rep.invariants(0) == (1, ())
        assert rep.nonzero_degrees() == [0]

    def test_hexagon_circle(self):
        p = hexagon_poset()
        rep = singular_cohomology(p, constant(p, 1))
        assert rep.invariants(0) == (1, ())
        assert rep.invariants(1) == (1, ())
        assert rep.nonzero_degrees() == [0, 1]

    def test_unique_maximum_evaluates(self):
        rng = random.Random(2)
        done = 0
        while done < 10:
            p = random_poset(rng, 5)
            maxima = p.maximal_elements()
            if len(maxima) != 1:
                continue
            f = random_presheaf(rng, p)
            rep = singular_cohomology(p, f)
            assert rep.invariants(0) == (f.dim(maxima[0]), ())
            assert rep.nonzero_degrees() in ([], [0])
            done += 1

    def test_limit_is_degree_zero(self):
        rng = random.Random(3)
        for _ in range(10):
            p = random_poset(rng, 5)
            f = random_presheaf(rng, p)
            rep = singular_cohomology(p, f)
            assert limit(p, f).invariants == rep.invariants(0)


class TestInducedMaps:
    def test_pullback_identity(self):
        p = hexagon_poset()
        f = constant(p, 1)
        cx = nerve_complex(p, f)
        ident = {e: e for e in p.elements}
        for n in range(cx.lo, cx.hi + 1):
            m = pullback_map(ident, cx, cx, n)
            assert m == IntMatrix.identity(cx.group(n).generators)

    def test_pullback_chain_map_and_functorial(self):
        rng = random.Random(4)
        done = 0
        while done < 12:
            p = random_poset(rng, 4)
            q = random_poset(rng, 4)
            r = random_poset(rng, 4)
            f = random_monotone_map(rng, q, p)   # f: Q -> P
            g = random_monotone_map(rng, r, q)   # g: R -> Q
            if f is None or g is None:
                continue
            sheaf = random_presheaf(rng, p)
            cp = nerve_complex(p, sheaf)
            f_sheaf = Presheaf.build(
                q,
                {x: sheaf.dim(f[x]) for x in q.elements},
                {
                    (a, b): sheaf.restriction(f[a], f[b])
                    for a, b in q.covers
                },
            )
            cq = nerve_complex(q, f_sheaf)
            fg = {x: f[g[x]] for x in r.elements}
            fg_sheaf = Presheaf.build(
                r,
                {x: sheaf.dim(fg[x]) for x in r.elements},
                {
                    (a, b): sheaf.restriction(fg[a], fg[b])
                    for a, b in r.covers
                },
            )
            cr = nerve_complex(r, fg_sheaf)
            top = max(cp.hi, cq.hi, 0)
            for n in range(0, top + 1):
                # chain map: d (f* s) = f* (d s) -- degenerate images break
                # this on the nondegenerate complex, so only check when f is
                # injective on chains; the S-complex variant is exercised
                # through full posets elsewhere.  For injective f:
                if len(set(f.values())) == len(f):
                    lhs = cq.diff(n).matrix @ pullback_map(f, cp, cq, n)
                    rhs = pullback_map(f, cp, cq, n + 1) @ cp.diff(n).matrix
                    assert lhs == rhs
                if (
                    len(set(f.values())) == len(f)
                    and len(set(g.values())) == len(g)
                ):
                    comp = pullback_map(g, cq, cr, n) @ pullback_map(f, cp, cq, n)
                    assert comp == pullback_map(fg, cp, cr, n)
            done += 1

    def test_pushforward_section(self):
        # f: {a} -> 2-chain; pulling back after pushing forward recovers s
        p = two_chain()
        q = one_point()
        fmap = check_monotone({"x": "a"}, q, p)
        fp = constant(p, 1)
        fq = constant(q, 1)
        cp = nerve_complex(p, fp)
        cq = nerve_complex(q, fq)
        push = pushforward_map(fmap, cq, cp, 0)
        pull = pullback_map(fmap, cp, cq, 0)
        assert pull @ push == IntMatrix.identity(1)

    def test_pullback_pushforward_random_injections(self):
        rng = random.Random(5)
        done = 0
        while done < 12:
            p = random_poset(rng, 5)
            sub = sorted(
                rng.sample(p.elements, rng.randrange(1, len(p.elements) + 1))
            )
            q = p.restrict(sub)
            fmap = {e: e for e in q.elements}
            sheaf = random_presheaf(rng, p)
            cp = nerve_complex(p, sheaf)
            cq = nerve_complex(q, sheaf.restrict_to(q))
            top = max(cp.hi, 0)
            for n in range(0, top + 1):
                push = pushforward_map(fmap, cq, cp, n)
                pull = pullback_map(fmap, cp, cq, n)
                k = cq.group(n).generators
                assert pull @ push == IntMatrix.identity(k)
            done += 1

    def test_morphism_induced_identity_and_zero(self):
        p = hexagon_poset()
        f = constant(p, 2)
        cx = nerve_complex(p, f)
        ident = PresheafMorphism.build(
            f, f, {e: IntMatrix.identity(2) for e in p.elements}
        )
        zero = PresheafMorphism.build(
            f, f, {e: IntMatrix.zeros(2, 2) for e in p.elements}
        )
        for n in range(cx.lo, cx.hi + 1):
            m = presheaf_map_on_complex(ident, cx, cx, n)
            assert m == IntMatrix.identity(cx.group(n).generators)
            z = presheaf_map_on_complex(zero, cx, cx, n)
            assert z.is_zero()

    def test_collapse_morphism_is_chain_map(self):
        rng = random.Random(6)
        done = 0
        while done < 8:
            p = random_poset(rng, 5)
            minima = p.minimal_elements()
            if len(minima) != 1:
                continue
            x = minima[0]
            f = random_presheaf(rng, p)
            kappa = collapse_to_value(f, x)
            src = nerve_complex(p, f)
            tgt = nerve_complex(p, kappa.target)
            for n in range(0, max(src.hi, 0) + 1):
                lhs = tgt.diff(n).matrix @ presheaf_map_on_complex(kappa, src, tgt, n)
                rhs = presheaf_map_on_complex(kappa, src, tgt, n + 1) @ src.diff(n).matrix
                assert lhs == rhs
            done += 1

    def test_naturality_square(self):
        # kappa_* commutes with pullback along subposet inclusions
        rng = random.Random(7)
        done = 0
        while done < 8:
            p = random_poset(rng, 5)
            minima = p.minimal_elements()
            if len(minima) != 1:
                continue
            f = random_presheaf(rng, p)
            kappa = collapse_to_value(f, minima[0])
            sub = sorted(
                rng.sample(p.elements, rng.randrange(1, len(p.elements) + 1))
            )
            q = p.restrict(sub)
            inc = {e: e for e in q.elements}
            fsrc_q = f.restrict_to(q)
            ftgt_q = kappa.target.restrict_to(q)
            kappa_q = PresheafMorphism.build(
                fsrc_q, ftgt_q, {e: kappa.component(e) for e in q.elements}
            )
            src_p = nerve_complex(p, f)
            tgt_p = nerve_complex(p, kappa.target)
            src_q = nerve_complex(q, fsrc_q)
            tgt_q = nerve_complex(q, ftgt_q)
            for n in range(0, max(src_p.hi, 0) + 1):
                one = pullback_map(inc, tgt_p, tgt_q, n) @ presheaf_map_on_complex(
                    kappa, src_p, tgt_p, n
                )
                two = presheaf_map_on_complex(
                    kappa_q, src_q, tgt_q, n
                ) @ pullback_map(inc, src_p, src_q, n)
                assert one == two
            done += 1


class TestLongExactSequence:
    def test_empty_subposet(self):
        p = hexagon_poset()
        ok, where = long_exact_sequence_check(p, from_covers([], []), constant(p, 1))
        assert ok, where

    def test_square_circle_interval_pairs(self):
        p = square_circle_poset()
        f = constant(p, 1)
        for x in p.elements:
            closed = p.restrict(p.up_set(x))
            opened = open_interval(p, x)
            ok, where = long_exact_sequence_check(
                closed, opened, f.restrict_to(closed)
            )
            assert ok, (x, where)

    def test_b3_truncation_with_antichain(self):
        b3 = subset_lattice(3)
        p = b3.restrict([e for e in b3.elements if e != "{1,2,3}"])
        q = filtration_level(p, 0)
        ok, where = long_exact_sequence_check(p, q, constant(p, 1))
        assert ok, where

    def test_random_interval_and_filtration_pairs(self):
        rng = random.Random(8)
        done = 0
        while done < 6:
            p = random_poset(rng, 5)
            f = random_presheaf(rng, p)
            x = rng.choice(p.elements)
            closed = p.restrict(p.up_set(x))
            opened = p.restrict([y for y in p.up_set(x) if y != x])
            ok, where = long_exact_sequence_check(
                closed, opened, f.restrict_to(closed)
            )
            assert ok, where
            if p.graded:
                k = rng.randrange(0, p.max_rank + 1)
                ok, where = long_exact_sequence_check(
                    p, filtration_level(p, k), f
                )
                assert ok, where
            done += 1
