"""Shared test helpers: small poset constructors, random-instance
generators, and an independent simplicial-cohomology oracle used to pin
expected values."""

import random
from itertools import combinations

from posetcoh.abelian import (
    AbelianGroup,
    GroupHom,
    IntMatrix,
    subquotient_homology,
)
from posetcoh.poset import Poset, from_covers
from posetcoh.presheaf import Presheaf


def square_circle_poset():
    """Cell structure of the circle with two vertices and two edges."""
    return from_covers(
        ["e1", "e2", "v1", "v2"],
        [("e1", "v1"), ("e1", "v2"), ("e2", "v1"), ("e2", "v2")],
    )


def random_poset(rng: random.Random, max_elements=6) -> Poset:
    """Random finite poset: random DAG on a chainish layout, covers taken
    from the transitive reduction."""
    n = rng.randrange(1, max_elements + 1)
    names = [chr(ord("a") + i) for i in range(n)]
    less = {name: set() for name in names}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.4:
                less[names[i]].add(names[j])
    # transitive closure
    for k in names:
        for i in names:
            if k in less[i]:
                less[i] |= less[k]
    covers = []
    for x in names:
        for y in less[x]:
            if not any(y in less[z] for z in less[x] if z != y):
                covers.append((x, y))
    return from_covers(names, covers)


def random_unimodular(rng: random.Random, n: int) -> IntMatrix:
    m = IntMatrix.identity(n).data.copy()
    for _ in range(2 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i != j:
            m[i] += rng.choice([-1, 1]) * m[j]
    return IntMatrix(m)


def random_presheaf(rng: random.Random, p: Poset, pieces=2, max_dim=2) -> Presheaf:
    """Random functorial presheaf with free values: a direct sum of Yoneda
    presheaves conjugated by a random unimodular change of basis at each
    element.  Path independence holds by construction; the constructor
    re-validates it anyway."""
    summands = []
    for _ in range(pieces):
        x = rng.choice(p.elements)
        k = rng.randrange(0, max_dim + 1)
        summands.append((x, k))
    dims = {
        e: sum(k for x, k in summands if p.leq(e, x)) for e in p.elements
    }
    basis = {e: random_unimodular(rng, dims[e]) for e in p.elements}
    inverse = {}
    for e, b in basis.items():
        # inverse of a unimodular matrix via solving b @ x = e_i
        from posetcoh.abelian import ColumnSolver

        solver = ColumnSolver(b)
        cols = []
        for i in range(dims[e]):
            unit = [0] * dims[e]
            unit[i] = 1
            cols.append(solver.solve(unit))
        inverse[e] = IntMatrix.from_columns(cols, height=dims[e])
    maps = {}
    for a, b in p.covers:
        block = IntMatrix.zeros(dims[a], dims[b])
        roff = 0
        coff = 0
        data = block.data
        for x, k in summands:
            a_in = p.leq(a, x)
            b_in = p.leq(b, x)
            if a_in and b_in:
                for t in range(k):
                    data[roff + t, coff + t] = 1
            if a_in:
                roff += k
            if b_in:
                coff += k
        maps[(a, b)] = basis[a] @ IntMatrix(data) @ inverse[b]
    return Presheaf.build(p, dims, maps)


def random_monotone_map(rng: random.Random, source: Poset, target: Poset):
    """Random order-preserving map, or None when sampling fails."""
    order = sorted(source.elements, key=lambda e: len(source.up_set(e)), reverse=True)
    for _ in range(40):
        fmap = {}
        ok = True
        for x in order:
            lower = [fmap[y] for y in source.covers_below(x) if y in fmap]
            candidates = [
                t
                for t in target.elements
                if all(target.leq(lo, t) for lo in lower)
            ]
            # also respect already-assigned upper bounds
            uppers = [fmap[y] for y in source.covers_above(x) if y in fmap]
            candidates = [
                t for t in candidates if all(target.leq(t, up) for up in uppers)
            ]
            if not candidates:
                ok = False
                break
            fmap[x] = rng.choice(sorted(candidates))
        if ok:
            return fmap
    return None


# -- independent simplicial cochain oracle ------------------------------------

def simplicial_cohomology(facets) -> list[tuple[int, tuple[int, ...]]]:
    """Integer cohomology of a simplicial complex from its facet list, by
    the standard ordered-vertex cochain complex.  Independent of the nerve
    machinery: faces, signs, and coboundaries are built directly here."""
    faces = set()
    for ft in facets:
        vs = tuple(sorted(ft))
        for k in range(1, len(vs) + 1):
            faces.update(combinations(vs, k))
    by_dim = {}
    for f in faces:
        by_dim.setdefault(len(f) - 1, []).append(f)
    for d in by_dim:
        by_dim[d].sort()
    top = max(by_dim)
    groups = {
        d: AbelianGroup.free(len(by_dim.get(d, []))) for d in range(top + 1)
    }
    homs = {}
    for d in range(top):
        rows = by_dim.get(d + 1, [])
        cols = by_dim.get(d, [])
        cindex = {f: i for i, f in enumerate(cols)}
        mat = IntMatrix.zeros(len(rows), len(cols)).data
        for r, f in enumerate(rows):
            for i in range(len(f)):
                sub = f[:i] + f[i + 1:]
                mat[r, cindex[sub]] += (-1) ** i
        homs[d] = GroupHom(groups[d], groups[d + 1], IntMatrix(mat))
    out = []
    for d in range(top + 1):
        fin = homs.get(d - 1) or GroupHom.zero(AbelianGroup.zero(), groups[d])
        fout = homs.get(d) or GroupHom.zero(groups[d], AbelianGroup.zero())
        out.append(subquotient_homology(fin, fout).invariants)
    return out
