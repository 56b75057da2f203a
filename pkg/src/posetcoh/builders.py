"""Constructors for the example poset families: face posets of simplicial
complexes, rooted trees, Boolean and partition lattices, the Bruhat order
with canonical chains and signs, cell posets of suspended simplices, and
the Khovanov poset/presheaf of a link diagram.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product

from .abelian import IntMatrix
from .errors import InvalidInput, PreconditionError
from .poset import Poset, from_covers
from .presheaf import Presheaf


# -- simplicial complexes ------------------------------------------------------

def _face_id(face) -> str:
    return ",".join(sorted(face))


def face_poset(facets, adjoin_minimum: bool = False) -> Poset:
    """Cell poset of a simplicial complex: faces ordered by reverse
    inclusion, so corank(face) = dim(face).  Optionally adjoins a formal
    minimum below the facets."""
    clean = []
    for ft in facets:
        vs = frozenset(str(v) for v in ft)
        if not vs:
            raise InvalidInput("empty facet")
        clean.append(vs)
    faces = set()
    for ft in clean:
        for k in range(1, len(ft) + 1):
            faces.update(frozenset(c) for c in combinations(sorted(ft), k))
    elements = {f: _face_id(f) for f in faces}
    covers = []
    for f in faces:
        for g in faces:
            if g < f and len(f) == len(g) + 1:
                covers.append((elements[f], elements[g]))
    ids = list(elements.values())
    if adjoin_minimum:
        bottom = "0hat"
        if bottom in ids:
            raise InvalidInput("vertex label 0hat collides with the minimum")
        ids.append(bottom)
        maximal_faces = [f for f in faces if not any(f < g for g in faces)]
        covers.extend((bottom, elements[f]) for f in maximal_faces)
    return from_covers(ids, covers)


RP2_FACETS = (
    ("1", "2", "5"), ("1", "2", "6"), ("1", "3", "4"), ("1", "3", "6"),
    ("1", "4", "5"), ("2", "3", "4"), ("2", "3", "5"), ("2", "4", "6"),
    ("3", "5", "6"), ("4", "5", "6"),
)


def rp2_poset() -> Poset:
    """Face poset of the 6-vertex projective plane with a formal minimum:
    the torsion example (its top local group is Z/2)."""
    return face_poset(RP2_FACETS, adjoin_minimum=True)


def circle_poset() -> Poset:
    """Cell poset of the circle with two vertices and two edges."""
    return from_covers(
        ["e1", "e2", "v1", "v2"],
        [("e1", "v1"), ("e1", "v2"), ("e2", "v1"), ("e2", "v2")],
    )


# -- trees ---------------------------------------------------------------------

def tree_poset(depth: int, branching: int) -> Poset:
    """Rooted tree ordered away from the root; the root gets `branching`
    children and every deeper internal node branching - 1, so internal
    vertices all have the same valence.  Leaves sit at rank `depth`."""
    if depth < 1 or branching < 2:
        raise PreconditionError("tree_poset needs depth >= 1, branching >= 2")
    elements = ["0"]
    covers = []
    frontier = ["0"]
    for level in range(depth):
        kids = branching if level == 0 else branching - 1
        nxt = []
        for node in frontier:
            for i in range(1, kids + 1):
                child = f"{node}.{i}"
                elements.append(child)
                covers.append((node, child))
                nxt.append(child)
        frontier = nxt
    return from_covers(elements, covers)


# -- classical lattices ----------------------------------------------------------

def boolean_lattice(n: int) -> Poset:
    if not 0 <= n <= 6:
        raise PreconditionError("boolean_lattice supports 0 <= n <= 6")
    names = {}
    elements = []
    for k in range(n + 1):
        for combo in combinations(range(1, n + 1), k):
            name = "{" + ",".join(map(str, combo)) + "}"
            names[combo] = name
            elements.append(name)
    covers = []
    for combo, name in names.items():
        for extra in range(1, n + 1):
            if extra not in combo:
                covers.append((name, names[tuple(sorted(combo + (extra,)))]))
    return from_covers(elements, covers)


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for p in _set_partitions(rest):
        for i in range(len(p)):
            yield p[:i] + [sorted([first] + p[i])] + p[i + 1:]
        yield [[first]] + p


def partition_lattice(n: int) -> Poset:
    if not 1 <= n <= 6:
        raise PreconditionError("partition_lattice supports 1 <= n <= 6")

    def name(blocks):
        return "|".join(sorted("".join(map(str, sorted(b))) for b in blocks))

    items = list(range(1, n + 1))
    elements = sorted({name(p) for p in _set_partitions(items)})
    covers = set()
    for p in _set_partitions(items):
        blocks = [sorted(b) for b in p]
        for i in range(len(blocks)):
            for j in range(i + 1, len(blocks)):
                merged = [b for k, b in enumerate(blocks) if k not in (i, j)]
                merged.append(sorted(blocks[i] + blocks[j]))
                covers.add((name(blocks), name(merged)))
    return from_covers(elements, sorted(covers))


def remove_top(p: Poset) -> Poset:
    tops = p.maximal_elements()
    if len(tops) != 1:
        raise PreconditionError("remove_top needs a unique maximum")
    return p.restrict([e for e in p.elements if e != tops[0]])


def semimodular_inequality_holds(p: Poset) -> bool:
    """rk(join) + rk(meet) <= rk(x) + rk(y) over all pairs of a lattice."""
    p.require_graded("semimodular check")
    elems = p.elements

    def join(x, y):
        uppers = [z for z in elems if p.leq(x, z) and p.leq(y, z)]
        least = [z for z in uppers if all(p.leq(z, w) for w in uppers)]
        return least[0] if len(least) == 1 else None

    def meet(x, y):
        lowers = [z for z in elems if p.leq(z, x) and p.leq(z, y)]
        greatest = [z for z in lowers if all(p.leq(w, z) for w in lowers)]
        return greatest[0] if len(greatest) == 1 else None

    for x in elems:
        for y in elems:
            j, m = join(x, y), meet(x, y)
            if j is None or m is None:
                return False
            if p.rank[j] + p.rank[m] > p.rank[x] + p.rank[y]:
                return False
    return True


# -- Bruhat order ----------------------------------------------------------------

def _pair_key(pair):
    # total order (n, n-1) > ... > (n, 2) > ... > (3, 2) > (n, 1) > ... > (2, 1):
    # larger second coordinate wins, then larger first.
    i, j = pair
    return (j, i)


@dataclass(frozen=True)
class BruhatOrder:
    """The Bruhat order on nontrivial permutations, with the swap-pair
    structure, canonical chains built from minimal swap pairs, and the
    resulting incidence signs."""

    n: int
    poset: Poset
    _signs: dict = field(repr=False)

    def swap_pairs(self, perm: str) -> list[tuple[int, int]]:
        return _swap_pairs(perm)

    def minimal_swap_pair(self, perm: str) -> tuple[int, int]:
        return min(_swap_pairs(perm), key=_pair_key)

    def apply_swap(self, perm: str, pair) -> str:
        return _apply_swap(perm, pair)

    def canonical_chain(self, perm: str) -> tuple[str, ...]:
        """Repeatedly interchange the minimal swap pair until reaching a
        transposition (corank 0)."""
        chain = [perm]
        while _length(chain[-1]) > 1:
            chain.append(
                _apply_swap(chain[-1], self.minimal_swap_pair(chain[-1]))
            )
        return tuple(chain)

    def canonical_generators(self) -> dict[str, tuple[str, ...]]:
        return {x: self.canonical_chain(x) for x in self.poset.elements}

    def sign_table(self) -> dict[tuple[str, str], int]:
        return dict(self._signs)


def _length(perm: str) -> int:
    vals = [int(c) for c in perm]
    return sum(
        1
        for i in range(len(vals))
        for j in range(i + 1, len(vals))
        if vals[i] > vals[j]
    )


def _swap_pairs(perm: str) -> list[tuple[int, int]]:
    vals = [int(c) for c in perm]
    out = []
    for a in range(len(vals)):
        for b in range(a + 1, len(vals)):
            i, j = vals[a], vals[b]
            if i > j and all(k < j or k > i for k in vals[a + 1:b]):
                out.append((i, j))
    return out


def _apply_swap(perm: str, pair) -> str:
    i, j = pair
    out = list(perm)
    a, b = perm.index(str(i)), perm.index(str(j))
    out[a], out[b] = out[b], out[a]
    return "".join(out)


def bruhat_poset(n: int) -> BruhatOrder:
    if not 2 <= n <= 5:
        raise PreconditionError("bruhat_poset supports 2 <= n <= 5")
    perms = ["".join(map(str, p)) for p in product(*[range(1, n + 1)] * n)]
    perms = [p for p in perms if len(set(p)) == n]
    identity = "".join(map(str, range(1, n + 1)))
    elements = sorted(p for p in perms if p != identity)
    covers = []
    for x in elements:
        for pair in _swap_pairs(x):
            y = _apply_swap(x, pair)
            if y != identity:
                covers.append((x, y))
    top_len = n * (n - 1) // 2
    rank = {x: top_len - _length(x) for x in elements}
    poset = from_covers(elements, covers, rank=rank)
    signs = _bruhat_signs(poset, elements)
    return BruhatOrder(n=n, poset=poset, _signs=signs)


def _bruhat_signs(poset: Poset, elements) -> dict[tuple[str, str], int]:
    """Induction on corank: a minimal swap gives +1; at corank 1 any other
    swap gives -1; higher coranks resolve through a diamond using the sign
    relation [x,y][y,z] = -[x,y'][y',z]."""
    signs = {}
    by_corank = {}
    for x in elements:
        by_corank.setdefault(poset.corank(x), []).append(x)
    for c in sorted(by_corank):
        if c == 0:
            continue
        for x in sorted(by_corank[c]):
            y_min = _apply_swap(x, min(_swap_pairs(x), key=_pair_key))
            pending = set()
            for y in poset.covers_above(x):
                if y == y_min:
                    signs[(x, y)] = 1
                elif c == 1:
                    signs[(x, y)] = -1
                else:
                    pending.add(y)
            while pending:
                progressed = False
                for y in sorted(pending):
                    resolved = None
                    for z in poset.covers_above(y):
                        middles = [
                            w
                            for w in poset.covers_above(x)
                            if w != y and poset.leq(w, z) and z in poset.covers_above(w)
                        ]
                        for w in middles:
                            if (x, w) in signs and (y, z) in signs and (w, z) in signs:
                                resolved = (
                                    -signs[(x, w)] * signs[(w, z)] * signs[(y, z)]
                                )
                                break
                        if resolved is not None:
                            break
                    if resolved is not None:
                        signs[(x, y)] = resolved
                        pending.discard(y)
                        progressed = True
                        break
                if not progressed:
                    raise InvalidInput(
                        f"sign induction stuck below {x}"
                    )
    return signs


# -- suspension of a simplex and the Khovanov presheaf ---------------------------

APEX_A = "top"
APEX_B = "top'"


def _subset_id(subset) -> str:
    return "".join(str(i) for i in sorted(subset))


def suspension_simplex_poset(n: int) -> Poset:
    """Cell poset of the suspension of an (n-1)-simplex: the nonempty
    subsets of n symbols under reverse inclusion, with two formal maxima
    covering every singleton."""
    if not 0 <= n <= 6:
        raise PreconditionError("suspension_simplex_poset supports 0 <= n <= 6")
    subsets = []
    for k in range(1, n + 1):
        subsets.extend(frozenset(c) for c in combinations(range(1, n + 1), k))
    elements = [_subset_id(s) for s in subsets] + [APEX_A, APEX_B]
    covers = []
    for s in subsets:
        for t in subsets:
            if t < s and len(s) == len(t) + 1:
                covers.append((_subset_id(s), _subset_id(t)))
        if len(s) == 1:
            covers.append((_subset_id(s), APEX_A))
            covers.append((_subset_id(s), APEX_B))
    if n == 0:
        return from_covers(elements, [])
    return from_covers(elements, covers)


def parse_pd(text: str) -> list[tuple[int, int, int, int]]:
    """One crossing per line: Xa,b,c,d with strand labels."""
    code = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not line[0] in "Xx":
            raise InvalidInput(f"line {lineno}: expected Xa,b,c,d")
        try:
            parts = tuple(int(v) for v in line[1:].split(","))
        except ValueError:
            raise InvalidInput(f"line {lineno}: bad strand labels") from None
        if len(parts) != 4:
            raise InvalidInput(f"line {lineno}: need exactly four strands")
        code.append(parts)
    return code


def _validate_pd(pd):
    counts = {}
    for crossing in pd:
        for s in crossing:
            counts[s] = counts.get(s, 0) + 1
    bad = sorted(s for s, c in counts.items() if c != 2)
    if bad:
        raise InvalidInput(f"strands {bad} do not occur exactly twice")


def _resolution_circles(pd, chosen) -> list[frozenset]:
    """Circles of the resolution smoothing crossing i the 1-way iff i is in
    `chosen` (1-based indices); each circle is its set of strand labels,
    listed by minimum label."""
    parent = {}

    def find(a):
        parent.setdefault(a, a)
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for idx, (a, b, c, d) in enumerate(pd, 1):
        if idx in chosen:
            union(a, b)
            union(c, d)
        else:
            union(a, d)
            union(b, c)
    groups = {}
    for s in parent:
        groups.setdefault(find(s), set()).add(s)
    return sorted((frozenset(g) for g in groups.values()), key=min)


_UNIT, _X = 0, 1


def _tensor_index(bits) -> int:
    idx = 0
    for b in bits:
        idx = 2 * idx + b
    return idx


def _edge_matrix(pd, subset, crossing) -> IntMatrix:
    """Matrix of the multiplication/comultiplication cobordism from the
    `subset` resolution to subset + {crossing}, on tensor factors ordered by
    least strand label."""
    strands = set(pd[crossing - 1])
    before = _resolution_circles(pd, subset)
    after = _resolution_circles(pd, subset | {crossing})
    touched_b = [c for c in before if c & strands]
    touched_a = [c for c in after if c & strands]
    quiet_b = [c for c in before if not (c & strands)]
    quiet_a = [c for c in after if not (c & strands)]
    if sorted(quiet_b, key=min) != sorted(quiet_a, key=min):
        raise InvalidInput("resolution change moved an untouched circle")
    rows, cols = 1 << len(after), 1 << len(before)
    mat = IntMatrix.zeros(rows, cols).data
    apos = {c: i for i, c in enumerate(after)}
    bpos = {c: i for i, c in enumerate(before)}
    for bits in product((0, 1), repeat=len(before)):
        src = _tensor_index(bits)
        out_bits = [None] * len(after)
        for c in quiet_b:
            out_bits[apos[c]] = bits[bpos[c]]
        if len(touched_b) == 2 and len(touched_a) == 1:
            u, v = (bits[bpos[c]] for c in touched_b)
            # merge: 1·1 = 1, 1·X = X·1 = X, X·X = 0
            if u == _X and v == _X:
                continue
            out_bits[apos[touched_a[0]]] = _X if (u == _X or v == _X) else _UNIT
            mat[_tensor_index(out_bits), src] += 1
        elif len(touched_b) == 1 and len(touched_a) == 2:
            u = bits[bpos[touched_b[0]]]
            i1, i2 = (apos[c] for c in touched_a)
            if u == _UNIT:
                # split of the unit: 1 ⊗ X + X ⊗ 1
                for first, second in ((_UNIT, _X), (_X, _UNIT)):
                    out_bits[i1], out_bits[i2] = first, second
                    mat[_tensor_index(out_bits), src] += 1
            else:
                out_bits[i1] = out_bits[i2] = _X
                mat[_tensor_index(out_bits), src] += 1
        else:
            raise InvalidInput(
                f"crossing {crossing} neither merges nor splits"
            )
    return IntMatrix(mat)


def _square_commutes(f: Presheaf) -> None:
    """Functoriality via length-2 intervals; equivalent to full path
    independence on these posets, whose maximal chains are connected by
    square moves, and much cheaper on larger cubes."""
    p = f.base
    for x in p.elements:
        for y in p.up_set(x):
            if y == x or p.rank[y] - p.rank[x] != 2:
                continue
            composites = []
            for z in p.covers_above(x):
                if p.lt(z, y):
                    composites.append(
                        f.cover_maps[(x, z)] @ f.cover_maps[(z, y)]
                    )
            if any(c != composites[0] for c in composites[1:]):
                raise InvalidInput(
                    f"Khovanov presheaf square at ({x}, {y}) does not commute"
                )


def khovanov(pd) -> tuple[Poset, Presheaf]:
    """The suspension cell poset of a link diagram together with the
    Khovanov presheaf: each resolution carries V^(number of circles) for V
    free of rank two; cover maps merge or split circles via the rank-two
    Frobenius algebra."""
    pd = [tuple(int(v) for v in crossing) for crossing in pd]
    if any(len(c) != 4 for c in pd):
        raise InvalidInput("each crossing needs four strand labels")
    _validate_pd(pd)
    n = len(pd)
    if n > 8:
        raise PreconditionError("khovanov supports at most 8 crossings")
    poset = suspension_simplex_poset(n)
    subsets = {}
    for k in range(1, n + 1):
        for combo in combinations(range(1, n + 1), k):
            subsets[_subset_id(combo)] = frozenset(combo)
    dims = {}
    for e in poset.elements:
        if e in (APEX_A, APEX_B):
            dims[e] = 1 << len(_resolution_circles(pd, frozenset()))
        else:
            dims[e] = 1 << len(_resolution_circles(pd, subsets[e]))
    maps = {}
    for x, y in poset.covers:
        if y in (APEX_A, APEX_B):
            base = frozenset()
            crossing = min(subsets[x])
        else:
            base = subsets[y]
            (crossing,) = subsets[x] - subsets[y]
        maps[(x, y)] = _edge_matrix(pd, base, crossing)
    sheaf = Presheaf.build(poset, dims, maps, validate=False)
    _square_commutes(sheaf)
    return poset, sheaf
