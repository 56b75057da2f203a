"""Finite posets with grading, corank, intervals, filtration, and the
structural predicates used by the cellular theory.

Elements are opaque string identifiers; the lexicographic order on
identifiers fixes every downstream matrix ordering, so reports are
deterministic.  Ranks, when a consistent rank function exists, are
normalized so each connected component of the cover graph has minimum
rank 0; corank is measured against the global maximum rank.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .errors import InvalidInput, PreconditionError, UngradedPosetError


@dataclass(frozen=True, eq=False)
class Poset:
    elements: tuple[str, ...]
    covers: tuple[tuple[str, str], ...]
    rank: dict[str, int] | None
    _up: dict[str, frozenset] = field(repr=False)  # x -> {y : x <= y}

    # -- construction ------------------------------------------------------

    @classmethod
    def from_covers(cls, elements, covers, rank=None) -> "Poset":
        """Build a poset from elements and cover pairs (x, y) meaning x ≺ y.

        Rejects cover pairs referencing unknown elements, cyclic cover
        relations, and redundant covers (x, y) with some x < z < y.  A rank
        function is inferred when one exists; otherwise the poset is marked
        ungraded and grading-dependent operations will refuse it.
        """
        elems = [str(e) for e in elements]
        if len(set(elems)) != len(elems):
            raise InvalidInput("duplicate element identifiers")
        elems = tuple(sorted(elems))
        eset = set(elems)
        cov = set()
        for x, y in covers:
            x, y = str(x), str(y)
            if x not in eset or y not in eset:
                raise InvalidInput(f"cover ({x}, {y}) references unknown element")
            if x == y:
                raise InvalidInput(f"cover ({x}, {x}) is a cycle")
            cov.add((x, y))

        above = {e: {e} for e in elems}  # reflexive-transitive closure
        order = _toposort(elems, cov)
        for x in reversed(order):
            for a, b in cov:
                if a == x:
                    above[x].update(above[b])

        for x, y in cov:
            for z in above[x]:
                if z != x and z != y and y in above[z]:
                    raise InvalidInput(
                        f"cover ({x}, {y}) is redundant: {x} < {z} < {y}"
                    )

        inferred = _infer_rank(elems, cov)
        if rank is not None:
            rank = {str(k): int(v) for k, v in rank.items()}
            if set(rank) != eset:
                raise InvalidInput("rank must assign every element")
            for x, y in cov:
                if rank[y] != rank[x] + 1:
                    raise InvalidInput(
                        f"declared rank is not graded across cover ({x}, {y})"
                    )
            shift = min(rank.values(), default=0)
            rank = {k: v - shift for k, v in rank.items()}
        else:
            rank = inferred
        return cls(
            elements=elems,
            covers=tuple(sorted(cov)),
            rank=rank,
            _up={e: frozenset(s) for e, s in above.items()},
        )

    # -- queries -----------------------------------------------------------

    def __len__(self):
        return len(self.elements)

    def leq(self, x, y) -> bool:
        return y in self._up[x]

    def lt(self, x, y) -> bool:
        return x != y and y in self._up[x]

    def up_set(self, x) -> frozenset:
        return self._up[x]

    @cached_property
    def _covers_up(self) -> dict[str, tuple[str, ...]]:
        out = {e: [] for e in self.elements}
        for x, y in self.covers:
            out[x].append(y)
        return {e: tuple(sorted(v)) for e, v in out.items()}

    @cached_property
    def _covers_down(self) -> dict[str, tuple[str, ...]]:
        out = {e: [] for e in self.elements}
        for x, y in self.covers:
            out[y].append(x)
        return {e: tuple(sorted(v)) for e, v in out.items()}

    def covers_above(self, x) -> tuple[str, ...]:
        return self._covers_up[x]

    def covers_below(self, x) -> tuple[str, ...]:
        return self._covers_down[x]

    def maximal_elements(self) -> tuple[str, ...]:
        return tuple(e for e in self.elements if not self._covers_up[e])

    def minimal_elements(self) -> tuple[str, ...]:
        return tuple(e for e in self.elements if not self._covers_down[e])

    @property
    def graded(self) -> bool:
        return self.rank is not None

    def require_graded(self, what="operation"):
        if self.rank is None:
            raise UngradedPosetError(f"{what} needs a graded poset")

    @cached_property
    def max_rank(self) -> int:
        self.require_graded("max_rank")
        return max(self.rank.values(), default=0)

    def corank(self, x) -> int:
        self.require_graded("corank")
        return self.max_rank - self.rank[x]

    @cached_property
    def longest_chain_degree(self) -> int:
        """Degree of the longest strict chain (#elements - 1); -1 if empty."""
        if not self.elements:
            return -1
        depth = {}
        for e in _toposort(self.elements, set(self.covers)):
            depth[e] = max(
                (depth[c] + 1 for c in self._covers_down[e]), default=0
            )
        return max(depth.values())

    # -- derived posets ----------------------------------------------------

    def restrict(self, subset) -> "Poset":
        """Induced subposet: the order is inherited, covers are recomputed."""
        sub = sorted(set(map(str, subset)))
        for e in sub:
            if e not in self._up:
                raise InvalidInput(f"unknown element {e}")
        cov = []
        for x in sub:
            for y in sub:
                if self.lt(x, y) and not any(
                    self.lt(x, z) and self.lt(z, y) for z in sub
                ):
                    cov.append((x, y))
        return Poset.from_covers(sub, cov)

    def is_induced_subposet(self, q: "Poset") -> bool:
        if not set(q.elements) <= set(self.elements):
            return False
        for x in q.elements:
            for y in q.elements:
                if q.leq(x, y) != self.leq(x, y):
                    return False
        return True

    def to_json_dict(self) -> dict:
        d = {
            "elements": list(self.elements),
            "covers": [list(c) for c in self.covers],
        }
        if self.rank is not None:
            d["rank"] = {e: self.rank[e] for e in self.elements}
        return d

    @classmethod
    def from_json_dict(cls, d) -> "Poset":
        if not isinstance(d, dict) or "elements" not in d or "covers" not in d:
            raise InvalidInput("poset JSON needs 'elements' and 'covers'")
        return cls.from_covers(d["elements"], d["covers"], d.get("rank"))


def _toposort(elements, covers):
    out = {e: [] for e in elements}
    indeg = {e: 0 for e in elements}
    for x, y in covers:
        out[x].append(y)
        indeg[y] += 1
    ready = sorted(e for e in elements if indeg[e] == 0)
    order = []
    while ready:
        e = ready.pop()
        order.append(e)
        for y in sorted(out[e]):
            indeg[y] -= 1
            if indeg[y] == 0:
                ready.append(y)
    if len(order) != len(elements):
        raise InvalidInput("cover relation contains a cycle")
    return order


def _infer_rank(elements, covers):
    """Solve rank(y) = rank(x) + 1 over the cover graph; None if inconsistent.

    Each connected component is shifted so its minimum rank is 0.
    """
    adj = {e: [] for e in elements}
    for x, y in covers:
        adj[x].append((y, 1))
        adj[y].append((x, -1))
    rank = {}
    for root in elements:
        if root in rank:
            continue
        rank[root] = 0
        component = [root]
        queue = [root]
        while queue:
            e = queue.pop()
            for other, step in adj[e]:
                want = rank[e] + step
                if other in rank:
                    if rank[other] != want:
                        return None
                else:
                    rank[other] = want
                    component.append(other)
                    queue.append(other)
        low = min(rank[e] for e in component)
        if low:
            for e in component:
                rank[e] -= low
    return rank


def from_covers(elements, covers, rank=None) -> Poset:
    return Poset.from_covers(elements, covers, rank)


def filtration_level(p: Poset, k: int) -> Poset:
    """The induced subposet of elements with corank at most k."""
    p.require_graded("filtration_level")
    return p.restrict([e for e in p.elements if p.corank(e) <= k])


def open_interval(p: Poset, x) -> Poset:
    if str(x) not in set(p.elements):
        raise InvalidInput(f"unknown element {x}")
    return p.restrict([y for y in p.up_set(x) if y != x])


def closed_interval(p: Poset, x) -> Poset:
    if str(x) not in set(p.elements):
        raise InvalidInput(f"unknown element {x}")
    return p.restrict(p.up_set(x))


def mobius(p: Poset, x, y) -> int:
    """Möbius function via μ(x,x) = 1,  μ(x,y) = -Σ_{x≤z<y} μ(x,z)."""
    x, y = str(x), str(y)
    if x not in set(p.elements) or y not in set(p.elements):
        raise InvalidInput("unknown element")
    if not p.leq(x, y):
        raise PreconditionError(f"mobius needs {x} <= {y}")
    memo = {}

    def mu(z):
        if z == x:
            return 1
        got = memo.get(z)
        if got is None:
            got = -sum(mu(w) for w in p.up_set(x) if p.leq(w, z) and w != z)
            memo[z] = got
        return got

    return mu(y)


def has_diamond_property(p: Poset) -> bool:
    """Every x < y two rank levels apart has exactly two elements between."""
    p.require_graded("has_diamond_property")
    for x in p.elements:
        for y in p.up_set(x):
            if y != x and p.rank[y] - p.rank[x] == 2:
                middles = sum(
                    1 for z in p.up_set(x) if z != x and z != y and p.lt(z, y)
                )
                if middles != 2:
                    return False
    return True


def diamonds(p: Poset):
    """All (x, (z1, z2), y) with x < y of rank difference 2 and exactly the
    two middles z1 < z2 (identifier order)."""
    p.require_graded("diamonds")
    out = []
    for x in p.elements:
        for y in sorted(p.up_set(x)):
            if y != x and p.rank[y] - p.rank[x] == 2:
                mids = tuple(
                    sorted(
                        z
                        for z in p.up_set(x)
                        if z != x and z != y and p.lt(z, y)
                    )
                )
                if len(mids) == 2:
                    out.append((x, mids, y))
    return out
