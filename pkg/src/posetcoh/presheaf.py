"""Presheaves of finitely generated free abelian groups on a poset.

A presheaf assigns a free group Z^dim(x) to each element and an integer
matrix to each cover x ≺ y (the restriction F(y) -> F(x), with dim(x) rows
and dim(y) columns).  Functoriality is validated eagerly: for every pair
x < y all saturated chains are composed and compared, which pins down the
unique restriction map F^y_x.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .abelian import IntMatrix
from .errors import InvalidInput
from .poset import Poset


@dataclass(frozen=True)
class PathMismatch:
    """Two saturated chains from y down to x whose composites differ."""

    x: str
    y: str
    chain_a: tuple[str, ...]
    chain_b: tuple[str, ...]

    def __str__(self):
        return (
            f"restriction {self.y} -> {self.x} is path dependent: "
            f"{' < '.join(self.chain_a)} vs {' < '.join(self.chain_b)}"
        )


@dataclass(frozen=True, eq=False)
class Presheaf:
    base: Poset
    dims: dict[str, int]
    cover_maps: dict[tuple[str, str], IntMatrix]
    _cache: dict = field(default_factory=dict, repr=False)

    @classmethod
    def build(cls, base: Poset, dims, cover_maps, validate=True) -> "Presheaf":
        dims = {str(k): int(v) for k, v in dims.items()}
        if set(dims) != set(base.elements):
            raise InvalidInput("presheaf dims must cover every element")
        if any(v < 0 for v in dims.values()):
            raise InvalidInput("presheaf dims must be nonnegative")
        maps = {}
        for (x, y), m in cover_maps.items():
            x, y = str(x), str(y)
            if (x, y) not in set(base.covers):
                raise InvalidInput(f"({x}, {y}) is not a cover of the base")
            if not isinstance(m, IntMatrix):
                m = IntMatrix.from_rows(m, width=dims[y])
            if m.shape != (dims[x], dims[y]):
                raise InvalidInput(
                    f"map on cover ({x}, {y}) must be {dims[x]}x{dims[y]}"
                )
            maps[(x, y)] = m
        missing = set(base.covers) - set(maps)
        if missing:
            raise InvalidInput(f"missing cover maps: {sorted(missing)}")
        sheaf = cls(base, dims, maps)
        if validate:
            report = validate_presheaf(sheaf)
            if report is not None:
                raise InvalidInput(str(report))
        return sheaf

    def dim(self, x) -> int:
        return self.dims[x]

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def restriction(self, x, y) -> IntMatrix:
        """The restriction matrix F(y) -> F(x) for x <= y."""
        x, y = str(x), str(y)
        if not self.base.leq(x, y):
            raise InvalidInput(f"restriction needs {x} <= {y}")
        key = (x, y)
        got = self._cache.get(key)
        if got is None:
            got = self._compose_chain(self._some_chain(x, y))
            self._cache[key] = got
        return got

    def _some_chain(self, x, y):
        """Lexicographically first saturated chain from x up to y."""
        chain = [x]
        while chain[-1] != y:
            step = next(
                z
                for z in self.base.covers_above(chain[-1])
                if self.base.leq(z, y)
            )
            chain.append(step)
        return tuple(chain)

    def _compose_chain(self, chain) -> IntMatrix:
        # chain = (x, ..., y) ascending; composite maps F(y) -> F(x)
        if len(chain) == 1:
            return IntMatrix.identity(self.dims[chain[0]])
        m = self.cover_maps[(chain[0], chain[1])]
        for i in range(1, len(chain) - 1):
            m = m @ self.cover_maps[(chain[i], chain[i + 1])]
        return m

    def restrict_to(self, sub: Poset) -> "Presheaf":
        """Induced presheaf on an induced subposet.  Covers of the subposet
        need not be covers of the base; their maps are the composite
        restrictions, so functoriality carries over."""
        for e in sub.elements:
            if e not in self.dims:
                raise InvalidInput(f"unknown element {e}")
        return Presheaf(
            sub,
            {e: self.dims[e] for e in sub.elements},
            {(a, b): self.restriction(a, b) for a, b in sub.covers},
        )

    def to_json_dict(self) -> dict:
        return {
            "dims": {e: self.dims[e] for e in self.base.elements},
            "maps": {
                f"{x}<{y}": self.cover_maps[(x, y)].to_rows()
                for x, y in self.base.covers
            },
        }

    @classmethod
    def from_json_dict(cls, base: Poset, d) -> "Presheaf":
        if not isinstance(d, dict) or "dims" not in d or "maps" not in d:
            raise InvalidInput("presheaf JSON needs 'dims' and 'maps'")
        maps = {}
        for key, rows in d["maps"].items():
            if "<" not in key:
                raise InvalidInput(f"bad cover key {key!r}")
            x, y = key.split("<", 1)
            maps[(x, y)] = rows
        return cls.build(base, d["dims"], maps)


def _saturated_chains(base: Poset, x, y):
    """All saturated chains x = c0 ≺ c1 ≺ ... ≺ ck = y, in lex order."""
    out = []

    def extend(chain):
        last = chain[-1]
        if last == y:
            out.append(tuple(chain))
            return
        for z in base.covers_above(last):
            if base.leq(z, y):
                chain.append(z)
                extend(chain)
                chain.pop()

    extend([x])
    return out


def validate_presheaf(f: Presheaf) -> PathMismatch | None:
    """Compare composites along all saturated chains for every pair x < y;
    returns the first mismatch, or None when the presheaf is functorial."""
    base = f.base
    for x in base.elements:
        for y in sorted(base.up_set(x)):
            if y == x:
                continue
            chains = _saturated_chains(base, x, y)
            if len(chains) < 2:
                continue
            first = f._compose_chain(chains[0])
            for other in chains[1:]:
                if f._compose_chain(other) != first:
                    return PathMismatch(x, y, chains[0], other)
    return None


def constant(p: Poset, k: int) -> Presheaf:
    """The constant presheaf with value Z^k and identity restrictions."""
    if k < 0:
        raise InvalidInput("constant presheaf needs k >= 0")
    eye = IntMatrix.identity(k)
    return Presheaf(
        p, {e: k for e in p.elements}, {c: eye for c in p.covers}
    )


def yoneda(p: Poset, x, k: int = 1) -> Presheaf:
    """Z^k on the down-set of x with identity restrictions, zero elsewhere."""
    x = str(x)
    if x not in set(p.elements):
        raise InvalidInput(f"unknown element {x}")
    down = {e for e in p.elements if p.leq(e, x)}
    dims = {e: (k if e in down else 0) for e in p.elements}
    maps = {}
    for a, b in p.covers:
        if a in down and b in down:
            maps[(a, b)] = IntMatrix.identity(k)
        else:
            maps[(a, b)] = IntMatrix.zeros(dims[a], dims[b])
    return Presheaf(p, dims, maps)


@dataclass(frozen=True, eq=False)
class PresheafMorphism:
    """Natural transformation: one matrix per element, commuting with the
    restriction maps on every cover."""

    source: Presheaf
    target: Presheaf
    components: dict[str, IntMatrix]

    @classmethod
    def build(cls, source, target, components, validate=True):
        if source.base is not target.base and set(source.base.elements) != set(
            target.base.elements
        ):
            raise InvalidInput("morphism needs presheaves on the same base")
        comps = {}
        for e in source.base.elements:
            m = components[e]
            if not isinstance(m, IntMatrix):
                m = IntMatrix.from_rows(m, width=source.dim(e))
            if m.shape != (target.dim(e), source.dim(e)):
                raise InvalidInput(f"component at {e} has wrong shape")
            comps[e] = m
        morphism = cls(source, target, comps)
        if validate and not morphism.is_natural():
            raise InvalidInput("components do not commute with restrictions")
        return morphism

    def is_natural(self) -> bool:
        for x, y in self.source.base.covers:
            lhs = self.components[x] @ self.source.cover_maps[(x, y)]
            rhs = self.target.cover_maps[(x, y)] @ self.components[y]
            if lhs != rhs:
                return False
        return True

    def component(self, x) -> IntMatrix:
        return self.components[str(x)]


def collapse_to_value(f: Presheaf, x) -> PresheafMorphism:
    """The canonical morphism F -> ΔF(x) on the closed interval above x,
    with component F^y_x at each y >= x."""
    x = str(x)
    base = f.base
    if set(base.elements) != set(base.up_set(x)):
        raise InvalidInput("collapse_to_value expects the interval above x")
    target = constant(base, f.dim(x))
    comps = {y: f.restriction(x, y) for y in base.elements}
    return PresheafMorphism.build(f, target, comps)
