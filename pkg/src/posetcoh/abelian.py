"""Exact integer linear algebra and finitely presented abelian groups.

Everything downstream (cochain groups, differentials, cohomology) reduces to
the primitives here: Hermite and Smith normal forms over Z, kernel lattices,
lattice membership, and homology of a two-step sequence of finitely
presented groups.  All arithmetic is exact; matrices hold arbitrary-precision
Python ints in numpy object arrays.  A matrix represents a homomorphism from
Z^cols to Z^rows acting on column vectors, so composition g∘f is the matrix
product G @ F.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import _backend
from . import _reduction
from .errors import InvalidInput

_I64_SAFE = (1 << 61) - 1


def _obj_zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=object)


def _obj_eye(n: int) -> np.ndarray:
    m = _obj_zeros(n, n)
    for i in range(n):
        m[i, i] = 1
    return m


@dataclass(frozen=True, eq=False)
class IntMatrix:
    """Immutable integer matrix; entries are Python ints in an object array."""

    data: np.ndarray

    def __post_init__(self):
        if self.data.ndim != 2 or self.data.dtype != object:
            raise InvalidInput("IntMatrix needs a 2-D object array")

    @classmethod
    def from_rows(cls, rows, width: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if rows:
            w = len(rows[0])
            if any(len(r) != w for r in rows):
                raise InvalidInput("ragged matrix rows")
            if width is not None and w != width:
                raise InvalidInput("matrix width mismatch")
        else:
            w = width or 0
        m = _obj_zeros(len(rows), w)
        for i, r in enumerate(rows):
            for j, v in enumerate(r):
                m[i, j] = int(v)
        return cls(m)

    @classmethod
    def from_columns(cls, cols, height: int | None = None) -> "IntMatrix":
        cols = [list(c) for c in cols]
        if cols:
            h = len(cols[0])
            if any(len(c) != h for c in cols):
                raise InvalidInput("ragged matrix columns")
            if height is not None and h != height:
                raise InvalidInput("matrix height mismatch")
        else:
            h = height or 0
        m = _obj_zeros(h, len(cols))
        for j, c in enumerate(cols):
            for i, v in enumerate(c):
                m[i, j] = int(v)
        return cls(m)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(_obj_zeros(rows, cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(_obj_eye(n))

    @classmethod
    def column_stack(cls, mats) -> "IntMatrix":
        mats = list(mats)
        rows = mats[0].rows
        if any(m.rows != rows for m in mats):
            raise InvalidInput("column_stack row mismatch")
        return cls(np.concatenate([m.data for m in mats], axis=1))

    @classmethod
    def row_stack(cls, mats) -> "IntMatrix":
        mats = list(mats)
        cols = mats[0].cols
        if any(m.cols != cols for m in mats):
            raise InvalidInput("row_stack column mismatch")
        return cls(np.concatenate([m.data for m in mats], axis=0))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self):
        return self.data.shape

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(self.data.T.copy())

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise InvalidInput(
                f"cannot compose {self.shape} with {other.shape}"
            )
        if self.cols == 0:
            return IntMatrix.zeros(self.rows, other.cols)
        fast = _fast_matmul(self.data, other.data)
        if fast is not None:
            return IntMatrix(fast)
        return IntMatrix(np.dot(self.data, other.data))

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(
            (self.data == other.data).all()
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(-self.data)

    def is_zero(self) -> bool:
        return self.data.size == 0 or not (self.data != 0).any()

    def column(self, j: int) -> list:
        return [int(v) for v in self.data[:, j]]

    def to_rows(self) -> list[list[int]]:
        return [[int(v) for v in row] for row in self.data]

    def take_columns(self, js) -> "IntMatrix":
        return IntMatrix(self.data[:, list(js)].copy())

    def take_rows(self, idx) -> "IntMatrix":
        return IntMatrix(self.data[list(idx), :].copy())

    def __repr__(self):
        return f"IntMatrix({self.to_rows()!r})"


def _copy_obj(a: np.ndarray) -> np.ndarray:
    out = _obj_zeros(*a.shape)
    out[...] = a
    return out


def _fast_matmul(a: np.ndarray, b: np.ndarray):
    """Exact int64 product when no intermediate can overflow, else None.

    The bound inner_dim * max|a| * max|b| <= 2**62 guarantees every partial
    sum stays inside int64.
    """
    if a.size == 0 or b.size == 0:
        return None
    try:
        ma = int(max(abs(a.min()), abs(a.max())))
        mb = int(max(abs(b.min()), abs(b.max())))
    except (TypeError, ValueError):
        return None
    if ma and mb and a.shape[1] * ma * mb > (1 << 62):
        return None
    try:
        a64 = a.astype(np.int64)
        b64 = b.astype(np.int64)
    except (OverflowError, TypeError):
        return None
    return (a64 @ b64).astype(object)


def _fits_i64(a: np.ndarray) -> bool:
    if a.size == 0:
        return True
    return bool((abs(a) <= _I64_SAFE).all())


def _run_reduction(name: str, mats_obj: list[np.ndarray]):
    """Run the named in-place reduction, fast path first.

    mats_obj are freshly allocated object arrays the caller owns; on the
    fast path they are replaced by exact copies of the int64 results.
    """
    kern = _backend.kernels()
    if kern is not None and all(_fits_i64(m) for m in mats_obj):
        mats64 = [m.astype(np.int64) for m in mats_obj]
        status = getattr(kern, name + "_i64")(*mats64)
        if status == 0:
            for dst, src in zip(mats_obj, mats64):
                dst[...] = src.astype(object)
            return
    getattr(_reduction, name + "_inplace")(*mats_obj)


def hnf(m: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form: returns (H, U) with U unimodular, H = U @ m,
    H upper echelon with positive pivots and entries above each pivot
    reduced into [0, pivot)."""
    h = _copy_obj(m.data)
    u = _obj_eye(m.rows)
    _run_reduction("hnf", [h, u])
    return IntMatrix(h), IntMatrix(u)


def snf(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form: returns (S, U, V) with U, V unimodular and
    S = U @ m @ V diagonal, nonnegative, each entry dividing the next."""
    s = _copy_obj(m.data)
    u = _obj_eye(m.rows)
    v = _obj_eye(m.cols)
    _run_reduction("snf", [s, u, v])
    return IntMatrix(s), IntMatrix(u), IntMatrix(v)


def smith_diagonal(m: IntMatrix) -> list[int]:
    s, _, _ = snf(m)
    return [int(s.data[i, i]) for i in range(min(m.rows, m.cols))]


def kernel_lattice(m: IntMatrix) -> IntMatrix:
    """A matrix whose columns form a Z-basis of {x : m @ x = 0}."""
    h, u = hnf(m.T)
    zero_rows = [i for i in range(h.rows) if not (h.data[i] != 0).any()]
    return u.take_rows(zero_rows).T


class ColumnSolver:
    """Solve m @ x = v over Z for a fixed m, reusing one Hermite reduction.

    Works for any generating set of columns (m need not have full column
    rank); solutions are integer whenever v lies in the column lattice.
    """

    def __init__(self, m: IntMatrix):
        self.m = m
        h, u = hnf(m.T)
        self._h = h.data
        self._u = u
        pivots = []
        for i in range(h.rows):
            row = h.data[i]
            nz = np.flatnonzero(row != 0)
            if len(nz) == 0:
                break
            pivots.append(int(nz[0]))
        self._pivots = pivots

    def _reduce(self, v) -> list | None:
        """Greedy echelon reduction; coefficients over the Hermite rows, or
        None when v is outside the lattice."""
        if len(v) != self.m.rows:
            raise InvalidInput("solve: length mismatch")
        vec = np.empty(len(v), dtype=object)
        for i, x in enumerate(v):
            vec[i] = int(x)
        h = self._h
        y = [0] * self._u.rows
        for i, p in enumerate(self._pivots):
            if vec[p] % h[i, p] != 0:
                return None
            q = vec[p] // h[i, p]
            y[i] = q
            if q:
                vec[p:] -= q * h[i, p:]
        if (vec != 0).any():
            return None
        return y

    def solve(self, v) -> list[int] | None:
        y = self._reduce(v)
        if y is None:
            return None
        yarr = np.array(y, dtype=object)
        if yarr.size == 0:
            return [0] * self.m.cols
        return [int(t) for t in np.dot(yarr, self._u.data)]

    def contains(self, v) -> bool:
        return self._reduce(v) is not None

    def contains_all_columns(self, m: IntMatrix) -> bool:
        return all(self.contains(m.column(j)) for j in range(m.cols))


def solve_columns(m: IntMatrix, v) -> list[int] | None:
    return ColumnSolver(m).solve(v)


def column_lattice_canonical(m: IntMatrix) -> IntMatrix:
    """Canonical form of the lattice spanned by the columns of m: the
    nonzero rows of the row-Hermite form of m.T.  Two generating sets span
    the same lattice iff their canonical forms are equal."""
    h, _ = hnf(m.T)
    nz = [i for i in range(h.rows) if (h.data[i] != 0).any()]
    return h.take_rows(nz)


def lattices_equal(a: IntMatrix, b: IntMatrix) -> bool:
    if a.rows != b.rows:
        raise InvalidInput("lattices live in different ambient ranks")
    return column_lattice_canonical(a) == column_lattice_canonical(b)


def determinant(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise InvalidInput("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = _copy_obj(m.data)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k, k] == 0:
            for i in range(k + 1, n):
                if a[i, k] != 0:
                    a[[k, i]] = a[[i, k]]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i, j] = (a[i, j] * a[k, k] - a[i, k] * a[k, j]) // prev
        prev = a[k, k]
    return sign * int(a[n - 1, n - 1])


@dataclass(frozen=True, eq=False)
class AbelianGroup:
    """Finitely presented abelian group: Z^generators modulo the lattice
    spanned by the columns of `relations`."""

    generators: int
    relations: IntMatrix

    def __post_init__(self):
        if self.relations.rows != self.generators:
            raise InvalidInput("relation matrix has wrong number of rows")

    @classmethod
    def free(cls, n: int) -> "AbelianGroup":
        return cls(n, IntMatrix.zeros(n, 0))

    @classmethod
    def zero(cls) -> "AbelianGroup":
        return cls.free(0)

    @cached_property
    def invariants(self) -> tuple[int, tuple[int, ...]]:
        """(free rank, torsion coefficients d_1 | d_2 | ..., each > 1)."""
        diag = smith_diagonal(self.relations)
        nonzero = [d for d in diag if d != 0]
        rank = self.generators - len(nonzero)
        torsion = tuple(d for d in nonzero if d > 1)
        return rank, torsion

    @property
    def rank(self) -> int:
        return self.invariants[0]

    @property
    def torsion(self) -> tuple[int, ...]:
        return self.invariants[1]

    def is_trivial(self) -> bool:
        return self.invariants == (0, ())

    def isomorphic(self, other: "AbelianGroup") -> bool:
        return self.invariants == other.invariants

    def describe(self) -> str:
        rank, torsion = self.invariants
        parts = []
        if rank == 1:
            parts.append("Z")
        elif rank > 1:
            parts.append(f"Z^{rank}")
        parts.extend(f"Z/{d}" for d in torsion)
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"AbelianGroup<{self.describe()}>"


@dataclass(frozen=True, eq=False)
class GroupHom:
    """Homomorphism between finitely presented groups, given on generators.

    matrix has shape (target.generators, source.generators); acting on
    column vectors of generator coordinates.
    """

    source: AbelianGroup
    target: AbelianGroup
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.generators, self.source.generators):
            raise InvalidInput("morphism matrix shape mismatch")
        # Well-definedness: source relations must land in the target's
        # relation lattice (Hermite-form membership).
        if self.source.relations.cols:
            image = self.matrix @ self.source.relations
            if not image.is_zero():
                solver = ColumnSolver(self.target.relations)
                if not solver.contains_all_columns(image):
                    raise InvalidInput(
                        "morphism does not respect relations"
                    )

    @classmethod
    def zero(cls, source: AbelianGroup, target: AbelianGroup) -> "GroupHom":
        return cls(
            source, target,
            IntMatrix.zeros(target.generators, source.generators),
        )

    @classmethod
    def identity(cls, group: AbelianGroup) -> "GroupHom":
        return cls(group, group, IntMatrix.identity(group.generators))

    def compose(self, first: "GroupHom") -> "GroupHom":
        """self ∘ first."""
        if first.target is not self.source and not (
            first.target.generators == self.source.generators
            and first.target.relations == self.source.relations
        ):
            raise InvalidInput("composition type mismatch")
        return GroupHom(first.source, self.target, self.matrix @ first.matrix)

    def is_zero_map(self) -> bool:
        if self.matrix.is_zero():
            return True
        solver = ColumnSolver(self.target.relations)
        return solver.contains_all_columns(self.matrix)


def homology_with_lift(
    f: GroupHom, g: GroupHom
) -> tuple[AbelianGroup, IntMatrix]:
    """Homology ker(g)/im(f) at the middle group of A --f--> B --g--> C.

    Requires g∘f = 0 modulo the relations of C.  Returns the group together
    with the lift matrix whose columns express its generators as elements
    of Z^{B.generators}.
    """
    b = f.target
    if g.source.generators != b.generators:
        raise InvalidInput("homology: mismatched middle group")
    gf = g.matrix @ f.matrix
    if not gf.is_zero():
        if not ColumnSolver(g.target.relations).contains_all_columns(gf):
            raise InvalidInput("broken complex: g∘f ≠ 0 modulo relations")
    # Lift of ker(g): x with g·x inside the relation lattice of C, found as
    # the first block of the kernel of [g | relations(C)].
    if g.target.generators == 0:
        lift = IntMatrix.identity(b.generators)
    else:
        stacked = IntMatrix.column_stack([g.matrix, g.target.relations])
        lift = kernel_lattice(stacked).take_rows(range(b.generators))
    # Relations among the lift generators: coefficient vectors c with
    # lift·c inside im(f) + relations(B).
    denom = IntMatrix.column_stack([f.matrix, b.relations])
    if lift.cols == 0:
        return AbelianGroup.zero(), lift
    stacked2 = IntMatrix.column_stack([lift, denom])
    rel = kernel_lattice(stacked2).take_rows(range(lift.cols))
    return AbelianGroup(lift.cols, rel), lift


def subquotient_homology(f: GroupHom, g: GroupHom) -> AbelianGroup:
    return homology_with_lift(f, g)[0]


def exact_at(fin: GroupHom, fout: GroupHom) -> bool:
    """Whether im(fin) equals ker(fout) inside fin.target == fout.source,
    compared as sublattices of the generator space together with the
    relation lattice."""
    b = fout.source
    if fin.target.generators != b.generators:
        raise InvalidInput("exactness check: mismatched middle group")
    image = IntMatrix.column_stack([fin.matrix, b.relations])
    if fout.target.generators == 0:
        ker = IntMatrix.identity(b.generators)
    else:
        stacked = IntMatrix.column_stack([fout.matrix, fout.target.relations])
        ker = kernel_lattice(stacked).take_rows(range(b.generators))
    kernel = IntMatrix.column_stack([ker, b.relations])
    return lattices_equal(image, kernel)


@dataclass
class CochainComplex:
    """Graded sequence of finitely presented groups with differentials.

    groups[n] and diffs[n] : groups[n] -> groups[n+1] are stored for
    lo <= n <= hi.  When `complete` is true the groups outside the stored
    range are genuinely zero; otherwise the complex is a truncation and
    cohomology is only computed up to hi - 1.
    """

    groups: dict[int, AbelianGroup]
    diffs: dict[int, GroupHom]
    labels: dict[int, tuple] = field(default_factory=dict)
    lo: int = 0
    hi: int = -1
    complete: bool = True

    def group(self, n: int) -> AbelianGroup:
        return self.groups.get(n, AbelianGroup.zero())

    def diff(self, n: int) -> GroupHom:
        d = self.diffs.get(n)
        if d is None:
            return GroupHom.zero(self.group(n), self.group(n + 1))
        return d

    def check_complex(self):
        """Raise unless d∘d vanishes modulo relations in every degree."""
        for n in range(self.lo, self.hi):
            sq = self.diff(n + 1).compose(self.diff(n))
            if not sq.is_zero_map():
                raise InvalidInput(
                    f"broken complex: d∘d ≠ 0 between degrees {n} and {n + 2}"
                )

    def cohomology_degrees(self) -> range:
        if self.hi < self.lo:
            return range(0)
        if self.complete:
            return range(self.lo, self.hi + 1)
        return range(self.lo, self.hi)


def complex_cohomology(
    c: CochainComplex, check: bool = True
) -> dict[int, tuple[AbelianGroup, IntMatrix]]:
    """Per-degree homology groups with their generator lifts."""
    if check:
        c.check_complex()
    out = {}
    for n in c.cohomology_degrees():
        out[n] = homology_with_lift(c.diff(n - 1), c.diff(n))
    return out


def induced_on_cohomology(
    chain_map: dict[int, IntMatrix],
    source: dict[int, tuple[AbelianGroup, IntMatrix]],
    target: dict[int, tuple[AbelianGroup, IntMatrix]],
) -> dict[int, GroupHom]:
    """Maps induced on cohomology by a chain map (matrices per degree).

    The chain-map matrices act between the underlying cochain groups; each
    cocycle generator of the source is pushed through and re-expressed in
    the target presentation.
    """
    out = {}
    for n, (hsrc, lift_src) in source.items():
        if n not in target:
            continue
        htgt, lift_tgt = target[n]
        phi = chain_map[n]
        solver = ColumnSolver(lift_tgt)
        cols = []
        for j in range(hsrc.generators):
            image = phi @ IntMatrix.from_columns(
                [lift_src.column(j)], height=phi.cols
            )
            sol = solver.solve(image.column(0))
            if sol is None:
                raise InvalidInput("chain map does not preserve cocycles")
            cols.append(sol)
        out[n] = GroupHom(
            hsrc, htgt,
            IntMatrix.from_columns(cols, height=htgt.generators),
        )
    return out
