"""Nerve cochain complexes over a poset and their cohomology.

A simplex of degree n is a weakly increasing chain of n+1 elements stored
bottom-first; strict chains are the nondegenerate simplices.  Following the
usual indexing, entry sigma_i of a degree-n simplex sits at tuple position
n - i, so face(sigma, 0) drops the top element and face(sigma, n) drops the
bottom.

The computational complex uses nondegenerate simplices only; the variant
with degeneracies exists to check the equivalence numerically and must be
truncated by the caller.  Cochain groups are free on (simplex, coordinate)
labels ordered lexicographically, which pins every matrix.
"""

from __future__ import annotations

import numpy as np

from .abelian import (
    AbelianGroup,
    CochainComplex,
    ColumnSolver,
    GroupHom,
    IntMatrix,
    complex_cohomology,
    exact_at,
    induced_on_cohomology,
    kernel_lattice,
)
from .errors import InvalidInput, PreconditionError
from .poset import Poset
from .presheaf import Presheaf, PresheafMorphism
from .reports import CohomologyReport


# -- simplices ---------------------------------------------------------------

def degree(sigma) -> int:
    return len(sigma) - 1


def is_degenerate(sigma) -> bool:
    return any(a == b for a, b in zip(sigma, sigma[1:]))


def face(sigma, i):
    """Drop entry i (entry 0 is the top of the chain, entry n the bottom)."""
    n = degree(sigma)
    if not 0 <= i <= n:
        raise InvalidInput(f"face index {i} out of range for degree {n}")
    pos = n - i
    return sigma[:pos] + sigma[pos + 1:]

def degeneracy(sigma, i):
    """Duplicate entry i."""
    n = degree(sigma)
    if not 0 <= i <= n:
        raise InvalidInput(f"degeneracy index {i} out of range for degree {n}")
    pos = n - i
    return sigma[: pos + 1] + sigma[pos:]


def nondegenerate_simplices(p: Poset, n: int) -> list[tuple]:
    """Strict chains of n+1 elements, lexicographic; n = -1 is the basepoint."""
    if n < -1:
        return []
    if n == -1:
        return [()]
    out = []

    def extend(chain, length):
        if length == n + 1:
            out.append(tuple(chain))
            return
        last = chain[-1]
        for nxt in p.elements:
            if p.lt(last, nxt):
                chain.append(nxt)
                extend(chain, length + 1)
                chain.pop()

    for start in p.elements:
        extend([start], 1)
    return out


def all_simplices(p: Poset, n: int) -> list[tuple]:
    """Weakly increasing chains of n+1 elements (degenerate ones included)."""
    if n < -1:
        return []
    if n == -1:
        return [()]
    out = []

    def extend(chain, length):
        if length == n + 1:
            out.append(tuple(chain))
            return
        last = chain[-1]
        for nxt in p.elements:
            if p.leq(last, nxt):
                chain.append(nxt)
                extend(chain, length + 1)
                chain.pop()

    for start in p.elements:
        extend([start], 1)
    return out


# -- complex construction ----------------------------------------------------

def _labels(f: Presheaf, simplices) -> tuple:
    return tuple((s, j) for s in simplices for j in range(f.dim(s[0])))


def _nerve_differential(
    f: Presheaf, source  , target, source_simplices, target_simplices
) -> IntMatrix:
    """Matrix of the alternating face sum from degree n to degree n+1; the
    last face is twisted by the restriction to the new bottom element."""
    src_index = {}
    pos = 0
    for s in source_simplices:
        src_index[s] = pos
        pos += f.dim(s[0])
    n_src = pos
    rows = sum(f.dim(s[0]) for s in target_simplices)
    mat = np.zeros((rows, n_src), dtype=object)
    roff = 0
    for sigma in target_simplices:
        m = degree(sigma)
        dim_bottom = f.dim(sigma[0])
        for i in range(m + 1):
            tau = face(sigma, i)
            coff = src_index.get(tau)
            if coff is None:
                continue
            sign = -1 if i % 2 else 1
            if i < m:
                for k in range(dim_bottom):
                    mat[roff + k, coff + k] += sign
            else:
                twist = f.restriction(sigma[0], sigma[1])
                blk = twist.data
                for r in range(blk.shape[0]):
                    for c in range(blk.shape[1]):
                        v = blk[r, c]
                        if v:
                            mat[roff + r, coff + c] += sign * v
        roff += dim_bottom
    return IntMatrix(mat)


def _build_complex(f, simplices_by_degree, lo, hi, complete) -> CochainComplex:
    groups = {}
    labels = {}
    for n in range(lo, hi + 1):
        labels[n] = _labels(f, simplices_by_degree[n])
        groups[n] = AbelianGroup.free(len(labels[n]))
    diffs = {}
    for n in range(lo, hi):
        mat = _nerve_differential(
            f, groups[n], groups[n + 1],
            simplices_by_degree[n], simplices_by_degree[n + 1],
        )
        diffs[n] = GroupHom(groups[n], groups[n + 1], mat)
    return CochainComplex(
        groups=groups, diffs=diffs, labels=labels,
        lo=lo, hi=hi, complete=complete,
    )


def nerve_complex(p: Poset, f: Presheaf) -> CochainComplex:
    """Cochain complex on the nondegenerate simplices of the nerve."""
    if f.base is not p and set(f.base.elements) != set(p.elements):
        raise InvalidInput("presheaf is based on a different poset")
    top = p.longest_chain_degree
    sims = {n: nondegenerate_simplices(p, n) for n in range(0, top + 1)}
    return _build_complex(f, sims, 0, top, complete=True)


def full_nerve_complex(p: Poset, f: Presheaf, max_degree: int) -> CochainComplex:
    """Complex on all simplices, degenerate ones included.  Nonzero in every
    degree, so it is truncated at max_degree; cohomology is then valid up to
    max_degree - 1, which must reach the top nonzero degree of the
    nondegenerate complex."""
    if max_degree < p.longest_chain_degree + 1:
        raise PreconditionError(
            "max_degree must exceed the longest chain degree"
        )
    sims = {n: all_simplices(p, n) for n in range(0, max_degree + 1)}
    empty = p.longest_chain_degree < 0
    return _build_complex(f, sims, 0, max_degree, complete=empty)


def relative_nerve_complex(p: Poset, q: Poset, f: Presheaf) -> CochainComplex:
    """Kernel of restriction to an induced subposet: the cochains vanishing
    on every chain of q."""
    if not p.is_induced_subposet(q):
        raise InvalidInput("relative complex needs an induced subposet")
    inside = set(q.elements)
    top = p.longest_chain_degree
    sims = {
        n: [
            s
            for s in nondegenerate_simplices(p, n)
            if not all(e in inside for e in s)
        ]
        for n in range(0, top + 1)
    }
    return _build_complex(f, sims, 0, top, complete=True)


def reduced_nerve_complex(p: Poset, k: int = 1) -> CochainComplex:
    """Augmented complex Z^k -> T^0 -> ... with constant coefficients Z^k;
    the augmentation sends a to the cochain with every vertex coordinate a."""
    from .presheaf import constant

    f = constant(p, k)
    top = p.longest_chain_degree
    sims = {n: nondegenerate_simplices(p, n) for n in range(0, top + 1)}
    sims[-1] = [()]
    cx = _build_complex(f, {n: sims[n] for n in range(0, top + 1)}, 0, top, True)
    groups = dict(cx.groups)
    labels = dict(cx.labels)
    diffs = dict(cx.diffs)
    aug_group = AbelianGroup.free(k)
    groups[-1] = aug_group
    labels[-1] = tuple(((), j) for j in range(k))
    if top >= 0:
        rows = groups[0].generators
        mat = np.zeros((rows, k), dtype=object)
        for r, (sigma, j) in enumerate(labels[0]):
            mat[r, j] = 1
        diffs[-1] = GroupHom(aug_group, groups[0], IntMatrix(mat))
    return CochainComplex(
        groups=groups, diffs=diffs, labels=labels, lo=-1,
        hi=max(top, -1), complete=True,
    )


# -- cohomology ----------------------------------------------------------------

def cohomology(cx: CochainComplex, method: str = "singular") -> CohomologyReport:
    data = complex_cohomology(cx)
    return CohomologyReport.from_groups(
        method, {n: grp for n, (grp, _) in data.items()}
    )


def singular_cohomology(p: Poset, f: Presheaf) -> CohomologyReport:
    return cohomology(nerve_complex(p, f), "singular")


def limit(p: Poset, f: Presheaf) -> AbelianGroup:
    """Global sections: tuples (a_x) with every restriction matching; a free
    group computed directly as a kernel lattice."""
    offsets = {}
    pos = 0
    for e in p.elements:
        offsets[e] = pos
        pos += f.dim(e)
    rows = []
    for x, y in p.covers:
        m = f.cover_maps[(x, y)]
        for r in range(m.rows):
            row = [0] * pos
            row[offsets[x] + r] = 1
            for c in range(m.cols):
                v = m.data[r, c]
                if v:
                    row[offsets[y] + c] -= v
            rows.append(row)
    constraint = IntMatrix.from_rows(rows, width=pos)
    return AbelianGroup.free(kernel_lattice(constraint).cols)


# -- poset maps and induced chain maps ----------------------------------------

def check_monotone(fmap: dict, source: Poset, target: Poset):
    fmap = {str(k): str(v) for k, v in fmap.items()}
    if set(fmap) != set(source.elements):
        raise InvalidInput("poset map must be defined on every element")
    for v in fmap.values():
        if v not in set(target.elements):
            raise InvalidInput(f"poset map hits unknown element {v}")
    for x in source.elements:
        for y in source.elements:
            if source.leq(x, y) and not target.leq(fmap[x], fmap[y]):
                raise InvalidInput("poset map is not order-preserving")
    return fmap


def _label_index(cx: CochainComplex, n: int) -> dict:
    return {lab: i for i, lab in enumerate(cx.labels.get(n, ()))}


def pullback_map(
    fmap: dict, source_cx: CochainComplex, target_cx: CochainComplex, n: int
) -> IntMatrix:
    """Matrix of f*: cochains of the target poset's complex (source_cx, over
    P) to cochains over Q, given f: Q -> P.  Rows are Q-labels; the row for
    (tau, j) picks coordinate (f tau, j)."""
    src_index = _label_index(source_cx, n)
    rows = len(target_cx.labels.get(n, ()))
    mat = np.zeros((rows, len(src_index)), dtype=object)
    for r, (tau, j) in enumerate(target_cx.labels.get(n, ())):
        image = tuple(fmap[t] for t in tau)
        c = src_index.get((image, j))
        if c is not None:
            mat[r, c] = 1
    return IntMatrix(mat)


def pushforward_map(
    fmap: dict, source_cx: CochainComplex, target_cx: CochainComplex, n: int
) -> IntMatrix:
    """Matrix of f_* for injective f: Q -> P: the row for a P-simplex sums
    the coordinates of its preimage chains (at most one for injective f);
    rows with empty preimage are zero."""
    values = list(fmap.values())
    if len(set(values)) != len(values):
        raise InvalidInput("pushforward needs an injective poset map")
    inverse = {v: k for k, v in fmap.items()}
    src_index = _label_index(source_cx, n)
    rows = len(target_cx.labels.get(n, ()))
    mat = np.zeros((rows, len(src_index)), dtype=object)
    for r, (sigma, j) in enumerate(target_cx.labels.get(n, ())):
        if all(e in inverse for e in sigma):
            tau = tuple(inverse[e] for e in sigma)
            c = src_index.get((tau, j))
            if c is not None:
                mat[r, c] = 1
    return IntMatrix(mat)


def presheaf_map_on_complex(
    kappa: PresheafMorphism, source_cx: CochainComplex,
    target_cx: CochainComplex, n: int,
) -> IntMatrix:
    """Matrix of the chain map induced by a presheaf morphism: the component
    at the bottom element of each simplex, block-diagonally."""
    src_index = _label_index(source_cx, n)
    rows = len(target_cx.labels.get(n, ()))
    mat = np.zeros((rows, len(src_index)), dtype=object)
    for r, (sigma, i) in enumerate(target_cx.labels.get(n, ())):
        comp = kappa.component(sigma[0])
        for j in range(comp.cols):
            c = src_index.get((sigma, j))
            if c is not None and comp.data[i, j]:
                mat[r, c] = int(comp.data[i, j])
    return IntMatrix(mat)


# -- long exact sequence of a pair ---------------------------------------------

def long_exact_sequence_check(p: Poset, q: Poset, f: Presheaf) -> tuple[bool, str]:
    """Builds 0 -> T(P,Q) -> T(P) -> T(Q) -> 0, assembles the long exact
    sequence with the extension-by-zero connecting map, and verifies
    exactness at every node.  Returns (ok, where) with where naming the
    first failure."""
    if not p.is_induced_subposet(q):
        raise InvalidInput("long exact sequence needs an induced subposet")
    rel = relative_nerve_complex(p, q, f)
    cp = nerve_complex(p, f)
    cq = nerve_complex(q, f.restrict_to(q))
    hr = complex_cohomology(rel)
    hp = complex_cohomology(cp)
    hq = complex_cohomology(cq)
    top = max(cp.hi, 0)

    def zero_h(n, table):
        if n in table:
            return table[n]
        return AbelianGroup.zero(), IntMatrix.zeros(0, 0)

    # chain maps: coordinate inclusion of the relative complex, and the
    # restriction (pullback along the subposet inclusion).
    incl = {
        n: pullback_map({e: e for e in p.elements}, rel, cp, n)
        for n in range(0, top + 1)
    }
    restr = {
        n: pullback_map({e: e for e in q.elements}, cp, cq, n)
        for n in range(0, top + 1)
    }
    alpha = induced_on_cohomology(incl, hr, hp)
    beta = induced_on_cohomology(restr, hp, hq)

    # connecting homomorphism: lift a Q-cocycle by extension by zero, apply
    # the ambient differential, read off the relative cochain.
    extend = {
        n: pullback_map({e: e for e in q.elements}, cp, cq, n).T
        for n in range(0, top + 1)
    }
    project = {
        n: pullback_map({e: e for e in p.elements}, cp, rel, n)
        for n in range(0, top + 2)
    }
    connecting = {}
    for n in sorted(hq):
        grp, lift = hq[n]
        tgt_grp, tgt_lift = zero_h(n + 1, hr)
        solver = ColumnSolver(tgt_lift)
        cols = []
        for jcol in range(grp.generators):
            vec = IntMatrix.from_columns([lift.column(jcol)], height=lift.rows)
            ambient = extend[n] @ vec
            bumped = cp.diff(n).matrix @ ambient
            relative = project[n + 1] @ bumped if n + 1 <= cp.hi else None
            if relative is None or tgt_grp.generators == 0:
                cols.append([0] * tgt_grp.generators)
                continue
            sol = solver.solve(relative.column(0))
            if sol is None:
                return False, f"connecting map undefined at degree {n}"
            cols.append(sol)
        connecting[n] = GroupHom(
            grp, tgt_grp,
            IntMatrix.from_columns(cols, height=tgt_grp.generators),
        )

    def alpha_or_zero(n):
        if n in alpha:
            return alpha[n]
        return GroupHom.zero(zero_h(n, hr)[0], zero_h(n, hp)[0])

    def beta_or_zero(n):
        if n in beta:
            return beta[n]
        return GroupHom.zero(zero_h(n, hp)[0], zero_h(n, hq)[0])

    def conn_or_zero(n):
        # connecting map H^n(Q) -> H^{n+1}(relative)
        if n in connecting:
            return connecting[n]
        return GroupHom.zero(zero_h(n, hq)[0], zero_h(n + 1, hr)[0])

    for n in range(0, top + 2):
        if not exact_at(conn_or_zero(n - 1), alpha_or_zero(n)):
            return False, f"not exact at relative degree {n}"
        if not exact_at(alpha_or_zero(n), beta_or_zero(n)):
            return False, f"not exact at total degree {n}"
        if not exact_at(beta_or_zero(n), conn_or_zero(n)):
            return False, f"not exact at subposet degree {n}"
    return True, "exact"
