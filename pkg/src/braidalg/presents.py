"""Builders expanding matrix relations into concrete presentations.

All relation blocks are index expansions of products of N^2 x N^2 matrices:
scalar factors come from leg embeddings of the R-matrix (so the index
convention has a single source), generator factors are the matrices u1 =
u (x) 1 and u2 = 1 (x) u with noncommutative entries.  A block is the
entrywise difference of two such products, enumerated row-major over the
free indices; zero and linearly dependent relations are pruned before
storage, so equal spans store equal relation lists.

Builders:

  frt_algebra            generators t,  relations R t1 t2 = t2 t1 R
  braided_matrices       generators u,  relations R21 u1 R u2 = u2 R21 u1 R
  braided_tensor_square  two copies with braid statistics
                         R^-1 v1 R u2 = u2 R^-1 v1 R  (v right, u left)
  braided_chain          copies u1..un, self relations per copy and
                         R21 v1 R u2 = u2 R21 v1 R for higher v, lower u
"""

from __future__ import annotations

from dataclasses import dataclass

from .ncalg import Generator, NCPoly, Presentation
from .rewrite import orient_relations
from .rmat import RMatrix, invert, leg_embed
from . import ideals


# ---------------------------------------------------------------------------
# matrices with noncommutative entries
# ---------------------------------------------------------------------------

def _flat(i, j, N):
    return (i - 1) * N + (j - 1)


def _scalar_matrix(R: RMatrix, legs):
    """Dense N^2 x N^2 matrix of constant polynomials from a leg embedding."""
    N = R.dim
    op = leg_embed(R, legs, 2)
    size = N * N
    m = [[NCPoly.zero()] * size for _ in range(size)]
    for out, row in op.rows.items():
        for src, c in row.items():
            m[_flat(out[0], out[1], N)][_flat(src[0], src[1], N)] = NCPoly({(): c})
    return m


def _gen_matrix(copy: str, leg: int, N: int, one):
    """u1 = u (x) 1 (leg 1) or u2 = 1 (x) u (leg 2) with entries u[i,j]."""
    size = N * N
    m = [[NCPoly.zero()] * size for _ in range(size)]
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            for k in range(1, N + 1):
                for l in range(1, N + 1):
                    if leg == 1 and j == l:
                        m[_flat(i, j, N)][_flat(k, l, N)] = \
                            NCPoly.gen(Generator(copy, i, k), one)
                    elif leg == 2 and i == k:
                        m[_flat(i, j, N)][_flat(k, l, N)] = \
                            NCPoly.gen(Generator(copy, j, l), one)
    return m


def _matmul(A, B):
    n = len(A)
    out = []
    for i in range(n):
        row = []
        Ai = A[i]
        for j in range(n):
            acc = NCPoly.zero()
            for k in range(n):
                a = Ai[k]
                b = B[k][j]
                if a.terms and b.terms:
                    acc = acc + a * b
            row.append(acc)
        out.append(row)
    return out


def _product(factors):
    m = factors[0]
    for f in factors[1:]:
        m = _matmul(m, f)
    return m


def _block(lhs_factors, rhs_factors):
    """Entrywise difference of two matrix products, row-major, zeros kept out."""
    L = _product(lhs_factors)
    R = _product(rhs_factors)
    rels = []
    for i in range(len(L)):
        for j in range(len(L)):
            d = L[i][j] - R[i][j]
            if d:
                rels.append(d)
    return rels


def matrix_roster(copy: str, N: int):
    return [Generator(copy, i, j) for i in range(1, N + 1) for j in range(1, N + 1)]


# ---------------------------------------------------------------------------
# relation blocks
# ---------------------------------------------------------------------------

def self_block(R: RMatrix, copy: str):
    """R21 u1 R u2 - u2 R21 u1 R for one copy of braided matrices."""
    one = R.field.one
    r = _scalar_matrix(R, (1, 2))
    r21 = _scalar_matrix(R, (2, 1))
    u1 = _gen_matrix(copy, 1, R.dim, one)
    u2 = _gen_matrix(copy, 2, R.dim, one)
    return _block([r21, u1, r, u2], [u2, r21, u1, r])


def cross_block(R: RMatrix, v_copy: str, u_copy: str, form="r21"):
    """Exchange block between a higher copy v and a lower copy u.

    form "r21":        R21 v1 R u2 = u2 R21 v1 R   (chain cross relations)
    form "statistics": R^-1 v1 R u2 = u2 R^-1 v1 R (braid statistics)
    form "rearranged": v1 R u2 = R21^-1 u2 R21 v1 R  (the r21 block solved
                       for v1 R u2; same span as "r21")
    """
    one = R.field.one
    N = R.dim
    r = _scalar_matrix(R, (1, 2))
    v1 = _gen_matrix(v_copy, 1, N, one)
    u2 = _gen_matrix(u_copy, 2, N, one)
    if form == "r21":
        r21 = _scalar_matrix(R, (2, 1))
        return _block([r21, v1, r, u2], [u2, r21, v1, r])
    if form == "statistics":
        rinv = _scalar_matrix(invert(R), (1, 2))
        return _block([rinv, v1, r, u2], [u2, rinv, v1, r])
    if form == "rearranged":
        r21 = _scalar_matrix(R, (2, 1))
        r21inv = _scalar_matrix(invert(R), (2, 1))
        return _block([v1, r, u2], [r21inv, u2, r21, v1, r])
    raise ValueError(f"unknown cross block form {form!r}")


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

def frt_algebra(R: RMatrix) -> Presentation:
    """The quantum-matrix bialgebra presentation: R t1 t2 = t2 t1 R."""
    invert(R)  # singular R is an error
    one = R.field.one
    r = _scalar_matrix(R, (1, 2))
    t1 = _gen_matrix("t", 1, R.dim, one)
    t2 = _gen_matrix("t", 2, R.dim, one)
    rels = _block([r, t1, t2], [t2, t1, r])
    return Presentation(R.dim, matrix_roster("t", R.dim), rels,
                        field=R.field, name="frt")


def braided_matrices(R: RMatrix, copy: str = "u", name: str = "bm") -> Presentation:
    """Braided matrices B(R): generators u, relations R21 u1 R u2 = u2 R21 u1 R."""
    invert(R)
    return Presentation(R.dim, matrix_roster(copy, R.dim), self_block(R, copy),
                        field=R.field, name=name)


@dataclass
class TensorSquare:
    """A braided tensor square with its coproduct target metadata."""

    presentation: Presentation
    base: Presentation
    left: dict    # base generator -> left-factor generator
    right: dict   # base generator -> right-factor generator


def _copy_labels(P: Presentation):
    labels = []
    for g in P.roster:
        if g.copy not in labels:
            labels.append(g.copy)
    return labels


def braided_tensor_square(base: Presentation, R: RMatrix,
                          left_label="L", right_label="R") -> TensorSquare:
    """Two independent copies of base with braid statistics between them.

    The right factor sits above the left factor in the monomial order, so
    every mixed word normalizes to left-then-right; the builder verifies
    that the statistics block actually provides a rule for each mixed word
    and raises OrientationError otherwise.
    """
    labels = _copy_labels(base)
    expected = []
    for c in labels:
        expected.extend(matrix_roster(c, base.dim))
    if list(base.roster) != expected:
        raise ValueError("base roster is not a row-major matrix roster")
    lmap = {c: f"{left_label}.{c}" for c in labels}
    rmap = {c: f"{right_label}.{c}" for c in labels}
    left = base.relabel(lmap)
    right = base.relabel(rmap)
    roster = list(left.roster) + list(right.roster)
    rels = list(left.relations) + list(right.relations)
    for cv in labels:
        for cu in labels:
            rels.extend(cross_block(R, rmap[cv], lmap[cu], form="statistics"))
    P = Presentation(base.dim, roster, rels, field=base.field,
                     name=f"square({base.name})" if base.name else "square")
    orient_relations(P)  # fail fast when the statistics block is singular
    lgen = {g: Generator(lmap[g.copy], g.row, g.col) for g in base.roster}
    rgen = {g: Generator(rmap[g.copy], g.row, g.col) for g in base.roster}
    return TensorSquare(P, base, lgen, rgen)


def braided_chain(R: RMatrix, n: int) -> Presentation:
    """The n-fold chain: copies u1..un, cross relations for every i > j."""
    if n < 1:
        raise ValueError("chain needs at least one copy")
    invert(R)
    roster = []
    rels = []
    labels = [f"u{i}" for i in range(1, n + 1)]
    for c in labels:
        roster.extend(matrix_roster(c, R.dim))
        rels.extend(self_block(R, c))
    for i in range(1, n + 1):
        for j in range(1, i):
            rels.extend(cross_block(R, labels[i - 1], labels[j - 1], form="r21"))
    P = Presentation(R.dim, roster, rels, field=R.field, name=f"chain{n}")
    if n > 1:
        orient_relations(P)  # fail fast when a cross block is singular
    return P


# ---------------------------------------------------------------------------
# the square / chain comparison
# ---------------------------------------------------------------------------

@dataclass
class SquareIsoReport:
    """Graded-dimension comparison of the two double constructions."""

    bound: int
    square_dims: list      # braided tensor square of B(R), statistics form
    chain_dims: list       # two-copy chain, r21 cross form
    equal: bool


def square_iso_witness(R: RMatrix, bound: int) -> SquareIsoReport:
    """Compare Hilbert dimensions of B(R) (x) B(R) (braid statistics) and
    the two-copy chain; equal vectors witness the algebra isomorphism."""
    base = braided_matrices(R)
    square = braided_tensor_square(base, R).presentation
    chain = braided_chain(R, 2)
    ds = ideals.hilbert_dims(square, bound)
    dc = ideals.hilbert_dims(chain, bound)
    return SquareIsoReport(bound, ds, dc, ds == dc)


# ---------------------------------------------------------------------------
# preset dispatch (shared by the command line and the test suite)
# ---------------------------------------------------------------------------

PRESETS = ("frt", "bm", "square", "chain")


def build_preset(preset: str, R: RMatrix, n: int = 1) -> Presentation:
    if preset == "frt":
        return frt_algebra(R)
    if preset == "bm":
        return braided_matrices(R)
    if preset == "square":
        return braided_tensor_square(braided_matrices(R), R).presentation
    if preset == "chain":
        return braided_chain(R, n)
    raise ValueError(f"unknown preset {preset!r}")
