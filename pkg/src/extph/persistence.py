"""Persistence pairings and barcodes for filtered graded subgroups.

The boundary of a compatible basis generator is written over the basis
generators one dimension down followed by whichever extension generators
actually show up; reducing these matrices by left-to-right column
additions yields pivots, and a pivot landing in the basis block pairs the
column generator with the row generator.  The pairing determines the
barcode: an unpaired generator with vanishing reduced boundary opens an
interval that never closes, and a pair (i, j) with height(i) < height(j)
opens [height(i), height(j)).  Pairs whose pivot falls in the extension
block, and pairs with height(i) >= height(j), contribute nothing; both
situations are impossible for subcomplex filtrations but routine here.

``persistent_betti_oracle`` recomputes the persistent Betti table from
supremum complexes by plain rank arithmetic, with no pivots involved, and
is the ground truth the pairing route is tested against.
"""

import math
from dataclasses import dataclass

import numpy as np

from .field import SparseColumn, SparseMatrix, dense_kernel, dense_matrix, dense_rank, reduce
from .graded import FilteredGradedSubgroup, sup_complex

__all__ = [
    "Pairing",
    "Barcode",
    "BoundaryMatrices",
    "build_matrices",
    "compute_pairings",
    "barcode",
    "persistent_betti_oracle",
    "betti_table_from_barcode",
]


@dataclass(frozen=True)
class Pairing:
    """Pivot-derived pairs between dimensions dim and dim+1.

    ``pairs`` holds (i, j): basis index i in dimension dim paired with
    basis index j in dimension dim+1.  ``unpaired_cycles`` are the
    dimension-dim basis indices whose reduced boundary column vanished and
    that no pair claims.
    """

    dim: int
    pairs: frozenset
    unpaired_cycles: frozenset


class Barcode:
    """Multiset of intervals (dim, birth, death), death a stage or math.inf."""

    __slots__ = ("intervals",)

    def __init__(self, intervals=()):
        self.intervals = tuple(sorted(intervals))

    def in_dim(self, p: int):
        return tuple((b, d) for dim, b, d in self.intervals if dim == p)

    def as_multiset(self):
        from collections import Counter

        return Counter(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self):
        return len(self.intervals)

    def __eq__(self, other):
        return isinstance(other, Barcode) and other.intervals == self.intervals

    def __repr__(self):
        return f"Barcode({list(self.intervals)})"


@dataclass(frozen=True)
class BoundaryMatrices:
    """mats[p] is the boundary matrix of dimension p+1 basis generators.

    Rows of mats[p]: the dimension-p basis generators in compatible order,
    then the appearing extension generators in first-appearance order.
    ``basis_counts[p]`` is the number of dimension-p basis generators, i.e.
    the size of the basis row block.
    """

    mats: tuple
    basis_counts: tuple


def build_matrices(f: FilteredGradedSubgroup, p_max: int) -> BoundaryMatrices:
    g = f.graded
    field = g.field
    mats = []
    basis_counts = [g.n_basis(p) for p in range(p_max + 2)]
    for p in range(p_max + 1):
        m_p = basis_counts[p]
        basis_pos = {label: i for i, label in enumerate(g.basis.get(p, ()))}
        eps_row: dict = {}
        cols = []
        for label in g.basis.get(p + 1, ()):
            col = g.column(label)
            entries = []
            for r, c in col.entries:
                face = g.universe[p][r]
                i = basis_pos.get(face)
                if i is None:
                    i = eps_row.setdefault(face, m_p + len(eps_row))
                entries.append((i, c))
            cols.append(SparseColumn(sorted(entries)))
        mats.append(SparseMatrix(m_p + len(eps_row), cols, field))
    return BoundaryMatrices(tuple(mats), tuple(basis_counts))


def compute_pairings(bm: BoundaryMatrices, clearing: bool = True) -> list[Pairing]:
    """Reduce every boundary matrix and collect pairs and surviving cycles.

    With clearing on, matrices are processed in decreasing dimension and a
    column whose generator was already paired one dimension up is zeroed
    without reduction; the output is identical either way.
    """
    mats = bm.mats
    p_top = len(mats) - 1
    reduced: dict[int, SparseMatrix] = {}
    paired_rows: dict[int, set] = {}
    pairs_at: dict[int, set] = {}
    if clearing:
        skip: set = set()
        for p in range(p_top, -1, -1):
            red, pivots = reduce(mats[p], skip_columns=skip)
            reduced[p] = red
            m_p = bm.basis_counts[p]
            pairs_at[p] = {(r, c) for r, c in pivots.pairs if r < m_p}
            skip = {r for r, _ in pairs_at[p]}
    else:
        for p in range(p_top + 1):
            red, pivots = reduce(mats[p])
            reduced[p] = red
            m_p = bm.basis_counts[p]
            pairs_at[p] = {(r, c) for r, c in pivots.pairs if r < m_p}
    for p, prs in pairs_at.items():
        paired_rows[p] = {r for r, _ in prs}

    out = []
    for p in range(p_top + 1):
        if p == 0:
            zero_cols = set(range(bm.basis_counts[0]))
        else:
            zero_cols = {j for j, col in enumerate(reduced[p - 1].columns) if col.is_zero}
        cycles = zero_cols - paired_rows.get(p, set())
        out.append(Pairing(p, frozenset(pairs_at[p]), frozenset(cycles)))
    return out


def barcode(pairings, f: FilteredGradedSubgroup) -> Barcode:
    intervals = []
    for pairing in pairings:
        p = pairing.dim
        heights_p = f.heights.get(p, [])
        heights_up = f.heights.get(p + 1, [])
        for i in pairing.unpaired_cycles:
            intervals.append((p, heights_p[i], math.inf))
        for i, j in pairing.pairs:
            b, d = heights_p[i], heights_up[j]
            if b < d:
                intervals.append((p, b, d))
    return Barcode(intervals)


def persistent_betti_oracle(f: FilteredGradedSubgroup, p_max: int) -> dict:
    """Ranks of H_p(stage i) -> H_p(stage j) for all 1 <= i <= j <= N.

    Computed from the supremum complex at each stage: the image of the map
    induced by inclusion has dimension dim(Z_i + B_j) - dim(B_j), where
    Z_i is the stage-i cycle space and B_j the stage-j boundary space,
    both written in ambient coordinates.
    """
    g = f.graded
    q = g.q
    N = f.num_stages
    table: dict = {}
    if N == 0:
        return table
    slices = {i: sup_complex(f, p_max, stage=i) for i in range(1, N + 1)}
    for p in range(p_max + 1):
        rows = g.universe_size(p)
        cycles = {}
        for i in range(1, N + 1):
            sl = slices[i]
            vecs = sl.vector_matrix(p)
            if p == 0:
                cycles[i] = vecs
            else:
                ker = dense_kernel(sl.boundary_matrix(p).to_dense(), q)
                cycles[i] = (vecs @ ker) % q
        bound = {}
        bound_rank = {}
        for j in range(1, N + 1):
            labels = g.basis.get(p + 1, [])[: f.stage_prefix(p + 1, j)]
            bound[j] = dense_matrix([g.column(l) for l in labels], rows, q)
            bound_rank[j] = dense_rank(bound[j], q)
        for i in range(1, N + 1):
            for j in range(i, N + 1):
                stacked = np.hstack([cycles[i], bound[j]])
                table[(p, i, j)] = dense_rank(stacked, q) - bound_rank[j]
    return table


def betti_table_from_barcode(bc: Barcode, p_max: int, num_stages: int) -> dict:
    """Interval counts over stage windows, in the same shape as the oracle table."""
    table = {
        (p, i, j): 0
        for p in range(p_max + 1)
        for i in range(1, num_stages + 1)
        for j in range(i, num_stages + 1)
    }
    for p, b, d in bc:
        if p > p_max:
            continue
        top = num_stages if d == math.inf else min(int(d) - 1, num_stages)
        for i in range(b, num_stages + 1):
            for j in range(i, top + 1):
                if j >= i:
                    table[(p, i, j)] += 1
    return table
