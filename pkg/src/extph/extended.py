"""Extended persistence of graded-subgroup filtrations via mapping cones.

Given an ascending filtration D^1 ⊆ ... ⊆ D^M and a descending one
E^1 ⊆ ... ⊆ E^N of graded subgroups whose tops span the same space, the
extended module runs

    H_p(D^1) -> ... -> H_p(D^M) -> H_p(D^M, E^1) -> ... -> H_p(D^M, E^N) = 0.

Relative terms are computed by coning: the cone of E ⊆ D inside the cone
of the ambient identity has supremum complex equal to the cone of the
supremum complexes (the constructions commute), and the homology of the
cone of an inclusion is the homology of the quotient.  Concretely one
builds a single M+N stage filtration on the cone whose generators are
base copies (0, d) of the ascending basis followed by cone copies (e, 0)
of the descending basis, runs the ordinary pairing algorithm on it, and
sorts the resulting pairs into three interval types:

* base row / base column  -> ordinary interval on the ascending stages,
* cone row / cone column  -> relative interval on the descending stages,
* base row / cone column  -> extended interval crossing the middle.

A base column never pivots on a cone row, and because the module ends at
zero no generator survives unpaired; either situation raises
ConsistencyError.  ``extended_module_oracle`` recomputes every composite
rank of the module directly from supremum complexes and quotients, with
no cones and no pivots, and is the ground truth for the barcode.
"""

from typing import Any, NamedTuple

import numpy as np

from .errors import ConsistencyError, GradedValidationError
from .field import (
    IncrementalSpan,
    SparseColumn,
    SparseMatrix,
    dense_kernel,
    dense_matrix,
    dense_rank,
    dense_solve_many,
)
from .graded import (
    ChainComplexSlice,
    FilteredGradedSubgroup,
    GradedSubgroup,
    ValidationReport,
    sup_complex,
    validate_compatible,
)
from .persistence import build_matrices, compute_pairings

__all__ = [
    "BASE",
    "CONE",
    "ORDINARY",
    "RELATIVE",
    "EXTENDED",
    "ConeGenerator",
    "ExtendedInput",
    "ExtendedInterval",
    "ExtendedBarcode",
    "mapping_cone",
    "cone_graded",
    "build_extended_filtration",
    "extended_barcode",
    "extended_module_oracle",
    "interval_rank_table",
]

BASE = "base"
CONE = "cone"

ORDINARY = "ordinary"
RELATIVE = "relative"
EXTENDED = "extended"


class ConeGenerator(NamedTuple):
    """A generator of the cone: (0, gen) when part == BASE, (gen, 0) when part == CONE.

    ``dim`` is the cone dimension: the underlying generator's dimension
    for base copies, one more for cone copies.
    """

    part: str
    gen: Any
    dim: int


class ExtendedInput:
    """Ascending and descending filtrations over one shared generator universe.

    Both filtrations must list the same basis generators per dimension
    (each in its own compatible order), the same extension generators and
    the same boundaries; the correspondence between the two bases is
    identity on labels.  Heights of the ascending side live in [1, M],
    heights of the descending side in [1, N]; both tops automatically span
    the full basis, as the definition of extended persistence requires.
    """

    def __init__(self, ascending: FilteredGradedSubgroup, descending: FilteredGradedSubgroup, check=True):
        self.ascending = ascending
        self.descending = descending
        self.M = ascending.num_stages
        self.N = descending.num_stages
        self._asc_pos = {
            p: {label: i for i, label in enumerate(ascending.graded.basis[p])}
            for p in ascending.graded.dims()
        }
        self._desc_pos = {
            p: {label: i for i, label in enumerate(descending.graded.basis[p])}
            for p in descending.graded.dims()
        }
        if check:
            report = self.validate()
            if not report.ok:
                raise GradedValidationError(str(report))

    @property
    def field(self):
        return self.ascending.field

    @property
    def q(self) -> int:
        return self.ascending.q

    def asc_height(self, label) -> int:
        return self.ascending.height_of(label)

    def desc_height(self, label) -> int:
        return self.descending.height_of(label)

    def asc_position(self, p: int, label) -> int:
        return self._asc_pos[p][label]

    def desc_position(self, p: int, label) -> int:
        return self._desc_pos[p][label]

    def validate(self) -> ValidationReport:
        problems = []
        problems += [f"ascending: {m}" for m in validate_compatible(self.ascending).problems]
        problems += [f"descending: {m}" for m in validate_compatible(self.descending).problems]
        a, d = self.ascending.graded, self.descending.graded
        if a.field != d.field:
            problems.append("the two filtrations use different fields")
            return ValidationReport(problems)
        top = max(a.max_dim, d.max_dim)
        for p in range(top + 1):
            if frozenset(a.basis.get(p, ())) != frozenset(d.basis.get(p, ())):
                problems.append(f"dimension {p}: ascending and descending basis sets differ")
                continue
            if frozenset(a.extension.get(p, ())) != frozenset(d.extension.get(p, ())):
                problems.append(f"dimension {p}: extension generator sets differ")
                continue
            for label in a.universe.get(p, ()):
                if a.boundary_dict(label) != d.boundary_dict(label):
                    problems.append(f"boundaries of {label!r} disagree between the two filtrations")
                    break
        return ValidationReport(problems)

    @classmethod
    def from_heights(
        cls,
        basis,
        extension,
        boundary,
        ascending_heights,
        descending_heights,
        num_ascending: int,
        num_descending: int,
        q: int = 2,
        check: bool = True,
    ) -> "ExtendedInput":
        """Build both filtrations from one generator listing and two height maps.

        ``basis[p]`` fixes a deterministic input order per dimension; each
        side sorts it stably by its own heights to obtain a compatible
        order.
        """
        dims = sorted(set(basis) | set(extension or {}))
        asc_basis, asc_hts, desc_basis, desc_hts = {}, {}, {}, {}
        for p in dims:
            labels = list(basis.get(p, ()))
            a_sorted = sorted(labels, key=lambda l: ascending_heights[l])
            d_sorted = sorted(labels, key=lambda l: descending_heights[l])
            asc_basis[p] = a_sorted
            asc_hts[p] = [ascending_heights[l] for l in a_sorted]
            desc_basis[p] = d_sorted
            desc_hts[p] = [descending_heights[l] for l in d_sorted]
        ext = {p: list((extension or {}).get(p, ())) for p in dims}
        a_g = GradedSubgroup(asc_basis, ext, boundary, q=q)
        d_g = GradedSubgroup(desc_basis, ext, boundary, q=q)
        return cls(
            FilteredGradedSubgroup(a_g, asc_hts, num_ascending),
            FilteredGradedSubgroup(d_g, desc_hts, num_descending),
            check=check,
        )


class ExtendedInterval(NamedTuple):
    """One interval of the extended barcode.

    Ordinary: birth/death are ascending stage indices, birth < death <= M.
    Relative: birth/death are descending stage indices, birth < death <= N.
    Extended: birth is an ascending index, death a descending one; the
    class survives descending stages 1..death-1 (death = 1 means it dies
    as soon as the relative block starts).
    """

    dim: int
    kind: str
    birth: int
    death: int


class ExtendedBarcode:
    """Multiset of extended intervals over an M + N stage grid."""

    __slots__ = ("intervals", "num_ascending", "num_descending")

    def __init__(self, intervals, num_ascending: int, num_descending: int):
        self.intervals = tuple(sorted(intervals))
        self.num_ascending = int(num_ascending)
        self.num_descending = int(num_descending)

    def of_kind(self, kind: str, dim=None):
        return tuple(
            iv for iv in self.intervals if iv.kind == kind and (dim is None or iv.dim == dim)
        )

    def global_intervals(self):
        """Intervals as [birth, death) on the combined 1..M+N stage axis."""
        M = self.num_ascending
        out = []
        for iv in self.intervals:
            if iv.kind == ORDINARY:
                out.append((iv.dim, iv.birth, iv.death))
            elif iv.kind == RELATIVE:
                out.append((iv.dim, M + iv.birth, M + iv.death))
            else:
                out.append((iv.dim, iv.birth, M + iv.death))
        return out

    def as_multiset(self):
        from collections import Counter

        return Counter(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self):
        return len(self.intervals)

    def __eq__(self, other):
        return (
            isinstance(other, ExtendedBarcode)
            and other.intervals == self.intervals
            and other.num_ascending == self.num_ascending
            and other.num_descending == self.num_descending
        )

    def __repr__(self):
        return f"ExtendedBarcode({list(self.intervals)}, M={self.num_ascending}, N={self.num_descending})"


# ---------------------------------------------------------------------------
# cones
# ---------------------------------------------------------------------------


def mapping_cone(small: ChainComplexSlice, big: ChainComplexSlice) -> ChainComplexSlice:
    """Mapping cone of the inclusion small ⊆ big.

    Cone dimension p is small_{p-1} ⊕ big_p with boundary
    (c', c) -> (-d'c', c' + dc).  Cone ambient coordinates are the big
    slice's dimension-p coordinates followed by its dimension-(p-1) ones,
    matching the row layout of ``cone_graded``.
    """
    if small.field != big.field:
        raise GradedValidationError("slices live over different fields")
    field = big.field
    q = field.q
    max_dim = big.max_dim
    for p in range(max_dim + 1):
        if small.ambient_rows.get(p, 0) != big.ambient_rows.get(p, 0):
            raise GradedValidationError(f"slices disagree on ambient coordinates at dimension {p}")
        rows = big.ambient_rows.get(p, 0)
        span = IncrementalSpan(rows, q)
        for v in big.vectors.get(p, ()):
            span.add(v.to_dense(rows))
        for v in small.vectors.get(p, ()):
            if not span.contains(v.to_dense(rows)):
                raise GradedValidationError(f"dimension {p}: small slice not contained in big slice")

    # small chains re-expressed over the big basis, for the c' + dc term
    small_in_big = {}
    for p in range(max_dim + 1):
        rows = big.ambient_rows.get(p, 0)
        if small.dim(p):
            x = dense_solve_many(big.vector_matrix(p), small.vector_matrix(p), q)
            if x is None:
                raise GradedValidationError(f"dimension {p}: small slice not contained in big slice")
            small_in_big[p] = x
        else:
            small_in_big[p] = np.zeros((big.dim(p), 0), dtype=np.int64)

    vectors, boundaries = {}, {}
    ambient = {}
    for p in range(max_dim + 1):
        nb, ns = big.ambient_rows.get(p, 0), big.ambient_rows.get(p - 1, 0)
        ambient[p] = nb + ns
        vecs = [SparseColumn(v.entries) for v in big.vectors.get(p, ())]
        for v in small.vectors.get(p - 1, ()):
            vecs.append(SparseColumn((r + nb, c) for r, c in v.entries))
        vectors[p] = vecs
    for p in range(1, max_dim + 1):
        kb_prev, ks_prev = big.dim(p - 1), small.dim(p - 2)
        cols = []
        big_bnd = big.boundary_matrix(p)
        for j in range(big.dim(p)):
            cols.append(big_bnd.column(j))  # (0, c) -> (0, dc)
        small_bnd = small.boundary_matrix(p - 1)
        expr = small_in_big[p - 1]
        for k in range(small.dim(p - 1)):
            pairs = [(int(i), int(expr[i, k])) for i in range(kb_prev)]  # the c' term
            for r, c in small_bnd.column(k).entries:  # the -d'c' term, cone block
                pairs.append((kb_prev + r, field.neg(c)))
            cols.append(SparseColumn.from_pairs(pairs, field))
        boundaries[p] = SparseMatrix(kb_prev + ks_prev, cols, field)

    cone = ChainComplexSlice(field, max_dim, ambient, vectors, boundaries)
    for p in range(1, max_dim):
        a = cone.boundary_matrix(p).to_dense()
        b = cone.boundary_matrix(p + 1).to_dense()
        if a.size and b.size and ((a @ b) % q).any():
            raise ConsistencyError("cone boundary does not square to zero")
    return cone


def cone_graded(small: GradedSubgroup, big: GradedSubgroup) -> GradedSubgroup:
    """Cone of the inclusion small ⊆ big, as a graded subgroup of the ambient cone.

    Both subgroups must share the ambient listing (same universe, same
    boundaries) and small's basis must be a subset of big's per dimension.
    Cone dimension p lists the base copies of the full dimension-p universe
    followed by the cone copies of the dimension-(p-1) universe, so row
    layouts line up with ``mapping_cone``.
    """
    if small.field != big.field:
        raise GradedValidationError("graded subgroups live over different fields")
    q = big.q
    top = big.max_dim
    for p in range(top + 1):
        if small.universe.get(p, []) != big.universe.get(p, []):
            raise GradedValidationError(f"dimension {p}: the two subgroups list different universes")
        if not small.basis_set(p) <= big.basis_set(p):
            raise GradedValidationError(f"dimension {p}: small basis is not contained in big basis")
        for label in big.universe.get(p, ()):
            if small.boundary_dict(label) != big.boundary_dict(label):
                raise GradedValidationError(f"boundaries of {label!r} disagree between the subgroups")

    basis, extension, universe, boundary = {}, {}, {}, {}
    for p in range(top + 2):
        base_univ = [ConeGenerator(BASE, u, p) for u in big.universe.get(p, ())]
        cone_univ = [ConeGenerator(CONE, u, p) for u in big.universe.get(p - 1, ())]
        universe[p] = base_univ + cone_univ
        b = [ConeGenerator(BASE, u, p) for u in big.basis.get(p, ())]
        b += [ConeGenerator(CONE, u, p) for u in small.basis.get(p - 1, ())]
        basis[p] = b
        in_basis = frozenset(b)
        extension[p] = [cg for cg in universe[p] if cg not in in_basis]
        for u in big.universe.get(p, ()):
            if p >= 1:
                boundary[ConeGenerator(BASE, u, p)] = {
                    ConeGenerator(BASE, f, p - 1): c for f, c in big.boundary_dict(u).items()
                }
        for u in big.universe.get(p - 1, ()):
            faces: dict = {ConeGenerator(BASE, u, p - 1): 1}
            for f, c in big.boundary_dict(u).items():
                faces[ConeGenerator(CONE, f, p - 1)] = (-c) % q
            boundary[ConeGenerator(CONE, u, p)] = faces
    return GradedSubgroup(basis, extension, boundary, q=big.field, universe=universe)


def build_extended_filtration(x: ExtendedInput, p_max: int) -> FilteredGradedSubgroup:
    """The M + N stage filtration on the cone that computes extended persistence.

    Cone dimension p carries the base copies of the ascending basis (at
    their ascending heights) followed by the cone copies of the descending
    dimension-(p-1) basis (at M + descending height); extension generators
    are the base then cone copies of the shared extension set.  Generators
    above dimension p_max + 1 are not materialized.
    """
    asc, desc = x.ascending, x.descending
    ag, dg = asc.graded, desc.graded
    q = ag.q
    M = x.M
    basis, extension, heights, boundary = {}, {}, {}, {}
    for p in range(p_max + 2):
        base_basis = ag.basis.get(p, [])
        cone_basis = dg.basis.get(p - 1, [])
        basis[p] = [ConeGenerator(BASE, u, p) for u in base_basis]
        basis[p] += [ConeGenerator(CONE, u, p) for u in cone_basis]
        heights[p] = [asc.height_of(u) for u in base_basis]
        heights[p] += [M + desc.height_of(u) for u in cone_basis]
        extension[p] = [ConeGenerator(BASE, u, p) for u in ag.extension.get(p, ())]
        extension[p] += [ConeGenerator(CONE, u, p) for u in ag.extension.get(p - 1, ())]
        if p >= 1:
            for u in base_basis:
                boundary[ConeGenerator(BASE, u, p)] = {
                    ConeGenerator(BASE, f, p - 1): c for f, c in ag.boundary_dict(u).items()
                }
            for u in ag.extension.get(p, ()):
                boundary[ConeGenerator(BASE, u, p)] = {
                    ConeGenerator(BASE, f, p - 1): c for f, c in ag.boundary_dict(u).items()
                }
        for u in cone_basis:
            faces: dict = {ConeGenerator(BASE, u, p - 1): 1}
            for f, c in ag.boundary_dict(u).items():
                faces[ConeGenerator(CONE, f, p - 1)] = (-c) % q
            boundary[ConeGenerator(CONE, u, p)] = faces
        for u in ag.extension.get(p - 1, ()):
            faces = {ConeGenerator(BASE, u, p - 1): 1}
            for f, c in ag.boundary_dict(u).items():
                faces[ConeGenerator(CONE, f, p - 1)] = (-c) % q
            boundary[ConeGenerator(CONE, u, p)] = faces
    cone_g = GradedSubgroup(basis, extension, boundary, q=ag.field)
    return FilteredGradedSubgroup(cone_g, heights, M + x.N)


def extended_barcode(
    x: ExtendedInput,
    p_max: int,
    clearing: bool = True,
    case_iii_reading: str = "corresponding",
) -> ExtendedBarcode:
    """Run the pairing algorithm on the cone filtration and type the intervals.

    ``case_iii_reading`` selects how the endpoints of an extended pair
    (base row, cone column) are read:

    * "corresponding": heights of the paired generators themselves: the
      ascending height of the row generator, the descending height of the
      column generator;
    * "positional": heights looked up by swapping each generator for the
      one sitting at its position in the *other* side's compatible order.

    The readings agree whenever the two orders coincide; the rank oracle
    singles out "corresponding" as the correct one, which is the default.
    """
    if case_iii_reading not in ("corresponding", "positional"):
        raise ValueError(f"unknown case_iii_reading {case_iii_reading!r}")
    cone_f = build_extended_filtration(x, p_max)
    pairings = compute_pairings(build_matrices(cone_f, p_max), clearing=clearing)
    asc_basis = {p: x.ascending.graded.basis.get(p, []) for p in range(p_max + 2)}
    desc_basis = {p: x.descending.graded.basis.get(p, []) for p in range(p_max + 2)}
    intervals = []
    for pairing in pairings:
        p = pairing.dim
        row_gens = cone_f.graded.basis.get(p, [])
        col_gens = cone_f.graded.basis.get(p + 1, [])
        if pairing.unpaired_cycles:
            i = min(pairing.unpaired_cycles)
            raise ConsistencyError(
                f"dimension {p}: generator {row_gens[i]!r} opens an interval that never closes;"
                " the ascending and descending tops do not span the same space"
            )
        for i, j in sorted(pairing.pairs):
            rg, cg = row_gens[i], col_gens[j]
            if rg.part == BASE and cg.part == BASE:
                b, d = x.asc_height(rg.gen), x.asc_height(cg.gen)
                if b < d:
                    intervals.append(ExtendedInterval(p, ORDINARY, b, d))
            elif rg.part == CONE and cg.part == CONE:
                b, d = x.desc_height(rg.gen), x.desc_height(cg.gen)
                if b < d:
                    intervals.append(ExtendedInterval(p, RELATIVE, b, d))
            elif rg.part == BASE and cg.part == CONE:
                if case_iii_reading == "corresponding":
                    b = x.asc_height(rg.gen)
                    d = x.desc_height(cg.gen)
                else:
                    b = x.asc_height(asc_basis[p][x.desc_position(p, rg.gen)])
                    d = x.desc_height(desc_basis[p][x.asc_position(p, cg.gen)])
                intervals.append(ExtendedInterval(p, EXTENDED, b, d))
            else:
                raise ConsistencyError(
                    f"dimension {p}: a cone generator {rg!r} was paired with a base column {cg!r}"
                )
    return ExtendedBarcode(intervals, x.M, x.N)


# ---------------------------------------------------------------------------
# rank oracle
# ---------------------------------------------------------------------------


def extended_module_oracle(x: ExtendedInput, p_max: int) -> dict:
    """Rank of every composite map of the extended module, without cones.

    Keys are (p, u, v) with 1 <= u <= v <= M + N; positions <= M are the
    ascending homology groups, positions M + j the relative ones.  The
    diagonal entries are the dimensions of the module's terms, and the
    final diagonal entry is always 0.
    """
    asc, desc = x.ascending, x.descending
    g = asc.graded
    q = g.q
    M, N = x.M, x.N
    L = M + N
    table: dict = {}
    if L == 0:
        return table
    if M == 0:
        # no ascending stages: the basis is necessarily empty and so is the module
        return {
            (p, u, v): 0 for p in range(p_max + 1) for u in range(1, L + 1) for v in range(u, L + 1)
        }
    s_slices = {u: sup_complex(asc, p_max, stage=u) for u in range(1, M + 1)}
    t_slices = {}
    for j in range(1, N + 1):
        keep = {
            p: [l for l in g.basis.get(p, ()) if desc.height_of(l) <= j] for p in g.dims()
        }
        t_slices[j] = sup_complex(g.restricted(keep), p_max)
    top = s_slices[M]

    for p in range(p_max + 1):
        rows = g.universe_size(p)
        rows_prev = g.universe_size(p - 1) if p >= 1 else 0
        cycles = {}
        for u in range(1, M + 1):
            sl = s_slices[u]
            vecs = sl.vector_matrix(p)
            if p == 0:
                cycles[u] = vecs
            else:
                ker = dense_kernel(sl.boundary_matrix(p).to_dense(), q)
                cycles[u] = (vecs @ ker) % q
        bound = {}
        bound_rank = {}
        for u in range(1, M + 1):
            labels = g.basis.get(p + 1, [])[: asc.stage_prefix(p + 1, u)]
            bound[u] = dense_matrix([g.column(l) for l in labels], rows, q)
            bound_rank[u] = dense_rank(bound[u], q)

        # relative positions: denominators d(S^M_{p+1}) + T^j_p and the
        # relative cycle spaces {chains of S^M_p with boundary inside T^j_{p-1}}
        rel_denom, rel_denom_rank, rel_cycles = {}, {}, {}
        if N:
            top_vecs = top.vector_matrix(p)
            if p >= 1:
                top_img = dense_matrix(
                    [
                        g.column(label) if label is not None else SparseColumn()
                        for label in top.provenance.get(p, ())
                    ],
                    rows_prev,
                    q,
                )
            for j in range(1, N + 1):
                t_p = t_slices[j].vector_matrix(p)
                rel_denom[j] = np.hstack([bound[M], t_p])
                rel_denom_rank[j] = dense_rank(rel_denom[j], q)
                if p == 0:
                    rel_cycles[j] = top_vecs
                else:
                    t_prev = t_slices[j].vector_matrix(p - 1)
                    stacked = np.hstack([top_img, (-t_prev) % q])
                    ker = dense_kernel(stacked, q)
                    alpha = ker[: top.dim(p), :]
                    rel_cycles[j] = (top_vecs @ alpha) % q

        for u in range(1, L + 1):
            source = cycles[u] if u <= M else rel_cycles[u - M]
            for v in range(u, L + 1):
                if v <= M:
                    denom, denom_rank = bound[v], bound_rank[v]
                else:
                    denom, denom_rank = rel_denom[v - M], rel_denom_rank[v - M]
                table[(p, u, v)] = dense_rank(np.hstack([source, denom]), q) - denom_rank
    return table


def interval_rank_table(bc: ExtendedBarcode, p_max: int) -> dict:
    """Window interval counts, in the same shape as the module oracle table."""
    L = bc.num_ascending + bc.num_descending
    table = {
        (p, u, v): 0 for p in range(p_max + 1) for u in range(1, L + 1) for v in range(u, L + 1)
    }
    for dim, gb, gd in bc.global_intervals():
        if dim > p_max:
            continue
        for u in range(gb, L + 1):
            for v in range(u, min(gd - 1, L) + 1):
                table[(dim, u, v)] += 1
    return table
