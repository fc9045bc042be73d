"""Graded subgroups of a chain complex, and rank-based homology oracles.

A graded subgroup here is a choice, per dimension p, of a sub-list of an
explicitly listed generator universe: the *basis* generators span the
subgroup D_p, the *extension* generators are the extra coordinates needed
to write down boundaries (the subgroup need not be closed under the
boundary map).  All boundary data is given over the listed universe, so
d∘d = 0 is checkable and the two canonical subcomplexes attached to the
subgroup can be computed:

* the supremum complex  S_p = D_p + d(D_{p+1}), the smallest subcomplex
  containing D_*;
* the infimum complex   I_p = D_p ∩ d^{-1}(D_{p-1}), the largest
  subcomplex contained in D_*.

Their homologies agree, which is what ``homology_dims`` exploits as a
verification oracle.  Every rank computed in this module goes through the
dense elimination helpers, never through the sparse pivot reduction that
the pairing algorithms use, so the two code paths stay independent.
"""

from bisect import bisect_right
from typing import NamedTuple

import numpy as np

from .errors import GradedValidationError
from .field import (
    IncrementalSpan,
    SparseColumn,
    SparseMatrix,
    as_field,
    dense_kernel,
    dense_matrix,
    dense_rank,
    dense_solve_many,
)

__all__ = [
    "BASIS",
    "EXTENSION",
    "GeneratorId",
    "ValidationReport",
    "GradedSubgroup",
    "FilteredGradedSubgroup",
    "ChainComplexSlice",
    "validate_compatible",
    "sup_complex",
    "inf_complex",
    "homology_dims",
    "relative_homology_dims",
]

BASIS = "basis"
EXTENSION = "extension"


class GeneratorId(NamedTuple):
    """Convenience label for hand-built instances; any hashable works."""

    dim: int
    kind: str
    index: int


class ValidationReport:
    """Outcome of a structural validation pass; never raised, only returned."""

    __slots__ = ("problems",)

    def __init__(self, problems=()):
        self.problems = list(problems)

    @property
    def ok(self) -> bool:
        return not self.problems

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return "ValidationReport(ok)" if self.ok else f"ValidationReport({self.problems!r})"

    def __str__(self):
        return "ok" if self.ok else "; ".join(self.problems)


class GradedSubgroup:
    """Per-dimension basis/extension generator lists plus boundary data.

    ``boundary`` maps a generator label to a dict ``{face_label: coeff}``
    describing its boundary one dimension down; omitted labels have zero
    boundary (dimension-0 generators always do).  Row order for stored
    columns is the *universe* order, which defaults to basis followed by
    extension.
    """

    def __init__(self, basis, extension=None, boundary=None, q=2, universe=None):
        self.field = as_field(q)
        extension = extension or {}
        dims = {p for p, labels in basis.items() if labels}
        dims |= {p for p, labels in extension.items() if labels}
        self.max_dim = max(dims) if dims else -1
        n = self.max_dim + 1
        self.basis = {p: list(basis.get(p, ())) for p in range(n)}
        self.extension = {p: list(extension.get(p, ())) for p in range(n)}
        if universe is None:
            self.universe = {p: self.basis[p] + self.extension[p] for p in range(n)}
        else:
            self.universe = {p: list(universe.get(p, ())) for p in range(n)}
            for p in range(n):
                if sorted(map(repr, self.universe[p])) != sorted(
                    map(repr, self.basis[p] + self.extension[p])
                ):
                    raise ValueError(f"dimension {p}: universe is not a permutation of basis+extension")
        self._row = {p: {label: i for i, label in enumerate(self.universe[p])} for p in range(n)}
        self._basis_set = {p: frozenset(self.basis[p]) for p in range(n)}
        self._dim_of = {}
        for p in range(n):
            if len(self._row[p]) != len(self.universe[p]):
                raise ValueError(f"dimension {p}: duplicate generator labels")
            for label in self.universe[p]:
                if label in self._dim_of:
                    raise ValueError(f"generator label {label!r} listed in two dimensions")
                self._dim_of[label] = p
        self._raw = {label: dict(faces) for label, faces in (boundary or {}).items()}
        self._cols: dict = {}

    # -- introspection -----------------------------------------------------

    @property
    def q(self) -> int:
        return self.field.q

    def dims(self):
        return range(self.max_dim + 1)

    def n_basis(self, p: int) -> int:
        return len(self.basis.get(p, ()))

    def universe_size(self, p: int) -> int:
        return len(self.universe.get(p, ()))

    def basis_set(self, p: int):
        return self._basis_set.get(p, frozenset())

    def row_of(self, p: int, label) -> int:
        return self._row[p][label]

    def dim_of(self, label) -> int:
        return self._dim_of[label]

    def boundary_dict(self, label) -> dict:
        """Normalized boundary of a listed generator as {face: coeff mod q}."""
        q = self.field.q
        return {face: c % q for face, c in self._raw.get(label, {}).items() if c % q}

    def column(self, label) -> SparseColumn:
        """Boundary of a listed generator as a column over the universe one dimension down."""
        col = self._cols.get(label)
        if col is None:
            p = self._dim_of[label]
            faces = self._raw.get(label, {})
            if p == 0:
                if any(c % self.field.q for c in faces.values()):
                    raise GradedValidationError(
                        f"dimension-0 generator {label!r} was given a nonzero boundary"
                    )
                col = SparseColumn()
            else:
                row = self._row[p - 1]
                pairs = []
                for face, coeff in faces.items():
                    r = row.get(face)
                    if r is None:
                        raise GradedValidationError(
                            f"boundary of {label!r} references unlisted generator {face!r}"
                        )
                    pairs.append((r, coeff))
                col = SparseColumn.from_pairs(pairs, self.field)
            self._cols[label] = col
        return col

    # -- derived objects ----------------------------------------------------

    def restricted(self, keep) -> "GradedSubgroup":
        """Subgroup spanned by a subset of the basis generators.

        The universe (and hence the row order of every column) is kept
        intact; dropped basis generators become extension generators.
        """
        out_basis = {}
        for p in self.dims():
            wanted = frozenset(keep.get(p, ()))
            unknown = wanted - self._basis_set[p]
            if unknown:
                raise ValueError(f"dimension {p}: {sorted(map(repr, unknown))} are not basis generators")
            out_basis[p] = [l for l in self.basis[p] if l in wanted]
        out_ext = {
            p: [l for l in self.universe[p] if l not in frozenset(out_basis[p])] for p in self.dims()
        }
        return GradedSubgroup(out_basis, out_ext, self._raw, q=self.field, universe=self.universe)

    def validate(self) -> ValidationReport:
        """Check closure (all referenced faces listed) and d∘d = 0."""
        problems = []
        for label in self._raw:
            if label not in self._dim_of:
                problems.append(f"boundary given for unlisted generator {label!r}")
        q = self.field.q
        for p in self.dims():
            row_prev = self._row.get(p - 1, {})
            for label in self.universe[p]:
                faces = self._raw.get(label, {})
                if p == 0:
                    if any(c % q for c in faces.values()):
                        problems.append(f"dimension-0 generator {label!r} has a nonzero boundary")
                    continue
                for face in faces:
                    if face not in row_prev:
                        problems.append(
                            f"boundary of {label!r} references unlisted generator {face!r}"
                        )
                        break
        if not problems:
            for p in range(2, self.max_dim + 1):
                for label in self.universe[p]:
                    acc: dict = {}
                    for face, c in self._raw.get(label, {}).items():
                        for face2, c2 in self._raw.get(face, {}).items():
                            acc[face2] = (acc.get(face2, 0) + c * c2) % q
                    if any(acc.values()):
                        problems.append(f"boundary of boundary of {label!r} is nonzero")
                        break
        return ValidationReport(problems)


class FilteredGradedSubgroup:
    """A graded subgroup with a stage height per basis generator.

    Heights live in [1, num_stages] and must be non-decreasing along each
    dimension's basis order: that order is then a compatible basis for the
    stage filtration, and stage i is spanned by a prefix of it.
    """

    def __init__(self, graded: GradedSubgroup, heights, num_stages: int):
        self.graded = graded
        self.num_stages = int(num_stages)
        self.heights = {p: [int(h) for h in heights.get(p, ())] for p in graded.dims()}
        self._height_of = {}
        for p in graded.dims():
            labels = graded.basis[p]
            if len(self.heights[p]) != len(labels):
                raise ValueError(
                    f"dimension {p}: {len(self.heights[p])} heights for {len(labels)} basis generators"
                )
            for label, h in zip(labels, self.heights[p]):
                self._height_of[label] = h

    @property
    def field(self):
        return self.graded.field

    @property
    def q(self) -> int:
        return self.graded.q

    def height_of(self, label) -> int:
        return self._height_of[label]

    def stage_prefix(self, p: int, stage: int) -> int:
        """Number of dimension-p basis generators present at a stage."""
        return bisect_right(self.heights.get(p, []), stage)

    def restricted_to_stage(self, stage: int) -> GradedSubgroup:
        keep = {p: self.graded.basis[p][: self.stage_prefix(p, stage)] for p in self.graded.dims()}
        return self.graded.restricted(keep)


def validate_compatible(f: FilteredGradedSubgroup) -> ValidationReport:
    """Full structural check: closure, d∘d = 0, heights in range and monotone."""
    problems = list(f.graded.validate().problems)
    for p in f.graded.dims():
        labels = f.graded.basis[p]
        prev = None
        for idx, h in enumerate(f.heights[p]):
            if not 1 <= h <= f.num_stages:
                problems.append(
                    f"dimension {p}: height {h} of generator {labels[idx]!r} (index {idx})"
                    f" outside [1, {f.num_stages}]"
                )
                break
            if prev is not None and h < prev:
                problems.append(
                    f"dimension {p}: heights decrease at generator {labels[idx]!r} (index {idx})"
                )
                break
            prev = h
    return ValidationReport(problems)


class ChainComplexSlice:
    """A finite chunk of a chain complex.

    ``vectors[p]`` are the chosen basis chains written in the ambient
    universe coordinates of their source subgroup; ``boundaries[p]`` is the
    boundary matrix dim p -> dim p-1 written in the slice's own bases.
    """

    __slots__ = ("field", "max_dim", "ambient_rows", "vectors", "boundaries", "provenance")

    def __init__(self, field, max_dim, ambient_rows, vectors, boundaries, provenance=None):
        self.field = as_field(field)
        self.max_dim = int(max_dim)
        self.ambient_rows = dict(ambient_rows)
        self.vectors = {p: list(v) for p, v in vectors.items()}
        self.boundaries = dict(boundaries)
        # for supremum slices: the basis label behind each unit vector,
        # None for vectors that are exact boundaries (whose image vanishes)
        self.provenance = provenance

    @property
    def q(self) -> int:
        return self.field.q

    def dim(self, p: int) -> int:
        return len(self.vectors.get(p, ()))

    def vector_matrix(self, p: int) -> np.ndarray:
        return dense_matrix(self.vectors.get(p, []), self.ambient_rows.get(p, 0), self.q)

    def boundary_matrix(self, p: int) -> SparseMatrix:
        mat = self.boundaries.get(p)
        if mat is None:
            mat = SparseMatrix(self.dim(p - 1), [SparseColumn()] * self.dim(p), self.field)
        return mat


def _split_filtered(g):
    if isinstance(g, FilteredGradedSubgroup):
        return g, g.graded
    return None, g


def sup_complex(g, p_max: int, stage=None) -> ChainComplexSlice:
    """Supremum complex S_p = D_p + d(D_{p+1}) of a graded subgroup.

    With ``stage`` given (requires a filtered subgroup), the stage-i
    subgroup is used instead.  Dimensions are built up to p_max + 1;
    boundaries of dimension p_max + 2 generators are ignored, which leaves
    every homology group up to p_max intact.
    """
    filtered, graded = _split_filtered(g)
    if stage is not None:
        if filtered is None:
            raise ValueError("stage given but the input carries no filtration")
        if not 1 <= stage <= filtered.num_stages:
            raise ValueError(f"stage {stage} outside [1, {filtered.num_stages}]")

    def stage_basis(p):
        labels = graded.basis.get(p, [])
        if stage is not None:
            return labels[: filtered.stage_prefix(p, stage)]
        return labels

    field = graded.field
    vectors, provenance = {}, {}
    for p in range(p_max + 2):
        rows = graded.universe_size(p)
        span = IncrementalSpan(rows, field.q)
        vecs, prov = [], []
        for label in stage_basis(p):
            col = SparseColumn(((graded.row_of(p, label), 1),))
            span.add(col.to_dense(rows))
            vecs.append(col)
            prov.append(label)
        if p <= p_max:
            for label in stage_basis(p + 1):
                col = graded.column(label)
                if col.is_zero:
                    continue
                if span.add(col.to_dense(rows)):
                    vecs.append(col)
                    prov.append(None)  # an exact boundary: its own boundary is zero
        vectors[p] = vecs
        provenance[p] = prov
    return _assemble_slice(graded, p_max, vectors, provenance)


def inf_complex(g, p_max: int) -> ChainComplexSlice:
    """Infimum complex I_p = D_p ∩ d^{-1}(D_{p-1}) of a graded subgroup."""
    _, graded = _split_filtered(g)
    field = graded.field
    vectors, coeffs = {}, {}
    for p in range(p_max + 2):
        labels = graded.basis.get(p, [])
        rows = graded.universe_size(p)
        if not labels:
            vectors[p], coeffs[p] = [], np.zeros((0, 0), dtype=np.int64)
            continue
        if p == 0:
            # the boundary vanishes on dimension 0, so I_0 = D_0
            ker = np.eye(len(labels), dtype=np.int64)
        else:
            bmat = dense_matrix(
                [graded.column(l) for l in labels], graded.universe_size(p - 1), field.q
            )
            basis_rows_prev = {graded.row_of(p - 1, l) for l in graded.basis.get(p - 1, ())}
            outside = [r for r in range(graded.universe_size(p - 1)) if r not in basis_rows_prev]
            if outside:
                ker = dense_kernel(bmat[outside, :], field.q)
            else:
                ker = np.eye(len(labels), dtype=np.int64)
        unit_rows = [graded.row_of(p, l) for l in labels]
        vecs = []
        for k in range(ker.shape[1]):
            pairs = [(unit_rows[i], int(ker[i, k])) for i in range(len(labels))]
            vecs.append(SparseColumn.from_pairs(pairs, field))
        vectors[p] = vecs
        coeffs[p] = ker

    # boundary of an I_p vector is a combination of basis-generator columns
    boundaries = {}
    for p in range(1, p_max + 2):
        k_prev = len(vectors[p - 1])
        cols = []
        if vectors[p]:
            labels = graded.basis.get(p, [])
            rows_prev = graded.universe_size(p - 1)
            bmat = dense_matrix([graded.column(l) for l in labels], rows_prev, field.q)
            images = (bmat @ coeffs[p]) % field.q
            prev_dense = dense_matrix(vectors[p - 1], rows_prev, field.q)
            x = dense_solve_many(prev_dense, images, field.q)
            if x is None:
                raise GradedValidationError(
                    "boundary of an infimum chain escapes the infimum complex;"
                    " input boundary data is inconsistent"
                )
            cols = [
                SparseColumn.from_pairs(((i, int(x[i, j])) for i in range(k_prev)), field)
                for j in range(len(vectors[p]))
            ]
        boundaries[p] = SparseMatrix(k_prev, cols, field)
    ambient = {p: graded.universe_size(p) for p in range(p_max + 2)}
    return ChainComplexSlice(field, p_max + 1, ambient, vectors, boundaries)


def _assemble_slice(graded, p_max, vectors, provenance) -> ChainComplexSlice:
    field = graded.field
    boundaries = {}
    for p in range(1, p_max + 2):
        k_prev = len(vectors[p - 1])
        cols = []
        if vectors[p]:
            rows_prev = graded.universe_size(p - 1)
            prev_dense = dense_matrix(vectors[p - 1], rows_prev, field.q)
            images = [
                graded.column(label) if label is not None else SparseColumn()
                for label in provenance[p]
            ]
            img_dense = dense_matrix(images, rows_prev, field.q)
            x = dense_solve_many(prev_dense, img_dense, field.q)
            if x is None:
                raise GradedValidationError(
                    "boundary image escapes the supremum complex;"
                    " input boundary data is inconsistent"
                )
            cols = [
                SparseColumn.from_pairs(((i, int(x[i, j])) for i in range(k_prev)), field)
                for j in range(len(vectors[p]))
            ]
        boundaries[p] = SparseMatrix(k_prev, cols, field)
    ambient = {p: graded.universe_size(p) for p in range(p_max + 2)}
    prov = {p: tuple(provenance[p]) for p in provenance}
    return ChainComplexSlice(field, p_max + 1, ambient, vectors, boundaries, provenance=prov)


def homology_dims(c: ChainComplexSlice, p_max: int) -> list[int]:
    """dim H_p = dim C_p - rank d_p - rank d_{p+1} for p = 0..p_max."""
    q = c.q
    for p in range(1, c.max_dim):
        a = c.boundary_matrix(p).to_dense()
        b = c.boundary_matrix(p + 1).to_dense()
        if a.size and b.size and ((a @ b) % q).any():
            raise GradedValidationError(f"slice boundaries do not compose to zero at dimension {p + 1}")
    out = []
    for p in range(p_max + 1):
        r_down = dense_rank(c.boundary_matrix(p).to_dense(), q) if p >= 1 else 0
        r_up = dense_rank(c.boundary_matrix(p + 1).to_dense(), q)
        out.append(c.dim(p) - r_down - r_up)
    return out


def relative_homology_dims(big: ChainComplexSlice, small: ChainComplexSlice, p_max: int) -> list[int]:
    """Dimensions of H_p(big / small) for p = 0..p_max, via quotient boundary ranks."""
    if big.field != small.field:
        raise GradedValidationError("slices live over different fields")
    q = big.q
    reps, rep_idx = {}, {}
    for p in range(p_max + 2):
        if big.ambient_rows.get(p, 0) != small.ambient_rows.get(p, 0):
            raise GradedValidationError(f"slices disagree on ambient coordinates at dimension {p}")
        rows = big.ambient_rows.get(p, 0)
        span = IncrementalSpan(rows, q)
        for v in big.vectors.get(p, ()):
            span.add(v.to_dense(rows))
        for v in small.vectors.get(p, ()):
            if not span.contains(v.to_dense(rows)):
                raise GradedValidationError(
                    f"dimension {p}: the small slice is not contained in the big one"
                )
        span = IncrementalSpan(rows, q)
        for v in small.vectors.get(p, ()):
            span.add(v.to_dense(rows))
        reps[p], rep_idx[p] = [], []
        for j, v in enumerate(big.vectors.get(p, ())):
            if span.add(v.to_dense(rows)):
                reps[p].append(v)
                rep_idx[p].append(j)

    quotient = {}
    for p in range(1, p_max + 2):
        n_small = len(small.vectors.get(p - 1, ()))
        k_prev = len(reps[p - 1])
        cols = []
        if rep_idx[p]:
            rows_prev = big.ambient_rows.get(p - 1, 0)
            big_prev = big.vector_matrix(p - 1)
            bnd = big.boundary_matrix(p).to_dense()
            images = (big_prev @ bnd[:, rep_idx[p]]) % q
            denom = dense_matrix(
                list(small.vectors.get(p - 1, ())) + reps[p - 1], rows_prev, q
            )
            x = dense_solve_many(denom, images, q)
            if x is None:
                raise GradedValidationError("quotient boundary image escapes the quotient basis")
            cols = x[n_small:, :]
        quotient[p] = np.asarray(cols, dtype=np.int64).reshape(k_prev, len(rep_idx[p]))

    out = []
    for p in range(p_max + 1):
        r_down = dense_rank(quotient[p], q) if p >= 1 else 0
        r_up = dense_rank(quotient[p + 1], q)
        out.append(len(reps[p]) - r_down - r_up)
    return out
