"""Hypergraphs with hyperedge values and their embedded-homology input.

A hypergraph's hyperedges span a graded subgroup of the simplicial chain
complex of its simplicial closure (all faces of hyperedges); embedded
homology is the homology of the supremum, equivalently infimum, complex
of that subgroup.  A real value per hyperedge induces the ascending
sublevel and descending superlevel filtrations.

File format (one hyperedge per line, consumed by the CLI)::

    value<TAB>v1,v2,...,vk
    # comment lines start with '#'

Simplices are oriented by the sorted order of their vertices.
"""

from itertools import combinations

from .errors import InputFormatError
from .extended import ExtendedInput
from .graded import GradedSubgroup, homology_dims, sup_complex

__all__ = [
    "FilteredHypergraph",
    "simplicial_closure",
    "simplicial_boundary",
    "embedded_homology",
    "build_hyper_input",
    "parse_hypergraph",
    "load_hypergraph",
]


class FilteredHypergraph:
    """Distinct non-empty hyperedges over an ordered vertex set, with a value each."""

    __slots__ = ("vertices", "values")

    def __init__(self, vertices, values):
        self.vertices = tuple(sorted(set(vertices)))
        vset = set(self.vertices)
        self.values = {}
        for edge, value in values.items():
            edge_t = tuple(edge)
            if not edge_t:
                raise ValueError("empty hyperedge")
            if len(set(edge_t)) != len(edge_t):
                raise ValueError(f"hyperedge {edge_t!r} repeats a vertex")
            key = tuple(sorted(edge_t))
            if not set(key) <= vset:
                raise ValueError(f"hyperedge {key!r} uses vertices outside the vertex set")
            if key in self.values:
                raise ValueError(f"duplicate hyperedge {key!r}")
            self.values[key] = float(value)

    @property
    def hyperedges(self):
        return sorted(self.values)

    def __repr__(self):
        return f"FilteredHypergraph({len(self.vertices)} vertices, {len(self.values)} hyperedges)"


def simplicial_closure(hyperedges) -> set:
    """All non-empty subsets of the hyperedges: the minimal simplicial complex containing them."""
    closure = set()
    for edge in hyperedges:
        key = tuple(sorted(set(edge)))
        for k in range(1, len(key) + 1):
            closure.update(combinations(key, k))
    return closure


def simplicial_boundary(simplex: tuple) -> dict:
    """Alternating face sum under the sorted-vertex orientation."""
    if any(simplex[i] >= simplex[i + 1] for i in range(len(simplex) - 1)):
        raise ValueError(f"simplex {simplex!r} is not sorted by the vertex order")
    if len(simplex) < 2:
        return {}
    out = {}
    sign = 1
    for i in range(len(simplex)):
        out[simplex[:i] + simplex[i + 1 :]] = sign
        sign = -sign
    return out


def _hyperedge_universe(hyperedges, p_max: int):
    """Hyperedges up to dimension p_max + 1, their non-hyperedge faces, boundaries."""
    edges = [e for e in hyperedges if len(e) - 1 <= p_max + 1]
    edge_set = set(edges)
    basis = {p: [] for p in range(p_max + 2)}
    for e in edges:
        basis[len(e) - 1].append(e)
    eps = {p: set() for p in range(p_max + 2)}
    for e in edges:
        for k in range(1, len(e)):
            for face in combinations(e, k):
                if face not in edge_set:
                    eps[len(face) - 1].add(face)
    boundary = {}
    for p in range(1, p_max + 2):
        for simplex in basis[p] + sorted(eps[p]):
            boundary[simplex] = simplicial_boundary(simplex)
    return edges, basis, {p: sorted(eps[p]) for p in eps}, boundary


def embedded_homology(h: FilteredHypergraph, p_max: int = 2, q: int = 2) -> list[int]:
    """Embedded homology dimensions of the hypergraph (values ignored)."""
    _, basis, eps, boundary = _hyperedge_universe(h.hyperedges, p_max)
    graded = GradedSubgroup(basis, eps, boundary, q=q)
    return homology_dims(sup_complex(graded, p_max), p_max)


def build_hyper_input(h: FilteredHypergraph, p_max: int = 2, q: int = 2):
    """Ascending/descending hyperedge filtrations of a valued hypergraph.

    Returns (ExtendedInput, ascending values, descending values); the
    stage grids are the distinct hyperedge values.  Hyperedges of
    dimension above p_max + 1 are ignored (they cannot affect homology up
    to p_max).  Extension generators are the proper faces of hyperedges
    that are not hyperedges themselves, a face-closed set, so boundaries
    never leave the listing.
    """
    edges, basis, eps, boundary = _hyperedge_universe(h.hyperedges, p_max)
    values = sorted({h.values[e] for e in edges})
    if not values:
        empty = ExtendedInput.from_heights({}, {}, {}, {}, {}, 0, 0, q=q)
        return empty, [], []
    asc_stage = {v: i + 1 for i, v in enumerate(values)}
    desc_values = values[::-1]
    desc_stage = {v: i + 1 for i, v in enumerate(desc_values)}

    asc_h = {e: asc_stage[h.values[e]] for e in edges}
    desc_h = {e: desc_stage[h.values[e]] for e in edges}
    x = ExtendedInput.from_heights(
        basis,
        eps,
        boundary,
        asc_h,
        desc_h,
        len(values),
        len(desc_values),
        q=q,
    )
    return x, values, desc_values


def parse_hypergraph(text: str) -> FilteredHypergraph:
    """Parse the tab-separated hypergraph format; raises InputFormatError."""
    values = {}
    vertices = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise InputFormatError(lineno, "expected 'value<TAB>v1,v2,...,vk'")
        try:
            value = float(parts[0].strip())
        except ValueError:
            raise InputFormatError(lineno, f"bad value {parts[0]!r}") from None
        tokens = [t.strip() for t in parts[1].split(",")]
        if not tokens or any(not t for t in tokens):
            raise InputFormatError(lineno, "empty vertex name in hyperedge")
        if len(set(tokens)) != len(tokens):
            raise InputFormatError(lineno, "hyperedge repeats a vertex")
        key = tuple(sorted(tokens))
        if key in values:
            raise InputFormatError(lineno, f"duplicate hyperedge {key!r}")
        values[key] = value
        vertices.update(tokens)
    return FilteredHypergraph(vertices, values)


def load_hypergraph(path) -> FilteredHypergraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_hypergraph(fh.read())
