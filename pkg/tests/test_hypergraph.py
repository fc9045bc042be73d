import numpy as np
import pytest

from extph import (
    EXTENDED,
    FilteredHypergraph,
    GradedSubgroup,
    InputFormatError,
    RELATIVE,
    barcode,
    build_hyper_input,
    build_matrices,
    compute_pairings,
    diagrams,
    extended_barcode,
    extended_module_oracle,
    homology_dims,
    inf_complex,
    interval_rank_table,
    parse_hypergraph,
    simplicial_boundary,
    simplicial_closure,
    sup_complex,
)
from extph.diagrams import DiagramPoint

from oracles import classical_barcode, random_hypergraph


# ---------------------------------------------------------------------------
# closures and boundaries
# ---------------------------------------------------------------------------


def test_closure_of_a_triangle_has_seven_faces():
    assert len(simplicial_closure([("a", "b", "c")])) == 7


def test_closure_of_a_complex_is_itself():
    complex_ = {("a",), ("b",), ("a", "b")}
    assert simplicial_closure(complex_) == complex_


def test_closure_adds_missing_vertices():
    got = simplicial_closure([("a", "b"), ("b", "c")])
    assert got == {("a",), ("b",), ("c",), ("a", "b"), ("b", "c")}


def test_simplicial_boundary_signs():
    assert simplicial_boundary(("a", "b")) == {("b",): 1, ("a",): -1}
    assert simplicial_boundary(("a", "b", "c")) == {
        ("b", "c"): 1,
        ("a", "c"): -1,
        ("a", "b"): 1,
    }


def test_simplicial_boundary_requires_sorted_vertices():
    with pytest.raises(ValueError):
        simplicial_boundary(("b", "a"))


@pytest.mark.parametrize("q", [2, 5])
def test_boundary_squares_to_zero_on_small_simplices(q):
    from itertools import combinations

    verts = ("a", "b", "c", "d")
    for size in range(2, 5):
        for simplex in combinations(verts, size):
            acc = {}
            for face, c in simplicial_boundary(simplex).items():
                for face2, c2 in simplicial_boundary(face).items():
                    acc[face2] = (acc.get(face2, 0) + c * c2) % q
            assert not any(acc.values())


# ---------------------------------------------------------------------------
# building the input
# ---------------------------------------------------------------------------


def test_simplicial_complex_input_matches_classical_persistence():
    h = FilteredHypergraph(
        ["a", "b", "c"],
        {
            ("a",): 1.0,
            ("b",): 1.0,
            ("c",): 2.0,
            ("a", "b"): 2.0,
            ("b", "c"): 3.0,
        },
    )
    x, asc, desc = build_hyper_input(h, 2)
    # sublevel stages of a complex closed under faces with monotone values:
    # sup and inf complexes are the stage itself
    for stage in range(1, x.M + 1):
        restricted = x.ascending.restricted_to_stage(stage)
        s = sup_complex(restricted, 2)
        i = inf_complex(restricted, 2)
        n_basis = [len(restricted.basis.get(p, [])) for p in range(3)]
        assert [s.dim(p) for p in range(3)] == n_basis == [i.dim(p) for p in range(3)]
    bc = barcode(compute_pairings(build_matrices(x.ascending, 2)), x.ascending)
    filtered = [(s, x.asc_height(s)) for p in range(3) for s in x.ascending.graded.basis.get(p, [])]
    assert bc.as_multiset() == classical_barcode(filtered, 2, 2)


def test_single_stage_complex_has_one_extended_component():
    h = FilteredHypergraph(["a", "b"], {("a",): 1.0, ("b",): 1.0, ("a", "b"): 1.0})
    x, _, _ = build_hyper_input(h, 2)
    bc = extended_barcode(x, 2)
    assert [iv.kind for iv in bc] == [EXTENDED]
    assert bc.intervals[0].dim == 0


def test_lone_triangle_hyperedge_has_empty_barcode():
    h = FilteredHypergraph(["a", "b", "c"], {("a", "b", "c"): 1.0})
    x, _, _ = build_hyper_input(h, 2)
    dims = homology_dims(sup_complex(x.ascending, 2), 2)
    assert dims == [0, 0, 0]
    assert len(extended_barcode(x, 2)) == 0


def test_empty_hypergraph_gives_empty_everything():
    h = FilteredHypergraph([], {})
    x, asc, desc = build_hyper_input(h, 2)
    assert asc == [] and desc == []
    assert len(extended_barcode(x, 2)) == 0


def test_v_shaped_values_produce_all_interval_axes():
    # two edges joined at a low vertex, with high endpoints: one extended
    # dim-0 point (min, max-reversed) and one relative dim-1 point
    h = FilteredHypergraph(
        ["a", "b", "c"],
        {("a",): 3.0, ("b",): 1.0, ("c",): 3.0, ("a", "b"): 1.0, ("b", "c"): 1.0},
    )
    x, asc, desc = build_hyper_input(h, 2)
    bc = extended_barcode(x, 2)
    assert len(bc) == 2
    assert bc.of_kind(EXTENDED) == (type(bc.intervals[0])(0, EXTENDED, 1, 1),)
    assert bc.of_kind(RELATIVE) == (type(bc.intervals[0])(1, RELATIVE, 1, 2),)
    d = diagrams(bc, asc, desc)
    assert d.extended == (DiagramPoint(0, 1.0, 3.0),)
    assert d.relative == (DiagramPoint(1, 3.0, 1.0),)


def test_embedded_homology_ignores_ambient_enlargement():
    h = FilteredHypergraph(["a", "b", "c"], {("a", "b"): 1.0, ("b", "c"): 2.0})
    x, _, _ = build_hyper_input(h, 2)
    g = x.ascending.graded
    enlarged = GradedSubgroup(
        {p: list(g.basis[p]) for p in g.dims()},
        {
            p: list(g.extension[p]) + ([("z1",), ("z2",)] if p == 0 else [])
            for p in g.dims()
        },
        {l: g.boundary_dict(l) for p in g.dims() for l in g.universe[p]},
        q=2,
    )
    assert homology_dims(sup_complex(g, 2), 2) == homology_dims(sup_complex(enlarged, 2), 2)


def test_oversized_hyperedges_are_ignored():
    h = FilteredHypergraph(
        ["a", "b", "c", "d", "e"],
        {("a", "b", "c", "d", "e"): 1.0, ("a",): 1.0},
    )
    x, _, _ = build_hyper_input(h, 2)  # the 4-simplex exceeds p_max + 1 = 3
    assert x.ascending.graded.basis == {0: [("a",)]}


def _induced_map_ranks(big, keep, p_max, q):
    """Ranks of H_p(small) -> H_p(big): dim(cycles(small)+boundaries(big)) - dim boundaries(big)."""
    from extph.field import dense_kernel, dense_matrix, dense_rank

    small_s = sup_complex(big.restricted(keep), p_max)
    out = []
    for p in range(p_max + 1):
        rows = big.universe_size(p)
        vecs = small_s.vector_matrix(p)
        if p:
            vecs = (vecs @ dense_kernel(small_s.boundary_matrix(p).to_dense(), q)) % q
        bnd = dense_matrix([big.column(l) for l in big.basis.get(p + 1, ())], rows, q)
        out.append(dense_rank(np.hstack([vecs, bnd]), q) - dense_rank(bnd, q))
    return out


def test_inclusion_induces_order_independent_map_ranks():
    # H' inside H induces maps on embedded homology whose ranks must not
    # depend on the order hyperedges and faces were listed in
    rng = np.random.default_rng(163)
    from oracles import random_hypergraph

    for _ in range(10):
        h = random_hypergraph(rng, max_vertices=6, max_hyperedges=8)
        x, _, _ = build_hyper_input(h, 2)
        g = x.ascending.graded
        keep = {p: {l for l in g.basis.get(p, ()) if rng.random() < 0.6} for p in g.dims()}
        reordered_basis, reordered_ext = {}, {}
        for p in g.dims():
            b, e = list(g.basis[p]), list(g.extension[p])
            rng.shuffle(b)
            rng.shuffle(e)
            reordered_basis[p], reordered_ext[p] = b, e
        g2 = GradedSubgroup(
            reordered_basis,
            reordered_ext,
            {l: g.boundary_dict(l) for p in g.dims() for l in g.universe[p]},
            q=2,
        )
        assert _induced_map_ranks(g, keep, 2, 2) == _induced_map_ranks(g2, keep, 2, 2)


def test_random_hypergraph_barcodes_match_the_oracle():
    rng = np.random.default_rng(127)
    for _ in range(10):
        h = random_hypergraph(rng, max_vertices=6, max_hyperedges=8)
        x, _, _ = build_hyper_input(h, 2)
        bc = extended_barcode(x, 2)
        assert interval_rank_table(bc, 2) == extended_module_oracle(x, 2)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------


def test_parse_hypergraph_round_trip():
    text = "# values then vertex lists\n1.5\ta,b\n2\tc\n"
    h = parse_hypergraph(text)
    assert h.vertices == ("a", "b", "c")
    assert h.values == {("a", "b"): 1.5, ("c",): 2.0}


@pytest.mark.parametrize(
    "line,fragment",
    [
        ("1.5 a,b", "expected"),
        ("x\ta,b", "bad value"),
        ("1\ta,,b", "empty vertex"),
        ("1\ta,a", "repeats"),
        ("1\ta,b\n2\tb,a", "duplicate"),
    ],
)
def test_parse_hypergraph_rejects_malformed_lines(line, fragment):
    with pytest.raises(InputFormatError) as err:
        parse_hypergraph(line)
    assert fragment in str(err.value)
