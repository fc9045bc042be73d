import numpy as np
import pytest

from extph import (
    InputFormatError,
    WeightedDigraph,
    allowed_paths,
    build_pph_input,
    extended_barcode,
    extended_module_oracle,
    homology_dims,
    interval_rank_table,
    parse_digraph,
    regular_boundary,
    sublevel,
    sup_complex,
    superlevel,
)
from extph.extended import EXTENDED

from oracles import gf_rank, random_digraph


def unit_cycle():
    return WeightedDigraph(
        ["a", "b", "c", "d"],
        {("a", "b"): 1.0, ("b", "c"): 1.0, ("c", "d"): 1.0, ("d", "a"): 1.0},
    )


def weak_components(g):
    parent = {v: v for v in g.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for x, y in g.edges:
        parent[find(x)] = find(y)
    return len({find(v) for v in g.vertices})


# ---------------------------------------------------------------------------
# paths and boundaries
# ---------------------------------------------------------------------------


def test_allowed_paths_of_edgeless_graph():
    g = WeightedDigraph(["a", "b"], {})
    paths = allowed_paths(g, 2)
    assert paths[0] == [("a",), ("b",)]
    assert paths[1] == [] and paths[2] == []


def test_allowed_paths_of_transitive_triangle():
    g = WeightedDigraph(["a", "b", "c"], {("a", "b"): 1, ("b", "c"): 1, ("a", "c"): 1})
    assert allowed_paths(g, 2)[2] == [("a", "b", "c")]


def test_allowed_paths_of_directed_cycle():
    paths = allowed_paths(unit_cycle(), 2)
    assert paths[2] == [("a", "b", "c"), ("b", "c", "d"), ("c", "d", "a"), ("d", "a", "b")]


def test_regular_boundary_of_an_edge():
    assert regular_boundary(("a", "b")) == {("b",): 1, ("a",): -1}


def test_regular_boundary_drops_irregular_faces():
    # removing the middle vertex of aba gives aa, which is irregular
    assert regular_boundary(("a", "b", "a")) == {("b", "a"): 1, ("a", "b"): 1}


def test_regular_boundary_rejects_irregular_paths():
    with pytest.raises(ValueError):
        regular_boundary(("a", "a", "b"))


@pytest.mark.parametrize("q", [2, 5])
def test_boundary_squares_to_zero_on_all_short_paths(q):
    verts = ["x", "y", "z"]
    level = [(v,) for v in verts]
    for _ in range(4):
        level = [path + (v,) for path in level for v in verts if v != path[-1]]
        for path in level:
            acc = {}
            for face, c in regular_boundary(path).items():
                for face2, c2 in regular_boundary(face).items():
                    acc[face2] = (acc.get(face2, 0) + c * c2) % q
            assert not any(acc.values()), path


# ---------------------------------------------------------------------------
# filtrations
# ---------------------------------------------------------------------------


def test_sublevel_and_superlevel_filter_edges():
    g = WeightedDigraph(["a", "b", "c"], {("a", "b"): 1.0, ("b", "c"): 2.0, ("a", "c"): 3.0})
    assert sublevel(g, 0.5).edges == []
    assert sublevel(g, 3.0).edges == g.edges
    assert sublevel(g, 2.0).edges == [("a", "b"), ("b", "c")]
    assert superlevel(g, 2.0).edges == [("a", "c"), ("b", "c")]
    assert superlevel(g, 0.5).edges == g.edges


def test_height_is_the_stage_of_the_extreme_edge_weight():
    rng = np.random.default_rng(103)
    for _ in range(15):
        g = random_digraph(rng)
        x, asc, desc = build_pph_input(g, 2)
        if not asc:
            continue
        for p in range(1, 4):
            for path in allowed_paths(g, 3)[p]:
                ws = [g.weights[(path[k - 1], path[k])] for k in range(1, len(path))]
                assert x.asc_height(path) == asc.index(max(ws)) + 1
                assert x.desc_height(path) == desc.index(min(ws)) + 1
        for v in g.vertices:
            assert x.asc_height((v,)) == 1 and x.desc_height((v,)) == 1


def test_h0_counts_weak_components():
    rng = np.random.default_rng(107)
    for _ in range(15):
        g = random_digraph(rng)
        x, _, _ = build_pph_input(g, 1)
        if x.M == 0:
            continue
        dims = homology_dims(sup_complex(x.ascending, 1), 1)
        assert dims[0] == weak_components(g)


def test_edgeless_graph_has_full_h0_and_empty_persistence():
    g = WeightedDigraph(["a", "b", "c"], {})
    x, asc, desc = build_pph_input(g, 2)
    assert asc == [] and desc == []
    assert len(extended_barcode(x, 2)) == 0


def test_edge_inclusion_is_functorial_on_spans():
    rng = np.random.default_rng(109)
    for _ in range(10):
        g = random_digraph(rng, max_vertices=6)
        if not g.weights:
            continue
        values = sorted({w for w in g.weights.values()})
        small, big = sublevel(g, values[0]), g
        paths_small = allowed_paths(small, 2)
        paths_big = allowed_paths(big, 2)
        for p in range(3):
            assert set(paths_small[p]) <= set(paths_big[p])


def test_single_edge_has_one_extended_component_interval():
    g = WeightedDigraph(["a", "b"], {("a", "b"): 1.0})
    x, asc, desc = build_pph_input(g, 2)
    assert x.M == x.N == 1
    bc = extended_barcode(x, 2)
    assert [iv.kind for iv in bc] == [EXTENDED]
    assert bc.intervals[0].dim == 0


def test_directed_cycle_has_one_dim1_class():
    x, _, _ = build_pph_input(unit_cycle(), 2)
    dims = homology_dims(sup_complex(x.ascending, 2), 2)
    assert dims[1] == 1
    bc = extended_barcode(x, 2)
    assert len(bc.of_kind(EXTENDED, 1)) == 1
    assert interval_rank_table(bc, 2) == extended_module_oracle(x, 2)


def test_commutative_square_has_no_dim1_class():
    g = WeightedDigraph(
        ["a", "b", "c", "d"],
        {("a", "b"): 1.0, ("a", "c"): 1.0, ("b", "d"): 1.0, ("c", "d"): 1.0},
    )
    x, _, _ = build_pph_input(g, 2)
    assert homology_dims(sup_complex(x.ascending, 2), 2)[1] == 0
    assert len(extended_barcode(x, 2).of_kind(EXTENDED, 1)) == 0


def test_two_weight_filtration_structure():
    g = WeightedDigraph(["a", "b", "c"], {("a", "b"): 1.0, ("b", "c"): 2.0})
    x, asc, desc = build_pph_input(g, 2)
    assert asc == [1.0, 2.0] and desc == [2.0, 1.0]
    assert x.asc_height(("a", "b")) == 1 and x.asc_height(("b", "c")) == 2
    assert x.desc_height(("a", "b")) == 2 and x.desc_height(("b", "c")) == 1
    assert x.asc_height(("a", "b", "c")) == 2 and x.desc_height(("a", "b", "c")) == 2


def test_random_digraph_barcodes_match_the_oracle():
    rng = np.random.default_rng(113)
    for _ in range(10):
        g = random_digraph(rng, max_vertices=6, max_edges=8)
        x, _, _ = build_pph_input(g, 2)
        bc = extended_barcode(x, 2)
        assert interval_rank_table(bc, 2) == extended_module_oracle(x, 2)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------


def test_parse_digraph_round_trip():
    text = "# demo\na\tb\t1.5\nb\tc\t2\nloner\t-\t-\n"
    g = parse_digraph(text)
    assert g.vertices == ("a", "b", "c", "loner")
    assert g.weights == {("a", "b"): 1.5, ("b", "c"): 2.0}


@pytest.mark.parametrize(
    "line,fragment",
    [
        ("a,b,1", "expected"),
        ("a\tb", "expected"),
        ("a\ta\t1", "self-loop"),
        ("a\tb\tten", "bad weight"),
        ("a\tb\t1\na\tb\t2", "duplicate"),
    ],
)
def test_parse_digraph_rejects_malformed_lines(line, fragment):
    with pytest.raises(InputFormatError) as err:
        parse_digraph(line)
    assert fragment in str(err.value)


def test_parse_errors_carry_line_numbers():
    with pytest.raises(InputFormatError) as err:
        parse_digraph("a\tb\t1\nbroken line\n")
    assert err.value.line == 2
