"""Embedded homology of hypergraphs and all three extended interval types.

Run with: python3 demos/02_hypergraph_homology.py
"""

from extph import (
    FilteredHypergraph,
    build_hyper_input,
    diagrams,
    embedded_homology,
    extended_barcode,
    simplicial_closure,
)

# A hypergraph need not contain the faces of its hyperedges.  The lone
# filled triangle {a,b,c} has no vertices and no edges of its own; its
# embedded homology (computed inside the simplicial closure) vanishes
# entirely, since the triangle's boundary is not a cycle of the hypergraph.

triangle = FilteredHypergraph(["a", "b", "c"], {("a", "b", "c"): 1.0})
print("closure of {abc}:", sorted(simplicial_closure(triangle.hyperedges)))
print("embedded homology of {abc}:", embedded_homology(triangle, 2))

# Compare with the hollow triangle made of its three edges: now H_1 = 1.

hollow = FilteredHypergraph(
    ["a", "b", "c"],
    {("a", "b"): 1.0, ("a", "c"): 1.0, ("b", "c"): 1.0},
)
print("embedded homology of the hollow triangle:", embedded_homology(hollow, 2))

# Values on hyperedges drive the extended filtration.  This "V" (two
# edges meeting at a cheap vertex, with expensive endpoints) produces one
# point on each exotic axis: the component is an extended point spanning
# the whole value range, and the sweep down the endpoints opens a relative
# one-dimensional class (the path rel its endpoints) that the diagram
# records on the reversed plane.

vee = FilteredHypergraph(
    ["a", "b", "c"],
    {("a",): 3.0, ("b",): 1.0, ("c",): 3.0, ("a", "b"): 1.0, ("b", "c"): 1.0},
)
x, ascending, descending = build_hyper_input(vee, p_max=2)
bc = extended_barcode(x, p_max=2)
print("\nV-shaped hypergraph, stages up", ascending, "/ down", descending)
for iv in bc:
    print(f"  dim {iv.dim}  {iv.kind:<8}  birth stage {iv.birth}, death stage {iv.death}")

d = diagrams(bc, ascending, descending)
print("extended point:", d.extended)
print("relative point:", d.relative)
