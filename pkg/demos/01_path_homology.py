"""Path homology of digraphs, from plain ranks to extended diagrams.

Run with: python3 demos/01_path_homology.py
"""

from extph import (
    WeightedDigraph,
    allowed_paths,
    build_pph_input,
    diagrams,
    extended_barcode,
    path_homology,
)

# Path homology sees direction.  Start with the two classic four-vertex
# examples: the directed cycle carries a one-dimensional class, while the
# commutative square (two directed routes from a to d) is trivial.

cycle = WeightedDigraph(
    ["a", "b", "c", "d"],
    {("a", "b"): 1.0, ("b", "c"): 1.0, ("c", "d"): 1.0, ("d", "a"): 1.0},
)
square = WeightedDigraph(
    ["a", "b", "c", "d"],
    {("a", "b"): 1.0, ("a", "c"): 1.0, ("b", "d"): 1.0, ("c", "d"): 1.0},
)

print("directed 4-cycle   H_0..H_2 =", path_homology(cycle, 2))
print("commutative square H_0..H_2 =", path_homology(square, 2))

# The chains behind those numbers are the allowed paths: head-to-tail
# concatenations of edges.  The square has allowed 2-paths but each of
# their boundaries involves the missing diagonal edges, which is exactly
# the graded-subgroup (rather than subcomplex) situation.

print("\nallowed 2-paths of the square:", allowed_paths(square, 2)[2])

# Now add weights and scan the cycle upward (sublevel edges) and downward
# (superlevel edges).  The extended diagram records where each class lives
# on both axes: the component and the loop both appear as extended points.

weighted = WeightedDigraph(
    ["a", "b", "c", "d"],
    {("a", "b"): 0.5, ("b", "c"): 1.0, ("c", "d"): 1.5, ("d", "a"): 2.0},
)
x, ascending, descending = build_pph_input(weighted, p_max=2)
bc = extended_barcode(x, p_max=2)
print("\nweighted cycle stages: ascending", ascending, "/ descending", descending)
for iv in bc:
    print(f"  dim {iv.dim}  {iv.kind:<8}  birth stage {iv.birth}, death stage {iv.death}")

diagram = diagrams(bc, ascending, descending)
print("\nextended diagram points (birth value, death value):")
for pt in diagram.extended:
    print(f"  dim {pt.dim}  ext  ({pt.birth}, {pt.death})")
for pt in diagram.ordinary:
    print(f"  dim {pt.dim}  ord  ({pt.birth}, {pt.death})")

# The loop is born only when the last edge arrives (value 2.0), and on the
# way down it survives until the superlevel graph holds the whole cycle
# (value 0.5), so its extended point spans the full range (2.0, 0.5): a
# feature invisible to unextended persistence, where it would just be an
# interval running off to infinity.
