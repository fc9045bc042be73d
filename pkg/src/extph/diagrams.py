"""Persistence diagrams, bottleneck distance, and empirical stability trials.

Stage-indexed extended barcodes are mapped to three planar multisets of
points with critical-value coordinates: ordinary points (birth value,
death value) on the ascending plane, relative points on the reversed
plane, extended points mixing one coordinate of each.  The bottleneck
distance matches points of equal homology dimension under the l-infinity
metric: partially on the ordinary and relative diagrams (unmatched points
pay their distance to the diagonal, (death - birth)/2), perfectly on the
extended diagram, so the distance is infinite whenever the extended
cardinalities differ.

The matcher binary-searches the finite candidate set (pairwise distances
and diagonal charges) with an augmenting-path feasibility test, so the
returned value is exact on that set.  ``stability_trial`` and
``hyper_stability_trial`` perturb the front-end inputs and report the
achieved input distance next to the per-dimension bottleneck distances;
the stability guarantee is d_B <= d_E (resp. the sup-norm of the value
change).
"""

import io
import math
from typing import NamedTuple

import numpy as np

from .digraph import WeightedDigraph, build_pph_input
from .errors import InputFormatError
from .extended import ORDINARY, RELATIVE, ExtendedBarcode, extended_barcode
from .hypergraph import FilteredHypergraph, build_hyper_input

__all__ = [
    "ORD",
    "REL",
    "EXT",
    "DiagramPoint",
    "ExtendedDiagram",
    "MatchingCertificate",
    "diagrams",
    "bottleneck",
    "bottleneck_certificate",
    "stability_trial",
    "hyper_stability_trial",
    "format_diagram",
    "write_diagram",
    "read_diagram",
]

ORD = "ord"
REL = "rel"
EXT = "ext"


class DiagramPoint(NamedTuple):
    dim: int
    birth: float
    death: float


class ExtendedDiagram:
    """Ordinary, relative and extended point multisets with dimensions."""

    __slots__ = ("ordinary", "relative", "extended")

    def __init__(self, ordinary=(), relative=(), extended=()):
        self.ordinary = tuple(sorted(ordinary))
        self.relative = tuple(sorted(relative))
        self.extended = tuple(sorted(extended))

    def points(self, kind: str, dim=None):
        pts = {ORD: self.ordinary, REL: self.relative, EXT: self.extended}[kind]
        if dim is None:
            return pts
        return tuple(pt for pt in pts if pt.dim == dim)

    def dims(self):
        return sorted({pt.dim for pts in (self.ordinary, self.relative, self.extended) for pt in pts})

    def __eq__(self, other):
        return (
            isinstance(other, ExtendedDiagram)
            and other.ordinary == self.ordinary
            and other.relative == self.relative
            and other.extended == self.extended
        )

    def __len__(self):
        return len(self.ordinary) + len(self.relative) + len(self.extended)

    def __repr__(self):
        return (
            f"ExtendedDiagram(ord={len(self.ordinary)}, rel={len(self.relative)},"
            f" ext={len(self.extended)})"
        )


def diagrams(bc: ExtendedBarcode, ascending_values, descending_values) -> ExtendedDiagram:
    """Map stage indices to critical values.

    Ordinary interval [i, j) becomes the point (a_i, a_j); a relative one
    becomes (b_i, b_j) on the reversed plane; an extended interval with
    ascending birth i and descending death j becomes (a_i, b_j); in
    particular death index 1 maps to the first descending value, the class
    having died as soon as the relative block started.
    """
    a, b = list(ascending_values), list(descending_values)
    if len(a) != bc.num_ascending or len(b) != bc.num_descending:
        raise ValueError("value grids do not match the barcode's stage counts")
    ordinary, relative, extended = [], [], []
    for iv in bc:
        try:
            if iv.kind == ORDINARY:
                ordinary.append(DiagramPoint(iv.dim, a[iv.birth - 1], a[iv.death - 1]))
            elif iv.kind == RELATIVE:
                relative.append(DiagramPoint(iv.dim, b[iv.birth - 1], b[iv.death - 1]))
            else:
                extended.append(DiagramPoint(iv.dim, a[iv.birth - 1], b[iv.death - 1]))
        except IndexError:
            raise ValueError(f"interval {iv} indexes outside the value grids") from None
    return ExtendedDiagram(ordinary, relative, extended)


# ---------------------------------------------------------------------------
# bottleneck distance
# ---------------------------------------------------------------------------


def _linf(p1: DiagramPoint, p2: DiagramPoint) -> float:
    return max(abs(p1.birth - p2.birth), abs(p1.death - p2.death))


def _diag_charge(pt: DiagramPoint) -> float:
    return abs(pt.death - pt.birth) / 2.0


def _max_matching(n_left, n_right, adjacency):
    match_l = [-1] * n_left
    match_r = [-1] * n_right

    def try_augment(u, seen):
        for v in adjacency[u]:
            if not seen[v]:
                seen[v] = True
                if match_r[v] == -1 or try_augment(match_r[v], seen):
                    match_r[v] = u
                    match_l[u] = v
                    return True
        return False

    size = 0
    for u in range(n_left):
        if try_augment(u, [False] * n_right):
            size += 1
    return size, match_l


def _feasible(pts1, pts2, delta, diagonal):
    """Matching at tolerance delta, or None.

    With ``diagonal`` each side is padded with interchangeable diagonal
    slots: a real point may take a slot at its diagonal charge, and slots
    pair with each other for free.  Without it a perfect real-real
    matching is required.
    """
    n1, n2 = len(pts1), len(pts2)
    if not diagonal and n1 != n2:
        return None
    n_left = n1 + (n2 if diagonal else 0)
    n_right = n2 + (n1 if diagonal else 0)
    adjacency = []
    for i in range(n1):
        row = [j for j in range(n2) if _linf(pts1[i], pts2[j]) <= delta]
        if diagonal and _diag_charge(pts1[i]) <= delta:
            row.extend(range(n2, n_right))
        adjacency.append(row)
    if diagonal:
        slot_row = [j for j in range(n2) if _diag_charge(pts2[j]) <= delta]
        slot_row.extend(range(n2, n_right))
        for _ in range(n2):
            adjacency.append(list(slot_row))
    size, match_l = _max_matching(n_left, n_right, adjacency)
    if size != n_left:
        return None
    return match_l


def _kind_bottleneck(pts1, pts2, diagonal):
    """Smallest feasible delta for one diagram type, plus the witness matching."""
    if not diagonal and len(pts1) != len(pts2):
        return math.inf, None
    if not pts1 and not pts2:
        return 0.0, []
    candidates = {0.0}
    candidates.update(_linf(p1, p2) for p1 in pts1 for p2 in pts2)
    if diagonal:
        candidates.update(_diag_charge(p) for p in pts1)
        candidates.update(_diag_charge(p) for p in pts2)
    ordered = sorted(candidates)
    lo, hi = 0, len(ordered) - 1
    best = _feasible(pts1, pts2, ordered[hi], diagonal)
    while lo < hi:
        mid = (lo + hi) // 2
        matching = _feasible(pts1, pts2, ordered[mid], diagonal)
        if matching is not None:
            best, hi = matching, mid
        else:
            lo = mid + 1
    return ordered[hi], best


def bottleneck(d1: ExtendedDiagram, d2: ExtendedDiagram, dim=None) -> float:
    """Bottleneck distance between extended diagrams.

    Points are compared within one homology dimension; with ``dim`` None
    the maximum over all dimensions present is returned.  The result is
    math.inf exactly when the extended multisets of some dimension have
    different cardinalities.
    """
    if dim is None:
        all_dims = sorted(set(d1.dims()) | set(d2.dims()))
        return max((bottleneck(d1, d2, p) for p in all_dims), default=0.0)
    value = 0.0
    for kind, diagonal in ((ORD, True), (REL, True), (EXT, False)):
        v, _ = _kind_bottleneck(d1.points(kind, dim), d2.points(kind, dim), diagonal)
        value = max(value, v)
    return value


class MatchingCertificate:
    """A concrete delta-matching: matched pairs plus diagonal-charged leftovers."""

    __slots__ = ("delta", "matched", "unmatched")

    def __init__(self, delta, matched, unmatched):
        self.delta = delta
        self.matched = matched  # kind -> list of (point1, point2)
        self.unmatched = unmatched  # kind -> list of (side, point)

    def verify(self, d1: ExtendedDiagram, d2: ExtendedDiagram, dim, tol: float = 1e-9) -> bool:
        for kind in (ORD, REL, EXT):
            pts1 = sorted(d1.points(kind, dim))
            pts2 = sorted(d2.points(kind, dim))
            got1 = sorted([p for p, _ in self.matched[kind]] + [p for s, p in self.unmatched[kind] if s == 1])
            got2 = sorted([p for _, p in self.matched[kind]] + [p for s, p in self.unmatched[kind] if s == 2])
            if got1 != pts1 or got2 != pts2:
                return False
            if any(_linf(p1, p2) > self.delta + tol for p1, p2 in self.matched[kind]):
                return False
            if kind == EXT and self.unmatched[kind]:
                return False
            if kind != EXT and any(_diag_charge(p) > self.delta + tol for _, p in self.unmatched[kind]):
                return False
        return True


def bottleneck_certificate(d1: ExtendedDiagram, d2: ExtendedDiagram, dim):
    """(distance, certificate) for one dimension; certificate is None at infinity."""
    delta = bottleneck(d1, d2, dim)
    if math.isinf(delta):
        return delta, None
    matched = {ORD: [], REL: [], EXT: []}
    unmatched = {ORD: [], REL: [], EXT: []}
    for kind, diagonal in ((ORD, True), (REL, True), (EXT, False)):
        pts1 = list(d1.points(kind, dim))
        pts2 = list(d2.points(kind, dim))
        matching = _feasible(pts1, pts2, delta, diagonal)
        if matching is None:
            raise AssertionError("matching must exist at the computed distance")
        n2 = len(pts2)
        claimed = set()
        for i, p1 in enumerate(pts1):
            j = matching[i]
            if j < n2:
                matched[kind].append((p1, pts2[j]))
                claimed.add(j)
            else:
                unmatched[kind].append((1, p1))
        for j, p2 in enumerate(pts2):
            if j not in claimed:
                unmatched[kind].append((2, p2))
    return delta, MatchingCertificate(delta, matched, unmatched)


# ---------------------------------------------------------------------------
# stability trials
# ---------------------------------------------------------------------------


def _digraph_diagram(g: WeightedDigraph, p_max, q):
    x, asc, desc = build_pph_input(g, p_max, q)
    return diagrams(extended_barcode(x, p_max), asc, desc)


def _hypergraph_diagram(h: FilteredHypergraph, p_max, q):
    x, asc, desc = build_hyper_input(h, p_max, q)
    return diagrams(extended_barcode(x, p_max), asc, desc)


def stability_trial(g: WeightedDigraph, delta: float, seed, p_max: int = 2, q: int = 2):
    """Perturb each edge weight uniformly in [-delta, delta] (seeded).

    Returns (achieved max weight change, {dim: bottleneck distance}); the
    stability theorem promises every distance is at most the first value.
    """
    if delta < 0:
        raise ValueError("perturbation bound must be nonnegative")
    rng = np.random.default_rng(seed)
    items = sorted(g.weights.items())
    shifts = rng.uniform(-delta, delta, size=len(items))
    perturbed = WeightedDigraph(g.vertices, {e: w + s for (e, w), s in zip(items, shifts)})
    d_e = float(max(np.abs(shifts), default=0.0))
    diag1 = _digraph_diagram(g, p_max, q)
    diag2 = _digraph_diagram(perturbed, p_max, q)
    return d_e, {p: bottleneck(diag1, diag2, p) for p in range(p_max + 1)}


def hyper_stability_trial(h: FilteredHypergraph, delta: float, seed, p_max: int = 2, q: int = 2):
    """Perturb each hyperedge value uniformly in [-delta, delta] (seeded)."""
    if delta < 0:
        raise ValueError("perturbation bound must be nonnegative")
    rng = np.random.default_rng(seed)
    items = sorted(h.values.items())
    shifts = rng.uniform(-delta, delta, size=len(items))
    perturbed = FilteredHypergraph(h.vertices, {e: v + s for (e, v), s in zip(items, shifts)})
    d_inf = float(max(np.abs(shifts), default=0.0))
    diag1 = _hypergraph_diagram(h, p_max, q)
    diag2 = _hypergraph_diagram(perturbed, p_max, q)
    return d_inf, {p: bottleneck(diag1, diag2, p) for p in range(p_max + 1)}


# ---------------------------------------------------------------------------
# diagram files
# ---------------------------------------------------------------------------

_HEADER = "dim\ttype\tbirth\tdeath"


def format_diagram(diagram: ExtendedDiagram) -> str:
    rows = []
    for kind in (ORD, REL, EXT):
        for pt in diagram.points(kind):
            rows.append((pt.dim, kind, pt.birth, pt.death))
    rows.sort()
    lines = [_HEADER]
    lines.extend(f"{dim}\t{kind}\t{birth!r}\t{death!r}" for dim, kind, birth, death in rows)
    return "\n".join(lines) + "\n"


def write_diagram(diagram: ExtendedDiagram, destination) -> None:
    text = format_diagram(diagram)
    if isinstance(destination, io.TextIOBase) or hasattr(destination, "write"):
        destination.write(text)
    else:
        with open(destination, "w", encoding="utf-8") as fh:
            fh.write(text)


def read_diagram(text: str) -> ExtendedDiagram:
    buckets = {ORD: [], REL: [], EXT: []}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#") or line == _HEADER:
            continue
        parts = line.split("\t")
        if len(parts) != 4:
            raise InputFormatError(lineno, "expected 'dim<TAB>type<TAB>birth<TAB>death'")
        try:
            dim = int(parts[0])
            birth = float(parts[2])
            death = float(parts[3])
        except ValueError:
            raise InputFormatError(lineno, "bad numeric field") from None
        kind = parts[1].strip()
        if kind not in buckets:
            raise InputFormatError(lineno, f"unknown point type {kind!r}")
        buckets[kind].append(DiagramPoint(dim, birth, death))
    return ExtendedDiagram(buckets[ORD], buckets[REL], buckets[EXT])
