"""Machine checks of the structural claims about a lifted box family.

Every verifier returns a `LemmaVerdict`; none of them raise on a well-formed lift.
`exhausted` marks verdicts whose numbers are only bounds because a solver budget ran out.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..boxes.box import BoxHypergraph, intersection_graph
from ..coloring.clique import max_clique
from ..coloring.models import Budget
from ..coloring.solver import chromatic_number
from ..errors import ConstructionBugError
from ..graphs.cubes import cube_condition
from ..graphs.graph import Graph, edge_key
from ..graphs.median import MedianMode, is_median
from ..graphs.metric import is_locally_convex
from ..graphs.theta import contact_graph, pointed_contact_graph
from .lift import LiftedGraph, label_of_edge, orient_at_alpha


DEFAULT_SAMPLES = 1_000_000


@dataclass(frozen=True)
class LemmaVerdict:
    name: str
    ok: bool
    detail: str = ""
    witness: object = None
    measured: dict[str, object] = field(default_factory=dict)
    exhausted: bool = False


def _lifted_contact(lg: LiftedGraph) -> Graph:
    """Γ_α restricted to the box classes, relabelled by box index."""
    gamma = pointed_contact_graph(lg.orientation, lg.theta)
    classes = lg.box_classes
    restricted = gamma.induced(classes)
    return restricted.relabel({cls: box for box, cls in enumerate(classes)}, connected=False)


def verify_class_census(lg: LiftedGraph) -> LemmaVerdict:
    """One class per box plus one per gap between consecutive grid planes.

    Each box class is exactly the matching between G_i and its copy, and every
    edge agrees with the label of its class.
    """
    t = lg.theta
    planes = sum(k - 1 for k in lg.grid.dims)
    expected = len(lg.subgrids) + planes
    measured = {"classes": len(t.classes), "expected": expected, "boxes": len(lg.subgrids), "grid": planes}
    if len(t.classes) != expected:
        return LemmaVerdict("census", False, f"{len(t.classes)} classes, expected {expected}", measured=measured)
    labels = lg.theta_labels
    for cls, members in enumerate(t.classes):
        for edge in members:
            if label_of_edge(lg.graph.coords, edge) != labels[cls]:
                return LemmaVerdict("census", False, f"class {cls} mixes edge kinds", witness=edge, measured=measured)
    for box, copy in enumerate(lg.copies):
        cls = lg.box_classes[box]
        matching = {edge_key(v, copy[v]) for v in lg.subgrids[box]}
        if set(t.classes[cls]) != matching:
            return LemmaVerdict("census", False, f"class of box {box} is not its matching", witness=box, measured=measured)
    return LemmaVerdict("census", True, f"{expected} classes", measured=measured)


def verify_orientation(lg: LiftedGraph) -> LemmaVerdict:
    try:
        og = orient_at_alpha(lg)
    except ConstructionBugError as exc:
        return LemmaVerdict("orientation", False, str(exc), witness=exc.witness)
    copy_out = max((og.out_degree(v) for v in lg.graph.vertices if lg.is_copy(v)), default=0)
    measured = {"max_out_degree": og.max_out_degree(), "max_copy_out_degree": copy_out}
    if copy_out > 3:
        return LemmaVerdict("orientation", False, f"a lifted vertex has out-degree {copy_out}", measured=measured)
    return LemmaVerdict("orientation", True, "rule-based arcs match distances from α", measured=measured)


def verify_lemma_crossing(lg: LiftedGraph) -> LemmaVerdict:
    """No two box classes cross; the witness is a square carrying both."""
    t = lg.theta
    boxes = set(lg.box_classes)
    for a, b, c, d in t.squares:
        first, second = t.class_of[edge_key(a, b)], t.class_of[edge_key(b, c)]
        if first != second and first in boxes and second in boxes:
            return LemmaVerdict("crossing", False, f"classes {first} and {second} cross", witness=(a, b, c, d))
    m = len(lg.box_classes)
    return LemmaVerdict("crossing", True, measured={"pairs": m * (m - 1) // 2})


def verify_lemma_intersection(lg: LiftedGraph, bh: BoxHypergraph | None = None) -> LemmaVerdict:
    """Γ_α on the box classes is the intersection graph of the boxes, edge for edge."""
    expected = intersection_graph(bh if bh is not None else lg.boxes)
    measured = _lifted_contact(lg)
    if measured.same_as(expected):
        return LemmaVerdict("intersection", True, measured={"edges": len(expected.edges)})
    extra = sorted(set(measured.edges) ^ set(expected.edges))
    return LemmaVerdict("intersection", False, f"{len(extra)} mismatched box pairs", witness=extra[0])


def verify_lemma_degree(lg: LiftedGraph, omega: int | None = None, budget: Budget | None = None) -> LemmaVerdict:
    """max out-degree <= ω + 3 and max degree <= ω + 6, with ω the clique number of the boxes."""
    exhausted = False
    if omega is None:
        clique = max_clique(intersection_graph(lg.boxes), budget)
        omega, exhausted = clique.size, not clique.exact
    out_degree = lg.orientation.max_out_degree()
    degree = lg.graph.max_degree()
    measured = {
        "omega": omega,
        "max_out_degree": out_degree,
        "max_degree": degree,
        "out_degree_attained": out_degree == omega + 3,
        "degree_attained": degree == omega + 6,
    }
    ok = out_degree <= omega + 3 and degree <= omega + 6
    detail = f"out-degree {out_degree} <= {omega + 3}, degree {degree} <= {omega + 6}"
    if not ok:
        detail = f"out-degree {out_degree} (bound {omega + 3}), degree {degree} (bound {omega + 6})"
    return LemmaVerdict("degree", ok, detail, measured=measured, exhausted=exhausted)


def verify_lemma_coloring(lg: LiftedGraph, budget: Budget | None = None) -> LemmaVerdict:
    """χ(Γ) >= χ(Γ_α) >= χ(boxes), with Γ_α also coloured on the box classes alone.

    With every value exact the chain is checked as stated. When a budget runs out
    the verdict only asserts that the bounds do not contradict the chain.
    """
    budget = budget or Budget()
    t = lg.theta
    results = {
        "contact": chromatic_number(contact_graph(t), budget),
        "pointed": chromatic_number(pointed_contact_graph(lg.orientation, t), budget),
        "pointed_lifted": chromatic_number(_lifted_contact(lg), budget),
        "intersection": chromatic_number(intersection_graph(lg.boxes), budget),
    }
    measured = {name: result.to_payload() for name, result in results.items()}
    measured = {name: {k: v for k, v in payload.items() if k != "clique"} for name, payload in measured.items()}
    exhausted = not all(result.optimal for result in results.values())
    contact, pointed, lifted, boxes = (results[name] for name in ("contact", "pointed", "pointed_lifted", "intersection"))
    if not exhausted:
        ok = contact.count >= pointed.count >= lifted.count == boxes.count
        detail = f"{contact.count} >= {pointed.count} >= {boxes.count}"
    else:
        ok = (
            contact.upper_bound >= pointed.lower_bound
            and pointed.upper_bound >= boxes.lower_bound
            and lifted.upper_bound >= boxes.lower_bound
            and boxes.upper_bound >= lifted.lower_bound
        )
        detail = (
            f"[{contact.lower_bound}, {contact.upper_bound}] >= [{pointed.lower_bound}, {pointed.upper_bound}]"
            f" >= [{boxes.lower_bound}, {boxes.upper_bound}] (bounds only)"
        )
    return LemmaVerdict("coloring", ok, detail, measured=measured, exhausted=exhausted)


def verify_clique_identity(lg: LiftedGraph, budget: Budget | None = None) -> LemmaVerdict:
    """ω(Γ_α) equals the max out-degree and ω(Γ) equals the max degree."""
    t = lg.theta
    pointed = max_clique(pointed_contact_graph(lg.orientation, t), budget)
    contact = max_clique(contact_graph(t), budget)
    out_degree = lg.orientation.max_out_degree()
    degree = lg.graph.max_degree()
    measured = {
        "omega_pointed": pointed.size,
        "max_out_degree": out_degree,
        "omega_contact": contact.size,
        "max_degree": degree,
    }
    exhausted = not (pointed.exact and contact.exact)
    if exhausted:
        ok = pointed.size <= out_degree and contact.size <= degree
    else:
        ok = pointed.size == out_degree and contact.size == degree
    detail = f"ω(Γ_α) = {pointed.size}, ω(Γ) = {contact.size}"
    return LemmaVerdict("cliques", ok, detail, measured=measured, exhausted=exhausted)


def certify_amalgam_sequence(lg: LiftedGraph) -> LemmaVerdict:
    """Replay the lift as gated amalgams along G_i, one box at a time.

    Starting from the grid, each G_i must be connected and locally convex in the
    graph lifted so far (hence gated there), and the edges at its copy must be
    exactly the prism G_i × e_i.
    """
    current = set(lg.grid.graph.vertices)
    for box, members in enumerate(lg.subgrids):
        partial = lg.graph.induced(current, connected=True)
        subgrid = partial.induced(members)
        if not subgrid.is_connected():
            return LemmaVerdict("amalgam", False, f"G_{box} is not connected", witness=box)
        verdict = is_locally_convex(partial, members)
        if not verdict.ok:
            return LemmaVerdict("amalgam", False, f"G_{box} is not locally convex", witness=verdict.witness)
        copy = lg.copies[box]
        prism = {edge_key(v, copy[v]) for v in members}
        for u, v in subgrid.edges:
            prism.add(edge_key(copy[u], copy[v]))
        image = set(copy.values())
        touching = {edge_key(u, w) for u in image for w in lg.graph.neighbors[u]}
        if touching != prism:
            return LemmaVerdict("amalgam", False, f"edges at the copy of G_{box} are not a prism", witness=box)
        current |= image
    return LemmaVerdict("amalgam", True, f"{len(lg.subgrids)} gated gluings", measured={"steps": len(lg.subgrids)})


def verify_median(
    lg: LiftedGraph,
    mode: MedianMode | str | None = None,
    *,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    exhaustive_limit: int | None = None,
) -> LemmaVerdict:
    """Exhaustive up to the cap, otherwise sampled triplets plus the amalgam certificate."""
    limit = lg.exact_limit if exhaustive_limit is None else exhaustive_limit
    if mode is None:
        mode = MedianMode.EXHAUSTIVE if len(lg.graph) <= limit else MedianMode.SAMPLED
    mode = MedianMode(mode)
    verdict = is_median(lg.graph, mode, samples=samples, seed=seed, exhaustive_limit=limit, theta=lg.theta)
    measured = {"mode": mode.value, "triplets": verdict.triplets}
    if not verdict.ok:
        return LemmaVerdict("median", False, verdict.reason, witness=verdict.witness, measured=measured)
    if mode is MedianMode.SAMPLED:
        certificate = certify_amalgam_sequence(lg)
        if not certificate.ok:
            return LemmaVerdict("median", False, certificate.detail, witness=certificate.witness, measured=measured)
        return LemmaVerdict("median", True, f"{verdict.reason}; {certificate.detail}", measured=measured)
    return LemmaVerdict("median", True, verdict.reason, measured=measured)


def verify_cube_condition(lg: LiftedGraph) -> LemmaVerdict:
    verdict = cube_condition(lg.graph, (0, 1))
    measured = {"checked": verdict.checked}
    if verdict.ok:
        return LemmaVerdict("cube", True, measured=measured)
    return LemmaVerdict(
        "cube",
        False,
        f"k = {verdict.dim} fails at vertex {verdict.corner}",
        witness=[sorted(cell) for cell in verdict.witness],
        measured=measured,
    )
