"""Which reflections lie in the plain Bianchi group.

A mirror of norm k gives a reflection of the extended group; it lies in the
plain group exactly when the square class of k is that of 2 or of 2m.  The
mirrors outside the plain group are drawn as filled vertices.  The plain
group is reflective iff those extra reflections generate a finite group,
i.e. iff the subdiagram they induce is elliptic; when it is not, the filled
configuration can still exhibit quasi-reflectivity: one cusp pair means an
affine translation rank of 1, one complete ideal vertex (two orthogonal
cusp pairs) means rank 2.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import squarefree_part
from .coxeter import CoxeterDiagram, classify_subdiagram, finite_volume
from .qform import Root


def reflection_in_bi(m: int, root: Root) -> bool:
    """Spinor-norm test: k is in the square class of 2 or of 2m."""
    sf = squarefree_part(root.norm)
    return sf == 2 or sf == squarefree_part(2 * m)


def mark_filled(diagram: CoxeterDiagram, m: int) -> CoxeterDiagram:
    """Set the filled flag on every vertex whose reflection is not in the
    plain group; returns the same diagram."""
    diagram.filled = [
        not reflection_in_bi(m, r) for r in diagram.roots
    ]
    return diagram


def non_bi_subgroup_finite(diagram: CoxeterDiagram) -> bool:
    """Whether the filled reflections generate a finite group (elliptic
    induced subdiagram; an empty filled set is trivially finite)."""
    filled = [i for i, f in enumerate(diagram.filled) if f]
    if not filled:
        return True
    return classify_subdiagram(diagram, filled).kind == "elliptic"


@dataclass(frozen=True)
class BiVerdict:
    verdict: str  # "reflective" | "quasi-reflective" | "not-reflective"
    rank: int | None = None
    #: set when the filled configuration matches none of the known shapes
    unrecognized_shape: bool = False


def bi_verdict_from_reflective_hat(diagram: CoxeterDiagram, m: int) -> BiVerdict:
    """Plain-group verdict when the extended group is reflective.

    Requires a finite-volume diagram with filled flags set.  Reflective when
    the filled subdiagram is elliptic; quasi-reflective of rank 1 when the
    filled set is exactly one cusp pair, of rank 2 when it is exactly the
    four vertices of one rank-2 parabolic subdiagram (a single ideal
    vertex); anything else is not reflective.
    """
    if not finite_volume(diagram).finite:
        raise ValueError("expects the diagram of a terminated run")
    if non_bi_subgroup_finite(diagram):
        return BiVerdict("reflective")
    filled = [i for i, f in enumerate(diagram.filled) if f]
    cls = classify_subdiagram(diagram, filled)
    if cls.kind == "parabolic":
        if len(filled) == 2 and cls.components == ("A~1",):
            return BiVerdict("quasi-reflective", rank=1)
        if len(filled) == 4 and cls.components == ("A~1", "A~1"):
            # two orthogonal cusp pairs: one complete ideal vertex
            return BiVerdict("quasi-reflective", rank=2)
    return BiVerdict("not-reflective", unrecognized_shape=True)
