"""Coxeter diagrams of root systems: exact edge classification, elliptic and
parabolic subdiagram recognition, Vinberg's finite-volume criterion, cusp
counting, and DOT export.

Two face planes with normals e_i, e_j (B(e_i, e_j) <= 0) are classified by
the exact rational q = 4 B(e_i,e_j)^2 / (k_i k_j):

    q = 0  right angle          q = 3  dihedral angle pi/6
    q = 1  dihedral angle pi/3  q = 4  parallel ("cusp pair")
    q = 2  dihedral angle pi/4  q > 4  divergent planes

Any other value of q cannot occur for roots of L_m and raises
NonCrystallographicAngle.

Subdiagrams are classified combinatorially against the finite catalogue of
connected crystallographic diagrams of rank <= 3: elliptic A1, A2, B2, G2,
A3, B3 and parabolic (affine) A~1, A~2, C~2, G~2.  The icosahedral H-family
is not crystallographic and cannot arise.  A polyhedron has finite volume
iff every elliptic pair of faces extends to an elliptic rank-3 or parabolic
rank-2 subdiagram in exactly two ways (each edge of the polyhedron has two
endpoints, possibly ideal).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .errors import NonCrystallographicAngle
from .linalg import kernel_basis, sign_canonical
from .qform import FormSpec, Root, Vec, bilinear

# Integer edge codes used internally (in order of increasing angle defect).
RIGHT_ANGLE, ANGLE_3, ANGLE_4, ANGLE_6, CUSP, DIVERGENT = range(6)

_ANGLE_OF_CODE = {ANGLE_3: 3, ANGLE_4: 4, ANGLE_6: 6}


@dataclass(frozen=True)
class EdgeKind:
    """Classified relation between two mirrors.

    kind is one of "right_angle", "angle", "cusp", "divergent"; n is the
    denominator of the dihedral angle pi/n for kind "angle"; sep_sq is the
    exact witness B(e_i,e_j)^2/(k_i k_j) > 1 for divergent pairs.
    """

    kind: str
    n: int | None = None
    sep_sq: Fraction | None = None


def edge_code(prod: int, ki: int, kj: int) -> int:
    """Edge code from the raw product B(e_i, e_j) and the two norms."""
    if prod > 0:
        raise ValueError("edge classification expects B(e_i, e_j) <= 0")
    num = 4 * prod * prod
    den = ki * kj
    if num == 0:
        return RIGHT_ANGLE
    if num == den:
        return ANGLE_3
    if num == 2 * den:
        return ANGLE_4
    if num == 3 * den:
        return ANGLE_6
    if num == 4 * den:
        return CUSP
    if num > 4 * den:
        return DIVERGENT
    raise NonCrystallographicAngle(
        f"q = {num}/{den} is not one of 0, 1, 2, 3, 4 or > 4"
    )


def _edge_kind_from_code(code: int, prod: int, ki: int, kj: int) -> EdgeKind:
    if code == RIGHT_ANGLE:
        return EdgeKind("right_angle")
    if code in _ANGLE_OF_CODE:
        return EdgeKind("angle", n=_ANGLE_OF_CODE[code])
    if code == CUSP:
        return EdgeKind("cusp")
    return EdgeKind("divergent", sep_sq=Fraction(prod * prod, ki * kj))


def gram_entry(form: FormSpec, ri: Root, rj: Root) -> EdgeKind:
    """Classify the pair of mirrors of two distinct roots."""
    prod = bilinear(form, ri.vec, rj.vec)
    code = edge_code(prod, ri.norm, rj.norm)
    return _edge_kind_from_code(code, prod, ri.norm, rj.norm)


class CoxeterDiagram:
    """Vertices are roots; edges carry the exact pair classification.

    ``filled`` flags mark mirrors whose reflection lies outside the plain
    Bianchi group; they are set by the spinor module and default to False.
    """

    def __init__(self, form: FormSpec, roots: list[Root],
                 prods: list[list[int]], codes: list[list[int]]):
        self.form = form
        self.roots = list(roots)
        self.prods = prods
        self.codes = codes
        self.filled = [False] * len(roots)

    def __len__(self) -> int:
        return len(self.roots)

    def edge(self, i: int, j: int) -> EdgeKind:
        if i == j:
            raise ValueError("no self edges")
        return _edge_kind_from_code(
            self.codes[i][j], self.prods[i][j],
            self.roots[i].norm, self.roots[j].norm,
        )

    def cusp_neighbors(self, v: int) -> list[int]:
        row = self.codes[v]
        return [u for u in range(len(self.roots)) if u != v and row[u] == CUSP]


def build_diagram(form: FormSpec, roots: list[Root]) -> CoxeterDiagram:
    """All pairwise classifications of a list of distinct roots."""
    n = len(roots)
    prods = [[0] * n for _ in range(n)]
    codes = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            p = bilinear(form, roots[i].vec, roots[j].vec)
            c = edge_code(p, roots[i].norm, roots[j].norm)
            prods[i][j] = prods[j][i] = p
            codes[i][j] = codes[j][i] = c
    return CoxeterDiagram(form, roots, prods, codes)


# ---------------------------------------------------------------------------
# Subdiagram classification


@dataclass(frozen=True)
class SubdiagramClass:
    """Classification of an induced subdiagram.

    kind is "elliptic", "parabolic" or "indefinite"; components is the
    sorted multiset of connected component types ("A1", ..., "A~1", ...);
    rank is vertex count (elliptic) or vertices minus components (parabolic).
    """

    kind: str
    components: tuple[str, ...] = ()
    rank: int = 0

    def describe(self) -> str:
        if self.kind == "indefinite":
            return "indefinite"
        parts: dict[str, int] = {}
        for c in self.components:
            parts[c] = parts.get(c, 0) + 1
        return " + ".join(
            (f"{mult} x {name}" if mult > 1 else name)
            for name, mult in sorted(parts.items())
        )


_INDEFINITE = SubdiagramClass("indefinite")

# component type -> (is_parabolic, rank)
_COMPONENT_RANK = {
    "A1": (False, 1), "A2": (False, 2), "B2": (False, 2), "G2": (False, 2),
    "A3": (False, 3), "B3": (False, 3),
    "A~1": (True, 1), "A~2": (True, 2), "C~2": (True, 2), "G~2": (True, 2),
}


def _component_type(size: int, edge_codes: list[int]) -> str | None:
    """Match one connected component against the rank <= 3 catalogue.

    edge_codes lists the codes of the edges present in the component
    (code >= 1).  Returns None for anything not in the catalogue.
    """
    if size == 1:
        return "A1"
    if size == 2:
        return {ANGLE_3: "A2", ANGLE_4: "B2", ANGLE_6: "G2", CUSP: "A~1"}.get(
            edge_codes[0]
        )
    if size == 3:
        if len(edge_codes) == 3:  # triangle
            return "A~2" if all(c == ANGLE_3 for c in edge_codes) else None
        if len(edge_codes) == 2:  # path
            pair = tuple(sorted(edge_codes))
            return {
                (ANGLE_3, ANGLE_3): "A3",
                (ANGLE_3, ANGLE_4): "B3",
                (ANGLE_4, ANGLE_4): "C~2",
                (ANGLE_3, ANGLE_6): "G~2",
            }.get(pair)
    return None


def classify_subdiagram(diagram: CoxeterDiagram, vertices) -> SubdiagramClass:
    """Classify the subdiagram induced on a nonempty vertex set."""
    verts = sorted(vertices)
    if not verts:
        raise ValueError("empty vertex set")
    codes = diagram.codes
    # connected components via the edges of the Coxeter diagram (code >= 1)
    unseen = set(verts)
    comps: list[list[int]] = []
    while unseen:
        start = min(unseen)
        stack = [start]
        unseen.discard(start)
        comp = [start]
        while stack:
            v = stack.pop()
            row = codes[v]
            for u in list(unseen):
                if row[u] != RIGHT_ANGLE:
                    unseen.discard(u)
                    stack.append(u)
                    comp.append(u)
        comps.append(sorted(comp))

    types: list[str] = []
    for comp in comps:
        ecodes = [
            codes[a][b] for a, b in combinations(comp, 2)
            if codes[a][b] != RIGHT_ANGLE
        ]
        if any(c == DIVERGENT for c in ecodes):
            return _INDEFINITE
        t = _component_type(len(comp), ecodes)
        if t is None:
            return _INDEFINITE
        types.append(t)

    parabolic_flags = {_COMPONENT_RANK[t][0] for t in types}
    if len(parabolic_flags) > 1:
        return _INDEFINITE  # elliptic and parabolic components mixed
    is_parabolic = parabolic_flags.pop()
    rank = sum(_COMPONENT_RANK[t][1] for t in types)
    kind = "parabolic" if is_parabolic else "elliptic"
    return SubdiagramClass(kind, tuple(sorted(types)), rank)


def _is_elliptic_pair(code: int) -> bool:
    return code <= ANGLE_6


# classification table for {i, j, t} given the three edge codes; built once.
def _build_triple_table() -> list[list[list[bool]]]:
    table = [[[False] * 6 for _ in range(6)] for _ in range(6)]
    for a in range(6):
        for b in range(6):
            for c in range(6):
                cls = _classify_triple(a, b, c)
                table[a][b][c] = cls
    return table


def _classify_triple(a: int, b: int, c: int) -> bool:
    """Whether edge codes (ij, it, jt) give elliptic rank 3 or parabolic rank 2."""
    if DIVERGENT in (a, b, c):
        return False
    edges = [(0, 1, a), (0, 2, b), (1, 2, c)]
    present = [(u, v, e) for u, v, e in edges if e != RIGHT_ANGLE]
    if not present:
        return True  # 3 x A1, elliptic rank 3
    if len(present) == 3:
        return all(e == ANGLE_3 for _, _, e in present)  # A~2
    if len(present) == 1:
        # one A1 component plus a 2-vertex component: elliptic only
        return present[0][2] in (ANGLE_3, ANGLE_4, ANGLE_6)
    # two edges: a connected path on all three vertices
    pair = tuple(sorted(e for _, _, e in present))
    return pair in {
        (ANGLE_3, ANGLE_3), (ANGLE_3, ANGLE_4),           # A3, B3
        (ANGLE_4, ANGLE_4), (ANGLE_3, ANGLE_6),           # C~2, G~2
    }


_TRIPLE_TABLE = _build_triple_table()


def completions(diagram: CoxeterDiagram, pair) -> list[tuple[frozenset[int], SubdiagramClass]]:
    """All minimal extensions of a rank-2 elliptic subdiagram {i, j} to an
    elliptic subdiagram of rank 3 or a parabolic subdiagram of rank 2.

    Single added vertices cover both targets; two added vertices can only
    produce 2 x A~1 (two orthogonal cusp pairs), and such an extension is
    automatically minimal because a cusp edge cannot occur inside any
    rank-3 elliptic or connected parabolic diagram on three vertices.
    """
    i, j = sorted(pair)
    cls = classify_subdiagram(diagram, (i, j))
    if cls.kind != "elliptic" or cls.rank != 2:
        raise ValueError("completions expects a rank-2 elliptic subdiagram")
    n = len(diagram)
    codes = diagram.codes
    out: list[tuple[frozenset[int], SubdiagramClass]] = []
    for t in range(n):
        if t in (i, j):
            continue
        if _TRIPLE_TABLE[codes[i][j]][codes[i][t]][codes[j][t]]:
            out.append((frozenset({t}), classify_subdiagram(diagram, (i, j, t))))
    if codes[i][j] == RIGHT_ANGLE:
        seen: set[frozenset[int]] = set()
        for t1 in diagram.cusp_neighbors(i):
            if t1 == j or codes[t1][j] != RIGHT_ANGLE:
                continue
            for t2 in diagram.cusp_neighbors(j):
                if t2 in (i, t1) or codes[t2][i] != RIGHT_ANGLE:
                    continue
                if codes[t1][t2] != RIGHT_ANGLE:
                    continue
                ts = frozenset({t1, t2})
                if ts not in seen:
                    seen.add(ts)
                    out.append(
                        (ts, classify_subdiagram(diagram, (i, j, t1, t2)))
                    )
    out.sort(key=lambda item: sorted(item[0]))
    return out


@dataclass
class VolumeReport:
    """Result of the finite-volume test: per-pair completion counts."""

    finite: bool
    compact: bool
    counts: dict[tuple[int, int], int] = field(default_factory=dict)


def finite_volume(diagram: CoxeterDiagram) -> VolumeReport:
    """Finite volume iff at least one rank-2 elliptic subdiagram exists and
    every one of them has exactly two completions; compact additionally
    requires every completion to be elliptic."""
    n = len(diagram)
    codes = diagram.codes
    counts: dict[tuple[int, int], int] = {}
    finite = True
    compact = True
    any_pair = False
    for i in range(n):
        for j in range(i + 1, n):
            if not _is_elliptic_pair(codes[i][j]):
                continue
            any_pair = True
            comp = completions(diagram, (i, j))
            counts[(i, j)] = len(comp)
            if len(comp) != 2:
                finite = False
            if any(cls.kind == "parabolic" for _, cls in comp):
                compact = False
    finite = finite and any_pair
    return VolumeReport(finite, finite and compact, counts)


class VolumeTracker:
    """Incrementally maintained completion counts for a growing root system.

    Keeps, for every elliptic pair of accepted roots, the number of ways it
    extends to an elliptic rank-3 or parabolic rank-2 subdiagram, so the
    finite-volume test after each accepted root is cheap.  Mirrors the
    from-scratch :func:`finite_volume` (cross-checked in the test suite).
    """

    def __init__(self) -> None:
        self.codes: list[list[int]] = []
        self.cusp_nbrs: list[list[int]] = []
        self.pair_counts: dict[tuple[int, int], int] = {}
        self.bad = 0

    def _bump(self, pair: tuple[int, int], delta: int) -> None:
        old = self.pair_counts[pair]
        new = old + delta
        self.pair_counts[pair] = new
        self.bad += (new != 2) - (old != 2)

    def add_root(self, code_row: list[int]) -> None:
        """Add a vertex; code_row[i] is its edge code against vertex i."""
        t = len(self.codes)
        codes = self.codes
        table = _TRIPLE_TABLE
        # existing pairs gain completions that involve t
        for (i, j), _ in list(self.pair_counts.items()):
            a = codes[i][j] if i != j else RIGHT_ANGLE
            b = code_row[i]
            c = code_row[j]
            delta = 1 if table[a][b][c] else 0
            if a == RIGHT_ANGLE:
                if b == CUSP and c == RIGHT_ANGLE:
                    for t2 in self.cusp_nbrs[j]:
                        if t2 not in (i, j) and codes[t2][i] == RIGHT_ANGLE \
                                and code_row[t2] == RIGHT_ANGLE:
                            delta += 1
                elif c == CUSP and b == RIGHT_ANGLE:
                    for t2 in self.cusp_nbrs[i]:
                        if t2 not in (i, j) and codes[t2][j] == RIGHT_ANGLE \
                                and code_row[t2] == RIGHT_ANGLE:
                            delta += 1
            if delta:
                self._bump((i, j), delta)
        # register the new vertex
        for i in range(t):
            codes[i].append(code_row[i])
        codes.append(list(code_row[:t]) + [RIGHT_ANGLE])
        new_cusp = [i for i in range(t) if code_row[i] == CUSP]
        for i in new_cusp:
            self.cusp_nbrs[i].append(t)
        self.cusp_nbrs.append(new_cusp)
        # new pairs (i, t)
        for i in range(t):
            a = code_row[i]
            if not _is_elliptic_pair(a):
                continue
            row_i = codes[i]
            row_t = codes[t]
            cnt = 0
            for u in range(t):
                if u != i and table[a][row_i[u]][row_t[u]]:
                    cnt += 1
            if a == RIGHT_ANGLE:
                for u1 in self.cusp_nbrs[i]:
                    if u1 == t or row_t[u1] != RIGHT_ANGLE:
                        continue
                    for u2 in self.cusp_nbrs[t]:
                        if u2 in (i, u1):
                            continue
                        if row_i[u2] == RIGHT_ANGLE and codes[u1][u2] == RIGHT_ANGLE:
                            cnt += 1
            self.pair_counts[(i, t)] = cnt
            self.bad += cnt != 2

    def finite_volume_now(self) -> bool:
        return self.bad == 0 and bool(self.pair_counts)


# ---------------------------------------------------------------------------
# Cusps and polyhedron combinatorics


def _parabolic_rank2_subdiagrams(diagram: CoxeterDiagram) -> list[tuple[int, ...]]:
    """All vertex sets inducing a parabolic subdiagram of rank 2."""
    n = len(diagram)
    codes = diagram.codes
    found: set[tuple[int, ...]] = set()
    cusp_edges = [
        (i, j) for i in range(n) for j in range(i + 1, n) if codes[i][j] == CUSP
    ]
    # 2 x A~1: two cusp pairs, mutually orthogonal
    for (i, j), (k, l) in combinations(cusp_edges, 2):
        if len({i, j, k, l}) < 4:
            continue
        if all(
            codes[a][b] == RIGHT_ANGLE
            for a in (i, j) for b in (k, l)
        ):
            found.add(tuple(sorted((i, j, k, l))))
    # connected parabolic diagrams on three vertices, found via their center
    for c in range(n):
        row = codes[c]
        nbr3 = [u for u in range(n) if u != c and row[u] == ANGLE_3]
        nbr4 = [u for u in range(n) if u != c and row[u] == ANGLE_4]
        nbr6 = [u for u in range(n) if u != c and row[u] == ANGLE_6]
        # A~2: triangle of pi/3 edges (each vertex is a "center"; dedupe)
        for i, j in combinations(nbr3, 2):
            if codes[i][j] == ANGLE_3:
                found.add(tuple(sorted((c, i, j))))
        # C~2: path i -4- c -4- j with orthogonal ends
        for i, j in combinations(nbr4, 2):
            if codes[i][j] == RIGHT_ANGLE:
                found.add(tuple(sorted((c, i, j))))
        # G~2: path i -6- c -3- j with orthogonal ends
        for i in nbr6:
            for j in nbr3:
                if i != j and codes[i][j] == RIGHT_ANGLE:
                    found.add(tuple(sorted((c, i, j))))
    return sorted(found)


def isotropic_direction(diagram: CoxeterDiagram, vertices) -> Vec:
    """The primitive isotropic vector orthogonal to all roots of a rank-2
    parabolic subdiagram (its ideal vertex, up to scale and sign)."""
    g = diagram.form.gram
    rows = [
        tuple(sum(g[i][j] * diagram.roots[v].vec[j] for j in range(4)) for i in range(4))
        for v in vertices
    ]
    basis = kernel_basis(rows)
    if len(basis) != 1:
        raise ValueError("subdiagram does not determine a unique direction")
    q = sign_canonical(basis[0])
    if bilinear(diagram.form, q, q) != 0:
        raise ValueError("kernel direction is not isotropic")
    return q


def count_cusps(diagram: CoxeterDiagram) -> int:
    """Number of ideal vertices: rank-2 parabolic subdiagrams, counted once
    per shared isotropic direction."""
    return len(ideal_vertex_directions(diagram))


def ideal_vertex_directions(diagram: CoxeterDiagram) -> list[Vec]:
    dirs = {
        isotropic_direction(diagram, s)
        for s in _parabolic_rank2_subdiagrams(diagram)
    }
    return sorted(dirs)


def cusp_pairs_at_vertex(diagram: CoxeterDiagram, v: int) -> int:
    """Number of cusp edges incident to vertex v."""
    return sum(1 for c in diagram.codes[v] if c == CUSP)


def polyhedron_counts(diagram: CoxeterDiagram) -> tuple[int, int, int]:
    """(vertices, edges, faces) of the polyhedron of a finite-volume diagram.

    Faces are the mirrors; edges are the rank-2 elliptic subdiagrams (in an
    acute-angled polyhedron intersecting face planes meet along an edge);
    vertices are completions, grouped by the fixed point: the orthogonal
    line for elliptic rank-3 subdiagrams, the isotropic direction for
    parabolic rank-2 ones.
    """
    n = len(diagram)
    codes = diagram.codes
    g = diagram.form.gram
    points: set[tuple[Vec, str]] = set()
    edges = 0
    for i in range(n):
        for j in range(i + 1, n):
            if not _is_elliptic_pair(codes[i][j]):
                continue
            edges += 1
            for extra, cls in completions(diagram, (i, j)):
                verts = tuple(sorted({i, j} | set(extra)))
                if cls.kind == "parabolic":
                    points.add((isotropic_direction(diagram, verts), "ideal"))
                else:
                    rows = [
                        tuple(
                            sum(g[a][b] * diagram.roots[v].vec[b] for b in range(4))
                            for a in range(4)
                        )
                        for v in verts
                    ]
                    basis = kernel_basis(rows)
                    if len(basis) != 1:
                        raise ValueError("rank-3 subdiagram with degenerate span")
                    points.add((sign_canonical(basis[0]), "interior"))
    return len(points), edges, n


# ---------------------------------------------------------------------------
# DOT export


def export_dot(diagram: CoxeterDiagram) -> str:
    """Deterministic DOT text.  Filled vertices are filled circles; edges:
    pi/3 plain, pi/4 labelled 4, pi/6 labelled 6, cusp bold, divergent
    dashed; right angles are omitted."""
    lines = ["graph coxeter {", "  node [shape=circle];"]
    for i, _root in enumerate(diagram.roots):
        style = " [style=filled, fillcolor=black, fontcolor=white]" if diagram.filled[i] else ""
        lines.append(f"  v{i + 1}{style};")
    n = len(diagram)
    for i in range(n):
        for j in range(i + 1, n):
            code = diagram.codes[i][j]
            if code == RIGHT_ANGLE:
                continue
            attr = {
                ANGLE_3: "",
                ANGLE_4: ' [label="4"]',
                ANGLE_6: ' [label="6"]',
                CUSP: " [style=bold]",
                DIVERGENT: " [style=dashed]",
            }[code]
            lines.append(f"  v{i + 1} -- v{j + 1}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"
