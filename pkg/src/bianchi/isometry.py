"""Exact classification of integral isometries of (L_m, B) and the search
for symmetries of a partially enumerated mirror system.

Classification never touches numerical eigenvalues: an integer matrix whose
eigenvalues all lie on the unit circle has only cyclotomic irreducible
factors in its characteristic polynomial (Kronecker), and the cyclotomic
polynomials of degree <= 4 form a finite explicit list.  So

    char poly a product of cyclotomics of degree <= 4
        -> elliptic (semisimple: the squarefree radical annihilates g)
           or parabolic (not semisimple),
    otherwise -> loxodromic (spectral radius > 1).

A symmetry candidate is built by mapping a base 4-tuple of linearly
independent roots onto any signed root 4-tuple with the same pairwise
products, solving the linear system, and keeping integral solutions that
map every enumerated mirror either onto an enumerated mirror or beyond the
enumeration horizon.  Because the enumeration is complete up to its weight
horizon, an image inside the horizon that is not an enumerated mirror
disproves the candidate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd

from .linalg import (
    Matrix,
    adjugate,
    det,
    identity,
    inverse_unimodular,
    kernel_basis,
    mat_mul,
    mat_vec,
    primitive_int_vector,
    sign_canonical,
    transpose,
)
from .qform import FormSpec, Root, Vec, bilinear, normalize_primitive
from .vinberg import RootSystem, RunStatus

# ---------------------------------------------------------------------------
# Integer polynomial helpers (coefficients low -> high)


def _poly_trim(p: list[int]) -> list[int]:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _poly_derivative(p):
    return _poly_trim([i * a for i, a in enumerate(p)][1:] or [0])


def _poly_primitive(p: list[Fraction]) -> list[int]:
    den = 1
    for x in p:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in p]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    if ints[-1] < 0:
        ints = [-x for x in ints]
    return ints


def _poly_gcd(p, q) -> list[int]:
    """Primitive gcd of two integer polynomials (monic-normalized Euclid)."""
    a = [Fraction(x) for x in p]
    b = [Fraction(x) for x in q]
    while any(b):
        while len(b) > 1 and b[-1] == 0:
            b.pop()
        if len(b) == 1 and b[0] == 0:
            break
        # a mod b
        r = a[:]
        while len(r) >= len(b) and any(r):
            while len(r) > 1 and r[-1] == 0:
                r.pop()
            if len(r) < len(b):
                break
            f = r[-1] / b[-1]
            shift = len(r) - len(b)
            for i, coef in enumerate(b):
                r[i + shift] -= f * coef
            r.pop()
        a, b = b, r or [Fraction(0)]
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return _poly_primitive(a)


def _poly_divexact(p, q) -> list[int]:
    """p / q for integer polynomials dividing exactly (rational division)."""
    r = [Fraction(x) for x in p]
    out = [Fraction(0)] * (len(p) - len(q) + 1)
    for k in range(len(out) - 1, -1, -1):
        f = r[k + len(q) - 1] / q[-1]
        out[k] = f
        for i, coef in enumerate(q):
            r[k + i] -= f * coef
    assert all(x == 0 for x in r)
    ints = [x for x in out]
    assert all(x.denominator == 1 for x in ints)
    return [int(x) for x in ints]


def charpoly(mat: Matrix) -> list[int]:
    """det(x I - mat) as integer coefficients, low to high (monic)."""
    n = len(mat)
    # symbolic cofactor expansion with polynomial entries
    entries = [
        [([-mat[i][j]] if i != j else [-mat[i][j], 1]) for j in range(n)]
        for i in range(n)
    ]

    def pdet(rows, cols):
        if len(cols) == 1:
            return entries[rows[0]][cols[0]]
        total = [0]
        sign = 1
        r0 = rows[0]
        for idx, c in enumerate(cols):
            minor = pdet(rows[1:], cols[:idx] + cols[idx + 1 :])
            term = _poly_mul(entries[r0][c], minor)
            if sign < 0:
                term = [-x for x in term]
            if len(term) > len(total):
                total += [0] * (len(term) - len(total))
            for i, x in enumerate(term):
                total[i] += x
            sign = -sign
        return total

    return _poly_trim(pdet(tuple(range(n)), tuple(range(n))))


# cyclotomic polynomials of degree <= 4, coefficients low -> high
_CYCLOTOMICS = {
    1: (-1, 1),
    2: (1, 1),
    3: (1, 1, 1),
    4: (1, 0, 1),
    6: (1, -1, 1),
    5: (1, 1, 1, 1, 1),
    8: (1, 0, 0, 0, 1),
    10: (1, -1, 1, -1, 1),
    12: (1, 0, -1, 0, 1),
}


def _cyclotomic_products(total_degree: int) -> frozenset[tuple[int, ...]]:
    polys = list(_CYCLOTOMICS.values())
    out: set[tuple[int, ...]] = set()

    def rec(prod, deg, start):
        if deg == total_degree:
            out.add(tuple(prod))
            return
        for i in range(start, len(polys)):
            q = polys[i]
            if deg + len(q) - 1 <= total_degree:
                rec(_poly_mul(prod, list(q)), deg + len(q) - 1, i)

    rec([1], 0, 0)
    return frozenset(out)


_UNIT_CIRCLE_CHARPOLYS = _cyclotomic_products(4)


# ---------------------------------------------------------------------------
# Classification


@dataclass(frozen=True)
class IntegralIsometry:
    """An integer matrix g with g^T B g = B and det g = +-1."""

    mat: Matrix

    def __mul__(self, other: "IntegralIsometry") -> "IntegralIsometry":
        return IntegralIsometry(mat_mul(self.mat, other.mat))

    def inverse(self) -> "IntegralIsometry":
        return IntegralIsometry(inverse_unimodular(self.mat))


IDENTITY = "identity"
ELLIPTIC = "elliptic"
PARABOLIC = "parabolic"
LOXODROMIC = "loxodromic"


def preserves_form(mat: Matrix, form: FormSpec) -> bool:
    """g^T B g = B and det g = +-1, both exact."""
    b = form.gram
    return mat_mul(mat_mul(transpose(mat), b), mat) == b and det(mat) in (1, -1)


def classify(mat: Matrix, form: FormSpec) -> str:
    """Exact isometry type of a form-preserving integer matrix."""
    if not preserves_form(mat, form):
        raise ValueError("matrix does not preserve the form")
    if mat == identity(4):
        return IDENTITY
    p = charpoly(mat)
    if tuple(p) not in _UNIT_CIRCLE_CHARPOLYS:
        return LOXODROMIC
    # all eigenvalues are roots of unity; semisimple <=> squarefree radical
    # of the characteristic polynomial annihilates the matrix
    rad = _poly_divexact(p, _poly_gcd(p, _poly_derivative(p)))
    acc = identity(4)
    val = [[rad[0] if i == j else 0 for j in range(4)] for i in range(4)]
    for coef in rad[1:]:
        acc = mat_mul(acc, mat)
        for i in range(4):
            for j in range(4):
                val[i][j] += coef * acc[i][j]
    semisimple = all(x == 0 for row in val for x in row)
    return ELLIPTIC if semisimple else PARABOLIC


def reflection_matrix(form: FormSpec, root: Root) -> Matrix:
    """The integer matrix of the reflection in a root's mirror."""
    k = root.norm
    e = root.vec
    cols = []
    for i in range(4):
        basis = tuple(1 if j == i else 0 for j in range(4))
        t = 2 * bilinear(form, e, basis)
        assert t % k == 0
        cols.append(tuple(basis[j] - t // k * e[j] for j in range(4)))
    return tuple(zip(*cols))


def parabolic_fixed_point(mat: Matrix, form: FormSpec) -> Vec:
    """The unique primitive isotropic vector fixed by a parabolic isometry."""
    if classify(mat, form) != PARABOLIC:
        raise ValueError("parabolic_fixed_point expects a parabolic isometry")
    rows = [
        tuple(mat[i][j] - (1 if i == j else 0) for j in range(4))
        for i in range(4)
    ]
    basis = kernel_basis(rows)
    isotropic = []
    if len(basis) == 1:
        v = basis[0]
        if bilinear(form, v, v) == 0:
            isotropic.append(v)
    else:
        # null lines of the form restricted to the fixed plane
        for v1, v2 in combinations(basis, 2):
            a = bilinear(form, v1, v1)
            b = bilinear(form, v1, v2)
            c = bilinear(form, v2, v2)
            # a s^2 + 2 b s t + c t^2 = 0 over rationals
            if a == 0:
                isotropic.append(v1)
                if c == 0:
                    isotropic.append(v2)
                elif b != 0:
                    isotropic.append(
                        primitive_int_vector(
                            tuple(-c * x + 2 * b * y for x, y in zip(v1, v2))
                        )
                    )
            else:
                disc = b * b - a * c
                if disc >= 0:
                    r = _isqrt_exact(disc)
                    if r is not None:
                        for root_num in {(-b + r), (-b - r)}:
                            vec = tuple(
                                root_num * x + a * y for x, y in zip(v1, v2)
                            )
                            if any(vec):
                                isotropic.append(primitive_int_vector(vec))
    dirs = {sign_canonical(v) for v in isotropic}
    if len(dirs) != 1:
        raise ValueError(f"expected one fixed isotropic direction, got {dirs}")
    return next(iter(dirs))


def _isqrt_exact(n: int) -> int | None:
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


def translation_data(mat: Matrix, form: FormSpec) -> tuple[Vec, Vec, Matrix]:
    """(fixed point q, translation direction w, translating power) for a
    parabolic isometry.

    The action on the horosphere quotient q-perp / <q> is either the
    identity (a translation) or a reflection (a glide); in the glide case
    the square is used.  w is g.x0 - x0 for a base point x0 off q-perp; two
    parabolics with the same q translate independently iff their w's are
    linearly independent modulo q.
    """
    q = parabolic_fixed_point(mat, form)
    g = mat
    if not _acts_trivially_on_horosphere(g, form, q):
        g = mat_mul(mat, mat)
        if not _acts_trivially_on_horosphere(g, form, q):
            raise ValueError("parabolic linear part has order > 2")
    x0 = None
    for i in range(4):
        basis = tuple(1 if j == i else 0 for j in range(4))
        if bilinear(form, basis, q) != 0:
            x0 = basis
            break
    assert x0 is not None
    w = tuple(a - b for a, b in zip(mat_vec(g, x0), x0))
    if _rank((w, q)) < 2:
        raise ValueError("degenerate parabolic translation")
    return q, w, g


def _acts_trivially_on_horosphere(g: Matrix, form: FormSpec, q: Vec) -> bool:
    """Whether g - id maps q-perp into <q> (identity linear part)."""
    grow = tuple(
        sum(form.gram[i][j] * q[j] for j in range(4)) for i in range(4)
    )
    basis = kernel_basis([grow])  # 3-dim: q-perp
    for v in basis:
        w = tuple(a - b for a, b in zip(mat_vec(g, v), v))
        if any(w) and _rank((w, q)) > 1:
            return False
    return True


def _rank(vectors) -> int:
    rows = [[Fraction(x) for x in v] for v in vectors]
    rank = 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# Symmetry search


def _greedy_independent(roots: list[Root], start: int) -> list[int] | None:
    """Indices of the first four linearly independent roots from ``start``."""
    chosen: list[int] = []
    vecs: list[Vec] = []
    for i in range(start, len(roots)):
        if _rank(vecs + [roots[i].vec]) > len(vecs):
            chosen.append(i)
            vecs.append(roots[i].vec)
            if len(chosen) == 4:
                return chosen
    return None


def find_diagram_symmetry(
    roots: list[Root],
    form: FormSpec,
    complete_weight_sq: Fraction | None = None,
    prods: list[list[int]] | None = None,
    min_matched: int = 8,
    max_bases: int = 6,
) -> list[IntegralIsometry]:
    """Integral isometries mapping the enumerated mirror system into itself.

    ``complete_weight_sq`` is the weight horizon up to which the enumeration
    is complete; None means the system is complete (a terminated run), in
    which case every image must be an enumerated mirror.  For a truncated
    system an image that is not enumerated is tolerated only beyond the
    horizon, and at least ``min_matched`` mirrors must map onto enumerated
    mirrors.  The identity and reflections in enumerated mirrors are
    excluded; the result is deterministic (sorted by matrix entries).
    """
    n = len(roots)
    if n < 4:
        return []
    if prods is None:
        prods = [
            [bilinear(form, a.vec, b.vec) for b in roots] for a in roots
        ]
    mirror_set = set()
    for r in roots:
        mirror_set.add(r.vec)
        mirror_set.add(tuple(-x for x in r.vec))

    found: dict[Matrix, IntegralIsometry] = {}
    bases_tried: set[tuple[int, ...]] = set()
    for start in range(0, min(max_bases, n - 3)):
        base = _greedy_independent(roots, start)
        if base is None or tuple(base) in bases_tried:
            continue
        bases_tried.add(tuple(base))
        _search_base(
            base, roots, form, prods, mirror_set, complete_weight_sq,
            min_matched, found,
        )
    return [found[k] for k in sorted(found)]


def _search_base(
    base, roots, form, prods, mirror_set, complete_weight_sq, min_matched,
    found,
) -> None:
    n = len(roots)
    k_base = [roots[i].norm for i in base]
    p_base = [[prods[i][j] for j in base] for i in base]
    pools = [
        [c for c in range(n) if roots[c].norm == k] for k in k_base
    ]
    m_cols = tuple(zip(*(roots[i].vec for i in base)))  # base vectors as columns
    d = det(m_cols)
    adj = adjugate(m_cols)

    assignment: list[tuple[int, int]] = []  # (root index, sign)

    def feasible(slot: int, cand: int, sign: int) -> bool:
        row = prods[cand]
        for i, (fi, si) in enumerate(assignment):
            if si * sign * row[fi] != p_base[i][slot]:
                return False
        return True

    def extend(slot: int) -> None:
        if slot == 4:
            _try_candidate()
            return
        used = {fi for fi, _ in assignment}
        signs = (1,) if slot == 0 else (1, -1)
        for cand in pools[slot]:
            if cand in used:
                continue
            for sign in signs:
                if feasible(slot, cand, sign):
                    assignment.append((cand, sign))
                    extend(slot + 1)
                    assignment.pop()

    def _try_candidate() -> None:
        f_cols = tuple(
            zip(*(tuple(s * x for x in roots[c].vec) for c, s in assignment))
        )
        num = mat_mul(f_cols, adj)
        if any(x % d for row in num for x in row):
            return
        g = tuple(tuple(x // d for x in row) for row in num)
        if not _accept_symmetry(
            g, roots, form, mirror_set, complete_weight_sq, min_matched
        ):
            return
        key = _canonical_matrix(g)
        if key not in found:
            found[key] = IntegralIsometry(key)

    extend(0)


def _canonical_matrix(g: Matrix) -> Matrix:
    for row in g:
        for x in row:
            if x:
                return g if x > 0 else tuple(tuple(-y for y in r) for r in g)
    return g


def _accept_symmetry(
    g, roots, form, mirror_set, complete_weight_sq, min_matched
) -> bool:
    ident = identity(4)
    if g == ident or g == tuple(tuple(-x for x in row) for row in ident):
        return False
    if not preserves_form(g, form):
        return False
    matched = 0
    for r in roots:
        w = mat_vec(g, r.vec)
        if w in mirror_set:
            matched += 1
            continue
        if complete_weight_sq is None:
            return False
        if Fraction(w[1] * w[1], r.norm) <= complete_weight_sq:
            return False  # inside the horizon but not an enumerated mirror
    if complete_weight_sq is not None and matched < min_matched:
        return False
    if _is_enumerated_reflection(g, roots, form, mirror_set):
        return False
    return True


def _is_enumerated_reflection(g, roots, form, mirror_set) -> bool:
    if mat_mul(g, g) != identity(4):
        return False
    for h in (g, tuple(tuple(-x for x in row) for row in g)):
        rows_minus = [
            tuple(h[i][j] - (1 if i == j else 0) for j in range(4))
            for i in range(4)
        ]
        fixed = kernel_basis(rows_minus)
        if len(fixed) == 3:
            rows_plus = [
                tuple(h[i][j] + (1 if i == j else 0) for j in range(4))
                for i in range(4)
            ]
            mirror = kernel_basis(rows_plus)
            if len(mirror) == 1 and sign_canonical(mirror[0]) in {
                sign_canonical(v) for v in mirror_set
            }:
                return True
    return False


# ---------------------------------------------------------------------------
# Certificates


@dataclass(frozen=True)
class LoxodromicCertificate:
    """An infinite-order symmetry with an eigenvalue off the unit circle:
    the symmetry group of the polyhedron preserves no horosphere, so the
    group is neither reflective nor quasi-reflective."""

    mat: Matrix
    weight_bound: Fraction
    matched: int


@dataclass(frozen=True)
class ParabolicRank2Certificate:
    """Two parabolic symmetries fixing the same ideal point with linearly
    independent translation parts: quasi-reflective of rank 2."""

    mats: tuple[Matrix, Matrix]
    translations: tuple[Matrix, Matrix]
    fixed_point: Vec
    weight_bound: Fraction


@dataclass(frozen=True)
class ParabolicRank1Certificate:
    mat: Matrix
    translation: Matrix
    fixed_point: Vec
    weight_bound: Fraction


@dataclass(frozen=True)
class CuspBoundCertificate:
    """The enumerated polyhedron already has more ideal vertices than any
    reflective group allows; cusp counts only grow as mirrors accumulate."""

    count: int
    bound: int
    group: str
    mode: str


@dataclass(frozen=True)
class ClassFilterCertificate:
    """The ideal class group fails the shape conditions required for the
    extended group to be reflective or quasi-reflective of any rank."""

    invariant_factors: tuple[int, ...]
    failed_cases: tuple[int, ...]


Certificate = (
    LoxodromicCertificate
    | ParabolicRank2Certificate
    | ParabolicRank1Certificate
    | CuspBoundCertificate
    | ClassFilterCertificate
)


def certify(state: RootSystem, diagram, m: int) -> Certificate | None:
    """Best available explanation for a run that exhausted its budget.

    Order: the arithmetic class-group exclusion (cheap and decisive for
    both groups), then an infinite-order symmetry of the partial polyhedron
    (loxodromic excludes everything; parabolic pairs witness rank-2
    quasi-reflectivity), and last the global cusp-count bound, which only
    rules out reflectivity.  None means inconclusive at this budget.
    """
    from .classgroup import (
        cusp_bound_report,
        field_discriminant,
        group_structure,
        passes_filter,
    )

    if state.status != RunStatus.BUDGET_EXHAUSTED:
        raise ValueError("certify expects a budget-exhausted run")
    structure = group_structure(field_discriminant(m))
    if not passes_filter(structure, 2) and not passes_filter(structure, 4):
        return ClassFilterCertificate(structure.invariant_factors, (2, 4))

    horizon = state.complete_weight_sq
    syms = find_diagram_symmetry(
        state.roots, state.form, complete_weight_sq=horizon, prods=state.prods
    )
    kinds = [(g, classify(g.mat, state.form)) for g in syms]
    mirrors = _mirror_vecs(state.roots)
    for g, kind in kinds:
        if kind == LOXODROMIC:
            matched = sum(
                1 for r in state.roots if mat_vec(g.mat, r.vec) in mirrors
            )
            return LoxodromicCertificate(g.mat, horizon, matched)

    by_fixed_point: dict[Vec, list[tuple[Matrix, Vec, Matrix]]] = {}
    for g, kind in kinds:
        if kind != PARABOLIC:
            continue
        try:
            q, w, trans = translation_data(g.mat, state.form)
        except ValueError:
            continue
        by_fixed_point.setdefault(q, []).append((g.mat, w, trans))
    for q in sorted(by_fixed_point):
        entries = by_fixed_point[q]
        for (g1, w1, t1), (g2, w2, t2) in combinations(entries, 2):
            if _rank((w1, w2, q)) == 3:
                return ParabolicRank2Certificate((g1, g2), (t1, t2), q, horizon)
    if len(by_fixed_point) == 1:
        q, entries = next(iter(by_fixed_point.items()))
        g1, _w1, t1 = entries[0]
        return ParabolicRank1Certificate(g1, t1, q, horizon)

    report = cusp_bound_report(diagram, "hat", "reflective", m)
    if not report.ok:
        return CuspBoundCertificate(report.count, report.bound, "hat", "reflective")
    return None


def _mirror_vecs(roots) -> set[Vec]:
    out = set()
    for r in roots:
        out.add(r.vec)
        out.add(tuple(-x for x in r.vec))
    return out
