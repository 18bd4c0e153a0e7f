"""Ideal class groups of imaginary quadratic fields via reduced binary
quadratic forms and Gauss composition; the 2-part order formula; the
class-group shape filters; the cusp-count bounds.

Class groups are computed by exhaustive enumeration over the (small) set of
reduced forms.  Composition brings the second operand to a leading
coefficient coprime to the first (always possible for primitive forms) and
glues the two concordant forms; the group laws are pinned down by
exhaustive property tests per discriminant rather than a second algorithm.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from .arith import factorize, is_squarefree, prime_count
from .errors import InvalidFieldParameter


@dataclass(frozen=True)
class BQF:
    """Primitive positive-definite binary quadratic form a x^2 + b xy + c y^2."""

    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        return abs(b) <= a <= c and (b >= 0 if (abs(b) == a or a == c) else True)

    def inverse(self) -> "BQF":
        return reduce_form(BQF(self.a, -self.b, self.c))


def field_discriminant(m: int) -> int:
    """Discriminant of Q(sqrt(-m)): -4m for m = 1,2 (mod 4), -m for m = 3."""
    if not isinstance(m, int) or m < 1 or not is_squarefree(m):
        raise InvalidFieldParameter(f"m must be a square-free positive integer, got {m!r}")
    return -m if m % 4 == 3 else -4 * m


def reduce_form(f: BQF) -> BQF:
    """The unique reduced representative of the proper equivalence class."""
    a, b, c = f.a, f.b, f.c
    while True:
        if a > c:
            a, b, c = c, -b, a
            continue
        if b > a or b <= -a:
            r = (a - b) // (2 * a)  # translate b into (-a, a]
            b2 = b + 2 * r * a
            c = a * r * r + b * r + c
            b = b2
            continue
        break
    if (abs(b) == a or a == c) and b < 0:
        b = -b
    return BQF(a, b, c)


def reduced_forms(D: int) -> list[BQF]:
    """All primitive reduced forms of discriminant D < 0, sorted."""
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError("discriminant must be negative and 0 or 1 mod 4")
    out = []
    amax = isqrt(-D // 3)
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if a == c and b < 0:
                continue
            if gcd(gcd(a, b), c) != 1:
                continue
            out.append(BQF(a, b, c))
    return sorted(out, key=lambda f: (f.a, f.b, f.c))


def principal_form(D: int) -> BQF:
    k = D % 2
    return BQF(1, k, (k * k - D) // 4)


def _with_leading_coprime_to(f: BQF, mod: int) -> BQF:
    """A properly equivalent form whose leading coefficient is coprime to mod.

    A primitive form attains, at primitive arguments, values coprime to any
    fixed modulus; small arguments always suffice at this scale.
    """
    if gcd(f.a, mod) == 1:
        return f
    bound = 2 * abs(mod) + 2
    for x in range(0, bound):
        for y in range(0, bound):
            if gcd(x, y) != 1:
                continue
            val = f(x, y)
            if val == 0 or gcd(val, mod) != 1:
                continue
            # extend (x, y) to the determinant-1 substitution [[x, w], [y, z]]
            _, u, v = _ext_gcd(x, y)  # x*u + y*v = 1
            w, z = -v, u
            b2 = 2 * (f.a * x * w + f.c * y * z) + f.b * (x * z + y * w)
            out = BQF(val, b2, f(w, z))
            assert out.discriminant == f.discriminant
            return out
    raise AssertionError("no coprime representative found (cannot happen)")


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, u, v) with a*u + b*v = g = gcd(a, b)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def compose(f: BQF, g: BQF) -> BQF:
    """Gauss composition, returned reduced.

    The second form is replaced by an equivalent one whose leading
    coefficient is coprime to the first's; the middle coefficients are then
    glued by the Chinese remainder theorem and the composite
    (a1*a2, B, (B^2-D)/(4*a1*a2)) is reduced.
    """
    if f.discriminant != g.discriminant:
        raise ValueError("forms must share a discriminant")
    D = f.discriminant
    g = _with_leading_coprime_to(g, f.a)
    a1, b1 = f.a, f.b
    a2, b2 = g.a, g.b
    # B = b1 (mod 2 a1), B = b2 (mod 2 a2); solvable since gcd(a1, a2) = 1
    # and b1, b2 share the parity of D
    t = (b2 - b1) // 2 * pow(a1, -1, a2) % a2
    B = b1 + 2 * a1 * t
    a3 = a1 * a2
    assert (B * B - D) % (4 * a3) == 0
    return reduce_form(BQF(a3, B, (B * B - D) // (4 * a3)))


@dataclass(frozen=True)
class ClassGroupStructure:
    """Invariant-factor decomposition d1 | d2 | ... with product h."""

    D: int
    h: int
    invariant_factors: tuple[int, ...]

    def elementary_divisors(self) -> tuple[int, ...]:
        """Prime-power components of the invariant factors, sorted."""
        comps = []
        for d in self.invariant_factors:
            comps.extend(p ** e for p, e in factorize(d).items())
        return tuple(sorted(comps))

    def two_torsion_order(self) -> int:
        return 2 ** sum(1 for d in self.invariant_factors if d % 2 == 0)


class CayleyTable:
    """The class group of one discriminant as an explicit finite group."""

    def __init__(self, D: int):
        self.D = D
        self.forms = reduced_forms(D)
        self.index = {f: i for i, f in enumerate(self.forms)}
        self.identity = self.index[principal_form(D)]
        n = len(self.forms)
        self.table = [
            [self.index[compose(self.forms[i], self.forms[j])] for j in range(n)]
            for i in range(n)
        ]

    def order_of(self, i: int) -> int:
        n = 1
        x = i
        while x != self.identity:
            x = self.table[x][i]
            n += 1
        return n


def _abelian_invariants(n: int, identity: int, table) -> list[int]:
    """Invariant factors (ascending divisibility chain) of a finite abelian
    group given by a Cayley table, by peeling off maximal-order cyclic
    quotients."""
    if n == 1:
        return []
    orders = []
    for i in range(n):
        o, x = 1, i
        while x != identity:
            x = table[x][i]
            o += 1
        orders.append(o)
    exponent = max(orders)
    gen = orders.index(exponent)
    # cyclic subgroup generated by gen
    cyc = [identity]
    x = gen
    while x != identity:
        cyc.append(x)
        x = table[x][gen]
    cyc_set = set(cyc)
    # quotient group on cosets
    coset_of: dict[int, int] = {}
    reps: list[int] = []
    for i in range(n):
        if i in coset_of:
            continue
        rep = len(reps)
        reps.append(i)
        for c in cyc_set:
            coset_of[table[i][c]] = rep
    qn = len(reps)
    qtable = [
        [coset_of[table[reps[i]][reps[j]]] for j in range(qn)] for i in range(qn)
    ]
    return _abelian_invariants(qn, coset_of[identity], qtable) + [exponent]


def group_structure(D: int) -> ClassGroupStructure:
    """Exhaustive class-group structure computation for a discriminant."""
    cayley = CayleyTable(D)
    n = len(cayley.forms)
    factors = _abelian_invariants(n, cayley.identity, cayley.table)
    return ClassGroupStructure(D, n, tuple(factors))


def class_number(m: int) -> int:
    return len(reduced_forms(field_discriminant(m)))


def two_part_order(m: int) -> int:
    """|C_2(O_m)| = 2^t for m = 1 (mod 4), 2^(t-1) otherwise, with t the
    number of prime divisors of m; equals the index of the plain Bianchi
    group in the extended one."""
    if not is_squarefree(m) or m < 1:
        raise InvalidFieldParameter(f"m must be a square-free positive integer, got {m!r}")
    t = prime_count(m)
    return 2 ** t if m % 4 == 1 else 2 ** max(t - 1, 0)


def passes_filter(structure: ClassGroupStructure, case: int) -> bool:
    """The class-group shape conditions necessary for (quasi-)reflectivity.

    On the elementary divisors of the group:
      1: all equal 2                      (plain group reflective or QR rank 1)
      2: all in {2, 4}                    (extended reflective or QR rank 1)
      3: all 2 after removing at most one 3 or 4   (plain QR rank 2)
      4: all in {2, 4} after removing at most one 3 (extended QR rank 2)
    """
    comps = list(structure.elementary_divisors())
    if case == 1:
        return all(c == 2 for c in comps)
    if case == 2:
        return all(c in (2, 4) for c in comps)
    if case == 3:
        for drop in {x for x in comps if x in (3, 4)}:
            rest = list(comps)
            rest.remove(drop)
            if all(c == 2 for c in rest):
                return True
        return all(c == 2 for c in comps)
    if case == 4:
        if 3 in comps:
            rest = list(comps)
            rest.remove(3)
            return all(c in (2, 4) for c in rest)
        return all(c in (2, 4) for c in comps)
    raise ValueError(f"filter case must be 1..4, got {case!r}")


# ---------------------------------------------------------------------------
# Cusp-count bounds


@dataclass(frozen=True)
class CuspBoundReport:
    ok: bool
    count: int
    bound: int
    group: str
    mode: str
    vertex: int | None = None


def cusp_bound_report(diagram, group: str, mode: str, m: int) -> CuspBoundReport:
    """Numerical content of :func:`cusp_bound_ok`, for certificates.

    reflective mode: the polyhedron has at most 12 h (plain) or 12 h h2
    (extended) ideal vertices.  quasi mode: every vertex whose mirror misses
    the base ideal point is incident to at most 12 (h-1) (plain) or
    12 h2 (h-1) (extended) cusp pairs.
    """
    from .coxeter import count_cusps, cusp_pairs_at_vertex

    if group not in ("bi", "hat"):
        raise ValueError("group must be 'bi' or 'hat'")
    if mode not in ("reflective", "quasi"):
        raise ValueError("mode must be 'reflective' or 'quasi'")
    h = class_number(m)
    h2 = two_part_order(m)
    if mode == "reflective":
        bound = 12 * h * (h2 if group == "hat" else 1)
        count = count_cusps(diagram)
        return CuspBoundReport(count <= bound, count, bound, group, mode)
    bound = 12 * (h - 1) * (h2 if group == "hat" else 1)
    worst, worst_v = -1, None
    for v in range(len(diagram)):
        if diagram.roots[v].vec[1] == 0:  # mirror through the base point
            continue
        c = cusp_pairs_at_vertex(diagram, v)
        if c > worst:
            worst, worst_v = c, v
    if worst_v is None:
        raise ValueError("no vertex off the base ideal point")
    return CuspBoundReport(worst <= bound, worst, bound, group, mode, worst_v)


def cusp_bound_ok(diagram, group: str, mode: str, m: int) -> bool:
    return cusp_bound_report(diagram, group, mode, m).ok
