"""The Lorentzian lattice L_m and its integral quadratic form.

For a square-free positive integer m the lattice is Z^4 equipped with the
even quadratic form

    f = -2 x1 x2 + 2 x3^2 + 2m x4^2                      (m = 1, 2 mod 4)
    f = -2 x1 x2 + 2 x3^2 + 2 x3 x4 + (m+1)/2 x4^2       (m = 3 mod 4)

of signature (3,1).  Reflections of the hyperbolic 3-space that preserve the
lattice are encoded by *roots*: primitive vectors e of positive norm
k = B(e,e) such that 2 B(e,x)/k is an integer for every lattice vector x
(the crystallographic condition).  Everything in this module is exact
integer arithmetic; no floats appear anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import divisors, is_squarefree, vec_gcd
from .errors import InvalidFieldParameter

Vec = tuple[int, int, int, int]

#: The ideal base point used throughout: an isotropic lattice vector.
U0: Vec = (1, 0, 0, 0)

BRANCH_A = "A"  # m = 1, 2 (mod 4)
BRANCH_B = "B"  # m = 3 (mod 4)


@dataclass(frozen=True)
class FormSpec:
    """The bilinear form B on Z^4 with f(x) = B(x, x), stored exactly.

    ``gram`` is the integer matrix of B; both congruence branches have an
    integral B because f is even.
    """

    m: int
    branch: str
    gram: tuple[Vec, Vec, Vec, Vec]

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"FormSpec(m={self.m}, branch={self.branch})"


def make_form(m: int) -> FormSpec:
    """Build the form for Q(sqrt(-m)); rejects m < 1 or m not square-free."""
    if not isinstance(m, int) or m < 1 or not is_squarefree(m):
        raise InvalidFieldParameter(f"m must be a square-free positive integer, got {m!r}")
    if m % 4 in (1, 2):
        gram = (
            (0, -1, 0, 0),
            (-1, 0, 0, 0),
            (0, 0, 2, 0),
            (0, 0, 0, 2 * m),
        )
        return FormSpec(m, BRANCH_A, gram)
    half = (m + 1) // 2
    assert half % 2 == 0  # m = 3 (mod 4) makes (m+1)/2 even
    gram = (
        (0, -1, 0, 0),
        (-1, 0, 0, 0),
        (0, 0, 2, 1),
        (0, 0, 1, half),
    )
    return FormSpec(m, BRANCH_B, gram)


@dataclass(frozen=True)
class Root:
    """A primitive lattice vector of positive even norm k = B(e, e)
    satisfying the crystallographic condition, stored with the sign fixed
    by :func:`normalize_primitive` (so B(e, u0) = -x2 <= 0).

    weight_sq is the exact squared weight rho^2 = B(e, u0)^2 / k = x2^2 / k,
    the ordering key of the mirror enumeration.
    """

    vec: Vec
    norm: int
    weight_sq: Fraction

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Root({self.vec}, k={self.norm})"


def bilinear(form: FormSpec, u, v) -> int:
    """B(u, v) = (f(u+v) - f(u) - f(v)) / 2, evaluated via the gram matrix."""
    g = form.gram
    return sum(u[i] * sum(g[i][j] * v[j] for j in range(4)) for i in range(4))


def norm(form: FormSpec, v) -> int:
    """f(v) = B(v, v); always even."""
    return bilinear(form, v, v)


def normalize_primitive(v) -> Vec:
    """Divide by the coordinate gcd and fix the overall sign.

    The sign convention is B(v, u0) <= 0, i.e. x2 >= 0 in these coordinates
    (B(v, u0) = -x2 on both branches); ties with x2 = 0 are broken by making
    the first nonzero coordinate positive.
    """
    g = vec_gcd(v)
    if g == 0:
        raise ValueError("cannot normalize the zero vector")
    w = tuple(x // g for x in v)
    if w[1] > 0:
        return w
    if w[1] < 0:
        return tuple(-x for x in w)
    for x in w:
        if x:
            return w if x > 0 else tuple(-y for y in w)
    raise AssertionError("unreachable")


def crystallographic_ok(form: FormSpec, e) -> bool:
    """Whether k = B(e,e) divides 2 B(e, x) for every lattice vector x.

    By bilinearity it is enough to test the four standard basis vectors;
    2 B(e, b_i) is twice the i-th entry of gram . e.
    """
    k = norm(form, e)
    if k <= 0:
        raise ValueError("crystallographic condition needs a positive-norm vector")
    g = form.gram
    for i in range(4):
        if (2 * sum(g[i][j] * e[j] for j in range(4))) % k:
            return False
    return True


def allowed_norms(form: FormSpec) -> tuple[int, ...]:
    """Superset of the norms a root can have: even divisors of 4m (branch A)
    or of 2m (branch B).

    The bound comes from the discriminant group of L_m, whose exponent
    divides 2m resp. m; admission of an individual candidate is always
    re-checked with :func:`crystallographic_ok`.
    """
    bound = 4 * form.m if form.branch == BRANCH_A else 2 * form.m
    return tuple(d for d in divisors(bound) if d % 2 == 0)


def make_root(form: FormSpec, vec) -> Root:
    """Root from a raw vector: normalizes, validates, computes the weight."""
    v = normalize_primitive(vec)
    k = norm(form, v)
    if k <= 0 or k % 2:
        raise ValueError(f"{v} has norm {k}; roots need positive even norm")
    if not crystallographic_ok(form, v):
        raise ValueError(f"{v} violates the crystallographic condition")
    return Root(v, k, Fraction(v[1] * v[1], k))
