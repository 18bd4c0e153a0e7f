"""Per-field orchestration: run the mirror enumeration, assemble the verdict
for the extended and the plain group, batch scanning, table reproduction,
and the JSON report format.

Verdict logic.  A terminated run proves the extended group reflective; the
plain group's status is then read off the spinor classification of the
mirrors.  A budget-exhausted run is handed to the certificate machinery:
a loxodromic symmetry or a failed class-group filter settles both groups as
not reflective (and not quasi-reflective in the loxodromic case); a pair of
independent parabolic translations witnesses quasi-reflectivity of rank 2;
a cusp-count overflow refutes reflectivity.  The index of the plain group
in the extended one is the 2-part class-group order h2, so when h2 = 1 the
two verdicts coincide.

m = 3 is a fixed verdict (both groups reflective): the stabiliser of the
base ideal point is special there and the standard wall set does not apply.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import coxeter, isometry, reference_data, spinor
from .arith import is_squarefree
from .classgroup import ClassGroupStructure, field_discriminant, group_structure, two_part_order
from .errors import InvalidFieldParameter
from .qform import FormSpec, Root, make_form
from .vinberg import Budget, RunStatus, run

REFLECTIVE = "reflective"
QUASI_REFLECTIVE = "quasi-reflective"
NOT_REFLECTIVE = "not-reflective"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class GroupStatus:
    verdict: str
    rank: int | None = None

    def describe(self) -> str:
        if self.verdict == QUASI_REFLECTIVE and self.rank is not None:
            return f"{self.verdict} (rank {self.rank})"
        return self.verdict


@dataclass
class Verdict:
    m: int
    branch: str
    hat_status: GroupStatus
    bi_status: GroupStatus
    run_status: str
    roots: list[Root]
    in_bi: list[bool]
    diagram: coxeter.CoxeterDiagram | None
    cusps: int | None
    class_group: ClassGroupStructure
    h2: int
    certificate: object | None = None
    warnings: list[str] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)
    note: str | None = None


def classify(m: int, budget: Budget | None = None) -> Verdict:
    """Full verdict for one square-free m."""
    if not isinstance(m, int) or m < 1 or not is_squarefree(m):
        raise InvalidFieldParameter(f"m must be a square-free positive integer, got {m!r}")
    timings: dict[str, float] = {}
    t0 = time.perf_counter()
    structure = group_structure(field_discriminant(m))
    h2 = two_part_order(m)
    timings["class_group"] = time.perf_counter() - t0

    form = make_form(m)
    if m == 3:
        return Verdict(
            m, form.branch, GroupStatus(REFLECTIVE), GroupStatus(REFLECTIVE),
            "fixed", [], [], None, None, structure, h2, timings=timings,
            note="four-faced base chamber; fixed verdict, no enumeration",
        )

    t0 = time.perf_counter()
    state = run(form, budget)
    timings["enumeration"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    diagram = coxeter.build_diagram(form, state.roots)
    spinor.mark_filled(diagram, m)
    in_bi = [not f for f in diagram.filled]
    cusps = coxeter.count_cusps(diagram)
    timings["diagram"] = time.perf_counter() - t0

    warnings: list[str] = []
    certificate = None
    if state.status == RunStatus.TERMINATED:
        hat = GroupStatus(REFLECTIVE)
        bi_res = spinor.bi_verdict_from_reflective_hat(diagram, m)
        bi = GroupStatus(bi_res.verdict, bi_res.rank)
        if bi_res.unrecognized_shape:
            warnings.append(
                "filled mirrors form neither an elliptic set, one cusp pair, "
                "nor one ideal vertex; not-reflective by exclusion"
            )
        if h2 == 1 and bi != hat:
            warnings.append("h2 = 1 but plain and extended verdicts differ")
    else:
        t0 = time.perf_counter()
        certificate = isometry.certify(state, diagram, m)
        timings["certificates"] = time.perf_counter() - t0
        hat, bi = _statuses_from_certificate(certificate, h2, warnings)
    return Verdict(
        m, form.branch, hat, bi, state.status.value, state.roots, in_bi,
        diagram, cusps, structure, h2, certificate, warnings, timings,
    )


def _statuses_from_certificate(cert, h2: int, warnings: list[str]):
    if cert is None:
        warnings.append("no certificate found at this budget")
        return GroupStatus(UNKNOWN), GroupStatus(UNKNOWN)
    if isinstance(cert, isometry.LoxodromicCertificate):
        return GroupStatus(NOT_REFLECTIVE), GroupStatus(NOT_REFLECTIVE)
    if isinstance(cert, isometry.ClassFilterCertificate):
        return GroupStatus(NOT_REFLECTIVE), GroupStatus(NOT_REFLECTIVE)
    if isinstance(cert, isometry.CuspBoundCertificate):
        return GroupStatus(NOT_REFLECTIVE), GroupStatus(NOT_REFLECTIVE)
    if isinstance(cert, isometry.ParabolicRank2Certificate):
        hat = GroupStatus(QUASI_REFLECTIVE, 2)
        if h2 == 1:
            return hat, hat
        warnings.append("plain-group status undetermined (h2 > 1)")
        return hat, GroupStatus(UNKNOWN)
    if isinstance(cert, isometry.ParabolicRank1Certificate):
        hat = GroupStatus(QUASI_REFLECTIVE, 1)
        if h2 == 1:
            return hat, hat
        warnings.append("plain-group status undetermined (h2 > 1)")
        return hat, GroupStatus(UNKNOWN)
    raise AssertionError(f"unhandled certificate {cert!r}")


def scan(values, budget: Budget | None = None, jobs: int = 1):
    """Independent verdicts for every square-free m in ``values``, in
    increasing order; non-square-free values are skipped with a warning."""
    ms = sorted(set(values))
    skipped = [m for m in ms if m < 1 or not is_squarefree(m)]
    ms = [m for m in ms if m >= 1 and is_squarefree(m)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            verdicts = list(pool.map(classify, ms, [budget] * len(ms)))
    else:
        verdicts = [classify(m, budget) for m in ms]
    return verdicts, skipped


# ---------------------------------------------------------------------------
# Table reproduction


def _vector_table_report(m: int, expected) -> tuple[str, bool]:
    state = run(make_form(m))
    ours = [r.vec for r in state.roots]
    ok = set(ours) == set(expected) and state.status == RunStatus.TERMINATED
    lines = [f"m = {m}: {len(ours)} mirrors ({state.status.value})"]
    for vec in ours:
        mark = "" if vec in expected else "   <- not in the published table"
        lines.append(f"  {vec}{mark}")
    for vec in expected:
        if vec not in set(ours):
            ok = False
            lines.append(f"  missing from run: {vec}")
    lines.append("PASS" if ok else "FAIL")
    return "\n".join(lines) + "\n", ok


def _completions_report() -> tuple[str, bool]:
    form = make_form(33)
    state = run(form)
    ours = [r.vec for r in state.roots]
    if list(reference_data.M33_VECTORS) != ours:
        return "m = 33 mirror list differs; cannot compare completions\nFAIL\n", False
    diagram = coxeter.build_diagram(form, state.roots)
    ok = True
    lines = ["m = 33 rank-2 elliptic subdiagrams and their completions"]
    for (i, j), expected in sorted(reference_data.M33_COMPLETIONS.items()):
        got = coxeter.completions(diagram, (i - 1, j - 1))
        got_set = {
            (tuple(sorted(v + 1 for v in verts)), cls.describe())
            for verts, cls in got
        }
        exp_set = {(tuple(t), label) for t, label in expected}
        row_ok = got_set == exp_set
        ok &= row_ok
        shown = "; ".join(
            f"{','.join(map(str, t))} : {label}" for t, label in sorted(got_set)
        )
        lines.append(f"  {i},{j}  ->  {shown}" + ("" if row_ok else "   <- differs"))
    lines.append("PASS" if ok else "FAIL")
    return "\n".join(lines) + "\n", ok


TABLE_IDS = ("m33_vectors", "m33_completions", "m17_vectors", "m21_vectors")


def reproduce_table(which: str) -> tuple[str, bool]:
    """Recompute one of the published tables and diff it; vector lists are
    compared as sets, the completion table row by row."""
    if which == "m33_vectors":
        return _vector_table_report(33, reference_data.M33_VECTORS)
    if which == "m17_vectors":
        return _vector_table_report(17, reference_data.M17_VECTORS)
    if which == "m21_vectors":
        return _vector_table_report(21, reference_data.M21_VECTORS)
    if which == "m33_completions":
        return _completions_report()
    raise ValueError(f"unknown table id {which!r}; choose from {TABLE_IDS}")


# ---------------------------------------------------------------------------
# JSON report


def _s(x: int) -> str:
    return str(int(x))


def _frac(x: Fraction) -> dict:
    return {"num": _s(x.numerator), "den": _s(x.denominator)}


def _status_json(st: GroupStatus) -> dict:
    out: dict = {"verdict": st.verdict}
    if st.rank is not None:
        out["rank"] = st.rank
    return out


def _matrix_json(mat) -> list[list[str]]:
    return [[_s(x) for x in row] for row in mat]


def _certificate_json(cert) -> dict | None:
    if cert is None:
        return None
    if isinstance(cert, isometry.LoxodromicCertificate):
        return {
            "type": "loxodromic_symmetry",
            "matrix": _matrix_json(cert.mat),
            "weight_bound": _frac(cert.weight_bound),
            "matched_mirrors": cert.matched,
        }
    if isinstance(cert, isometry.ParabolicRank2Certificate):
        return {
            "type": "parabolic_rank2",
            "matrices": [_matrix_json(g) for g in cert.mats],
            "translations": [_matrix_json(g) for g in cert.translations],
            "fixed_point": [_s(x) for x in cert.fixed_point],
            "weight_bound": _frac(cert.weight_bound),
        }
    if isinstance(cert, isometry.ParabolicRank1Certificate):
        return {
            "type": "parabolic_rank1",
            "matrix": _matrix_json(cert.mat),
            "translation": _matrix_json(cert.translation),
            "fixed_point": [_s(x) for x in cert.fixed_point],
            "weight_bound": _frac(cert.weight_bound),
        }
    if isinstance(cert, isometry.CuspBoundCertificate):
        return {
            "type": "cusp_bound_violation",
            "count": _s(cert.count),
            "bound": _s(cert.bound),
            "group": cert.group,
            "mode": cert.mode,
        }
    if isinstance(cert, isometry.ClassFilterCertificate):
        return {
            "type": "class_filter_exclusion",
            "factors": [_s(d) for d in cert.invariant_factors],
            "failed_cases": list(cert.failed_cases),
        }
    raise AssertionError(f"unhandled certificate {cert!r}")


def to_json(verdict: Verdict) -> dict:
    """The machine-readable report; every possibly large integer is a
    decimal string.  Edge endpoints are 1-based vertex labels."""
    edges = []
    if verdict.diagram is not None:
        d = verdict.diagram
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                kind = d.edge(i, j)
                if kind.kind == "right_angle":
                    continue
                entry = {"i": i + 1, "j": j + 1, "kind": kind.kind}
                if kind.n is not None:
                    entry["label"] = str(kind.n)
                edges.append(entry)
    out = {
        "schema": 1,
        "m": _s(verdict.m),
        "branch": verdict.branch,
        "run_status": verdict.run_status,
        "roots": [
            {
                "coords": [_s(x) for x in r.vec],
                "norm": _s(r.norm),
                "weight_sq": _frac(r.weight_sq),
                "in_bi": in_bi,
            }
            for r, in_bi in zip(verdict.roots, verdict.in_bi)
        ],
        "diagram": {"edges": edges},
        "cusps": None if verdict.cusps is None else _s(verdict.cusps),
        "hat_status": _status_json(verdict.hat_status),
        "bi_status": _status_json(verdict.bi_status),
        "class_group": {
            "D": _s(verdict.class_group.D),
            "h": _s(verdict.class_group.h),
            "factors": [_s(d) for d in verdict.class_group.invariant_factors],
            "h2": _s(verdict.h2),
        },
    }
    cert = _certificate_json(verdict.certificate)
    if cert is not None:
        out["certificate"] = cert
    if verdict.warnings:
        out["warnings"] = list(verdict.warnings)
    if verdict.note:
        out["note"] = verdict.note
    return out
