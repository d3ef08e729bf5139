"""The end-to-end verification suite behind ``frattini verify``.

Each check re-establishes one family of claims at desk scale: the quadratic
congruence closed form, the exclusion searches over cyclic modules,
Z/2^k x Z/2, the odd-p products and Z/4 x Z/4, the positive witnesses on
(Z/2)^4 and Z/4 x (Z/2)^2, the order-factorization identity over every hit,
the S-verdict sweeps over the group catalog, the order-512 worked example,
the structural shortcut implications, and the synthetic NS audits.

Expensive corpora (search reports, the catalog census) are computed once per
suite run and shared between checks through :class:`SuiteContext`.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field, replace

from . import catalog, classifier
from .abelian import FinAbGroup
from .autsearch import (aut_z4z4_structure_audit, classify_ct_actions,
                        commuting_type_table_check, congruence_closed_form,
                        congruence_solver, corner, enumerate_automorphisms,
                        odd_p_sylow_audit, order_p_automorphisms,
                        square_root_of_unity_corners, type_homomorphism)


@dataclass
class CheckResult:
    name: str
    status: str          # "pass" | "fail" | "vacuous" | "skipped"
    elapsed: float
    detail: str = ""
    artifacts: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status in ("pass", "vacuous", "skipped")


@dataclass
class SuiteResult:
    checks: list

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_json_dict(self) -> dict:
        return {
            "schema": "frattini.verify/1",
            "overall": "pass" if self.ok else "fail",
            "checks": [
                {
                    "name": c.name,
                    "status": c.status,
                    "elapsed_seconds": round(c.elapsed, 3),
                    "detail": c.detail,
                    "artifacts": c.artifacts,
                }
                for c in self.checks
            ],
        }

    def markdown_summary(self) -> str:
        lines = [
            "# Verification suite",
            "",
            "| check | status | seconds | detail |",
            "| --- | --- | --- | --- |",
        ]
        for c in self.checks:
            lines.append(
                f"| {c.name} | {c.status} | {c.elapsed:.2f} | {c.detail} |")
        lines.append("")
        lines.append(f"Overall: **{'pass' if self.ok else 'fail'}**")
        return "\n".join(lines)


class SuiteContext:
    """Lazily computed shared corpora for the suite's checks."""

    def __init__(self, jobs: int = 1):
        self.jobs = jobs
        self._searches: dict = {}
        self._census = None
        self._extra_summaries: dict = {}

    def search(self, p: int, exponents: tuple[int, ...],
               rank_min: int = 2):
        key = (p, tuple(exponents), rank_min)
        if key not in self._searches:
            self._searches[key] = classify_ct_actions(
                FinAbGroup(p, tuple(exponents)), rank_min=rank_min,
                jobs=self.jobs)
        return self._searches[key]

    def all_search_reports(self):
        return [self._searches[k] for k in sorted(self._searches)]

    def census_summary(self):
        if self._census is None:
            self._census = classifier.verify_family(
                catalog.census(2**7), jobs=self.jobs)
        return self._census

    def family_summary(self, key, descriptors):
        if key not in self._extra_summaries:
            self._extra_summaries[key] = classifier.verify_family(
                list(descriptors), jobs=self.jobs)
        return self._extra_summaries[key]

    def all_classification_reports(self):
        out = list(self.census_summary().reports)
        for key in sorted(self._extra_summaries):
            out.extend(self._extra_summaries[key].reports)
        return out


# ---------------------------------------------------------------------------
# the checks
# ---------------------------------------------------------------------------

def check_congruence(ctx: SuiteContext) -> tuple[str, str, dict]:
    failures = []
    for k in range(2, 13):
        brute = congruence_solver(k)
        closed = congruence_closed_form(k)
        if brute != closed:
            failures.append(f"k={k}: {brute} != {closed}")
    detail = "k = 2..12 brute force equals closed form"
    return ("pass" if not failures else "fail",
            detail if not failures else "; ".join(failures),
            {"k_range": [2, 12]})


def check_cyclic_exclusion(ctx: SuiteContext) -> tuple[str, str, dict]:
    cases = []
    for p in (2, 3, 5):
        k = 1
        while p ** (k + 1) <= 256:
            k += 1
            cases.append((p, k))
    bad = []
    examined = 0
    for p, k in cases:
        rep = ctx.search(p, (k,))
        examined += rep.examined
        if rep.hit_count:
            bad.append(f"Z/{p**k}: {rep.hit_count} hits")
    detail = (f"{len(cases)} cyclic modules, {examined} rank>=2 subgroups, "
              "0 hits")
    return ("pass" if not bad else "fail",
            detail if not bad else "; ".join(bad),
            {"modules": len(cases), "subgroups": examined})


def check_cyclic_cross_product_exclusion(ctx) -> tuple[str, str, dict]:
    bad = []
    examined = 0
    for k in range(2, 7):
        rep = ctx.search(2, (k, 1))
        examined += rep.examined
        if rep.hit_count:
            bad.append(f"k={k}: {rep.hit_count} hits")
        M = FinAbGroup(2, (k, 1))
        autos = enumerate_automorphisms(M)
        invol = order_p_automorphisms(M, autos)
        plain = sorted({corner(a) for a in invol
                        if type_homomorphism(a) != (1, 1)})
        if plain != square_root_of_unity_corners(k):
            bad.append(f"k={k}: square-root corners {plain}")
        mixed = sorted({corner(a) for a in invol
                        if type_homomorphism(a) == (1, 1)})
        if mixed != congruence_closed_form(k):
            bad.append(f"k={k}: congruence corners {mixed}")
        table = commuting_type_table_check(k)
        if not table["ok"]:
            bad.append(f"k={k}: commuting-type table mismatch")
    detail = f"k = 2..6: 0 hits over {examined} subgroups; corner sets and type table match"
    return ("pass" if not bad else "fail",
            detail if not bad else "; ".join(bad),
            {"subgroups": examined})


def check_odd_prime_exclusion(ctx) -> tuple[str, str, dict]:
    bad = []
    examined = 0
    for p, k in ((3, 2), (3, 3), (5, 2)):
        rep = ctx.search(p, (k, 1))
        examined += rep.examined
        if rep.hit_count:
            bad.append(f"Z/{p**k} x Z/{p}: {rep.hit_count} hits")
        for c in odd_p_sylow_audit(p, k):
            if not c.ok:
                bad.append(f"p={p},k={k}: {c.name} ({c.detail})")
    detail = (f"3 odd-p modules, {examined} subgroups, 0 hits; "
              "Sylow and norm audits pass")
    return ("pass" if not bad else "fail",
            detail if not bad else "; ".join(bad),
            {"subgroups": examined})


def check_z4xz4_exclusion(ctx) -> tuple[str, str, dict]:
    bad = []
    rep = ctx.search(2, (2, 2))
    if rep.hit_count:
        bad.append(f"{rep.hit_count} hits")
    if rep.automorphism_count != 96:
        bad.append(f"|Aut| = {rep.automorphism_count}")
    for c in aut_z4z4_structure_audit():
        if not c.ok:
            bad.append(f"{c.name} ({c.detail})")
    detail = (f"|Aut| = 96, structure audit passes, 0 hits over "
              f"{rep.examined} subgroups")
    return ("pass" if not bad else "fail",
            detail if not bad else "; ".join(bad),
            {"subgroups": rep.examined})


def check_positive_witnesses(ctx) -> tuple[str, str, dict]:
    bad = []
    rep16 = ctx.search(2, (1, 1, 1, 1))
    rank2 = len(rep16.hits_of_rank(2))
    deeper = rep16.hit_count - rank2
    if rank2 < 1:
        bad.append("(Z/2)^4 has no rank-2 hit")
    if deeper:
        bad.append(f"(Z/2)^4 has {deeper} hits of rank >= 3")
    rep412 = ctx.search(2, (2, 1, 1))
    if rep412.hit_count < 1:
        bad.append("Z/4 x (Z/2)^2 has no hit, contradicting the order-2^8 "
                    "NS-group structure")
    detail = (f"(Z/2)^4: {rank2} rank-2 hits, 0 higher-rank hits over "
              f"{rep16.examined} subgroups; Z/4 x (Z/2)^2: "
              f"{rep412.hit_count} hits")
    return ("pass" if not bad else "fail",
            detail if not bad else "; ".join(bad),
            {"free_hits": rank2, "mixed_hits": rep412.hit_count})


def check_order_formula(ctx) -> tuple[str, str, dict]:
    # make sure the witness corpora exist even under --only
    ctx.search(2, (2, 2))
    ctx.search(2, (1, 1, 1, 1))
    ctx.search(2, (2, 1, 1))
    bad = []
    hits = 0
    examined = 0
    for rep in ctx.all_search_reports():
        examined += rep.examined
        if rep.vanishing_equivalence_violations:
            bad.append(f"{rep.exponents}: H0/H-1 vanishing equivalence broken "
                       f"{rep.vanishing_equivalence_violations} times")
        for hit in rep.hits:
            hits += 1
            if hit.formula_status != "pass":
                bad.append(f"{rep.exponents}: hit fails the order formula")
    detail = (f"all {hits} hits satisfy |A| = |A^Q| |A^Q x Q| |[A,Q,Q]|; "
              f"H0 = 0 iff H-1 = 0 across {examined} modules")
    return ("pass" if not bad else "fail",
            detail if not bad else "; ".join(bad), {"hits": hits})


def check_group_verdicts(ctx) -> tuple[str, str, dict]:
    bad = []
    census = ctx.census_summary()
    if not census.all_s:
        bad.append(f"census: {census.ns_count} NS verdicts")
    coclass1 = [d for fam in ("dihedral", "quaternion", "semidihedral")
                for d in catalog.family_sweep(fam, 2**7)]
    s1 = ctx.family_summary("coclass-1", coclass1)
    if not s1.all_s:
        bad.append("a coclass-1 family member is not S")
    if any(r.coclass != 1 for r in s1.reports):
        bad.append("a dihedral/quaternion/semidihedral group has coclass != 1")
    meta = ctx.family_summary("metacyclic-2-10",
                              catalog.metacyclic_sweep(2, 2**10))
    if not meta.all_s:
        bad.append(f"metacyclic sweep: {meta.ns_count} NS verdicts")
    odd = ctx.family_summary("odd-representatives", [
        catalog.FamilyDescriptor("wreath-p-p", p=3),
        catalog.FamilyDescriptor("heisenberg-p3", p=3),
    ])
    if not odd.all_s:
        bad.append("an odd-p representative is not S")
    coclass2 = [r for r in census.reports if r.coclass == 2]
    if any(r.verdict != "S" for r in coclass2):
        bad.append("a coclass-2 catalog group is not S")
    total = census.total + s1.total + meta.total + odd.total
    detail = (f"{total} classifications, 100% S: census<=2^7 ({census.total}), "
              f"coclass-1 families ({s1.total}), metacyclic<=2^10 "
              f"({meta.total}), odd-p representatives ({odd.total}); "
              f"{len(coclass2)} coclass-2 groups spot-checked")
    return ("pass" if not bad else "fail",
            detail if not bad else "; ".join(bad), {"classified": total})


def check_example_group(ctx) -> tuple[str, str, dict]:
    checks = classifier.example_group_audit()
    bad = [c.name for c in checks if not c.ok]
    detail = f"{len(checks)} subchecks on Z/32 x| Z/16 (twist 11)"
    return ("pass" if not bad else "fail",
            detail if not bad else "failed: " + ", ".join(bad),
            {"subchecks": len(checks)})


def check_structural_shortcuts(ctx) -> tuple[str, str, dict]:
    ctx.census_summary()
    reports = ctx.all_classification_reports()
    bad = []
    fired = 0
    for r in reports:
        for c in classifier.structural_shortcut_checks(r):
            fired += 1
            if not c.ok:
                bad.append(f"{r.descriptor}: {c.name}")
    detail = (f"{fired} shortcut implications over {len(reports)} "
              "classified groups")
    return ("pass" if not bad else "fail",
            detail if not bad else "; ".join(bad),
            {"implications": fired, "groups": len(reports)})


def _fake_ns_report(**overrides) -> classifier.ClassificationReport:
    base = dict(
        descriptor="synthetic-ns", p=2, n=8, order=256, verdict="NS", d=2,
        phi_order=2**6, phi_abelian=False,
        zphi_invariants=(1, 1, 1, 1), z_invariants=(1,), z_in_phi=True,
        zphi_over_z_invariants=(1, 1, 1), nilpotency_class=4, coclass=4,
        h0_order=1, h0_invariants=(), h_minus1_order=1,
        action_kernel_size=1, zphi_in_zp=False, z2_over_z_rank=2,
        order_formula="pass",
    )
    base.update(overrides)
    return classifier.ClassificationReport(**base)


def check_synthetic_ns_audits(ctx) -> tuple[str, str, dict]:
    bad = []
    # a consistent fake passes every constraint
    consistent = _fake_ns_report()
    if not all(c.ok for c in classifier.ns_constraints_audit(consistent)):
        bad.append("a consistent synthetic NS report was rejected")
    # |Phi| too small at p = 2, d = 2
    small_phi = _fake_ns_report(phi_order=2**3)
    audit = {c.name: c.ok for c in classifier.ns_constraints_audit(small_phi)}
    if audit["frattini-lower-bound"]:
        bad.append("undersized Frattini subgroup was accepted")
    # noncyclic center at |G| = p^(p+6)
    noncyclic = _fake_ns_report(z_invariants=(1, 1), z2_over_z_rank=4)
    audit = {c.name: c.ok for c in classifier.ns_constraints_audit(noncyclic)}
    if audit["minimal-order-cyclic-center"]:
        bad.append("noncyclic center was accepted at order p^(p+6)")
    # wrong Frattini-center type at order 2^8
    wrong_type = _fake_ns_report(zphi_invariants=(2, 2))
    audit = {c.name: c.ok for c in classifier.ns_constraints_audit(wrong_type)}
    if audit["order256-frattini-center-type"]:
        bad.append("Z/4 x Z/4 Frattini center was accepted at order 2^8")
    # the audit must refuse S verdicts
    try:
        classifier.ns_constraints_audit(_fake_ns_report(verdict="S"))
        bad.append("the audit ran on an S verdict")
    except Exception:
        pass
    detail = "three violating fakes rejected, consistent fake accepted"
    return ("pass" if not bad else "fail",
            detail if not bad else "; ".join(bad), {})


CHECKS = (
    ("congruence", check_congruence),
    ("cyclic-exclusion", check_cyclic_exclusion),
    ("cyclic-cross-product-exclusion", check_cyclic_cross_product_exclusion),
    ("odd-prime-exclusion", check_odd_prime_exclusion),
    ("z4xz4-exclusion", check_z4xz4_exclusion),
    ("positive-witnesses", check_positive_witnesses),
    ("order-formula", check_order_formula),
    ("group-verdicts", check_group_verdicts),
    ("example-group", check_example_group),
    ("structural-shortcuts", check_structural_shortcuts),
    ("synthetic-ns-audits", check_synthetic_ns_audits),
)

CHECK_NAMES = tuple(name for name, _ in CHECKS)


def run_suite(only=None, jobs: int = 1) -> SuiteResult:
    """Run the verification checks (all of them, or the names in ``only``)."""
    if only:
        unknown = set(only) - set(CHECK_NAMES)
        if unknown:
            raise ValueError(f"unknown checks: {sorted(unknown)}")
    ctx = SuiteContext(jobs=jobs)
    results = []
    for name, fn in CHECKS:
        if only and name not in only:
            results.append(CheckResult(name, "skipped", 0.0, "not selected"))
            continue
        start = time.perf_counter()
        try:
            status, detail, artifacts = fn(ctx)
        except Exception as exc:  # a crashed check is a failed check
            status, detail, artifacts = "fail", f"{type(exc).__name__}: {exc}", {}
        results.append(CheckResult(name, status, time.perf_counter() - start,
                                   detail, artifacts))
    return SuiteResult(results)


def write_suite_outputs(result: SuiteResult, json_path, md_path) -> None:
    with open(json_path, "w") as fh:
        json.dump(result.to_json_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")
    with open(md_path, "w") as fh:
        fh.write(result.markdown_summary())
        fh.write("\n")
