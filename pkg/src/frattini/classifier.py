"""End-to-end S/NS classification of a concrete nonabelian p-group.

A group G is an S-group when the degree-zero Tate cohomology of the
conjugation action of G/Phi(G) on Z(Phi(G)) is nonzero, and an NS-group
otherwise (equivalently, by the Gaschuetz-Uchida criterion, when that module
is cohomologically trivial).  :func:`classify` produces the full report;
:func:`ns_constraints_audit` checks the structural constraints every NS-group
must satisfy, which double as consistency tripwires because no NS-group of
desk-scale order exists.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, asdict

import numpy as np

from . import catalog, groups as gp, tate


@dataclass
class AuditCheck:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class ClassificationReport:
    """Everything the S/NS pipeline measured for one group."""

    descriptor: str
    p: int
    n: int                       # |G| = p^n
    order: int
    verdict: str                 # "S" | "NS"
    d: int                       # generator rank
    phi_order: int
    phi_abelian: bool
    zphi_invariants: tuple[int, ...]
    z_invariants: tuple[int, ...]
    z_in_phi: bool
    zphi_over_z_invariants: tuple[int, ...]
    nilpotency_class: int
    coclass: int
    h0_order: int
    h0_invariants: tuple[int, ...]
    h_minus1_order: int
    action_kernel_size: int
    zphi_in_zp: bool
    z2_over_z_rank: int
    order_formula: str           # "pass" | "fail" | "not-applicable"
    ns_audit: list | None = None

    @property
    def zphi_order(self) -> int:
        return self.p ** sum(self.zphi_invariants)

    @property
    def z_order(self) -> int:
        return self.p ** sum(self.z_invariants)

    def to_json_dict(self) -> dict:
        out = {
            "schema": "frattini.classify/1",
            "descriptor": self.descriptor,
            "p": self.p,
            "order": self.order,
            "order_exponent": self.n,
            "verdict": self.verdict,
            "generator_rank": self.d,
            "frattini_order": self.phi_order,
            "frattini_abelian": self.phi_abelian,
            "frattini_center_invariants": list(self.zphi_invariants),
            "center_invariants": list(self.z_invariants),
            "center_inside_frattini": self.z_in_phi,
            "frattini_center_over_center_invariants":
                list(self.zphi_over_z_invariants),
            "nilpotency_class": self.nilpotency_class,
            "coclass": self.coclass,
            "h0_order": self.h0_order,
            "h0_invariants": list(self.h0_invariants),
            "h_minus1_order": self.h_minus1_order,
            "action_kernel_size": self.action_kernel_size,
            "frattini_center_in_zp": self.zphi_in_zp,
            "z2_over_z_rank": self.z2_over_z_rank,
            "order_formula": self.order_formula,
        }
        if self.ns_audit is not None:
            out["ns_audit"] = [asdict(c) for c in self.ns_audit]
        return out


def classify(G: gp.PGroup, descriptor: str | None = None) -> ClassificationReport:
    """Classify a nonabelian p-group as S or NS, with the full evidence record."""
    if G.is_abelian():
        raise gp.DomainError("classification is defined for nonabelian groups")
    p = G.p
    n = G.exponent_of_order

    phi = gp.frattini_subgroup(G)
    phi_abelian = phi.is_abelian()
    zphi = gp.subgroup_center(G, phi)
    z = gp.center(G)
    z_in_phi = phi.contains(z)
    z_cap_zphi = gp.Subgroup(G, np.intersect1d(z.ids, zphi.ids), check=False)

    module = tate.module_from_group(G, phi=phi, zphi=zphi)
    h0 = tate.tate_h0(module)
    hm1 = tate.tate_h_minus1(module)
    verdict = "S" if h0.order > 1 else "NS"

    # fixed points of the full action are Z(G) n Z(Phi(G)) by construction
    fixed = zphi.ids[tate.fixed_points(module)]
    if not np.array_equal(fixed, z_cap_zphi.ids):
        raise gp.DomainError("fixed points disagree with Z(G) n Z(Phi(G))")

    kernel = tate.action_kernel_size(module)
    centralizer_kernel = gp.centralizer(G, zphi).order // phi.order
    if kernel != centralizer_kernel:
        raise gp.DomainError("action kernel disagrees with C_G(Z(Phi))/Phi")

    upper = gp.upper_central_series(G)
    lower = gp.lower_central_series(G)
    if upper.length() != lower.length():
        raise gp.DomainError("central series lengths disagree")
    cls = lower.length()
    zp_index = min(p, len(upper.terms) - 1)
    zp_term = upper.terms[zp_index]
    zphi_in_zp = zp_term.contains(zphi)

    z2 = upper.terms[min(2, len(upper.terms) - 1)]
    z2_over_z_rank = len(gp.quotient_abelian_invariants(G, z2, z))

    formula = tate.order_formula_check(module)

    d = 0
    idx = G.order // phi.order
    while idx > 1:
        idx //= p
        d += 1

    report = ClassificationReport(
        descriptor=descriptor or G.name,
        p=p,
        n=n,
        order=G.order,
        verdict=verdict,
        d=d,
        phi_order=phi.order,
        phi_abelian=phi_abelian,
        zphi_invariants=gp.abelian_invariants(zphi),
        z_invariants=gp.abelian_invariants(z),
        z_in_phi=z_in_phi,
        zphi_over_z_invariants=gp.quotient_abelian_invariants(
            G, zphi, z_cap_zphi),
        nilpotency_class=cls,
        coclass=n - cls,
        h0_order=h0.order,
        h0_invariants=h0.invariants,
        h_minus1_order=hm1.order,
        action_kernel_size=kernel,
        zphi_in_zp=zphi_in_zp,
        z2_over_z_rank=z2_over_z_rank,
        order_formula=formula.status,
    )
    if verdict == "NS":
        report.ns_audit = ns_constraints_audit(report)
    return report


def ns_constraints_audit(report: ClassificationReport) -> list[AuditCheck]:
    """Constraints every NS-group must satisfy; raises if fed an S verdict."""
    if report.verdict != "NS":
        raise gp.DomainError("the NS audit applies to NS verdicts only")
    p, d, n = report.p, report.d, report.n
    checks = [
        AuditCheck(
            "frattini-lower-bound",
            report.phi_order >= p ** (d + p + 2),
            f"|Phi| = {report.phi_order} >= p^(d+p+2) = {p ** (d + p + 2)}"),
        AuditCheck(
            "order-lower-bound",
            report.order >= p ** (2 * d + p + 2),
            f"|G| = {report.order} >= p^(2d+p+2) = {p ** (2 * d + p + 2)}"),
        AuditCheck(
            "effective-action",
            report.action_kernel_size == 1,
            f"action kernel size {report.action_kernel_size}"),
        AuditCheck(
            "frattini-center-escapes-zp",
            not report.zphi_in_zp,
            "Z(Phi(G)) not contained in Z_p(G)"),
        AuditCheck(
            "z2-rank-product",
            report.z2_over_z_rank == d * len(report.z_invariants),
            f"d(Z2/Z) = {report.z2_over_z_rank} vs d(G)d(Z) = "
            f"{d * len(report.z_invariants)}"),
    ]
    if n == p + 6:
        checks.extend([
            AuditCheck("minimal-order-two-generated", d == 2, f"d = {d}"),
            AuditCheck(
                "minimal-order-frattini-center",
                report.zphi_order == p ** (p + 2),
                f"|Z(Phi)| = {report.zphi_order} vs p^(p+2) = {p ** (p + 2)}"),
            AuditCheck(
                "minimal-order-cyclic-center",
                report.z_invariants == (1,),
                f"Z(G) invariants {report.z_invariants}"),
        ])
    if p == 2 and n == 8:
        checks.extend([
            AuditCheck(
                "order256-frattini-center-type",
                report.zphi_invariants in ((1, 1, 1, 1), (2, 1, 1)),
                f"Z(Phi) invariants {report.zphi_invariants}"),
            AuditCheck(
                "order256-quotient-type",
                report.zphi_over_z_invariants == (1, 1, 1),
                f"Z(Phi)/Z invariants {report.zphi_over_z_invariants}"),
        ])
    return checks


# ---------------------------------------------------------------------------
# family sweeps
# ---------------------------------------------------------------------------

@dataclass
class FamilySummary:
    total: int
    s_count: int
    ns_count: int
    reports: list

    @property
    def all_s(self) -> bool:
        return self.ns_count == 0 and self.total == self.s_count

    def to_json_dict(self) -> dict:
        return {
            "schema": "frattini.sweep/1",
            "total": self.total,
            "s_count": self.s_count,
            "ns_count": self.ns_count,
            "reports": [r.to_json_dict() for r in self.reports],
        }


def _classify_descriptor(desc: catalog.FamilyDescriptor) -> ClassificationReport:
    G = catalog.build(desc)
    return classify(G, descriptor=desc.compact())


def verify_family(descriptors, jobs: int = 1) -> FamilySummary:
    """Classify every group in a descriptor sweep (parallel over groups)."""
    descs = list(descriptors)
    if jobs > 1 and len(descs) > 8:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_classify_descriptor, descs,
                                    chunksize=max(1, len(descs) // (jobs * 4))))
    else:
        reports = [_classify_descriptor(d) for d in descs]
    reports.sort(key=lambda r: (r.order, r.descriptor))
    s_count = sum(1 for r in reports if r.verdict == "S")
    return FamilySummary(
        total=len(reports),
        s_count=s_count,
        ns_count=len(reports) - s_count,
        reports=reports,
    )


def structural_shortcut_checks(report: ClassificationReport) -> list[AuditCheck]:
    """Per-group implications that must hold regardless of the verdict.

    A nonabelian p-group is an S-group whenever Phi(G) is abelian, whenever
    the Frattini-quotient action on Z(Phi(G)) has a kernel, and whenever
    Z(Phi(G)) lies inside the p-th upper central term.
    """
    out = []
    if report.phi_abelian:
        out.append(AuditCheck("abelian-frattini-forces-s",
                              report.verdict == "S", report.descriptor))
    if report.action_kernel_size > 1:
        out.append(AuditCheck("action-kernel-forces-s",
                              report.verdict == "S", report.descriptor))
    if report.zphi_in_zp:
        out.append(AuditCheck("zp-containment-forces-s",
                              report.verdict == "S", report.descriptor))
    return out


# ---------------------------------------------------------------------------
# the order-512 worked example
# ---------------------------------------------------------------------------

def example_group_audit() -> list[AuditCheck]:
    """Full audit of the worked example Z/32 x| Z/16 with twist 11."""
    checks = []
    G = gp.semidirect_cyclic(32, 16, 11)
    params = G.metacyclic_params
    pb = 2 ** params.beta
    a = 1 * pb       # ([1], [0])
    b = 1            # ([0], [1])

    ord11 = 1
    x = 11 % 32
    while x != 1:
        x = (x * 11) % 32
        ord11 += 1
    checks.append(AuditCheck("twist-order", ord11 == 8,
                             f"11 has multiplicative order {ord11} mod 32"))

    geom = sum(pow(11, i, 32) for i in range(16)) % 32
    checks.append(AuditCheck("geometric-sum", geom == 0,
                             f"1 + 11 + ... + 11^15 = {geom} mod 32"))

    ab16 = G.power(G.mul(a, b), 16)
    checks.append(AuditCheck("product-power-collapses", ab16 == 0,
                             f"(ab)^16 has id {ab16}"))

    a16b16 = G.mul(G.power(a, 16), G.power(b, 16))
    expected = 16 * pb   # ([16], [0])
    checks.append(AuditCheck(
        "powers-do-not-commute-through", a16b16 == expected and a16b16 != 0,
        f"a^16 b^16 has id {a16b16}, ([16],[0]) is id {expected}"))

    phi = gp.frattini_subgroup(G)
    gen_phi = gp.closure(G, [G.power(a, 2), G.power(b, 2)])
    checks.append(AuditCheck("frattini-generators", gen_phi == phi,
                             "Phi(G) = <a^2, b^2>"))
    checks.append(AuditCheck("frattini-order", phi.order == 2**7,
                             f"|Phi(G)| = {phi.order}"))
    checks.append(AuditCheck("frattini-nonabelian", not phi.is_abelian(),
                             "Phi(G) is nonabelian"))

    derived = gp.commutator_subgroup(G)
    even_a = gp.closure(G, [G.power(a, 2)])
    checks.append(AuditCheck(
        "derived-subgroup", derived == even_a and derived.order == 16,
        f"[G,G] = <a^2> of order {derived.order}"))

    lower = gp.lower_central_series(G)
    checks.append(AuditCheck(
        "lower-central-orders", lower.orders() == [512, 16, 8, 4, 2, 1],
        f"orders {lower.orders()}"))

    cls = lower.length()
    checks.append(AuditCheck("nilpotency-class", cls == 5, f"class {cls}"))
    checks.append(AuditCheck("coclass", 9 - cls == 4, f"coclass {9 - cls}"))

    report = classify(G)
    checks.append(AuditCheck("verdict", report.verdict == "S",
                             f"verdict {report.verdict}, |H0| = {report.h0_order}"))
    return checks


# ---------------------------------------------------------------------------
# reporting
# ---------------------------------------------------------------------------

_TABLE_COLUMNS = (
    ("descriptor", "group"),
    ("order", "|G|"),
    ("verdict", "verdict"),
    ("d", "d(G)"),
    ("phi_order", "|Phi|"),
    ("phi_abelian", "Phi ab."),
    ("nilpotency_class", "class"),
    ("coclass", "coclass"),
    ("h0_order", "|H0|"),
    ("h_minus1_order", "|H-1|"),
)


def reports_markdown_table(reports) -> str:
    """Markdown summary table of classification reports."""
    header = "| " + " | ".join(title for _, title in _TABLE_COLUMNS) + " |"
    rule = "|" + "|".join(" --- " for _ in _TABLE_COLUMNS) + "|"
    lines = [header, rule]
    for r in reports:
        cells = []
        for attr, _ in _TABLE_COLUMNS:
            value = getattr(r, attr)
            if isinstance(value, bool):
                value = "yes" if value else "no"
            cells.append(str(value))
        lines.append("| " + " | ".join(cells) + " |")
    return "\n".join(lines)
