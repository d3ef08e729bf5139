import pytest

from frattini import catalog as cat
from frattini import classifier as cl
from frattini import groups as gp
from frattini import tate


def classify_compact(text):
    desc = cat.parse_compact(text)
    return cl.classify(cat.build(desc), descriptor=desc.compact())


class TestClassify:
    def test_d8(self):
        r = classify_compact("dihedral(8)")
        assert r.verdict == "S"
        assert r.h0_order == 2
        assert (r.nilpotency_class, r.coclass) == (2, 1)
        assert r.phi_abelian

    def test_q8_has_abelian_frattini(self):
        r = classify_compact("quaternion(8)")
        assert r.verdict == "S"
        assert r.phi_abelian

    def test_example_group(self):
        r = classify_compact("semidirect-cyclic(32,16,11)")
        assert r.verdict == "S"
        assert (r.nilpotency_class, r.coclass) == (5, 4)
        assert r.phi_order == 2**7
        assert not r.phi_abelian
        assert r.d == 2

    def test_rejects_abelian(self):
        with pytest.raises(gp.DomainError):
            cl.classify(gp.cyclic_group(2, 3))

    def test_h0_matches_standalone_recomputation(self):
        for text in ("dihedral(8)", "quaternion(16)", "semidihedral(32)",
                     "semidirect-cyclic(32,16,11)", "heisenberg-p3(3)",
                     "direct-product(dihedral(8), cyclic(2))"):
            r = classify_compact(text)
            G = cat.build(cat.parse_compact(text))
            module = tate.module_from_group(G)
            assert tate.tate_h0(module).order == r.h0_order
            assert tate.tate_h_minus1(module).order == r.h_minus1_order

    def test_report_serialization(self):
        r = classify_compact("dihedral(16)")
        payload = r.to_json_dict()
        assert payload["schema"] == "frattini.classify/1"
        assert payload["verdict"] == "S"
        assert payload["order"] == 16
        assert "ns_audit" not in payload

    def test_verdict_is_h0_nonvanishing(self):
        for text in ("dihedral(8)", "wreath-p-p(3)", "modular-maximal-cyclic(32)"):
            r = classify_compact(text)
            assert (r.verdict == "S") == (r.h0_order > 1)


class TestStructuralShortcuts:
    def test_shortcuts_hold_on_samples(self):
        for text in ("dihedral(8)", "quaternion(32)", "heisenberg-p3(3)",
                     "direct-product(dihedral(8), elementary-abelian(2,2))",
                     "semidirect-cyclic(32,16,11)"):
            r = classify_compact(text)
            for check in cl.structural_shortcut_checks(r):
                assert check.ok, (text, check.name)

    def test_product_with_abelian_factor_has_action_kernel(self):
        r = classify_compact("direct-product(dihedral(8), cyclic(4))")
        assert r.action_kernel_size > 1
        assert r.verdict == "S"


class TestNSAudit:
    def _fake(self, **overrides):
        base = dict(
            descriptor="fake", p=2, n=8, order=256, verdict="NS", d=2,
            phi_order=2**6, phi_abelian=False,
            zphi_invariants=(1, 1, 1, 1), z_invariants=(1,), z_in_phi=True,
            zphi_over_z_invariants=(1, 1, 1), nilpotency_class=4, coclass=4,
            h0_order=1, h0_invariants=(), h_minus1_order=1,
            action_kernel_size=1, zphi_in_zp=False, z2_over_z_rank=2,
            order_formula="pass")
        base.update(overrides)
        return cl.ClassificationReport(**base)

    def test_consistent_fake_passes(self):
        checks = cl.ns_constraints_audit(self._fake())
        assert all(c.ok for c in checks)
        names = [c.name for c in checks]
        assert names.count("frattini-lower-bound") == 1
        assert "order256-frattini-center-type" in names

    def test_rejects_s_verdict(self):
        with pytest.raises(gp.DomainError):
            cl.ns_constraints_audit(self._fake(verdict="S"))

    def test_small_frattini_fails(self):
        checks = {c.name: c.ok
                  for c in cl.ns_constraints_audit(self._fake(phi_order=2**3))}
        assert not checks["frattini-lower-bound"]

    def test_noncyclic_center_fails(self):
        checks = {c.name: c.ok for c in cl.ns_constraints_audit(
            self._fake(z_invariants=(1, 1), z2_over_z_rank=4))}
        assert not checks["minimal-order-cyclic-center"]

    def test_wrong_frattini_center_type_fails(self):
        checks = {c.name: c.ok for c in cl.ns_constraints_audit(
            self._fake(zphi_invariants=(2, 2)))}
        assert not checks["order256-frattini-center-type"]

    def test_action_kernel_fails(self):
        checks = {c.name: c.ok for c in cl.ns_constraints_audit(
            self._fake(action_kernel_size=2))}
        assert not checks["effective-action"]

    def test_zp_containment_fails(self):
        checks = {c.name: c.ok for c in cl.ns_constraints_audit(
            self._fake(zphi_in_zp=True))}
        assert not checks["frattini-center-escapes-zp"]

    def test_classify_attaches_no_audit_for_s_groups(self):
        assert classify_compact("dihedral(8)").ns_audit is None


class TestVerifyFamily:
    def test_dihedral_sweep_is_all_s(self):
        summary = cl.verify_family(cat.family_sweep("dihedral", 2**7))
        assert summary.total == 5
        assert summary.all_s

    def test_reports_sorted_deterministically(self):
        summary = cl.verify_family(cat.family_sweep("quaternion", 2**6))
        orders = [r.order for r in summary.reports]
        assert orders == sorted(orders)

    def test_parallel_matches_serial(self):
        descs = list(cat.metacyclic_sweep(2, 2**6))
        serial = cl.verify_family(descs, jobs=1)
        parallel = cl.verify_family(descs, jobs=2)
        assert [r.descriptor for r in serial.reports] == \
            [r.descriptor for r in parallel.reports]
        assert [r.verdict for r in serial.reports] == \
            [r.verdict for r in parallel.reports]

    def test_summary_serialization(self):
        summary = cl.verify_family([cat.parse_compact("dihedral(8)")])
        payload = summary.to_json_dict()
        assert payload["total"] == 1
        assert payload["reports"][0]["verdict"] == "S"


class TestExampleAudit:
    def test_all_subchecks_pass(self):
        checks = cl.example_group_audit()
        failed = [c.name for c in checks if not c.ok]
        assert failed == []
        names = [c.name for c in checks]
        for expected in ("twist-order", "geometric-sum",
                         "product-power-collapses", "frattini-order",
                         "lower-central-orders", "coclass", "verdict"):
            assert expected in names


class TestMarkdownTable:
    def test_table_shape(self):
        summary = cl.verify_family(cat.family_sweep("dihedral", 2**5))
        table = cl.reports_markdown_table(summary.reports)
        lines = table.splitlines()
        assert lines[0].startswith("| group |")
        assert len(lines) == 2 + summary.total
        assert all(line.startswith("|") for line in lines)
