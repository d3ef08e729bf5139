import pytest

from frattini import catalog as cat
from frattini import groups as gp


class TestBuild:
    @pytest.mark.parametrize("text,order", [
        ("dihedral(8)", 8),
        ("dihedral(128)", 128),
        ("quaternion(8)", 8),
        ("quaternion(64)", 64),
        ("semidihedral(16)", 16),
        ("modular-maximal-cyclic(16)", 16),
        ("cyclic(16)", 16),
        ("elementary-abelian(2,3)", 8),
        ("metacyclic(2,5,4,5,11)", 512),
        ("semidirect-cyclic(32,16,11)", 512),
        ("heisenberg-p3(3)", 27),
        ("wreath-p-p(3)", 81),
        ("direct-product(dihedral(8), cyclic(4))", 32),
    ])
    def test_orders(self, text, order):
        assert cat.build(cat.parse_compact(text)).order == order

    def test_semidihedral_16_is_maximal_class(self):
        G = cat.build(cat.parse_compact("semidihedral(16)"))
        assert gp.nilpotency_class(G) == 3
        assert gp.coclass(G) == 1

    def test_coclass_one_families(self):
        for fam in ("dihedral", "quaternion"):
            for n in range(3, 8):
                G = cat.build(cat.FamilyDescriptor(fam, order=2**n))
                assert gp.coclass(G) == 1, (fam, n)
        for n in range(4, 8):
            G = cat.build(cat.FamilyDescriptor("semidihedral", order=2**n))
            assert gp.coclass(G) == 1

    def test_modular_groups_have_class_two(self):
        for n in range(4, 8):
            G = cat.build(cat.FamilyDescriptor("modular-maximal-cyclic",
                                               order=2**n))
            assert gp.nilpotency_class(G) == 2

    def test_rejects_bad_parameters(self):
        with pytest.raises(gp.GroupConstructionError):
            cat.build(cat.parse_compact("dihedral(4)"))
        with pytest.raises(gp.GroupConstructionError):
            cat.build(cat.parse_compact("semidihedral(8)"))
        with pytest.raises(cat.DescriptorError):
            cat.FamilyDescriptor("modular")

    def test_unknown_family_rejected(self):
        with pytest.raises(cat.DescriptorError):
            cat.parse_compact("frobenius(20)")


class TestSweeps:
    def test_metacyclic_sweep_to_32_contains_the_named_groups(self):
        names = {d.compact() for d in cat.metacyclic_sweep(2, 2**5)}
        assert "metacyclic(2,2,1,1,3)" in names     # quaternion of order 8
        assert "metacyclic(2,2,1,2,3)" in names     # dihedral of order 8
        assert "metacyclic(2,3,1,3,5)" in names     # modular of order 16

    def test_sweep_descriptors_build_with_declared_order(self):
        for desc in cat.metacyclic_sweep(2, 2**6):
            G = cat.build(desc)
            assert G.order == desc.p ** (desc.alpha + desc.beta)
            assert not G.is_abelian()

    def test_sweep_is_deterministic(self):
        a = [d.compact() for d in cat.metacyclic_sweep(2, 2**8)]
        b = [d.compact() for d in cat.metacyclic_sweep(2, 2**8)]
        assert a == b

    def test_dihedral_sweep_has_one_group_per_exponent(self):
        descs = list(cat.family_sweep("dihedral", 2**7))
        assert [d.order for d in descs] == [8, 16, 32, 64, 128]

    def test_census_is_nonabelian_and_within_bound(self):
        descs = list(cat.census(2**6))
        assert len(descs) == len(set(descs))
        for desc in descs:
            G = cat.build(desc)
            assert not G.is_abelian()
            assert G.order <= 2**6

    def test_census_deterministic(self):
        a = [d.compact() for d in cat.census(2**7)]
        b = [d.compact() for d in cat.census(2**7)]
        assert a == b


class TestParsing:
    def test_roundtrip_compact(self):
        for text in ("dihedral(16)", "metacyclic(2,3,2,1,5)",
                     "direct-product(quaternion(8), cyclic(2))"):
            desc = cat.parse_compact(text)
            assert cat.parse_compact(desc.compact()) == desc

    def test_config_keys(self):
        desc = cat.parse_group_config(
            "family = metacyclic\np=2\nalpha=5\nbeta=4\ngamma=5\nr=11\n")
        assert desc == cat.FamilyDescriptor("metacyclic", p=2, alpha=5,
                                            beta=4, gamma=5, r=11)

    def test_config_comments_and_products(self):
        desc = cat.parse_group_config(
            "# product example\nfamily = direct-product\n"
            "components = dihedral(16), cyclic(2)\n")
        assert desc.family == "direct-product"
        assert [c.compact() for c in desc.components] == \
            ["dihedral(16)", "cyclic(2)"]

    def test_config_rejects_garbage(self):
        with pytest.raises(cat.DescriptorError):
            cat.parse_group_config("no equals sign here")
        with pytest.raises(cat.DescriptorError):
            cat.parse_group_config("p = 2\n")   # missing family
        with pytest.raises(cat.DescriptorError):
            cat.parse_group_config("family = dihedral\nwidth = 3\n")
