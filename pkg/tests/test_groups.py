import numpy as np
import pytest

from frattini import groups as gp

from helpers import (brute_center, brute_closure, brute_commutator_closure,
                     brute_element_order, find_isomorphism,
                     quaternion_unit_group, square_symmetry_group)


def q8():
    return gp.metacyclic_group(gp.MetacyclicParams(2, 2, 1, 1, 3))


def d8():
    return gp.metacyclic_group(gp.MetacyclicParams(2, 2, 1, 2, 3))


EXAMPLE_512 = gp.MetacyclicParams(2, 5, 4, 5, 11)


class TestMetacyclicConstruction:
    def test_q8_is_the_quaternion_group(self):
        G = q8()
        assert G.order == 8
        assert not G.is_abelian()
        a, b = G.generators
        # defining property: i^2 = j^2 = (ij)^2 != e
        sq = G.power(a, 2)
        assert sq != 0
        assert G.power(b, 2) == sq
        assert G.power(G.mul(a, b), 2) == sq
        involutions = [g for g in range(1, 8) if G.element_order(g) == 2]
        assert len(involutions) == 1
        assert find_isomorphism(G, quaternion_unit_group()) is not None

    def test_d8_is_the_square_symmetry_group(self):
        assert find_isomorphism(d8(), square_symmetry_group()) is not None

    def test_example_group_has_order_512(self):
        G = gp.metacyclic_group(EXAMPLE_512)
        assert G.order == 2**9
        assert not G.is_abelian()

    def test_rejects_broken_congruences(self):
        with pytest.raises(gp.GroupConstructionError):
            gp.MetacyclicParams(2, 3, 1, 1, 3).validate()  # 2(3-1) != 0 mod 8
        with pytest.raises(gp.GroupConstructionError):
            gp.MetacyclicParams(2, 3, 1, 3, 2).validate()  # r not a unit
        with pytest.raises(gp.GroupConstructionError):
            gp.MetacyclicParams(2, 2, 1, 3, 3).validate()  # gamma > alpha
        with pytest.raises(gp.GroupConstructionError):
            gp.MetacyclicParams(6, 1, 1, 1, 1).validate()  # p not prime

    def test_split_case_equals_semidirect(self):
        m = gp.metacyclic_group(gp.MetacyclicParams(2, 3, 1, 3, 7))
        s = gp.semidirect_cyclic(8, 2, 7)
        assert np.array_equal(m.table, s.table)

    def test_associativity_exhaustive_small(self):
        for G in (q8(), d8(), gp.heisenberg_group(3)):
            assert gp.check_associativity(G, exhaustive=True)

    def test_associativity_exhaustive_order_512(self):
        assert gp.check_associativity(gp.metacyclic_group(EXAMPLE_512),
                                      exhaustive=True)


class TestSemidirectCyclic:
    def test_example_twist_has_order_eight(self):
        G = gp.semidirect_cyclic(32, 16, 11)
        assert G.order == 512
        k, x = 1, 11
        while x != 1:
            x = x * 11 % 32
            k += 1
        assert k == 8

    def test_trivial_twist_gives_cyclic(self):
        G = gp.semidirect_cyclic(4, 1, 1)
        assert G.is_abelian()
        assert gp.abelian_invariants(G) == (2,)

    def test_d16_center_has_order_two(self):
        G = gp.semidirect_cyclic(8, 2, 7)
        assert brute_center(G) == gp.center(G).ids.tolist()
        assert gp.center(G).order == 2

    def test_rejects_bad_twist_order(self):
        with pytest.raises(gp.GroupConstructionError):
            gp.semidirect_cyclic(16, 2, 3)  # 3^2 = 9 != 1 mod 16
        with pytest.raises(gp.GroupConstructionError):
            gp.semidirect_cyclic(6, 2, 5)   # 6 is not a prime power


class TestSubgroupAlgebra:
    def test_closure_identity_only(self):
        assert gp.closure(d8(), {0}).order == 1

    def test_closure_of_generators_is_everything(self):
        for G in (q8(), d8(), gp.wreath_cyclic(3)):
            assert gp.closure(G, G.generators).order == G.order

    def test_closure_of_minus_one_in_q8(self):
        G = q8()
        minus_one = [g for g in range(1, 8) if G.element_order(g) == 2]
        sub = gp.closure(G, minus_one)
        assert sub.order == 2
        assert brute_closure(G, minus_one) == sub.ids.tolist()

    def test_center_against_brute_force(self):
        for G in (q8(), d8(), gp.heisenberg_group(3), gp.wreath_cyclic(2)):
            assert gp.center(G).ids.tolist() == brute_center(G)

    def test_center_of_abelian_group_is_everything(self):
        G = gp.cyclic_group(3, 2)
        assert gp.center(G).order == 9

    def test_centralizer_of_central_subgroup(self):
        G = d8()
        z = gp.center(G)
        assert gp.centralizer(G, z).order == G.order

    def test_commutator_subgroup_against_brute_force(self):
        for G in (q8(), d8(), gp.heisenberg_group(3)):
            assert gp.commutator_subgroup(G).ids.tolist() == \
                brute_commutator_closure(G)

    def test_commutator_of_q8_has_order_two(self):
        assert gp.commutator_subgroup(q8()).order == 2

    def test_commutator_of_abelian_group_is_trivial(self):
        G = gp.elementary_abelian_group(2, 3)
        assert gp.commutator_subgroup(G).order == 1

    def test_derived_fast_path_matches_contract(self):
        for G in (q8(), d8(), gp.wreath_cyclic(3),
                  gp.metacyclic_group(gp.MetacyclicParams(2, 4, 2, 3, 7))):
            assert gp.derived_subgroup(G) == gp.commutator_subgroup(G)

    def test_example_derived_subgroup_is_index_two_in_a(self):
        G = gp.metacyclic_group(EXAMPLE_512)
        derived = gp.commutator_subgroup(G)
        a = G.generators[0]
        assert derived == gp.closure(G, [G.power(a, 2)])
        assert derived.order == 16


class TestFrattini:
    def test_phi_d8(self):
        G = d8()
        phi = gp.frattini_subgroup(G)
        assert phi.order == 2
        r2 = G.power(G.generators[0], 2)
        assert phi == gp.closure(G, [r2])

    def test_phi_of_elementary_abelian_is_trivial(self):
        for k in (2, 3, 4):
            G = gp.elementary_abelian_group(2, k)
            assert gp.frattini_subgroup(G).order == 1

    def test_phi_of_example_group(self):
        G = gp.metacyclic_group(EXAMPLE_512)
        phi = gp.frattini_subgroup(G)
        assert phi.order == 2**7
        assert not phi.is_abelian()

    def test_phi_equals_intersection_of_maximal_subgroups(self):
        cases = [q8(), d8(), gp.semidirect_cyclic(8, 2, 7),
                 gp.heisenberg_group(3),
                 gp.direct_product([d8(), gp.cyclic_group(2, 1)]),
                 gp.metacyclic_group(gp.MetacyclicParams(2, 4, 2, 3, 7)),
                 gp.wreath_cyclic(2)]
        for G in cases:
            assert G.order <= 2**6
            maxs = gp.maximal_subgroups(G)
            inter = set(range(G.order))
            for M in maxs:
                assert M.index() == G.p
                inter &= set(M.ids.tolist())
            assert sorted(inter) == gp.frattini_subgroup(G).ids.tolist()

    def test_maximal_subgroup_list_matches_lattice(self):
        for G in (q8(), d8(), gp.cyclic_group(2, 3)):
            lattice = gp.all_subgroups(G)
            maximal = [S for S in lattice if S.order == G.order // 2]
            via_hyperplanes = gp.maximal_subgroups(G)
            assert sorted(tuple(S.ids.tolist()) for S in maximal) == \
                sorted(tuple(S.ids.tolist()) for S in via_hyperplanes)


class TestSeriesAndQuotients:
    def test_example_lower_central_series(self):
        G = gp.metacyclic_group(EXAMPLE_512)
        series = gp.lower_central_series(G)
        assert series.orders() == [512, 16, 8, 4, 2, 1]
        assert gp.nilpotency_class(G) == 5
        assert gp.coclass(G) == 4

    def test_dihedral_groups_have_maximal_class(self):
        for n in range(3, 8):
            G = gp.semidirect_cyclic(2 ** (n - 1), 2, 2 ** (n - 1) - 1)
            assert gp.nilpotency_class(G) == n - 1
            assert gp.coclass(G) == 1

    def test_abelian_groups_have_class_one(self):
        assert gp.nilpotency_class(gp.cyclic_group(5, 2)) == 1

    def test_upper_and_lower_lengths_agree(self):
        for G in (q8(), d8(), gp.heisenberg_group(3), gp.wreath_cyclic(3),
                  gp.metacyclic_group(EXAMPLE_512)):
            assert gp.upper_central_series(G).length() == \
                gp.lower_central_series(G).length()

    def test_quotient_by_phi_is_elementary_abelian(self):
        for G in (q8(), d8(), gp.metacyclic_group(EXAMPLE_512),
                  gp.wreath_cyclic(3)):
            phi = gp.frattini_subgroup(G)
            q = gp.quotient(G, phi)
            d = gp.generator_rank(G)
            assert q.group.order == G.p ** d
            assert q.group.is_abelian()
            exps = q.group.element_order_exponents()
            assert exps.max() <= 1

    def test_quotient_of_d8_by_phi(self):
        G = d8()
        q = gp.quotient(G, gp.frattini_subgroup(G))
        assert gp.abelian_invariants(q.group) == (1, 1)

    def test_quotient_by_whole_group_is_trivial(self):
        G = d8()
        q = gp.quotient(G, G.full_subgroup())
        assert q.group.order == 1

    def test_quotient_rejects_non_normal(self):
        G = d8()
        flip = [g for g in range(8) if G.element_order(g) == 2 and
                g not in gp.center(G)][0]
        H = gp.closure(G, [flip])
        assert not H.is_normal()
        with pytest.raises(gp.DomainError):
            gp.quotient(G, H)

    def test_quotient_projection_is_a_homomorphism(self):
        G = gp.wreath_cyclic(2)
        N = gp.center(G)
        q = gp.quotient(G, N)
        for a in range(G.order):
            for b in range(G.order):
                assert q.project[G.mul(a, b)] == \
                    q.group.mul(q.project[a], q.project[b])
        assert np.array_equal(q.project[q.representatives],
                              np.arange(q.group.order))


class TestRanksAndInvariants:
    def test_generator_ranks(self):
        assert gp.generator_rank(gp.metacyclic_group(EXAMPLE_512)) == 2
        assert gp.generator_rank(gp.cyclic_group(2, 4)) == 1
        assert gp.generator_rank(gp.elementary_abelian_group(2, 4)) == 4

    def test_invariants_of_cyclic_16(self):
        G = gp.cyclic_group(2, 4)
        assert gp.abelian_invariants(G) == (4,)

    def test_invariants_of_elementary_abelian(self):
        assert gp.abelian_invariants(gp.elementary_abelian_group(2, 4)) == \
            (1, 1, 1, 1)

    def test_invariants_of_mixed_product(self):
        G = gp.direct_product([gp.cyclic_group(2, 2), gp.cyclic_group(2, 1),
                               gp.cyclic_group(2, 1)])
        # order statistics: 1 of order 1, 7 of order 2, 8 of order 4
        counts = {}
        for g in range(G.order):
            counts[brute_element_order(G, g)] = \
                counts.get(brute_element_order(G, g), 0) + 1
        assert counts == {1: 1, 2: 7, 4: 8}
        assert gp.abelian_invariants(G) == (2, 1, 1)

    def test_invariants_reject_nonabelian(self):
        with pytest.raises(gp.DomainError):
            gp.abelian_invariants(d8())

    def test_quotient_invariants_helper(self):
        G = gp.metacyclic_group(EXAMPLE_512)
        phi = gp.frattini_subgroup(G)
        zphi = gp.subgroup_center(G, phi)
        z = gp.center(G)
        inv = gp.quotient_abelian_invariants(G, zphi, z)
        assert G.p ** sum(inv) == zphi.order // z.order


class TestFamilies:
    def test_heisenberg_has_exponent_p(self):
        G = gp.heisenberg_group(3)
        assert G.order == 27
        assert gp.nilpotency_class(G) == 2
        assert all(G.element_order(g) in (1, 3) for g in range(27))

    def test_wreath_3_is_maximal_class(self):
        G = gp.wreath_cyclic(3)
        assert G.order == 3**4
        assert gp.nilpotency_class(G) == 3
        assert gp.coclass(G) == 1

    def test_direct_product_orders(self):
        G = gp.direct_product([d8(), gp.cyclic_group(2, 2)])
        assert G.order == 32
        assert gp.center(G).order == 2 * 4

    def test_element_orders_are_p_powers(self):
        for G in (q8(), gp.heisenberg_group(3), gp.wreath_cyclic(2)):
            for g in range(G.order):
                assert G.element_order(g) == brute_element_order(G, g)
