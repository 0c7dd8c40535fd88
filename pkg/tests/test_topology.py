"""Finite spaces, the Vietoris constructions, and the hyperspace predicates."""

import pytest

from powerposet.catalog import antichain, chain, cube, diamond, fence4, m3, n5
from powerposet.poset import bits, enumerate_labeled_posets
from powerposet.powerdomains import hoare, smyth
from powerposet.topology import (
    NotATopology,
    NotT0,
    SetFamily,
    as_finite_space,
    check_KC,
    check_coherent,
    check_consonance,
    check_sober_trivialities,
    check_well_filtered,
    compact_saturated,
    lower_vietoris,
    scott_opens,
    scott_space,
    upper_vietoris,
)


def _is_directed(p, mask):
    for x in bits(mask):
        for y in bits(mask):
            if not any(p.leq(x, z) and p.leq(y, z) for z in bits(mask)):
                return False
    return True


class TestScottOpens:
    def test_chain2(self):
        assert scott_opens(chain(2)).members == (0, 0b10, 0b11)

    def test_antichain2_discrete(self):
        assert len(scott_opens(antichain(2))) == 4

    def test_singleton(self):
        assert scott_opens(chain(1)).members == (0, 1)

    def test_up_sets_equal_axiom_level_scott_opens(self):
        # oracle: U is open iff U is an up-set and every directed set whose
        # supremum lies in U already meets U; on finite carriers the second
        # condition is vacuous, which is exactly the collapse used everywhere
        for p in (chain(3), antichain(3), diamond(), fence4()):
            axiom_opens = []
            for mask in range(1 << p.n):
                if not p.is_up_set(mask):
                    continue
                ok = True
                for d in range(1, 1 << p.n):
                    if not _is_directed(p, d):
                        continue
                    sup_candidates = [
                        z for z in bits(d) if all(p.leq(y, z) for y in bits(d))
                    ]
                    if sup_candidates and (1 << sup_candidates[0]) & mask and not d & mask:
                        ok = False
                if ok:
                    axiom_opens.append(mask)
            assert tuple(axiom_opens) == scott_opens(p).members


class TestAsFiniteSpace:
    def test_chain_from_family(self):
        x = as_finite_space(SetFamily.from_masks(2, [0, 0b10, 0b11]))
        assert x.order.leq(0, 1) and not x.order.leq(1, 0)

    def test_discrete_space(self):
        x = as_finite_space(SetFamily.from_masks(2, range(4)))
        assert x.order.up == (1, 2)

    def test_missing_singleton_is_still_topology(self):
        x = as_finite_space(SetFamily.from_masks(2, [0, 0b10, 0b11]))
        assert x.points == 2

    def test_union_escape_rejected(self):
        with pytest.raises(NotATopology):
            as_finite_space(SetFamily.from_masks(3, [0, 0b001, 0b010, 0b111]))

    def test_missing_empty_rejected(self):
        with pytest.raises(NotATopology):
            as_finite_space(SetFamily.from_masks(1, [1]))

    def test_t0_violation(self):
        with pytest.raises(NotT0):
            as_finite_space(SetFamily.from_masks(2, [0, 0b11]))

    def test_round_trip_all_small(self):
        for n in range(1, 5):
            for p in enumerate_labeled_posets(n):
                assert scott_space(p).order == p


class TestHyperspaces:
    def test_compact_saturated_examples(self):
        assert compact_saturated(scott_space(chain(2))).members == (0b10, 0b11)
        assert compact_saturated(scott_space(chain(1))).members == (1,)
        assert len(compact_saturated(scott_space(antichain(2)))) == 3

    def test_opens_are_compact_saturated(self):
        for p in (chain(3), antichain(3), diamond(), m3()):
            x = scott_space(p)
            q = set(compact_saturated(x).members)
            for u in x.opens:
                assert u == 0 or u in q

    def test_upper_vietoris_equals_scott_of_smyth(self, catalog):
        for name, p in catalog.items():
            if p.n > 5:
                continue
            x = scott_space(p)
            uv = upper_vietoris(x)
            sq = scott_opens(smyth(p).as_poset)
            assert uv.members == sq.members, name
            # two-sided inclusion, stated explicitly
            assert all(m in sq for m in uv) and all(m in uv for m in sq)

    def test_lower_vietoris_singleton(self):
        lv = lower_vietoris(scott_space(chain(1)))
        assert lv.members == (0, 0b10, 0b11)

    def test_lower_vietoris_members_are_up_sets(self):
        for p in (chain(2), antichain(2), chain(3), diamond()):
            x = scott_space(p)
            lv = lower_vietoris(x)
            order = as_finite_space(lv).order
            for m in lv:
                assert order.is_up_set(m)
            uv = upper_vietoris(x)
            order_uv = as_finite_space(uv).order
            for m in uv:
                assert order_uv.is_up_set(m)

    def test_diamond_subbase_example(self):
        # closed sets of the discrete 2-space that meet {a}
        x = scott_space(antichain(2))
        gamma = x.closed_sets
        meets = [g for g in gamma if g & 0b01]
        assert sorted(meets) == [0b01, 0b11]

    def test_lower_vietoris_equals_scott_on_closed_family(self):
        # the subbase-generated hyperspace topology coincides with the
        # up-set family of the inclusion order on closed sets; two
        # independent code paths (generation vs. enumeration)
        for p in (chain(2), antichain(2), chain(3), antichain(3), diamond(), fence4()):
            x = scott_space(p)
            nu = lower_vietoris(x)
            gamma_order = x.closed_sets.inclusion_order()
            assert nu.members == scott_opens(gamma_order).members


class TestPredicates:
    def test_kc_consonance_small(self, small_posets):
        for p in small_posets:
            x = scott_space(p)
            assert check_KC(x).passed
            assert check_consonance(x).passed

    def test_kc_consonance_agree_n3(self):
        for n in range(1, 4):
            for p in enumerate_labeled_posets(n):
                x = scott_space(p)
                assert check_KC(x).passed == check_consonance(x).passed is True

    def test_consonance_sampling_on_large_lattice(self):
        x = scott_space(cube())  # 20 opens: beyond the exhaustive family cap
        rep = check_consonance(x, seed=9)
        assert rep.passed and rep.mode == "sample" and rep.seed == 9

    def test_consonance_needs_seed_past_cap(self):
        from powerposet.caps import SizeCapExceeded

        with pytest.raises(SizeCapExceeded):
            check_consonance(scott_space(cube()))

    def test_well_filtered_everywhere(self, small_posets):
        for p in small_posets:
            assert check_well_filtered(scott_space(p)).passed

    def test_coherent_with_empty_intersections(self):
        rep = check_coherent(scott_space(antichain(2)))
        assert rep.passed and rep.details["empty_intersections"] == 1

    def test_hoare_carrier_is_coherent(self, catalog):
        for name, p in catalog.items():
            if p.n > 4:
                continue
            assert check_coherent(scott_space(hoare(p).as_poset)).passed, name

    def test_sober(self, small_posets):
        for p in small_posets + [fence4(), n5()]:
            assert check_sober_trivialities(scott_space(p)).passed

    def test_kc_witness_structure(self):
        rep = check_KC(scott_space(chain(2)))
        assert rep.passed and rep.points > 0
