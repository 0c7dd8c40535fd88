"""The two constructions, their monad data, and the universal property."""

import random

import pytest

from powerposet.caps import SizeCapExceeded
from powerposet.catalog import antichain, chain, diamond, fence4
from powerposet.poset import (
    MonotoneMap,
    bits,
    binary_join,
    enumerate_labeled_posets,
    is_complete_lattice,
)
from powerposet.powerdomains import (
    TargetNotCompleteLattice,
    check_universal_property,
    eta,
    hoare,
    hoare_map,
    iota,
    mu,
    smyth,
    smyth_map,
    theta,
    verify_monad_laws,
)


class TestCarriers:
    def test_hoare_chain2(self):
        hp = hoare(chain(2))
        assert hp.elements == (0, 0b01, 0b11)
        assert is_complete_lattice(hp.as_poset)

    def test_hoare_antichain2_is_square(self):
        hp = hoare(antichain(2))
        assert len(hp) == 4

    def test_hoare_singleton_is_two_chain(self):
        hp = hoare(chain(1))
        assert len(hp) == 2

    def test_smyth_chain2_reverse_order(self):
        qp = smyth(chain(2))
        assert qp.elements == (0b10, 0b11)
        # reverse inclusion: the bigger set is lower
        assert qp.as_poset.leq(qp.index_of(0b11), qp.index_of(0b10))

    def test_smyth_antichain2(self):
        qp = smyth(antichain(2))
        assert len(qp) == 3
        bottom = qp.as_poset.bottom()
        assert qp.elements[bottom] == 0b11

    def test_smyth_singleton(self):
        assert smyth(chain(1)).elements == (1,)

    def test_every_element_is_closed(self):
        for p in (chain(3), antichain(3), diamond(), fence4()):
            hp, qp = hoare(p), smyth(p)
            assert all(p.is_down_set(m) for m in hp.elements)
            assert all(p.is_up_set(m) and m for m in qp.elements)

    def test_hoare_complete_lattice_all_small(self):
        for n in range(1, 5):
            for p in enumerate_labeled_posets(n):
                assert is_complete_lattice(hoare(p).as_poset)

    def test_smyth_meet_is_union(self):
        for p in (chain(3), antichain(3), diamond()):
            qp = smyth(p)
            po = qp.as_poset
            for i in range(po.n):
                for j in range(po.n):
                    lb = po.down[i] & po.down[j]
                    meet = next(c for c in bits(lb) if lb & ~po.down[c] == 0)
                    assert qp.elements[meet] == qp.elements[i] | qp.elements[j]
                    inter = qp.elements[i] & qp.elements[j]
                    if inter:
                        join = binary_join(po, i, j)
                        assert join is not None and qp.elements[join] == inter

    def test_size_cap(self):
        with pytest.raises(SizeCapExceeded):
            hoare(antichain(4), cap=10)


class TestFunctorMaps:
    def test_identity_law(self):
        for p in (chain(2), antichain(3)):
            assert hoare_map(MonotoneMap.identity(p)) == MonotoneMap.identity(
                hoare(p).as_poset
            )
            assert smyth_map(MonotoneMap.identity(p)) == MonotoneMap.identity(
                smyth(p).as_poset
            )

    def test_hoare_map_example(self):
        f = MonotoneMap(antichain(2), chain(2), (0, 1))
        hf = hoare_map(f)
        src, dst = hoare(antichain(2)), hoare(chain(2))
        assert dst.elements[hf.image[src.index_of(0b11)]] == 0b11
        assert dst.elements[hf.image[src.index_of(0b01)]] == 0b01
        assert dst.elements[hf.image[src.index_of(0)]] == 0

    def test_smyth_map_example(self):
        f = MonotoneMap(antichain(2), chain(2), (0, 1))
        qf = smyth_map(f)
        src, dst = smyth(antichain(2)), smyth(chain(2))
        assert dst.elements[qf.image[src.index_of(0b11)]] == 0b11
        assert dst.elements[qf.image[src.index_of(0b01)]] == 0b11  # up({0}) = {0,1}
        assert dst.elements[qf.image[src.index_of(0b10)]] == 0b10

    def test_constant_map_sends_all_to_principal(self):
        f = MonotoneMap(antichain(3), chain(2), (1, 1, 1))
        qf = smyth_map(f)
        dst = smyth(chain(2))
        assert all(dst.elements[v] == 0b10 for v in qf.image)

    def test_builder_maps_are_monotone(self):
        # the builders skip validation; re-check them explicitly here
        f = MonotoneMap(antichain(2), chain(2), (0, 1))
        for built in (
            hoare_map(f),
            smyth_map(f),
            eta(diamond()),
            mu(diamond()),
            theta(diamond()),
            iota(diamond()),
        ):
            assert built.is_monotone()

    def test_hoare_map_preserves_sups(self):
        rng = random.Random(7)
        for p, q in ((antichain(2), chain(2)), (chain(3), diamond())):
            from powerposet.poset import generate_monotone_maps

            for f in generate_monotone_maps(p, q):
                hf = hoare_map(f)
                src, dst = hoare(p), hoare(q)
                fams = (
                    range(1 << len(src))
                    if len(src) <= 8
                    else [rng.getrandbits(len(src)) for _ in range(256)]
                )
                for fam in fams:
                    sup_first = hf.image[src.index_of(src.union_of(fam))]
                    img_union = 0
                    for i in bits(fam):
                        img_union |= dst.elements[hf.image[i]]
                    assert dst.elements[sup_first] == img_union

    def test_smyth_map_preserves_filtered_infima(self):
        # filtered families in the reverse-inclusion order are those where
        # every pair of members has a member inside the intersection; their
        # supremum is the intersection, and the functor action commutes
        # with it (all such families enumerated on small carriers)
        from powerposet.poset import generate_monotone_maps

        for p, q in ((chain(3), chain(2)), (diamond(), chain(2)), (antichain(2), chain(2))):
            qp, dst = smyth(p), smyth(q)
            members = list(qp.elements)
            m = len(members)
            for f in generate_monotone_maps(p, q):
                qf = smyth_map(f)
                for fam in range(1, 1 << m):
                    chosen = [members[i] for i in bits(fam)]
                    filtered = all(
                        any(k & ~(k1 & k2) == 0 for k in chosen)
                        for k1 in chosen
                        for k2 in chosen
                    )
                    if not filtered:
                        continue
                    inter = qp.elements[0] | 0
                    inter = (1 << p.n) - 1
                    for k in chosen:
                        inter &= k
                    lhs = dst.elements[qf.image[qp.index_of(inter)]]
                    rhs = (1 << q.n) - 1
                    for i in bits(fam):
                        rhs &= dst.elements[qf.image[i]]
                    assert lhs == rhs


class TestUnits:
    def test_eta_values_on_chain2(self):
        hp = hoare(chain(2))
        e = eta(chain(2))
        assert hp.elements[e.image[0]] == 0b01
        assert hp.elements[e.image[1]] == 0b11

    def test_theta_values_on_chain2(self):
        qp = smyth(chain(2))
        t = theta(chain(2))
        assert qp.elements[t.image[0]] == 0b11
        assert qp.elements[t.image[1]] == 0b10

    def test_units_are_order_embeddings(self, small_posets):
        for p in small_posets:
            assert eta(p).is_order_embedding()
            assert theta(p).is_order_embedding()

    def test_mu_union_examples(self):
        p = chain(2)
        hp, hhp = hoare(p), hoare(hoare(p).as_poset)
        m = mu(p)
        fam = hhp.index_of(mask_over(hp, [0, 0b01]))
        assert hp.elements[m.image[fam]] == 0b01
        assert hp.elements[m.image[hhp.index_of(0)]] == 0
        full_fam = hhp.index_of((1 << len(hp)) - 1)
        assert hp.elements[m.image[full_fam]] == 0b11

    def test_iota_union_examples(self):
        p = chain(2)
        qp, qqp = smyth(p), smyth(smyth(p).as_poset)
        io = iota(p)
        single = qqp.index_of(1 << qp.index_of(0b10))
        assert qp.elements[io.image[single]] == 0b10
        both = qqp.index_of(mask_over(qp, [0b10, 0b11]))
        assert qp.elements[io.image[both]] == 0b11


def mask_over(hp, member_masks):
    out = 0
    for m in member_masks:
        out |= 1 << hp.index_of(m)
    return out


class TestMonadLaws:
    def test_exhaustive_all_small(self, small_posets):
        for p in small_posets:
            for tag in ("H", "Q"):
                rep = verify_monad_laws(tag, p)
                assert rep.passed and rep.mode == "exhaustive"

    def test_sample_mode_reproducible(self):
        a = verify_monad_laws("H", antichain(3), mode="sample", sample_count=500, seed=42)
        b = verify_monad_laws("H", antichain(3), mode="sample", sample_count=500, seed=42)
        assert a == b and a.passed and a.seed == 42

    def test_sample_requires_seed(self):
        with pytest.raises(ValueError):
            verify_monad_laws("H", chain(2), mode="sample")

    def test_functoriality_pairs(self):
        from powerposet.poset import generate_monotone_maps

        fs = generate_monotone_maps(antichain(2), chain(2), limit=2)
        gs = generate_monotone_maps(chain(2), chain(3), limit=2)
        pairs = [(f, g) for f in fs for g in gs]
        for tag in ("H", "Q"):
            assert verify_monad_laws(tag, antichain(2), map_pairs=pairs).passed

    def test_chain_tower_sizes(self):
        # iterated down-set carriers of a chain grow by one
        p = chain(2)
        h1 = hoare(p).as_poset
        h2 = hoare(h1).as_poset
        h3 = hoare(h2).as_poset
        assert (h1.n, h2.n, h3.n) == (3, 4, 5)


class TestUniversalProperty:
    def test_constant_map_example(self):
        p, m = antichain(2), chain(2)
        f = MonotoneMap(p, m, (1, 1))
        rep = check_universal_property(p, m, f)
        assert rep.passed
        hp = hoare(p)
        ext = rep.details["extension"]
        assert ext[hp.index_of(0)] == 0  # sup of the empty set is the bottom
        assert ext[hp.index_of(0b01)] == 1
        assert ext[hp.index_of(0b11)] == 1

    def test_extension_of_unit_is_identity(self):
        p = antichain(2)
        rep = check_universal_property(p, hoare(p).as_poset, eta(p))
        assert rep.passed

    def test_trivial_target(self):
        p = fence4()
        single = chain(1)
        rep = check_universal_property(p, single, MonotoneMap(p, single, (0,) * p.n))
        assert rep.passed

    def test_rejects_non_complete_target(self):
        with pytest.raises(TargetNotCompleteLattice):
            check_universal_property(
                chain(2), antichain(2), MonotoneMap(chain(2), antichain(2), (0, 0))
            )
