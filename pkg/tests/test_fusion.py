"""Fusion-system data model: hom-sets, closure, transport, comparisons."""

from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from fusionkit.corpus import builtin_group
from fusionkit.errors import (DomainMismatch, MorphismOutsideSupport, NotSylow)
from fusionkit.fusion import (MorphismGroup, conjugate_morphism,
                              conjugate_subsystem, full_subcategory,
                              fusion_of_group, generated_subsystem,
                              inner_system, realized_subsystem,
                              subsystem_contains, subsystem_equal,
                              validate_fusion_system)
from fusionkit.groups import Hom, center, sylow_subgroup


def order3_autos(F, V):
    return [h for h in F.automorphisms(V)
            if all(h(x) != x for x in V.members if x != 0)]


class TestRealizedSystems:
    def test_not_sylow_rejected(self, s4, V4):
        with pytest.raises(NotSylow):
            fusion_of_group(s4, V4, 2)

    def test_aut_v4_has_order_six(self, F_s4, V4, s4):
        # independent oracle: |N_G(V4)| / |C_G(V4)| = 24/4
        from fusionkit.groups import centralizer, normalizer
        n = normalizer(s4.full_subgroup, V4).order
        c = centralizer(s4.full_subgroup, V4).order
        assert n // c == 6
        assert len(F_s4.automorphisms(V4)) == 6

    def test_hom_set_central_c2_to_v4(self, F_s4, V4, s4):
        Z = center(F_s4.support)
        # oracle: distinct conjugation maps over all of G
        maps = {tuple(s4.conj(x, g) for x in Z.members)
                for g in range(24)
                if all(s4.conj(x, g) in V4.member_set for x in Z.members)}
        assert len(maps) == 3
        assert len(F_s4.hom_set(Z, V4)) == 3

    def test_hom_set_injectivity_forces_empty(self, F_s4, V4):
        assert F_s4.hom_set(F_s4.support, V4) == ()

    def test_inner_maps_present(self, F_s4, V4):
        keys = {h.images for h in F_s4.automorphisms(V4)}
        for s in F_s4.support.members:
            h = Hom.conjugation(V4, s, codomain=V4)
            assert h.images in keys

    def test_axioms_exhaustive(self, F_s4):
        assert validate_fusion_system(F_s4) == []

    def test_axioms_for_subsystem(self, E_a4):
        assert validate_fusion_system(E_a4) == []

    def test_abelian_sylow_only_inclusions(self):
        g = builtin_group("c2xc4")
        F = fusion_of_group(g, g.full_subgroup, 2)
        assert F.morphism_count() == len(F.subgroups())

    def test_trivial_sylow(self):
        from fusionkit.groups import sylow_subgroup
        from fusionkit.saturation import is_saturated
        g = builtin_group("c3xc3")
        S = sylow_subgroup(g.full_subgroup, 2)   # 2 does not divide 9
        F = fusion_of_group(g, S, 2)
        assert S.order == 1 and F.morphism_count() == 1
        assert is_saturated(F).ok

    def test_witness_round_trip(self, F_s4, V4, s4):
        for h in F_s4.isos_from(V4):
            assert h.witness is not None
            rebuilt = Hom.conjugation(V4, h.witness)
            assert rebuilt.images == h.images
        # every witness restriction is in the hom-set
        keys = {h.images for h in F_s4.isos_from(V4)}
        for g in range(24):
            h = Hom.conjugation(V4, g)
            if set(h.images) <= F_s4.support.member_set:
                assert h.images in keys


class TestGeneratedSubsystems:
    def test_empty_generators_give_inner_fusion(self, F_s4, V4):
        gen = generated_subsystem(F_s4, V4, [])
        assert subsystem_equal(gen, inner_system(F_s4, V4))

    def test_a4_fusion_from_aut_generators(self, F_s4, E_a4, V4):
        gen = generated_subsystem(F_s4, V4, E_a4.automorphisms(V4))
        assert subsystem_equal(gen, E_a4)

    def test_single_auto_generates_everything(self, F_s4, V4):
        phi = order3_autos(F_s4, V4)[0]
        gen = generated_subsystem(F_s4, F_s4.support, [phi])
        assert subsystem_equal(gen, F_s4)

    def test_idempotent(self, F_s4, E_a4, V4):
        gen = generated_subsystem(F_s4, V4, E_a4.automorphisms(V4))
        again = generated_subsystem(F_s4, V4,
                                    [h for P in gen.subgroups()
                                     for h in gen.isos_from(P)])
        assert subsystem_equal(gen, again)

    def test_monotone(self, F_s4, V4):
        auts = order3_autos(F_s4, V4)
        small = generated_subsystem(F_s4, V4, auts[:1])
        big = generated_subsystem(F_s4, V4, auts)
        assert subsystem_contains(big, small)

    def test_generator_outside_support_rejected(self, F_s4, V4):
        phi = order3_autos(F_s4, V4)[0]
        with pytest.raises(MorphismOutsideSupport):
            generated_subsystem(F_s4, center(F_s4.support), [phi])

    def test_generated_stays_inside_ambient(self, F_s4, V4):
        gen = generated_subsystem(F_s4, F_s4.support,
                                  [order3_autos(F_s4, V4)[0]])
        assert subsystem_contains(F_s4, gen)


class TestConjugation:
    def test_identity_twist(self, F_s4, V4):
        phi = order3_autos(F_s4, V4)[0]
        assert conjugate_morphism(phi, Hom.identity(V4)) == phi

    def test_conjugation_identity_on_witnesses(self, F_s4, s4, V4):
        # (c_g|_P)^{c_h} = c_{g^h}|_{P^h}
        g, h = 9, 14
        P = V4
        phi = Hom.conjugation(P, g)
        if set(phi.images) <= F_s4.support.member_set:
            alpha = Hom.conjugation(
                s4.full_subgroup, h, codomain=s4.full_subgroup)
            lhs = conjugate_morphism(phi, alpha)
            rhs = Hom.conjugation(P.conjugate(h), s4.conj(g, h))
            assert lhs.images == rhs.images

    def test_order3_twisted_by_involution_is_inverse(self, F_s4, V4):
        r = order3_autos(F_s4, V4)[0]
        invs = [h for h in F_s4.automorphisms(V4)
                if not h.is_identity() and h.then(h).is_identity()]
        t = invs[0]
        assert conjugate_morphism(r, t).images in (
            r.then(r).images,)  # r^t = r^2 = r^{-1}

    def test_domain_mismatch(self, F_s4, V4):
        phi = order3_autos(F_s4, V4)[0]
        Z = center(F_s4.support)
        with pytest.raises(DomainMismatch):
            conjugate_morphism(phi, Hom.identity(Z))

    def test_conjugate_subsystem_by_inner_fixes_e(self, F_s4, E_a4, V4):
        for t in V4.members:
            alpha = Hom.conjugation(V4, t, codomain=V4)
            assert subsystem_equal(conjugate_subsystem(E_a4, alpha), E_a4)

    def test_normal_subsystem_invariant_under_all_twists(self, F_s4, E_a4, V4):
        for alpha in F_s4.automorphisms(V4):
            assert subsystem_equal(conjugate_subsystem(E_a4, alpha), E_a4)

    def test_twist_composes(self, F_s4, E_a4, V4):
        a, b = F_s4.automorphisms(V4)[1:3]
        lhs = conjugate_subsystem(conjugate_subsystem(E_a4, a), b)
        rhs = conjugate_subsystem(E_a4, a.then(b))
        assert subsystem_equal(lhs, rhs)


class TestComparisons:
    def test_reflexive(self, F_s4):
        assert subsystem_contains(F_s4, F_s4)
        assert subsystem_equal(F_s4, F_s4)

    def test_inner_inside_a4_fusion(self, F_s4, E_a4, V4):
        inner = inner_system(F_s4, V4)
        assert subsystem_contains(E_a4, inner)
        assert not subsystem_contains(inner, E_a4)

    def test_full_subcategory(self, F_s4, V4):
        cut = full_subcategory(F_s4, V4)
        assert cut.support == V4
        assert len(cut.automorphisms(V4)) == 6

    def test_realized_subsystem_needs_sylow(self, F_s4, A4, V4, s4):
        with pytest.raises(NotSylow):
            realized_subsystem(F_s4, A4, center(F_s4.support))


class TestMorphismGroup:
    def test_table_matches_composition(self, F_s4, V4):
        mg = MorphismGroup(F_s4.automorphisms(V4))
        assert mg.group.order == 6 and not mg.group.is_abelian
        for i, a in enumerate(mg.homs):
            for j, b in enumerate(mg.homs):
                assert mg.homs[mg.group.mul(i, j)] == a.then(b)

    def test_subgroup_round_trip(self, F_s4, V4):
        mg = MorphismGroup(F_s4.automorphisms(V4))
        inner = F_s4.inner_automorphisms(V4)
        sub = mg.subgroup_from_homs(inner)
        assert set(mg.homs_of(sub)) == set(inner)


@settings(max_examples=25, deadline=None, derandomize=True)
@given(st.sets(st.integers(min_value=0, max_value=5), max_size=3))
def test_generated_monotone_property(picks):
    g = builtin_group("s4")
    S = sylow_subgroup(g.full_subgroup, 2)
    F = fusion_of_group(g, S, 2)
    from fusionkit.groups import o_p
    V = o_p(g.full_subgroup, 2)
    auts = list(F.automorphisms(V))
    chosen = [auts[i] for i in sorted(picks)]
    small = generated_subsystem(F, V, chosen)
    big = generated_subsystem(F, V, auts)
    assert subsystem_contains(big, small)
    assert subsystem_contains(F, small)
