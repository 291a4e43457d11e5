"""Constrained systems and models."""

from __future__ import annotations

import pytest

from fusionkit.corpus import builtin_group
from fusionkit.errors import ModelNotFound, NotConstrained
from fusionkit.fusion import (fusion_of_group, generated_subsystem,
                              subsystem_equal)
from fusionkit.groups import Hom, centralizer, sylow_subgroup
from fusionkit.models import (Model, find_isomorphism_extending,
                              is_constrained, model_of,
                              models_isomorphic_over_s, normal_in_system,
                              normal_model, o_p_system, script_G)
from fusionkit.subsystems import normal_subsystem_in


class TestNormalInSystem:
    def test_v4_normal_in_f(self, F_s4, V4):
        assert normal_in_system(F_s4, V4)

    def test_center_not_normal_in_f(self, F_s4):
        from fusionkit.groups import center
        assert not normal_in_system(F_s4, center(F_s4.support))

    def test_o_p(self, F_s4, V4):
        assert o_p_system(F_s4) == V4

    def test_o_p_of_inner(self, d8):
        F = fusion_of_group(d8, d8.full_subgroup, 2)
        assert o_p_system(F) == d8.full_subgroup


class TestConstrained:
    def test_s4_constrained_with_v4_witness(self, F_s4, V4):
        flag, witness = is_constrained(F_s4)
        assert flag and witness == V4

    def test_inner_system_constrained(self, d8):
        F = fusion_of_group(d8, d8.full_subgroup, 2)
        flag, witness = is_constrained(F)
        assert flag and witness == d8.full_subgroup

    def test_a6_not_constrained(self):
        a6 = builtin_group("a6")
        S = sylow_subgroup(a6.full_subgroup, 2)
        F = fusion_of_group(a6, S, 2)
        flag, witness = is_constrained(F)
        assert not flag and witness is None
        assert o_p_system(F).order == 1


class TestModels:
    def test_s4_model(self, F_s4):
        m = model_of(F_s4)
        assert m.group.order == 24
        assert m.sigma.is_injective

    def test_inner_model_is_the_group(self, d8):
        F = fusion_of_group(d8, d8.full_subgroup, 2)
        assert model_of(F).group.order == 8

    def test_sl23_model(self):
        sl = builtin_group("sl23")
        S = sylow_subgroup(sl.full_subgroup, 2)
        F = fusion_of_group(sl, S, 2)
        m = model_of(F)
        assert m.group.order == 24
        # Q8 = O_2, odd core trivial
        assert sum(1 for x in range(24) if m.group.element_order(x) == 2) >= 1

    def test_odd_core_is_quotiented_away(self):
        # S3 x S3 at p = 3: the local model construction divides by O_3'.
        g = builtin_group("s3xs3")
        S = sylow_subgroup(g.full_subgroup, 3)
        F = fusion_of_group(g, S, 3)
        E = normal_subsystem_in(F, g.full_subgroup)
        Gsys, NET = script_G(F, E)
        m = model_of(Gsys)
        assert m.group.order % 3 == 0

    def test_not_constrained_rejected(self):
        a6 = builtin_group("a6")
        S = sylow_subgroup(a6.full_subgroup, 2)
        F = fusion_of_group(a6, S, 2)
        with pytest.raises(NotConstrained):
            model_of(F)


class TestNormalModels:
    def test_unique_a4(self, F_s4, E_a4):
        m = model_of(F_s4)
        N = normal_model(F_s4, m, E_a4)
        assert N.order == 12

    def test_full_system_models_to_whole_group(self, F_s4, s4):
        m = model_of(F_s4)
        EF = normal_subsystem_in(F_s4, s4.full_subgroup)
        assert normal_model(F_s4, m, EF).order == 24

    def test_trivial_subsystem_models_to_trivial(self, F_s4, s4):
        m = model_of(F_s4)
        Et = normal_subsystem_in(F_s4, s4.trivial_subgroup)
        assert normal_model(F_s4, m, Et).order == 1

    def test_inner_v4(self, F_s4, V4, s4):
        m = model_of(F_s4)
        EV = normal_subsystem_in(F_s4, V4)
        assert normal_model(F_s4, m, EV).order == 4

    def test_unrealizable_subsystem_not_found(self, F_s4, V4, E_a4):
        # the S3-closure over V4 is not the fusion of any normal subgroup
        # with V4 as a Sylow 2-subgroup
        full = generated_subsystem(F_s4, V4,
                                   F_s4.automorphisms(V4))
        m = model_of(F_s4)
        with pytest.raises(ModelNotFound):
            normal_model(F_s4, m, full)


class TestScriptG:
    def test_s4_pair_gives_f(self, F_s4, E_a4):
        Gsys, NET = script_G(F_s4, E_a4)
        assert subsystem_equal(Gsys, F_s4)
        assert subsystem_equal(NET, E_a4)

    def test_a5_pair(self):
        a5 = builtin_group("a5")
        S = sylow_subgroup(a5.full_subgroup, 2)
        F = fusion_of_group(a5, S, 2)
        E = normal_subsystem_in(F, a5.full_subgroup)
        Gsys, NET = script_G(F, E)
        assert Gsys.support == S
        m = model_of(Gsys)
        assert m.group.order == 12  # N_{A5}(V4) = A4, trivial odd part of... A4
        N = normal_model(Gsys, m, NET)
        assert centralizer(m.sylow_image, N).order == 1


class TestIsomorphismSearch:
    def test_self_isomorphism(self, s4):
        assert find_isomorphism_extending(s4, s4, {}) is not None

    def test_distinguishes_d8_q8(self):
        d8 = builtin_group("d8")
        q8 = builtin_group("q8")
        assert find_isomorphism_extending(d8, q8, {}) is None

    def test_pinned_search(self, F_s4):
        m = model_of(F_s4)
        assert models_isomorphic_over_s(F_s4, m, m)

    def test_wrong_pin_fails(self, F_s4, s4):
        m = model_of(F_s4)
        # twist the embedding by an outer automorphism of D8: no completion
        S = F_s4.support
        r = next(x for x in S.members if s4.element_order(x) == 4)
        refl = next(x for x in S.members
                    if s4.element_order(x) == 2 and x not in
                    o_p_members(s4))
        theta = Hom.from_generator_images(S, S, [r, refl],
                                          [r, s4.mul(r, refl)])
        twisted = Model(m.group, Hom(S, m.group.full_subgroup,
                                     tuple(m.sigma(theta(x)) for x in S.members),
                                     check=False), "twisted")
        assert not models_isomorphic_over_s(F_s4, m, twisted)


def o_p_members(s4):
    from fusionkit.groups import o_p
    return o_p(s4.full_subgroup, 2).member_set
