"""The centralizer pipeline: the family, C_S(E), R*, focal subgroups,
C_F(E) and the coincidence formula."""

from __future__ import annotations

import pytest

from fusionkit.centralizers import (a_circle, c_F_of, c_s_of, centralized_set,
                                    coincide_check, compute_centralizer_data,
                                    focal_subgroup, frattini_factorize,
                                    h_group, hyperfocal_subgroup, r_star,
                                    weakly_closed_analysis, z_of)
from fusionkit.corpus import builtin_group
from fusionkit.errors import TheoremViolation
from fusionkit.fusion import (fusion_of_group, inner_system, subsystem_equal)
from fusionkit.groups import (Hom, center, centralizer, derived_subgroup,
                              normal_subgroups, sylow_subgroup)
from fusionkit.subsystems import normal_subsystem_in


class TestCentralizedFamily:
    def test_trivial_always_in_family(self, F_s4, E_a4):
        xs = centralized_set(F_s4, E_a4)
        assert any(X.order == 1 for X in xs)

    def test_s4_pair_family_is_trivial_only(self, F_s4, E_a4):
        assert [X.order for X in centralized_set(F_s4, E_a4)] == [1]

    def test_paths_agree(self, F_s4, E_a4):
        full = centralized_set(F_s4, E_a4, path="full")
        gens = centralized_set(F_s4, E_a4, path="generators")
        assert [X.members for X in full] == [X.members for X in gens]

    def test_product_case_second_factor_in_family(self):
        g = builtin_group("a4xa4")
        S = sylow_subgroup(g.full_subgroup, 2)
        F = fusion_of_group(g, S, 2)
        N = next(N for N in normal_subgroups(g.full_subgroup) if N.order == 12)
        E = normal_subsystem_in(F, N)
        data = compute_centralizer_data(F, E)
        # C_S(E) is the Sylow of the other factor
        assert data.C_S_E.order == 4
        assert data.C_S_E.member_set <= centralizer(S, E.support).member_set
        assert data.R_star == data.C_S_E

    def test_abelian_self_pair(self):
        g = builtin_group("c2xc4")
        F = fusion_of_group(g, g.full_subgroup, 2)
        E = normal_subsystem_in(F, g.full_subgroup)
        assert c_s_of(F, E) == g.full_subgroup


class TestCSE:
    def test_s4_pair(self, F_s4, E_a4):
        assert c_s_of(F_s4, E_a4).order == 1

    def test_c_s_of_f_is_the_center(self, F_s4, s4):
        EF = normal_subsystem_in(F_s4, s4.full_subgroup)
        assert c_s_of(F_s4, EF).order == 1  # Z(F_{D8}(S4)) is trivial

    def test_z_of_inner_d8(self, d8):
        F = fusion_of_group(d8, d8.full_subgroup, 2)
        assert z_of(F) == center(d8.full_subgroup)

    def test_s4xc2_values(self, F_s4xc2, E_s4x1):
        data = compute_centralizer_data(F_s4xc2, E_s4x1)
        assert data.C_S_E.order == 2
        assert data.R_star.order == 4
        assert data.C_S_E.member_set < data.R_star.member_set

    def test_theorem_a_c_on_s4xc2(self, F_s4xc2, E_s4x1):
        data = compute_centralizer_data(F_s4xc2, E_s4x1)
        info = weakly_closed_analysis(F_s4xc2, E_s4x1, data)
        assert info["largest_weakly_closed"] == data.C_S_E
        assert info["largest_strongly_closed"] == data.C_S_E
        assert info["all_weakly_closed_in_family"]


class TestRStar:
    def test_s4_pair(self, F_s4, E_a4):
        rs, Gsys, model, N = r_star(F_s4, E_a4)
        assert rs.order == 1
        assert model.group.order == 24 and N.order == 12

    def test_abelian_self_pair(self):
        g = builtin_group("c2xc4")
        F = fusion_of_group(g, g.full_subgroup, 2)
        E = normal_subsystem_in(F, g.full_subgroup)
        rs, _, model, N = r_star(F, E)
        assert rs == g.full_subgroup
        assert N.order == 8 and N.parent is model.group


class TestFocal:
    @pytest.mark.parametrize("name,p", [("s4", 2), ("d8", 2), ("q8", 2),
                                        ("a4", 2), ("sl23", 2), ("gl23", 2),
                                        ("a5", 2), ("a6", 2), ("s3xs3", 3),
                                        ("c3c4", 3)])
    def test_focal_equals_s_meet_derived(self, name, p):
        G = builtin_group(name)
        S = sylow_subgroup(G.full_subgroup, p)
        F = fusion_of_group(G, S, p)
        assert focal_subgroup(F) == S.meet(derived_subgroup(G.full_subgroup))

    def test_focal_of_abelian_inner_is_trivial(self):
        g = builtin_group("c2xc4")
        F = fusion_of_group(g, g.full_subgroup, 2)
        assert focal_subgroup(F).order == 1

    def test_hyperfocal_sl23(self):
        sl = builtin_group("sl23")
        S = sylow_subgroup(sl.full_subgroup, 2)
        F = fusion_of_group(sl, S, 2)
        assert hyperfocal_subgroup(F) == S  # [Q8, O^2] = Q8

    def test_hyperfocal_inside_focal(self, F_s4):
        assert hyperfocal_subgroup(F_s4).member_set <= \
            focal_subgroup(F_s4).member_set


class TestFrattiniSubgroups:
    def test_a_circle_v4(self, F_s4, E_a4, V4):
        ac = a_circle(F_s4, E_a4, V4)
        assert len(ac) == 3  # the odd part of S3

    def test_h_group_when_normalizer_inside(self, F_s4, E_a4, V4):
        # N_T(V4) = V4 <= V4, so H(V4) is all of Aut_F(V4)
        assert len(h_group(F_s4, E_a4, V4)) == 6

    def test_identity_in_both(self, F_s4, E_a4):
        for P in F_s4.subgroups():
            assert any(h.is_identity() for h in a_circle(F_s4, E_a4, P))
            assert any(h.is_identity() for h in h_group(F_s4, E_a4, P))

    def test_factorize_identity(self, F_s4, E_a4, V4):
        gamma, beta = frattini_factorize(F_s4, E_a4, V4, Hom.identity(V4))
        assert gamma.then(beta).is_identity()

    def test_factorize_order3(self, F_s4, E_a4, V4):
        phi = next(h for h in F_s4.automorphisms(V4)
                   if all(h(x) != x for x in V4.members if x))
        gamma, beta = frattini_factorize(F_s4, E_a4, V4, phi)
        assert gamma.then(beta).images == phi.images

    def test_alarm_on_corrupt_candidate_subsystem(self, F_s4, V4):
        # Inner Sylow fusion posing as the normal subsystem: the inner part
        # of Aut(V4) is not normal in S3, so the alarm fires before any
        # factorization can be claimed.
        from fusionkit.errors import VerificationFailed
        ES = inner_system(F_s4, F_s4.support)
        phi = next(h for h in F_s4.automorphisms(V4)
                   if all(h(x) != x for x in V4.members if x))
        with pytest.raises(VerificationFailed):
            frattini_factorize(F_s4, ES, V4, phi)


class TestCFE:
    def test_s4_pair_trivial(self, F_s4, E_a4):
        cfe = c_F_of(F_s4, E_a4)
        assert cfe.support.order == 1

    def test_trivial_e_gives_whole_system(self, F_s4, s4):
        Et = normal_subsystem_in(F_s4, s4.trivial_subgroup)
        cfe = c_F_of(F_s4, Et)
        assert subsystem_equal(cfe, F_s4)

    def test_s4xc2_gives_inner_c2(self, F_s4xc2, E_s4x1):
        data = compute_centralizer_data(F_s4xc2, E_s4x1)
        cfe = c_F_of(F_s4xc2, E_s4x1, C_S_E=data.C_S_E)
        assert cfe.support.order == 2
        assert cfe.morphism_count() == 2  # inclusions only

    def test_a4xa4_gives_other_factor(self):
        g = builtin_group("a4xa4")
        S = sylow_subgroup(g.full_subgroup, 2)
        F = fusion_of_group(g, S, 2)
        twelves = [N for N in normal_subgroups(g.full_subgroup) if N.order == 12]
        E = normal_subsystem_in(F, twelves[0])
        other = next(N for N in twelves if N.meet(E.witness).order == 1)
        cfe = c_F_of(F, E)
        expected = normal_subsystem_in(F, other)
        assert subsystem_equal(cfe, expected)

    def test_coincide(self, F_s4xc2, E_s4x1):
        assert coincide_check(F_s4xc2, E_s4x1)

    def test_focprop_alarm_on_corrupted_bound(self):
        # A4 x A4 has a nontrivial foc(C_F(T)), so an undershot C_S(E)
        # must abort the construction.
        g = builtin_group("a4xa4")
        S = sylow_subgroup(g.full_subgroup, 2)
        F = fusion_of_group(g, S, 2)
        N = next(N for N in normal_subgroups(g.full_subgroup) if N.order == 12)
        E = normal_subsystem_in(F, N)
        with pytest.raises(TheoremViolation):
            c_F_of(F, E, C_S_E=F.universe.trivial_subgroup)
