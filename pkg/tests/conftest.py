"""Shared fixtures: module-scoped systems so caches warm up once."""

from __future__ import annotations

import pytest

from fusionkit.corpus import builtin_group
from fusionkit.fusion import fusion_of_group
from fusionkit.groups import o_p, o_upper_p, sylow_subgroup
from fusionkit.subsystems import normal_subsystem_in


@pytest.fixture(scope="session")
def s4():
    return builtin_group("s4")


@pytest.fixture(scope="session")
def F_s4(s4):
    S = sylow_subgroup(s4.full_subgroup, 2)
    return fusion_of_group(s4, S, 2)


@pytest.fixture(scope="session")
def V4(s4):
    return o_p(s4.full_subgroup, 2)


@pytest.fixture(scope="session")
def A4(s4):
    return o_upper_p(s4.full_subgroup, 2)


@pytest.fixture(scope="session")
def E_a4(F_s4, A4):
    return normal_subsystem_in(F_s4, A4)


@pytest.fixture(scope="session")
def d8():
    return builtin_group("d8")


@pytest.fixture(scope="session")
def q8c4():
    return builtin_group("q8c4")


@pytest.fixture(scope="session")
def F_q8c4(q8c4):
    return fusion_of_group(q8c4, q8c4.full_subgroup, 2)


@pytest.fixture(scope="session")
def s4xc2():
    return builtin_group("s4xc2")


@pytest.fixture(scope="session")
def F_s4xc2(s4xc2):
    S = sylow_subgroup(s4xc2.full_subgroup, 2)
    return fusion_of_group(s4xc2, S, 2)


@pytest.fixture(scope="session")
def E_s4x1(F_s4xc2, s4xc2):
    """The copy of the S4-fusion over D8 x 1 inside S4 x C2."""
    from fusionkit.groups import centralizer, normal_subgroups
    cands = [N for N in normal_subgroups(s4xc2.full_subgroup)
             if N.order == 24 and centralizer(N, N).order == 1]
    return normal_subsystem_in(F_s4xc2, cands[0])
