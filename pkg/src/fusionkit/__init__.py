"""fusionkit: saturated fusion systems of finite groups at desk scale."""

from .fusion import (FusionSystem, fusion_of_group, generated_subsystem,
                     subsystem_contains, subsystem_equal)
from .groups import FiniteGroup, Hom, Subgroup, sylow_subgroup
from .subsystems import is_normal, normal_subsystem_in

__all__ = [
    "FiniteGroup", "Hom", "Subgroup", "sylow_subgroup",
    "FusionSystem", "fusion_of_group", "generated_subsystem",
    "subsystem_contains", "subsystem_equal",
    "is_normal", "normal_subsystem_in",
]
__version__ = "0.1.0"
