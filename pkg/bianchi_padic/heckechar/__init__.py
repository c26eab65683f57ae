"""Hecke characters of K: ideal functions, Gauss sums, p-adic avatars and character catalogs."""

from .avatar import AvatarCharacter, p_adic_avatar
from .catalog import (
    CharacterTableEntry,
    canonical_cm_character,
    character_family,
    character_from_phases,
    characters_by_conductor,
    default_cm_modulus,
    lambda_k,
    norm_character,
)
from .character import HeckeCharacter, InfinityType, kronecker_character, root_from_phase
from .gauss import (
    gauss_product_identity,
    gauss_sum_W,
    gauss_sum_Wp,
    infinity_value,
    local_component_value,
    local_gauss_sum,
    local_uniformizer_value,
    sum_of_roots,
    twisted_orthogonality_sum,
)

__all__ = [
    "AvatarCharacter",
    "CharacterTableEntry",
    "HeckeCharacter",
    "InfinityType",
    "canonical_cm_character",
    "character_family",
    "character_from_phases",
    "characters_by_conductor",
    "default_cm_modulus",
    "gauss_product_identity",
    "gauss_sum_W",
    "gauss_sum_Wp",
    "infinity_value",
    "kronecker_character",
    "lambda_k",
    "local_component_value",
    "local_gauss_sum",
    "local_uniformizer_value",
    "norm_character",
    "p_adic_avatar",
    "root_from_phase",
    "sum_of_roots",
    "twisted_orthogonality_sum",
]
