from .core import (
    DEFAULT_BOUND,
    GroupTooLarge,
    NotAPGroup,
    Perm,
    PermGroupData,
    closure,
    direct_product,
    quotient,
)
from .pgroup import (
    CyclicClass,
    Filtration,
    InvariantViolation,
    StructureReport,
    agemo,
    agemo_mask,
    agemo_triviality_witness,
    all_subgroups,
    covers_maximal_cyclic,
    fingerprint,
    frattini,
    frattini_mask,
    is_powerful,
    maximal_cyclic_classes,
    maximal_subgroup_masks,
    min_generators,
    normal_subgroup_masks,
    powerful_filtration,
    rank,
    structure_report,
)


def conjugacy_classes(G: PermGroupData) -> list[list[int]]:
    return G.conjugacy_classes()
