"""Zero-sum subset partitions of finite Abelian groups, with applications
to orthomorphisms and graph labelings."""

from .groups import (
    Element,
    Group,
    add,
    enumerate_abelian_groups,
    involutions,
    make_group,
    neg,
    scalar_mul,
    sub,
    sum_all_elements,
    sylow2_decomposition,
)
from .solver import (
    FeasibilityVerdict,
    RealizationInstance,
    Status,
    SubsetPartition,
    constant_sum_partition,
    heuristic_realize,
    necessary_conditions,
    realize_partition,
    verify_partition,
)

__version__ = "0.1.0"
