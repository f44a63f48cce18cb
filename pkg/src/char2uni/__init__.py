"""Unipotent conjugacy classes of Sp(2n) and split SO(2n) in characteristic 2.

Class labels and their closure order, isotropic flag pairs attached to
elliptic Weyl group cycle types, and exhaustive verification over GF(2) that
the doubled-cycle-type class is closure-minimal among the adapted classes.
"""

__version__ = "0.1.0"

from .partitions import (  # noqa: F401
    Partition,
    dominance_leq,
    enumerate_partitions,
    nilpotent_power_rank,
)
from .class_labels import (  # noqa: F401
    CycleType,
    SpLabel,
    closure_leq,
    enumerate_sp_labels,
    hasse_diagram,
    label_from_cycle_type,
)
from .gf2 import (  # noqa: F401
    BitMatrix,
    BitVector,
    FormedSpace,
    Subspace,
    dickson_invariant,
    epsilon_invariant,
    is_isometry,
    is_unipotent,
    jordan_type,
    rank,
    sp_label_of,
    transvection,
)
from .flags import (  # noqa: F401
    Flag,
    FlagPair,
    build_flag_pair,
    check_flag_conditions,
    standard_flag,
    standard_space,
)
from .harness import (  # noqa: F401
    AdaptedReport,
    adapted_classes,
    enumerate_coset,
    epsilon_forcing_holds,
    verify_theorem,
    verify_unique_min,
)
