"""Left orders of finitely generated groups, approximated on balls.

Orders are stored as positive cones restricted to a ball of the group;
levels of admissible cones form a prefix tree whose branches are the
left orders.  See the README for the command line tool.
"""

from .cantor import DichotomyReport, classify_rigidity, derivative_at_horizon, dichotomy_report
from .cones import (
    NEG,
    POS,
    ChainCondition,
    PartialCone,
    check_axioms,
    in_v_set,
    less_than,
    propagate,
    right_less_than,
    satisfies_chain,
)
from .dynamics import act, is_biorder_candidate, orbits_at_level, verify_cocycle
from .errors import (
    BudgetExceeded,
    ChainError,
    FamilyMismatchError,
    GroupSpecError,
    LeftOrderError,
    OracleCapExceeded,
    RadiusError,
)
from .groups import GroupCtx, GroupElement, ball, conjugate, invert, multiply, parse_group_spec
from .orderspace import (
    PrefixTree,
    build_tree,
    enumerate_level,
    oracle_enumerate,
    prune_to_horizon,
    select_by_chain,
)
from .subgroups import SubgroupSpec, restrict_order, subgroup_ball, verify_restriction_continuity

__version__ = "0.1.0"
