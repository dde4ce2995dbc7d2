"""Answer sets and strong equivalence for nested and weight constraint programs."""

from .encodings import (
    nested_to_wcp,
    not_encode,
    or_combine,
    pl_program,
    pl_rule,
    prime,
    strongly_equivalent_via_pl,
    strongly_equivalent_via_wc,
    wc_encode,
)
from .equivalence import (
    DistinguishingContext,
    SEModel,
    Verdict,
    equivalent,
    formula_equiv_relative,
    is_se_model,
    positive_projection_agrees,
    replace_regular,
    se_models,
    strongly_equivalent_direct,
)
from .errors import CapacityError, MethodDisagreement, NegationError, ParseError, ReservedNameError, SequivError
from .literals import Literal, lits
from .nested import (
    BOT,
    TOP,
    And,
    Bottom,
    NestedProgram,
    Not,
    Or,
    Rule,
    Top,
    answer_sets,
    reduct_formula,
    reduct_program,
    satisfies_formula,
    satisfies_program,
    satisfies_rule,
)
from .parser import load_program, parse_formula, parse_nested, parse_wcp
from .printer import format_nested, format_program, format_wcp
from .propositional import prop_models
from .wcp import (
    RuleElement,
    WcpProgram,
    WcpRule,
    WeightConstraint,
    reduct_lower_constraint,
    reduct_wcp_program,
    reduct_wcp_rule,
    satisfies_constraint,
    satisfies_wcp_program,
    satisfies_wcp_rule,
    wcp_answer_sets,
    weight_sum,
)

__version__ = "0.1.0"
