"""Logic synthesis: expressions and truth tables to waveshaper masks."""

from wavepla.synthesis.capacity import CapacityEstimate, estimate_capacity
from wavepla.synthesis.expr import (
    BoolExpr,
    ExprSyntaxError,
    UnknownVariableError,
    compile_expr,
    parse_expr,
    truth_table,
)
from wavepla.synthesis.spatial import SpatialPlan, plan_spatial
from wavepla.synthesis.stdlib import (
    adder4,
    bitmap_truth_table,
    comparator4,
    decode_outputs,
    decoder,
    is_stdlib_name,
    multiplier4,
    stdlib_function,
)
from wavepla.synthesis.tables import (
    TruthTable,
    compile_mask,
    load_bundle,
    load_truth_table,
    save_bundle,
    save_truth_table,
)

__all__ = [
    "BoolExpr",
    "CapacityEstimate",
    "ExprSyntaxError",
    "SpatialPlan",
    "TruthTable",
    "UnknownVariableError",
    "adder4",
    "bitmap_truth_table",
    "comparator4",
    "compile_expr",
    "compile_mask",
    "decode_outputs",
    "decoder",
    "estimate_capacity",
    "is_stdlib_name",
    "load_bundle",
    "load_truth_table",
    "multiplier4",
    "parse_expr",
    "plan_spatial",
    "save_bundle",
    "save_truth_table",
    "stdlib_function",
    "truth_table",
]
