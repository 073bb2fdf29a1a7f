"""
Constants for reeskit.
"""

DEFAULT_CAP = 10**6
CAP_ENV_VAR = "REESKIT_CAP"

DEFAULT_M_CAP = 32
FM_MAX_DIM = 5

FAMILY_KINDS = ("generic", "symmetric", "pfaffian", "hankel")

# Letter used for the ideals I_t / J_t / P_{2t} / H_t of each family
FAMILY_SYMBOLS = {
    "generic": "I",
    "symmetric": "J",
    "pfaffian": "P",
    "hankel": "H",
}

VERDICT_EQUAL = "EQUAL"
VERDICT_LHS_NOT_IN_RHS = "LHS_NOT_IN_RHS"
VERDICT_RHS_NOT_IN_LHS = "RHS_NOT_IN_LHS"

CONJECTURE_LABEL = "consistent with conjecture"
INCONSISTENT_LABEL = "inconsistent: implementation defect"

OUTPUT_FORMATS = ("json", "text", "latex")

DEFAULT_SEED = 0
