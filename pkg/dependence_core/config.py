# dependence_core/config.py
"""
Configuration for the evaluation engine.
Guards keep brute-force enumeration inside sizes that finish in seconds.
"""

# Reserved proposition symbol used to spell out #T and #F
RESERVED_SYMBOL = "_t"

# Debug Mode
DEBUG_MODE = False

# ==============================================================================
# ENUMERATION GUARDS
# ==============================================================================
MAX_SIGNATURE = 16          # worlds per signature: 2^16
MAX_MODEL_SIGNATURE = 4     # models per signature: 2^(2^4)
MAX_GENERAL_TEAM = 14       # 3^|T| overlapping splits for disjunction
MAX_DNF_BASE = 4            # 2^(2^k) type normal forms
MAX_SKELETON_ATOMS = 20     # truth-table columns in the tautology oracle
MAX_SMALL_SIGNATURE = 3     # flatness, downward closure, definability, audits

# Value assigned to premise tuples no world realizes
WITNESS_DEFAULT = 0
