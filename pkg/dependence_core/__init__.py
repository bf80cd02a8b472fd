# dependence_core/__init__.py
"""
Dependence Logic Core

Team semantics: propositional dependence (d) and independence (i) logic.
Kripke semantics: C, D, I, relativised D and [U] over SD-models.
Translations between the languages, brute-force decision procedures and a
Hilbert-style derivation checker.
"""

from .syntax import Formula, Fragment, parse, to_text, validate_fragment, require_fragment
from .models import SDModel, Signature, load_model, parse_model, format_model
from .team_semantics import eval_team, SplitStrategy
from .kripke_semantics import eval_kripke, eval_global, truth_function, det_check, det_witness
from .translations import translate, translation_path
from .decide import (Verdict, Witness, EnumBudget, validity, team_validity, satisfiable, equivalent,
                     team_vs_kripke, characteristic_formula, defining_formula, inexpressibility_scan)
from .proof_system import (AxiomSystemId, Derivation, ProofCheck, check_derivation, soundness_audit,
                           load_derivation, parse_derivation)
from .errors import LogicError
from . import config

__all__ = [
    'Formula',
    'Fragment',
    'parse',
    'to_text',
    'validate_fragment',
    'require_fragment',
    'SDModel',
    'Signature',
    'load_model',
    'parse_model',
    'format_model',
    'eval_team',
    'SplitStrategy',
    'eval_kripke',
    'eval_global',
    'truth_function',
    'det_check',
    'det_witness',
    'translate',
    'translation_path',
    'Verdict',
    'Witness',
    'EnumBudget',
    'validity',
    'team_validity',
    'satisfiable',
    'equivalent',
    'team_vs_kripke',
    'characteristic_formula',
    'defining_formula',
    'inexpressibility_scan',
    'AxiomSystemId',
    'Derivation',
    'ProofCheck',
    'check_derivation',
    'soundness_audit',
    'load_derivation',
    'parse_derivation',
    'LogicError',
    'config'
]
