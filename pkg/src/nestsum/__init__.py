"""Nested harmonic-type sums: exact evaluation, quasi-shuffle algebra,
polylogarithms, limits and analytic continuation."""
from .algebra import (
    CyclotomicIndex,
    GeneralIndex,
    HarmonicIndex,
    LinComb,
    count_A,
    count_ADH,
    count_all,
    count_D,
    count_H,
    is_lyndon,
    lyndon_factorization,
    lyndon_words,
    reduce_to_basis,
    shuffle,
    stuffle,
)
from .continuation import PoleError, asymptotic_coeffs, continue_single
from .grammar import ParseError, SemanticError, parse, to_text
from .polylog import (
    CyclotomicLetter,
    RootLetter,
    SqrtLetter,
    eval_T,
    hpl_eval,
    hpl_eval_general,
    hstar_eval,
    mellin_moment,
    verify_arg_transform,
    verify_mellin_identity,
)
from .sums import (
    eval_cyclotomic,
    eval_cyclotomic_single,
    eval_harmonic,
    eval_ssum,
    limit_to_infinity,
)

__version__ = "0.1.0"

__all__ = [
    "PoleError",
    "asymptotic_coeffs",
    "continue_single",
    "ParseError",
    "SemanticError",
    "parse",
    "to_text",
    "CyclotomicIndex",
    "GeneralIndex",
    "HarmonicIndex",
    "LinComb",
    "count_A",
    "count_ADH",
    "count_all",
    "count_D",
    "count_H",
    "is_lyndon",
    "lyndon_factorization",
    "lyndon_words",
    "reduce_to_basis",
    "shuffle",
    "stuffle",
    "CyclotomicLetter",
    "RootLetter",
    "SqrtLetter",
    "eval_T",
    "hpl_eval",
    "hpl_eval_general",
    "hstar_eval",
    "mellin_moment",
    "verify_arg_transform",
    "verify_mellin_identity",
    "eval_cyclotomic",
    "eval_cyclotomic_single",
    "eval_harmonic",
    "eval_ssum",
    "limit_to_infinity",
]
