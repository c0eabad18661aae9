"""Exact engine for contextual and hairpin (lariat) deletion operations."""

from cosplice._core import (
    Alphabet,
    EnergyModel,
    Involution,
    Nfa,
    ResourceError,
    apply,
    closure_nfa,
    closure_nfa_regular,
    exact_template,
    finite_language_nfa,
    is_stable_hairpin,
    lariat_nfa,
    lariat_nfa_regular,
    max_stem,
    nfa_from_json,
    rna_alphabet,
    scse_brute,
    scse_encode,
    search_template,
    verify_template,
    wc_involution,
    word_nfa,
)

__all__ = [
    "Alphabet",
    "EnergyModel",
    "Involution",
    "Nfa",
    "ResourceError",
    "apply",
    "closure_nfa",
    "closure_nfa_regular",
    "exact_template",
    "finite_language_nfa",
    "is_stable_hairpin",
    "lariat_nfa",
    "lariat_nfa_regular",
    "max_stem",
    "nfa_from_json",
    "rna_alphabet",
    "scse_brute",
    "scse_encode",
    "search_template",
    "verify_template",
    "wc_involution",
    "word_nfa",
]

__version__ = "0.1.0"
