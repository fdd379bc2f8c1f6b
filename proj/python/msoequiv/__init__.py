"""Equivalence of deterministic MSO string and tree transducers."""

from ._core import (
    Budget,
    Domain,
    Error,
    ParseError,
    ResourceExceeded,
    SignatureError,
    Transducer,
    Verdict,
    compile_summary,
    decide,
    find_counterexample,
    parikh,
    selftest,
)

__all__ = [
    "Budget",
    "Domain",
    "Error",
    "ParseError",
    "ResourceExceeded",
    "SignatureError",
    "Transducer",
    "Verdict",
    "compile_summary",
    "decide",
    "find_counterexample",
    "parikh",
    "selftest",
]
