"""Adelic algebras over the projective line."""

from ._adelic import (
    AdelicError,
    InternalInconsistency,
    NeedsLargerField,
    NotAUnit,
    ParseError,
    PreconditionViolation,
    bad_set,
    content,
    content_idele,
    is_discrete,
    is_separable,
    run,
)

__all__ = [
    "AdelicError",
    "InternalInconsistency",
    "NeedsLargerField",
    "NotAUnit",
    "ParseError",
    "PreconditionViolation",
    "bad_set",
    "content",
    "content_idele",
    "is_discrete",
    "is_separable",
    "run",
]
