"""Deadlock detection and disentangling for finite linear CCS."""

from .core import (
    INERT,
    Action,
    CanonicalProcess,
    Inert,
    Par,
    ParseError,
    Polarity,
    Prefix,
    Process,
    canonical,
    names,
    parse,
    struct_eq,
    unparse,
)

__version__ = "0.1.0"
