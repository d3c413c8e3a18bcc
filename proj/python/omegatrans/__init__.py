"""Reversible two-way transducers over infinite words.

Machines are JSON documents (see the README). Lassos are written u(v) for
u followed by v repeated forever.
"""

from ._core import (
    AlphabetMismatch,
    Error,
    InvalidMachine,
    InvalidSst,
    NotDeterministic,
    NotReversible,
    Outcome,
    ParseError,
    Sst,
    StateExplosion,
    Transducer,
    buchi_as_parity,
    buchi_to_noacc,
    canonical_lassos,
    compose,
    dbt_to_rbt,
    drop_acceptance,
    equiv,
    evaluate,
    generate,
    load,
    one_way_to_reversible,
    parse,
    prune,
    sst_to_reversible,
    two_way_to_sst,
)

__all__ = [name for name in dir() if not name.startswith("_")]
