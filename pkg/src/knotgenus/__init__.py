"""knotgenus: knot diagram codes, exact abelian invariants, and a
genus-bound ledger driven by band-move facts."""

from knotgenus.laurent import Laurent, parse_laurent

__version__ = "0.1.0"

__all__ = [
    "Laurent",
    "parse_laurent",
    "__version__",
]
