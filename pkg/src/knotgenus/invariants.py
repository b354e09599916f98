"""Classical invariants of knot diagrams.

Two independent routes to the Alexander polynomial are kept side by side:
the Seifert route det(V - t V^T) through the braided surface, and the
overpass presentation route through a free differential calculus matrix.
They must agree; ``alexander(d, check=True)`` enforces that at call time
and the table builder runs every entry through both.
"""

from __future__ import annotations

from functools import lru_cache

from knotgenus import seifert as _seifert
from knotgenus import signatures as _signatures
from knotgenus.diagram import Diagram
from knotgenus.laurent import Laurent, laurent_det
from knotgenus.signatures import LTProfile

__all__ = [
    "seifert_matrix",
    "alexander",
    "alexander_wirtinger",
    "determinant",
    "signature",
    "lt_profile",
    "lt_at_order",
]


@lru_cache(maxsize=4096)
def seifert_matrix(diagram: Diagram) -> tuple[tuple[int, ...], ...]:
    """Seifert matrix of the diagram's braided surface; cached."""
    return _seifert.seifert_matrix(diagram)


def alexander(diagram: Diagram, check: bool = False) -> Laurent:
    """Alexander polynomial, symmetric span with positive top coefficient."""
    alex = _signatures.alexander_from_seifert(seifert_matrix(diagram))
    if check:
        other = alexander_wirtinger(diagram)
        if alex != other:
            raise ArithmeticError(
                f"alexander routes disagree: {alex.serialize()} vs {other.serialize()}"
            )
    return alex


def alexander_wirtinger(diagram: Diagram) -> Laurent:
    """Alexander polynomial from the overpass presentation.

    Generators are overpasses (arcs merged through each crossing's over
    strand); each crossing contributes one free-calculus row, and any
    maximal minor of the resulting matrix is the polynomial up to units.
    """
    if diagram.n == 0:
        return Laurent({0: 1})
    parent = {a: a for a in diagram.arcs()}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for cr in diagram.crossings:
        a, b, c, d = cr.arcs
        o_in, o_out = (d, b) if cr.sign > 0 else (b, d)
        parent[find(o_in)] = find(o_out)
    classes = sorted({find(a) for a in diagram.arcs()})
    col = {cls: i for i, cls in enumerate(classes)}
    one = Laurent({0: 1})
    rows = []
    for cr in diagram.crossings:
        a, b, c, d = cr.arcs
        o_in = d if cr.sign > 0 else b
        tt = Laurent({cr.sign: 1})  # t for positive crossings, 1/t for negative
        row = [Laurent({})] * len(classes)
        for cls, coef in (
            (find(a), tt),
            (find(c), Laurent({0: -1})),
            (find(o_in), one - tt),
        ):
            row[col[cls]] = row[col[cls]] + coef
        rows.append(row)
    minor = [row[:-1] for row in rows[:-1]]
    return laurent_det(minor).normalized()


def determinant(diagram: Diagram) -> int:
    """Order of the double branched cover's first homology; always odd."""
    return abs(alexander(diagram)(-1))


def signature(diagram: Diagram) -> int:
    V = seifert_matrix(diagram)
    n = len(V)
    S = [[V[i][j] + V[j][i] for j in range(n)] for i in range(n)]
    return _signatures.signature_symmetric(S)


def lt_profile(diagram: Diagram) -> LTProfile:
    return _signatures.lt_profile(seifert_matrix(diagram))


def lt_at_order(diagram: Diagram, order: int) -> int:
    return _signatures.lt_at_order(seifert_matrix(diagram), order)
