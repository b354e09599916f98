"""Reference-table ingestion and fingerprint identification.

The table is a CSV snapshot of curated knot data.  Identification matches a
diagram against it by a staged fingerprint: determinant, signature magnitude
and Alexander polynomial first (all read straight off the row), then crossing
count gates, then signed unit-circle signature samples computed from each
surviving record's own diagram.  A unique survivor is re-verified at fresh
sample orders before being reported.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Sequence, Union

from knotgenus.diagram import UNKNOT, Diagram
from knotgenus.dtcodes import parse_dt
from knotgenus.errors import TableError
from knotgenus.invariants import alexander, lt_at_order, signature
from knotgenus.laurent import Laurent, parse_laurent

__all__ = [
    "KnotRecord",
    "Fingerprint",
    "Unique",
    "Ambiguous",
    "NoMatch",
    "TABLE_HEADER",
    "SAMPLE_ORDERS",
    "VERIFY_ORDERS",
    "load_table",
    "fingerprint_of",
    "identify",
]

TABLE_HEADER = (
    "name", "crossing_number", "dt_code", "g4", "ribbon",
    "gds_lower", "gds_upper", "signature", "alexander", "determinant",
)

# primitive root-of-unity orders sampled into every fingerprint, and the
# fresh orders used to double-check a unique match
SAMPLE_ORDERS = (5, 6, 7, 11)
VERIFY_ORDERS = (9, 13)


@dataclass(frozen=True)
class KnotRecord:
    name: str
    crossing_number: int
    dt_code: str
    g4: int | None
    ribbon: bool | None
    gds_lower: int
    gds_upper: int | None  # None = no recorded upper bound
    signature: int
    alexander: Laurent
    determinant: int

    @property
    def doubly_slice(self) -> bool:
        return self.gds_upper == 0

    def diagram(self) -> Diagram:
        if not self.dt_code:
            return UNKNOT
        return parse_dt(self.dt_code)


@dataclass(frozen=True)
class Fingerprint:
    """Signed invariant bundle; mirroring negates ``signature`` and ``lt``."""

    determinant: int
    signature: int
    alexander: str
    lt: tuple[int, ...]

    def mirrored(self) -> "Fingerprint":
        return Fingerprint(
            self.determinant,
            -self.signature,
            self.alexander,
            tuple(-v for v in self.lt),
        )

    def chiral_part(self) -> tuple[int, ...]:
        return (self.signature,) + self.lt


def fingerprint_of(diagram: Diagram) -> Fingerprint:
    alex = alexander(diagram)
    return Fingerprint(
        determinant=abs(alex(-1)),
        signature=signature(diagram),
        alexander=alex.serialize(),
        lt=tuple(lt_at_order(diagram, n) for n in SAMPLE_ORDERS),
    )


@dataclass(frozen=True)
class Unique:
    name: str
    mirrored: bool


@dataclass(frozen=True)
class Ambiguous:
    candidates: tuple[str, ...]


@dataclass(frozen=True)
class NoMatch:
    pass


Identification = Union[Unique, Ambiguous, NoMatch]


def _parse_int(cell: str, field: str, optional: bool = False) -> int | None:
    cell = cell.strip()
    if not cell:
        if optional:
            return None
        raise ValueError(f"{field} is required")
    try:
        return int(cell)
    except ValueError:
        raise ValueError(f"{field} is not an integer: {cell!r}") from None


def _parse_bool(cell: str, field: str) -> bool | None:
    cell = cell.strip().lower()
    if not cell:
        return None
    if cell in ("true", "1", "yes"):
        return True
    if cell in ("false", "0", "no"):
        return False
    raise ValueError(f"{field} is not a boolean: {cell!r}")


def _check_dt_syntax(code: str, crossings: int) -> None:
    labels = code.split()
    if len(labels) != crossings:
        raise ValueError(
            f"dt_code has {len(labels)} entries for {crossings} crossings"
        )
    try:
        values = [int(tok) for tok in labels]
    except ValueError:
        raise ValueError(f"dt_code is not integers: {code!r}") from None
    if any(v == 0 or v % 2 for v in values):
        raise ValueError("dt_code entries must be nonzero even integers")
    if sorted(abs(v) for v in values) != list(range(2, 2 * crossings + 1, 2)):
        raise ValueError("dt_code entries must cover 2..2n in magnitude")


def _parse_row(row: dict[str, str]) -> KnotRecord:
    name = row["name"].strip()
    if not name:
        raise ValueError("name is empty")
    crossing_number = _parse_int(row["crossing_number"], "crossing_number")
    if crossing_number < 0:
        raise ValueError("crossing_number is negative")
    dt_code = row["dt_code"].strip()
    _check_dt_syntax(dt_code, crossing_number)
    g4 = _parse_int(row["g4"], "g4", optional=True)
    if g4 is not None and g4 < 0:
        raise ValueError("g4 is negative")
    ribbon = _parse_bool(row["ribbon"], "ribbon")
    gds_lower = _parse_int(row["gds_lower"], "gds_lower", optional=True)
    gds_upper = _parse_int(row["gds_upper"], "gds_upper", optional=True)
    lower_recorded = gds_lower is not None
    if gds_lower is None:
        gds_lower = 0
    if gds_lower < 0:
        raise ValueError("gds_lower is negative")
    if gds_upper is not None and gds_lower > gds_upper:
        raise ValueError(f"gds_lower {gds_lower} exceeds gds_upper {gds_upper}")
    sig = _parse_int(row["signature"], "signature")
    if sig % 2:
        raise ValueError(f"signature {sig} is odd")
    try:
        alex = parse_laurent(row["alexander"].strip()).normalized()
    except ValueError as exc:
        raise ValueError(f"alexander: {exc}") from None
    determinant = _parse_int(row["determinant"], "determinant")
    if determinant <= 0 or determinant % 2 == 0:
        raise ValueError(f"determinant {determinant} is not odd positive")
    if abs(alex(-1)) != determinant:
        raise ValueError(
            f"determinant {determinant} disagrees with alexander at -1 "
            f"({abs(alex(-1))})"
        )
    if g4 is not None:
        if lower_recorded and 2 * g4 > gds_lower:
            raise ValueError(f"2*g4 {2 * g4} exceeds gds_lower {gds_lower}")
        if ribbon and g4 != 0:
            raise ValueError("ribbon row with nonzero g4")
        if abs(sig) > 2 * g4:
            raise ValueError(f"|signature| {abs(sig)} exceeds 2*g4 {2 * g4}")
    return KnotRecord(
        name=name,
        crossing_number=crossing_number,
        dt_code=dt_code,
        g4=g4,
        ribbon=ribbon,
        gds_lower=gds_lower,
        gds_upper=gds_upper,
        signature=sig,
        alexander=alex,
        determinant=determinant,
    )


def load_table(path: str) -> tuple[KnotRecord, ...]:
    """Parse and validate a reference CSV; all-or-nothing."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise TableError("empty file: missing header") from None
        if tuple(h.strip() for h in header) != TABLE_HEADER:
            raise TableError(
                f"bad header {header!r}; expected {','.join(TABLE_HEADER)}"
            )
        records: list[KnotRecord] = []
        problems: list[tuple[int, str]] = []
        seen: dict[str, int] = {}
        for lineno, cells in enumerate(reader, start=2):
            if not cells or (len(cells) == 1 and not cells[0].strip()):
                continue
            if len(cells) != len(TABLE_HEADER):
                problems.append((lineno, f"{len(cells)} cells"))
                continue
            row = dict(zip(TABLE_HEADER, cells))
            try:
                rec = _parse_row(row)
            except ValueError as exc:
                problems.append((lineno, str(exc)))
                continue
            if rec.name in seen:
                problems.append(
                    (lineno, f"duplicate name {rec.name} (line {seen[rec.name]})")
                )
                continue
            seen[rec.name] = lineno
            records.append(rec)
    if problems:
        detail = "; ".join(f"line {ln}: {msg}" for ln, msg in problems)
        raise TableError(
            f"{len(problems)} invalid row(s): {detail}",
            lines=tuple(ln for ln, _ in problems),
        )
    return tuple(records)


_RAW: dict[tuple[str, str], Fingerprint] = {}


def _raw_fingerprint(record: KnotRecord) -> Fingerprint:
    """Fingerprint of the record's own diagram, validated against the row."""
    key = (record.name, record.dt_code)
    cached = _RAW.get(key)
    if cached is not None:
        return cached
    fp = fingerprint_of(record.diagram())
    if fp.determinant != record.determinant or fp.alexander != record.alexander.serialize():
        raise TableError(
            f"record {record.name}: diagram invariants disagree with row data"
        )
    if abs(fp.signature) != abs(record.signature):
        raise TableError(
            f"record {record.name}: diagram signature {fp.signature} "
            f"disagrees with row signature {record.signature}"
        )
    _RAW[key] = fp
    return fp


def _aligned_fingerprint(record: KnotRecord) -> Fingerprint:
    """Raw realization flipped, if needed, to the row's stated chirality.

    A DT code pins a knot only up to mirror image; the signature column
    arbitrates when it can.
    """
    raw = _raw_fingerprint(record)
    if record.signature != 0 and raw.signature != record.signature:
        return raw.mirrored()
    return raw


def _match_orientation(found: Fingerprint, ref: Fingerprint) -> bool | None:
    """None if no match; else whether ``found`` is the mirror of ``ref``."""
    if found.determinant != ref.determinant or found.alexander != ref.alexander:
        return None
    a, b = found.chiral_part(), ref.chiral_part()
    if a == b:
        return False
    if a == tuple(-v for v in b):
        return True
    return None


def identify(
    diagram: Diagram,
    table: Sequence[KnotRecord],
    slack: int = 2,
) -> Identification:
    """Match a simplified diagram against the table.

    The diagram's crossing count gates candidates in both directions: a
    record needing more crossings than the diagram is impossible, and one
    needing ``slack`` fewer is taken as evidence of a different knot (the
    caller is expected to have simplified first).
    """
    fp = fingerprint_of(diagram)
    survivors: list[KnotRecord] = []
    for rec in table:
        if rec.determinant != fp.determinant:
            continue
        if abs(rec.signature) != abs(fp.signature):
            continue
        if rec.alexander.serialize() != fp.alexander:
            continue
        if rec.crossing_number > diagram.n:
            continue
        if diagram.n > rec.crossing_number + slack:
            continue
        survivors.append(rec)
    matches: list[tuple[KnotRecord, bool]] = []
    for rec in survivors:
        flip = _match_orientation(fp, _aligned_fingerprint(rec))
        if flip is not None:
            matches.append((rec, flip))
    if not matches:
        return NoMatch()
    if len(matches) > 1:
        return Ambiguous(tuple(sorted(rec.name for rec, _ in matches)))
    rec, flip = matches[0]
    mine = tuple(lt_at_order(diagram, n) for n in VERIFY_ORDERS)
    theirs = tuple(lt_at_order(rec.diagram(), n) for n in VERIFY_ORDERS)
    raw_flip = _match_orientation(fp, _raw_fingerprint(rec))
    allowed = {raw_flip} if any(fp.chiral_part()) else {False, True}
    for f in allowed:
        if mine == (tuple(-v for v in theirs) if f else theirs):
            return Unique(rec.name, flip)
    return NoMatch()
