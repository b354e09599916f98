"""Interval inference over four-dimensional genus quantities.

Every knot carries seven nonnegative integer quantities: the slice genus
g4, ribbon genus g_r, half ribbon genus g_hr, doubly slice genus g_ds,
superslice genus g_s, fusion number f, and half fusion number f_h.  Each
is held as an interval (unknown = 0..inf).  A fixed rule set is applied
as monotone tightenings until nothing improves:

  * the chain 2*g4 <= g_hr <= 2*g_r <= g_ds within one knot;
  * f_h >= max|sigma_omega|, f_h = 0 iff g_ds = 0, and f_h <= f;
  * band-move facts: if one knot turns into another by attaching l bands
    then their g_ds values differ by at most l, their doubled g_s values
    differ by at most l, and the first knot's g_hr is at most twice the
    second's ribbon genus plus l.  A ribbon concordance with s saddles
    and d deaths gives the same g_ds squeeze with l = s and the ribbon
    route bound with l = s - d.  The ribbon-route bound is directional
    and is never applied with the roles of the two knots swapped.

Every strict tightening appends a provenance step, and a lower bound
crossing an upper aborts with the entry's full derivation trace.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Iterable

from knotgenus.errors import LedgerContradiction
from knotgenus.table import KnotRecord

__all__ = [
    "QUANTITIES",
    "Interval",
    "MoveFact",
    "Provenance",
    "LedgerEntry",
    "Ledger",
    "ReportRow",
    "Report",
    "seed_entry",
    "apply_order_rules",
    "apply_fusion_rules",
    "apply_move_fact",
    "connected_sum",
    "conclude",
    "load_facts",
    "save_facts",
    "FACT_HEADER",
    "EXTERNAL_HEADER",
]

QUANTITIES = ("g4", "g_r", "g_hr", "g_ds", "g_s", "f", "f_h")

FACT_HEADER = ("kind", "from", "to", "params")
EXTERNAL_HEADER = ("name", "quantity", "lower", "upper", "source")

# crossing-level moves that cost exactly two bands
_TWO_BAND_KINDS = frozenset(
    {"crossing_change", "zero_writhe_pair", "oriented_resolution_pair"}
)
_FACT_KINDS = _TWO_BAND_KINDS | {"bands", "ribbon_concordance"}


@dataclass(frozen=True)
class Interval:
    """Closed nonnegative integer range; ``upper=None`` means unbounded."""

    lower: int = 0
    upper: int | None = None

    def __post_init__(self) -> None:
        if self.lower < 0:
            raise ValueError(f"negative lower bound {self.lower}")
        if self.upper is not None and self.upper < self.lower:
            raise ValueError(f"empty interval {self.lower}..{self.upper}")

    @classmethod
    def point(cls, v: int) -> "Interval":
        return cls(v, v)

    @property
    def is_point(self) -> bool:
        return self.upper == self.lower

    def __str__(self) -> str:
        if self.is_point:
            return str(self.lower)
        if self.upper is None:
            return f"{self.lower}.."
        return f"{self.lower}..{self.upper}"


@dataclass(frozen=True)
class MoveFact:
    """A certified cobordism between two named knots.

    ``bands`` carries the band count, ``ribbon_concordance`` the saddle
    and death counts; the three crossing-level kinds carry no params and
    normalize to two bands.
    """

    kind: str
    from_knot: str
    to_knot: str
    params: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in _FACT_KINDS:
            raise ValueError(f"unknown move kind {self.kind!r}")
        if self.kind == "bands":
            if len(self.params) != 1 or self.params[0] < 0 or self.params[0] % 2:
                # a cobordism between single-component knots uses an even
                # number of bands
                raise ValueError(f"bands needs one even count, got {self.params}")
        elif self.kind == "ribbon_concordance":
            if len(self.params) != 2:
                raise ValueError("ribbon_concordance needs saddle and death counts")
            s, d = self.params
            if not 0 <= d <= s:
                raise ValueError(f"need 0 <= deaths <= saddles, got s={s} d={d}")
        elif self.params:
            raise ValueError(f"{self.kind} takes no params")

    def normalized(self) -> tuple[str, tuple[int, ...]]:
        if self.kind in _TWO_BAND_KINDS:
            return "bands", (2,)
        return self.kind, self.params


@dataclass(frozen=True)
class Provenance:
    rule: str
    inputs: str
    citation: str

    def __str__(self) -> str:
        return f"{self.rule}({self.inputs}): {self.citation}"


class LedgerEntry:
    """Mutable per-knot interval store with a derivation log."""

    __slots__ = ("name", "intervals", "provenance")

    def __init__(self, name: str):
        self.name = name
        self.intervals: dict[str, Interval] = {q: Interval() for q in QUANTITIES}
        self.provenance: list[Provenance] = []

    def __repr__(self) -> str:
        body = ", ".join(f"{q}={self.intervals[q]}" for q in QUANTITIES)
        return f"LedgerEntry({self.name}: {body})"


def _tighten(
    e: LedgerEntry,
    q: str,
    lower: int | None = None,
    upper: int | None = None,
    rule: str = "",
    inputs: str = "",
    citation: str = "",
) -> bool:
    """Narrow one interval; log the step; raise on emptiness."""
    iv = e.intervals[q]
    lo, up = iv.lower, iv.upper
    if lower is not None and lower > lo:
        lo = lower
    if upper is not None:
        upper = max(upper, 0)
        if up is None or upper < up:
            up = upper
    lo = max(lo, 0)
    if (lo, up) == (iv.lower, iv.upper):
        return False
    effect = f"{e.name}.{q}: {iv} -> "
    if up is not None and lo > up:
        attempted = f"{effect}{lo}..{up} via {rule}({inputs}): {citation}"
        trace = tuple(str(p) for p in e.provenance) + (attempted,)
        raise LedgerContradiction(
            f"{e.name}.{q} forced empty: lower {lo} exceeds upper {up}", trace
        )
    new = Interval(lo, up)
    e.intervals[q] = new
    e.provenance.append(Provenance(rule, f"{effect}{new}; {inputs}", citation))
    return True


def seed_entry(record: KnotRecord) -> LedgerEntry:
    """Turn one reference-table row into interval seeds."""
    e = LedgerEntry(record.name)
    if record.crossing_number == 0:
        for q in QUANTITIES:
            _tighten(e, q, upper=0, rule="table-seed", inputs="trivial diagram",
                     citation="every genus quantity of the unknot vanishes")
        return e
    if record.g4 is not None:
        _tighten(e, "g4", lower=record.g4, upper=record.g4, rule="table-seed",
                 inputs=f"g4 cell {record.g4}", citation="recorded slice genus")
    if record.gds_lower or record.gds_upper is not None:
        _tighten(e, "g_ds", lower=record.gds_lower, upper=record.gds_upper,
                 rule="table-seed",
                 inputs=f"gds cells {record.gds_lower}..{record.gds_upper}",
                 citation="recorded doubly slice genus bounds")
    if record.ribbon:
        _tighten(e, "g_r", upper=0, rule="table-seed", inputs="ribbon cell",
                 citation="ribbon knots bound genus-0 ribbon surfaces")
    return e


# -- per-entry rules -------------------------------------------------------

_CHAIN = "genus-chain"


def _order_pass(e: LedgerEntry) -> bool:
    iv = e.intervals
    ch = False
    ch |= _tighten(e, "g_hr", lower=2 * iv["g4"].lower, rule=_CHAIN,
                   inputs=f"g4 >= {iv['g4'].lower}", citation="2*g4 <= g_hr")
    if iv["g_hr"].upper is not None:
        ch |= _tighten(e, "g4", upper=iv["g_hr"].upper // 2, rule=_CHAIN,
                       inputs=f"g_hr <= {iv['g_hr'].upper}", citation="2*g4 <= g_hr")
    if iv["g_r"].upper is not None:
        ch |= _tighten(e, "g_hr", upper=2 * iv["g_r"].upper, rule=_CHAIN,
                       inputs=f"g_r <= {iv['g_r'].upper}", citation="g_hr <= 2*g_r")
    ch |= _tighten(e, "g_r", lower=(iv["g_hr"].lower + 1) // 2, rule=_CHAIN,
                   inputs=f"g_hr >= {iv['g_hr'].lower}", citation="g_hr <= 2*g_r")
    ch |= _tighten(e, "g_ds", lower=2 * iv["g_r"].lower, rule=_CHAIN,
                   inputs=f"g_r >= {iv['g_r'].lower}", citation="2*g_r <= g_ds")
    if iv["g_ds"].upper is not None:
        ch |= _tighten(e, "g_r", upper=iv["g_ds"].upper // 2, rule=_CHAIN,
                       inputs=f"g_ds <= {iv['g_ds'].upper}", citation="2*g_r <= g_ds")
    return ch


def apply_order_rules(e: LedgerEntry) -> LedgerEntry:
    """Tighten the chain 2*g4 <= g_hr <= 2*g_r <= g_ds to a fixpoint."""
    while _order_pass(e):
        pass
    return e


def _fusion_pass(e: LedgerEntry, lt_max: int) -> bool:
    iv = e.intervals
    ch = False
    if lt_max > 0:
        ch |= _tighten(e, "f_h", lower=lt_max, rule="signature-floor",
                       inputs=f"max|sigma_omega| = {lt_max}",
                       citation="f_h >= max|sigma_omega|")
    if iv["g_ds"].upper == 0:
        ch |= _tighten(e, "f_h", upper=0, rule="fusion-iff",
                       inputs="g_ds = 0", citation="f_h = 0 iff g_ds = 0")
    if iv["f_h"].upper == 0:
        ch |= _tighten(e, "g_ds", upper=0, rule="fusion-iff",
                       inputs="f_h = 0", citation="f_h = 0 iff g_ds = 0")
    if iv["g_ds"].lower >= 1:
        ch |= _tighten(e, "f_h", lower=1, rule="fusion-iff",
                       inputs=f"g_ds >= {iv['g_ds'].lower}",
                       citation="f_h = 0 iff g_ds = 0")
    if iv["f_h"].lower >= 1:
        ch |= _tighten(e, "g_ds", lower=1, rule="fusion-iff",
                       inputs=f"f_h >= {iv['f_h'].lower}",
                       citation="f_h = 0 iff g_ds = 0")
    if iv["f"].upper is not None:
        ch |= _tighten(e, "f_h", upper=iv["f"].upper, rule="fusion-order",
                       inputs=f"f <= {iv['f'].upper}", citation="f_h <= f")
    ch |= _tighten(e, "f", lower=iv["f_h"].lower, rule="fusion-order",
                   inputs=f"f_h >= {iv['f_h'].lower}", citation="f_h <= f")
    return ch


def apply_fusion_rules(e: LedgerEntry, lt_max: int) -> LedgerEntry:
    """Apply the half-fusion rules given the knot's signature supremum."""
    if lt_max < 0:
        raise ValueError("lt_max must be nonnegative")
    while _fusion_pass(e, lt_max):
        pass
    return e


# -- cross-knot rules ------------------------------------------------------


def _pair_squeeze(a: LedgerEntry, b: LedgerEntry, q: str, slack: int,
                  rule: str, citation: str) -> bool:
    # |q(a) - q(b)| <= slack, narrowed in all four endpoint positions
    ch = False
    for x, y in ((a, b), (b, a)):
        ivy = y.intervals[q]
        if ivy.upper is not None:
            ch |= _tighten(x, q, upper=ivy.upper + slack, rule=rule,
                           inputs=f"{q}({y.name}) <= {ivy.upper}, slack {slack}",
                           citation=citation)
        if ivy.lower > slack:
            ch |= _tighten(x, q, lower=ivy.lower - slack, rule=rule,
                           inputs=f"{q}({y.name}) >= {ivy.lower}, slack {slack}",
                           citation=citation)
    return ch


def _ribbon_route(src: LedgerEntry, helper: LedgerEntry, extra: int,
                  rule: str) -> bool:
    # g_hr(src) <= 2*g_r(helper) + extra; one direction only
    citation = "g_hr(K) <= 2*g_r(J) + l for K turned into J by l bands"
    ch = False
    ivh = helper.intervals["g_r"]
    if ivh.upper is not None:
        ch |= _tighten(src, "g_hr", upper=2 * ivh.upper + extra, rule=rule,
                       inputs=f"g_r({helper.name}) <= {ivh.upper}, cost {extra}",
                       citation=citation)
    need = src.intervals["g_hr"].lower - extra
    if need > 0:
        ch |= _tighten(helper, "g_r", lower=(need + 1) // 2, rule=rule,
                       inputs=f"g_hr({src.name}) >= {src.intervals['g_hr'].lower},"
                              f" cost {extra}",
                       citation=citation)
    return ch


def _fact_pass(led: "Ledger", fact: MoveFact) -> bool:
    kind, params = fact.normalized()
    src = led.entries[fact.from_knot]
    dst = led.entries[fact.to_knot]
    ch = False
    if kind == "bands":
        (l,) = params
        ch |= _pair_squeeze(src, dst, "g_ds", l, "band-distance",
                            "|g_ds(K) - g_ds(J)| <= l under l bands")
        ch |= _pair_squeeze(src, dst, "g_s", l // 2, "band-distance",
                            "|2*g_s(K) - 2*g_s(J)| <= l under l bands")
        ch |= _ribbon_route(src, dst, l, "ribbon-route")
    else:
        s, d = params
        ch |= _pair_squeeze(src, dst, "g_ds", s, "concordance-distance",
                            "|g_ds(K) - g_ds(J)| <= s under a ribbon"
                            " concordance with s saddles")
        ch |= _ribbon_route(src, dst, s - d, "concordance-route")
    return ch


def apply_move_fact(led: "Ledger", fact: MoveFact) -> "Ledger":
    """Register a move fact and apply its tightenings until stable."""
    if fact.from_knot not in led.entries:
        raise KeyError(fact.from_knot)
    if fact.to_knot not in led.entries:
        raise KeyError(fact.to_knot)
    led.facts.append(fact)
    while _fact_pass(led, fact):
        pass
    return led


def connected_sum(e1: LedgerEntry, e2: LedgerEntry, lt_max: int = 0,
                  name: str | None = None) -> LedgerEntry:
    """Entry for a connected sum.

    g_hr, f_h and g_ds are subadditive, so finite upper bounds add.  Lower
    bounds do not transfer; the caller supplies the signature supremum of
    the sum (unit-circle signatures add exactly), which seeds f_h from
    below.  Order and fusion rules then run on the result.
    """
    out = LedgerEntry(name if name is not None else f"{e1.name}#{e2.name}")
    for q in ("g_hr", "f_h", "g_ds"):
        u1 = e1.intervals[q].upper
        u2 = e2.intervals[q].upper
        if u1 is not None and u2 is not None:
            _tighten(out, q, upper=u1 + u2, rule="sum-subadditive",
                     inputs=f"{q}({e1.name}) <= {u1}, {q}({e2.name}) <= {u2}",
                     citation=f"{q} is subadditive under connected sum")
    apply_order_rules(out)
    apply_fusion_rules(out, lt_max)
    apply_order_rules(out)
    return out


# -- the ledger ------------------------------------------------------------


class Ledger:
    """Entries plus registered facts, propagated jointly to a fixpoint."""

    def __init__(self) -> None:
        self.entries: dict[str, LedgerEntry] = {}
        self.facts: list[MoveFact] = []
        self.signature_floor: dict[str, int] = {}

    def add_entry(self, entry: LedgerEntry) -> LedgerEntry:
        if entry.name in self.entries:
            raise ValueError(f"duplicate entry {entry.name}")
        self.entries[entry.name] = entry
        return entry

    def add_record(self, record: KnotRecord) -> LedgerEntry:
        return self.add_entry(seed_entry(record))

    def ensure(self, name: str) -> LedgerEntry:
        if name not in self.entries:
            self.entries[name] = LedgerEntry(name)
        return self.entries[name]

    def set_signature_floor(self, name: str, lt_max: int) -> None:
        """Record max|sigma_omega| for one knot; consumed by propagation."""
        if lt_max < 0:
            raise ValueError("lt_max must be nonnegative")
        prev = self.signature_floor.get(name, 0)
        self.signature_floor[name] = max(prev, lt_max)

    def add_fact(self, fact: MoveFact) -> None:
        apply_move_fact(self, fact)

    def add_external(self, name: str, quantity: str, lower: int | None = None,
                     upper: int | None = None, source: str = "") -> None:
        """Literature value for one quantity, applied as a direct squeeze.

        ``ord_v`` feeds the fusion number from below; everything else
        names one of the seven ledger quantities directly.
        """
        e = self.entries[name]
        tag = f"external:{source}" if source else "external"
        if quantity == "ord_v":
            if lower is not None:
                _tighten(e, "f", lower=lower, rule=tag,
                         inputs=f"ord_v >= {lower}",
                         citation="the order invariant bounds the fusion"
                                  " number of ribbon knots from below")
            return
        if quantity not in QUANTITIES:
            raise ValueError(f"unknown quantity {quantity!r}")
        _tighten(e, quantity, lower=lower, upper=upper, rule=tag,
                 inputs=f"recorded {quantity} in {lower}..{upper}",
                 citation="recorded literature value")

    def propagate(self) -> "Ledger":
        """Run every rule on every entry and fact until nothing improves."""
        changed = True
        while changed:
            changed = False
            for name in self.entries:
                e = self.entries[name]
                changed |= _order_pass(e)
                changed |= _fusion_pass(e, self.signature_floor.get(name, 0))
            for fact in self.facts:
                changed |= _fact_pass(self, fact)
        return self

    def load_facts(self, path: str) -> int:
        facts = load_facts(path)
        for fact in facts:
            self.ensure(fact.from_knot)
            self.ensure(fact.to_knot)
            self.add_fact(fact)
        return len(facts)

    def load_external(self, path: str) -> int:
        rows = _read_csv(path, EXTERNAL_HEADER)
        for lineno, row in rows:
            name, quantity, lo, up, source = row
            try:
                self.add_external(
                    name, quantity,
                    int(lo) if lo else None,
                    int(up) if up else None,
                    source,
                )
            except (KeyError, ValueError) as exc:
                raise ValueError(f"line {lineno}: {exc}") from exc
        return len(rows)


# -- fact and report serialization -----------------------------------------


def _read_csv(path: str, header: tuple[str, ...]) -> list[tuple[int, list[str]]]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        rows = [(i + 1, row) for i, row in enumerate(reader) if row]
    if not rows or tuple(rows[0][1]) != header:
        raise ValueError(f"expected header {','.join(header)}")
    out = []
    for lineno, row in rows[1:]:
        if len(row) != len(header):
            raise ValueError(f"line {lineno}: expected {len(header)} fields")
        out.append((lineno, row))
    return out


def load_facts(path: str) -> tuple[MoveFact, ...]:
    facts = []
    for lineno, (kind, src, dst, params) in _read_csv(path, FACT_HEADER):
        try:
            parsed = tuple(int(p) for p in params.split(";")) if params else ()
            facts.append(MoveFact(kind, src, dst, parsed))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from exc
    return tuple(facts)


def save_facts(path: str, facts: Iterable[MoveFact]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(FACT_HEADER)
        for fact in facts:
            writer.writerow([
                fact.kind, fact.from_knot, fact.to_knot,
                ";".join(str(p) for p in fact.params),
            ])


@dataclass(frozen=True)
class ReportRow:
    name: str
    g4: Interval
    g_hr: Interval
    g_ds: Interval
    f_h: Interval
    status: str
    provenance: str


@dataclass(frozen=True)
class Report:
    rows: tuple[ReportRow, ...]
    headline_failures: tuple[str, ...]

    def row(self, name: str) -> ReportRow:
        for r in self.rows:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_csv(self) -> str:
        lines = ["name,g4,g_hr,g_ds,f_h,status,provenance"]
        for r in self.rows:
            lines.append(
                f"{r.name},{r.g4},{r.g_hr},{r.g_ds},{r.f_h},{r.status},"
                f"{r.provenance}"
            )
        return "\n".join(lines) + "\n"


def conclude(led: Ledger) -> Report:
    """Freeze the ledger into a per-knot report.

    A row is resolved when all four reported quantities are points, partial
    when at least the half ribbon genus is, open otherwise.  Entries where
    slice and half ribbon genus are both resolved but g_hr != 2*g4 are
    collected as headline failures rather than raised.
    """
    led.propagate()
    rows = []
    failures = []
    for name, e in led.entries.items():
        iv = e.intervals
        reported = [iv["g4"], iv["g_hr"], iv["g_ds"], iv["f_h"]]
        if all(v.is_point for v in reported):
            status = "resolved"
        elif iv["g_hr"].is_point:
            status = "partial"
        else:
            status = "open"
        prov = ";".join(sorted({p.rule for p in e.provenance}))
        rows.append(ReportRow(name, *reported, status, prov))
        if iv["g4"].is_point and iv["g_hr"].is_point:
            if iv["g_hr"].lower != 2 * iv["g4"].lower:
                failures.append(name)
    return Report(tuple(rows), tuple(failures))
