"""Knot record storage: built-in seed knots, CSV ingestion, JSON persistence.

A record mirrors one row of an invariant table.  Every field that is both
stored and computable from the record's Seifert matrix is cross-checked at
construction time, so transcription errors surface immediately instead of
corrupting downstream reports.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field

from . import seifert as _seifert
from . import whitehead as _wh
from .bounds import Interval
from .laurent import LaurentPoly, normalize
from .plfunc import PLFunction
from .seifert import SeifertMatrix
from .whitehead import CompanionInvariants, WhiteheadParams

FORMAT_VERSION = 1

PROVENANCE_TAGS = ("computed", "table", "paper", "reconstructed")


class UnknownKnotError(KeyError):
    """Lookup of a name not present in the store."""

    def __str__(self):
        return self.args[0] if self.args else "unknown knot"


class DuplicateKnotError(ValueError):
    """Two records with the same name."""


class InconsistentRecordError(ValueError):
    """A stored field disagrees with the value computed from the Seifert matrix."""


@dataclass(frozen=True)
class KnotRecord:
    """One knot: name, optional Seifert matrix, optional invariants, provenance tags."""

    name: str
    seifert_matrix: SeifertMatrix | None = None
    alexander: LaurentPoly | None = None
    invariants: CompanionInvariants = field(default_factory=CompanionInvariants)
    sigma: int | None = None
    arf: int | None = None
    provenance: dict = field(default_factory=dict)

    def validate(self) -> "KnotRecord":
        """Cross-check stored values against anything computable; raise on mismatch."""
        bad = []
        v = self.seifert_matrix
        if v is not None:
            if self.sigma is not None and self.sigma != _seifert.signature(v):
                bad.append(f"sigma: stored {self.sigma}, computed {_seifert.signature(v)}")
            if self.arf is not None and v.n <= _seifert.ARF_SIZE_BUDGET:
                computed = _seifert.arf(v)
                if self.arf != computed:
                    bad.append(f"arf: stored {self.arf}, computed {computed}")
            if self.alexander is not None:
                stored_q, _ = normalize(self.alexander)
                computed_q, _ = normalize(_seifert.alexander(v))
                if stored_q != computed_q:
                    bad.append(
                        f"alexander: stored {self.alexander} differs from det(V - tV^T) "
                        f"= {_seifert.alexander(v)} up to units")
        if self.arf is not None and self.arf not in (0, 1):
            bad.append(f"arf: {self.arf} is not in {{0, 1}}")
        if self.sigma is not None and self.sigma % 2:
            bad.append(f"sigma: {self.sigma} is odd")
        if bad:
            raise InconsistentRecordError(f"record {self.name!r}: " + "; ".join(bad))
        return self

    def to_json(self):
        return {
            "name": self.name,
            "seifert_matrix": self.seifert_matrix.to_json() if self.seifert_matrix else None,
            "alexander": self.alexander.to_terms() if self.alexander is not None else None,
            "sigma": self.sigma,
            "arf": self.arf,
            "invariants": self.invariants.to_json(),
            "provenance": dict(sorted(self.provenance.items())),
        }

    @classmethod
    def from_json(cls, obj) -> "KnotRecord":
        return cls(
            name=obj["name"],
            seifert_matrix=(SeifertMatrix.from_json(obj["seifert_matrix"])
                            if obj.get("seifert_matrix") else None),
            alexander=(LaurentPoly.from_terms(obj["alexander"])
                       if obj.get("alexander") is not None else None),
            invariants=CompanionInvariants.from_json(obj.get("invariants") or {}),
            sigma=obj.get("sigma"),
            arf=obj.get("arf"),
            provenance=dict(obj.get("provenance") or {}),
        )


class KnotStore:
    """Name-keyed collection of validated knot records."""

    def __init__(self):
        self._records: dict[str, KnotRecord] = {}

    def add(self, record: KnotRecord) -> KnotRecord:
        if record.name in self._records:
            raise DuplicateKnotError(f"duplicate knot name {record.name!r}")
        record.validate()
        self._records[record.name] = record
        return record

    def lookup(self, name: str) -> KnotRecord:
        try:
            return self._records[name]
        except KeyError:
            raise UnknownKnotError(f"unknown knot {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._records

    def __len__(self):
        return len(self._records)

    def names(self) -> list[str]:
        return sorted(self._records)

    def records(self) -> list[KnotRecord]:
        return [self._records[n] for n in self.names()]

    def __eq__(self, other):
        if isinstance(other, KnotStore):
            return self._records == other._records
        return NotImplemented


def seed_table() -> KnotStore:
    """Built-in records: unknot, the trefoil 3_1, the figure-eight 4_1, and 6_1.

    Matrix conventions follow sigma(3_1) = -2 (the right-handed trefoil in
    the convention where the positive torus knot has negative signature, so
    tau(3_1) = 1).  Stored values are re-validated against the matrices at
    construction.
    """
    store = KnotStore()
    zero_ups = PLFunction.zero()
    store.add(KnotRecord(
        name="unknot",
        seifert_matrix=SeifertMatrix([]),
        invariants=CompanionInvariants(
            tau=0, epsilon=0, nu=0, s=0,
            g4=Interval(0, 0), g3=Interval(0, 0),
            gamma4=Interval(1, 1), upsilon=zero_ups),
        provenance={"seifert_matrix": "table", "tau": "table", "epsilon": "table",
                    "nu": "table", "s": "table", "g4": "table", "g3": "table",
                    "gamma4": "table", "upsilon": "table"},
    ))
    store.add(KnotRecord(
        name="3_1",
        seifert_matrix=SeifertMatrix([[-1, 1], [0, -1]]),
        sigma=-2,
        arf=1,
        invariants=CompanionInvariants(
            tau=1, epsilon=1, nu=1, s=-2,
            g4=Interval(1, 1), g3=Interval(1, 1), gamma4=Interval(1, 1),
            upsilon=PLFunction([(0, 0), (1, -1), (2, 0)])),
        provenance={"seifert_matrix": "table", "sigma": "computed", "arf": "computed",
                    "tau": "table", "epsilon": "table", "nu": "table", "s": "table",
                    "g4": "table", "g3": "table", "gamma4": "table", "upsilon": "table"},
    ))
    store.add(KnotRecord(
        name="4_1",
        seifert_matrix=SeifertMatrix([[1, 1], [0, -1]]),
        sigma=0,
        arf=1,
        invariants=CompanionInvariants(
            tau=0, epsilon=0, nu=0, s=0,
            g4=Interval(1, 1), g3=Interval(1, 1), gamma4=Interval(2, 2),
            upsilon=zero_ups),
        provenance={"seifert_matrix": "table", "sigma": "computed", "arf": "computed",
                    "tau": "table", "epsilon": "table", "nu": "table", "s": "table",
                    "g4": "table", "g3": "table", "gamma4": "table", "upsilon": "table"},
    ))
    store.add(KnotRecord(
        name="6_1",
        alexander=LaurentPoly({1: 2, 0: -5, -1: 2}),
        sigma=0,
        arf=0,
        invariants=CompanionInvariants(
            tau=0, epsilon=0, nu=0, s=0,
            g4=Interval(0, 0), g3=Interval(1, 1), upsilon=zero_ups),
        provenance={"alexander": "table", "sigma": "table", "arf": "table",
                    "tau": "table", "epsilon": "table", "nu": "table", "s": "table",
                    "g4": "table", "g3": "table", "upsilon": "table"},
    ))
    return store


# ---------------------------------------------------------------------------
# the Whitehead double pipeline


def whitehead_double_record(params: WhiteheadParams, companion: KnotRecord) -> KnotRecord:
    """Assemble the knot record of a twisted Whitehead double of a companion.

    Everything the formula engine can state is filled in: the closed-form
    Alexander polynomial always; the Seifert matrix, signature and Arf only
    outside the half-twist regime; tau/epsilon/Upsilon when the companion
    carries tau (and epsilon).  Only the theorem's upper genus bounds are
    stored, so the obstruction engine re-derives the lower bounds from
    (sigma, Arf) on its own.
    """
    inv = companion.invariants
    half = params.half_twist_regime
    matrix = None if half else _wh.seifert_matrix(params)
    sigma = None if half else _wh.sigma_whitehead(params)
    arf_val = None if half else _wh.arf_whitehead(params)
    delta = _wh.alexander_formula(params)

    tau_d = epsilon_d = ups = None
    if inv.tau is not None:
        tau_d = _wh.tau_whitehead(params, inv)
        ups = _wh.upsilon_whitehead(params, inv)
        if inv.epsilon is not None:
            epsilon_d = _wh.epsilon_whitehead(params, inv)

    theorem_bounds = _wh.gamma4_whitehead(params)
    gamma4_upper = (Interval(1, theorem_bounds.gamma4.hi)
                    if theorem_bounds.gamma4 and theorem_bounds.gamma4.hi is not None
                    else None)

    provenance = {"alexander": "computed"}
    if matrix is not None:
        provenance.update(seifert_matrix="computed", sigma="computed", arf="computed")
    tag = "computed" if params.clasp == "+" else "reconstructed"
    if tau_d is not None:
        provenance.update(tau=tag, upsilon="computed")
    if epsilon_d is not None:
        provenance["epsilon"] = tag
    if gamma4_upper is not None:
        provenance["gamma4"] = "paper"
        provenance["gamma3"] = "paper"

    record = KnotRecord(
        name=params.label,
        seifert_matrix=matrix,
        alexander=delta,
        sigma=sigma,
        arf=arf_val,
        invariants=CompanionInvariants(
            tau=tau_d, epsilon=epsilon_d, upsilon=ups,
            gamma4=gamma4_upper, gamma3=theorem_bounds.gamma3
            if theorem_bounds.gamma3 and theorem_bounds.gamma3.hi is not None else None),
        provenance=provenance,
    )
    return record.validate()


# ---------------------------------------------------------------------------
# CSV ingestion

_CSV_FIELDS = ("name", "seifert", "alexander", "signature", "arf", "tau", "epsilon",
               "nu", "s", "g4", "gamma4", "g3", "gamma3")


def _parse_interval(text: str) -> Interval:
    value = json.loads(text)
    return Interval.from_json(value)


_CELL_PARSERS = {
    "seifert": lambda s: SeifertMatrix.from_json(json.loads(s)),
    "alexander": lambda s: LaurentPoly.from_terms(json.loads(s)),
    "signature": int,
    "arf": int,
    "tau": int,
    "epsilon": int,
    "nu": int,
    "s": int,
    "g4": _parse_interval,
    "gamma4": _parse_interval,
    "g3": _parse_interval,
    "gamma3": _parse_interval,
}


def ingest_csv(store: KnotStore, path, column_mapping: dict[str, str]):
    """Read an invariant table into the store.

    column_mapping maps record fields (name, seifert, alexander, signature,
    arf, tau, epsilon, nu, s, g4, gamma4, g3, gamma3) to CSV header names;
    nothing is inferred.  Unparseable cells become absent fields and a
    diagnostic; a stored value contradicting a computed one raises
    InconsistentRecordError.  Returns (added record names, diagnostics).
    """
    unknown = set(column_mapping) - set(_CSV_FIELDS)
    if unknown:
        raise ValueError(f"unknown fields in column mapping: {sorted(unknown)}")
    if "name" not in column_mapping:
        raise ValueError("column mapping must include the 'name' field")

    added: list[str] = []
    diagnostics: list[str] = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise ValueError(f"{path}: missing header row")
        missing = [col for col in column_mapping.values() if col not in reader.fieldnames]
        if missing:
            raise ValueError(f"{path}: mapped columns not in header: {missing}")
        for row_num, row in enumerate(reader, start=2):
            values = {}
            provenance = {}
            for fieldname, column in column_mapping.items():
                cell = (row.get(column) or "").strip()
                if not cell:
                    continue
                if fieldname == "name":
                    values["name"] = cell
                    continue
                try:
                    values[fieldname] = _CELL_PARSERS[fieldname](cell)
                    provenance[fieldname] = "table"
                except (ValueError, TypeError, KeyError) as exc:
                    diagnostics.append(
                        f"row {row_num}: {fieldname}: unparseable cell {cell!r} ({exc})")
            name = values.get("name")
            if not name:
                diagnostics.append(f"row {row_num}: skipped, no name")
                continue
            record = KnotRecord(
                name=name,
                seifert_matrix=values.get("seifert"),
                alexander=values.get("alexander"),
                sigma=values.get("signature"),
                arf=values.get("arf"),
                invariants=CompanionInvariants(
                    tau=values.get("tau"), epsilon=values.get("epsilon"),
                    nu=values.get("nu"), s=values.get("s"),
                    g4=values.get("g4"), gamma4=values.get("gamma4"),
                    g3=values.get("g3"), gamma3=values.get("gamma3")),
                provenance=provenance,
            )
            store.add(record)
            added.append(name)
    return added, diagnostics


# ---------------------------------------------------------------------------
# persistence


def save(store: KnotStore, path) -> None:
    """Write the store as one JSON document (deterministic byte output)."""
    doc = {
        "format_version": FORMAT_VERSION,
        "records": [r.to_json() for r in store.records()],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def load(path) -> KnotStore:
    """Read a store written by save(); duplicate names are an error."""
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise ValueError(f"unsupported store format_version {version!r}")
    store = KnotStore()
    for obj in doc.get("records", []):
        store.add(KnotRecord.from_json(obj))
    return store
