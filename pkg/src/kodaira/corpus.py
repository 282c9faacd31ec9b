"""Corpus ingestion, batch verification and machine-readable reports."""

from __future__ import annotations

import datetime as _dt
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from . import __version__
from .curve_core import INFINITY, DomainError, WeierstrassModel, format_rational, to_rational
from .factor import FactorizationError
from .local_reduction import KodairaType, LocalReductionData, bad_primes, tate_local_data
from .theorems import ComplianceReport, verdict

log = logging.getLogger(__name__)

__all__ = [
    "CurveRecord",
    "ScanReport",
    "bad_primes",
    "local_data_json",
    "parse_corpus",
    "report_json",
    "run_scan",
    "scan_record",
]

STATUSES = ("compliant", "violation", "not-applicable", "parse-error", "error", "mismatch")
_SUMMARY_KEY = {
    "compliant": "compliant",
    "violation": "violations",
    "not-applicable": "not_applicable",
    "parse-error": "parse_errors",
    "error": "errors",
    "mismatch": "mismatches",
}


@dataclass(frozen=True)
class CurveRecord:
    id: str
    a_invariants: tuple[str, ...] = ()
    asserted_ell: int | None = None
    expected: dict[int, str] = field(default_factory=dict)
    line: int = 0
    error: str | None = None

    def model(self) -> WeierstrassModel:
        return WeierstrassModel.from_ainvs(self.a_invariants)


def _exact_string(x, what: str) -> str:
    if isinstance(x, bool) or isinstance(x, float):
        raise ValueError(f"{what}: {x!r} is not an exact rational")
    if isinstance(x, int):
        return str(x)
    if isinstance(x, str):
        to_rational(x)
        return x.strip()
    raise ValueError(f"{what}: {x!r} is not an exact rational")


def _parse_ell(x) -> int | None:
    if x is None or x == "":
        return None
    if isinstance(x, bool) or isinstance(x, float):
        raise ValueError(f"ell must be an integer, got {x!r}")
    return int(x)


def _record_from_obj(obj, lineno: int) -> CurveRecord:
    if not isinstance(obj, dict):
        raise ValueError("expected a JSON object")
    ainvs = obj.get("a_invariants")
    if not isinstance(ainvs, list) or len(ainvs) != 5:
        raise ValueError("a_invariants must be a list of 5 exact rationals")
    ainvs = tuple(_exact_string(a, f"a_invariants[{i}]") for i, a in enumerate(ainvs))
    ell = _parse_ell(obj.get("asserted_ell", obj.get("ell")))
    expected_raw = obj.get("expected") or {}
    if not isinstance(expected_raw, dict):
        raise ValueError("expected must map primes to Kodaira symbols")
    expected = {}
    for p, sym in expected_raw.items():
        KodairaType.parse(sym)
        expected[int(p)] = sym
    return CurveRecord(str(obj.get("id", f"line-{lineno}")), ainvs, ell, expected, lineno)


def _split_tsv(line: str) -> list[str]:
    return line.rstrip("\r\n").split("\t") if "\t" in line else line.split()


def parse_corpus(lines: Iterable[str]) -> list[CurveRecord]:
    """Records from JSON-lines or a TSV with header ``id a1 a2 a3 a4 a6 [ell]``.

    Bad lines become records with ``error`` set; parsing never stops early.
    Blank lines and lines starting with ``#`` are skipped.
    """
    records: list[CurveRecord] = []
    fmt = None
    header: list[str] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if fmt is None:
            if line.startswith("{"):
                fmt = "jsonl"
            else:
                fmt = "tsv"
                header = [h.strip().lower() for h in _split_tsv(raw)]
                if header[:6] != ["id", "a1", "a2", "a3", "a4", "a6"]:
                    records.append(CurveRecord(f"line-{lineno}", line=lineno, error="bad TSV header"))
                    fmt = "tsv-broken"
                continue
        if fmt == "tsv-broken":
            records.append(CurveRecord(f"line-{lineno}", line=lineno, error="no valid TSV header"))
            continue
        try:
            if fmt == "jsonl":
                records.append(_record_from_obj(json.loads(line), lineno))
            else:
                cells = _split_tsv(raw)
                if len(cells) < 6 or len(cells) > len(header):
                    raise ValueError(f"expected {len(header)} columns, got {len(cells)}")
                row = dict(zip(header, cells))
                ainvs = tuple(_exact_string(row[k], k) for k in ("a1", "a2", "a3", "a4", "a6"))
                records.append(CurveRecord(row["id"], ainvs, _parse_ell(row.get("ell")), {}, lineno))
        except (ValueError, ZeroDivisionError, TypeError) as exc:
            rid = f"line-{lineno}"
            if fmt == "jsonl":
                try:
                    rid = str(json.loads(line).get("id", rid))
                except (ValueError, AttributeError):
                    pass
            records.append(CurveRecord(rid, line=lineno, error=f"parse error: {exc}"))
    return records


def _val_json(v):
    return "inf" if v is INFINITY else v


def local_data_json(d: LocalReductionData) -> dict:
    return {
        "p": d.p,
        "kodaira": str(d.kodaira),
        "conductor_exponent": d.conductor_exponent,
        "tamagawa": d.tamagawa,
        "v_delta_min": d.v_delta_min,
        "v_c4_min": _val_json(d.v_c4_min),
        "reduction": d.reduction.reduction.value,
        "potential": d.reduction.potential.value,
        "minimal_model": d.minimal_model.ainvs_str(),
        "change": d.change.as_strings(),
    }


def report_json(r: ComplianceReport) -> dict:
    return {
        "id": r.curve_id,
        "a_invariants": r.model.ainvs_str(),
        "j": format_rational(r.j),
        "conductor": r.conductor,
        "detected_ells": list(r.detected_ells),
        "asserted_ell": r.asserted_ell,
        "twist_d": r.twist_d,
        "notes": list(r.notes),
        "primes": [
            {**local_data_json(pr.local), "verdicts": [v.to_json() for v in pr.verdicts]}
            for pr in r.per_prime
        ],
    }


def scan_record(rec: CurveRecord) -> dict:
    """One report entry; never raises on bad curves."""
    if rec.error is not None:
        return {"id": rec.id, "line": rec.line, "status": "parse-error", "error": rec.error}
    try:
        model = rec.model()
        report = verdict(model, rec.asserted_ell, rec.id)
    except (DomainError, FactorizationError, ArithmeticError) as exc:
        return {"id": rec.id, "line": rec.line, "status": "error", "error": str(exc)}
    entry = {"line": rec.line, **report_json(report)}
    mismatches = []
    if rec.expected:
        types = {pr.p: str(pr.local.kodaira) for pr in report.per_prime}
        for p, sym in sorted(rec.expected.items()):
            got = types.get(p)
            if got is None:
                got = str(tate_local_data(model, p).kodaira)
            if KodairaType.parse(sym) != KodairaType.parse(got):
                mismatches.append({"p": p, "expected": sym, "observed": got})
        entry["expected_mismatches"] = mismatches
    violations = report.violations()
    if violations:
        status = "violation"
    elif mismatches:
        status = "mismatch"
    elif report.has_applicable:
        status = "compliant"
    else:
        status = "not-applicable"
    entry["status"] = status
    entry["violations"] = [f"{v.rule_id}@{v.p}" for v in violations]
    return entry


@dataclass
class ScanReport:
    entries: list[dict]
    tool_version: str = __version__
    generated_at: str | None = None

    @property
    def summary(self) -> dict[str, int]:
        counts = {key: 0 for key in _SUMMARY_KEY.values()}
        for e in self.entries:
            counts[_SUMMARY_KEY[e["status"]]] += 1
        return counts

    @property
    def exit_code(self) -> int:
        s = self.summary
        return 1 if s["violations"] or s["mismatches"] else 0

    def to_json(self) -> dict:
        out = {"tool_version": self.tool_version, "summary": self.summary, "entries": self.entries}
        if self.generated_at is not None:
            out["generated_at"] = self.generated_at
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False) + "\n"

    def tsv_rows(self) -> Iterator[list[str]]:
        yield ["id", "status", "p", "kodaira", "f", "c", "v_delta_min", "violations"]
        for e in self.entries:
            if "primes" not in e:
                yield [e["id"], e["status"], "", "", "", "", "", e.get("error", "")]
                continue
            for pr in e["primes"]:
                bad = [f"{v['rule']}" for v in pr["verdicts"] if v["applicable"] and not v["compliant"]]
                yield [
                    e["id"],
                    e["status"],
                    str(pr["p"]),
                    pr["kodaira"],
                    str(pr["conductor_exponent"]),
                    str(pr["tamagawa"]),
                    str(pr["v_delta_min"]),
                    ",".join(bad),
                ]

    def dumps_tsv(self) -> str:
        return "".join("\t".join(row) + "\n" for row in self.tsv_rows())


def run_scan(records: list[CurveRecord], jobs: int = 1, timestamps: bool = False) -> ScanReport:
    """Verify every record; entry order follows input order for any ``jobs``."""
    if jobs > 1 and len(records) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            entries = list(pool.map(scan_record, records, chunksize=max(1, len(records) // (4 * jobs))))
    else:
        entries = [scan_record(r) for r in records]
    log.debug("scanned %d records", len(entries))
    stamp = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds") if timestamps else None
    return ScanReport(entries, generated_at=stamp)
