"""Sweep configuration and the verification harness.

``verify`` walks every catalog spec inside the configured bounds, runs the
full describe pipeline, and aggregates each named cross-check into a
pass/fail count.  Global identities that are not per-spec (the Eisenstein
cotangent identity, the Hirzebruch-Jung round trip, the three eigenvalue
tables, the blow-up-count spot values) are checked once per sweep.  The
summary's exit code is 0 exactly when no check failed; partial results are
still written when an output directory is set.
"""

from __future__ import annotations

import json
import math
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterator

from .catalog import (Family, GroupSpec, canonical_cyclic, enumerate_group,
                      eigenvalue_histogram, is_fixed_point_free)
from .errors import InvalidParameters, U2SingError
from .hj import cf_value, hj_string
from .invariants import eisenstein_check
from .report import InvariantReport, describe, report_to_dict
from .resolution import compactification

ALL_FAMILIES = tuple(Family)


@dataclass
class SweepConfig:
    families: tuple[Family, ...] = ALL_FAMILIES
    m_max: int = 120
    n_max: int = 24
    p_max: int = 200
    hj_p_max: int = 500
    eisenstein_n_max: int = 200
    tolerance: float = 1e-6
    eta: dict[str, Fraction] = field(default_factory=dict)
    out_dir: str | None = None

    def validate(self) -> "SweepConfig":
        if min(self.m_max, self.n_max, self.p_max) < 1:
            raise InvalidParameters("sweep bounds must be positive")
        if not (0.0 < self.tolerance <= 1e-3):
            raise InvalidParameters("tolerance must lie in (0, 1e-3]")
        return self


def specs_in_sweep(config: SweepConfig) -> Iterator[GroupSpec]:
    """All valid specs within the bounds, cyclic groups last."""
    fams = set(config.families)
    if Family.DIHEDRAL in fams:
        for n in range(1, config.n_max + 1):
            for m in range(1, config.m_max + 1, 2):
                if math.gcd(m, 2 * n) == 1:
                    yield GroupSpec.dihedral(m, n)
    if Family.INDEX2 in fams:
        for n in range(1, config.n_max + 1):
            for m in range(2, config.m_max + 1, 2):
                if math.gcd(m, n) == 1:
                    yield GroupSpec.index2(m, n)
    if Family.TETRAHEDRAL in fams:
        for m in range(1, config.m_max + 1):
            if math.gcd(m, 6) == 1:
                yield GroupSpec.tetrahedral(m)
    if Family.OCTAHEDRAL in fams:
        for m in range(1, config.m_max + 1):
            if math.gcd(m, 6) == 1:
                yield GroupSpec.octahedral(m)
    if Family.ICOSAHEDRAL in fams:
        for m in range(1, config.m_max + 1):
            if math.gcd(m, 30) == 1:
                yield GroupSpec.icosahedral(m)
    if Family.INDEX3 in fams:
        for m in range(3, config.m_max + 1, 6):
            yield GroupSpec.index3(m)
    if Family.CYCLIC in fams:
        for p in range(2, config.p_max + 1):
            for q in range(1, p):
                if math.gcd(q, p) == 1:
                    yield GroupSpec.cyclic(q, p)


@dataclass
class VerifySummary:
    counts: Counter = field(default_factory=Counter)        # (check, passed) -> n
    failures: list[tuple[str, str, str]] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    specs_processed: int = 0
    enumeration_seconds: float = 0.0
    max_deformation_seconds: float = 0.0
    total_seconds: float = 0.0

    def record(self, spec_label: str, name: str, passed: bool, detail: str) -> None:
        self.counts[(name, passed)] += 1
        if not passed:
            self.failures.append((spec_label, name, detail))

    def record_report(self, report: InvariantReport) -> None:
        for c in report.checks:
            self.record(report.spec.label(), c.name, c.passed, c.detail)

    @property
    def exit_code(self) -> int:
        return 0 if not self.failures else 1

    def check_names(self) -> list[str]:
        return sorted({name for name, _ in self.counts})

    def passed_failed(self, name: str) -> tuple[int, int]:
        return self.counts[(name, True)], self.counts[(name, False)]

    def format_text(self) -> str:
        lines = [f"specs processed: {self.specs_processed}",
                 f"enumeration time: {self.enumeration_seconds:.2f}s, "
                 f"total: {self.total_seconds:.2f}s"]
        for name in self.check_names():
            ok, bad = self.passed_failed(name)
            status = "ok" if bad == 0 else "FAIL"
            lines.append(f"  {name:34s} {ok:6d} passed {bad:4d} failed   [{status}]")
        for w in self.warnings:
            lines.append(f"warning: {w}")
        lines.append(f"exit status: {self.exit_code}")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# Global (sweep-level) identities
# ---------------------------------------------------------------------------

_TABLE_T = {("0", "0"): 1, ("1/2", "1/2"): 1, ("1/4", "3/4"): 6,
            ("1/6", "5/6"): 8, ("1/3", "2/3"): 8}
_TABLE_O = {("0", "0"): 1, ("1/2", "1/2"): 1, ("1/4", "3/4"): 18,
            ("1/6", "5/6"): 8, ("1/3", "2/3"): 8,
            ("1/8", "7/8"): 6, ("3/8", "5/8"): 6}
_TABLE_I = {("0", "0"): 1, ("1/2", "1/2"): 1, ("1/4", "3/4"): 30,
            ("1/6", "5/6"): 20, ("1/3", "2/3"): 20,
            ("1/10", "9/10"): 12, ("1/5", "4/5"): 12,
            ("3/10", "7/10"): 12, ("2/5", "3/5"): 12}


def check_eigenvalue_tables(summary: VerifySummary) -> None:
    """Tables of eigenvalue multiplicities for the three exceptional binary
    polyhedral groups, entry for entry."""
    for spec, table in ((GroupSpec.tetrahedral(1), _TABLE_T),
                        (GroupSpec.octahedral(1), _TABLE_O),
                        (GroupSpec.icosahedral(1), _TABLE_I)):
        hist = eigenvalue_histogram(enumerate_group(spec))
        got = {(str(a), str(b)): c for (a, b), c in hist.items()}
        summary.record(spec.label(), "eigenvalue_tables", got == table,
                       f"got {got}")


def check_eisenstein(summary: VerifySummary, n_max: int, tol: float) -> None:
    worst, at = 0.0, (0, 0)
    for n in range(2, n_max + 1):
        for k in range(0, 2 * n + 1):
            r = eisenstein_check(n, k)
            if r > worst:
                worst, at = r, (n, k)
    summary.record("global", "eisenstein_identity", worst < tol,
                   f"worst residual {worst:.3e} at (n,k)={at}")


def check_hj_roundtrip(summary: VerifySummary, p_max: int) -> None:
    """cf_value . hj_string is the identity on coprime pairs; entries >= 2;
    reversing the string inverts the residue (checked exactly)."""
    ok = True
    detail = ""
    for p in range(2, p_max + 1):
        strings = {q: hj_string(canonical_cyclic(q, p))
                   for q in range(1, p) if math.gcd(q, p) == 1}
        for q, s in strings.items():
            if any(e < 2 for e in s.entries) or cf_value(s) != Fraction(q, p):
                ok, detail = False, f"round trip failed at L({q},{p})"
                break
            if s.reversed() != strings[pow(q, -1, p)].entries:
                ok, detail = False, f"reversal duality failed at L({q},{p})"
                break
        if not ok:
            break
    summary.record("global", "hj_round_trip_sweep", ok, detail)


def check_kappa_spots(summary: VerifySummary) -> None:
    for spec, expected in ((GroupSpec.dihedral(1, 2), 7),
                           (GroupSpec.dihedral(1, 3), 8),
                           (GroupSpec.index2(2, 3), 8)):
        kappa = compactification(spec).kappa
        summary.record(spec.label(), "kappa_spot_values", kappa == expected,
                       f"kappa = {kappa}, expected {expected}")


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def verify(config: SweepConfig) -> VerifySummary:
    config.validate()
    summary = VerifySummary()
    t_start = time.monotonic()
    out_dir = Path(config.out_dir) if config.out_dir else None
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)

    for spec in specs_in_sweep(config):
        summary.specs_processed += 1
        t0 = time.monotonic()
        group = enumerate_group(spec)
        order_ok = group.order == spec.expected_order()
        free_ok = is_fixed_point_free(group, config.tolerance)
        summary.enumeration_seconds += time.monotonic() - t0

        eta = config.eta.get(spec.key())
        t1 = time.monotonic()
        try:
            report = describe(spec, eta=eta, tolerance=config.tolerance,
                              group=group)
            summary.record_report(report)
        except U2SingError as exc:
            summary.record(spec.label(), "describe", False, str(exc))
            report = None
        if not spec.is_cyclic and not spec.is_degenerate_cyclic:
            summary.max_deformation_seconds = max(
                summary.max_deformation_seconds, time.monotonic() - t1)
        # order/freeness verdicts were recomputed inside describe; keep the
        # timed phase-1 result authoritative for the summary counters too.
        if report is None:
            summary.record(spec.label(), "order_matches_table", order_ok, "")
            summary.record(spec.label(), "fixed_point_free", free_ok, "")
        if out_dir is not None and report is not None:
            path = out_dir / f"{spec.key()}.json"
            path.write_text(json.dumps(report_to_dict(report), indent=1))

    if summary.specs_processed == 0:
        summary.warnings.append("no spec matched the sweep filters; "
                                "all checks pass vacuously")
    else:
        check_eigenvalue_tables(summary)
        check_eisenstein(summary, config.eisenstein_n_max, config.tolerance)
        check_hj_roundtrip(summary, config.hj_p_max)
        check_kappa_spots(summary)

    summary.total_seconds = time.monotonic() - t_start
    return summary


# ---------------------------------------------------------------------------
# Flat key=value config files
# ---------------------------------------------------------------------------

def parse_fraction(text: str) -> Fraction:
    return Fraction(text.strip())


def parse_config_file(path: str | Path) -> dict:
    """Flat ``key = value`` lines; '#' starts a comment.  Recognized keys
    match the CLI flags; ``eta.<spec_key>`` entries build the eta table."""
    values: dict = {}
    eta: dict[str, Fraction] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidParameters(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key.startswith("eta."):
            eta[key[4:]] = parse_fraction(value)
        else:
            values[key] = value
    if eta:
        values["eta"] = eta
    return values


def config_from_mapping(values: dict) -> SweepConfig:
    config = SweepConfig()
    if "families" in values:
        raw = values["families"]
        names = raw.split(",") if isinstance(raw, str) else raw
        config.families = tuple(Family(x.strip()) for x in names)
    for key in ("m_max", "n_max", "p_max", "hj_p_max", "eisenstein_n_max"):
        if key in values:
            setattr(config, key, int(values[key]))
    if "tolerance" in values:
        config.tolerance = float(values["tolerance"])
    if "out" in values and values["out"]:
        config.out_dir = str(values["out"])
    if "eta" in values:
        config.eta = dict(values["eta"])
    return config.validate()
