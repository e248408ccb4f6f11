"""Invariant reports: one structure per group with every cross-check verdict.

``describe`` runs the whole pipeline for one spec -- enumeration, freeness,
singularity types by both routes, the two derivations of the central weight,
resolution and compactification graphs, the deformation dimensions, and the
topology fields -- and records a pass/fail verdict for each identity.  A
failed cross-check never disappears: it becomes a failing entry in
``report.checks`` (and downstream sections that depend on it are omitted).

Serialization is stable-keyed JSON; integers are bit-exact and rationals are
``{"num": int, "den": int}``.  ``report_from_json(report_to_json(r))``
reproduces the report field-for-field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .catalog import (CyclicType, Family, FiniteGroup, GroupSpec,
                      canonical_cyclic, cyclic_equivalent_type,
                      enumerate_gamma_prime, enumerate_group,
                      is_fixed_point_free)
from .errors import InvalidParameters, U2SingError
from .hj import cf_value, hj_string
from .invariants import (DeformationReport, TopologyReport, dim_h1_theta,
                         dim_sfk, moduli_dim, topology_report)
from .resolution import (BGamma, CompactificationData, CurveConfiguration,
                         PlumbingGraph, b_gamma, compactification,
                         graph_to_dot, resolution_graph, seifert_euler,
                         singularity_triple, table_singularities)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class CompactificationSection:
    b_prime: int
    b_prime_positive: bool
    seifert_value: Fraction
    lattice_candidates: tuple[int, ...]
    kappa: int
    dual_strings: tuple[tuple[int, ...], ...]
    star: PlumbingGraph
    configuration_determinant: int
    configuration_signature: tuple[int, int]


@dataclass(frozen=True)
class InvariantReport:
    spec: GroupSpec
    order: int
    degenerate_cyclic: bool
    singularities: tuple[CyclicType, ...] | None
    conjugate_equivalence_used: bool | None
    hj_strings: tuple[tuple[int, ...], ...]
    hj_lengths: tuple[int, ...]
    b_gamma: int | None
    b_gamma_rational: Fraction | None
    k_gamma: int
    signature: int
    chi: int
    resolution: PlumbingGraph
    compactification: CompactificationSection | None
    deformations: DeformationReport | None
    moduli_dim: int | None
    h1_theta: int
    topology: TopologyReport | None
    checks: tuple[CheckResult, ...] = field(default=())

    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def configuration(self) -> CurveConfiguration | None:
        if self.compactification is None:
            return None
        return CurveConfiguration(self.resolution, self.compactification.star)


# ---------------------------------------------------------------------------
# describe
# ---------------------------------------------------------------------------

def describe(spec: GroupSpec,
             eta: Fraction | None = None,
             tolerance: float = 1e-6,
             group: FiniteGroup | None = None) -> InvariantReport:
    """Full invariant report for one spec; raises only on invalid input."""
    spec.validate()
    if spec.is_cyclic and spec.p == 1:
        raise InvalidParameters("the trivial group has no singularity to resolve")
    checks: list[CheckResult] = []

    if group is None:
        group = enumerate_group(spec)
    order_ok = group.order == spec.expected_order()
    checks.append(CheckResult(
        "order_matches_table", order_ok,
        f"enumerated {group.order}, expected {spec.expected_order()}"))
    free = is_fixed_point_free(group, tolerance)
    checks.append(CheckResult(
        "fixed_point_free", free,
        f"{group.eigenvalue_one_count(tolerance)} element(s) with eigenvalue 1"))

    if spec.is_cyclic or spec.is_degenerate_cyclic:
        return _describe_cyclic(spec, group, checks)
    return _describe_noncyclic(spec, group, eta, tolerance, checks)


def _describe_cyclic(spec: GroupSpec, group: FiniteGroup,
                     checks: list[CheckResult]) -> InvariantReport:
    degenerate = spec.is_degenerate_cyclic
    if degenerate:
        t = cyclic_equivalent_type(group)
        checks.append(CheckResult(
            "degenerate_cyclic_flag", t is not None,
            f"n = 1: group is cyclic, equivalent to {t}"))
        if t is None:
            raise U2SingError(f"{spec.label()} flagged degenerate but not cyclic")
    else:
        t = canonical_cyclic(spec.q, spec.p)
    s = hj_string(t)
    rd = resolution_graph(GroupSpec.cyclic(t.alpha, t.beta))
    roundtrip = cf_value(s) == Fraction(t.alpha, t.beta) if s.length else True
    checks.append(CheckResult("hj_round_trip", roundtrip,
                              f"string {list(s.entries)} for {t}"))
    checks.append(CheckResult("resolution_negative_definite",
                              rd.graph.is_negative_definite(), ""))
    return InvariantReport(
        spec=spec, order=group.order, degenerate_cyclic=degenerate,
        singularities=(t,), conjugate_equivalence_used=None,
        hj_strings=(s.entries,), hj_lengths=(s.length,),
        b_gamma=None, b_gamma_rational=None,
        k_gamma=rd.k_gamma, signature=rd.tau, chi=1 + rd.k_gamma,
        resolution=rd.graph, compactification=None, deformations=None,
        moduli_dim=None, h1_theta=dim_h1_theta(rd.graph),
        topology=None, checks=tuple(checks))


def _describe_noncyclic(spec: GroupSpec, group: FiniteGroup,
                        eta: Fraction | None, tolerance: float,
                        checks: list[CheckResult]) -> InvariantReport:
    m, h = spec.m, spec.pgl_image_order()

    triple = None
    conj_used = None
    try:
        trip = singularity_triple(spec, group)
        triple = trip.types
        conj_used = trip.conjugate_equivalence_used
        checks.append(CheckResult(
            "singularity_table_agreement", True,
            f"{tuple(map(str, triple))}, conjugate_equivalence_used={conj_used}"))
    except U2SingError as exc:
        checks.append(CheckResult("singularity_table_agreement", False,
                                  f"resolution_geometry: {exc}"))
        triple = table_singularities(spec)

    b: BGamma | None = None
    try:
        b = b_gamma(spec, triple)
        checks.append(CheckResult(
            "b_gamma_double_derivation", True,
            f"integer {b.value} == rational {b.rational}"))
    except U2SingError as exc:
        checks.append(CheckResult("b_gamma_double_derivation", False,
                                  f"resolution_geometry: {exc}"))

    rd = resolution_graph(spec, triple, b) if b is not None else None
    comp: CompactificationData | None = None
    deform: DeformationReport | None = None
    comp_section = None
    mod_dim = None
    topo = None

    if rd is not None:
        checks.append(CheckResult(
            "hj_round_trip",
            all(cf_value(s) == Fraction(s.source.alpha, s.source.beta)
                for s in rd.strings), ""))
        checks.append(CheckResult(
            "resolution_negative_definite", rd.graph.is_negative_definite(),
            f"k_gamma={rd.k_gamma}"))
        checks.append(CheckResult(
            "tau_equals_minus_k", rd.tau == -rd.k_gamma, ""))
        euler = seifert_euler(rd.graph)
        checks.append(CheckResult(
            "seifert_euler_calibration", euler == Fraction(-2 * m, h),
            f"e = {euler}, -2m/h = {Fraction(-2 * m, h)}"))

        try:
            comp = compactification(spec, rd, b)
            cfg = comp.configuration
            checks.append(CheckResult(
                "kappa_curve_count", cfg.vertex_count == comp.kappa + 1,
                f"kappa={comp.kappa}, curves={cfg.vertex_count}"))
            checks.append(CheckResult(
                "b_prime_unique", True,
                f"b'={comp.b_prime.value}, seifert target {comp.b_prime.seifert_value}, "
                f"lattice candidates {list(comp.b_prime.lattice_candidates)}"))
            checks.append(CheckResult(
                "b_prime_signature",
                cfg.signature() == (1, comp.kappa),
                f"signature {cfg.signature()}"))
            comp_section = CompactificationSection(
                b_prime=comp.b_prime.value,
                b_prime_positive=comp.b_prime.positive,
                seifert_value=comp.b_prime.seifert_value,
                lattice_candidates=comp.b_prime.lattice_candidates,
                kappa=comp.kappa,
                dual_strings=tuple(s.entries for s in comp.dual_strings),
                star=comp.star,
                configuration_determinant=cfg.determinant(),
                configuration_signature=cfg.signature())
        except U2SingError as exc:
            checks.append(CheckResult("b_prime_unique", False,
                                      f"resolution_geometry: {exc}"))

        try:
            gp = enumerate_gamma_prime(spec)
            deform = dim_sfk(spec, gp, b, tolerance)
            if deform.closed_forms_applicable:
                checks.append(CheckResult(
                    "deformation_triple_agreement", deform.agreement,
                    f"brute {deform.brute_force_dim}, closed {deform.closed_form_dim}, "
                    f"2b-2 {deform.two_b_minus_2}, residual {deform.residual:.2e}"))
            else:
                checks.append(CheckResult(
                    "deformation_m1_gate", deform.brute_force_dim == 0,
                    "m = 1: deformation space is zero, closed forms inapplicable"))
        except U2SingError as exc:
            checks.append(CheckResult("deformation_triple_agreement", False,
                                      f"invariants: {exc}"))

        mod_dim = moduli_dim(spec, b, rd)
        topo = topology_report(spec, eta, rd)
        if eta is not None:
            checks.append(CheckResult(
                "eta_bound", bool(topo.bound_holds),
                f"b2- = {topo.b2_minus}, bound = {topo.sfasd_bound}, "
                f"equality = {topo.bound_is_equality}"))

    return InvariantReport(
        spec=spec, order=group.order, degenerate_cyclic=False,
        singularities=triple, conjugate_equivalence_used=conj_used,
        hj_strings=tuple(s.entries for s in rd.strings) if rd else (),
        hj_lengths=tuple(s.length for s in rd.strings) if rd else (),
        b_gamma=b.value if b else None,
        b_gamma_rational=b.rational if b else None,
        k_gamma=rd.k_gamma if rd else 0,
        signature=rd.tau if rd else 0,
        chi=1 + rd.k_gamma if rd else 1,
        resolution=rd.graph if rd else PlumbingGraph(0, ()),
        compactification=comp_section,
        deformations=deform,
        moduli_dim=mod_dim,
        h1_theta=dim_h1_theta(rd.graph) if rd else 0,
        topology=topo,
        checks=tuple(checks))


# ---------------------------------------------------------------------------
# JSON serialization
# ---------------------------------------------------------------------------

def _frac(x: Fraction | None) -> dict | None:
    if x is None:
        return None
    return {"num": x.numerator, "den": x.denominator}


def _unfrac(d: dict | None) -> Fraction | None:
    if d is None:
        return None
    return Fraction(d["num"], d["den"])


def _spec_dict(spec: GroupSpec) -> dict:
    out: dict = {"family": spec.family.value}
    for name in ("m", "n", "q", "p"):
        v = getattr(spec, name)
        if v is not None:
            out[name] = v
    return out


def _spec_from(d: dict) -> GroupSpec:
    return GroupSpec(Family(d["family"]), m=d.get("m"), n=d.get("n"),
                     q=d.get("q"), p=d.get("p"))


def _graph_dict(g: PlumbingGraph) -> dict:
    return {"center": g.center, "arms": [list(a) for a in g.arms],
            "matrix": g.intersection_matrix()}


def _graph_from(d: dict) -> PlumbingGraph:
    return PlumbingGraph(d["center"], tuple(tuple(a) for a in d["arms"]))


def report_to_dict(r: InvariantReport) -> dict:
    comp = None
    if r.compactification is not None:
        c = r.compactification
        comp = {"b_prime": c.b_prime,
                "b_prime_positive": c.b_prime_positive,
                "seifert_value": _frac(c.seifert_value),
                "lattice_candidates": list(c.lattice_candidates),
                "kappa": c.kappa,
                "dual_strings": [list(s) for s in c.dual_strings],
                "star": _graph_dict(c.star),
                "configuration_determinant": c.configuration_determinant,
                "configuration_signature": list(c.configuration_signature)}
    deform = None
    if r.deformations is not None:
        d = r.deformations
        deform = {"brute": d.brute_force_dim, "closed": d.closed_form_dim,
                  "two_b_minus_2": d.two_b_minus_2, "agreement": d.agreement,
                  "residual": d.residual,
                  "applicable": d.closed_forms_applicable,
                  "gamma_prime_order": d.gamma_prime_order}
    topo = None
    if r.topology is not None:
        t = r.topology
        topo = {"k_gamma": t.k_gamma, "tau_top": t.tau_top, "chi_top": t.chi_top,
                "chi_orb": _frac(t.chi_orb), "b2_minus": t.b2_minus,
                "implied_eta": _frac(t.implied_eta), "eta": _frac(t.eta),
                "sfasd_bound": _frac(t.sfasd_bound),
                "bound_holds": t.bound_holds,
                "bound_is_equality": t.bound_is_equality}
    return {
        "spec": _spec_dict(r.spec),
        "order": r.order,
        "degenerate_cyclic": r.degenerate_cyclic,
        "singularities": None if r.singularities is None else
            [{"alpha": t.alpha, "beta": t.beta} for t in r.singularities],
        "conjugate_equivalence_used": r.conjugate_equivalence_used,
        "hj_strings": [list(s) for s in r.hj_strings],
        "hj_lengths": list(r.hj_lengths),
        "b_gamma": r.b_gamma,
        "b_gamma_rational": _frac(r.b_gamma_rational),
        "k_gamma": r.k_gamma,
        "signature": r.signature,
        "chi": r.chi,
        "resolution": _graph_dict(r.resolution),
        "compactification": comp,
        "deformations": deform,
        "moduli_dim": r.moduli_dim,
        "h1_theta": r.h1_theta,
        "topology": topo,
        "checks": [{"name": c.name, "pass": c.passed, "detail": c.detail}
                   for c in r.checks],
    }


def report_from_dict(d: dict) -> InvariantReport:
    comp = None
    if d["compactification"] is not None:
        c = d["compactification"]
        comp = CompactificationSection(
            b_prime=c["b_prime"], b_prime_positive=c["b_prime_positive"],
            seifert_value=_unfrac(c["seifert_value"]),
            lattice_candidates=tuple(c["lattice_candidates"]),
            kappa=c["kappa"],
            dual_strings=tuple(tuple(s) for s in c["dual_strings"]),
            star=_graph_from(c["star"]),
            configuration_determinant=c["configuration_determinant"],
            configuration_signature=tuple(c["configuration_signature"]))
    deform = None
    if d["deformations"] is not None:
        x = d["deformations"]
        deform = DeformationReport(
            brute_force_dim=x["brute"], closed_form_dim=x["closed"],
            two_b_minus_2=x["two_b_minus_2"], agreement=x["agreement"],
            residual=x["residual"], closed_forms_applicable=x["applicable"],
            gamma_prime_order=x["gamma_prime_order"])
    topo = None
    if d["topology"] is not None:
        t = d["topology"]
        topo = TopologyReport(
            k_gamma=t["k_gamma"], tau_top=t["tau_top"], chi_top=t["chi_top"],
            chi_orb=_unfrac(t["chi_orb"]), b2_minus=t["b2_minus"],
            implied_eta=_unfrac(t["implied_eta"]), eta=_unfrac(t["eta"]),
            sfasd_bound=_unfrac(t["sfasd_bound"]),
            bound_holds=t["bound_holds"],
            bound_is_equality=t["bound_is_equality"])
    sings = None
    if d["singularities"] is not None:
        sings = tuple(CyclicType(s["beta"], s["alpha"]) if s["beta"] > 1
                      else CyclicType(1, 0)
                      for s in d["singularities"])
    return InvariantReport(
        spec=_spec_from(d["spec"]),
        order=d["order"],
        degenerate_cyclic=d["degenerate_cyclic"],
        singularities=sings,
        conjugate_equivalence_used=d["conjugate_equivalence_used"],
        hj_strings=tuple(tuple(s) for s in d["hj_strings"]),
        hj_lengths=tuple(d["hj_lengths"]),
        b_gamma=d["b_gamma"],
        b_gamma_rational=_unfrac(d["b_gamma_rational"]),
        k_gamma=d["k_gamma"],
        signature=d["signature"],
        chi=d["chi"],
        resolution=_graph_from(d["resolution"]),
        compactification=comp,
        deformations=deform,
        moduli_dim=d["moduli_dim"],
        h1_theta=d["h1_theta"],
        topology=topo,
        checks=tuple(CheckResult(c["name"], c["pass"], c["detail"])
                     for c in d["checks"]))


def report_to_json(r: InvariantReport, indent: int | None = 2) -> str:
    return json.dumps(report_to_dict(r), indent=indent)


def report_from_json(text: str) -> InvariantReport:
    return report_from_dict(json.loads(text))


def export_dot(report: InvariantReport, which: str = "resolution") -> str:
    """DOT text of the resolution graph or the full compactified
    configuration (kappa + 1 curves)."""
    if which == "resolution":
        return graph_to_dot(report.resolution, "resolution")
    if which == "compactification":
        cfg = report.configuration()
        if cfg is None:
            raise U2SingError("report has no compactification section")
        return graph_to_dot(cfg, "compactification")
    raise ValueError(f"unknown graph {which!r}")
