"""Verification suites: brute-force results beside closed forms, as report rows."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import __version__
from . import closedforms as cf
from .classify import scan_cubic_classes
from .classnumbers import predict_smooth_enumerator, trace_range, unmatched_traces
from .codes import build_code, dual_code
from .configs import appendix_config_counts, collinear_dual_counts, collinear_dual_formulas
from .enumerators import hamming_enumerator, pair_census
from .gf import make_field
from .plane import point_order_hash
from .weights import WeightEnumerator

SUITES = ("codes", "duals", "configs", "classnumbers", "appendix")
DEFAULT_Q = {
    "codes": (3, 4, 5, 7),
    "duals": (3, 4),
    "configs": (3, 4, 5, 7),
    "classnumbers": (3, 4, 5, 7),
    "appendix": (3, 4),
}


def _s(v):
    if isinstance(v, WeightEnumerator):
        return " ".join(f"{i}:{c}" for i, c in v.nonzero().items())
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_s(x) for x in v) + "]"
    return str(v)


@dataclass
class Row:
    check: str
    q: int
    formula: object
    brute: object
    elapsed_ms: int = 0

    @property
    def ok(self):
        return self.formula == self.brute

    def to_json(self):
        return {"check": self.check, "q": str(self.q), "formula": _s(self.formula),
                "brute": _s(self.brute), "verdict": "pass" if self.ok else "fail"}


@dataclass
class Report:
    suite: str
    rows: list = field(default_factory=list)
    fields: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(r.ok for r in self.rows)

    def add(self, check, q, formula, brute, started):
        self.rows.append(Row(check, q, formula, brute, int((time.perf_counter() - started) * 1000)))
        return self.rows[-1]

    def note_field(self, q):
        if q not in self.fields:
            f = make_field(q)
            fp = f.fingerprint()
            self.fields[q] = {k: (str(v) if not isinstance(v, list) else [str(x) for x in v])
                              for k, v in fp.items()}
            self.fields[q]["point_order_sha256"] = point_order_hash(f)
        return make_field(q)

    def extend(self, other):
        self.rows.extend(other.rows)
        self.fields.update(other.fields)

    def to_json(self, timing=False):
        out = {
            "suite": self.suite,
            "version": __version__,
            "verdict": "pass" if self.ok else "fail",
            "fields": {str(q): self.fields[q] for q in sorted(self.fields)},
            "rows": [r.to_json() for r in self.rows],
        }
        if timing:
            out["timing"] = {"elapsed_ms": [str(r.elapsed_ms) for r in self.rows]}
        return out

    def csv_rows(self):
        yield ["suite", "check", "q", "formula", "brute", "verdict"]
        for r in self.rows:
            j = r.to_json()
            yield [self.suite, j["check"], j["q"], j["formula"], j["brute"], j["verdict"]]


def _now():
    return time.perf_counter()


# ---------------------------------------------------------------- census comparisons

CENSUS_CASES = {(2, 2, False): "conic_conic", (2, 2, True): "affine_conic",
                (2, 3, False): "conic_cubic", (3, 2, False): "conic_cubic", (3, 3, False): "cubic_cubic"}


def census_case(d, e, affine=False):
    return CENSUS_CASES.get((d, e, affine))


def compare_census(table, report=None):
    """Rows comparing a CensusTable against the registered c_k and shared-component terms."""
    case = census_case(table.d, table.e, table.affine)
    report = report or Report("census")
    q = table.q
    if case is None or q < cf.case_qmin(case):
        return report
    t0 = _now()
    report.add(f"{case}: total = q^(k1+k2)", q, table.expected_total(), table.total(), t0)
    for k, v in enumerate(cf.registered_coefficients(case, q)):
        report.add(f"c{k}_{case}", q, v, table.c(k), t0)
    beyond = sum(table.free[len(cf.registered_coefficients(case, q)):])
    report.add(f"{case}: no free pairs beyond the Bezout bound", q, 0, beyond, t0)
    report.add(f"{case}: shared-component enumerator", q, cf.common_enumerator(case, q),
               table.common_enumerator(), t0)
    report.add(f"{case}: closed-form W^[2]", q, cf.assemble_second_enumerator(case, q),
               table.second_enumerator(), t0)
    return report


def run_census(d, e, q, affine=False, threads=None, budget=None):
    f = make_field(q)
    kw = {} if budget is None else {"budget": budget}
    table = pair_census(f, d, e, affine=affine, threads=threads, **kw)
    return table, compare_census(table)


# ---------------------------------------------------------------- suites

def suite_codes(qs, threads=None):
    rep = Report("codes")
    for q in qs:
        f = rep.note_field(q)
        t0 = _now()
        c2 = build_code(f, 2)
        w2 = hamming_enumerator(c2, threads)
        rep.add("W_C22 sum = q^6", q, q ** 6, w2.total(), t0)
        rep.add("W_C22 closed form", q, cf.conic_enumerator(q), w2, t0)
        if q >= 3:
            t0 = _now()
            c3 = build_code(f, 3)
            w3 = hamming_enumerator(c3, threads)
            rep.add("W_C23 sum = q^10", q, q ** 10, w3.total(), t0)
            rep.add("W_C23 = W_sing + W_smooth", q, cf.cubic_enumerator(q), w3, t0)
            t0 = _now()
            wa = hamming_enumerator(build_code(f, 2, "affine"), threads)
            rep.add("affine W_C22 closed form", q, cf.affine_conic_enumerator(q), wa, t0)
    return rep


def _dual_rows(rep, q, label, w, size, fids, first):
    t0 = _now()
    d = cf.macwilliams(w, q, size)
    for i, fid in enumerate(fids):
        rep.add(f"{label} B_{first + i} ({fid})", q, cf.eval_formula(fid, q), d.counts[first + i], t0)
    rep.add(f"{label} below weight {first}", q, [1] + [0] * (first - 1), d.counts[:first], t0)
    return d


def suite_duals(qs, threads=None):
    """Classical and second MacWilliams identities, dual coefficients, direct dual scans
    and the linear solve for the free-pair coefficients."""
    rep = Report("duals")
    for q in qs:
        f = rep.note_field(q)
        c2 = build_code(f, 2)
        w2 = hamming_enumerator(c2, threads)
        d2 = _dual_rows(rep, q, "dual conic", w2, q ** 6,
                        ["B4_dual_conic", "B5_dual_conic", "B6_dual_conic"], 4)
        t0 = _now()
        rep.add("conic: transform back recovers W_C22", q, w2,
                cf.macwilliams(d2, q, q ** (c2.n - 6)), t0)
        if q < 3:
            continue
        c3 = build_code(f, 3)
        w3 = hamming_enumerator(c3, threads)
        d3 = _dual_rows(rep, q, "dual cubic", w3, q ** 10,
                        [f"B{i}_dual_cubic" for i in range(5, 10)], 5)
        t0 = _now()
        rep.add("cubic: transform back recovers W_C23", q, w3,
                cf.macwilliams(d3, q, q ** (c3.n - 10)), t0)
        wa = hamming_enumerator(build_code(f, 2, "affine"), threads)
        _dual_rows(rep, q, "dual affine conic", wa, q ** 6, ["B4_dual_affine"], 4)

        # direct enumeration of the dual codes, independent of MacWilliams
        if q == 3 or q == 4:
            t0 = _now()
            rep.add("cubic dual by direct scan", q, d3, hamming_enumerator(dual_code(c3), threads), t0)
        if q == 3:
            t0 = _now()
            rep.add("conic dual by direct scan", q, d2, hamming_enumerator(dual_code(c2), threads), t0)

        # joint enumerators from the brute-force censuses
        cases = [("conic_conic", 2, 2, False), ("affine_conic", 2, 2, True), ("conic_cubic", 2, 3, False)]
        if q == 3:
            cases.append(("cubic_cubic", 3, 3, False))
        for case, d, e, aff in cases:
            t0 = _now()
            table = pair_census(f, d, e, affine=aff, threads=threads)
            W = table.second_enumerator()
            d1, dd2 = cf.case_dims(case)
            D = cf.macwilliams2(W, q, q ** (d1 + dd2))
            targets = cf.dual_targets(case, q)
            rep.add(f"{case}: W^[2] dual low weights", q, targets, D.counts[:len(targets)], t0)
            back = cf.inverse_substitution(D.scale(q ** (d1 + dd2)), q * q)
            rep.add(f"{case}: second transform round trip", q, W, back, t0)
        for case in cf.CASES:
            t0 = _now()
            if q >= cf.case_qmin(case):
                rep.add(f"{case}: solved c_j from dual targets", q, cf.registered_coefficients(case, q),
                        cf.solved_coefficients(case, q), t0)
    return rep


def suite_classnumbers(qs, threads=None):
    rep = Report("classnumbers")
    for q in qs:
        f = rep.note_field(q)
        t0 = _now()
        scan = scan_cubic_classes(f, threads)
        pred = predict_smooth_enumerator(q)
        for t in trace_range(q):
            z = q + 1 - t
            rep.add(f"smooth cubics with trace {t}", q, pred.coeff_by_zeros(z),
                    (q - 1) * scan.hist_smooth[z], t0)
        observed = {z: c for z, c in enumerate(scan.hist_smooth) if c}
        rep.add("traces seen with no matching case", q, [], unmatched_traces(q, observed), t0)
        outside = sum(c for z, c in observed.items() if (q + 1 - z) ** 2 > 4 * q)
        rep.add("smooth cubics outside the Hasse interval", q, 0, outside, t0)
    return rep


def suite_configs(qs, threads=None):
    """I_9 and J_8 by subset scans (q <= 4) and the collinear dual spaces V_{d,m}."""
    rep = Report("configs")
    for q in qs:
        f = rep.note_field(q)
        if q <= 4:
            for r in appendix_config_counts(f, threads):
                if r.name in ("I_9", "J_8", "J_8 = 9 I_9"):
                    rep.rows.append(Row(r.name, q, r.formula, r.brute))
        t0 = _now()
        for d in (2, 3):
            for m in range(d + 2, q + 2):
                rep.add(f"V_(d={d},m={m}): dim, f, g", q, list(collinear_dual_formulas(q, d, m)),
                        list(collinear_dual_counts(f, d, m)), t0)
    return rep


def suite_appendix(qs, threads=None):
    rep = Report("appendix")
    for q in qs:
        f = rep.note_field(q)
        t0 = _now()
        for r in appendix_config_counts(f, threads):
            rep.add(r.name, q, r.formula, r.brute, t0)
    return rep


RUNNERS = {"codes": suite_codes, "duals": suite_duals, "configs": suite_configs,
           "classnumbers": suite_classnumbers, "appendix": suite_appendix}


def run_suite(name, qs=None, threads=None):
    if name == "all":
        rep = Report("all")
        for s in SUITES:
            rep.extend(run_suite(s, qs, threads))
        return rep
    if name not in RUNNERS:
        raise ValueError(f"unknown suite {name!r}")
    qs = DEFAULT_Q[name] if qs is None else qs
    return RUNNERS[name](qs, threads)
