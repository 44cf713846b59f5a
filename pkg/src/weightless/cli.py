"""Command-line driver.

Subcommands: ``verify``, ``lemma-chi``, ``assertion``, ``question2``,
``selftest``.  Reports are JSON (stable key order, no timestamps), CSV
(one row per orbit closure and mode) or an aligned text table.  Wall-clock
timings go to a sidecar file ``<out>.timings.json`` so the report itself
is byte-reproducible.

Exit codes: 0 success, 1 a hard check failed, 2 invalid input.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .errors import (BudgetExceeded, ConfigError, OddPrimePowerRequired, WeightlessError)
from .gf import field_for_q, prime_power

SCHEMA_VERSION = 1

DISCLOSURES = [
    "Orbit closures are taken as the union of orbits in the same invariant fiber "
    "(det for sl2, tr^2/det for PGL2) of size at most the orbit's size.",
    "Norm factors |a|^(+-1/2) are identically 1 over finite fields.",
    "The Lie algebra of PGL2 is identified with sl2 (odd q); g^v is identified with sl2 by the trace pairing.",
    "Fourier transform: F(f)(x) = sum_xi f(xi) psi(tr(xi x)), psi(t) = zeta_p^Tr(t), unnormalized; F(F(f)) = q^3 f(-x).",
    "Group-mode equality verdicts are evidence only and never affect the exit code.",
    "Characteristic 2 is excluded: a non-square in F_q is required.",
]

CSV_HEADER = ["q", "group", "mode", "orbit", "closure_size", "dim_Sw", "dim_Scusp", "contained", "equal"]


@dataclass
class RunConfig:
    command: str
    qs: list[int] = field(default_factory=lambda: [3, 5])
    mode: str = "both"
    fourier_check: int = 5
    assertion_max_q: int = 5
    experiment: str | None = None
    n_max: int | None = None
    fmt: str = "json"
    out: str | None = None


def parse_qs(text: str) -> list[int]:
    qs = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            q = int(part)
        except ValueError:
            raise OddPrimePowerRequired(f"OddPrimePowerRequired: {part!r} is not an integer") from None
        pk = prime_power(q)
        if pk is None or pk[0] == 2:
            raise OddPrimePowerRequired(f"OddPrimePowerRequired: q = {q}")
        qs.append(q)
    if not qs:
        raise OddPrimePowerRequired("OddPrimePowerRequired: empty q list")
    return qs


def _modes(mode: str) -> list[str]:
    return ["lie", "group"] if mode == "both" else [mode]


class Timer:
    def __init__(self):
        self.sections: dict[str, float] = {}

    def run(self, name: str, fn, *args, **kwargs):
        t0 = time.perf_counter()
        try:
            return fn(*args, **kwargs)
        finally:
            self.sections[name] = round(time.perf_counter() - t0, 4)


def _base_report(command: str) -> dict:
    return {
        "tool": "weightless",
        "version": __version__,
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "fields": [],
        "conjecture_reports": [],
        "fourier_cross_checks": [],
        "cone_diagnostics": [],
        "lemma_chi": [],
        "assertion": [],
        "question2": [],
        "disclosures": DISCLOSURES,
        "hard_failures": [],
    }


def _finish(report: dict) -> dict:
    body = json.dumps(report, sort_keys=True, separators=(",", ":"))
    report["determinism_hash"] = hashlib.sha256(body.encode()).hexdigest()
    return report


def cmd_verify(cfg: RunConfig, timer: Timer) -> dict:
    from .lemma import cone_diagnostic
    from .spaces import cuspidal_space_lie, cuspidal_space_lie_by_cosets, verify_all

    report = _base_report("verify")
    for q in cfg.qs:
        spec = field_for_q(q)
        report["fields"].append(spec.descriptor())
        for mode in _modes(cfg.mode):
            recs = timer.run(f"verify q={q} {mode}", verify_all, spec, mode)
            for r in recs:
                report["conjecture_reports"].append(r.to_dict())
                if not r.containment_holds:
                    report["hard_failures"].append(f"containment q={q} {mode} orbit {r.orbit_index}")
                if mode == "lie" and not r.equality_holds:
                    report["hard_failures"].append(
                        f"lie equality q={q} orbit {r.orbit_index} (dims {r.dim_restricted_cuspidal} < {r.dim_weightless})")
            if mode == "lie":
                report["cone_diagnostics"].append(timer.run(f"cone q={q}", cone_diagnostic, spec).to_dict())
        if q <= cfg.fourier_check:
            a = timer.run(f"fourier cusp q={q}", cuspidal_space_lie, spec)
            b = cuspidal_space_lie_by_cosets(spec)
            ok = a == b
            report["fourier_cross_checks"].append({"q": q, "dim_fourier": a.dim, "dim_cosets": b.dim, "equal": ok})
            if not ok:
                report["hard_failures"].append(f"fourier/coset cuspidal mismatch q={q}")
    return _finish(report)


def cmd_lemma_chi(cfg: RunConfig, timer: Timer) -> dict:
    from .lemma import verify_lemma_chi

    report = _base_report("lemma-chi")
    for q in cfg.qs:
        spec = field_for_q(q)
        report["fields"].append(spec.descriptor())
        recs = timer.run(f"lemma-chi q={q}", verify_lemma_chi, spec)
        report["lemma_chi"].append({"q": q, "records": [r.to_dict() for r in recs]})
        for r in recs:
            if not r.passed:
                report["hard_failures"].append(f"lemma chi q={q} m={r.m}")
    return _finish(report)


def cmd_assertion(cfg: RunConfig, timer: Timer) -> dict:
    from .lemma import character_table_pgl2, verify_assertion
    from .structure import conjugacy_classes

    report = _base_report("assertion")
    for q in cfg.qs:
        if q > cfg.assertion_max_q:
            report["assertion"].append({"q": q, "skipped": f"q above cap {cfg.assertion_max_q}"})
            continue
        spec = field_for_q(q)
        report["fields"].append(spec.descriptor())
        table = timer.run(f"character table q={q}", character_table_pgl2, spec)
        classes = []
        for o in conjugacy_classes(spec):
            a = verify_assertion(spec, o, table)
            classes.append(a.to_dict())
            if not a.passed:
                report["hard_failures"].append(
                    f"assertion q={q} class {o.index}: " + ", ".join(a.violators or ["bookkeeping"]))
        report["assertion"].append({"q": q, "characters": [[c.name, c.dim] for c in table.chars],
                                    "classes": classes})
    return _finish(report)


def cmd_question2(cfg: RunConfig, timer: Timer) -> dict:
    from .qtwo import load_experiment, sweep

    if not cfg.experiment:
        raise ConfigError("question2 needs an experiment file")
    exp = load_experiment(cfg.experiment)
    report = _base_report("question2")
    report["fields"].append(exp.spec.descriptor())
    result = timer.run("question2", sweep, exp, cfg.n_max)
    report["question2"].append(result.to_dict())
    return _finish(report)


def cmd_selftest(cfg: RunConfig, timer: Timer) -> dict:
    """Fast internal-consistency checks; no conjecture verdict is asserted here."""
    from .cyclolin import conjugate, cyclotomic_polynomial, poly_divmod
    from .gf import is_prime, make_field
    from .lemma import (character_table_pgl2, characters, end_dimension, gauss_sum,
                        multiplicities, verify_lemma_chi)
    from .spaces import cuspidal_space_lie, cuspidal_space_lie_by_cosets, verify_all
    from .structure import centralizer_order, conjugacy_classes, elliptic_complement_identity, is_elliptic
    from .structure import enumerate_algebra

    report = _base_report("selftest")
    checks: dict[str, bool] = {}
    checks["phi_divides"] = all(
        not any(poly_divmod([-1] + [0] * (n - 1) + [1], cyclotomic_polynomial(n))[1]) for n in range(1, 61))
    gs_ok = True
    for p in (p for p in range(3, 50) if is_prime(p)):
        spec = make_field(p)
        for chi in characters(spec):
            g = gauss_sum(chi, spec).value
            gs_ok &= (g == -1) if chi.trivial else (g * conjugate(g) == p)
    checks["gauss_sums"] = gs_ok
    spec = make_field(3)
    checks["containment_q3"] = all(r.containment_holds for m in ("lie", "group") for r in verify_all(spec, m))
    checks["fourier_equals_cosets_q3"] = cuspidal_space_lie(spec) == cuspidal_space_lie_by_cosets(spec)
    checks["elliptic_by_centralizer_q3"] = all(
        is_elliptic(spec, x) == (centralizer_order(spec, x) == spec.q + 1) for x in enumerate_algebra(spec))
    checks["elliptic_complement_q3"] = elliptic_complement_identity(spec)
    checks["lemma_chi_q3"] = all(r.passed for r in verify_lemma_chi(spec))
    table = character_table_pgl2(spec)
    checks["burnside_q3"] = all(
        sum(m * m for m in multiplicities(spec, o, table).values()) == end_dimension(spec, o)
        for o in conjugacy_classes(spec))
    report["selftest"] = checks
    report["hard_failures"] = [k for k, v in checks.items() if not v]
    return _finish(report)


COMMANDS = {
    "verify": cmd_verify,
    "lemma-chi": cmd_lemma_chi,
    "assertion": cmd_assertion,
    "question2": cmd_question2,
    "selftest": cmd_selftest,
}


# -- emitters ---------------------------------------------------------------

def to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def to_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in report.get("conjecture_reports", []):
        w.writerow([r["q"], "sl2" if r["mode"] == "lie" else "PGL2", r["mode"],
                    f"{r['orbit']['index']}:{r['orbit']['invariant_label']}:{r['orbit']['size']}",
                    r["closure_size"], r["dim_weightless"], r["dim_restricted_cuspidal"],
                    r["containment_holds"], r["equality_holds"]])
    return buf.getvalue()


def to_text(report: dict) -> str:
    lines = [f"weightless {report['version']} - {report['command']}", ""]
    rows = report.get("conjecture_reports", [])
    if rows:
        head = ("q", "mode", "orbit", "label", "|O|", "|Obar|", "dim Sw", "dim Scusp", "contained", "equal")
        table = [head] + [(str(r["q"]), r["mode"], str(r["orbit"]["index"]), str(r["orbit"]["invariant_label"]),
                           str(r["orbit"]["size"]), str(r["closure_size"]), str(r["dim_weightless"]),
                           str(r["dim_restricted_cuspidal"]), str(r["containment_holds"]),
                           str(r["equality_holds"])) for r in rows]
        widths = [max(len(row[i]) for row in table) for i in range(len(head))]
        for row in table:
            lines.append("  ".join(c.rjust(w) for c, w in zip(row, widths)))
        lines.append("")
    for d in report.get("cone_diagnostics", []):
        lines.append(f"nilpotent cone q={d['q']}: dim Sw={d['dim_weightless']} dim Scusp={d['dim_restricted_cuspidal']}"
                     f" quadratic functional explains gap: {d['explains_gap']}")
    for c in report.get("fourier_cross_checks", []):
        lines.append(f"fourier vs coset cuspidal q={c['q']}: dims {c['dim_fourier']}/{c['dim_cosets']} equal={c['equal']}")
    for block in report.get("lemma_chi", []):
        for r in block["records"]:
            if r["status"] != "checked":
                lines.append(f"lemma chi q={block['q']} m={r['m']}: {r['status']}")
                continue
            lines.append(f"lemma chi q={block['q']} m={r['m']}: a={r['a']} b={r['b']} pass={r['passed']}"
                         f" printed-form={r['printed_closed_form_holds']}")
    for block in report.get("assertion", []):
        if "skipped" in block:
            lines.append(f"assertion q={block['q']}: {block['skipped']}")
            continue
        for c in block["classes"]:
            lines.append(f"assertion q={block['q']} class {c['orbit']['index']} (|O|={c['orbit']['size']}):"
                         f" m_St={c['steinberg_multiplicity']} violators={c['violators']} pass={c['passed']}")
    for res in report.get("question2", []):
        lines.append(f"question2 {res['name']} q={res['q']}: first surjective n = {res['first_surjective_n']}")
        for r in res["records"]:
            lines.append(f"  n={r['n']} |X|={r['x_count']} |source|={r['source_count']} rank={r['rank']}"
                         f" surjective={r['surjective']} {r['note']}")
        lines.append("  unchecked hypotheses: " + "; ".join(res["unchecked_hypotheses"]))
    if "selftest" in report:
        for k, v in report["selftest"].items():
            lines.append(f"selftest {k}: {'PASS' if v else 'FAIL'}")
    lines.append("")
    lines.append("Design decisions:")
    lines.extend(f"  - {d}" for d in report["disclosures"])
    lines.append("")
    lines.append("hard failures: " + (", ".join(report["hard_failures"]) or "none"))
    lines.append(f"determinism hash: {report['determinism_hash']}")
    return "\n".join(lines) + "\n"


EMITTERS = {"json": to_json, "csv": to_csv, "text": to_text}


def emit_report(report: dict, fmt: str = "json", out: str | None = None, timings: dict | None = None) -> str:
    text = EMITTERS[fmt](report)
    if out:
        path = Path(out)
        path.write_text(text)
        if timings is not None:
            Path(str(path) + ".timings.json").write_text(json.dumps(timings, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(text)
    return text


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="weightless", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, qs_default="3,5"):
        p.add_argument("--q", default=qs_default, help="comma-separated odd prime powers")
        p.add_argument("--format", dest="fmt", choices=sorted(EMITTERS), default="json")
        p.add_argument("--out", default=None, help="write report here instead of stdout")

    p = sub.add_parser("verify", help="compare restricted cuspidal and weightless spaces")
    common(p)
    p.add_argument("--mode", choices=["lie", "group", "both"], default="both")
    p.add_argument("--fourier-check", type=int, default=5,
                   help="cross-check the Fourier-support cuspidal space for q up to this value")
    p = sub.add_parser("lemma-chi", help="check the h_chi witnesses for every nontrivial character")
    common(p)
    p = sub.add_parser("assertion", help="multiplicities of irreducibles in permutation modules on classes")
    common(p)
    p.add_argument("--max-q", type=int, default=5)
    p = sub.add_parser("question2", help="restriction-of-Fourier surjectivity sweep")
    p.add_argument("experiment", help="JSON experiment file")
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--format", dest="fmt", choices=sorted(EMITTERS), default="json")
    p.add_argument("--out", default=None)
    p = sub.add_parser("selftest", help="fast internal consistency checks")
    p.add_argument("--format", dest="fmt", choices=sorted(EMITTERS), default="text")
    p.add_argument("--out", default=None)
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=ns.command, fmt=ns.fmt, out=ns.out)
    if hasattr(ns, "q"):
        cfg.qs = parse_qs(ns.q)
    cfg.mode = getattr(ns, "mode", cfg.mode)
    cfg.fourier_check = getattr(ns, "fourier_check", cfg.fourier_check)
    cfg.assertion_max_q = getattr(ns, "max_q", cfg.assertion_max_q)
    cfg.experiment = getattr(ns, "experiment", None)
    cfg.n_max = getattr(ns, "n_max", None)
    return cfg


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    timer = Timer()
    try:
        cfg = config_from_args(ns)
        report = COMMANDS[cfg.command](cfg, timer)
    except (OddPrimePowerRequired, ConfigError, FileNotFoundError, BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except WeightlessError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    emit_report(report, cfg.fmt, cfg.out, timings=timer.sections)
    return 1 if report["hard_failures"] else 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
