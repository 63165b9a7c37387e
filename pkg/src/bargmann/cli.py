"""Command-line front end.

Exit codes: 0 ran, 1 parse/usage error, 2 invalid state or moments,
3 family is set coherent and ``--fail-on-coherent`` was given.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
import time
import warnings
from pathlib import Path

import numpy as np

from . import certify as cert
from .counterexamples import GENERATORS, CollinearWarning
from .invariants import (
    SCENARIOS,
    Scenario,
    WordError,
    canonical,
    evaluate,
    scenario_w3,
    scenario_w4n,
    scenario_wle3n,
)
from .loworder import (
    TOL_MOMENT,
    TOL_SPEC,
    InvalidMoments,
    QubitW2Tuple,
    QutritW3Tuple,
    qubit_w2_classify,
    qutrit_w3_incoherent_compatible,
)
from .states import (
    FamilyFormatError,
    InvalidStateError,
    StateFamily,
    family_from_dict,
    random_commuting_family,
    random_family,
    save_family,
)

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_COHERENT = 0, 1, 2, 3


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def fmt(v: float) -> str:
    return f"{v:.17g}"


def _floats(text: str, count: int | None = None) -> list[float]:
    try:
        vals = [float(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from None
    if count is not None and len(vals) != count:
        raise UsageError(f"expected {count} numbers, got {len(vals)}")
    return vals


def _read_family(path: str) -> tuple[StateFamily, str]:
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(str(exc)) from None
    try:
        doc = json.loads(raw)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise FamilyFormatError(f"{path}: invalid JSON: {exc}") from None
    return family_from_dict(doc), hashlib.sha256(raw).hexdigest()


def _emit_json(report: dict, out=None) -> None:
    out = out or sys.stdout
    out.write(json.dumps(report, indent=2) + "\n")


def _emit_csv(header: list[str], rows: list[list], out=None) -> None:
    out = out or sys.stdout
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) if isinstance(v, float) else v for v in row])


# -- certify ------------------------------------------------------------------


def certify_report(fam: StateFamily, threshold: float, oracle_tol: float, method: str) -> dict:
    report: dict = {
        "dimension": fam.dim,
        "n_states": len(fam),
        "method": method,
        "threshold": threshold,
        "oracle_tol": oracle_tol,
        "warnings": [],
    }
    pairs = [{"i": i, "j": j} for i in range(1, len(fam) + 1) for j in range(i + 1, len(fam) + 1)]
    if method in ("gap", "both"):
        verdict = cert.decide_set_coherence(fam, threshold)
        for row in pairs:
            row["gamma"] = verdict.pair_gaps[(row["i"], row["j"])]
        report["gap"] = {
            "incoherent": verdict.incoherent,
            "total_gap": verdict.total_gap,
            "witness_pair": list(verdict.witness_pair) if verdict.witness_pair else None,
        }
    if method in ("oracle", "both"):
        norms = cert.commutator_norms(fam)
        for row in pairs:
            row["commutator_hs"] = norms[(row["i"], row["j"])]
        report["oracle"] = {"incoherent": all(c <= oracle_tol for c in norms.values())}
    report["pairs"] = pairs
    primary = report["gap"] if "gap" in report else report["oracle"]
    report["incoherent"] = primary["incoherent"]
    report["verdict"] = "incoherent" if primary["incoherent"] else "coherent"
    if method == "both" and report["gap"]["incoherent"] != report["oracle"]["incoherent"]:
        report["warnings"].append("gap and commutator-oracle verdicts disagree")
    return report


def cmd_certify(args) -> int:
    fam, digest = _read_family(args.input)
    report = {"command": "certify", "input": args.input, "input_sha256": digest}
    report.update(certify_report(fam, args.threshold, args.oracle_tol, args.method))
    for msg in report["warnings"]:
        print(f"warning: {msg}", file=sys.stderr)
    if args.csv:
        cols = [c for c in ("gamma", "commutator_hs") if report["pairs"] and c in report["pairs"][0]]
        _emit_csv(["i", "j", *cols], [[p["i"], p["j"], *(p[c] for c in cols)] for p in report["pairs"]])
        print(f"verdict: {report['verdict']}", file=sys.stderr)
    else:
        _emit_json(report)
    if args.fail_on_coherent and not report["incoherent"]:
        return EXIT_COHERENT
    return EXIT_OK


# -- invariants ---------------------------------------------------------------


def invariant_rows(sc: Scenario, fam: StateFamily) -> list[dict]:
    vals = evaluate(sc, fam)
    return [{"word": str(w), "re": z.real, "im": z.imag} for w, z in vals.items()]


def cmd_invariants(args) -> int:
    fam, digest = _read_family(args.input)
    if args.words:
        sc = Scenario(args.words)
        label = "words"
    else:
        if args.scenario.endswith("n") and len(fam) < 2:
            raise UsageError(f"scenario {args.scenario} needs at least 2 states")
        sc = SCENARIOS[args.scenario](len(fam))
        label = args.scenario
    if sc.n_min > len(fam):
        raise WordError(f"scenario uses label {sc.n_min} but the family has {len(fam)} states")
    rows = invariant_rows(sc, fam)
    if args.csv:
        _emit_csv(["word", "re", "im"], [[r["word"], r["re"], r["im"]] for r in rows])
    else:
        _emit_json(
            {
                "command": "invariants",
                "input": args.input,
                "input_sha256": digest,
                "scenario": label,
                "dimension": fam.dim,
                "n_states": len(fam),
                "values": rows,
            }
        )
    return EXIT_OK


# -- low-order tests ----------------------------------------------------------


def qutrit_report(t: QutritW3Tuple, tol: float, tol_spec: float) -> dict:
    res = qutrit_w3_incoherent_compatible(t, tol=tol, tol_spec=tol_spec)
    return {
        "tuple": dict(zip("xyzabcd", t.as_tuple())),
        "tol": tol,
        "tol_spec": tol_spec,
        "rho_spectrum": res.rho_spectrum.tolist(),
        "sigma_spectrum": res.sigma_spectrum.tolist(),
        "compatible": res.compatible,
        "assignment": None if res.assignment is None else [k + 1 for k in res.assignment],
        "moment_residual": float(res.residual),
    }


def cmd_qutrit_test(args) -> int:
    report = {"command": "qutrit-test"}
    if args.tuple is not None:
        t = QutritW3Tuple(*_floats(args.tuple, 7))
    else:
        fam, digest = _read_family(args.input)
        if fam.dim != 3 or len(fam) != 2:
            raise UsageError(f"qutrit-test needs 2 qutrit states, got {len(fam)} of dim {fam.dim}")
        report.update(input=args.input, input_sha256=digest)
        t = QutritW3Tuple.from_invariants(evaluate(scenario_w3(), fam))
    report.update(qutrit_report(t, args.tol, args.tol_spec))
    _emit_json(report)
    return EXIT_OK


def cmd_qubit_test(args) -> int:
    t = QubitW2Tuple(*_floats(args.tuple, 3))
    region = qubit_w2_classify(t, args.tol)
    _emit_json(
        {
            "command": "qubit-test",
            "tuple": {"x": t.x, "y": t.y, "z": t.z},
            "tol": args.tol,
            "lhs": (2 * t.z - 1) ** 2,
            "rhs": (2 * t.x - 1) * (2 * t.y - 1),
            "region": region.value,
        }
    )
    return EXIT_OK


# -- counterexample -----------------------------------------------------------


def _parse_r_vectors(text: str) -> list[list[float]]:
    return [_floats(chunk, 2) for chunk in text.split(";") if chunk.strip()]


def cmd_counterexample(args) -> int:
    gen = GENERATORS[args.which]
    caught: list[str] = []
    if args.which.startswith("appendix"):
        r = _parse_r_vectors(args.r_vectors) if args.r_vectors else None
        n = len(r) if r is not None and args.n is None else (args.n or 2)
        with warnings.catch_warnings(record=True) as ws:
            warnings.simplefilter("always", CollinearWarning)
            pair = gen(n=n, r_vectors=r, epsilon=args.epsilon)
        caught = [str(w.message) for w in ws if issubclass(w.category, CollinearWarning)]
    else:
        pair = gen()
    if args.pad_to is not None:
        pair = pair.padded(args.pad_to)

    outdir = Path(args.output)
    outdir.mkdir(parents=True, exist_ok=True)
    files = {}
    for role, fam in (("commuting", pair.commuting), ("coherent", pair.coherent)):
        path = outdir / f"{pair.name}-{role}.json"
        save_family(fam, path)
        files[role] = str(path)

    data = {role: evaluate(pair.scenario, fam) for role, fam in
            (("commuting", pair.commuting), ("coherent", pair.coherent))}
    diff = max(abs(data["commuting"][w] - data["coherent"][w]) for w in pair.scenario)
    families = {}
    for role, fam in (("commuting", pair.commuting), ("coherent", pair.coherent)):
        rep = certify_report(fam, args.threshold, args.oracle_tol, "both")
        families[role] = {
            "file": files[role],
            "values": [{"word": str(w), "re": z.real, "im": z.imag} for w, z in data[role].items()],
            "verdict": rep["verdict"],
            "oracle_incoherent": rep["oracle"]["incoherent"],
            "total_gap": rep["gap"]["total_gap"],
            "pairs": rep["pairs"],
        }
    report = {
        "command": "counterexample",
        "which": pair.name,
        "dimension": pair.commuting.dim,
        "n_states": len(pair.commuting),
        "epsilon": pair.epsilon,
        "r_vectors": None if pair.spec is None else pair.spec.r_vectors.tolist(),
        "pad_to": args.pad_to,
        "scenario": [str(w) for w in pair.scenario],
        "threshold": args.threshold,
        "oracle_tol": args.oracle_tol,
        "max_abs_difference": float(diff),
        "families": families,
        "separates": bool(
            families["commuting"]["verdict"] == "incoherent"
            and families["coherent"]["verdict"] == "coherent"
        ),
        "warnings": caught,
    }
    for msg in caught:
        print(f"warning: {msg}", file=sys.stderr)
    (outdir / f"{pair.name}-report.json").write_text(json.dumps(report, indent=2) + "\n")
    _emit_json(report)
    return EXIT_OK


# -- sample -------------------------------------------------------------------


def sample_rows(dim: int, n: int, count: int, seed: int, commuting: bool):
    """Header and rows of the sampling table; deterministic in ``seed``."""
    words = list(Scenario([*scenario_wle3n(n), *scenario_w4n(n)]))
    rng = np.random.default_rng(seed)
    draw = random_commuting_family if commuting else random_family
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    header = ["sample", *(f"w{w}" for w in words), *(f"gamma_{i}_{j}" for i, j in pairs), "oracle_incoherent"]
    rows = []
    for k in range(count):
        fam = draw(dim, n, rng)
        vals = evaluate(Scenario(words), fam)
        gaps = cert.pair_gaps(fam)
        rows.append(
            [k, *(vals.real(w) for w in words), *(gaps[p] for p in pairs),
             str(cert.commutator_oracle(fam)).lower()]
        )
    return header, rows


def cmd_sample(args) -> int:
    if args.dim < 2:
        raise UsageError("--dim must be at least 2")
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    header, rows = sample_rows(args.dim, args.n, args.count, args.seed, args.commuting)
    if args.csv in (None, "-"):
        _emit_csv(header, rows)
    else:
        buf = io.StringIO()
        _emit_csv(header, rows, buf)
        Path(args.csv).write_text(buf.getvalue())
    return EXIT_OK


# -- entry point --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bargmann", description="Decide set coherence from Bargmann invariants.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fmt_flags(sp):
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--json", action="store_true", help="JSON report (default)")
        g.add_argument("--csv", action="store_true", help="CSV table")

    def tol_flags(sp):
        sp.add_argument("--threshold", type=float, default=cert.DEFAULT_THRESHOLD,
                        help="largest pair gap still counted as commuting (default %(default)g)")
        sp.add_argument("--oracle-tol", type=float, default=cert.DEFAULT_ORACLE_TOL,
                        help="commutator HS-norm tolerance (default %(default)g)")

    c = sub.add_parser("certify", help="decide set coherence of a family")
    c.add_argument("input")
    tol_flags(c)
    c.add_argument("--method", choices=("gap", "oracle", "both"), default="gap")
    c.add_argument("--fail-on-coherent", action="store_true")
    fmt_flags(c)
    c.set_defaults(func=cmd_certify)

    i = sub.add_parser("invariants", help="evaluate Bargmann invariants")
    i.add_argument("input")
    g = i.add_mutually_exclusive_group(required=True)
    g.add_argument("--scenario", choices=sorted(SCENARIOS))
    g.add_argument("--words", nargs="+", type=canonical_arg, metavar="WORD")
    fmt_flags(i)
    i.set_defaults(func=cmd_invariants)

    q = sub.add_parser("qutrit-test", help="third-order qutrit compatibility test")
    g = q.add_mutually_exclusive_group(required=True)
    g.add_argument("input", nargs="?")
    g.add_argument("--tuple", metavar="x,y,z,a,b,c,d")
    q.add_argument("--tol", type=float, default=TOL_MOMENT)
    q.add_argument("--tol-spec", type=float, default=TOL_SPEC)
    q.set_defaults(func=cmd_qutrit_test)

    b = sub.add_parser("qubit-test", help="second-order qubit region classification")
    b.add_argument("--tuple", metavar="x,y,z", required=True)
    b.add_argument("--tol", type=float, default=1e-8)
    b.set_defaults(func=cmd_qubit_test)

    x = sub.add_parser("counterexample", help="write a separating pair of families")
    x.add_argument("--which", choices=sorted(GENERATORS), required=True)
    x.add_argument("--n", type=int)
    x.add_argument("--epsilon", type=float)
    x.add_argument("--r-vectors", metavar="a,b;a,b;...")
    x.add_argument("--pad-to", type=int)
    x.add_argument("-o", "--output", default=".")
    tol_flags(x)
    x.set_defaults(func=cmd_counterexample)

    s = sub.add_parser("sample", help="CSV of invariants and gaps for random families")
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--count", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--commuting", action="store_true")
    s.add_argument("--csv", metavar="OUT", help="output path (default stdout)")
    s.set_defaults(func=cmd_sample)
    return p


def canonical_arg(text: str):
    try:
        return canonical(text)
    except WordError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code
    start = time.perf_counter()
    try:
        code = args.func(args)
    except (FamilyFormatError, WordError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InvalidStateError as exc:
        print(f"invalid state ({exc.invariant}): {exc}", file=sys.stderr)
        return EXIT_INVALID
    except InvalidMoments as exc:
        print(f"invalid moments (residual {exc.residual:.3e}): {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    print(f"elapsed: {time.perf_counter() - start:.3f} s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
