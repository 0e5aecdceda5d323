"""Command-line entry point.

Exit codes: 0 success, 1 a check failed, 2 usage or input error.  Reports
print as text by default and as JSON with ``--json``; a failing check always
prints its JSON report.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from importlib import resources
from pathlib import Path

from . import __version__, bfile
from .automata import learn
from .automata.machines import dumps, loads
from .certifier import (
    DEFAULT_K_CAP,
    SCAN_CAP,
    Certificate,
    agreement_sweep,
    build_certificate,
    case_search,
    nonperiodicity_probe,
    sign_sequences,
    verify_certificate,
)
from .errors import (
    BoundViolated,
    CapExceeded,
    ConstructionDiverged,
    InvalidWord,
    PrecisionCapExceeded,
    ProbeInconclusive,
    TribautoError,
    VerificationFailed,
)
from .exact import algebra
from .exact.intervals import RationalInterval, to_decimal
from .exact.rootcheck import unit_root_exclusion
from .numeration import NumerationSystem, decode, encode
from .tribword import check_an_bounds, generate

OK, FAILED, USAGE = 0, 1, 2

FIXTURES = {
    "fib-sync": "fib_floor_phi_sync.txt",
    "sturmian": "fib_sturmian_dfao.txt",
}


class _Failure(Exception):
    """A check failed; ``report`` is printed as JSON."""

    def __init__(self, report):
        self.report = report
        super().__init__("check failed")


def _dump_json(data) -> str:
    return json.dumps(data, sort_keys=True, ensure_ascii=False, indent=2)


def _emit(args, text, data=None):
    if args.json:
        print(_dump_json(data if data is not None else {"version": 1, "result": text}))
    else:
        print(text)


def _natural(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {value}")
    return value


def _positive(text: str) -> int:
    value = _natural(text)
    if value < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return value


def _report_text(data: dict, indent: str = "") -> str:
    lines = []
    for key, value in data.items():
        if key == "version":
            continue
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.append(_report_text(value, indent + "  "))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{indent}{key}:")
            for item in value:
                lines.append(indent + "  - " + ", ".join(f"{k}={v}" for k, v in item.items()))
        else:
            if isinstance(value, bool):
                value = "yes" if value else "no"
            elif isinstance(value, list):
                value = " ".join(map(str, value)) if value else "-"
            lines.append(f"{indent}{key}: {value}")
    return "\n".join(lines)


def _report(args, data: dict, passed: bool = True):
    if not passed:
        raise _Failure(data)
    _emit(args, _report_text(data), data)


# ---------------------------------------------------------------------------
# subcommands


def cmd_encode(args):
    word = encode(args.system, args.n)
    _emit(args, word.digits, {"version": 1, "system": args.system.value, "n": args.n, "word": word.digits})


def cmd_decode(args):
    value = decode(args.word, args.system)
    _emit(args, str(value), {"version": 1, "system": args.system.value, "word": args.word, "n": value})


def cmd_floor_psi(args):
    value = algebra.floor_psi(args.n)
    _emit(args, str(value), {"version": 1, "n": args.n, "floor_psi": value})


def cmd_floor_phi(args):
    value = algebra.floor_phi(args.n)
    _emit(args, str(value), {"version": 1, "n": args.n, "floor_phi": value})


def cmd_seq(args):
    fn = {"a": algebra.seq_a, "b": algebra.seq_b, "c": algebra.seq_c}[args.which]
    value = fn(args.n)
    _emit(args, str(value), {"version": 1, "sequence": args.which, "n": args.n, "value": value})


def cmd_drift(args):
    if args.system == "trib":
        if args.n < 2:
            raise argparse.ArgumentTypeError("drift trib needs n >= 2")
        sign = algebra.drift_sign_trib(args.n)
    else:
        if args.n < 1:
            raise argparse.ArgumentTypeError("drift fib needs n >= 1")
        sign = algebra.drift_sign_fib(args.n)
    _emit(args, str(sign), {"version": 1, "system": args.system, "n": args.n, "sign": str(sign)})


def _enclosure(iv: RationalInterval, digits: int):
    return [to_decimal(iv.lo, digits), to_decimal(iv.hi, digits, round_up=True)]


def cmd_constants(args):
    const = algebra.constants(args.precision)
    digits = max(1, math.floor(args.precision * math.log10(2)))
    rows = {
        "psi": const.psi,
        "phi": const.phi,
        "alpha.re": const.alpha.re,
        "alpha.im": const.alpha.im,
        "|alpha|": const.abs_alpha(),
        "c1": const.c1.re,
        "c2.re": const.c2.re,
        "c2.im": const.c2.im,
        "|c2(psi-alpha)|": const.abs_kappa(),
        "gamma": const.gamma,
        "zeta": const.zeta,
    }
    data = {"version": 1, "precision_bits": args.precision, "digits": digits,
            "enclosures": {name: _enclosure(iv, digits) for name, iv in rows.items()}}
    width = max(map(len, rows))
    text = "\n".join(f"{name:<{width}}  [{lo}, {hi}]" for name, (lo, hi) in data["enclosures"].items())
    _emit(args, text, data)


def cmd_predict(args):
    if args.n < 5:
        raise argparse.ArgumentTypeError("the quadrant predictor needs n >= 5")
    value, bits = algebra.predict_with_precision(args.n)
    v = algebra.v_angle(args.n)
    data = {"version": 1, "n": args.n, "prediction": value, "bits": bits, "v": _enclosure(v, 12)}
    text = str(value) if not args.verbose else f"{value}\nv(n) in [{data['v'][0]}, {data['v'][1]}]\nbits: {bits}"
    _emit(args, text, data)


def cmd_agree(args):
    report = agreement_sweep(args.max)
    _report(args, report.as_dict(), report.passed)


def cmd_certify(args):
    cert = build_certificate(args.states, args.k_cap)
    text = cert.to_json()
    if args.out in (None, "-"):
        sys.stdout.write(text)
        return
    Path(args.out).write_text(text, encoding="utf-8")
    max_k = max(k for _, _, k in cert.entries)
    data = {"version": 1, "out": args.out, "n_bound": cert.n_bound, "pairs": len(cert.entries),
            "max_k": max_k, "state_lower_bound": cert.state_lower_bound}
    _emit(args, f"wrote {len(cert.entries)} entries to {args.out}; "
                f"max k = {max_k}; lower bound {cert.state_lower_bound} states", data)


def cmd_verify(args):
    try:
        cert = Certificate.from_json(Path(args.cert).read_text(encoding="utf-8"))
    except (KeyError, TypeError, ValueError) as exc:
        raise _Failure({"version": 1, "ok": False, "error": f"malformed certificate: {exc}"}) from None
    report = verify_certificate(cert, args.interval_fraction)
    _report(args, report.as_dict(), report.ok)


def cmd_case_search(args):
    result = case_search(args.d, args.witnesses, args.scan_cap)
    _report(args, result.as_dict())


def _load_bfile(path):
    try:
        return bfile.read(path)
    except OSError as exc:
        raise _UsageError(f"cannot read b-file: {exc}") from None


def cmd_signs(args):
    positives, negatives = sign_sequences(args.max)
    data = {"version": 1, "max": args.max, "positive_count": len(positives), "negative_count": len(negatives),
            "positives_head": positives[:20], "negatives_head": negatives[:20]}
    passed = True
    for label, path, computed in (("bfile_pos", args.bfile_pos, positives), ("bfile_neg", args.bfile_neg, negatives)):
        if path is None:
            continue
        overlap, mismatch = bfile.compare_index_lists(computed, _load_bfile(path), args.max, args.value_shift)
        data[label] = {"file": Path(path).name, "overlap": overlap,
                       "mismatch": None if mismatch is None else list(mismatch), "match": mismatch is None}
        passed &= mismatch is None
    data["passed"] = passed
    if args.write_pos or args.write_neg:
        for path, values, anum in ((args.write_pos, positives, "positive"), (args.write_neg, negatives, "negative")):
            if path:
                Path(path).write_text(bfile.format_bfile(values, [
                    f"indices n in 2..{args.max} with T_n - psi T_(n-1) {anum}",
                    "self-generated by tribauto's exact cubic-sign oracle; not downloaded from OEIS",
                ]), encoding="utf-8")
    _report(args, data, passed)


def cmd_word(args):
    word = generate(args.kind, args.length)
    _emit(args, word, {"version": 1, "kind": args.kind, "length": args.length, "word": word})


def cmd_an_check(args):
    try:
        report = check_an_bounds(args.max)
    except BoundViolated as exc:
        raise _Failure({"version": 1, "passed": False, "n": exc.n, "error": str(exc)}) from None
    _report(args, report.as_dict(), report.passed)


def _fixture_text(name: str) -> str:
    return resources.files("tribauto.data").joinpath(FIXTURES[name]).read_text(encoding="utf-8")


def _machine_command(args, name, builder, checker):
    if args.action == "build":
        machine = builder(n_max=args.max)
        text = dumps(machine)
        same = text == _fixture_text(name)
        if args.out:
            Path(args.out).write_text(text, encoding="utf-8")
        if args.json:
            print(_dump_json({"version": 1, "machine": name, "states": machine.state_count,
                              "matches_fixture": same, "serialization": text}))
        elif not args.out:
            sys.stdout.write(text)
        else:
            print(f"wrote {machine.state_count}-state machine to {args.out}; matches fixture: {'yes' if same else 'no'}")
        return
    source = args.machine
    try:
        text = Path(source).read_text(encoding="utf-8") if source else _fixture_text(name)
    except OSError as exc:
        raise _UsageError(f"cannot read machine: {exc}") from None
    machine = loads(text)
    bad = checker(machine, args.max)
    data = {"version": 1, "machine": name, "source": source or "fixture", "states": machine.state_count,
            "n_max": args.max, "passed": bad is None,
            "counterexample": None if bad is None else {"word": [list(s) if isinstance(s, tuple) else s for s in bad.word],
                                                        "expected": bad.expected, "got": bad.got}}
    _report(args, data, bad is None)


def cmd_fib_sync(args):
    _machine_command(args, "fib-sync", learn.build_floor_phi_synchronizer, learn.check_floor_phi_synchronizer)


def cmd_dfao(args):
    _machine_command(args, "sturmian", learn.build_fib_sturmian_dfao, learn.check_sturmian_dfao)


def cmd_rootcheck(args):
    report = unit_root_exclusion(raise_on_failure=False)
    data = report.as_dict()
    if not args.json and report.passed:
        lines = []
        for layer in report.layers:
            lines.append(f"{layer.name}: {'pass' if layer.passed else 'FAIL'}")
            for key, value in layer.detail.items():
                if isinstance(value, list):
                    value = " ".join(map(str, value)) or "-"
                lines.append(f"  {key}: {value}")
        lines.append(f"conclusion: {report.conclusion}")
        print("\n".join(lines))
        return
    _report(args, data, report.passed)


def cmd_nonperiodic(args):
    report = nonperiodicity_probe(args.p_max, args.window)
    _report(args, report.as_dict(), report.passed)


def cmd_fetch_bfile(args):  # pragma: no cover - network
    try:
        path = bfile.fetch(args.anum, args.out)
    except OSError as exc:
        raise _UsageError(f"download failed: {exc}") from None
    _emit(args, f"saved {args.anum} to {path}")


class _UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="print JSON reports")

    parser = argparse.ArgumentParser(prog="tribauto", parents=[common],
                                     description="Fibonacci and Tribonacci numeration, exact oracles, and automata checks.")
    parser.add_argument("--version", action="version", version=f"tribauto {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        p.set_defaults(func=func)
        return p

    system = NumerationSystem.parse
    p = add("encode", cmd_encode, "greedy representation of n")
    p.add_argument("--system", type=system, required=True, help="fib or trib")
    p.add_argument("n", type=_natural)
    p = add("decode", cmd_decode, "value of a digit word")
    p.add_argument("--system", type=system, required=True, help="fib or trib")
    p.add_argument("word", nargs="?", default="", help="msd-first digits (omit for the empty word)")

    add("floor-psi", cmd_floor_psi, "exact floor(psi n)").add_argument("n", type=_natural)
    add("floor-phi", cmd_floor_phi, "exact floor(phi n)").add_argument("n", type=_natural)
    p = add("seq", cmd_seq, "a(n), b(n) or c(n)")
    p.add_argument("which", choices=["a", "b", "c"])
    p.add_argument("n", type=_natural)
    p = add("drift", cmd_drift, "sign of T_n - psi T_(n-1) or F_(n+1) - phi F_n")
    p.add_argument("system", choices=["fib", "trib"])
    p.add_argument("n", type=_natural)

    p = add("constants", cmd_constants, "certified decimal enclosures of the constants")
    p.add_argument("--precision", type=_positive, default=32, help="enclosure width 2^-bits (default 32)")
    p = add("predict", cmd_predict, "quadrant prediction of c(T_n)")
    p.add_argument("n", type=_natural)
    p.add_argument("-v", "--verbose", action="store_true")
    p = add("agree", cmd_agree, "compare the predictor with exact c(T_n) on 5..max")
    p.add_argument("--max", type=_natural, required=True)

    p = add("certify", cmd_certify, "build a state lower-bound certificate")
    p.add_argument("--states", type=_positive, required=True, help="N; the certificate proves N+1 states")
    p.add_argument("--k-cap", type=_natural, default=DEFAULT_K_CAP)
    p.add_argument("--out", help="output file (default stdout)")
    p = add("verify", cmd_verify, "re-check a certificate")
    p.add_argument("--cert", required=True)
    p.add_argument("--interval-fraction", type=float, default=0.01)

    p = add("case-search", cmd_case_search, "classify d zeta mod 2 pi and find witnesses")
    p.add_argument("--d", type=_positive, required=True)
    p.add_argument("--witnesses", type=_positive, default=3)
    p.add_argument("--scan-cap", type=_positive, default=SCAN_CAP)

    p = add("signs", cmd_signs, "drift-sign index lists, optionally checked against b-files")
    p.add_argument("--max", type=_natural, required=True)
    p.add_argument("--bfile-pos", help="b-file of indices with positive drift")
    p.add_argument("--bfile-neg", help="b-file of indices with negative drift")
    p.add_argument("--value-shift", type=int, default=0,
                   help="add to computed indices before comparing (for a different Tribonacci indexing)")
    p.add_argument("--write-pos", help=argparse.SUPPRESS)
    p.add_argument("--write-neg", help=argparse.SUPPRESS)

    p = add("word", cmd_word, "prefix of the Tribonacci or Fibonacci word")
    p.add_argument("kind", choices=["trib", "fib"])
    p.add_argument("--length", type=_natural, required=True)
    p = add("an-check", cmd_an_check, "check |A_n - floor(psi n)| <= 1")
    p.add_argument("--max", type=_positive, required=True)

    p = add("fib-sync", cmd_fib_sync, "floor(phi n) synchronizer")
    p.add_argument("action", choices=["build", "verify"])
    p.add_argument("--out")
    p.add_argument("--machine", help="machine file to verify (default: packaged fixture)")
    p.add_argument("--max", type=_natural, default=learn.VERIFY_LIMIT)
    p = add("dfao", cmd_dfao, "Fibonacci Sturmian DFAO")
    p.add_argument("name", choices=["sturmian"])
    p.add_argument("action", choices=["build", "verify"])
    p.add_argument("--out")
    p.add_argument("--machine", help="machine file to verify (default: packaged fixture)")
    p.add_argument("--max", type=_natural, default=learn.VERIFY_LIMIT)

    add("rootcheck", cmd_rootcheck, "show that alpha/|alpha| is not a root of unity")
    p = add("nonperiodic", cmd_nonperiodic, "drift-sign period probe")
    p.add_argument("--p-max", type=_positive, required=True)
    p.add_argument("--window", type=_positive, required=True)

    p = add("fetch-bfile", cmd_fetch_bfile, "download an OEIS b-file (network)")
    p.add_argument("anum")
    p.add_argument("--out", required=True)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE
    args.json = getattr(args, "json", False)
    try:
        args.func(args)
    except _Failure as failure:
        print(_dump_json(failure.report))
        return FAILED
    except (CapExceeded, PrecisionCapExceeded, ProbeInconclusive, ConstructionDiverged, VerificationFailed) as exc:
        print(_dump_json({"version": 1, "passed": False, "error": type(exc).__name__, "detail": str(exc)}))
        return FAILED
    except (argparse.ArgumentTypeError, _UsageError, InvalidWord, bfile.BFileError, OSError) as exc:
        parser.print_usage(sys.stderr)
        print(f"tribauto: error: {exc}", file=sys.stderr)
        return USAGE
    except TribautoError as exc:
        print(f"tribauto: error: {exc}", file=sys.stderr)
        return USAGE
    return OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
