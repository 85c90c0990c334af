"""Command-line front end.

Subcommands cover the whole pipeline: enumeration (count-maxima), the
certificate pipeline (certify, build-decomposition, verify-decomposition),
the brute-force oracles (check-hypothesis, oracle-max-family), the
near-extremality analysis (stability), the geometric reduction
(parallelepiped), and an aggregated self-test. Reports are JSON objects
{"command", "n", "result", "timing_seconds"} written to stdout or --output.

Exit codes: 0 success, 1 verification failure (or a watchdog violation that
would falsify the certified bounds), 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from random import Random

from . import __version__
from .decomposition import Decomposition, build, certify_bound, verify
from .errors import InputError, InternalInvariantError
from .extremal import evolution_count, stability_analysis, stability_threshold
from .forms import (
    count_maxima_float,
    enumerate_maxima,
    form_from_json,
    middle_layer_form,
    parallelepiped_form,
)
from .oracle import check_hypothesis, conflict_pairs, count_maxima_bruteforce, max_family_bruteforce
from .subsets import Family, SignSets, central_binomial

MAXIMA_LISTING_LIMIT = 16  # include the maxima themselves only for n <= this


def _load_input(arg: str | None) -> object:
    """Accept inline JSON (starts with '{' or '['), a file path, or '-' for stdin."""
    if arg is None:
        raise InputError("this command needs --input")
    text = arg.strip()
    if text.startswith("{") or text.startswith("["):
        pass
    elif text == "-":
        text = sys.stdin.read()
    else:
        path = Path(arg)
        if not path.exists():
            raise InputError(f"input file not found: {arg}")
        text = path.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"input is not valid JSON: {exc}") from exc


def _need(data: object, key: str) -> object:
    if not isinstance(data, dict) or key not in data:
        raise InputError(f"input JSON needs key {key!r}")
    return data[key]


def _signsets_from(data: object) -> SignSets:
    n = _need(data, "n")
    if not isinstance(n, int):
        raise InputError(f"'n' must be an integer, got {n!r}")
    return SignSets.from_json(n, _need(data, "signsets"))


def _cmd_count_maxima(args: argparse.Namespace) -> tuple[int, int, dict]:
    if args.input is not None:
        f = form_from_json(_load_input(args.input))
    elif args.n is not None:
        f = middle_layer_form(args.n)
    else:
        raise InputError("count-maxima needs --input FORM or --n for the demo form")
    if args.fast:
        count = count_maxima_float(f)
        result = {"count": count, "bound": central_binomial(f.n), "arithmetic": "float"}
    else:
        maxima = enumerate_maxima(f)
        result = {"count": len(maxima), "bound": central_binomial(f.n)}
        if f.n <= MAXIMA_LISTING_LIMIT:
            result["maxima"] = maxima.to_json()
    return 0, f.n, result


def _cmd_certify(args: argparse.Namespace) -> tuple[int, int, dict]:
    f = form_from_json(_load_input(args.input))
    cert = certify_bound(f)
    return 0, f.n, {
        "maxima_count": len(cert.assignment),
        "chain_count": len(cert.decomposition.chains),
        "certificate": cert.to_json(),
    }


def _cmd_build(args: argparse.Namespace) -> tuple[int, int, dict]:
    s = _signsets_from(_load_input(args.input))
    d = build(s)
    res = verify(d, s)
    if not res:
        raise InternalInvariantError(f"freshly built decomposition invalid: {res.detail}")
    return 0, s.n, {"chain_count": len(d.chains), "decomposition": d.to_json()}


def _cmd_verify(args: argparse.Namespace) -> tuple[int, int, dict]:
    data = _load_input(args.input)
    d = Decomposition.from_json(data)
    res = verify(d, d.signsets, expected_chain_count=args.chains)
    result = {"valid": res.ok}
    if res.detail:
        result["detail"] = res.detail
    return (0 if res.ok else 1), d.n, result


def _cmd_check_hypothesis(args: argparse.Namespace) -> tuple[int, int, dict]:
    data = _load_input(args.input)
    s = _signsets_from(data)
    fam = Family.from_json(s.n, _need(data, "family"))
    return 0, s.n, {"holds": check_hypothesis(fam, s)}


def _cmd_max_family(args: argparse.Namespace) -> tuple[int, int, dict]:
    s = _signsets_from(_load_input(args.input))
    size, witness = max_family_bruteforce(s)
    return 0, s.n, {
        "size": size,
        "bound": central_binomial(s.n),
        "witness": witness.to_json(),
    }


def _cmd_stability(args: argparse.Namespace) -> tuple[int, int, dict]:
    f = form_from_json(_load_input(args.input))
    report = stability_analysis(f)
    return 0, f.n, {"report": report.to_json()}


def _cmd_parallelepiped(args: argparse.Namespace) -> tuple[int, int, dict]:
    if args.input is not None:
        data = _load_input(args.input)
        p = _need(data, "p")
        vs = _need(data, "v")
    elif args.n is not None:
        # demo: orthogonal sides of length 2, box centered on the origin
        n = args.n
        p = [-1] * n
        vs = [[2 if j == i else 0 for j in range(n)] for i in range(n)]
    else:
        raise InputError("parallelepiped needs --input {p, v} or --n for the demo box")
    f = parallelepiped_form(p, vs)
    count = len(enumerate_maxima(f))
    bound = central_binomial(f.n)
    return 0, f.n, {
        "count": count,
        "bound": bound,
        "within_bound": count <= bound,
    }


def _selftest_suites(seed: int, max_n: int) -> list[dict]:
    from .forms import is_strict_local_max, sign_sets
    from .generators import random_form, random_signsets
    from .oracle import MAX_FAMILY_WIDTH
    import itertools
    import math

    suites: list[dict] = []

    def run(name: str, fn) -> None:
        try:
            fn()
            suites.append({"name": name, "ok": True})
        except Exception as exc:  # noqa: BLE001 - report, do not crash the loop
            suites.append({"name": name, "ok": False, "detail": f"{type(exc).__name__}: {exc}"})

    def exact_identities() -> None:
        for k in range(0, 41):
            lhs = math.comb(k + 3, (k + 3) // 2)
            rhs = 2 * math.comb(k + 1, (k + 1) // 2) + evolution_count(k)
            assert lhs == rhs, f"evolution recurrence failed at k={k}"
        for n in range(3, 41):
            stability_threshold(n)  # raises if either identity fails

    def exhaustive_small_builds() -> None:
        for n in range(1, min(3, max_n) + 1):
            for bits in itertools.product(range(1 << n), repeat=n):
                s = SignSets.from_bits(n, bits)
                d = build(s, check=True)
                res = verify(d, s)
                assert res.ok, res.detail
                if n <= MAX_FAMILY_WIDTH:
                    size, _ = max_family_bruteforce(s)
                    assert size <= central_binomial(n)

    def sperner_equalities() -> None:
        for n in range(1, 5):
            size, witness = max_family_bruteforce(SignSets.all_empty(n))
            assert size == central_binomial(n)
            assert check_hypothesis(witness, SignSets.all_empty(n))

    def hypothesis_matches_conflicts() -> None:
        # Exhaustive over all families at n=2; sampled at n=3.
        rng = Random(seed)
        for n in (2, 3):
            size = 1 << n
            for _ in range(40):
                s = random_signsets(rng, n)
                adj = conflict_pairs(s).adjacency()
                fams = (
                    range(1 << size)
                    if n == 2
                    else (rng.randrange(1 << size) for _ in range(120))
                )
                for fam_bits in fams:
                    members = [v for v in range(size) if fam_bits >> v & 1]
                    indep = all(not adj[x] >> y & 1 for x in members for y in members)
                    fam = Family.from_bits(n, members)
                    assert check_hypothesis(fam, s) == indep

    def enumeration_agrees() -> None:
        rng = Random(seed + 1)
        for _ in range(120):
            n = rng.randint(1, 6)
            f = random_form(rng, n)
            fast = enumerate_maxima(f)
            slow = count_maxima_bruteforce(f)
            assert fast.bits() == slow.bits()
            for m in fast:
                assert is_strict_local_max(f, m)
            assert check_hypothesis(fast, sign_sets(f))

    def certificates_hold() -> None:
        rng = Random(seed + 2)
        for _ in range(60):
            n = rng.randint(2, 6)
            f = random_form(rng, n)
            cert = certify_bound(f)
            assert len(cert.assignment) <= len(cert.decomposition.chains)

    run("exact-identities", exact_identities)
    run("exhaustive-small-builds", exhaustive_small_builds)
    run("sperner-equalities", sperner_equalities)
    run("hypothesis-vs-conflict-graph", hypothesis_matches_conflicts)
    run("enumeration-vs-bruteforce", enumeration_agrees)
    run("certificate-pipeline", certificates_hold)
    return suites


def _cmd_self_test(args: argparse.Namespace) -> tuple[int, int, dict]:
    seed = args.seed if args.seed is not None else 0
    max_n = args.max_n if args.max_n is not None else 3
    suites = _selftest_suites(seed, max_n)
    ok = all(s["ok"] for s in suites)
    return (0 if ok else 1), max_n, {"ok": ok, "suites": suites}


_HANDLERS = {
    "count-maxima": _cmd_count_maxima,
    "certify": _cmd_certify,
    "build-decomposition": _cmd_build,
    "verify-decomposition": _cmd_verify,
    "check-hypothesis": _cmd_check_hypothesis,
    "oracle-max-family": _cmd_max_family,
    "stability": _cmd_stability,
    "parallelepiped": _cmd_parallelepiped,
    "self-test": _cmd_self_test,
}


def _make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cubeq",
        description="Exact analysis of strict local maxima of quadratic functions on the 0/1 cube.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("count-maxima", "enumerate strict local maxima of a form"),
        ("certify", "build the full bound certificate for a form"),
        ("build-decomposition", "build the quasichain partition for sign sets"),
        ("verify-decomposition", "verify a decomposition JSON artifact"),
        ("check-hypothesis", "test the no-containment condition for a family"),
        ("oracle-max-family", "exact maximum family size at tiny n"),
        ("stability", "near-extremality analysis of a form"),
        ("parallelepiped", "count vertices strictly closer to the origin than their neighbors"),
        ("self-test", "run the aggregated exhaustive and randomized suites"),
    ]:
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("-i", "--input", help="input path, inline JSON, or '-' for stdin")
        sp.add_argument("-o", "--output", help="write the report to this path instead of stdout")
        sp.add_argument("--seed", type=int, help="seed for randomized suites")
        sp.add_argument("--fast", action="store_true", help="float arithmetic (benchmarking only)")
        sp.add_argument("--n", type=int, help="size for demo inputs / suite caps")
        sp.add_argument("--max-n", type=int, dest="max_n", help="cap for self-test suites")
        if name == "verify-decomposition":
            sp.add_argument(
                "--chains",
                type=int,
                help="expected chain count (defaults to the central binomial)",
            )
    return parser


def _emit(report: dict, output: str | None) -> None:
    text = json.dumps(report, indent=2, sort_keys=True)
    if output:
        Path(output).write_text(text + "\n")
    else:
        print(text)


def main(argv: list[str] | None = None) -> int:
    args = _make_parser().parse_args(argv)
    if args.fast and args.command in ("certify", "verify-decomposition"):
        print("error: --fast is not allowed for certification or verification", file=sys.stderr)
        return 2
    start = time.perf_counter()
    try:
        code, n, result = _HANDLERS[args.command](args)
    except InputError as exc:
        _emit({"command": args.command, "error": str(exc)}, args.output)
        return 2
    except InternalInvariantError as exc:
        _emit({"command": args.command, "error": f"internal invariant violated: {exc}"}, args.output)
        return 1
    report = {
        "command": args.command,
        "n": n,
        "result": result,
        "timing_seconds": round(time.perf_counter() - start, 6),
    }
    _emit(report, args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
