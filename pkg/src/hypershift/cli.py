"""Command-line front end.

Every subcommand builds one report dictionary; ``--json`` prints it as
canonical JSON, otherwise it is rendered as indented text. Domain errors exit
with status 1 and a one-line diagnostic, usage errors with status 2.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import List, Optional, Sequence

from . import __version__
from .errors import DomainError
from .experiments import (
    EMPIRICAL,
    SftLanguage,
    StreamLanguage,
    gap_stats,
    hyper_orbit_probe,
    liyorke_scan,
    sensitivity_times,
)
from .hyperspace import FiniteCompactSet, expansivity_counterexample, hausdorff_exact, parse_set_text
from .report import dumps, render_human
from .sequences import FULL_ALPHABET, Alphabet, d1_exact, parse_word_literal
from .sft import (
    TransitionMatrix,
    classify_sft,
    enumerate_matrices,
    is_irreducible,
    is_primitive,
    kron_power,
)
from .witnesses import (
    dense_periodic_record,
    example2_record,
    full_shift_sensitivity_record,
    leo_record,
    liyorke_witness,
    periodize_record,
    sft_sensitivity_record,
    stream_from_spec,
)

HORIZON_CAP_ENV = "HYPERSHIFT_MAX_HORIZON"
DEFAULT_HORIZON_CAP = 1_000_000

# settings that may change how work is scheduled but never the result
_NOT_ECHOED = {"json", "workers", "handler"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from None


def _matrix(path: str, symbols: str = "") -> TransitionMatrix:
    return TransitionMatrix.from_text(_read(path), symbols)


def _alphabet(text: str) -> Alphabet:
    return Alphabet(text)


def _words(text: str) -> List[str]:
    words = [w.strip() for w in text.split(",")]
    if not all(words):
        raise DomainError(f"empty word in list {text!r}")
    return words


def _elements(text: str, alphabet: Alphabet) -> FiniteCompactSet:
    return FiniteCompactSet(parse_word_literal(w, alphabet) for w in _words(text))


def _horizon(T: int) -> int:
    raw = os.environ.get(HORIZON_CAP_ENV)
    try:
        cap = int(raw) if raw else DEFAULT_HORIZON_CAP
    except ValueError:
        raise DomainError(f"{HORIZON_CAP_ENV} must be an integer, got {raw!r}") from None
    if T > cap:
        raise DomainError(f"horizon {T} exceeds cap {cap} (set {HORIZON_CAP_ENV} to raise it)")
    return T


def _ratio(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _intervals(pairs):
    return [[a, b] for a, b in pairs]


# ---------------------------------------------------------------- subcommands

def cmd_classify(args) -> dict:
    M = _matrix(args.matrix, args.symbols)
    return {"classification": classify_sft(M).to_dict()}


def cmd_kron(args) -> dict:
    M = _matrix(args.matrix, args.symbols)
    K = kron_power(M, args.k)
    out = {"dimension": K.n, "irreducible": None, "primitive": None}
    if K.is_essential():
        out["irreducible"] = is_irreducible(K)
        out["primitive"] = is_primitive(K)
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(K.to_text())
        except OSError as exc:
            raise DomainError(f"cannot write {args.output}: {exc.strerror}") from None
    else:
        out["rows"] = K.to_text().splitlines()
    return {"kron": out}


def cmd_dist(args) -> dict:
    alphabet = _alphabet(args.alphabet)
    x, y = parse_word_literal(args.x, alphabet), parse_word_literal(args.y, alphabet)
    return {"x": x.literal(), "y": y.literal(), "distance": d1_exact(x, y)}


def cmd_hausdorff(args) -> dict:
    alphabet = _alphabet(args.alphabet)
    A = parse_set_text(_read(args.a), alphabet)
    B = parse_set_text(_read(args.b), alphabet)
    return {"A": A.literals(), "B": B.literals(), "distance": hausdorff_exact(A, B)}


def _language(args):
    spec = args.system
    if spec.startswith("sft:"):
        return SftLanguage(_matrix(spec[4:], args.symbols))
    budget = args.budget if args.budget is not None else 10 * (args.horizon + args.delta_exp)
    return StreamLanguage(stream_from_spec(spec), budget)


def cmd_sens(args) -> dict:
    T = _horizon(args.horizon)
    if args.budget is not None:
        _horizon(args.budget)
    lang = _language(args)
    ts = sensitivity_times(lang, args.cylinder, args.delta_exp, T, workers=args.workers)
    g = gap_stats(ts)
    return {
        "delta": Fraction(1, 2 ** args.delta_exp),
        "times": _intervals(ts.intervals()),
        "count": len(ts.times()),
        "gaps": {
            "max_gap": g.max_gap,
            "count": len(g.gaps),
            "intervals": _intervals(g.gaps),
        },
        "verdicts": {
            "qualifier": EMPIRICAL,
            "cofinite_from": g.cofinite_from,
            "syndetic_bound": g.syndetic_bound,
        },
    }


def cmd_witness(args) -> dict:
    kind = args.kind
    if kind == "periodize":
        rec = periodize_record(_words(args.prefixes), _alphabet(args.alphabet))
    elif kind == "leo":
        rec = leo_record(_words(args.prefixes), _elements(args.target, _alphabet(args.alphabet)))
    elif kind == "full-sens":
        alphabet = _alphabet(args.alphabet)
        rec = full_shift_sensitivity_record(_elements(args.elements, alphabet), args.depth, alphabet)
    elif kind == "liyorke":
        alphabet = _alphabet(args.alphabet)
        x = parse_word_literal(args.point, alphabet)
        y = liyorke_witness(x, args.n0, alphabet)
        T = _horizon(args.horizon)
        scan = liyorke_scan(x, y, T, args.delta_exp, args.c)
        return {"witness": {
            "kind": "liyorke",
            "inputs": {"point": x.literal(), "n0": args.n0},
            "outputs": {"y": y.describe(), "flips": [2 ** m for m in range(args.n0, T.bit_length())]},
            "certified": {
                "verdict": scan.verdict,
                "proximal_times": list(scan.proximal_times),
                "distal_times": list(scan.distal_times),
                "qualifier": EMPIRICAL,
            },
        }}
    elif kind == "sft-sens":
        M = _matrix(args.matrix, args.symbols)
        rec = sft_sensitivity_record(M, _elements(args.elements, FULL_ALPHABET), args.depth)
    elif kind == "dense-periodic":
        M = _matrix(args.matrix, args.symbols)
        rec = dense_periodic_record(M, _elements(args.elements, FULL_ALPHABET), args.depth)
    else:
        offsets = [int(v) for v in _words(args.offsets)]
        rec = example2_record(offsets, args.block, _horizon(args.horizon), args.depth)
    return {"witness": rec.to_dict()}


def cmd_expansivity(args) -> dict:
    return {"counterexample": expansivity_counterexample(args.n, args.delta_exp)}


def cmd_probe(args) -> dict:
    M = _matrix(args.matrix, args.symbols)
    hit = hyper_orbit_probe(M, _words(args.src), _words(args.dst), _horizon(args.horizon), args.max_connector)
    if hit is None:
        result = {"found": False, "note": "nothing found within the search bounds; this is not a disproof"}
    else:
        result = {"found": True, "n": hit.n, "A": hit.A.literals(), "pairs": [list(p) for p in hit.pairs]}
    return {"probe": result}


def _sweep_one(rows):
    M = TransitionMatrix(tuple(rows))
    c = classify_sft(M)
    p = is_primitive(M)
    k2 = is_irreducible(kron_power(M, 2))
    k3 = is_irreducible(kron_power(M, 3))
    flags = (p, k2, k3, c.weakly_mixing, c.mixing, c.totally_transitive)
    return all(flags) or not any(flags)


def sweep_matrices(max_n: int, random_count: int, random_n: int, seed: int) -> List[tuple]:
    """All essential matrices up to max_n, then seeded random essential ones."""
    mats = [M.rows for n in range(1, max_n + 1) for M in enumerate_matrices(n) if M.is_essential()]
    rng = random.Random(seed)
    drawn = 0
    while drawn < random_count:
        rows = tuple(rng.getrandbits(random_n) for _ in range(random_n))
        if TransitionMatrix(rows).is_essential():
            mats.append(rows)
            drawn += 1
    return mats


def cmd_sweep(args) -> dict:
    mats = sweep_matrices(args.max_n, args.random, args.random_n, args.seed)
    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            ok = list(pool.map(_sweep_one, mats, chunksize=32))
    else:
        ok = [_sweep_one(m) for m in mats]
    bad = [TransitionMatrix(m).to_text().strip().split("\n") for m, good in zip(mats, ok) if not good]
    return {"sweep": {"matrices": len(mats), "violations": len(bad), "violating": bad}}


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="print canonical JSON")
    matrix_opts = _Parser(add_help=False)
    matrix_opts.add_argument("--symbols", default="", help="vertex labels (default 1, 2, ...)")

    p = _Parser(prog="hypershift", description="Shift spaces and their induced hyperspace maps.")
    p.add_argument("--version", action="version", version=f"hypershift {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("classify", parents=[common, matrix_opts], help="classify a vertex shift")
    s.add_argument("matrix")
    s.set_defaults(handler=cmd_classify)

    s = sub.add_parser("kron", parents=[common, matrix_opts], help="Kronecker power of a matrix")
    s.add_argument("matrix")
    s.add_argument("-k", type=int, required=True)
    s.add_argument("-o", "--output", default=None)
    s.set_defaults(handler=cmd_kron)

    s = sub.add_parser("dist", parents=[common], help="exact distance between two sequences")
    s.add_argument("x")
    s.add_argument("y")
    s.add_argument("--alphabet", default=FULL_ALPHABET.symbols)
    s.set_defaults(handler=cmd_dist)

    s = sub.add_parser("hausdorff", parents=[common], help="exact Hausdorff distance of two set files")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--alphabet", default=FULL_ALPHABET.symbols)
    s.set_defaults(handler=cmd_hausdorff)

    s = sub.add_parser("sens", parents=[common, matrix_opts], help="sensitivity-time set of a cylinder")
    s.add_argument("--system", required=True, help="ep:LIT, sturmian:fib, sturmian:p/q[:a/b], wk:RULE or sft:FILE")
    s.add_argument("--cylinder", required=True)
    s.add_argument("--delta-exp", type=int, required=True)
    s.add_argument("--horizon", type=int, default=5000)
    s.add_argument("--budget", type=int, default=None, help="stream prefix length (default 10*(T+K))")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(handler=cmd_sens)

    s = sub.add_parser("witness", help="constructive witnesses")
    kinds = s.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    w = kinds.add_parser("periodize", parents=[common])
    w.add_argument("--prefixes", required=True)
    w.add_argument("--alphabet", default="01")
    w = kinds.add_parser("leo", parents=[common])
    w.add_argument("--prefixes", required=True)
    w.add_argument("--target", required=True, help="comma-separated literals of the target set")
    w.add_argument("--alphabet", default="01")
    w = kinds.add_parser("full-sens", parents=[common])
    w.add_argument("--elements", required=True)
    w.add_argument("--depth", type=int, required=True)
    w.add_argument("--alphabet", default="01")
    w = kinds.add_parser("liyorke", parents=[common])
    w.add_argument("--point", required=True)
    w.add_argument("--n0", type=int, default=2)
    w.add_argument("--horizon", type=int, default=70)
    w.add_argument("--delta-exp", type=int, default=5)
    w.add_argument("--c", type=_ratio, default=Fraction(1, 2))
    w.add_argument("--alphabet", default="01")
    for name in ("sft-sens", "dense-periodic"):
        w = kinds.add_parser(name, parents=[common, matrix_opts])
        w.add_argument("matrix")
        w.add_argument("--elements", required=True)
        w.add_argument("--depth", type=int, required=True)
    w = kinds.add_parser("example2-hyper", parents=[common])
    w.add_argument("--offsets", default="0,1")
    w.add_argument("--block", type=int, default=5)
    w.add_argument("--horizon", type=int, default=5000)
    w.add_argument("--depth", type=int, default=40)
    s.set_defaults(handler=cmd_witness)

    s = sub.add_parser("expansivity-counterexample", parents=[common], help="one-block families report")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--delta-exp", type=int, default=1)
    s.set_defaults(handler=cmd_expansivity)

    s = sub.add_parser("probe-hyper", parents=[common, matrix_opts], help="search for hyperspace orbit links")
    s.add_argument("matrix")
    s.add_argument("--src", required=True)
    s.add_argument("--dst", required=True)
    s.add_argument("--horizon", type=int, default=12)
    s.add_argument("--max-connector", type=int, default=8)
    s.set_defaults(handler=cmd_probe)

    s = sub.add_parser("sweep", parents=[common], help="mixing-equivalence sweep over small matrices")
    s.add_argument("--max-n", type=int, default=3)
    s.add_argument("--random", type=int, default=200)
    s.add_argument("--random-n", type=int, default=4)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(handler=cmd_sweep)
    return p


def _config(args) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k not in _NOT_ECHOED}
    cfg["output"] = "json" if args.json else "human"
    return cfg


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(sys.argv[1:] if argv is None else argv))
    except UsageError as exc:
        stderr.write(f"{exc}\n")
        return 2
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    try:
        report = {"command": args.command, "config": _config(args)}
        report.update(args.handler(args))
    except DomainError as exc:
        stderr.write("error: " + " ".join(str(exc).split()) + "\n")
        return 1
    stdout.write(dumps(report) if args.json else render_human(report))
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
