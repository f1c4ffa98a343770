"""Command-line driver: one subcommand per operation, JSON Lines out.

The first output line is a metadata record (the only place a timestamp
appears); every following line is a result record.  Exit codes: 0 ok,
1 usage, 2 budget exceeded, 3 invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from . import __version__
from .census import BudgetExceeded, HeightBox, Predicates, enumerate_box, small_disc_census, tail_census
from .densities import DensityBudgetExceeded, euler_product_lambda, local_density
from .distinguished import (
    FormPair,
    candidate_roots,
    detect_rational_root,
    isotropic_line_oracle,
    line_value,
    random_pair,
    rational_candidates,
    witness_distinguished,
)
from .factor import FactorizationBudgetExceeded
from .maximality import ZeroDiscriminant, is_maximal
from .parallel import default_workers
from .polyarith import MonicPoly, delta_prime, diff_poly, discriminant
from .sieve import InvariantViolation, decompose, member_W2, verify_lemma31, verify_lemma31_even

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_INVARIANT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


@dataclass
class ExperimentConfig:
    subcommand: str
    params: dict = field(default_factory=dict)
    out: str | None = None
    format: str = "jsonl"

    @classmethod
    def from_namespace(cls, ns: argparse.Namespace) -> "ExperimentConfig":
        skip = {"command", "out", "format", "handler", "selftest"}
        params = {k: v for k, v in vars(ns).items() if k not in skip}
        return cls(ns.command, params, ns.out, ns.format)


# --- input parsing ---------------------------------------------------------


def _poly(text: str) -> MonicPoly:
    try:
        return MonicPoly.from_json(text)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"--poly: expected a JSON array [n, a1, ..., an], got {text!r} ({exc})")


def _matrix(text: str) -> FormPair:
    try:
        return FormPair(tuple(tuple(int(x) for x in row) for row in json.loads(text)))
    except (ValueError, TypeError) as exc:
        raise UsageError(f"--B: expected a symmetric odd-size integer matrix as JSON, got {text!r} ({exc})")


def _positive(name: str, value: int) -> int:
    if value < 1:
        raise UsageError(f"--{name}: must be positive, got {value}")
    return value


# --- subcommands: each returns (records, exit status) -----------------------


def cmd_disc(a):
    f = _poly(a.poly)
    return [{"poly": f.to_json(), "disc": str(discriminant(f))}], EXIT_OK


def cmd_ddisc(a):
    f = _poly(a.poly)
    return [{"poly": f.to_json(), "disc": str(discriminant(f)), "delta_prime": str(delta_prime(f))}], EXIT_OK


def cmd_diffpoly(a):
    f = _poly(a.poly)
    D = diff_poly(f)
    return [{"poly": f.to_json(), "coeffs_low_first": [str(c) for c in D.coeffs]}], EXIT_OK


def cmd_member(a):
    f = _poly(a.poly)
    m = _positive("m", a.m)
    return [{"poly": f.to_json(), **member_W2(f, m).to_dict()}], EXIT_OK


def cmd_decompose(a):
    f = _poly(a.poly)
    m = _positive("m", a.m)
    try:
        dec = decompose(f, m, refine=not a.literal)
    except ValueError as exc:
        raise UsageError(str(exc))
    rec = {"poly": f.to_json(), **dec.to_dict(), "bound_holds": 2 * dec.product >= m}
    return [rec], (EXIT_OK if rec["bound_holds"] else EXIT_INVARIANT)


def cmd_lemma31(a):
    try:
        if a.p == 2:
            rep = verify_lemma31_even(a.k, a.n, ceiling=a.budget, sharp=a.sharp)
        else:
            rep = verify_lemma31(a.p, a.k, a.n, ceiling=a.budget, sharp=a.sharp)
    except ValueError as exc:
        if "ceiling" in str(exc):
            raise BudgetExceeded(0, a.budget) from exc
        raise UsageError(str(exc))
    rec = rep.to_dict()
    rec["sharp"] = a.sharp
    return [rec], (EXIT_INVARIANT if rep.violations else EXIT_OK)


def cmd_maximal(a):
    f = _poly(a.poly)
    try:
        verdict = is_maximal(f, budget=a.budget)
    except ZeroDiscriminant as exc:
        raise UsageError(str(exc))
    return [{"poly": f.to_json(), **verdict.to_dict()}], EXIT_OK


def _H(text: str) -> Fraction:
    try:
        return Fraction(text)
    except ValueError:
        raise UsageError(f"--H: not a rational number: {text!r}")


def _census_record(report) -> dict:
    return {"kind": "census", "engine": report.engine, **report.to_dict()}


def cmd_census(a):
    preds = Predicates.parse(a.predicates.split(","), tail_M=a.tail_M)
    out = []
    for H in a.H:
        box = HeightBox(a.n, _H(H), a.subleading_zero)
        rep = enumerate_box(box, preds, budget=a.budget, workers=a.workers, engine=a.engine)
        out.append(_census_record(rep))
    return out, EXIT_OK


def cmd_smalldisc(a):
    out = []
    for H in a.H:
        rep = small_disc_census(a.n, _H(H), Fraction(a.kappa), budget=a.budget, workers=a.workers)
        rec = _census_record(rep)
        rec["kappa"] = str(Fraction(a.kappa))
        out.append(rec)
    return out, EXIT_OK


def cmd_tail(a):
    out = []
    for H in a.H:
        rep = tail_census(a.n, _H(H), a.M, budget=a.budget, workers=a.workers, w_tails=a.wtails)
        out.append(_census_record(rep))
    return out, EXIT_OK


def cmd_localdensity(a):
    try:
        return [{"n": a.n, **local_density(a.n, _positive("m", a.m), budget=a.budget).to_dict()}], EXIT_OK
    except DensityBudgetExceeded as exc:
        raise BudgetExceeded(0, a.budget) from exc


def cmd_lambda(a):
    return [euler_product_lambda(a.n, a.P, budget=a.budget).to_dict()], EXIT_OK


def _pair_record(pair: FormPair, precision: int, T: int | None, seed=None) -> dict:
    roots = candidate_roots(pair, prec=precision)
    hit = detect_rational_root(roots)
    rec = {"seed": seed, "B": pair.to_dict()["B"], "disc": str(pair.disc()), **roots.to_dict()}
    rec["rational_hit"] = None if hit is None else str(hit)
    rec["rational_all"] = [str(h) for h, _ in rational_candidates(roots)]
    if T is not None and pair.n == 3:
        y = isotropic_line_oracle(pair, T)
        rec["oracle_hit"] = None if y is None else [str(v) for v in y]
        rec["oracle_T"] = T
        if y is not None:
            rec["oracle_value"] = str(line_value(y, roots.forms))
    return rec


def cmd_distinguished(a):
    out = []
    for seed in range(a.seed, a.seed + a.count):
        pair = random_pair(a.n, a.C, seed) if a.generic else witness_distinguished(a.n, a.C, seed)
        out.append(_pair_record(pair, a.precision, a.T, seed))
    return out, EXIT_OK


def cmd_oracle(a):
    pair = _matrix(a.B)
    if pair.n != 3:
        raise UsageError("--B: the exact oracle needs a 3x3 matrix")
    y = isotropic_line_oracle(pair, a.T)
    return [{"B": pair.to_dict()["B"], "T": a.T, "line": None if y is None else [str(v) for v in y]}], EXIT_OK


# --- selftests ---------------------------------------------------------------

SELFTESTS = {
    "disc": [(["--poly", "[3,0,-1,0]"], {"disc": "4"}), (["--poly", "[4,0,0,0,-2]"], {"disc": "-2048"})],
    "ddisc": [(["--poly", "[3,0,-1,0]"], {"disc": "4", "delta_prime": "9"})],
    "diffpoly": [(["--poly", "[3,0,-1,0]"], {"coeffs_low_first": ["-4", "9", "-6", "1"]})],
    "member": [(["--poly", "[3,-1,0,9]", "--m", "3"], {"in_Wm": True, "in_W2": True})],
    "decompose": [(["--poly", "[3,0,-1,0]", "--m", "2"], {"m1": "1", "m2": "1"})],
    "lemma31": [(["--p", "3", "--k", "1", "--n", "3"], {"violations": [], "classes_in_Wpk": 135})],
    "maximal": [(["--poly", "[2,0,-5]"], {"is_maximal": False, "obstruction_primes": ["2"]})],
    "census": [(["--n", "2", "--H", "2", "--predicates", "squarefree"], {"total": "21"})],
    "smalldisc": [(["--n", "3", "--H", "8", "--kappa", "2"], {"counts": {"smalldisc": "786", "threshold": "4096"}})],
    "tail": [(["--n", "2", "--H", "2", "--M", "1"], {"total": "21"})],
    "localdensity": [(["--n", "2", "--m", "2"], {"density": "1/2"}), (["--n", "3", "--m", "3"], {"density": "5/27"})],
    "lambda": [(["--n", "2", "--P", "2"], {"product": "1/2"})],
    "distinguished": [(["--count", "1"], {"rational_hit": "1"})],
    "oracle": [(["--B", "[[0,3,-9],[3,-2,6],[-9,6,5]]", "--T", "3"], {"line": ["1", "0", "0"]})],
}


def _matches(record: dict, expected: dict) -> bool:
    for k, v in expected.items():
        if isinstance(v, dict):
            if not isinstance(record.get(k), dict) or not _matches(record[k], v):
                return False
        elif record.get(k) != v:
            return False
    return True


def run_selftest(command: str) -> int:
    parser = build_parser()
    failures = 0
    for argv, expected in SELFTESTS[command]:
        ns = parser.parse_args([command, *argv])
        records, _ = ns.handler(ns)
        ok = _matches(records[0], expected)
        failures += not ok
        print(f"{'PASS' if ok else 'FAIL'} {command} {' '.join(argv)}", file=sys.stderr)
        if not ok:
            print(f"  expected {expected}\n  got      {records[0]}", file=sys.stderr)
    return EXIT_OK if failures == 0 else EXIT_INVARIANT


# --- parser and output -----------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="discsieve", description="Discriminant sieve experiments.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, handler, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(handler=handler)
        sp.add_argument("--out", help="output file (default stdout)")
        sp.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
        sp.add_argument("--selftest", action="store_true", help="run this command's built-in examples")
        return sp

    for name, handler, help_ in (
        ("disc", cmd_disc, "discriminant"),
        ("ddisc", cmd_ddisc, "discriminant and its derivative-type companion"),
        ("diffpoly", cmd_diffpoly, "coefficients of prod (y - (r_i - r_j)^2)"),
    ):
        add(name, handler, help_).add_argument("--poly", default="[3,0,-1,0]", help="JSON [n, a1, ..., an]")

    sp = add("member", cmd_member, "membership in W_m, W1_m, W2_m")
    sp.add_argument("--poly", required=True)
    sp.add_argument("--m", type=int, required=True)

    sp = add("decompose", cmd_decompose, "split m into W1 and W2 parts")
    sp.add_argument("--poly", required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--literal", action="store_true", help="only the ceil(k/2) - v_p(2) exponent")

    sp = add("lemma31", cmd_lemma31, "exhaustive containment check mod p^(2k)")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--sharp", action="store_true")
    sp.add_argument("--budget", type=int, default=10**8, help="ceiling on residue classes")

    sp = add("maximal", cmd_maximal, "maximality of Z[x]/(f)")
    sp.add_argument("--poly", required=True)
    sp.add_argument("--budget", type=int, default=1_000_000, help="factorization iterations")

    def census_opts(sp, H_default):
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--H", nargs="+", default=H_default, required=H_default is None)
        sp.add_argument("--budget", type=int, default=10**9, help="maximum box size")
        sp.add_argument("--workers", type=int, default=None, help="default: $DISCSIEVE_WORKERS or 1")

    sp = add("census", cmd_census, "exact counts over a height box")
    census_opts(sp, None)
    sp.add_argument("--predicates", default="squarefree,maximal")
    sp.add_argument("--tail-M", dest="tail_M", type=int, nargs="*", default=[])
    sp.add_argument("--engine", choices=("auto", "exact", "cubic"), default="auto")
    sp.add_argument("--subleading-zero", dest="subleading_zero", action="store_true")

    sp = add("smalldisc", cmd_smalldisc, "count small nonzero discriminants with a1 = 0")
    census_opts(sp, None)
    sp.add_argument("--kappa", default="2")

    sp = add("tail", cmd_tail, "count f in W_m for some m > M")
    census_opts(sp, None)
    sp.add_argument("--M", type=int, nargs="+", required=True)
    sp.add_argument("--wtails", action="store_true")

    sp = add("localdensity", cmd_localdensity, "density of m^2 | disc")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--budget", type=int, default=2 * 10**7)

    sp = add("lambda", cmd_lambda, "truncated Euler product for squarefree discriminants")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--P", type=int, required=True)
    sp.add_argument("--budget", type=int, default=2 * 10**7)

    sp = add("distinguished", cmd_distinguished, "candidate roots for seeded symmetric B")
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--C", type=int, default=10)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=1)
    sp.add_argument("--generic", action="store_true", help="do not force b11 = 0")
    sp.add_argument("--precision", type=int, default=128, help="mantissa bits")
    sp.add_argument("--T", type=int, default=None, help="also run the exact n = 3 oracle up to T")

    sp = add("oracle", cmd_oracle, "exhaustive rational isotropic line search, n = 3")
    sp.add_argument("--B", required=True, help="JSON 3x3 symmetric matrix")
    sp.add_argument("--T", type=int, default=10)
    return p


def _flatten(rec: dict, prefix="") -> dict:
    out = {}
    for k, v in rec.items():
        if isinstance(v, dict):
            out.update(_flatten(v, f"{prefix}{k}."))
        elif isinstance(v, list):
            out[prefix + k] = json.dumps(v)
        else:
            out[prefix + k] = v
    return out


def render(records: list[dict], fmt: str, config: ExperimentConfig) -> str:
    meta = {"_meta": {"version": __version__, "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()), "config": asdict(config)}}
    if fmt == "jsonl":
        lines = [json.dumps(meta, sort_keys=True, default=str)]
        lines += [json.dumps(r, sort_keys=True, default=str) for r in records]
        return "\n".join(lines) + "\n"
    flat = [_flatten(r) for r in records]
    cols = sorted({k for r in flat for k in r})
    buf = io.StringIO()
    buf.write("# " + json.dumps(meta, sort_keys=True, default=str) + "\n")
    w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    w.writeheader()
    w.writerows(flat)
    return buf.getvalue()


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    if "--selftest" in argv:
        # required flags of the subcommand are not needed for its examples
        command = next((a for a in argv if a in SELFTESTS), None)
        if command is None:
            print("discsieve: --selftest needs a subcommand", file=sys.stderr)
            return EXIT_USAGE
        return run_selftest(command)
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(ns, "workers", None) is None and hasattr(ns, "workers"):
        ns.workers = default_workers()
    config = ExperimentConfig.from_namespace(ns)
    try:
        records, status = ns.handler(ns)
    except UsageError as exc:
        print(f"discsieve {ns.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetExceeded, FactorizationBudgetExceeded, DensityBudgetExceeded) as exc:
        print(f"discsieve {ns.command}: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InvariantViolation as exc:
        print(f"discsieve {ns.command}: invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except ValueError as exc:
        print(f"discsieve {ns.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(records, ns.format, config)
    if ns.out:
        with open(ns.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
