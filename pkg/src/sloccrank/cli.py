"""Command-line surface: generation, ranks, signatures, verification, tables.

Machine-readable JSON goes to stdout, human-readable notes to stderr.
Exit codes: 0 when the command succeeded and every check passed, 1 when a
verification or table check failed, 2 for usage or input errors.  All
randomness flows from the --seed flag, so identical invocations produce
byte-identical stdout.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .classify import TABLE_IDS, classify_table, dicke_rank_scan, rank_signature
from .coeffmatrix import QubitPermutation, coefficient_matrix, enumerate_sigmas
from .rank import NumericFailure, ShapeError, exact_rank, numeric_rank
from .scalar import ParseError, scalar_parse
from .slocc import apply_local, random_invertible_ops, random_local_ops, verify_det_relation, verify_matrix_equation
from .states import (
    StateFormatError,
    basis_state,
    dicke_state,
    family_state,
    ghz_state,
    ladder_state,
    load_state,
    save_state,
)

_GEN_FAMILIES = ("basis", "ghz", "w", "dicke", "ladder", "L_a2b2", "L_ab3", "L_abc2", "span_0kPsi")


class UsageError(Exception):
    """Input problem that should exit with code 2."""


def _log(message: str) -> None:
    print(message, file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sloccrank",
        description="Classify pure n-qubit states by exact coefficient-matrix ranks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a named state and write it to a JSON file")
    gen.add_argument("--family", required=True, choices=_GEN_FAMILIES)
    gen.add_argument("--n", type=int, required=True, help="qubit count")
    gen.add_argument("--ell", type=int, help="excitation count (dicke)")
    gen.add_argument("--r", type=int, help="diagonal steps (ladder)")
    gen.add_argument("--index", type=int, default=0, help="basis index (basis, default 0)")
    for name in ("a", "b", "c", "alpha", "beta"):
        gen.add_argument(f"--{name}", help=f"family parameter {name} (scalar grammar)")
    gen.add_argument("-o", "--output", required=True, help="output state file")

    rank_cmd = sub.add_parser("rank", help="rank of a state's coefficient matrix")
    rank_cmd.add_argument("--state", required=True)
    rank_cmd.add_argument("--sigma", default="", help='swap set as "q:t,..." (default: identity)')
    rank_cmd.add_argument("--numeric", action="store_true", help="use the SVD backend instead")
    rank_cmd.add_argument("--tol", type=float, help="singular-value threshold for --numeric")

    sig = sub.add_parser("signature", help="ranks under a list of swap sets")
    sig.add_argument("--state", required=True)
    sig.add_argument("--sigmas", default="all", help='"all" or semicolon-separated swap sets')

    perms = sub.add_parser("permutations", help="list the enumerated swap sets for n qubits")
    perms.add_argument("--n", type=int, required=True)

    verify = sub.add_parser("verify", help="randomized checks of the transformation identities")
    verify.add_argument("--state", required=True)
    verify.add_argument("--trials", type=int, required=True)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--allow-singular", action="store_true",
                        help="draw unconstrained operators and check rank monotonicity")

    table = sub.add_parser("table", help="reproduce one of the built-in family tables")
    table.add_argument("--id", required=True, choices=TABLE_IDS)
    table.add_argument("--samples", type=int, required=True, help="samples per cell")
    table.add_argument("--seed", type=int, default=0)

    scan = sub.add_parser("dicke-scan", help="rank and row structure of the Dicke states")
    scan.add_argument("--n", type=int, required=True)

    return parser


def _parse_scalar_flag(name: str, text: str | None):
    if text is None:
        raise UsageError(f"family parameter --{name} is required")
    try:
        return scalar_parse(text)
    except ParseError as exc:
        raise UsageError(f"bad scalar for --{name}: {exc}") from exc


def _parse_sigma(text: str) -> QubitPermutation:
    try:
        return QubitPermutation.from_text(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _cmd_gen(args) -> tuple[dict, int]:
    family = args.family
    payload: dict = {"family": family, "n": args.n}
    if family == "basis":
        state = basis_state(args.n, args.index)
        payload["index"] = args.index
    elif family == "ghz":
        state = ghz_state(args.n)
    elif family == "w":
        state = dicke_state(args.n, 1)
    elif family == "dicke":
        if args.ell is None:
            raise UsageError("gen --family dicke requires --ell")
        state = dicke_state(args.n, args.ell)
        payload["ell"] = args.ell
    elif family == "ladder":
        if args.r is None:
            raise UsageError("gen --family ladder requires --r")
        state = ladder_state(args.n, args.r)
        payload["r"] = args.r
    else:
        if args.n != 4:
            raise UsageError(f"family {family} is defined on 4 qubits")
        names = {"L_a2b2": ("a", "b"), "L_ab3": ("a", "b"),
                 "L_abc2": ("a", "b", "c"), "span_0kPsi": ("alpha", "beta")}[family]
        params = {name: _parse_scalar_flag(name, getattr(args, name)) for name in names}
        state = family_state(family, **params)
        for name in names:
            payload[name] = getattr(args, name)
    save_state(state, args.output)
    payload["terms"] = len(state.amps)
    payload["output"] = args.output
    _log(f"gen: wrote {family} state on {state.n} qubits to {args.output}")
    return payload, 0


def _cmd_rank(args) -> tuple[dict, int]:
    state = load_state(args.state)
    sigma = _parse_sigma(args.sigma)
    matrix = coefficient_matrix(state, sigma)
    if args.numeric:
        value = numeric_rank(matrix, tol=args.tol)
        payload = {"rank": value, "sigma": args.sigma, "numeric": True}
        if args.tol is not None:
            payload["tol"] = args.tol
    else:
        payload = {"rank": exact_rank(matrix).rank, "sigma": args.sigma}
    _log(f"rank: n={state.n}, sigma={args.sigma!r}")
    return payload, 0


def _cmd_signature(args) -> tuple[dict, int]:
    state = load_state(args.state)
    if args.sigmas == "all":
        sigmas = enumerate_sigmas(state.n)
    else:
        sigmas = [_parse_sigma(chunk) for chunk in args.sigmas.split(";")]
    signature = rank_signature(state, sigmas)
    payload = {
        "n": state.n,
        "sigmas": [s.to_text() for s in signature.sigmas],
        "ranks": list(signature.ranks),
    }
    _log(f"signature: n={state.n}, {len(sigmas)} swap sets")
    return payload, 0


def _cmd_permutations(args) -> tuple[dict, int]:
    sigmas = enumerate_sigmas(args.n)
    payload = {"n": args.n, "count": len(sigmas), "sigmas": [s.to_text() for s in sigmas]}
    return payload, 0


def _cmd_verify(args) -> tuple[dict, int]:
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    state = load_state(args.state)
    n = state.n
    sigmas = enumerate_sigmas(n) if n >= 2 else [QubitPermutation()]
    base_ranks = rank_signature(state, sigmas).ranks
    master = random.Random(args.seed)

    equation_failures = 0
    rank_failures = 0
    det_failures = 0
    det_runs = 0
    for _ in range(args.trials):
        op_seed = master.randrange(2**32)
        if args.allow_singular:
            ops = random_local_ops(n, op_seed)
        else:
            ops = random_invertible_ops(n, op_seed)
        random_sigma = sigmas[master.randrange(len(sigmas))]
        if not verify_matrix_equation(state, ops):
            equation_failures += 1
        if not verify_matrix_equation(state, ops, random_sigma):
            equation_failures += 1
        transformed = apply_local(state, ops)
        after = tuple(exact_rank(coefficient_matrix(transformed, s)).rank for s in sigmas)
        if args.allow_singular:
            if any(a > b for a, b in zip(after, base_ranks)):
                rank_failures += 1
        elif after != base_ranks:
            rank_failures += 1
        if n % 2 == 0:
            det_runs += 1
            if not verify_det_relation(state, ops):
                det_failures += 1

    rank_check = "monotonicity" if args.allow_singular else "invariance"
    payload = {
        "state": args.state,
        "n": n,
        "trials": args.trials,
        "seed": args.seed,
        "allow_singular": args.allow_singular,
        "checks": {
            "matrix_equation": {"runs": 2 * args.trials, "failures": equation_failures},
            f"rank_{rank_check}": {"runs": args.trials, "failures": rank_failures},
            "det_relation": {"runs": det_runs, "failures": det_failures},
        },
    }
    failed = equation_failures or rank_failures or det_failures
    payload["pass"] = not failed
    _log(f"verify: {args.trials} trials on n={n}, {'FAILED' if failed else 'all checks passed'}")
    return payload, 1 if failed else 0


def _cmd_table(args) -> tuple[dict, int]:
    if args.samples < 1:
        raise UsageError("--samples must be at least 1")
    report = classify_table(args.id, args.samples, args.seed)
    _log(f"table {args.id}: {'PASS' if report.passed else 'FAIL'}")
    return report.to_json_dict(), 0 if report.passed else 1


def _cmd_dicke_scan(args) -> tuple[dict, int]:
    rows = dicke_rank_scan(args.n)
    payload = {
        "n": args.n,
        "rows": [
            {
                "ell": row.ell,
                "rank": row.rank,
                "distinct_rows": row.distinct_nonzero_rows,
                "row_multiplicities": list(row.row_multiplicities),
            }
            for row in rows
        ],
        "pass": True,
    }
    return payload, 0


_HANDLERS = {
    "gen": _cmd_gen,
    "rank": _cmd_rank,
    "signature": _cmd_signature,
    "permutations": _cmd_permutations,
    "verify": _cmd_verify,
    "table": _cmd_table,
    "dicke-scan": _cmd_dicke_scan,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = _HANDLERS[args.command]
    try:
        payload, code = handler(args)
    except (UsageError, StateFormatError, ParseError, ShapeError, NumericFailure,
            ValueError, OSError) as exc:
        _log(f"error: {exc}")
        return 2
    print(json.dumps(payload))
    return code


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
