"""Command-line interface: ``eqalg <subcommand> ...``.

Exit status: 0 success, 1 selftest failure, 2 malformed input, 3 validation
failure, 4 unsupported request.
"""

from __future__ import annotations

import argparse
import difflib
import json
import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from . import acceptance
from .graded import (
    RESTRICTION_TABLE,
    SLICE_ASSUMPTION_P2,
    UnboundedSliceError,
    phi_thr_f2_dims,
    phi_thr_z_dims,
    thh_z_table,
    thr_fp_ring,
    weight_slice,
)
from .io import (
    InputError,
    UnsupportedError,
    builtin_hermitian,
    builtin_mackey,
    dumps,
    load_object,
    render_text,
    resolve_group,
    resolve_hermitian,
    resolve_mackey,
    table_text,
)
from .mackey import box, burnside, validate_green, validate_hermitian, validate_mackey, witt_green
from .ringalg import validate_monoid, validate_ring
from .thr import dihedral_pi0, laurent_closed_form, laurent_window_inclusion, thr_group_ring, thr_pi0, thr_pi0_commutative

OK, FAILED, PARSE, INVALID, UNSUPPORTED = 0, 1, 2, 3, 4


@dataclass
class Outcome:
    payload: dict
    status: int = OK
    text: str | None = None
    extra: list[str] = field(default_factory=list)


# -- subcommands ----------------------------------------------------------------------------


def cmd_validate(args) -> Outcome:
    if args.input:
        kind, obj = load_object(args.input)
    elif args.base:
        kind, obj = "hermitian", builtin_hermitian(args.base)
    else:
        raise InputError("validate needs --input FILE or --base NAME")
    validators = {
        "ring": validate_ring,
        "monoid": validate_monoid,
        "mackey": validate_mackey,
        "green": validate_green,
        "hermitian": validate_hermitian,
    }
    rep = validators[kind](obj)
    payload = {"kind": kind, "report": rep.to_json()}
    return Outcome(payload, OK if rep.ok else INVALID, str(rep))


def cmd_witt(args) -> Outcome:
    if args.input:
        kind, R = load_object(args.input)
        if kind != "ring":
            raise InputError(f"witt needs a ring input, got {kind}")
        label = args.input
    else:
        R = builtin_hermitian(args.base or "F2").ring_e
        label = args.base or "F2"
    if args.decompose and not R.carrier.is_finite():
        raise UnsupportedError("--decompose enumerates elements and needs a finite ring")
    wg = witt_green(R, finite_decomposition=args.decompose)
    rep = validate_green(wg.green)
    payload = {
        "base": label,
        "witt_group": wg.witt.group.invariants(),
        "mackey": wg.green.mackey.to_json(),
        "green_functor": rep.to_json(),
    }
    if args.decompose:
        payload["invariant_factors"] = wg.decomposition
        payload["presentation_agrees"] = wg.decomposition == list(wg.witt.group.torsion)
    return Outcome(payload, OK if rep.ok else INVALID)


def cmd_box(args) -> Outcome:
    inputs = args.input or []
    if len(inputs) != 2:
        raise InputError("box needs exactly two --input values (file or built-in name)")
    M, N = resolve_mackey(inputs[0]), resolve_mackey(inputs[1])
    for X, name in ((M, inputs[0]), (N, inputs[1])):
        rep = validate_mackey(X)
        if not rep.ok:
            return Outcome({"input": name, "report": rep.to_json()}, INVALID, str(rep))
    P = box(M, N)
    rep = validate_mackey(P.result)
    payload = {"left": M.to_json(), "right": N.to_json(), "result": P.result.to_json(), "valid": rep.ok, "relations": P.trace}
    return Outcome(payload, OK if rep.ok else INVALID)


def cmd_thr_pi0(args) -> Outcome:
    H = resolve_hermitian(args.base or "Z", args.input)
    rep = validate_hermitian(H)
    if not rep.ok:
        return Outcome({"report": rep.to_json()}, INVALID, str(rep))
    if args.commutative:
        if not H.ring_e.is_commutative() or H.ring_fix is None:
            raise UnsupportedError("the commutative formula needs a commutative ring with a fixed-level ring")
        res = thr_pi0_commutative(H)
    else:
        res = thr_pi0(H)
    payload = {"base": args.base or "Z", **res.to_json()}
    return Outcome(payload, OK if res.ok else INVALID)


def _basis_dicts(G) -> dict:
    D = dihedral_pi0(G)
    return {
        "conjugacy_classes": {str(k): n for k, n in enumerate(D.class_names)},
        "class_involution": D.class_w,
        "fixed_pairs": {str(k): n for k, n in enumerate(D.pair_names)},
        "fixed_pair_products": [D.class_names[k] for k in D.pair_res],
    }


def cmd_group_ring(args) -> Outcome:
    G = resolve_group(args.group, args.input if args.group is None else None)
    if not G.is_group():
        raise UnsupportedError(f"{G.label} is not a group; the group-ring formula needs inverses")
    base = args.base or "Z"
    if base.lower() == "file":
        raise UnsupportedError("group-ring takes a built-in base; use thr-pi0 with --base file for custom rings")
    H = builtin_hermitian(base)
    rep = thr_group_ring(G, H, base_is_integers=base.upper() == "Z")
    payload = {
        "group": args.group or G.label,
        "base": base,
        "mackey": rep.result.to_json(),
        "basis": _basis_dicts(G),
        "checks": dict(sorted(rep.checks.items())),
        "notes": rep.notes,
    }
    return Outcome(payload, OK if rep.ok else INVALID)


def cmd_laurent(args) -> Outcome:
    base = args.base or "Z"
    if base.upper() != "Z":
        raise UnsupportedError("the Laurent example is implemented over Z only")
    N = args.window if args.window is not None else 5
    if N < 1:
        raise InputError("--window must be at least 1")
    M = laurent_closed_form(N)
    cmp_ = acceptance.laurent_comparison(N)
    stable = laurent_window_inclusion(N, N + 3)
    checks = {
        "Mackey axioms": validate_mackey(M).ok,
        "closed form agrees with the dihedral presentation": cmp_.is_isomorphism(),
        f"window {N} includes into window {N + 3}": stable.is_morphism() and stable.is_injective(),
    }
    payload = {"window": N, "mackey": M.to_json(), "checks": checks}
    return Outcome(payload, OK if all(checks.values()) else INVALID)


def cmd_graded(args) -> Outcome:
    N = args.max_degree if args.max_degree is not None else 20
    if N < 0:
        raise InputError("--max-degree must be nonnegative")
    p = args.prime if args.prime is not None else 2
    target = args.target
    if target == "phi-z":
        r = phi_thr_z_dims(N)
        payload = {"target": target, "dims": r.dims, "monomial_counts": r.monomial_counts, "agree": r.agree, "notes": r.notes}
        text = table_text(["n", "Tor", "monomials"], [[n, r.dims[n], r.monomial_counts[n]] for n in range(N + 1)])
        return Outcome(payload, OK if r.agree else INVALID, text)
    if target == "phi-f2":
        r = phi_thr_f2_dims(N, p)
        payload = {"target": target, "prime": p, "dims": r.dims, "monomial_counts": r.monomial_counts, "agree": r.agree}
        if r.notes:
            payload["notes"] = r.notes
        text = table_text(["n", "dim", "monomials"], [[n, r.dims[n], r.monomial_counts[n]] for n in range(N + 1)])
        return Outcome(payload, OK if r.agree else INVALID, text)
    if target == "slice":
        k = args.weight if args.weight is not None else 0
        try:
            dims = weight_slice(thr_fp_ring(p), k, N)
        except UnboundedSliceError as exc:
            raise UnsupportedError(str(exc)) from exc
        payload = {"target": target, "prime": p, "weight": k, "dims": dims, "restriction": RESTRICTION_TABLE}
        if p == 2:
            payload["assumption"] = SLICE_ASSUMPTION_P2
        return Outcome(payload, OK, table_text(["n", "dim"], [[n, d] for n, d in enumerate(dims)]))
    if target == "thh-z":
        prime = args.prime
        groups = [thh_z_table(n, prime) for n in range(N + 1)]
        payload = {"target": target, "prime": prime, "groups": [G.invariants() for G in groups]}
        return Outcome(payload, OK, table_text(["n", "group"], [[n, str(G)] for n, G in enumerate(groups)]))
    raise InputError(f"unknown target {target!r}")  # pragma: no cover - argparse restricts choices


# -- selftest and golden files --------------------------------------------------------------

GOLDEN_JOBS = {
    "witt_f2": ["witt", "--base", "F2", "--decompose"],
    "thr_pi0_z": ["thr-pi0", "--base", "Z"],
    "thr_pi0_f3": ["thr-pi0", "--base", "F3"],
    "group_ring_c2_z": ["group-ring", "--group", "c2", "--base", "Z"],
    "group_ring_c2_burnside": ["group-ring", "--group", "c2", "--base", "burnside"],
    "laurent_5": ["laurent", "--window", "5"],
    "graded_phi_z": ["graded", "--target", "phi-z", "--max-degree", "20"],
    "graded_slice_p2": ["graded", "--target", "slice", "--prime", "2", "--max-degree", "20"],
    "graded_thh_z": ["graded", "--target", "thh-z", "--max-degree", "20"],
}

FAULTS = {"burnside-tran": "Burnside transfer with tran(1) = 1 + t, so res tran(1) = 3"}


def default_golden_dir() -> Path:
    return Path(str(resources.files("eqalg") / "golden"))


def golden_output(job: list[str]) -> str:
    args = build_parser().parse_args(job + ["--format", "json"])
    return dumps(args.func(args).payload)


def check_golden(directory: Path) -> list[tuple[str, list[str]]]:
    """``(name, diff lines)`` for every golden job; empty diff means match."""
    out = []
    for name, job in GOLDEN_JOBS.items():
        path = directory / f"{name}.json"
        got = golden_output(job)
        want = path.read_text() if path.exists() else ""
        diff = [] if got == want else list(
            difflib.unified_diff(want.splitlines(), got.splitlines(), f"golden/{name}.json", "current", lineterm="")
        )
        if not path.exists():
            diff = [f"missing golden file {path}"]
        out.append((name, diff))
    return out


def write_golden(directory: Path) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    for name, job in GOLDEN_JOBS.items():
        (directory / f"{name}.json").write_text(golden_output(job))


def builtin_input_checks(fault: str | None = None) -> list[tuple[str, object]]:
    """Validation of the built-in inputs; ``fault`` mutates one on purpose."""
    B = builtin_mackey("burnside")
    if fault == "burnside-tran":
        B = B.with_maps(tran=[[1], [1]])
    elif fault is not None:
        raise InputError(f"unknown fault {fault!r}; known: {', '.join(FAULTS)}")
    checks = [("mackey.validate_mackey(burnside)", validate_mackey(B))]
    G = burnside()
    G.mackey = B
    checks.append(("mackey.validate_green(burnside)", validate_green(G)))
    for name in ("Z", "F2", "F3", "F5"):
        checks.append((f"mackey.validate_hermitian({name})", validate_hermitian(builtin_hermitian(name))))
    return checks


def cmd_selftest(args) -> Outcome:
    directory = Path(args.golden_dir) if args.golden_dir else default_golden_dir()
    if args.update_golden:
        write_golden(directory)
    lines, failures = [], []
    payload = {"inputs": {}, "criteria": {}, "golden": {}}
    for source, rep in builtin_input_checks(args.inject_fault):
        payload["inputs"][source] = rep.to_json()
        lines.append(f"{'PASS' if rep.ok else 'FAIL'} input {source}")
        if not rep.ok:
            failures.append(f"{source}: " + "; ".join(str(v) for v in rep.violations))
    for c in acceptance.run_all():
        payload["criteria"][str(c.number)] = {"title": c.title, "ok": c.ok, "source": acceptance.SOURCES[c.number], "details": c.details}
        lines.append(c.line())
        if not c.ok:
            failures.append(f"criterion {c.number} ({acceptance.SOURCES[c.number]}): " + "; ".join(c.details))
    for name, diff in check_golden(directory):
        payload["golden"][name] = {"ok": not diff, "diff": diff}
        lines.append(f"{'PASS' if not diff else 'FAIL'} golden {name}")
        if diff:
            failures.append(f"golden file drift in {name}:\n" + "\n".join(diff))
    payload["failures"] = failures
    text = "\n".join(lines + ([""] + ["failures:"] + failures if failures else []))
    return Outcome(payload, FAILED if failures else OK, text)


# -- plumbing -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--out", help="write the report to this file")

    parser = argparse.ArgumentParser(prog="eqalg", description="Exact algebra of Z/2-Mackey functors and real THH.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="validate a ring, monoid, Mackey, Green or Hermitian input")
    p.add_argument("--input")
    p.add_argument("--base", help="built-in Hermitian input: Z, F2, F3, F5, burnside")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("witt", parents=[common], help="2-truncated Witt vectors as a Green functor")
    p.add_argument("--base", help="Z, F2, F3, F5")
    p.add_argument("--input", help="ring JSON")
    p.add_argument("--decompose", action="store_true", help="invariant factors by enumeration")
    p.set_defaults(func=cmd_witt)

    p = sub.add_parser("box", parents=[common], help="box product of two Mackey functors")
    p.add_argument("--input", action="append", help="Mackey JSON file or built-in name (twice)")
    p.set_defaults(func=cmd_box)

    p = sub.add_parser("thr-pi0", parents=[common], help="pi_0 of THR of a Hermitian Mackey functor")
    p.add_argument("--base", default="Z", help="Z, F2, F3, F5, burnside or file")
    p.add_argument("--input")
    p.add_argument("--commutative", action="store_true", help="use the commutative presentation")
    p.set_defaults(func=cmd_thr_pi0)

    p = sub.add_parser("group-ring", parents=[common], help="pi_0 THR of a group ring")
    p.add_argument("--group", help="c2, c3, s3, c2xc2, ... (any c<n>, products, d4, q8)")
    p.add_argument("--input", help="monoid JSON instead of --group")
    p.add_argument("--base", default="Z", help="Z, F2, F3, F5, burnside")
    p.add_argument("--window", type=int, help="unused for finite groups")
    p.set_defaults(func=cmd_group_ring)

    p = sub.add_parser("laurent", parents=[common], help="pi_0 THR of Z[t, 1/t], truncated")
    p.add_argument("--window", type=int, default=5)
    p.add_argument("--base", default="Z")
    p.set_defaults(func=cmd_laurent)

    p = sub.add_parser("graded", parents=[common], help="graded Tor and monomial counts")
    p.add_argument("--target", required=True, choices=["phi-z", "phi-f2", "slice", "thh-z"])
    p.add_argument("--max-degree", type=int, default=20)
    p.add_argument("--prime", type=int)
    p.add_argument("--weight", type=int, default=0)
    p.set_defaults(func=cmd_graded)

    p = sub.add_parser("selftest", parents=[common], help="run every acceptance check and golden comparison")
    p.add_argument("--golden-dir")
    p.add_argument("--update-golden", action="store_true")
    p.add_argument("--inject-fault", choices=sorted(FAULTS), help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_selftest)
    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _diagnostic(kind: str, message: str) -> str:
    return json.dumps({"error": kind, "message": message}, sort_keys=True)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        outcome = args.func(args)
    except InputError as exc:
        print(_diagnostic("parse", str(exc)), file=sys.stderr)
        return PARSE
    except UnsupportedError as exc:
        print(_diagnostic("unsupported", str(exc)), file=sys.stderr)
        return UNSUPPORTED
    if args.format == "json":
        _emit(dumps(outcome.payload), args.out)
    else:
        _emit(outcome.text if outcome.text is not None else render_text(outcome.payload), args.out)
    if outcome.status == INVALID:
        print(_diagnostic("validation", "validation failed; see the report"), file=sys.stderr)
    return outcome.status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
