"""Command-line front end.

    qfock qbinom --p 5 --n 13 --m 5 --at-root
    qfock weyl --p 5 --m 12 --format json
    qfock infmod --p 3 --s 7 --window 12
    qfock classify --p 3 --lambda -8
    qfock verify --p 3 --bound 6 --which 2
    qfock selftest

Exit codes: 0 success, 1 usage error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import acceptance
from .exact_arith import digits, parse_cyclotomic, q_binomial, q_binomial_at
from .fock_modules import F1, F2, FockLabel, FockVector, act, act_oracle, oracle_action, specialize_vector
from .rep_analysis import ModuleReport, WindowTooSmall, classify, infinite_module, weyl_module
from .uq_algebra import K, K_INV, e, f, verify_defining_relations, weight_digits

SCHEMA_VERSION = "1"
OK, USAGE, FAILED = 0, 1, 2
_SAFE_INT = 2 ** 53


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# JSON documents
# ---------------------------------------------------------------------------

def _num(n):
    """Integers that a double cannot hold exactly are emitted as strings."""
    return n if -_SAFE_INT < n < _SAFE_INT else str(n)


def _weight(w):
    return {"lambda": _num(w.lam), "lambda0": _num(w.digits.n0), "lambda1": _num(w.digits.n1)}


def _label_from(text):
    name, rest = text.split("(", 1)
    r1, r2 = (int(x) for x in rest.rstrip(")").split(","))
    return FockLabel(F1 if name == "f" else F2, r1, r2)


def _sparse(vec):
    return {str(i): str(c) for i, c in sorted(vec.items())}


def report_to_dict(report):
    actions = {}
    for name, mat in report.actions.items():
        actions[name] = [[j, i, str(c)] for j in sorted(mat) for i, c in sorted(mat[j].items())]
    return {
        "name": report.name,
        "kind": report.kind,
        "p": report.p,
        "params": {k: _num(v) for k, v in report.params.items()},
        "dim": report.dim,
        "basis": [str(lab) for lab in report.basis],
        "weights": [_weight(w) for w in report.weights],
        "generator_order": report.generator_order,
        "actions": actions,
        "maximal_submodule": list(report.maximal_submodule),
        "highest_weight_vectors": [
            {"vector": _sparse(v), "weight": _weight(w)} for v, w in report.highest_weight_vectors
        ],
        "submodule_highest_weights": [_weight(w) for w in report.submodule_highest_weights],
        "quotient_highest_weights": [_weight(w) for w in report.quotient_highest_weights],
        "classification": [
            {"object": c["object"], "lambda": _num(c["lambda"])} for c in report.classification
        ],
        "boundary_flags": {k: sorted(set(v)) for k, v in sorted(report.boundary_flags.items())},
        "irreducible": report.irreducible,
    }


def report_from_dict(doc):
    """Rebuild a ModuleReport from report_to_dict output."""
    p = doc["p"]

    def weight(w):
        return weight_digits(int(w["lambda"]), p)

    def vec(d):
        return {int(i): parse_cyclotomic(c, p) for i, c in d.items()}

    actions = {}
    for name, entries in doc["actions"].items():
        mat = {}
        for j, i, c in entries:
            mat.setdefault(j, {})[i] = parse_cyclotomic(c, p)
        actions[name] = mat
    basis = [_label_from(s) for s in doc["basis"]]
    report = ModuleReport(
        kind=doc["kind"],
        p=p,
        params={k: int(v) for k, v in doc["params"].items()},
        basis=basis,
        actions=actions,
        weights=[weight(w) for w in doc["weights"]],
        generator_order=doc["generator_order"],
        maximal_submodule=list(doc["maximal_submodule"]),
        highest_weight_vectors=[(vec(h["vector"]), weight(h["weight"])) for h in doc["highest_weight_vectors"]],
        submodule_highest_weights=[weight(w) for w in doc["submodule_highest_weights"]],
        quotient_highest_weights=[weight(w) for w in doc["quotient_highest_weights"]],
        classification=[{"object": c["object"], "lambda": int(c["lambda"])} for c in doc["classification"]],
        boundary_flags={k: list(v) for k, v in doc["boundary_flags"].items()},
        irreducible=doc["irreducible"],
    )
    report._index = {lab: i for i, lab in enumerate(basis)}
    return report


def emit_json(doc):
    """Deterministic serialization: sorted keys, fixed separators, trailing newline."""
    return (json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def _document(command, payload, diagnostics=None):
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "payload": payload,
        "diagnostics": diagnostics or {},
    }


# ---------------------------------------------------------------------------
# subcommands; each returns (exit code, document, text lines)
# ---------------------------------------------------------------------------

def _cmd_qbinom(args):
    if args.at_root:
        value = q_binomial_at(args.n, args.m, args.p)
    else:
        value = q_binomial(args.n, args.m)
    payload = {"n": _num(args.n), "m": _num(args.m), "p": args.p, "at_root": args.at_root, "value": str(value)}
    return OK, payload, {}, [str(value)]


def _lams(ws):
    return ", ".join(str(w.lam) for w in ws) or "none"


def _report_text(report):
    lines = [
        report.name,
        f"dim: {report.dim}",
        f"basis: {report.basis[0]} .. {report.basis[-1]}",
        "weights: " + " ".join(str(w.lam) for w in report.weights),
        f"irreducible: {str(report.irreducible).lower()}",
        f"maximal_submodule: {list(report.maximal_submodule)}",
    ]
    for vec, w in report.highest_weight_vectors:
        terms = " + ".join(f"({c}) {report.basis[i]}" for i, c in vec.items())
        lines.append(f"highest weight vector: {terms}  weight {w.lam} (digits {w.digits.n0}, {w.digits.n1})")
    if report.maximal_submodule:
        lines.append(f"submodule highest weight: {_lams(report.submodule_highest_weights)}")
        lines.append(f"quotient highest weight: {_lams(report.quotient_highest_weights)}")
    for c in report.classification:
        lines.append(f"{c['object']} is isomorphic to V({c['lambda']})")
    for name, js in report.boundary_flags.items():
        lines.append(f"window edge: {name} leaves the window on {len(set(js))} of the basis vectors")
    return lines


def _cmd_weyl(args):
    if args.m < 0:
        raise UsageError(f"argument --m: must be >= 0, got {args.m}")
    report = weyl_module(args.p, args.m)
    lines = _report_text(report)
    if report.maximal_submodule:
        m0, m1 = digits(args.m, args.p)
        lines.append(f"quotient dim: {report.dim - len(report.maximal_submodule)} = ({m0}+1)({m1}+1)")
    return OK, report_to_dict(report), {"boundary_flags": {}}, lines


def _cmd_infmod(args):
    try:
        report = infinite_module(args.p, args.s, args.window)
    except WindowTooSmall as exc:
        raise UsageError(f"argument --window: {exc}") from exc
    flags = {k: sorted(set(v)) for k, v in sorted(report.boundary_flags.items())}
    return OK, report_to_dict(report), {"boundary_flags": flags}, _report_text(report)


def _cmd_classify(args):
    recipes = classify(args.p, args.lam)
    w = weight_digits(args.lam, args.p)
    lines = [f"V({args.lam}) at p={args.p}, digits ({w.digits.n0}, {w.digits.n1})"]
    for n, r in enumerate(recipes):
        tag = "primary" if n == 0 else "alternate"
        lines.append(f"{tag}: {r['object']} of {r['module']} ({r['source']})")
    payload = {"lambda": _weight(w), "p": args.p, "recipes": recipes}
    return OK, payload, {}, lines


def _oracle_agreement(p, which, bound):
    space = F1 if which == 1 else F2
    gens = [e(r) for r in range(1, 2 * p + 2)] + [f(r) for r in range(1, 2 * p + 2)] + [K, K_INV]
    count = 0
    for r1 in range(bound + 1):
        for r2 in range(bound + 1):
            lab = FockLabel(space, r1, r2)
            for g in gens:
                oracle = act_oracle(g, lab, which)
                if oracle != act(g, FockVector.basis(space, r1, r2), which):
                    return None, f"{g} on {lab}: oracle gives {oracle}"
                if specialize_vector(oracle, p) != act(g, FockVector.basis(space, r1, r2, p), which):
                    return None, f"{g} on {lab} at eps (p={p}) disagrees"
                count += 1
    return count, None


def _cmd_verify(args):
    if args.bound < 1:
        raise UsageError(f"argument --bound: must be >= 1, got {args.bound}")
    checks = []
    code = OK
    lines = []
    for label, action in (("closed form", None), ("boson oracle", oracle_action(args.which))):
        fail = verify_defining_relations(args.which, args.bound, action)
        entry = {"check": f"relations ({label})", "passed": fail is None}
        if fail is not None:
            entry["counterexample"] = fail._asdict()
            lines += [
                f"FAIL relations ({label})",
                f"  relation: {fail.relation}",
                f"  vector:   {fail.vector}",
                f"  lhs:      {fail.lhs}",
                f"  rhs:      {fail.rhs}",
            ]
            code = FAILED
        else:
            lines.append(f"PASS relations ({label}): r1, r2 <= {args.bound}")
        checks.append(entry)
    count, problem = _oracle_agreement(args.p, args.which, args.bound)
    entry = {"check": "closed form vs oracle actions", "passed": problem is None}
    if problem:
        entry["counterexample"] = problem
        lines.append(f"FAIL closed form vs oracle actions: {problem}")
        code = FAILED
    else:
        entry["cases"] = count
        lines.append(f"PASS closed form vs oracle actions: {count} cases, generic q and eps")
    checks.append(entry)
    ok, detail = acceptance.confluence(seed=args.seed, count=20)
    checks.append({"check": "normal ordering confluence", "passed": ok, "detail": detail})
    lines.append(f"{'PASS' if ok else 'FAIL'} normal ordering confluence: {detail}")
    if not ok:
        code = FAILED
    return code, {"checks": checks}, {"seed": args.seed}, lines


def _threads():
    raw = os.environ.get("QFOCK_THREADS", "").strip()
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"QFOCK_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise UsageError(f"QFOCK_THREADS must be a positive integer, got {raw!r}")
    return n


def _cpus():
    if hasattr(os, "sched_getaffinity"):
        return len(os.sched_getaffinity(0))
    return os.cpu_count() or 1


def _cmd_selftest(args):
    known = [n for n, *_ in acceptance.CRITERIA]
    numbers = known if args.criteria is None else args.criteria
    bad = [n for n in numbers if n not in known]
    if bad:
        raise UsageError(f"argument --criteria: no criterion numbered {bad[0]}")
    workers = min(_threads(), len(numbers), _cpus())
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(acceptance.run_criterion, numbers, [args.seed] * len(numbers)))
    else:
        results = [acceptance.run_criterion(n, args.seed) for n in numbers]
    ok = all(r.passed for r in results)
    payload = {
        "criteria": [
            {"number": r.number, "name": r.name, "passed": r.passed, "detail": r.detail, "budget_seconds": r.budget}
            for r in results
        ]
    }
    lines = [r.line() for r in results]
    lines.append(f"{sum(r.passed for r in results)}/{len(results)} criteria passed")
    return (OK if ok else FAILED), payload, {"seed": args.seed}, lines


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _odd_p(text):
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if p <= 1 or p % 2 == 0:
        raise argparse.ArgumentTypeError(f"p must be an odd integer > 1, got {p}")
    return p


def _number_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for random words in verify/selftest")

    parser = _Parser(prog="qfock", description="U_eps^res(sl2) modules on restricted q-Fock spaces", parents=[common])
    sub = parser.add_subparsers(dest="subcommand", parser_class=_Parser)
    sub.required = True

    q = sub.add_parser("qbinom", parents=[common], help="Gaussian binomial [n over m]")
    q.add_argument("--p", type=_odd_p, required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--at-root", action="store_true", help="evaluate at a primitive p-th root of unity")
    q.set_defaults(run=_cmd_qbinom)

    w = sub.add_parser("weyl", parents=[common], help="structure of the Weyl module V_m")
    w.add_argument("--p", type=_odd_p, required=True)
    w.add_argument("--m", type=int, required=True)
    w.set_defaults(run=_cmd_weyl)

    i = sub.add_parser("infmod", parents=[common], help="structure of V^s (s >= 0) or W^s (s < 0)")
    i.add_argument("--p", type=_odd_p, required=True)
    i.add_argument("--s", type=int, required=True)
    i.add_argument("--window", type=int, default=None, help="largest index kept (default 6p, at least 4p)")
    i.set_defaults(run=_cmd_infmod)

    c = sub.add_parser("classify", parents=[common], help="where V(lambda) is realized")
    c.add_argument("--p", type=_odd_p, required=True)
    c.add_argument("--lambda", dest="lam", type=int, required=True)
    c.set_defaults(run=_cmd_classify)

    v = sub.add_parser("verify", parents=[common], help="relation and oracle checks")
    v.add_argument("--p", type=_odd_p, required=True)
    v.add_argument("--bound", type=int, default=6)
    v.add_argument("--which", type=int, choices=(1, 2), required=True)
    v.set_defaults(run=_cmd_verify)

    s = sub.add_parser("selftest", parents=[common], help="run the acceptance battery")
    s.add_argument("--criteria", type=_number_list, default=None, help="comma-separated subset, e.g. 1,2,8")
    s.set_defaults(run=_cmd_selftest)
    return parser


def _echo(args):
    skip = {"run", "format", "subcommand"}
    return {
        "subcommand": args.subcommand,
        "args": {k: (_num(v) if isinstance(v, int) and not isinstance(v, bool) else v)
                 for k, v in sorted(vars(args).items()) if k not in skip},
    }


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        code, payload, diagnostics, lines = args.run(args)
    except UsageError as exc:
        print(f"qfock: error: {exc}", file=stderr)
        return USAGE
    if args.format == "json":
        stdout.write(emit_json(_document(_echo(args), payload, diagnostics)).decode("utf-8"))
    else:
        for line in lines:
            print(line, file=stdout)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
