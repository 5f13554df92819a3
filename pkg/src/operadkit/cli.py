"""Command-line entry point: ``operadkit <subcommand> [flags] [args]``.

Exit status is 0 on success, 1 on a domain error or bad usage, and 2 when
a requested verification fails. Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Any, Sequence, TextIO

from . import checks
from . import freealg as fa
from . import present as pr
from . import rewrite as rw
from . import series as se
from .formats import FORMATS, emit
from .lincomb import parse_lincomb
from .trees import parse_tree
from .words import (
    DomainError,
    kbasis_compose,
    kbasis_contract,
    kbasis_expand,
    parse_word,
    tm_compose,
)

DEFAULT_SEED = checks.DEFAULT_SEED
EXIT_OK, EXIT_DOMAIN, EXIT_VERIFY = 0, 1, 2


class UsageError(DomainError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with status 2
        raise UsageError(f"{self.prog}: {message}")


class VerificationFailure(Exception):
    def __init__(self, output: str):
        super().__init__("verification failed")
        self.output = output


def _seed(text: str) -> int:
    try:
        return int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad seed {text!r}") from None


def _common() -> argparse.ArgumentParser:
    p = _Parser(add_help=False)
    p.add_argument("--gamma", type=int)
    p.add_argument("--operad")
    p.add_argument("--rules")
    p.add_argument("--arity", "-n", type=int)
    p.add_argument("--max-n", type=int)
    p.add_argument("--seed", type=_seed)
    p.add_argument("--format", default="text", choices=FORMATS)
    p.add_argument("--budget", type=int)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="operadkit", description="Pluriassociative and polydendriform operads.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(name: str, help_: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], help=help_)

    p = add("compose", "partial composition of words")
    p.add_argument("x")
    p.add_argument("i", type=int)
    p.add_argument("y")

    p = add("kbasis", "K-basis change of basis and composition")
    p.add_argument("action", choices=("expand", "contract", "compose"))
    p.add_argument("args", nargs="+")

    p = add("nf", "normal form of a tree under a rule set")
    p.add_argument("tree")

    add("cp", "critical pairs and local confluence")

    add("dual", "Koszul dual of a presentation")
    add("qdim", "quotient dimension of a presentation")
    add("dims", "closed-form dimension table")
    add("series", "functional-equation coefficients and the inverse identity")

    p = add("freealg", "product in a free algebra or multiprojection instance")
    p.add_argument("algebra")
    p.add_argument("op")
    p.add_argument("a", type=int)
    p.add_argument("x")
    p.add_argument("y")

    p = add("check", "run an invariant suite")
    p.add_argument("suite")
    return parser


def _need(args: argparse.Namespace, *names: str) -> None:
    for n in names:
        if getattr(args, n) is None:
            raise UsageError(f"{args.command}: --{n.replace('_', '-')} is required")


def _presentation(args: argparse.Namespace) -> pr.Presentation:
    _need(args, "operad", "gamma")
    name = args.operad if ":" in args.operad else f"{args.operad}:{args.gamma}"
    return pr.presentation(name)


def cmd_compose(args) -> Any:
    _need(args, "gamma")
    return tm_compose(parse_word(args.x, args.gamma), args.i, parse_word(args.y, args.gamma))


def cmd_kbasis(args) -> Any:
    _need(args, "gamma")
    g = args.gamma
    if args.action == "expand":
        (x,) = _exactly(args.args, 1)
        return kbasis_expand(parse_word(x, g))
    if args.action == "contract":
        return kbasis_contract(parse_lincomb(" ".join(args.args), lambda s: parse_word(s, g)))
    x, i, y = _exactly(args.args, 3)
    try:
        pos = int(i)
    except ValueError:
        raise UsageError(f"position must be an integer, got {i!r}") from None
    return kbasis_compose(parse_word(x, g), pos, parse_word(y, g))


def _exactly(items: Sequence[str], n: int) -> Sequence[str]:
    if len(items) != n:
        raise UsageError(f"expected {n} argument(s), got {len(items)}")
    return items


def cmd_nf(args) -> Any:
    _need(args, "rules")
    rs = rw.rule_set(args.rules)
    t = parse_tree(args.tree, rs.gens)
    try:
        return rw.normal_form(t, rs, args.budget)
    except rw.RewriteError as exc:
        raise DomainError(str(exc)) from None


def cmd_cp(args) -> Any:
    _need(args, "rules")
    rs = rw.rule_set(args.rules)
    rep = rw.check_local_confluence(rs, args.budget)
    by_kind = {k: sum(1 for cp in rep.pairs if cp.kind == k) for k in ("chain", "fork")}
    failed = set(map(id, rep.failures))
    pairs = [
        [cp.kind, str(cp.peak), str(cp.left), str(cp.right), "failed" if id(cp) in failed else "joinable"]
        for cp in rep.pairs
    ]
    if args.format == "tsv":
        result: Any = pairs
    elif args.format == "json":
        result = {
            "rules": rs.name,
            "critical_pairs": len(rep.pairs),
            "chain": by_kind["chain"],
            "fork": by_kind["fork"],
            "confluent": rep.confluent,
            "pairs": [dict(zip(("kind", "peak", "left", "right", "status"), p)) for p in pairs],
        }
    else:
        lines = [f"rules: {rs.name}", f"critical pairs: {len(rep.pairs)} (chain {by_kind['chain']}, fork {by_kind['fork']})"]
        lines += [f"{p[0]} {p[1]} -> {p[2]} | {p[3]} : {p[4]}" for p in pairs]
        lines.append(f"confluent: {'yes' if rep.confluent else 'no'}")
        result = "\n".join(lines)
    if not rep.confluent:
        raise VerificationFailure(emit(args.format, result))
    return result


DUAL_TARGETS = {src: (tgt, pre) for src, tgt, pre in checks.DUAL_PAIRS}


def cmd_dual(args) -> Any:
    P = _presentation(args)
    D = pr.koszul_dual(P)
    fam = P.name.split(":")[0]
    out: dict[str, Any] = {"presentation": P.name, "dim": P.dim, "dual_dim": D.dim}
    match = None
    if fam in DUAL_TARGETS:
        tgt, prefixes = DUAL_TARGETS[fam]
        match = checks.dual_equivalent(fam, tgt, prefixes, int(P.name.split(":")[1]))
        out["matches"] = f"{tgt}:{P.name.split(':')[1]}"
        out["equivalent"] = match
    rels = [r.to_text() for r in D.relations]
    if args.format == "json":
        result: Any = {**out, "relations": rels, "dual": D}
    elif args.format == "tsv":
        result = [[k, v] for k, v in out.items()] + [["relation", r] for r in rels]
    else:
        result = "\n".join([*(f"{k}: {emit('text', v)}" for k, v in out.items()), *rels])
    if match is False:
        raise VerificationFailure(emit(args.format, result))
    return result


def cmd_qdim(args) -> Any:
    _need(args, "arity")
    return pr.quotient_dimension(_presentation(args), args.arity)


def _range(args) -> range:
    top = args.max_n if args.max_n is not None else se.DEFAULT_N
    if top < 1:
        raise UsageError("--max-n must be >= 1")
    return range(1, top + 1)


def cmd_dims(args) -> Any:
    _need(args, "operad", "gamma")
    return se.IntSeries(tuple(se.dim_formula(args.operad, args.gamma, n) for n in _range(args)))


def cmd_series(args) -> Any:
    _need(args, "operad", "gamma")
    N = len(_range(args))
    fam = se.family_of(args.operad)
    formula = se.hilbert_series(fam, args.gamma, N)
    try:
        solved = se.series_solution(fam, args.gamma, N)
        source = "functional equation"
    except DomainError:
        solved, source = formula, "closed form"
    partner = next((b if a == fam else a for a, b in se.KOSZUL_PAIRS if fam in (a, b)), None)
    report: dict[str, Any] = {"operad": fam, "gamma": args.gamma, "source": source, "coefficients": solved.as_list()}
    ok = solved.as_list() == formula.as_list()
    report["matches_formula"] = ok
    if partner is not None:
        inv = se.koszul_inverse_check(formula, se.hilbert_series(partner, args.gamma, N), N)
        report["koszul_partner"] = partner
        report["inverse_identity"] = inv
        ok = ok and inv
    result: Any = report
    if args.format == "tsv":
        result = solved
    if not ok:
        raise VerificationFailure(emit(args.format, result))
    return result


def _parse_operand(alg: str, text: str, gamma: int):
    if alg == "pluri":
        return parse_word(text, gamma)
    if alg in ("dendr", "dup"):
        return fa.parse_evbt(text)
    return fa.instance(alg, gamma).parse(text)


FREE_OPS = {
    "pluri": {"left": fa.pluri_left, "right": fa.pluri_right},
    "dendr": {"left": fa.dendr_left, "right": fa.dendr_right},
    "dup": {"under": fa.dup_under, "over": fa.dup_over, "left": fa.dup_under, "right": fa.dup_over},
}


def cmd_freealg(args) -> Any:
    _need(args, "gamma")
    g, alg = args.gamma, args.algebra
    x, y = _parse_operand(alg, args.x, g), _parse_operand(alg, args.y, g)
    if alg in FREE_OPS:
        ops = FREE_OPS[alg]
        if args.op not in ops:
            raise UsageError(f"{alg} has operations {', '.join(ops)}")
        if alg != "pluri":
            if not 1 <= args.a <= g:
                raise DomainError(f"label {args.a} outside [1, {g}]")
            for t in (x, y):
                if any(l > g for l in t.labels()):
                    raise DomainError(f"tree {t} has labels above {g}")
        return ops[args.op](args.a, x, y)
    A = fa.instance(alg, g)
    ops = {"left": A.left, "right": A.right, "star": A.star}
    if args.op not in ops:
        raise UsageError(f"{alg} has operations {', '.join(ops)}")
    if args.op == "star" and not 1 <= args.a <= g:
        raise DomainError(f"label {args.a} outside [1, {g}]")
    return A.format(ops[args.op](args.a, x, y))


def cmd_check(args) -> Any:
    _need(args, "gamma")
    results = checks.run_suite(args.suite, args.gamma, args.seed)
    if args.format == "json":
        out: Any = [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in results]
    elif args.format == "tsv":
        out = [["pass" if c.ok else "FAIL", c.name, c.detail] for c in results]
    else:
        out = "\n".join(c.line() for c in results)
    if not all(c.ok for c in results):
        raise VerificationFailure(emit(args.format, out))
    return out


COMMANDS = {
    "compose": cmd_compose,
    "kbasis": cmd_kbasis,
    "nf": cmd_nf,
    "cp": cmd_cp,
    "dual": cmd_dual,
    "qdim": cmd_qdim,
    "dims": cmd_dims,
    "series": cmd_series,
    "freealg": cmd_freealg,
    "check": cmd_check,
}


def _gens_label(args) -> str | None:
    if args.command == "nf" and args.rules:
        return rw.rule_set(args.rules).gens.label
    return None


def run(argv: Sequence[str], stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
        if args.command is None:
            raise UsageError("operadkit: a subcommand is required")
        if args.seed is None:
            env = os.environ.get("OPERADKIT_SEED")
            args.seed = _seed(env) if env else DEFAULT_SEED
        if args.gamma is not None and args.gamma < 0:
            raise DomainError("--gamma must be nonnegative")
        value = COMMANDS[args.command](args)
        text = value if isinstance(value, str) and args.format == "text" else emit(args.format, value, _gens_label(args))
    except VerificationFailure as exc:
        print(exc.output, file=stdout)
        print("operadkit: verification failed", file=stderr)
        return EXIT_VERIFY
    except (DomainError, argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_DOMAIN
    print(text, file=stdout)
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
