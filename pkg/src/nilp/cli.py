"""Command-line driver.

Exit codes: 0 decided or passed, 1 I/O or validation error, 2 nilpotency
class above the supported limit, 3 a verification failed.
"""
import argparse
import json
import logging
import sys

from .exactq import fmt, q
from .invset import ClassTooHigh, GeneratorSet, brute_force_identity_oracle, invertible_subset
from .utgroup import UTMatrix

EXIT_OK, EXIT_INPUT, EXIT_CLASS, EXIT_FAIL = 0, 1, 2, 3

log = logging.getLogger("nilp")


class InputError(Exception):
    pass


def _read_json(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None


def parse_instance(obj):
    """Build a GeneratorSet from {"dimension": n, "matrices": [[["p/q", ...], ...], ...]}."""
    if not isinstance(obj, dict):
        raise InputError("instance must be a JSON object")
    n = obj.get("dimension")
    mats = obj.get("matrices")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InputError("'dimension' must be a positive integer")
    if not isinstance(mats, list) or not mats:
        raise InputError("'matrices' must be a non-empty list")
    gens = []
    for a, m in enumerate(mats, 1):
        if not isinstance(m, list) or len(m) != n:
            raise InputError(f"matrix {a}: expected {n} rows")
        rows = []
        for i, row in enumerate(m, 1):
            if not isinstance(row, list) or len(row) != n:
                raise InputError(f"matrix {a}, row {i}: expected {n} entries")
            try:
                rows.append([q(x) for x in row])
            except (TypeError, ValueError, ZeroDivisionError) as exc:
                raise InputError(f"matrix {a}, row {i}: {exc}") from None
        try:
            gens.append(UTMatrix(rows))
        except ValueError as exc:
            raise InputError(f"matrix {a}: {exc}") from None
    return GeneratorSet(gens)


def _grid(m):
    return [[fmt(x) for x in row] for row in m.data]


def _emit(args, obj, text):
    if args.json:
        print(json.dumps(obj, sort_keys=True))
    else:
        print(text)


def _algorithm(args):
    g = parse_instance(_read_json(args.input))
    res = invertible_subset(g, max_class=args.max_class, assume_conjecture=args.assume_conjecture)
    for i, s in enumerate(res.chain, 1):
        log.info("iteration %d: S = %s", i, sorted(x + 1 for x in s))
    return g, res


def cmd_identity(args):
    _, res = _algorithm(args)
    ans = bool(res.invertible)
    _emit(args, {"identity": ans, **res.to_json()}, "true" if ans else "false")
    return EXIT_OK


def cmd_group(args):
    g, res = _algorithm(args)
    ans = len(res.invertible) == g.K
    _emit(args, {"group": ans, **res.to_json()}, "true" if ans else "false")
    return EXIT_OK


def cmd_invset(args):
    _, res = _algorithm(args)
    obj = res.to_json()
    if res.assumed_conjecture:
        obj["assumed_conjecture"] = True
    text = "{" + ", ".join(str(i) for i in obj["invertible"]) + "}"
    _emit(args, obj, text)
    return EXIT_OK


def cmd_class(args):
    g = parse_instance(_read_json(args.input))
    d = g.bracket_class()
    _emit(args, {"class": d}, str(d))
    return EXIT_OK


def cmd_bch(args):
    from .bch import bch_term
    from .utgroup import logm, product

    g = parse_instance(_read_json(args.input))
    terms = {1: bch_term(1, g.logs)}
    total = terms[1]
    for k in range(2, g.n):
        terms[k] = bch_term(k, g.logs)
        total = total + terms[k]
    direct = logm(product(g.gens))
    agrees = total == direct
    obj = {"terms": {str(k): _grid(t.data) for k, t in terms.items()},
           "log": _grid(total.data), "agrees": agrees}
    lines = [f"H{k} = {_grid(t.data)}" for k, t in terms.items()]
    lines.append(f"log(product) = {_grid(direct.data)}")
    lines.append("PASS" if agrees else "FAIL")
    _emit(args, obj, "\n".join(lines))
    return EXIT_OK if agrees else EXIT_FAIL


def cmd_verify_hk(args):
    from .rewrite import verify_hk

    rep = verify_hk(args.k, threads=args.threads)
    rows = []
    lines = []
    for r in rep.rows:
        got = [fmt(r.computed[pc]) for pc in r.pairs]
        rows.append({"name": r.name, "computed": got, "printed": [fmt(x) for x in r.printed],
                     "extra": {f"{list(p)}|{c}": fmt(v) for (p, c), v in r.extra.items()},
                     "match": r.match, "ratio": None if r.ratio is None else fmt(r.ratio)})
        lines.append(f"{r.name}: {'match' if r.match else 'MISMATCH'}")
        lines.append(f"  computed {got}")
        lines.append(f"  tabulated {[fmt(x) for x in r.printed]}")
        if r.extra:
            lines.append(f"  off-table {rows[-1]['extra']}")
        if not r.match and r.ratio is not None:
            lines.append(f"  tabulated/computed = {fmt(r.ratio)}")
    residual = {f"{list(p)}|{c}": fmt(v) for (p, c), v in rep.relation.coefficients.items()}
    lines.append("alpha relation: " + ("zero" if rep.relation_zero else f"nonzero {residual}"))
    lines.append("PASS" if rep.passed else "FAIL")
    obj = {"k": args.k, "rows": rows, "relation_zero": rep.relation_zero,
           "residual": residual, "passed": rep.passed}
    _emit(args, obj, "\n".join(lines))
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_verify_identities(args):
    from .bch import identity_suite

    results = identity_suite(seed=args.seed, trials=args.trials)
    failed = [r for r in results if not r.ok]
    for r in failed:
        print(r.report(), file=sys.stderr)
    obj = {"checks": len(results), "failures": len(failed), "passed": not failed}
    _emit(args, obj, f"{len(results)} checks, {len(failed)} failures\n"
          + ("PASS" if not failed else "FAIL"))
    return EXIT_FAIL if failed else EXIT_OK


def cmd_conjecture(args):
    from .rewrite import conjecture_search

    pool = []
    if args.pool:
        data = _read_json(args.pool)
        if not isinstance(data, list):
            raise InputError(f"{args.pool}: expected a list of words")
        pool = [tuple(w) for w in data]
    res = conjecture_search(args.k, multiplicities=tuple(args.multiplicity or (2,)),
                            samples=args.samples, seed=args.seed, budget=args.budget,
                            pool=pool, threads=args.threads)
    obj = {"status": res.status, "tried": res.tried, "certificate": res.certificate}
    text = f"{res.status} after {res.tried} words"
    if res.certificate:
        text += "\n" + json.dumps(res.certificate, sort_keys=True)
    if args.output and res.certificate:
        with open(args.output, "w", encoding="utf-8") as fh:
            json.dump(res.certificate, fh, sort_keys=True, indent=1)
    _emit(args, obj, text)
    return EXIT_OK


def cmd_check_certificate(args):
    from .rewrite import CertificateError, check_certificate

    cert = _read_json(args.input)
    k = cert.get("k") if isinstance(cert, dict) else None
    try:
        ok = check_certificate(k, cert)
    except (CertificateError, ValueError) as exc:
        raise InputError(str(exc)) from None
    _emit(args, {"valid": ok}, "PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_oracle(args):
    g = parse_instance(_read_json(args.input))
    w = brute_force_identity_oracle(g, max_len=args.max_len)
    word = None if w is None else [i + 1 for i in w]
    _emit(args, {"word": word}, "none" if word is None else " ".join(map(str, word)))
    return EXIT_OK


def _positive(s):
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


class _Parser(argparse.ArgumentParser):
    # usage errors share the validation exit code; 2 is reserved for ClassTooHigh
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser():
    p = _Parser(prog="nilp", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help, instance=True):
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(func=func)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        if instance:
            sp.add_argument("-i", "--input", required=True, metavar="FILE",
                            help="instance JSON ('-' for stdin)")
        return sp

    for name, func, help in (("identity", cmd_identity, "does the semigroup contain I"),
                             ("group", cmd_group, "is the semigroup a group"),
                             ("invset", cmd_invset, "indices of the invertible generators")):
        sp = add(name, func, help)
        sp.add_argument("--max-class", type=int, metavar="D")
        sp.add_argument("--assume-conjecture", action="store_true",
                        help="permit --max-class above 10")
    add("class", cmd_class, "nilpotency class of the generated group")
    add("bch", cmd_bch, "BCH terms of the product of the matrices, checked against log")

    sp = add("verify-hk", cmd_verify_hk, "recompute the tabulated gamma rows", instance=False)
    sp.add_argument("--k", type=int, required=True, choices=(5, 7, 9))
    sp.add_argument("--threads", type=_positive, default=1)

    sp = add("verify-identities", cmd_verify_identities, "random exact identity checks",
             instance=False)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=_positive, default=20)

    sp = add("conjecture", cmd_conjecture, "search for a positive relation", instance=False)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--samples", type=int, default=10)
    sp.add_argument("--multiplicity", type=_positive, action="append")
    sp.add_argument("--pool", metavar="FILE", help="JSON list of words tried first")
    sp.add_argument("--budget", type=float, metavar="SECONDS")
    sp.add_argument("--threads", type=_positive, default=1)
    sp.add_argument("-o", "--output", metavar="FILE", help="write the certificate here")

    add("check-certificate", cmd_check_certificate, "recompute and check a certificate")

    sp = add("oracle", cmd_oracle, "shortest identity word by exhaustive search")
    sp.add_argument("--max-len", type=int, default=6, choices=range(1, 11), metavar="L")
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(message)s")
    try:
        return args.func(args)
    except ClassTooHigh as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CLASS
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
