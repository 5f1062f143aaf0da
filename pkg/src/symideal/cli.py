"""Command-line front end.

Exit codes: 0 when a verdict was computed (including ``not_member``), 1 on
usage errors, 2 when a mathematical precondition fails.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from . import actions, certificates, equivariant, families, morphisms
from .core import (GF, QQ, ZZ, CharacteristicObstruction, ParseError, PolynomialError,
                   is_prime, parse_polynomial)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", choices=("int", "rat", "gf"), default="rat")
    common.add_argument("--p", type=int, help="prime modulus (with --ring gf)")
    common.add_argument("--rows", type=int, default=2)
    common.add_argument("--width", type=int, default=3)
    common.add_argument("--deg", type=int, default=4)
    common.add_argument("--out", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--timings", action="store_true",
                        help="fill runtime_ms in reports (output is then not reproducible)")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="symideal", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("family", parents=[common], help="emit a generator family member")
    p.add_argument("which", choices=("h", "det", "cycle", "tilde"))
    p.add_argument("--k", type=int)
    p.add_argument("--cols", help="comma-separated columns for det")
    p.add_argument("--template", help="t-polynomial for tilde, e.g. \"t[1]+t[2]\"")

    p = sub.add_parser("act", parents=[common], help="apply a row or column action")
    p.add_argument("which", choices=("row", "col"))
    p.add_argument("poly")
    p.add_argument("--perm", help='row permutation, e.g. "[2,1]"')
    p.add_argument("--sigma", help='column map, e.g. "{1->3,2->1}"')

    p = sub.add_parser("symmetrize", parents=[common], help="apply the symmetrization operator")
    p.add_argument("poly")

    p = sub.add_parser("morph", parents=[common], help="apply a homomorphism")
    p.add_argument("which", choices=("psi-row", "mu", "lift", "eta", "psi-kl"))
    p.add_argument("poly")
    p.add_argument("--to", type=int, help="target row count for psi-row")
    p.add_argument("--kl", help="k,l for psi-kl")

    for name, helptext in (("member", "truncated (Groebner) membership"),
                           ("member-mg", "exact multigraded membership")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("poly")
        p.add_argument("--gen", action="append", default=[], help="generator (repeatable)")
        p.add_argument("--ambient", choices=[a.value for a in equivariant.Ambient],
                       default="symmetric")
        p.add_argument("--cert-out", help="write the certificate JSON here")

    p = sub.add_parser("scan", parents=[common], help="stabilization scan over a family")
    p.add_argument("--family", choices=("h", "cycle"), default="h")
    p.add_argument("--kmin", type=int, default=1)
    p.add_argument("--kmax", type=int, default=4)

    p = sub.add_parser("verify-hk", parents=[common], help="h_k non-membership for p <= n")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--kmax", type=int)

    p = sub.add_parser("verify-eta", parents=[common], help="obstruction check of a candidate")
    p.add_argument("file", nargs="?", help="candidate certificate JSON")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--lengths", help="comma-separated l for each generator index")
    p.add_argument("--synthetic", action="store_true")
    p.add_argument("--random", action="store_true", help="use a random candidate from --seed")

    p = sub.add_parser("verify-orbits", parents=[common], help="orbit-size divisibility audit")

    p = sub.add_parser("verify-vl", parents=[common], help="cycle-product non-membership in L_2")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--kmax", type=int)

    p = sub.add_parser("verify-cert", parents=[common], help="re-verify a certificate JSON file")
    p.add_argument("file")
    p.add_argument("--gen", action="append", default=[])
    p.add_argument("--ambient", choices=[a.value for a in equivariant.Ambient])
    return parser


def _ring(args, kind=None):
    kind = kind or args.ring
    if kind == "gf":
        if args.p is None or not is_prime(args.p):
            raise UsageError("--ring gf needs --p PRIME")
        return GF(args.p)
    return {"int": ZZ, "rat": QQ}[kind]


def _poly(text, ring, rows, kind=None):
    return parse_polynomial(text, ring, rows, kind)


def _emit(args, payload: dict, text: str):
    if args.out == "json":
        print(json.dumps(payload, separators=(",", ":")))
    else:
        print(text)


def _runtime(args, start):
    return round((time.perf_counter() - start) * 1000) if args.timings else None


def _verdict_payload(verdict, extra=None) -> dict:
    out = {"verdict": verdict.status.value, "oracle": verdict.oracle.value}
    if verdict.width is not None:
        out["width"] = verdict.width
        out["degree_bound"] = verdict.degree_bound
    out["stats"] = verdict.stats
    if verdict.certificate is not None:
        out["certificate"] = verdict.certificate.to_json()
    if extra:
        out.update(extra)
    return out


def _cmd_family(args):
    ring = _ring(args)
    if args.which == "h":
        if args.k is None:
            raise UsageError("family h needs --k")
        f = families.h_family(args.rows, args.k, ring)
    elif args.which == "det":
        if not args.cols:
            raise UsageError("family det needs --cols")
        cols = [int(c) for c in args.cols.split(",")]
        f = families.determinant_gen(len(cols), cols, ring)
    elif args.which == "cycle":
        if args.k is None:
            raise UsageError("family cycle needs --k")
        f = families.cycle_product(args.k, ring)
    else:
        if not args.template:
            raise UsageError("family tilde needs --template")
        f = families.tilde_product(args.rows, _poly(args.template, ring, args.rows, "t"))
    _emit(args, {"family": args.which, "poly": str(f)}, str(f))


def _cmd_act(args):
    ring = _ring(args)
    f = _poly(args.poly, ring, args.rows)
    if args.which == "row":
        if not args.perm:
            raise UsageError("act row needs --perm")
        g = actions.apply_row(actions.RowPermutation.parse(args.perm), f)
    else:
        if not args.sigma:
            raise UsageError("act col needs --sigma")
        g = actions.apply_column(actions.ColumnMap.parse(args.sigma), f)
    _emit(args, {"poly": str(g)}, str(g))


def _cmd_symmetrize(args):
    f = _poly(args.poly, _ring(args), args.rows)
    g = actions.symmetrize(f)
    _emit(args, {"poly": str(g)}, str(g))


def _cmd_morph(args):
    w = args.which
    if w == "psi-row":
        if args.to is None:
            raise UsageError("psi-row needs --to")
        g = morphisms.row_truncate(_poly(args.poly, _ring(args), args.rows), args.to)
    elif w == "mu":
        if args.p is None:
            raise UsageError("mu needs --p")
        g = morphisms.reduce_mod_p(_poly(args.poly, ZZ, args.rows), args.p)
    elif w == "lift":
        g = morphisms.lift_canonical(_poly(args.poly, _ring(args, "gf"), args.rows))
    elif w == "eta":
        g = morphisms.collapse_columns(_poly(args.poly, ZZ, args.rows, "x"))
    else:
        if not args.kl:
            raise UsageError("psi-kl needs --kl K,L")
        k, l = (int(v) for v in args.kl.split(","))
        g = morphisms.psi_kl(_poly(args.poly, _ring(args), args.rows), k, l)
    _emit(args, {"poly": str(g)}, str(g))


def _spec_from_args(args, ring, ambient):
    gens = [_poly(g, ring, args.rows) for g in args.gen]
    return equivariant.EquivariantIdealSpec(ring, args.rows, gens, ambient)


def _cert_document(cert, spec) -> dict:
    doc = cert.to_json()
    doc.update({"ring": str(spec.ring), "rows": spec.rows, "ambient": spec.ambient.value,
                "generators": [str(g) for g in spec.generators]})
    return doc


def _cmd_member(args):
    start = time.perf_counter()
    ring = _ring(args)
    spec = _spec_from_args(args, ring, args.ambient)
    f = _poly(args.poly, ring, args.rows)
    if args.command == "member":
        verdict = equivariant.member_truncated(f, spec, args.width, args.deg)
    else:
        verdict = equivariant.member_multigraded(f, spec)
    if args.cert_out and verdict.certificate is not None:
        with open(args.cert_out, "w") as fh:
            json.dump(_cert_document(verdict.certificate, spec), fh, indent=1)
    payload = _verdict_payload(verdict, {"runtime_ms": _runtime(args, start)})
    text = verdict.status.value
    if verdict.certificate is not None:
        text += "\n" + "\n".join(f"  {t.sigma} gen={t.gen} cofactor={t.cofactor}"
                                 for t in verdict.certificate.terms)
    _emit(args, payload, text)


def _cmd_scan(args):
    ring = _ring(args)
    entries = equivariant.stabilization_scan(args.family, range(args.kmin, args.kmax + 1), ring,
                                             args.rows)
    rows = [{"k": e.k, "verdict": e.status.value, "certificate_terms": e.certificate_terms,
             "runtime_ms": round(e.runtime_ms) if args.timings else None} for e in entries]
    payload = {"theorem": "4", "params": {"family": args.family, "ring": str(ring),
                                          "rows": args.rows, "kmin": args.kmin, "kmax": args.kmax},
               "entries": rows}
    _emit(args, payload, "\n".join(f"k={r['k']}: {r['verdict']} ({r['certificate_terms']} terms)"
                                   for r in rows))


def _cmd_verify_hk(args):
    start = time.perf_counter()
    if args.p is None:
        raise UsageError("verify-hk needs --p")
    verdict = certificates.nonmembership_hk(args.rows, args.p, args.k, args.kmax)
    payload = {"theorem": "7",
               "params": {"n": args.rows, "p": args.p, "k": args.k, "kmax": args.kmax or args.k},
               "verdict": verdict.status.value, "valuations": [], "stats": verdict.stats,
               "runtime_ms": _runtime(args, start)}
    _emit(args, payload, verdict.status.value)


def _cmd_verify_eta(args):
    if args.p is None:
        raise UsageError("verify-eta needs --p")
    lengths = [int(v) for v in args.lengths.split(",")] if args.lengths else None
    if args.file:
        with open(args.file) as fh:
            data = json.load(fh)
        cand = equivariant.MembershipCertificate.from_json(data, GF(args.p), args.p)
    elif args.random:
        cand = certificates.random_candidate(args.k, args.p, random.Random(args.seed))
    else:
        raise UsageError("verify-eta needs a certificate file or --random")
    report = certificates.obstruction_check(args.k, args.p, cand, lengths, args.synthetic)
    _emit(args, report.to_json(args.timings),
          f"{report.conclusion}: lhs valuation {report.lhs_valuation}, "
          f"term valuations {list(report.term_valuations)}, p*g valuation {report.pg_valuation}")


def _cmd_verify_orbits(args):
    start = time.perf_counter()
    if args.p is None:
        raise UsageError("verify-orbits needs --p")
    report = certificates.orbit_divisibility_audit(args.p, args.width)
    payload = {"theorem": "7", "params": {"p": args.p, "width": args.width},
               "verdict": "pass" if report.passed else "fail", "monomials": report.monomials,
               "orbit_sizes": {str(k): v for k, v in report.orbit_sizes.items()},
               "valuations": [], "runtime_ms": _runtime(args, start)}
    _emit(args, payload, f"{payload['verdict']}: {report.monomials} monomials, "
                         f"orbit sizes {report.orbit_sizes}")


def _cmd_verify_vl(args):
    start = time.perf_counter()
    verdict = certificates.vaughanlee_check(args.k, args.kmax)
    payload = {"theorem": "3", "params": {"k": args.k, "kmax": args.kmax or args.k, "p": 2},
               "verdict": verdict.status.value, "valuations": [], "stats": verdict.stats,
               "runtime_ms": _runtime(args, start)}
    _emit(args, payload, verdict.status.value)


def _cmd_verify_cert(args):
    with open(args.file) as fh:
        data = json.load(fh)
    if "ring" in data and args.p is None and args.ring == "rat":
        text = data["ring"]
        ring = QQ if text == "QQ" else ZZ if text == "ZZ" else GF(int(text[3:-1]))
    else:
        ring = _ring(args)
    rows = data.get("rows", args.rows)
    ambient = args.ambient or data.get("ambient", "symmetric")
    gens = args.gen or data.get("generators", [])
    spec = equivariant.EquivariantIdealSpec(ring, rows, [_poly(g, ring, rows) for g in gens],
                                            ambient)
    cert = equivariant.MembershipCertificate.from_json(data, ring, rows)
    ok, why = equivariant.verify_certificate(cert, spec)
    _emit(args, {"valid": ok, "diagnostic": why}, f"{'valid' if ok else 'invalid'}: {why}")


COMMANDS = {
    "family": _cmd_family, "act": _cmd_act, "symmetrize": _cmd_symmetrize, "morph": _cmd_morph,
    "member": _cmd_member, "member-mg": _cmd_member, "scan": _cmd_scan,
    "verify-hk": _cmd_verify_hk, "verify-eta": _cmd_verify_eta,
    "verify-orbits": _cmd_verify_orbits, "verify-vl": _cmd_verify_vl,
    "verify-cert": _cmd_verify_cert,
}


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        COMMANDS[args.command](args)
    except (UsageError, ParseError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except CharacteristicObstruction as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except PolynomialError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return 2
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
