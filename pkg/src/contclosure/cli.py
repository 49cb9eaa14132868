"""Command-line front end.

Subcommands: ``closure``, ``member``, ``verify``, ``witness``, ``represent``.

Exit codes::

    0   Member / success / replay passed
    1   NotMember / replay failed / witness residual above tolerance
    2   Undecided
    64  usage error
    65  parse error
    66  non-monomial input where a monomial is required
    67  non-primary ideal
    68  malformed or unreadable certificate
    69  precondition violated (degrees, dimensions, witness parameters)
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence

from . import __version__
from .certificates import MalformedCertificate, verify_payload
from .closure import (
    MEMBER, NOT_MEMBER, UNDECIDED, INVALID, Verdict, VALID_CONCLUSIVE, VALID_INCONCLUSIVE,
    equal_degree_membership, monomial_membership, monomial_power_representation,
    normalize_kind, verify_power_representation,
)
from .grammar import ParseError, parse_ideal, parse_polynomial, scan_variables
from .newton import closure_generators
from .poly import DimensionError, MonomialIdeal, NotPrimaryError, Polynomial
from .witness import (
    WitnessPreconditionError, ZeroDenominatorError, homogeneous_witness, phi_probe, psi_witness,
)

EXIT_MEMBER = 0
EXIT_NOT_MEMBER = 1
EXIT_UNDECIDED = 2
EXIT_USAGE = 64
EXIT_PARSE = 65
EXIT_NON_MONOMIAL = 66
EXIT_NON_PRIMARY = 67
EXIT_MALFORMED = 68
EXIT_PRECONDITION = 69

_RESULT_CODES = {MEMBER: EXIT_MEMBER, NOT_MEMBER: EXIT_NOT_MEMBER, UNDECIDED: EXIT_UNDECIDED}

WITNESS_TOLERANCE = 1e-9


class UsageError(Exception):
    pass


class NonMonomialError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# input handling

def _names(args, *texts) -> List[str]:
    if args.vars:
        names = [v.strip() for v in args.vars.split(",") if v.strip()]
        if len(set(names)) != len(names):
            raise UsageError("duplicate names in --vars")
        return names
    names: List[str] = []
    for t in texts:
        if t:
            for v in scan_variables(t):
                if v not in names:
                    names.append(v)
    if not names:
        raise UsageError("no variables found; pass --vars")
    return names


def _single_term(p: Polynomial, what: str):
    support = p.support()
    if len(support) != 1:
        raise NonMonomialError(f"{what} {p.to_str()} is not a monomial")
    return support[0]


def _monomial_ideal(gens: Sequence[Polynomial]) -> MonomialIdeal:
    exps = [_single_term(g, "generator") for g in gens]
    return MonomialIdeal(exps, gens[0].nvars)


def _emit(args, payload: dict, lines: Sequence[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        for line in lines:
            print(line)


def _payload(command: str, inp: dict, **rest) -> dict:
    out = {"command": command, "input": inp}
    out.update(rest)
    out["version"] = __version__
    return out


# subcommands

def cmd_closure(args) -> int:
    names = _names(args, args.ideal)
    gens = parse_ideal(args.ideal, names)
    ideal = _monomial_ideal(gens)
    closure = closure_generators(ideal)
    gen_list = sorted(closure.generators, reverse=True)
    inp = {"vars": names, "ideal": [g.to_str(names) for g in ideal.polynomials()],
           "ideal_exponents": [list(g) for g in ideal.generators]}
    payload = _payload("closure", inp, generators=[list(g) for g in gen_list],
                       certificate={"type": "ClosureGenerators",
                                    "monomials": [Polynomial.monomial(g).to_str(names) for g in gen_list]})
    _emit(args, payload, [Polynomial.monomial(g).to_str(names) for g in gen_list])
    return 0


def _summarize(cert: dict) -> List[str]:
    t = cert.get("type")
    if t == "AlreadyInIdeal":
        return [f"divisible by generator {cert['generator']}"]
    if t == "OutsideHull":
        f = cert["facet"]
        return [f"separating facet {f['normal']} . x >= {f['offset']}"]
    if t == "InteriorWitness":
        out = [f"location {cert['location']}, epsilon {cert['epsilon']}, weights {cert['weights']}"]
        pw = cert.get("power_witness")
        if pw:
            out.append(f"power witness n={pw['n']} theta={pw['theta']} alpha={pw['alpha']}")
        return out
    if t == "BoundaryExclusion":
        out = [f"supporting normal {cert['normal']}, degree {cert['degree']}, target {cert['target']}"]
        if cert.get("fill") is not None:
            out.append(f"fill: {len(cert['fill'])} monomials of degree {cert['degree']}")
        if cert.get("homomorphism"):
            out.append(f"axes homomorphism: {cert['homomorphism']['reason']}")
        return out
    if t == "SpanCoefficients":
        return [f"coefficients {cert['coefficients']}"]
    if t == "EqualDegreeExclusion":
        return [f"axes test on {len(cert['points'])} points: {cert['reason']}"]
    return [str(cert.get("reason", ""))]


def cmd_member(args) -> int:
    names = _names(args, args.ideal, args.candidate)
    kind = normalize_kind(args.kind)
    gens = parse_ideal(args.ideal, names)
    f = parse_polynomial(args.candidate, names)
    inp = {"vars": names, "kind": kind, "candidate": f.to_str(names)}
    monomial = all(len(g.support()) == 1 for g in gens) and len(f.support()) == 1
    if monomial:
        ideal = _monomial_ideal(gens)
        tau = f.support()[0]
        inp["ideal"] = [g.to_str(names) for g in ideal.polynomials()]
        inp["ideal_exponents"] = [list(g) for g in ideal.generators]
        inp["candidate_exponent"] = list(tau)
        verdict = monomial_membership(ideal, tau, kind, n_max=args.n_max)
    else:
        inp["ideal"] = [g.to_str(names) for g in gens]
        d = f.total_degree()
        if f.is_homogeneous() and all(g.is_homogeneous(d) for g in gens):
            verdict = equal_degree_membership(f, gens, d, kind)
        else:
            verdict = Verdict(kind, UNDECIDED, {
                "type": "NoCertificate",
                "reason": "non-monomial input outside the equal-degree case",
            })
    payload = _payload("member", inp, verdict=verdict.to_json(), certificate=verdict.certificate)
    lines = [f"{verdict.result} ({kind})", f"certificate: {verdict.certificate['type']}"]
    lines += ["  " + s for s in _summarize(verdict.certificate)]
    _emit(args, payload, lines)
    return _RESULT_CODES[verdict.result]


def cmd_represent(args) -> int:
    names = _names(args, args.ideal, args.candidate)
    gens = parse_ideal(args.ideal, names)
    f = parse_polynomial(args.candidate, names)
    ideal = _monomial_ideal(gens)
    tau = _single_term(f, "candidate")
    if args.n < 1:
        raise WitnessPreconditionError("--n must be positive")
    found = monomial_power_representation(ideal, tau, args.n, args.theta)
    inp = {"vars": names, "ideal": [g.to_str(names) for g in ideal.polynomials()],
           "candidate": f.to_str(names)}
    if found is None:
        payload = _payload("represent", inp, verdict={"result": INVALID},
                           certificate={"type": "NoCertificate",
                                        "reason": f"z^(n tau) is not in I^{args.theta}"})
        _emit(args, payload, [f"no representation of ({f.to_str(names)})^{args.n} in I^{args.theta}"])
        return EXIT_NOT_MEMBER
    theta, coeffs = found
    # the candidate may carry a coefficient c; scale the cofactors by c^n
    c = f.coeff(tau)
    coeffs = {a: p * c ** args.n for a, p in coeffs.items()}
    check = verify_power_representation(f, ideal.polynomials(), args.n, theta, coeffs)
    terms = [{"alpha": list(a), "coefficient": p.to_str(names)} for a, p in coeffs.items()]
    payload = _payload("represent", inp, verdict={"result": check.status},
                       certificate={"type": "PowerRepresentation", "n": args.n, "theta": theta,
                                    "terms": terms})
    lines = [f"{check.status}: ({f.to_str(names)})^{args.n} in I^{theta}"]
    lines += [f"  alpha {t['alpha']}: cofactor {t['coefficient']}" for t in terms]
    _emit(args, payload, lines)
    return {VALID_CONCLUSIVE: EXIT_MEMBER, VALID_INCONCLUSIVE: EXIT_UNDECIDED}.get(check.status, EXIT_NOT_MEMBER)


def cmd_verify(args) -> int:
    try:
        if args.certificate == "-":
            payload = json.load(sys.stdin)
        else:
            with open(args.certificate) as fh:
                payload = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedCertificate(f"cannot read certificate: {exc}") from None
    replay = verify_payload(payload)
    out = {"command": "verify", "input": {"certificate": args.certificate}, "report": replay.to_json(),
           "version": __version__}
    lines = [f"{'pass' if s.ok else 'FAIL'}  {s.name}  {s.detail}".rstrip() for s in replay.steps]
    lines.append("replay passed" if replay.ok else f"replay failed at {replay.first_failure.name}")
    _emit(args, out, lines)
    return 0 if replay.ok else 1


def cmd_witness(args) -> int:
    names = _names(args, args.ideal, args.candidate)
    gens = parse_ideal(args.ideal, names)
    f = parse_polynomial(args.candidate, names)
    inp = {"vars": names, "ideal": [g.to_str(names) for g in gens], "candidate": f.to_str(names),
           "construction": args.construction, "samples": args.samples, "seed": args.seed}
    if args.construction == "homogeneous":
        report = homogeneous_witness(f, gens, samples=args.samples, seed=args.seed)
        ok = report.relative_residual < WITNESS_TOLERANCE and bool(report.decay_consistent)
        lines = [f"max residual {report.max_residual:.3e} (relative {report.relative_residual:.3e})",
                 "sphere sups " + " ".join(f"{s:.3e}" for s in report.sphere_sups),
                 f"decay ratios vs expected {report.expected_ratio}: "
                 + " ".join(f"{r:.3f}" for r in report.decay_ratios)]
    elif args.construction == "psi":
        if len(names) != 2 or len(gens) != 2:
            raise WitnessPreconditionError("psi construction needs an ideal (z^e, w^e) in two variables")
        e1 = _single_term(gens[0], "generator")
        e2 = _single_term(gens[1], "generator")
        pure = sorted([e1, e2], reverse=True)
        if pure[0][1] != 0 or pure[1][0] != 0 or pure[0][0] != pure[1][1]:
            raise WitnessPreconditionError("psi construction needs an ideal of the form (z^e, w^e)")
        r, s = _single_term(f, "candidate")
        report = psi_witness(pure[0][0], r, s, samples=args.samples, seed=args.seed, cutoff=args.cutoff)
        ok = report.max_residual < WITNESS_TOLERANCE
        lines = [f"max residual {report.max_residual:.3e} over {report.sample_count} samples "
                 f"({report.parameters['z_zero_samples']} with z = 0)"]
    else:
        report = phi_probe(f, gens)
        ok = True
        lines = []
        for v in report.verdicts:
            if v["verdict"] == "NoLimit":
                lines.append(f"phi_{v['function'] + 1}: NoLimit along {v['witness'][0]} vs {v['witness'][1]}")
            else:
                lines.append(f"phi_{v['function'] + 1}: ConsistentLimit {v['value'][0]:.6g}{v['value'][1]:+.6g}i")
        lines += [f"  {e['path']}: phi_{e['function'] + 1} -> "
                  + (f"{e['limit'][0]:.6g}{e['limit'][1]:+.6g}i" if e["converged"] else "no limit")
                  for e in report.limits]
    if args.csv:
        report.write_csv(args.csv)
    payload = _payload("witness", inp, report=report.to_json())
    _emit(args, payload, lines)
    return 0 if ok else 1


# argument parsing

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="contclosure", description="Continuous and axes closure of monomial ideals.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, candidate=True):
        p.add_argument("--ideal", required=True, help="comma-separated generators, e.g. 'z^3,w^3'")
        if candidate:
            p.add_argument("--candidate", required=True)
        p.add_argument("--vars", help="comma-separated variable order (default: order of appearance)")
        p.add_argument("--json", action="store_true", help="emit the full JSON payload")

    p = sub.add_parser("closure", help="minimal generators of the continuous (= axes) closure")
    common(p, candidate=False)
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("member", help="closure membership verdict with certificate")
    common(p)
    p.add_argument("--kind", default="continuous", help="continuous|cont, axes|ax, integral|int")
    p.add_argument("--n-max", type=int, default=64, help="search bound for power witnesses")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("represent", help="exact representation of f^n in I^theta for a monomial f")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--theta", type=int, default=None, help="default: the largest achievable")
    p.set_defaults(func=cmd_represent)

    p = sub.add_parser("verify", help="replay a JSON payload emitted by member, closure or represent")
    p.add_argument("--certificate", required=True, help="path to the JSON file, or - for stdin")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("witness", help="numeric continuous-solution reports")
    common(p)
    p.add_argument("--construction", choices=["homogeneous", "psi", "phi-probe"], required=True)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cutoff", choices=["linear", "smooth"], default="linear")
    p.add_argument("--csv", help="write per-sample residuals to this file")
    p.set_defaults(func=cmd_witness)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"contclosure: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"contclosure: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NonMonomialError as exc:
        print(f"contclosure: {exc}", file=sys.stderr)
        return EXIT_NON_MONOMIAL
    except NotPrimaryError as exc:
        print(f"contclosure: {exc}", file=sys.stderr)
        return EXIT_NON_PRIMARY
    except MalformedCertificate as exc:
        print(f"contclosure: malformed certificate: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except (WitnessPreconditionError, ZeroDenominatorError, DimensionError, ValueError) as exc:
        print(f"contclosure: precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
