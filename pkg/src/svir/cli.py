"""Command-line surface: batch verification with JSON reports.

Every run echoes its command and configuration, writes a JSON report with a
stable schema version, prints a human-readable summary, and exits 0 when
all checks pass, 1 on any failed identity, 2 on usage errors.  Enumeration
order is fixed, so reports are deterministic for a fixed configuration.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys

from .algebra import (AlgebraElement, BasisElt, CENTRAL,
                      DegenerateFactorError, Kind, SuperVirasoro)
from .lattice import (AlgebraConfig, LatticeBasis, cone_inclusion_check,
                      iso_check, nested_cone_basis, unimodular_det)
from .parse import (parse_element, parse_index, parse_rational,
                    parse_rational_matrix, parse_rational_vector, parse_scalar)
from .repmod import BoxSpec, Family, ModuleSpec, ModuleVector, SeriesModule

SCHEMA_VERSION = 1

DEFAULT_CONFIG = {
    "n": 2,
    "d_names": ["d1", "d2"],
    "sigma": ["1/2", "0"],
    "radius": 2,
}

_FAMILY_PARAMS = {
    Family.SA: ("a", "b"),
    Family.SAPRIME: ("a'",),
    Family.SBPRIME: ("a'",),
}


class UsageError(Exception):
    pass


class Session:
    """Configuration shared by one CLI invocation."""

    def __init__(self, raw: dict):
        self.raw = raw
        n = raw.get("n", 2)
        d_names = raw.get("d_names") or [f"d{i+1}" for i in range(n)]
        sigma = [parse_rational(str(s)) for s in raw.get("sigma", ["0"] * n)]
        extra = tuple(raw.get("extra_names", ()))
        # declare every family parameter so any family can be selected per run
        extra = tuple(dict.fromkeys(("a", "b", "a'") + extra))
        try:
            self.config = AlgebraConfig(n, d_names, sigma, extra_names=extra)
        except Exception as exc:
            raise UsageError(f"bad configuration: {exc}") from None
        self.radius = parse_rational(str(raw.get("radius", 2)))
        self.family = raw.get("family")
        self.params = raw.get("params", {})
        self.output = raw.get("output")

    def module(self, family_name=None) -> SeriesModule:
        name = family_name or self.family
        if not name:
            raise UsageError("this command needs a module family "
                             "(--family or the config file)")
        try:
            family = Family(name)
        except ValueError:
            raise UsageError(f"unknown family {name!r}; choose from "
                             f"{[f.value for f in Family]}") from None
        values = {}
        for pname in _FAMILY_PARAMS[family]:
            literal = self.params.get(pname, pname)
            values[pname] = parse_scalar(self.config.ctx, str(literal))
        if family is Family.SA:
            spec = ModuleSpec.sa(values["a"], values["b"])
        elif family is Family.SAPRIME:
            spec = ModuleSpec.sa_prime(values["a'"])
        else:
            spec = ModuleSpec.sb_prime(values["a'"])
        return SeriesModule(self.config, spec)

    def echo(self):
        return {
            "n": self.config.n,
            "d_names": list(self.config.d_names),
            "sigma": [str(s) for s in self.config.sigma],
            "family": self.family,
            "params": {k: str(v) for k, v in self.params.items()},
            "radius": str(self.radius),
        }


def _basis_elements(config, radius):
    """Even, odd and central basis elements inside the box, in fixed order."""
    return tuple(BasisElt(Kind.L, v) for v in config.even_box(radius)) + \
        tuple(BasisElt(Kind.G, v) for v in config.odd_box(radius)) + (CENTRAL,)


# ---------------------------------------------------------------------------
# Command handlers: each returns (results, lines); a result with
# status == "fail" makes the run exit nonzero.
# ---------------------------------------------------------------------------

def cmd_bracket(session, args):
    sv = SuperVirasoro(session.config)
    x = parse_element(session.config, args.x)
    y = parse_element(session.config, args.y)
    if not isinstance(x, AlgebraElement) or not isinstance(y, AlgebraElement):
        raise UsageError("bracket expects algebra elements")
    out = sv.bracket(x, y)
    line = f"[{x}, {y}] = {out}"
    return [{"check": "bracket", "status": "info", "result": str(out)}], [line]


def cmd_act(session, args):
    module = session.module(args.family)
    g = parse_element(session.config, args.element)
    v = parse_element(session.config, args.vector, spec=module.spec)
    if not isinstance(g, AlgebraElement) or not isinstance(v, ModuleVector):
        raise UsageError("act expects an algebra element and a module vector")
    out = module.act(g, v)
    line = f"({g}) . ({v}) = {out}"
    return [{"check": "act", "status": "info", "result": str(out)}], [line]


def cmd_jacobi_fuzz(session, args):
    radius = parse_rational(args.radius) if args.radius else session.radius
    sv = SuperVirasoro(session.config)
    elems = _basis_elements(session.config, radius)
    checked = 0
    failures = []
    for x, y, z in itertools.product(elems, repeat=3):
        residual = sv.super_jacobi_residual(x, y, z)
        checked += 1
        if not residual.is_zero():
            failures.append({"triple": [str(x), str(y), str(z)],
                             "residual": str(residual)})
    status = "fail" if failures else "pass"
    results = [{"check": "super_jacobi", "status": status,
                "radius": str(radius), "triples": checked,
                "failures": failures}]
    lines = [f"jacobi-fuzz: {checked} homogeneous triples at radius {radius}: "
             f"{len(failures)} nonzero residuals"]
    for f in failures[:5]:
        lines.append(f"  residual [{', '.join(f['triple'])}] = {f['residual']}")
    if len(failures) > 5:
        lines.append(f"  ... {len(failures) - 5} more in the JSON report")
    return results, lines


def cmd_antisym(session, args):
    radius = parse_rational(args.radius) if args.radius else session.radius
    sv = SuperVirasoro(session.config)
    elems = _basis_elements(session.config, radius)
    failures = []
    checked = 0
    for x, y in itertools.product(elems, repeat=2):
        lhs = sv.bracket_basis(x, y)
        rhs = sv.bracket_basis(y, x)
        flipped = rhs if (x.parity and y.parity) else -rhs
        checked += 1
        if lhs != flipped:
            failures.append({"pair": [str(x), str(y)]})
    central = [str(x) for x in elems if not sv.bracket_basis(CENTRAL, x).is_zero()]
    ok = not failures and not central
    results = [{"check": "graded_antisymmetry", "status": "pass" if not failures else "fail",
                "pairs": checked, "failures": failures},
               {"check": "centrality", "status": "pass" if not central else "fail",
                "violations": central}]
    lines = [f"antisym: {checked} pairs, {len(failures)} antisymmetry failures, "
             f"{len(central)} centrality failures"]
    return results, lines


def cmd_rep_fuzz(session, args):
    radius = parse_rational(args.radius) if args.radius else session.radius
    vradius = parse_rational(args.vector_radius)
    module = session.module(args.family)
    elems = _basis_elements(session.config, radius)
    vectors = module.basis_in_box(BoxSpec(vradius))
    checked = 0
    failures = []
    for u, w in itertools.product(elems, repeat=2):
        for v in vectors:
            residual = module.rep_residual(u, w, v)
            checked += 1
            if not residual.is_zero():
                failures.append({"u": str(u), "w": str(w), "v": str(v),
                                 "residual": str(residual)})
    status = "fail" if failures else "pass"
    params = module.spec.params()
    results = [{"check": "rep_axiom", "status": status,
                "family": module.spec.family.value,
                "params": {k: str(v) for k, v in params.items()},
                "specialized_params": sorted(k for k, v in params.items()
                                             if v.is_constant()),
                "triples": checked, "failures": failures}]
    lines = [f"rep-fuzz {module.spec.family.value}: {checked} triples "
             f"(generators radius {radius}, vectors radius {vradius}): "
             f"{len(failures)} nonzero residuals"]
    for f in failures[:5]:
        lines.append(f"  residual ({f['u']}, {f['w']}, {f['v']}) = {f['residual']}")
    return results, lines


def cmd_cone_basis(session, args):
    n = session.config.n
    basis = nested_cone_basis(n, args.k)
    det = unimodular_det(basis)
    report = cone_inclusion_check(args.k, basis, args.bound)
    det_ok = det == 1
    results = [{"check": "nested_cone_basis_det", "status": "pass" if det_ok else "fail",
                "k": args.k, "basis": [list(r) for r in basis.rows], "det": det},
               {"check": "cone_inclusion", "status": "pass" if report.ok else "fail",
                **report.to_dict()}]
    lines = [f"cone-basis k={args.k}: det={det}, inclusion checked on "
             f"{report.checked} combinations (bound {args.bound}), "
             f"{len(report.violations)} violations"]
    return results, lines


def cmd_adapted_basis(session, args):
    mu = parse_index(session.config, args.mu)
    sv = SuperVirasoro(session.config)
    witness = sv.bracket_generation_witness(mu)
    results = [{"check": "adapted_basis_witness",
                "status": "pass" if witness.ok else "fail",
                "mu": str(mu), **witness.to_dict()}]
    det = unimodular_det(witness.adapted.basis)
    lines = [f"adapted-basis mu={mu}: case {witness.adapted.case}, det={det}, "
             f"witness {'verified' if witness.ok else 'FAILED'}"]
    for e in witness.entries:
        lines.append(f"  row {e.row}: {e.copies} bracket steps from L{e.start}, "
                     f"scalar {e.product}")
    return results, lines


def cmd_ladder(session, args):
    config = session.config
    mu = parse_index(config, args.mu) if args.mu else config.unit(0)
    d = parse_index(config, args.d) if args.d else config.unit(config.n - 1)
    sv = SuperVirasoro(config)
    results = []
    lines = []
    for m in range(1, args.m + 1):
        ok = sv.ladder_identity_check(d, mu, m)
        results.append({"check": "ladder_identity", "status": "pass" if ok else "fail",
                        "m": m, "mu": str(mu), "d": str(d)})
        lines.append(f"ladder m={m}: {'ok' if ok else 'FAILED'}")
    return results, lines


def cmd_iso_check(session, args):
    m = parse_rational_matrix(args.m)
    mp = parse_rational_matrix(args.mprime)
    s = parse_rational_vector(args.s)
    sp = parse_rational_vector(args.sprime)
    alpha = parse_rational(args.alpha)
    ok = iso_check(m, s, mp, sp, alpha)
    results = [{"check": "iso_criterion", "status": "pass" if ok else "fail",
                "alpha": str(alpha), "accepted": ok}]
    lines = [f"iso-check alpha={alpha}: {'accepted' if ok else 'rejected'}"]
    return results, lines


def cmd_simplicity(session, args):
    radius = parse_rational(args.radius) if args.radius else session.radius
    module = session.module(args.family)
    report = module.simplicity_probe(BoxSpec(radius))
    params = module.spec.params()
    results = [{"check": "simplicity_probe", "status": "info",
                "family": module.spec.family.value,
                "params": {k: str(v) for k, v in params.items()},
                "specialized_params": sorted(k for k, v in params.items()
                                             if v.is_constant()),
                **report.to_dict()}]
    lines = [f"simplicity {module.spec.family.value} (radius {radius}): "
             f"{len(report.candidates)} candidate submodule(s) among "
             f"{report.box_size} basis vectors [{report.note}]"]
    for cand in report.candidates:
        lines.append("  candidate: {" + ", ".join(str(b) for b in cand) + "}")
    return results, lines


def cmd_ghw(session, args):
    radius = parse_rational(args.radius) if args.radius else session.radius
    module = session.module(args.family)
    v = parse_element(session.config, args.vector, spec=module.spec)
    if not isinstance(v, ModuleVector):
        raise UsageError("ghw expects a module vector")
    basis = (LatticeBasis(parse_rational_matrix(args.basis)) if args.basis
             else LatticeBasis.identity(session.config.n))
    annihilated, witness = module.ghw_probe(v, basis, args.k, BoxSpec(radius))
    results = [{"check": "ghw_probe", "status": "info",
                "vector": str(v), "k": args.k,
                "annihilated": annihilated,
                "counterexample": str(witness) if witness else None}]
    if annihilated:
        lines = [f"ghw: every in-box cone generator annihilates {v} (k={args.k})"]
    else:
        lines = [f"ghw: {witness} does not annihilate {v} (k={args.k})"]
    return results, lines


def cmd_quotient(session, args):
    radius = parse_rational(args.radius) if args.radius else session.radius
    module = session.module(args.family)
    box = BoxSpec(radius)
    seeds = []
    if args.seeds:
        parsed = parse_element(session.config, args.seeds, spec=module.spec)
        if not isinstance(parsed, ModuleVector):
            raise UsageError("quotient seeds must be module basis vectors")
        seeds = list(parsed.terms)
    sub = module.closure(seeds, box) if seeds else frozenset()
    rows = module.quotient_dims(sub, box)
    results = [{"check": "quotient_dims", "status": "info",
                "submodule": sorted(str(b) for b in sub),
                "table": [r.to_dict() for r in rows]}]
    removed = sum(1 for r in rows if r.dim == 0)
    lines = [f"quotient (radius {radius}): submodule of size {len(sub)}, "
             f"{removed} weight line(s) removed, "
             f"{len(rows) - removed} remaining"]
    return results, lines


# ---------------------------------------------------------------------------
# Driver
# ---------------------------------------------------------------------------

def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS,
                        help="JSON session configuration file")
    common.add_argument("--output", default=argparse.SUPPRESS,
                        help="JSON report path (default report.json)")
    parser = argparse.ArgumentParser(
        prog="svir",
        parents=[common],
        description="Exact verification for the rank-n super-Virasoro algebra "
                    "and its intermediate-series modules.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name, **kwargs):
        return sub.add_parser(name, parents=[common], **kwargs)

    p = add_parser("bracket", help="bracket of two algebra elements")
    p.add_argument("x")
    p.add_argument("y")
    p.set_defaults(handler=cmd_bracket)

    p = add_parser("act", help="act by an algebra element on a module vector")
    p.add_argument("element")
    p.add_argument("vector")
    p.add_argument("--family")
    p.set_defaults(handler=cmd_act)

    p = add_parser("jacobi-fuzz",
                   help="graded Jacobi residuals over all in-box basis triples")
    p.add_argument("--radius")
    p.set_defaults(handler=cmd_jacobi_fuzz)

    p = add_parser("antisym",
                   help="graded antisymmetry and centrality over all in-box pairs")
    p.add_argument("--radius")
    p.set_defaults(handler=cmd_antisym)

    p = add_parser("rep-fuzz", help="module-axiom residuals for one family")
    p.add_argument("--family")
    p.add_argument("--radius")
    p.add_argument("--vector-radius", default="1")
    p.set_defaults(handler=cmd_rep_fuzz)

    p = add_parser("cone-basis",
                   help="nested cone basis: determinant and cone inclusion")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--bound", type=int, default=6)
    p.set_defaults(handler=cmd_cone_basis)

    p = add_parser("adapted-basis",
                   help="adapted basis for a vector and its bracket witness")
    p.add_argument("--mu", required=True)
    p.set_defaults(handler=cmd_adapted_basis)

    p = add_parser("ladder", help="ad-ladder identities up to m steps")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--mu")
    p.add_argument("--d")
    p.set_defaults(handler=cmd_ladder)

    p = add_parser("iso-check", help="verify a scaling between two lattices")
    p.add_argument("--m", required=True)
    p.add_argument("--s", required=True)
    p.add_argument("--mprime", required=True)
    p.add_argument("--sprime", required=True)
    p.add_argument("--alpha", required=True)
    p.set_defaults(handler=cmd_iso_check)

    p = add_parser("simplicity", help="closure probe for candidate submodules")
    p.add_argument("--family")
    p.add_argument("--radius")
    p.set_defaults(handler=cmd_simplicity)

    p = add_parser("ghw", help="generalized-highest-weight probe in a box")
    p.add_argument("--family")
    p.add_argument("--vector", required=True)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--radius")
    p.add_argument("--basis")
    p.set_defaults(handler=cmd_ghw)

    p = add_parser("quotient", help="weight dimensions of a box quotient")
    p.add_argument("--family")
    p.add_argument("--seeds")
    p.add_argument("--radius")
    p.set_defaults(handler=cmd_quotient)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    config_path = getattr(args, "config", None)
    output_path = getattr(args, "output", None)

    try:
        raw = dict(DEFAULT_CONFIG)
        if config_path:
            with open(config_path) as fh:
                raw.update(json.load(fh))
        session = Session(raw)
        results, lines = args.handler(session, args)
    except DegenerateFactorError as exc:
        print(f"degenerate check: {exc}", file=sys.stderr)
        return 1
    except (UsageError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    passed = all(r["status"] != "fail" for r in results)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": args.command,
        "config": session.echo(),
        "results": results,
        "passed": passed,
    }
    output = output_path or session.output or "report.json"
    with open(output, "w") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")
    for line in lines:
        print(line)
    print(f"{'PASS' if passed else 'FAIL'} (report written to {output})")
    return 0 if passed else 1


if __name__ == "__main__":
    sys.exit(main())
