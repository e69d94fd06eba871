"""Command-line front end: gasket {eval,energy,form,basis,verify,experiment}."""
from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from .address import Address, AddressError, parse_address
from .harmonic import HarmonicFunction, eval_at, normal_derivative
from . import boundary, experiments, firstorder, oneform, pwharmonic

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None


def _triple(text: str) -> HarmonicFunction:
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError(f"expected three comma-separated values, got {text!r}")
    return HarmonicFunction(_fraction(p) for p in parts)


def _address(text: str) -> Address:
    try:
        return parse_address(text)
    except AddressError as exc:
        raise UsageError(str(exc)) from None


def _load_json(text: str):
    if text.lstrip().startswith("{"):
        return json.loads(text)
    with open(text, encoding="utf-8") as fh:
        return json.load(fh)


def _function(args) -> pwharmonic.PiecewiseHarmonic:
    if args.harmonic is not None:
        return pwharmonic.from_harmonic(_triple(args.harmonic))
    if args.piecewise is not None:
        return pwharmonic.PiecewiseHarmonic.from_json(_load_json(args.piecewise))
    raise UsageError("give --harmonic a,b,c or --piecewise FILE")


def _families(args) -> list[oneform.LoopFamily]:
    fams = []
    for spec in args.ray or []:
        parts = spec.split(",")
        if len(parts) != 4:
            raise UsageError(f"--ray wants base,dir,a,phi: {spec!r}")
        fams.append(oneform.ray(parts[0], int(parts[1]), _fraction(parts[2]), _fraction(parts[3])))
    for spec in args.tree or []:
        parts = spec.split(",")
        if len(parts) != 3:
            raise UsageError(f"--tree wants base,a,theta: {spec!r}")
        fams.append(oneform.tree(parts[0], _fraction(parts[1]), _fraction(parts[2])))
    return fams


def _form(args) -> oneform.OneForm:
    if getattr(args, "form", None):
        return oneform.OneForm.from_json(_load_json(args.form))
    exact = _triple(args.exact) if args.exact else HarmonicFunction((0, 0, 0))
    finite = {}
    for spec in args.loop or []:
        word, _, coef = spec.partition("=")
        finite[word] = finite.get(word, Fraction(0)) + (_fraction(coef) if coef else 1)
    loops = oneform.LoopCoefficients(finite, tuple(_families(args)))
    return oneform.OneForm(pwharmonic.from_harmonic(exact), loops)


def _form_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--form", help="one-form as JSON text or file")
    p.add_argument("--exact", help="harmonic exact part a,b,c")
    p.add_argument("--loop", action="append", metavar="W=C", help="finite loop coefficient")
    p.add_argument("--ray", action="append", metavar="BASE,DIR,A,PHI", help="geometric ray")
    p.add_argument("--tree", action="append", metavar="BASE,A,THETA", help="geometric full tree")


def _emit(out, pairs) -> None:
    for key, value in pairs:
        out.write(f"{key} {value}\n")


# ------------------------------------------------------------------ commands

def cmd_eval(args, out) -> int:
    a = _address(args.at)
    u = _function(args)
    if args.harmonic is not None and not (args.normal or args.tangential):
        out.write(f"{eval_at(_triple(args.harmonic), a)}\n")
        return EXIT_PASS
    rows = []
    if not (args.normal or args.tangential):
        rows = [(f"value[{s}]", pwharmonic.local_value(u, s)) for s in pwharmonic.side_addresses(a)]
    if args.normal:
        rows += [(f"normal[{s}]", pwharmonic.point_normal_derivative(u, s))
                 for s in pwharmonic.side_addresses(a)]
    if args.tangential:
        rows.append((f"tangential[{a}]", pwharmonic.point_tangential_derivative(u, a)))
    _emit(out, rows)
    return EXIT_PASS


def cmd_energy(args, out) -> int:
    u = _function(args)
    v = u
    if args.with_harmonic:
        v = pwharmonic.from_harmonic(_triple(args.with_harmonic))
    rows = []
    if args.level is not None:
        if args.level < max(u.level, v.level):
            raise UsageError(f"--level must be at least {max(u.level, v.level)}")
        rows.append((f"E_{args.level}", pwharmonic.graph_energy_pair(u, v, args.level)))
    cell = args.cell if args.cell is not None else ""
    rows.append((f"nu[{cell}]", pwharmonic.energy_measure_pair(u, v, cell)))
    _emit(out, rows)
    return EXIT_PASS


def cmd_form(args, out) -> int:
    omega = _form(args)
    rows = []
    if args.norm:
        rows.append(("norm_sq", oneform.norm_sq(omega)))
    if args.measure is not None:
        rows.append((f"measure[{args.measure}]", oneform.measure_cell(omega, args.measure, args.algorithm)))
    if args.normal_part:
        a = _address(args.normal_part)
        for s in pwharmonic.side_addresses(a):
            rows.append((f"normal_part[{s}]", boundary.normal_part(omega, s)))
    if args.tangential_part:
        a = _address(args.tangential_part)
        try:
            rows.append((f"tangential_part[{a}]", boundary.tangential_part(omega, a)))
        except boundary.TangentialPartMissing as exc:
            rows.append((f"tangential_part[{a}]", f"does-not-exist ({exc})"))
    if args.div:
        v0, full = oneform.divergence_free_check(omega)
        rows += [("divergence_free_v0", str(v0).lower()), ("divergence_free", str(full).lower())]
    if args.med:
        rows.append(("med_certified", str(oneform.med_check(omega)).lower()))
    if not rows:
        rows.append(("norm_sq", oneform.norm_sq(omega)))
    _emit(out, rows)
    return EXIT_PASS


def cmd_basis(args, out) -> int:
    index, gram = oneform.basis_gram(args.level)
    if args.json:
        json.dump({"words": index, "gram": [[str(x) for x in row] for row in gram]}, out)
        out.write("\n")
        return EXIT_PASS
    out.write("diagonal " + " ".join(str(gram[k][k]) for k in range(len(index))) + "\n")
    off = sorted({str(gram[a][b]) for a in range(len(index)) for b in range(len(index)) if a != b})
    out.write("off-diagonal " + (" ".join(off) if off else "none") + "\n")
    return EXIT_PASS


def cmd_verify(args, out) -> int:
    results = experiments.verify_suite(args.level)
    if args.json:
        json.dump(results, out, indent=1)
        out.write("\n")
    else:
        for r in results:
            out.write(f"{r['status']} {r['name']}" + (f": {r['detail']}" if r["detail"] else "") + "\n")
    return EXIT_FAIL if any(r["status"] == "FAIL" for r in results) else EXIT_PASS


def _report(rep: experiments.ExperimentReport, args, out) -> None:
    if args.json:
        json.dump(rep.to_json(), out, indent=1)
        out.write("\n")
    elif args.csv:
        csv.writer(out, lineterminator="\n").writerows(rep.csv_rows())
    else:
        out.write(f"experiment {rep.name}\n")
        out.write(f"limit {rep.limit}\n")
        for c in rep.checks:
            out.write(f"check {'pass' if c.passed else 'FAIL'} {c.name}" + (f": {c.detail}" if c.detail else "") + "\n")
        for n in rep.notes:
            out.write(f"note {n}\n")
        out.write(f"verdict {rep.verdict}\n")


def cmd_experiment(args, out) -> int:
    kind = args.kind
    if kind == "all":
        reports = experiments.run_all()
        if args.json:
            json.dump([r.to_json() for r in reports], out, indent=1)
            out.write("\n")
        else:
            for r in reports:
                out.write(f"{r.verdict} {r.name} {json.dumps(r.to_json()['params'], sort_keys=True)} limit={r.limit}\n")
        return EXIT_PASS if all(r.passed for r in reports) else EXIT_FAIL
    if kind == "pointwise":
        rep = experiments.exp_pointwise(_triple(args.u), _form(args), _address(args.target),
                                        args.m_max, args.chi, _fraction(args.theta))
    elif kind == "ntrh":
        omega = _form(args)
        if args.theta is not None:
            omega = omega + oneform.family_form(oneform.ray(args.word, args.i, _fraction(args.a),
                                                            _fraction(args.theta)))
        rep = experiments.exp_ntrh(omega, args.word, args.i, args.j, args.m_max)
    elif kind == "sides":
        rep = experiments.exp_sides(_triple(args.h), _fraction(args.a), _fraction(args.phi), args.m_max)
    elif kind == "vertical":
        loops = None
        if args.case == "iii":
            loops = _form(args).loops
        rep = experiments.exp_vertical(args.case, _triple(args.h), args.m_max,
                                       u=_triple(args.u) if args.u else None,
                                       a=_fraction(args.a), phi=_fraction(args.phi), loops=loops)
    else:
        rep = experiments.exp_cut(_triple(args.u_left), _triple(args.u_right), _triple(args.phi),
                                  args.depth, args.line_depth)
    _report(rep, args, out)
    return EXIT_PASS if rep.passed else EXIT_FAIL


# -------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gasket", description="Exact first-order calculus on the Sierpinski gasket")
    sub = p.add_subparsers(dest="command", required=True)

    def function_args(q):
        q.add_argument("--harmonic", help="corner values a,b,c")
        q.add_argument("--piecewise", help="piecewise harmonic function as JSON text or file")

    q = sub.add_parser("eval", help="values and derivatives at an address")
    function_args(q)
    q.add_argument("--at", required=True, help='address "w:i"')
    q.add_argument("--normal", action="store_true", help="normal derivative from each side")
    q.add_argument("--tangential", action="store_true")
    q.set_defaults(func=cmd_eval)

    q = sub.add_parser("energy", help="energy, graph energy and energy measures")
    function_args(q)
    q.add_argument("--with-harmonic", help="second argument of the bilinear form")
    q.add_argument("--level", type=int, help="graph energy level m")
    q.add_argument("--cell", help="word w for nu(K_w)")
    q.set_defaults(func=cmd_energy)

    q = sub.add_parser("form", help="one-form quantities")
    _form_options(q)
    q.add_argument("--norm", action="store_true")
    q.add_argument("--measure", metavar="W")
    q.add_argument("--algorithm", default="auto", choices=["auto", "brute", "closed", "scale"])
    q.add_argument("--normal-part", metavar="W:I")
    q.add_argument("--tangential-part", metavar="W:I")
    q.add_argument("--div", action="store_true")
    q.add_argument("--med", action="store_true")
    q.set_defaults(func=cmd_form)

    q = sub.add_parser("basis", help="Gram matrix of the loop basis")
    q.add_argument("--level", type=int, default=1)
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_basis)

    q = sub.add_parser("verify", help="invariant suite")
    q.add_argument("--level", type=int, default=2)
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_verify)

    q = sub.add_parser("experiment", help="convergence experiments")
    kinds = q.add_subparsers(dest="kind", required=True)
    for name in ("pointwise", "ntrh", "sides", "vertical", "cut", "all"):
        k = kinds.add_parser(name)
        fmt = k.add_mutually_exclusive_group()
        fmt.add_argument("--json", action="store_true")
        fmt.add_argument("--csv", action="store_true")
        k.add_argument("--m-max", type=int, default=20)
        if name in ("pointwise", "ntrh", "vertical"):
            _form_options(k)
        if name == "pointwise":
            k.add_argument("--u", default="0,1,-1")
            k.add_argument("--target", default=":1")
            k.add_argument("--chi", type=int, default=0)
            k.add_argument("--theta", default="0")
        if name == "ntrh":
            k.add_argument("--word", default="")
            k.add_argument("--i", type=int, default=0)
            k.add_argument("--j", type=int, default=1)
            k.add_argument("--a", default="1")
            k.add_argument("--theta", help="add the ray Theta_(w i^k) = a theta^k")
        if name == "sides":
            k.add_argument("--h", default="0,1,1")
            k.add_argument("--a", default="1")
            k.add_argument("--phi", default="3/5")
        if name == "vertical":
            k.add_argument("--case", choices=["i", "ii", "iii"], default="i")
            k.add_argument("--h", default="0,1,-1")
            k.add_argument("--u")
            k.add_argument("--a", default="1")
            k.add_argument("--phi", default="1/10")
        if name == "cut":
            k.add_argument("--u-left", default="1,1,1")
            k.add_argument("--u-right", default="0,0,0")
            k.add_argument("--phi", default="0,1,2")
            k.add_argument("--depth", type=int, default=8)
            k.add_argument("--line-depth", type=int, default=10)
    q.set_defaults(func=cmd_experiment)
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except (UsageError, ValueError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"gasket: error: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
