"""Command-line front end: ``trisectkit <command> ...``.

Exit codes: 0 success, 1 a check or computation failed, 2 bad usage or
unreadable input.  Every command is deterministic; ``--json`` switches to a
machine-readable report with sorted keys.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import braid, charclass, cocycle, pi1, torus_diagram, trisection
from .monodromy import CoveringError, CoveringSpec
from .rational import format_rational, parse_rational

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    """Input could not be read or parsed."""


class DomainFailure(Exception):
    """A computation refused the input (disconnected cover, no clearance, ...)."""


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def _load(path: str, loader):
    data = _read_json(path)
    if not isinstance(data, dict):
        raise UsageError(f"{path}: expected a JSON object")
    try:
        return loader(data)
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _rational(text: str):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write("".join(line + "\n" for line in lines))


# --- verify / cover ----------------------------------------------------------------------


def cmd_verify(args) -> int:
    f = _load(args.file, braid.Factorization.from_json)
    report = braid.verify_factorization(f)
    lines = [
        f"exponent_sum: {'pass' if report.exponent_sum_ok else 'FAIL'} "
        f"({report.exponent_sum} vs d(d-1) = {report.expected_exponent_sum})",
        f"equality: {'pass' if report.equality_ok else 'FAIL'}"
        + ("" if report.equality_checked else " (skipped: exponent sum differs)"),
        f"permutation: {'pass' if report.permutation_ok else 'FAIL'}",
        "verified" if report.passed else "failed: " + ", ".join(report.failures()),
    ]
    _emit(args, report.to_json(), lines)
    return EXIT_OK if report.passed else EXIT_FAIL


def _load_spec(args, diagram) -> CoveringSpec:
    if args.spec is not None:
        return _load(args.spec, CoveringSpec.from_json)
    try:
        return trisection.block_spec(diagram, args.degree)
    except CoveringError as exc:
        raise UsageError(str(exc)) from exc


def cmd_cover(args) -> int:
    f = _load(args.factorization, braid.Factorization.from_json)
    try:
        diagram = torus_diagram.build_from_factorization(f)
    except torus_diagram.DiagramError as exc:
        raise DomainFailure(str(exc)) from exc
    spec = _load_spec(args, diagram)
    try:
        report = trisection.pullback_report(diagram, spec)
    except (CoveringError, trisection.TrisectionError) as exc:
        raise DomainFailure(str(exc)) from exc
    lines = [
        str(report.params),
        f"euler characteristic: {report.euler_characteristic}",
        f"central surface euler: {report.surface_euler} (oracle {report.oracle_surface_euler})",
        "sector euler: " + ",".join(map(str, report.sector_euler))
        + " (oracle " + ",".join(map(str, report.oracle_sector_euler)) + ")",
        f"oracle: {'agrees' if report.oracle_agrees else 'DISAGREES'}",
    ]
    _emit(args, report.to_json(), lines)
    return EXIT_OK if report.oracle_agrees else EXIT_FAIL


# --- diagram -----------------------------------------------------------------------------


def cmd_diagram_build(args) -> int:
    f = _load(args.input, braid.Factorization.from_json)
    try:
        d = torus_diagram.build_from_factorization(f)
    except torus_diagram.DiagramError as exc:
        raise DomainFailure(str(exc)) from exc
    _write(torus_diagram.dumps(d) + "\n", args.out)
    return EXIT_OK


def cmd_diagram_render(args) -> int:
    d = _load(args.input, torus_diagram.from_json)
    _write(torus_diagram.render_svg(d), args.out)
    return EXIT_OK


def cmd_diagram_perturb(args) -> int:
    d = _load(args.input, torus_diagram.from_json)
    if not 0 <= args.bridge < len(d.bridge_points):
        raise UsageError(f"bridge {args.bridge} out of range (diagram has {len(d.bridge_points)})")
    try:
        out = torus_diagram.finger_perturbation(d, args.bridge, args.sector, args.eps)
    except torus_diagram.DiagramError as exc:
        raise DomainFailure(str(exc)) from exc
    _write(torus_diagram.dumps(out) + "\n", args.out)
    return EXIT_OK


def cmd_diagram_stats(args) -> int:
    d = _load(args.input, torus_diagram.from_json)
    stats = torus_diagram.statistics(d)
    problems = torus_diagram.validate(d)
    trans = torus_diagram.check_geometric_transversality(d)
    payload = dict(stats, valid=not problems, problems=problems, transversality=trans.to_json())
    lines = [
        f"bridge points: {stats['bridge_points']}",
        f"bridge index: {stats['bridge_index']}",
        "components per sector: " + ",".join(map(str, stats["components"])),
    ]
    for lam, kinds in enumerate(stats["links"], start=1):
        lines.append(f"sector {lam}: " + ", ".join(f"{k} {v}" for k, v in kinds.items()))
    lines.append(f"sign sum: {stats['sign_sum']}")
    lines.append("valid" if not problems else "invalid: " + "; ".join(problems))
    lines.append("transverse" if trans.passed else f"not transverse: {len(trans.violations)} segments")
    _emit(args, payload, lines)
    return EXIT_OK if not problems and trans.passed else EXIT_FAIL


# --- cocycle -------------------------------------------------------------------------------


def cmd_cocycle_check(args) -> int:
    t = _load(args.input, cocycle.from_json)
    try:
        total = cocycle.check_cocycle_sum(t)
        pos = cocycle.check_pairwise_positivity(t)
    except cocycle.CocycleError as exc:
        raise DomainFailure(str(exc)) from exc
    zeros = cocycle.check_zero_structure(t)
    ok = total and pos.passed and zeros.passed
    u = pos.uniform_density
    lines = [
        f"genus: {t.surface.genus}",
        f"cocycle sum: {'pass' if total else 'FAIL'}",
        f"pairwise positivity: {'pass' if pos.passed else 'FAIL'}"
        + ("" if u is None else f" (uniform density {format_rational(u)})"),
        f"zero structure: {'pass' if zeros.passed else 'FAIL ' + ', '.join(zeros.failures())}",
        "pass" if ok else "fail",
    ]
    payload = {"genus": t.surface.genus, "cocycle_sum": total, "positivity": pos.to_json(),
               "zero_structure": zeros.to_json(), "passed": ok}
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_cocycle_local(args) -> int:
    r = cocycle.pullback_local_model(args.eps, args.resolution, exact=True,
                                     expected_coefficient=args.coefficient)
    payload = r.to_json()
    lines = [f"{k}: {v}" for k, v in payload.items()]
    _emit(args, payload, lines)
    ok = r.matches_expected and r.nonnegative and r.zero_only_at_origin
    return EXIT_OK if ok else EXIT_FAIL


# --- chern -----------------------------------------------------------------------------------


def cmd_chern_bmy(args) -> int:
    cd = charclass.ChernData(args.c1sq, args.c2)
    ok = charclass.bmy_check(cd)
    payload = {"c1_sq": format_rational(cd.c1_sq), "c2": format_rational(cd.c2), "holds": ok,
               "equality": charclass.bmy_equality(cd), "chi_h": format_rational(cd.chi_h),
               "warnings": cd.warnings()}
    lines = [f"c1^2 <= 3 c2: {'holds' if ok else 'violated'}"
             + (" (equality)" if payload["equality"] else ""),
             f"chi_h: {payload['chi_h']}"] + [f"warning: {w}" for w in cd.warnings()]
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_FAIL


def _chi_h(args):
    if args.chi_h is not None:
        return args.chi_h
    if args.c1sq is not None and args.c2 is not None:
        return charclass.ChernData(args.c1sq, args.c2).chi_h
    raise UsageError("give --chi-h, or both --c1sq and --c2")


def cmd_chern_rr(args) -> int:
    L = charclass.BundleClass(args.LL, args.LK, 0, 0)
    chi = charclass.riemann_roch(L, _chi_h(args))
    _emit(args, {"chi": format_rational(chi)}, [f"chi(L) = {format_rational(chi)}"])
    return EXIT_OK


def cmd_chern_window(args) -> int:
    if args.beta <= 0:
        raise UsageError("beta must be positive")
    w = charclass.alpha_window(args.beta)
    _emit(args, w.to_json(), [str(w)])
    return EXIT_OK


def cmd_chern_decision(args) -> int:
    L = charclass.BundleClass(args.LL, args.LK, args.omega_L, args.omega_K)
    chi_h = _chi_h(args)
    verdict = charclass.effective_divisor_decision(L, chi_h, args.k_sq)
    chi = charclass.riemann_roch(L, chi_h)
    _emit(args, {"verdict": verdict, "chi": format_rational(chi)},
          [verdict, f"chi(L) = {format_rational(chi)}"])
    return EXIT_OK


# --- pi1 ---------------------------------------------------------------------------------------


def cmd_pi1_factor(args) -> int:
    try:
        w = pi1.GroupWord.parse(args.word)
        rels = pi1.RelationSet.from_exponents(args.exponents)
    except pi1.WordError as exc:
        raise UsageError(str(exc)) from exc
    p, gamma = pi1.factor_longitude_front(w.reduce())
    fact = pi1.flat_factorization(w, rels)
    payload = {
        "word": str(w),
        "l_power": p,
        "gamma0": str(gamma),
        "factorization": None if fact is None else
        [{"mu": str(mu), "rho": str(rho)} for mu, rho in fact.segments],
    }
    lines = [f"l^{p} * ({gamma})",
             "no flat factorization" if fact is None else str(fact)]
    _emit(args, payload, lines)
    return EXIT_OK if fact is not None else EXIT_FAIL


# --- parser ------------------------------------------------------------------------------------


def _exponent_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.replace(",", " ").split())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = argparse.ArgumentParser(prog="trisectkit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="verify a full-twist factorization")
    v.add_argument("file")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("cover", parents=[common], help="pull back the CP^2 trisection")
    c.add_argument("--factorization", required=True)
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--spec", help="covering spec JSON")
    g.add_argument("--degree", type=int, help="use the block spec of this degree (1, 2 or 3)")
    c.set_defaults(func=cmd_cover)

    d = sub.add_parser("diagram", help="torus diagrams").add_subparsers(dest="action", required=True)
    b = d.add_parser("build", help="factorization JSON -> diagram JSON")
    b.add_argument("--in", dest="input", required=True)
    b.add_argument("--out")
    b.set_defaults(func=cmd_diagram_build)
    r = d.add_parser("render", help="diagram JSON -> SVG")
    r.add_argument("--in", dest="input", required=True)
    r.add_argument("--out")
    r.set_defaults(func=cmd_diagram_render)
    f = d.add_parser("perturb", help="finger perturbation at a bridge point")
    f.add_argument("--in", dest="input", required=True)
    f.add_argument("--bridge", type=int, required=True)
    f.add_argument("--sector", type=int, choices=(1, 2, 3), required=True)
    f.add_argument("--eps", type=_rational)
    f.add_argument("--out")
    f.set_defaults(func=cmd_diagram_perturb)
    s = d.add_parser("stats", parents=[common], help="counts, validity and transversality")
    s.add_argument("--in", dest="input", required=True)
    s.set_defaults(func=cmd_diagram_stats)

    cc = sub.add_parser("cocycle", help="discrete 1-cocycles").add_subparsers(dest="action", required=True)
    ck = cc.add_parser("check", parents=[common])
    ck.add_argument("--in", dest="input", required=True)
    ck.set_defaults(func=cmd_cocycle_check)
    lm = cc.add_parser("local-model", parents=[common], help="wedge density of the branched local model")
    lm.add_argument("--eps", type=int, choices=(1, -1), default=1)
    lm.add_argument("--resolution", type=int, default=33)
    lm.add_argument("--coefficient", type=_rational, default=_rational("16"))
    lm.set_defaults(func=cmd_cocycle_local)

    ch = sub.add_parser("chern", help="characteristic-class arithmetic").add_subparsers(
        dest="action", required=True)
    bm = ch.add_parser("bmy", parents=[common])
    bm.add_argument("--c1sq", type=_rational, required=True)
    bm.add_argument("--c2", type=_rational, required=True)
    bm.set_defaults(func=cmd_chern_bmy)

    def chi_args(q):
        q.add_argument("--chi-h", type=_rational)
        q.add_argument("--c1sq", type=_rational)
        q.add_argument("--c2", type=_rational)

    rr = ch.add_parser("rr", parents=[common], help="Riemann-Roch chi(L)")
    rr.add_argument("--LL", type=_rational, required=True)
    rr.add_argument("--LK", type=_rational, required=True)
    chi_args(rr)
    rr.set_defaults(func=cmd_chern_rr)
    wi = ch.add_parser("window", parents=[common], help="admissible alpha for a given beta")
    wi.add_argument("--beta", type=_rational, required=True)
    wi.set_defaults(func=cmd_chern_window)
    de = ch.add_parser("decision", parents=[common], help="effective divisor decision")
    for name in ("--LL", "--LK", "--omega-L", "--omega-K"):
        de.add_argument(name, type=_rational, required=True)
    de.add_argument("--k-sq", type=_rational)
    chi_args(de)
    de.set_defaults(func=cmd_chern_decision)

    pg = sub.add_parser("pi1", help="free-group words").add_subparsers(dest="action", required=True)
    fa = pg.add_parser("factor", parents=[common], help="l^n mu_1 rho_1 ... factorization")
    fa.add_argument("--word", required=True)
    fa.add_argument("--exponents", type=_exponent_list, default=(1, 2, -2, 3),
                    help="half-twist exponents whose relations are allowed (default: all)")
    fa.set_defaults(func=cmd_pi1_factor)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.json = getattr(args, "json", False)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainFailure as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
