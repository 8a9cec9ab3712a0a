"""Command-line entry point ``lauricella-dmod``.

Exit codes: 0 the checked claim holds, 1 it fails, 2 usage error,
3 undecided (reduction bound exceeded or an unsupported branch).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .charvar import char_gens, gens_equal_modulo_rename, printed_gens
from .families import FAMILIES, FamilySpec, make_operator, operator_family, theta_text
from .groebner import Status, buchberger_check
from .orders import (
    KINDS,
    OrderSpec,
    cone_violations,
    initial_term,
    weight_cone_contains,
)
from .series import SERIES_FAMILIES, verify_annihilation
from .singlocus import (
    DEFAULT_CAP,
    SING_FAMILIES,
    UnsupportedBranch,
    closed_form_sing,
    epsilon_dets,
    match_factors,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_UNDECIDED = 3

# Past this many terms the text output summarizes a polynomial instead of printing it.
TEXT_TERM_LIMIT = 200

DEFAULT_ORDER = {"A": "local01", "C": "local01", "B": "global01", "APrime": "global01"}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    family: str = "B"
    m: int = 2
    order: str | None = None
    w: tuple | None = None
    tiebreak_w: tuple | None = None
    bound: int | None = None
    shortcut: bool = True
    form: str = "normal"
    json: bool = False
    compare_closed_form: bool = False
    degree: int = 8
    trials: int = 5
    seed: int = 0
    corrupt: bool = True
    jobs: int = 1
    cap: int = DEFAULT_CAP
    extra: dict = field(default_factory=dict)

    def validate(self):
        if self.m < 1:
            raise UsageError("--m must be at least 1")
        if self.cap < 1:
            raise UsageError("--cap must be at least 1")
        if self.bound is not None and self.bound < 1:
            raise UsageError("--bound must be at least 1")
        if self.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        if self.family not in FAMILIES:
            raise UsageError(f"unknown family {self.family}")
        if self.command == "weight-cone":
            return
        kind = self.order or DEFAULT_ORDER[self.family]
        if kind != "weight" and (self.w is not None or self.tiebreak_w is not None):
            raise UsageError("--w and --tiebreak-w need --order weight")
        if kind == "weight" and self.w is None:
            raise UsageError("--order weight needs --w")


def _dump(obj):
    return json.dumps(obj, sort_keys=True, indent=2)


def _poly_text(p):
    if len(p.terms) > TEXT_TERM_LIMIT:
        return f"<{len(p.terms)} terms, total degree {p.total_degree()}>"
    return p.to_text()


def _order_for(cfg):
    kind = cfg.order or DEFAULT_ORDER[cfg.family]
    try:
        o = OrderSpec(kind, cfg.w, cfg.tiebreak_w)
    except (ValueError, ArithmeticError) as exc:
        raise UsageError(str(exc)) from None
    if kind == "weight":
        if len(o.w) != 2 * cfg.m:
            raise UsageError(f"--w must have {2 * cfg.m} entries")
        # For B the deciding weight must lie in the cone: w itself, or the
        # secondary weight when w only pre-sorts (e.g. w = (0..0, 1..1)).
        deciding = o.w if o.tiebreak_w is None else o.tiebreak_w
        if cfg.family == "B" and not weight_cone_contains(cfg.m, deciding):
            bad = "; ".join(cone_violations(cfg.m, deciding))
            which = "w" if o.tiebreak_w is None else "--tiebreak-w"
            raise UsageError(f"{which} lies outside the cone for family B (violated: {bad})")
    return o


def cmd_gen_operators(cfg):
    spec = FamilySpec(cfg.family, cfg.m)
    ops = operator_family(spec)
    if cfg.json:
        out = {"family": cfg.family, "m": cfg.m, "form": cfg.form, "operators": []}
        for i, op in enumerate(ops, 1):
            entry = {"index": i, "theta": theta_text(spec, i)}
            if cfg.form == "normal":
                entry["normal"] = op.to_text()
                entry["terms"] = op.to_json()["terms"]
            out["operators"].append(entry)
        return EXIT_OK, _dump(out)
    lines = []
    for i in range(1, cfg.m + 1):
        body = theta_text(spec, i) if cfg.form == "theta" else make_operator(spec, i).to_text()
        lines.append(f"l{i} = {body}")
    return EXIT_OK, "\n".join(lines)


def _symbol_text(op, exps):
    """Monomial of ``op``'s symbol ring, e.g. ``x1^3*xi1^2``."""
    return op.algebra.ring.monomial(exps).to_text()


def _step_count(p):
    return len(p.trace.steps)


def cmd_groebner_check(cfg):
    o = _order_for(cfg)
    spec = FamilySpec(cfg.family, cfg.m)
    G = operator_family(spec)
    try:
        report = buchberger_check(G, o, cfg.bound, cfg.shortcut)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if report.overall:
        code = EXIT_OK
    elif any(p.status is Status.NONZERO_REMAINDER for p in report.pairs):
        code = EXIT_FAIL
    else:
        code = EXIT_UNDECIDED
    init = []
    for g in G:
        exps, c = initial_term(o, g)
        init.append({"monomial": _symbol_text(g, exps), "coeff": spec.algebra.domain.format(c)})
    if cfg.json:
        out = report.to_json()
        out.update({"family": cfg.family, "m": cfg.m, "initial_terms": init})
        return code, _dump(out)
    n = len(report.pairs)
    lines = [f"family {cfg.family}, m = {cfg.m}, order {o}"]
    lines.append("initial terms: " + ", ".join(t["monomial"] for t in init))
    lines.append(f"{'pair':<8}{'shortcut':<10}{'target':<10}{'steps':>6}  status")
    for p in report.pairs:
        target = "zero" if p.target_zero else "nonzero"
        lines.append(
            f"({p.i + 1},{p.j + 1})".ljust(8)
            + ("yes" if p.shortcut else "no").ljust(10)
            + target.ljust(10)
            + f"{_step_count(p):>6}  {p.status.value}"
        )
        if p.status is not Status.REDUCED_TO_ZERO:
            lines.append(f"    remainder: {p.trace.remainder.to_text()}")
    if report.overall:
        how = " via coprime shortcut" if all(p.shortcut for p in report.pairs) else ""
        lines.append(f"all {n} pairs reduced to zero{how}" if n != 1 else f"the pair reduced to zero{how}")
    elif code == EXIT_UNDECIDED:
        lines.append("undecided: x-degree bound exceeded before reduction finished")
    else:
        bad = sum(p.status is Status.NONZERO_REMAINDER for p in report.pairs)
        lines.append(f"{bad} of {n} pairs left a nonzero remainder")
    return code, "\n".join(lines)


def cmd_charvar(cfg):
    spec = FamilySpec(cfg.family, cfg.m)
    cv = char_gens(spec)
    code = EXIT_OK
    match = None
    if cfg.compare_closed_form:
        if cfg.family == "C":
            code = EXIT_UNDECIDED
        else:
            pg = printed_gens(spec)
            match = gens_equal_modulo_rename(cv, pg, {})
            code = EXIT_OK if match else EXIT_FAIL
    if cfg.json:
        out = cv.to_json()
        out["exact"] = cv.exact
        if cfg.compare_closed_form:
            out["matches_closed_form"] = match
        return code, _dump(out)
    lines = [f"family {cfg.family}, m = {cfg.m}, provenance {cv.provenance}"]
    for i, g in enumerate(cv.gens, 1):
        lines.append(f"L{i} = {g.to_text()}")
    if cfg.compare_closed_form:
        if match is None:
            lines.append("no closed form recorded for this family")
        else:
            lines.append("closed form: " + ("match" if match else "MISMATCH"))
    return code, "\n".join(lines)


def cmd_singular_locus(cfg):
    if cfg.family not in SING_FAMILIES:
        raise UsageError(f"singular-locus supports families {', '.join(SING_FAMILIES)}")
    if cfg.m > cfg.cap:
        raise UsageError(f"m = {cfg.m} exceeds --cap {cfg.cap}")
    try:
        dets = epsilon_dets(cfg.family, cfg.m, cfg.jobs)
    except UnsupportedBranch as exc:
        out = {
            "family": cfg.family,
            "m": cfg.m,
            "status": "unsupported",
            "generator": exc.index,
            "polynomial": exc.polynomial.to_text(),
            "reason": exc.reason,
        }
        if cfg.json:
            return EXIT_UNDECIDED, _dump(out)
        return EXIT_UNDECIDED, f"unsupported branch: generator {exc.index}: {exc.reason}\n  {out['polynomial']}"
    product = dets[0][1].ring.one
    for _, d in dets:
        product = product * d
    closed = closed_form_sing(cfg.family, cfg.m) if cfg.family in ("A", "B") else None
    matched = match_factors(product, closed) if closed else None
    code = EXIT_OK
    if cfg.compare_closed_form:
        code = EXIT_UNDECIDED if closed is None else (EXIT_OK if matched else EXIT_FAIL)
    factors = None
    if matched:
        factors = [{"factor": f.to_text(), "multiplicity": k} for f, k in zip(closed.factors, closed.multiplicities)]
    exactness = closed.exactness if closed else "derived"
    if cfg.json:
        out = {
            "family": cfg.family,
            "m": cfg.m,
            "epsilons": [{"eps": list(e), "det": d.to_text()} for e, d in dets],
            "product": product.to_text(),
            "factors": factors,
            "matches_closed_form": matched,
            "exactness": exactness,
        }
        return code, _dump(out)
    lines = [f"family {cfg.family}, m = {cfg.m}"]
    for e, d in dets:
        lines.append(f"eps {''.join(map(str, e))}: {_poly_text(d)}")
    lines.append(f"product: {_poly_text(product)}")
    if factors:
        lines.append("factors:")
        lines.extend(f"  ({f['factor']})^{f['multiplicity']}" for f in factors)
    if matched is not None:
        lines.append("closed form: " + ("match" if matched else "MISMATCH"))
    lines.append(f"exactness: {exactness}")
    return code, "\n".join(lines)


def cmd_verify_annihilation(cfg):
    if cfg.family not in SERIES_FAMILIES:
        raise UsageError(f"verify-annihilation supports families {', '.join(SERIES_FAMILIES)}")
    if cfg.degree < 0 or cfg.trials < 1:
        raise UsageError("--degree must be nonnegative and --trials positive")
    results = verify_annihilation(cfg.family, cfg.m, cfg.degree, cfg.trials, cfg.seed, cfg.corrupt)
    ok = all(r.passed for r in results)
    code = EXIT_OK if ok else EXIT_FAIL
    if cfg.json:
        out = {
            "family": cfg.family,
            "m": cfg.m,
            "degree": cfg.degree,
            "seed": cfg.seed,
            "passed": ok,
            "trials": [r.to_json() for r in results],
        }
        return code, _dump(out)
    lines = [f"family {cfg.family}, m = {cfg.m}, degree {cfg.degree}, seed {cfg.seed}"]
    for t, r in enumerate(results, 1):
        params = ", ".join(f"{k}={v}" for k, v in r.params.to_json().items())
        lines.append(f"trial {t}: {params}")
        for i, flag in enumerate(r.operator_ok, 1):
            lines.append(f"  l{i}: {'PASS' if flag else 'FAIL'}")
        res = ",".join(map(str, r.residue_degrees)) or "none"
        lines.append(f"  boundary residue at degree: {res}")
        lines.append(f"  recurrence oracle: {'PASS' if r.oracle_ok else 'FAIL'}")
        if r.corrupted_index is not None:
            caught = r.corruption_caught_by_operators and r.corruption_caught_by_oracle
            lines.append(f"  corruption at {r.corrupted_index}: {'detected' if caught else 'MISSED'}")
    lines.append("PASS" if ok else "FAIL")
    return code, "\n".join(lines)


def cmd_weight_cone(cfg):
    if cfg.w is None:
        raise UsageError("weight-cone needs --w")
    if len(cfg.w) != 2 * cfg.m:
        raise UsageError(f"--w must have {2 * cfg.m} entries")
    try:
        inside = weight_cone_contains(cfg.m, cfg.w)
        o = OrderSpec("weight", cfg.w, cfg.tiebreak_w)
    except (ValueError, ArithmeticError) as exc:
        raise UsageError(str(exc)) from None
    spec = FamilySpec("B", cfg.m)
    inits, expected_ok = [], True
    for i, g in enumerate(operator_family(spec)):
        exps, _ = initial_term(o, g)
        want = tuple(3 if k == i else 0 for k in range(cfg.m)) + tuple(2 if k == i else 0 for k in range(cfg.m))
        expected_ok &= exps == want
        inits.append(_symbol_text(g, exps))
    # Inside the cone the claim is that every initial term is x_i^3 xi_i^2.
    code = EXIT_OK if inside and expected_ok else EXIT_FAIL
    if cfg.json:
        out = {
            "m": cfg.m,
            "w": [str(v) for v in o.w],
            "inside": inside,
            "violations": cone_violations(cfg.m, o.w),
            "initial_terms": inits,
            "initial_terms_expected": expected_ok,
        }
        return code, _dump(out)
    lines = [f"w = ({', '.join(str(v) for v in o.w)})", f"inside cone: {'yes' if inside else 'no'}"]
    lines.extend(f"  violated: {v}" for v in cone_violations(cfg.m, o.w))
    lines.append("B initial terms: " + ", ".join(inits))
    return code, "\n".join(lines)


COMMANDS = {
    "gen-operators": cmd_gen_operators,
    "groebner-check": cmd_groebner_check,
    "charvar": cmd_charvar,
    "singular-locus": cmd_singular_locus,
    "verify-annihilation": cmd_verify_annihilation,
    "weight-cone": cmd_weight_cone,
}


def run(cfg):
    """Execute a configuration; returns ``(exit_code, output_text)``."""
    try:
        cfg.validate()
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        return EXIT_USAGE, f"error: {exc}"


def _vector(text):
    parts = [p.strip() for p in text.split(",")]
    if not all(parts):
        raise argparse.ArgumentTypeError(f"bad vector {text!r}")
    return tuple(parts)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser():
    p = _Parser(prog="lauricella-dmod", description="Exact checks for Lauricella D-module systems.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, families=FAMILIES, default="B"):
        sp.add_argument("--family", choices=families, default=default)
        sp.add_argument("--m", type=int, default=2)
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--json", action="store_true", help="same as --format json")

    sp = sub.add_parser("gen-operators", help="print the operator family")
    common(sp)
    sp.add_argument("--form", choices=("theta", "normal"), default="normal")

    sp = sub.add_parser("groebner-check", help="Buchberger-criterion check of the family")
    common(sp)
    sp.add_argument("--order", choices=KINDS, help="default: global01 for B/APrime, local01 for A/C")
    sp.add_argument("--w", type=_vector, help="comma-separated rational weights, length 2m")
    sp.add_argument("--tiebreak-w", type=_vector, help="secondary weight vector")
    sp.add_argument("--bound", type=int, help="x-degree cap for local reduction")
    sp.add_argument("--no-shortcut", action="store_true", help="always reduce the full S-pair")

    sp = sub.add_parser("charvar", help="characteristic-variety generators")
    common(sp)
    sp.add_argument("--compare-closed-form", action="store_true")

    sp = sub.add_parser("singular-locus", help="epsilon determinants and their product")
    common(sp, SING_FAMILIES, "A")
    sp.add_argument("--compare-closed-form", action="store_true")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--cap", type=int, default=DEFAULT_CAP)

    sp = sub.add_parser("verify-annihilation", help="truncated-series annihilation check")
    common(sp, SERIES_FAMILIES, "A")
    sp.add_argument("--degree", type=int, default=8)
    sp.add_argument("--trials", type=int, default=5)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--no-corrupt", action="store_true", help="skip the corruption sensitivity test")

    sp = sub.add_parser("weight-cone", help="cone membership and B initial terms for a weight")
    sp.add_argument("--m", type=int, default=2)
    sp.add_argument("--w", type=_vector, required=True)
    sp.add_argument("--tiebreak-w", type=_vector)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.add_argument("--json", action="store_true")
    return p


def config_from_args(ns):
    cfg = RunConfig(command=ns.command, m=ns.m, json=ns.json or ns.format == "json")
    for name in ("family", "order", "w", "tiebreak_w", "bound", "form", "degree", "trials", "seed", "jobs", "cap"):
        if getattr(ns, name, None) is not None:
            setattr(cfg, name, getattr(ns, name))
    cfg.compare_closed_form = getattr(ns, "compare_closed_form", False)
    cfg.shortcut = not getattr(ns, "no_shortcut", False)
    cfg.corrupt = not getattr(ns, "no_corrupt", False)
    if ns.command == "weight-cone":
        cfg.family = "B"
    return cfg


def main(argv=None):
    ns = build_parser().parse_args(argv)
    code, text = run(config_from_args(ns))
    stream = sys.stderr if code == EXIT_USAGE else sys.stdout
    print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
