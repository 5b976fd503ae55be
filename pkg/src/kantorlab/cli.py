"""Command-line driver: ``kantorlab <verb> ...``.

Exit codes: 0 every check passed, 1 an identity failed (including an input
that violates a construction's axioms), 2 bad input (unreadable file,
unknown suite, missing flag).
"""
from __future__ import annotations

import argparse
import csv
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import catalog as cat
from .bridge import (
    double_M21, lemma_suite_kantor, lemma_suite_mm, mu_normalize, rho_mu,
    skew_twist_11, star_suite, structurable_of_left_unital, twist, twisted_signs,
)
from .exact import (
    ConstructionError, HypothesisViolation, as_exact, exact_equal, identity, parse_scalar,
)
from .fileformat import (
    FormatError, SystemFile, algebra_file, dumps, load, superalgebra_file,
    to_algebra, to_map, to_superalgebra, to_triple, triple_file,
)
from .lie import (
    b01_decompose, build_gU, check_grading, check_super_jacobi, ground_system,
    phi_of_gU, phi_report,
)
from .report import CheckResult, Report
from .structurable import (
    algebra_automorphism_report, check_structurable, kts_from_structurable,
    twisted_kts,
)
from .triple import (
    KANTOR, MINUS_MINUS, SignPair, check_fkts, check_gjts, check_kts,
    check_unitary, special_result,
)

SUITES = ("gjts", "kantor", "fkts", "structurable", "lemmas-kantor", "lemmas-mm",
          "star", "special-unitary", "graded")
DIRECTIONS = ("structurable", "kts", "twist", "double-M21", "mu-normalize", "skew-twist-11")


class InputError(ValueError):
    """Bad command-line input."""


# -- input resolution ----------------------------------------------------------

def load_input(spec: str) -> SystemFile:
    path = Path(spec)
    if path.exists():
        return load(path)
    if spec in cat.ENTRIES:
        return cat.get(spec)
    raise InputError(f"{spec!r} is neither a readable file nor a catalog id")


def parse_vector(text: str):
    try:
        return as_exact([parse_scalar(x.strip()) for x in text.split(",")])
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad vector {text!r}: {exc}") from None


def parse_signs(text: str | None):
    if text is None:
        return None
    try:
        return SignPair.parse(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def triple_view(f: SystemFile, signs=None):
    """(triple system, signs, unit) for a triple-system or algebra file."""
    if f.kind == "triple-system":
        T = to_triple(f)
        return T, signs or f.data.get("signs") or KANTOR, f.data.get("unit")
    if f.kind == "involutive-algebra":
        A = to_algebra(f)
        S = f.data.get("automorphism")
        T = twisted_kts(A, S) if S is not None else kts_from_structurable(A)
        return T, signs or KANTOR, A.unit
    raise InputError(f"a {f.kind} file has no triple product")


def _unit(f: SystemFile, flag, fallback):
    if flag is not None:
        return parse_vector(flag)
    if fallback is None:
        raise InputError("this suite needs a left unit: pass --unit or store one in the file")
    return fallback


# -- suites ------------------------------------------------------------------

def run_suite(f: SystemFile, suite: str, signs=None, unit=None) -> Report:
    name, _, arg = suite.partition(":")
    if name not in SUITES:
        raise InputError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    if name == "fkts" and arg:
        signs = parse_signs(arg)
    if name == "structurable":
        A = to_algebra(f)
        rep = check_structurable(A)
        if f.data.get("automorphism") is not None:
            rep.extend(algebra_automorphism_report(A, f.data["automorphism"]))
        return rep
    if name == "graded":
        g, phi = to_superalgebra(f)
        rep = check_super_jacobi(g)
        rep.extend(check_grading(g))
        if phi is not None:
            _, inferred = ground_system(g, phi) if g.indices(1) else (None, KANTOR)
            rep.extend(phi_report(phi, inferred))
        return rep
    T, signs, stored_unit = triple_view(f, signs)
    if name == "gjts":
        return check_gjts(T)
    if name == "kantor":
        return check_kts(T)
    if name == "fkts":
        return check_fkts(T, signs)
    if name == "special-unitary":
        rep = Report(f"{T.label or 'triple system'} {signs}")
        rep.add(special_result(T, signs))
        rep.add(CheckResult("unitary", check_unitary(T, signs), 1))
        return rep
    e = _unit(f, unit, stored_unit)
    if name == "lemmas-kantor":
        return lemma_suite_kantor(T, e)
    if name == "lemmas-mm":
        return lemma_suite_mm(T, e)
    return star_suite(T, e)


# -- verbs ---------------------------------------------------------------------

def cmd_catalog(args) -> int:
    out = Path(args.out) if args.out else None
    if out:
        out.mkdir(parents=True, exist_ok=True)
    for item in cat.catalog():
        f = cat.get(item)
        print(f"{item}\t{f.kind}\tdim {f.dim}\tsuite {f.suite}\t{f.reference}")
        if out:
            (out / f"{item}.json").write_text(dumps(f), encoding="utf-8")
    return 0


def cmd_verify(args) -> int:
    f = load_input(args.input)
    suite = args.suite or f.suite
    if not suite:
        raise InputError("file declares no suite; pass --suite")
    rep = run_suite(f, suite, parse_signs(args.signs), args.unit)
    print(rep.render())
    return 0 if rep.passed else 1


def convert(f: SystemFile, direction: str, signs=None, unit=None, map_path=None,
            element=None) -> SystemFile:
    prov = list(f.provenance) + [f"convert:{direction}"]
    if direction == "kts":
        A = to_algebra(f)
        S = f.data.get("automorphism")
        T = twisted_kts(A, S) if S is not None else kts_from_structurable(A)
        return triple_file(T, KANTOR, A.unit, prov)
    if direction == "skew-twist-11":
        if element is None:
            raise InputError("skew-twist-11 needs --element f")
        T = skew_twist_11(to_algebra(f), parse_vector(element))
        return triple_file(T, SignPair(1, 1), None, prov)
    T, signs, stored_unit = triple_view(f, signs)
    if direction == "structurable":
        e = _unit(f, unit, stored_unit)
        A, sigma = structurable_of_left_unital(T, e)
        return algebra_file(A, sigma, prov)
    if direction == "twist":
        if map_path is None:
            raise InputError("twist needs --map FILE")
        S = to_map(load_input(map_path))
        out = twist(T, S, signs)
        e = stored_unit if stored_unit is not None and exact_equal(S @ stored_unit, stored_unit) else None
        return triple_file(out, twisted_signs(S, signs), e, prov)
    if direction == "double-M21":
        out = double_M21(T, signs)
        return triple_file(out, SignPair(-signs.epsilon, signs.delta), None, prov)
    if direction == "mu-normalize":
        e = _unit(f, unit, stored_unit)
        return triple_file(mu_normalize(T, e), MINUS_MINUS, e, prov)
    raise InputError(f"unknown direction {direction!r}; choose from {', '.join(DIRECTIONS)}")


def _emit(f: SystemFile, out) -> None:
    text = dumps(f)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_convert(args) -> int:
    f = load_input(args.input)
    out = convert(f, args.to, parse_signs(args.signs), args.unit, args.map, args.element)
    check = run_suite(out, out.suite)
    if not check.passed:
        raise ConstructionError(f"converted file fails its own suite:\n{check.render()}")
    _emit(out, args.out)
    return 0


def cmd_build_lie(args) -> int:
    f = load_input(args.input)
    T, signs, _ = triple_view(f, parse_signs(args.signs))
    g = build_gU(T, signs)
    phi = phi_of_gU(g)
    out = superalgebra_file(g, phi, list(f.provenance) + [f"build-lie:{signs}"])
    _emit(out, args.out)
    if args.out:
        print(f"{g.label}: dims by degree {g.dims_by_degree()}, total {g.dim}")
    return 0


def decompose(f: SystemFile, unit=None):
    if f.kind == "graded-superalgebra":
        g, phi = to_superalgebra(f)
        if phi is None:
            raise InputError("decompose needs a file carrying phi")
        e = parse_vector(unit) if unit else g.indices(1)[0] if g.indices(1) else None
        if e is None:
            raise InputError("degree-1 component is zero")
    else:
        T, signs, stored = triple_view(f, None)
        e = _unit(f, unit, stored)
        rep = check_fkts(T, MINUS_MINUS)
        if not rep.passed:
            raise HypothesisViolation(f"decompose needs a (-1,-1) system:\n{rep.render()}")
        _, mu = rho_mu(T, e)
        if not exact_equal(mu, identity(T.dim)):
            T = mu_normalize(T, e)
        g = build_gU(T, MINUS_MINUS)
        phi = phi_of_gU(g)
    return b01_decompose(g, phi, e)


def cmd_decompose(args) -> int:
    d = decompose(load_input(args.input), args.unit)
    print(d.report.render())
    a, n, t = d.counts
    print(f"adjoint×{a}, natural×{n}, trivial dim {t}")
    return 0 if d.report.passed else 1


# -- report ------------------------------------------------------------------

def report_item(spec: str):
    """Rows (item, check, verdict, cases, witness), grading dims and a
    superalgebra file for plotting."""
    f = load_input(spec)
    item = Path(spec).stem if Path(spec).exists() else spec
    reports: list[Report] = []
    g = phi = None
    if f.kind == "involutive-algebra":
        reports.append(run_suite(f, "structurable"))
        T, signs, e = triple_view(f)
        reports += [check_kts(T), lemma_suite_kantor(T, e), star_suite(T, e)]
        A, sigma = structurable_of_left_unital(T, e)
        S = f.data.get("automorphism")
        S = identity(A.dim) if S is None else S
        rt = Report("roundtrip")
        rt.add(CheckResult("reconstructed algebra and automorphism",
                           A.same_as(to_algebra(f)) and exact_equal(sigma, S), 1))
        reports.append(rt)
        g = build_gU(T, signs)
    elif f.kind == "triple-system":
        T, signs, e = triple_view(f)
        reports.append(check_fkts(T, signs))
        g = build_gU(T, signs)
        if e is not None and signs == MINUS_MINUS:
            reports.append(lemma_suite_mm(T, e))
            reports.append(decompose(f).report)
    else:
        reports.append(run_suite(f, "graded"))
        g, phi = to_superalgebra(f)
        if item.startswith("chevalley-") and g.indices(1):
            from .chevalley import (balanced_twist, chevalley_algebra, freudenthal_product,
                                    kantor_on_g1)
            L = chevalley_algebra(item.split("-", 1)[1])
            K = kantor_on_g1(L)
            reports.append(K.report)
            B = balanced_twist(K.system, K.sigma, K.form)
            reports.append(check_fkts(B, SignPair(1, 1)))
            reports.append(freudenthal_product(B, K.form)[1])
        elif phi is not None and g.is_super:
            reports.append(decompose(f).report)
    rows = []
    for rep in reports:
        for c in rep.checks:
            wit = "" if c.witness is None else f"{c.witness} lhs={c.lhs} rhs={c.rhs}"
            rows.append((item, f"{rep.subject}: {c.name}", "PASS" if c.passed else "FAIL",
                         str(c.cases), wit))
    if f.kind == "involutive-algebra":
        rows.append((item, "g(U): BC1 root grading", "NOT CHECKED", "0",
                     "not independently checked; only the 5-grading is verified"))
    return rows, g.dims_by_degree(), superalgebra_file(g)


def cmd_report(args) -> int:
    from .plotting import plot_bracket_sparsity, plot_grading_dims
    items = args.items or cat.catalog()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(report_item, items))
    else:
        results = [report_item(i) for i in items]
    header = ("item", "check", "verdict", "cases", "witness")
    with open(out / "report.tsv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, delimiter="\t", lineterminator="\n")
        writer.writerow(header)
        for rows, _, _ in results:
            writer.writerows(rows)
    w = csv.writer(sys.stdout, delimiter="\t", lineterminator="\n")
    w.writerow(header)
    failed = False
    dims = {}
    for item, (rows, d, gfile) in zip(items, results):
        w.writerows(rows)
        failed |= any(r[2] == "FAIL" for r in rows)
        name = Path(item).stem
        dims[name] = d
        g, _ = to_superalgebra(gfile)
        g.label = name
        plot_bracket_sparsity(g, out / f"bracket_{name}.png")
    plot_grading_dims(dims, out / "grading_dims.png")
    return 1 if failed else 0


# -- entry point ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kantorlab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp, signs=True, unit=True):
        if signs:
            sp.add_argument("--signs", help="sign pair 'eps,delta', e.g. -1,1")
        if unit:
            sp.add_argument("--unit", help="left unit as comma-separated scalars, e.g. 1,1")
        sp.add_argument("--jobs", type=int, default=1, help="worker processes")

    sp = sub.add_parser("catalog", help="list built-in systems")
    sp.add_argument("--out", help="also write every item as a file into this directory")
    sp.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("input", help="file path or catalog id")
    sp.add_argument("--suite", help=f"one of {', '.join(SUITES)} (fkts:e,d allowed)")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("convert", help="apply a construction and write the result")
    sp.add_argument("input")
    sp.add_argument("--to", required=True, choices=DIRECTIONS)
    sp.add_argument("--map", help="linear-map file for twist")
    sp.add_argument("--element", help="skew element f for skew-twist-11")
    sp.add_argument("--out", help="output file (default stdout)")
    common(sp)
    sp.set_defaults(func=cmd_convert)

    sp = sub.add_parser("build-lie", help="emit the graded Lie (super)algebra g(U)")
    sp.add_argument("input")
    sp.add_argument("--out")
    common(sp, unit=False)
    sp.set_defaults(func=cmd_build_lie)

    sp = sub.add_parser("decompose", help="B(0,1) module decomposition")
    sp.add_argument("input")
    common(sp, signs=False)
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("report", help="run everything, write TSV and figures")
    sp.add_argument("items", nargs="*", help="catalog ids or files (default: whole catalog)")
    sp.add_argument("--out", default="report", help="output directory")
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_report)
    return p


def _glue_values(argv: list[str]) -> list[str]:
    # "--signs -1,1" would otherwise be read as an unknown option
    out, it = [], iter(argv)
    for tok in it:
        if tok in ("--signs", "--unit", "--element"):
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_values(argv))
    try:
        return args.func(args)
    except (ConstructionError, HypothesisViolation) as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return 1
    except (InputError, FormatError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
