"""Command-line interface: ``python -m momentangle <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import fixtures
from .dga import CohomologyClass, DgaElement, cohomology_basis, massey_triple
from .exactalg import DEFAULT_ORDER, SparseBivariate
from .homotopy import euler_identity_check, ranks_flag, ranks_general
from .obstruction import certify, detect, scan_nonformal
from .simplicial import (ComplexError, alexander_dual, bier, coordinate_arrangement,
                         corner_cut, is_flag, join, load, polygon, verify_sphere_candidate)
from .srhomology import BettiTable, betti_via_dual, hilbert_sr, hochster_betti, render_table

EXIT_OK, EXIT_INPUT, EXIT_MISMATCH = 0, 2, 3


class InputError(Exception):
    pass


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def _load(path: str):
    try:
        return load(path)
    except (OSError, json.JSONDecodeError, ComplexError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _vertex_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise InputError(f"bad vertex list {text!r}") from exc


# ---------------------------------------------------------------------------
# commands


def cmd_betti(args) -> int:
    K = _load(args.file)
    table = betti_via_dual(K) if args.dual else hochster_betti(K, jobs=args.jobs)
    if args.text:
        sys.stdout.write(render_table(table))
    else:
        out = table.to_dict()
        out["betti"] = table.betti_numbers()
        _emit(out)
    return EXIT_OK


def cmd_table(args) -> int:
    try:
        table = BettiTable.from_dict(json.loads(Path(args.file).read_text()))
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{args.file}: {exc}") from exc
    if args.text:
        sys.stdout.write(render_table(table))
    else:
        _emit(table.to_dict())
    return EXIT_OK


def _parse_classes(K, text: str, degrees):
    try:
        pairs = json.loads(text)
        classes = []
        for (support, simplex), q in zip(pairs, degrees):
            classes.append(CohomologyClass(q, DgaElement.chi(K, support, simplex)))
    except (json.JSONDecodeError, TypeError, ValueError) as exc:
        raise InputError(f"bad --classes: {exc}") from exc
    if len(classes) != 3:
        raise InputError("--classes needs three [support, simplex] pairs")
    for c, q in zip(classes, degrees):
        if c.representative.degree != q:
            raise InputError(f"class {c} does not have degree {q}")
    return classes


def _auto_triple(K, degrees):
    """First triple of basis classes (pairwise disjoint supports) with a nonzero product."""
    if tuple(degrees) == (3, 3, 3):
        hits = detect(K)
        if hits:
            return certify(K, hits[0])
    bases = [cohomology_basis(K, q) for q in degrees]
    last = None
    for a in bases[0]:
        A = a.representative.supports[0]
        for b in bases[1]:
            B = b.representative.supports[0]
            if A & B:
                continue
            for c in bases[2]:
                C = c.representative.supports[0]
                if C & (A | B):
                    continue
                report = massey_triple(K, a, b, c)
                if report.nonvanishing:
                    return report
                last = report
    return last


def cmd_massey(args) -> int:
    K = _load(args.file)
    degrees = _vertex_list(args.degrees)
    if len(degrees) != 3:
        raise InputError("--degrees needs three comma-separated degrees")
    if args.classes:
        report = massey_triple(K, *_parse_classes(K, args.classes, degrees))
    elif args.auto:
        report = _auto_triple(K, degrees)
        if report is None:
            _emit({"defined": False, "degree": sum(degrees) - 1, "nonvanishing": False,
                   "indeterminacy_dim": 0, "decomposable": None, "representative": [],
                   "note": "no classes of these degrees with disjoint supports"})
            return EXIT_OK
    else:
        raise InputError("give --classes or --auto")
    if args.text:
        print(report.summary())
    else:
        _emit(report.to_dict())
    return EXIT_OK


def _scan_one(path: Path) -> dict:
    K = _load(str(path))
    verdict = scan_nonformal(K)
    out = verdict.to_dict()
    out["verdict"] = verdict.verdict
    return out


def cmd_scan(args) -> int:
    path = Path(args.file)
    if not path.is_dir():
        out = _scan_one(path)
        if args.text:
            print(f"{path.name}: {out['note']}")
        else:
            _emit(out)
        return EXIT_OK
    rows = []
    counts = {"non-formal (certified)": 0, "no lowest-degree obstruction": 0, "error": 0}
    for f in sorted(path.glob("*.json")):
        try:
            res = _scan_one(f)
            counts[res["verdict"]] += 1
            rows.append({"file": f.name, **res})
        except InputError as exc:
            counts["error"] += 1
            rows.append({"file": f.name, "error": str(exc)})
    if args.text:
        for r in rows:
            print(f"{r['file']}: " + (f"error: {r['error']}" if "error" in r else r["verdict"]))
        print("total: " + ", ".join(f"{v} {k}" for k, v in counts.items()))
    else:
        _emit({"files": rows, "counts": counts})
    return EXIT_OK


def cmd_ranks(args) -> int:
    K = _load(args.file)
    if args.poincare:
        try:
            P = SparseBivariate.from_dict(json.loads(Path(args.poincare).read_text()))
        except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise InputError(f"{args.poincare}: {exc}") from exc
        try:
            table = ranks_general(K, P, args.N)
        except (ArithmeticError, ValueError) as exc:
            raise InputError(f"{args.poincare}: {exc}") from exc
    elif is_flag(K):
        table = ranks_flag(K, args.N)
    else:
        raise InputError("complex is not flag: requires external Poincaré series (--poincare)")
    if args.text:
        sys.stdout.write(table.render())
    else:
        _emit(table.to_dict())
    return EXIT_OK


def _emit_complex(K) -> int:
    _emit(K.to_dict())
    return EXIT_OK


def cmd_dual(args) -> int:
    try:
        return _emit_complex(alexander_dual(_load(args.file)))
    except ComplexError as exc:
        raise InputError(str(exc)) from exc


def cmd_bier(args) -> int:
    try:
        return _emit_complex(bier(_load(args.file)))
    except ComplexError as exc:
        raise InputError(str(exc)) from exc


def cmd_join(args) -> int:
    try:
        return _emit_complex(join(_load(args.file), _load(args.other)))
    except ComplexError as exc:
        raise InputError(str(exc)) from exc


def cmd_cut(args) -> int:
    K = _load(args.file)
    try:
        return _emit_complex(corner_cut(K, _vertex_list(args.face), args.w))
    except ComplexError as exc:
        raise InputError(str(exc)) from exc


def cmd_arrangement(args) -> int:
    subspaces = [str(h) for h in coordinate_arrangement(_load(args.file))]
    if args.text:
        print("\n".join(subspaces))
    else:
        _emit(subspaces)
    return EXIT_OK


def cmd_verify_sphere(args) -> int:
    report = verify_sphere_candidate(_load(args.file))
    if args.text:
        print(report.summary())
    else:
        _emit(report.to_dict())
    return EXIT_OK


def cmd_hilbert(args) -> int:
    h = hilbert_sr(_load(args.file))
    num, d = h.simplified()
    if args.text:
        print(h)
    else:
        _emit({"series": str(h), "f_vector": list(h.f_vector),
               "numerator": list(num), "denominator_power": d})
    return EXIT_OK


# ---------------------------------------------------------------------------
# reproduction of the worked examples


def _check(name, ok, detail=""):
    return {"name": name, "pass": bool(ok), "detail": detail}


def _table_check(name, K, expected, jobs=None):
    got = render_table(hochster_betti(K, jobs=jobs))
    return _check(name, got == expected, "\n" + got)


def _repro_6_1(jobs):
    checks = []
    for n in range(4, 10):
        b = hochster_betti(polygon(n), jobs=jobs).betti_numbers()
        want = [fixtures.polygon_betti(n, k) for k in range(3, n)]
        checks.append(_check(f"polygon-{n} Betti numbers", b[3:n] == want, str(b)))
    for n in range(4, 9):
        r = ranks_flag(polygon(n), 7)
        want = fixtures.polygon_ranks(n)
        checks.append(_check(f"polygon-{n} ranks phi_3..phi_7", all(r[k] == v for k, v in want.items()),
                             str(r.row())))
        checks.append(_check(f"polygon-{n} Euler identity", euler_identity_check(polygon(n))))
    return checks


def _repro_6_2(jobs):
    K = fixtures.subdivided_octahedron()
    return [_table_check("Betti table", K, fixtures.SUBDIVIDED_OCTAHEDRON_TABLE, jobs),
            _check("dual-link engine agrees", betti_via_dual(K) == hochster_betti(K, jobs=jobs)),
            _check("no obstruction graph", not detect(K))]


def _repro_fig_1_1(jobs):
    K = fixtures.five_cycle_plus_edge()
    hits = detect(K)
    r = certify(K, hits[0]) if hits else None
    rep = r.representative.representative if r else None
    want = DgaElement.chi(K, range(1, 7), (2, 5), -1)
    return [_check("one obstruction graph on all six vertices", len(hits) == 1),
            _check("Massey product nonvanishing, zero indeterminacy, decomposable",
                   r is not None and r.nonvanishing and r.indeterminacy_dim == 0 and r.decomposable,
                   r.summary() if r else ""),
            _check("representative is -chi_25", rep == want, str(rep))]


def _repro_7_1(jobs):
    K = fixtures.flag_sphere8()
    reports = [certify(K, h) for h in detect(K)]
    return [_table_check("Betti table", K, fixtures.FLAG_SPHERE8_TABLE, jobs),
            _check("flag", is_flag(K)),
            _check("some certificate nonvanishing with zero indeterminacy",
                   any(r.nonvanishing and r.indeterminacy_dim == 0 for r in reports),
                   f"{len(reports)} hits")]


def _massey8_classes(K):
    ch = lambda I, s: DgaElement.chi(K, I, s)
    return (CohomologyClass(3, ch((1, 2), (2,))), CohomologyClass(7, ch((3, 4, 5, 6), (4, 5, 6))),
            CohomologyClass(3, ch((7, 8), (8,))))


def _repro_7_7(jobs):
    K = fixtures.massey_example8()
    sizes = sorted(len(f) for f in K.facets)
    r = massey_triple(K, *_massey8_classes(K))
    ranks = ranks_general(K, fixtures.massey8_poincare(), 13)
    return [_check("facets: one 3-face and twelve 4-faces", sizes == [4] + [5] * 12, str(sizes)),
            _table_check("Betti table", K, fixtures.MASSEY8_TABLE, jobs),
            _check("<e1,e3,e5> nonvanishing in H^12, zero indeterminacy, indecomposable",
                   r.degree == 12 and r.nonvanishing and r.indeterminacy_dim == 0 and r.decomposable is False,
                   r.summary()),
            _check("homotopy ranks phi_3..phi_13", ranks.row() == list(fixtures.MASSEY8_RANKS.values()),
                   str(ranks.row()))]


def _repro_7_10(jobs):
    K = bier(polygon(4))
    rep = verify_sphere_candidate(K)
    return [_check("Bier sphere of the square passes sphere checks", rep.passes and K.n == 8 and rep.dim == 2,
                   rep.summary()),
            _table_check("Betti table equals the flag 8-vertex sphere table", K, fixtures.FLAG_SPHERE8_TABLE, jobs)]


def _repro_7_11(jobs):
    L = fixtures.massey_bier16()
    b = hochster_betti(L, jobs=jobs).betti_numbers()
    r = massey_triple(L, *_massey8_classes(L), indeterminacy=False)
    return [_check("Betti numbers", b == fixtures.MASSEY_BIER16_BETTI, str(b)),
            _check("lifted <e1,e3,e5> nonvanishing in H^12", r.nonvanishing and r.degree == 12, r.summary())]


REPRODUCE = {
    "example-6.1": _repro_6_1,
    "example-6.2": _repro_6_2,
    "figure-1.1": _repro_fig_1_1,
    "example-7.1": _repro_7_1,
    "example-7.7": _repro_7_7,
    "example-7.10": _repro_7_10,
    "example-7.11": _repro_7_11,
}


def cmd_reproduce(args) -> int:
    names = list(REPRODUCE) if args.name == "all" else [args.name]
    results = {name: REPRODUCE[name](args.jobs) for name in names}
    ok = all(c["pass"] for cs in results.values() for c in cs)
    if args.text:
        for name, cs in results.items():
            for c in cs:
                print(f"{'PASS' if c['pass'] else 'FAIL'} {name}: {c['name']}")
                if not c["pass"] and c["detail"]:
                    print(c["detail"])
        print("PASS" if ok else "FAIL")
    else:
        _emit({"checks": {name: cs for name, cs in results.items()}, "pass": ok})
    return EXIT_OK if ok else EXIT_MISMATCH


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--text", action="store_true", help="human-readable output instead of JSON")
    common.add_argument("--jobs", type=int, default=None, help="worker processes (default: all cores)")
    common.add_argument("--field", default="rationals",
                        help="coefficient field; only 'rationals' is supported")

    p = argparse.ArgumentParser(prog="momentangle", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_, file=True):
        sp = sub.add_parser(name, parents=[common], help=help_)
        if file:
            sp.add_argument("file")
        sp.set_defaults(func=func)
        return sp

    sp = add("betti", cmd_betti, "bigraded Betti table of Z_K")
    sp.add_argument("--dual", action="store_true", help="use the Alexander-dual link formula")
    add("table", cmd_table, "render a Betti-table JSON file")
    sp = add("massey", cmd_massey, "triple Massey product")
    sp.add_argument("--degrees", default="3,3,3")
    sp.add_argument("--classes", help="JSON list of three [support, simplex] pairs")
    sp.add_argument("--auto", action="store_true", help="search basis classes for a nonvanishing product")
    add("scan", cmd_scan, "obstruction-graph scan of a file or directory")
    sp = add("ranks", cmd_ranks, "ranks of rational homotopy groups")
    sp.add_argument("-N", type=int, default=DEFAULT_ORDER, help="truncation order")
    sp.add_argument("--poincare", help="JSON Poincaré series of Tor^{S/I}(k,k)")
    add("dual", cmd_dual, "Alexander dual")
    add("bier", cmd_bier, "Bier sphere")
    sp = add("join", cmd_join, "simplicial join")
    sp.add_argument("other")
    sp = add("cut", cmd_cut, "cut the corner at a facet")
    sp.add_argument("--face", required=True, help="comma-separated facet vertices")
    sp.add_argument("--w", type=int, default=None, help="new vertex id (default n+1)")
    add("arrangement", cmd_arrangement, "coordinate subspace arrangement")
    add("verify-sphere", cmd_verify_sphere, "necessary conditions for a sphere")
    add("hilbert", cmd_hilbert, "Hilbert series of the Stanley-Reisner ring")
    sp = add("reproduce", cmd_reproduce, "recompute a worked example", file=False)
    sp.add_argument("name", choices=sorted(REPRODUCE) + ["all"])
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.field.lower() not in ("rationals", "q", "qq"):
        print(f"error: field {args.field!r} is not supported; all computations are over the rationals "
              "(integer torsion and positive characteristic are out of scope)", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
