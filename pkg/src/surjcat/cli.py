"""Batch command line: every computation, deterministic machine-readable output.

Three formats: ``json`` (byte-identical across runs: stable key order, stable
basis order), ``csv`` (with a header row), ``pretty`` (aligned text tables,
the default).  Exit status 0 on success or a passing verification, 1 on a
verification failure, 2 on invalid input.

All parameters are flags — no environment variables — so a published table
can be regenerated from its command line alone.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from math import factorial

from . import burnside, cube, mackey
from .burnside import (
    RingConsistencyError, augmentation_ideal, build_ring, ideal_image, mark,
    marks_matrix, segal_report,
)
from .epi_cat import (
    SliceMorphism, SliceObject, check_atomic_orbital, enumerate_objects,
    hom_count, hom_set,
)
from .fin_coprod import CoprodMap, good_subset_classes, pullback, verify_universal_property
from .finset import FinMap, enumerate_surjections, surjection_count
from .span_cat import ConnectedSpan, compose_connected

_DICTIONARY = """\
how to read these computations, for readers used to orbit-category bookkeeping:

  surjcat side                                 orbit side
  -------------------------------------------  ------------------------------------
  nonempty finite sets of size <= d,           transitive G-sets and the
    surjections between them                     orbit category
  the set [k]                                  an orbit with point stabilizer
                                                 of index k
  ring        (structure constants)            Burnside ring multiplication
  marks       (hom-count matrix)               table of marks / ghost coordinates
  ideal       (kernel of the top mark)         augmentation ideal
  segal       (mod-p case table)               completion arithmetic at a prime
  pullback,   (good-subset decomposition)      double cosets
  span-compose
  mackey-*    (restriction/transfer systems)   Mackey functors and the
                                                 double-coset formula
  cube-check  (threshold extension of          isotropy separation and
                 cube diagrams)                  fixed-point gluing
  pigeonhole  (degree bookkeeping)             vanishing of cross effects

Use --format json for byte-stable output, csv for spreadsheets."""


# ---------------------------------------------------------------------------
# parsing and output helpers

def _tuple_arg(text: str) -> tuple[int, ...]:
    try:
        out = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise ValueError(f"expected a comma-separated integer tuple, got {text!r}")
    if not out:
        raise ValueError("tuple must be nonempty")
    return out


def _span_arg(text: str) -> ConnectedSpan:
    """Parse 'LFOOT<-APEX->RFOOT:LVALS:RVALS' into a connected span."""
    try:
        shape, lvals, rvals = text.split(":")
        left_s, rest = shape.split("<-")
        apex_s, right_s = rest.split("->")
    except ValueError:
        raise ValueError(
            f"expected 'LFOOT<-APEX->RFOOT:LVALS:RVALS', got {text!r}"
        )
    apex = SliceObject(_tuple_arg(apex_s))
    left_foot = SliceObject(_tuple_arg(left_s))
    right_foot = SliceObject(_tuple_arg(right_s))
    lm = FinMap(apex.total_size, left_foot.total_size, _tuple_arg(lvals))
    rm = FinMap(apex.total_size, right_foot.total_size, _tuple_arg(rvals))
    return ConnectedSpan(
        SliceMorphism(apex, left_foot, lm), SliceMorphism(apex, right_foot, rm)
    )


def _fmt_tuple(t) -> str:
    return ",".join(map(str, t))


def _table(headers, rows) -> str:
    cells = [list(map(str, headers))] + [list(map(str, r)) for r in rows]
    widths = [max(len(row[c]) for row in cells) for c in range(len(headers))]
    lines = []
    for i, row in enumerate(cells):
        lines.append("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip())
        if i == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _emit(args, payload: dict, csv_header, csv_rows, pretty: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    elif args.format == "csv":
        out = io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(csv_header)
        w.writerows(csv_rows)
        sys.stdout.write(out.getvalue())
    else:
        print(pretty)


def _require_cap(value: int, cap: int, what: str, unsafe: bool) -> None:
    if value > cap and not unsafe:
        raise ValueError(
            f"{what} is capped at {cap} (asked for {value}); "
            "pass --unsafe-large to override"
        )


# ---------------------------------------------------------------------------
# subcommands

def cmd_surj_table(args) -> int:
    max_k = args.max_k
    max_i = args.max_i if args.max_i is not None else max_k
    rows = [
        (k, i, surjection_count(k, i))
        for k in range(1, max_k + 1)
        for i in range(1, max_i + 1)
    ]
    payload = {
        "max_k": max_k, "max_i": max_i,
        "counts": [{"k": k, "i": i, "count": c} for k, i, c in rows],
    }
    grid = [
        [k] + [surjection_count(k, i) for i in range(1, max_i + 1)]
        for k in range(1, max_k + 1)
    ]
    pretty = "surjection counts |Epi(k, i)| (rows k, columns i)\n" + _table(
        ["k"] + [f"i={i}" for i in range(1, max_i + 1)], grid
    )
    _emit(args, payload, ["k", "i", "count"], rows, pretty)
    return 0


def cmd_objects(args) -> int:
    objs = enumerate_objects(args.d, args.r)
    payload = {
        "d": args.d, "r": args.r,
        "objects": [list(o.fiber_tuple) for o in objs],
    }
    rows = [(i, _fmt_tuple(o.fiber_tuple), o.total_size) for i, o in enumerate(objs)]
    pretty = (
        f"iso classes over [{args.r}] with total size <= {args.d} "
        f"({len(objs)} objects, basis order)\n"
        + _table(["index", "fibers", "size"], rows)
    )
    _emit(args, payload, ["index", "fibers", "size"], rows, pretty)
    return 0


def cmd_hom(args) -> int:
    u = SliceObject(args.source)
    v = SliceObject(args.target)
    morphisms = hom_set(u, v) if args.list else None
    count = len(morphisms) if morphisms is not None else hom_count(u, v)
    payload = {
        "source": list(u.fiber_tuple), "target": list(v.fiber_tuple),
        "count": count,
    }
    if morphisms is not None:
        payload["maps"] = [list(m.map.values) for m in morphisms]
        rows = [
            (_fmt_tuple(u.fiber_tuple), _fmt_tuple(v.fiber_tuple), i,
             _fmt_tuple(m.map.values))
            for i, m in enumerate(morphisms)
        ]
        header = ["source", "target", "index", "values"]
        pretty = (
            f"|Hom({u.fiber_tuple}, {v.fiber_tuple})| = {count}\n"
            + _table(["index", "values"], [(i, _fmt_tuple(m.map.values))
                                           for i, m in enumerate(morphisms)])
        )
    else:
        rows = [(_fmt_tuple(u.fiber_tuple), _fmt_tuple(v.fiber_tuple), count)]
        header = ["source", "target", "count"]
        pretty = f"|Hom({u.fiber_tuple}, {v.fiber_tuple})| = {count}"
    _emit(args, payload, header, rows, pretty)
    return 0


def cmd_pullback(args) -> int:
    a = SliceObject(args.a)
    b = SliceObject(args.b)
    e = SliceObject(args.e)
    f = SliceMorphism(a, e, FinMap(a.total_size, e.total_size, args.f))
    g = SliceMorphism(b, e, FinMap(b.total_size, e.total_size, args.g))
    result = pullback(CoprodMap.from_connected(f), CoprodMap.from_connected(g), args.d)
    classes = good_subset_classes(f, g, args.d)
    payload = {
        "d": args.d,
        "a": list(a.fiber_tuple), "b": list(b.fiber_tuple), "e": list(e.fiber_tuple),
        "components": [list(c.fiber_tuple) for c in result.value.components],
        "classes": {_fmt_tuple(k): n for k, n in sorted(classes.items())},
    }
    rows = [(_fmt_tuple(k), n) for k, n in sorted(classes.items())]
    pretty = (
        f"pullback of {a.fiber_tuple} -> {e.fiber_tuple} <- {b.fiber_tuple} "
        f"truncated at d = {args.d}: {len(result.value.components)} components\n"
        + _table(["component class", "multiplicity"], rows)
    )
    status = 0
    if args.verify:
        report = verify_universal_property(
            CoprodMap.from_connected(f), CoprodMap.from_connected(g), args.d
        )
        payload["universal_property"] = {
            "passed": report.passed, "test_objects": report.tested,
            "failing": list(report.failing) if report.failing else None,
        }
        pretty += (
            f"\nuniversal property: {'pass' if report.passed else 'FAIL'} "
            f"({report.tested} test objects)"
        )
        if not report.passed:
            status = 1
    _emit(args, payload, ["component_class", "multiplicity"], rows, pretty)
    return status


def cmd_span_compose(args) -> int:
    outer, inner = args.outer, args.inner
    composite = compose_connected(outer, inner, args.d)
    items = sorted(composite.items())
    payload = {
        "d": args.d,
        "outer": {
            "apex": list(outer.left.source.fiber_tuple),
            "left_foot": list(outer.left_foot.fiber_tuple),
            "right_foot": list(outer.right_foot.fiber_tuple),
        },
        "inner": {
            "apex": list(inner.left.source.fiber_tuple),
            "left_foot": list(inner.left_foot.fiber_tuple),
            "right_foot": list(inner.right_foot.fiber_tuple),
        },
        "composite": [
            {"apex": list(k.components[0][0]), "left": list(k.components[0][1]),
             "right": list(k.components[0][2]), "multiplicity": n}
            for k, n in items
        ],
    }
    rows = [
        (_fmt_tuple(k.components[0][0]), _fmt_tuple(k.components[0][1]),
         _fmt_tuple(k.components[0][2]), n)
        for k, n in items
    ]
    pretty = (
        f"composite span classes at d = {args.d}\n"
        + _table(["apex", "left leg", "right leg", "multiplicity"], rows)
    )
    _emit(args, payload, ["apex", "left_values", "right_values", "multiplicity"], rows, pretty)
    return 0


def cmd_ring(args) -> int:
    _require_cap(args.d, 7, "ring construction", args.unsafe_large)
    ring = build_ring(args.d, args.r)
    payload = ring.to_dict()
    rows = [
        (_fmt_tuple(c["u"]), _fmt_tuple(c["v"]), _fmt_tuple(c["w"]), c["c"])
        for c in payload["structure_constants"]
    ]
    lines = [
        f"A(d={args.d}, r={args.r}): basis "
        + ", ".join(f"[{_fmt_tuple(t)}]" for t in ring.basis_tuples),
        "",
    ]
    for i, u in enumerate(ring.basis_tuples):
        for j, v in enumerate(ring.basis_tuples):
            if j < i:
                continue
            terms = [
                f"{c if c != 1 else ''}[{_fmt_tuple(ring.basis_tuples[k])}]"
                for k, c in sorted(ring.sc[i][j].items())
            ] or ["0"]
            lines.append(f"[{_fmt_tuple(u)}] * [{_fmt_tuple(v)}] = " + " + ".join(terms))
    _emit(args, payload, ["u", "v", "w", "c"], rows, "\n".join(lines))
    return 0


def cmd_marks(args) -> int:
    _require_cap(args.d, 7, "marks matrix", args.unsafe_large)
    basis = enumerate_objects(args.d, args.r)
    matrix = marks_matrix(args.d, args.r)
    payload = {
        "d": args.d, "r": args.r,
        "basis": [list(o.fiber_tuple) for o in basis],
        "matrix": matrix,
    }
    rows = [
        (_fmt_tuple(u.fiber_tuple), _fmt_tuple(v.fiber_tuple), matrix[i][j])
        for i, u in enumerate(basis)
        for j, v in enumerate(basis)
    ]
    grid = [
        [_fmt_tuple(u.fiber_tuple)] + matrix[i] for i, u in enumerate(basis)
    ]
    pretty = (
        f"marks matrix at (d={args.d}, r={args.r}): entry = |Hom(row, column)|\n"
        + _table([""] + [_fmt_tuple(v.fiber_tuple) for v in basis], grid)
    )
    _emit(args, payload, ["u", "v", "mark"], rows, pretty)
    return 0


def cmd_ideal(args) -> int:
    _require_cap(args.d, 7, "ideal computation", args.unsafe_large)
    image = ideal_image(args.d, args.k, args.p, allow_composite=args.allow_composite)
    gens = augmentation_ideal(args.d)
    payload = {
        "d": args.d, "k": args.k, "p": args.p,
        "generator": image.generator,
        "ideal_generators": [list(g.coeffs) for g in gens],
        "witnesses": list(image.witnesses),
    }
    rows = [("generator", image.generator)] + [
        ("witness", w) for w in image.witnesses
    ]
    where = f"(p={args.p}, ...)" if args.p is not None else "raw image"
    pretty = (
        f"image of the augmentation ideal of A({args.d}) under the k={args.k} mark, "
        f"{where}: {image.generator}Z  ({len(image.witnesses)} witnesses)"
    )
    _emit(args, payload, ["kind", "value"], rows, pretty)
    return 0


def cmd_segal(args) -> int:
    report = segal_report(args.p)
    payload = report.to_dict()
    rows = [
        (r.k, r.computed, r.raw, r.expected, "ok" if r.ok else "MISMATCH")
        for r in report.rows
    ]
    pretty_rows = _table(["k", "generator", "raw", "expected", "verdict"], rows)
    div = _table(
        ["i", "Surj(p,i)", "divisible by p"],
        [(i, s, "yes" if s % report.p == 0 else "NO") for i, s in report.divisibility],
    )
    pretty = (
        f"prime p = {report.p}: generator of (p, image of the k-mark on the "
        f"augmentation ideal)\n{pretty_rows}\n\ndivisibility witnesses\n{div}\n\n"
        f"verdict: {'pass' if report.passed else 'FAIL'}"
    )
    _emit(args, payload, ["k", "generator", "raw", "expected", "ok"], rows, pretty)
    return 0 if report.passed else 1


def cmd_mackey_representable(args) -> int:
    _require_cap(args.d, 5, "representable Mackey construction", args.unsafe_large)
    m = mackey.representable(args.d, args.r, args.v)
    payload = m.to_dict()
    rows = sorted(
        ((key, rank) for key, rank in payload["ranks"].items()),
        key=lambda kv: (sum(int(x) for x in kv[0].split(",")), kv[0]),
    )
    pretty = (
        f"Mackey functor represented by {tuple(args.v)} on (d={args.d}, r={args.r}): "
        f"{len(payload['restrictions'])} restriction/transfer pairs "
        f"(use --format json for matrix entries)\n"
        + _table(["object", "rank"], rows)
    )
    _emit(args, payload, ["object", "rank"], rows, pretty)
    return 0


def cmd_mackey_check(args) -> int:
    _require_cap(args.d, 4, "exhaustive Mackey suite", args.unsafe_large)
    targets = (
        [SliceObject(args.v)] if args.v is not None
        else enumerate_objects(args.d, args.r)
    )
    results = []
    for v in targets:
        m = mackey.representable(args.d, args.r, v.fiber_tuple)
        results.append((v.fiber_tuple, mackey.check_axioms(m)))
    payload = {
        "d": args.d, "r": args.r,
        "reports": [
            {"v": list(v), **rep.to_dict()} for v, rep in results
        ],
    }
    rows = [
        (_fmt_tuple(v), "pass" if rep.passed else "FAIL", rep.identities_checked,
         rep.compositions_checked, rep.cospans_checked, len(rep.failures))
        for v, rep in results
    ]
    pretty = (
        f"double-coset and functoriality axioms on representables (d={args.d}, r={args.r})\n"
        + _table(
            ["represented by", "verdict", "identities", "compositions", "cospans", "failures"],
            rows,
        )
    )
    _emit(
        args, payload,
        ["v", "verdict", "identities", "compositions", "cospans", "failures"],
        rows, pretty,
    )
    return 0 if all(rep.passed for _, rep in results) else 1


def _cube_shapes(d: int, max_r: int = 3):
    for r in range(1, min(d, max_r) + 1):
        poset = cube.CubePoset(d, r)
        yield poset, cube.TruncatedSub(poset)


def cmd_cube_check(args) -> int:
    if args.input is not None:
        raw = sys.stdin.read() if args.input == "-" else open(args.input).read()
        diagram = cube.diagram_from_json(raw)
        poset = diagram.poset
        if isinstance(poset, cube.CubePoset):
            sub = cube.TruncatedSub(poset)
        elif isinstance(poset, cube.SimplexProduct):
            if args.n is None:
                raise ValueError("a grid diagram needs --n for the threshold")
            sub = cube.BnSub(poset.bounds, args.n)
        else:
            raise ValueError(
                "the input diagram lives on a sub-poset already; "
                "supply it on its ambient shape to check extension"
            )
        extended = cube.is_rke_from(diagram, sub)
        oracle = cube.agrees_with_extension(diagram, sub)
        failing = cube.failing_cubes(diagram, sub) if (args.show_failing and not extended) else ()
        payload = {
            "shape": cube._shape_dict(poset),
            "extended": extended,
            "oracle_agrees": oracle == extended,
            "failing_cubes": [list(a) for a in failing],
        }
        rows = [("extended", extended), ("oracle_agrees", oracle == extended)] + [
            ("failing_cube", _fmt_tuple(a)) for a in failing
        ]
        pretty = (
            f"extension check on {poset!r}: "
            f"{'extended from the threshold' if extended else 'NOT extended'}"
        )
        if failing:
            pretty += "\nfailing unit cubes at: " + "; ".join(
                str(a) for a in failing
            )
        _emit(args, payload, ["key", "value"], rows, pretty)
        return 0 if extended else 1

    _require_cap(args.d, 6, "the random cube battery", args.unsafe_large)
    checks = 0
    disagreements = []
    per_shape = []
    for poset, sub in _cube_shapes(args.d, args.r if args.r else 3):
        if args.r and poset.r != args.r:
            continue
        for seed in range(args.seeds):
            diagram = cube.random_diagram(poset, seed)
            fast = cube.is_rke_from(diagram, sub)
            slow = cube.agrees_with_extension(diagram, sub)
            checks += 1
            if fast != slow:
                disagreements.append({"d": poset.d, "r": poset.r, "seed": seed})
        per_shape.append((poset.d, poset.r, args.seeds))
    payload = {
        "d": args.d, "seeds_per_shape": args.seeds,
        "checks": checks, "disagreements": disagreements,
        "passed": not disagreements,
    }
    rows = [(d_, r_, n) for d_, r_, n in per_shape]
    pretty = (
        f"unit-cube criterion vs pointwise extension oracle: {checks} seeded "
        f"diagrams, {len(disagreements)} disagreements\n"
        + _table(["d", "r", "seeds"], rows)
    )
    _emit(args, payload, ["d", "r", "seeds"], rows, pretty)
    return 0 if not disagreements else 1


def cmd_pigeonhole(args) -> int:
    if (args.r is None) != (args.s is None):
        raise ValueError("--r and --s go together (omit both for the full sweep)")
    if args.r is not None:
        reports = [cube.verify_pigeonhole(args.d, args.r, args.s)]
    else:
        reports = [
            cube.verify_pigeonhole(d, r, s)
            for d in range(1, args.d + 1)
            for s in range(1, d + 1)
            for r in range(1, s + 1)
        ]
    payload = {"reports": [rep.to_dict() for rep in reports]}
    rows = [
        (rep.d, rep.r, rep.s, "pass" if rep.passed else "FAIL",
         rep.crosseffect_cases, rep.crosseffect_zero, rep.diagonal_cases,
         rep.homogeneous_cases, len(rep.witnesses))
        for rep in reports
    ]
    pretty = "degree bookkeeping (cross effects, diagonals, homogeneous vanishing)\n" + _table(
        ["d", "r", "s", "verdict", "crosseffect", "zero", "diagonal", "homogeneous", "witnesses"],
        rows,
    )
    _emit(
        args, payload,
        ["d", "r", "s", "verdict", "crosseffect_cases", "crosseffect_zero",
         "diagonal_cases", "homogeneous_cases", "witnesses"],
        rows, pretty,
    )
    return 0 if all(rep.passed for rep in reports) else 1


def _suite_surjections(n: int):
    cases = 0
    for k in range(1, min(n, 10) + 1):
        assert surjection_count(k, k) == factorial(k)
        cases += 1
    for k in range(1, min(n, 6) + 1):
        for i in range(1, k + 1):
            assert surjection_count(k, i) == sum(
                1 for _ in enumerate_surjections(k, i)
            )
            cases += 1
    primes = [p for p in range(2, n + 1) if burnside.is_prime(p)]
    for p in primes:
        for i in range(2, p + 1):
            assert surjection_count(p, i) % p == 0
            cases += 1
    return cases


def _suite_segal(n: int):
    cases = 0
    for p in range(2, n + 1):
        if burnside.is_prime(p):
            assert segal_report(p).passed
            cases += 1
    return cases


def _suite_orbital(n: int):
    cases = 0
    for d in range(1, n + 1):
        for r in range(1, d + 1):
            assert check_atomic_orbital(d, r).passed
            cases += 1
    return cases


def _suite_rings(n: int):
    cases = 0
    for d in range(1, n + 1):
        for r in range(1, min(d, 3) + 1):
            ring = build_ring(d, r)          # unit/commutativity/associativity inside
            basis = ring.basis
            mat = marks_matrix(d, r)
            for i, u in enumerate(basis):
                assert mat[i][i] == _prod(factorial(k) for k in u.fiber_tuple)
                assert all(mat[i][j] == 0 for j in range(i + 1, len(basis)))
            for u in basis:
                for v in ring.basis_tuples:
                    for w in ring.basis_tuples:
                        lhs = mark(u, ring.basis_element(v) * ring.basis_element(w))
                        rhs = mark(u, ring.basis_element(v)) * mark(u, ring.basis_element(w))
                        assert lhs == rhs
                        cases += 1
            if r <= 2:
                mackey.endomorphism_ring_of_unit(d, r)   # triple consistency inside
                cases += 1
    return cases


def _suite_pullbacks(n: int):
    cases = 0
    top = min(n, 4)
    for na in range(1, top + 1):
        for nb in range(1, top + 1):
            for ne in range(1, min(na, nb) + 1):
                a, b, e = SliceObject((na,)), SliceObject((nb,)), SliceObject((ne,))
                for fm in enumerate_surjections(na, ne):
                    for gm in enumerate_surjections(nb, ne):
                        f = SliceMorphism(a, e, fm)
                        g = SliceMorphism(b, e, gm)
                        rep = verify_universal_property(
                            CoprodMap.from_connected(f), CoprodMap.from_connected(g), top
                        )
                        assert rep.passed, (fm.values, gm.values)
                        cases += 1
    return cases


def _suite_mackey(n: int):
    cases = 0
    for d in range(1, min(n, 4) + 1):
        for r in range(1, min(d, 2) + 1):
            for v in enumerate_objects(d, r):
                m = mackey.representable(d, r, v.fiber_tuple)
                assert mackey.check_axioms(m).passed, (d, r, v.fiber_tuple)
                cases += 1
    return cases


def _suite_cube(n: int):
    cases = 0
    for poset, sub in _cube_shapes(min(n, 5)):
        for seed in range(50):
            diagram = cube.random_diagram(poset, seed)
            assert cube.is_rke_from(diagram, sub) == cube.agrees_with_extension(diagram, sub)
            cases += 1
    return cases


def _suite_pigeonhole(n: int):
    cases = 0
    for d in range(1, min(n, 7) + 1):
        for s in range(1, d + 1):
            for r in range(1, s + 1):
                assert cube.verify_pigeonhole(d, r, s).passed
                cases += 1
    return cases


def _prod(it):
    out = 1
    for x in it:
        out *= x
    return out


_SUITES = [
    ("surjection-counts", _suite_surjections),
    ("segal-arithmetic", _suite_segal),
    ("atomic-orbital", _suite_orbital),
    ("rings-marks-consistency", _suite_rings),
    ("pullback-universal-property", _suite_pullbacks),
    ("mackey-axioms", _suite_mackey),
    ("cube-extension-oracle", _suite_cube),
    ("pigeonhole-degrees", _suite_pigeonhole),
]


def cmd_verify_all(args) -> int:
    _require_cap(args.d, 5, "verify-all", args.unsafe_large)
    results = []
    failed = False
    for name, fn in _SUITES:
        t0 = time.perf_counter()
        try:
            cases = fn(args.d)
            ok, detail = True, f"{cases} cases"
        except AssertionError as exc:          # includes RingConsistencyError
            ok, detail = False, str(exc) or "assertion failed"
            failed = True
        results.append((name, ok, detail, time.perf_counter() - t0))
    payload = {
        "d": args.d,
        "passed": not failed,
        "suites": [
            {"suite": name, "passed": ok, "detail": detail, "seconds": round(sec, 3)}
            for name, ok, detail, sec in results
        ],
    }
    rows = [
        (name, "pass" if ok else "FAIL", detail, f"{sec:.2f}")
        for name, ok, detail, sec in results
    ]
    pretty = f"full verification at bound d = {args.d}\n" + _table(
        ["suite", "verdict", "detail", "seconds"], rows
    ) + f"\n\noverall: {'pass' if not failed else 'FAIL'}"
    _emit(args, payload, ["suite", "verdict", "detail", "seconds"], rows, pretty)
    return 0 if not failed else 1


# ---------------------------------------------------------------------------
# argument parser

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="surjcat",
        description="Exact combinatorics of finite sets with surjections: "
        "Burnside-style rings, marks, Mackey-style functor checks, and "
        "cube-diagram extension criteria.",
        epilog=_DICTIONARY,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, **kwargs):
        p = sub.add_parser(name, help=help_text, **kwargs)
        p.add_argument(
            "--format", choices=("json", "csv", "pretty"), default="pretty",
            help="output format (default: pretty; json is byte-stable)",
        )
        return p

    p = add("surj-table", "table of surjection counts |Epi(k, i)|")
    p.add_argument("--max-k", type=int, required=True)
    p.add_argument("--max-i", type=int, default=None)
    p.set_defaults(fn=cmd_surj_table)

    p = add("objects", "iso classes of sets over [r] with size at most d")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", type=int, default=1)
    p.set_defaults(fn=cmd_objects)

    p = add("hom", "count (or list) surjections between two objects over [r]")
    p.add_argument("--source", type=_tuple_arg, required=True, metavar="K1,K2,...")
    p.add_argument("--target", type=_tuple_arg, required=True, metavar="K1,K2,...")
    p.add_argument("--list", action="store_true", help="list the maps, not just the count")
    p.set_defaults(fn=cmd_hom)

    p = add("pullback", "good-subset decomposition of a cospan's pullback")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--a", type=_tuple_arg, required=True, metavar="FIBERS")
    p.add_argument("--b", type=_tuple_arg, required=True, metavar="FIBERS")
    p.add_argument("--e", type=_tuple_arg, required=True, metavar="FIBERS")
    p.add_argument("--f", type=_tuple_arg, required=True, metavar="VALUES",
                   help="values of the map a -> e on 1..|a|")
    p.add_argument("--g", type=_tuple_arg, required=True, metavar="VALUES",
                   help="values of the map b -> e on 1..|b|")
    p.add_argument("--verify", action="store_true",
                   help="also verify the universal property by hom counting")
    p.set_defaults(fn=cmd_pullback)

    p = add("span-compose", "compose two connected spans, with multiplicities")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--outer", type=_span_arg, required=True,
                   metavar="'LFOOT<-APEX->RFOOT:LVALS:RVALS'")
    p.add_argument("--inner", type=_span_arg, required=True,
                   metavar="'LFOOT<-APEX->RFOOT:LVALS:RVALS'",
                   help="composition is outer-after-inner; the outer span's "
                        "right foot must equal the inner span's left foot")
    p.set_defaults(fn=cmd_span_compose)

    p = add("ring", "structure constants of the ring of iso classes at (d, r)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--unsafe-large", action="store_true")
    p.set_defaults(fn=cmd_ring)

    p = add("marks", "hom-count (marks) matrix at (d, r)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--unsafe-large", action="store_true")
    p.set_defaults(fn=cmd_marks)

    p = add("ideal", "image of the augmentation ideal under a mark, optionally mod p")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--allow-composite", action="store_true",
                   help="permit a composite --p (exploration only)")
    p.add_argument("--unsafe-large", action="store_true")
    p.set_defaults(fn=cmd_ideal)

    p = add("segal", "three-case table of ideal images at a prime, with verdict")
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(fn=cmd_segal)

    p = add("mackey-representable", "ranks and matrices of a represented Mackey functor")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--v", type=_tuple_arg, required=True, metavar="FIBERS")
    p.add_argument("--unsafe-large", action="store_true")
    p.set_defaults(fn=cmd_mackey_representable)

    p = add("mackey-check", "functoriality + double-coset axioms on representables")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--v", type=_tuple_arg, default=None, metavar="FIBERS",
                   help="check a single representable (default: all of them)")
    p.add_argument("--unsafe-large", action="store_true")
    p.set_defaults(fn=cmd_mackey_check)

    p = add("cube-check", "extension-from-threshold checks for cube diagrams")
    p.add_argument("--d", type=int, default=4)
    p.add_argument("--r", type=int, default=None,
                   help="restrict the random battery to one r (default: all r <= 3)")
    p.add_argument("--seeds", type=int, default=200,
                   help="random diagrams per shape (default 200)")
    p.add_argument("--input", metavar="FILE",
                   help="check one diagram from JSON ('-' for stdin) instead")
    p.add_argument("--n", type=int, default=None,
                   help="threshold for a grid-shaped input diagram")
    p.add_argument("--show-failing", action="store_true",
                   help="list the elements whose unit cube is not a limit")
    p.add_argument("--unsafe-large", action="store_true")
    p.set_defaults(fn=cmd_cube_check)

    p = add("pigeonhole", "exhaustive degree bookkeeping at (d, r, s) or a full sweep")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--s", type=int, default=None)
    p.set_defaults(fn=cmd_pigeonhole)

    p = add("verify-all", "run every module's exhaustive suite at bound d")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--unsafe-large", action="store_true")
    p.set_defaults(fn=cmd_verify_all)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except RingConsistencyError as exc:
        print(f"consistency failure: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
