"""Command-line front end: `nrmat <command> ...`.

Exit codes: 0 for a positive answer, 1 for a negative one, 2 for errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .matroid import catalog
from .matroid.core import basis_exchange_violation, matroid_from_matrix
from .matroid.io import MtdError, format_mtd, parse_mtd
from .pmat import format_pmx, parse_pmx

EXIT_TRUE, EXIT_FALSE, EXIT_ERROR = 0, 1, 2


class CliError(Exception):
    pass


# ---------------------------------------------------------------------------
# helpers

def load_matroid(source, validate=False):
    """A catalog name, a .mtd file or a .pmx file."""
    if os.path.exists(source):
        with open(source) as fh:
            text = fh.read()
        try:
            if source.endswith(".pmx"):
                name, A = parse_pmx(text)
                if A.kind == "nearreg":
                    from .matroid.core import matroid_from_ring_matrix
                    M = matroid_from_ring_matrix(A, name)
                else:
                    M = matroid_from_matrix(A, name)
            else:
                M = parse_mtd(text)
        except (ValueError, MtdError) as exc:
            raise CliError(f"{source}: {exc}")
    else:
        try:
            M = catalog.get(source)
        except KeyError:
            raise CliError(f"unknown matroid {source!r} (not a file, not in the catalog)")
    if validate:
        bad = basis_exchange_violation(M)
        if bad:
            raise CliError(f"{source}: basis exchange fails at {bad}")
    return M


def _safe(name):
    return "".join(ch if ch.isalnum() or ch in "-_" else "_" for ch in name.replace("*", "dual"))


class Output:
    """Collects text or a JSON payload, and writes artifact files under --out."""

    def __init__(self, args):
        self.json = args.json
        self.out = args.out
        self.payload = {}
        self.lines = []
        self.files = []

    def say(self, *lines):
        self.lines.extend(lines)

    def put(self, **kw):
        self.payload.update(kw)

    def artifact(self, filename, text):
        if not self.out:
            return None
        os.makedirs(self.out, exist_ok=True)
        path = os.path.join(self.out, filename)
        with open(path, "w") as fh:
            fh.write(text)
        self.files.append(path)
        return path

    def flush(self, code):
        if self.json:
            self.payload.setdefault("exit", code)
            if self.files:
                self.payload["files"] = self.files
            print(json.dumps(self.payload, indent=2, default=str))
        else:
            for ln in self.lines:
                print(ln)
            for f in self.files:
                print(f"wrote {f}")
        return code


def _mtd_artifact(out, M, stem=None):
    return out.artifact(f"{_safe(stem or M.name or 'M')}.mtd", format_mtd(M))


def _pmx_artifact(out, A, stem):
    return out.artifact(f"{_safe(stem)}.pmx", format_pmx(A, _safe(stem)))


# ---------------------------------------------------------------------------
# commands

def cmd_catalog(args, out):
    if args.action == "list":
        rows = []
        for e in catalog.ENTRIES:
            n, r, b = e.fingerprint
            rows.append({"name": e.name, "elements": n, "rank": r, "bases": b, "description": e.description})
        out.put(entries=rows)
        out.say(f"{'name':<11}{'n':>3}{'rank':>6}{'bases':>7}  description")
        for d in rows:
            out.say(f"{d['name']:<11}{d['elements']:>3}{d['rank']:>6}{d['bases']:>7}  {d['description']}")
        return EXIT_TRUE
    if not args.name:
        raise CliError("catalog show needs a name")
    M = load_matroid(args.name, args.validate)
    A = catalog.matrix_of(args.name)
    out.put(name=M.name, elements=M.n, rank=M.rank, bases=len(M.bases), ground=list(M.ground))
    out.say(f"{M.name}: {M.n} elements, rank {M.rank}, {len(M.bases)} bases")
    if A is not None:
        out.put(matrix=format_pmx(A, _safe(M.name)))
        out.say("", format_pmx(A, _safe(M.name)).rstrip())
        _pmx_artifact(out, A, M.name)
    out.put(mtd=format_mtd(M))
    if args.bases:
        out.say("", format_mtd(M).rstrip())
    _mtd_artifact(out, M)
    return EXIT_TRUE


def cmd_rep(args, out):
    from .repsearch.gfrep import representable_over_gf
    from .repsearch.nrrep import MAX_NR_GROUND, nr_representation_search
    M = load_matroid(args.matroid, args.validate)
    if args.field == "nearreg":
        if M.n > MAX_NR_GROUND:
            raise CliError(f"near-regular search is capped at {MAX_NR_GROUND} elements")
        res = nr_representation_search(M, args.bound)
    else:
        res = representable_over_gf(M, args.field)
    if res:
        text = format_pmx(res.matrix, _safe(M.name or "M"))
        out.put(matroid=M.name, field=args.field, representable=True, matrix=text)
        out.say(f"{M.name} is representable over {args.field}:", text.rstrip())
        _pmx_artifact(out, res.matrix, f"{M.name}-{args.field}")
        return EXIT_TRUE
    reason = "exhausted" if res.conclusive else "bounded"
    out.put(matroid=M.name, field=args.field, representable=False, reason=reason, detail=res.reason)
    out.say(f"{M.name} is not representable over {args.field}: {reason} ({res.reason})")
    return EXIT_FALSE


def cmd_nearreg(args, out):
    from .repsearch.gfrep import representable_over_gf
    M = load_matroid(args.matroid, args.validate)
    wits = {}
    ok = True
    for q in ("gf3", "gf4", "gf5"):
        w = representable_over_gf(M, q)
        wits[q] = format_pmx(w.matrix, _safe(M.name or "M")) if w else None
        ok = ok and bool(w)
    out.put(matroid=M.name, near_regular=ok, witnesses=wits)
    out.say(f"{M.name} is {'' if ok else 'not '}near-regular")
    for q, text in wits.items():
        if text:
            out.say(f"-- {q} witness", text.rstrip())
            _pmx_artifact(out, parse_pmx(text)[1], f"{M.name}-{q}")
        else:
            out.say(f"-- {q}: no representation")
    return EXIT_TRUE if ok else EXIT_FALSE


def cmd_exminor(args, out):
    from .repsearch.excluded import excluded_minor_check
    M = load_matroid(args.matroid, args.validate)
    rep = excluded_minor_check(M)
    out.put(matroid=M.name, excluded_minor=bool(rep), fields=rep.fields, failing_fields=rep.failing_fields,
            minors=[{"op": m.op, "element": m.element, "near_regular": m.near_regular} for m in rep.minors])
    out.say(*rep.lines())
    return EXIT_TRUE if rep else EXIT_FALSE


def cmd_search(args, out):
    from .repsearch.excluded import search_excluded_minors
    from .repsearch.gfrep import representable_over_gf
    rep = search_excluded_minors(args.space)
    found = []
    for M, r, nm in rep.found:
        entry = {"name": nm, "rank": M.rank, "corank": M.corank, "bases": len(M.bases),
                 "failing_fields": r.failing_fields}
        entry["mtd"] = _mtd_artifact(out, M, f"{args.space}-{nm}")
        w = representable_over_gf(M, "gf3")
        if w:
            entry["pmx"] = _pmx_artifact(out, w.matrix, f"{args.space}-{nm}-gf3")
        found.append(entry)
    out.put(space=rep.space, parameters=rep.parameters, found=found, counters=rep.counters,
            elapsed=round(rep.elapsed, 3))
    out.say(rep.table(), f"elapsed {rep.elapsed:.1f}s")
    return EXIT_TRUE


def _split_labels(text, n=None, what="labels"):
    labs = [t.strip() for t in text.split(",") if t.strip()]
    if n is not None and len(labs) != n:
        raise CliError(f"expected {n} comma-separated {what}")
    return labs


def _resolve(M, labs):
    for e in labs:
        if e not in M.index:
            raise CliError(f"{e!r} is not an element of {M.name}")
    return labs


def cmd_deltay(args, out):
    from .matroid.extend import coindependent_triangles, delta_y
    from .repsearch.excluded import identify
    M = load_matroid(args.matroid, args.validate)
    if args.triangle:
        T = _resolve(M, _split_labels(args.triangle, 3, "triangle elements"))
    else:
        tri = coindependent_triangles(M) if args.direction == "delta" else coindependent_triangles(M.dual())
        if not tri:
            raise CliError("no suitable triangle; pass --triangle")
        T = sorted(min(tri, key=lambda t: sorted(t)))
    try:
        D = delta_y(M, T, args.direction)
    except ValueError as exc:
        raise CliError(str(exc))
    nm = identify(D)
    tag = "Delta" if args.direction == "delta" else "Nabla"
    D = D.with_name(f"{tag}-{_safe(M.name or 'M')}")
    out.put(matroid=M.name, triangle=T, direction=args.direction, rank=D.rank, bases=len(D.bases),
            isomorphic_to=nm, mtd=format_mtd(D))
    out.say(f"{tag}_{{{','.join(T)}}}({M.name}): rank {D.rank}, {len(D.bases)} bases"
            + (f", isomorphic to {nm}" if nm else ""))
    _mtd_artifact(out, D)
    return EXIT_TRUE


def cmd_companion(args, out):
    from .matroid.ops import find_deletion_pair, is_deletion_pair
    from .repsearch.nrrep import build_companion
    M = load_matroid(args.matroid, args.validate)
    if args.pair:
        u, v = _resolve(M, _split_labels(args.pair, 2, "pair elements"))
        D = M
        if not is_deletion_pair(M, u, v):
            raise CliError(f"({u}, {v}) is not a deletion pair of {M.name}")
    else:
        found = find_deletion_pair(M)
        if found is None:
            raise CliError(f"{M.name} has no deletion pair (in it or its dual)")
        D, u, v = found
    try:
        C = build_companion(D, u, v)
    except ValueError as exc:
        raise CliError(str(exc))
    N = C.N.with_name(f"companion-{_safe(D.name or 'M')}")
    same = N == D
    checks = {"N_equals_M": same,
              "deletion_u_agrees": N.delete([u]) == D.delete([u]),
              "deletion_v_agrees": N.delete([v]) == D.delete([v])}
    out.put(matroid=D.name, pair=[u, v], automorphism=C.automorphism.image_of_alpha.token(),
            matrix=format_pmx(C.A, "A"), checks=checks)
    out.say(f"companion of {D.name} along deletion pair ({u}, {v})",
            format_pmx(C.A, "A").rstrip(),
            f"N {'=' if same else '!='} M; N\\{u} = M\\{u}: {checks['deletion_u_agrees']}; "
            f"N\\{v} = M\\{v}: {checks['deletion_v_agrees']}")
    _pmx_artifact(out, C.A, f"companion-{D.name}")
    _mtd_artifact(out, N)
    return EXIT_TRUE


def cmd_verify(args, out):
    from .verify import SUITES, run_suite
    if args.suite not in SUITES:
        raise CliError(f"unknown suite {args.suite!r}")
    res = run_suite(args.suite, jobs=args.jobs)
    out.put(**res.as_dict(timings=not args.no_timings))
    out.say(*res.lines(timings=not args.no_timings))
    return EXIT_TRUE if res.passed else EXIT_FALSE


# ---------------------------------------------------------------------------

def _global_flags(p, defaults):
    kw = (lambda v: {"default": v}) if defaults else (lambda v: {"default": argparse.SUPPRESS})
    p.add_argument("--json", action="store_true", help="structured output", **kw(False))
    p.add_argument("--validate", action="store_true", help="check basis exchange on load", **kw(False))
    p.add_argument("--jobs", type=int, help="worker processes for verify", **kw(1))
    p.add_argument("--out", metavar="DIR", help="write .mtd/.pmx artifacts here", **kw(None))


def build_parser():
    p = argparse.ArgumentParser(prog="nrmat", description="Near-regular matroid toolkit.")
    _global_flags(p, True)
    # the same flags are accepted after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, False)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    c = add("catalog", help="list or show catalog matroids")
    c.add_argument("action", choices=["list", "show"])
    c.add_argument("name", nargs="?")
    c.add_argument("--bases", action="store_true", help="also print the basis list")
    c.set_defaults(func=cmd_catalog)

    r = add("rep", help="representability over one field")
    r.add_argument("matroid")
    r.add_argument("--field", required=True, choices=["gf2", "gf3", "gf4", "gf5", "gf7", "gf8", "nearreg"])
    r.add_argument("--bound", type=int, default=3, help="exponent bound for nearreg")
    r.set_defaults(func=cmd_rep)

    n = add("nearreg", help="near-regularity with three field witnesses")
    n.add_argument("matroid")
    n.set_defaults(func=cmd_nearreg)

    e = add("exminor", help="excluded-minor check for near-regularity")
    e.add_argument("matroid")
    e.set_defaults(func=cmd_exminor)

    s = add("search", help="exhaustive excluded-minor search")
    s.add_argument("--space", required=True, choices=["rank4-corank4", "rank3-pg23"])
    s.set_defaults(func=cmd_search)

    d = add("deltay", help="Delta-Y or Y-Delta exchange")
    d.add_argument("matroid")
    d.add_argument("--triangle", help="a,b,c")
    d.add_argument("--direction", choices=["delta", "nabla"], default="delta")
    d.set_defaults(func=cmd_deltay)

    m = add("companion", help="companion matroid along a deletion pair")
    m.add_argument("matroid")
    m.add_argument("--pair", help="u,v")
    m.set_defaults(func=cmd_companion)

    v = add("verify", help="run a verification suite")
    v.add_argument("suite", choices=["props", "thm1", "thm4", "cases", "all"])
    v.add_argument("--no-timings", action="store_true", help="omit timings (stable output)")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be positive")
    if args.command == "verify":
        args.validate = True
    out = Output(args)
    try:
        code = args.func(args, out)
    except CliError as exc:
        if args.json:
            print(json.dumps({"error": str(exc), "exit": EXIT_ERROR}))
        else:
            print(f"nrmat: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return out.flush(code)


if __name__ == "__main__":
    sys.exit(main())
