"""Command-line front end.

Subcommands:

* ``pyramid``      -- box table and picture of a pyramid;
* ``generators``   -- the generator set of a context (labels + payloads);
* ``lax``          -- the Lax operator to a requested truncation floor;
* ``centralizer``  -- the labeled centralizer basis and its dimension;
* ``verify``       -- run named checks; exit code 0 iff all of them pass.

All exact numbers render as ``p/q`` strings (never floats); human-readable
output uses the ``e_{ij}`` / ``z^m`` notation with a fixed monomial order,
so renderings are deterministic.  ``WGEN_THREADS`` caps check parallelism.
"""

import argparse
import json
import sys
from fractions import Fraction

from .pyramid import Partition, build_pyramid
from .reduction import WContext
from .generators import GeneratorSet
from .lax import l_direct, l_tilde
from .centralizer import centralizer_basis, gf_dimension
from .uea import format_env
from .verify import CHECK_NAMES, run_checks
from .serialize import (emat_to_json, env_to_json, frac_to_str,
                        generator_set_to_json, label_to_json)

ALIGNMENTS = ("right", "left", "dynkin")


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _partition_arg(text):
    try:
        parts = [int(p) for p in text.split(",") if p.strip() != ""]
        return Partition(parts)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(
            "expected a comma-separated partition like 3,2,1 (%s)" % exc)


def _offsets_arg(text):
    try:
        return [Fraction(p.strip()) for p in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(
            "expected comma-separated rationals like 0,1/2,1 (%s)" % exc)


def _isotropic_arg(text):
    pairs = []
    try:
        for chunk in text.split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            a, b = chunk.split(",")
            pairs.append((int(a), int(b)))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            "expected box pairs like 1,2;2,3 (%s)" % exc)
    return frozenset(pairs)


def _checks_arg(text):
    names = [n.strip() for n in text.split(",") if n.strip()]
    if "all" in names:
        return None
    for n in names:
        if n not in CHECK_NAMES:
            raise argparse.ArgumentTypeError(
                "unknown check %r (choose from all, %s)"
                % (n, ", ".join(CHECK_NAMES)))
    return names


def _add_common(sub, isotropic=True, align=True):
    sub.add_argument("--partition", type=_partition_arg, required=True,
                     help="comma-separated row lengths, e.g. 3,2,1")
    if align:
        sub.add_argument("--align", choices=ALIGNMENTS, default="right",
                         help="built-in alignment (default right)")
        sub.add_argument("--offsets", type=_offsets_arg, default=None,
                         help="per-row left-edge offsets (multiples of 1/2, "
                              "rows by decreasing length); overrides --align")
    if isotropic:
        sub.add_argument("--isotropic", type=_isotropic_arg,
                         default=frozenset(),
                         help="isotropic box pairs, e.g. '1,2;2,3'")
    sub.add_argument("--json", action="store_true",
                     help="emit JSON instead of the text rendering")
    sub.add_argument("--output", default=None, metavar="PATH",
                     help="write to PATH instead of stdout")


def parse_args(argv):
    ap = argparse.ArgumentParser(
        prog="wgen",
        description="exact generator matrices and Lax operators of finite "
                    "W-algebras of gl_N")
    sp = ap.add_subparsers(dest="subcommand", required=True)

    _add_common(sp.add_parser("pyramid", help="box table of a pyramid"),
                isotropic=False)

    _add_common(sp.add_parser(
        "generators", help="generator set (labels and payloads)"))

    lax = sp.add_parser("lax", help="Lax operator to a truncation floor")
    _add_common(lax)
    lax.add_argument("--truncation", type=int, default=None, metavar="K",
                     help="verified down to z^-K (default 2*p1+4)")

    _add_common(sp.add_parser(
        "centralizer", help="labeled centralizer basis and dimension"),
        isotropic=False, align=False)

    ver = sp.add_parser("verify", help="run named checks")
    _add_common(ver)
    ver.add_argument("--check", type=_checks_arg, default=None,
                     help="all (default) or comma-separated names from: %s"
                          % ", ".join(CHECK_NAMES))
    ver.add_argument("--truncation", type=int, default=None, metavar="K")
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--threads", type=int, default=None)

    return ap.parse_args(argv)


# ---------------------------------------------------------------------------
# human-readable rendering
# ---------------------------------------------------------------------------

def render_series(z):
    """One z-series as text, exponents descending."""
    chunks = []
    for m in sorted(z.c, reverse=True):
        env = z.c[m]
        if not env:
            continue
        body = format_env(env)
        if m == 0:
            chunks.append(body)
        else:
            zs = "z" if m == 1 else "z^%d" % m
            chunks.append("%s*(%s)" % (zs, body))
    if not chunks:
        chunks.append("0")
    text = "  +  ".join(chunks)
    if z.floor is not None:
        text += "  +  O(z^%d)" % (z.floor - 1)
    return text


def render_emat(mat):
    lines = []
    for (a, b) in sorted(mat.e):
        lines.append("(%d,%d):  %s" % (a, b, render_series(mat.e[(a, b)])))
    return "\n".join(lines)


def render_label(lab):
    return "(h=%d, k=%d, src=%d, tgt=%d, ell=%d)" % (
        lab.h, lab.k, lab.src, lab.tgt, lab.ell)


def render_smat(m):
    terms = []
    for (r, c) in sorted(m.d):
        v = m.d[(r, c)]
        coef = "" if v == 1 else ("-" if v == -1 else frac_to_str(v) + "*")
        terms.append("%se_{%d,%d}" % (coef, r, c))
    return " + ".join(terms).replace("+ -", "- ") if terms else "0"


# ---------------------------------------------------------------------------
# subcommand bodies
# ---------------------------------------------------------------------------

def _build_view(ns):
    offsets = getattr(ns, "offsets", None)
    if offsets is not None:
        return build_pyramid(ns.partition, offsets=offsets)
    return build_pyramid(ns.partition, getattr(ns, "align", "right"))


def _context(ns):
    view = _build_view(ns)
    return WContext(view, getattr(ns, "isotropic", frozenset()))


def _emit(ns, text):
    if ns.output:
        with open(ns.output, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _run_pyramid(ns):
    view = _build_view(ns)
    if ns.json:
        payload = {
            "partition": list(view.partition().parts),
            "rowx2": list(view.rowx2),
            "boxes": [{"box": b, "row": row, "k": k, "x": frac_to_str(x)}
                      for b, row, k, x in view.box_table()],
        }
        _emit(ns, json.dumps(payload, indent=2))
    else:
        lines = [view.ascii_art(), "",
                 "%5s %5s %5s %6s" % ("box", "row", "k", "x")]
        for b, row, k, x in view.box_table():
            lines.append("%5d %5d %5d %6s" % (b, row, k, frac_to_str(x)))
        _emit(ns, "\n".join(lines))
    return 0


def _run_generators(ns):
    ctx = _context(ns)
    view = ctx.view
    if view.is_right_aligned():
        gs = GeneratorSet(view, ctx.lagrangian)
        if ns.json:
            _emit(ns, json.dumps(generator_set_to_json(gs), indent=2))
            return 0
        lines = []
        for lab in sorted(gs.raw):
            lines.append("w%s:" % render_label(lab))
            lines.append("  raw:     %s" % format_env(gs.raw[lab]))
            lines.append("  reduced: %s" % format_env(gs.red[lab]))
        _emit(ns, "\n".join(lines))
        return 0
    # other gradings: payloads come through the chain transport
    right = build_pyramid(view.partition(), "right")
    gs = GeneratorSet(right)
    moved = gs.transport(ctx)
    if ns.json:
        payload = {
            "partition": list(view.partition().parts),
            "rowx2": list(view.rowx2),
            "lagrangian": sorted(list(p) for p in ctx.lagrangian),
            "transported": True,
            "generators": [{"label": label_to_json(lab),
                            "reduced": env_to_json(moved[lab])}
                           for lab in sorted(moved)],
        }
        _emit(ns, json.dumps(payload, indent=2))
        return 0
    lines = []
    for lab in sorted(moved):
        lines.append("w%s:" % render_label(lab))
        lines.append("  reduced: %s" % format_env(moved[lab]))
    _emit(ns, "\n".join(lines))
    return 0


def _run_lax(ns):
    ctx = _context(ns)
    view = ctx.view
    k = ns.truncation if ns.truncation is not None else 2 * view.p1 + 4
    floor = -k
    if view.is_right_aligned():
        mat = l_tilde(view, ctx.lagrangian, floor)
    else:
        mat = l_direct(view, ctx.lagrangian, floor)
    if ns.json:
        payload = {
            "partition": list(view.partition().parts),
            "rowx2": list(view.rowx2),
            "lagrangian": sorted(list(p) for p in ctx.lagrangian),
            "floor": floor,
            "matrix": emat_to_json(mat),
        }
        _emit(ns, json.dumps(payload, indent=2))
    else:
        _emit(ns, render_emat(mat))
    return 0


def _run_centralizer(ns):
    view = build_pyramid(ns.partition, "right")
    basis = centralizer_basis(view)
    dim = gf_dimension(ns.partition)
    if ns.json:
        payload = {
            "partition": list(ns.partition.parts),
            "dimension": dim,
            "basis": [{"label": label_to_json(lab),
                       "element": {"%d,%d" % rc: frac_to_str(v)
                                   for rc, v in sorted(m.d.items())}}
                      for lab, m in basis],
        }
        _emit(ns, json.dumps(payload, indent=2))
    else:
        lines = ["dim g^f = %d (%d basis elements)" % (dim, len(basis))]
        for lab, m in basis:
            lines.append("x%s = %s" % (render_label(lab), render_smat(m)))
        _emit(ns, "\n".join(lines))
    return 0


def _run_verify(ns):
    ctx = _context(ns)
    reports = run_checks(ctx, names=ns.check, truncation=ns.truncation,
                         seed=ns.seed, threads=ns.threads)
    if ns.json:
        _emit(ns, json.dumps([r.to_json() for r in reports], indent=2))
    else:
        lines = []
        for r in reports:
            status = "PASS" if r.passed else "FAIL"
            extra = "" if r.floor is None else " [>= z^%d]" % r.floor
            tail = r.witness if not r.passed else r.detail
            lines.append("%s %-16s %s%s (%.2fs)%s"
                         % (status, r.name, r.context, extra, r.seconds,
                            ("  " + tail) if tail else ""))
        ok = all(r.passed for r in reports)
        lines.append("%d/%d checks passed" % (
            sum(r.passed for r in reports), len(reports)))
        _emit(ns, "\n".join(lines))
    return 0 if all(r.passed for r in reports) else 1


_RUNNERS = {
    "pyramid": _run_pyramid,
    "generators": _run_generators,
    "lax": _run_lax,
    "centralizer": _run_centralizer,
    "verify": _run_verify,
}


def run(ns):
    try:
        return _RUNNERS[ns.subcommand](ns)
    except (ValueError, ArithmeticError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


def main(argv=None):
    return run(parse_args(argv))


if __name__ == "__main__":
    sys.exit(main())
