"""JSON forms for the exact objects.

Conventions (stable, used by the CLI and by golden fixtures):

* rationals are strings "p/q" (or "p" when q == 1), never floats;
* an enveloping-algebra element is a list of terms
      {"coeff": "p/q", "monomial": [[i, j, exp], ...]}
  sorted by monomial, with runs of equal generators compressed via exp;
* a series matrix is
      {"rows": [...], "cols": [...],
       "entries": {"(a,b)": {"z^m": <element>}},
       "floors": {"(a,b)": m}}
  where "floors" only lists entries whose series is known from a floor up;
* a generator set lists its labels (h, k, src, tgt, ell) with payloads.

Each dump has a matching load and the pair round-trips exactly.
"""

from fractions import Fraction

from .uea import Env, ge
from .envmatrix import ZSeries, EMat


def frac_to_str(v):
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else (
        "%d/%d" % (v.numerator, v.denominator))


def frac_from_str(s):
    return Fraction(s)


def _mono_to_json(word):
    out = []
    for g in word:
        i, j = g >> 8, g & 255
        if out and out[-1][0] == i and out[-1][1] == j:
            out[-1][2] += 1
        else:
            out.append([i, j, 1])
    return out


def _mono_from_json(runs):
    word = []
    for i, j, exp in runs:
        word.extend([ge(i, j)] * exp)
    return tuple(word)


def env_to_json(x):
    terms = []
    for w in sorted(x.t, key=lambda w: (len(w), w)):
        terms.append({"coeff": frac_to_str(x.t[w]),
                      "monomial": _mono_to_json(w)})
    return terms


def env_from_json(terms):
    t = {}
    for term in terms:
        w = _mono_from_json(term["monomial"])
        c = frac_from_str(term["coeff"])
        if c:
            t[w] = t.get(w, Fraction(0)) + c
    return Env({w: c for w, c in t.items() if c})


def zseries_to_json(z):
    return {"z^%d" % m: env_to_json(e) for m, e in sorted(z.c.items())}


def zseries_from_json(d, floor=None):
    c = {}
    for key, terms in d.items():
        if not key.startswith("z^"):
            raise ValueError("bad exponent key %r" % (key,))
        c[int(key[2:])] = env_from_json(terms)
    return ZSeries(c, floor)


def emat_to_json(mat):
    entries = {}
    floors = {}
    for (a, b), z in sorted(mat.e.items()):
        key = "(%d,%d)" % (a, b)
        entries[key] = zseries_to_json(z)
        if z.floor is not None:
            floors[key] = z.floor
    out = {"rows": mat.rows(), "cols": mat.cols(), "entries": entries}
    if floors:
        out["floors"] = floors
    return out


def _key_pair(key):
    a, b = key.strip("()").split(",")
    return int(a), int(b)


def emat_from_json(d):
    floors = d.get("floors", {})
    out = {}
    for key, zd in d["entries"].items():
        out[_key_pair(key)] = zseries_from_json(zd, floors.get(key))
    return EMat(out)


def label_to_json(lab):
    return {"h": lab.h, "k": lab.k, "src": lab.src, "tgt": lab.tgt,
            "ell": lab.ell}


def label_from_json(d):
    from .centralizer import Label
    return Label(d["h"], d["k"], d["src"], d["tgt"], d["ell"])


def generator_set_to_json(gs):
    """Labels plus both payloads: the raw representative and its reduced
    canonical form."""
    view = gs.view
    items = []
    for lab in sorted(gs.raw):
        items.append({
            "label": label_to_json(lab),
            "raw": env_to_json(gs.raw[lab]),
            "reduced": env_to_json(gs.red[lab]),
        })
    return {
        "partition": list(view.partition().parts),
        "rowx2": list(view.rowx2),
        "lagrangian": sorted(list(p) for p in gs.ctx.lagrangian),
        "generators": items,
    }


def generator_set_from_json(d):
    """Rebuild the full GeneratorSet from its stored pyramid data (the
    payloads are recomputed, then checked against the stored ones)."""
    from .pyramid import Partition, build_pyramid
    from .generators import GeneratorSet
    part = Partition(d["partition"])
    view = build_pyramid(part, "right")
    if list(view.rowx2) != d["rowx2"]:
        raise ValueError("generator sets are stored for the right-aligned"
                         " pyramid only")
    lag = frozenset((a, b) for a, b in d.get("lagrangian", []))
    gs = GeneratorSet(view, lag)
    for item in d["generators"]:
        lab = label_from_json(item["label"])
        if gs.raw[lab] != env_from_json(item["raw"]):
            raise ValueError("stored raw generator %r does not match" % (lab,))
        if gs.red[lab] != env_from_json(item["reduced"]):
            raise ValueError("stored reduced generator %r does not match"
                             % (lab,))
    return gs
