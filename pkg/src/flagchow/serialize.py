"""Documented JSON forms: polynomials, presentations, series, basis lists.

Variables serialize as {"name", "topdeg"}; terms as a list of
{"exps": {name: exponent}, "coef": "<exact decimal string>"}; series as
plain integer arrays indexed by topological degree.  Basis elements carry
both degree conventions.
"""

from fractions import Fraction

from .errors import ValidationError
from .groebner import HilbertSeries, QuotientPresentation
from .ring import COEFF_Q, COEFF_Z, GradedVariable, PolyRing, coeff_fp


def coeff_to_json(coeff):
    if coeff[0] == "Fp":
        return {"ring": "Fp", "p": coeff[1]}
    return {"ring": coeff[0]}


def coeff_from_json(data):
    if data["ring"] == "Fp":
        return coeff_fp(data["p"])
    if data["ring"] == "Z":
        return COEFF_Z
    if data["ring"] == "Q":
        return COEFF_Q
    raise ValidationError("unknown coefficient ring %r" % (data,))


def variables_to_json(variables):
    return [{"name": v.name, "topdeg": v.topdeg} for v in variables]


def variables_from_json(data):
    return [GradedVariable(d["name"], d["topdeg"]) for d in data]


def poly_to_json(poly):
    names = [v.name for v in poly.ring.variables]
    terms = []
    for m in sorted(poly.terms):
        c = poly.terms[m]
        terms.append({
            "exps": {names[i]: e for i, e in enumerate(m) if e},
            "coef": str(c),
        })
    return {"coeff": coeff_to_json(poly.ring.coeff),
            "variables": variables_to_json(poly.ring.variables),
            "terms": terms}


def poly_from_json(data, ring=None):
    if ring is None:
        ring = PolyRing(variables_from_json(data["variables"]),
                        coeff_from_json(data["coeff"]))
    terms = []
    for t in data["terms"]:
        exps = [0] * ring.nvars
        for name, e in t["exps"].items():
            exps[ring.var_index(name)] = e
        raw = t["coef"]
        coef = Fraction(raw) if "/" in raw else int(raw)
        terms.append((tuple(exps), coef))
    return ring.from_terms(terms)


def presentation_to_json(pres):
    out = {"coeff": coeff_to_json(pres.coeff),
           "variables": variables_to_json(pres.variables),
           "relations": [poly_to_json(r)["terms"] for r in pres.relations]}
    if pres.note:
        out["note"] = pres.note
    return out


def presentation_from_json(data):
    variables = variables_from_json(data["variables"])
    coeff = coeff_from_json(data["coeff"])
    ring = PolyRing(variables, coeff)
    rels = [poly_from_json({"terms": terms}, ring) for terms in data["relations"]]
    return QuotientPresentation(variables, coeff, rels, note=data.get("note"))


def series_to_json(series):
    return {"maxdeg": series.maxdeg, "dims": list(series.dims)}


def series_from_json(data):
    s = HilbertSeries(data["dims"])
    if s.maxdeg != data["maxdeg"]:
        raise ValidationError("series length disagrees with maxdeg")
    return s


def basis_to_json(elements):
    return [{"name": b.name, "topdeg": b.topdeg, "chowdeg": b.chowdeg,
             "provenance": b.provenance} for b in elements]
