"""Mod-p presentations of versal flag-variety Chow rings and their bases.

Bases of the indecomposable-summand Chow groups are degree-tagged lists,
never rings (no canonical ring structure exists there); quotient
presentations are rings.  Series comparisons use the truncated Cauchy
product: the graded-vector-space meaning of a tensor decomposition.
"""

from itertools import combinations

from .catalog import restriction_tables
from .errors import PresentationUnavailableError, UnsupportedCaseError, ValidationError
from .groebner import (
    QuotientPresentation,
    hilbert_series,
    hs_from_degrees,
    hs_product,
)
from .ring import GradedVariable, coeff_fp
from .symclass import elementary_symmetric, pontryagin_class, t_ring


class BasisElement:
    """A named additive generator with its topological degree."""

    __slots__ = ("name", "topdeg", "provenance")

    def __init__(self, name, topdeg, provenance):
        if topdeg < 0 or (topdeg == 0) != (name == "1") or topdeg % 2 != 0:
            raise ValidationError("basis element %r with topdeg %r" % (name, topdeg))
        self.name = name
        self.topdeg = topdeg
        self.provenance = provenance

    @property
    def chowdeg(self):
        return self.topdeg // 2

    def __eq__(self, other):
        return (isinstance(other, BasisElement)
                and (self.name, self.topdeg) == (other.name, other.topdeg))

    def __hash__(self):
        return hash((self.name, self.topdeg))

    def __repr__(self):
        return "BasisElement(%r, %d)" % (self.name, self.topdeg)


class VnSymbol:
    """Degree bookkeeping for the periodic classes: |v_n| = -2(p^n - 1), v_0 = p."""

    __slots__ = ("n", "prime")

    def __init__(self, n, prime):
        if n < 0:
            raise ValidationError("level must be non-negative")
        self.n = n
        self.prime = prime

    @property
    def topdeg(self):
        return -2 * (self.prime ** self.n - 1)

    def __repr__(self):
        return "VnSymbol(v_%d, p=%d)" % (self.n, self.prime)


# ---------------------------------------------------------------------------
# presentations


def chow_presentation(model):
    """The mod-p presentation of the versal flag Chow ring, where one exists.

    Fully explicit for the classical families and the rank-2 exceptional
    case; the other one-generator cases come back as opaque graded symbols
    B_i with the square-level relations.  Cases known only through a
    surjection raise.
    """
    desc = model.descriptor
    fam = desc.family
    p = desc.prime
    l = desc.rank
    Fp = coeff_fp(p)
    if fam == "U":
        ring = t_ring(l, Fp)
        rels = [elementary_symmetric(l, i, ring=ring) for i in range(1, l + 1)]
        return QuotientPresentation(ring.variables, Fp, rels)
    if fam == "Sp":
        ring = t_ring(l, Fp)
        rels = [pontryagin_class(l, i, ring=ring) for i in range(1, l + 1)]
        return QuotientPresentation(ring.variables, Fp, rels)
    if fam == "PU":
        ring = t_ring(l, Fp)
        cs = [elementary_symmetric(l, i, ring=ring) for i in range(1, l + 1)]
        rels = [cs[i] * cs[j] for i in range(l) for j in range(i, l)]
        return QuotientPresentation(ring.variables, Fp, rels)
    if fam == "SO_odd":
        ring = t_ring(l, Fp)
        rels = [elementary_symmetric(l, i, ring=ring) ** 2 for i in range(1, l + 1)]
        return QuotientPresentation(ring.variables, Fp, rels)
    if fam == "SO_even":
        ring = t_ring(l, Fp)
        rels = [elementary_symmetric(l, i, ring=ring) ** 2 for i in range(1, l)]
        rels.append(elementary_symmetric(l, l, ring=ring))
        return QuotientPresentation(ring.variables, Fp, rels)
    if model.is_type_one and fam != "Spin_odd":
        if "explicit_b" in model.extras:
            ring = t_ring(l, Fp)
            bs = [model.extras["explicit_b"][i].map_coefficients(ring)
                  for i in range(1, 2 * p - 1)]
            rels = [bs[i] * bs[j] for i in range(len(bs)) for j in range(i, len(bs))]
            return QuotientPresentation(ring.variables, Fp, rels)
        return _symbolic_type_one(model)
    if fam == "Spin_odd" and model.is_type_one:
        return _symbolic_type_one(model)
    raise PresentationUnavailableError(
        "%s is known only through a surjection target; no full presentation"
        % desc.label())


def _symbolic_type_one(model):
    p = model.prime
    gens = []
    for e in model.transgression:
        gens.append(GradedVariable("B%s" % e.index, e.topdeg))
    from .ring import PolyRing
    ring = PolyRing(gens, coeff_fp(p))
    nlow = 2 * p - 2
    bs = [ring.gen("B%s" % e.index) for e in model.transgression[:nlow]]
    rels = [bs[i] * bs[j] for i in range(nlow) for j in range(i, nlow)]
    for e in model.transgression[nlow:]:
        rels.append(ring.gen("B%s" % e.index))
    return QuotientPresentation(
        ring.variables, ring.coeff, rels,
        note="opaque transgression symbols; the explicit torus forms are "
             "not part of the stored data for this case")


# ---------------------------------------------------------------------------
# bases


def rost_chow_basis(n, p):
    """Mod-p additive basis of the height-n indecomposable summand:
    the unit plus c_j(y^i) of topdeg 2i(p^n - 1)/(p - 1) - 2(p^j - 1)."""
    if n < 1:
        raise ValidationError("height must be >= 1")
    b_n = (p ** n - 1) // (p - 1)
    out = [BasisElement("1", 0, "rost-basis")]
    for i in range(1, p):
        for j in range(n):
            deg = 2 * i * b_n - 2 * (p ** j - 1)
            ypow = "y" if i == 1 else "y^%d" % i
            out.append(BasisElement("c_%d(%s)" % (j, ypow), deg, "rost-basis"))
    return out


def rost_part_basis(model, variant="default"):
    """Additive basis data for the indecomposable summand of the model.

    Returns (kind, elements): kind is "exact", "surjection-target", or
    "mod-torsion" (the torsion-free quotient basis, stored for the rank-7
    and rank-8 odd-prime cases).
    """
    desc = model.descriptor
    fam = desc.family
    p = desc.prime
    l = desc.rank
    if variant not in ("default", "mod-torsion"):
        raise ValidationError("unknown variant %r" % (variant,))

    def unit():
        return BasisElement("1", 0, "rost-part")

    if variant == "mod-torsion":
        if fam == "E7" and p == 2:
            return "mod-torsion", _b_products(model, [[i] for i in range(2, 8)]
                                              + [[2, 7]])
        if fam == "E8" and p == 3:
            return "mod-torsion", _b_products(model, [[i] for i in range(2, 9)]
                                              + [[2, 8]])
        raise UnsupportedCaseError(
            "no torsion-free quotient basis stored for %s" % desc.label())

    if fam in ("U", "Sp"):
        return "exact", [unit()]
    if fam == "PU":
        out = [unit()]
        for i in range(1, p):
            out.append(BasisElement("c_%d" % i, 2 * i, "rost-part"))
        return "exact", out
    if fam == "SO_odd":
        return "exact", _square_free_monomials(model, l)
    if fam == "SO_even":
        return "exact", _square_free_monomials(model, l - 1)
    if fam == "Spin_odd":
        if model.is_type_one:
            out = [unit(),
                   BasisElement("c'_2", 4, "rost-part"),
                   BasisElement("c'_3", 6, "rost-part")]
            return "exact", out
        if l == 5:
            elems = [unit()]
            for idx in (2, 3, 4, 5):
                elems.append(BasisElement("c'_%d" % idx, 2 * idx, "rost-part"))
            elems.append(BasisElement("c'_2c'_4", 12, "rost-part"))
            elems.append(BasisElement("c_1^8", 16, "rost-part"))
            return "surjection-target", elems
        lbar = model.extras["lbar"]
        elems = [unit()]
        for idx in range(2, lbar + 1):
            elems.append(BasisElement("c'_%d" % idx, 2 * idx, "rost-part"))
        return "surjection-target", elems
    if model.is_type_one:
        return "exact", _b_products(model, [[i] for i in range(1, 2 * p - 1)])
    if fam == "E8" and p == 3:
        return "surjection-target", _b_products(
            model, [[i] for i in range(1, 9)] + [[1, 6], [1, 8], [2, 8]])
    if fam == "E8" and p == 2:
        return "surjection-target", _b_products(model, [[i] for i in range(1, 9)])
    if fam == "E7" and p == 2:
        return "surjection-target", _b_products(
            model, [[i] for i in range(1, 8)] + [[1, 5], [1, 6], [1, 7], [2, 7]])
    raise UnsupportedCaseError("no basis data for %s" % desc.label())


def _b_products(model, index_lists):
    out = [BasisElement("1", 0, "rost-part")]
    degs = {e.index: e.topdeg for e in model.transgression}
    names = {e.index: e.name for e in model.transgression}
    for idxs in index_lists:
        name = "".join(names[i] for i in idxs)
        out.append(BasisElement(name, sum(degs[i] for i in idxs), "rost-part"))
    return out


def _square_free_monomials(model, top):
    out = []
    for k in range(top + 1):
        for subset in combinations(range(1, top + 1), k):
            name = "".join("c_%d" % i for i in subset) if subset else "1"
            out.append(BasisElement(name, sum(2 * i for i in subset),
                                    "rost-part"))
    out.sort(key=lambda b: (b.topdeg, b.name))
    return out


def a_filtration_basis(model, bound):
    """All monomials in the transgression classes of total topdeg <= bound."""
    if bound < 0:
        raise ValidationError("bound must be non-negative")
    entries = [(e.index, e.name, e.topdeg) for e in model.transgression]
    out = []

    def rec(i, deg, factors):
        if i == len(entries):
            name_parts = []
            for (idx, name, _), mult in factors:
                name_parts.append(name if mult == 1 else "%s^%d" % (name, mult))
            name = "".join(name_parts) if name_parts else "1"
            out.append(BasisElement(name, deg, "filtration"))
            return
        idx, name, d = entries[i]
        mult = 0
        while deg + mult * d <= bound:
            rec(i + 1, deg + mult * d,
                factors + ([(entries[i], mult)] if mult else []))
            mult += 1

    rec(0, 0, [])
    out.sort(key=lambda b: (b.topdeg, b.name))
    return out


# ---------------------------------------------------------------------------
# decomposition and restriction checks


def _p_prime_series(model, maxdeg):
    """Series of the inner truncated part P'(y): trivial in every versal case
    (each J-entry equals its truncation exponent), computed generally."""
    dims = [0] * (maxdeg + 1)
    dims[0] = 1
    series = [1] + [0] * maxdeg
    for g, j in zip(model.y_gens, model.descriptor.j_invariant):
        p = model.prime
        step = g.topdeg * (p ** j)
        count = g.trunc // (p ** j)
        factor = [0] * (maxdeg + 1)
        for k in range(count):
            if k * step <= maxdeg:
                factor[k * step] = 1
        series = hs_product(series, factor, maxdeg).dims
    from .groebner import HilbertSeries
    return HilbertSeries(series)


def _s_mod_b_series(model, maxdeg):
    """Series of the torus quotient by the transgression relations (explicit
    classical forms only)."""
    desc = model.descriptor
    fam = desc.family
    p = desc.prime
    l = desc.rank
    Fp = coeff_fp(p)
    ring = t_ring(l, Fp)
    if fam in ("U", "PU", "SO_odd", "SO_even"):
        rels = [elementary_symmetric(l, i, ring=ring) for i in range(1, l + 1)]
    elif fam == "Sp":
        rels = [pontryagin_class(l, i, ring=ring) for i in range(1, l + 1)]
    elif "explicit_b" in model.extras:
        rels = [model.extras["explicit_b"][i].map_coefficients(ring)
                for i in sorted(model.extras["explicit_b"])]
    else:
        raise PresentationUnavailableError(
            "no explicit transgression forms for %s" % desc.label())
    pres = QuotientPresentation(ring.variables, Fp, rels)
    return hilbert_series(pres, maxdeg)


def verify_additive_decomposition(model, maxdeg):
    """Series identity behind the additive decomposition:
    HS(full quotient) = HS(summand basis) * HS(P'(y)) * HS(torus/(b))."""
    kind, basis = rost_part_basis(model)
    report = {"case": model.descriptor.label(), "maxdeg": maxdeg}
    if kind != "exact":
        report["status"] = "skipped"
        report["detail"] = "summand basis is %s, not exact" % kind
        return report
    try:
        pres = chow_presentation(model)
    except PresentationUnavailableError as err:
        report["status"] = "skipped"
        report["detail"] = str(err)
        return report
    if pres.note is not None:
        report["status"] = "skipped"
        report["detail"] = "presentation is symbolic"
        return report
    lhs = hilbert_series(pres, maxdeg)
    rost_hs = hs_from_degrees([b.topdeg for b in basis], maxdeg)
    rhs = hs_product(rost_hs, _p_prime_series(model, maxdeg), maxdeg)
    rhs = hs_product(rhs, _s_mod_b_series(model, maxdeg), maxdeg)
    report["status"] = "pass" if lhs == rhs else "fail"
    report["lhs"] = lhs.dims
    report["rhs"] = rhs.dims
    report["basis_size"] = len(basis)
    return report


def restriction_check(table):
    """Degree consistency of a stored restriction table, plus the element
    count of its nonzero image against the cited basis."""
    fam_key = table.descriptor_key
    p = fam_key[2]
    report = {"table": table.name, "failures": [], "status": "pass"}
    src_deg = dict(table.sources)
    nonzero = 0
    for name, image in table.images:
        if image is None:
            continue
        nonzero += 1
        n, label, ydeg = image
        if src_deg[name] != ydeg - 2 * (p ** n - 1):
            report["failures"].append(
                "%s -> v_%d*%s fails the degree equation" % (name, n, label))
    expected = len(table.expected_image)
    report["image_cardinality"] = nonzero + 1  # plus the unit
    report["expected_cardinality"] = expected
    if nonzero + 1 != expected:
        report["failures"].append(
            "image count %d != cited %d" % (nonzero + 1, expected))
    degs_img = sorted(src_deg[name] for name, image in table.images
                      if image is not None)
    degs_expected = sorted(d for _, d in table.expected_image if d > 0)
    if degs_img != degs_expected:
        report["failures"].append("image degrees differ from the cited basis")
    if report["failures"]:
        report["status"] = "fail"
    return report


def restriction_reports(model=None):
    return [restriction_check(t) for t in restriction_tables(model)]
