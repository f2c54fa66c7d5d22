"""Degree-truncated Groebner bases, normal forms and Hilbert series.

All ideals here are homogeneous in the topological grading, so a Buchberger
run that discards every S-pair whose lcm exceeds the truncation degree yields
canonical normal forms for every polynomial at or below that degree,
whatever the monomial order.  Nothing ever attempts a full basis.

Orders are descriptors: "grevlex", "lex", or ("block", k) which compares the
first k variables grevlex-first (elimination order, used with y-variables in
the leading block).
"""

import heapq

from .errors import OutOfRangeError, ValidationError
from .ring import Polynomial, PolyRing


# ---------------------------------------------------------------------------
# monomial orders


def order_key(order, ring):
    """Return key(exps) such that larger key = larger monomial."""
    topdeg = ring.monomial_topdeg
    if order == "grevlex":
        def key(e):
            return (topdeg(e), tuple(-x for x in reversed(e)))
        return key
    if order == "lex":
        def key(e):
            return e
        return key
    if isinstance(order, tuple) and order[0] == "block":
        k = order[1]
        degs1 = ring.topdegs[:k]
        degs2 = ring.topdegs[k:]

        def key(e):
            a, b = e[:k], e[k:]
            da = sum(x * d for x, d in zip(a, degs1))
            db = sum(x * d for x, d in zip(b, degs2))
            return (da, tuple(-x for x in reversed(a)),
                    db, tuple(-x for x in reversed(b)))
        return key
    raise ValidationError("unknown monomial order %r" % (order,))


def leading_term(poly, key):
    m = max(poly.terms, key=key)
    return m, poly.terms[m]


def _divides(m, target):
    return all(a <= b for a, b in zip(m, target))


def _monomial_div(target, m):
    return tuple(b - a for a, b in zip(m, target))


def _monomial_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# presentations and series


class QuotientPresentation:
    """A graded polynomial ring plus a list of homogeneous relations."""

    __slots__ = ("variables", "coeff", "relations", "ring", "note")

    def __init__(self, variables, coeff, relations, note=None):
        self.ring = PolyRing(variables, coeff)
        self.variables = self.ring.variables
        self.coeff = self.ring.coeff
        rels = []
        for r in relations:
            if not isinstance(r, Polynomial) or not self.ring.same_ring(r.ring):
                raise ValidationError("relation not in the ambient ring")
            if r.is_zero():
                raise ValidationError("zero relation not allowed")
            if not r.is_homogeneous():
                raise ValidationError("relation %r is not homogeneous" % (r,))
            rels.append(r)
        self.relations = tuple(rels)
        self.note = note

    def __repr__(self):
        return "QuotientPresentation(%r, %d relations)" % (self.ring, len(self.relations))


class HilbertSeries:
    """Graded dimensions indexed by topological degree 0..maxdeg."""

    __slots__ = ("dims",)

    def __init__(self, dims):
        self.dims = list(dims)

    @property
    def maxdeg(self):
        return len(self.dims) - 1

    def dim(self, d):
        return self.dims[d] if 0 <= d < len(self.dims) else 0

    def total(self):
        return sum(self.dims)

    def truncated(self, maxdeg):
        dims = self.dims[:maxdeg + 1]
        dims += [0] * (maxdeg + 1 - len(dims))
        return HilbertSeries(dims)

    def __eq__(self, other):
        return isinstance(other, HilbertSeries) and self.dims == other.dims

    def __repr__(self):
        return "HilbertSeries(%r)" % (self.dims,)


def hs_product(a, b, maxdeg):
    """Truncated Cauchy product of two integer series."""
    da = a.dims if isinstance(a, HilbertSeries) else list(a)
    db = b.dims if isinstance(b, HilbertSeries) else list(b)
    dims = [0] * (maxdeg + 1)
    for i, x in enumerate(da):
        if i > maxdeg or x == 0:
            continue
        for j, y in enumerate(db):
            if i + j > maxdeg:
                break
            dims[i + j] += x * y
    return HilbertSeries(dims)


def hs_from_degrees(degrees, maxdeg):
    """Series of a graded basis given as a degree multiset."""
    dims = [0] * (maxdeg + 1)
    for d in degrees:
        if 0 <= d <= maxdeg:
            dims[d] += 1
    return HilbertSeries(dims)


def hs_one_minus_q(degrees, maxdeg):
    """Truncated product of (1 - q^d) over the given degrees."""
    dims = [0] * (maxdeg + 1)
    dims[0] = 1
    series = HilbertSeries(dims)
    for d in degrees:
        factor = [0] * (maxdeg + 1)
        factor[0] = 1
        if d <= maxdeg:
            factor[d] = -1
        series = hs_product(series, factor, maxdeg)
    return series


# ---------------------------------------------------------------------------
# Buchberger


class GroebnerBasis:
    """A reduced, degree-truncated basis over a field, leading coefficients 1."""

    __slots__ = ("order", "basis", "maxdeg", "ring", "_key", "_lts")

    def __init__(self, order, basis, maxdeg, ring):
        self.order = order
        self.basis = tuple(basis)
        self.maxdeg = maxdeg
        self.ring = ring
        self._key = order_key(order, ring)
        self._lts = tuple(leading_term(g, self._key)[0] for g in self.basis)

    def leading_monomials(self):
        return self._lts

    def __repr__(self):
        return "GroebnerBasis(order=%r, %d elements, maxdeg=%d)" % (
            self.order, len(self.basis), self.maxdeg)


def _reduce_full(poly, basis, lts, key, ring):
    """Full normal form of poly against basis (leading coefficients units)."""
    result = {}
    work = dict(poly.terms)
    norm = ring.normalize_coeff
    while work:
        lt = max(work, key=key)
        lc = work[lt]
        for g, glt in zip(basis, lts):
            if _divides(glt, lt):
                shift = _monomial_div(lt, glt)
                factor = norm(lc * ring.coeff_inv(g.terms[glt]))
                for m, c in g.terms.items():
                    mm = tuple(a + b for a, b in zip(m, shift))
                    v = norm(work.get(mm, 0) - factor * c)
                    if v == 0:
                        work.pop(mm, None)
                    else:
                        work[mm] = v
                break
        else:
            result[lt] = lc
            del work[lt]
    return Polynomial(ring, result)


def _monic(poly, key, ring):
    lt, lc = leading_term(poly, key)
    if lc == 1:
        return poly
    return poly.scale(ring.coeff_inv(lc))


def buchberger(relations, ring, order, maxdeg):
    """Degree-truncated Buchberger on homogeneous generators over a field."""
    key = order_key(order, ring)
    basis = []
    for r in relations:
        if r.is_zero():
            continue
        d = r.homogeneous_topdeg()
        if d is not None and d <= maxdeg:
            basis.append(_monic(r, key, ring))
    lts = [leading_term(g, key)[0] for g in basis]

    # pair queue ordered by lcm topdeg (normal selection)
    heap = []
    counter = 0

    def push_pairs(j):
        nonlocal counter
        for i in range(j):
            lcm = _monomial_lcm(lts[i], lts[j])
            d = ring.monomial_topdeg(lcm)
            if d <= maxdeg:
                heapq.heappush(heap, (d, counter, i, j, lcm))
                counter += 1

    for j in range(len(basis)):
        push_pairs(j)

    done = set()
    while heap:
        d, _, i, j, lcm = heapq.heappop(heap)
        if d > maxdeg:
            break
        done.add((i, j))
        # product criterion
        if tuple(a + b for a, b in zip(lts[i], lts[j])) == lcm:
            continue
        # chain criterion
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if _divides(lts[k], lcm):
                p1 = (min(i, k), max(i, k))
                p2 = (min(j, k), max(j, k))
                if p1 in done and p2 in done:
                    skip = True
                    break
        if skip:
            continue
        gi, gj = basis[i], basis[j]
        si = gi.mul_term(_monomial_div(lcm, lts[i]), 1)
        sj = gj.mul_term(_monomial_div(lcm, lts[j]), 1)
        s = si - sj
        h = _reduce_full(s, basis, lts, key, ring)
        if not h.is_zero():
            basis.append(_monic(h, key, ring))
            lts.append(leading_term(basis[-1], key)[0])
            push_pairs(len(basis) - 1)

    # minimalize: drop elements whose LM is divisible by another LM
    keep = []
    for i, g in enumerate(basis):
        if any(j != i and _divides(lts[j], lts[i])
               and (lts[j] != lts[i] or j < i) for j in range(len(basis))):
            continue
        keep.append(i)
    minimal = [basis[i] for i in keep]
    min_lts = [lts[i] for i in keep]
    # reduce tails for canonical output
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        olts = min_lts[:i] + min_lts[i + 1:]
        reduced.append(_monic(_reduce_full(g, others, olts, key, ring), key, ring))
    reduced.sort(key=lambda g: (g.homogeneous_topdeg(),
                                key(leading_term(g, key)[0])))
    return reduced


def groebner(pres, maxdeg, order="grevlex"):
    """Degree-truncated Groebner basis of a quotient presentation.

    Requires field coefficients (F_p, or Q where `torsion` asks for it) and
    homogeneous relations; normal forms below maxdeg are canonical.
    """
    if pres.coeff[0] == "Z":
        raise ValidationError("groebner needs field coefficients; Z-quotients "
                              "are handled by the torsion machinery")
    if maxdeg < 0:
        raise ValidationError("maxdeg must be non-negative")
    basis = buchberger(pres.relations, pres.ring, order, maxdeg)
    return GroebnerBasis(order, basis, maxdeg, pres.ring)


def normal_form(f, gb):
    """Canonical representative of f modulo the truncated basis.

    Idempotent and linear; errors if topdeg(f) exceeds the truncation.
    """
    if not gb.ring.same_ring(f.ring):
        raise ValidationError("polynomial not in the basis ring")
    d = f.topdeg()
    if d is not None and d > gb.maxdeg:
        raise OutOfRangeError("topdeg %d above truncation %d" % (d, gb.maxdeg))
    return _reduce_full(f, gb.basis, gb.leading_monomials(), gb._key, gb.ring)


# ---------------------------------------------------------------------------
# Hilbert series and regular sequences


def _standard_monomial_dims(lts, ring, maxdeg):
    """Count monomials of each topdeg <= maxdeg not divisible by any leading monomial."""
    dims = [0] * (maxdeg + 1)
    nvars = ring.nvars
    degs = ring.topdegs
    lts = sorted(lts, key=lambda m: ring.monomial_topdeg(m))
    exps = [0] * nvars

    def rec(i, deg):
        if i == nvars:
            for m in lts:
                if all(a <= b for a, b in zip(m, exps)):
                    return
            dims[deg] += 1
            return
        e = 0
        while deg + e * degs[i] <= maxdeg:
            exps[i] = e
            rec(i + 1, deg + e * degs[i])
            e += 1
        exps[i] = 0

    rec(0, 0)
    return dims


def hilbert_series(pres, maxdeg, order="grevlex"):
    """Graded dimensions of the quotient: counts of standard monomials per topdeg."""
    gb = groebner(pres, maxdeg, order)
    return HilbertSeries(_standard_monomial_dims(gb.leading_monomials(),
                                                 pres.ring, maxdeg))


def is_regular_sequence(ambient, seq, maxdeg):
    """Series test: HS(ambient/seq) == HS(ambient) * prod(1 - q^{d_i}) up to maxdeg."""
    degs = []
    for f in seq:
        if f.is_zero() or not f.is_homogeneous():
            return False
        degs.append(f.homogeneous_topdeg())
    ambient_hs = hilbert_series(ambient, maxdeg)
    quotient = QuotientPresentation(ambient.variables, ambient.coeff,
                                    list(ambient.relations) + list(seq))
    quotient_hs = hilbert_series(quotient, maxdeg)
    expected = hs_product(ambient_hs, hs_one_minus_q(degs, maxdeg), maxdeg)
    return quotient_hs == expected
