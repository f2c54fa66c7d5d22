"""Per-group data: cohomology models, transgression tables, operation rules.

Each supported (group, prime) case gets a CohomologyModel holding

  * y-generators of the truncated polynomial part, with truncation exponents
    p^r (so y^trunc = 0), ordered by degree;
  * the odd x-generators, one per unit of rank;
  * a transgression entry per x-generator: its degree (= |x|+1), a leading
    witness p^s * (y-polynomial) when the entry has one, and v-terms
    (n, y-polynomial) recording higher periodic corrections.  A `complete`
    entry lists its full decomposition, so an absent level means zero; an
    incomplete entry only records what is known.
  * explicitly stated operation rules (Bockstein tables, power-operation
    arrows, Steenrod-square chains).

The catalog is compiled-in static data.  Torsion indices are the p-parts
t(G)_(p); J-invariants equal the truncation exponent tuple in every versal
case.  Witness annotations, sharp-count data and restriction tables live in
registries keyed by descriptor and feed the chow/torsion checks.
"""

from .errors import DataMissingError, UnsupportedCaseError, ValidationError
from .ring import COEFF_Z, GradedVariable, PolyRing, coeff_fp
from .symclass import t_ring


class GroupDescriptor:
    """Key of a catalog case: family, rank, prime (+ filled-in invariants)."""

    __slots__ = ("family", "rank", "prime", "torsion_index_p", "j_invariant")

    def __init__(self, family, rank, prime, torsion_index_p=None, j_invariant=None):
        self.family = family
        self.rank = rank
        self.prime = prime
        self.torsion_index_p = torsion_index_p
        self.j_invariant = j_invariant

    def key(self):
        return (self.family, self.rank, self.prime)

    def __eq__(self, other):
        return isinstance(other, GroupDescriptor) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def label(self):
        if self.family == "U":
            return "U(%d) p=%d" % (self.rank, self.prime)
        if self.family == "Sp":
            return "Sp(%d) p=%d" % (self.rank, self.prime)
        if self.family == "PU":
            return "PU(%d)" % self.prime
        if self.family == "SO_odd":
            return "SO(%d) p=2" % (2 * self.rank + 1)
        if self.family == "SO_even":
            return "SO(%d) p=2" % (2 * self.rank)
        if self.family == "Spin_odd":
            return "Spin(%d) p=2" % (2 * self.rank + 1)
        return "(%s, %d)" % (self.family, self.prime)

    def __repr__(self):
        return "GroupDescriptor(%r, rank=%d, p=%d)" % (self.family, self.rank, self.prime)


class YGen:
    __slots__ = ("name", "topdeg", "trunc")

    def __init__(self, name, topdeg, trunc):
        self.name = name
        self.topdeg = topdeg
        self.trunc = trunc


class XGen:
    __slots__ = ("name", "topdeg", "alias")

    def __init__(self, name, topdeg, alias=None):
        self.name = name
        self.topdeg = topdeg
        self.alias = alias


class WitnessPolynomial:
    """p^s * (body + higher filtration), body computed in P(y)/p."""

    __slots__ = ("s", "body")

    def __init__(self, s, body):
        if s < 0:
            raise ValidationError("p-exponent must be non-negative")
        self.s = s
        self.body = body

    def __eq__(self, other):
        return (isinstance(other, WitnessPolynomial)
                and self.s == other.s and self.body == other.body)

    def __repr__(self):
        return "WitnessPolynomial(p^%d, %s)" % (self.s, self.body.pretty())


class TransgressionEntry:
    __slots__ = ("index", "name", "topdeg", "leading", "v_terms", "complete", "note")

    def __init__(self, index, name, topdeg, leading, v_terms, complete, note=None):
        self.index = index
        self.name = name
        self.topdeg = topdeg
        self.leading = leading
        self.v_terms = tuple(v_terms)
        self.complete = complete
        self.note = note


class OperationRule:
    """op applied to a named generator; target is zero, a y-polynomial, or an x-gen."""

    __slots__ = ("op", "source", "target")

    def __init__(self, op, source, target):
        self.op = op
        self.source = source
        self.target = target  # ("zero",) | ("ypoly", Polynomial) | ("xgen", name, coef)


class RestrictionTable:
    """Restriction of a surjection-target basis to a partially split form.

    images map each source element to None or (n, y-label, y-topdeg), read as
    the class v_n * (y part); v_0 means multiplication by p.
    """

    __slots__ = ("name", "descriptor_key", "sources", "images", "expected_image")

    def __init__(self, name, descriptor_key, sources, images, expected_image):
        self.name = name
        self.descriptor_key = descriptor_key
        self.sources = tuple(sources)          # (name, topdeg)
        self.images = tuple(images)            # (source name, None | (n, label, ydeg))
        self.expected_image = tuple(expected_image)  # (name, topdeg) incl. unit


class WitnessAnnotation:
    """Expected witness product: these transgression indices multiply to p^s * y_top."""

    __slots__ = ("indices", "expected_exponent")

    def __init__(self, indices, expected_exponent):
        self.indices = tuple(indices)
        self.expected_exponent = expected_exponent


class SharpData:
    """Per-index factor-count options for the counting bound, with use limits."""

    __slots__ = ("options", "min_uses", "max_uses")

    def __init__(self, options, min_uses=None, max_uses=None):
        self.options = dict(options)        # index -> tuple of sharp values
        self.min_uses = dict(min_uses or {})
        self.max_uses = dict(max_uses or {})


class CohomologyModel:
    __slots__ = ("descriptor", "y_gens", "x_gens", "transgression", "op_rules",
                 "notes", "is_type_one", "dim_gt", "q_on_y_zero", "extras",
                 "_y_ring", "_by_topdeg")

    def __init__(self, descriptor, y_gens, x_gens, transgression, op_rules,
                 notes=(), is_type_one=False, dim_gt=None, q_on_y_zero=False,
                 extras=None):
        self.descriptor = descriptor
        self.y_gens = tuple(y_gens)
        self.x_gens = tuple(x_gens)
        self.transgression = tuple(transgression)
        self.op_rules = tuple(op_rules)
        self.notes = tuple(notes)
        self.is_type_one = is_type_one
        self.dim_gt = dim_gt
        self.q_on_y_zero = q_on_y_zero
        self.extras = extras or {}
        self._y_ring = None
        self._by_topdeg = None

    @property
    def prime(self):
        return self.descriptor.prime

    @property
    def rank(self):
        return self.descriptor.rank

    def y_ring(self):
        if self._y_ring is None:
            self._y_ring = PolyRing(
                [GradedVariable(g.name, g.topdeg) for g in self.y_gens],
                coeff_fp(self.prime))
        return self._y_ring

    def y_gen_poly(self, name, power=1):
        return self.y_ring().gen(name, power)

    def y_monomial(self, exps, coef=1):
        return self.y_ring().monomial(exps, coef)

    def y_top(self):
        """Product of all y-generators to their top surviving powers (1 if none)."""
        exps = tuple(g.trunc - 1 for g in self.y_gens)
        return self.y_ring().monomial(exps)

    def y_top_degree(self):
        return sum((g.trunc - 1) * g.topdeg for g in self.y_gens)

    def reduce_y(self, poly):
        """Apply the truncation relations y^trunc = 0 monomial-wise."""
        ring = self.y_ring()
        kept = {m: c for m, c in poly.terms.items()
                if all(e < g.trunc for e, g in zip(m, self.y_gens))}
        return ring.from_terms(kept.items())

    def y_class(self, topdeg):
        """The class of degree `topdeg` in P(y) as a generator power, or None.

        Used by the orthogonal families, where every even class below the
        range bound is a 2-power of a generator.
        """
        if self._by_topdeg is None:
            table = {}
            for i, g in enumerate(self.y_gens):
                e = 1
                while e < g.trunc:
                    exps = [0] * len(self.y_gens)
                    exps[i] = e
                    table.setdefault(g.topdeg * e, tuple(exps))
                    e *= 2 if self.prime == 2 else g.trunc  # 2-powers only at p=2
            self._by_topdeg = table
        exps = self._by_topdeg.get(topdeg)
        if exps is None:
            return None
        return self.y_ring().monomial(exps)

    def x_gen(self, name):
        for x in self.x_gens:
            if x.name == name or x.alias == name:
                return x
        raise DataMissingError("no x-generator named %r in %s"
                               % (name, self.descriptor.label()))

    def entry(self, index):
        for e in self.transgression:
            if e.index == index:
                return e
        raise DataMissingError("no transgression entry %r in %s"
                               % (index, self.descriptor.label()))

    def entry_for_x(self, name):
        x = self.x_gen(name)
        i = self.x_gens.index(x)
        return self.transgression[i]

    def b_degrees(self):
        return [e.topdeg for e in self.transgression]

    def poincare_coeffs(self):
        """Coefficient list of the Poincare polynomial of P(y) (x) Lambda(x)."""
        coeffs = [1]

        def mul(factor):
            nonlocal coeffs
            out = [0] * (len(coeffs) + len(factor) - 1)
            for i, a in enumerate(coeffs):
                for j, b in enumerate(factor):
                    out[i + j] += a * b
            coeffs = out

        for g in self.y_gens:
            factor = [0] * ((g.trunc - 1) * g.topdeg + 1)
            for k in range(g.trunc):
                factor[k * g.topdeg] = 1
            mul(factor)
        for x in self.x_gens:
            factor = [0] * (x.topdeg + 1)
            factor[0] = 1
            factor[x.topdeg] = 1
            mul(factor)
        return coeffs


# ---------------------------------------------------------------------------
# model builders


def _w(model_ring, s, terms):
    return WitnessPolynomial(s, model_ring.from_terms(terms))


def _trunc_exponent(m, l, p=2):
    # smallest power p^r with m * p^r > l
    r = 1
    while m * (p ** r) <= l:
        r += 1
    return p ** r


def _model_U(l, p):
    desc = GroupDescriptor("U", l, p, torsion_index_p=1, j_invariant=())
    x_gens = [XGen("x%d" % i, 2 * i - 1) for i in range(1, l + 1)]
    trans = [TransgressionEntry(i, "c_%d" % i, 2 * i, None, [], complete=True)
             for i in range(1, l + 1)]
    return CohomologyModel(desc, [], x_gens, trans, [], dim_gt=l * l - l)


def _model_Sp(l, p):
    desc = GroupDescriptor("Sp", l, p, torsion_index_p=1, j_invariant=())
    x_gens = [XGen("x%d" % i, 4 * i - 1) for i in range(1, l + 1)]
    trans = [TransgressionEntry(i, "p_%d" % i, 4 * i, None, [], complete=True)
             for i in range(1, l + 1)]
    return CohomologyModel(desc, [], x_gens, trans, [], dim_gt=2 * l * l)


def _model_PU(p):
    l = p - 1
    desc = GroupDescriptor("PU", l, p, torsion_index_p=p, j_invariant=(1,))
    y_gens = [YGen("y2", 2, p)]
    x_gens = [XGen("x%d" % i, 2 * i - 1) for i in range(1, l + 1)]
    model = CohomologyModel(desc, y_gens, x_gens, [], [],
                            dim_gt=p * p - p)
    ring = model.y_ring()
    trans = [TransgressionEntry(i, "c_%d" % i, 2 * i,
                                WitnessPolynomial(1, ring.gen("y2", i)), [],
                                complete=False)
             for i in range(1, l + 1)]
    model = CohomologyModel(desc, y_gens, x_gens, trans, [],
                            dim_gt=p * p - p)
    return model


def _so_like_y_gens(l, max_even, min_oddpart=1):
    gens = []
    m = min_oddpart
    while 2 * m <= max_even:
        gens.append(YGen("y%d" % (2 * m), 2 * m, _trunc_exponent(m, max_even // 2)))
        m += 2
    return gens


def _so_transgression(model, l, skip_dead=False):
    """c_i entries with leading 2*y_{2i} and v-terms y_{2i + 2^{n+1} - 2}."""
    entries = []
    for i in range(1, l + 1):
        lead_cls = model.y_class(2 * i)
        leading = WitnessPolynomial(1, lead_cls) if lead_cls is not None else None
        v_terms = []
        n = 1
        while True:
            target = 2 * i + 2 ** (n + 1) - 2
            if target > 2 * l:
                break
            cls = model.y_class(target)
            if cls is not None:
                v_terms.append((n, cls))
            n += 1
        name = ("c'_%d" if skip_dead else "c_%d") % i
        entries.append(TransgressionEntry(i, name, 2 * i, leading, v_terms,
                                          complete=True))
    return entries


def _model_SO_odd(l):
    y_gens = _so_like_y_gens(l, 2 * l)
    desc = GroupDescriptor("SO_odd", l, 2, torsion_index_p=2 ** l,
                           j_invariant=tuple(_r_of(g.trunc, 2) for g in y_gens))
    x_gens = [XGen("x%d" % (2 * i - 1), 2 * i - 1) for i in range(1, l + 1)]
    model = CohomologyModel(desc, y_gens, x_gens, [], [], dim_gt=2 * l * l,
                            q_on_y_zero=True)
    trans = _so_transgression(model, l)
    return CohomologyModel(
        desc, y_gens, x_gens, trans, [], dim_gt=2 * l * l, q_on_y_zero=True,
        notes=("periodic-operation rule on odd generators stored with the "
               "'+' index convention y_{2i + 2^{n+1} - 2}; the alternative "
               "'-' reading is rejected by the derived Q_1 check",
               "integral quadratic relations resolved to the signed "
               "product-sum expansion (middle sign +(-1)^j, forcing "
               "y_4 = y_2^2); the torsion builder re-derives this by the "
               "free-rank criterion at every build",))


def _model_SO_even(l):
    y_gens = _so_like_y_gens(l, 2 * l - 2)
    desc = GroupDescriptor("SO_even", l, 2, torsion_index_p=2 ** (l - 1),
                           j_invariant=tuple(_r_of(g.trunc, 2) for g in y_gens))
    x_gens = [XGen("x%d" % (2 * i - 1), 2 * i - 1) for i in range(1, l + 1)]
    model = CohomologyModel(desc, y_gens, x_gens, [], [],
                            dim_gt=2 * l * (l - 1), q_on_y_zero=True)
    trans = _so_transgression(model, l)
    return CohomologyModel(desc, y_gens, x_gens, trans, [],
                           dim_gt=2 * l * (l - 1), q_on_y_zero=True)


def _model_Spin_odd(l):
    tpar = l.bit_length() - 1  # floor(log2 l)
    y_gens = _so_like_y_gens(l, 2 * l, min_oddpart=3)
    torsion = {3: 2, 4: 2, 5: 2, 8: 16}.get(l)
    desc = GroupDescriptor("Spin_odd", l, 2, torsion_index_p=torsion,
                           j_invariant=tuple(_r_of(g.trunc, 2) for g in y_gens))
    zdeg = 2 ** (tpar + 2) - 1
    x_gens = [XGen("x%d" % (2 * i - 1), 2 * i - 1) for i in range(2, l + 1)]
    x_gens.append(XGen("z%d" % zdeg, zdeg))
    lbar = l - 1 if l & (l - 1) == 0 else l
    model = CohomologyModel(desc, y_gens, x_gens, [], [], dim_gt=2 * l * l,
                            q_on_y_zero=True)
    trans = _so_transgression(model, l, skip_dead=True)[1:]  # c'_2 .. c'_l

    def pair_sum(total):
        ring = model.y_ring()
        acc = ring.zero()
        for a in range(1, total):
            b = total - a
            if a >= b:
                break
            ca, cb = model.y_class(2 * a), model.y_class(2 * b)
            if ca is not None and cb is not None:
                acc = acc + ca * cb
        return acc

    half = 2 ** (tpar + 1)
    lead = pair_sum(half)
    # level-n sum runs over pairs with i+j = 2^{t+1} + 2^n - 1: the degree
    # law |Q_n| = 2*2^n - 1 forces the half-shift (a doubled shift fails the
    # degree equation for every n >= 1)
    v_terms = []
    n = 1
    while 2 * (half + 2 ** n - 1) <= 4 * l:
        body = pair_sum(half + 2 ** n - 1)
        if not body.is_zero():
            v_terms.append((n, body))
        n += 1
    trans.append(TransgressionEntry(
        "z", "c_1^%d" % half, zdeg + 1,
        WitnessPolynomial(1, lead) if not lead.is_zero() else None,
        v_terms, complete=True))
    extras = {
        "lbar": lbar,
        "torsion_elements": ["c'_%d - 2*c_1^%d" % (2 ** j, 2 ** j)
                             for j in range(1, l.bit_length())
                             if 2 ** j <= l],
    }
    is_type_one = l in (3, 4)
    return CohomologyModel(
        desc, y_gens, x_gens, trans, [], dim_gt=2 * l * l, q_on_y_zero=True,
        is_type_one=is_type_one, extras=extras,
        notes=("torsion-element list kept with coefficient 2 on the "
               "c_1-power term, matching the summary statement; the in-text "
               "corollary prints coefficient 1",
               "the stored surjection target is known to be an isomorphism "
               "by a later result; recorded as a note, not asserted",))


def _r_of(trunc, p):
    r = 0
    t = trunc
    while t > 1:
        t //= p
        r += 1
    return r


def _type_one_model(family, p, x_degrees, yname, ydeg, dim_gt, extras=None):
    l = len(x_degrees)
    desc = GroupDescriptor(family, l, p, torsion_index_p=p, j_invariant=(1,))
    y_gens = [YGen(yname, ydeg, p)]
    x_gens = [XGen("x%d" % (i + 1), d) for i, d in enumerate(x_degrees)]
    model = CohomologyModel(desc, y_gens, x_gens, [], [], dim_gt=dim_gt)
    ring = model.y_ring()
    trans = []
    for i in range(1, l + 1):
        power = (i + 1) // 2
        if i % 2 == 1:
            trans.append(TransgressionEntry(
                i, "b_%d" % i, x_degrees[i - 1] + 1, None,
                [(1, ring.gen(yname, power))], complete=(i == 1)))
        else:
            trans.append(TransgressionEntry(
                i, "b_%d" % i, x_degrees[i - 1] + 1,
                WitnessPolynomial(1, ring.gen(yname, power)), [],
                complete=(i == 2)))
    op_rules = [OperationRule("P1", "x%d" % i, ("xgen", "x%d" % (i + 1), 1))
                for i in range(1, l + 1, 2)]
    return CohomologyModel(desc, y_gens, x_gens, trans, op_rules,
                           is_type_one=True, dim_gt=dim_gt, extras=extras or {})


def _model_G2():
    ring = t_ring(2, COEFF_Z)
    t1, t2 = ring.gen("t1"), ring.gen("t2")
    explicit_b = {1: t1 * t1 + t1 * t2 + t2 * t2, 2: t2 ** 3}
    return _type_one_model("G2", 2, [3, 5], "y6", 6, dim_gt=12,
                           extras={"explicit_b": explicit_b})


def _model_F4():
    return _type_one_model("F4", 3, [3, 7, 11, 15], "y8", 8, dim_gt=48)


def _model_E8_5():
    m = _type_one_model("E8", 5, [3, 11, 15, 23, 27, 35, 39, 47], "y12", 12,
                        dim_gt=240)
    aliases = ["z3", "z11", "z15", "z23", "z27", "z35", "z39", "z47"]
    x_gens = [XGen(x.name, x.topdeg, a) for x, a in zip(m.x_gens, aliases)]
    return CohomologyModel(m.descriptor, m.y_gens, x_gens, m.transgression,
                           m.op_rules, is_type_one=True, dim_gt=m.dim_gt,
                           extras=m.extras)


def _model_E8_3():
    desc = GroupDescriptor("E8", 8, 3, torsion_index_p=9, j_invariant=(1, 1))
    y_gens = [YGen("y8", 8, 3), YGen("y20", 20, 3)]
    degrees = [3, 7, 15, 19, 27, 35, 39, 47]
    aliases = ["z3", "z7", "z15", "z19", "z27", "z35", "z39", "z47"]
    x_gens = [XGen("x%d" % (i + 1), d, a)
              for i, (d, a) in enumerate(zip(degrees, aliases))]
    model = CohomologyModel(desc, y_gens, x_gens, [], [], dim_gt=240)
    R = model.y_ring()
    y = R.gen("y8")
    yp = R.gen("y20")

    def W(s, poly):
        return WitnessPolynomial(s, poly)

    trans = [
        TransgressionEntry(1, "b_1", 4, None, [(1, y), (2, yp)], complete=True),
        TransgressionEntry(2, "b_2", 8, W(1, y), [], complete=True),
        TransgressionEntry(3, "b_3", 16, W(1, y ** 2), [(1, yp)], complete=False),
        TransgressionEntry(4, "b_4", 20, W(1, yp), [], complete=False),
        TransgressionEntry(5, "b_5", 28, W(1, y * yp), [], complete=False),
        TransgressionEntry(6, "b_6", 36, W(1, y ** 2 * yp), [(1, yp ** 2)],
                           complete=False),
        TransgressionEntry(7, "b_7", 40, W(1, yp ** 2), [], complete=False),
        TransgressionEntry(8, "b_8", 48, W(1, y * yp ** 2), [], complete=False),
    ]
    beta = [("x2", y), ("x3", y ** 2), ("x4", yp), ("x5", y * yp),
            ("x6", y ** 2 * yp), ("x7", yp ** 2), ("x8", y * yp ** 2)]
    op_rules = [OperationRule("beta", src, ("ypoly", tgt)) for src, tgt in beta]
    op_rules += [
        OperationRule("P1", "x1", ("xgen", "x2", 1)),
        OperationRule("P1", "x3", ("xgen", "x4", 1)),
        OperationRule("P1", "x6", ("xgen", "x7", 1)),
        OperationRule("P3", "x2", ("xgen", "x4", 1)),
        OperationRule("P3", "x3", ("xgen", "x5", 1)),
        OperationRule("P3", "x5", ("xgen", "x7", -1)),
        OperationRule("P3", "x6", ("xgen", "x8", 1)),
        OperationRule("P3", "y8", ("ypoly", yp)),
    ]
    return CohomologyModel(
        desc, y_gens, x_gens, trans, op_rules, dim_gt=240,
        notes=("that the square of the top-level product is not a Bockstein "
               "image is a derived lookup against the stored table, not an "
               "independently stored fact",))


def _model_E8_2():
    desc = GroupDescriptor("E8", 8, 2, torsion_index_p=64,
                           j_invariant=(3, 2, 1, 1))
    y_gens = [YGen("y6", 6, 8), YGen("y10", 10, 4), YGen("y18", 18, 2),
              YGen("y30", 30, 2)]
    degrees = [3, 5, 9, 17, 15, 23, 27, 29]
    aliases = ["z3", "z5", "z9", "z17", "z15", "z23", "z27", "z29"]
    x_gens = [XGen("x%d" % (i + 1), d, a)
              for i, (d, a) in enumerate(zip(degrees, aliases))]
    model = CohomologyModel(desc, y_gens, x_gens, [], [], dim_gt=240)
    R = model.y_ring()
    y1, y2, y3, y4 = (R.gen(n) for n in ("y6", "y10", "y18", "y30"))

    def W(poly):
        return WitnessPolynomial(1, poly)

    trans = [
        TransgressionEntry(1, "b_1", 4, None,
                           [(1, y1), (2, y2), (3, y3)], complete=True),
        TransgressionEntry(2, "b_2", 6, W(y1),
                           [(2, y1 ** 2), (3, y2 ** 2)], complete=True),
        TransgressionEntry(3, "b_3", 10, W(y2),
                           [(1, y1 ** 2), (3, y1 ** 4)], complete=True),
        TransgressionEntry(4, "b_4", 18, W(y3), [(1, y2 ** 2)], complete=True),
        TransgressionEntry(5, "b_5", 16, W(y1 * y2),
                           [(1, y3), (3, y4)], complete=False,
                           note="a mixed middle-level term with positive-degree "
                                "torus factors is dropped"),
        TransgressionEntry(6, "b_6", 24, W(y1 * y3 + y1 ** 4), [],
                           complete=False),
        TransgressionEntry(7, "b_7", 28, W(y2 * y3), [(1, y4)], complete=False),
        TransgressionEntry(8, "b_8", 30, W(y4), [], complete=False),
    ]
    sq1 = [("x2", y1), ("x3", y2), ("x4", y3), ("x8", y4),
           ("x5", y1 * y2), ("x6", y1 * y3 + y1 ** 4), ("x7", y2 * y3)]
    op_rules = [OperationRule("Sq1", src, ("ypoly", tgt)) for src, tgt in sq1]
    op_rules += [
        OperationRule("Sq2", "x1", ("xgen", "x2", 1)),
        OperationRule("Sq4", "x2", ("xgen", "x3", 1)),
        OperationRule("Sq8", "x3", ("xgen", "x4", 1)),
        OperationRule("Sq8", "x5", ("xgen", "x6", 1)),
        OperationRule("Sq4", "x6", ("xgen", "x7", 1)),
        OperationRule("Sq2", "x7", ("xgen", "x8", 1)),
        OperationRule("Sq2", "x5", ("xgen", "x4", 1)),
    ]
    return CohomologyModel(desc, y_gens, x_gens, trans, op_rules, dim_gt=240)


def _model_E7_2():
    desc = GroupDescriptor("E7", 7, 2, torsion_index_p=4, j_invariant=(1, 1, 1))
    y_gens = [YGen("y6", 6, 2), YGen("y10", 10, 2), YGen("y18", 18, 2)]
    degrees = [3, 5, 9, 17, 15, 23, 27]
    aliases = ["z3", "z5", "z9", "z17", "z15", "z23", "z27"]
    x_gens = [XGen("x%d" % (i + 1), d, a)
              for i, (d, a) in enumerate(zip(degrees, aliases))]
    model = CohomologyModel(desc, y_gens, x_gens, [], [], dim_gt=126)
    R = model.y_ring()
    y1, y2, y3 = (R.gen(n) for n in ("y6", "y10", "y18"))

    def W(poly):
        return WitnessPolynomial(1, poly)

    trans = [
        TransgressionEntry(1, "b_1", 4, None,
                           [(1, y1), (2, y2), (3, y3)], complete=True),
        TransgressionEntry(2, "b_2", 6, W(y1), [], complete=True),
        TransgressionEntry(3, "b_3", 10, W(y2), [], complete=True),
        TransgressionEntry(4, "b_4", 18, W(y3), [], complete=True),
        TransgressionEntry(5, "b_5", 16, W(y1 * y2), [], complete=False),
        TransgressionEntry(6, "b_6", 24, W(y1 * y3), [], complete=False),
        TransgressionEntry(7, "b_7", 28, W(y2 * y3), [], complete=False),
    ]
    return CohomologyModel(desc, y_gens, x_gens, trans, [], dim_gt=126)


# ---------------------------------------------------------------------------
# lookup

SUPPORTED_CASES = (
    "U(l), any p", "Sp(l), any p", "PU(p)",
    "SO(2l+1) at p=2", "SO(2l) at p=2", "Spin(2l+1) at p=2",
    "(G2, 2)", "(F4, 3)", "(E8, 5)", "(E8, 3)", "(E8, 2)", "(E7, 2)",
)

_SUPPORTED_PRIMES = (2, 3, 5)


def descriptor(family, rank=None, prime=None):
    """Normalized descriptor for a supported case, invariants filled in."""
    return lookup_model(family, rank, prime).descriptor


def lookup_model(family, rank=None, prime=None):
    if family == "U":
        if rank is None or rank < 1 or prime not in _SUPPORTED_PRIMES:
            raise UnsupportedCaseError(_unsupported(family, rank, prime))
        return _model_U(rank, prime)
    if family == "Sp":
        if rank is None or rank < 1 or prime not in _SUPPORTED_PRIMES:
            raise UnsupportedCaseError(_unsupported(family, rank, prime))
        return _model_Sp(rank, prime)
    if family == "PU":
        if prime not in _SUPPORTED_PRIMES or (rank is not None and rank != prime - 1):
            raise UnsupportedCaseError(_unsupported(family, rank, prime))
        return _model_PU(prime)
    if family == "SO_odd":
        if prime != 2 or rank is None or rank < 1:
            raise UnsupportedCaseError(_unsupported(family, rank, prime))
        return _model_SO_odd(rank)
    if family == "SO_even":
        if prime != 2 or rank is None or rank < 2:
            raise UnsupportedCaseError(_unsupported(family, rank, prime))
        return _model_SO_even(rank)
    if family == "Spin_odd":
        if prime != 2 or rank is None or rank < 3:
            raise UnsupportedCaseError(_unsupported(family, rank, prime))
        return _model_Spin_odd(rank)
    if family == "G2" and prime == 2 and rank in (None, 2):
        return _model_G2()
    if family == "F4" and prime == 3 and rank in (None, 4):
        return _model_F4()
    if family == "E8" and rank in (None, 8):
        if prime == 5:
            return _model_E8_5()
        if prime == 3:
            return _model_E8_3()
        if prime == 2:
            return _model_E8_2()
    if family == "E7" and prime == 2 and rank in (None, 7):
        return _model_E7_2()
    raise UnsupportedCaseError(_unsupported(family, rank, prime))


def _unsupported(family, rank, prime):
    return ("no catalog case for family=%r rank=%r prime=%r; supported: %s"
            % (family, rank, prime, "; ".join(SUPPORTED_CASES)))


def lookup(desc):
    """Full validated model for a descriptor."""
    if isinstance(desc, GroupDescriptor):
        return lookup_model(desc.family, desc.rank, desc.prime)
    raise ValidationError("lookup expects a GroupDescriptor")


# ---------------------------------------------------------------------------
# registries: witnesses, sharp data, restriction tables


def witness_annotation(model):
    """The stored witness multiset for the model's torsion index, or None."""
    fam = model.descriptor.family
    l = model.rank
    p = model.prime
    if fam in ("U", "Sp"):
        return WitnessAnnotation([], 0)
    if fam == "PU":
        return WitnessAnnotation([p - 1], 1)
    if fam == "SO_odd":
        return WitnessAnnotation(list(range(1, l + 1)), l)
    if fam == "SO_even":
        return WitnessAnnotation(list(range(1, l)), l - 1)
    if fam == "Spin_odd":
        if l in (3, 4):
            return WitnessAnnotation([3], 1)
        if l == 5:
            return WitnessAnnotation(["z"], 1)
        if l == 8:
            return WitnessAnnotation([3, 5, 6, 7], 4)
        return None
    if fam in ("G2", "F4") or (fam == "E8" and p == 5):
        return WitnessAnnotation([2 * p - 2], 1)
    if fam == "E8" and p == 3:
        return WitnessAnnotation([2, 8], 2)
    if fam == "E8" and p == 2:
        return WitnessAnnotation([5, 5, 5, 4, 6, 8], 6)
    if fam == "E7":
        return WitnessAnnotation([2, 7], 2)
    return None


def sharp_data(model):
    """Counting data for the exchange bound, or None if not stored."""
    key = (model.descriptor.family, model.prime)
    if key == ("E8", 2):
        return SharpData(
            options={2: (1,), 3: (1,), 4: (1,), 5: (2,), 6: (2, 4),
                     7: (2,), 8: (1,)},
            min_uses={8: 1},   # the top class needs the unique y30 carrier
            max_uses={6: 1, 8: 1})
    if key == ("E7", 2):
        return SharpData(
            options={2: (1,), 3: (1,), 4: (1,), 5: (2,), 6: (2,), 7: (2,)})
    if key == ("E8", 3):
        return SharpData(
            options={2: (1,), 3: (2,), 4: (1,), 5: (2,), 6: (3,), 7: (2,),
                     8: (3,)})
    return None


def restriction_tables(model=None):
    """All stored restriction tables, optionally filtered to one model."""
    tables = []
    for l in (3, 7):
        tables.append(_so_restriction(l))
    tables.append(_e8_2_restriction())
    tables.append(_e8_3_restriction())
    tables.extend(_e7_2_restrictions())
    if model is not None:
        key = model.descriptor.key()
        tables = [t for t in tables if t.descriptor_key == key]
    return tables


def restriction_table(name):
    for t in restriction_tables():
        if t.name == name:
            return t
    raise DataMissingError("no restriction table named %r" % (name,))


def _so_restriction(l):
    # defined for l = 2^n - 1: the lone surviving class is y_{2l}
    n = (l + 1).bit_length() - 1
    if 2 ** n - 1 != l:
        raise ValidationError("rank must be one below a 2-power")
    model = _model_SO_odd(l)
    sources = [("c_%d" % j, 2 * j) for j in range(1, l + 1)]
    images = []
    for j in range(1, l + 1):
        s = None
        for cand in range(n):
            if j == l - (2 ** cand - 1):
                s = cand
                break
        images.append(("c_%d" % j,
                       (s, "y%d" % (2 * l), 2 * l) if s is not None else None))
    expected = [("1", 0)] + [("v_%d*y%d" % (s, 2 * l), 2 * l - 2 * (2 ** s - 1))
                             for s in range(n)]
    return RestrictionTable("so-rost-restriction-l%d" % l,
                            model.descriptor.key(), sources, images, expected)


def _e8_2_restriction():
    model = _model_E8_2()
    sources = [(e.name, e.topdeg) for e in model.transgression]
    images = []
    for j in range(1, 9):
        if 5 <= j <= 8:
            images.append(("b_%d" % j, (8 - j, "y30", 30)))
        else:
            images.append(("b_%d" % j, None))
    expected = [("1", 0)] + [("v_%d*y30" % s, 30 - 2 * (2 ** s - 1))
                             for s in (0, 1, 2, 3)]
    return RestrictionTable("e8-2-rost-restriction", model.descriptor.key(),
                            sources, images, expected)


def _e8_3_restriction():
    model = _model_E8_3()
    sources = [(e.name, e.topdeg) for e in model.transgression]
    img = {
        1: (1, "y8", 8),
        2: (0, "y8", 8),
        3: (0, "y8^2", 16),
        4: None,
        5: (0, "y8*y20", 28),
        6: (0, "y8^2*y20", 36),
        7: None,
        8: (0, "y8*y20^2", 48),
    }
    images = [("b_%d" % j, img[j]) for j in range(1, 9)]
    expected = [("1", 0), ("b_1", 4), ("b_2", 8), ("b_3", 16), ("b_5", 28),
                ("b_6", 36), ("b_8", 48)]
    return RestrictionTable("e8-3-rost-restriction", model.descriptor.key(),
                            sources, images, expected)


def _e7_2_restrictions():
    e8 = _model_E8_2()
    e7 = _model_E7_2()
    # stage 1: the rank-8 form restricted to a field keeping only the top class
    sources8 = [(e.name, e.topdeg) for e in e8.transgression]
    img8 = {1: (1, "y6", 6), 2: (0, "y6", 6), 3: (0, "y10", 10),
            4: (0, "y18", 18), 5: (0, "y6*y10", 16), 6: (0, "y6*y18", 24),
            7: (0, "y10*y18", 28), 8: None}
    images8 = [("b_%d" % j, img8[j]) for j in range(1, 9)]
    expected8 = [("1", 0)] + [("b_%d" % j, e8.transgression[j - 1].topdeg)
                              for j in range(1, 8)]
    t1 = RestrictionTable("e8-to-e7-rost-restriction", e8.descriptor.key(),
                          sources8, images8, expected8)
    # stage 2: the rank-7 form restricted until only a rank-2 core survives
    sources7 = [(e.name, e.topdeg) for e in e7.transgression]
    img7 = {1: (1, "y6", 6), 2: (0, "y6", 6)}
    images7 = [("b_%d" % j, img7.get(j)) for j in range(1, 8)]
    expected7 = [("1", 0), ("b_1", 4), ("b_2", 6)]
    t2 = RestrictionTable("e7-2-rost-restriction", e7.descriptor.key(),
                          sources7, images7, expected7)
    return [t1, t2]


# ---------------------------------------------------------------------------
# validation

CASE_IDS = (
    "U/Sp (any p)", "PU(p)", "SO(2l+1) p=2", "SO(2l) p=2", "Spin(2l+1) p=2",
    "(G2, 2)", "(F4, 3)", "(E8, 5)", "(E8, 3)", "(E8, 2)", "(E7, 2)",
)


def _is_power_of(value, p):
    if value < 1:
        return False
    while value % p == 0:
        value //= p
    return value == 1


def op_topdeg(op, p):
    if op in ("beta", "Sq1", "Q0"):
        return 1
    if op.startswith("Sq"):
        return int(op[2:])
    if op.startswith("P"):
        return 2 * int(op[1:]) * (p - 1)
    if op.startswith("Q"):
        return 2 * p ** int(op[1:]) - 1
    raise ValidationError("unknown operation %r" % (op,))


def validate_model(model):
    """All structural invariants of one model; returns a list of failures."""
    fails = []
    desc = model.descriptor
    p = desc.prime

    def check(cond, msg):
        if not cond:
            fails.append("%s: %s" % (desc.label(), msg))

    check(len(model.x_gens) == desc.rank, "number of x-generators != rank")
    names = [g.name for g in model.y_gens] + [x.name for x in model.x_gens]
    check(len(set(names)) == len(names), "generator names not unique")
    for g in model.y_gens:
        check(g.topdeg % 2 == 0 and g.topdeg > 0, "y-degree must be even")
        check(_is_power_of(g.trunc, p) and g.trunc > 1,
              "truncation exponent must be a power of p")
    for x in model.x_gens:
        check(x.topdeg % 2 == 1, "x-degree must be odd")

    check(len(model.transgression) == len(model.x_gens),
          "one transgression entry per x-generator")
    for x, e in zip(model.x_gens, model.transgression):
        check(e.topdeg == x.topdeg + 1,
              "entry %s degree %d != |%s|+1" % (e.name, e.topdeg, x.name))
        if e.leading is not None:
            body = e.leading.body
            check(not body.is_zero() and body.is_homogeneous()
                  and body.homogeneous_topdeg() == e.topdeg,
                  "leading witness of %s has wrong degree" % e.name)
            check(model.reduce_y(body) == body,
                  "leading witness of %s not reduced" % e.name)
        for n, body in e.v_terms:
            check(n >= 1, "v-term level must be >= 1")
            check(body.is_homogeneous() and not body.is_zero()
                  and body.homogeneous_topdeg() - 2 * (p ** n - 1) == e.topdeg,
                  "v-term (%d, ...) of %s violates the degree equation"
                  % (n, e.name))

    for rule in model.op_rules:
        d = op_topdeg(rule.op, p)
        src_deg = _gen_topdeg(model, rule.source, check, fails)
        if src_deg is None:
            continue
        if rule.target[0] == "zero":
            continue
        if rule.target[0] == "ypoly":
            tgt = rule.target[1]
            check(tgt.is_homogeneous() and not tgt.is_zero()
                  and tgt.homogeneous_topdeg() == src_deg + d,
                  "%s(%s) target degree mismatch" % (rule.op, rule.source))
        else:
            name, coef = rule.target[1], rule.target[2]
            check(coef % p != 0, "%s(%s) has zero coefficient" % (rule.op, rule.source))
            tdeg = _gen_topdeg(model, name, check, fails)
            if tdeg is not None:
                check(tdeg == src_deg + d,
                      "%s(%s) -> %s degree mismatch" % (rule.op, rule.source, name))

    # Bockstein rules must agree with the leading transgression witnesses
    for rule in model.op_rules:
        if rule.op not in ("beta", "Sq1"):
            continue
        try:
            entry = model.entry_for_x(rule.source)
        except DataMissingError:
            continue
        if entry.leading is not None and entry.leading.s == 1:
            check(rule.target[0] == "ypoly"
                  and rule.target[1] == entry.leading.body,
                  "Bockstein rule for %s disagrees with transgression leading"
                  % rule.source)

    if model.is_type_one:
        check(desc.rank >= 2 * p - 2, "rank below 2p-2 for a one-generator part")

    check(len(desc.j_invariant) == len(model.y_gens),
          "J-invariant length != number of y-generators")
    for j, g in zip(desc.j_invariant, model.y_gens):
        check(0 <= j <= _r_of(g.trunc, p), "J-entry out of range")
        check(j == _r_of(g.trunc, p), "versal case needs j_i = r_i")
    if desc.torsion_index_p is not None:
        check(desc.torsion_index_p == 1 or _is_power_of(desc.torsion_index_p, p),
              "torsion index must be a power of p")

    coeffs = model.poincare_coeffs()
    check(coeffs == coeffs[::-1], "Poincare polynomial is not a palindrome")

    if model.dim_gt is not None:
        total = (sum(x.topdeg + 1 for x in model.x_gens)
                 + sum((g.trunc - 1) * g.topdeg for g in model.y_gens)
                 - 2 * len(model.x_gens))
        check(total == model.dim_gt, "degree bookkeeping != dim(G/T)")

    if desc.family == "SO_odd":
        for i, e in enumerate(model.transgression, start=1):
            expect = model.y_class(2 * i)
            check(e.leading is not None and e.leading.s == 1
                  and e.leading.body == expect,
                  "leading term of c_%d must be 2*y_%d" % (i, 2 * i))

    if desc.key() == ("E8", 8, 2):
        check([g.topdeg for g in model.y_gens] == [6, 10, 18, 30],
              "y-degrees must be 6,10,18,30")
        check([g.trunc for g in model.y_gens] == [8, 4, 2, 2],
              "truncations must be 8,4,2,2")

    if "explicit_b" in model.extras:
        for i, poly in model.extras["explicit_b"].items():
            e = model.entry(i)
            check(poly.is_homogeneous()
                  and poly.homogeneous_topdeg() == e.topdeg,
                  "explicit form of %s has wrong degree" % e.name)

    for table in restriction_tables(model):
        src_deg = dict(table.sources)
        for name, image in table.images:
            if image is None:
                continue
            n, _, ydeg = image
            check(src_deg[name] == ydeg - 2 * (p ** n - 1),
                  "restriction image of %s in %s violates the degree equation"
                  % (name, table.name))

    ann = witness_annotation(model)
    if ann is not None and ann.indices:
        for idx in set(ann.indices):
            entry = model.entry(idx)
            check(entry.leading is not None,
                  "witness annotation uses entry %r with no leading term" % (idx,))
    return fails


def _gen_topdeg(model, name, check, fails):
    for g in model.y_gens:
        if g.name == name:
            return g.topdeg
    for x in model.x_gens:
        if x.name == name or x.alias == name:
            return x.topdeg
    fails.append("%s: operation rule names unknown generator %r"
                 % (model.descriptor.label(), name))
    return None


_CASE_MODELS = {
    "U/Sp (any p)": lambda: [_model_U(l, p) for l in (1, 2, 3, 5) for p in (2, 3, 5)]
    + [_model_Sp(l, p) for l in (1, 2, 3, 5) for p in (2, 3, 5)],
    "PU(p)": lambda: [_model_PU(p) for p in (2, 3, 5)],
    "SO(2l+1) p=2": lambda: [_model_SO_odd(l) for l in range(1, 9)],
    "SO(2l) p=2": lambda: [_model_SO_even(l) for l in range(2, 9)],
    "Spin(2l+1) p=2": lambda: [_model_Spin_odd(l) for l in range(3, 9)],
    "(G2, 2)": lambda: [_model_G2()],
    "(F4, 3)": lambda: [_model_F4()],
    "(E8, 5)": lambda: [_model_E8_5()],
    "(E8, 3)": lambda: [_model_E8_3()],
    "(E8, 2)": lambda: [_model_E8_2()],
    "(E7, 2)": lambda: [_model_E7_2()],
}


def validate_catalog():
    """Validate every entry; returns [(case id, ok, failures)] in fixed order."""
    report = []
    for case in CASE_IDS:
        failures = []
        for model in _CASE_MODELS[case]():
            failures.extend(validate_model(model))
        report.append((case, not failures, failures))
    return report
