"""Exact multivariate polynomial arithmetic over Z, Q and F_p with graded variables.

A monomial is a tuple of non-negative exponents aligned with the ring's
variable list; the empty monomial (all zeros) is the unit.  A polynomial is a
dict mapping monomials to nonzero coefficients.  Every variable carries an
even topological degree (Chow codimension is topdeg/2), and the topdeg of a
monomial is the exponent-weighted sum of variable degrees.

Coefficients: Python ints for Z, ints reduced to {0,..,p-1} for F_p, and
fractions.Fraction for Q.  The zero polynomial has an empty term dict and no
defined topdeg; homogeneity checks treat it as vacuously homogeneous.
"""

from fractions import Fraction

from .errors import RingMismatchError, ValidationError


class GradedVariable:
    """A named variable with a positive even topological degree."""

    __slots__ = ("name", "topdeg")

    def __init__(self, name, topdeg):
        if topdeg < 2 or topdeg % 2 != 0:
            raise ValidationError(
                "variable %r: topdeg must be a positive even integer, got %r"
                % (name, topdeg))
        self.name = name
        self.topdeg = topdeg

    def __eq__(self, other):
        return (isinstance(other, GradedVariable)
                and self.name == other.name and self.topdeg == other.topdeg)

    def __hash__(self):
        return hash((self.name, self.topdeg))

    def __repr__(self):
        return "GradedVariable(%r, %d)" % (self.name, self.topdeg)


COEFF_Z = ("Z",)
COEFF_Q = ("Q",)


def coeff_fp(p):
    if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise ValidationError("F_p requires a prime p, got %r" % (p,))
    if p >= 2 ** 61:
        raise ValidationError("p out of supported range")
    return ("Fp", p)


class PolyRing:
    """A graded polynomial ring: an ordered variable list plus a coefficient tag."""

    __slots__ = ("coeff", "variables", "topdegs", "_index")

    def __init__(self, variables, coeff=COEFF_Z):
        variables = tuple(variables)
        names = [v.name for v in variables]
        if len(set(names)) != len(names):
            raise ValidationError("variable names must be unique: %r" % names)
        if coeff[0] == "Fp":
            coeff = coeff_fp(coeff[1])
        elif coeff not in (COEFF_Z, COEFF_Q):
            raise ValidationError("unknown coefficient tag %r" % (coeff,))
        self.coeff = coeff
        self.variables = variables
        self.topdegs = tuple(v.topdeg for v in variables)
        self._index = {v.name: i for i, v in enumerate(variables)}

    # -- coefficient arithmetic -------------------------------------------

    def normalize_coeff(self, c):
        if self.coeff[0] == "Fp":
            return int(c) % self.coeff[1]
        if self.coeff[0] == "Q":
            return c if isinstance(c, Fraction) else Fraction(c)
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise ValidationError("non-integer coefficient %r over Z" % (c,))
            return c.numerator
        return int(c)

    def coeff_is_invertible(self, c):
        if self.coeff[0] == "Fp":
            return c % self.coeff[1] != 0
        if self.coeff[0] == "Q":
            return c != 0
        return c in (1, -1)

    def coeff_inv(self, c):
        if self.coeff[0] == "Fp":
            return pow(c, self.coeff[1] - 2, self.coeff[1])
        if self.coeff[0] == "Q":
            return Fraction(1) / c
        if c in (1, -1):
            return c
        raise ValidationError("coefficient %r is not a unit in Z" % (c,))

    # -- monomials ---------------------------------------------------------

    @property
    def nvars(self):
        return len(self.variables)

    def unit_monomial(self):
        return (0,) * self.nvars

    def monomial_topdeg(self, exps):
        return sum(e * d for e, d in zip(exps, self.topdegs))

    def var_index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise ValidationError("no variable named %r in ring" % (name,))

    # -- polynomial constructors -------------------------------------------

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.const(1)

    def const(self, c):
        c = self.normalize_coeff(c)
        if c == 0:
            return self.zero()
        return Polynomial(self, {self.unit_monomial(): c})

    def gen(self, name, power=1):
        exps = [0] * self.nvars
        exps[self.var_index(name)] = power
        return Polynomial(self, {tuple(exps): self.normalize_coeff(1)})

    def monomial(self, exps, coef=1):
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise ValidationError("exponent tuple length mismatch")
        c = self.normalize_coeff(coef)
        return Polynomial(self, {exps: c} if c != 0 else {})

    def from_terms(self, terms):
        """Build a polynomial from an iterable of (exps, coef), merging duplicates."""
        acc = {}
        for exps, coef in terms:
            exps = tuple(exps)
            acc[exps] = acc.get(exps, 0) + coef
        return Polynomial(self, {e: self.normalize_coeff(c) for e, c in acc.items()
                                 if self.normalize_coeff(c) != 0})

    def same_ring(self, other):
        return self.coeff == other.coeff and self.variables == other.variables

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.same_ring(other)

    def __hash__(self):
        return hash((self.coeff, self.variables))

    def __repr__(self):
        tag = self.coeff[0] if self.coeff[0] != "Fp" else "F%d" % self.coeff[1]
        return "PolyRing(%s; %s)" % (tag, ", ".join(v.name for v in self.variables))


class Polynomial:
    """Immutable sparse polynomial: dict monomial-tuple -> nonzero coefficient."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    # -- queries -----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def topdeg(self):
        """Max topdeg over terms; None for the zero polynomial."""
        if not self.terms:
            return None
        return max(self.ring.monomial_topdeg(m) for m in self.terms)

    def is_homogeneous(self):
        degs = {self.ring.monomial_topdeg(m) for m in self.terms}
        return len(degs) <= 1

    def homogeneous_topdeg(self):
        if not self.terms:
            return None
        degs = {self.ring.monomial_topdeg(m) for m in self.terms}
        if len(degs) != 1:
            raise ValidationError("polynomial is not homogeneous")
        return degs.pop()

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), 0)

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (isinstance(other, Polynomial)
                and self.ring.same_ring(other.ring) and self.terms == other.terms)

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self.terms.items()))))

    # -- arithmetic ---------------------------------------------------------

    def _check_ring(self, other):
        if not self.ring.same_ring(other.ring):
            raise RingMismatchError(
                "operands in different rings: %r vs %r" % (self.ring, other.ring))

    def __add__(self, other):
        self._check_ring(other)
        res = dict(self.terms)
        norm = self.ring.normalize_coeff
        for m, c in other.terms.items():
            s = norm(res.get(m, 0) + c)
            if s == 0:
                res.pop(m, None)
            else:
                res[m] = s
        return Polynomial(self.ring, res)

    def __neg__(self):
        norm = self.ring.normalize_coeff
        return Polynomial(self.ring, {m: norm(-c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check_ring(other)
        res = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                res[m] = res.get(m, 0) + c1 * c2
        norm = self.ring.normalize_coeff
        return Polynomial(self.ring,
                          {m: norm(c) for m, c in res.items() if norm(c) != 0})

    def scale(self, c):
        c = self.ring.normalize_coeff(c)
        if c == 0:
            return self.ring.zero()
        norm = self.ring.normalize_coeff
        res = {}
        for m, old in self.terms.items():
            v = norm(old * c)
            if v != 0:
                res[m] = v
        return Polynomial(self.ring, res)

    def mul_term(self, exps, coef):
        """Multiply by the single term coef * x^exps."""
        c = self.ring.normalize_coeff(coef)
        if c == 0:
            return self.ring.zero()
        norm = self.ring.normalize_coeff
        res = {}
        for m, old in self.terms.items():
            v = norm(old * c)
            if v != 0:
                res[tuple(a + b for a, b in zip(m, exps))] = v
        return Polynomial(self.ring, res)

    def __pow__(self, n):
        if n < 0:
            raise ValidationError("negative powers not supported")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def substitute(self, assignment):
        """Substitute polynomials for variables (dict name -> Polynomial in target ring).

        Unmentioned variables must exist in the target ring under the same name.
        """
        if not assignment:
            return self
        target = next(iter(assignment.values())).ring
        out = target.zero()
        cache = {}
        for m, c in self.terms.items():
            part = target.const(c)
            for i, e in enumerate(m):
                if e == 0:
                    continue
                name = self.ring.variables[i].name
                key = (name, e)
                if key not in cache:
                    base = assignment.get(name)
                    if base is None:
                        base = target.gen(name)
                    cache[key] = base ** e
                part = part * cache[key]
            out = out + part
        return out

    def map_coefficients(self, target_ring):
        """Reinterpret coefficients in another ring over the same variables."""
        if target_ring.variables != self.ring.variables:
            raise RingMismatchError("variable sets differ")
        norm = target_ring.normalize_coeff
        res = {}
        for m, c in self.terms.items():
            v = norm(c)
            if v != 0:
                res[m] = v
        return Polynomial(target_ring, res)

    # -- display ------------------------------------------------------------

    def pretty(self):
        if not self.terms:
            return "0"
        names = [v.name for v in self.ring.variables]
        parts = []
        for m in sorted(self.terms, key=lambda e: (-self.ring.monomial_topdeg(e), e)):
            c = self.terms[m]
            factors = ["%s^%d" % (names[i], e) if e > 1 else names[i]
                       for i, e in enumerate(m) if e]
            body = "*".join(factors) if factors else "1"
            if c == 1 and factors:
                parts.append(body)
            elif factors:
                parts.append("%s*%s" % (c, body))
            else:
                parts.append(str(c))
        return " + ".join(parts)

    def __repr__(self):
        return "Poly(%s)" % self.pretty()


def poly_mul(a, b):
    """Exact product of two polynomials in the same ring.

    Bilinear and graded: on homogeneous inputs the topdeg of the product is
    the sum of the input topdegs.
    """
    if not isinstance(a, Polynomial) or not isinstance(b, Polynomial):
        raise ValidationError("poly_mul expects Polynomial operands")
    return a * b
