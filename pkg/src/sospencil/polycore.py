"""Exact sparse multivariate polynomial arithmetic over the rationals.

Polynomials are immutable maps from exponent tuples to nonzero Fractions.
Everything downstream (pencil construction, Gram algebra, certification)
relies on this module staying exact: floats are rejected at the door and
all arithmetic is done in Fraction.

Two monomial orders appear throughout:

* ``grlex_key`` ranks by total degree, then lexicographically with z1
  heaviest. Leading terms, sign normalisation and text rendering use it.
* ``basis_key`` ranks by total degree, then reverse-lexicographically, so
  that basis listings come out as 1, z1, z2, z1^2, z1*z2, z2^2, ...

Variable indices in the public API are 1-based (z1 .. zd).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotRepresentableError, PreconditionError, StructuralError

NEG_INF = float("-inf")


def grlex_key(exps):
    """Graded lexicographic sort key, z1 heaviest. Max = leading term."""
    return (sum(exps), exps)


def basis_key(exps):
    """Graded reverse-lexicographic sort key used for basis listings."""
    return (sum(exps), tuple(-e for e in exps))


def _coerce(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise StructuralError(
            "float coefficients are not allowed; use Fraction or int"
        )
    raise StructuralError(f"cannot use {type(value).__name__} as a coefficient")


class Polynomial:
    """Immutable sparse polynomial in ``nvars`` variables over Q."""

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars, terms=None):
        if not isinstance(nvars, int) or nvars < 0:
            raise StructuralError("nvars must be a nonnegative integer")
        clean = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != nvars or any(
                not isinstance(e, int) or e < 0 for e in exps
            ):
                raise StructuralError(f"bad exponent tuple {exps} for nvars={nvars}")
            coeff = _coerce(coeff)
            if coeff:
                clean[exps] = clean.get(exps, Fraction(0)) + coeff
                if not clean[exps]:
                    del clean[exps]
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, nvars):
        return cls(nvars, {})

    @classmethod
    def one(cls, nvars):
        return cls(nvars, {(0,) * nvars: Fraction(1)})

    @classmethod
    def constant(cls, value, nvars):
        return cls(nvars, {(0,) * nvars: _coerce(value)})

    @classmethod
    def variable(cls, index, nvars):
        """The monomial z_index, with 1-based index."""
        if not 1 <= index <= nvars:
            raise StructuralError(f"variable index {index} out of range 1..{nvars}")
        exps = [0] * nvars
        exps[index - 1] = 1
        return cls(nvars, {tuple(exps): Fraction(1)})

    @classmethod
    def monomial(cls, exps, coeff=1):
        return cls(len(exps), {tuple(exps): _coerce(coeff)})

    # -- queries -----------------------------------------------------------

    def is_zero(self):
        return not self._terms

    def terms(self):
        """Exponent/coefficient pairs in descending graded-lex order."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def coefficient(self, exps):
        return self._terms.get(tuple(exps), Fraction(0))

    def degree(self):
        """Total degree; NEG_INF for the zero polynomial."""
        if not self._terms:
            return NEG_INF
        return max(sum(e) for e in self._terms)

    def degree_in(self, index):
        """Degree in z_index (1-based); NEG_INF for the zero polynomial."""
        if not 1 <= index <= self.nvars:
            raise StructuralError(f"variable index {index} out of range 1..{self.nvars}")
        if not self._terms:
            return NEG_INF
        return max(e[index - 1] for e in self._terms)

    def leading_term(self):
        """(exponents, coefficient) maximal in graded-lex order."""
        if not self._terms:
            raise StructuralError("zero polynomial has no leading term")
        exps = max(self._terms, key=grlex_key)
        return exps, self._terms[exps]

    def support(self):
        return set(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    # -- arithmetic ---------------------------------------------------------

    def _check_same_ring(self, other):
        if self.nvars != other.nvars:
            raise StructuralError(
                f"mixed arities: {self.nvars} vs {other.nvars} variables"
            )

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_same_ring(other)
        terms = dict(self._terms)
        for exps, coeff in other._terms.items():
            terms[exps] = terms.get(exps, Fraction(0)) + coeff
        return Polynomial(self.nvars, terms)

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return Polynomial(self.nvars, {e: -c for e, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            self._check_same_ring(other)
            terms = {}
            for e1, c1 in self._terms.items():
                for e2, c2 in other._terms.items():
                    exps = tuple(a + b for a, b in zip(e1, e2))
                    terms[exps] = terms.get(exps, Fraction(0)) + c1 * c2
            return Polynomial(self.nvars, terms)
        coeff = _coerce(other)
        return Polynomial(self.nvars, {e: c * coeff for e, c in self._terms.items()})

    def __rmul__(self, other):
        return self * other

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise StructuralError("polynomial powers must be nonnegative integers")
        result = Polynomial.one(self.nvars)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def diff(self, index):
        """Partial derivative with respect to z_index (1-based)."""
        if not 1 <= index <= self.nvars:
            raise StructuralError(f"variable index {index} out of range 1..{self.nvars}")
        k = index - 1
        terms = {}
        for exps, coeff in self._terms.items():
            if exps[k] == 0:
                continue
            lowered = list(exps)
            lowered[k] -= 1
            terms[tuple(lowered)] = coeff * exps[k]
        return Polynomial(self.nvars, terms)

    # -- evaluation ----------------------------------------------------------

    def eval_rational(self, point):
        """Exact evaluation at a tuple of Fractions/ints."""
        if len(point) != self.nvars:
            raise StructuralError(f"expected {self.nvars} coordinates, got {len(point)}")
        values = [_coerce(x) for x in point]
        total = Fraction(0)
        for exps, coeff in self._terms.items():
            term = coeff
            for x, e in zip(values, exps):
                if e:
                    term *= x**e
            total += term
        return total

    def eval_complex(self, point):
        """Floating evaluation at a tuple of complex numbers."""
        if len(point) != self.nvars:
            raise StructuralError(f"expected {self.nvars} coordinates, got {len(point)}")
        total = 0j
        for exps, coeff in self._terms.items():
            term = complex(float(coeff))
            for x, e in zip(point, exps):
                if e:
                    term *= complex(x) ** e
            total += term
        return total

    # -- comparison / rendering -----------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self._terms.items())))

    def __str__(self):
        if not self._terms:
            return "0"
        chunks = []
        for exps, coeff in self.terms():
            parts = []
            for k, e in enumerate(exps):
                if e == 1:
                    parts.append(f"z{k + 1}")
                elif e > 1:
                    parts.append(f"z{k + 1}^{e}")
            mono = "*".join(parts)
            mag = abs(coeff)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            sign = "-" if coeff < 0 else "+"
            chunks.append((sign, body))
        first_sign, first_body = chunks[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in chunks[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Polynomial({self})"


# -- monomial bases -------------------------------------------------------------


@dataclass(frozen=True)
class MonomialBasis:
    """Monomials with total degree <= total_cap and z_k degree <= var_caps[k-1].

    Listed in ascending graded reverse-lex order, so position 0 is the
    constant monomial and z1 precedes z2 within each degree block.
    """

    total_cap: int
    var_caps: tuple
    monomials: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "_index", {m: i for i, m in enumerate(self.monomials)}
        )

    @property
    def nvars(self):
        return len(self.var_caps)

    def __len__(self):
        return len(self.monomials)

    def __iter__(self):
        return iter(self.monomials)

    def __contains__(self, exps):
        return tuple(exps) in self._index

    def index_of(self, exps):
        exps = tuple(exps)
        try:
            return self._index[exps]
        except KeyError:
            raise NotRepresentableError(
                f"monomial with exponents {exps} is outside the basis"
            ) from None

    def spans(self, poly):
        """True when every monomial of ``poly`` lies in the basis."""
        if poly.nvars != self.nvars:
            raise StructuralError(
                f"polynomial has {poly.nvars} variables, basis has {self.nvars}"
            )
        return all(e in self._index for e in poly.support())


def build_basis(total_cap, var_caps):
    """Enumerate the capped monomial basis in ascending graded reverse-lex order."""
    if not isinstance(total_cap, int) or total_cap < 0:
        raise StructuralError("total degree cap must be a nonnegative integer")
    var_caps = tuple(var_caps)
    if not var_caps:
        raise StructuralError("at least one variable is required")
    if any(not isinstance(c, int) or c < 0 for c in var_caps):
        raise StructuralError("per-variable caps must be nonnegative integers")

    monomials = []

    def extend(prefix, remaining):
        if not remaining:
            monomials.append(tuple(prefix))
            return
        budget = total_cap - sum(prefix)
        for e in range(min(remaining[0], budget) + 1):
            extend(prefix + [e], remaining[1:])

    extend([], list(var_caps))
    monomials.sort(key=basis_key)
    return MonomialBasis(total_cap, var_caps, tuple(monomials))


def homogenize(poly, total_degree):
    """Append an auxiliary last variable raising every term to ``total_degree``."""
    if poly.is_zero():
        return Polynomial.zero(poly.nvars + 1)
    if poly.degree() > total_degree:
        raise PreconditionError(
            f"cannot homogenize degree {poly.degree()} to total degree {total_degree}"
        )
    terms = {
        exps + (total_degree - sum(exps),): coeff
        for exps, coeff in poly._terms.items()
    }
    return Polynomial(poly.nvars + 1, terms)


def dehomogenize(poly):
    """Set the auxiliary last variable to 1."""
    if poly.nvars < 1:
        raise StructuralError("nothing to dehomogenize in a 0-variable polynomial")
    terms = {}
    for exps, coeff in poly._terms.items():
        base = exps[:-1]
        terms[base] = terms.get(base, Fraction(0)) + coeff
    return Polynomial(poly.nvars - 1, terms)


def wronskian(q, p, index):
    """q * dp/dz_index - p * dq/dz_index."""
    if q.nvars != p.nvars:
        raise StructuralError("wronskian operands must share the variable count")
    return q * p.diff(index) - p * q.diff(index)


# -- gcd machinery ----------------------------------------------------------------


def _fraction_gcd(a, b):
    return Fraction(
        math.gcd(a.numerator, b.numerator), math.lcm(a.denominator, b.denominator)
    )


def rational_content(poly):
    """Positive Fraction c such that poly / c has coprime integer coefficients."""
    if poly.is_zero():
        raise StructuralError("zero polynomial has no content")
    content = Fraction(0)
    for coeff in poly._terms.values():
        content = _fraction_gcd(content, abs(coeff))
    return content


def canonical_scale(poly):
    """Scale to coprime integer coefficients with positive leading coefficient."""
    if poly.is_zero():
        return poly
    scale = rational_content(poly)
    if poly.leading_term()[1] < 0:
        scale = -scale
    return poly * (1 / scale)


def divexact(f, g):
    """Exact quotient f / g; raises StructuralError when g does not divide f."""
    if g.is_zero():
        raise StructuralError("division by the zero polynomial")
    f._check_same_ring(g)
    g_exps, g_coeff = g.leading_term()
    quotient = {}
    rest = f
    while not rest.is_zero():
        r_exps, r_coeff = rest.leading_term()
        step = tuple(a - b for a, b in zip(r_exps, g_exps))
        if any(e < 0 for e in step):
            raise StructuralError("polynomials do not divide exactly")
        c = r_coeff / g_coeff
        quotient[step] = c
        rest = rest - g * Polynomial.monomial(step, c)
    return Polynomial(f.nvars, quotient)


def divides(g, f):
    """True when g divides f exactly (g nonzero)."""
    if g.is_zero():
        return f.is_zero()
    try:
        divexact(f, g)
    except StructuralError:
        return False
    return True


def _to_univariate(poly):
    """View an nvars-variate polynomial as dict: deg in z1 -> coeff in z2..zd."""
    coeffs = {}
    for exps, coeff in poly._terms.items():
        coeffs.setdefault(exps[0], {})[exps[1:]] = coeff
    return {
        d: Polynomial(poly.nvars - 1, terms) for d, terms in coeffs.items()
    }


def _from_univariate(coeffs, nvars):
    terms = {}
    for d, poly in coeffs.items():
        for exps, coeff in poly._terms.items():
            terms[(d,) + exps] = coeff
    return Polynomial(nvars, terms)


def _content_many(polys):
    acc = None
    for p in polys:
        acc = p if acc is None else poly_gcd(acc, p)
        if acc == Polynomial.one(acc.nvars):
            break
    return acc


def _primitive(coeffs):
    """Divide a univariate-view polynomial by the gcd of its coefficients."""
    content = _content_many(list(coeffs.values()))
    return {d: divexact(c, content) for d, c in coeffs.items()}, content


def _pseudo_remainder(u, v):
    """Pseudo-remainder of univariate views u by v (v nonzero), up to units."""
    dv = max(v)
    lead_v = v[dv]
    r = dict(u)
    while r and max(r) >= dv:
        dr = max(r)
        lead_r = r.pop(dr)
        shifted = {}
        for d, c in v.items():
            if d == dv:
                continue
            shifted[d + dr - dv] = c
        new = {}
        for d in set(r) | set(shifted):
            val = r.get(d, Polynomial.zero(lead_v.nvars)) * lead_v - shifted.get(
                d, Polynomial.zero(lead_v.nvars)
            ) * lead_r
            if not val.is_zero():
                new[d] = val
        r = new
    return r


def poly_gcd(f, g):
    """Greatest common divisor in Q[z1..zd].

    Normalized to coprime integer coefficients with positive leading
    coefficient, so the gcd of two nonzero constants is 1.
    """
    if not isinstance(f, Polynomial) or not isinstance(g, Polynomial):
        raise StructuralError("poly_gcd expects two Polynomial arguments")
    f._check_same_ring(g)
    if f.is_zero():
        return canonical_scale(g)
    if g.is_zero():
        return canonical_scale(f)
    if f.nvars == 0:
        return Polynomial.one(0)

    u, content_f = _primitive(_to_univariate(f))
    v, content_g = _primitive(_to_univariate(g))
    if max(u) < max(v):
        u, v = v, u
    while True:
        r = _pseudo_remainder(u, v)
        if not r:
            break
        u, v = v, _primitive(r)[0]
    content = poly_gcd(content_f, content_g)
    result = _from_univariate(v, f.nvars) * _from_univariate(
        {0: content}, f.nvars
    )
    return canonical_scale(result)


# -- rational functions -------------------------------------------------------------


@dataclass(frozen=True)
class RationalFunction:
    """A quotient p / q with q nonzero; construction performs no reduction."""

    p: Polynomial
    q: Polynomial

    def __post_init__(self):
        if self.p.nvars != self.q.nvars:
            raise StructuralError("numerator and denominator arities differ")
        if self.q.is_zero():
            raise StructuralError("denominator must be nonzero")

    @property
    def nvars(self):
        return self.p.nvars

    @classmethod
    def normalized(cls, p, q):
        """Reduce by the polynomial gcd; make q's leading coefficient positive."""
        rf = cls(p, q)
        if p.is_zero():
            sign = Fraction(1) if q.leading_term()[1] > 0 else Fraction(-1)
            return cls(Polynomial.zero(q.nvars), q * sign)
        common = poly_gcd(rf.p, rf.q)
        p_red = divexact(rf.p, common)
        q_red = divexact(rf.q, common)
        if q_red.leading_term()[1] < 0:
            p_red, q_red = -p_red, -q_red
        return cls(p_red, q_red)

    def __str__(self):
        return f"({self.p}) / ({self.q})"
