"""The rational function field K(x) over K = GF(q): elements, places,
valuations and residues.

Places of K(x) are the monic irreducible polynomials p(x) together with the
place at infinity.  The valuation at a finite place counts p-multiplicity in
numerator minus denominator; at infinity it is deg(den) - deg(num).  Every
valuation returns the +infinity sentinel (math.inf) on the zero element.

The residue field at a finite place of degree d is GF(q^d), realized
canonically via make_field and the smallest root rho of p(x) there; residues
are computed by evaluating at rho, and lift() inverts that evaluation on
polynomials of degree < d.
"""

from __future__ import annotations

import math

from .errors import TowerlabError
from .ffield import (
    FFElem,
    FFPoly,
    FiniteField,
    embed,
    gfp_solve,
    is_irreducible,
    make_field,
    poly_gcd,
    roots_in_field,
)

#: Sentinel for the valuation of 0.
INF = math.inf


class PoleAtPlace(TowerlabError):
    """Raised when a residue is requested at a pole."""


class RatFunc:
    """An element of GF(q)(x), stored as num/den with den monic and
    gcd(num, den) = 1; zero is 0/1."""

    __slots__ = ("num", "den")

    def __init__(self, num: FFPoly, den: FFPoly | None = None):
        if den is None:
            den = FFPoly(num.field, [1])
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.field != den.field:
            raise ValueError("numerator and denominator over different fields")
        if num.is_zero():
            den = FFPoly(num.field, [1])
        else:
            g = poly_gcd(num, den)
            if g.degree() > 0:
                num, den = num.exact_div(g), den.exact_div(g)
            lc = den.lc()
            if not lc == den.field.one():
                inv = lc.inverse()
                num, den = num * inv, den * inv
        self.num = num
        self.den = den

    @classmethod
    def const(cls, field: FiniteField, c) -> "RatFunc":
        return cls(FFPoly(field, [c]))

    @classmethod
    def var(cls, field: FiniteField) -> "RatFunc":
        return cls(FFPoly(field, [0, 1]))

    @property
    def field(self) -> FiniteField:
        return self.num.field

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.degree() == 0

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.field != self.field:
                raise ValueError("mixed-field arithmetic")
            return other
        if isinstance(other, FFPoly):
            return RatFunc(other)
        if isinstance(other, (int, FFElem)):
            return RatFunc.const(self.field, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RatFunc(self.num * other.den - other.num * self.den, self.den * other.den)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self.inverse() * other

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num**n, self.den**n)

    def __eq__(self, other):
        if isinstance(other, (int, FFElem, FFPoly)):
            coerced = self._coerce(other)
            return coerced is not None and self == coerced
        return (
            isinstance(other, RatFunc)
            and other.num == self.num
            and other.den == self.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def to_str(self, var: str = "x") -> str:
        ns = self.num.to_str(var)
        if self.den.degree() == 0:
            return ns
        ds = self.den.to_str(var)
        if "+" in ns or self.num.degree() > 0:
            ns = "(" + ns + ")" if "+" in ns else ns
        return f"{ns}/({ds})"

    def __repr__(self):
        return self.to_str()


# residue fields represented as GF(p)[x]/(P), keyed by (p, coeffs of P);
# shared instances keep mixed-field checks happy across repeated places
_quotient_fields: dict = {}


class RatPlace:
    """A place of GF(q)(x): either the zero locus of a monic irreducible
    polynomial, or the place at infinity."""

    __slots__ = ("field", "poly", "_resfield", "_rho", "_lift_cols")

    def __init__(self, field: FiniteField, poly: FFPoly | None):
        if poly is not None:
            if poly.field != field:
                raise ValueError("place polynomial over the wrong field")
            if poly.degree() < 1 or not poly.lc() == field.one():
                raise ValueError("place polynomial must be monic of degree >= 1")
            if not is_irreducible(poly):
                raise ValueError(f"{poly!r} is not irreducible")
        self.field = field
        self.poly = poly
        self._resfield = None
        self._rho = None
        self._lift_cols = None

    @classmethod
    def infinity(cls, field: FiniteField) -> "RatPlace":
        return cls(field, None)

    @classmethod
    def finite(cls, poly: FFPoly) -> "RatPlace":
        return cls(poly.field, poly)

    def is_infinite(self) -> bool:
        return self.poly is None

    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree()

    def uniformizer(self) -> RatFunc:
        if self.poly is None:
            one = FFPoly(self.field, [1])
            return RatFunc(one, FFPoly(self.field, [0, 1]))
        return RatFunc(self.poly)

    # -- valuation --------------------------------------------------------------

    def valuation(self, r: RatFunc):
        """The normalized valuation; math.inf for the zero element."""
        if not isinstance(r, RatFunc):
            raise TypeError("valuation takes a RatFunc")
        if r.is_zero():
            return INF
        if self.poly is None:
            return r.den.degree() - r.num.degree()
        return self._poly_val(r.num) - self._poly_val(r.den)

    def _poly_val(self, f: FFPoly) -> int:
        v = 0
        while True:
            q, rem = divmod(f, self.poly)
            if not rem.is_zero():
                return v
            v += 1
            f = q

    # -- residue machinery --------------------------------------------------------

    def residue_field(self) -> FiniteField:
        if self._resfield is None:
            d = self.degree()
            if self.poly is not None and d > 1 and self.field.k == 1:
                # prime base field: GF(p)[x]/(P) is the residue field itself,
                # with rho the class of x; no root search needed
                key = (self.field.p, tuple(c.rep[0] for c in self.poly.coeffs))
                fld = _quotient_fields.get(key)
                if fld is None:
                    fld = FiniteField(self.field.p, d, key[1])
                    _quotient_fields[key] = fld
                self._resfield = fld
                self._rho = fld.gen()
            else:
                self._resfield = make_field(self.field.p, self.field.k * d)
                if self.poly is None or d == 1:
                    if self.poly is None:
                        self._rho = None
                    else:
                        self._rho = embed(-self.poly.coeff(0), self._resfield)
                else:
                    self._rho = roots_in_field(self.poly, self._resfield)[0]
        return self._resfield

    def _eval_at_rho(self, f: FFPoly) -> FFElem:
        self.residue_field()
        if self.poly is None:
            raise ValueError("no evaluation point at infinity")
        return f.eval(self._rho)

    def residue(self, r: RatFunc) -> FFElem:
        """The image of r in the residue field; PoleAtPlace if v(r) < 0."""
        v = self.valuation(r)
        res = self.residue_field()
        if v is INF or v > 0:
            return res.zero()
        if v < 0:
            raise PoleAtPlace(f"pole of order {-v} at {self!r}")
        if self.poly is None:
            # equal degrees: ratio of leading coefficients
            return embed(r.num.lc() / r.den.lc(), res)
        nv = self._eval_at_rho(r.num)
        dv = self._eval_at_rho(r.den)
        return nv / dv

    def unit_residue(self, r: RatFunc) -> FFElem:
        """residue(r * pi^(-v(r))): the leading unit of r at this place."""
        if r.is_zero():
            raise ZeroDivisionError("unit part of zero")
        if self.poly is None:
            v = self.valuation(r)
            x = RatFunc.var(self.field)
            return self.residue(r * x**v)
        num, a = self._strip(r.num)
        den, b = self._strip(r.den)
        return self._eval_at_rho(num) / self._eval_at_rho(den)

    def _strip(self, f: FFPoly) -> tuple[FFPoly, int]:
        v = 0
        while True:
            q, rem = divmod(f, self.poly)
            if not rem.is_zero():
                return f, v
            v += 1
            f = q

    def lift(self, alpha: FFElem) -> RatFunc:
        """A rational function (in fact a polynomial of degree < deg P, or a
        constant at infinity) whose residue is alpha."""
        res = self.residue_field()
        if alpha.field != res:
            raise ValueError("element not in the residue field of this place")
        if self.poly is None or self.degree() == 1:
            # residue field is GF(q) itself; invert the prime-subfield mix
            if res == self.field:
                return RatFunc.const(self.field, alpha)
            raise TowerlabError("degree-1 place with unexpected residue field")
        d = self.degree()
        k = self.field.k
        if k == 1:
            # quotient representation: digits of alpha are the coefficients
            return RatFunc(FFPoly(self.field, list(alpha.rep)))
        if self._lift_cols is None:
            self.residue_field()
            cols = []
            for i in range(d):
                rho_i = self._rho**i
                for b in range(k):
                    basis_elem = embed(self.field.elem([0] * b + [1]), res)
                    cols.append(list((basis_elem * rho_i).rep))
            self._lift_cols = cols
        sol = gfp_solve(self.field.p, self._lift_cols, list(alpha.rep))
        coeffs = []
        for i in range(d):
            coeffs.append(self.field.elem(sol[i * k : (i + 1) * k]))
        return RatFunc(FFPoly(self.field, coeffs))

    # -- identity / display --------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, RatPlace)
            and other.field == self.field
            and other.poly == self.poly
        )

    def __hash__(self):
        return hash((self.field, self.poly))

    def sort_key(self):
        if self.poly is None:
            return (1, ())
        return (0, self.poly.sort_key())

    def __repr__(self):
        if self.poly is None:
            return "place(infinity)"
        return f"place({self.poly.to_str()})"


def valuation(r: RatFunc, place: RatPlace):
    return place.valuation(r)


def residue(r: RatFunc, place: RatPlace) -> FFElem:
    return place.residue(r)


def place_degree(place: RatPlace) -> int:
    return place.degree()


def finite_places_of_degree(field: FiniteField, d: int) -> list[RatPlace]:
    """All finite places of degree d, i.e. monic irreducibles of degree d,
    in increasing coefficient-encoding order."""
    out = []
    for v in range(field.order**d):
        digits = []
        w = v
        for _ in range(d):
            digits.append(field.elem(w % field.order))
            w //= field.order
        cand = FFPoly(field, digits + [field.one()])
        if is_irreducible(cand):
            out.append(RatPlace.finite(cand))
    return out
