"""Exact arithmetic in GF(p^k), dense univariate polynomials over it, and
bivariate polynomials F(x, y) used as defining equations of function fields.

Representation choices, fixed once so every artifact downstream is
deterministic:

* A field GF(p^k) is realized as GF(p)[t]/(modulus) where modulus is the
  monic irreducible of degree k whose coefficient vector, read as a base-p
  integer with the constant term least significant, is smallest.
* An element is a coefficient vector (c_0, ..., c_{k-1}) in that basis; its
  integer encoding is sum(c_i * p^i).  All orderings and reprs derive from
  that encoding.
* Factorization is Cantor-Zassenhaus with an explicit RNG seed; the same
  (polynomial, seed) pair always yields the same factor list, sorted by
  (degree, coefficient encoding).
"""

from __future__ import annotations

import random
from functools import lru_cache

from .errors import TowerlabError

#: Default seed for the equal-degree splitting RNG.  Callers may override it
#: per call; the CLI maps the TOWERLAB_SEED environment variable onto it.
FACTOR_SEED = 0x7F4A91


class NotPrime(TowerlabError):
    """Raised when a field constructor receives a composite characteristic."""


class NoEmbedding(TowerlabError):
    """Raised when no field homomorphism exists (different p, or k1 does not
    divide k2)."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class FiniteField:
    """The field GF(p^k).  Construct via make_field, which canonicalizes the
    modulus and caches instances."""

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        self.p = p
        self.k = k
        self.order = p**k
        self.modulus = modulus  # length k+1, monic
        # t^j mod modulus for j in [k, 2k-2], needed to fold products back
        # into degree < k.
        self._red: list[tuple[int, ...]] = []
        if k > 1:
            cur = list(modulus[:k])
            cur = [(-c) % p for c in cur]  # t^k = -(lower part)
            self._red.append(tuple(cur))
            for _ in range(k - 2):
                nxt = [0] + cur[: k - 1]
                top = cur[k - 1]
                if top:
                    for i in range(k):
                        nxt[i] = (nxt[i] - top * modulus[i]) % p
                cur = nxt
                self._red.append(tuple(cur))
        self._embed_roots: dict[tuple[int, int], FFElem] = {}
        self._zero = FFElem(self, (0,) * k)
        self._one = FFElem(self, (1,) + (0,) * (k - 1))

    # -- element construction -------------------------------------------------

    def elem(self, value) -> FFElem:
        """Coerce an int (base-p digit encoding) or coefficient sequence."""
        if isinstance(value, FFElem):
            if value.field is not self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, int):
            v = value % self.order
            digits = []
            for _ in range(self.k):
                digits.append(v % self.p)
                v //= self.p
            return FFElem(self, tuple(digits))
        rep = tuple(int(c) % self.p for c in value)
        if len(rep) > self.k:
            raise ValueError("coefficient vector longer than field degree")
        rep = rep + (0,) * (self.k - len(rep))
        return FFElem(self, rep)

    def zero(self) -> FFElem:
        return self._zero

    def one(self) -> FFElem:
        return self._one

    def gen(self) -> FFElem:
        """The class of t (only meaningful for k > 1)."""
        return self.elem([0, 1]) if self.k > 1 else self._one

    def elements(self):
        for v in range(self.order):
            yield self.elem(v)

    # -- raw tuple arithmetic --------------------------------------------------

    def _add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def _sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def _neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def _mul(self, a, b):
        p, k = self.p, self.k
        if k == 1:
            return ((a[0] * b[0]) % p,)
        conv = [0] * (2 * k - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        out = [c % p for c in conv[:k]]
        for j in range(k, 2 * k - 1):
            cj = conv[j] % p
            if cj:
                red = self._red[j - k]
                for i in range(k):
                    out[i] = (out[i] + cj * red[i]) % p
        return tuple(out)

    def _inv(self, a):
        if all(c == 0 for c in a):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        if self.k == 1:
            return (pow(a[0], self.p - 2, self.p),)
        # order is small throughout this library; a^(order-2) is fast enough
        result = self._one.rep
        base = a
        e = self.order - 2
        while e:
            if e & 1:
                result = self._mul(result, base)
            base = self._mul(base, base)
            e >>= 1
        return result

    def __eq__(self, other):
        return (
            isinstance(other, FiniteField)
            and self.p == other.p
            and self.k == other.k
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return f"GF({self.order})"


class FFElem:
    """An element of a FiniteField; immutable coefficient vector."""

    __slots__ = ("field", "rep")

    def __init__(self, field: FiniteField, rep: tuple[int, ...]):
        self.field = field
        self.rep = rep

    def _check(self, other) -> "FFElem":
        if isinstance(other, int):
            return self.field.elem(other % self.field.p)
        if not isinstance(other, FFElem):
            return NotImplemented
        if other.field != self.field:
            raise ValueError("mixed-field arithmetic; embed explicitly")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return FFElem(self.field, self.field._add(self.rep, other.rep))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return FFElem(self.field, self.field._sub(self.rep, other.rep))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return FFElem(self.field, self.field._neg(self.rep))

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return FFElem(self.field, self.field._mul(self.rep, other.rep))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return FFElem(self.field, self.field._mul(self.rep, self.field._inv(other.rep)))

    def __rtruediv__(self, other):
        return self.inverse() * other

    def inverse(self) -> "FFElem":
        return FFElem(self.field, self.field._inv(self.rep))

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field._one.rep
        base = self.rep
        while n:
            if n & 1:
                result = self.field._mul(result, base)
            base = self.field._mul(base, base)
            n >>= 1
        return FFElem(self.field, result)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.rep)

    def to_int(self) -> int:
        v = 0
        for c in reversed(self.rep):
            v = v * self.field.p + c
        return v

    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.field.elem(other % self.field.p)
        return (
            isinstance(other, FFElem)
            and other.field == self.field
            and other.rep == self.rep
        )

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.rep))

    def __repr__(self):
        if self.field.k == 1:
            return str(self.rep[0])
        terms = []
        for i in range(self.field.k - 1, -1, -1):
            c = self.rep[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                head = "" if c == 1 else str(c) + "*"
                terms.append(head + ("g" if i == 1 else f"g^{i}"))
        return " + ".join(terms) if terms else "0"


@lru_cache(maxsize=None)
def make_field(p: int, k: int = 1) -> FiniteField:
    """GF(p^k) with the canonical smallest modulus (see module docstring)."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    if k == 1:
        return FiniteField(p, 1, (0, 1))
    base = make_field(p, 1)
    for v in range(p**k):
        digits = []
        w = v
        for _ in range(k):
            digits.append(w % p)
            w //= p
        cand = FFPoly(base, [base.elem(c) for c in digits] + [base.one()])
        if is_irreducible(cand):
            return FiniteField(p, k, tuple(digits) + (1,))
    raise TowerlabError("no irreducible modulus found")  # unreachable


def embed(e: FFElem, target: FiniteField) -> FFElem:
    """The canonical embedding GF(p^k) -> GF(p^K) for k | K, sending the
    source generator to the smallest root of the source modulus in target."""
    src = e.field
    if src == target:
        return e
    if src.p != target.p or target.k % src.k != 0:
        raise NoEmbedding(f"no embedding {src!r} -> {target!r}")
    if src.k == 1:
        # prime subfield: the unique ring hom, 1 -> 1
        return FFElem(target, (e.rep[0],) + (0,) * (target.k - 1))
    key = (src.p, src.k, src.modulus)
    root = target._embed_roots.get(key)
    if root is None:
        prime = make_field(src.p, 1)
        mod_poly = FFPoly(prime, [prime.elem(c) for c in src.modulus])
        rts = roots_in_field(mod_poly, target)
        if not rts:
            raise NoEmbedding(f"modulus of {src!r} has no root in {target!r}")
        root = rts[0]
        target._embed_roots[key] = root
    acc = target.zero()
    for c in reversed(e.rep):
        acc = acc * root + target.elem(c)
    return acc


def qth_root(b: FFElem, q: int) -> FFElem:
    """The unique c with c^q = b, for q = p^s a power of the characteristic.

    The Frobenius x -> x^p is bijective on a finite field, so the inverse of
    x -> x^q is x -> x^(p^t) with t = -s mod k.
    """
    field = b.field
    p = field.p
    s = 0
    qq = q
    while qq > 1:
        if qq % p != 0:
            raise ValueError(f"{q} is not a power of the characteristic {p}")
        qq //= p
        s += 1
    t = (-s) % field.k
    return b ** (p**t)


class FFPoly:
    """Dense univariate polynomial over a FiniteField.

    Coefficients are stored low-to-high and trailing zeros trimmed; the zero
    polynomial has an empty tuple and degree -1.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs):
        cs = [field.elem(c) if not isinstance(c, FFElem) else c for c in coeffs]
        for c in cs:
            if c.field != field:
                raise ValueError("coefficient from a different field")
        while cs and cs[-1].is_zero():
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    # -- basics ---------------------------------------------------------------

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> FFElem:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i: int) -> FFElem:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero()

    def monic(self) -> "FFPoly":
        if self.is_zero():
            return self
        inv = self.lc().inverse()
        return FFPoly(self.field, [c * inv for c in self.coeffs])

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == self.field.one()

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, FFPoly):
            if other.field != self.field:
                raise ValueError("mixed-field polynomial arithmetic")
            return other
        if isinstance(other, (int, FFElem)):
            return FFPoly(self.field, [other])
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return FFPoly(
            self.field, [self.coeff(i) + other.coeff(i) for i in range(n)]
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return FFPoly(
            self.field, [self.coeff(i) - other.coeff(i) for i in range(n)]
        )

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return FFPoly(self.field, [-c for c in self.coeffs])

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return FFPoly(self.field, [])
        out = [self.field.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return FFPoly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = FFPoly(self.field, [self.field.one()])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return FFPoly(self.field, []), self
        q = [self.field.zero()] * (dq + 1)
        inv_lc = other.lc().inverse()
        for i in range(dq, -1, -1):
            top = rem[i + other.degree()]
            if top.is_zero():
                continue
            factor = top * inv_lc
            q[i] = factor
            for j, b in enumerate(other.coeffs):
                rem[i + j] = rem[i + j] - factor * b
        return FFPoly(self.field, q), FFPoly(self.field, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "FFPoly") -> "FFPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError("division was not exact")
        return q

    def shift(self, n: int) -> "FFPoly":
        """Multiply by x^n."""
        if self.is_zero():
            return self
        return FFPoly(self.field, (self.field.zero(),) * n + self.coeffs)

    def derivative(self) -> "FFPoly":
        # i must act as i*1 in the field; raw ints coerce via digit encoding,
        # which differs from reduction mod p once i >= p on extension fields.
        return FFPoly(
            self.field,
            [self.coeff(i) * (i % self.field.p) for i in range(1, len(self.coeffs))],
        )

    def eval(self, x: FFElem) -> FFElem:
        """Horner evaluation; coefficients are embedded if x lives in an
        extension of the coefficient field."""
        if x.field != self.field:
            acc = x.field.zero()
            for c in reversed(self.coeffs):
                acc = acc * x + embed(c, x.field)
            return acc
        acc = self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def map_field(self, target: FiniteField) -> "FFPoly":
        return FFPoly(target, [embed(c, target) for c in self.coeffs])

    # -- ordering / display -----------------------------------------------------

    def sort_key(self):
        return (self.degree(), tuple(c.to_int() for c in self.coeffs))

    def __eq__(self, other):
        return (
            isinstance(other, FFPoly)
            and other.field == self.field
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def to_str(self, var: str = "x") -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.degree(), -1, -1):
            c = self.coeff(i)
            if c.is_zero():
                continue
            cs = repr(c)
            if self.field.k > 1 and ("+" in cs or "*" in cs or "^" in cs):
                cs = "(" + cs + ")"
            if i == 0:
                terms.append(cs)
            else:
                xs = var if i == 1 else f"{var}^{i}"
                terms.append(xs if cs == "1" else f"{cs}*{xs}")
        return " + ".join(terms)

    def __repr__(self):
        return self.to_str()


# -- gcd / derivative helpers ------------------------------------------------


def poly_gcd(f: FFPoly, g: FFPoly) -> FFPoly:
    """Monic gcd via the Euclidean algorithm."""
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def poly_derivative(f: FFPoly) -> FFPoly:
    return f.derivative()


def _pow_mod(base: FFPoly, e: int, mod: FFPoly) -> FFPoly:
    result = FFPoly(base.field, [base.field.one()])
    base = base % mod
    while e:
        if e & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        e >>= 1
    return result


def is_irreducible(f: FFPoly) -> bool:
    """Rabin's deterministic test: x^(Q^n) = x mod f and, for each prime
    divisor l of n, gcd(x^(Q^(n/l)) - x, f) = 1."""
    n = f.degree()
    if n <= 0:
        return False
    if n == 1:
        return True
    field = f.field
    Q = field.order
    x = FFPoly(field, [field.zero(), field.one()])
    fm = f.monic()
    prime_divs = []
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            prime_divs.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        prime_divs.append(m)
    for l in prime_divs:
        h = _pow_mod(x, Q ** (n // l), fm)
        if not poly_gcd(h - x, fm).is_one():
            return False
    h = _pow_mod(x, Q**n, fm)
    return ((h - x) % fm).is_zero()


def _pth_root_poly(f: FFPoly) -> FFPoly:
    """Inverse of x -> x^p on polynomials: f must satisfy f = g(x^p)."""
    p = f.field.p
    out = []
    for i in range(0, f.degree() + 1, p):
        out.append(qth_root(f.coeff(i), p))
    return FFPoly(f.field, out)


def _squarefree_decomposition(f: FFPoly) -> list[tuple[int, FFPoly]]:
    """[(m_i, g_i)] with f = prod g_i^{m_i}, each g_i squarefree, m_i distinct."""
    p = f.field.p
    out: dict[int, FFPoly] = {}
    e = 1
    f = f.monic()
    while f.degree() > 0:
        fp = f.derivative()
        if fp.is_zero():
            f = _pth_root_poly(f)
            e *= p
            continue
        g = poly_gcd(f, fp)
        w = f.exact_div(g)
        i = 1
        while not w.is_one():
            y = poly_gcd(w, g)
            z = w.exact_div(y)
            if not z.is_one():
                key = i * e
                out[key] = out.get(key, FFPoly(f.field, [1])) * z
                out[key] = out[key].monic()
            w = y
            g = g.exact_div(y)
            i += 1
        if g.degree() > 0:
            f = _pth_root_poly(g)
            e *= p
        else:
            break
    return sorted(out.items(), key=lambda kv: kv[0])


def _distinct_degree(f: FFPoly) -> list[tuple[FFPoly, int]]:
    """Split squarefree monic f into products of irreducibles of equal degree."""
    field = f.field
    Q = field.order
    x = FFPoly(field, [field.zero(), field.one()])
    out = []
    h = x
    rem = f
    d = 0
    while rem.degree() > 0:
        d += 1
        if 2 * d > rem.degree():
            out.append((rem, rem.degree()))
            break
        h = _pow_mod(h, Q, rem)
        g = poly_gcd(h - x, rem)
        if g.degree() > 0:
            out.append((g, d))
            rem = rem.exact_div(g)
            h = h % rem
    return out


def _equal_degree_split(f: FFPoly, d: int, rng: random.Random) -> list[FFPoly]:
    """Cantor-Zassenhaus splitting of a product of degree-d irreducibles."""
    field = f.field
    if f.degree() == d:
        return [f.monic()]
    Q = field.order
    n = f.degree()
    while True:
        r = FFPoly(field, [field.elem(rng.randrange(Q)) for _ in range(n)])
        if r.degree() < 1:
            continue
        if field.p == 2:
            # trace map sum r^(2^i) splits in characteristic 2
            t = r % f
            acc = t
            for _ in range(field.k * d - 1):
                t = (t * t) % f
                acc = (acc + t) % f
            g = poly_gcd(acc, f)
        else:
            t = _pow_mod(r, (Q**d - 1) // 2, f)
            g = poly_gcd(t - 1, f)
        if 0 < g.degree() < n:
            left = _equal_degree_split(g, d, rng)
            right = _equal_degree_split(f.exact_div(g), d, rng)
            return left + right


def poly_factor(f: FFPoly, seed: int | None = None) -> list[tuple[FFPoly, int]]:
    """Monic irreducible factors of f with multiplicities, deterministically
    sorted by (degree, coefficient encoding).  The leading coefficient is
    dropped: f = lc(f) * prod factor^mult.

    seed defaults to the module-level FACTOR_SEED, resolved at call time so
    the CLI can override it process-wide (TOWERLAB_SEED)."""
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if f.degree() == 0:
        return []
    rng = random.Random(FACTOR_SEED if seed is None else seed)
    out = []
    for mult, g in _squarefree_decomposition(f):
        for prod, d in _distinct_degree(g):
            for irr in _equal_degree_split(prod, d, rng):
                out.append((irr, mult))
    out.sort(key=lambda fm: fm[0].sort_key())
    return out


def roots_in_field(f: FFPoly, target: FiniteField | None = None) -> list[FFElem]:
    """Roots of f in target (default: its own coefficient field), sorted by
    integer encoding.  Multiplicities are discarded."""
    target = target or f.field
    g = f if target == f.field else f.map_field(target)
    if g.is_zero():
        raise ValueError("every element is a root of the zero polynomial")
    roots = []
    for irr, _ in poly_factor(g):
        if irr.degree() == 1:
            roots.append(-irr.coeff(0) / irr.coeff(1))
    roots.sort(key=lambda r: r.to_int())
    return roots


def gfp_solve(p: int, columns: list[list[int]], rhs: list[int]) -> list[int]:
    """Solve sum_j c_j * columns[j] = rhs over GF(p) for the unique c.

    Used to invert "evaluate at a root" maps when expressing an extension
    field element over a subfield basis.  Raises ValueError if the columns
    are not a basis.
    """
    n = len(rhs)
    if len(columns) != n:
        raise ValueError("need a square system")
    # augmented matrix, rows indexed by vector component
    rows = [[columns[j][i] % p for j in range(n)] + [rhs[i] % p] for i in range(n)]
    piv_cols = []
    r = 0
    for c in range(n):
        sel = None
        for rr in range(r, n):
            if rows[rr][c] % p:
                sel = rr
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [(v * inv) % p for v in rows[r]]
        for rr in range(n):
            if rr != r and rows[rr][c]:
                f = rows[rr][c]
                rows[rr] = [(a - f * b) % p for a, b in zip(rows[rr], rows[r])]
        piv_cols.append(c)
        r += 1
    if r < n:
        raise ValueError("singular system: columns are not a basis")
    out = [0] * n
    for i, c in enumerate(piv_cols):
        out[c] = rows[i][n]
    return out


# -- bivariate layer -----------------------------------------------------------


class BivarPoly:
    """F(x, y) over GF(q), stored as a tuple of x-polynomials indexed by the
    power of y."""

    __slots__ = ("field", "ycoeffs")

    def __init__(self, field: FiniteField, ycoeffs):
        cs = list(ycoeffs)
        for i, c in enumerate(cs):
            if not isinstance(c, FFPoly):
                cs[i] = FFPoly(field, c)
            elif c.field != field:
                raise ValueError("coefficient from a different field")
        while cs and cs[-1].is_zero():
            cs.pop()
        self.field = field
        self.ycoeffs = tuple(cs)

    @classmethod
    def from_coeff_dict(cls, field: FiniteField, d: dict) -> "BivarPoly":
        """Build from {(i, j): scalar} with i the x-power and j the y-power."""
        if not d:
            return cls(field, [])
        max_j = max(j for (_, j) in d)
        cols = [dict() for _ in range(max_j + 1)]
        for (i, j), c in d.items():
            cols[j][i] = c
        ycoeffs = []
        for col in cols:
            n = max(col) + 1 if col else 0
            ycoeffs.append(FFPoly(field, [col.get(i, 0) for i in range(n)]))
        return cls(field, ycoeffs)

    def deg_y(self) -> int:
        return len(self.ycoeffs) - 1

    def deg_x(self) -> int:
        return max((c.degree() for c in self.ycoeffs), default=-1)

    def is_zero(self) -> bool:
        return not self.ycoeffs

    def ycoeff(self, j: int) -> FFPoly:
        if 0 <= j < len(self.ycoeffs):
            return self.ycoeffs[j]
        return FFPoly(self.field, [])

    def coeff(self, i: int, j: int) -> FFElem:
        return self.ycoeff(j).coeff(i)

    def lc_y(self) -> FFPoly:
        """Leading coefficient as a polynomial in y: the x-polynomial on the
        top power of y."""
        if self.is_zero():
            raise ValueError("zero polynomial")
        return self.ycoeffs[-1]

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n = max(len(self.ycoeffs), len(other.ycoeffs))
        return BivarPoly(self.field, [self.ycoeff(j) + other.ycoeff(j) for j in range(n)])

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n = max(len(self.ycoeffs), len(other.ycoeffs))
        return BivarPoly(self.field, [self.ycoeff(j) - other.ycoeff(j) for j in range(n)])

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return BivarPoly(self.field, [-c for c in self.ycoeffs])

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return BivarPoly(self.field, [])
        out = [FFPoly(self.field, [])] * (len(self.ycoeffs) + len(other.ycoeffs) - 1)
        for i, a in enumerate(self.ycoeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.ycoeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return BivarPoly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = BivarPoly(self.field, [FFPoly(self.field, [1])])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def _coerce(self, other):
        if isinstance(other, BivarPoly):
            if other.field != self.field:
                raise ValueError("mixed-field arithmetic")
            return other
        if isinstance(other, FFPoly):
            return BivarPoly(self.field, [other])
        if isinstance(other, (int, FFElem)):
            return BivarPoly(self.field, [FFPoly(self.field, [other])])
        return None

    def swap_xy(self) -> "BivarPoly":
        d = {}
        for j, c in enumerate(self.ycoeffs):
            for i in range(c.degree() + 1):
                if not c.coeff(i).is_zero():
                    d[(j, i)] = c.coeff(i)
        return BivarPoly.from_coeff_dict(self.field, d)

    def derivative_y(self) -> "BivarPoly":
        # j % p, not j: int coercion is digit encoding, not reduction mod p.
        return BivarPoly(
            self.field,
            [self.ycoeff(j) * (j % self.field.p) for j in range(1, len(self.ycoeffs))],
        )

    def eval_x(self, xi: FFElem) -> FFPoly:
        """Specialize x := xi (possibly in an extension); returns a polynomial
        in y over xi's field."""
        return FFPoly(xi.field, [c.eval(xi) for c in self.ycoeffs])

    def eval_y(self, eta: FFElem) -> FFPoly:
        return self.swap_xy().eval_x(eta)

    def map_field(self, target: FiniteField) -> "BivarPoly":
        return BivarPoly(target, [c.map_field(target) for c in self.ycoeffs])

    def __eq__(self, other):
        return (
            isinstance(other, BivarPoly)
            and other.field == self.field
            and other.ycoeffs == self.ycoeffs
        )

    def __hash__(self):
        return hash((self.field, self.ycoeffs))

    def sort_key(self):
        return (self.deg_y(), tuple(c.sort_key() for c in self.ycoeffs))

    def to_str(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for j in range(self.deg_y(), -1, -1):
            c = self.ycoeff(j)
            if c.is_zero():
                continue
            cs = c.to_str("x")
            if j == 0:
                terms.append(cs if c.degree() <= 0 or "+" not in cs else "(" + cs + ")")
                continue
            ys = "y" if j == 1 else f"y^{j}"
            if cs == "1":
                terms.append(ys)
            elif "+" in cs:
                terms.append(f"({cs})*{ys}")
            else:
                terms.append(f"{cs}*{ys}")
        return " + ".join(terms)

    def __repr__(self):
        return self.to_str()


def resultant_y(F: BivarPoly, G: BivarPoly) -> FFPoly:
    """Res_y(F, G) as a polynomial in x, via fraction-free (Bareiss)
    elimination of the Sylvester matrix.  With F of y-degree m and roots
    theta_i over an algebraic closure of GF(q)(x),

        Res_y(F, G) = lc_y(F)^deg(G) * prod_i G(x, theta_i).
    """
    if F.is_zero() or G.is_zero():
        raise ValueError("resultant of the zero polynomial")
    field = F.field
    m, n = F.deg_y(), G.deg_y()
    if m == 0 and n == 0:
        return FFPoly(field, [1])
    if m == 0:
        return F.ycoeff(0) ** n
    if n == 0:
        return G.ycoeff(0) ** m
    N = m + n
    rows = []
    frow = [F.ycoeff(m - i) for i in range(m + 1)]
    grow = [G.ycoeff(n - i) for i in range(n + 1)]
    zero = FFPoly(field, [])
    for r in range(n):
        rows.append([zero] * r + frow + [zero] * (n - 1 - r))
    for r in range(m):
        rows.append([zero] * r + grow + [zero] * (m - 1 - r))
    sign = 1
    prev = FFPoly(field, [1])
    for col in range(N - 1):
        pivot = None
        for r in range(col, N):
            if not rows[r][col].is_zero():
                pivot = r
                break
        if pivot is None:
            return zero
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            sign = -sign
        for r in range(col + 1, N):
            for c in range(col + 1, N):
                num = rows[col][col] * rows[r][c] - rows[r][col] * rows[col][c]
                rows[r][c] = num.exact_div(prev)
            rows[r][col] = zero
        prev = rows[col][col]
    det = rows[N - 1][N - 1]
    return det if sign == 1 else -det
