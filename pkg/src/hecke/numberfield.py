"""Exact arithmetic in Q and in the nine imaginary quadratic fields of
class number one.

A field is K = Q (tag d=0) or K = Q(sqrt(-d)) for
d in {1, 2, 3, 7, 11, 19, 43, 67, 163}.  Its ring of integers is
O = Z + Z*omega with omega = sqrt(-d) when -d = 2, 3 (mod 4) and
omega = (1 + sqrt(-d))/2 when -d = 1 (mod 4); in both cases omega
satisfies omega^2 = t*omega - n with t in {0, 1}.  Every element is
stored as a pair of exact rationals over the basis (1, omega), so all
ring operations, norms, residue systems, gcds and factorizations here
are exact.  Because the class number is one every ideal is principal,
which is what makes the generator searches below terminate.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import floor, gcd as _int_gcd, isqrt

from .errors import UnsupportedFieldError

SUPPORTED_D = (0, 1, 2, 3, 7, 11, 19, 43, 67, 163)

_TRIAL_BOUND = 10 ** 6


# ---------------------------------------------------------------------------
# rational integer helpers


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic Miller-Rabin witnesses for n < 3.3 * 10^24
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """A nontrivial factor of composite odd n."""
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = _int_gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError(f"rho failed on {n}")


def factor_int(n: int) -> dict[int, int]:
    """Prime factorization of |n| as {p: exponent}; n must be nonzero."""
    if n == 0:
        raise ValueError("cannot factor 0")
    n = abs(n)
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while f * f <= n and f <= _TRIAL_BOUND:
        if n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        else:
            f += wheel[i]
            i = (i + 1) % 8
    if n > 1:
        stack = [n]
        while stack:
            m = stack.pop()
            if _is_probable_prime(m):
                out[m] = out.get(m, 0) + 1
            else:
                d = _pollard_rho(m)
                stack.extend((d, m // d))
    return out


def kronecker_symbol(a: int, n: int) -> int:
    """The Kronecker symbol (a|n), extending the Jacobi symbol to all
    integers n."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -1
    twos = 0
    while n % 2 == 0:
        n //= 2
        twos += 1
    if twos:
        if a % 2 == 0:
            return 0
        if twos % 2 == 1 and a % 8 in (3, 5):
            sign = -sign
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                sign = -sign
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a %= n
    return sign if n == 1 else 0


# ---------------------------------------------------------------------------
# field contexts


class FieldCtx:
    """Arithmetic context for one supported field.

    Attributes:
        d: the tag (0 for Q, otherwise K = Q(sqrt(-d))).
        t, n: integers with omega^2 = t*omega - n (unused for d=0).
        discriminant: field discriminant (1 for Q).
        units: tuple of the roots of unity in O.
        delta: generator sqrt(discriminant) of the different (1 for Q).
    """

    __slots__ = ("d", "t", "n", "discriminant", "is_rational", "units",
                 "delta", "omega", "zero", "one")

    def __init__(self, d: int):
        if d not in SUPPORTED_D:
            raise UnsupportedFieldError(
                f"d={d} is not 0 or a class-number-one value "
                f"{SUPPORTED_D[1:]}")
        self.d = d
        self.is_rational = d == 0
        if d == 0:
            self.t, self.n = 0, 0
            self.discriminant = 1
        elif d % 4 == 3:
            self.t, self.n = 1, (1 + d) // 4
            self.discriminant = -d
        else:
            self.t, self.n = 0, d
            self.discriminant = -4 * d
        self.zero = FieldElem(self, Fraction(0), Fraction(0))
        self.one = FieldElem(self, Fraction(1), Fraction(0))
        if d == 0:
            self.omega = self.zero
            self.delta = self.one
            self.units = (self.one, -self.one)
        else:
            self.omega = FieldElem(self, Fraction(0), Fraction(1))
            if self.t == 0:
                self.delta = FieldElem(self, Fraction(0), Fraction(2))
            else:
                self.delta = FieldElem(self, Fraction(-1), Fraction(2))
            if d == 1:
                coords = [(1, 0), (-1, 0), (0, 1), (0, -1)]
            elif d == 3:
                coords = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)]
            else:
                coords = [(1, 0), (-1, 0)]
            self.units = tuple(
                FieldElem(self, Fraction(a), Fraction(b)) for a, b in coords)

    def elem(self, c0, c1=0) -> FieldElem:
        return FieldElem(self, Fraction(c0), Fraction(c1))

    @property
    def tag(self) -> str:
        return "Q" if self.d == 0 else f"d{self.d}"

    def __repr__(self):
        return f"FieldCtx({self.tag})"

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and other.d == self.d

    def __hash__(self):
        return hash(("FieldCtx", self.d))


@lru_cache(maxsize=None)
def make_ctx(d: int) -> FieldCtx:
    return FieldCtx(d)


def ctx_from_tag(tag: str) -> FieldCtx:
    """Resolve a field tag: 'Q' (or 'q', 'd0') or 'd<k>'."""
    s = tag.strip()
    if s.lower() in ("q", "d0", "0"):
        return make_ctx(0)
    if s.startswith("d") and s[1:].isdigit():
        return make_ctx(int(s[1:]))
    if s.isdigit():
        return make_ctx(int(s))
    raise UnsupportedFieldError(f"cannot parse field tag {tag!r}")


# ---------------------------------------------------------------------------
# field elements


class FieldElem:
    """An element c0 + c1*omega of K with exact rational coordinates."""

    __slots__ = ("ctx", "c0", "c1")

    def __init__(self, ctx: FieldCtx, c0: Fraction, c1: Fraction = Fraction(0)):
        if ctx.is_rational and c1:
            raise ValueError("rational field has no omega component")
        self.ctx = ctx
        self.c0 = c0
        self.c1 = c1

    # -- basic ring structure

    def _coerce(self, other) -> "FieldElem | None":
        if isinstance(other, FieldElem):
            if other.ctx != self.ctx:
                raise ValueError("elements from different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElem(self.ctx, Fraction(other))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElem(self.ctx, self.c0 + o.c0, self.c1 + o.c1)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElem(self.ctx, self.c0 - o.c0, self.c1 - o.c1)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return FieldElem(self.ctx, -self.c0, -self.c1)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a0, a1, b0, b1 = self.c0, self.c1, o.c0, o.c1
        if self.ctx.is_rational:
            return FieldElem(self.ctx, a0 * b0)
        cross = a1 * b1
        return FieldElem(self.ctx,
                         a0 * b0 - self.ctx.n * cross,
                         a0 * b1 + a1 * b0 + self.ctx.t * cross)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero:
            raise ZeroDivisionError("division by zero field element")
        if self.ctx.is_rational:
            return FieldElem(self.ctx, self.c0 / o.c0)
        return self * o.conj() * FieldElem(self.ctx, 1 / o.field_norm())

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.c1 == 0 and self.c0 == other
        return (isinstance(other, FieldElem) and other.ctx == self.ctx
                and other.c0 == self.c0 and other.c1 == self.c1)

    def __hash__(self):
        # Hashing the integer decomposition is much cheaper than hashing
        # Fraction objects (whose hash needs a modular inverse).
        c0, c1 = self.c0, self.c1
        return hash((self.ctx.d, c0.numerator, c0.denominator,
                     c1.numerator, c1.denominator))

    # -- field-theoretic maps

    def conj(self) -> "FieldElem":
        """Complex conjugate (identity on Q)."""
        if self.ctx.is_rational:
            return self
        return FieldElem(self.ctx, self.c0 + self.ctx.t * self.c1, -self.c1)

    def field_norm(self) -> Fraction:
        """N_{K/Q} as a signed rational (equals the element itself on Q)."""
        if self.ctx.is_rational:
            return self.c0
        return (self.c0 * self.c0 + self.ctx.t * self.c0 * self.c1
                + self.ctx.n * self.c1 * self.c1)

    def norm(self) -> Fraction:
        """The absolute norm |N_{K/Q}|; for integral x this is |O/xO|."""
        return abs(self.field_norm())

    def trace(self) -> Fraction:
        if self.ctx.is_rational:
            return self.c0
        return 2 * self.c0 + self.ctx.t * self.c1

    # -- predicates

    @property
    def is_zero(self) -> bool:
        return not self.c0 and not self.c1

    @property
    def is_integral(self) -> bool:
        return self.c0.denominator == 1 and self.c1.denominator == 1

    @property
    def is_unit(self) -> bool:
        return self.is_integral and self.norm() == 1

    def __repr__(self):
        return f"<{format_element(self)} ({self.ctx.tag})>"


# ---------------------------------------------------------------------------
# text syntax: "p/q + r/s*w"


def format_element(x: FieldElem) -> str:
    def rat(q: Fraction) -> str:
        return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"

    if x.c1 == 0:
        return rat(x.c0)
    wpart = "w" if abs(x.c1) == 1 else f"{rat(abs(x.c1))}*w"
    if x.c1 < 0:
        wpart = "-" + wpart
    if x.c0 == 0:
        return wpart
    sep = " - " if x.c1 < 0 else " + "
    return rat(x.c0) + sep + wpart.lstrip("-")


def parse_element(text: str, ctx: FieldCtx) -> FieldElem:
    """Parse "p/q + r/s*w" (either part optional, signs allowed)."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty element")
    # split into signed terms
    terms: list[str] = []
    cur = ""
    for i, ch in enumerate(s):
        if ch in "+-" and i > 0 and s[i - 1] not in "+-*/":
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    terms.append(cur)
    c0 = Fraction(0)
    c1 = Fraction(0)
    for term in terms:
        if not term or term in "+-":
            raise ValueError(f"bad element syntax {text!r}")
        sign = 1
        while term and term[0] in "+-":
            if term[0] == "-":
                sign = -sign
            term = term[1:]
        if term.endswith("w"):
            body = term[:-1].rstrip("*")
            coeff = Fraction(body) if body else Fraction(1)
            c1 += sign * coeff
        else:
            c0 += sign * Fraction(term)
    if ctx.is_rational and c1:
        raise ValueError(f"{text!r} has an omega part but the field is Q")
    return FieldElem(ctx, c0, c1)


# ---------------------------------------------------------------------------
# canonical generators


def _assoc_key(x: FieldElem):
    if x.c0 > 0:
        rank = 0
    elif x.c0 == 0 and x.c1 > 0:
        rank = 1
    else:
        rank = 2
    return (rank, x.c0, abs(x.c1), x.c1)


@lru_cache(maxsize=None)
def canonical_generator(x: FieldElem) -> FieldElem:
    """The canonical representative of the associate class x*O^*.

    Deterministic: the associate minimizing a fixed sign-then-lex key.
    Sends every unit to 1 and fixes 0.
    """
    if x.is_zero:
        return x
    return min((u * x for u in x.ctx.units), key=_assoc_key)


@dataclass(frozen=True)
class PrincipalIdeal:
    """A principal (fractional) ideal, stored by canonical generator."""

    gen: FieldElem
    norm: "int | Fraction"

    @staticmethod
    def of(x: FieldElem) -> "PrincipalIdeal":
        if x.is_zero:
            raise ValueError("zero ideal not supported")
        g = canonical_generator(x)
        nrm = g.norm()
        return PrincipalIdeal(g, int(nrm) if g.is_integral else nrm)

    @property
    def ctx(self) -> FieldCtx:
        return self.gen.ctx

    def __mul__(self, other: "PrincipalIdeal") -> "PrincipalIdeal":
        return PrincipalIdeal.of(self.gen * other.gen)

    def divides(self, other: "PrincipalIdeal") -> bool:
        return divide_exact(other.gen, self.gen) is not None

    def __repr__(self):
        return f"({format_element(self.gen)})"


def divide_exact(x: FieldElem, y: FieldElem) -> FieldElem | None:
    """x/y if y divides x in O (inputs integral), else None."""
    if y.is_zero:
        return None
    q = x / y
    return q if q.is_integral else None


# ---------------------------------------------------------------------------
# 2x2 Smith / Hermite forms


def _snf2(m: list[list[int]]):
    """Smith normal form of a nonsingular 2x2 integer matrix.

    Returns (uinv, (s1, s2)) where u*m*v = diag(s1, s2) for unimodular
    u, v and uinv is the inverse of u (v is not needed by callers).
    """
    m = [row[:] for row in m]
    uinv = [[1, 0], [0, 1]]

    def swap_rows():
        m[0], m[1] = m[1], m[0]
        for r in uinv:
            r[0], r[1] = r[1], r[0]

    def addmul_row(dst: int, src: int, k: int):
        # row_dst += k*row_src on m; uinv tracks the inverse column op
        m[dst][0] += k * m[src][0]
        m[dst][1] += k * m[src][1]
        for r in uinv:
            r[src] -= k * r[dst]

    def negate_row(i: int):
        m[i][0] = -m[i][0]
        m[i][1] = -m[i][1]
        for r in uinv:
            r[i] = -r[i]

    def swap_cols():
        m[0][0], m[0][1] = m[0][1], m[0][0]
        m[1][0], m[1][1] = m[1][1], m[1][0]

    def addmul_col(dst: int, src: int, k: int):
        m[0][dst] += k * m[0][src]
        m[1][dst] += k * m[1][src]

    while True:
        if m[0][0] == 0:
            if m[1][0] != 0:
                swap_rows()
            elif m[0][1] != 0:
                swap_cols()
            elif m[1][1] != 0:
                swap_rows()
                swap_cols()
            else:
                raise ValueError("singular matrix")
        while m[1][0] != 0:
            q = m[1][0] // m[0][0]
            addmul_row(1, 0, -q)
            if m[1][0] != 0:
                swap_rows()
        while m[0][1] != 0:
            q = m[0][1] // m[0][0]
            addmul_col(1, 0, -q)
            if m[0][1] != 0:
                swap_cols()
        if m[1][0] != 0 or m[0][1] != 0:
            continue
        if m[1][1] % m[0][0] != 0:
            addmul_row(0, 1, 1)
            continue
        break
    if m[0][0] < 0:
        negate_row(0)
    if m[1][1] < 0:
        negate_row(1)
    return uinv, (m[0][0], m[1][1])


def _mult_matrix(a: FieldElem) -> list[list[int]]:
    """Matrix of multiplication by integral a on the Z-basis (1, omega)."""
    a0, a1 = int(a.c0), int(a.c1)
    ctx = a.ctx
    return [[a0, -ctx.n * a1], [a1, a0 + ctx.t * a1]]


def reduce_mod(x: FieldElem, a: FieldElem) -> FieldElem:
    """Deterministic representative of x modulo the lattice a*O.

    Works for any nonzero a and any x; maps O into O when a is integral.
    """
    if a.is_zero:
        raise ZeroDivisionError("reduction modulo the zero ideal")
    q = x / a
    frac0 = q.c0 - (q.c0.numerator // q.c0.denominator)
    frac1 = q.c1 - (q.c1.numerator // q.c1.denominator)
    return a * FieldElem(a.ctx, frac0, frac1)


@lru_cache(maxsize=None)
def residues(a: FieldElem) -> tuple[FieldElem, ...]:
    """A transversal of O/aO, of size exactly norm(a).

    For quadratic fields the transversal comes from the Smith normal
    form of the multiplication-by-a matrix on the basis (1, omega).
    """
    if not a.is_integral or a.is_zero:
        raise ValueError("residues require a nonzero integral element")
    ctx = a.ctx
    if ctx.is_rational:
        m = int(a.norm())
        return tuple(ctx.elem(k) for k in range(m))
    uinv, (s1, s2) = _snf2(_mult_matrix(a))
    out = []
    for i in range(s1):
        for j in range(s2):
            v = FieldElem(ctx,
                          Fraction(uinv[0][0] * i + uinv[0][1] * j),
                          Fraction(uinv[1][0] * i + uinv[1][1] * j))
            out.append(reduce_mod(v, a))
    return tuple(out)


@lru_cache(maxsize=None)
def frac_ideal_parts(x: FieldElem) -> tuple[FieldElem, FieldElem]:
    """Coprime integral (num, den) with x*O = (num/den)*O, both canonical."""
    if x.is_zero:
        raise ValueError("zero has no fractional ideal decomposition")
    ctx = x.ctx
    if ctx.is_rational:
        return ctx.elem(x.c0.numerator if x.c0 > 0 else -x.c0.numerator), \
            ctx.elem(x.c0.denominator)
    d0 = x.c0.denominator
    d1 = x.c1.denominator
    q = ctx.elem(d0 * d1 // _int_gcd(d0, d1))
    # q*x is integral; now remove the common factor
    g = gcd_gen(q * x, q)
    num = canonical_generator((q * x) / g)
    den = canonical_generator(q / g)
    return num, den


# ---------------------------------------------------------------------------
# lattices and gcds


def _hnf_pair(cols: list[tuple[int, int]]) -> tuple[int, int, int]:
    """Upper-triangular basis ((a, b), (0, c)) with a, c > 0 for the rank-2
    lattice spanned by integer column vectors; returned as (a, b, c)."""
    # reduce to two columns by repeated gcd elimination on the second row
    work = [c for c in cols if c != (0, 0)]
    if not work:
        raise ValueError("zero lattice")
    # eliminate second coordinates down to one column with nonzero y
    while True:
        nz = [i for i, (_, y) in enumerate(work) if y != 0]
        if len(nz) <= 1:
            break
        i, j = nz[0], nz[1]
        (x1, y1), (x2, y2) = work[i], work[j]
        if abs(y1) < abs(y2) or (abs(y1) == abs(y2)):
            i, j = j, i
            (x1, y1), (x2, y2) = (x2, y2), (x1, y1)
        # now |y1| >= |y2| > 0
        q = y1 // y2
        work[i] = (x1 - q * x2, y1 - q * y2)
    ys = [(x, y) for (x, y) in work if y != 0]
    xs = [x for (x, y) in work if y == 0 and x != 0]
    if not ys or not xs:
        raise ValueError("lattice has rank < 2")
    b, c = ys[0]
    if c < 0:
        b, c = -b, -c
    a = 0
    for x in xs:
        a = _int_gcd(a, abs(x))
    b %= a
    return a, b, c


def lattice_index(gens: list[FieldElem]) -> int:
    """Index [O : L] of the lattice L spanned over Z by integral gens."""
    cols = [(int(g.c0), int(g.c1)) for g in gens]
    a, _, c = _hnf_pair(cols)
    return a * c


def _norm_form_solutions(v1: FieldElem, v2: FieldElem, m: int) -> list[FieldElem]:
    """All x*v1 + y*v2 (x, y integers) with absolute norm m > 0."""
    av = v1.field_norm()
    bv = (v1 * v2.conj()).trace()
    cv = v2.field_norm()
    # positive definite: A x^2 + B xy + C y^2 = m
    A, B, C = Fraction(av), Fraction(bv), Fraction(cv)
    disc = 4 * A * C - B * B
    if disc <= 0:
        raise ValueError("norm form is not definite")
    out = []
    ymax = isqrt(int(4 * A * m / disc)) + 1
    for y in range(-ymax, ymax + 1):
        # solve A x^2 + (B y) x + (C y^2 - m) = 0
        dd = B * B * y * y - 4 * A * (C * y * y - m)
        if dd < 0:
            continue
        num = int(dd.numerator)
        den = int(dd.denominator)
        # dd = num/den must be the square of a rational with denominator den
        root2 = num * den
        r = isqrt(root2)
        if r * r != root2:
            continue
        sq = Fraction(r, den)
        for sgn in (1, -1):
            x = (-B * y + sgn * sq) / (2 * A)
            if x.denominator == 1:
                cand = x.numerator * v1 + y * v2
                if cand.norm() == m:
                    out.append(cand)
            if sq == 0:
                break
    return out


def elements_of_norm(ctx: FieldCtx, m: int) -> list[FieldElem]:
    """All integral elements of absolute norm m (m > 0)."""
    if m <= 0:
        raise ValueError("norm must be positive")
    if ctx.is_rational:
        return [ctx.elem(m), ctx.elem(-m)]
    return _norm_form_solutions(ctx.one, ctx.omega, m)


@lru_cache(maxsize=None)
def gcd_gen(a: FieldElem, b: FieldElem) -> FieldElem:
    """Canonical generator of the ideal aO + bO (inputs integral).

    The ideal is realized as the Z-lattice spanned by a, a*omega, b,
    b*omega; its index in O is computed from a Hermite basis and a
    generator is found by searching the lattice for an element of that
    norm.  Class number one guarantees the search succeeds.
    """
    if not (a.is_integral and b.is_integral):
        raise ValueError("gcd requires integral elements")
    if a.is_zero and b.is_zero:
        raise ValueError("gcd(0, 0) is undefined")
    if a.is_zero:
        return canonical_generator(b)
    if b.is_zero:
        return canonical_generator(a)
    ctx = a.ctx
    if ctx.is_rational:
        return ctx.elem(_int_gcd(int(a.c0), int(b.c0)))
    gens = [a, a * ctx.omega, b, b * ctx.omega]
    cols = [(int(g.c0), int(g.c1)) for g in gens]
    h_a, h_b, h_c = _hnf_pair(cols)
    index = h_a * h_c
    v1 = ctx.elem(h_a)
    v2 = FieldElem(ctx, Fraction(h_b), Fraction(h_c))
    sols = _norm_form_solutions(v1, v2, index)
    if not sols:
        raise ArithmeticError(
            f"no generator of norm {index} in {a}, {b} lattice")
    return canonical_generator(sols[0])


def is_coprime(a: FieldElem, b: FieldElem) -> bool:
    return gcd_gen(a, b).is_unit


# ---------------------------------------------------------------------------
# factorization into prime elements


def splitting_type(ctx: FieldCtx, p: int) -> str:
    """'split', 'inert' or 'ramified' for a rational prime p in a
    quadratic field; 'rational' when the field is Q."""
    if ctx.is_rational:
        return "rational"
    chi = kronecker_symbol(ctx.discriminant, p)
    return {1: "split", -1: "inert", 0: "ramified"}[chi]


@lru_cache(maxsize=None)
def prime_elements_above(ctx: FieldCtx, p: int) -> tuple[FieldElem, ...]:
    """Canonical prime elements of O dividing the rational prime p."""
    if ctx.is_rational:
        return (ctx.elem(p),)
    kind = splitting_type(ctx, p)
    if kind == "inert":
        return (ctx.elem(p),)
    sols = elements_of_norm(ctx, p)
    if not sols:
        raise ArithmeticError(f"prime {p} should have norm-{p} elements")
    reps = sorted({canonical_generator(s) for s in sols}, key=_assoc_key)
    if kind == "ramified":
        return (reps[0],)
    assert len(reps) == 2, f"expected two primes above split {p}"
    return tuple(reps)


def factor(a: FieldElem) -> list[tuple[PrincipalIdeal, int]]:
    """Prime factorization of a nonzero integral element, as a list of
    (prime ideal, exponent) pairs sorted by (norm, generator key).

    a equals a unit times the product of gen^exponent.
    """
    if a.is_zero or not a.is_integral:
        raise ValueError("factor requires a nonzero integral element")
    n = int(a.norm())
    if n == 1:
        return []
    out = []
    rest = a
    for p in sorted(factor_int(n)):
        for pi in prime_elements_above(a.ctx, p):
            e = 0
            while True:
                q = divide_exact(rest, pi)
                if q is None:
                    break
                rest = q
                e += 1
            if e:
                out.append((PrincipalIdeal.of(pi), e))
    assert rest.is_unit, "factorization left a non-unit cofactor"
    out.sort(key=lambda t: (t[0].norm, _assoc_key(t[0].gen)))
    return out


# ---------------------------------------------------------------------------
# ideal enumeration (exact, small cutoffs; kms has a fast numeric path)


def ideals_up_to(ctx: FieldCtx, bound: int) -> list[PrincipalIdeal]:
    """All nonzero integral ideals of norm <= bound, sorted by norm."""
    if bound < 1:
        return []
    if ctx.is_rational:
        return [PrincipalIdeal.of(ctx.elem(k)) for k in range(1, bound + 1)]
    seen: dict[FieldElem, PrincipalIdeal] = {}
    ymax = isqrt(4 * bound // (4 * ctx.n - ctx.t * ctx.t)) + 1
    for y in range(-ymax, ymax + 1):
        for x in _x_range(ctx, y, bound):
            e = FieldElem(ctx, Fraction(x), Fraction(y))
            if e.is_zero or e.norm() > bound:
                continue
            g = canonical_generator(e)
            if g not in seen:
                seen[g] = PrincipalIdeal(g, int(g.norm()))
    return sorted(seen.values(), key=lambda i: (i.norm, _assoc_key(i.gen)))


def _x_range(ctx: FieldCtx, y: int, bound: int):
    # integer x with x^2 + t*x*y + n*y^2 <= bound (with a safety margin;
    # callers filter by norm)
    t, n = ctx.t, ctx.n
    const = bound - n * y * y + Fraction(t * t * y * y, 4)
    if const < 0:
        return range(0)
    root = isqrt(int(const)) + 1
    half = Fraction(t * y, 2)
    lo = floor(-half) - root - 1
    hi = floor(-half) + root + 1
    return range(lo, hi + 1)
