"""Symbolic *-algebra on the canonical monomial basis M(a, r, b).

A monomial M(a, r, b) stands for mu_a^* theta_r mu_b, where mu is the
isometry family indexed by nonzero integral elements and theta_r is the
self-adjoint projection-average attached to a class r in K/O.  The
defining relations are:

    (I.1)   mu_w = 1 for units w
    (I.2)   mu_a^* mu_a = 1
    (I.3)   mu_a mu_b = mu_{ab}
    (II.1)  theta_0 = 1
    (II.2)  theta_{wr} = theta_r = theta_r^* for units w
    (II.3)  theta_r theta_s = average of theta_{ur+vs} over unit pairs
    (III)   mu_a theta_r mu_a^* = (1/N_a) sum_{x mod a} theta_{(r+x)/a}

together with the derived rule theta_r mu_a = mu_a theta_{ar}.  Products
of monomials are rewritten back into the basis with exact rational
coefficients; no floating point enters anywhere.

Monomial labels are redundant: M(a, r, b) = M(c, s, d) exactly when
a = c, b = d (as canonical generators with gcd(a, b) = 1) and r = w*s
modulo (1/(ab))O for some unit w.  Canonicalization picks the minimal
representative of that class, so equality of monomials is equality of
stored triples.
"""
from __future__ import annotations

from fractions import Fraction

from .numberfield import (FieldCtx, FieldElem, canonical_generator,
                          divide_exact, gcd_gen, residues)
from .torsion import TorsionClass, orbit_canonical, reduce01, torsion_class

__all__ = [
    "Monomial", "HeckeElement", "identity", "mu", "theta", "theta_product",
    "adjoint", "alpha", "beta_endo", "mul_hecke", "dynamics_weight",
    "sigma_i_beta",
]


def _canon_div(x: FieldElem, g: FieldElem) -> FieldElem:
    q = divide_exact(x, g)
    assert q is not None
    return canonical_generator(q)


def _rep_mod_level(t: TorsionClass, c: FieldElem) -> TorsionClass:
    """Canonical representative of t modulo the fractional lattice (1/c)O."""
    return torsion_class(reduce01(t.rep * c) / c)


class Monomial:
    """Canonical basis monomial M(a, r, b) = mu_a^* theta_r mu_b."""

    __slots__ = ("ctx", "a", "r", "b", "_hash")

    def __init__(self, ctx: FieldCtx, a: FieldElem, r: TorsionClass,
                 b: FieldElem):
        self.ctx = ctx
        self.a = a
        self.r = r
        self.b = b
        self._hash = None

    @classmethod
    def make(cls, ctx: FieldCtx, a, r, b) -> "Monomial":
        """Build the canonical monomial for the (possibly redundant) label.

        Accepts integral field elements or plain integers for a and b,
        and a field element or torsion class for r.  The common factor
        of a and b is folded into r, and r is reduced to the minimal
        representative of its unit orbit modulo (1/(ab))O.
        """
        if isinstance(a, int):
            a = ctx.elem(a)
        if isinstance(b, int):
            b = ctx.elem(b)
        if isinstance(r, FieldElem):
            r = torsion_class(r)
        if a.is_zero or b.is_zero or not (a.is_integral and b.is_integral):
            raise ValueError("monomial slots must be nonzero integral")
        a = canonical_generator(a)
        b = canonical_generator(b)
        g = gcd_gen(a, b)
        if not g.is_unit:
            a = _canon_div(a, g)
            b = _canon_div(b, g)
            r = r.scaled(g)
        c = canonical_generator(a * b)
        best = None
        for u in ctx.units:
            cand = _rep_mod_level(r.scaled(u), c)
            if best is None or cand.sort_key() < best.sort_key():
                best = cand
        return cls(ctx, a, best, b)

    def _key(self):
        return (self.a.c0, self.a.c1, self.b.c0, self.b.c1,
                self.r.rep.c0, self.r.rep.c1)

    def __eq__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        return self.ctx == other.ctx and self._key() == other._key()

    def __hash__(self):
        h = self._hash
        if h is None:
            rep = self.r.rep
            h = self._hash = hash(
                (self.ctx.d,
                 self.a.c0.numerator, self.a.c0.denominator,
                 self.a.c1.numerator, self.a.c1.denominator,
                 self.b.c0.numerator, self.b.c0.denominator,
                 self.b.c1.numerator, self.b.c1.denominator,
                 rep.c0.numerator, rep.c0.denominator,
                 rep.c1.numerator, rep.c1.denominator))
        return h

    def sort_key(self):
        return (self.a.norm(), self.b.norm()) + self._key()

    @property
    def level(self) -> int:
        """Product of the two slot norms; bounds the support size."""
        return int(self.a.norm() * self.b.norm())

    @property
    def is_theta_type(self) -> bool:
        """True when the monomial lies in the commutative theta part."""
        return self.a.is_unit and self.b.is_unit

    def adjoint(self) -> "Monomial":
        return Monomial.make(self.ctx, self.b, self.r, self.a)

    def __repr__(self):
        from .numberfield import format_element
        return (f"M({format_element(self.a)}, {format_element(self.r.rep)},"
                f" {format_element(self.b)})")


# ---------------------------------------------------------------------------
# the commutative theta part, as plain dicts {orbit class: coefficient}


def _theta_dict(r: TorsionClass) -> dict:
    return {orbit_canonical(r): Fraction(1)}


def _theta_dict_mul(ctx: FieldCtx, F: dict, G: dict) -> dict:
    # theta_r theta_s = (1/|units|) sum_w theta_{r + w s}, the unit-pair
    # average collapsed along the overall unit scaling
    units = ctx.units
    scale = Fraction(1, len(units))
    out: dict = {}
    for t1, q1 in F.items():
        for t2, q2 in G.items():
            q = q1 * q2 * scale
            for w in units:
                k = orbit_canonical(t1 + t2.scaled(w))
                out[k] = out.get(k, 0) + q
    return {k: v for k, v in out.items() if v}


def _alpha_one_dict(ctx: FieldCtx, g: FieldElem) -> dict:
    # mu_g mu_g^* = (1/N_g) sum_{x mod g} theta_{x/g}
    if g.is_unit:
        return _theta_dict(torsion_class(ctx.zero))
    n = int(g.norm())
    out: dict = {}
    for x in residues(g):
        k = orbit_canonical(torsion_class(x / g))
        out[k] = out.get(k, 0) + Fraction(1, n)
    return out


def _alpha_dict(ctx: FieldCtx, a: FieldElem, F: dict) -> dict:
    # alpha_a(theta_t) = (1/N_a) sum_{x mod a} theta_{(t+x)/a}
    if a.is_unit:
        return dict(F)
    n = int(a.norm())
    out: dict = {}
    for t, q in F.items():
        qq = q * Fraction(1, n)
        for x in residues(a):
            k = orbit_canonical(torsion_class((t.rep + x) / a))
            out[k] = out.get(k, 0) + qq
    return {k: v for k, v in out.items() if v}


# ---------------------------------------------------------------------------
# the product engine


def _mul_monomials(m1: Monomial, m2: Monomial) -> dict:
    """Product of two canonical monomials as {Monomial: Fraction}.

    Rewrites mu_a^* theta_r mu_b mu_c^* theta_s mu_d step by step:
    split off g = gcd(b, c) so that mu_b mu_c^* = mu_b1 (mu_g mu_g^*)
    mu_c1^*, push the thetas inward to form an element H of the theta
    part, commute the coprime isometries outward, transport H with
    theta_t -> theta_{(a d1) t}, and resolve the remaining shape
    mu_P H mu_Q^* through relation (III).  Coprimality of P and Q makes
    every branch of (III) land in one monomial class, with total
    coefficient one.
    """
    ctx = m1.ctx
    a, r, b = m1.a, m1.r, m1.b
    c, s, d = m2.a, m2.r, m2.b

    g = gcd_gen(b, c)
    b1 = _canon_div(b, g)
    c1 = _canon_div(c, g)

    H = _theta_dict(r.scaled(b1))
    H = _theta_dict_mul(ctx, H, _alpha_one_dict(ctx, g))
    H = _theta_dict_mul(ctx, H, _theta_dict(s.scaled(c1)))

    E = canonical_generator(a * c1)
    h = gcd_gen(E, d)
    Q = _canon_div(E, h)
    d1 = _canon_div(d, h)
    P = canonical_generator(b1 * d1)
    assert gcd_gen(P, Q).is_unit

    mult = a * d1
    PQ = canonical_generator(P * Q)
    out: dict = {}
    for t, q in H.items():
        label = torsion_class(t.scaled(mult).rep / PQ)
        m = Monomial.make(ctx, Q, label, P)
        out[m] = out.get(m, 0) + q
    return {k: v for k, v in out.items() if v}


class HeckeElement:
    """Finite rational combination of canonical monomials."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: FieldCtx, terms: dict | None = None):
        self.ctx = ctx
        clean = {}
        if terms:
            for m, q in terms.items():
                q = Fraction(q)
                if q:
                    clean[m] = q
        self.terms = clean

    # -- constructors

    @staticmethod
    def zero(ctx: FieldCtx) -> "HeckeElement":
        return HeckeElement(ctx)

    @staticmethod
    def from_monomial(m: Monomial, coeff=1) -> "HeckeElement":
        return HeckeElement(m.ctx, {m: Fraction(coeff)})

    # -- linear structure

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        if not isinstance(other, HeckeElement):
            return NotImplemented
        out = dict(self.terms)
        for m, q in other.terms.items():
            out[m] = out.get(m, 0) + q
        return HeckeElement(self.ctx, out)

    def __neg__(self) -> "HeckeElement":
        return HeckeElement(self.ctx, {m: -q for m, q in self.terms.items()})

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return HeckeElement(
                self.ctx, {m: q * other for m, q in self.terms.items()})
        if not isinstance(other, HeckeElement):
            return NotImplemented
        out: dict = {}
        for m1, q1 in self.terms.items():
            for m2, q2 in other.terms.items():
                q12 = q1 * q2
                for m, q in _mul_monomials(m1, m2).items():
                    out[m] = out.get(m, 0) + q12 * q
        return HeckeElement(self.ctx, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    # -- involution and predicates

    def adjoint(self) -> "HeckeElement":
        return HeckeElement(
            self.ctx, {m.adjoint(): q for m, q in self.terms.items()})

    def coeff(self, m: Monomial) -> Fraction:
        return self.terms.get(m, Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_theta_type(self) -> bool:
        return all(m.is_theta_type for m in self.terms)

    def __eq__(self, other):
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms, key=Monomial.sort_key):
            bits.append(f"{self.terms[m]}*{m!r}")
        return " + ".join(bits)


# ---------------------------------------------------------------------------
# public constructors and maps


def identity(ctx: FieldCtx) -> HeckeElement:
    return HeckeElement.from_monomial(
        Monomial.make(ctx, ctx.one, torsion_class(ctx.zero), ctx.one))


def mu(a: FieldElem) -> HeckeElement:
    """The isometry generator mu_a for a nonzero integral element a."""
    ctx = a.ctx
    return HeckeElement.from_monomial(
        Monomial.make(ctx, ctx.one, torsion_class(ctx.zero), a))


def theta(r) -> HeckeElement:
    """The projection-average generator theta_r for a class r in K/O."""
    if isinstance(r, FieldElem):
        r = torsion_class(r)
    ctx = r.ctx
    return HeckeElement.from_monomial(
        Monomial.make(ctx, ctx.one, r, ctx.one))


def adjoint(x: HeckeElement) -> HeckeElement:
    return x.adjoint()


def mul_hecke(x: HeckeElement, y: HeckeElement) -> HeckeElement:
    return x * y


def theta_product(r, s) -> HeckeElement:
    """theta_r * theta_s straight from the unit-average relation (II.3)."""
    if isinstance(r, FieldElem):
        r = torsion_class(r)
    if isinstance(s, FieldElem):
        s = torsion_class(s)
    ctx = r.ctx
    H = _theta_dict_mul(ctx, _theta_dict(r), _theta_dict(s))
    return _from_theta_dict(ctx, H)


def _from_theta_dict(ctx: FieldCtx, F: dict) -> HeckeElement:
    out = {}
    for t, q in F.items():
        m = Monomial.make(ctx, ctx.one, t, ctx.one)
        out[m] = out.get(m, 0) + q
    return HeckeElement(ctx, out)


def _to_theta_dict(x: HeckeElement) -> dict:
    if not x.is_theta_type:
        raise ValueError("element lies outside the theta part")
    out: dict = {}
    for m, q in x.terms.items():
        k = orbit_canonical(m.r)
        out[k] = out.get(k, 0) + q
    return out


def alpha(a: FieldElem, x: HeckeElement) -> HeckeElement:
    """The corner endomorphism theta_t -> (1/N_a) sum theta_{(t+x)/a}.

    Defined on the theta part only; alpha_a(x) = mu_a x mu_a^*.
    """
    if not (a.is_integral and not a.is_zero):
        raise ValueError("alpha index must be a nonzero integral element")
    return _from_theta_dict(x.ctx, _alpha_dict(x.ctx, a, _to_theta_dict(x)))


def beta_endo(a: FieldElem, x: HeckeElement) -> HeckeElement:
    """The transport endomorphism theta_t -> theta_{at}, left inverse
    of alpha_a on the theta part."""
    if not (a.is_integral and not a.is_zero):
        raise ValueError("beta index must be a nonzero integral element")
    F = _to_theta_dict(x)
    out: dict = {}
    for t, q in F.items():
        k = orbit_canonical(t.scaled(a))
        out[k] = out.get(k, 0) + q
    return _from_theta_dict(x.ctx, out)


# ---------------------------------------------------------------------------
# dynamics


def dynamics_weight(m: Monomial) -> Fraction:
    """The scaling N_b/N_a; the time evolution acts on M(a, r, b) by
    (N_b/N_a)^{it}."""
    return Fraction(int(m.b.norm()), int(m.a.norm()))


def sigma_i_beta(x: HeckeElement, beta: int) -> HeckeElement:
    """The analytic continuation of the dynamics at time t = i*beta,
    exact for integer beta: M(a, r, b) -> (N_b/N_a)^{-beta} M(a, r, b)."""
    out = {}
    for m, q in x.terms.items():
        out[m] = q * dynamics_weight(m) ** (-beta)
    return HeckeElement(x.ctx, out)
