"""Finite-level characters of K/O and the exact duality pairing.

A character point at level c is a unit residue w modulo c.  It pairs
with a torsion class r through the trace form

    <r, chi_w> = exp(2*pi*i * frac(Tr(r*w/delta))),

where delta generates the different ideal (delta = 1 over Q), so the
value is an exact root of unity.  The exponent does not depend on the
integral lift of w as long as the denominator of r divides c, because
Tr(O/delta) lies in Z; the tests check this rather than assume it.

Unit residues modulo c form the group (O/cO)*; the image of the global
units O* inside it is the subgroup that acts trivially on symmetric
data, and the quotient is the level-c symmetry group.
"""
from __future__ import annotations

from fractions import Fraction
from math import floor

from .cyclotomic import CycloNum, from_exponent
from .numberfield import (FieldCtx, FieldElem, canonical_generator,
                          divide_exact, format_element, is_coprime,
                          reduce_mod, residues)
from .torsion import TorsionClass, denominator_element, torsion_points

__all__ = [
    "CharacterPoint", "pair", "pair_exponent", "character_laws",
    "unit_residues", "unit_image", "symmetry_group_at_level",
]


def _elem_key(x: FieldElem):
    return (x.c0, x.c1)


class CharacterPoint:
    """A level-c extreme character, stored as a unit residue w mod c."""

    __slots__ = ("ctx", "c", "w")

    def __init__(self, ctx: FieldCtx, c: FieldElem, w: FieldElem):
        self.ctx = ctx
        self.c = c
        self.w = w

    @classmethod
    def make(cls, ctx: FieldCtx, c, w) -> "CharacterPoint":
        """Validated constructor: c a nonzero integral level, w integral
        and invertible modulo c; w is reduced to its canonical residue."""
        if isinstance(c, int):
            c = ctx.elem(c)
        if isinstance(w, int):
            w = ctx.elem(w)
        if c.is_zero or not c.is_integral:
            raise ValueError("level must be a nonzero integral element")
        if not w.is_integral:
            raise ValueError("character datum must be integral")
        c = canonical_generator(c)
        if not is_coprime(w, c):
            raise ValueError(
                f"residue {format_element(w)} is not a unit modulo "
                f"{format_element(c)}")
        return cls(ctx, c, reduce_mod(w, c))

    @property
    def level_norm(self) -> int:
        return int(self.c.norm())

    def twisted(self, z) -> "CharacterPoint":
        """The point with datum z*w at the same level, for integral z
        invertible modulo c."""
        if isinstance(z, int):
            z = self.ctx.elem(z)
        return CharacterPoint.make(self.ctx, self.c, z * self.w)

    def restricted(self, c2) -> "CharacterPoint":
        """The same character seen at a divisor level c2 | c."""
        if isinstance(c2, int):
            c2 = self.ctx.elem(c2)
        if divide_exact(self.c, c2) is None:
            raise ValueError("restriction level must divide the level")
        return CharacterPoint.make(self.ctx, c2, self.w)

    def __eq__(self, other):
        if not isinstance(other, CharacterPoint):
            return NotImplemented
        return (self.ctx == other.ctx and self.c == other.c
                and self.w == other.w)

    def __hash__(self):
        return hash((self.ctx.d, self.c.c0, self.c.c1,
                     self.w.c0, self.w.c1))

    def __repr__(self):
        return (f"chi(level={format_element(self.c)}, "
                f"w={format_element(self.w)})")


def pair_exponent(r: TorsionClass, chi: CharacterPoint) -> Fraction:
    """The exact exponent q in <r, chi> = exp(2*pi*i*q), reduced to [0, 1).

    Requires the denominator of r to divide the level of chi; otherwise
    the value would depend on the lift of w.
    """
    den = denominator_element(r)
    if divide_exact(chi.c, den) is None:
        raise ValueError(
            f"denominator {format_element(den)} of the torsion class does "
            f"not divide the character level {format_element(chi.c)}")
    e = (r.rep * chi.w / chi.ctx.delta).trace()
    return e - floor(e)


def pair(r: TorsionClass, chi: CharacterPoint) -> CycloNum:
    """The duality pairing <r, chi> as an exact root of unity."""
    return from_exponent(pair_exponent(r, chi))


def unit_residues(c: FieldElem) -> tuple[FieldElem, ...]:
    """The group (O/cO)* as sorted canonical residues."""
    return tuple(sorted((x for x in residues(c) if is_coprime(x, c)),
                        key=_elem_key))


def unit_image(c: FieldElem) -> tuple[FieldElem, ...]:
    """The image of the global units O* inside (O/cO)*."""
    return tuple(sorted({reduce_mod(u, c) for u in c.ctx.units},
                        key=_elem_key))


def symmetry_group_at_level(c: FieldElem) -> list[FieldElem]:
    """Canonical coset representatives of (O/cO)* / image(O*).

    This quotient is the level-c symmetry group acting on extreme
    characters; its order times |image(O*)| is |(O/cO)*|.
    """
    img = unit_image(c)
    seen: set = set()
    reps: list[FieldElem] = []
    for w in unit_residues(c):
        if w in seen:
            continue
        coset = {reduce_mod(w * u, c) for u in img}
        seen |= coset
        reps.append(min(coset, key=_elem_key))
    return sorted(reps, key=_elem_key)


def character_laws(chi: CharacterPoint) -> dict:
    """Exhaustive finite checks that chi is an extreme character.

    Verifies on all level-c torsion: additivity of the pairing,
    triviality on O, unit compatibility <u*r, chi_w> = <r, chi_(u*w)>,
    that the characters r -> <z*r, chi> for z mod c are pairwise
    distinct (so chi generates the full dual as an O-module and the
    pairing separates points), and restriction compatibility at every
    proper divisor level.
    """
    ctx = chi.ctx
    c = chi.c
    pts = torsion_points(c)
    expo = {r: pair_exponent(r, chi) for r in pts}

    additive = all(
        (expo[r] + expo[s] - expo[r + s]).denominator == 1
        for r in pts for s in pts)

    zero = [r for r in pts if r.is_zero]
    o_trivial = len(zero) == 1 and expo[zero[0]] == 0

    unit_compat = all(
        pair_exponent(r.scaled(u), chi) == pair_exponent(r, chi.twisted(u))
        for u in ctx.units for r in pts)

    vectors = {tuple(pair_exponent(r.scaled(z), chi) for r in pts)
               for z in residues(c)}
    generates_dual = len(vectors) == len(residues(c))

    restriction = True
    for e in _proper_divisors(c):
        sub = chi.restricted(e)
        for r in torsion_points(e):
            if pair_exponent(r, sub) != pair_exponent(r, chi):
                restriction = False

    report = {
        "field": ctx.tag,
        "level": format_element(c),
        "additive": additive,
        "o_trivial": o_trivial,
        "unit_compat": unit_compat,
        "generates_dual": generates_dual,
        "restriction": restriction,
    }
    report["all_ok"] = all(
        report[k] for k in ("additive", "o_trivial", "unit_compat",
                            "generates_dual", "restriction"))
    return report


def _proper_divisors(c: FieldElem) -> list[FieldElem]:
    """Canonical generators of the proper divisor ideals of cO."""
    from .numberfield import factor

    out = [c.ctx.one]
    for ideal, mult in factor(c):
        powers = [c.ctx.one]
        for _ in range(mult):
            powers.append(powers[-1] * ideal.gen)
        out = [canonical_generator(x * p) for x in out for p in powers]
    key = _elem_key(canonical_generator(c))
    return sorted((x for x in out if _elem_key(x) != key), key=_elem_key)
