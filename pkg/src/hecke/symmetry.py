"""The level-c symmetry group and its two actions on ground states.

Unit residues modulo c, taken modulo the image of the global units,
form a finite group.  It acts on character points by multiplication
(the geometric action, which transports extreme states to each other)
and on cyclotomic state values through the field norm, raising each
root of unity to the power N(t) for an integral lift t (the arithmetic
action).  compare_actions evaluates one instance of each and decides
exact equality; the two agree on every input over the rationals and
disagree already at level 5 over the Gaussian integers.

A SymmetryElem remembers the residue it was built from, so that acting
on a character point is deterministic, but equality and hashing use the
canonical orbit representative: two residues that differ by a global
unit are the same group element.
"""
from __future__ import annotations

from math import gcd, lcm

from .cyclotomic import CycloNum
from .kms import phi_extreme_infty
from .numberfield import (FieldCtx, FieldElem, canonical_generator,
                          is_coprime, reduce_mod)
from .pairing import (CharacterPoint, _elem_key, symmetry_group_at_level,
                      unit_image, unit_residues)
from .torsion import TorsionClass, torsion_class, torsion_points

__all__ = [
    "SymmetryElem", "act_geometric", "act_arithmetic", "compare_actions",
    "regularity_check", "group_elements",
]

_level_cache: dict = {}


def _level_data(c: FieldElem):
    """Unit residues, unit image, and an orbit-representative map mod c."""
    cc = canonical_generator(c)
    key = (cc.ctx.d, cc.c0, cc.c1)
    hit = _level_cache.get(key)
    if hit is not None:
        return hit
    units = unit_residues(cc)
    img = unit_image(cc)
    rep_of = {}
    for w in units:
        orbit = [reduce_mod(w * u, cc) for u in img]
        rep = min(orbit, key=_elem_key)
        for z in orbit:
            rep_of[_elem_key(z)] = rep
    data = (cc, units, img, rep_of)
    _level_cache[key] = data
    return data


class SymmetryElem:
    """A unit residue j modulo c, up to the image of the global units."""

    __slots__ = ("ctx", "c", "j", "rep")

    def __init__(self, ctx: FieldCtx, c: FieldElem, j: FieldElem,
                 rep: FieldElem):
        self.ctx = ctx
        self.c = c
        self.j = j
        self.rep = rep

    @classmethod
    def make(cls, ctx: FieldCtx, c, j) -> "SymmetryElem":
        if not isinstance(c, FieldElem):
            c = ctx.elem(c)
        cc, _, _, rep_of = _level_data(c)
        jj = j if isinstance(j, FieldElem) else ctx.elem(j)
        if not jj.is_integral:
            raise ValueError("symmetry residue must be integral")
        jj = reduce_mod(jj, cc)
        if not is_coprime(jj, cc):
            raise ValueError(f"residue {jj!r} is not invertible mod {cc!r}")
        return cls(ctx, cc, jj, rep_of[_elem_key(jj)])

    @classmethod
    def identity(cls, ctx: FieldCtx, c) -> "SymmetryElem":
        return cls.make(ctx, c, 1)

    def is_identity(self) -> bool:
        _, _, _, rep_of = _level_data(self.c)
        return _elem_key(self.rep) == _elem_key(
            rep_of[_elem_key(reduce_mod(self.ctx.one, self.c))])

    def __mul__(self, other: "SymmetryElem") -> "SymmetryElem":
        if not isinstance(other, SymmetryElem):
            return NotImplemented
        if self.ctx.d != other.ctx.d or self.c != other.c:
            raise ValueError("level mismatch")
        return SymmetryElem.make(self.ctx, self.c, self.j * other.j)

    def inverse(self) -> "SymmetryElem":
        _, units, _, _ = _level_data(self.c)
        one = reduce_mod(self.ctx.one, self.c)
        for z in units:
            if reduce_mod(self.j * z, self.c) == one:
                return SymmetryElem.make(self.ctx, self.c, z)
        raise ValueError("no inverse found; residue not a unit")

    def __eq__(self, other):
        if not isinstance(other, SymmetryElem):
            return NotImplemented
        return (self.ctx.d == other.ctx.d and self.c == other.c
                and self.rep == other.rep)

    def __hash__(self):
        return hash((self.ctx.d, _elem_key(self.c), _elem_key(self.rep)))

    def __repr__(self):
        return f"SymmetryElem(c={self.c!r}, j={self.j!r})"


def group_elements(c: FieldElem) -> list[SymmetryElem]:
    """The full symmetry group at level c, by canonical representatives."""
    ctx = c.ctx
    return [SymmetryElem.make(ctx, c, w)
            for w in symmetry_group_at_level(canonical_generator(c))]


def act_geometric(g: SymmetryElem, chi: CharacterPoint) -> CharacterPoint:
    """Multiply the character residue: chi_w goes to chi_(j*w)."""
    if g.ctx.d != chi.ctx.d or g.c != chi.c:
        raise ValueError("symmetry element and character live at "
                         "different levels")
    return chi.twisted(g.j)


def _ring(rr: int):
    if rr == 0:
        yield 0, 0
        return
    for x in range(-rr, rr + 1):
        yield x, rr
        yield x, -rr
    for y in range(-rr + 1, rr):
        yield rr, y
        yield -rr, y


def _min_lift_norm(g: SymmetryElem, m: int) -> int:
    """Norm of the smallest lift t of j mod c with gcd(N(t), m) = 1,
    ties broken by coordinates; the search expands in rings and stops
    once no farther ring can beat the best candidate found."""
    ctx = g.ctx
    if ctx.is_rational:
        base, step = int(g.j.c0), int(g.c.c0)
        for k in range(3 * m + 6):
            t = base + step * k
            if gcd(t, m) == 1:
                return t
        raise ValueError(
            f"no lift of {g.j!r} mod {g.c!r} has norm invertible "
            f"mod {m}; raise the level")
    abs_c = float(g.c.norm()) ** 0.5
    abs_j = float(g.j.norm()) ** 0.5
    best = None
    rr = 0
    while rr <= 3 * m + 6:
        for x, y in _ring(rr):
            t = g.j + g.c * (ctx.elem(x) + ctx.omega * ctx.elem(y))
            nt = int(t.norm())
            if gcd(nt, m) == 1:
                cand = (nt, x, y)
                if best is None or cand < best:
                    best = cand
        if best is not None:
            # |z| >= rr/2 on the next ring, so norms from there on
            # exceed (|c|(rr+1)/2 - |j|)^2
            floor_next = max(0.0, abs_c * (rr + 1) / 2 - abs_j)
            if floor_next * floor_next > best[0]:
                return best[0]
        rr += 1
    if best is not None:
        return best[0]
    raise ValueError(
        f"no lift of {g.j!r} mod {g.c!r} has norm invertible mod {m}; "
        "raise the level")


def act_arithmetic(g: SymmetryElem, v: CycloNum) -> CycloNum:
    """Raise the roots of unity in v to the power N(t), where t is the
    smallest integral lift of j whose norm is invertible modulo the
    cyclotomic modulus of v."""
    m = v.m
    if m == 1:
        return v
    return v.galois(_min_lift_norm(g, m) % m)


def compare_actions(r: TorsionClass, chi: CharacterPoint,
                    g: SymmetryElem) -> dict:
    """Evaluate the ground state at the moved character against the
    norm-twisted original value and decide equality exactly."""
    geometric = phi_extreme_infty(r, act_geometric(g, chi))
    arithmetic = act_arithmetic(g, phi_extreme_infty(r, chi))
    return {
        "field": chi.ctx.tag,
        "level": chi.c,
        "w": chi.w,
        "j": g.j,
        "geometric_value": geometric,
        "arithmetic_value": arithmetic,
        "equal": geometric == arithmetic,
    }


def _state_signature(values: list[CycloNum]):
    big = lcm(*[v.m for v in values]) if values else 1
    return tuple(tuple(v.promoted(big).coeffs) for v in values)


def regularity_check(c: FieldElem) -> dict:
    """Confirm that the symmetry group permutes the level-c ground
    states simply transitively.

    Checks, all exact: the number of distinct state tuples over the
    level-c torsion equals the group order; residues in one unit orbit
    give the same tuple; the action is transitive with trivial
    stabilizers; and moving the character matches moving the torsion
    class (state transport).
    """
    cc, units, img, rep_of = _level_data(c)
    ctx = cc.ctx
    reps = symmetry_group_at_level(cc)
    order = len(reps)
    pts = torsion_points(cc)

    tuples = {}
    for w in units:
        chi = CharacterPoint.make(ctx, cc, w)
        tuples[_elem_key(w)] = _state_signature(
            [phi_extreme_infty(r, chi) for r in pts])
    extreme_classes = len(set(tuples.values()))
    counts_match = extreme_classes == order
    orbits_align = all(
        tuples[_elem_key(w)] == tuples[_elem_key(rep_of[_elem_key(w)])]
        for w in units)

    base = reps[0]
    moved = {_elem_key(rep_of[_elem_key(reduce_mod(j * base, cc))])
             for j in reps}
    transitive = moved == {_elem_key(w) for w in reps}

    one_rep = rep_of[_elem_key(reduce_mod(ctx.one, cc))]
    free = all(
        rep_of[_elem_key(reduce_mod(j * w, cc))] != w
        for j in reps if j != one_rep
        for w in reps)

    chi0 = CharacterPoint.make(ctx, cc, base)
    transport_ok = True
    for j in reps:
        chij = chi0.twisted(j)
        for r in pts:
            lhs = phi_extreme_infty(r, chij)
            rhs = phi_extreme_infty(torsion_class(j * r.rep), chi0)
            if lhs != rhs:
                transport_ok = False
                break
        if not transport_ok:
            break

    all_ok = (counts_match and orbits_align and transitive and free
              and transport_ok)
    return {
        "field": ctx.tag,
        "level": cc,
        "group_order": order,
        "extreme_classes": extreme_classes,
        "counts_match": counts_match,
        "orbits_align": orbits_align,
        "transitive": transitive,
        "free": free,
        "transport_ok": transport_ok,
        "all_ok": all_ok,
    }
