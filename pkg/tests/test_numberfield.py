"""Checks for exact arithmetic in the supported fields.

Expected values here are frozen from independent brute-force searches
(unit enumeration in a coordinate box, pairwise congruence tests for
residue systems, exhaustive divisor checks for gcds).
"""
from __future__ import annotations

import random
from fractions import Fraction
from math import gcd as int_gcd

import pytest

from hecke.errors import UnsupportedFieldError
from hecke.numberfield import (
    FieldElem, PrincipalIdeal, SUPPORTED_D, canonical_generator, ctx_from_tag,
    divide_exact, elements_of_norm, factor, factor_int, format_element,
    frac_ideal_parts, gcd_gen, ideals_up_to, is_coprime, kronecker_symbol,
    lattice_index, make_ctx, parse_element, prime_elements_above, reduce_mod,
    residues, splitting_type)


def brute_units(ctx):
    """Oracle: exhaustive search for norm-1 integral points in a box."""
    if ctx.is_rational:
        return {ctx.elem(1), ctx.elem(-1)}
    out = set()
    for x in range(-2, 3):
        for y in range(-2, 3):
            e = ctx.elem(x, y)
            if e.norm() == 1:
                out.add(e)
    return out


def test_unit_groups_match_exhaustive_search():
    for d in SUPPORTED_D:
        ctx = make_ctx(d)
        assert set(ctx.units) == brute_units(ctx)
    assert len(make_ctx(1).units) == 4
    assert len(make_ctx(3).units) == 6
    assert len(make_ctx(7).units) == 2


def test_unit_group_closure():
    for d in (0, 1, 2, 3, 19):
        ctx = make_ctx(d)
        units = set(ctx.units)
        for u in units:
            for v in units:
                assert u * v in units
            assert 1 / u in units


def test_discriminant_and_different():
    # delta^2 = discriminant, and Tr(x/delta) is integral on O
    for d in SUPPORTED_D[1:]:
        ctx = make_ctx(d)
        assert ctx.delta * ctx.delta == ctx.discriminant
        for e in (ctx.one, ctx.omega, ctx.elem(3, 2)):
            tr = (e / ctx.delta).trace()
            assert tr.denominator == 1
    assert make_ctx(1).discriminant == -4
    assert make_ctx(2).discriminant == -8
    assert make_ctx(3).discriminant == -3
    assert make_ctx(163).discriminant == -163


def test_unsupported_field_rejected():
    with pytest.raises(UnsupportedFieldError):
        make_ctx(5)
    with pytest.raises(UnsupportedFieldError):
        ctx_from_tag("d6")


def test_norm_examples():
    ctx = make_ctx(1)
    assert ctx.elem(2).norm() == 4
    assert ctx.elem(1, 1).norm() == 2
    assert ctx.one.norm() == 1
    assert make_ctx(0).elem(-7).norm() == 7


def test_norm_multiplicative_random():
    rng = random.Random(20240817)
    for d in (0, 1, 2, 3, 7, 11, 19, 43, 67, 163):
        ctx = make_ctx(d)
        for _ in range(20):
            x = ctx.elem(Fraction(rng.randint(-9, 9), rng.randint(1, 4)),
                         0 if ctx.is_rational
                         else Fraction(rng.randint(-9, 9), rng.randint(1, 4)))
            y = ctx.elem(rng.randint(-9, 9),
                         0 if ctx.is_rational else rng.randint(-9, 9))
            assert (x * y).norm() == x.norm() * y.norm()
            if not y.is_zero:
                assert ((x / y) * y) == x


def test_conj_and_trace():
    ctx = make_ctx(7)
    x = ctx.elem(3, -2)
    assert x * x.conj() == x.field_norm()
    assert x + x.conj() == x.trace()
    assert x.conj().conj() == x


def congruent(x, y, a):
    return divide_exact(x - y, a) is not None


def test_residues_are_a_transversal():
    # size, pairwise incongruence, and reduction membership, several fields
    cases = [(0, (1, 2, 7)), (1, (2, 5)), (3, (2, 3)), (19, (3,))]
    for d, norms_src in cases:
        ctx = make_ctx(d)
        elems = [ctx.elem(2), ctx.elem(3)] if ctx.is_rational else \
            [e for n in norms_src for e in elements_of_norm(ctx, n)][:4]
        for a in elems:
            reps = residues(a)
            assert len(reps) == a.norm()
            for i, r in enumerate(reps):
                assert r.is_integral
                for s in reps[i + 1:]:
                    assert not congruent(r, s, a)
            # a few arbitrary elements land on exactly one representative
            for probe in (ctx.zero, ctx.one, ctx.elem(5, 0 if ctx.is_rational else 3)):
                hits = [r for r in reps if congruent(probe, r, a)]
                assert len(hits) == 1


def test_residues_special_cases():
    ctx = make_ctx(1)
    assert len(residues(ctx.elem(1, 1))) == 2
    assert len(residues(ctx.elem(2))) == 4
    assert len(residues(ctx.one)) == 1
    with pytest.raises(ValueError):
        residues(ctx.elem(Fraction(1, 2)))


def test_reduce_mod_is_canonical():
    ctx = make_ctx(3)
    a = ctx.elem(2, 1)
    x = ctx.elem(11, -7)
    r = reduce_mod(x, a)
    assert congruent(x, r, a)
    assert reduce_mod(r, a) == r
    assert reduce_mod(x + a * ctx.elem(4, 9), a) == r


def test_gcd_examples():
    ctx = make_ctx(1)
    g = gcd_gen(ctx.elem(1, 1), ctx.elem(2))
    assert g.norm() == 2
    assert canonical_generator(g) == canonical_generator(ctx.elem(1, 1))
    q = make_ctx(0)
    assert gcd_gen(q.elem(2), q.elem(3)) == 1
    assert gcd_gen(q.elem(12), q.elem(18)) == 6
    assert gcd_gen(ctx.elem(3), ctx.zero) == canonical_generator(ctx.elem(3))


def test_gcd_divisibility_properties():
    # g | a, g | b, and every common divisor divides g (via the index)
    for d in (1, 2, 3, 7, 19, 43):
        ctx = make_ctx(d)
        pts = [ctx.elem(x, y) for x in range(-3, 4) for y in range(-2, 3)
               if not (x == 0 and y == 0)]
        rng = random.Random(d)
        for _ in range(25):
            a, b = rng.choice(pts), rng.choice(pts)
            g = gcd_gen(a, b)
            assert divide_exact(a, g) is not None
            assert divide_exact(b, g) is not None
            # the index of the lattice aO + bO equals norm(g)
            gens = [a, a * ctx.omega, b, b * ctx.omega]
            assert lattice_index(gens) == g.norm()


def test_gcd_in_non_euclidean_field():
    # d=19 has no Euclidean algorithm; the lattice search must still work
    ctx = make_ctx(19)
    w = ctx.omega
    a = w * ctx.elem(2) + 3          # some composite element
    b = w * w - 1
    g = gcd_gen(a, b)
    assert divide_exact(a, g) is not None
    assert divide_exact(b, g) is not None
    assert gcd_gen(ctx.elem(10), ctx.elem(4)) == 2


def test_canonical_generator_rules():
    q = make_ctx(0)
    assert canonical_generator(q.elem(-3)) == 3
    ctx = make_ctx(1)
    i = ctx.omega
    z = ctx.elem(1, 1)
    assert canonical_generator(i * z) == canonical_generator(z)
    for d in (0, 1, 3):
        c = make_ctx(d)
        for u in c.units:
            assert canonical_generator(u) == 1
    # multiplicative up to canonicalization
    x, y = ctx.elem(2, 1), ctx.elem(1, -3)
    cx, cy = canonical_generator(x), canonical_generator(y)
    assert canonical_generator(x * y) == canonical_generator(cx * cy)


def test_factor_examples():
    ctx = make_ctx(1)
    f2 = factor(ctx.elem(2))
    assert len(f2) == 1 and f2[0][1] == 2 and f2[0][0].norm == 2
    f5 = factor(ctx.elem(5))
    assert sorted(p.norm for p, _ in f5) == [5, 5]
    assert all(e == 1 for _, e in f5)
    assert factor(ctx.omega) == []


def test_factor_reconstruction_random():
    rng = random.Random(7)
    for d in (0, 1, 2, 3, 7, 11, 19, 163):
        ctx = make_ctx(d)
        for _ in range(12):
            x = ctx.elem(rng.randint(-20, 20),
                         0 if ctx.is_rational else rng.randint(-20, 20))
            if x.is_zero:
                continue
            prod = ctx.one
            for ideal, e in factor(x):
                for _ in range(e):
                    prod = prod * ideal.gen
            u = divide_exact(x, prod)
            assert u is not None and u.is_unit


def test_splitting_matches_kronecker_and_legendre():
    for d in (1, 2, 3, 7, 11, 19, 163):
        ctx = make_ctx(d)
        disc = ctx.discriminant
        for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 163):
            chi = kronecker_symbol(disc, p)
            if p != 2:
                legendre = pow(disc % p, (p - 1) // 2, p)
                expected = 0 if legendre == 0 else (1 if legendre == 1 else -1)
                assert chi == expected
            kind = splitting_type(ctx, p)
            prs = prime_elements_above(ctx, p)
            if kind == "split":
                assert len(prs) == 2 and all(q.norm() == p for q in prs)
            elif kind == "ramified":
                assert len(prs) == 1 and prs[0].norm() == p
            else:
                assert prs == (ctx.elem(p),)


def test_kronecker_basic_identities():
    assert kronecker_symbol(-4, 2) == 0
    assert kronecker_symbol(-4, 5) == 1
    assert kronecker_symbol(-4, 3) == -1
    assert kronecker_symbol(-3, 2) == -1
    # multiplicativity in the lower argument
    for a in (-19, -8, -3, 5):
        for m in range(1, 40):
            for n in range(1, 40):
                assert (kronecker_symbol(a, m * n)
                        == kronecker_symbol(a, m) * kronecker_symbol(a, n))


def test_factor_int():
    assert factor_int(360) == {2: 3, 3: 2, 5: 1}
    assert factor_int(-17) == {17: 1}
    big = 1000003 * 998117
    assert factor_int(big) == {1000003: 1, 998117: 1}
    with pytest.raises(ValueError):
        factor_int(0)


def test_ideals_up_to_counts():
    # frozen from the divisor-sum count sum_{d | n} chi(d) for each norm
    ideals = ideals_up_to(make_ctx(1), 6)
    assert [i.norm for i in ideals] == [1, 2, 4, 5, 5]
    ideals3 = ideals_up_to(make_ctx(3), 7)
    assert [i.norm for i in ideals3] == [1, 3, 4, 7, 7]
    q = ideals_up_to(make_ctx(0), 4)
    assert [i.norm for i in q] == [1, 2, 3, 4]
    # all pairwise distinct as ideals
    assert len({i.gen for i in ideals}) == len(ideals)


def test_frac_ideal_parts():
    ctx = make_ctx(1)
    num, den = frac_ideal_parts(ctx.elem(Fraction(1, 2), Fraction(1, 2)))
    assert num.is_unit
    assert den.norm() == 2
    q = make_ctx(0)
    num, den = frac_ideal_parts(q.elem(Fraction(6, 4)))
    assert num == 3 and den == 2


def test_is_coprime():
    ctx = make_ctx(1)
    assert is_coprime(ctx.elem(1, 1), ctx.elem(2, 1))
    assert not is_coprime(ctx.elem(2), ctx.elem(1, 1))


def test_element_text_roundtrip():
    ctx = make_ctx(3)
    for s in ("0", "1", "-2", "3/2", "w", "-w", "2*w", "3/2 + 5*w",
              "1/2 - 7/3*w"):
        e = parse_element(s, ctx)
        assert parse_element(format_element(e), ctx) == e
    q = make_ctx(0)
    assert parse_element("-5/3", q) == Fraction(-5, 3)
    with pytest.raises(ValueError):
        parse_element("1 + w", q)
    with pytest.raises(ValueError):
        parse_element("", q)


def test_principal_ideal_api():
    ctx = make_ctx(1)
    a = PrincipalIdeal.of(ctx.elem(0, 2))
    b = PrincipalIdeal.of(ctx.elem(2))
    assert a == b and a.norm == 4
    c = PrincipalIdeal.of(ctx.elem(1, 1))
    assert c.divides(a)
    assert not a.divides(c)
    assert (c * c).norm == 4
