"""Command-line surface: batch access to the algebra, states, and checks.

Every subcommand prints one JSON object with sorted keys, so identical
invocations produce byte-identical output.  Exact rationals are emitted
as strings ("-1/8") next to float renderings; cyclotomic values carry
their modulus and coefficient vector.  Exit codes: 0 on success, 1 when
a verification-style command finds a failure (or a domain precondition
is violated), 2 on usage errors.

A config file of key=value lines can preset any option; explicit flags
win.  The environment variable HECKE_LEVEL_MAX caps the level/bound of
enumeration-heavy commands as a safety valve.
"""
from __future__ import annotations

import cmath
import json
import os
import re
from fractions import Fraction

import click

from .cyclotomic import CycloNum
from .hecke_algebra import (HeckeElement, adjoint, identity, mu, mul_hecke,
                            theta)
from .kms import (KmsParams, phi_extreme_beta, phi_extreme_infty,
                  phi_symmetric, zeta_k)
from .numberfield import (FieldCtx, canonical_generator, ctx_from_tag,
                          format_element, parse_element)
from .oracle import verify_equivalence
from .pairing import CharacterPoint, pair_exponent
from .symmetry import SymmetryElem, compare_actions, regularity_check
from .torsion import TorsionClass, torsion_class

__all__ = ["main"]


# -- plumbing ---------------------------------------------------------------

def _emit(data: dict) -> None:
    click.echo(json.dumps(data, sort_keys=True, separators=(", ", ": ")))


def _field(tag: str) -> FieldCtx:
    try:
        return ctx_from_tag(tag)
    except (ValueError, KeyError):
        raise click.UsageError(f"unknown field tag {tag!r}; use Q or d<k> "
                               "with k in 1,2,3,7,11,19,43,67,163")


def _elem(ctx: FieldCtx, text: str):
    try:
        return parse_element(text, ctx)
    except ValueError as exc:
        raise click.UsageError(f"bad element {text!r}: {exc}")


def _torsion(ctx: FieldCtx, text: str) -> TorsionClass:
    s = text.strip()
    m = re.fullmatch(r"\((?P<num>[^()]*)\)\s*/\s*\((?P<den>[^()]*)\)", s)
    try:
        if m:
            num = parse_element(m.group("num"), ctx)
            den = parse_element(m.group("den"), ctx)
            if den.is_zero:
                raise ValueError("zero denominator")
            return torsion_class(num / den)
        return torsion_class(parse_element(s, ctx))
    except ValueError as exc:
        raise click.UsageError(f"bad torsion class {text!r}: {exc}")


def _rat_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else \
        f"{q.numerator}/{q.denominator}"


def _cyclo_json(v: CycloNum) -> dict:
    z = v.numeric()
    return {
        "cyclotomic": {"m": v.m, "coeffs": [_rat_str(c) for c in v.coeffs]},
        "numeric": [z.real, z.imag],
    }


def _apply_config(params: dict, config_path: str | None) -> dict:
    """Fill in options that were left at their defaults from a
    key=value file; explicit command-line flags keep priority."""
    if not config_path:
        return params
    fromfile = {}
    with open(config_path, encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise click.UsageError(
                    f"config line {line!r} is not key=value")
            key, val = (part.strip() for part in line.split("=", 1))
            fromfile[key.replace("-", "_")] = val
    clicktx = click.get_current_context()
    merged = dict(params)
    for key, val in fromfile.items():
        if key not in merged:
            raise click.UsageError(f"unknown config key {key!r}")
        src = clicktx.get_parameter_source(key)
        if src is not None and src.name != "COMMANDLINE":
            merged[key] = val
    return merged


def _level_guard(norm: int) -> None:
    cap = os.environ.get("HECKE_LEVEL_MAX")
    if cap is None:
        return
    try:
        capval = int(cap)
    except ValueError:
        raise click.UsageError(f"HECKE_LEVEL_MAX={cap!r} is not an integer")
    if norm > capval:
        raise click.UsageError(
            f"requested enumeration size {norm} exceeds HECKE_LEVEL_MAX="
            f"{capval}")


_FACTOR_RE = re.compile(
    r"(?P<name>theta|mustar|mu\*|mu|id)\s*(?:\(\s*(?P<arg>[^()]*)\s*\))?")


def _parse_algebra(ctx: FieldCtx, text: str) -> HeckeElement:
    """A product of generators: theta(r), mu(a), mustar(a) (or mu*(a)),
    id; factors separated by whitespace or '*'."""
    out = identity(ctx)
    pos = 0
    s = text.strip()
    seen = False
    while pos < len(s):
        if s[pos] in " \t*":
            pos += 1
            continue
        m = _FACTOR_RE.match(s, pos)
        if not m:
            raise click.UsageError(
                f"cannot read generator at {s[pos:]!r}; expected "
                "theta(r), mu(a), mustar(a) or id")
        name, arg = m.group("name"), m.group("arg")
        if name == "id":
            fac = identity(ctx)
        elif arg is None:
            raise click.UsageError(f"{name} needs an argument")
        elif name == "theta":
            fac = theta(_elem(ctx, arg))
        elif name == "mu":
            fac = mu(_elem(ctx, arg))
        else:
            fac = adjoint(mu(_elem(ctx, arg)))
        out = mul_hecke(out, fac)
        pos = m.end()
        seen = True
    if not seen:
        raise click.UsageError(f"empty algebra expression {text!r}")
    return out


# -- commands ---------------------------------------------------------------

@click.group()
def main() -> None:
    """Exact computations in the Hecke algebra of an ax+b group over a
    class-number-one imaginary quadratic field or over the rationals."""


@main.command("field")
@click.option("--field", "field_tag", default="Q", show_default=True)
@click.option("--config", "config_path", type=click.Path(exists=True),
              default=None)
def field_cmd(field_tag: str, config_path: str | None) -> None:
    """Describe the chosen base field and its integer ring."""
    params = _apply_config({"field_tag": field_tag}, config_path)
    ctx = _field(params["field_tag"])
    _emit({
        "field": ctx.tag,
        "rational": ctx.is_rational,
        "discriminant": ctx.discriminant,
        "omega": format_element(ctx.omega),
        "delta": format_element(ctx.delta),
        "units": [format_element(u) for u in ctx.units],
    })


@main.command("mul")
@click.option("--field", "field_tag", default="Q", show_default=True)
@click.option("--config", "config_path", type=click.Path(exists=True),
              default=None)
@click.argument("left")
@click.argument("right")
def mul_cmd(field_tag: str, config_path: str | None, left: str,
            right: str) -> None:
    """Multiply two products of generators and print the expansion."""
    params = _apply_config({"field_tag": field_tag}, config_path)
    ctx = _field(params["field_tag"])
    product = mul_hecke(_parse_algebra(ctx, left), _parse_algebra(ctx, right))
    terms = []
    for mono, coeff in sorted(product.terms.items(),
                              key=lambda kv: kv[0].sort_key()):
        terms.append({
            "a": format_element(mono.a),
            "r": format_element(mono.r.rep),
            "b": format_element(mono.b),
            "coeff": {"exact": _rat_str(coeff), "numeric": float(coeff)},
        })
    _emit({"field": ctx.tag, "terms": terms})


@main.command("kms")
@click.option("--field", "field_tag", default="Q", show_default=True)
@click.option("--beta", default="2", show_default=True,
              help="inverse temperature; integer, float, or inf")
@click.option("--r", "r_text", required=True, help="torsion class, e.g. "
              '"(1)/(5)"')
@click.option("--extreme", is_flag=True, default=False,
              help="evaluate the extreme state at a character point")
@click.option("--level", default=None, help="character level (extreme)")
@click.option("--w", "w_text", default="1", show_default=True,
              help="character datum (extreme)")
@click.option("--bound", default=100000, show_default=True,
              help="series cutoff for finite-beta extreme states")
@click.option("--config", "config_path", type=click.Path(exists=True),
              default=None)
def kms_cmd(field_tag: str, beta: str, r_text: str, extreme: bool,
            level: str | None, w_text: str, bound: int,
            config_path: str | None) -> None:
    """Evaluate an equilibrium state on theta(r)."""
    params = _apply_config({
        "field_tag": field_tag, "beta": beta, "r_text": r_text,
        "extreme": extreme, "level": level, "w_text": w_text,
        "bound": bound,
    }, config_path)
    ctx = _field(params["field_tag"])
    r = _torsion(ctx, params["r_text"])
    beta_text = str(params["beta"]).strip().lower()
    extreme = params["extreme"] in (True, "true", "1", "yes")
    try:
        if not extreme:
            if beta_text in ("inf", "infinity"):
                raise click.UsageError(
                    "beta=inf needs --extreme (ground states live at "
                    "character points)")
            bval = int(beta_text) if beta_text.isdigit() else \
                float(beta_text)
            val = phi_symmetric(r, bval)
            if isinstance(val, Fraction):
                _emit({"beta": beta_text, "exact": _rat_str(val),
                       "field": ctx.tag, "numeric": float(val)})
            else:
                _emit({"beta": beta_text, "field": ctx.tag,
                       "numeric": float(val)})
            return
        if params["level"] is None:
            raise click.UsageError("--extreme needs --level")
        chi = CharacterPoint.make(ctx, _elem(ctx, str(params["level"])),
                                  _elem(ctx, str(params["w_text"])))
        if beta_text in ("inf", "infinity"):
            out = _cyclo_json(phi_extreme_infty(r, chi))
            out.update({"beta": "inf", "field": ctx.tag,
                        "level": format_element(chi.c),
                        "w": format_element(chi.w)})
            _emit(out)
            return
        kp = KmsParams(beta=float(beta_text), bound=int(params["bound"]))
        _level_guard(kp.bound)
        val, err = phi_extreme_beta(r, chi, kp)
        _emit({"beta": beta_text, "bound": kp.bound, "err": err,
               "field": ctx.tag, "level": format_element(chi.c),
               "numeric": [val.real, val.imag],
               "w": format_element(chi.w)})
    except ValueError as exc:
        raise click.ClickException(str(exc))


@main.command("zeta")
@click.option("--field", "field_tag", default="Q", show_default=True)
@click.option("--beta", default=2.0, show_default=True, type=float)
@click.option("--tol", default=1e-7, show_default=True, type=float)
@click.option("--config", "config_path", type=click.Path(exists=True),
              default=None)
def zeta_cmd(field_tag: str, beta: float, tol: float,
             config_path: str | None) -> None:
    """Partition function value with a certified error bound."""
    params = _apply_config({"field_tag": field_tag, "beta": beta,
                            "tol": tol}, config_path)
    ctx = _field(params["field_tag"])
    try:
        val, err = zeta_k(ctx, float(params["beta"]),
                          tol=float(params["tol"]))
    except ValueError as exc:
        raise click.ClickException(str(exc))
    _emit({"beta": float(params["beta"]), "err": err, "field": ctx.tag,
           "value": val})


@main.command("pair")
@click.option("--field", "field_tag", default="Q", show_default=True)
@click.option("--level", required=True)
@click.option("--w", "w_text", default="1", show_default=True)
@click.option("--r", "r_text", required=True)
@click.option("--config", "config_path", type=click.Path(exists=True),
              default=None)
def pair_cmd(field_tag: str, level: str, w_text: str, r_text: str,
             config_path: str | None) -> None:
    """Pair a torsion class with a character point."""
    params = _apply_config({"field_tag": field_tag, "level": level,
                            "w_text": w_text, "r_text": r_text},
                           config_path)
    ctx = _field(params["field_tag"])
    try:
        chi = CharacterPoint.make(ctx, _elem(ctx, params["level"]),
                                  _elem(ctx, params["w_text"]))
        e = pair_exponent(_torsion(ctx, params["r_text"]), chi)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    z = cmath.exp(2j * cmath.pi * float(e))
    _emit({"exponent": _rat_str(e), "field": ctx.tag,
           "numeric": [z.real, z.imag], "order": e.denominator})


@main.command("verify")
@click.option("--field", "field_tag", default="Q", show_default=True)
@click.option("--level", default=4, show_default=True, type=int,
              help="norm bound for the monomial sweep")
@click.option("--config", "config_path", type=click.Path(exists=True),
              default=None)
def verify_cmd(field_tag: str, level: int, config_path: str | None) -> None:
    """Sweep all small monomial products against the coset oracle."""
    params = _apply_config({"field_tag": field_tag, "level": level},
                           config_path)
    ctx = _field(params["field_tag"])
    bound = int(params["level"])
    _level_guard(bound)
    report = verify_equivalence(ctx, bound)
    _emit({
        "checked": report["checked"],
        "failures": report["failures"],
        "field": ctx.tag,
        "level": bound,
        "monomials": report["monomials"],
    })
    if report["failed"]:
        raise SystemExit(1)


@main.command("galois-compare")
@click.option("--field", "field_tag", default="Q", show_default=True)
@click.option("--level", required=True)
@click.option("--w", "w_text", default="1", show_default=True)
@click.option("--j", "j_text", required=True)
@click.option("--r", "r_text", required=True)
@click.option("--config", "config_path", type=click.Path(exists=True),
              default=None)
def galois_cmd(field_tag: str, level: str, w_text: str, j_text: str,
               r_text: str, config_path: str | None) -> None:
    """Geometric versus arithmetic action on one ground-state value."""
    params = _apply_config({"field_tag": field_tag, "level": level,
                            "w_text": w_text, "j_text": j_text,
                            "r_text": r_text}, config_path)
    ctx = _field(params["field_tag"])
    try:
        lvl = _elem(ctx, params["level"])
        chi = CharacterPoint.make(ctx, lvl, _elem(ctx, params["w_text"]))
        g = SymmetryElem.make(ctx, lvl, _elem(ctx, params["j_text"]))
        rep = compare_actions(_torsion(ctx, params["r_text"]), chi, g)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    _emit({
        "arithmetic": _cyclo_json(rep["arithmetic_value"]),
        "equal": rep["equal"],
        "field": ctx.tag,
        "geometric": _cyclo_json(rep["geometric_value"]),
        "j": format_element(g.j),
        "level": format_element(chi.c),
        "w": format_element(chi.w),
    })


@main.command("regularity")
@click.option("--field", "field_tag", default="Q", show_default=True)
@click.option("--level", required=True)
@click.option("--config", "config_path", type=click.Path(exists=True),
              default=None)
def regularity_cmd(field_tag: str, level: str,
                   config_path: str | None) -> None:
    """Check that the symmetry group permutes the level's ground states
    simply transitively."""
    params = _apply_config({"field_tag": field_tag, "level": level},
                           config_path)
    ctx = _field(params["field_tag"])
    try:
        lvl = canonical_generator(_elem(ctx, params["level"]))
        _level_guard(int(lvl.norm()))
        rep = regularity_check(lvl)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    _emit({
        "all_ok": rep["all_ok"],
        "counts_match": rep["counts_match"],
        "extreme_classes": rep["extreme_classes"],
        "field": ctx.tag,
        "free": rep["free"],
        "group_order": rep["group_order"],
        "level": format_element(rep["level"]),
        "orbits_align": rep["orbits_align"],
        "transitive": rep["transitive"],
        "transport_ok": rep["transport_ok"],
    })
    if not rep["all_ok"]:
        raise SystemExit(1)


if __name__ == "__main__":
    main()
