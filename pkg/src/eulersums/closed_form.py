"""Exact closed forms: rational linear combinations of 1, zeta(m) and pi*Cl2(a*pi).

A ``ClosedForm`` is immutable and always canonical: Clausen angles are reduced
into (0, 1) by periodicity and oddness, Cl2(0) = Cl2(pi) = 0 terms are
dropped, Cl2(2pi/3) is rewritten as (2/3) Cl2(pi/3), and zero coefficients
are never stored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Union

from . import specfun

INT64_MAX = 2**63 - 1

RationalLike = Union[int, Fraction]


def rational(value: RationalLike, den: int = 1) -> Fraction:
    """Build a Fraction, refusing anything that does not fit in signed 64-bit parts."""
    q = Fraction(value) / den
    _check_fits(q)
    return q


def _check_fits(q: Fraction) -> Fraction:
    if abs(q.numerator) > INT64_MAX or q.denominator > INT64_MAX:
        raise OverflowError(f"rational {q} exceeds 64-bit numerator/denominator")
    return q


@dataclass(frozen=True, order=False)
class One:
    def sort_key(self):
        return (0, Fraction(0))

    def render(self) -> str:
        return "1"

    def value(self) -> float:
        return 1.0


@dataclass(frozen=True)
class Zeta:
    m: int

    def __post_init__(self):
        if self.m < 2:
            raise ValueError(f"zeta basis constant needs m >= 2, got {self.m}")

    def sort_key(self):
        return (1, Fraction(self.m))

    def render(self) -> str:
        return f"zeta({self.m})"

    def value(self) -> float:
        return specfun.zeta_int(self.m)


@dataclass(frozen=True)
class PiCl2:
    """pi * Cl2(angle * pi)."""

    angle: Fraction

    def sort_key(self):
        return (2, self.angle)

    def render(self) -> str:
        return f"pi*Cl2({_render_fraction(self.angle)}*pi)"

    def value(self) -> float:
        return math.pi * specfun.clausen2(float(self.angle) * math.pi)


BasisConstant = Union[One, Zeta, PiCl2]


class AngleReduction(NamedTuple):
    """Cl2(a pi) = sign * factor * Cl2(angle pi); angle is None when the value is 0."""

    sign: int
    angle: Fraction | None
    factor: Fraction


def canonicalize_angle(angle: RationalLike) -> AngleReduction:
    a = Fraction(angle) % 2
    sign = 1
    if a > 1:
        a = 2 - a
        sign = -1
    if a == 0 or a == 1:
        return AngleReduction(0, None, Fraction(0))
    if a == Fraction(2, 3):
        # Cl2(2t) = 2 Cl2(t) - 2 Cl2(pi - t) at t = pi/3
        return AngleReduction(sign, Fraction(1, 3), Fraction(2, 3))
    return AngleReduction(sign, a, Fraction(1))


def _render_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class ClosedForm:
    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[BasisConstant, RationalLike] | Iterable = ()):
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for basis, coef in items:
            coef = Fraction(coef)
            if isinstance(basis, PiCl2):
                red = canonicalize_angle(basis.angle)
                if red.angle is None:
                    continue
                basis = PiCl2(red.angle)
                coef = coef * red.sign * red.factor
            acc[basis] = _check_fits(acc.get(basis, Fraction(0)) + coef)
        self._terms = tuple(
            sorted(((b, c) for b, c in acc.items() if c != 0), key=lambda bc: bc[0].sort_key())
        )

    @classmethod
    def one(cls, q: RationalLike = 1) -> "ClosedForm":
        return cls({One(): q})

    @classmethod
    def zeta(cls, m: int, q: RationalLike = 1) -> "ClosedForm":
        return cls({Zeta(m): q})

    @classmethod
    def pi_cl2(cls, angle: RationalLike, q: RationalLike = 1) -> "ClosedForm":
        return cls({PiCl2(Fraction(angle)): q})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if not isinstance(other, ClosedForm):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    def __add__(self, other: "ClosedForm") -> "ClosedForm":
        return cf_add(self, other)

    def __neg__(self) -> "ClosedForm":
        return cf_scale(-1, self)

    def __sub__(self, other: "ClosedForm") -> "ClosedForm":
        return cf_add(self, cf_scale(-1, other))

    def __rmul__(self, q: RationalLike) -> "ClosedForm":
        return cf_scale(q, self)

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"ClosedForm({render(self)!r})"


def cf_add(a: ClosedForm, b: ClosedForm) -> ClosedForm:
    return ClosedForm(list(a) + list(b))


def cf_scale(q: RationalLike, a: ClosedForm) -> ClosedForm:
    q = _check_fits(Fraction(q))
    return ClosedForm([(basis, _check_fits(q * c)) for basis, c in a])


def cf_eval(a: ClosedForm) -> float:
    return math.fsum(float(c) * basis.value() for basis, c in a)


def cf_eval_error(a: ClosedForm) -> float:
    """Error bound for cf_eval: 1e-13 relative to the sum of term magnitudes."""
    return 1e-13 * math.fsum(abs(float(c) * basis.value()) for basis, c in a)


def cf_equal(a: ClosedForm, b: ClosedForm) -> bool:
    """Structural equality of canonical forms."""
    return a == b


def cf_numeric_diff(a: ClosedForm, b: ClosedForm) -> float:
    """Diagnostic: |cf_eval(a) - cf_eval(b)|, for forms that differ structurally."""
    return abs(cf_eval(a) - cf_eval(b))


def render(a: ClosedForm) -> str:
    """Stable text form, e.g. '11/4*zeta(3) - 2*pi*Cl2(1/2*pi)'."""
    if not len(a):
        return "0"
    out = []
    for i, (basis, c) in enumerate(a):
        mag = abs(c)
        if isinstance(basis, One):
            body = _render_fraction(mag)
        elif mag == 1:
            body = basis.render()
        else:
            body = f"{_render_fraction(mag)}*{basis.render()}"
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out)


def parse(text: str) -> ClosedForm:
    """Inverse of :func:`render` (used for catalog JSON round trips)."""
    import re

    text = text.strip()
    if text == "0":
        return ClosedForm()
    tokens = re.split(r"\s+([+-])\s+", text)
    signs = [1] + [1 if t == "+" else -1 for t in tokens[1::2]]
    parts = tokens[0::2]
    terms = []
    for sign, part in zip(signs, parts):
        if part.startswith("-"):
            sign, part = -sign, part[1:]
        m = re.fullmatch(r"(?:(\d+(?:/\d+)?)\*)?(zeta\((\d+)\)|pi\*Cl2\((\d+(?:/\d+)?)\*pi\))", part)
        if m:
            coef = Fraction(m.group(1)) if m.group(1) else Fraction(1)
            basis = Zeta(int(m.group(3))) if m.group(3) else PiCl2(Fraction(m.group(4)))
        elif re.fullmatch(r"\d+(?:/\d+)?", part):
            coef, basis = Fraction(part), One()
        else:
            raise ValueError(f"cannot parse closed-form term {part!r}")
        terms.append((basis, sign * coef))
    return ClosedForm(terms)
