"""Exact scalars and sparse polynomials in the fixed variables ∂, λ, μ, ν.

Scalars are Gaussian rationals from sympy's ``QQ_I`` domain, polynomials are
elements of one sparse ring over it. Everything is immutable and exact; the
helpers here only add the few operations the λ-calculus needs on top of sympy.
"""

from dataclasses import dataclass
from fractions import Fraction
from sympy import QQ, QQ_I, oo
from sympy.polys.rings import ring, PolyElement

POLY_RING, D, LAM, MU, NU = ring("d,l,m,n", QQ_I)
VARIABLES = (D, LAM, MU, NU)
VARIABLE_NAMES = ("d", "l", "m", "n")

MultiPoly = PolyElement
Scalar = type(QQ_I.one)

# degree of the zero polynomial
NEG_INFINITY = -oo

ZERO = POLY_RING.zero
ONE = POLY_RING.one


def _to_rational(value):
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, str):
        frac = Fraction(value.strip())
        return QQ(frac.numerator, frac.denominator)
    return QQ.convert(value)


def scalar(re=0, im=0) -> Scalar:
    """Builds a Gaussian rational re + im·i from ints, Fractions, rational strings or QQ elements."""
    if isinstance(re, Scalar):
        return re if not im else re + QQ_I(0, _to_rational(im))
    return QQ_I(_to_rational(re), _to_rational(im))


def re_part(c: Scalar) -> Fraction:
    return Fraction(int(c.x.numerator), int(c.x.denominator))


def im_part(c: Scalar) -> Fraction:
    return Fraction(int(c.y.numerator), int(c.y.denominator))


def is_real(c: Scalar) -> bool:
    return not c.y


def const(c) -> MultiPoly:
    return POLY_RING.ground_new(scalar(c) if not isinstance(c, Scalar) else c)


def var_index(var) -> int:
    if isinstance(var, str):
        return VARIABLE_NAMES.index(var)
    return POLY_RING.gens.index(var)


def substitute(p: MultiPoly, var, expr: MultiPoly) -> MultiPoly:
    """Image of p under the ring map var ↦ expr, every other variable fixed."""
    return p.compose(VARIABLES[var_index(var)], expr)


def substitute_many(p: MultiPoly, mapping: list[tuple]) -> MultiPoly:
    """Simultaneous substitution; each pair is (variable, expression)."""
    if not mapping:
        return p
    return p.compose([(VARIABLES[var_index(v)], e) for v, e in mapping])


def coeff_of(p: MultiPoly, var, k: int) -> MultiPoly:
    """The coefficient of var^k in p, a polynomial in the remaining variables."""
    idx = var_index(var)
    terms = {}
    for monom, coeff in p.items():
        if monom[idx] == k:
            reduced = list(monom)
            reduced[idx] = 0
            terms[tuple(reduced)] = coeff
    return POLY_RING.from_dict(terms) if terms else POLY_RING.zero


def uses_only(p: MultiPoly, allowed: tuple) -> bool:
    """True if every monomial of p only involves the listed variables."""
    allowed_idx = {var_index(v) for v in allowed}
    return all(
        not e or i in allowed_idx for monom in p.keys() for i, e in enumerate(monom)
    )


@dataclass(frozen=True)
class Degrees:
    total: object
    per_var: dict

    def of(self, var):
        return self.per_var[VARIABLE_NAMES[var_index(var)]]


def degrees(p: MultiPoly) -> Degrees:
    if not p:
        return Degrees(NEG_INFINITY, {name: NEG_INFINITY for name in VARIABLE_NAMES})
    per_var = {
        name: max(monom[i] for monom in p.keys())
        for i, name in enumerate(VARIABLE_NAMES)
    }
    return Degrees(max(sum(monom) for monom in p.keys()), per_var)


def total_degree(p: MultiPoly):
    return degrees(p).total


def degree_in(p: MultiPoly, var):
    if not p:
        return NEG_INFINITY
    idx = var_index(var)
    return max(monom[idx] for monom in p.keys())


def top_homogeneous_part(p: MultiPoly) -> MultiPoly:
    if not p:
        return p
    top = total_degree(p)
    return POLY_RING.from_dict({m: c for m, c in p.items() if sum(m) == top})


def graded_lex_key(monom: tuple) -> tuple:
    # descending sort with this key gives graded-lex with ∂ > λ > μ > ν
    return (sum(monom), monom)


def sorted_terms(p: MultiPoly) -> list[tuple[tuple, Scalar]]:
    return sorted(p.items(), key=lambda t: graded_lex_key(t[0]), reverse=True)


def leading_coefficient(p: MultiPoly) -> Scalar:
    """Coefficient of the graded-lex leading monomial."""
    return sorted_terms(p)[0][1]


def normalize_leading(p: MultiPoly) -> MultiPoly:
    """Scales p so that its graded-lex leading coefficient is 1."""
    if not p:
        return p
    return p.mul_ground(QQ_I.one / leading_coefficient(p))


def is_scalar_multiple(p: MultiPoly, q: MultiPoly) -> bool:
    """True if p = k·q for some nonzero Scalar k (both nonzero)."""
    if not p or not q:
        return not p and not q
    return normalize_leading(p) == normalize_leading(q)


def split_affine(p: MultiPoly) -> tuple[Scalar, Scalar] | None:
    """Returns (a, b) if p equals ∂ + aλ + b exactly, else None."""
    unit_d = (1, 0, 0, 0)
    unit_l = (0, 1, 0, 0)
    origin = (0, 0, 0, 0)
    if p.get(unit_d) != QQ_I.one:
        return None
    if any(monom not in (unit_d, unit_l, origin) for monom in p.keys()):
        return None
    return p.get(unit_l, QQ_I.zero), p.get(origin, QQ_I.zero)


# ───────────────────────────────── rendering ───────────────────────────────── #


def _render_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def render_scalar(c: Scalar) -> str:
    """Canonical text of a Scalar: `p`, `p/q`, `r/s*i`, `p/q+r/s*i`."""
    re, im = re_part(c), im_part(c)
    if not im:
        return _render_rational(re)
    if im == 1:
        im_text = "i"
    elif im == -1:
        im_text = "-i"
    else:
        im_text = f"{_render_rational(im)}*i"
    if not re:
        return im_text
    sign = "" if im_text.startswith("-") else "+"
    return f"{_render_rational(re)}{sign}{im_text}"


def _render_monomial(monom: tuple) -> str:
    factors = []
    for name, e in zip(VARIABLE_NAMES, monom):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors)


def render(p: MultiPoly) -> str:
    """Canonical text form in graded-lex order, re-parsable by polyparse."""
    if not p:
        return "0"
    pieces = []
    for monom, coeff in sorted_terms(p):
        negative = False
        if is_real(coeff):
            negative = re_part(coeff) < 0
            magnitude = -coeff if negative else coeff
            coeff_text = render_scalar(magnitude)
        elif not coeff.x:
            negative = im_part(coeff) < 0
            magnitude = -coeff if negative else coeff
            coeff_text = render_scalar(magnitude)
        else:
            coeff_text = f"({render_scalar(coeff)})"
        monom_text = _render_monomial(monom)
        if not monom_text:
            body = coeff_text
        elif coeff_text == "1":
            body = monom_text
        else:
            body = f"{coeff_text}*{monom_text}"
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return "".join(pieces)
