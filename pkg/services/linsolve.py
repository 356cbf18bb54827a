"""Exact linear algebra over the Gaussian rationals."""

from sympy import I, Dummy, Poly, QQ_I, expand
from sympy.polys.matrices import DomainMatrix
from services.exactpoly import Scalar


def to_domain_matrix(rows: list[list[Scalar]], ncols: int) -> DomainMatrix:
    return DomainMatrix([list(row) for row in rows], (len(rows), ncols), QQ_I)


def rref(rows: list[list[Scalar]], ncols: int) -> tuple[list[list[Scalar]], tuple]:
    if not rows:
        return [], ()
    reduced, pivots = to_domain_matrix(rows, ncols).rref()
    nrows = reduced.shape[0]
    return [[reduced[i, j].element for j in range(ncols)] for i in range(nrows)], tuple(pivots)


def nullspace(rows: list[list[Scalar]], ncols: int) -> list[list[Scalar]]:
    """Basis of {x : A·x = 0}, one vector per free column of the RREF.

    The free column of each vector holds 1, the other free columns 0. Vectors come
    in increasing free-column order, which makes the basis deterministic.
    """
    reduced, pivots = rref(rows, ncols)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        vec = [QQ_I.zero] * ncols
        vec[f] = QQ_I.one
        for r, p in enumerate(pivots):
            vec[p] = -reduced[r][f]
        basis.append(vec)
    return basis


def rank(rows: list[list[Scalar]], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def charpoly(rows: list[list[Scalar]]) -> list[Scalar]:
    """Characteristic polynomial coefficients, leading coefficient first."""
    n = len(rows)
    if n == 0:
        return [QQ_I.one]
    return list(to_domain_matrix(rows, n).charpoly())


def gaussian_roots(coeffs: list[Scalar]) -> list[Scalar]:
    """Distinct Gaussian-rational roots of a polynomial given leading coefficient first."""
    x = Dummy("x")
    degree = len(coeffs) - 1
    expr = sum(QQ_I.to_sympy(c) * x ** (degree - k) for k, c in enumerate(coeffs))
    expr = expand(expr)
    if not expr.has(x):
        return []
    poly = Poly(expr, x, extension=I)
    roots = []
    for factor, _ in poly.factor_list()[1]:
        if factor.degree() != 1:
            continue
        lead, tail = factor.all_coeffs()
        root = QQ_I.from_sympy(expand(-tail / lead))
        if root not in roots:
            roots.append(root)
    return sorted(roots, key=lambda r: (QQ_I.to_sympy(r).as_real_imag()))
