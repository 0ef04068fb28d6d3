"""Construction of the 15-point Gauss-Kronrod rule at arbitrary precision.

The embedded pair is the classic (G7, K15): the 7 Gauss-Legendre nodes are a
subset of the 15 Kronrod nodes, so one batch of 15 integrand evaluations
yields both the high-order estimate and the embedded error estimate.

Standard tabulations of the K15 nodes stop near 20 significant digits, which
is useless for quadrature carried out at 100+ digits, so the rule is rebuilt
from scratch at whatever precision is requested:

  * The 8 Kronrod-only nodes are the roots of the degree-8 Stieltjes
    polynomial E_8, defined by the orthogonality conditions
    int_{-1}^{1} P_7(x) E_8(x) x^k dx = 0 for k = 0..7.  By parity E_8 is
    even, and only odd k give nontrivial conditions, so its coefficients in
    the Legendre basis follow from an exact 4x4 rational linear system.
  * Node positions come from mpmath.polyroots at extended precision (E_8 is
    even and P_7 odd, so the root finding reduces to a quartic and a cubic
    in y = x**2).
  * Gauss weights use the closed form 2 / ((1 - x^2) P_7'(x)^2); Kronrod
    weights solve the symmetric even-moment system.

Everything is cached per decimal-digit level; the construction is verified
by the exactness property tests (degree 13 for G7, degree 22 for K15).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import gmpy2
import mpmath
import numpy as np

GAUSS_DEGREE = 7
KRONROD_SIZE = 2 * GAUSS_DEGREE + 1

# extra decimal digits used while constructing a rule for a given target
_CONSTRUCTION_GUARD = 25


def _legendre_coeffs(k: int) -> list[Fraction]:
    """Exact monomial coefficients of the Legendre polynomial P_k.

    Returns a list c with P_k(x) = sum_j c[j] x^j, using the recurrence
    (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}.
    """
    p0 = [Fraction(1)]
    if k == 0:
        return p0
    p1 = [Fraction(0), Fraction(1)]
    for m in range(1, k):
        nxt = [Fraction(0)] * (m + 2)
        for j, c in enumerate(p1):
            nxt[j + 1] += Fraction(2 * m + 1, m + 1) * c
        for j, c in enumerate(p0):
            nxt[j] -= Fraction(m, m + 1) * c
        p0, p1 = p1, nxt
    return p1


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _integrate_sym(coeffs: list[Fraction]) -> Fraction:
    """int_{-1}^{1} sum_j c[j] x^j dx (odd powers drop out)."""
    total = Fraction(0)
    for j in range(0, len(coeffs), 2):
        total += 2 * coeffs[j] / (j + 1)
    return total


def _stieltjes_e8_coeffs() -> list[Fraction]:
    """Exact monomial coefficients of the Stieltjes polynomial E_8.

    Normalized so that its Legendre-basis leading coefficient (of P_8) is 1.
    """
    p7 = _legendre_coeffs(7)
    basis = {j: _legendre_coeffs(j) for j in (0, 2, 4, 6, 8)}
    odd_k = (1, 3, 5, 7)

    # moments M[k][j] = int x^k P_7 P_j
    def moment(k: int, j: int) -> Fraction:
        xk = [Fraction(0)] * k + [Fraction(1)]
        return _integrate_sym(_poly_mul(xk, _poly_mul(p7, basis[j])))

    # rows: sum_j c_j M[k][j] = -M[k][8],  unknowns c_0, c_2, c_4, c_6
    unknowns = (0, 2, 4, 6)
    mat = [[moment(k, j) for j in unknowns] for k in odd_k]
    rhs = [-moment(k, 8) for k in odd_k]

    # exact Gaussian elimination over the rationals
    m = 4
    for col in range(m):
        piv = next(r for r in range(col, m) if mat[r][col] != 0)
        mat[col], mat[piv] = mat[piv], mat[col]
        rhs[col], rhs[piv] = rhs[piv], rhs[col]
        inv = 1 / mat[col][col]
        mat[col] = [v * inv for v in mat[col]]
        rhs[col] *= inv
        for r in range(m):
            if r != col and mat[r][col]:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[col])]
                rhs[r] -= f * rhs[col]

    coeffs = [Fraction(0)] * 9
    for cj, j in zip(rhs, unknowns):
        for p, c in enumerate(basis[j]):
            coeffs[p] += cj * c
    for p, c in enumerate(basis[8]):
        coeffs[p] += c
    return coeffs


@dataclass(frozen=True)
class GaussKronrodRule:
    """The (G7, K15) pair on [-1, 1] at a given decimal precision.

    ``nodes`` are the 15 Kronrod abscissas in ascending order.  ``weights_k``
    are the K15 weights; ``weights_g`` has the G7 weight at the embedded
    Gauss positions and exact zero elsewhere, so a single f-batch serves both
    quadrature sums.
    """

    digits: int
    nodes: tuple
    weights_k: tuple
    weights_g: tuple

    def as_float64(self):
        x = np.array([float(v) for v in self.nodes])
        wk = np.array([float(v) for v in self.weights_k])
        wg = np.array([float(v) for v in self.weights_g])
        return x, wk, wg

    def as_mpfr(self, precision_bits):
        with gmpy2.context(precision=precision_bits):
            x = tuple(gmpy2.mpfr(mpmath.nstr(v, self.digits + 15)) for v in self.nodes)
            wk = tuple(gmpy2.mpfr(mpmath.nstr(v, self.digits + 15)) for v in self.weights_k)
            wg = tuple(gmpy2.mpfr(mpmath.nstr(v, self.digits + 15)) for v in self.weights_g)
        return x, wk, wg


_RULE_CACHE: dict[int, GaussKronrodRule] = {}


def _poly_eval(coeffs, x):
    acc = mpmath.mpf(0)
    for c in reversed(coeffs):
        acc = acc * x + mpmath.mpf(c.numerator) / c.denominator
    return acc


def _positive_even_roots(coeffs: list[Fraction]):
    """Positive roots of an even polynomial, via its reduction in y = x**2."""
    reduced = coeffs[::2]  # degree halves
    poly = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(reduced)]
    roots = mpmath.polyroots(poly, maxsteps=200, extraprec=120)
    out = []
    for r in roots:
        assert abs(mpmath.im(r)) < mpmath.mpf(10) ** (-mpmath.mp.dps + 20)
        y = mpmath.re(r)
        if y > 0:
            out.append(mpmath.sqrt(y))
    return sorted(out)


def gauss_kronrod_15(digits: int) -> GaussKronrodRule:
    """Build (or fetch from cache) the G7/K15 pair good to `digits` decimals."""
    rule = _RULE_CACHE.get(digits)
    if rule is not None:
        return rule

    with mpmath.workdps(digits + _CONSTRUCTION_GUARD):
        p7 = _legendre_coeffs(7)
        e8 = _stieltjes_e8_coeffs()

        gauss_pos = _positive_even_roots([c for c in _poly_div_x(p7)])
        kron_pos = _positive_even_roots(e8)
        assert len(gauss_pos) == 3 and len(kron_pos) == 4

        # derivative of P_7 for the Gauss weights
        dp7 = [j * c for j, c in enumerate(p7)][1:]

        def gauss_weight(x):
            d = _poly_eval(dp7, x)
            return 2 / ((1 - x * x) * d * d)

        # unique non-negative nodes: 0 < k1 < g1 < k2 < g2 < k3 < g3 < k4
        uniq = sorted([mpmath.mpf(0)] + gauss_pos + kron_pos)

        def is_gauss_node(x):
            return x == 0 or any(x == g for g in gauss_pos)

        # Kronrod weights from the even-moment system:
        #   w0 * [k==0] + 2 sum_j w_j x_j^{2k} = 2/(2k+1),   k = 0..7
        m = len(uniq)
        mat = mpmath.zeros(m, m)
        rhs = mpmath.zeros(m, 1)
        for k in range(m):
            rhs[k] = mpmath.mpf(2) / (2 * k + 1)
            for j, x in enumerate(uniq):
                if x == 0:
                    mat[k, j] = mpmath.mpf(1) if k == 0 else mpmath.mpf(0)
                else:
                    mat[k, j] = 2 * x ** (2 * k)
        wk_uniq = mpmath.lu_solve(mat, rhs)

        nodes, wk, wg = [], [], []
        for j, x in enumerate(uniq):
            w_gauss = gauss_weight(x) if is_gauss_node(x) else mpmath.mpf(0)
            if x == 0:
                nodes.append(x)
                wk.append(wk_uniq[j])
                wg.append(w_gauss)
            else:
                for sx in (-x, x):
                    nodes.append(sx)
                    wk.append(wk_uniq[j])
                    wg.append(w_gauss)
        order = sorted(range(len(nodes)), key=lambda i: nodes[i])
        rule = GaussKronrodRule(
            digits=digits,
            nodes=tuple(nodes[i] for i in order),
            weights_k=tuple(wk[i] for i in order),
            weights_g=tuple(wg[i] for i in order),
        )

    _RULE_CACHE[digits] = rule
    return rule


def _poly_div_x(coeffs: list[Fraction]) -> list[Fraction]:
    """P_7 is odd: divide by x so the remaining even factor can be reduced."""
    assert coeffs[0] == 0
    return coeffs[1:]
