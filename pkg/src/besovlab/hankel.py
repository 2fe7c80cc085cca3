"""Small Hankel operators in the monomial basis and their p = 2 operator norms.

The operator integrates f conj(b) against the weighted reproducing kernel of
exponent 1+t and lands in conjugate-holomorphic functions.  Expanding the
kernel over monomials gives the matrix acting on coefficients:

    A[n, j] = conj(b_{j+n}) omega_{j+n}(t) Gamma(1+t+n) / (Gamma(1+t) n!)

for t > 0 (entry (n, j) maps coefficient j of the input to coefficient n of
conj(z)^n), and A[n, j] = conj(b_{j+n}) at t = 0, the classical Hankel matrix.
The kernel factor is exactly 1/omega_n(t), which is what makes the pairing
identity <g, conj(H f)>_t = <fg, b>_t hold coefficient-by-coefficient.

For p = 2 and a radial weight both the source space and the dual of the
target's pairing partner are diagonal over monomials, so the operator norm is
the largest singular value of a diagonally weighted matrix; it is computed by
power iteration on the normal matrix from a deterministic all-ones seed.  The
output space conj(B^2_s) is normed by duality against B^2_{-s} of the
conjugate weight (the pairing route), which is the convention under which the
operator norm coincides with the bilinear-form norm rather than merely being
equivalent to it.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .series import TaylorPoly, monomial_moments, multiply, pairing
from .spaces import SpaceParams, diagonal_space_weights
from .weights import Weight, unit_weight

__all__ = [
    "HankelMatrix",
    "ConjugateSeries",
    "hankel_matrix",
    "hankel_apply",
    "fubini_identity_check",
    "hankel_norm_p2",
    "power_iteration_norm",
]


@dataclass(frozen=True)
class ConjugateSeries:
    """Coefficients c_n of a conjugate-holomorphic function sum c_n conj(z)^n."""

    coeffs: np.ndarray

    def conjugate(self) -> TaylorPoly:
        """The holomorphic reflection: sum conj(c_n) z^n."""
        return TaylorPoly(np.conj(self.coeffs))


@dataclass(frozen=True)
class HankelMatrix:
    """Truncated coefficient matrix of the small Hankel operator."""

    t: float
    matrix: np.ndarray  # (D+1, D+1)

    def __post_init__(self):
        self.matrix.setflags(write=False)

    @property
    def size(self) -> int:
        return self.matrix.shape[0] - 1

    def to_csv_text(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["n", "j", "re", "im"])
        for n in range(self.matrix.shape[0]):
            for j in range(self.matrix.shape[1]):
                v = self.matrix[n, j]
                writer.writerow([n, j, repr(v.real), repr(v.imag)])
        return buf.getvalue()

    def dump_csv(self, path):
        with open(path, "w", newline="") as fh:
            fh.write(self.to_csv_text())


def hankel_matrix(b: TaylorPoly, t: float, size: int) -> HankelMatrix:
    """Assemble the (size+1) x (size+1) coefficient matrix.

    The symbol must carry coefficients up to 2*size (every entry reads
    b_{j+n}); pad the symbol first if it is a lower-degree polynomial.
    """
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    if b.degree_cap < 2 * size:
        raise ValueError(
            f"symbol carries coefficients up to {b.degree_cap}, need 2*size = {2 * size}"
        )
    idx = np.arange(size + 1)
    anti = np.conj(b.coeffs[idx[:, None] + idx[None, :]])
    if t == 0:
        return HankelMatrix(t=0.0, matrix=anti)
    om = monomial_moments(2 * size + 1, t)
    kernel_row = np.exp(gammaln(1.0 + t + idx) - gammaln(1.0 + t) - gammaln(idx + 1.0))
    matrix = anti * om[idx[:, None] + idx[None, :]] * kernel_row[:, None]
    return HankelMatrix(t=t, matrix=matrix)


def hankel_apply(H: HankelMatrix, f: TaylorPoly) -> ConjugateSeries:
    """Image of a polynomial: coefficients of conj(z)^n (conjugate-holomorphic)."""
    if f.degree > H.size:
        raise ValueError(f"input degree {f.degree} exceeds matrix size {H.size}")
    vec = f.pad(H.size).coeffs
    return ConjugateSeries(H.matrix @ vec)


def fubini_identity_check(b: TaylorPoly, f: TaylorPoly, g: TaylorPoly,
                          t: float) -> float:
    """|<g, conj(H_b f)>_t - <fg, b>_t|; zero in exact arithmetic.

    The conjugate-space pairing is coefficient-wise with the same moments, so
    the left side is sum_n g_n c_n omega_n(t) for the image coefficients c_n.
    """
    size = max(f.degree, 0) + max(g.degree, 0)
    H = hankel_matrix(b.pad(max(b.degree_cap, 2 * size)), t, size)
    image = hankel_apply(H, f.pad(size))
    om = monomial_moments(size + 1, t)
    lhs = complex(np.sum(g.pad(size).coeffs * image.coeffs * om))
    rhs = pairing(multiply(f, g, size), b, t)
    return abs(lhs - rhs)


def power_iteration_norm(B: np.ndarray, tol: float = 1e-12,
                         max_iter: int = 20000) -> float:
    """Largest singular value of B by power iteration on the normal matrix.

    Deterministic all-ones start; stops when the relative shift of the
    singular-value estimate drops below tol.
    """
    v = np.ones(B.shape[1], dtype=complex)
    v /= np.linalg.norm(v)
    sigma = 0.0
    for _ in range(max_iter):
        u = B @ v
        w = B.conj().T @ u
        norm_w = np.linalg.norm(w)
        if norm_w == 0:
            return 0.0
        new = float(np.linalg.norm(u))  # ||B v|| with ||v|| = 1
        v = w / norm_w
        if abs(new - sigma) <= tol * max(new, 1e-300):
            return new
        sigma = new
    return sigma


def hankel_norm_p2(b: TaylorPoly, s: float, t: float,
                   weight: Weight | None = None, size: int = 128,
                   tol: float = 1e-12) -> float:
    """Operator norm on the p = 2 scale: source B^2_s(theta), target normed by
    duality against B^2_{-s} of the conjugate weight under the t-pairing.

    Largest singular value of diag(dual)^(1/2) A diag(tau)^(-1/2) where tau are
    the source monomial norms and dual_n = omega_n(t)^2 / tau'_n with tau' the
    monomial norms of the pairing partner.  Radial weights only: the monomial
    diagonalisation is what makes the truncated norm trustworthy.
    """
    weight = weight if weight is not None else unit_weight()
    if not weight.radial:
        raise ValueError("p=2 Hankel norms support radial weights only "
                         "(monomials must stay orthogonal)")
    H = hankel_matrix(b.pad(max(b.degree_cap, 2 * size)), t, size)
    tau_in = diagonal_space_weights(SpaceParams(2.0, s, t, weight), size + 1)
    tau_dual = diagonal_space_weights(
        SpaceParams(2.0, -s, t, weight.dual(2.0)), size + 1)
    om = monomial_moments(size + 1, t)
    d_out = om ** 2 / tau_dual
    B = np.sqrt(d_out)[:, None] * H.matrix * (1.0 / np.sqrt(tau_in))[None, :]
    return power_iteration_norm(B, tol=tol)
