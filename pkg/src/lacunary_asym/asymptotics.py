"""Saddle-point data and the two asymptotic approximations for f_n(1/y).

The saddle parameter r = r(n) solves t(e^t + sqrt(y)) = n sqrt(y) log y.
Around the saddle the integrand exponent has the Taylor data

    psi0 = r^2/(2 log y) + n log(1 + x),          x = sqrt(y) e^{-r},
    a    = 1/(2 log y) + n x / (2 (1+x)^2),
    b_nu = (-n i^nu / nu!) sum_{k>=1} k^{nu-1} (-x)^k,   nu >= 3,

and the b_nu admit the closed form via Euler-Frobenius polynomials,

    b_nu = (-n i^nu / nu!) P_{nu-1}(-x) / (1+x)^nu.

The two approximations compared throughout: a Lambert-W form built from
w(n) (root of t e^t = n sqrt(y) log y) and the refined form built from
r(n) whose bounded oscillation is the Jacobi theta_3 factor

    theta_3(pi r / log y, e^{-2 pi^2 / log y}).

Everything here assumes x < 1, which holds exactly when n >= 2: at n = 1
the root is r = (log y)/2 for every y > 1, giving x = 1 on the nose.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from mpmath import mp, mpc, mpf

from .numerics import (
    DEFAULT_CTX,
    DomainError,
    LogValue,
    PrecisionContext,
    as_real,
)
from .polyeval import eval_log
from .solvers import solve_r, solve_w

_GUARD = 32

# i^nu cycle, nu mod 4
_I_POW = (mpc(1), mpc(0, 1), mpc(-1), mpc(0, -1))


@dataclass(frozen=True)
class SaddleData:
    n: int
    y: mpf
    r: mpf
    x: mpf
    a: mpf
    psi0: mpf
    b: Tuple[mpc, ...]  # b_3 ... b_K


@dataclass(frozen=True)
class Theta3Result:
    value: mpf
    K: int


@dataclass(frozen=True)
class ApproxSummary:
    """Both approximations' ingredients, no exact evaluation involved."""

    n: int
    y: mpf
    w: mpf
    r: mpf
    log_bdm: mpf
    log_thm_prefactor: mpf
    theta_factor: mpf
    rho: mpf


@dataclass(frozen=True)
class ApproxRecord:
    n: int
    y: mpf
    log_exact: LogValue
    log_bdm: mpf
    log_thm_prefactor: mpf
    theta_factor: mpf
    rho: mpf
    ratio_bdm: mpf
    ratio_thm: mpf


@dataclass(frozen=True)
class ProofResiduals:
    prefactor_identity_err: mpf
    psi0_residual: mpf
    s_form_log: mpf


def euler_frobenius(nu: int) -> List[int]:
    """Coefficients of P_nu, where sum_{l>=1} l^nu z^l = P_nu(z)/(1-z)^{nu+1}.

    Recurrence: applying z d/dz to the generating identity gives
    P_{nu+1} = z(1-z) P_nu' + (nu+1) z P_nu.  Exact integers throughout.
    """
    if nu < 0:
        raise DomainError("nu-out-of-domain", "nu must be non-negative")
    coeffs = [1]  # P_0
    for m in range(nu):
        # z(1-z) P' + (m+1) z P, degree grows by one
        nxt = [0] * (m + 2)
        for j, c in enumerate(coeffs):
            nxt[j + 1] += (m + 1) * c  # (m+1) z P
            if j >= 1:
                nxt[j] += j * c  # z P' shifts down one after z*
                nxt[j + 1] -= j * c  # -z^2 P'
        coeffs = nxt
    return coeffs


def _b_series(n_m: mpf, x: mpf, nu: int, eps: mpf) -> mpc:
    """b_nu by direct summation of sum_k k^{nu-1} (-x)^k."""
    partial = mpf(0)
    xk = -x  # (-x)^k
    k = 1
    while True:
        term = mpf(k) ** (nu - 1) * xk
        partial += term
        if abs(term) < eps * abs(partial) and abs(xk) < eps:
            break
        xk *= -x
        k += 1
    return _I_POW[nu % 4] * (-n_m / mp.factorial(nu)) * partial


def b_closed_form(n_m: mpf, x: mpf, nu: int) -> mpc:
    """b_nu via the Euler-Frobenius closed form P_{nu-1}(-x)/(1+x)^nu."""
    poly = euler_frobenius(nu - 1)
    acc = mpf(0)
    for c in reversed(poly):
        acc = acc * (-x) + c
    return _I_POW[nu % 4] * (-n_m / mp.factorial(nu)) * acc / (1 + x) ** nu


def saddle_data(
    n: int, y, K: int = 8, ctx: PrecisionContext = DEFAULT_CTX
) -> SaddleData:
    """Saddle root, Taylor data psi0 and a, and coefficients b_3..b_K."""
    if K < 3:
        raise DomainError("K-out-of-domain", "need K >= 3")
    root = solve_r(n, y, ctx)
    with ctx.prec(_GUARD):
        ym = as_real(y)
        L = mp.log(ym)
        r = root.t
        x = mp.sqrt(ym) * mp.exp(-r)
        # x(n) decreases strictly in n and x(1) = 1 identically (the n=1
        # root is exactly (log y)/2), so the hypothesis x < 1 is n >= 2.
        if n < 2 or x >= 1:
            raise DomainError(
                "saddle-hypothesis-violated",
                f"sqrt(y) e^(-r) = {mp.nstr(x, 8)} not < 1 at n={n}; "
                "smallest admissible n is 2",
            )
        psi0 = r * r / (2 * L) + n * mp.log1p(x)
        a = 1 / (2 * L) + n * x / (2 * (1 + x) ** 2)
        eps = ctx.eps
        b = [_b_series(mpf(n), x, nu, eps) for nu in range(3, K + 1)]
    with ctx.prec():
        return SaddleData(
            n=n,
            y=+ym,
            r=+r,
            x=+x,
            a=+a,
            psi0=+psi0,
            b=tuple(mpc(+bv.real, +bv.imag) for bv in b),
        )


def _theta_oscillation(z: mpf, q: mpf, eps: mpf) -> Tuple[mpf, int]:
    """2 sum_{k=1}^K q^{k^2} cos(2kz) with 2 q^{(K+1)^2}/(1-q) <= eps."""
    K = 0
    tail = 2 * q / (1 - q)  # bound for the sum from k = K+1 on
    while tail > eps:
        K += 1
        tail = 2 * q ** ((K + 1) ** 2) / (1 - q)
    total = mpf(0)
    qp = mpf(1)  # q^{k^2}
    qodd = q  # q^{2k-1}
    q2 = q * q
    for k in range(1, K + 1):
        qp *= qodd
        qodd *= q2
        total += qp * mp.cos(2 * k * z)
    return 2 * total, K


def theta3(z, q, eps=None, ctx: PrecisionContext = DEFAULT_CTX) -> Theta3Result:
    """theta_3(z, q) = 1 + 2 sum q^{k^2} cos(2kz), truncated below eps."""
    with ctx.prec(_GUARD):
        zm = as_real(z)
        qm = as_real(q)
        if not (0 <= qm < 1):
            raise DomainError("nome-out-of-domain", "need nome q in [0, 1)")
        epsm = ctx.eps if eps is None else as_real(eps)
        if not epsm > 0:
            raise DomainError("eps-out-of-domain", "need eps > 0")
        osc, K = _theta_oscillation(zm, qm, epsm)
    with ctx.prec():
        return Theta3Result(+(1 + osc), K)


def _nome_and_arg(r: mpf, L: mpf) -> Tuple[mpf, mpf]:
    return mp.exp(-2 * mp.pi**2 / L), mp.pi * r / L


def rho(n: int, y, ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    """The oscillation rho_n(y) = theta_3(pi r/log y, e^{-2 pi^2/log y}) - 1.

    Summed directly (without the leading 1) so the tiny value keeps full
    relative accuracy; satisfies |rho| <= 2/(e^{2 pi^2/log y} - 1).
    """
    root = solve_r(n, y, ctx)
    with ctx.prec(_GUARD):
        L = mp.log(as_real(y))
        q, z = _nome_and_arg(root.t, L)
        osc, _ = _theta_oscillation(z, q, ctx.eps)
    with ctx.prec():
        return +osc


def approx_bdm(n: int, y, ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    """log of the Lambert-W approximation: -log(w)/2 + (w^2+2w)/(2 log y)."""
    if n < 1:
        raise DomainError("n-out-of-domain", "need n >= 1")
    root = solve_w(n, y, ctx)
    with ctx.prec(_GUARD):
        w = root.t
        L = mp.log(as_real(y))
        val = -mp.log(w) / 2 + (w * w + 2 * w) / (2 * L)
    with ctx.prec():
        return +val


def approximation_summary(
    n: int, y, ctx: PrecisionContext = DEFAULT_CTX
) -> ApproxSummary:
    """Roots, approximation logs, and theta factor, skipping evaluation.

    Cheap at any n (the k-sum of f_n is never touched), which is what the
    command line uses for large-n sweeps.
    """
    if n < 1:
        raise DomainError("n-out-of-domain", "need n >= 1")
    w_root = solve_w(n, y, ctx)
    r_root = solve_r(n, y, ctx)
    with ctx.prec(_GUARD):
        ym = as_real(y)
        L = mp.log(ym)
        w, r = w_root.t, r_root.t
        log_bdm = -mp.log(w) / 2 + (w * w + 2 * w) / (2 * L)
        log_pref = -mp.log(r) / 2 + (r * r + 2 * r) / (2 * L)
        q, z = _nome_and_arg(r, L)
        osc, _ = _theta_oscillation(z, q, ctx.eps)
    with ctx.prec():
        return ApproxSummary(
            n=n,
            y=+ym,
            w=w,
            r=r,
            log_bdm=+log_bdm,
            log_thm_prefactor=+log_pref,
            theta_factor=+(1 + osc),
            rho=+osc,
        )


def approx_theorem(
    n: int,
    y,
    ctx: PrecisionContext = DEFAULT_CTX,
    truncate: bool = True,
) -> ApproxRecord:
    """Both approximations against the evaluated log f_n(1/y), as one record.

    ratio_bdm and ratio_thm are the respective ratios f_n / approximation;
    the theorem ratio divides out the theta_3 factor as well.  ``truncate``
    is forwarded to eval_log (full summation is the slow cross-check mode).
    """
    s = approximation_summary(n, y, ctx)
    log_exact, _ = eval_log(n, y, ctx, truncate=truncate)
    with ctx.prec(_GUARD):
        lf = log_exact.log_magnitude
        ratio_bdm = mp.exp(lf - s.log_bdm)
        ratio_thm = mp.exp(lf - s.log_thm_prefactor - mp.log(s.theta_factor))
    with ctx.prec():
        return ApproxRecord(
            n=n,
            y=s.y,
            log_exact=log_exact,
            log_bdm=s.log_bdm,
            log_thm_prefactor=s.log_thm_prefactor,
            theta_factor=s.theta_factor,
            rho=s.rho,
            ratio_bdm=+ratio_bdm,
            ratio_thm=+ratio_thm,
        )


def proof_residuals(n: int, y, ctx: PrecisionContext = DEFAULT_CTX) -> ProofResiduals:
    """Residuals of the closing identities behind the refined approximation.

    prefactor_identity_err: |2 a log y - 1 - r/(1+x)|, an exact algebraic
    consequence of the saddle equation, so it must sit at rounding level.
    psi0_residual: psi0 - (r^2+2r)/(2 log y), the quantity replaced in the
    final form (decays like log^2 n / n).
    s_form_log: psi0 - log(2 a log y)/2, the log of the Gaussian-step
    prefactor before the replacement.
    """
    data = saddle_data(n, y, K=3, ctx=ctx)
    with ctx.prec(_GUARD):
        L = mp.log(data.y)
        r, x, a = data.r, data.x, data.a
        ident = 2 * a * L - 1 - r / (1 + x)
        psi0_res = data.psi0 - (r * r + 2 * r) / (2 * L)
        s_form = data.psi0 - mp.log(2 * a * L) / 2
    with ctx.prec():
        return ProofResiduals(+abs(ident), +psi0_res, +s_form)
