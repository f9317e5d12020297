"""Gaussian-weight quadrature oracles for f_n(1/y).

Two integral representations are evaluated independently of the series:

    f_n(1/y) = (2 pi log y)^{-1/2} Int exp(-s^2/(2 log y)) (1+sqrt(y) e^{is})^n ds
    f_n(1/y) = (2 pi log y)^{-1/2} Int exp(psi_n(s)) ds        (contour at i r)

plus the plain Gaussian Fourier transform underlying both,

    (2 pi log y)^{-1/2} Int exp(-s^2/(2 log y) + iks) ds = y^{-k^2/2}.

All integrands share the shape  A e^{-s^2/(2L)} e^{i beta s} (1 + c e^{is})^n,
evaluated over uniform grids by multiplicative recurrences (two real, two
complex multiplies per point instead of fresh transcendentals), then summed
with a composite trapezoid rule under step halving.

Working precision is raised per call by the known cancellation budget: the
integrand mass can exceed the result by a factor e^{mass_log - result_log}
(worst at k = 30, where the answer is ~2^-450 against an O(1) integrand),
and flat roundoff must stay below the relative target of the result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, List, Tuple

from mpmath import mp, mpc, mpf

from .numerics import (
    DEFAULT_CTX,
    ComputationError,
    DomainError,
    PrecisionContext,
    as_real,
)
from .solvers import solve_r

# Desk-scale gate: S grows like sqrt(n) and the power like (1+sqrt(y))^n,
# so large-n verification belongs to eval_log, not quadrature.
QUAD_N_CAP = 200
FOURIER_K_CAP = 64

MAX_HALVINGS = 20
DEFAULT_TARGET_EPS = "1e-20"

_GUARD = 32


@dataclass(frozen=True)
class QuadratureResult:
    value: mpf
    truncation_bound: mpf
    step: mpf
    panels: int
    imag_residual: mpf


def _require_y(y) -> mpf:
    ym = as_real(y)
    if not ym > 1:
        raise DomainError("y-out-of-domain", "quadrature needs y > 1")
    return ym


def integrand_original(s, n: int, y, ctx: PrecisionContext = DEFAULT_CTX) -> mpc:
    """exp(-s^2/(2 log y)) (1 + sqrt(y) e^{is})^n, principal-log power.

    For integer n the principal-branch power agrees with the single-valued
    algebraic power everywhere, so no branch tracking is needed.
    """
    with ctx.prec(_GUARD):
        sm = as_real(s)
        ym = _require_y(y)
        L = mp.log(ym)
        val = mp.exp(
            -sm * sm / (2 * L) + n * mp.log(1 + mp.sqrt(ym) * mp.expj(sm))
        )
    with ctx.prec():
        return mpc(+val.real, +val.imag)


def psi_exp(s, n: int, y, r, ctx: PrecisionContext = DEFAULT_CTX) -> mpc:
    """Shifted-contour integrand exp(psi_n(s)) for a given saddle shift r.

    Requires sqrt(y) e^{-r} < 1 so the inner log stays on its principal
    branch (the base then lives in the open disk of radius < 1 around 1).
    """
    with ctx.prec(_GUARD):
        sm = as_real(s)
        ym = _require_y(y)
        rm = as_real(r)
        L = mp.log(ym)
        x = mp.sqrt(ym) * mp.exp(-rm)
        if not x < 1:
            raise DomainError(
                "saddle-hypothesis-violated",
                f"sqrt(y) e^(-r) = {mp.nstr(x, 8)} not < 1",
            )
        val = mp.exp(
            -(sm * sm + 2 * mpc(0, 1) * rm * sm - rm * rm) / (2 * L)
            + n * mp.log(1 + x * mp.expj(sm))
        )
    with ctx.prec():
        return mpc(+val.real, +val.imag)


@dataclass(frozen=True)
class _Plan:
    S: float
    h0: float
    extra_bits: int
    trunc_log: float  # log of the Gaussian-tail truncation bound


def _plan(L: float, band: float, mass_log: float, result_log: float, eps: float) -> _Plan:
    """Grid geometry from the crude mass bound.

    band:       highest Fourier mode of the non-Gaussian factor
    mass_log:   log sup of the integrand modulus
    result_log: log of a lower bound on the result magnitude
    Tail cut: e^{mass_log - S^2/(2L)} <= eps_abs e^-5; alias cut: grid
    Nyquist 2 pi/h beyond band + Gaussian spectral width at eps_abs.
    """
    need = mass_log - (result_log + math.log(eps))
    S = math.sqrt(2 * L * (need + 5))
    h0 = 2 * math.pi / (band + math.sqrt(2 * need / L) + 4)
    extra = max(0, math.ceil((mass_log - result_log) / math.log(2))) + 8
    return _Plan(S, h0, extra, mass_log - S * S / (2 * L))


def _row_factory(
    L: mpf, amp_log: mpf, beta: mpf, c: mpf, n: int
) -> Callable[[mpf, mpf, int], List[mpc]]:
    """Grid evaluator for A e^{-s^2/(2L)} e^{i beta s} (1 + c e^{is})^n.

    Gaussian and phase factors advance by multiplicative recurrences:
    e^{-(s+h)^2/(2L)} = e^{-s^2/(2L)} * M,  M stepping by e^{-h^2/L}.
    """
    has_phase = beta != 0
    has_power = n != 0 and c != 0

    def row(s0: mpf, h: mpf, count: int) -> List[mpc]:
        G = mp.exp(amp_log - s0 * s0 / (2 * L))
        M = mp.exp(-s0 * h / L - h * h / (2 * L))
        Q = mp.exp(-h * h / L)
        P = mp.expj(beta * s0) if has_phase else mpc(1)
        Pstep = mp.expj(beta * h) if has_phase else mpc(1)
        W = mp.expj(s0)
        Wstep = mp.expj(h)
        out = []
        for _ in range(count):
            v = G * P
            if has_power:
                v = v * (1 + c * W) ** n
            out.append(v)
            G *= M
            M *= Q
            if has_phase:
                P *= Pstep
            W *= Wstep
        return out

    return row


def _trapezoid(
    row: Callable[[mpf, mpf, int], List[mpc]],
    S: mpf,
    h0: float,
    rel_tol: mpf,
) -> Tuple[mpc, mpf, int]:
    panels = max(int(math.ceil(2 * S / h0)), 8)
    h = 2 * S / panels
    vals = row(-S, h, panels + 1)
    T = h * (mp.fsum(vals) - (vals[0] + vals[-1]) / 2)
    last_diff = mpf("inf")
    for _ in range(MAX_HALVINGS):
        mids = row(-S + h / 2, h, panels)
        Tn = T / 2 + (h / 2) * mp.fsum(mids)
        h /= 2
        panels *= 2
        last_diff = abs(Tn - T)
        T = Tn
        if last_diff <= rel_tol * abs(T):
            return T, h, panels
    raise ComputationError(
        "quadrature-stalled",
        f"step halving did not converge in {MAX_HALVINGS} rounds "
        f"(panels={panels}, last diff {mp.nstr(last_diff, 6)}, "
        f"target {mp.nstr(rel_tol * abs(T), 6)})",
    )


def _finish(
    ctx: PrecisionContext, T: mpc, h: mpf, panels: int, y, trunc_log: float
) -> QuadratureResult:
    with ctx.prec(_GUARD):
        norm = mp.sqrt(2 * mp.pi * mp.log(as_real(y)))
        value = T.real / norm
        imag_res = abs(T.imag) / norm
        bound = mp.exp(mpf(trunc_log))
    with ctx.prec():
        return QuadratureResult(+value, +bound, +h, panels, +imag_res)


def integrate_original(
    n: int, y, ctx: PrecisionContext = DEFAULT_CTX, target_eps=None
) -> QuadratureResult:
    """Quadrature of the real-axis representation; value approximates f_n(1/y)."""
    if n < 0:
        raise DomainError("n-out-of-domain", "need n >= 0")
    if n > QUAD_N_CAP:
        raise DomainError("quad-cap", f"n={n} above quadrature cap {QUAD_N_CAP}")
    eps = mpf(DEFAULT_TARGET_EPS) if target_eps is None else as_real(target_eps)
    if not eps > 0:
        raise DomainError("eps-out-of-domain", "need target_eps > 0")
    with ctx.prec(_GUARD):
        ym = _require_y(y)
        Lf = float(mp.log(ym))
        mass_log = n * float(mp.log1p(mp.sqrt(ym)))
    plan = _plan(Lf, float(n), mass_log, 0.0, float(eps))
    with ctx.prec(_GUARD + plan.extra_bits):
        L = mp.log(as_real(y))
        row = _row_factory(L, mpf(0), mpf(0), mp.sqrt(as_real(y)), n)
        T, h, panels = _trapezoid(row, mpf(plan.S), plan.h0, eps)
    return _finish(ctx, T, h, panels, y, plan.trunc_log)


def integrate_shifted(
    n: int, y, ctx: PrecisionContext = DEFAULT_CTX, target_eps=None
) -> QuadratureResult:
    """Quadrature along the shifted contour Im s = r(n); same value as original.

    The power factor is evaluated as an integer power, which is
    single-valued for every n, so the representation is usable down to
    n = 0 (shift 0) and n = 1 (where sqrt(y) e^{-r} = 1 exactly).
    """
    if n < 0:
        raise DomainError("n-out-of-domain", "need n >= 0")
    if n > QUAD_N_CAP:
        raise DomainError("quad-cap", f"n={n} above quadrature cap {QUAD_N_CAP}")
    eps = mpf(DEFAULT_TARGET_EPS) if target_eps is None else as_real(target_eps)
    if not eps > 0:
        raise DomainError("eps-out-of-domain", "need target_eps > 0")
    with ctx.prec(_GUARD):
        ym = _require_y(y)
        r = solve_r(n, y, ctx).t if n > 0 else mpf(0)
        L = mp.log(ym)
        x = mp.sqrt(ym) * mp.exp(-r)
        mass_log = float(r * r / (2 * L) + n * mp.log1p(x))
        Lf = float(L)
    plan = _plan(Lf, float(n), mass_log, 0.0, float(eps))
    with ctx.prec(_GUARD + plan.extra_bits):
        ym = as_real(y)
        L = mp.log(ym)
        rr = mpf(r)
        x = mp.sqrt(ym) * mp.exp(-rr)
        row = _row_factory(L, rr * rr / (2 * L), -rr / L, x, n)
        T, h, panels = _trapezoid(row, mpf(plan.S), plan.h0, eps)
    return _finish(ctx, T, h, panels, y, plan.trunc_log)


def gaussian_fourier(
    k: int, y, ctx: PrecisionContext = DEFAULT_CTX, target_eps=None
) -> QuadratureResult:
    """Quadrature of (2 pi L)^{-1/2} Int e^{-s^2/(2L) + iks} ds = y^{-k^2/2}.

    The result shrinks like y^{-k^2/2} against an O(1) integrand, so the
    working precision is raised by ~ k^2 log2(y)/2 bits to keep flat
    roundoff below the relative target.
    """
    if k < 0:
        raise DomainError("n-out-of-domain", "need k >= 0")
    if k > FOURIER_K_CAP:
        raise DomainError("quad-cap", f"k={k} above Fourier cap {FOURIER_K_CAP}")
    eps = mpf(DEFAULT_TARGET_EPS) if target_eps is None else as_real(target_eps)
    if not eps > 0:
        raise DomainError("eps-out-of-domain", "need target_eps > 0")
    with ctx.prec(_GUARD):
        ym = _require_y(y)
        Lf = float(mp.log(ym))
    result_log = -k * k * Lf / 2
    plan = _plan(Lf, float(k), 0.0, result_log, float(eps))
    with ctx.prec(_GUARD + plan.extra_bits):
        L = mp.log(as_real(y))
        row = _row_factory(L, mpf(0), mpf(k), mpf(0), 0)
        T, h, panels = _trapezoid(row, mpf(plan.S), plan.h0, eps)
    return _finish(ctx, T, h, panels, y, plan.trunc_log)
