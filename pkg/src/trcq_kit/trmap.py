"""Characteristic map of the trapezoidal rule and its majorant series.

Running the trapezoidal rule on a causal convolution amounts to replacing the
Laplace variable s by

    s_kappa = delta(exp(-kappa*s)) / kappa,   delta(zeta) = 2*(1 - zeta)/(1 + zeta),

where kappa is the time step.  This module is the scalar machinery around that
substitution:

* ``delta_char`` / ``s_kappa`` evaluate the map itself,
* ``q_ratio`` evaluates q(z) = (delta(exp(-z)) - z)/z**3, the relative
  consistency error of the rule, stably for small z,
* ``q_taylor_coeffs`` returns the even Taylor coefficients b_l of q,
* ``D_eval`` and ``E_m_eval`` evaluate the majorant series

      D(sigma)   = sum_l |b_l| sigma**(2l),
      E_m(sigma) = max{D(sigma)**j : j = 1..m} * ((1 + sigma**2)**m - 1)/sigma**2,

  which control |delta(exp(-z))**m - z**m|,
* ``solve_c0`` finds the unique root of sigma**2 * D(sigma) = 1 in (0, pi),
* ``delta_power_diff`` evaluates delta(exp(-z))**m - z**m without cancellation,
* ``sample_cplus`` draws the standard right-half-plane sample cloud used by
  every randomized check in the package.

D has radius of convergence pi; evaluation is refused within 1e-3 of pi, where
certifying the series tail would take an unreasonable number of terms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "SeriesTable",
    "delta_char",
    "s_kappa",
    "q_taylor_coeffs",
    "q_ratio",
    "D_eval",
    "E_m_eval",
    "solve_c0",
    "delta_power_diff",
    "sample_cplus",
]

_PI = np.pi
_HALF_PI = 0.5 * np.pi

# ----------------------------------------------------------------------------
# Taylor coefficient table
# ----------------------------------------------------------------------------
#
# tanh(w) = sum_k T_k w**(2k-1) and q(z) = sum_l b_l z**(2l) with
# b_l = T_{l+2} / 4**(l+1).  The raw b_l underflow around l ~ 310, while the
# series for D must be summed to tens of thousands of terms close to sigma =
# pi.  We therefore store the pi-rescaled magnitudes
#
#     alpha_scaled[l] = |b_l| * pi**(2l),
#
# which stay bounded (they decrease from 1/12 towards 8/pi**4 ~ 0.0821), and
# evaluate D in the variable rho = (sigma/pi)**2.  The rescaled tanh
# coefficients T_k * (pi/2)**(2k-1) obey the same division recurrence as T_k
# with the factorial terms rescaled accordingly; those factorial terms decay
# so fast that the recurrence is effectively band-limited.

_BAND = 96  # (pi/2)**(2i)/(2i)! underflows past i ~ 90
_TABLE_MAX = 1 << 16  # hard cap on series length (certifies sigma <= pi - 1e-3)

_alpha_scaled = None  # |b_l| * pi**(2l)
_b_sign = None  # sign of b_l


def _build_scaled_tables(count: int) -> None:
    """Populate the module-level coefficient cache with >= count entries."""
    global _alpha_scaled, _b_sign
    half_pi_sq = _HALF_PI * _HALF_PI

    # cosh coefficients (pi/2)**(2i)/(2i)! for the banded division
    cosh_c = np.zeros(_BAND + 1)
    cosh_c[0] = 1.0
    for i in range(1, _BAND + 1):
        cosh_c[i] = cosh_c[i - 1] * half_pi_sq / ((2 * i) * (2 * i - 1))

    # tanh_scaled[k-1] = T_k * (pi/2)**(2k-1), from tanh * cosh = sinh
    n_tanh = count + 2
    tanh_scaled = np.zeros(n_tanh + 1)
    sinh_k = _HALF_PI  # (pi/2)**(2k-1)/(2k-1)!
    for k in range(1, n_tanh + 1):
        if k > 1:
            sinh_k = sinh_k * half_pi_sq / ((2 * k - 1) * (2 * k - 2))
        j0 = max(1, k - _BAND)
        tanh_scaled[k] = sinh_k - np.dot(tanh_scaled[j0:k], cosh_c[k - j0:0:-1])

    # alpha_scaled[l] = |b_l| pi**(2l) = 2 |T~_{l+2}| / pi**3
    tilde = tanh_scaled[2 : count + 2]
    scaled = 2.0 * np.abs(tilde) / _PI**3
    # The geometric tail certificate in D_eval relies on this envelope being
    # non-increasing; it holds for the whole table, so we check it outright.
    if np.any(np.diff(scaled) > 0.0):
        raise RuntimeError("series coefficient envelope is not non-increasing")
    _alpha_scaled = scaled
    _b_sign = np.sign(tilde)


def _scaled_alphas(count: int) -> np.ndarray:
    if count > _TABLE_MAX:
        raise ValueError(f"series length {count} exceeds the table cap {_TABLE_MAX}")
    if _alpha_scaled is None or len(_alpha_scaled) < count:
        _build_scaled_tables(max(256, count, 0 if _alpha_scaled is None else 2 * len(_alpha_scaled)))
    return _alpha_scaled[:count]


@dataclass(frozen=True)
class SeriesTable:
    """Signed Taylor coefficients b_l of q and their magnitudes alpha_l.

    The raw coefficients underflow to zero past l ~ 310; consumers that need
    long partial sums of D should call :func:`D_eval`, which works with an
    internally rescaled representation instead.
    """

    coeffs_b: np.ndarray
    coeffs_alpha: np.ndarray
    length: int
    tail_bound_radius: float

    def __post_init__(self):
        if self.length != len(self.coeffs_b) or self.length != len(self.coeffs_alpha):
            raise ValueError("length does not match coefficient arrays")
        if not np.array_equal(self.coeffs_alpha, np.abs(self.coeffs_b)):
            raise ValueError("coeffs_alpha must equal |coeffs_b|")


def q_taylor_coeffs(L: int) -> SeriesTable:
    """First L Taylor coefficients of q(z) = (delta(exp(-z)) - z)/z**3."""
    if L < 1:
        raise ValueError("need at least one coefficient")
    alpha = _scaled_alphas(L)
    ell = np.arange(L)
    b = _b_sign[:L] * alpha * _PI ** (-2.0 * ell)
    return SeriesTable(coeffs_b=b, coeffs_alpha=np.abs(b), length=L, tail_bound_radius=_PI)


# ----------------------------------------------------------------------------
# The characteristic map
# ----------------------------------------------------------------------------

_POLE_TOL = 1e-300


def _unwrap(a: np.ndarray):
    return a[()] if a.ndim == 0 else a


def _as1d(x, dtype):
    """View x as a >= 1-d array plus a flag to restore scalar shape later."""
    arr = np.asarray(x, dtype=dtype)
    return np.atleast_1d(arr), arr.ndim == 0


def delta_char(zeta):
    """delta(zeta) = 2*(1 - zeta)/(1 + zeta), the TR characteristic function.

    For |zeta| < 1 the value has strictly positive real part.  The input dtype
    is preserved, so extended-precision contour evaluation passes through.
    """
    z = np.asarray(zeta)
    denom = 1.0 + z
    if np.any(np.abs(denom) < _POLE_TOL):
        raise ZeroDivisionError("delta(zeta) has a pole at zeta = -1")
    return _unwrap(2.0 * (1.0 - z) / denom)


def s_kappa(s, kappa):
    """The discrete Laplace variable s_kappa = (2/kappa)*tanh(kappa*s/2).

    Requires Re s > 0 and kappa in (0, 1]; ``kappa`` may be an array
    broadcastable against ``s``.  The result again has positive real part,
    with Re s_kappa >= min{Re s, 1}/2.
    """
    kap = np.asarray(kappa)
    if not np.all((kap > 0.0) & (kap <= 1.0)):
        raise ValueError(f"kappa must lie in (0, 1], got {kappa}")
    s = np.asarray(s)
    if np.any(np.real(s) <= 0.0):
        raise ValueError("s_kappa requires Re s > 0")
    return _unwrap((2.0 / kap) * np.tanh(0.5 * kap * s))


# ----------------------------------------------------------------------------
# q(z): stable evaluation and powers
# ----------------------------------------------------------------------------

_Q_CROSSOVER = 0.5
# 16 terms leave a series tail below 1e-26 at |z| = 0.5, far under 1e-14.
_Q_SERIES_TERMS = 16


def _q_series(z: np.ndarray) -> np.ndarray:
    b = q_taylor_coeffs(_Q_SERIES_TERMS).coeffs_b
    z2 = z * z
    acc = np.full_like(z, b[-1])
    for coeff in b[-2::-1]:
        acc = acc * z2 + coeff
    return acc


def _q_direct(z: np.ndarray) -> np.ndarray:
    return (delta_char(np.exp(-z)) - z) / z**3


def q_ratio(z):
    """q(z) = (delta(exp(-z)) - z)/z**3 for Re z > 0, |z| < pi.

    delta(exp(-z)) - z ~ -z**3/12 cancels catastrophically near zero, so below
    |z| = 0.5 a truncated Taylor series is used; above, the direct formula.
    z = 0 returns the leading coefficient -1/12 by continuity.
    """
    z, was_scalar = _as1d(z, complex)
    az = np.abs(z)
    if np.any((np.real(z) <= 0.0) & (az > 0.0)):
        raise ValueError("q_ratio requires Re z > 0")
    if np.any(az >= _PI):
        raise ValueError("q_ratio requires |z| < pi")
    out = np.empty_like(z)
    small = az <= _Q_CROSSOVER
    out[small] = _q_series(z[small])
    out[~small] = _q_direct(z[~small])
    return out[0] if was_scalar else out


def delta_power_diff(z, m: int):
    """delta(exp(-z))**m - z**m evaluated without cancellation, for Re z > 0.

    Uses the telescoping a**m - b**m = (a - b) * sum_j a**j b**(m-1-j) with the
    difference a - b = z**3 * q(z) taken from the series branch when |z| is
    small.  Unlike the majorant bound, the value itself is defined on all of
    the right half-plane, so no |z| < pi restriction applies here.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    z, was_scalar = _as1d(z, complex)
    if np.any(np.real(z) <= 0.0):
        raise ValueError("delta_power_diff requires Re z > 0")
    small = np.abs(z) <= _Q_CROSSOVER
    diff = np.empty_like(z)
    zs = z[small]
    diff[small] = zs**3 * _q_series(zs)
    diff[~small] = delta_char(np.exp(-z[~small])) - z[~small]
    delta = z + diff
    acc = np.zeros_like(z)
    for j in range(m):
        acc += delta**j * z ** (m - 1 - j)
    out = diff * acc
    return out[0] if was_scalar else out


# ----------------------------------------------------------------------------
# Majorant series D and E_m
# ----------------------------------------------------------------------------

_D_REFUSAL = _PI - 1e-3


def D_eval(sigma, tol: float = 1e-12):
    """D(sigma) = sum_l |b_l| sigma**(2l) with a certified relative tail < tol.

    Works elementwise on arrays.  The returned value includes the geometric
    tail bound, so it never undershoots the full series.  The tail certificate
    uses ratio rho = (sigma/pi)**2, valid because the rescaled coefficients
    |b_l| pi**(2l) are non-increasing.  Refuses sigma within 1e-3 of pi (the
    series diverges at pi and certifying the tail there is hopeless).
    """
    sig, was_scalar = _as1d(sigma, float)
    if np.any(sig < 0.0):
        raise ValueError("D is defined for sigma >= 0")
    if np.any(sig > _D_REFUSAL):
        raise ValueError(f"D_eval refuses sigma within 1e-3 of pi (> {_D_REFUSAL:.6f})")
    if not 0.0 < tol < 1.0:
        raise ValueError("tol must lie in (0, 1)")

    rho = (sig / _PI) ** 2
    out = np.empty_like(sig)

    # terms needed so that alpha_0 * rho**L/(1-rho) <= tol * alpha_0;
    # partial sums are >= alpha_0 = 1/12, so this certifies relative tol.
    with np.errstate(divide="ignore"):
        need = np.where(
            rho > 0.0,
            np.ceil(np.log(tol * (1.0 - rho)) / np.log(np.maximum(rho, 1e-300))),
            1.0,
        )
    if np.any(need > _TABLE_MAX):
        raise ValueError("cannot certify the requested tolerance this close to pi")
    need = np.clip(need, 1, _TABLE_MAX).astype(int)

    # group by power-of-two series length so each bucket is one Horner sweep
    buckets = np.minimum(_TABLE_MAX, np.maximum(64, 1 << np.ceil(np.log2(need)).astype(int)))
    for length in np.unique(buckets):
        mask = buckets == length
        alpha = _scaled_alphas(int(length))
        x = rho[mask]
        acc = np.full_like(x, alpha[-1])
        for coeff in alpha[-2::-1]:
            acc = acc * x + coeff
        tail = alpha[-1] * x ** float(length) / np.maximum(1.0 - x, 1e-300)
        out[mask] = acc + tail

    return out[0] if was_scalar else out


def E_m_eval(sigma, m: int, tol: float = 1e-12):
    """E_m(sigma) = max{D**j : j=1..m} * ((1+sigma**2)**m - 1)/sigma**2.

    At sigma = 0 the second factor is taken by its limit m.  Requires m >= 1
    and 0 <= sigma < pi.
    """
    if m < 1:
        raise ValueError("E_m is defined for m >= 1")
    sig, was_scalar = _as1d(sigma, float)
    d = np.atleast_1d(D_eval(sig, tol=tol))
    out = np.maximum(d, d**m) * _power_ratio(sig * sig, m)
    return out[0] if was_scalar else out


def _power_ratio(x: np.ndarray, m: int) -> np.ndarray:
    """((1 + x)**m - 1)/x, continuously extended to m at x = 0."""
    out = np.full_like(x, float(m))
    nz = x > 0.0
    out[nz] = np.expm1(m * np.log1p(x[nz])) / x[nz]
    return out


def solve_c0(tol: float = 1e-13) -> float:
    """The unique c0 in (0, pi) with c0**2 * D(c0) = 1, by bisection.

    x**2 D(x) is strictly increasing, runs from 0 to +inf on (0, pi), and the
    bracket [0.1, pi - 0.1] straddles the root, so plain bisection is safe.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")

    def residual(x: float) -> float:
        return x * x * float(D_eval(x, tol=1e-14)) - 1.0

    lo, hi = 0.1, _PI - 0.1
    if residual(lo) >= 0.0 or residual(hi) <= 0.0:
        raise RuntimeError("bisection bracket does not straddle the root")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        r = residual(mid)
        if abs(r) <= tol:
            return mid
        if r < 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-16 * hi:
            break
    mid = 0.5 * (lo + hi)
    if abs(residual(mid)) > tol:
        raise RuntimeError(f"bisection stalled; residual tolerance {tol} unreachable")
    return mid


# ----------------------------------------------------------------------------
# Half-plane sampling
# ----------------------------------------------------------------------------

def sample_cplus(count: int, seed, max_modulus=1e3, min_modulus: float = 1e-3) -> np.ndarray:
    """Random points in the open right half-plane, reproducible from the seed.

    Modulus is log-uniform in [min_modulus, max_modulus] and the argument
    uniform in (-pi/2 + 1e-6, pi/2 - 1e-6), which exercises both asymptotic
    regimes of every inequality checked in this package.  ``seed`` may also
    be a ``numpy.random.Generator`` to continue an existing stream, and
    ``max_modulus`` may be an array of per-sample caps (used when the sample
    domain depends on another random draw).
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    hi = np.log(np.broadcast_to(np.asarray(max_modulus, dtype=float), (count,)))
    lo = np.log(min_modulus)
    if np.any(hi <= lo):
        raise ValueError("max_modulus must exceed min_modulus")
    modulus = np.exp(rng.uniform(lo, hi))
    angle = rng.uniform(-_HALF_PI + 1e-6, _HALF_PI - 1e-6, count)
    return modulus * np.exp(1j * angle)
