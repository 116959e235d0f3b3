"""Laplace-domain transfer functions with explicit growth certificates.

A *symbol* is an analytic map ``F`` from the open right half-plane into
complex ``rows x cols`` matrices, together with a declared growth model

    ||F(s)|| <= cf(Re s) * |s|**mu,

where ``cf`` is the non-increasing envelope ``x -> scale * min(x, 1)**(-e)``.
The certificate ``(mu, cf)`` is what every error estimate in this package
consumes, so it is data, not documentation: :func:`validate_growth` samples
the half-plane and checks it.

Built-in families:

* ``make_power(mu)``   -- ``s**mu`` (principal branch); fractional derivative
  or integral of order ``mu`` in the time domain.
* ``make_delay(d)``    -- ``exp(-s*d)``; time shift by ``d``.
* ``make_decay(a)``    -- ``1/(s+a)``; convolution with ``exp(-a*t)``.
* ``make_resolvent(A)``-- ``(s*I - A)**-1`` for a square matrix ``A``.

``tr_symbol`` composes any symbol with the discretized frequency variable
``s_kappa``, producing the symbol whose Taylor weights the quadrature uses.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .report import VerificationReport, pointwise_report
from .trmap import s_kappa, sample_cplus

__all__ = [
    "CFModel",
    "Symbol",
    "value_norm",
    "make_power",
    "make_delay",
    "make_decay",
    "make_resolvent",
    "symbol_product",
    "tr_symbol",
    "validate_growth",
    "from_spec",
    "builtin_zoo",
]


# --------------------------------------------------------------------------
# growth certificate
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CFModel:
    """Growth envelope ``x -> scale * min(x, 1)**(-exponent)``.

    Non-increasing on ``(0, inf)`` and constant (= ``scale``) for ``x >= 1``,
    so it captures "blows up like ``x**-exponent`` near the imaginary axis,
    levels off far from it".
    """

    scale: float      # envelope value for x >= 1
    exponent: float   # blow-up rate as x -> 0+

    def __post_init__(self) -> None:
        if not (self.scale > 0.0) or not np.isfinite(self.scale):
            raise ValueError("scale must be a positive finite real")
        if self.exponent < 0.0 or not np.isfinite(self.exponent):
            raise ValueError("exponent must be a non-negative finite real")

    def __call__(self, x: "float | np.ndarray") -> "float | np.ndarray":
        arr = np.asarray(x, dtype=float)
        if np.any(arr <= 0.0):
            raise ValueError("growth envelope is defined for x > 0 only")
        out = self.scale * np.minimum(arr, 1.0) ** (-self.exponent)
        return out if arr.ndim else float(out)


# --------------------------------------------------------------------------
# symbol type
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Symbol:
    """A matrix-valued analytic function on ``Re s > 0`` plus its certificate.

    ``evaluator`` must be vectorized: given an array ``s`` it returns an
    array of shape ``s.shape + dims``, preserving extended-precision complex
    dtypes where the underlying operations allow it.
    """

    name: str
    evaluator: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    mu: float
    cf: CFModel
    dims: tuple[int, int] = (1, 1)

    def __post_init__(self) -> None:
        r, c = self.dims
        if not (isinstance(r, int) and isinstance(c, int) and r >= 1 and c >= 1):
            raise ValueError("dims must be a pair of positive integers")
        if not np.isfinite(self.mu):
            raise ValueError("mu must be finite")

    @property
    def rows(self) -> int:
        return self.dims[0]

    @property
    def cols(self) -> int:
        return self.dims[1]

    def __call__(self, s: "complex | np.ndarray") -> np.ndarray:
        """Evaluate at ``s``; returns shape ``np.shape(s) + dims``."""
        arr = np.asarray(s)
        if not np.iscomplexobj(arr):
            arr = arr.astype(complex)
        if np.any(arr.real <= 0.0):
            raise ValueError("symbol domain is the open half-plane Re s > 0")
        return self.evaluator(arr)

    def growth_bound(self, s: np.ndarray) -> np.ndarray:
        """The certified envelope ``cf(Re s) * |s|**mu`` at the given points."""
        arr = np.asarray(s)
        return np.asarray(self.cf(arr.real)) * np.abs(arr) ** self.mu


def value_norm(values: np.ndarray) -> np.ndarray:
    """Operator 2-norm of each matrix in an ``(..., r, c)`` stack.

    1x1 and 2x2 blocks use closed-form singular values (exact up to
    rounding); anything larger falls back to LAPACK's SVD in double
    precision.
    """
    v = np.asarray(values)
    if v.ndim < 2:
        return np.abs(v)
    r, c = v.shape[-2], v.shape[-1]
    if r == 1 and c == 1:
        return np.abs(v[..., 0, 0])
    if r == 2 and c == 2:
        # sigma_max^2 = (f + sqrt(f^2 - 4 d^2)) / 2 with f = ||M||_F^2,
        # d = |det M|; works in any real precision numpy supports.
        a, b = v[..., 0, 0], v[..., 0, 1]
        cc, d = v[..., 1, 0], v[..., 1, 1]
        f = np.abs(a) ** 2 + np.abs(b) ** 2 + np.abs(cc) ** 2 + np.abs(d) ** 2
        det = np.abs(a * d - b * cc)
        disc = np.sqrt(np.maximum(f * f - 4.0 * det * det, 0.0))
        return np.sqrt((f + disc) / 2.0)
    w = v.astype(np.complex128, copy=False)
    return np.linalg.svd(w, compute_uv=False)[..., 0]


def _scalarize(f: Callable[[np.ndarray], np.ndarray]) -> Callable[[np.ndarray], np.ndarray]:
    """Lift a scalar-valued vectorized map to ``shape + (1, 1)`` output."""

    def evaluator(s: np.ndarray) -> np.ndarray:
        return f(s)[..., None, None]

    return evaluator


# --------------------------------------------------------------------------
# built-in families
# --------------------------------------------------------------------------


def make_power(mu: float) -> Symbol:
    """``F(s) = s**mu`` via the principal logarithm; ``|F(s)| = |s|**mu``."""
    mu = float(mu)
    if mu == 0.0:
        def scalar(s: np.ndarray) -> np.ndarray:
            return np.ones_like(s)
    else:
        def scalar(s: np.ndarray) -> np.ndarray:
            return np.exp(mu * np.log(s))
    return Symbol(
        name=f"power:{mu:g}",
        evaluator=_scalarize(scalar),
        mu=mu,
        cf=CFModel(1.0, 0.0),
    )


def make_delay(d: float) -> Symbol:
    """``F(s) = exp(-s d)``; in time, shifts the input by ``d``."""
    d = float(d)
    if not d > 0.0:
        raise ValueError("delay d must be positive")

    def scalar(s: np.ndarray) -> np.ndarray:
        return np.exp(-d * s)

    # |exp(-s d)| = exp(-d Re s) <= 1 on the half-plane.
    return Symbol(name=f"delay:{d:g}", evaluator=_scalarize(scalar), mu=0.0, cf=CFModel(1.0, 0.0))


def make_decay(a: float) -> Symbol:
    """``F(s) = 1/(s+a)``; in time, convolution with ``exp(-a t)``."""
    a = float(a)
    if not a > 0.0:
        raise ValueError("decay rate a must be positive")

    def scalar(s: np.ndarray) -> np.ndarray:
        return 1.0 / (s + a)

    # |s+a|^2 = |s|^2 + 2 a Re s + a^2 >= |s|^2, hence |F(s)| <= |s|**-1.
    return Symbol(name=f"decay:{a:g}", evaluator=_scalarize(scalar), mu=-1.0, cf=CFModel(1.0, 0.0))


def make_resolvent(
    A: np.ndarray,
    mu: float = 0.0,
    cf: "CFModel | None" = None,
) -> Symbol:
    """``F(s) = (s I - A)**-1`` with a caller-declared growth certificate.

    The default certificate ``mu = 0``, ``cf(x) = min(x,1)**-1`` holds
    whenever the numerical range of ``A`` lies in ``Re <= 0`` (then
    ``||(sI-A)^-1|| <= 1/Re s <= 1/min(Re s, 1)``).  It is *declared*, not
    derived — run :func:`validate_growth` before trusting it.
    """
    mat = np.asarray(A, dtype=complex)
    if mat.ndim == 0:
        mat = mat.reshape(1, 1)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError("A must be a square matrix")
    n = mat.shape[0]
    if cf is None:
        cf = CFModel(1.0, 1.0)

    def evaluator(s: np.ndarray) -> np.ndarray:
        eye = np.eye(n, dtype=s.dtype if np.iscomplexobj(s) else complex)
        m = s[..., None, None] * eye - mat.astype(eye.dtype)
        if n == 1:
            piv = m[..., 0, 0]
            if np.any(np.abs(piv) < 1e-300):
                raise np.linalg.LinAlgError("sI - A numerically singular")
            return 1.0 / piv[..., None, None]
        if n == 2:
            a, b = m[..., 0, 0], m[..., 0, 1]
            c, d = m[..., 1, 0], m[..., 1, 1]
            det = a * d - b * c
            if np.any(np.abs(det) < 1e-300):
                raise np.linalg.LinAlgError("sI - A numerically singular")
            out = np.empty_like(m)
            out[..., 0, 0] = d / det
            out[..., 0, 1] = -b / det
            out[..., 1, 0] = -c / det
            out[..., 1, 1] = a / det
            return out
        # LAPACK handles only single/double complex; larger blocks round-trip
        # through double precision (documented precision floor for this family).
        inv = np.linalg.inv(m.astype(np.complex128, copy=False))
        return inv.astype(m.dtype, copy=False)

    return Symbol(
        name=f"resolvent:{n}x{n}",
        evaluator=evaluator,
        mu=float(mu),
        cf=cf,
        dims=(n, n),
    )


def symbol_product(F: Symbol, G: Symbol) -> Symbol:
    """Pointwise product ``s -> F(s) @ G(s)`` with the product certificate."""
    if F.cols != G.rows:
        raise ValueError("inner dimensions must agree for a symbol product")

    def evaluator(s: np.ndarray) -> np.ndarray:
        return np.einsum("...ij,...jk->...ik", F.evaluator(s), G.evaluator(s))

    return Symbol(
        name=f"({F.name})*({G.name})",
        evaluator=evaluator,
        mu=F.mu + G.mu,
        cf=CFModel(F.cf.scale * G.cf.scale, F.cf.exponent + G.cf.exponent),
        dims=(F.rows, G.cols),
    )


# --------------------------------------------------------------------------
# discretized-frequency composition
# --------------------------------------------------------------------------


def tr_symbol(F: Symbol, kappa: float) -> Symbol:
    """The symbol ``s -> F(s_kappa(s, kappa))`` seen by the quadrature.

    Well-defined because the discretized frequency stays in the right
    half-plane.  The returned certificate combines the half-plane estimates
    ``Re s_kappa >= min(Re s, 1)/2`` and ``|s_kappa| <= 8/(kappa^2 min(Re s,1))``
    with the certificate of ``F``, folded into a ``mu = 0`` envelope.
    """
    kappa = float(kappa)
    if not (0.0 < kappa <= 1.0):
        raise ValueError("kappa must lie in (0, 1]")

    def evaluator(s: np.ndarray) -> np.ndarray:
        return F.evaluator(np.asarray(s_kappa(s, kappa)))

    scale, expo = F.cf.scale, F.cf.exponent
    if F.mu <= 0.0:
        # cf(Re s_k) |s_k|^mu <= cf(min(Re s,1)/2) (min(Re s,1)/2)^mu
        new_cf = CFModel(scale * 2.0 ** (expo - F.mu), expo - F.mu)
    else:
        new_cf = CFModel(scale * 2.0**expo * 8.0**F.mu * kappa ** (-2.0 * F.mu), expo + F.mu)
    return Symbol(
        name=f"tr[{F.name};kappa={kappa:g}]",
        evaluator=evaluator,
        mu=0.0,
        cf=new_cf,
        dims=F.dims,
    )


# --------------------------------------------------------------------------
# certificate validation
# --------------------------------------------------------------------------


def validate_growth(F: Symbol, samples: int, seed: int) -> VerificationReport:
    """Sample the half-plane and test ``||F(s)|| <= cf(Re s)|s|**mu``.

    Violations are reported, not raised: a failed report means the declared
    certificate is wrong and downstream bounds would be meaningless.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    s = sample_cplus(samples, seed)
    norms = value_norm(F(s))
    bound = F.growth_bound(s)
    return pointwise_report(
        f"growth:{F.name}",
        norms,
        bound,
        seed=seed,
        tol=1e-10,
        describe=lambda i: {"s": complex(s[i])},
    )


# --------------------------------------------------------------------------
# registry
# --------------------------------------------------------------------------


def from_spec(spec: str) -> Symbol:
    """Parse a symbol spec string: ``power:MU | delay:D | decay:A | resolvent:PATH``.

    The resolvent path may point at a ``.npy`` file or a plain-text matrix
    readable by ``numpy.loadtxt``; the default growth certificate is used
    and should be confirmed with :func:`validate_growth`.
    """
    kind, _, arg = spec.partition(":")
    kind = kind.strip().lower()
    arg = arg.strip()
    if kind == "power":
        return make_power(float(arg))
    if kind == "delay":
        return make_delay(float(arg))
    if kind == "decay":
        return make_decay(float(arg))
    if kind == "resolvent":
        if not arg:
            raise ValueError("resolvent spec needs a matrix file path")
        if not os.path.exists(arg):
            raise FileNotFoundError(f"matrix file not found: {arg}")
        if arg.endswith(".npy"):
            mat = np.load(arg)
        else:
            mat = np.loadtxt(arg, dtype=complex, ndmin=2)
        return make_resolvent(mat)
    raise ValueError(f"unknown symbol spec {spec!r}")


def builtin_zoo() -> "dict[str, Symbol]":
    """The symbols exercised by the equivalence and round-trip tests."""
    zoo = {
        "power:0": make_power(0.0),
        "power:1": make_power(1.0),
        "power:-1": make_power(-1.0),
        "power:0.5": make_power(0.5),
        "delay:1.0": make_delay(1.0),
        "decay:1.0": make_decay(1.0),
        "resolvent:skew2": make_resolvent(np.array([[0.0, 1.0], [-1.0, 0.0]])),
    }
    return zoo
