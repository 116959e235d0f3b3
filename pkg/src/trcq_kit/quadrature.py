"""Adaptive quadrature used by the bound evaluator and the integral checks.

Two building blocks:

* :func:`adaptive_simpson` — classic adaptive Simpson with Richardson
  acceptance (the /15 estimate) on a finite interval.
* :func:`integrate_semi_infinite` — for frequency-axis integrals
  ``int_0^inf f``: the head ``[0, first_width]`` plus geometrically growing
  segments, stopping once a caller-supplied *certified* tail bound is
  negligible.  The tail bound is returned so inequality checks can add it
  to the computed value and stay one-sided.

Integrands here are real, non-negative norms; everything is scalar-valued.
"""

from __future__ import annotations

from typing import Callable

__all__ = ["adaptive_simpson", "integrate_segmented", "integrate_semi_infinite"]


def _simpson(fa: float, fm: float, fb: float, h: float) -> float:
    return (h / 6.0) * (fa + 4.0 * fm + fb)


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    rel_tol: float = 1e-9,
    abs_floor: float = 1e-14,
    max_depth: int = 48,
) -> float:
    """Integrate ``f`` over ``[a, b]`` adaptively.

    A panel is accepted when the two-half refinement changes the Simpson
    value by less than ``15 * max(abs_floor, rel_tol * local)``; the
    Richardson-extrapolated value is returned.  ``abs_floor`` stops infinite
    refinement where the integrand vanishes identically.
    """
    if not b > a:
        if b == a:
            return 0.0
        raise ValueError("need b >= a")
    fa, fb = f(a), f(b)
    mid = 0.5 * (a + b)
    fm = f(mid)
    whole = _simpson(fa, fm, fb, b - a)

    def recurse(a, b, fa, fm, fb, whole, depth):
        m = 0.5 * (a + b)
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = f(lm), f(rm)
        left = _simpson(fa, flm, fm, m - a)
        right = _simpson(fm, frm, fb, b - m)
        err = left + right - whole
        scale = abs(left) + abs(right)
        if depth <= 0 or abs(err) <= 15.0 * max(abs_floor, rel_tol * scale):
            return left + right + err / 15.0
        return recurse(a, m, fa, flm, fm, left, depth - 1) + recurse(
            m, b, fm, frm, fb, right, depth - 1
        )

    return recurse(a, b, fa, fm, fb, whole, max_depth)


def integrate_segmented(
    f: Callable[[float], float],
    a: float,
    b: float,
    rel_tol: float = 1e-9,
    abs_floor: float = 1e-14,
    first_width: "float | None" = None,
) -> float:
    """Integrate over ``[a, b]`` split into geometrically growing panels.

    Useful when ``b - a`` spans many orders of magnitude and the integrand's
    features sit near ``a``: one huge Simpson panel would step right over
    them.
    """
    if b <= a:
        return 0.0
    width = first_width if first_width is not None else min(1.0, (b - a) / 8.0)
    total = 0.0
    lo = a
    while lo < b:
        hi = min(b, lo + width)
        total += adaptive_simpson(f, lo, hi, rel_tol, abs_floor)
        lo = hi
        width *= 2.0
    return total


def integrate_semi_infinite(
    f: Callable[[float], float],
    tail_bound: Callable[[float], float],
    rel_tol: float = 1e-9,
    abs_floor: float = 1e-14,
    first_width: float = 1.0,
    max_doublings: int = 200,
) -> tuple[float, float, float]:
    """Approximate ``int_0^inf f`` with a certified remainder.

    ``tail_bound(R)`` must bound ``int_R^inf f`` from above.  Returns
    ``(head, tail, R)`` where ``head`` integrates ``[0, R]`` and ``tail =
    tail_bound(R)``; the cutoff doubles until the tail is negligible against
    the head (or ``max_doublings`` is exhausted, which raises).
    """
    total = adaptive_simpson(f, 0.0, first_width, rel_tol, abs_floor)
    omega = first_width
    for _ in range(max_doublings):
        t = tail_bound(omega)
        if t <= max(abs_floor, rel_tol * (abs(total) + t)):
            return total, t, omega
        total += adaptive_simpson(f, omega, 2.0 * omega, rel_tol, abs_floor)
        omega *= 2.0
    raise RuntimeError(
        f"frequency integral did not localize: tail {tail_bound(omega):.3e} at cutoff {omega:.3e}"
    )
