"""Quadrature engines shared by the impedance, Lifshitz and Kramers-Kronig code.

The central routine is :func:`integrate`, a globally adaptive 7/15-point
Gauss-Kronrod scheme. Integrands are evaluated on whole arrays of nodes at
once, and may return a *batch* of integrands (shape ``(..., n)``) that share
the same panel structure. Panels are refined until every member of the batch
meets its tolerance, which lets a single call evaluate, e.g., an impedance
integral for all transverse momenta of a Matsubara term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, NamedTuple

import numpy as np

_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# 15 nodes on [-1, 1] in ascending order and matching weights
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KRONROD = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GAUSS = np.zeros(15)
_GAUSS[1:7:2] = _WG[:3]
_GAUSS[7] = _WG[3]
_GAUSS[9:15:2] = _WG[2::-1]


class ConvergenceError(RuntimeError):
    """Raised when an iterative numerical procedure exhausts its budget.

    The best available estimate is kept on the exception.
    """

    def __init__(self, message, estimate=None, error=None, diagnostics=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error
        self.diagnostics = diagnostics or {}


class PoleOrderError(ValueError):
    """The integrand of a principal-value integral does not cancel symmetrically."""


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and variable mapping for :func:`integrate`.

    ``mapping`` is only consulted for semi-infinite domains:

    * ``"rational"``:  ``x = a + scale * t / (1 - t)``, ``t`` in ``[0, 1)``
    * ``"exponential"``: ``x = a + scale * exp(w)``, ``|w| <= log_span``
    * ``"identity"``: not allowed for infinite domains
    """

    rel_tol: float = 1e-9
    abs_tol: float = 0.0
    max_subdivisions: int = 4000
    mapping: str = "rational"
    initial_panels: int = 8
    log_span: float = 40.0

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if self.abs_tol < 0:
            raise ValueError("abs_tol must be nonnegative")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")
        if self.mapping not in ("identity", "rational", "exponential"):
            raise ValueError(f"unknown mapping {self.mapping!r}")


class QuadResult(NamedTuple):
    value: np.ndarray | float
    error: np.ndarray | float
    panels: int


def _mapped_integrand(f, a, b, spec: QuadratureSpec, scale: float):
    """Return ``(g, lo, hi)`` so that the integral of f over [a, b] equals
    the integral of g over [lo, hi]."""
    if math.isinf(a):
        raise ValueError("lower limit must be finite; split the domain")
    if not math.isinf(b):
        if b < a:
            raise ValueError("require a <= b")
        return f, a, b
    if spec.mapping == "identity":
        raise ValueError("identity mapping needs a finite domain")
    if spec.mapping == "rational":
        def g(t):
            one_minus = 1.0 - t
            return f(a + scale * t / one_minus) * (scale / one_minus**2)
        return g, 0.0, 1.0

    def g(w):
        ew = scale * np.exp(w)
        return f(a + ew) * ew
    return g, -spec.log_span, spec.log_span


def _gk15(g, lefts, rights):
    centers = 0.5 * (lefts + rights)
    halves = 0.5 * (rights - lefts)
    nodes = centers[:, None] + halves[:, None] * _NODES[None, :]
    vals = np.asarray(g(nodes.ravel()), dtype=float)
    vals = vals.reshape(vals.shape[:-1] + nodes.shape)
    kron = np.sum(vals * _KRONROD, axis=-1) * halves
    gauss = np.sum(vals * _GAUSS, axis=-1) * halves
    if not np.all(np.isfinite(kron)):
        raise ConvergenceError("integrand returned non-finite values")
    return kron, np.abs(kron - gauss)


def integrate(f: Callable[[np.ndarray], np.ndarray], a: float, b: float,
              spec: QuadratureSpec | None = None, scale: float = 1.0) -> QuadResult:
    """Adaptive Gauss-Kronrod integral of ``f`` over ``[a, b]``.

    Parameters
    ----------
    f : callable
        Takes a 1-D array of abscissae and returns an array of shape
        ``(..., n)``; leading axes are a batch of integrands.
    a, b : float
        Limits; ``b`` may be ``numpy.inf``.
    spec : QuadratureSpec
        Tolerances and mapping for the semi-infinite case.
    scale : float
        Length scale of the semi-infinite mapping.

    Returns
    -------
    QuadResult
        ``value`` and ``error`` have the batch shape of ``f``.
    """
    spec = spec or QuadratureSpec()
    g, lo, hi = _mapped_integrand(f, a, b, spec, scale)
    if hi == lo:
        probe = np.asarray(f(np.array([a], dtype=float)))
        zero = np.zeros(probe.shape[:-1])
        return QuadResult(zero if zero.ndim else 0.0, zero if zero.ndim else 0.0, 0)

    edges = np.linspace(lo, hi, max(1, spec.initial_panels) + 1)
    lefts, rights = edges[:-1], edges[1:]
    vals, errs = _gk15(g, lefts, rights)
    while True:
        total = vals.sum(axis=-1)
        err_total = errs.sum(axis=-1)
        tol = np.maximum(spec.abs_tol, spec.rel_tol * np.abs(total))
        if np.all(err_total <= tol):
            break
        npan = lefts.size
        if npan >= spec.max_subdivisions:
            raise ConvergenceError(
                f"subdivision budget {spec.max_subdivisions} exhausted",
                estimate=total, error=err_total)
        # split panels whose share of the error is too large for any batch member
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = errs / np.where(tol > 0, tol, np.finfo(float).tiny)[..., None]
        ratio = ratio.reshape(-1, npan).max(axis=0)
        split = ratio * npan > 1.0
        if not split.any():
            split[np.argmax(ratio)] = True
        budget = spec.max_subdivisions - npan
        idx = np.flatnonzero(split)
        if idx.size > budget:
            idx = idx[np.argsort(ratio[idx])[::-1][:max(budget, 1)]]
            split = np.zeros(npan, dtype=bool)
            split[idx] = True
        mids = 0.5 * (lefts[split] + rights[split])
        new_l = np.concatenate([lefts[split], mids])
        new_r = np.concatenate([mids, rights[split]])
        nv, ne = _gk15(g, new_l, new_r)
        keep = ~split
        lefts = np.concatenate([lefts[keep], new_l])
        rights = np.concatenate([rights[keep], new_r])
        vals = np.concatenate([vals[..., keep], nv], axis=-1)
        errs = np.concatenate([errs[..., keep], ne], axis=-1)
        # fixed panel order keeps the summation deterministic
        order = np.argsort(lefts, kind="stable")
        lefts, rights = lefts[order], rights[order]
        vals, errs = vals[..., order], errs[..., order]

    value = vals.sum(axis=-1)
    error = errs.sum(axis=-1)
    if np.ndim(value) == 0:
        value, error = float(value), float(error)
    return QuadResult(value, error, lefts.size)


@dataclass(frozen=True)
class PrincipalValueSpec:
    pole_location: float
    window_half_width: float
    base: QuadratureSpec = QuadratureSpec()

    def __post_init__(self):
        if not self.window_half_width > 0:
            raise ValueError("window_half_width must be positive")


def principal_value(f: Callable[[np.ndarray], np.ndarray], a: float, b: float,
                    spec: PrincipalValueSpec, scale: float = 1.0) -> float:
    """Cauchy principal value of the integral of ``f`` over ``[a, b]``.

    ``f`` has a simple pole at ``spec.pole_location``. The window
    ``pole +- h`` is folded onto ``[0, h]`` where ``f(p + u) + f(p - u)`` is
    regular; the remaining pieces (possibly infinite, including ``a = -inf``)
    are integrated with :func:`integrate`.
    """
    p, h = spec.pole_location, spec.window_half_width
    if not (a < p - h and p + h < b):
        raise ValueError("principal-value window must lie strictly inside the domain")

    def folded(u):
        return np.asarray(f(p + u)) + np.asarray(f(p - u))

    # a symmetric residue of order > 1 leaves u*folded(u) finite as u -> 0
    u1, u2 = h * 1e-9, h * 1e-6
    m1 = u1 * np.max(np.abs(folded(np.array([u1]))))
    m2 = u2 * np.max(np.abs(folded(np.array([u2]))))
    if m1 > max(0.1 * m2, 1e-300) and m1 > 1e-12 * max(m2, 1.0):
        raise PoleOrderError(f"non-cancelling divergence at x = {p}")

    base = spec.base
    right = integrate(f, p + h, b, base, scale=scale).value
    if math.isinf(a):
        left = integrate(lambda u: np.asarray(f(-u)), -(p - h), math.inf, base, scale=scale).value
    else:
        left = integrate(f, a, p - h, base).value
    # the folded integrand may cancel to round-off; measure its error
    # against the size of the whole problem rather than its own value
    outer = abs(left) + abs(right)
    core_spec = replace(base, abs_tol=max(base.abs_tol, base.rel_tol * outer))
    core = integrate(folded, 0.0, h, core_spec).value
    return float(left + core + right)


class CompensatedAccumulator:
    """Running Neumaier (improved Kahan) sum."""

    def __init__(self):
        self._total = 0.0
        self._comp = 0.0

    def add(self, x) -> None:
        x = float(x)
        t = self._total + x
        if abs(self._total) >= abs(x):
            self._comp += (self._total - t) + x
        else:
            self._comp += (x - t) + self._total
        self._total = t

    @property
    def value(self) -> float:
        return self._total + self._comp


def compensated_sum(terms) -> float:
    """Neumaier-compensated sum of ``terms`` in the order given."""
    acc = CompensatedAccumulator()
    for x in terms:
        acc.add(x)
    return acc.value
