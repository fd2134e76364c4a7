"""Casimir free energy and pressure between two parallel plates.

Each Matsubara term is integrated in ``y = 2 a q_l`` from ``zeta_l = 2 a xi_l / c``
upward, so the exponential factor becomes ``exp(-y)`` at every separation:

    F = k_B T / (8 pi a^2) sum'_l int y dy sum_alpha ln(1 - r1 r2 e^-y)
    P = -k_B T / (8 pi a^3) sum'_l int y^2 dy sum_alpha [e^y / (r1 r2) - 1]^-1
"""

from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .constants import HBAR_C_EV_M, K_B_EV, K_B_J
from .impedance import IMPEDANCE_SPEC
from .materials import MaterialSpec
from .numerics import CompensatedAccumulator, ConvergenceError, QuadratureSpec, compensated_sum, integrate
from .reflection import Model, ResponseModel, reflection_pair

log = logging.getLogger(__name__)

OUTER_SPEC = QuadratureSpec(rel_tol=1e-8, mapping="identity", initial_panels=6)


@dataclass(frozen=True)
class Plate:
    material: MaterialSpec
    model: ResponseModel = Model.NONLOCAL

    def __post_init__(self):
        if isinstance(self.model, str) and not isinstance(self.model, Model):
            object.__setattr__(self, "model", Model.parse(self.model))


@dataclass(frozen=True)
class PlatePair:
    plate1: Plate
    plate2: Plate

    @classmethod
    def identical(cls, material: MaterialSpec, model: ResponseModel = Model.NONLOCAL) -> "PlatePair":
        plate = Plate(material, model)
        return cls(plate, plate)


@dataclass(frozen=True)
class MatsubaraContext:
    """Temperature, separation and the numerical policy of the Matsubara sum.

    The sum stops once three consecutive terms are each below
    ``term_rel_tol`` times the running total; ``l_cap`` is a hard limit.
    """

    T: float
    a: float
    term_rel_tol: float = 1e-10
    l_cap: int = 20000
    y_span: float = 60.0
    outer: QuadratureSpec = OUTER_SPEC
    inner: QuadratureSpec = IMPEDANCE_SPEC
    threads: int | None = None

    def __post_init__(self):
        if not self.T > 0:
            raise ValueError("temperature must be positive")
        if not self.a > 0:
            raise ValueError("separation must be positive")

    @property
    def hbar_xi1(self) -> float:
        return matsubara_energy(self.T, 1)

    @property
    def zeta1(self) -> float:
        return 2.0 * self.a * self.hbar_xi1 / HBAR_C_EV_M


@dataclass
class LifshitzResult:
    value: float
    terms: list[float] = field(default_factory=list)
    l_max: int = 0

    def zero_term_fraction(self) -> float:
        """Share of the ``l = 0`` term (with its 1/2 weight) in the total sum."""
        total = compensated_sum(self.weighted_terms())
        return 0.5 * self.terms[0] / total if total else 0.0

    def weighted_terms(self):
        return [0.5 * t if i == 0 else t for i, t in enumerate(self.terms)]


def matsubara_energy(T: float, l: int) -> float:
    """``hbar xi_l = 2 pi k_B T l`` in eV."""
    if not T > 0 or l < 0:
        raise ValueError("need T > 0 and l >= 0")
    return 2.0 * math.pi * K_B_EV * T * l


def _thread_count(ctx: MatsubaraContext) -> int:
    if ctx.threads is not None:
        return max(1, int(ctx.threads))
    env = os.environ.get("CASIMIR_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _term(pair: PlatePair, ctx: MatsubaraContext, l: int, kind: str) -> float:
    a = ctx.a
    hbar_xi = matsubara_energy(ctx.T, l)
    zeta = 2.0 * a * hbar_xi / HBAR_C_EV_M
    power = 2 if kind == "pressure" else 1

    def coefficients(plate: Plate, y):
        if l == 0:
            return reflection_pair(plate.material, plate.model, 0, 0.0, k_perp=y / (2.0 * a), spec=ctx.inner)
        p = np.sqrt(np.maximum(y * y - zeta * zeta, 0.0)) / zeta
        return reflection_pair(plate.material, plate.model, l, hbar_xi, p=p, spec=ctx.inner)

    def integrand(y):
        r1 = coefficients(pair.plate1, y)
        r2 = r1 if pair.plate2 == pair.plate1 else coefficients(pair.plate2, y)
        decay = np.exp(-y)
        total = np.zeros_like(y)
        for x in (r1.r_tm * r2.r_tm * decay, r1.r_te * r2.r_te * decay):
            if kind == "pressure":
                total = total + x / (1.0 - x)
            else:
                total = total + np.log1p(-x)
        return y**power * total

    y_max = max(zeta, 1.0) + ctx.y_span
    try:
        return integrate(integrand, zeta, y_max, ctx.outer).value
    except ConvergenceError as exc:
        diag = {**exc.diagnostics, "l": l, "a": a, "T": ctx.T}
        raise ConvergenceError(f"{exc} (Matsubara term l = {l}, a = {a:g} m)",
                               estimate=exc.estimate, error=exc.error, diagnostics=diag) from exc


def matsubara_sum(pair: PlatePair, ctx: MatsubaraContext, kind: Literal["pressure", "free_energy"]) -> LifshitzResult:
    """Evaluate the primed Matsubara sum, truncated adaptively.

    Terms may be evaluated concurrently, but the accumulation is a compensated
    sum in ascending ``l``, so the result does not depend on scheduling.
    """
    if kind not in ("pressure", "free_energy"):
        raise ValueError(f"unknown kind {kind!r}")
    nthreads = _thread_count(ctx)
    block = max(4, 2 * nthreads)
    terms: list[float] = []
    running = CompensatedAccumulator()
    small_run = 0
    pool = ThreadPoolExecutor(nthreads) if nthreads > 1 else None
    try:
        l_next = 0
        while True:
            ls = range(l_next, min(l_next + block, ctx.l_cap + 1))
            if not ls:
                raise ConvergenceError(
                    f"Matsubara sum not converged by l = {ctx.l_cap}",
                    estimate=running.value,
                    diagnostics={"a": ctx.a, "T": ctx.T, "last_terms": terms[-3:]})
            if pool is None:
                values = [_term(pair, ctx, l, kind) for l in ls]
            else:
                values = list(pool.map(lambda l: _term(pair, ctx, l, kind), ls))
            for l, t in zip(ls, values):
                terms.append(t)
                running.add(0.5 * t if l == 0 else t)
                small_run = small_run + 1 if abs(t) <= ctx.term_rel_tol * abs(running.value) else 0
                if small_run >= 3 and len(terms) >= 3:
                    result = LifshitzResult(0.0, terms, l)
                    total = compensated_sum(result.weighted_terms())
                    if kind == "pressure":
                        result.value = -K_B_J * ctx.T / (8.0 * math.pi * ctx.a**3) * total
                    else:
                        result.value = K_B_J * ctx.T / (8.0 * math.pi * ctx.a**2) * total
                    log.debug("%s a=%g T=%g converged at l_max=%d", kind, ctx.a, ctx.T, l)
                    return result
            l_next = ls[-1] + 1
    finally:
        if pool is not None:
            pool.shutdown()


def pressure(pair: PlatePair, ctx: MatsubaraContext) -> float:
    """Casimir pressure (Pa); negative values are attractive."""
    return matsubara_sum(pair, ctx, "pressure").value


def free_energy(pair: PlatePair, ctx: MatsubaraContext) -> float:
    """Casimir free energy per unit area (J/m^2)."""
    return matsubara_sum(pair, ctx, "free_energy").value
