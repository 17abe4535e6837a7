"""Density evolution for syndrome decoding with BSC-correlated side information.

With X uniform and a symmetric ``P_{Y|X}``, the syndrome decoder's error
behaviour does not depend on the coset (the value of ``M x``): flipping a
source bit flips the same check signs the syndrome does. The analysis
therefore reduces to ordinary channel-coding density evolution on the
all-zero word, which is what is implemented here, using population
dynamics (sampled messages) rather than quantized densities.

Rates in this module are *design code rates*
``r = 1 - (sum_j rho_j / j) / (sum_i lambda_i / i)``; the matching
compression rate of the syndrome is ``1 - r``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .domain import LLR_MAX


class EnsembleError(ValueError):
    pass


def _normalize(pairs) -> tuple[tuple[int, float], ...]:
    if isinstance(pairs, dict):
        pairs = pairs.items()
    out = {}
    for d, w in pairs:
        d, w = int(d), float(w)
        if d < 1 or w < 0 or not math.isfinite(w):
            raise EnsembleError(f"bad (degree, weight) pair ({d}, {w})")
        if w > 0:
            out[d] = out.get(d, 0.0) + w
    return tuple(sorted(out.items()))


@dataclass(frozen=True)
class DegreeDistribution:
    """Edge-perspective degree distribution pair (lambda, rho)."""

    lam: tuple[tuple[int, float], ...]
    rho: tuple[tuple[int, float], ...]

    def __init__(self, lam, rho):
        object.__setattr__(self, "lam", _normalize(lam))
        object.__setattr__(self, "rho", _normalize(rho))
        for name, dist in (("lambda", self.lam), ("rho", self.rho)):
            if not dist:
                raise EnsembleError(f"{name} is empty")
            total = sum(w for _, w in dist)
            if abs(total - 1.0) > 1e-9:
                raise EnsembleError(f"{name} sums to {total}, not 1")
        if self.lam[0][0] < 2 or self.rho[0][0] < 2:
            raise EnsembleError("variable and check degrees must be >= 2")
        r = self.design_rate
        if not 0.0 < r < 1.0:
            raise EnsembleError(f"design rate {r} outside (0, 1)")

    @classmethod
    def regular(cls, dv: int, dc: int) -> "DegreeDistribution":
        return cls({dv: 1.0}, {dc: 1.0})

    @property
    def design_rate(self) -> float:
        a = sum(w / d for d, w in self.lam)
        b = sum(w / d for d, w in self.rho)
        return 1.0 - b / a

    @property
    def compression_rate(self) -> float:
        return 1.0 - self.design_rate

    @property
    def max_degree(self) -> int:
        return max(self.lam[-1][0], self.rho[-1][0])

    def to_json(self) -> str:
        return json.dumps({"lambda": [[d, w] for d, w in self.lam],
                           "rho": [[d, w] for d, w in self.rho]})

    @classmethod
    def from_json(cls, text: str) -> "DegreeDistribution":
        obj = json.loads(text)
        try:
            return cls(obj["lambda"], obj["rho"])
        except KeyError as exc:
            raise EnsembleError(f"missing key {exc.args[0]!r}") from None

    def as_dicts(self) -> tuple[dict[int, float], dict[int, float]]:
        return dict(self.lam), dict(self.rho)


@dataclass(frozen=True)
class DEParams:
    n_pop: int = 100_000
    eps: float = 1e-4
    max_iters: int = 500
    seed: int = 0
    # give up once the error has not dropped by 1% over this many iterations
    stall_window: int | None = 100


@dataclass(frozen=True)
class ThresholdReport:
    p_star: float
    lo: float
    hi: float
    params: DEParams
    probes: int
    criterion: str = field(default="mean hard-decision error of variable-to-check messages < eps")

    def to_dict(self) -> dict:
        return {"p_star": self.p_star, "lo": self.lo, "hi": self.hi, "probes": self.probes,
                "n_pop": self.params.n_pop, "eps": self.params.eps,
                "max_iters": self.params.max_iters, "seed": self.params.seed,
                "stall_window": self.params.stall_window, "criterion": self.criterion}


@njit(cache=True)
def _sample_degree(degs, cdf):
    u = np.random.random()
    for k in range(cdf.size):
        if u < cdf[k]:
            return degs[k]
    return degs[-1]


@njit(cache=True)
def _population_dynamics(p, lam_deg, lam_cdf, rho_deg, rho_cdf, n_pop, eps,
                         max_iters, seed, stall, clip):
    np.random.seed(seed)
    if p <= 0.0:
        mag = clip
    else:
        mag = min(math.log((1.0 - p) / p), clip)
    tmax = math.tanh(clip / 2.0)
    v = np.empty(n_pop)
    c = np.empty(n_pop)
    for i in range(n_pop):
        v[i] = -mag if np.random.random() < p else mag
    hist = np.empty(max_iters + 1)
    err = 0.0
    for i in range(n_pop):
        if v[i] < 0:
            err += 1.0
        elif v[i] == 0:
            err += 0.5
    err /= n_pop
    hist[0] = err
    if err < eps:
        return True, 0, err
    for it in range(1, max_iters + 1):
        for i in range(n_pop):
            d = _sample_degree(rho_deg, rho_cdf)
            prod = 1.0
            for _ in range(d - 1):
                prod *= math.tanh(v[np.random.randint(n_pop)] / 2.0)
            if prod > tmax:
                prod = tmax
            elif prod < -tmax:
                prod = -tmax
            c[i] = 2.0 * math.atanh(prod)
        err = 0.0
        for i in range(n_pop):
            d = _sample_degree(lam_deg, lam_cdf)
            tot = -mag if np.random.random() < p else mag
            for _ in range(d - 1):
                tot += c[np.random.randint(n_pop)]
            if tot > clip:
                tot = clip
            elif tot < -clip:
                tot = -clip
            v[i] = tot
            if tot < 0:
                err += 1.0
            elif tot == 0:
                err += 0.5
        err /= n_pop
        hist[it] = err
        if err < eps:
            return True, it, err
        if stall > 0 and it >= stall and err > 0.99 * hist[it - stall]:
            return False, it, err
    return False, max_iters, err


def de_run(dd: DegreeDistribution, p: float, params: DEParams = DEParams()) -> tuple[bool, int, float]:
    """Run population dynamics at crossover ``p``.

    Returns ``(converged, iterations, final_error)``. The RNG stream does not
    depend on ``p`` (priors are drawn as ``u < p``), so runs sharing a seed
    use common random numbers across crossovers.
    """
    if not 0.0 <= p <= 0.5:
        raise ValueError(f"crossover must lie in [0, 1/2], got {p}")
    lam_deg = np.array([d for d, _ in dd.lam], dtype=np.int64)
    lam_cdf = np.cumsum([w for _, w in dd.lam])
    rho_deg = np.array([d for d, _ in dd.rho], dtype=np.int64)
    rho_cdf = np.cumsum([w for _, w in dd.rho])
    ok, its, err = _population_dynamics(
        float(p), lam_deg, lam_cdf, rho_deg, rho_cdf, int(params.n_pop), float(params.eps),
        int(params.max_iters), int(params.seed) & 0xFFFFFFFF, int(params.stall_window or 0), LLR_MAX)
    return bool(ok), int(its), float(err)


def de_converges(dd: DegreeDistribution, p: float, params: DEParams = DEParams()) -> bool:
    return de_run(dd, p, params)[0]


def threshold(dd: DegreeDistribution, tol: float = 0.002, params: DEParams = DEParams(),
              lo: float = 0.0, hi: float = 0.5) -> ThresholdReport:
    """Bisect for the largest crossover at which density evolution converges.

    The bracket invariant is: converges at ``lo``, fails at ``hi``. The
    returned ``p_star`` is the bracket midpoint once ``hi - lo <= tol``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    probes = 0
    if lo > 0.0:
        probes += 1
        if not de_converges(dd, lo, params):
            raise ValueError(f"density evolution does not converge at lower bracket {lo}")
    probes += 1
    if de_converges(dd, hi, params):
        return ThresholdReport(hi, hi, hi, params, probes)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        probes += 1
        if de_converges(dd, mid, params):
            lo = mid
        else:
            hi = mid
    return ThresholdReport(0.5 * (lo + hi), lo, hi, params, probes)


def concentrated_rho(lam, design_rate: float) -> dict[int, float]:
    """Check-concentrated rho on two consecutive degrees meeting ``design_rate``."""
    a = sum(w / d for d, w in (lam.items() if isinstance(lam, dict) else lam))
    target = (1.0 - design_rate) * a
    if target <= 0 or target > 0.5:
        raise EnsembleError(f"rate {design_rate} unreachable with lambda {lam}")
    d = int(math.floor(1.0 / target))
    if d < 2:
        d = 2
    if 1.0 / d == target:
        return {d: 1.0}
    w = (target - 1.0 / (d + 1)) / (1.0 / d - 1.0 / (d + 1))
    w = min(max(w, 0.0), 1.0)
    return {k: v for k, v in ((d, w), (d + 1, 1.0 - w)) if v > 1e-12}


@dataclass(frozen=True)
class SearchResult:
    ensemble: DegreeDistribution
    report: ThresholdReport
    baseline: DegreeDistribution
    baseline_report: ThresholdReport
    evaluations: int
    accepted: int


def _baseline(design_rate: float, cap: int) -> DegreeDistribution:
    for dv in (3, 2):
        try:
            rho = concentrated_rho({dv: 1.0}, design_rate)
        except EnsembleError:
            continue
        if max(rho) <= cap:
            return DegreeDistribution({dv: 1.0}, rho)
    raise EnsembleError(f"design rate {design_rate} infeasible with degree cap {cap}")


def search(design_rate: float, degree_cap: int, budget: int, seed: int = 0, tol: float = 0.002,
           params: DEParams = DEParams(n_pop=10_000, max_iters=300, stall_window=50),
           baseline: DegreeDistribution | None = None) -> SearchResult:
    """Perturb-and-accept search for a high-threshold ensemble at a fixed rate.

    The seed candidate is ``baseline`` (default: a check-concentrated
    ensemble with variable degree 3, or 2 if 3 does not fit the cap). Each
    further candidate perturbs lambda over degrees ``2..degree_cap``, recomputes
    a check-concentrated rho for the same design rate, and is accepted only
    if density evolution converges at ``best + tol``; its threshold is then
    refined by bisection above that point. ``budget`` counts candidates
    including the seed, so ``budget=1`` returns the seed unchanged.
    """
    if not 0.0 < design_rate < 1.0:
        raise EnsembleError(f"design rate must lie in (0, 1), got {design_rate}")
    if degree_cap < 3:
        raise EnsembleError("degree cap must be at least 3")
    if budget < 1:
        raise ValueError("budget must be >= 1")
    base = baseline if baseline is not None else _baseline(design_rate, degree_cap)
    base_report = threshold(base, tol, params)
    best, best_report = base, base_report
    rng = np.random.default_rng(seed)
    degrees = np.arange(2, degree_cap + 1)
    accepted = 0
    for _ in range(budget - 1):
        lam = np.zeros(degrees.size)
        for d, w in best.lam:
            lam[d - 2] = w
        cand = _perturb(lam, rng)
        lam_dict = {int(d): float(w) for d, w in zip(degrees, cand) if w > 1e-6}
        total = sum(lam_dict.values())
        lam_dict = {d: w / total for d, w in lam_dict.items()}
        try:
            rho = concentrated_rho(lam_dict, design_rate)
            if max(rho) > degree_cap:
                continue
            dd = DegreeDistribution(lam_dict, rho)
        except EnsembleError:
            continue
        probe = best_report.p_star + tol
        if probe >= 0.5 or not de_converges(dd, probe, params):
            continue
        best = dd
        best_report = threshold(dd, tol, params, lo=probe)
        accepted += 1
    return SearchResult(best, best_report, base, base_report, budget, accepted)


def _perturb(lam: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    out = lam.copy()
    if rng.random() < 0.75:
        # move mass from an occupied degree to any other degree
        src = rng.choice(np.flatnonzero(out > 0))
        dst = rng.choice(np.delete(np.arange(out.size), src))
        amt = min(out[src], rng.uniform(0.0, 0.25 if rng.random() < 0.3 else 0.08))
        out[src] -= amt
        out[dst] += amt
    else:
        out *= np.exp(rng.normal(0.0, 0.2, out.size))
    out[out < 0.005] = 0.0
    if out.sum() <= 0:
        return lam
    return out / out.sum()
