"""Binary joint distributions for correlated sources.

A :class:`JointDistribution` holds the 2x2 table ``p[x][y] = Pr[X=x, Y=y]``
for Alice's bit X and Bob's bit Y. Entropies are in bits, LLRs are in
natural-log units with ``LLR = ln P(X=0|y) / P(X=1|y)``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

LLR_MAX = 25.0
NORM_TOL = 1e-12


class DistributionError(ValueError):
    """Invalid distribution parameters or an unreachable target."""


def binary_entropy(p: float) -> float:
    """h(p) in bits, with 0 log 0 = 0."""
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


def _h(probs) -> float:
    return -sum(q * math.log2(q) for q in probs if q > 0.0)


@dataclass(frozen=True)
class JointDistribution:
    p00: float
    p01: float
    p10: float
    p11: float

    def __post_init__(self):
        entries = (self.p00, self.p01, self.p10, self.p11)
        if any(not math.isfinite(q) or q < 0.0 for q in entries):
            raise DistributionError(f"negative or non-finite entry in {entries}")
        if abs(math.fsum(entries) - 1.0) > NORM_TOL:
            raise DistributionError(f"entries sum to {math.fsum(entries)!r}, not 1")

    def prob(self, x: int, y: int) -> float:
        return ((self.p00, self.p01), (self.p10, self.p11))[x][y]

    @property
    def px1(self) -> float:
        return self.p10 + self.p11

    @property
    def py1(self) -> float:
        return self.p01 + self.p11

    def py(self, y: int) -> float:
        return self.py1 if y else self.p00 + self.p10

    def px(self, x: int) -> float:
        return self.px1 if x else self.p00 + self.p01

    def y_given_x(self, y: int, x: int) -> float:
        """P_{Y|X}(y|x); NaN when Pr[X=x] = 0."""
        px = self.px(x)
        return self.prob(x, y) / px if px > 0 else math.nan

    def x_given_y(self, x: int, y: int) -> float:
        py = self.py(y)
        return self.prob(x, y) / py if py > 0 else math.nan

    def crossover(self) -> float:
        """Overall mismatch probability Pr[X != Y] (the QBER)."""
        return self.p01 + self.p10

    def to_dict(self) -> dict:
        return {"p00": self.p00, "p01": self.p01, "p10": self.p10, "p11": self.p11}

    @classmethod
    def from_dict(cls, obj: dict) -> "JointDistribution":
        try:
            return cls(*(float(obj[k]) for k in ("p00", "p01", "p10", "p11")))
        except KeyError as exc:
            raise DistributionError(f"missing key {exc.args[0]!r}") from None

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "JointDistribution":
        return cls.from_dict(json.loads(text))


def from_bsc(p: float) -> JointDistribution:
    """Uniform X observed through a binary symmetric channel with crossover ``p``."""
    if not 0.0 <= p <= 0.5:
        raise DistributionError(f"crossover must lie in [0, 1/2], got {p}")
    return JointDistribution((1 - p) / 2, p / 2, p / 2, (1 - p) / 2)


def from_asymmetric(a: float, b: float) -> JointDistribution:
    """Uniform X with ``P(Y=1|X=0) = a`` and ``P(Y=0|X=1) = b``."""
    for name, v in (("a", a), ("b", b)):
        if not 0.0 <= v <= 1.0:
            raise DistributionError(f"{name} must lie in [0, 1], got {v}")
    return JointDistribution((1 - a) / 2, a / 2, b / 2, (1 - b) / 2)


def entropy_x(d: JointDistribution) -> float:
    return _h((d.px(0), d.px(1)))


def conditional_entropy(d: JointDistribution) -> float:
    """H(X|Y) = sum_y Pr[Y=y] H(X | Y=y), in bits."""
    total = 0.0
    for y in (0, 1):
        py = d.py(y)
        if py > 0:
            total += py * _h((d.prob(0, y) / py, d.prob(1, y) / py))
    return total


def mutual_information(d: JointDistribution) -> float:
    return entropy_x(d) - conditional_entropy(d)


def llr(d: JointDistribution, y: int) -> float:
    """Prior LLR of X given Bob's observation ``y``, clipped to +-LLR_MAX."""
    if d.py(y) <= 0:
        raise DistributionError(f"Pr[Y={y}] = 0; observation impossible")
    num, den = d.prob(0, y), d.prob(1, y)
    if den == 0.0:
        return LLR_MAX
    if num == 0.0:
        return -LLR_MAX
    return float(np.clip(math.log(num / den), -LLR_MAX, LLR_MAX))


def llr_vector(d: JointDistribution, y: np.ndarray) -> np.ndarray:
    """Elementwise :func:`llr` over a bit array."""
    y = np.asarray(y)
    table = np.empty(2)
    for v in (0, 1):
        table[v] = llr(d, v) if d.py(v) > 0 else 0.0
    if d.py(0) <= 0 and np.any(y == 0) or d.py(1) <= 0 and np.any(y == 1):
        raise DistributionError("observation with zero probability")
    return table[y.astype(np.intp)]


def hard_decision(llrs) -> np.ndarray:
    """Bit 1 where the LLR is negative; zero LLR decodes to 0."""
    return (np.asarray(llrs) < 0).astype(np.uint8)


def sample(d: JointDistribution, n: int, seed) -> tuple[np.ndarray, np.ndarray]:
    """Draw ``n`` i.i.d. pairs ``(x_i, y_i)``.

    ``seed`` is anything :func:`numpy.random.default_rng` accepts. X is drawn
    from its marginal and Y from ``P_{Y|X}``, each from its own uniform
    stream, so two distributions sampled with the same seed are coupled.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    u = rng.random((2, n))
    x = (u[0] < d.px1).astype(np.uint8)
    p1 = np.array([d.y_given_x(1, 0) if d.px(0) > 0 else 0.0,
                   d.y_given_x(1, 1) if d.px(1) > 0 else 0.0])
    y = (u[1] < p1[x]).astype(np.uint8)
    return x, y


def solve_equal_hxy(target: float, a: float, tol: float = 1e-12) -> JointDistribution:
    """Find ``b`` in [0, 1/2] with ``H(X|Y) = target`` for ``from_asymmetric(a, b)``.

    H(X|Y) is concave in the channel and maximal on the useless channel
    ``a + b = 1``, hence increasing in ``b`` over [0, 1/2] whenever
    ``a <= 1/2``. Bisection runs to ``tol`` in ``b``.
    """
    if not 0.0 < target < 1.0:
        raise DistributionError(f"target must lie in (0, 1), got {target}")
    if not 0.0 <= a <= 0.5:
        raise DistributionError(f"anchor crossover must lie in [0, 1/2], got {a}")

    def f(b):
        return conditional_entropy(from_asymmetric(a, b)) - target

    lo, hi = 0.0, 0.5
    flo, fhi = f(lo), f(hi)
    if flo > 0 or fhi < 0:
        raise DistributionError(
            f"no b in [0, 1/2] reaches H(X|Y)={target} with a={a} "
            f"(range [{flo + target:.6f}, {fhi + target:.6f}])"
        )
    if flo == 0:
        return from_asymmetric(a, lo)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
    return from_asymmetric(a, 0.5 * (lo + hi))
