"""Scheme orchestration and Monte-Carlo experiments.

Every trial ``t`` of an experiment with master seed ``s`` draws its source
pair and any protocol randomness from ``SeedSequence([s, t])``. The same
trial index therefore sees the same uniforms under every scheme,
distribution and reveal fraction, which pairs the configurations being
compared (common random numbers).
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .. import cascade as cascade_mod
from ..domain import JointDistribution, conditional_entropy, llr_vector, sample
from ..ldpc import decoder as ldpc_decoder
from ..ldpc.matrix import SparseParityMatrix, syndrome
from ..ldpc.shorten import ShortenedCode, nested_positions, shorten
from .transcript import Direction, Transcript, replay_violations

ENTROPY_MATCH_TOL = 1e-6


@dataclass(frozen=True)
class LdpcScheme:
    """One-way syndrome coding with an optional shortening fraction."""

    matrix: SparseParityMatrix
    max_iters: int = ldpc_decoder.DEFAULT_MAX_ITERS
    reveal_fraction: float = 0.0
    reveal_seed: int = 0
    name: str = "ldpc"

    def describe(self) -> dict:
        return {"scheme": self.name, "m": self.matrix.m, "n": self.matrix.n,
                "max_iters": self.max_iters, "reveal_fraction": self.reveal_fraction,
                "reveal_seed": self.reveal_seed}


@dataclass(frozen=True)
class CascadeScheme:
    """Interactive Cascade. ``k1=None`` derives it from the crossover."""

    passes: int = 4
    k1: int | None = None
    growth: float = 2.0
    name: str = "cascade"

    def config(self, d: JointDistribution, n: int, shuffle_seed: int) -> cascade_mod.CascadeConfig:
        if self.k1 is None:
            return cascade_mod.CascadeConfig.for_distribution(
                d, n, passes=self.passes, growth=self.growth, shuffle_seed=shuffle_seed)
        return cascade_mod.CascadeConfig(self.passes, self.k1, self.growth, shuffle_seed)

    def describe(self) -> dict:
        return {"scheme": self.name, "passes": self.passes, "k1": self.k1, "growth": self.growth}


def describe_distribution(d: JointDistribution) -> str:
    """``bsc:p`` for uniform-input symmetric laws, else ``asym:a,b`` (or ``joint:...``)."""
    if abs(d.px(0) - 0.5) < 1e-12:
        a, b = d.y_given_x(1, 0), d.y_given_x(0, 1)
        if abs(a - b) < 1e-15 and a <= 0.5:
            return f"bsc:{a!r}"
        return f"asym:{a!r},{b!r}"
    return "joint:{p00!r},{p01!r},{p10!r},{p11!r}".format(**d.to_dict())


@dataclass
class SimReport:
    scheme: str
    distribution: dict
    dist: str
    n: int
    m: int | None
    trials: int
    seed: int
    h_xy: float
    frame_errors: int
    undetected: int
    converged: int
    mean_iterations: float | None
    mean_leak_alice: float
    mean_leak_total: float
    effective_rate: float | None
    soundness_violations: int
    replay_violations: int
    config: dict
    metadata: dict = field(default_factory=dict, compare=False)

    @property
    def fer(self) -> float:
        return self.frame_errors / self.trials

    @property
    def efficiency(self) -> float | None:
        """Alice-bit leakage over the Slepian-Wolf limit ``n H(X|Y)``."""
        if self.h_xy <= 0:
            return None
        return self.mean_leak_alice / (self.n * self.h_xy)

    @property
    def efficiency_total(self) -> float | None:
        if self.h_xy <= 0:
            return None
        return self.mean_leak_total / (self.n * self.h_xy)

    def payload(self) -> dict:
        """Deterministic content: everything except wall-clock metadata."""
        out = asdict(self)
        out.pop("metadata")
        out["fer"] = self.fer
        out["efficiency"] = self.efficiency
        out["efficiency_total"] = self.efficiency_total
        return out

    def to_dict(self) -> dict:
        out = self.payload()
        out["metadata"] = dict(self.metadata)
        return out


def trial_seeds(master_seed: int, trial: int) -> tuple[np.random.SeedSequence, int]:
    """Source-sampling seed and an auxiliary protocol seed for one trial."""
    ss = np.random.SeedSequence([int(master_seed), int(trial)])
    source, aux = ss.spawn(2)
    return source, int(aux.generate_state(1)[0])


def reconcile_oneway(x, y, M: SparseParityMatrix, d: JointDistribution,
                     max_iters: int = ldpc_decoder.DEFAULT_MAX_ITERS,
                     shortened: ShortenedCode | None = None):
    """Alice sends ``M x`` (plus any shortened bits); Bob decodes with ``y``.

    Returns ``(DecodeResult, Transcript)``.
    """
    x = np.asarray(x, dtype=np.uint8)
    t = Transcript()
    s = syndrome(M, x)
    rows = tuple(M.check_var[a:b] for a, b in zip(M.check_ptr[:-1], M.check_ptr[1:]))
    t.send(Direction.ALICE_TO_BOB, "syndrome", s, rows)
    priors = llr_vector(d, y)
    if shortened is None or shortened.disclosed_bits == 0:
        return ldpc_decoder.decode(M, s, priors, max_iters), t
    if shortened.matrix is not M:
        raise ValueError("shortening was built for a different matrix")
    bits = shortened.disclose(x)
    t.send(Direction.ALICE_TO_BOB, "revealed-bits", bits, [p[None] for p in shortened.positions])
    return shortened.decode(s, priors, bits, max_iters), t


def simulate(scheme, d: JointDistribution, n: int, trials: int, master_seed: int,
             check_replay: bool = False) -> SimReport:
    """Run ``trials`` independent reconciliations and aggregate them.

    A frame error is any difference between Bob's final string and Alice's.
    For the LDPC scheme, a decoder that reports convergence on a wrong
    string is additionally counted as undetected, and every claimed
    convergence is re-checked against the syndrome (``soundness_violations``).
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if n < 1:
        raise ValueError("n must be >= 1")
    t0 = time.perf_counter()
    h = conditional_entropy(d)
    errors = undetected = converged = violations = replays = 0
    iters = []
    leak_a = leak_t = 0
    m = None
    eff_rate = None
    short = None
    if isinstance(scheme, LdpcScheme):
        M = scheme.matrix
        if M.n != n:
            raise ValueError(f"matrix has n={M.n}, experiment asked for n={n}")
        m = M.m
        pos = nested_positions(n, scheme.reveal_fraction, scheme.reveal_seed)
        short = shorten(M, pos)
        eff_rate = short.effective_rate
    elif not isinstance(scheme, CascadeScheme):
        raise TypeError(f"unknown scheme {scheme!r}")

    for k in range(trials):
        src, aux = trial_seeds(master_seed, k)
        x, y = sample(d, n, src)
        if isinstance(scheme, LdpcScheme):
            res, tr = reconcile_oneway(x, y, scheme.matrix, d, scheme.max_iters, short)
            s = syndrome(scheme.matrix, x)
            if not ldpc_decoder.verify(scheme.matrix, res, s):
                violations += 1
            wrong = not np.array_equal(res.estimate, x)
            converged += res.converged
            undetected += wrong and res.converged
            iters.append(res.iterations)
        else:
            out = cascade_mod.run(x, y, scheme.config(d, n, aux))
            tr = out.transcript
            wrong = out.residual_errors > 0
            converged += not wrong
        if check_replay:
            replays += replay_violations(tr, x)
        errors += wrong
        leak_a += tr.alice_bits
        leak_t += tr.total_bits

    config = scheme.describe()
    if isinstance(scheme, CascadeScheme):
        config["k1_resolved"] = scheme.config(d, n, 0).k1
    return SimReport(
        scheme=scheme.name, distribution=d.to_dict(), dist=describe_distribution(d), n=n, m=m,
        trials=trials, seed=int(master_seed), h_xy=h, frame_errors=errors, undetected=undetected,
        converged=converged, mean_iterations=float(np.mean(iters)) if iters else None,
        mean_leak_alice=leak_a / trials, mean_leak_total=leak_t / trials, effective_rate=eff_rate,
        soundness_violations=violations, replay_violations=replays, config=config,
        metadata={"wall_clock_s": time.perf_counter() - t0},
    )


@dataclass
class UniversalityReport:
    reports: list[SimReport]

    @property
    def fers(self) -> list[float]:
        return [r.fer for r in self.reports]

    @property
    def spread(self) -> float:
        return max(self.fers) - min(self.fers)

    def payload(self) -> dict:
        return {"spread": self.spread, "reports": [r.payload() for r in self.reports]}


def universality_sweep(M: SparseParityMatrix, family, n: int, trials: int, seed: int,
                       max_iters: int = ldpc_decoder.DEFAULT_MAX_ITERS) -> UniversalityReport:
    """One matrix against several distributions sharing H(X|Y).

    All members use the same per-trial seeds, so a member's result does not
    depend on its position in ``family``.
    """
    family = list(family)
    if not family:
        raise ValueError("family is empty")
    hs = [conditional_entropy(d) for d in family]
    if max(hs) - min(hs) > ENTROPY_MATCH_TOL:
        raise ValueError(f"family conditional entropies differ by {max(hs) - min(hs):.3g} "
                         f"(> {ENTROPY_MATCH_TOL})")
    scheme = LdpcScheme(M, max_iters)
    return UniversalityReport([simulate(scheme, d, n, trials, seed) for d in family])


def rate_sweep(M: SparseParityMatrix, d: JointDistribution, reveal_fractions, n: int, trials: int,
               seed: int, max_iters: int = ldpc_decoder.DEFAULT_MAX_ITERS,
               reveal_seed: int = 0) -> list[SimReport]:
    """Shortening sweep of one mother matrix.

    Revealed sets are nested across fractions and trials are paired, so the
    only thing that changes along the sweep is how much Alice discloses.
    Efficiency counts the disclosed bits as leakage.
    """
    out = []
    for f in reveal_fractions:
        if not 0.0 <= f <= 1.0:
            raise ValueError(f"reveal fraction {f} outside [0, 1]")
        out.append(simulate(LdpcScheme(M, max_iters, float(f), reveal_seed), d, n, trials, seed))
    return out
