"""GreyShot: data-free latent-factor training on the grey power-law objective.

Each cell of an M x N index grid is scored by a dot product U_i . V_j.  The
grey self-consistency transform

    g(x) = (1 - b/a) * exp(-a*x) + b/a

maps a score to its grey reconstruction, and the objective is the product
of g^g over cells.  Training runs seeded stochastic gradient steps using
the four analytic per-cell derivatives of g^g (with respect to a, b, U_i
and V_j).  None of the update formulas reads rating data; the train()
signature takes only the grid dimensions and a config, which is the whole
point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

A_MIN = 1e-12


class DegenerateTransform(ValueError):
    """The grey transform left its valid domain (g <= 0 or a ~ 0)."""


@dataclass(frozen=True)
class TrainConfig:
    """Hyperparameters for GreyShot training; every value is a design choice.

    init_scale defaults to 1/sqrt(rank) so initial dot products are O(1).
    g_floor / g_cap bound the transform value before powers and logs are
    taken; a step whose *unclamped* g is nonpositive is skipped outright
    rather than clamped, so the floor never silently biases updates.

    ascent selects the update direction.  The default is descent: the
    objective g^g is unbounded above and ascent reaches finite-time blowup
    within a few hundred steps at any sane learning rate, whereas descent
    relaxes every sampled cell toward the interior stationary point
    g = 1/e and stays numerically clean for arbitrarily long runs.  The
    flag keeps ascent available for ablation.
    """

    rank: int = 10
    learning_rate: float = 0.01
    iterations: int = 100_000
    seed: int = 0
    init_scale: float | None = None
    g_floor: float = 1e-8
    g_cap: float = 20.0
    a0: float = 0.5
    b0: float = 0.1
    ascent: bool = False

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError(f"rank must be >= 1, got {self.rank}")
        if self.learning_rate < 0:
            raise ValueError(f"learning_rate must be >= 0, got {self.learning_rate}")
        if self.iterations < 1:
            raise ValueError(f"iterations must be >= 1, got {self.iterations}")
        if not 0.0 < self.g_floor < 1.0:
            raise ValueError(f"g_floor must lie in (0, 1), got {self.g_floor}")
        if self.g_cap <= self.g_floor:
            raise ValueError("g_cap must exceed g_floor")
        if self.init_scale is None:
            object.__setattr__(self, "init_scale", 1.0 / math.sqrt(self.rank))
        elif self.init_scale <= 0:
            raise ValueError(f"init_scale must be > 0, got {self.init_scale}")

    def with_seed(self, seed: int) -> "TrainConfig":
        return replace(self, seed=seed)


@dataclass
class GreyShotParams:
    """Trainable state: factor matrices plus the two grey scalars.

    skipped_steps counts training steps abandoned because the transform went
    nonpositive or an update would have been non-finite; a_rejections counts
    steps whose update to ``a`` alone was discarded for landing inside the
    near-zero exclusion band.
    """

    u: np.ndarray
    v: np.ndarray
    a: float
    b: float
    skipped_steps: int = 0
    a_rejections: int = 0

    @property
    def m(self) -> int:
        return self.u.shape[0]

    @property
    def n(self) -> int:
        return self.v.shape[0]

    @property
    def rank(self) -> int:
        return self.u.shape[1]

    def check_index(self, i: int, j: int) -> None:
        if not 0 <= i < self.m:
            raise IndexError(f"user index {i} out of range [0, {self.m})")
        if not 0 <= j < self.n:
            raise IndexError(f"item index {j} out of range [0, {self.n})")


def grey_transform(x: float, a: float, b: float) -> float:
    """g(x) = (1 - b/a) * exp(-a*x) + b/a.

    Evaluated as e + (b/a)*(1 - e) with e = exp(-a*x), which is algebraically
    identical and returns exactly 1.0 at x = 0 for every valid (a, b).
    """
    if abs(a) < A_MIN:
        raise DegenerateTransform(f"|a| too small for the grey transform ({a!r})")
    e = math.exp(-a * x)
    return e + (b / a) * (1.0 - e)


def likelihood_term(g: float) -> float:
    """Single objective factor g^g, computed as exp(g*ln g) for stability."""
    if g <= 0:
        raise DegenerateTransform(f"g must be positive for g^g, got {g}")
    return math.exp(g * math.log(g))


def log_likelihood(
    params: GreyShotParams,
    pairs,
    g_floor: float = 1e-8,
    g_cap: float = 20.0,
) -> float:
    """Sum of g*ln g over (i, j) pairs, i.e. the log of the product objective.

    g is clamped into [g_floor, g_cap] before the log, mirroring the
    stability policy used during training.
    """
    total = 0.0
    for i, j in pairs:
        params.check_index(i, j)
        x = float(params.u[i] @ params.v[j])
        g = grey_transform(x, params.a, params.b)
        g = min(max(g, g_floor), g_cap)
        total += g * math.log(g)
    return total


def _pair_gradients(x, a, b, g_floor, g_cap):
    """Per-cell derivatives of g^g at score x: (d/da, d/db, shared U/V scalar).

    The U and V gradients are scalar multiples of the opposite factor row;
    the shared scalar is returned and the caller multiplies by V_j or U_i.
    Raises DegenerateTransform when the unclamped transform is nonpositive,
    which the training loop treats as a skipped step.
    """
    if abs(a) < A_MIN:
        raise DegenerateTransform(f"|a| too small ({a!r})")
    try:
        t0 = b / a
        e = math.exp(-a * x)
        coeff = 1.0 - t0
        ec = e * coeff
        g = t0 + ec
        if g <= 0.0:
            raise DegenerateTransform(f"grey transform nonpositive (g={g!r})")
        gc = min(max(g, g_floor), g_cap)

        a2 = a * a
        g_pow_gm1 = gc ** (t0 - 1.0 + ec)
        g_pow_g = gc**gc
        ln_g = math.log(gc)
        e_ln = e * ln_g

        d_a = (
            b * e * gc * g_pow_gm1 / a2
            - x * ec * gc * g_pow_gm1
            - b * gc * g_pow_gm1 / a2
            - x * e_ln * coeff * g_pow_g
            + b * e_ln * g_pow_g / a2
            - b * g_pow_g * ln_g / a2
        )
        d_b = (
            gc * g_pow_gm1 / a
            - e * gc * g_pow_gm1 / a
            - e * g_pow_g * ln_g / a
            + g_pow_g * ln_g / a
        )
        uv_scalar = -(a * ec * gc ** (t0 + ec) + a * e * coeff * g_pow_g * ln_g)
    except OverflowError as exc:
        # exp/pow left double range; the caller treats this as a skipped step
        raise DegenerateTransform(f"gradient overflow at x={x!r}") from exc
    return d_a, d_b, uv_scalar


def grad_a(params: GreyShotParams, i: int, j: int,
           g_floor: float = 1e-8, g_cap: float = 20.0) -> float:
    """d(g^g)/da at cell (i, j)."""
    params.check_index(i, j)
    x = float(params.u[i] @ params.v[j])
    d_a, _, _ = _pair_gradients(x, params.a, params.b, g_floor, g_cap)
    return d_a


def grad_b(params: GreyShotParams, i: int, j: int,
           g_floor: float = 1e-8, g_cap: float = 20.0) -> float:
    """d(g^g)/db at cell (i, j)."""
    params.check_index(i, j)
    x = float(params.u[i] @ params.v[j])
    _, d_b, _ = _pair_gradients(x, params.a, params.b, g_floor, g_cap)
    return d_b


def grad_u(params: GreyShotParams, i: int, j: int,
           g_floor: float = 1e-8, g_cap: float = 20.0) -> np.ndarray:
    """d(g^g)/dU_i at cell (i, j); a scalar multiple of V_j."""
    params.check_index(i, j)
    x = float(params.u[i] @ params.v[j])
    _, _, s = _pair_gradients(x, params.a, params.b, g_floor, g_cap)
    return s * params.v[j]


def grad_v(params: GreyShotParams, i: int, j: int,
           g_floor: float = 1e-8, g_cap: float = 20.0) -> np.ndarray:
    """d(g^g)/dV_j at cell (i, j); the mirror of grad_u."""
    params.check_index(i, j)
    x = float(params.u[i] @ params.v[j])
    _, _, s = _pair_gradients(x, params.a, params.b, g_floor, g_cap)
    return s * params.u[i]


def train(m: int, n: int, config: TrainConfig) -> GreyShotParams:
    """Seeded stochastic gradient training over an M x N grid; reads no data.

    Cells are sampled i.i.d. uniformly.  All four gradients of one step are
    evaluated at the step's starting parameters and applied together
    (theta <- theta +/- lr * d(g^g)/dtheta per the direction flag).  An
    update to ``a`` landing inside (-1e-12, 1e-12) is rejected for that step;
    a step whose transform is nonpositive or whose update is non-finite is
    skipped entirely and counted.
    """
    if m < 1 or n < 1:
        raise ValueError(f"grid dimensions must be >= 1, got {m}x{n}")
    rng = np.random.default_rng(config.seed)
    u = rng.random((m, config.rank)) * config.init_scale
    v = rng.random((n, config.rank)) * config.init_scale
    a = config.a0
    b = config.b0
    rows = rng.integers(0, m, size=config.iterations).tolist()
    cols = rng.integers(0, n, size=config.iterations).tolist()

    step = config.learning_rate if config.ascent else -config.learning_rate
    skipped = 0
    rejected = 0
    for i, j in zip(rows, cols):
        ui = u[i]
        vj = v[j]
        x = float(ui @ vj)
        try:
            d_a, d_b, s = _pair_gradients(x, a, b, config.g_floor, config.g_cap)
        except DegenerateTransform:
            skipped += 1
            continue
        s *= step
        new_a = a + step * d_a
        new_b = b + step * d_b
        new_u = ui + s * vj
        new_v = vj + s * ui
        if not (
            math.isfinite(new_a)
            and math.isfinite(new_b)
            and np.isfinite(new_u).all()
            and np.isfinite(new_v).all()
        ):
            skipped += 1
            continue
        if abs(new_a) < A_MIN:
            rejected += 1
        else:
            a = new_a
        b = new_b
        u[i] = new_u
        v[j] = new_v
    return GreyShotParams(u=u, v=v, a=a, b=b,
                          skipped_steps=skipped, a_rejections=rejected)


def predict(params: GreyShotParams, i: int, j: int) -> float:
    """Raw dot-product prediction U_i . V_j (rescaling happens in metrics)."""
    params.check_index(i, j)
    return float(params.u[i] @ params.v[j])


PARAMS_HEADER = "greyshot-params v1"


def save_params(params: GreyShotParams, path) -> None:
    """Plain-text parameter file: header line ``greyshot-params v1 M N K a b``
    followed by the M rows of U and the N rows of V.  Values carry 17
    significant digits, which round-trips doubles exactly."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(
            f"{PARAMS_HEADER} {params.m} {params.n} {params.rank} "
            f"{params.a:.17g} {params.b:.17g}\n"
        )
        for row in np.vstack([params.u, params.v]):
            fh.write(" ".join(f"{x:.17g}" for x in row) + "\n")


def load_params(path) -> GreyShotParams:
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().split()
        if header[:2] != PARAMS_HEADER.split() or len(header) != 7:
            raise ValueError(f"{path}: not a greyshot-params v1 file")
        m, n, k = int(header[2]), int(header[3]), int(header[4])
        a, b = float(header[5]), float(header[6])
        flat = np.loadtxt(fh, ndmin=2)
    if flat.shape != (m + n, k):
        raise ValueError(
            f"{path}: expected {m + n} rows of {k} values, got {flat.shape}"
        )
    return GreyShotParams(u=flat[:m].copy(), v=flat[m:].copy(), a=a, b=b)
