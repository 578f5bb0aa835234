"""Strategy simplices, matrix and bimatrix games, and turnover settings.

Everything here is an immutable value object: weight vectors and payoff
matrices are copied on construction and exposed as read-only arrays, so
instances are safe to share across threads or worker processes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "SimplexDistribution",
    "MatrixGame",
    "BimatrixGame",
    "TurnoverConfig",
    "BimatrixTurnoverConfig",
    "SimplexBoundaryError",
    "DegenerateGameError",
    "payoffs",
    "mean_payoff",
    "effective_payoffs",
    "bimatrix_payoffs",
    "alpha_beta",
    "rock_paper_scissors",
    "matching_pennies",
    "coordination_game",
    "load_game",
]

# Construction accepts weight sums within this distance of 1 and renormalizes;
# anything further off is rejected as a real error, not integrator dust.
SUM_ACCEPT_TOL = 1e-6
# Normalization guaranteed after construction.
SUM_STRICT_TOL = 1e-9


class SimplexBoundaryError(ValueError):
    """An interior-only mapping was evaluated on the simplex boundary."""


class DegenerateGameError(ValueError):
    """A 2x2 analysis requiring alpha != 0 hit a degenerate game."""


def _readonly(values, dtype=float) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class SimplexDistribution:
    """A probability vector over strategies: the state of one population.

    Weights must be non-negative and sum to 1 within ``SUM_ACCEPT_TOL``;
    the constructor renormalizes small deviations (so integrator output can
    be wrapped directly) and rejects anything worse. Tiny negative entries
    from floating-point dust (>= -1e-12) are clipped to zero.
    """

    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 1 or w.size < 2:
            raise ValueError("weights must be a 1-d vector of length >= 2")
        if not np.all(np.isfinite(w)):
            raise ValueError("weights must be finite")
        if np.any(w < 0.0):
            if np.any(w < -1e-12):
                raise ValueError(f"negative weight {w.min():.3e}")
            w = np.where(w < 0.0, 0.0, w)
        total = w.sum()
        if abs(total - 1.0) > SUM_ACCEPT_TOL:
            raise ValueError(
                f"weights sum to {total!r}; deviation exceeds {SUM_ACCEPT_TOL}"
            )
        object.__setattr__(self, "weights", _readonly(w / total))

    @classmethod
    def uniform(cls, n: int) -> "SimplexDistribution":
        return cls(np.full(n, 1.0 / n))

    @property
    def dim(self) -> int:
        return self.weights.size

    def is_interior(self) -> bool:
        """True if every strategy has strictly positive weight."""
        return bool(np.all(self.weights > 0.0))

    def __len__(self) -> int:
        return self.weights.size

    def __getitem__(self, i):
        return self.weights[i]


@dataclass(frozen=True)
class MatrixGame:
    """Single-population game with payoff vector ``A @ x``."""

    payoff_matrix: np.ndarray
    strategy_labels: tuple[str, ...] | None = None

    def __post_init__(self):
        a = np.asarray(self.payoff_matrix, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"payoff matrix must be square, got shape {a.shape}")
        if a.shape[0] < 2:
            raise ValueError("need at least 2 strategies")
        if not np.all(np.isfinite(a)):
            raise ValueError("payoff matrix entries must be finite")
        labels = self.strategy_labels
        if labels is None:
            labels = tuple(f"s{i + 1}" for i in range(a.shape[0]))
        else:
            labels = tuple(str(s) for s in labels)
            if len(labels) != a.shape[0]:
                raise ValueError("label count does not match matrix dimension")
        object.__setattr__(self, "payoff_matrix", _readonly(a))
        object.__setattr__(self, "strategy_labels", labels)

    @property
    def n_strategies(self) -> int:
        return self.payoff_matrix.shape[0]


@dataclass(frozen=True)
class BimatrixGame:
    """Two-population game: population 1 earns ``A @ y``, population 2 ``B @ x``.

    ``a`` has shape (m, k) and ``b`` shape (k, m). For 2x2 games the
    classifiers ``alpha`` and ``beta`` are exposed; their product's sign
    organizes the equilibrium structure.
    """

    a: np.ndarray
    b: np.ndarray
    labels_x: tuple[str, ...] | None = None
    labels_y: tuple[str, ...] | None = None

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float)
        b = np.asarray(self.b, dtype=float)
        if a.ndim != 2 or b.ndim != 2:
            raise ValueError("payoff matrices must be 2-d")
        if a.shape[0] < 2 or a.shape[1] < 2:
            raise ValueError("need at least 2 strategies per population")
        if b.shape != (a.shape[1], a.shape[0]):
            raise ValueError(
                f"shape mismatch: a is {a.shape}, so b must be {(a.shape[1], a.shape[0])}"
            )
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise ValueError("payoff matrix entries must be finite")
        lx = self.labels_x or tuple(f"x{i + 1}" for i in range(a.shape[0]))
        ly = self.labels_y or tuple(f"y{i + 1}" for i in range(a.shape[1]))
        if len(lx) != a.shape[0] or len(ly) != a.shape[1]:
            raise ValueError("label counts do not match matrix shapes")
        object.__setattr__(self, "a", _readonly(a))
        object.__setattr__(self, "b", _readonly(b))
        object.__setattr__(self, "labels_x", tuple(map(str, lx)))
        object.__setattr__(self, "labels_y", tuple(map(str, ly)))

    @property
    def is_2x2(self) -> bool:
        return self.a.shape == (2, 2)

    @property
    def alpha(self) -> float:
        return alpha_beta(self)[0]

    @property
    def beta(self) -> float:
        return alpha_beta(self)[1]


@dataclass(frozen=True)
class TurnoverConfig:
    """Turnover rate and newcomer strategy for a single population.

    ``chi`` is the rescaled turnover rate p/(1-p); ``prior`` is the mixed
    strategy of newly arrived players.
    """

    chi: float
    prior: SimplexDistribution

    def __post_init__(self):
        chi = float(self.chi)
        if not np.isfinite(chi) or chi < 0.0:
            raise ValueError(f"chi must be finite and >= 0, got {chi}")
        if not isinstance(self.prior, SimplexDistribution):
            object.__setattr__(self, "prior", SimplexDistribution(np.asarray(self.prior)))
        object.__setattr__(self, "chi", chi)


@dataclass(frozen=True)
class BimatrixTurnoverConfig:
    """Per-population turnover rates and priors for a two-population game."""

    chi_x: float
    chi_y: float
    prior_x: SimplexDistribution
    prior_y: SimplexDistribution

    def __post_init__(self):
        for name in ("chi_x", "chi_y"):
            v = float(getattr(self, name))
            if not np.isfinite(v) or v < 0.0:
                raise ValueError(f"{name} must be finite and >= 0, got {v}")
            object.__setattr__(self, name, v)
        for name in ("prior_x", "prior_y"):
            p = getattr(self, name)
            if not isinstance(p, SimplexDistribution):
                object.__setattr__(self, name, SimplexDistribution(np.asarray(p)))

    @classmethod
    def from_scalars(cls, chi_x: float, x0: float, chi_y: float, y0: float):
        """Build a 2x2 config from first-strategy prior weights x0, y0."""
        return cls(
            chi_x=chi_x,
            chi_y=chi_y,
            prior_x=SimplexDistribution(np.array([x0, 1.0 - x0])),
            prior_y=SimplexDistribution(np.array([y0, 1.0 - y0])),
        )

    @property
    def x0(self) -> float:
        """First-strategy weight of population 1's prior."""
        return float(self.prior_x.weights[0])

    @property
    def y0(self) -> float:
        return float(self.prior_y.weights[0])


def payoffs(game: MatrixGame, x: SimplexDistribution) -> np.ndarray:
    """Frequency-dependent payoffs ``pi_i = sum_j A_ij x_j``."""
    if x.dim != game.n_strategies:
        raise ValueError(f"state has {x.dim} strategies, game has {game.n_strategies}")
    return game.payoff_matrix @ x.weights


def mean_payoff(pi: np.ndarray, x: SimplexDistribution) -> float:
    """Population average payoff ``sum_i x_i pi_i``."""
    pi = np.asarray(pi, dtype=float)
    if pi.shape != (x.dim,):
        raise ValueError(f"payoff vector shape {pi.shape} does not match state dim {x.dim}")
    return float(x.weights @ pi)


def effective_payoffs(
    pi: np.ndarray, x: SimplexDistribution, cfg: TurnoverConfig
) -> np.ndarray:
    """Payoffs plus the turnover correction ``chi * (x0_i / x_i - 1)``.

    The correction has zero population average, so the mean effective payoff
    equals the mean payoff. It diverges where any ``x_i`` vanishes: this map
    is only defined in the interior of the simplex.
    """
    pi = np.asarray(pi, dtype=float)
    if pi.shape != (x.dim,):
        raise ValueError(f"payoff vector shape {pi.shape} does not match state dim {x.dim}")
    if cfg.prior.dim != x.dim:
        raise ValueError("prior dimension does not match state")
    if np.any(x.weights == 0.0):
        raise SimplexBoundaryError(
            "effective payoffs diverge on the simplex boundary (some x_i == 0)"
        )
    return pi + cfg.chi * (cfg.prior.weights / x.weights - 1.0)


def bimatrix_payoffs(
    game: BimatrixGame, x: SimplexDistribution, y: SimplexDistribution
) -> tuple[np.ndarray, np.ndarray]:
    """Payoff vectors ``(A @ y, B @ x)`` for the two populations."""
    if x.dim != game.a.shape[0] or y.dim != game.a.shape[1]:
        raise ValueError(
            f"states of dim ({x.dim}, {y.dim}) do not match game of shape {game.a.shape}"
        )
    return game.a @ y.weights, game.b @ x.weights


def alpha_beta(game: BimatrixGame) -> tuple[float, float]:
    """Diagonal-minus-offdiagonal classifiers of a 2x2 bimatrix game.

    alpha = a11 + a22 - a21 - a12 and beta likewise for B. Both are
    invariant under adding a constant to any column of their matrix.
    """
    if not game.is_2x2:
        raise ValueError(f"alpha/beta are defined for 2x2 games only, got {game.a.shape}")
    a, b = game.a, game.b
    alpha = float(a[0, 0] + a[1, 1] - a[1, 0] - a[0, 1])
    beta = float(b[0, 0] + b[1, 1] - b[1, 0] - b[0, 1])
    return alpha, beta


def rock_paper_scissors() -> MatrixGame:
    """Cyclic three-strategy zero-sum game with unit win/loss payoffs."""
    return MatrixGame(
        np.array([[0.0, -1.0, 1.0], [1.0, 0.0, -1.0], [-1.0, 1.0, 0.0]]),
        strategy_labels=("rock", "paper", "scissors"),
    )


def matching_pennies(r: float = 2.0) -> BimatrixGame:
    """Zero-sum 2x2 game: population 1 wins r when actions match."""
    r = float(r)
    if not np.isfinite(r) or r <= 0:
        raise ValueError("reward r must be positive")
    return BimatrixGame(
        a=np.array([[r, -r], [-r, r]]),
        b=np.array([[-r, r], [r, -r]]),
        labels_x=("heads", "tails"),
        labels_y=("heads", "tails"),
    )


def coordination_game() -> BimatrixGame:
    """Symmetric 2x2 coordination game with payoffs [[6, 0], [3, 2]]."""
    m = np.array([[6.0, 0.0], [3.0, 2.0]])
    return BimatrixGame(a=m, b=m.copy())


def load_game(source):
    """Load a game from a JSON document (path, JSON string, or dict).

    Schema::

        {"type": "matrix",   "A": [[...]], "labels": [...]}
        {"type": "bimatrix", "A": [[...]], "B": [[...]],
         "labels_x": [...], "labels_y": [...]}
        {"type": "luba",     "n_players": N, "max_bid": M}

    Labels are optional. Non-finite entries are rejected.
    """
    if isinstance(source, dict):
        doc = source
    else:
        text = Path(source).read_text() if Path(str(source)).exists() else str(source)
        doc = json.loads(text)
    if not isinstance(doc, dict) or "type" not in doc:
        raise ValueError("game document must be an object with a 'type' field")
    kind = doc["type"]
    if kind == "matrix":
        if "A" not in doc:
            raise ValueError("matrix game document requires 'A'")
        return MatrixGame(np.asarray(doc["A"], dtype=float), doc.get("labels"))
    if kind == "bimatrix":
        if "A" not in doc or "B" not in doc:
            raise ValueError("bimatrix game document requires 'A' and 'B'")
        return BimatrixGame(
            a=np.asarray(doc["A"], dtype=float),
            b=np.asarray(doc["B"], dtype=float),
            labels_x=doc.get("labels_x"),
            labels_y=doc.get("labels_y"),
        )
    if kind == "luba":
        from .luba import LubaGame

        if "n_players" not in doc or "max_bid" not in doc:
            raise ValueError("luba game document requires 'n_players' and 'max_bid'")
        return LubaGame(n_players=int(doc["n_players"]), max_bid=int(doc["max_bid"]))
    raise ValueError(f"unknown game type {kind!r}")
