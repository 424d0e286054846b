"""Linear least squares and Bayesian linear regression (conjugate Gaussian).

Both models standardize features internally, then append a constant-1
column for the intercept. The Bayesian model places an isotropic Gaussian
prior on the weights, excluding the intercept coordinate, and can refine
the prior/noise precisions by fixed-point evidence maximization.
"""

from __future__ import annotations

import numpy as np

from ..domain import ModelKind
from ..errors import DegenerateInputError
from .base import BaseRegressor, check_fit_inputs
from .scaling import Standardizer

_TINY = 1e-300


def _design(Xs: np.ndarray) -> np.ndarray:
    """Append the constant-1 intercept column to standardized features."""
    return np.hstack([Xs, np.ones((Xs.shape[0], 1))])


class LinearRegressor(BaseRegressor):
    """Ordinary least squares with an optional ridge jitter.

    ``ridge`` is numerical stabilization, not regularization; the default
    1e-8 only guards against singular normal equations.
    """

    kind = ModelKind.LR

    def __init__(self, ridge: float = 1e-8, seed: int = 0):
        self.ridge = float(ridge)
        self.seed = int(seed)  # unused; accepted for interface uniformity
        self.n_features_ = None

    def fit(self, X, y):
        X, y = check_fit_inputs(X, y)
        self.standardizer_ = Standardizer().fit(X)
        Z = _design(self.standardizer_.transform(X))
        A = Z.T @ Z + self.ridge * np.eye(Z.shape[1])
        try:
            w = np.linalg.solve(A, Z.T @ y)
        except np.linalg.LinAlgError as exc:
            raise DegenerateInputError(f"singular normal equations: {exc}") from exc
        self.weights_ = w[:-1]
        self.intercept_ = float(w[-1])
        self.n_features_ = X.shape[1]
        return self

    def predict(self, X) -> np.ndarray:
        X = self._check_predict_input(X)
        Zs = self.standardizer_.transform(X)
        return Zs @ self.weights_ + self.intercept_

    def fitted_params(self) -> dict:
        return {"weights": self.weights_.tolist(), "intercept": self.intercept_}

    def load_fitted_params(self, params, standardizer):
        self.weights_ = np.asarray(params["weights"], dtype=float)
        self.intercept_ = float(params["intercept"])
        self.standardizer_ = standardizer
        self.n_features_ = self.weights_.shape[0]


class BayesianLinearRegressor(BaseRegressor):
    """Gaussian-posterior linear regression.

    With prior precision ``alpha`` on the non-intercept weights and noise
    precision ``beta``, the posterior mean solves

        (alpha * D + beta * Z'Z) m = beta * Z'y

    where Z is the standardized design matrix with intercept column and D
    is the identity with a zero in the intercept coordinate. When
    ``evidence_iters > 0``, alpha and beta are re-estimated by the usual
    fixed-point evidence updates before the final solve.
    """

    kind = ModelKind.BLR

    def __init__(
        self,
        alpha: float = 1e-2,
        beta: float = 1.0,
        evidence_iters: int = 30,
        seed: int = 0,
    ):
        self.alpha = float(alpha)
        self.beta = float(beta)
        self.evidence_iters = int(evidence_iters)
        self.seed = int(seed)  # unused; accepted for interface uniformity
        self.n_features_ = None

    @staticmethod
    def _posterior_mean(ZtZ, Zty, D, alpha, beta):
        A = alpha * D + beta * ZtZ
        return A, beta * np.linalg.solve(A, Zty)

    def fit(self, X, y):
        X, y = check_fit_inputs(X, y)
        self.standardizer_ = Standardizer().fit(X)
        Z = _design(self.standardizer_.transform(X))
        n, p = Z.shape
        d = p - 1  # penalized coordinates (intercept excluded)
        D = np.eye(p)
        D[-1, -1] = 0.0
        ZtZ = Z.T @ Z
        Zty = Z.T @ y

        alpha, beta = self.alpha, self.beta
        A, m = self._posterior_mean(ZtZ, Zty, D, alpha, beta)
        for _ in range(self.evidence_iters):
            A_inv = np.linalg.inv(A)
            tr_pen = float(np.diag(A_inv)[:d].sum())
            gamma_pen = d - alpha * tr_pen  # effective dof among penalized weights
            m_pen_sq = float(m[:d] @ m[:d])
            sse = float(np.sum((y - Z @ m) ** 2))
            alpha_new = np.clip(max(gamma_pen, _TINY) / max(m_pen_sq, _TINY), 1e-12, 1e12)
            # intercept always contributes one effective dof
            beta_new = np.clip(max(n - (gamma_pen + 1.0), _TINY) / max(sse, _TINY), 1e-12, 1e12)
            converged = (
                abs(alpha_new - alpha) <= 1e-10 * max(alpha, 1.0)
                and abs(beta_new - beta) <= 1e-10 * max(beta, 1.0)
            )
            alpha, beta = float(alpha_new), float(beta_new)
            A, m = self._posterior_mean(ZtZ, Zty, D, alpha, beta)
            if converged:
                break

        self.alpha_ = alpha
        self.beta_ = beta
        self.weights_ = m[:-1]
        self.intercept_ = float(m[-1])
        self.n_features_ = X.shape[1]
        return self

    def predict(self, X) -> np.ndarray:
        X = self._check_predict_input(X)
        Zs = self.standardizer_.transform(X)
        return Zs @ self.weights_ + self.intercept_

    def fitted_params(self) -> dict:
        return {
            "weights": self.weights_.tolist(),
            "intercept": self.intercept_,
            "alpha_posterior": self.alpha_,
            "beta_posterior": self.beta_,
        }

    def load_fitted_params(self, params, standardizer):
        self.weights_ = np.asarray(params["weights"], dtype=float)
        self.intercept_ = float(params["intercept"])
        self.alpha_ = float(params["alpha_posterior"])
        self.beta_ = float(params["beta_posterior"])
        self.standardizer_ = standardizer
        self.n_features_ = self.weights_.shape[0]
