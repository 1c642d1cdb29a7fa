"""
Regression Fitting Module

Logistic regression by iteratively reweighted least squares and linear least squares via QR.
"""

import logging

import numpy as np
from scipy import linalg
from scipy.special import expit

from ..constants import IRLS_DIVERGED_ERROR, IRLS_MAX_HALVINGS, IRLS_MAX_ITER, IRLS_TOL, SINGULAR_DESIGN_ERROR
from ..exceptions import IrlsDivergedError, SingularDesignError


logger = logging.getLogger(__name__)


def add_intercept(x: np.ndarray) -> np.ndarray:
    """Prepend a column of ones."""
    return np.column_stack([np.ones(x.shape[0]), x])


def logistic_log_likelihood(design: np.ndarray, target: np.ndarray, beta: np.ndarray) -> float:
    """Bernoulli log-likelihood of a logistic model, sum of y eta - log(1 + exp(eta))."""
    eta = design @ beta
    return float(np.sum(target * eta - np.logaddexp(0.0, eta)))


def fit_logistic_irls(
    design: np.ndarray,
    target: np.ndarray,
    max_iter: int = IRLS_MAX_ITER,
    tol: float = IRLS_TOL,
    max_halvings: int = IRLS_MAX_HALVINGS,
) -> np.ndarray:
    """
    Fit a logistic regression by Newton-Raphson (IRLS) with step-halving.

    A Newton step that lowers the log-likelihood is halved until it no longer does,
    at most max_halvings times.

    Args:
        design: (n, k) design matrix including the intercept column
        target: Binary response
        max_iter: Iteration budget
        tol: Convergence threshold on the sup-norm of the full Newton step
        max_halvings: Halvings allowed per iteration

    Returns:
        Coefficient vector of length k

    Raises:
        IrlsDivergedError: If the Newton step does not fall below tol within max_iter
            iterations, or no halved step raises the log-likelihood
    """
    beta = np.zeros(design.shape[1])
    loglik = logistic_log_likelihood(design, target, beta)
    for iteration in range(1, max_iter + 1):
        prob = expit(design @ beta)
        weight = prob * (1.0 - prob)
        hessian = design.T @ (design * weight[:, None])
        gradient = design.T @ (target - prob)
        try:
            step = linalg.solve(hessian, gradient, assume_a="pos")
        except (linalg.LinAlgError, ValueError) as e:
            # Separation drives the weights to zero
            raise IrlsDivergedError(IRLS_DIVERGED_ERROR.format(max_iter=max_iter)) from e
        if not np.all(np.isfinite(step)):
            raise IrlsDivergedError(IRLS_DIVERGED_ERROR.format(max_iter=max_iter))
        if np.max(np.abs(step)) < tol:
            logger.debug("IRLS converged after %d iterations", iteration)
            return beta + step

        # Rounding noise near the optimum must not count as a decrease
        floor = loglik - 1e-12 * max(1.0, abs(loglik))
        for halving in range(max_halvings + 1):
            candidate = beta + step
            candidate_loglik = logistic_log_likelihood(design, target, candidate)
            if candidate_loglik >= floor:
                break
            step = step / 2.0
        else:
            raise IrlsDivergedError(IRLS_DIVERGED_ERROR.format(max_iter=max_iter))
        if halving:
            logger.debug("IRLS step halved %d times at iteration %d", halving, iteration)
        beta, loglik = candidate, candidate_loglik
    raise IrlsDivergedError(IRLS_DIVERGED_ERROR.format(max_iter=max_iter))


def fit_least_squares(design: np.ndarray, target: np.ndarray, model: str = "outcome regression") -> np.ndarray:
    """
    Solve min ||design @ beta - target|| through an economic QR decomposition.

    Args:
        design: (n, k) design matrix
        target: Response vector of length n
        model: Model name used in the error message

    Returns:
        Coefficient vector of length k

    Raises:
        SingularDesignError: If the design is rank deficient
    """
    n, k = design.shape
    if n < k:
        raise SingularDesignError(SINGULAR_DESIGN_ERROR.format(model=model))
    q, r = linalg.qr(design, mode="economic")
    diag = np.abs(np.diag(r))
    threshold = max(n, k) * np.finfo(np.float64).eps * (diag.max() if diag.size else 0.0)
    if diag.size == 0 or np.any(diag <= threshold):
        raise SingularDesignError(SINGULAR_DESIGN_ERROR.format(model=model))
    return linalg.solve_triangular(r, q.T @ target)
