"""WRKLS: recursive kernel ridge regression with a null pseudo-kernel and an optional basis budget.

Every sample joins the dictionary through a rank-1 update of
Q = (K_DD + λI)^-1. When the dictionary exceeds the budget M, the basis with
the smallest least-impact score |α_i|^2 / [Q]_ii is removed through the
block-inverse downdate.
"""
import copy
import logging
from typing import Optional, Tuple

import numpy as np
from numpy.typing import ArrayLike

from core.config import config as cfg
from services.algebra.solver import hermitian_inverse
from services.errors.validation import DimensionMismatchError, InputError, KernelSpecError
from services.kernels.models import KernelSpec

INITIAL_CAPACITY = 64
GROWTH = 1.5


class OnlineModel:
    """Dictionary, coefficients and maintained inverse of the regularized Gram matrix.

    Owned by a single updater; use `snapshot()` to hand a frozen copy to
    concurrent readers. `max_samples`, when the stream length is known, caps
    the preallocated buffers of an unbudgeted model.
    """

    def __init__(
        self,
        spec: KernelSpec,
        ridge: float,
        budget: Optional[int] = None,
        max_samples: Optional[int] = None,
    ):
        if not spec.has_null_pseudo_kernel:
            raise KernelSpecError(f"WRKLS needs a null pseudo-kernel, {spec.family} has one")
        if not np.isfinite(ridge) or ridge <= 0:
            raise InputError(f"WRKLS ridge must be positive, got {ridge}")
        if budget is not None and budget < 1:
            raise InputError(f"budget must be >= 1 or None (unbounded), got {budget}")
        if max_samples is not None and max_samples < 1:
            raise InputError(f"max_samples must be >= 1 or None, got {max_samples}")
        self.spec = spec
        self.ridge = float(ridge)
        self.budget = budget
        self.max_samples = max_samples
        self.check_every = int(cfg.get("online.check_every", 250))
        self.residual_tol = float(cfg.get("online.residual_tol", 1e-6))
        self.logger = logging.getLogger(__name__)

        self._real = spec.is_real_valued
        self._size = 0
        self._dim: Optional[int] = None
        self._capacity = 0
        self._dictionary = np.zeros((0, 0), dtype=np.complex128)
        self._targets = np.zeros(0, dtype=np.complex128)
        self._alpha = np.zeros(0, dtype=np.complex128)
        self._Q = np.zeros((0, 0), dtype=np.float64 if self._real else np.complex128)
        self.updates = 0
        self.rebuilds = 0

    # --- views --------------------------------------------------------------

    @property
    def size(self) -> int:
        return self._size

    @property
    def capacity(self) -> int:
        return self._capacity

    @property
    def dictionary(self) -> np.ndarray:
        return self._dictionary[: self._size].copy()

    @property
    def targets(self) -> np.ndarray:
        return self._targets[: self._size].copy()

    @property
    def alpha(self) -> np.ndarray:
        return self._alpha[: self._size].copy()

    @property
    def Q(self) -> np.ndarray:
        return self._Q[: self._size, : self._size].copy()

    def snapshot(self) -> "OnlineModel":
        return copy.deepcopy(self)

    # --- kernel helpers -----------------------------------------------------

    def _row(self, x: np.ndarray) -> np.ndarray:
        """k(x, d_i) for every basis, in the dtype of Q"""
        if self._size == 0:
            return np.zeros(0, dtype=self._Q.dtype)
        row = self.spec.kernel_matrix(x[None, :], self._dictionary[: self._size])[0]
        return row.real if self._real else row

    def _gram(self, X: np.ndarray, Z: np.ndarray) -> np.ndarray:
        K = self.spec.kernel_matrix(X, Z)
        return K.real if self._real else K

    def _as_input(self, x: ArrayLike) -> np.ndarray:
        x = np.atleast_1d(np.asarray(x, dtype=np.complex128))
        if x.ndim != 1:
            raise DimensionMismatchError(f"expected one input vector, got shape {x.shape}")
        if self._dim is not None and x.size != self._dim:
            raise DimensionMismatchError(f"model inputs have d={self._dim}, got d={x.size}")
        return x

    def _next_capacity(self) -> int:
        capacity = max(INITIAL_CAPACITY, int(np.ceil(GROWTH * self._capacity)))
        # a budgeted dictionary holds at most M + 1 bases between insert and prune
        limit = self.budget + 1 if self.budget is not None else self.max_samples
        if limit is not None:
            capacity = min(capacity, max(limit, self._size + 1))
        return capacity

    def _ensure_capacity(self, dim: int):
        if self._dim is None:
            self._dim = dim
            self._dictionary = np.zeros((0, dim), dtype=np.complex128)
        if self._size < self._capacity:
            return
        capacity = self._next_capacity()
        dictionary = np.zeros((capacity, self._dim), dtype=np.complex128)
        targets = np.zeros(capacity, dtype=np.complex128)
        alpha = np.zeros(capacity, dtype=np.complex128)
        Q = np.zeros((capacity, capacity), dtype=self._Q.dtype)
        n = self._size
        if n:
            dictionary[:n] = self._dictionary[:n]
            targets[:n] = self._targets[:n]
            alpha[:n] = self._alpha[:n]
            Q[:n, :n] = self._Q[:n, :n]
        self._dictionary, self._targets, self._alpha, self._Q = dictionary, targets, alpha, Q
        self._capacity = capacity

    # --- operations ---------------------------------------------------------

    def predict(self, x: ArrayLike) -> complex:
        """Σ α_i k(x, d_i) over the current dictionary (0 when empty)"""
        x = self._as_input(x)
        if self._size == 0:
            return 0j
        return complex(self._row(x) @ self._alpha[: self._size])

    def observe(self, x: ArrayLike, y: complex) -> Tuple[complex, "OnlineModel"]:
        """Predict y from x with the current state, then learn (x, y)"""
        x = self._as_input(x)
        y = complex(y)
        n = self._size
        row = self._row(x)
        prediction = complex(row @ self._alpha[:n]) if n else 0j

        self._ensure_capacity(x.size)
        c = float(self.spec.kernel_matrix(x[None, :], x[None, :])[0, 0].real) + self.ridge
        Q = self._Q[:n, :n]
        b = np.conj(row)
        g = Q @ b
        s = c - float(np.real(np.vdot(b, g)))
        error = y - prediction

        self._dictionary[n] = x
        self._targets[n] = y
        self._size = n + 1
        self.updates += 1

        if s < 0.5 * self.ridge:
            # the Schur complement is bounded below by λ in exact arithmetic
            self.logger.warning(f"WRKLS update {self.updates}: Schur complement {s:.3e} below ridge; re-factorizing")
            self.rebuild()
        else:
            self._alpha[:n] -= g * (error / s)
            self._alpha[n] = error / s
            Q += np.outer(g, np.conj(g)) / s
            self._Q[n, :n] = -np.conj(g) / s
            self._Q[:n, n] = -g / s
            self._Q[n, n] = 1.0 / s

        if self.budget is not None and self._size > self.budget:
            self.prune(int(np.argmin(self.scores())))

        if self.check_every and self.updates % self.check_every == 0:
            residual = self.inverse_residual(sampled=4)
            if residual > self.residual_tol:
                self.logger.warning(f"WRKLS inverse residual {residual:.3e} after {self.updates} updates; re-factorizing")
                self.rebuild()
        return prediction, self

    def scores(self) -> np.ndarray:
        """Least-impact pruning score |α_i|^2 / [Q]_ii per basis"""
        n = self._size
        diagonal = np.real(np.diagonal(self._Q[:n, :n]))
        return np.abs(self._alpha[:n]) ** 2 / diagonal

    def prune(self, index: int):
        """Remove one basis with the block-inverse downdate"""
        n = self._size
        if not 0 <= index < n:
            raise InputError(f"basis index {index} out of range for dictionary of size {n}")
        keep = np.delete(np.arange(n), index)
        Q = self._Q[:n, :n]
        column = Q[keep, index]
        pivot = float(np.real(Q[index, index]))
        reduced_Q = Q[np.ix_(keep, keep)] - np.outer(column, np.conj(column)) / pivot
        reduced_alpha = self._alpha[keep] - column * (self._alpha[index] / pivot)

        self._Q[: n - 1, : n - 1] = reduced_Q
        self._alpha[: n - 1] = reduced_alpha
        self._dictionary[: n - 1] = self._dictionary[keep]
        self._targets[: n - 1] = self._targets[keep]
        self._size = n - 1

    def rebuild(self):
        """Recompute Q and α from the stored dictionary and targets"""
        n = self._size
        D = self._dictionary[:n]
        A = self._gram(D, D) + self.ridge * np.eye(n)
        Q = hermitian_inverse(A)
        self._Q[:n, :n] = Q
        self._alpha[:n] = Q @ self._targets[:n]
        self.rebuilds += 1

    def inverse_residual(self, sampled: Optional[int] = None) -> float:
        """max |Q (K_DD + λI) - I| over all columns, or over `sampled` evenly spaced ones"""
        n = self._size
        if n == 0:
            return 0.0
        columns = np.arange(n) if sampled is None else np.unique(np.linspace(0, n - 1, min(sampled, n)).astype(int))
        D = self._dictionary[:n]
        A_cols = self._gram(D, D[columns])
        A_cols[columns, np.arange(columns.size)] += self.ridge
        product = self._Q[:n, :n] @ A_cols
        product[columns, np.arange(columns.size)] -= 1.0
        return float(np.max(np.abs(product)))


def wrkls_init(
    spec: KernelSpec, ridge: float, budget: Optional[int] = None, max_samples: Optional[int] = None
) -> OnlineModel:
    return OnlineModel(spec, ridge, budget, max_samples)


def wrkls_observe(model: OnlineModel, x: ArrayLike, y: complex) -> Tuple[complex, OnlineModel]:
    return model.observe(x, y)


def wrkls_predict(model: OnlineModel, x: ArrayLike) -> complex:
    return model.predict(x)
