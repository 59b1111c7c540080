"""Maximize supermodular set functions given only an evaluation oracle.

Small ground sets are enumerated exhaustively. Larger ones go through
submodular minimization of the negated function with the Fujishige-Wolfe
minimum-norm-point algorithm over the base polytope. The Wolfe iterations
run in floating point, but every candidate set is re-scored through the
exact integer oracle, so the returned value never depends on rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .graph import bits

EXHAUSTIVE_CAP = 20
CHECK_CAP = 12


@dataclass
class SetFunctionOracle:
    """Integer-valued set function over an ordered ground set.

    Subsets are bitmasks over ground indices; ``ground`` carries the opaque
    element ids for reporting.
    """

    ground: list
    eval_mask: Callable[[int], int]

    def __call__(self, mask: int) -> int:
        return self.eval_mask(mask)

    def __len__(self) -> int:
        return len(self.ground)

    def elements(self, mask: int) -> list:
        return [self.ground[i] for i in bits(mask)]


@dataclass
class MaximizerResult:
    argmax: int
    value: int
    evaluations: int
    method: str


class MnpConvergenceError(RuntimeError):
    pass


class _Memo:
    """Memoizing call counter around an oracle; counts distinct evaluations."""

    def __init__(self, fn: Callable[[int], int]):
        self.fn = fn
        self.cache: dict[int, int] = {}

    def __call__(self, mask: int) -> int:
        hit = self.cache.get(mask)
        if hit is None:
            hit = self.cache[mask] = self.fn(mask)
        return hit

    @property
    def evaluations(self) -> int:
        return len(self.cache)


def _exhaustive_argmax(fn: Callable[[int], int], size: int) -> tuple[int, int]:
    """Scan all subsets in ascending mask order; ties keep the lowest mask."""
    best_mask = 0
    best = fn(0)
    for m in range(1, 1 << size):
        v = fn(m)
        if v > best:
            best, best_mask = v, m
    return best_mask, best


def maximize_supermodular(f: SetFunctionOracle, exhaustive_cap: int = EXHAUSTIVE_CAP,
                          tol: float = 1e-9) -> MaximizerResult:
    """Exact maximizer for a supermodular ``f`` (caller's promise).

    The result is well-formed for any f, but the optimality guarantee of the
    min-norm-point route needs supermodularity.
    """
    size = len(f)
    memo = _Memo(f.eval_mask)
    if size <= exhaustive_cap:
        mask, value = _exhaustive_argmax(memo, size)
        return MaximizerResult(argmax=mask, value=value, evaluations=memo.evaluations,
                               method="exhaustive")
    neg = SetFunctionOracle(ground=f.ground, eval_mask=lambda m: -memo(m))
    mask = minimize_submodular_mnp(neg, tol=tol)
    return MaximizerResult(argmax=mask, value=memo(mask), evaluations=memo.evaluations,
                           method="min_norm_point")


def _greedy_base_vertex(hn: Callable[[int], int], w: np.ndarray) -> np.ndarray:
    """Base-polytope vertex minimizing <x, w>: marginal gains along the
    ascending order of w (stable, so ties resolve by index)."""
    order = np.argsort(w, kind="stable")
    x = np.empty(len(w))
    mask = 0
    prev = 0
    for idx in order:
        mask |= 1 << int(idx)
        cur = hn(mask)
        x[int(idx)] = cur - prev
        prev = cur
    return x


def _affine_minimizer(s_rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Point of minimum norm in the affine hull of the rows, with its
    barycentric coefficients."""
    m = s_rows.shape[0]
    gram = s_rows @ s_rows.T
    a = np.zeros((m + 1, m + 1))
    a[0, 1:] = 1.0
    a[1:, 0] = 1.0
    a[1:, 1:] = gram
    rhs = np.zeros(m + 1)
    rhs[0] = 1.0
    try:
        sol = np.linalg.solve(a, rhs)
    except np.linalg.LinAlgError:
        sol, *_ = np.linalg.lstsq(a, rhs, rcond=None)
    coeffs = sol[1:]
    return coeffs, coeffs @ s_rows


def minimize_submodular_mnp(h: SetFunctionOracle, tol: float = 1e-9,
                            max_iter: int | None = None,
                            fallback_cap: int = EXHAUSTIVE_CAP) -> int:
    """Minimizer (as a mask) of an integer-valued submodular function.

    Runs Wolfe's minimum-norm-point iteration over the base polytope of the
    normalized function, extracts the strictly-negative coordinate set of
    the final point, then sweeps every level set of that point through the
    exact oracle and keeps the best. Falls back to exhaustive search (ground
    <= ``fallback_cap``) if the iteration cap is hit.
    """
    size = len(h)
    if size == 0:
        return 0
    if not 0 < tol < 0.5 / size:
        raise ValueError(f"tol must lie in (0, 0.5/{size}) for exact extraction")
    memo = _Memo(h.eval_mask)
    h0 = memo(0)

    def hn(mask: int) -> int:
        return memo(mask) - h0

    if max_iter is None:
        max_iter = 200 + 40 * size

    x = _greedy_base_vertex(hn, np.zeros(size))
    s_rows = x.reshape(1, -1)
    lam = np.array([1.0])
    converged = False
    for _ in range(max_iter):
        q = _greedy_base_vertex(hn, x)
        scale = max(1.0, float(np.max(np.abs(s_rows)) ** 2), float(q @ q))
        if float(x @ q) >= float(x @ x) - tol * scale:
            converged = True
            break
        if np.any(np.all(np.abs(s_rows - q) < tol * scale, axis=1)):
            converged = True
            break
        s_rows = np.vstack([s_rows, q])
        lam = np.append(lam, 0.0)
        while True:
            coeffs, y = _affine_minimizer(s_rows)
            if np.all(coeffs > tol):
                x, lam = y, coeffs
                break
            shrink = lam - coeffs
            idx = shrink > tol
            theta = float(np.min(lam[idx] / shrink[idx]))
            theta = min(max(theta, 0.0), 1.0)
            lam = theta * coeffs + (1 - theta) * lam
            keep = lam > tol
            if not np.any(keep):
                keep[int(np.argmax(lam))] = True
            s_rows = s_rows[keep]
            lam = lam[keep]
            lam = lam / lam.sum()
            x = lam @ s_rows
    if not converged:
        if size <= fallback_cap:
            mask, _ = _exhaustive_argmax(lambda m: -memo(m), size)
            return mask
        raise MnpConvergenceError(f"no convergence within {max_iter} iterations "
                                  f"and ground set {size} exceeds the fallback cap")

    best_mask = 0
    best = 0                              # hn(empty set)
    candidates = [sum(1 << i for i in range(size) if x[i] < -tol)]
    prefix = 0
    for idx in np.argsort(x, kind="stable"):
        prefix |= 1 << int(idx)
        candidates.append(prefix)
    for mask in candidates:
        v = hn(mask)
        if v < best:
            best, best_mask = v, mask
    return best_mask


def check_supermodular(f: SetFunctionOracle, cap: int = CHECK_CAP) -> tuple[bool, tuple[int, int] | None]:
    """Exhaustive pairwise test of the supermodular inequality.

    Returns (True, None) or (False, (x, y)) with the first violating pair of
    masks. Refuses ground sets above ``cap`` rather than sampling silently.
    """
    size = len(f)
    if size > cap:
        raise ValueError(f"refused: ground set {size} exceeds cap {cap}")
    vals = [f.eval_mask(m) for m in range(1 << size)]
    for x in range(1 << size):
        vx = vals[x]
        for y in range(1 << size):
            if vals[x | y] + vals[x & y] < vx + vals[y]:
                return False, (x, y)
    return True, None
