"""Minimal sparse numerical kernel: CSR storage, matvec, and iterative solvers.

The solvers are the two routes prescribed for the hitting-time systems:
conjugate gradient for the symmetric positive-definite case and BiCGSTAB
for the general nonsymmetric case. Both report iterations and the final
true relative residual. Matrix-vector products are dispatched to the
active backend (compiled or pure NumPy).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import DimensionMismatch, NotConverged


class SparseMatrix:
    """Square compressed sparse-row matrix.

    Column indices (int32, strictly increasing within each row) keep the
    matvec memory stream lean; row offsets are int64 and values float64.
    Explicit zeros are never stored.
    """

    __slots__ = ("n", "indptr", "indices", "data")

    def __init__(self, n, indptr, indices, data):
        self.n = int(n)
        if self.n >= 2 ** 31:
            raise DimensionMismatch(f"dimension {n} exceeds 32-bit column indexing")
        self.indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        self.indices = np.ascontiguousarray(indices, dtype=np.int32)
        self.data = np.ascontiguousarray(data, dtype=np.float64)

    @property
    def nnz(self) -> int:
        return self.indices.size

    @classmethod
    def from_coo(cls, n, rows, cols, vals):
        """Build from triplets, summing duplicates and dropping exact zeros."""
        n = int(n)
        rows = np.asarray(rows, dtype=np.int64)
        cols = np.asarray(cols, dtype=np.int64)
        vals = np.asarray(vals, dtype=np.float64)
        if rows.size:
            if rows.min() < 0 or rows.max() >= n or cols.min() < 0 or cols.max() >= n:
                raise DimensionMismatch("triplet index outside matrix dimension")
            key = rows * n + cols
            uniq, inv = np.unique(key, return_inverse=True)
            merged = np.bincount(inv, weights=vals, minlength=uniq.size)
            keep = merged != 0.0
            uniq, merged = uniq[keep], merged[keep]
            rows, cols = uniq // n, uniq % n
        else:
            merged = vals
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(rows, minlength=n), out=indptr[1:])
        return cls(n, indptr, cols, merged)

    @classmethod
    def identity(cls, n):
        idx = np.arange(n, dtype=np.int64)
        return cls(n, np.arange(n + 1, dtype=np.int64), idx, np.ones(n))

    def row(self, i):
        """(column indices, values) views of row ``i``."""
        a, b = self.indptr[i], self.indptr[i + 1]
        return self.indices[a:b], self.data[a:b]

    def get(self, i, j) -> float:
        a, b = self.indptr[i], self.indptr[i + 1]
        p = np.searchsorted(self.indices[a:b], j)
        if p < b - a and self.indices[a + p] == j:
            return float(self.data[a + p])
        return 0.0

    def matvec(self, v, out=None):
        v = np.ascontiguousarray(v, dtype=np.float64)
        if v.shape != (self.n,):
            raise DimensionMismatch(f"vector of length {v.shape} against dimension {self.n}")
        if out is None:
            out = np.empty(self.n)
        _backend.get_ops().csr_matvec(self.indptr, self.indices, self.data, v, out)
        return out

    def row_sums(self):
        return self.matvec(np.ones(self.n))

    def diagonal(self):
        d = np.zeros(self.n)
        row_of = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.indptr))
        on_diag = self.indices == row_of
        d[row_of[on_diag]] = self.data[on_diag]
        return d

    def transpose(self) -> "SparseMatrix":
        row_of = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.indptr))
        order = np.lexsort((row_of, self.indices))
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(np.bincount(self.indices, minlength=self.n), out=indptr[1:])
        return SparseMatrix(self.n, indptr, row_of[order], self.data[order])

    def to_dense(self):
        a = np.zeros((self.n, self.n))
        row_of = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.indptr))
        a[row_of, self.indices] = self.data
        return a

    def triplets(self):
        """(row, column, value) arrays in row-major order."""
        row_of = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.indptr))
        return row_of, self.indices.copy(), self.data.copy()

    def validate(self) -> None:
        """Raise ValueError if the CSR invariants are violated."""
        if self.indptr.shape != (self.n + 1,) or self.indptr[0] != 0:
            raise ValueError("malformed row offsets")
        if np.any(np.diff(self.indptr) < 0) or self.indptr[-1] != self.indices.size:
            raise ValueError("row offsets must be non-decreasing and end at nnz")
        if self.indices.size != self.data.size:
            raise ValueError("indices and data lengths differ")
        if self.indices.size:
            if self.indices.min() < 0 or self.indices.max() >= self.n:
                raise ValueError("column index out of range")
            row_of = np.repeat(np.arange(self.n), np.diff(self.indptr))
            order_key = row_of * (self.n + 1) + self.indices
            if np.any(np.diff(order_key) <= 0):
                raise ValueError("columns must be strictly increasing within each row")
        if np.any(self.data == 0.0):
            raise ValueError("explicit zeros are not allowed")


def matvec(m: SparseMatrix, v, out=None):
    """CSR matrix-vector product (module-level alias of the method)."""
    return m.matvec(v, out=out)


@dataclass(frozen=True)
class SolveReport:
    iterations: int
    relative_residual: float
    converged: bool
    method: str


def _jacobi_inverse(a):
    d = a.diagonal()
    return np.where(d != 0.0, 1.0 / np.where(d != 0.0, d, 1.0), 1.0)


def solve_spd(a, b, tol: float = 1e-10, max_iter: int | None = None, jacobi: bool = False):
    """Conjugate gradient for a symmetric positive-definite system.

    Converged means the true relative residual ||b - a x|| / ||b|| is at
    most ``tol``. Raises :class:`NotConverged` (carrying the report and the
    best solution) otherwise.
    """
    n = a.n
    b = np.ascontiguousarray(b, dtype=np.float64)
    if b.shape != (n,):
        raise DimensionMismatch(f"rhs of length {b.shape} against dimension {n}")
    if max_iter is None:
        max_iter = max(1000, 2 * n)
    bnorm = np.linalg.norm(b)
    if bnorm == 0.0:
        return np.zeros(n), SolveReport(0, 0.0, True, "cg")
    minv = _jacobi_inverse(a) if jacobi else None

    # preallocated workspaces; all updates are in place so large systems do
    # not churn through fresh page-faulting temporaries every iteration
    x = np.zeros(n)
    r = b.copy()
    z = np.empty(n) if minv is not None else r
    if minv is not None:
        np.multiply(minv, r, out=z)
    p = z.copy()
    ap = np.empty(n)
    work = np.empty(n)
    rz = float(r @ z)
    it = 0
    converged = False
    while it < max_iter:
        it += 1
        a.matvec(p, out=ap)
        pap = float(p @ ap)
        if not np.isfinite(pap) or pap <= 0.0:
            break
        alpha = rz / pap
        np.multiply(p, alpha, out=work)
        x += work
        np.multiply(ap, alpha, out=work)
        r -= work
        if np.linalg.norm(r) <= tol * bnorm:
            a.matvec(x, out=work)
            np.subtract(b, work, out=r)
            if np.linalg.norm(r) <= tol * bnorm:
                converged = True
                break
            # recursion drifted from the true residual: restart the direction
            if minv is not None:
                np.multiply(minv, r, out=z)
            p[:] = z
            rz = float(r @ z)
            continue
        if minv is not None:
            np.multiply(minv, r, out=z)
        rz_new = float(r @ z)
        np.multiply(p, rz_new / rz, out=p)
        p += z
        rz = rz_new

    final = np.linalg.norm(b - a.matvec(x)) / bnorm
    if not np.isfinite(final):
        final = np.inf
    report = SolveReport(it, float(final), bool(converged and final <= tol), "cg")
    if not report.converged:
        raise NotConverged(report, x)
    return x, report


def solve_general(a, b, tol: float = 1e-10, max_iter: int | None = None, jacobi: bool = False):
    """BiCGSTAB for a general nonsingular system.

    Same convergence contract as :func:`solve_spd`. Breakdowns (zero or
    non-finite inner products) terminate with :class:`NotConverged`.
    """
    n = a.n
    b = np.ascontiguousarray(b, dtype=np.float64)
    if b.shape != (n,):
        raise DimensionMismatch(f"rhs of length {b.shape} against dimension {n}")
    if max_iter is None:
        max_iter = max(1000, 2 * n)
    bnorm = np.linalg.norm(b)
    if bnorm == 0.0:
        return np.zeros(n), SolveReport(0, 0.0, True, "bicgstab")
    minv = _jacobi_inverse(a) if jacobi else None

    def apply_a(src, dst):
        a.matvec(src, out=dst)
        if minv is not None:
            dst *= minv
        return dst

    bp = minv * b if minv is not None else b
    bpnorm = np.linalg.norm(bp)
    # preallocated workspaces; the loop below updates them in place
    x = np.zeros(n)
    r = bp.copy()
    r0 = r.copy()
    v = np.empty(n)
    p = np.empty(n)
    s = np.empty(n)
    t = np.empty(n)
    work = np.empty(n)
    rho = 1.0
    alpha = 1.0
    omega = 1.0
    it = 0
    fresh = True
    converged = False
    last_true = np.inf

    def true_residual(xc):
        return float(np.linalg.norm(b - a.matvec(xc)) / bnorm)

    def verify(xc):
        # the recursion tracks the preconditioned residual; confirm against
        # the unpreconditioned system and restart on verification failure
        nonlocal converged, fresh, last_true
        rel = true_residual(xc)
        if rel <= tol:
            converged = True
            return True
        if rel >= 0.5 * last_true:
            return True  # stalled at the attainable accuracy: stop
        last_true = rel
        apply_a(xc, work)
        np.subtract(bp, work, out=r)
        r0[:] = r
        fresh = True
        return False

    with np.errstate(over="ignore", invalid="ignore"):
        while it < max_iter:
            it += 1
            rho_new = float(r0 @ r)
            if rho_new == 0.0 or not np.isfinite(rho_new):
                break
            if fresh:
                p[:] = r
                fresh = False
            else:
                beta = (rho_new / rho) * (alpha / omega)
                np.multiply(v, omega, out=work)
                p -= work
                p *= beta
                p += r
            rho = rho_new
            apply_a(p, v)
            r0v = float(r0 @ v)
            if r0v == 0.0 or not np.isfinite(r0v):
                break
            alpha = rho / r0v
            if not np.isfinite(alpha):
                break
            np.multiply(v, alpha, out=work)
            np.subtract(r, work, out=s)
            if np.linalg.norm(s) <= tol * bpnorm:
                np.multiply(p, alpha, out=work)
                x += work
                if verify(x):
                    break
                continue
            apply_a(s, t)
            tt = float(t @ t)
            if tt == 0.0 or not np.isfinite(tt):
                break
            omega = float(t @ s) / tt
            if not np.isfinite(omega):
                break
            np.multiply(p, alpha, out=work)
            x += work
            np.multiply(s, omega, out=work)
            x += work
            np.multiply(t, omega, out=work)
            np.subtract(s, work, out=r)
            if np.linalg.norm(r) <= tol * bpnorm and verify(x):
                break
            if omega == 0.0:
                break

    final = np.linalg.norm(b - a.matvec(x)) / bnorm
    if not np.isfinite(final):
        final = np.inf
    report = SolveReport(it, float(final), bool(converged and final <= tol), "bicgstab")
    if not report.converged:
        raise NotConverged(report, x)
    return x, report


def spectral_radius_estimate(m, iters: int = 100, seed: int = 0) -> float:
    """Dominant-eigenvalue magnitude via max-norm power iteration.

    Returns the geometric mean of the per-step growth ratios, which for a
    non-negative matrix converges to the spectral radius from a random
    positive start vector and never exceeds 1 on substochastic input.
    Deterministic for a fixed seed.
    """
    n = m.n
    if n == 0:
        return 0.0
    rng = np.random.default_rng(seed)
    x = 0.5 + rng.random(n)
    x /= np.max(x)
    log_acc = 0.0
    for _ in range(max(1, iters)):
        y = m.matvec(x)
        top = np.max(np.abs(y))
        if top == 0.0:
            return 0.0
        log_acc += np.log(top)
        x = y / top
    return float(np.exp(log_acc / max(1, iters)))
