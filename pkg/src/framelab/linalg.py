"""Small dense linear-algebra kernels.

Everything here works on numpy arrays of dtype float64 or complex128 and
is meant for the modest sizes frame computations need (d up to a few
hundred).  Inner products are linear in the first argument and
conjugate-linear in the second.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from .errors import ConvergenceError

EPS = np.finfo(np.float64).eps

JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100


def inner(x, y):
    """Return ``<x, y> = sum_k x_k conj(y_k)``.

    ``y`` may be a single vector or a 2-D array whose columns are vectors,
    in which case the result holds ``<x, y_i>`` for every column.  This is
    the only inner-product routine in the package; analysis operators and
    redundancy sums all go through it.
    """
    x = np.asarray(x)
    y = np.asarray(y)
    if y.ndim == 1:
        return np.vdot(y, x)
    return y.conj().T @ x


def is_hermitian(M, rel_tol: float = 1e-12) -> bool:
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        return False
    scale = np.max(np.abs(M)) if M.size else 0.0
    return bool(np.all(np.abs(M - M.conj().T) <= rel_tol * scale))


def jacobi_eigh(M, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS):
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Each rotation first removes the phase of the pivot ``M[p, q]`` with a
    diagonal unitary and then applies the classical real rotation, so the
    same code handles real symmetric and complex Hermitian input.

    Parameters
    ----------
    M
        Square Hermitian matrix.  Only Hermitian input is meaningful; the
        caller is responsible for checking it.
    tol
        Sweeps stop once the Frobenius norm of the off-diagonal part drops
        below ``tol * ||M||_F``.
    max_sweeps
        Raise :class:`ConvergenceError` if the threshold is not met after
        this many full sweeps.

    Returns
    -------
    w : ndarray
        Real eigenvalues in ascending order.
    V : ndarray
        Unitary matrix whose columns are the matching eigenvectors.
    """
    A = np.array(M, dtype=np.complex128 if np.iscomplexobj(M) else np.float64)
    n = A.shape[0]
    V = np.eye(n, dtype=A.dtype)
    norm_f = np.linalg.norm(A)
    if n == 0 or norm_f == 0.0:
        return np.zeros(n), V
    threshold = tol * norm_f
    complex_input = np.iscomplexobj(A)
    off_mask = ~np.eye(n, dtype=bool)

    def off_norm():
        return np.sqrt(np.sum(np.abs(A[off_mask]) ** 2))

    for _ in range(max_sweeps):
        if off_norm() <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                phase = np.conj(apq / mag) if complex_input else np.sign(apq)
                app = A[p, p].real
                aqq = A[q, q].real
                diff = aqq - app
                if mag < 1e-150 * abs(diff):
                    # theta would overflow; t ~ 1 / (2 theta)
                    t = mag / diff
                else:
                    theta = diff / (2.0 * mag)
                    t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.sqrt(1.0 + theta * theta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                G = np.array([[c, s], [-s * phase, c * phase]], dtype=A.dtype)
                idx = [p, q]
                A[:, idx] = A[:, idx] @ G
                A[idx, :] = G.conj().T @ A[idx, :]
                A[p, q] = A[q, p] = 0.0
                A[p, p] = app - t * mag
                A[q, q] = aqq + t * mag
                V[:, idx] = V[:, idx] @ G
    else:
        off = off_norm()
        if off > threshold:
            raise ConvergenceError(
                f"Jacobi eigensolver did not converge in {max_sweeps} sweeps "
                f"(off-diagonal norm {off:.3e}, threshold {threshold:.3e})"
            )

    w = np.real(np.diag(A)).copy()
    order = np.argsort(w, kind="stable")
    return w[order], V[:, order]


def _pivoted_qr_diag(A):
    R, piv = scipy.linalg.qr(A, mode="r", pivoting=True)
    k = min(R.shape)
    return np.abs(np.diag(R[:k, :k])), piv


def rank_tolerance_factor(shape) -> float:
    """Default relative rank tolerance ``max(rows, cols) * eps``."""
    return max(shape) * EPS


def numerical_rank(A, rel_tol: float | None = None, ref: float | None = None) -> int:
    """Numerical rank of the columns of ``A`` from a column-pivoted QR.

    A pivot ``|R_kk|`` counts when it exceeds ``rel_tol * ref``.  ``ref``
    defaults to the leading pivot, i.e. the largest column norm, which
    stands in for the largest singular value; pass ``ref`` explicitly for
    an absolute threshold.  ``rel_tol`` defaults to ``max(A.shape) * eps``.
    """
    A = np.asarray(A)
    if A.ndim != 2:
        raise ValueError("numerical_rank expects a 2-D array")
    if A.shape[0] == 0 or A.shape[1] == 0:
        return 0
    diag, _ = _pivoted_qr_diag(A)
    if diag[0] == 0.0:
        return 0
    if rel_tol is None:
        rel_tol = rank_tolerance_factor(A.shape)
    return int(np.count_nonzero(diag > rel_tol * (diag[0] if ref is None else ref)))


def pivot_ratios(A):
    """Pivots of the column-pivoted QR of ``A`` divided by the leading pivot."""
    A = np.asarray(A)
    if A.size == 0:
        return np.zeros(0)
    diag, _ = _pivoted_qr_diag(A)
    if diag[0] == 0.0:
        return np.zeros_like(diag)
    return diag / diag[0]


def range_basis(A, rel_tol: float | None = None):
    """Orthonormal basis (as columns) of the column span of ``A``."""
    A = np.asarray(A)
    r = numerical_rank(A, rel_tol)
    if r == 0:
        return np.zeros((A.shape[0], 0), dtype=A.dtype)
    Q, _, _ = scipy.linalg.qr(A, mode="economic", pivoting=True)
    return Q[:, :r]


def inverse_sqrt_psd(w, V):
    """``V diag(w)^(-1/2) V^*`` for an eigen-decomposition with positive ``w``."""
    return (V * (1.0 / np.sqrt(w))) @ V.conj().T
