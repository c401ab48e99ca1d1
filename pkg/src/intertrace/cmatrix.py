"""
Dense complex square-matrix kernel.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128`` and
shape ``(n, n)``, stored row-major. Every function here is pure: inputs are
never modified in place.

The Hermitian eigensolver is a cyclic Jacobi method with complex rotations.
It is slower than LAPACK but has no tuning knobs beyond the sweep cap, and
is plenty for the dimensions used by the chain simulator (at most a few
hundred).
"""

from typing import NamedTuple

import numpy as np

from .exceptions import ConvergenceError, DimensionError, NotHermitianError

DEFAULT_MAX_DIM = 4096
HERMITIAN_TOL = 1e-9
JACOBI_MAX_SWEEPS = 100
JACOBI_OFF_TOL = 1e-12


def as_matrix(a):
    """Coerce `a` to a square complex128 array, rejecting NaN/Inf."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise DimensionError(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains NaN or Inf entries")
    return m


def identity(n):
    return np.eye(n, dtype=np.complex128)


def mat_mul(a, b):
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise DimensionError(f"cannot multiply dim {a.shape[0]} by dim {b.shape[0]}")
    return a @ b


def kron(a, b, max_dim=DEFAULT_MAX_DIM):
    """Kronecker product; block (i, j) of the result is ``a[i, j] * b``.

    Raises DimensionError when the product dimension would exceed `max_dim`.
    """
    a, b = as_matrix(a), as_matrix(b)
    n = a.shape[0] * b.shape[0]
    if max_dim is not None and n > max_dim:
        raise DimensionError(
            f"Kronecker product dimension {n} exceeds the cap of {max_dim}"
        )
    return np.kron(a, b)


def trace(a):
    return complex(np.trace(as_matrix(a)))


def adjoint(a):
    return as_matrix(a).conj().T.copy()


def hermiticity_defect(a):
    """Largest elementwise ``|a - a^dagger|``."""
    a = as_matrix(a)
    return float(np.max(np.abs(a - a.conj().T)))


def commutator(a, b):
    return mat_mul(a, b) - mat_mul(b, a)


class EigenDecomposition(NamedTuple):
    """Eigenvalues (ascending) and the matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int = 0

    def reconstruct(self):
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def _off_norm(a):
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def hermitian_eig(h, tol=HERMITIAN_TOL, max_sweeps=JACOBI_MAX_SWEEPS):
    """Diagonalize a Hermitian matrix with cyclic complex Jacobi rotations.

    Parameters
    ----------
    h : array_like
        Hermitian matrix; ``max |h - h^dagger|`` must not exceed `tol`.
    tol : float
        Hermiticity tolerance.
    max_sweeps : int
        Cap on full sweeps over the upper triangle.

    Returns
    -------
    EigenDecomposition
        Real eigenvalues sorted ascending and eigenvectors as columns.
    """
    h = as_matrix(h)
    asym = hermiticity_defect(h)
    if asym > tol:
        raise NotHermitianError(
            f"matrix is not Hermitian: max |h - h^dagger| = {asym:.3e} > {tol:.1e}"
        )
    n = h.shape[0]
    a = 0.5 * (h + h.conj().T)
    v = identity(n)
    threshold = JACOBI_OFF_TOL * max(1.0, float(np.linalg.norm(a)))

    sweeps = 0
    while _off_norm(a) > threshold:
        if sweeps >= max_sweeps:
            raise ConvergenceError(
                f"Jacobi eigensolver did not converge in {max_sweeps} sweeps "
                f"(off-diagonal norm {_off_norm(a):.3e})"
            )
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[p, q]
                mag = abs(g)
                if mag < 1e-300:
                    continue
                app, aqq = a[p, p].real, a[q, q].real
                # phase-strip the (p, q) element, then a real 2x2 rotation
                phase = g / mag
                angle = 0.5 * np.arctan2(2.0 * mag, aqq - app)
                c, s = np.cos(angle), np.sin(angle)
                rot = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ rot
                a[idx, :] = rot.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                v[:, idx] = v[:, idx] @ rot

    w = np.diag(a).real.copy()
    order = np.argsort(w, kind="stable")
    return EigenDecomposition(w[order], v[:, order], sweeps)


def unitary_propagator(h, t, tol=HERMITIAN_TOL):
    """Return ``exp(-i h t)`` built from the eigendecomposition of `h`."""
    eig = hermitian_eig(h, tol=tol)
    v = eig.eigenvectors
    return (v * np.exp(-1j * eig.eigenvalues * t)) @ v.conj().T
