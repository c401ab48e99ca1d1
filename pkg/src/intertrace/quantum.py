"""
Density matrices over tensor-factored Hilbert spaces.

A :class:`DensityMatrix` pairs a complex matrix with a
:class:`SubsystemLayout`, the ordered list of factor labels and their
Hilbert dimensions. Factor ordering follows the Kronecker convention: the
first label is the most significant index.
"""

from dataclasses import dataclass
from math import prod
from typing import NamedTuple

import numpy as np

from . import cmatrix
from .cmatrix import DEFAULT_MAX_DIM, HERMITIAN_TOL
from .exceptions import DimensionError, LayoutError

NEGATIVITY_FLOOR = -1e-6

PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}
AXES = ("x", "y", "z")


@dataclass(frozen=True)
class SubsystemLayout:
    labels: tuple
    dims: tuple

    def __post_init__(self):
        labels = tuple(str(label) for label in self.labels)
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "dims", dims)
        if len(labels) != len(dims):
            raise LayoutError(f"{len(labels)} labels but {len(dims)} dims")
        if not labels:
            raise LayoutError("layout must contain at least one factor")
        if len(set(labels)) != len(labels):
            raise LayoutError(f"duplicate labels in layout {labels}")
        if any(d < 1 for d in dims):
            raise LayoutError(f"factor dimensions must be positive, got {dims}")

    @property
    def dim(self):
        return prod(self.dims)

    def index(self, label):
        try:
            return self.labels.index(label)
        except ValueError:
            raise LayoutError(
                f"unknown label {label!r}; layout has {list(self.labels)}"
            ) from None

    def dim_of(self, label):
        return self.dims[self.index(label)]

    def __add__(self, other):
        return SubsystemLayout(self.labels + other.labels, self.dims + other.dims)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A state on the composite space described by `layout`.

    Construction checks shapes only; physical validity is reported by
    :func:`validate_density`, since Euler trajectories are allowed small
    excursions.
    """

    matrix: np.ndarray
    layout: SubsystemLayout

    def __post_init__(self):
        m = cmatrix.as_matrix(self.matrix)
        if m.shape[0] != self.layout.dim:
            raise DimensionError(
                f"matrix dim {m.shape[0]} does not match layout dims {self.layout.dims}"
            )
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @classmethod
    def single(cls, label, matrix):
        m = cmatrix.as_matrix(matrix)
        return cls(m, SubsystemLayout((label,), (m.shape[0],)))

    @property
    def dim(self):
        return self.matrix.shape[0]

    @property
    def labels(self):
        return self.layout.labels

    def relabel(self, label):
        if len(self.layout.labels) != 1:
            raise LayoutError("only single-factor states can be relabelled")
        return DensityMatrix(self.matrix, SubsystemLayout((label,), self.layout.dims))

    def with_matrix(self, matrix):
        return DensityMatrix(matrix, self.layout)

    def purity(self):
        return float(np.real(np.trace(self.matrix @ self.matrix)))

    def __repr__(self):
        return f"DensityMatrix(labels={self.layout.labels}, dims={self.layout.dims})"


class BlochParams(NamedTuple):
    """Polar form of a qubit Bloch vector, angles in degrees."""

    r: float
    theta_deg: float
    phi_deg: float


class Diagnostics(NamedTuple):
    trace_deviation: float
    hermiticity_deviation: float
    min_eigenvalue: float
    trace_ok: bool
    hermitian_ok: bool
    positive_ok: bool

    @property
    def ok(self):
        return self.trace_ok and self.hermitian_ok and self.positive_ok


def pauli_eigenstate(axis, sign="+", label="q"):
    """Projector ``(I + s sigma_axis) / 2`` onto the +/- eigenstate of a Pauli matrix."""
    if axis not in PAULI:
        raise ValueError(f"axis must be one of {AXES}, got {axis!r}")
    s = {"+": 1.0, "-": -1.0, 1: 1.0, -1: -1.0}.get(sign)
    if s is None:
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    return DensityMatrix.single(label, (np.eye(2) + s * PAULI[axis]) / 2)


def maximally_mixed(dim, label="q"):
    return DensityMatrix.single(label, np.eye(dim) / dim)


def tensor_compose(states, max_dim=DEFAULT_MAX_DIM):
    """Kronecker product of `states` in order; layouts are concatenated."""
    states = list(states)
    if not states:
        raise LayoutError("tensor_compose needs at least one state")
    layout = states[0].layout
    for s in states[1:]:
        layout = layout + s.layout
    if max_dim is not None and layout.dim > max_dim:
        raise DimensionError(
            f"composite dimension {layout.dim} exceeds the cap of {max_dim}"
        )
    m = states[0].matrix
    for s in states[1:]:
        m = cmatrix.kron(m, s.matrix, max_dim=max_dim)
    return DensityMatrix(m, layout)


def _flat_indices(dims, positions):
    """Flat index of every multi-index over the factors in `positions`.

    Returns an array of shape ``(prod(dims[p] for p in positions),)`` holding
    ``sum_k i_k * stride_k`` over those factors, with the other digits zero.
    """
    strides = [prod(dims[k + 1:]) for k in range(len(dims))]
    idx = np.zeros(1, dtype=np.intp)
    for p in positions:
        idx = (idx[:, None] + np.arange(dims[p]) * strides[p]).ravel()
    return idx


def partial_trace(rho, keep):
    """Sum out every factor whose label is not in `keep`.

    Kept factors stay in their original relative order. Implemented by
    explicit multi-index arithmetic: entry ``(i, j)`` of the result is the sum
    over traced multi-indices ``t`` of ``rho[i + t, j + t]`` in flat offsets.
    """
    if isinstance(keep, str):
        keep = {keep}
    keep = set(keep)
    if not keep:
        raise LayoutError("partial_trace needs a non-empty set of labels to keep")
    layout = rho.layout
    for label in keep:
        layout.index(label)

    kept = [k for k, label in enumerate(layout.labels) if label in keep]
    traced = [k for k, label in enumerate(layout.labels) if label not in keep]
    if not traced:
        return rho

    k_idx = _flat_indices(layout.dims, kept)
    t_idx = _flat_indices(layout.dims, traced)
    rows = k_idx[:, None, None] + t_idx[None, None, :]
    cols = k_idx[None, :, None] + t_idx[None, None, :]
    reduced = rho.matrix[rows, cols].sum(axis=2)

    new_layout = SubsystemLayout(
        tuple(layout.labels[k] for k in kept), tuple(layout.dims[k] for k in kept)
    )
    return DensityMatrix(reduced, new_layout)


def _require_qubit(rho):
    if rho.layout.dims != (2,):
        raise DimensionError(
            f"expected a single qubit, got layout {rho.layout.labels} "
            f"with dims {rho.layout.dims}"
        )


def bloch_vector(rho):
    """``v_i = Re tr(rho sigma_i)`` for a single qubit."""
    _require_qubit(rho)
    m = rho.matrix
    return np.array([np.real(np.trace(m @ PAULI[a])) for a in AXES])


def from_bloch_vector(v, label="q"):
    v = np.asarray(v, dtype=float)
    m = np.eye(2, dtype=np.complex128)
    for comp, axis in zip(v, AXES):
        m = m + comp * PAULI[axis]
    return DensityMatrix.single(label, m / 2)


def bloch_params(rho, convention="population"):
    """Radius and angles (degrees) of a qubit state on the Bloch sphere.

    ``phi`` is the azimuth ``atan2(v_y, v_x)``. Two polar-angle conventions
    are supported:

    ``"population"`` (default)
        ``theta = 2 arccos(sqrt(rho_00)) = arccos(v_z)``, the angle of the
        pure state with the same ``|0>`` population. This is the convention
        used to report the Heisenberg-chain example values.
    ``"geometric"``
        ``theta = arccos(v_z / r)``, the direction of the Bloch vector.

    Both agree for pure states. When ``r < 1e-12`` the angles are reported
    as 0; when the vector lies on the z axis ``phi`` is 0.
    """
    v = bloch_vector(rho)
    r = float(np.linalg.norm(v))
    if r < 1e-12:
        return BlochParams(r, 0.0, 0.0)
    if convention == "population":
        cos_theta = v[2]
    elif convention == "geometric":
        cos_theta = v[2] / r
    else:
        raise ValueError(f"unknown polar-angle convention {convention!r}")
    theta = float(np.degrees(np.arccos(np.clip(cos_theta, -1.0, 1.0))))
    if v[0] ** 2 + v[1] ** 2 < 1e-24:
        phi = 0.0
    else:
        phi = float(np.degrees(np.arctan2(v[1], v[0])))
        if phi == -180.0:
            phi = 180.0
    return BlochParams(r, theta, phi)


def measure_prob(rho, axis, clamp=False):
    """Probability ``tr(rho (I + sigma_axis) / 2)`` of the + outcome along `axis`."""
    _require_qubit(rho)
    if axis not in PAULI:
        raise ValueError(f"axis must be one of {AXES}, got {axis!r}")
    p = float(np.real(np.trace(rho.matrix @ (np.eye(2) + PAULI[axis]))) / 2)
    if clamp:
        p = min(max(p, 0.0), 1.0)
    return p


def validate_density(rho, tol=HERMITIAN_TOL, negativity_floor=NEGATIVITY_FLOOR):
    m = rho.matrix if isinstance(rho, DensityMatrix) else cmatrix.as_matrix(rho)
    trace_dev = abs(np.trace(m) - 1.0)
    herm_dev = cmatrix.hermiticity_defect(m)
    min_eig = float(np.min(np.linalg.eigvalsh(0.5 * (m + m.conj().T))))
    return Diagnostics(
        trace_deviation=float(trace_dev),
        hermiticity_deviation=herm_dev,
        min_eigenvalue=min_eig,
        trace_ok=trace_dev <= tol,
        hermitian_ok=herm_dev <= tol,
        positive_ok=min_eig >= negativity_floor,
    )
