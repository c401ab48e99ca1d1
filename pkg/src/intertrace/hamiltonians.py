"""Pauli operators, the Heisenberg pair coupling, and embeddings into composites."""

from dataclasses import dataclass, field
from functools import reduce
from typing import Optional

import numpy as np

from . import cmatrix
from .cmatrix import DEFAULT_MAX_DIM, HERMITIAN_TOL
from .exceptions import DimensionError, LayoutError, NotHermitianError
from .quantum import AXES, PAULI, SubsystemLayout

KINDS = ("heisenberg", "custom")


def pauli_matrix(axis):
    if axis not in PAULI:
        raise ValueError(f"axis must be one of {AXES}, got {axis!r}")
    return PAULI[axis].copy()


def heisenberg_pair(coupling=1.0):
    """``coupling * (sx sx + sy sy + sz sz)`` on two qubits (equals ``2 SWAP - I``)."""
    return coupling * sum(np.kron(PAULI[a], PAULI[a]) for a in AXES)


@dataclass(frozen=True, eq=False)
class PairCouplingSpec:
    site_i: str
    site_j: str
    coupling: float = 1.0
    kind: str = "heisenberg"
    matrix: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        if self.site_i == self.site_j:
            raise LayoutError(f"a pair coupling needs two distinct sites, got {self.site_i!r} twice")
        if self.kind not in KINDS:
            raise ValueError(f"coupling kind must be one of {KINDS}, got {self.kind!r}")
        if self.kind == "custom":
            if self.matrix is None:
                raise ValueError("custom coupling requires an explicit matrix")
            m = cmatrix.as_matrix(self.matrix)
            defect = cmatrix.hermiticity_defect(m)
            if defect > HERMITIAN_TOL:
                raise NotHermitianError(
                    f"custom coupling matrix is not Hermitian (max asymmetry {defect:.3e})"
                )
            object.__setattr__(self, "matrix", m)

    @property
    def pair(self):
        return (self.site_i, self.site_j)

    def pair_matrix(self, dim_i=2, dim_j=2):
        """The coupling operator on the two-site space, site_i first."""
        if self.kind == "heisenberg":
            if (dim_i, dim_j) != (2, 2):
                raise DimensionError(
                    f"Heisenberg coupling needs qubit sites, got dims ({dim_i}, {dim_j})"
                )
            return heisenberg_pair(self.coupling)
        if self.matrix.shape[0] != dim_i * dim_j:
            raise DimensionError(
                f"custom coupling has dim {self.matrix.shape[0]}, "
                f"expected {dim_i}*{dim_j}={dim_i * dim_j}"
            )
        return self.coupling * self.matrix

    def __eq__(self, other):
        if not isinstance(other, PairCouplingSpec):
            return NotImplemented
        same_matrix = (self.matrix is None and other.matrix is None) or (
            self.matrix is not None
            and other.matrix is not None
            and np.array_equal(self.matrix, other.matrix)
        )
        return (
            (self.site_i, self.site_j, self.coupling, self.kind)
            == (other.site_i, other.site_j, other.coupling, other.kind)
            and same_matrix
        )


def embed_site_operators(layout, ops, max_dim=DEFAULT_MAX_DIM):
    """Kronecker product with ``ops[label]`` at its site and identity elsewhere."""
    for label, op in ops.items():
        if op.shape[0] != layout.dim_of(label):
            raise DimensionError(
                f"operator of dim {op.shape[0]} does not fit site {label!r} "
                f"of dim {layout.dim_of(label)}"
            )
    if max_dim is not None and layout.dim > max_dim:
        raise DimensionError(f"composite dimension {layout.dim} exceeds the cap of {max_dim}")
    factors = [ops.get(label, np.eye(d)) for label, d in zip(layout.labels, layout.dims)]
    return reduce(np.kron, factors).astype(np.complex128)


def embed_pair_operator(layout, op, site_i, site_j, max_dim=DEFAULT_MAX_DIM):
    """Place a two-site operator (site_i-major) on arbitrary positions of `layout`.

    The operator is expanded on the operator basis ``|a><b| (x) |c><d|`` so
    that every term is a product of single-site matrices.
    """
    di, dj = layout.dim_of(site_i), layout.dim_of(site_j)
    op = cmatrix.as_matrix(op)
    if op.shape[0] != di * dj:
        raise DimensionError(f"pair operator dim {op.shape[0]} != {di}*{dj}")
    if max_dim is not None and layout.dim > max_dim:
        raise DimensionError(f"composite dimension {layout.dim} exceeds the cap of {max_dim}")
    pos_i, pos_j = layout.index(site_i), layout.index(site_j)
    if pos_i == pos_j:
        raise LayoutError("pair operator needs two distinct sites")
    # reorder op axes into layout order and insert identities on the spectators
    t = op.reshape(di, dj, di, dj)
    n = layout.dim
    out = np.zeros((n, n), dtype=np.complex128)
    for a in range(di):
        for b in range(di):
            block = t[a, :, b, :]
            if not np.any(block):
                continue
            eab = np.zeros((di, di), dtype=np.complex128)
            eab[a, b] = 1.0
            out += embed_site_operators(layout, {site_i: eab, site_j: block}, max_dim)
    return out


def heisenberg_embedded(layout, spec, max_dim=DEFAULT_MAX_DIM):
    """Coupling `spec` acting on its two sites of `layout`, identity elsewhere."""
    di, dj = layout.dim_of(spec.site_i), layout.dim_of(spec.site_j)
    if spec.kind == "heisenberg":
        if (di, dj) != (2, 2):
            raise DimensionError(
                f"Heisenberg coupling needs qubit sites, "
                f"{spec.site_i!r} has dim {di} and {spec.site_j!r} has dim {dj}"
            )
        return spec.coupling * sum(
            embed_site_operators(layout, {spec.site_i: PAULI[a], spec.site_j: PAULI[a]}, max_dim)
            for a in AXES
        )
    return embed_pair_operator(layout, spec.pair_matrix(di, dj), spec.site_i, spec.site_j, max_dim)


def embed_noninteracting(h_a, layout, acting_on):
    """``h_a (x) I`` where `acting_on` is a leading run of `layout` labels."""
    h_a = cmatrix.as_matrix(h_a)
    if isinstance(acting_on, str):
        acting_on = [acting_on]
    acting_on = set(acting_on)
    k = len(acting_on)
    if not acting_on or set(layout.labels[:k]) != acting_on:
        raise LayoutError(
            f"acting_on {sorted(acting_on)} is not a leading prefix of {list(layout.labels)}"
        )
    head = int(np.prod(layout.dims[:k]))
    if h_a.shape[0] != head:
        raise DimensionError(f"operator dim {h_a.shape[0]} != prefix dim {head}")
    tail = layout.dim // head
    return np.kron(h_a, np.eye(tail))
