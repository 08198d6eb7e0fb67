"""Two-qubit register: spatial path (control) x polarization (target).

Basis ordering |path, pol>: |0H>, |0V>, |1H>, |1V>.  The lattice
realization carries one synthetic frequency lattice per path; a CNOT is
one roundtrip with X-gate modulation on path 1 and an idle roundtrip on
path 0, and the path-X is a swap of the two lattices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .engine import IDENTITY, step
from .errors import ConfigurationError
from .gates import (
    DEFAULT_DELTA,
    DEFAULT_Q_STAR,
    _gate_lattice,
    _packet,
    solve_modulation,
    table_gate,
)
from .lattice import LatticeState, spin_projection_at_q

BASIS = ("0H", "0V", "1H", "1V")


def cnot_matrix() -> np.ndarray:
    """Flip the polarization iff the path qubit is 1."""
    return np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    )


def path_x() -> np.ndarray:
    """X on the path (control) qubit: swap the two paths."""
    return np.kron(np.array([[0, 1], [1, 0]], dtype=complex), np.eye(2))


def sequence_ms() -> np.ndarray:
    """The test sequence path_x . CNOT . path_x."""
    return path_x() @ cnot_matrix() @ path_x()


_MATRICES = {"cnot": cnot_matrix, "path_x": path_x}


def sequence_matrix(ops: list[str]) -> np.ndarray:
    """4x4 product of an operation sequence, application order."""
    u = np.eye(4, dtype=complex)
    for op in ops:
        try:
            u = _MATRICES[op]() @ u
        except KeyError:
            raise ConfigurationError(f"unknown two-qubit op {op!r}") from None
    return u


def execute_two_qubit_lattice(
    ops: list[str],
    basis_index: int,
    delta: float = DEFAULT_DELTA,
    q_star: float = DEFAULT_Q_STAR,
    engine: str = "spectral",
) -> np.ndarray:
    """Drive one basis wavepacket through the sequence; return the 4-vector
    (0H, 0V, 1H, 1V) of q* projections with common normalization."""
    if basis_index not in range(4):
        raise ConfigurationError("basis index must be 0..3")
    cfg = _gate_lattice(delta)
    path, pol = divmod(basis_index, 2)
    spin = (1.0, 0.0) if pol == 0 else (0.0, 1.0)
    packet = _packet(spin, delta, q_star, cfg)
    scale = np.linalg.norm(spin_projection_at_q(packet, q_star, normalized=False))
    empty = packet.with_amp(np.zeros_like(packet.amp))
    lattices: list[LatticeState] = [empty, empty]
    lattices[path] = packet

    x_params = solve_modulation(table_gate("X"), q_star).params
    for op in ops:
        if op == "path_x":
            lattices = [lattices[1], lattices[0]]
        elif op == "cnot":
            lattices = [
                step(lattices[0], IDENTITY, engine),
                step(lattices[1], x_params, engine),
            ]
        else:
            raise ConfigurationError(f"unknown two-qubit op {op!r}")

    out = np.empty(4, dtype=complex)
    for p in (0, 1):
        out[2 * p : 2 * p + 2] = (
            spin_projection_at_q(lattices[p], q_star, normalized=False)
            if np.any(lattices[p].amp)
            else 0.0
        )
    return out / scale


@dataclass(frozen=True)
class TwoQubitReport:
    reconstructed: np.ndarray
    target: np.ndarray
    max_abs_error: float


def reconstruct_4x4(
    ops: list[str],
    delta: float = DEFAULT_DELTA,
    q_star: float = DEFAULT_Q_STAR,
    engine: str = "spectral",
) -> TwoQubitReport:
    """Column-wise reconstruction of the sequence from the four basis
    inputs, compared against the analytic matrix product."""
    cols = [
        execute_two_qubit_lattice(ops, i, delta, q_star, engine) for i in range(4)
    ]
    u_o = np.column_stack(cols)
    target = sequence_matrix(ops)
    return TwoQubitReport(
        reconstructed=u_o,
        target=target,
        max_abs_error=float(np.max(np.abs(u_o - target))),
    )
