"""Magnetic Laplacian ``L = D - T ⊙ Wbar`` and its normalized form.

The charge ``g`` is kept as an exact :class:`fractions.Fraction` ``k/m``; edge
phases ``2*pi*g*a`` are reduced modulo one turn with integer arithmetic before
they are turned into unit complex numbers, so quarter and half turns come out
exact and holonomy checks for quantized charges are not disturbed by drift.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational, Real

import numpy as np
import scipy.sparse as sp

from .exceptions import ChargeOutOfRangeError, ZeroDegreeError
from .graph import SymmetrizedView

__all__ = [
    "CHARGE_PRESETS",
    "MagneticLaplacian",
    "as_charge",
    "unit_phase",
    "transporter",
    "build_magnetic_laplacian",
    "normalize",
]

#: Charges worth trying first: directed triangles, directed 4-cycles, near-signed, signed.
CHARGE_PRESETS = (Fraction(1, 3), Fraction(1, 4), Fraction(2, 5), Fraction(1, 2))


def as_charge(g, check: bool = True) -> Fraction:
    """Convert ``g`` (Fraction, int, float or ``"k/m"`` string) to an exact Fraction.

    Floats go through their shortest repr, so ``0.25`` becomes ``1/4`` and
    ``0.4`` becomes ``2/5``.  With ``check`` the value must lie in ``[0, 1/2]``.
    """
    if isinstance(g, Fraction):
        q = g
    elif isinstance(g, Rational):
        q = Fraction(int(g.numerator), int(g.denominator))
    elif isinstance(g, str):
        try:
            q = Fraction(g.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ChargeOutOfRangeError(f"cannot parse charge {g!r}") from exc
    elif isinstance(g, Real):
        if not np.isfinite(g):
            raise ChargeOutOfRangeError(f"charge must be finite, got {g}")
        q = Fraction(repr(float(g)))
    else:
        raise TypeError(f"unsupported charge type {type(g).__name__}")
    if check and not (0 <= q <= Fraction(1, 2)):
        raise ChargeOutOfRangeError(f"charge g={q} outside [0, 1/2]")
    return q


_QUARTER_TURNS = np.array([1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j])


def unit_phase(turns_num, g: Fraction) -> np.ndarray:
    """``exp(i * 2*pi * g * x)`` for integer ``x``, reduced exactly modulo one turn."""
    x = np.asarray(turns_num, dtype=np.int64)
    k, m = g.numerator, g.denominator
    r = np.mod(k * x, m)
    out = np.exp(2j * np.pi * r / m)
    quarter = (4 * r) % m == 0
    if np.any(quarter):
        out = np.where(quarter, _QUARTER_TURNS[(4 * r // m) % 4], out)
    return out


def transporter(sym: SymmetrizedView, g) -> np.ndarray:
    """Edge transporters ``t_ij = exp(i 2 pi g a_ji)`` for each stored pair ``i < j``.

    The reverse direction is the complex conjugate, ``t_ji = conj(t_ij)``.
    """
    g = as_charge(g)
    return unit_phase(-sym.flow.astype(np.int64), g)


@dataclass(frozen=True, eq=False)
class MagneticLaplacian:
    """Sparse Hermitian ``L^(g)`` together with ``D`` and, once normalized, ``L_N``."""

    g: Fraction
    sym: SymmetrizedView
    matrix: sp.csr_array
    degrees: np.ndarray
    normalized: sp.csr_array | None = None

    @property
    def n(self) -> int:
        return self.sym.n

    def dense(self) -> np.ndarray:
        return self.matrix.toarray()

    def dense_normalized(self) -> np.ndarray:
        if self.normalized is None:
            return normalize(self).normalized.toarray()
        return self.normalized.toarray()

    def degree_matrix(self) -> sp.dia_array:
        return sp.diags_array(self.degrees)


def _assemble(sym: SymmetrizedView, t: np.ndarray, degrees: np.ndarray) -> sp.csr_array:
    i, j = sym.pairs[:, 0], sym.pairs[:, 1]
    upper = -sym.wbar * t
    rows = np.concatenate([i, j, np.arange(sym.n)])
    cols = np.concatenate([j, i, np.arange(sym.n)])
    data = np.concatenate([upper, np.conj(upper), degrees.astype(complex)])
    return sp.csr_array((data, (rows, cols)), shape=(sym.n, sym.n))


def build_magnetic_laplacian(sym: SymmetrizedView, g) -> MagneticLaplacian:
    """Assemble ``L = D - T ⊙ Wbar``.

    Entry ``(i, j)`` of each pair is written once and its mirror ``(j, i)`` is the
    conjugate, so Hermiticity holds bit for bit.  ``g = 0`` gives ``D - Wbar``.
    """
    g = as_charge(g)
    t = transporter(sym, g)
    return MagneticLaplacian(g=g, sym=sym, matrix=_assemble(sym, t, sym.degrees), degrees=sym.degrees)


def normalize(lap: MagneticLaplacian) -> MagneticLaplacian:
    """Return a copy with ``normalized = D^{-1/2} L D^{-1/2}`` filled in."""
    zero = np.flatnonzero(lap.degrees <= 0)
    if len(zero):
        raise ZeroDegreeError(zero)
    s = 1.0 / np.sqrt(lap.degrees)
    scale = sp.diags_array(s)
    ln = sp.csr_array(scale @ lap.matrix @ scale)
    # re-mirror so the normalized matrix is Hermitian bit for bit as well
    ln = sp.csr_array((ln + ln.conj().T) / 2)
    return dataclasses.replace(lap, normalized=ln)
