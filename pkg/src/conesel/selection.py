"""Online constraint selection: initialization, ICA and local configuration search."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .constraints import Configuration, ConstraintSet, NullspaceBasis, nullspace_basis
from .errors import HardInfeasibleError
from .feasibility import fc


@dataclass
class SelectionState:
    P_current: Configuration
    P_last_feasible: Optional[Configuration] = None
    nu_last: Optional[np.ndarray] = None
    depth: int = 1


def init_config(cs: ConstraintSet, basis: Optional[NullspaceBasis] = None) -> Configuration:
    """Enforce the hard constraints and every soft one with ``B_i >= 0``.

    If every hard ``B_i`` is nonnegative too, ``nu = B`` satisfies the
    configuration LP and the result is feasible without any check (u = 0 is a
    witness). A hard constraint with ``B_i < 0`` voids that witness, so the
    choice is checked and replaced by the hard-only configuration if needed.
    """
    P = Configuration(cs.hard_mask | (cs.B >= 0))
    if np.all(cs.B[: cs.n_hard] >= 0):
        return P
    return P if fc(cs, P, basis) else cs.hard_only()


def _hard_start(cs, nb):
    P = cs.hard_only()
    cert = fc(cs, P, nb)
    if not cert:
        raise HardInfeasibleError("hard constraints alone are infeasible")
    return P, cert


def ica(cs: ConstraintSet, P0: Configuration, basis: Optional[NullspaceBasis] = None,
        trace: Optional[list] = None):
    """Iterative constraint addition.

    Starting from ``P0`` (or the hard-only configuration if ``P0`` is
    infeasible), repeatedly enforce every disregarded constraint whose
    component of ``nu`` is nonnegative. Returns ``(P, nu)``.

    If ``trace`` is a list, every configuration that was checked is appended
    together with its certificate.
    """
    nb = nullspace_basis(cs) if basis is None else basis
    P = P0
    cert = fc(cs, P, nb)
    if not cert:
        P, cert = _hard_start(cs, nb)
    if trace is not None:
        trace.append((P, cert))
    for _ in range(cs.c):
        if cert.disregarded_pos.size == 0:
            break
        # enforced bits stay set even if roundoff leaves nu_e at -1e-16
        nxt = Configuration(P.bits | (cert.nu >= 0))
        nxt_cert = fc(cs, nxt, nb)
        if trace is not None:
            trace.append((nxt, nxt_cert))
        if not nxt_cert:
            break
        P, cert = nxt, nxt_cert
    return P, cert.nu


def _soft(cs, bits, value):
    idx = np.arange(cs.n_hard, cs.c)
    return idx[bits[cs.n_hard:] == value]


def lcs(cs: ConstraintSet, P: Configuration, P_prev: Optional[Configuration],
        nu_prev: Optional[np.ndarray], D: int, basis: Optional[NullspaceBasis] = None):
    """Local configuration search with depth ``D``. Returns ``(P, nu)``.

    Feasible ``P``: run ICA, then for up to ``D`` rounds try to enforce each
    disregarded constraint, closest-to-zero ``nu`` first, keeping it when the
    configuration stays feasible.

    Infeasible ``P``: disregard enforced soft constraints in increasing order
    of ``nu_prev`` (the certificate of the last feasible configuration
    ``P_prev``) until the configuration becomes feasible. Falls back to ICA
    from the hard-only configuration if that fails or no ``nu_prev`` exists.
    """
    if D < 1:
        raise ValueError("search depth must be >= 1")
    nb = nullspace_basis(cs) if basis is None else basis
    cert = fc(cs, P, nb)
    if cert:
        Pt, nu = ica(cs, P, nb)
        # enforcing more constraints only shrinks the feasible set, so a
        # rejected candidate stays rejected in later rounds
        rejected = set()
        for _ in range(D):
            off = [j for j in _soft(cs, Pt.bits, False) if j not in rejected]
            order = sorted(off, key=lambda j: (-nu[j], j))
            added = False
            for j in order:
                trial = Pt.with_bit(j, True)
                ct = fc(cs, trial, nb)
                if ct:
                    Pt, nu, added = trial, ct.nu, True
                else:
                    rejected.add(j)
            if not added:
                break
        return Pt, nu

    if nu_prev is None:
        return ica(cs, cs.hard_only(), nb)
    nu_rank = np.asarray(nu_prev, dtype=float)
    Pt = P
    for _ in range(D):
        on = _soft(cs, Pt.bits, True)
        order = sorted(on, key=lambda j: (nu_rank[j], j))
        for j in order:
            Pt = Pt.with_bit(j, False)
            ct = fc(cs, Pt, nb)
            if ct:
                return Pt, ct.nu
    return ica(cs, cs.hard_only(), nb)

