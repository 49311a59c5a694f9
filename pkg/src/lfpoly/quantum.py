"""Finite-dimensional quantum states, +-1 observables and Born-rule behaviors."""
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotHermitian, NotNormalized, ValidationError
from .scenario import Behavior, Scenario

HERMITIAN_TOL = 1e-12


def is_hermitian(m, tol=HERMITIAN_TOL):
    m = np.asarray(m)
    return m.ndim == 2 and m.shape[0] == m.shape[1] and np.max(np.abs(m - m.conj().T), initial=0) <= tol


def hermitian_eigensystem(m, tol=1e-15, max_sweeps=100):
    """Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi sweeps.

    Returns ``(eigenvalues ascending, V)`` with orthonormal eigenvector columns.
    """
    a = np.array(m, dtype=complex)
    if not is_hermitian(a, tol=max(HERMITIAN_TOL, HERMITIAN_TOL * np.abs(a).max(initial=0))):
        raise NotHermitian("matrix is not Hermitian")
    a = (a + a.conj().T) / 2
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = np.linalg.norm(a) or 1.0
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r <= tol * scale * 1e-3:
                    continue
                phase = apq / r
                tau = (a[q, q].real - a[p, p].real) / (2 * r)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1 + tau * tau))
                c = 1 / np.sqrt(1 + t * t)
                s = t * c
                # phase to a real symmetric block, then a real rotation
                u = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ u
                a[idx, :] = u.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0
                v[:, idx] = v[:, idx] @ u
    w = np.real(np.diag(a))
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


@dataclass(frozen=True, eq=False)
class BipartiteState:
    rho: np.ndarray
    dims: tuple

    def __post_init__(self):
        rho = np.asarray(self.rho, dtype=complex)
        dA, dB = self.dims
        if rho.shape != (dA * dB, dA * dB):
            raise DimensionMismatch(f"rho has shape {rho.shape}, dims {self.dims}")
        if not is_hermitian(rho, 1e-10):
            raise NotHermitian("density operator is not Hermitian")
        if abs(np.trace(rho) - 1) > 1e-10:
            raise NotNormalized(f"trace {np.trace(rho).real}")
        if np.linalg.eigvalsh(rho).min() < -1e-9:
            raise ValidationError("density operator is not positive semidefinite")
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "dims", (int(dA), int(dB)))

    @classmethod
    def pure(cls, psi, dims):
        psi = np.asarray(psi, dtype=complex).ravel()
        return cls(np.outer(psi, psi.conj()), dims)

    def mixed_with_white_noise(self, eps):
        d = self.dims[0] * self.dims[1]
        return BipartiteState((1 - eps) * self.rho + eps * np.eye(d) / d, self.dims)


def ket(*amplitudes):
    return np.array(amplitudes, dtype=complex)


H = ket(1, 0)
V = ket(0, 1)


def rho_mu(mu):
    """``mu |Phi-><Phi-| + (1 - mu)/2 (|HV><HV| + |VH><VH|)``, basis HH, HV, VH, VV."""
    if not 0 <= mu <= 1:
        raise ValidationError(f"mu={mu} outside [0, 1]")
    hv = np.kron(H, V)
    vh = np.kron(V, H)
    phi = (hv - vh) / np.sqrt(2)
    rho = mu * np.outer(phi, phi.conj()) + (1 - mu) / 2 * (np.outer(hv, hv) + np.outer(vh, vh))
    return BipartiteState(rho, (2, 2))


def observable_from_angle(theta_deg):
    """``2 |phi><phi| - I`` with ``|phi> = (|H> + e^{i theta} |V>)/sqrt 2``."""
    th = np.radians(theta_deg)
    phi = (H + np.exp(1j * th) * V) / np.sqrt(2)
    return 2 * np.outer(phi, phi.conj()) - np.eye(2)


def check_dichotomic(obs, tol=1e-9):
    obs = np.asarray(obs)
    if not is_hermitian(obs, 1e-12):
        raise NotHermitian("observable is not Hermitian")
    if np.max(np.abs(obs @ obs - np.eye(len(obs)))) > tol:
        raise ValidationError("observable does not square to the identity")
    return obs


def projectors(obs):
    """``(I + O)/2`` for label 0 (outcome +1) and ``(I - O)/2`` for label 1."""
    eye = np.eye(len(obs))
    return [(eye + obs) / 2, (eye - obs) / 2]


def behavior_from_strategy(state, alice, bob):
    """Born-rule behavior from a state and one +-1 observable per setting."""
    dA, dB = state.dims
    if len(alice) != len(bob):
        raise DimensionMismatch("parties need the same number of settings")
    if any(np.shape(a) != (dA, dA) for a in alice) or any(np.shape(b) != (dB, dB) for b in bob):
        raise DimensionMismatch("observable dimensions do not match the state")
    n = len(alice)
    PA = np.array([projectors(np.asarray(a)) for a in alice])  # [x, a, i, k]
    PB = np.array([projectors(np.asarray(b)) for b in bob])    # [y, b, j, l]
    rho = state.rho.reshape(dA, dB, dA, dB)
    # p[a,b,x,y] = Tr(rho (PA[x,a] (x) PB[y,b]))
    table = np.einsum("ijkl,xaki,yblj->abxy", rho, PA, PB).real
    return Behavior(Scenario(n, 2), table, exact=False)


def schmidt_coefficients(psi, dims=None, tol=1e-9):
    """Singular values of the coefficient matrix of a pure bipartite vector, descending."""
    psi = np.asarray(psi, dtype=complex)
    if dims is None:
        d = int(round(np.sqrt(psi.size)))
        dims = (d, psi.size // d)
    if psi.size != dims[0] * dims[1]:
        raise DimensionMismatch(f"vector of size {psi.size} vs dims {dims}")
    if abs(np.linalg.norm(psi) - 1) > tol:
        raise NotNormalized(f"norm {np.linalg.norm(psi)}")
    return np.linalg.svd(psi.reshape(dims), compute_uv=False)
