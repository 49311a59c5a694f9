"""See-saw maximisation of Bell-type inequalities, noise tolerance and mu-sweeps."""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import NoViolation, ValidationError
from .inequalities import LIBRARY, SWEEP_SET, evaluate
from .quantum import BipartiteState, behavior_from_strategy, observable_from_angle, rho_mu

log = logging.getLogger(__name__)

SIGN_TOL = 1e-12
DEFAULT_RESTARTS = {2: 50, 3: 200}


def bell_operator(ineq, alice, bob):
    dA = len(alice[0])
    dB = len(bob[0])
    IA, IB = np.eye(dA), np.eye(dB)
    W = np.zeros((dA * dB, dA * dB), dtype=complex)
    n = ineq.settings
    for x in range(n):
        if ineq.A[x]:
            W += ineq.A[x] * np.kron(alice[x], IB)
    for y in range(n):
        if ineq.B[y]:
            W += ineq.B[y] * np.kron(IA, bob[y])
    for x in range(n):
        for y in range(n):
            if ineq.AB[x][y]:
                W += ineq.AB[x][y] * np.kron(alice[x], bob[y])
    return W


def matrix_sign(R):
    """Hermitian sign function; eigenvalues within ``1e-12`` of zero map to +1."""
    w, v = np.linalg.eigh((R + R.conj().T) / 2)
    s = np.where(w < -SIGN_TOL, -1.0, 1.0)
    return (v * s) @ v.conj().T


def random_observable(rng, d):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return matrix_sign((g + g.conj().T) / 2)


def _value(psi, W):
    return float(np.real(psi.conj() @ W @ psi))


@dataclass
class SeesawResult:
    value: float
    state: BipartiteState
    psi: np.ndarray
    alice: list
    bob: list
    schmidt: np.ndarray
    iterations: int
    restarts: int
    best_restart: int
    seed: int
    converged: bool
    min_step: float = 0.0
    history: list = field(default_factory=list, repr=False)

    def behavior(self):
        return behavior_from_strategy(self.state, self.alice, self.bob)

    def to_json(self):
        def flat(m):
            m = np.asarray(m)
            return [[float(z.real), float(z.imag)] for z in m.ravel()]

        return {
            "value": self.value,
            "schmidt": [float(s) for s in self.schmidt],
            "dims": list(self.state.dims),
            "alice": [flat(a) for a in self.alice],
            "bob": [flat(b) for b in self.bob],
            "iterations": self.iterations,
            "restarts": self.restarts,
            "best_restart": self.best_restart,
            "seed": self.seed,
            "converged": self.converged,
        }


def _single_run(ineq, dA, dB, seed, tol=1e-9, patience=3, max_rounds=5000, record=False):
    """One see-saw trajectory: state step, Alice step, Bob step, repeated."""
    rng = np.random.default_rng(seed)
    n = ineq.settings
    alice = [random_observable(rng, dA) for _ in range(n)]
    bob = [random_observable(rng, dB) for _ in range(n)]
    d = min(dA, dB)
    psi = np.zeros(dA * dB, dtype=complex)
    for k in range(d):
        psi[k * dB + k] = 1 / np.sqrt(d)
    value = _value(psi, bell_operator(ineq, alice, bob))
    history = [value]
    min_step = np.inf
    quiet = 0
    converged = False
    rounds = 0
    IA, IB = np.eye(dA), np.eye(dB)
    for rounds in range(1, max_rounds + 1):
        start = value
        # state: top eigenvector of the Bell operator
        w, v = np.linalg.eigh(bell_operator(ineq, alice, bob))
        psi = v[:, -1]
        new = float(w[-1])
        min_step = min(min_step, new - value)
        value = new
        Psi = psi.reshape(dA, dB)
        # Alice: A_x <- sign(Psi K_x^T Psi^dag), K_x = a_x I + sum_y g_xy B_y
        for x in range(n):
            K = ineq.A[x] * IB + sum(ineq.AB[x][y] * bob[y] for y in range(n))
            alice[x] = matrix_sign(Psi @ K.T @ Psi.conj().T)
        new = _value(psi, bell_operator(ineq, alice, bob))
        min_step = min(min_step, new - value)
        value = new
        # Bob: B_y <- sign(Psi^T K'_y^T conj(Psi)), K'_y = b_y I + sum_x g_xy A_x
        for y in range(n):
            K = ineq.B[y] * IA + sum(ineq.AB[x][y] * alice[x] for x in range(n))
            bob[y] = matrix_sign(Psi.T @ K.T @ Psi.conj())
        new = _value(psi, bell_operator(ineq, alice, bob))
        min_step = min(min_step, new - value)
        value = new
        if record:
            history.append(value)
        quiet = quiet + 1 if value - start < tol else 0
        if quiet >= patience:
            converged = True
            break
    # final state step keeps (state, observables) consistent with the value
    w, v = np.linalg.eigh(bell_operator(ineq, alice, bob))
    if w[-1] >= value:
        psi = v[:, -1]
        value = float(w[-1])
    return value, psi, alice, bob, rounds, converged, min_step, history


def _run_packed(args):
    return _single_run(*args)


def seesaw_maximize(ineq, dA=2, dB=None, restarts=None, seed=0, workers=1, record=False, **kw):
    """Best see-saw value over ``restarts`` runs seeded ``seed, seed+1, ...``.

    Ties between restarts go to the lowest index, so the outcome does not
    depend on how runs are scheduled.
    """
    if isinstance(ineq, str):
        ineq = LIBRARY[ineq]
    dB = dA if dB is None else dB
    if dA < 2 or dB < 2:
        raise ValidationError("local dimensions must be at least 2")
    if restarts is None:
        restarts = DEFAULT_RESTARTS.get(max(dA, dB), 200)
    if restarts < 1:
        raise ValidationError("need at least one restart")
    jobs = [(ineq, dA, dB, seed + r) for r in range(restarts)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            runs = list(pool.map(_run_packed, [j + (kw.get("tol", 1e-9), 3, kw.get("max_rounds", 5000), record)
                                               for j in jobs]))
    else:
        runs = [_single_run(*j, record=record, **kw) for j in jobs]
    best = max(range(restarts), key=lambda r: (runs[r][0], -r))
    value, psi, alice, bob, rounds, converged, min_step, history = runs[best]
    log.info("seesaw %s d=(%d,%d): best %.9f at restart %d", ineq.label, dA, dB, value, best)
    state = BipartiteState.pure(psi, (dA, dB))
    from .quantum import schmidt_coefficients

    return SeesawResult(
        value=value, state=state, psi=psi, alice=alice, bob=bob,
        schmidt=schmidt_coefficients(psi / np.linalg.norm(psi), (dA, dB)),
        iterations=rounds, restarts=restarts, best_restart=best, seed=seed,
        converged=converged, min_step=min(r[6] for r in runs), history=history,
    )


def noise_point_value(ineq, alice, bob):
    """LHS on the maximally mixed state with the same observables: Tr(W)/(dA dB)."""
    W = bell_operator(ineq, alice, bob)
    return float(np.real(np.trace(W))) / W.shape[0]


def white_noise_tolerance(ineq, state, alice, bob):
    """Largest ``eps`` with LHS of ``(1-eps) rho + eps I/d`` still at or above the bound.

    The LHS is affine in ``eps``; the noise end uses the true observable
    traces, which are nonzero for unbalanced projectors.
    """
    value = evaluate(ineq, behavior_from_strategy(state, alice, bob))
    if value <= ineq.bound:
        raise NoViolation(f"value {value} does not exceed bound {ineq.bound}")
    v0 = noise_point_value(ineq, alice, bob)
    return (value - ineq.bound) / (value - v0)


@dataclass(frozen=True)
class MeasurementAngles:
    """Alice measures at ``phi[x]``; Bob's setting ``y`` sits at ``beta - phi[y]`` (degrees)."""

    phi: tuple = (168.0, 0.0, 118.0)
    beta: float = 175.0

    def alice(self):
        return [observable_from_angle(p) for p in self.phi]

    def bob(self):
        return [observable_from_angle(self.beta - p) for p in self.phi]

    def singlet_correlators(self):
        """Closed form ``-cos(phi_x + phi_y - beta)`` for the singlet."""
        phi = np.radians(np.asarray(self.phi, dtype=float))
        return -np.cos(phi[:, None] + phi[None, :] - np.radians(self.beta))


FIG4_ANGLES = MeasurementAngles()


def sweep_inequalities(names=None):
    if names is None:
        return [(label, LIBRARY[key]) for label, key in SWEEP_SET]
    return [(LIBRARY[n].label, LIBRARY[n]) for n in names]


def mu_sweep(angles, mus, ineqs=None):
    """Rows ``(mu, label, lhs, bound, violated)`` for the example inequalities."""
    ineqs = sweep_inequalities() if ineqs is None else ineqs
    alice, bob = angles.alice(), angles.bob()
    rows = []
    for mu in mus:
        b = behavior_from_strategy(rho_mu(mu), alice, bob)
        for label, ineq in ineqs:
            lhs = evaluate(ineq, b)
            rows.append({"mu": float(mu), "label": label, "lhs": lhs,
                         "bound": ineq.bound, "violated": lhs > ineq.bound})
    return rows


def closed_form_threshold(angles, ineq):
    """Smallest mu violating ``ineq``: bound / slope.

    Equatorial observables on rho_mu have zero marginals, so only the joint
    coefficients contribute and the LHS is ``mu * slope``.
    """
    E = angles.singlet_correlators()
    slope = float(np.sum(np.asarray(ineq.AB) * E))
    return ineq.bound / slope if slope > 0 else np.inf


def closed_form_lhs(angles, ineq, mu):
    """LHS on rho_mu with equatorial observables; marginals vanish."""
    return mu * float(np.sum(np.asarray(ineq.AB) * angles.singlet_correlators()))


def numeric_threshold(angles, ineq, tol=1e-10):
    """Bisection on the Born-rule sweep for the violation onset."""
    def lhs(mu):
        return evaluate(ineq, behavior_from_strategy(rho_mu(mu), angles.alice(), angles.bob()))

    if lhs(1.0) <= ineq.bound:
        return np.inf
    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if lhs(mid) > ineq.bound:
            hi = mid
        else:
            lo = mid
    return hi
