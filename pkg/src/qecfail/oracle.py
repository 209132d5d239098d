"""Dense state-vector reference for the combinatorial results.

Nothing here uses the classical enumerators: the code projector is built from
Pauli matrices, enumerators come from partial traces, and the detection and
correction experiments are sampled directly.

Qubit ``i`` is bit ``i`` of a computational basis index.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Sequence
from dataclasses import asdict, dataclass

import numpy as np

from .codes import AdditiveCode, CapExceeded
from .gf4 import GF4Vector

DENSE_CAP = 12
SYNDROME_CAP = 10
_BATCH = 4096


def _check_dense(n: int, cap: int) -> None:
    if n > cap:
        raise CapExceeded(f"dense operators on {n} qubits exceed cap n <= {cap}")


def apply_lift(x: GF4Vector, psi: np.ndarray) -> np.ndarray:
    """Apply the Hermitian Pauli lift of ``x`` along the last axis of ``psi``.

    The lift is ``i^|mu & nu| X^mu Z^nu``: X where x has w, Z where W, Y where 1.
    """
    N = psi.shape[-1]
    idx = np.arange(N) ^ x.mu
    sign = 1 - 2 * (np.bitwise_count(idx & x.nu).astype(np.int64) & 1)
    phase = 1j ** ((x.mu & x.nu).bit_count() % 4)
    return phase * sign * psi[..., idx]


def lift_matrix(x: GF4Vector) -> np.ndarray:
    return apply_lift(x, np.eye(2**x.n, dtype=complex).T).T


def _apply_batch(mu: np.ndarray, nu: np.ndarray, psi: np.ndarray) -> np.ndarray:
    """Row ``b`` of ``psi`` hit by the lift of ``(mu[b], nu[b])``."""
    N = psi.shape[1]
    idx = np.arange(N)[None, :] ^ mu[:, None]
    sign = 1 - 2 * (np.bitwise_count(idx & nu[:, None]).astype(np.int64) & 1)
    phase = 1j ** (np.bitwise_count(mu & nu).astype(np.int64) % 4)
    return phase[:, None] * sign * np.take_along_axis(psi, idx, axis=1)


def _conjugate(x: GF4Vector, A: np.ndarray) -> np.ndarray:
    """``L A L`` for the (Hermitian) lift ``L`` of ``x``."""
    LA = apply_lift(x, A.T).T
    return apply_lift(x, LA.conj()).conj()


def build_projector(code: AdditiveCode) -> np.ndarray:
    """Projector onto the joint +1 eigenspace of the generator lifts."""
    _check_dense(code.n, DENSE_CAP)
    for i, g in enumerate(code.gens):
        for h in code.gens[i + 1 :]:
            if g.star(h):
                raise ValueError(f"generator lifts {g} and {h} do not commute")
    N = 2**code.n
    P = np.eye(N, dtype=complex)
    for g in code.gens:
        # P <- (I + G) P / 2
        P = 0.5 * (P + apply_lift(g, P.T).T)
    return P


def reduced(P: np.ndarray, keep: Iterable[int], n: int) -> np.ndarray:
    """Partial trace of ``P`` over every qubit not in ``keep``."""
    keep = sorted(set(keep))
    letters = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
    # axis a of the reshaped tensor is qubit n-1-a
    row = [letters[a] for a in range(n)]
    col = [letters[n + a] for a in range(n)]
    for a in range(n):
        if (n - 1 - a) not in keep:
            col[a] = row[a]
    out_axes = [a for a in range(n) if (n - 1 - a) in keep]
    subscripts = "".join(row) + "".join(col) + "->" + "".join(row[a] for a in out_axes) + "".join(col[a] for a in out_axes)
    t = np.einsum(subscripts, P.reshape((2,) * (2 * n)))
    d = 2 ** len(keep)
    return t.reshape(d, d)


def dense_subset_enumerators(P: np.ndarray, S: Iterable[int], K: int) -> tuple[float, float]:
    """``A'_S = tr[(tr_{S'} P)^2] / K^2`` and ``B'_S = tr[(tr_S P)^2] / K``."""
    n = int(P.shape[0]).bit_length() - 1
    S = set(S)
    rest = set(range(n)) - S
    on_s = reduced(P, S, n)
    on_rest = reduced(P, rest, n)
    a = np.trace(on_s @ on_s).real / K**2
    b = np.trace(on_rest @ on_rest).real / K
    return float(a), float(b)


def syndrome_projectors(code: AdditiveCode, P: np.ndarray | None = None) -> list[np.ndarray]:
    """``P_s = C_s P C_s^dagger`` for each syndrome ``s``, ``C_s`` a coset-representative lift."""
    _check_dense(code.n, SYNDROME_CAP)
    if P is None:
        P = build_projector(code)
    return [_conjugate(code.coset_rep(s, 0), P) for s in range(2 ** len(code.gens))]


def code_basis(P: np.ndarray, K: int, tol: float = 1e-10) -> np.ndarray:
    """Orthonormal basis (columns) of the range of ``P``."""
    w, v = np.linalg.eigh(P)
    basis = v[:, w > 0.5]
    if basis.shape[1] != K:
        raise ValueError(f"projector rank {basis.shape[1]} != K = {K}")
    if not np.allclose(basis.conj().T @ basis, np.eye(K), atol=tol):
        raise ValueError("code basis is not orthonormal")
    return basis


def haar_states(basis: np.ndarray, rng: np.random.Generator, count: int) -> np.ndarray:
    """``count`` uniformly random unit vectors in the span of ``basis`` (rows of the result)."""
    K = basis.shape[1]
    c = rng.standard_normal((count, K)) + 1j * rng.standard_normal((count, K))
    c /= np.linalg.norm(c, axis=1, keepdims=True)
    return c @ basis.T


@dataclass
class MonteCarloReport:
    estimate: float
    stderr: float
    samples: int
    seed: int
    mode: str
    arg: object

    @classmethod
    def from_values(cls, values: np.ndarray, seed: int, mode: str, arg) -> MonteCarloReport:
        n = len(values)
        std = float(np.std(values, ddof=1)) if n > 1 else 0.0
        return cls(float(np.mean(values)), std / np.sqrt(n), n, seed, mode, arg)

    def within(self, exact: float, sigmas: float = 3.0, slack: float = 1e-9) -> bool:
        """``|estimate - exact| <= sigmas * stderr + slack`` (slack absorbs float rounding)."""
        return abs(self.estimate - exact) <= sigmas * self.stderr + slack

    def to_json(self) -> str:
        d = asdict(self)
        if isinstance(d["arg"], (set, frozenset, tuple)):
            d["arg"] = sorted(d["arg"])
        return json.dumps(d)


def _sample_errors(n: int, mode: str, arg, count: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Uniform Pauli errors per mode: supported in ``S``, on a random ``m``-subset, or per-qubit with prob ``p``."""
    if mode == "S":
        S = sorted(set(arg))
        if any(not 0 <= i < n for i in S):
            raise IndexError(f"subset {S} out of range for n = {n}")
        hit = np.zeros((count, n), dtype=bool)
        hit[:, S] = True
    elif mode == "m":
        if not 0 <= arg <= n:
            raise ValueError(f"m = {arg} outside 0..{n}")
        order = np.argsort(rng.random((count, n)), axis=1)
        hit = np.zeros((count, n), dtype=bool)
        np.put_along_axis(hit, order[:, :arg], True, axis=1)
    elif mode == "p":
        if not 0 <= arg <= 1:
            raise ValueError(f"p = {arg} outside [0, 1]")
        hit = rng.random((count, n)) < arg
    else:
        raise ValueError(f"unknown error mode {mode!r}")
    sym = rng.integers(0, 4, size=(count, n))
    sym = np.where(hit, sym, 0)
    weights = 1 << np.arange(n, dtype=np.int64)
    mu = ((sym & 1) * weights).sum(axis=1)
    nu = ((sym >> 1) * weights).sum(axis=1)
    return mu, nu


def _batches(samples: int):
    done = 0
    while done < samples:
        size = min(_BATCH, samples - done)
        yield size
        done += size


def mc_detection(
    code: AdditiveCode, mode: str, arg, samples: int, seed: int
) -> tuple[MonteCarloReport, MonteCarloReport]:
    """Sample the detection experiment.

    Returns estimates of the transmission rate ``<psi|E^+ P E|psi>`` and of the
    fidelity numerator ``|<psi|E|psi>|^2`` (transmission rate times fidelity).
    """
    if samples <= 0:
        raise ValueError("samples must be positive")
    P = build_projector(code)
    basis = code_basis(P, 2**code.k)
    rng = np.random.default_rng(seed)
    t_vals, f_vals = [], []
    for size in _batches(samples):
        psi = haar_states(basis, rng, size)
        mu, nu = _sample_errors(code.n, mode, arg, size, rng)
        phi = _apply_batch(mu, nu, psi)
        t_vals.append(np.sum(np.abs(phi @ basis.conj()) ** 2, axis=1))
        f_vals.append(np.abs(np.sum(psi.conj() * phi, axis=1)) ** 2)
    t = np.concatenate(t_vals)
    f = np.concatenate(f_vals)
    return MonteCarloReport.from_values(t, seed, mode, arg), MonteCarloReport.from_values(f, seed, mode, arg)


def mc_correction(
    code: AdditiveCode, mode: str, arg, recovery: Sequence[int], samples: int, seed: int
) -> MonteCarloReport:
    """Sample syndrome measurement plus recovery and estimate the output fidelity.

    ``recovery[s]`` is the logical class whose coset representative is applied
    after measuring syndrome ``s``.
    """
    if samples <= 0:
        raise ValueError("samples must be positive")
    n_synd = 2 ** len(code.gens)
    if len(recovery) != n_synd:
        raise ValueError(f"recovery map must give a class for each of {n_synd} syndromes, got {len(recovery)}")
    _check_dense(code.n, SYNDROME_CAP)
    P = build_projector(code)
    basis = code_basis(P, 2**code.k)
    # basis of each syndrome space: lift of a syndrome-s representative applied to the code basis
    synd_bases = np.stack([apply_lift(code.coset_rep(s, 0), basis.T).T for s in range(n_synd)])
    fixes = [code.coset_rep(s, int(recovery[s])) for s in range(n_synd)]
    fix_mu = np.array([f.mu for f in fixes], dtype=np.int64)
    fix_nu = np.array([f.nu for f in fixes], dtype=np.int64)
    rng = np.random.default_rng(seed)
    vals = []
    for size in _batches(samples):
        psi = haar_states(basis, rng, size)
        mu, nu = _sample_errors(code.n, mode, arg, size, rng)
        phi = _apply_batch(mu, nu, psi)
        amps = np.einsum("sNK,bN->bsK", synd_bases.conj(), phi)
        probs = np.sum(np.abs(amps) ** 2, axis=2)
        u = rng.random(size)[:, None] * probs.sum(axis=1, keepdims=True)
        s = np.minimum((np.cumsum(probs, axis=1) < u).sum(axis=1), n_synd - 1)
        proj = np.einsum("bNK,bK->bN", synd_bases[s], amps[np.arange(size), s])
        proj /= np.sqrt(probs[np.arange(size), s])[:, None]
        out = _apply_batch(fix_mu[s], fix_nu[s], proj)
        vals.append(np.abs(np.sum(psi.conj() * out, axis=1)) ** 2)
    return MonteCarloReport.from_values(np.concatenate(vals), seed, mode, arg)
