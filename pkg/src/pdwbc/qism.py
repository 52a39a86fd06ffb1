"""Exact small-dimension checks of the algebraic machinery behind the determinant formulas.

Spin basis: bit value 0 is spin up (no line), 1 is spin down (line). Multi-site
operators are dense ``numpy`` object arrays of Fractions indexed by bitmask states;
qubit ``i`` is bit ``i``.

The L-operator at a vertex is ``b + c P`` with ``P`` the swap of its two spaces.
Its "in" indices are the top/right edges, "out" the bottom/left ones, so a vertical
monodromy sweeps a row right to left and a horizontal one sweeps a column top to bottom.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DomainError, ResourceGuardError
from .lattice_oracle import LatticeSpec, b_weight, c_weight
from .scalar import as_scalar

MAX_BRACKET_N = 8


def _zeros(dim: int) -> np.ndarray:
    return np.full((dim, dim), Fraction(0), dtype=object)


def _identity(dim: int) -> np.ndarray:
    m = _zeros(dim)
    for i in range(dim):
        m[i, i] = Fraction(1)
    return m


def _swap_bits(x: int, p: int, q: int) -> int:
    bp, bq = (x >> p) & 1, (x >> q) & 1
    if bp != bq:
        x ^= (1 << p) | (1 << q)
    return x


def _id_plus_swap(diag, off, p: int, q: int, n_qubits: int) -> np.ndarray:
    """Operator ``diag * Id + off * P_pq`` on ``n_qubits`` qubits."""
    dim = 1 << n_qubits
    m = _zeros(dim)
    for x in range(dim):
        m[x, x] += diag
        m[_swap_bits(x, p, q), x] += off
    return m


def _weights(lam, nu) -> tuple[Fraction, Fraction]:
    if lam == nu:
        # b = 0 is allowed but degenerate: the vertex can only turn lines
        pass
    return b_weight(lam, nu), c_weight(lam, nu)


def build_L(lam, nu) -> np.ndarray:
    """4x4 L-operator ``b(lam, nu) Id + c(lam, nu) P``."""
    b, c = _weights(as_scalar(lam), as_scalar(nu))
    return _id_plus_swap(b, c, 0, 1, 2)


def f_fun(mu, nu) -> Fraction:
    if mu == nu:
        raise DomainError("f(mu, nu) has a pole at mu = nu")
    return 1 + 1 / Fraction(mu - nu)


def g_fun(mu, nu) -> Fraction:
    if mu == nu:
        raise DomainError("g(mu, nu) has a pole at mu = nu")
    return 1 / Fraction(mu - nu)


def build_R(nu, mu) -> np.ndarray:
    """R-matrix ``R(nu, mu) = Id + g(mu, nu) P``: ``f(mu, nu)`` on the aligned states, ``1``/``g`` in the middle block."""
    nu, mu = as_scalar(nu), as_scalar(mu)
    return _id_plus_swap(Fraction(1), g_fun(mu, nu), 0, 1, 2)


def verify_rll(lam, nu, mu) -> bool:
    """``R(nu,mu) L_k(lam,nu) L_k'(lam,mu) = L_k'(lam,mu) L_k(lam,nu) R(nu,mu)`` on ``V_k (x) V_k' (x) H``."""
    lam, nu, mu = as_scalar(lam), as_scalar(nu), as_scalar(mu)
    R = _id_plus_swap(Fraction(1), g_fun(mu, nu), 0, 1, 3)
    bk, ck = _weights(lam, nu)
    bq, cq = _weights(lam, mu)
    Lk = _id_plus_swap(bk, ck, 0, 2, 3)
    Lq = _id_plus_swap(bq, cq, 1, 2, 3)
    return bool(np.array_equal(R.dot(Lk).dot(Lq), Lq.dot(Lk).dot(R)))


# ---------------------------------------------------------------------------
# Monodromy matrices
# ---------------------------------------------------------------------------


def monodromy(aux_param, site_params: Sequence, direction: str, aux_qubit: int = 0,
              site_offset: int = 1, n_qubits: int | None = None) -> np.ndarray:
    """Full monodromy operator with one auxiliary qubit and ``len(site_params)`` sites.

    ``direction="H"``: auxiliary column space carrying ``nu = aux_param``, sites are rows
    with ``lambda_j``; product ``L_s ... L_1``. ``direction="V"``: auxiliary row space
    carrying ``lambda = aux_param``, sites are columns with ``nu_k``; product ``L_1 ... L_N``.
    """
    n = len(site_params)
    n_qubits = n + 1 if n_qubits is None else n_qubits
    aux = as_scalar(aux_param)
    factors = []
    for i, p in enumerate(site_params):
        p = as_scalar(p)
        lam, nu = (p, aux) if direction == "H" else (aux, p)
        b, c = _weights(lam, nu)
        factors.append(_id_plus_swap(b, c, aux_qubit, site_offset + i, n_qubits))
    if direction == "H":
        factors.reverse()
    elif direction != "V":
        raise ValueError("direction must be 'H' or 'V'")
    out = _identity(1 << n_qubits)
    for f in factors:
        out = out.dot(f)
    return out


def monodromy_blocks(aux_param, site_params: Sequence, direction: str) -> dict[str, np.ndarray]:
    """``A, B, C, D`` blocks (``2^n x 2^n``) of the monodromy, aux qubit indexed ``[out, in]``."""
    T = monodromy(aux_param, site_params, direction)
    n = len(site_params)
    dim = 1 << n
    blocks = {}
    for name, (a_out, a_in) in {"A": (0, 0), "B": (0, 1), "C": (1, 0), "D": (1, 1)}.items():
        m = _zeros(dim)
        for i in range(dim):
            for j in range(dim):
                m[i, j] = T[(i << 1) | a_out, (j << 1) | a_in]
        blocks[name] = m
    return blocks


def verify_ab_algebra(site_params: Sequence, nu, mu, direction: str = "H") -> bool:
    """Check ``[A,A] = [B,B] = 0`` and both exchange relations between ``A`` and ``B``.

    For the horizontal monodromy the relations hold with ``f(nu, mu)``, ``g(mu, nu)``.
    The vertical monodromy depends on ``lambda - nu_k`` instead of ``lambda_j - nu``, so
    its spectral parameter enters with the opposite sign; it is checked with the
    arguments negated.
    """
    nu, mu = as_scalar(nu), as_scalar(mu)
    if nu == mu:
        raise DomainError("nu = mu is a pole of g")
    if len(site_params) > 4:
        raise ResourceGuardError("A/B algebra check limited to 4 sites")
    x, y = (nu, mu) if direction == "H" else (-nu, -mu)
    Tn = monodromy_blocks(nu, site_params, direction)
    Tm = monodromy_blocks(mu, site_params, direction)
    An, Bn, Am, Bm = Tn["A"], Tn["B"], Tm["A"], Tm["B"]
    f, g = f_fun(x, y), g_fun(y, x)
    checks = [
        np.array_equal(An.dot(Am), Am.dot(An)),
        np.array_equal(Bn.dot(Bm), Bm.dot(Bn)),
        np.array_equal(An.dot(Bm), f * Bm.dot(An) + g * Bn.dot(Am)),
        np.array_equal(Bn.dot(Am), f * Am.dot(Bn) + g * An.dot(Bm)),
    ]
    return all(checks)


def verify_rtt(site_params: Sequence, nu, mu, K_left=None, K_right=None) -> bool:
    """RTT relation for the horizontal monodromy, optionally twisted as ``K_L T K_R``."""
    nu, mu = as_scalar(nu), as_scalar(mu)
    n = len(site_params)
    if n > 3:
        raise ResourceGuardError("RTT check limited to 3 sites")
    nq = n + 2
    Tk = monodromy(nu, site_params, "H", aux_qubit=0, site_offset=2, n_qubits=nq)
    Tq = monodromy(mu, site_params, "H", aux_qubit=1, site_offset=2, n_qubits=nq)
    if K_left is not None or K_right is not None:
        KL = _embed_1q(K_left, 0, nq), _embed_1q(K_left, 1, nq)
        KR = _embed_1q(K_right, 0, nq), _embed_1q(K_right, 1, nq)
        Tk = KL[0].dot(Tk).dot(KR[0])
        Tq = KL[1].dot(Tq).dot(KR[1])
    R = _id_plus_swap(Fraction(1), g_fun(mu, nu), 0, 1, nq)
    return bool(np.array_equal(R.dot(Tk).dot(Tq), Tq.dot(Tk).dot(R)))


def _embed_1q(K, q: int, n_qubits: int) -> np.ndarray:
    dim = 1 << n_qubits
    if K is None:
        return _identity(dim)
    m = _zeros(dim)
    for x in range(dim):
        bit = (x >> q) & 1
        for out in (0, 1):
            y = (x & ~(1 << q)) | (out << q)
            m[y, x] += as_scalar(K[out][bit])
    return m


def random_rational(rng: random.Random, bound: int = 20) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


# ---------------------------------------------------------------------------
# Partition function as a matrix element
# ---------------------------------------------------------------------------


def _sweep(vec: dict, aux_param, site_params: Sequence, direction: str,
           aux_in: Sequence[int], aux_out: int) -> dict:
    """Apply ``sum_{a in aux_in} T[aux_out, a]`` to a sparse state vector over the sites.

    Factors are applied in reverse operator order (rightmost first).
    """
    aux = as_scalar(aux_param)
    order = range(len(site_params))
    order = order if direction == "H" else reversed(order)
    state = {}
    for v, amp in vec.items():
        for a in aux_in:
            state[(v, a)] = state.get((v, a), Fraction(0)) + amp
    for i in order:
        p = as_scalar(site_params[i])
        lam, nu = (p, aux) if direction == "H" else (aux, p)
        b, c = _weights(lam, nu)
        nxt: dict = {}
        for (v, h), amp in state.items():
            bit = (v >> i) & 1
            if bit == h:
                nxt[(v, h)] = nxt.get((v, h), Fraction(0)) + amp
            else:
                key_b = (v, h)
                key_c = (v ^ (1 << i), bit)
                nxt[key_b] = nxt.get(key_b, Fraction(0)) + b * amp
                nxt[key_c] = nxt.get(key_c, Fraction(0)) + c * amp
        state = nxt
    out: dict = {}
    for (v, h), amp in state.items():
        if h == aux_out and amp:
            out[v] = out.get(v, Fraction(0)) + amp
    return out


def _params(spec: LatticeSpec) -> tuple[list, list]:
    if spec.t is None:
        return list(spec.lambdas), list(spec.nus)
    if spec.t == 0:
        # b = 0 needs lambda = nu; keep weights exact by using lambda = 0, nu = 0
        return [Fraction(0)] * spec.s, [Fraction(0)] * spec.N
    lam = spec.t / (1 - spec.t)
    return [lam] * spec.s, [Fraction(0)] * spec.N


def z_bracket(spec: LatticeSpec) -> Fraction:
    """``<up...up| C(lambda_s) ... C(lambda_1) |free>`` over the column spaces."""
    if spec.N > MAX_BRACKET_N:
        raise ResourceGuardError(f"bracket evaluation limited to N <= {MAX_BRACKET_N}")
    lams, nus = _params(spec)
    vec = {v: Fraction(1) for v in range(1 << spec.N)}
    for lam in lams:
        vec = _sweep(vec, lam, nus, "V", aux_in=(0,), aux_out=1)
    return vec.get(0, Fraction(0))


def z_bracket_horizontal(spec: LatticeSpec, a_only_column: int | None = None) -> Fraction:
    """``<down...down| prod_k (A(nu_k) + B(nu_k)) |up...up>`` over the row spaces.

    With ``a_only_column = m`` the factor at column ``m`` is ``A`` alone, which pins
    an up arrow (no line) on the top edge of that column.
    """
    if spec.s > MAX_BRACKET_N:
        raise ResourceGuardError(f"bracket evaluation limited to s <= {MAX_BRACKET_N}")
    lams, nus = _params(spec)
    vec = {0: Fraction(1)}
    for k in range(spec.N, 0, -1):
        aux_in = (0,) if k == a_only_column else (0, 1)
        vec = _sweep(vec, nus[k - 1], lams, "H", aux_in=aux_in, aux_out=0)
    return vec.get((1 << spec.s) - 1, Fraction(0))


def g_up_bracket(spec: LatticeSpec, m: int) -> Fraction:
    """Probability of an up arrow (no line) at the top of column ``m``."""
    if not 1 <= m <= spec.N:
        raise DomainError(f"column m={m} outside 1..{spec.N}")
    return z_bracket_horizontal(spec, a_only_column=m) / z_bracket_horizontal(spec)
