"""Explicit readout-time schedules for the strongly cospectral families.

Three constructions, one per cospectral kind:

* kind C (two leaves of one stem): trees (q, a) = ((0, 2), (k^2, k^2 - 1))
  with k odd, and the three-class extension ((0, 2, q3), (a1, a2, a3)); the
  readout times are alpha_n*pi/sqrt(2) for the odd continued-fraction
  convergents alpha_n/beta_n of sqrt(2) (the Pell sequences),
* kind A (twin stems): trees ((q,), (2,)); readout times D_l*pi/sqrt(q)
  where N_l/D_l are convergents of sqrt((q+2)/q) generated by an exact
  2x2 integer matrix recurrence,
* kind B (two twinless leaves at distance 4): trees ((1, q2), (2, q2-2));
  no geometric schedule exists, so the module exposes the closed-form
  search bound, a direct phase-alignment scan, and a coupled choice of
  (q2, time) that makes both phases align at once.

All integer sequences are exact (arbitrary precision); every predicted
fidelity evaluates its defect angle with mpmath before the final cosine, so
predictions stay meaningful long after doubles would have lost the phase.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import mpmath
import numpy as np

from .errors import (
    ConditionsViolated,
    EpsilonRange,
    EvenK,
    NoPgst,
    ParityViolation,
    UnknownFamily,
)
from .exact import EigenvalueLike, PiTime, Radical, nearest_integer_distance
from .tree import TreeParams, build_tree


# ---------------------------------------------------------------------------
# Pell convergents of sqrt(2)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PellConvergent:
    """n-th convergent alpha/beta of sqrt(2) with defect delta = beta*sqrt(2) - alpha."""

    n: int
    alpha: int
    beta: int
    delta: float


def pell_convergents(n_max: int) -> list[PellConvergent]:
    """Convergents 1..n_max via x_{n+1} = 2 x_n + x_{n-1}.

    alpha is odd for every n; beta is odd exactly for odd n.  The defect
    satisfies beta*sqrt(2) - alpha = (-1)^(n+1) (sqrt(2)-1)^n and is
    evaluated in extended precision.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    alphas, betas = [1, 3], [1, 2]
    while len(alphas) < n_max:
        alphas.append(2 * alphas[-1] + alphas[-2])
        betas.append(2 * betas[-1] + betas[-2])
    out = []
    with mpmath.workdps(len(str(alphas[n_max - 1])) + 40):
        base = mpmath.sqrt(2) - 1
        for i in range(n_max):
            n = i + 1
            delta = float((-1) ** (n + 1) * base**n)
            out.append(PellConvergent(n=n, alpha=alphas[i], beta=betas[i], delta=delta))
    return out


# ---------------------------------------------------------------------------
# Schedules on the sqrt(2) lattice (kind C)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReadoutStep:
    index: int
    time: PiTime
    predicted_fidelity: float
    predicted_sensitivity: float | None


@dataclass(frozen=True)
class ReadoutSchedule:
    family: str
    detail: dict
    steps: tuple[ReadoutStep, ...]


def type_c_params(k: int) -> TreeParams:
    """The two-class tree carrying the kind-C schedule: a = (k^2, k^2 - 1)."""
    return TreeParams.of((0, 2), (k * k, k * k - 1))


def type_c_leaf_pair(p: TreeParams) -> tuple[int, int]:
    """The two leaves of the first 2-leaf stem."""
    tree = build_tree(p)
    stem_leaves = tree.leaves_of_stem()
    for s, j in tree.stems:
        if p.q[j] == 2:
            l1, l2 = stem_leaves[s]
            return l1, l2
    raise UnknownFamily(f"no 2-leaf stem in {p}")


def _gamma(n: int) -> mpmath.mpf:
    return (mpmath.sqrt(2) - 1) ** n / mpmath.sqrt(2)


def schedule_type_c(k: int, n_list) -> ReadoutSchedule:
    """Readout times alpha_n*pi/sqrt(2) with the convergent fidelity form.

    Prediction: f = (1 - (1 - cos(gamma_n*pi)) / (2k^2 - 1))^2 with
    gamma_n = (sqrt(2)-1)^n / sqrt(2); this is the denominator that direct
    evaluation confirms (see type_c_fidelity_general for the other printed
    variant).  The predicted sensitivity is the closed form
    2 sin(gamma pi) (2k^2 - 2 + cos(gamma pi)) / (2k^2 - 1)^2.
    """
    if k % 2 == 0:
        raise ParityViolation(f"k must be odd, got {k}")
    if k <= 1:
        raise ValueError(f"k must exceed 1, got {k}")
    n_list = [int(n) for n in n_list]
    if any(n % 2 == 0 for n in n_list):
        raise ParityViolation(f"schedule indices must be odd, got {n_list}")
    if not n_list:
        return ReadoutSchedule(family="type_c", detail={"k": k}, steps=())
    convergents = pell_convergents(max(n_list))
    steps = []
    denom = 2 * k * k - 1
    with mpmath.workdps(max(len(str(c.alpha)) for c in convergents) + 40):
        for n in n_list:
            conv = convergents[n - 1]
            g = _gamma(n)
            cg = mpmath.cos(g * mpmath.pi)
            fid = float((1 - (1 - cg) / denom) ** 2)
            sens = float(2 * mpmath.sin(g * mpmath.pi) * (denom - 1 + cg) / denom**2)
            steps.append(
                ReadoutStep(
                    index=n,
                    time=PiTime.over_sqrt(conv.alpha, 2),
                    predicted_fidelity=fid,
                    predicted_sensitivity=sens,
                )
            )
    return ReadoutSchedule(family="type_c", detail={"k": k}, steps=tuple(steps))


def type_c_fidelity_general(k: int, mu: int, nu: int) -> float:
    """Fidelity estimate at mu*pi/sqrt(2) for arbitrary odd approximants.

    Evaluates the general-form expression with denominator 2(k^2 - 1) for
    odd mu, nu and defect nu*sqrt(2) - mu.  At the convergents this differs
    from schedule_type_c's 2k^2 - 1 denominator; direct spectral evaluation
    matches the latter, so treat this variant as an O(k^-4)-biased estimate
    (tests/test_readout.py carries the comparison).
    """
    if k % 2 == 0 or mu % 2 == 0 or nu % 2 == 0:
        raise ParityViolation("k, mu and nu must all be odd")
    with mpmath.workdps(len(str(abs(mu) + abs(nu))) + 40):
        delta = nu * mpmath.sqrt(2) - mu
        c = mpmath.cos(delta * mpmath.pi / mpmath.sqrt(2))
        return float((1 - (1 - c) / (2 * (k * k - 1))) ** 2)


# ---------------------------------------------------------------------------
# Three-class family (kind C with t = 3)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class T3Family:
    """Three-class tree whose leaf-pair support is {0, +-1, +-sqrt(2), +-k2*sqrt(2), +-k3*sqrt(2)}."""

    k2: int
    k3: int
    q3: int
    a1: int
    a2: int
    a3: int

    @classmethod
    def build(cls, k2: int, k3: int, q3: int) -> "T3Family":
        """Validate conditions i)-iv) and fill in the stem counts."""
        if not (2 < k2 < k3):
            raise ValueError(f"need 2 < k2 < k3, got {k2}, {k3}")
        failed = []
        if not (2 * k2 * k2 < q3 < 2 * k3 * k3):
            failed.append("i")
        num1 = 2 * k2 * k2 * k3 * k3
        num2 = 2 * (k2 * k2 - 1) * (k3 * k3 - 1)
        if q3 <= 0 or num1 % q3 != 0:
            failed.append("ii")
        if q3 == 2 or num2 % (q3 - 2) != 0:
            failed.append("iii")
        if failed:
            raise ConditionsViolated(failed)
        a1 = num1 // q3
        a2 = num2 // (q3 - 2)
        a3 = (q3 - 1) * (a1 - a2 - 1)
        if a1 < 1 or a2 < 1 or a3 < 1:
            raise ConditionsViolated(["iv"])
        return cls(k2=k2, k3=k3, q3=q3, a1=a1, a2=a2, a3=a3)

    @property
    def params(self) -> TreeParams:
        return TreeParams.of((0, 2, self.q3), (self.a1, self.a2, self.a3))


def search_t3(k2: int, k3: int) -> list[T3Family]:
    """All q3 in (2 k2^2, 2 k3^2) passing the divisibility/positivity checks."""
    if not (2 < k2 < k3):
        raise ValueError(f"need 2 < k2 < k3, got {k2}, {k3}")
    out = []
    for q3 in range(2 * k2 * k2 + 1, 2 * k3 * k3):
        try:
            out.append(T3Family.build(k2, k3, q3))
        except ConditionsViolated:
            continue
    return out


def schedule_t3(fam: T3Family, n_list) -> ReadoutSchedule:
    """Readout times alpha_n*pi/sqrt(2) on the three-class tree."""
    if fam.k2 % 2 == 0 or fam.k3 % 2 == 0:
        raise EvenK(f"no PGST when k2 or k3 is even, got ({fam.k2}, {fam.k3})")
    n_list = [int(n) for n in n_list]
    if any(n % 2 == 0 for n in n_list):
        raise ParityViolation(f"schedule indices must be odd, got {n_list}")
    if not n_list:
        return ReadoutSchedule(family="t3", detail={"k2": fam.k2, "k3": fam.k3, "q3": fam.q3}, steps=())
    convergents = pell_convergents(max(n_list))
    coeff = mpmath.mpf(fam.q3 - 1) / ((2 * fam.k2**2 - 1) * (2 * fam.k3**2 - 1))
    steps = []
    with mpmath.workdps(max(len(str(c.alpha)) for c in convergents) + 40):
        for n in n_list:
            conv = convergents[n - 1]
            cg = mpmath.cos(_gamma(n) * mpmath.pi)
            fid = float((1 - coeff * (1 - cg)) ** 2)
            steps.append(
                ReadoutStep(
                    index=n,
                    time=PiTime.over_sqrt(conv.alpha, 2),
                    predicted_fidelity=fid,
                    predicted_sensitivity=None,
                )
            )
    return ReadoutSchedule(
        family="t3", detail={"k2": fam.k2, "k3": fam.k3, "q3": fam.q3}, steps=tuple(steps)
    )


# ---------------------------------------------------------------------------
# Twin-stem schedule (kind A) and the P5 end-to-end remark
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QReadoutStep:
    """One row of the stem-to-stem schedule on the tree ((q,), (2,))."""

    q: int
    ell: int
    big_n: int
    big_d: int
    delta: float
    tau: PiTime
    predicted_fidelity: float


def q_readout_params(q: int) -> TreeParams:
    return TreeParams.of((q,), (2,))


def q_readout_sequence(q: int, ell_max: int) -> list[QReadoutStep]:
    """Exact integer convergents N_l/D_l of sqrt((q+2)/q) and their times.

    Both sequences come from powers of the matrix [[2q+1, q], [2, 1]]
    applied to (q+1, 1) and (q, 1); N_l and D_l are read off after 2l
    applications.  Parity alternates with q: q odd gives N even, D odd and
    q even gives N odd, D even (asserted).  The defect
    delta_l = D_l*sqrt((q+2)/q) - N_l shrinks geometrically; the
    stem-to-stem fidelity at tau_l = D_l*pi/sqrt(q) is
    (1 + cos(delta_l*pi))^2 / 4.
    """
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    if ell_max < 0:
        raise ValueError(f"ell_max must be >= 0, got {ell_max}")
    xn, xd = q + 1, 1
    yn, yd = q, 1
    steps = []
    for ell in range(ell_max + 1):
        big_n, big_d = xn, yn
        if q % 2 == 1:
            assert big_n % 2 == 0 and big_d % 2 == 1, (q, ell, big_n, big_d)
        else:
            assert big_n % 2 == 1 and big_d % 2 == 0, (q, ell, big_n, big_d)
        with mpmath.workdps(len(str(big_n)) + 40):
            delta = mpmath.mpf(big_d) * mpmath.sqrt(mpmath.mpf(q + 2) / q) - big_n
            fid = float((1 + mpmath.cos(delta * mpmath.pi)) ** 2 / 4)
            delta_f = float(delta)
        steps.append(
            QReadoutStep(
                q=q,
                ell=ell,
                big_n=big_n,
                big_d=big_d,
                delta=delta_f,
                tau=PiTime.over_sqrt(big_d, q),
                predicted_fidelity=fid,
            )
        )
        for _ in range(2):
            xn, xd = (2 * q + 1) * xn + q * xd, 2 * xn + xd
            yn, yd = (2 * q + 1) * yn + q * yd, 2 * yn + yd
    return steps


def q_readout_sensitivity(step: QReadoutStep) -> float:
    """Closed-form df/dt at tau_l: -sin(d pi)(1 + cos(d pi)) sqrt(q+2)/2."""
    d = step.delta
    return -math.sin(d * math.pi) * (1 + math.cos(d * math.pi)) * math.sqrt(step.q + 2) / 2


def q_readout_schedule(q: int, ell_max: int) -> ReadoutSchedule:
    steps = tuple(
        ReadoutStep(
            index=s.ell,
            time=s.tau,
            predicted_fidelity=s.predicted_fidelity,
            predicted_sensitivity=q_readout_sensitivity(s),
        )
        for s in q_readout_sequence(q, ell_max)
    )
    return ReadoutSchedule(family="q_readout", detail={"q": q}, steps=steps)


def p5_leaf_fidelity(ell: int) -> tuple[PiTime, float]:
    """End-to-end fidelity of the 5-vertex path at time D_l*pi.

    The q = 1 stem schedule also serves the path's end vertices with value
    (5/6 + cos(delta_l*pi)/6)^2.
    """
    step = q_readout_sequence(1, ell)[ell]
    with mpmath.workdps(len(str(step.big_d)) + 40):
        delta = mpmath.mpf(step.big_d) * mpmath.sqrt(3) - step.big_n
        value = float((mpmath.mpf(5) / 6 + mpmath.cos(delta * mpmath.pi) / 6) ** 2)
    return PiTime.multiple_of_pi(step.big_d), value


def p5_leaf_schedule(ell_max: int) -> ReadoutSchedule:
    steps = []
    for s in q_readout_sequence(1, ell_max):
        d = s.delta
        fid = (5 / 6 + math.cos(d * math.pi) / 6) ** 2
        sens = -math.sqrt(3) * math.sin(d * math.pi) * (5 + math.cos(d * math.pi)) / 18
        steps.append(
            ReadoutStep(
                index=s.ell,
                time=PiTime.multiple_of_pi(s.big_d),
                predicted_fidelity=fid,
                predicted_sensitivity=sens,
            )
        )
    return ReadoutSchedule(family="p5_leaf", detail={}, steps=tuple(steps))


# ---------------------------------------------------------------------------
# Distance-4 leaves (kind B)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Dist4Analysis:
    """Support, PGST verdict and search bounds for the distance-4 leaf family."""

    q2: int
    a2: int
    support: tuple[Radical, ...]
    pgst: bool
    epsilon: float
    fm_r_bound: float
    fm_time_bound: float


def dist4_params(q2: int) -> TreeParams:
    return TreeParams.of((1, q2), (2, q2 - 2))


def dist4_leaf_pair(q2: int) -> tuple[int, int]:
    """The two twinless leaves (children of the two single-leaf stems)."""
    tree = build_tree(dist4_params(q2))
    stem_leaves = tree.leaves_of_stem()
    singles = [s for s, j in tree.stems if tree.params.q[j] == 1]
    return stem_leaves[singles[0]][0], stem_leaves[singles[1]][0]


def _check_epsilon(epsilon: float) -> None:
    if not (0.0 < epsilon < 0.5):
        raise EpsilonRange(f"epsilon must be in (0, 1/2), got {epsilon}")


def dist4_analyze(q2: int, epsilon: float) -> Dist4Analysis:
    """Support set, perfect-square PGST criterion and the closed-form bound.

    The time bound 2^24 3^11 pi^4 (2 q2 - 1)^7 / eps^3 + pi is reported as a
    formula; it is astronomically larger than any feasible scan, which is
    the point of the direct search below.
    """
    if q2 < 3:
        raise ValueError(f"q2 must be >= 3, got {q2}")
    _check_epsilon(epsilon)
    m = 2 * q2 - 1
    support = tuple(
        sorted(
            [
                Radical.zero(),
                Radical.integer(1),
                Radical.integer(-1),
                Radical.from_square(2),
                Radical.from_square(2, negative=True),
                Radical.from_square(m),
                Radical.from_square(m, negative=True),
            ],
            key=lambda r: r.value,
        )
    )
    pgst = math.isqrt(m) ** 2 != m
    r_bound = float(2**23 * 3**11 * m**7) * math.pi**3 / epsilon**3
    return Dist4Analysis(
        q2=q2,
        a2=q2 - 2,
        support=support,
        pgst=pgst,
        epsilon=epsilon,
        fm_r_bound=r_bound,
        fm_time_bound=2.0 * math.pi * r_bound + math.pi,
    )


@dataclass(frozen=True)
class Dist4Readout:
    """Best phase-aligned odd-multiple readout found by direct scan."""

    q2: int
    r: int
    time: PiTime
    phase_error_sqrt2: float
    phase_error_big: float
    eps_prime: float
    certified_bound: float | None
    achieved_fidelity: float
    meets_target: bool


def dist4_search_readout(q2: int, epsilon: float, r_max: int) -> Dist4Readout:
    """Scan times (2r+1)*pi, r <= r_max, for simultaneous phase alignment.

    Minimizes the larger of the two nearest-integer defects of
    (2r+1)*sqrt(2)/2 and (2r+1)*sqrt(2 q2 - 1)/2 (ties: smallest r).  The
    certified bound is the alignment lemma's 1 - 2 eps' with
    eps' = 2 pi * (worst defect), reported only when eps' < 1/2; the
    achieved fidelity is evaluated directly on the tree.
    """
    _check_epsilon(epsilon)
    analysis = dist4_analyze(q2, epsilon)
    if not analysis.pgst:
        raise NoPgst(f"2*q2 - 1 = {2 * q2 - 1} is a perfect square; no PGST for q2={q2}")
    if r_max < 0:
        raise ValueError("r_max must be >= 0")
    odd = 2 * np.arange(r_max + 1, dtype=float) + 1.0
    err = np.maximum(
        np.abs(odd * math.sqrt(2) / 2 - np.rint(odd * math.sqrt(2) / 2)),
        np.abs(odd * math.sqrt(2 * q2 - 1) / 2 - np.rint(odd * math.sqrt(2 * q2 - 1) / 2)),
    )
    r = int(np.argmin(err))
    m = 2 * r + 1
    e2 = float(abs(m * math.sqrt(2) / 2 - round(m * math.sqrt(2) / 2)))
    eb = float(abs(m * math.sqrt(2 * q2 - 1) / 2 - round(m * math.sqrt(2 * q2 - 1) / 2)))
    eps_prime = 2.0 * math.pi * max(e2, eb)
    from .evolution import fidelity

    x, y = dist4_leaf_pair(q2)
    achieved = fidelity(dist4_params(q2), x, y, PiTime.multiple_of_pi(m))
    return Dist4Readout(
        q2=q2,
        r=r,
        time=PiTime.multiple_of_pi(m),
        phase_error_sqrt2=e2,
        phase_error_big=eb,
        eps_prime=eps_prime,
        certified_bound=(1.0 - 2.0 * eps_prime) if eps_prime < 0.5 else None,
        achieved_fidelity=achieved,
        meets_target=eps_prime <= epsilon,
    )


@dataclass(frozen=True)
class CoupledStep:
    """Distance-4 tree and readout time chosen together from the convergents."""

    n: int
    q2: int
    time: PiTime
    predicted_fidelity: float


def coupled_q2_schedule(n: int) -> CoupledStep:
    """q2 = ((beta_n + beta_{n+1})^2 + 3)/2 with readout (beta_n + beta_{n+1})*pi.

    b = beta_n + beta_{n+1} is odd, b*sqrt(2) misses an integer by
    (2 - sqrt(2))(sqrt(2)-1)^n and b*sqrt(2 q2 - 1) misses one by
    1/(b*sqrt(b^2+2) + b^2 + 1), so both cosines at the readout time have
    explicit small-angle reductions.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    convergents = pell_convergents(n + 1)
    b = convergents[n - 1].beta + convergents[n].beta
    q2 = (b * b + 3) // 2
    with mpmath.workdps(len(str(b)) + 40):
        c2 = mpmath.cos((2 - mpmath.sqrt(2)) * mpmath.pi * (mpmath.sqrt(2) - 1) ** n)
        cbig = mpmath.cos(mpmath.pi / (b * mpmath.sqrt(b * b + 2) + b * b + 1))
        fid = float(
            (
                1
                - mpmath.mpf(q2 - 2) / (4 * q2 - 6) * (1 - c2)
                - (1 - cbig) / ((4 * q2 - 2) * (2 * q2 - 3))
            )
            ** 2
        )
    return CoupledStep(n=n, q2=q2, time=PiTime.multiple_of_pi(b), predicted_fidelity=fid)


# ---------------------------------------------------------------------------
# Certified fidelity lower bound from simultaneous phase alignment
# ---------------------------------------------------------------------------

def certified_lower_bound(
    sigma_plus: Iterable[EigenvalueLike],
    sigma_minus: Iterable[EigenvalueLike],
    tau: float,
    epsilon: float,
) -> float | None:
    """1 - 2*epsilon at time 2*pi*tau, or None when alignment fails.

    Certification requires every sigma_plus eigenvalue to satisfy
    |tau*lam - n| < eps/(2 pi) for some integer n, and every sigma_minus
    eigenvalue the half-integer analogue.  Distances are measured in
    extended precision so exact radicals keep their meaning at large tau.
    """
    _check_epsilon(epsilon)
    with mpmath.workdps(60):
        thr = mpmath.mpf(epsilon) / (2 * mpmath.pi)
        tau_mp = mpmath.mpf(tau)
        for lam in sigma_plus:
            x = tau_mp * (lam.mpf() if isinstance(lam, Radical) else mpmath.mpf(lam))
            if nearest_integer_distance(x) >= thr:
                return None
        for lam in sigma_minus:
            x = tau_mp * (lam.mpf() if isinstance(lam, Radical) else mpmath.mpf(lam))
            if nearest_integer_distance(x - mpmath.mpf(1) / 2) >= thr:
                return None
    return 1.0 - 2.0 * epsilon


# ---------------------------------------------------------------------------
# Family recognition from raw tree parameters (CLI support)
# ---------------------------------------------------------------------------

def type_c_k_from_params(p: TreeParams) -> int:
    if p.q == (0, 2):
        k = math.isqrt(p.a[0])
        if k * k == p.a[0] and p.a[1] == p.a[0] - 1 and k > 1:
            return k
    raise UnknownFamily(f"params {p} do not match the kind-C convergent family")


def t3_from_params(p: TreeParams) -> T3Family:
    if p.t == 3 and p.q[0] == 0 and p.q[1] == 2:
        q3, (a1, a2, _a3) = p.q[2], p.a
        # k2^2 k3^2 and k2^2 + k3^2 from the stem counts, then unwind.
        twice_prod = a1 * q3
        twice_rest = a2 * (q3 - 2)
        if twice_prod % 2 == 0 and twice_rest % 2 == 0:
            prod = twice_prod // 2
            ssum = prod + 1 - twice_rest // 2
            disc = ssum * ssum - 4 * prod
            if disc >= 0 and math.isqrt(disc) ** 2 == disc:
                root = math.isqrt(disc)
                z2, z3 = (ssum - root) // 2, (ssum + root) // 2
                k2, k3 = math.isqrt(z2), math.isqrt(z3)
                if k2 * k2 == z2 and k3 * k3 == z3 and 2 < k2 < k3:
                    fam = T3Family.build(k2, k3, q3)
                    if fam.params == p:
                        return fam
    raise UnknownFamily(f"params {p} do not match the three-class family")


def q_from_params(p: TreeParams) -> int:
    if p.t == 1 and p.a == (2,) and p.q[0] >= 1:
        return p.q[0]
    raise UnknownFamily(f"params {p} do not match the twin-stem family")


def dist4_q2_from_params(p: TreeParams) -> int:
    if p.t == 2 and p.q[0] == 1 and p.a[0] == 2 and p.a[1] == p.q[1] - 2 and p.q[1] >= 3:
        return p.q[1]
    raise UnknownFamily(f"params {p} do not match the distance-4 leaf family")
