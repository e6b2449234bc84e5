"""Golay complementary pairs and preamble sequence constructions.

Generalized Boolean functions (GBFs) over Z_Q are represented as sparse
monomial lists and evaluated into phase sequences of length 2^mu.  The
Davis-Jedwab construction turns a quadratic-path GBF into a Golay
complementary pair (GCP).  Baseline preambles (sparse Kronecker pilots,
m-sequence, IAM-C) live here as well.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

# (coefficient, variable indices), variables are 1-based; () is the constant.
Monomial = tuple[int, tuple[int, ...]]

# Exact unit circle points for the common moduli, so binary/quaternary
# sequences convert without floating-point phase error.
_EXACT_ROOTS = {
    1: np.array([1.0 + 0j]),
    2: np.array([1.0 + 0j, -1.0 + 0j]),
    4: np.array([1.0 + 0j, 1j, -1.0 + 0j, -1j]),
}


class SequenceError(ValueError):
    """Invalid sequence construction parameters."""


@dataclass(frozen=True)
class Gbf:
    """Generalized Boolean function f: {0,1}^mu -> Z_Q as a monomial sum."""

    modulus: int
    num_vars: int
    monomials: tuple[Monomial, ...]

    def __post_init__(self):
        if self.modulus < 1:
            raise SequenceError("modulus must be positive")
        if self.num_vars < 1:
            raise SequenceError("need at least one variable")
        for coeff, idx in self.monomials:
            for i in idx:
                if not 1 <= i <= self.num_vars:
                    raise SequenceError(f"variable index {i} outside 1..{self.num_vars}")
            if not 0 <= coeff < self.modulus:
                raise SequenceError(f"coefficient {coeff} outside Z_{self.modulus}")


@dataclass(frozen=True)
class PhaseSequence:
    """Length-N sequence of phases over Z_Q."""

    modulus: int
    phases: np.ndarray = field(compare=False)

    def __post_init__(self):
        phases = np.asarray(self.phases, dtype=np.int64)
        if self.modulus < 1:
            raise SequenceError("modulus must be positive")
        if np.any((phases < 0) | (phases >= self.modulus)):
            raise SequenceError("phase entries must lie in [0, Q)")
        object.__setattr__(self, "phases", phases)

    def __len__(self):
        return len(self.phases)

    def to_complex(self) -> np.ndarray:
        """Unit-magnitude amplitudes omega^phase with omega = exp(j2pi/Q)."""
        roots = _EXACT_ROOTS.get(self.modulus)
        if roots is None:
            roots = np.exp(2j * np.pi * np.arange(self.modulus) / self.modulus)
        return roots[self.phases]

    def to_json(self) -> str:
        return json.dumps({"modulus": self.modulus, "phases": self.phases.tolist()})

    @classmethod
    def from_json(cls, text: str) -> "PhaseSequence":
        obj = json.loads(text)
        return cls(modulus=int(obj["modulus"]), phases=np.asarray(obj["phases"]))


def complex_to_json(c: np.ndarray) -> str:
    c = np.asarray(c, dtype=complex)
    return json.dumps({"re": c.real.tolist(), "im": c.imag.tolist()})


def complex_from_json(text: str) -> np.ndarray:
    obj = json.loads(text)
    return np.asarray(obj["re"], dtype=float) + 1j * np.asarray(obj["im"], dtype=float)


@dataclass(frozen=True)
class GbfSpec:
    """Parameters of a Davis-Jedwab Golay pair.

    The underlying GBF is (Q/2) * sum_k x_{pi(k)} x_{pi(k+1)} + sum_k b_k x_k + const,
    and the partner adds (Q/2) x_{pi(1)} + offset.
    """

    q: int
    mu: int
    pi: tuple[int, ...]
    b: tuple[int, ...]
    const: int = 0
    offset: int = 0

    def __post_init__(self):
        if self.q < 2 or self.q % 2 != 0:
            raise SequenceError("modulus Q must be a positive even integer")
        if self.mu < 1:
            raise SequenceError("mu must be >= 1")
        pi = tuple(int(v) for v in self.pi)
        b = tuple(int(v) for v in self.b)
        if sorted(pi) != list(range(1, self.mu + 1)):
            raise SequenceError("pi must be a permutation of 1..mu")
        if len(b) != self.mu:
            raise SequenceError("b must have mu entries")
        if any(not 0 <= v < self.q for v in b + (self.const, self.offset)):
            raise SequenceError("coefficients must lie in [0, Q)")
        object.__setattr__(self, "pi", pi)
        object.__setattr__(self, "b", b)

    def to_json(self) -> str:
        return json.dumps(
            {"q": self.q, "mu": self.mu, "pi": list(self.pi), "b": list(self.b),
             "const": self.const, "offset": self.offset}
        )

    @classmethod
    def from_json(cls, text: str) -> "GbfSpec":
        obj = json.loads(text)
        return cls(q=int(obj["q"]), mu=int(obj["mu"]), pi=tuple(obj["pi"]),
                   b=tuple(obj["b"]), const=int(obj.get("const", 0)),
                   offset=int(obj.get("offset", 0)))


def evaluate_gbf(f: Gbf) -> PhaseSequence:
    """Evaluate f at kappa = 0..2^mu-1, kappa_1 the least significant bit."""
    n = 1 << f.num_vars
    kappa = np.arange(n)
    # bits[i, kappa] = kappa_{i+1}
    bits = (kappa[None, :] >> np.arange(f.num_vars)[:, None]) & 1
    out = np.zeros(n, dtype=np.int64)
    for coeff, idx in f.monomials:
        term = np.full(n, coeff, dtype=np.int64)
        for i in idx:
            term *= bits[i - 1]
        out += term
    return PhaseSequence(modulus=f.modulus, phases=out % f.modulus)


def dj_gbfs(spec: GbfSpec) -> tuple[Gbf, Gbf]:
    """The two GBFs whose associated sequences form the Golay pair."""
    quad = [(spec.q // 2, (spec.pi[k], spec.pi[k + 1])) for k in range(spec.mu - 1)]
    lin = [(bk, (k + 1,)) for k, bk in enumerate(spec.b) if bk]
    base = quad + lin + ([(spec.const, ())] if spec.const else [])
    partner = base + [(spec.q // 2, (spec.pi[0],))]
    if spec.offset:
        partner = partner + [(spec.offset, ())]
    mk = lambda ms: Gbf(modulus=spec.q, num_vars=spec.mu, monomials=tuple(ms))
    return mk(base), mk(partner)


def dj_pair(spec: GbfSpec) -> tuple[PhaseSequence, PhaseSequence]:
    """Davis-Jedwab Golay complementary pair of length 2^mu over Z_Q."""
    fa, fb = dj_gbfs(spec)
    return evaluate_gbf(fa), evaluate_gbf(fb)


def aacf(c: np.ndarray, tau: int) -> complex:
    """Aperiodic autocorrelation sum_m c_m conj(c_{m+tau}) at shift tau >= 0."""
    c = np.asarray(c, dtype=complex)
    if not 0 <= tau <= len(c) - 1:
        raise SequenceError(f"shift {tau} outside 0..{len(c) - 1}")
    return complex(np.dot(c[: len(c) - tau], np.conj(c[tau:])))


def is_gcp(c: np.ndarray, d: np.ndarray, tol: float = 1e-9) -> bool:
    """True iff the aperiodic autocorrelations of c and d cancel at every
    nonzero shift, to within tol."""
    c = np.asarray(c, dtype=complex)
    d = np.asarray(d, dtype=complex)
    if c.shape != d.shape:
        raise SequenceError("pair members must have equal length")
    resid = max(
        (abs(aacf(c, tau) + aacf(d, tau)) for tau in range(1, len(c))),
        default=0.0,
    )
    return resid <= tol


def gcp_residual(c: np.ndarray, d: np.ndarray) -> float:
    """max_{tau != 0} |rho_c(tau) + rho_d(tau)|, the complementarity defect."""
    c = np.asarray(c, dtype=complex)
    d = np.asarray(d, dtype=complex)
    if c.shape != d.shape:
        raise SequenceError("pair members must have equal length")
    return max((abs(aacf(c, tau) + aacf(d, tau)) for tau in range(1, len(c))), default=0.0)


def phase_transform(c: np.ndarray) -> np.ndarray:
    """Multiply entry m by j^m (the subcarrier phase ramp of FBMC/OQAM)."""
    c = np.asarray(c, dtype=complex)
    return c * _EXACT_ROOTS[4][np.arange(len(c)) % 4]


def sparsify(c: np.ndarray, d: int, m_total: int) -> np.ndarray:
    """Kronecker-expand c with d zeros after each entry and scale so the
    result has energy m_total.  Pilot spacing is d+1."""
    c = np.asarray(c, dtype=complex)
    if d < 0:
        raise SequenceError("sparsity gap must be >= 0")
    if m_total != (d + 1) * len(c):
        raise SequenceError(f"target length {m_total} != (d+1)*len(c) = {(d + 1) * len(c)}")
    out = np.zeros(m_total, dtype=complex)
    out[:: d + 1] = math.sqrt(m_total / len(c)) * c
    return out


# Example-2 pair of the Davis-Jedwab construction (Q=2, mu=4), kept as
# literals because the published Fig.-4 comparison is pinned to them.
GOLAY_C16 = "+--+-+-+++--++++"
GOLAY_D16 = "-+-++--+------++"

# 31-chip maximal-length sequence (periodic autocorrelation -1 at every
# nonzero shift) used by the baseline sparse preamble.
MSEQ31 = "+----+--+-++--+++++---++-+++-+-"


def signs_to_array(s: str) -> np.ndarray:
    if set(s) - {"+", "-"}:
        raise SequenceError("sign string may contain only '+' and '-'")
    return np.array([1.0 if ch == "+" else -1.0 for ch in s])


def array_to_signs(c: np.ndarray) -> str:
    return "".join("+" if v.real > 0 else "-" for v in np.asarray(c))


def golay_seed(length: int) -> np.ndarray:
    """A binary Golay sequence of the given power-of-two length.

    Lengths >= 32 start from the 16-chip pair (c, d) above and grow by the
    concatenation rule (c|d, c|-d); length 32 is therefore c|-d, whose
    partner is c|d.  Shorter lengths come from a canonical DJ spec.
    """
    if length < 1 or length & (length - 1):
        raise SequenceError("seed length must be a power of two")
    if length <= 16:
        mu = length.bit_length() - 1
        if mu == 0:
            return np.array([1.0])
        spec = GbfSpec(q=2, mu=mu, pi=tuple(range(1, mu + 1)), b=(0,) * mu)
        return dj_pair(spec)[0].to_complex().real
    c, d = signs_to_array(GOLAY_C16), signs_to_array(GOLAY_D16)
    while 2 * len(c) <= length:
        c, d = np.concatenate([c, -d]), np.concatenate([c, d])
    return c


def sparse_golay_preamble(m_total: int, pilot_count: int) -> np.ndarray:
    """Equi-spaced, equi-powered pilot preamble built from a binary Golay
    seed of length pilot_count, energy m_total."""
    if pilot_count < 1 or m_total % pilot_count:
        raise SequenceError("subcarrier count must be a multiple of the pilot count")
    seed = golay_seed(pilot_count)
    return sparsify(seed, m_total // pilot_count - 1, m_total)


def mseq_preamble(m_total: int) -> np.ndarray:
    """Baseline sparse preamble from the 31-chip m-sequence with a trailing
    '+' appended, Kronecker-expanded to length m_total (multiple of 32)."""
    if m_total % 32:
        raise SequenceError("length must be divisible by 32")
    core = np.concatenate([signs_to_array(MSEQ31), [1.0]])
    return sparsify(core, m_total // 32 - 1, m_total)


def iamc_preamble(m_total: int) -> np.ndarray:
    """Dense baseline preamble c_m = j^(-m): its phase transform is the
    all-ones sequence, so every subcarrier adds coherently."""
    if m_total < 1:
        raise SequenceError("length must be >= 1")
    return _EXACT_ROOTS[4][(-np.arange(m_total)) % 4].copy()
