"""Preamble PAPR measurement, Monte Carlo CCDF estimation, and the
analytic Rician/Marcum-Q exceedance model.

The observation window spans [(n+2)T/2, (n+6)T/2): two symbol intervals
centered on the preamble pulse peak at t = (n+4)T/2.  At a fixed t the
signal magnitude is Rician: a deterministic preamble envelope nu(t) plus
circular Gaussian data interference with per-component variance sigma^2(t).
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special as _sp

from .prototype import PrototypeFilter
from .waveform import FbmcGrid, FrameConfig, SampledSignal, slot_data, synthesize

_J = np.array([1.0 + 0j, 1j, -1.0 + 0j, -1j])


class AnalysisError(ValueError):
    """Invalid analysis parameters."""


def average_power(subcarriers: int) -> float:
    """Long-run mean power 2M/T of the data payload (T = 1)."""
    if subcarriers < 1:
        raise AnalysisError("need at least one subcarrier")
    return 2.0 * subcarriers


@dataclass(frozen=True)
class AnalysisWindow:
    preamble_slot: int
    start_index: int       # first sample inside the window
    length: int            # 2T worth of samples

    @classmethod
    def for_signal(cls, signal: SampledSignal, preamble_slot: int) -> "AnalysisWindow":
        spt = signal.samples_per_symbol
        t_start = (preamble_slot + 2) / 2.0
        start = round((t_start - signal.t0) * spt)
        win = cls(preamble_slot=preamble_slot, start_index=start, length=2 * spt)
        if start < 0 or start + win.length > len(signal.samples):
            raise AnalysisError("analysis window exceeds the sampled signal")
        return win


def papr(signal: SampledSignal, window: AnalysisWindow, p_avg: float) -> float:
    """Peak instantaneous-to-average power over the window, in dB."""
    if window.start_index < 0 or window.start_index + window.length > len(signal.samples):
        raise AnalysisError("analysis window exceeds the sampled signal")
    seg = signal.samples[window.start_index: window.start_index + window.length]
    return 10.0 * math.log10(float(np.max(np.abs(seg) ** 2)) / p_avg)


# ---------------------------------------------------------------------------
# Rician point model

def nu_of_t(preamble: np.ndarray, filt: PrototypeFilter, preamble_slot: int, t) -> np.ndarray:
    """Preamble-only envelope |g(t - nT/2)| |sum_m c_m j^m e^{j2pi m t}|.

    Independent of the guard count by construction.  The pulse enters in
    magnitude because nu is the mean length of the Rician phasor.
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    c = np.asarray(preamble, dtype=complex)
    m = np.arange(len(c))
    ct = c * _J[m % 4]
    env = np.abs(np.exp(2j * np.pi * np.outer(t, m)) @ ct)
    out = np.abs(filt(t - preamble_slot / 2.0)) * env
    return out if out.shape != (1,) else float(out[0])


def sigma2_of_t(guards: int, filt: PrototypeFilter, subcarriers: int,
                preamble_slot: int, t) -> np.ndarray:
    """Per-component variance (M/2) sum_{data slots} g^2(t - n'T/2) of the
    data interference; guard and preamble slots contribute nothing."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    lo = int(np.floor(2.0 * (t.min() - filt.overlap))) - 1
    hi = int(np.ceil(2.0 * t.max())) + 1
    acc = np.zeros_like(t)
    for slot in range(lo, hi + 1):
        if abs(slot - preamble_slot) <= guards:
            continue
        acc += filt(t - slot / 2.0) ** 2
    out = 0.5 * subcarriers * acc
    return out if out.shape != (1,) else float(out[0])


@dataclass(frozen=True)
class RicianPointModel:
    t: float
    nu: float
    sigma: float
    p_avg: float

    def __post_init__(self):
        if self.nu < 0 or self.sigma < 0 or self.p_avg <= 0:
            raise AnalysisError("nu, sigma must be >= 0 and p_avg > 0")

    @classmethod
    def at_time(cls, preamble: np.ndarray, filt: PrototypeFilter, cfg: FrameConfig,
                t: float) -> "RicianPointModel":
        return cls(
            t=t,
            nu=float(nu_of_t(preamble, filt, cfg.preamble_slot, t)),
            sigma=math.sqrt(float(sigma2_of_t(cfg.guards, filt, cfg.subcarriers,
                                              cfg.preamble_slot, t))),
            p_avg=average_power(cfg.subcarriers),
        )


# ---------------------------------------------------------------------------
# Special functions

_I0_SERIES_CUTOFF = 18.0


def bessel_i0(x: float) -> float:
    """Modified Bessel function I_0: all-positive power series for small x,
    asymptotic expansion beyond (crossover keeps both to ~1e-13 relative)."""
    if x < 0:
        raise AnalysisError("argument must be >= 0")
    if x < _I0_SERIES_CUTOFF:
        term, total = 1.0, 1.0
        q = 0.25 * x * x
        k = 1
        while term > 1e-18 * total:
            term *= q / (k * k)
            total += term
            k += 1
        return total
    # I_0(x) ~ e^x / sqrt(2 pi x) * sum_k prod_{j<k}(2j+1)^2 / (k! (8x)^k)
    total, term = 1.0, 1.0
    for k in range(1, 30):
        term *= (2 * k - 1) ** 2 / (8.0 * k * x)
        total += term
        if term < 1e-17 * total:
            break
    return math.exp(x) / math.sqrt(2.0 * math.pi * x) * total


def marcum_q1(a: float, b: float) -> float:
    """First-order Marcum Q-function via the Bessel series with
    exponentially scaled terms (scipy's ive supplies I_k e^{-ab})."""
    if not (np.isfinite(a) and np.isfinite(b)) or a < 0 or b < 0:
        raise AnalysisError("arguments must be finite and >= 0")
    if b == 0.0:
        return 1.0
    if a == 0.0:
        return math.exp(-0.5 * b * b)
    ab = a * b
    scale = math.exp(-0.5 * (a - b) ** 2)
    kmax = int(40 + 12 * math.sqrt(ab) + 4 * abs(math.log10(ab + 1)))
    orders = np.arange(kmax + 1)
    iv = _sp.ive(orders, ab)
    if b >= a:
        ratio = np.power(a / b, orders)
        q = scale * float(np.sum(ratio * iv))
    else:
        ratio = np.power(b / a, orders[1:])
        q = 1.0 - scale * float(np.sum(ratio * iv[1:]))
    return min(1.0, max(0.0, q))


def rician_pdf(x: float, nu: float, sigma: float) -> float:
    """Density of the magnitude |s(t)|; reduces to Rayleigh at nu = 0."""
    if sigma <= 0:
        raise AnalysisError("sigma must be > 0")
    if x < 0:
        return 0.0
    s2 = sigma * sigma
    # I_0 grows like e^{x nu / s2}; use the scaled form to avoid overflow:
    # (x/s2) e^{-(x^2+nu^2)/2s2} I_0(x nu / s2) = (x/s2) e^{-(x-nu)^2/2s2} I0e.
    scaled = float(_sp.ive(0, x * nu / s2))
    return x / s2 * math.exp(-((x - nu) ** 2) / (2.0 * s2)) * scaled


def rician_cdf(x: float, nu: float, sigma: float) -> float:
    if sigma <= 0:
        raise AnalysisError("sigma must be > 0")
    if x <= 0:
        return 0.0
    return 1.0 - marcum_q1(nu / sigma, x / sigma)


def iapr_exceedance(alpha: float, model: RicianPointModel) -> float:
    """Pr{|s(t)|^2 / P_avg >= alpha} at the model's time instant."""
    if alpha < 0:
        raise AnalysisError("threshold must be >= 0")
    if alpha == 0.0:
        return 1.0
    if model.sigma == 0.0:
        return 1.0 if model.nu**2 >= alpha * model.p_avg else 0.0
    return marcum_q1(model.nu / model.sigma,
                     math.sqrt(alpha * model.p_avg) / model.sigma)


# ---------------------------------------------------------------------------
# Monte Carlo engine

def default_thresholds() -> np.ndarray:
    return np.round(np.arange(0.0, 9.0 + 1e-9, 0.05), 6)


@dataclass(frozen=True)
class CcdfResult:
    thresholds_db: np.ndarray = field(compare=False)
    exceed_prob: np.ndarray = field(compare=False)
    trials: int = 0
    max_papr_db: float = float("-inf")
    config: dict = field(default_factory=dict, compare=False)

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["threshold_db", "exceed_prob"])
            for thr, p in zip(self.thresholds_db, self.exceed_prob):
                w.writerow([f"{thr:.4f}", f"{p:.10g}"])

    def to_json(self) -> str:
        return json.dumps({
            "thresholds_db": [round(float(v), 6) for v in self.thresholds_db],
            "exceed_prob": list(map(float, self.exceed_prob)),
            "trials": self.trials,
            "max_papr_db": self.max_papr_db,
            "config": self.config,
        }, indent=2)


class _WindowSampler:
    """Evaluates s(t) over the analysis window for many trials at once.

    Only the slots whose filter support intersects the window are
    synthesized; all other symbols contribute exactly zero there, so the
    result matches full-frame synthesis sample for sample.
    """

    def __init__(self, preamble: np.ndarray, filt: PrototypeFilter, cfg: FrameConfig):
        self.cfg = cfg
        spt = cfg.samples_per_symbol
        self.spt = spt
        self.filt = filt.resample(spt)
        n = cfg.preamble_slot
        m = np.arange(cfg.subcarriers)
        # e^{j2pi m t} at the window start t = (n+2)/2 is (-1)^(m n).
        self.start_phase = np.where((m * n) % 2 == 0, 1.0, -1.0)
        k = np.arange(2 * spt)
        self.k_mod = k % spt
        t_win = (n + 2) / 2.0 + k / spt
        self._g_at = {s: self.filt(t_win - s / 2.0) for s in self._window_slots()}
        self.data_slots = [s for s in self._window_slots() if abs(s - n) > cfg.guards]
        pre = np.asarray(preamble, dtype=complex) * _J[(m + n) % 4] * self.start_phase
        self.preamble_window = self._g_at[n] * self._envelope(pre[None, :])[0]

    def _window_slots(self) -> list[int]:
        n, k = self.cfg.preamble_slot, self.filt.overlap
        return list(range(n + 3 - 2 * k, n + 6))

    def _envelope(self, coeff: np.ndarray) -> np.ndarray:
        base = np.fft.ifft(coeff, self.spt, axis=1) * self.spt
        return base[:, self.k_mod]

    def sample_trials(self, first_trial: int, count: int) -> np.ndarray:
        """Window samples, shape (count, 2 * spt)."""
        cfg = self.cfg
        m = np.arange(cfg.subcarriers)
        out = np.tile(self.preamble_window, (count, 1))
        for s in self.data_slots:
            phase = _J[(m + s) % 4] * self.start_phase
            a = np.empty((count, cfg.subcarriers))
            for i in range(count):
                a[i] = slot_data(cfg, first_trial + i, s)
            out += self._g_at[s] * self._envelope(a * phase)
        return out


def monte_carlo_ccdf(preamble: np.ndarray, filt: PrototypeFilter, cfg: FrameConfig,
                     trials: int, thresholds_db: np.ndarray | None = None,
                     chunk: int = 256) -> CcdfResult:
    """Estimate Pr{PAPR > X} over random data realizations.

    Deterministic given cfg.rng_seed: trial i draws its data from
    counter-based streams keyed on (seed, i, slot).
    """
    if trials < 1:
        raise AnalysisError("need at least one trial")
    if thresholds_db is None:
        thresholds_db = default_thresholds()
    thresholds_db = np.asarray(thresholds_db, dtype=float)
    sampler = _WindowSampler(preamble, filt, cfg)
    p_avg = average_power(cfg.subcarriers)
    exceed = np.zeros(len(thresholds_db), dtype=np.int64)
    max_db = float("-inf")
    done = 0
    while done < trials:
        count = min(chunk, trials - done)
        win = sampler.sample_trials(done, count)
        peak_db = 10.0 * np.log10(np.max(np.abs(win) ** 2, axis=1) / p_avg)
        exceed += np.sum(peak_db[:, None] > thresholds_db[None, :], axis=0)
        max_db = max(max_db, float(np.max(peak_db)))
        done += count
    return CcdfResult(
        thresholds_db=thresholds_db,
        exceed_prob=exceed / trials,
        trials=trials,
        max_papr_db=max_db,
        config=cfg.to_json_dict(),
    )


def papr_samples(preamble: np.ndarray, filt: PrototypeFilter, cfg: FrameConfig,
                 trials: int, chunk: int = 256, first_trial: int = 0) -> np.ndarray:
    """Per-trial preamble PAPR values in dB (same trials as monte_carlo_ccdf).

    Trial i of the returned array is keyed on the absolute index
    first_trial + i, so disjoint calls tile one reproducible stream.
    """
    sampler = _WindowSampler(preamble, filt, cfg)
    p_avg = average_power(cfg.subcarriers)
    out = np.empty(trials)
    done = 0
    while done < trials:
        count = min(chunk, trials - done)
        win = sampler.sample_trials(first_trial + done, count)
        out[done: done + count] = 10.0 * np.log10(
            np.max(np.abs(win) ** 2, axis=1) / p_avg)
        done += count
    return out


def signal_at_times(preamble: np.ndarray, filt: PrototypeFilter, cfg: FrameConfig,
                    t: np.ndarray, trials: int) -> np.ndarray:
    """Exact s(t) at probe times for each trial, shape (trials, len(t)).

    Used to validate the pointwise Rician model against simulation.
    """
    t = np.asarray(t, dtype=float)
    m = np.arange(cfg.subcarriers)
    carriers = np.exp(2j * np.pi * np.outer(m, t))
    filt = filt.resample(cfg.samples_per_symbol)
    n = cfg.preamble_slot
    pre_coeff = np.asarray(preamble, dtype=complex) * _J[(m + n) % 4]
    out = np.tile((pre_coeff @ carriers) * filt(t - n / 2.0), (trials, 1))
    window_slots = range(n + 3 - 2 * filt.overlap, n + 6)
    for s in window_slots:
        if abs(s - n) <= cfg.guards:
            continue
        g_vals = filt(t - s / 2.0)
        phase = _J[(m + s) % 4]
        weights = carriers * g_vals[None, :]
        for i in range(trials):
            out[i] += (slot_data(cfg, i, s) * phase) @ weights
    return out


def empirical_mean_power(subcarriers: int, n_symbols: int = 256, oversample: int = 4,
                         seed: int = 0) -> float:
    """Time-averaged |s(t)|^2 of an all-data frame, for checking 2M/T."""
    from .prototype import phydyas_taps

    cfg = FrameConfig(subcarriers=subcarriers, guards=0, data_span=max(12, n_symbols // 2),
                      oversample=oversample, rng_seed=seed)
    filt = phydyas_taps(4, cfg.samples_per_symbol)
    symbols = np.zeros((subcarriers, cfg.total_slots), dtype=complex)
    for col in range(cfg.total_slots):
        symbols[:, col] = slot_data(cfg, 0, cfg.first_slot + col)
    grid = FbmcGrid(symbols=symbols, first_slot=cfg.first_slot,
                    preamble_slot=cfg.preamble_slot)
    sig = synthesize(grid, filt, cfg)
    spt = cfg.samples_per_symbol
    # Exclude one filter length at each edge so the average sees a fully
    # loaded signal.
    guard = filt.overlap * spt
    seg = sig.samples[guard: len(sig.samples) - guard]
    return float(np.mean(np.abs(seg) ** 2))
