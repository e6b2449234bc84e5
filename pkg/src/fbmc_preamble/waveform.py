"""FBMC/OQAM frame assembly and baseband synthesis.

A frame is a grid of real half-symbols a_{m,n'} (subcarrier m, half-symbol
slot n') holding one preamble column flanked by zero guards and random
binary data.  The transmitted signal is

    s(t) = sum_{m,n'} a_{m,n'} j^{m+n'} exp(j 2 pi m t / T) g(t - n' T / 2)

sampled on a uniform grid with oversample * M points per symbol interval
(T = 1 in normalized units).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .prototype import PrototypeFilter

_J = np.array([1.0 + 0j, 1j, -1.0 + 0j, -1j])


class FrameError(ValueError):
    """Invalid frame configuration or contents."""


@dataclass(frozen=True)
class FrameConfig:
    subcarriers: int              # M
    guards: int                   # G zero half-symbols on each side
    preamble_slot: int | None = None   # defaults to an even slot index
    data_span: int = 12           # data half-symbols per side beyond guards
    oversample: int = 4           # samples per T = oversample * M
    rng_seed: int = 0

    def __post_init__(self):
        if self.subcarriers < 2:
            raise FrameError("need at least 2 subcarriers")
        if self.guards < 0:
            raise FrameError("guard count must be >= 0")
        if self.data_span < 12:
            raise FrameError("data span must cover the filter support (>= 12)")
        if self.oversample < 2:
            raise FrameError("oversample must be >= 2")
        if self.preamble_slot is None:
            n = self.guards + self.data_span
            object.__setattr__(self, "preamble_slot", n + (n % 2))
        if self.preamble_slot < self.guards + self.data_span:
            raise FrameError("preamble slot leaves no room for the left half-frame")

    @property
    def samples_per_symbol(self) -> int:
        return self.oversample * self.subcarriers

    @property
    def first_slot(self) -> int:
        return self.preamble_slot - self.guards - self.data_span

    @property
    def total_slots(self) -> int:
        return 2 * (self.guards + self.data_span) + 1

    def data_slots(self) -> list[int]:
        n = self.preamble_slot
        return [s for s in range(self.first_slot, self.first_slot + self.total_slots)
                if abs(s - n) > self.guards]

    def to_json_dict(self) -> dict:
        return {"subcarriers": self.subcarriers, "guards": self.guards,
                "preamble_slot": self.preamble_slot, "data_span": self.data_span,
                "oversample": self.oversample, "rng_seed": self.rng_seed}

    @classmethod
    def from_json_dict(cls, obj: dict) -> "FrameConfig":
        return cls(**obj)


def slot_data(cfg: FrameConfig, trial: int, slot: int) -> np.ndarray:
    """Deterministic +-1 data for one (trial, slot) cell.

    Each cell owns a counter-based Philox stream keyed on
    (seed, trial, slot), so trials and slots can be generated in any order
    or in parallel with identical results.
    """
    key = (int(cfg.rng_seed) << 64) | ((trial & 0xFFFFFFFFFFFF) << 16) | (slot & 0xFFFF)
    rng = np.random.Generator(np.random.Philox(key=key))
    return rng.integers(0, 2, cfg.subcarriers).astype(np.float64) * 2.0 - 1.0


@dataclass(frozen=True)
class FbmcGrid:
    symbols: np.ndarray = field(compare=False)   # (M, total_slots)
    first_slot: int = 0
    preamble_slot: int = 0

    @property
    def slots(self) -> np.ndarray:
        return self.first_slot + np.arange(self.symbols.shape[1])


def build_frame(cfg: FrameConfig, preamble: np.ndarray, trial: int = 0) -> FbmcGrid:
    """Grid with the preamble at cfg.preamble_slot, zero guards, and seeded
    +-1 data elsewhere.  Complex preambles are accepted only as a baseline
    affordance (IAM-C); OQAM symbols proper are real."""
    preamble = np.asarray(preamble, dtype=complex)
    m = cfg.subcarriers
    if len(preamble) != m:
        raise FrameError(f"preamble length {len(preamble)} != {m} subcarriers")
    energy = float(np.sum(np.abs(preamble) ** 2))
    if abs(energy - m) > 1e-9 * m:
        raise FrameError(f"preamble energy {energy:g} != {m}")
    symbols = np.zeros((m, cfg.total_slots), dtype=complex)
    symbols[:, cfg.preamble_slot - cfg.first_slot] = preamble
    for s in cfg.data_slots():
        symbols[:, s - cfg.first_slot] = slot_data(cfg, trial, s)
    return FbmcGrid(symbols=symbols, first_slot=cfg.first_slot,
                    preamble_slot=cfg.preamble_slot)


@dataclass(frozen=True)
class SampledSignal:
    samples: np.ndarray = field(compare=False)
    samples_per_symbol: int = 0
    t0: float = 0.0

    @property
    def times(self) -> np.ndarray:
        return self.t0 + np.arange(len(self.samples)) / self.samples_per_symbol

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["index", "t", "re", "im", "power"])
            for k, (t, v) in enumerate(zip(self.times, self.samples)):
                w.writerow([k, f"{t:.9g}", f"{v.real:.12g}", f"{v.imag:.12g}",
                            f"{abs(v) ** 2:.12g}"])


def synthesize(grid: FbmcGrid, filt: PrototypeFilter, cfg: FrameConfig) -> SampledSignal:
    """Accumulate every symbol's filtered subcarrier sum on the sample grid."""
    spt = cfg.samples_per_symbol
    filt = filt.resample(spt)
    if filt.samples_per_symbol != spt:
        raise FrameError("filter sample rate does not match oversample * M")
    m_count, n_cols = grid.symbols.shape
    k_len = filt.overlap * spt
    total = (n_cols - 1) * spt // 2 + k_len
    out = np.zeros(total, dtype=complex)
    m_idx = np.arange(m_count)
    # e^{j 2 pi m t} at t = first_slot/2 contributes (-1)^(m * first_slot).
    origin_phase = np.where((m_idx * grid.first_slot) % 2 == 0, 1.0, -1.0)
    for col in range(n_cols):
        a = grid.symbols[:, col]
        if not np.any(a):
            continue
        slot = grid.first_slot + col
        coeff = a * _J[(m_idx + slot) % 4] * origin_phase
        base = np.fft.ifft(coeff, spt) * spt
        offset = col * spt // 2
        tiled = np.tile(base, filt.overlap + 1)[offset % spt: offset % spt + k_len]
        out[offset: offset + k_len] += filt.taps * tiled
    return SampledSignal(samples=out, samples_per_symbol=spt, t0=grid.first_slot / 2.0)


def transmultiplexer_response(filt: PrototypeFilter, m: int, n: int, p: int, q: int) -> complex:
    """Inner product of the synthesis pulses (m, n) and (p, q), evaluated by
    a Riemann sum on the filter's own sample grid.  Real parts vanish except
    on the diagonal (real-field orthogonality)."""
    if abs(n - q) >= 2 * filt.overlap:
        return 0.0 + 0.0j
    L = filt.samples_per_symbol
    half = L // 2
    start = min(n, q) * half
    length = max(n, q) * half + filt.overlap * L - start
    t = start / L + np.arange(length) / L

    def pulse(mm: int, nn: int) -> np.ndarray:
        w = np.zeros(length, dtype=complex)
        i0 = nn * half - start
        seg = slice(i0, i0 + filt.overlap * L)
        w[seg] = filt.taps * _J[(mm + nn) % 4] * np.exp(2j * np.pi * mm * t[seg])
        return w

    return complex(np.sum(pulse(m, n) * np.conj(pulse(p, q))) / L)
