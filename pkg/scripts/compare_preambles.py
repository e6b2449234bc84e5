#!/usr/bin/env python3
"""PAPR comparison of sparse Golay, sparse m-sequence, and IAM-C preambles.

Measures each preamble's PAPR over the analysis window with the guard
interval wide enough that no data symbol reaches it (the deterministic
sigma = 0 regime), and prints the closed-form filter bounds alongside.

Example:
    python3 scripts/compare_preambles.py --subcarriers 512 --channel-len 32
"""

import argparse

from fbmc_preamble.analysis import papr_samples
from fbmc_preamble.prototype import make_filter, papr_bound_sigma0
from fbmc_preamble.sequences import (iamc_preamble, mseq_preamble,
                                     sparse_golay_preamble)
from fbmc_preamble.waveform import FrameConfig


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--subcarriers", type=int, default=512)
    ap.add_argument("--channel-len", type=int, default=32)
    ap.add_argument("--oversample", type=int, default=4)
    ap.add_argument("--filters", nargs="+", default=["phydyas4", "phydyas3", "hermite"])
    args = ap.parse_args()

    m = args.subcarriers
    preambles = {
        "sparse-golay": sparse_golay_preamble(m, args.channel_len),
        "sparse-mseq": mseq_preamble(m),
        "iam-c": iamc_preamble(m),
    }
    cfg = FrameConfig(subcarriers=m, guards=6, oversample=args.oversample, rng_seed=0)

    header = f"{'preamble':<14s}" + "".join(f"{name:>12s}" for name in args.filters)
    print(f"M={m}, L_h={args.channel_len}, O={args.oversample}, PAPR in dB")
    print(header)
    print(f"{'(bound)':<14s}" + "".join(
        f"{papr_bound_sigma0(make_filter(name, 256)):>12.4f}" for name in args.filters))
    for pname, preamble in preambles.items():
        row = []
        for fname in args.filters:
            filt = make_filter(fname, cfg.samples_per_symbol)
            row.append(float(papr_samples(preamble, filt, cfg, trials=1)[0]))
        print(f"{pname:<14s}" + "".join(f"{v:>12.4f}" for v in row))


if __name__ == "__main__":
    main()
