#!/usr/bin/env python3
"""Writes the synthetic sample series used by the README and the CLI tests.

All series are AR1 noise around a linear trend, 1979:01-2009:06. They are
illustrations only and do not come from any provider.
"""
import numpy as np

MONTHS = 366


def ar1(rng, phi, sigma, n):
    e = np.empty(n)
    e[0] = rng.normal(0.0, sigma / np.sqrt(1.0 - phi * phi))
    for t in range(1, n):
        e[t] = phi * e[t - 1] + rng.normal(0.0, sigma)
    return e


def write(name, values, missing=()):
    with open(name, "w") as f:
        f.write("year,month,value\n")
        for i, v in enumerate(values):
            year, month = 1979 + i // 12, i % 12 + 1
            text = "NA" if i in missing else f"{v:.3f}"
            f.write(f"{year},{month},{text}\n")


def main():
    rng = np.random.default_rng(1979)
    t = np.arange(MONTHS)
    common = ar1(rng, 0.85, 0.12, MONTHS)  # shared weather-like variability
    write("sat_low.csv", 0.05 / 120 * t + common + ar1(rng, 0.3, 0.04, MONTHS))
    write("sat_high.csv", 0.14 / 120 * t + common + ar1(rng, 0.3, 0.04, MONTHS), missing={100, 101, 250})
    write("sfc_landocean.csv", 0.11 / 120 * t + 0.8 * common + ar1(rng, 0.3, 0.05, MONTHS))


if __name__ == "__main__":
    main()
