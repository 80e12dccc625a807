#!/usr/bin/env python3
"""Regenerate data/catalog/h2o_o2_thz.par from the line lists bundled with pyrtlib.

pyrtlib ships the MWL24 water-vapour list (HITRAN-derived, 83 lines up to
1.74 THz) and the R24 oxygen list as netCDF groups. This script rewrites
them as 160-column fixed-width records in the HITRAN 2004+ layout so the
C++ catalog reader can consume them.

    pip download --no-deps pyrtlib && python -m zipfile -e pyrtlib-*.whl pyrtlib
    python tools/make_catalog.py pyrtlib/pyrtlib/_lineshape > data/catalog/h2o_o2_thz.par

Conversions use c = 2.9979e8 m/s, the value the library uses, so
wavenumbers map back to the source frequencies.
"""

import sys
from pathlib import Path

import h5py

C_CM_PER_S = 2.9979e10  # speed of light, cm/s
HZ_PER_WAVENUMBER = C_CM_PER_S
BAR_TO_ATM = 1.01325
K_OVER_HC = 0.6950348  # cm^-1 per K


def fortran_float(value, width, decimals):
    text = f"{value:{width}.{decimals}f}"
    if len(text) > width:
        text = text.replace("0.", ".", 1)
    if len(text) != width:
        raise ValueError(f"{value} does not fit F{width}.{decimals}")
    return text


def record(mol, iso, ghz, s_hz_cm2, gamma_air_ghz_bar, gamma_self_ghz_bar,
           n_air, shift_ghz_bar, e_lower_cm):
    wavenumber = ghz * 1e9 / HZ_PER_WAVENUMBER
    intensity = s_hz_cm2 / HZ_PER_WAVENUMBER
    to_cm_atm = 1e9 * BAR_TO_ATM / HZ_PER_WAVENUMBER
    fields = [
        f"{mol:2d}",
        f"{iso:1d}",
        f"{wavenumber:12.6f}",
        f"{intensity:10.3E}",
        f"{0.0:10.3E}",
        fortran_float(gamma_air_ghz_bar * to_cm_atm, 5, 4),
        fortran_float(gamma_self_ghz_bar * to_cm_atm, 5, 3),
        f"{e_lower_cm:10.4f}",
        f"{n_air:4.2f}",
        fortran_float(shift_ghz_bar * to_cm_atm, 8, 6),
        " " * 60,           # quanta
        "000000",           # uncertainty codes
        "0" * 12,           # reference codes
        " ",                # flag
        f"{0.0:7.1f}",
        f"{0.0:7.1f}",
    ]
    line = "".join(fields)
    assert len(line) == 160, len(line)
    return line


def main(lineshape_dir):
    root = Path(lineshape_dir)
    rows = []
    with h5py.File(root / "h2o_lineshape.nc", "r") as f:
        mtx = f["MWL24"]["mtx"][:]
        for r in mtx:
            ghz, s1, b2, w0, x, w0s = r[1], r[2], r[3], r[4], r[5], r[6]
            shift = r[8]
            e_lower = b2 * 296.0 * K_OVER_HC
            rows.append((ghz, record(1, 1, ghz, s1, w0, w0s, x, shift, e_lower)))
    with h5py.File(root / "o2_lineshape.nc", "r") as f:
        g = f["R24"]
        x = float(g["x"][()])
        for ghz, s300, w300, be in zip(g["f"][:], g["s300"][:], g["w300"][:], g["be"][:]):
            e_lower = be * 300.0 * K_OVER_HC
            rows.append((ghz, record(7, 1, ghz, s300, w300, w300, x, 0.0, e_lower)))
    rows.sort()
    sys.stdout.write("".join(line + "\n" for _, line in rows))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else ".")
