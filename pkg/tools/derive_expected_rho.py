#!/usr/bin/env python3
"""Regenerate ``src/renorm_sums/data/expected_rho.json``.

Independent oracle for the six figure sweeps: every value f(k) and f(p^m k)
is evaluated from the factorization of its argument (no bulk recursion).
Integer-valued functions are summed exactly; rational-valued ones in
50-digit arithmetic, since exact denominators grow without bound. R_inf
comes from the closed forms. The stored tolerance is 1.5 times the largest
|rho| seen over the final decade of N.

Run from the repository root:  python3 tools/derive_expected_rho.py
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import mpmath

from renorm_sums import closed_forms, functions
from renorm_sums.functions import eval_mult
from renorm_sums.sieve import sieve_spf
from renorm_sums.tau import default_tau_table
from renorm_sums.values import to_real
from renorm_sums.verify import FIGURE_SETUPS

SAFETY = 1.5
DIGITS = 50
OUT = Path(__file__).resolve().parents[1] / "src" / "renorm_sums" / "data" / "expected_rho.json"


def oracle_rho(setup, table, tau_table):
    f = functions.get(setup.function, tau_table)
    scale = setup.p**setup.m
    r_inf = closed_forms.renorm_closed_for(f, setup.p, setup.m).value
    grid = setup.grid()
    if f.kind == "integer":
        conv, scaled, unscaled = int, 0, 0
    else:
        conv, scaled, unscaled = to_real, mpmath.mpf(0), mpmath.mpf(0)
    out, gi = [], 0
    for k in range(1, grid[-1] + 1):
        scaled += conv(eval_mult(f, scale * k, table))
        unscaled += conv(eval_mult(f, k, table))
        if k == grid[gi]:
            rho = to_real(scaled) / (to_real(r_inf) * to_real(unscaled)) - 1
            out.append((k, float(rho)))
            gi += 1
    return out


def main() -> int:
    mpmath.mp.dps = DIGITS
    hi = max(s.hi * s.p**s.m for s in FIGURE_SETUPS.values())
    table = sieve_spf(hi)
    tau_table = default_tau_table()
    setups = {}
    for name, setup in FIGURE_SETUPS.items():
        pts = oracle_rho(setup, table, tau_table)
        final = pts[-1][0]
        last = max(abs(r) for N, r in pts if 10 * N >= final)
        setups[name] = {
            "function": setup.function, "p": setup.p, "m": setup.m,
            "grid": [setup.lo, setup.hi, len(pts)],
            "rho_first": pts[0][1], "rho_final": pts[-1][1],
            "last_decade_max": last, "tolerance": float(f"{SAFETY * last:.3g}"),
        }
        print(f"{name}: rho {pts[0][1]:.3e} -> {pts[-1][1]:.3e}, tolerance {setups[name]['tolerance']}", flush=True)
    doc = {
        "provenance": "derived",
        "method": (f"per-argument factorization; exact integer or {DIGITS}-digit summation; "
                   f"tolerance = {SAFETY} x max |rho| over the final decade of N"),
        "setups": setups,
    }
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
