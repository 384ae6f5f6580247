#!/usr/bin/env python3
"""Regenerate dwave_2000Q_6_style.csv.

The published dwave_2000Q_6 schedule table is distributed by the vendor and is
not redistributed here. This script writes a smooth reconstruction with the
same qualitative shape and approximate magnitudes:

  A(s) = A0 * exp(-(a1*s + a2*s^2))       A0 = 6.4 GHz, crosses B near s = 0.32
  B(s) = B0 + (B1 - B0) * s^k             B0 = 0.12 GHz, B1 = 11.8 GHz

Rows are written at s = 0, 0.001, ..., 1 with six significant digits.
"""
import math

A0, A1_COEF, A2_COEF = 6.4, 0.041, 13.41
B0, B1, K = 0.12, 11.8, 1.81
ROWS = 1001


def a_ghz(s):
    return A0 * math.exp(-(A1_COEF * s + A2_COEF * s * s))


def b_ghz(s):
    return B0 + (B1 - B0) * s ** K


def main():
    with open("dwave_2000Q_6_style.csv", "w", newline="\n") as out:
        out.write("# dwave_2000Q_6-style annealing schedule (smooth reconstruction)\n")
        out.write("# generated by make_2000q_style.py; units GHz (energy / Planck constant)\n")
        out.write("s,A_GHz,B_GHz\n")
        for r in range(ROWS):
            s = r / (ROWS - 1)
            out.write(f"{s:.3f},{a_ghz(s):.6g},{b_ghz(s):.6g}\n")


if __name__ == "__main__":
    main()
