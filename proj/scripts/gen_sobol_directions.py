#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
# Copyright 2026 The wcam Authors
"""Emit the Joe-Kuo (new-joe-kuo-6.21201) primitive polynomials and initial
direction numbers for the first DIMS dimensions as a C++ include file.

The table is read from the copy bundled with SciPy.
"""
import os
import sys

import numpy as np
import scipy

DIMS = 1024


def main(out_path):
    path = os.path.join(os.path.dirname(scipy.__file__), "stats", "_sobol_direction_numbers.npz")
    table = np.load(path)
    poly = table["poly"][:DIMS]
    vinit = table["vinit"][:DIMS]
    width = max(int(p).bit_length() - 1 for p in poly)
    lines = [
        "// SPDX-License-Identifier: Apache-2.0",
        "// Copyright 2026 The wcam Authors",
        "//",
        "// Generated by scripts/gen_sobol_directions.py. Do not edit.",
        "// Joe-Kuo new-joe-kuo-6.21201 direction numbers, first %d dimensions." % DIMS,
        "// poly: primitive polynomial with leading and trailing terms, degree = bit_length - 1.",
        "",
        "inline constexpr int kDirectionDims = %d;" % DIMS,
        "inline constexpr int kMaxDegree = %d;" % width,
        "",
        "inline constexpr unsigned kPoly[kDirectionDims] = {",
    ]
    for i in range(0, DIMS, 12):
        lines.append("    " + ", ".join(str(int(p)) for p in poly[i:i + 12]) + ",")
    lines.append("};")
    lines.append("")
    lines.append("inline constexpr unsigned kInitial[kDirectionDims][kMaxDegree] = {")
    for row in vinit:
        lines.append("    {" + ", ".join(str(int(v)) for v in row[:width]) + "},")
    lines.append("};")
    with open(out_path, "w") as f:
        f.write("\n".join(lines) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "src/sobol_directions.inc")
