#!/usr/bin/env python3
"""Regenerates the bundled scenario fixtures.

Every scenario is lossless (G = 0) and starts at a post-fault equilibrium:
Pm_i is set to the electrical output at the initial angles.
"""
import json
import math
import sys
from pathlib import Path


def pe(angles, B, E):
    n = len(angles)
    return [sum(E[i] * E[j] * B[i][j] * math.sin(angles[i] - angles[j]) for j in range(n) if j != i)
            for i in range(n)]


def coupling(n, links):
    B = [[0.0] * n for _ in range(n)]
    for (i, j), b in links.items():
        B[i][j] = B[j][i] = b
        B[i][i] -= b
        B[j][j] -= b
    return B


def scenario(M, E, angles, pre, fault, t_clear, t_end, dt=1e-3):
    n = len(M)
    # Shift to the centre of inertia so the initial COI angle is zero.
    coi = sum(m * a for m, a in zip(M, angles)) / sum(M)
    angles = [a - coi for a in angles]
    zero = [[0.0] * n for _ in range(n)]
    pm = pe(angles, pre, E)
    return {
        "machines": [{"id": i + 1, "M": M[i], "E": E[i], "Pm": pm[i], "delta0": angles[i], "omega0": 0.0}
                     for i in range(n)],
        "networks": {
            "prefault": {"G": zero, "B": pre},
            "fault": {"G": zero, "B": fault},
            "postfault": {"G": zero, "B": pre},
        },
        "fault": {"t_clear": t_clear, "t_end": t_end, "dt": dt},
    }


def smib():
    # Two machines joined by one line of peak transfer 2.0 pu; the fault removes
    # all transfer. Relative motion is the textbook single-machine case.
    pmax, pm = 2.0, 0.8
    return scenario([0.1, 0.3], [1.0, 1.0], [math.asin(pm / pmax), 0.0],
                    coupling(2, {(0, 1): pmax}), coupling(2, {}), 0.30, 2.0)


def three_machine(t_clear):
    # Machine 1 is a large system-side unit; 2 and 3 are the exposed pair.
    pre = coupling(3, {(0, 1): 2.0, (0, 2): 1.6, (1, 2): 0.8})
    fault = coupling(3, {(0, 1): 0.3, (0, 2): 0.25, (1, 2): 0.8})
    return scenario([1.0, 0.05, 0.075], [1.0, 1.0, 1.0], [0.0, 0.45, 0.40], pre, fault, t_clear, 3.0)


def runaway():
    # The 3-machine network cleared late: machine 3 is the dominant critical
    # group while machine 2 tears away from machine 1 inside the other group.
    return three_machine(0.60)


def main(out_dir):
    out = Path(out_dir)
    fixtures = {
        "smib.json": smib(),
        "three_machine_stable.json": three_machine(0.30),
        "three_machine_unstable.json": three_machine(0.50),
        "runaway.json": runaway(),
    }
    for name, doc in fixtures.items():
        (out / name).write_text(json.dumps(doc, indent=2) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).parent)
