#!/usr/bin/env python3
"""Regenerates the bundled scenario documents in this directory."""
import cmath
import json
import math
import pathlib
import re

HERE = pathlib.Path(__file__).resolve().parent


def num(x):
    return float(f"{x:.15g}") + 0.0


def mat(m):
    return [[[num(complex(x).real), num(complex(x).imag)] for x in row] for row in m]


def proj(v):
    return [[a * b.conjugate() for b in v] for a in v]


def scale(c, m):
    return [[c * x for x in row] for row in m]


def add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


s = 1 / math.sqrt(2)
UP, DOWN = [1 + 0j, 0j], [0j, 1 + 0j]
RIGHT, LEFT = [s + 0j, s + 0j], [s + 0j, -s + 0j]
X_POVM = [{"label": "right", "element": mat(proj(RIGHT))},
          {"label": "left", "element": mat(proj(LEFT))}]
Z_POVM = [{"label": "up", "element": mat(proj(UP))},
          {"label": "down", "element": mat(proj(DOWN))}]


def member(p, rho, label):
    return {"label": label, "prior": p, "state": mat(rho)}


def write(name, doc):
    text = json.dumps(doc, indent=2)
    text = re.sub(r"\[\s*(-?[\d.e+-]+),\s*(-?[\d.e+-]+)\s*\]", r"[\1, \2]", text)
    (HERE / name).write_text(text + "\n")


write("unbiased-qubit.json", {
    "name": "unbiased qubit, z preparations, x measurement",
    "dimension": 2,
    "ensemble": [member(0.5, proj(UP), "up"), member(0.5, proj(DOWN), "down")],
    "povm": X_POVM,
    "mc": {"samples": 1000000, "seed": 7},
})

write("biased-qubit.json", {
    "name": "3/4-1/4 qubit, z preparations, x measurement",
    "dimension": 2,
    "ensemble": [member(0.75, proj(UP), "up"), member(0.25, proj(DOWN), "down")],
    "povm": X_POVM,
    "postselection_bias": [2.0, 1.0],
    "mc": {"samples": 1000000, "seed": 11},
})

write("singleton.json", {
    "name": "spin prepared up, measured along x",
    "dimension": 2,
    "ensemble": [member(1.0, proj(UP), "up")],
    "povm": X_POVM,
    "mc": {"samples": 1000000, "seed": 3},
})

w = cmath.exp(2j * math.pi / 3)
fourier = [[w ** (j * k) / math.sqrt(3) for j in range(3)] for k in range(3)]
basis3 = [[1 + 0j if j == k else 0j for j in range(3)] for k in range(3)]
write("qutrit-fourier.json", {
    "name": "unbiased qutrit basis measured in the Fourier basis",
    "dimension": 3,
    "ensemble": [member(1 / 3, proj(basis3[k]), f"e{k}") for k in range(3)],
    "povm": [{"label": f"f{k}", "element": mat(proj(fourier[k]))} for k in range(3)],
    "mc": {"samples": 1000000, "seed": 5},
})

# Trine POVM: (2/3)|t_k><t_k| with Bloch vectors 120 degrees apart in x-z.
trine = []
for k in range(3):
    a = 2 * math.pi * k / 3
    t = [math.cos(a / 2) + 0j, math.sin(a / 2) + 0j]
    trine.append({"label": f"t{k}", "element": mat(scale(2 / 3, proj(t)))})
mixed = add(scale(0.8, proj(RIGHT)), scale(0.2, proj(LEFT)))
write("trine-mixed.json", {
    "name": "mixed preparations, trine measurement",
    "dimension": 2,
    "ensemble": [member(0.6, proj(UP), "up"), member(0.4, mixed, "mostly-right")],
    "povm": trine,
    "postselection_bias": [1.0, 0.5, 0.25],
})

sx = [[0, 1], [1, 0]]
sz = [[1, 0], [0, -1]]
write("precession.json", {
    "name": "spin precessing about a tilted axis",
    "dimension": 2,
    "ensemble": [member(0.7, proj(RIGHT), "right"), member(0.3, mixed, "mostly-right")],
    "povm": Z_POVM,
    "hamiltonian": mat(add(scale(0.5, sx), scale(0.3, sz))),
})

write("static.json", {
    "name": "no dynamics",
    "dimension": 2,
    "ensemble": [member(0.5, proj(UP), "up"), member(0.5, proj(RIGHT), "right")],
    "povm": X_POVM,
    "hamiltonian": mat([[0, 0], [0, 0]]),
})

write("broken-povm.json", {
    "name": "POVM summing to 0.9 I",
    "dimension": 2,
    "ensemble": [member(1.0, proj(UP), "up")],
    "povm": [{"label": "right", "element": mat(scale(0.9, proj(RIGHT)))},
             {"label": "left", "element": mat(scale(0.9, proj(LEFT)))}],
})

write("broken-priors.json", {
    "name": "priors summing to 1.2",
    "dimension": 2,
    "ensemble": [member(0.6, proj(UP), "up"), member(0.6, proj(DOWN), "down")],
    "povm": X_POVM,
})
