"""Shared draw helpers for the randomized property tests (all seeded)."""

import numpy as np

from kernapprox import PoleSequence


def random_poles(rng, n, max_abs=10.0, min_im=0.1):
    out = []
    while len(out) < n:
        z = complex(rng.uniform(-max_abs, max_abs), rng.uniform(min_im, max_abs))
        if abs(z) <= max_abs:
            out.append(z)
    return PoleSequence(tuple(out))


def random_point(rng, box=3.0, min_im=0.1):
    return complex(rng.uniform(-box, box), rng.uniform(min_im, box))


def point_away_from(rng, points, min_dist=0.1, box=4.0):
    while True:
        z = complex(rng.uniform(-box, box), rng.uniform(-box, box))
        if all(abs(z - p) >= min_dist for p in points):
            return z
