"""Rotations, misalignment distributions, and what a channel use looks like.

A misalignment channel picks one rotation per session from a known
distribution and applies it to every direction-carrying message.  This
walkthrough samples the distribution variants and checks their basic laws.
"""

import math

import numpy as np

from framebc import so3

rng = np.random.default_rng(0)

print("== rotations act on vectors ==")
v = so3.planar_unit(0.0)
quarter = so3.rot_z(math.pi / 2)
print("x-axis vector:", v)
print("after a quarter turn about z:", np.round(quarter @ v, 12))
print("turn forward then back:", np.round(so3.rot_z(-0.7) @ (so3.rot_z(0.7) @ v), 12))

print()
print("== finite distributions enumerate exactly ==")
for mu in (so3.CyclicZ(4), so3.TwoPointAngleMixture((0.2, 0.31))):
    support = so3.enumerate_support(mu)
    angles = [round(so3.rotation_z_angle(r), 6) for r, _ in support]
    probs = [str(p) for _, p in support]
    print(f"{mu}: angles {angles} with probabilities {probs}")

print()
print("== continuous distributions sample but do not enumerate ==")
try:
    so3.enumerate_support(so3.HaarSO3())
except so3.ContinuousSupportError as exc:
    print("HaarSO3 enumeration rejected:", exc)

print()
print("== Haar samples are isotropic ==")
images = np.einsum("nij,j->ni", so3.haar_rotations(100_000, rng), v)
print("mean image of the x axis:", np.round(images.mean(axis=0), 4))
print("second moment (should be I/3):")
print(np.round(images.T @ images / len(images), 4))

print()
print("== a cyclic subgroup stays a group ==")
support = [r for r, _ in so3.enumerate_support(so3.CyclicZ(6))]
closed = all(
    any(
        so3.angles_close(so3.rotation_z_angle(a @ b), so3.rotation_z_angle(c))
        for c in support
    )
    for a in support
    for b in support
)
print("closure under composition:", closed)
