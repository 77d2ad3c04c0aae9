"""Shared test utilities."""
import numpy as np

from ranksd.field import BinaryField, ExtensionField


def rand_elems(F, count, rng):
    """count uniformly random elements of F."""
    bits = rng.integers(0, 2, size=(count, F.bits), dtype=np.uint8)
    return F.from_bits(bits)


def rand_nonzero(F, count, rng):
    x = rand_elems(F, count, rng)
    z = F.is_zero(x)
    while np.any(z):
        x[z] = rand_elems(F, int(z.sum()), rng)
        z = F.is_zero(x)
    return x


def all_elems(F):
    """Every element of a small field, in integer order."""
    return np.stack([F.from_int(v) for v in range(F.order)])


def small_fields():
    F4 = BinaryField(2, 0b111)
    return {"F4": F4, "F16": BinaryField(4, 0b10011), "F4^2": ExtensionField(F4, [2, 1])}
