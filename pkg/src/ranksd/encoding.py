"""Little-endian bitstreams for wire formats.

Bytes are written as 8 bits each (bit 0 first), field elements as their
coefficient bits, so a stream of mixed items has no internal padding.  Only
the tail is padded to a byte boundary, with zero bits.
"""
import numpy as np


class BitWriter:
    def __init__(self):
        self._parts = []
        self.nbits = 0

    def write_bytes(self, b):
        bits = np.unpackbits(np.frombuffer(bytes(b), dtype=np.uint8), bitorder="little")
        self._parts.append(bits)
        self.nbits += bits.size
        return self

    def write_elems(self, F, x):
        bits = np.asarray(F.to_bits(x), dtype=np.uint8).reshape(-1)
        self._parts.append(bits)
        self.nbits += bits.size
        return self

    def getvalue(self):
        if not self._parts:
            return b""
        bits = np.concatenate(self._parts)
        return np.packbits(bits, bitorder="little").tobytes()


class BitReader:
    def __init__(self, data):
        self.bits = np.unpackbits(np.frombuffer(bytes(data), dtype=np.uint8), bitorder="little")
        self.pos = 0

    def remaining(self):
        return self.bits.size - self.pos

    def _take(self, n):
        if n > self.remaining():
            raise ValueError("truncated input")
        out = self.bits[self.pos:self.pos + n]
        self.pos += n
        return out

    def read_bytes(self, n):
        return np.packbits(self._take(8 * n), bitorder="little").tobytes()

    def read_elems(self, F, shape):
        shape = tuple(shape) if not isinstance(shape, int) else (shape,)
        count = int(np.prod(shape, dtype=np.int64))
        bits = self._take(count * F.bits).reshape(shape + (F.bits,))
        return F.from_bits(bits)

    def finish(self):
        """Accept only zero padding up to the next byte boundary."""
        rest = self.bits[self.pos:]
        if rest.size >= 8 or np.any(rest):
            raise ValueError("trailing data")
        self.pos = self.bits.size


def elems_to_bytes(F, x):
    """Element serialization with every F_{q^m} block padded to whole bytes."""
    chunk = _coef_bits(F)
    bits = np.asarray(F.to_bits(x), dtype=np.uint8).reshape(-1, chunk)
    pad = (-chunk) % 8
    if pad:
        bits = np.concatenate([bits, np.zeros((bits.shape[0], pad), dtype=np.uint8)], axis=1)
    return np.packbits(bits.reshape(-1), bitorder="little").tobytes()


def elems_from_bytes(F, data, count):
    chunk = _coef_bits(F)
    per = F.bits // chunk
    cbytes = (chunk + 7) // 8
    need = count * per * cbytes
    if len(data) != need:
        raise ValueError("expected %d bytes, got %d" % (need, len(data)))
    bits = np.unpackbits(np.frombuffer(bytes(data), dtype=np.uint8), bitorder="little")
    bits = bits.reshape(count, per, cbytes * 8)
    if np.any(bits[..., chunk:]):
        raise ValueError("non-zero padding bits")
    return F.from_bits(bits[..., :chunk].reshape(count, F.bits))


def elem_nbytes(F):
    chunk = _coef_bits(F)
    return (F.bits // chunk) * ((chunk + 7) // 8)


def _coef_bits(F):
    # q = 256 towers are byte aligned; for q = 2 pad per F_{q^m} element
    if F.q == 256:
        return 8
    return F.bits if F.elem_ndim == 0 else F.base.bits
