"""Binary field towers F_q -> F_{q^m} -> F_{q^{m eta}} with q in {2, 256}.

Elements live in numpy arrays.  A field has an ``elem_shape``: ``()`` for a
prime-level binary field (one packed integer per element) and ``(d, *base)``
for an extension of degree d.  Leading axes are batch axes, so every operation
broadcasts over them.  Characteristic is always 2, so add == sub == xor.
"""
from functools import lru_cache

import numpy as np


# ---------------------------------------------------------------------------
# GF(2)[x] polynomials packed in python ints


def gf2_mul(a, b):
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def gf2_mod(a, f):
    df = f.bit_length()
    while a.bit_length() >= df:
        a ^= f << (a.bit_length() - df)
    return a


def gf2_mulmod(a, b, f):
    return gf2_mod(gf2_mul(a, b), f)


def gf2_gcd(a, b):
    while b:
        a, b = b, gf2_mod(a, b)
    return a


def _prime_factors(n):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def gf2_is_irreducible(f):
    """Rabin's test for f in GF(2)[x]."""
    d = f.bit_length() - 1
    if d < 1:
        return False
    if d == 1:
        return True

    def frob_pow(h, times):
        for _ in range(times):
            h = gf2_mulmod(h, h, f)
        return h

    if frob_pow(2, d) != gf2_mod(2, f):
        return False
    for p in _prime_factors(d):
        h = frob_pow(2, d // p) ^ 2
        if gf2_gcd(f, gf2_mod(h, f)) != 1:
            return False
    return True


def lex_smallest_gf2(d):
    """Smallest irreducible of degree d over GF(2) when (c_0, c_1, ..) is
    compared lexicographically."""
    # enumerate tuples (c_0=1, c_1 .. c_{d-1}) in lexicographic order; c_{d-1}
    # moves fastest, i.e. the tuple read as a big-endian integer
    for t in range(1 << (d - 1), 1 << d):
        f = 1 << d
        for i in range(d):
            if (t >> (d - 1 - i)) & 1:
                f |= 1 << i
        if gf2_is_irreducible(f):
            return f
    raise ValueError("no irreducible polynomial found")


def _poly_str(f):
    terms = [("x^%d" % i if i > 1 else ("x" if i == 1 else "1"))
             for i in range(f.bit_length() - 1, -1, -1) if (f >> i) & 1]
    return " + ".join(terms)


# ---------------------------------------------------------------------------


class BinaryField:
    """GF(2^m) = GF(2)[x]/(f), elements packed into one unsigned integer."""

    elem_shape = ()
    elem_ndim = 0

    def __init__(self, m, modulus, q=2, check=True):
        if modulus.bit_length() - 1 != m:
            raise ValueError("modulus degree must be m")
        if check and not _gf2_irreducible_cached(modulus):
            raise ValueError("reducible modulus %s" % _poly_str(modulus))
        self.m = m
        self.modulus = modulus
        self.order = 1 << m
        self.degree_over_q = m if q == 2 else 1
        self.q = q  # order of the prime level of the tower this field sits in
        self.bits = m
        self.nbytes = (m + 7) // 8
        self.dtype = np.uint8 if m <= 8 else np.uint64
        self._low = np.array(modulus ^ (1 << m), dtype=self.dtype)
        self._mask = np.array((1 << m) - 1, dtype=self.dtype)
        self._frob_tabs = {}
        if m <= 8:
            n = 1 << m
            mul = np.zeros((n, n), dtype=np.uint8)
            for a in range(n):
                for b in range(a, n):
                    mul[a, b] = mul[b, a] = gf2_mulmod(a, b, modulus)
            inv = np.zeros(n, dtype=np.uint8)
            for a in range(1, n):
                inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
            self.MUL, self.INV = mul, inv

    def __repr__(self):
        return "GF(2^%d) mod %s" % (self.m, _poly_str(self.modulus))

    # -- construction helpers
    def zeros(self, shape=()):
        return np.zeros(tuple(shape), dtype=self.dtype)

    def one(self, shape=()):
        return np.ones(tuple(shape), dtype=self.dtype)

    def from_int(self, v):
        return np.array(v, dtype=self.dtype)

    def to_int(self, x):
        return int(x)

    def asarray(self, x):
        return np.asarray(x, dtype=self.dtype)

    # -- arithmetic
    def add(self, a, b):
        return np.bitwise_xor(a, b)

    sub = add

    def neg(self, a):
        return a

    def mul(self, a, b):
        a = np.asarray(a, dtype=self.dtype)
        b = np.asarray(b, dtype=self.dtype)
        if self.m <= 8:
            return self.MUL[a, b]
        a, b = np.broadcast_arrays(a, b)
        r = np.zeros(a.shape, dtype=self.dtype)
        one = self.dtype(1)
        top = self.dtype(self.m - 1)
        for i in range(self.m - 1, -1, -1):
            hi = r >> top
            r = ((r << one) & self._mask) ^ (hi * self._low)
            r ^= a * ((b >> self.dtype(i)) & one)
        return r

    def sqr(self, a):
        return self.frob(a, 1) if self.q == 2 else self.mul(a, a)

    def _frob_table(self, k):
        # x -> x^(2^k) is GF(2)-linear: tabulate it per input byte
        k %= self.m
        if k not in self._frob_tabs:
            nb = self.nbytes
            tab = np.zeros((nb, 256), dtype=self.dtype)
            for j in range(nb):
                for v in range(256):
                    x = (v << (8 * j)) & ((1 << self.m) - 1)
                    for _ in range(k):
                        x = gf2_mulmod(x, x, self.modulus)
                    tab[j, v] = x
            self._frob_tabs[k] = tab
        return self._frob_tabs[k]

    def frob(self, a, k=1):
        """x -> x^(q^k), q being the prime level of the tower."""
        a = np.asarray(a, dtype=self.dtype)
        if self.q != 2 or k % self.m == 0:
            return a.copy()
        tab = self._frob_table(k)
        if self.m <= 8:
            return tab[0][a]
        r = np.zeros(a.shape, dtype=self.dtype)
        for j in range(self.nbytes):
            r ^= tab[j][(a >> self.dtype(8 * j)) & self.dtype(0xFF)]
        return r

    def pow(self, a, e):
        a = np.asarray(a, dtype=self.dtype)
        r = np.ones(a.shape, dtype=self.dtype)
        while e:
            if e & 1:
                r = self.mul(r, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return r

    def inv(self, a):
        a = np.asarray(a, dtype=self.dtype)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        if self.m <= 8:
            return self.INV[a]
        return self.pow(a, self.order - 2)

    # -- reductions over batch axes
    def sum(self, a, axis=0):
        a = np.asarray(a)
        return np.bitwise_xor.reduce(a, axis=_batch_axis(a, axis, 0))

    def is_zero(self, a):
        return np.asarray(a) == 0

    def eq(self, a, b):
        return np.asarray(a) == np.asarray(b)

    # -- coordinates over the prime level F_q
    def to_coords(self, a):
        """(..., ) -> (..., m) coefficients in F_q (q = 2 only)."""
        a = np.asarray(a, dtype=self.dtype)
        sh = np.arange(self.m, dtype=self.dtype)
        return ((a[..., None] >> sh) & self.dtype(1)).astype(np.uint8)

    def from_coords(self, c):
        c = np.asarray(c).astype(self.dtype)
        sh = np.arange(self.m, dtype=self.dtype)
        return np.bitwise_or.reduce(c << sh, axis=-1).astype(self.dtype)

    # -- bit serialization (little-endian)
    def to_bits(self, a):
        return self.to_coords(a)

    def from_bits(self, bits):
        return self.from_coords(bits)


def _batch_axis(a, axis, elem_ndim):
    nb = a.ndim - elem_ndim
    if axis < 0:
        axis += nb
    if not 0 <= axis < nb:
        raise ValueError("axis out of range")
    return axis


class ExtensionField:
    """base[x]/(f) for a monic f of degree d over ``base``.

    ``modulus`` holds the d low coefficients of f (f_0 .. f_{d-1}), each a base
    element.  Element arrays have shape (..., d, *base.elem_shape).
    """

    def __init__(self, base, modulus, check=True):
        modulus = base.asarray(modulus)
        d = modulus.shape[0]
        self.base = base
        self.d = d
        self.modulus = modulus
        self.q = base.q
        self.dtype = base.dtype
        self.elem_shape = (d,) + base.elem_shape
        self.elem_ndim = len(self.elem_shape)
        self.order = base.order ** d
        self.degree_over_q = base.degree_over_q * d
        self.bits = base.bits * d
        # rows: x^s mod f for s = d .. 2d-2, each a length-d base vector
        red = []
        cur = base.asarray(modulus).copy()  # x^d = -f_low = f_low (char 2)
        for s in range(d, 2 * d - 1):
            red.append(cur)
            # multiply by x
            top = cur[d - 1]
            nxt = np.concatenate([base.zeros((1,)), cur[:-1]], axis=0)
            nxt = base.add(nxt, base.mul(top[None], modulus))
            cur = nxt
        self._red = np.stack(red) if red else None
        self._frob_mats = {}
        if check and not _ext_irreducible_cached(self):
            raise ValueError("reducible modulus over %r" % (base,))

    def __repr__(self):
        return "Ext(%r, deg %d)" % (self.base, self.d)

    def _key(self):
        return (_field_key(self.base), _arr_key(self.modulus))

    # -- construction helpers
    def zeros(self, shape=()):
        return np.zeros(tuple(shape) + self.elem_shape, dtype=self.dtype)

    def one(self, shape=()):
        r = self.zeros(shape)
        r[(Ellipsis, 0) + (slice(None),) * self.base.elem_ndim] = self.base.one(
            tuple(shape))
        return r

    def asarray(self, x):
        return np.asarray(x, dtype=self.dtype)

    def from_int(self, v):
        bits = np.array([(v >> i) & 1 for i in range(self.bits)], dtype=np.uint8)
        return self.from_bits(bits)

    def to_int(self, x):
        bits = self.to_bits(x)
        return sum(int(b) << i for i, b in enumerate(bits))

    # -- arithmetic
    def add(self, a, b):
        return np.bitwise_xor(a, b)

    sub = add

    def neg(self, a):
        return a

    def mul(self, a, b):
        base, d = self.base, self.d
        a = np.asarray(a, dtype=self.dtype)
        b = np.asarray(b, dtype=self.dtype)
        if d == 1:
            return base.mul(a, b)
        be = base.elem_ndim
        ai = np.expand_dims(a, a.ndim - be)        # (..., d, 1, *bs)
        bj = np.expand_dims(b, b.ndim - be - 1)    # (..., 1, d, *bs)
        prod = base.mul(ai, bj)                    # (..., d, d, *bs)
        lead = prod.shape[:-(2 + be)]
        full = np.zeros(lead + (2 * d - 1,) + base.elem_shape, dtype=self.dtype)
        tail = (slice(None),) * be
        for i in range(d):
            full[(Ellipsis, slice(i, i + d)) + tail] ^= prod[(Ellipsis, i, slice(None)) + tail]
        low = full[(Ellipsis, slice(0, d)) + tail]
        high = full[(Ellipsis, slice(d, None)) + tail]  # (..., d-1, *bs)
        t = base.mul(np.expand_dims(high, high.ndim - be), self._red)  # (..., d-1, d, *bs)
        return low ^ np.bitwise_xor.reduce(t, axis=t.ndim - be - 2)

    def sqr(self, a):
        return self.mul(a, a)

    def pow(self, a, e):
        a = np.asarray(a, dtype=self.dtype)
        r = np.broadcast_to(self.one(), a.shape).copy()
        while e:
            if e & 1:
                r = self.mul(r, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return r

    def inv(self, a):
        a = np.asarray(a, dtype=self.dtype)
        if np.any(self.is_zero(a)):
            raise ZeroDivisionError("inverse of zero")
        # a^-1 = (product of the other conjugates) / norm, the norm lying in base
        step = self.base.degree_over_q
        rest = self.frob(a, step)
        for i in range(2, self.d):
            rest = self.mul(rest, self.frob(a, i * step))
        norm = self.mul(a, rest)[(Ellipsis, 0) + (slice(None),) * self.base.elem_ndim]
        ninv = self.base.inv(norm)
        return self.base.mul(rest, np.expand_dims(ninv, ninv.ndim - self.base.elem_ndim))

    def _frob_matrix(self, k):
        # (x^i)^(q^k) for i < d: the image of the power basis
        k %= self.degree_over_q
        if k not in self._frob_mats:
            x = self.zeros((self.d,))
            for i in range(self.d):
                x[i] = self.pow(self.monomial(1), i) if i else self.one()
            e = self.q ** k
            self._frob_mats[k] = self.pow(x, e)
        return self._frob_mats[k]

    def monomial(self, i):
        r = self.zeros()
        r[(i,) + (slice(None),) * self.base.elem_ndim] = self.base.one()
        return r

    def frob(self, a, k=1):
        """x -> x^(q^k), q being the prime level of the tower."""
        a = np.asarray(a, dtype=self.dtype)
        if k % self.degree_over_q == 0:
            return a.copy()
        be = self.base.elem_ndim
        P = self._frob_matrix(k)                    # (d, d, *bs)
        c = self.base.frob(a, k)                    # coefficient-wise
        t = self.base.mul(np.expand_dims(c, c.ndim - be), P)  # (..., d, d, *bs)
        return np.bitwise_xor.reduce(t, axis=t.ndim - be - 2)

    # -- reductions over batch axes
    def sum(self, a, axis=0):
        a = np.asarray(a)
        return np.bitwise_xor.reduce(a, axis=_batch_axis(a, axis, self.elem_ndim))

    def is_zero(self, a):
        a = np.asarray(a)
        return np.all(a == 0, axis=tuple(range(a.ndim - self.elem_ndim, a.ndim)))

    def eq(self, a, b):
        return self.is_zero(np.bitwise_xor(a, b))

    # -- coordinates over the prime level
    def to_coords(self, a):
        a = np.asarray(a, dtype=self.dtype)
        if isinstance(self.base, BinaryField) and self.base.degree_over_q == 1:
            return a.reshape(a.shape[:a.ndim - self.elem_ndim] + (self.d,))
        c = self.base.to_coords(a)
        return c.reshape(c.shape[:c.ndim - 2] + (-1,))

    def from_coords(self, c):
        c = np.asarray(c)
        if isinstance(self.base, BinaryField) and self.base.degree_over_q == 1:
            return c.astype(self.dtype)
        bd = self.base.degree_over_q
        return self.base.from_coords(c.reshape(c.shape[:-1] + (self.d, bd)))

    def to_bits(self, a):
        b = self.base.to_bits(np.asarray(a, dtype=self.dtype))
        return b.reshape(b.shape[:b.ndim - 2] + (-1,))

    def from_bits(self, bits):
        bits = np.asarray(bits)
        return self.base.from_bits(bits.reshape(bits.shape[:-1] + (self.d, self.base.bits)))


def _arr_key(a):
    a = np.asarray(a)
    return (a.shape, a.tobytes())


def _field_key(F):
    if isinstance(F, BinaryField):
        return ("bin", F.m, F.modulus, F.q)
    return ("ext", _field_key(F.base), _arr_key(F.modulus))


@lru_cache(maxsize=None)
def _gf2_irreducible_cached(f):
    return gf2_is_irreducible(f)


_EXT_CACHE = {}


def _ext_irreducible_cached(E):
    key = E._key()
    if key not in _EXT_CACHE:
        _EXT_CACHE[key] = ext_is_irreducible(E.base, E.modulus)
    return _EXT_CACHE[key]


# ---------------------------------------------------------------------------
# polynomials over an arbitrary field object (used for modulus checks)


def _poly_trim(F, p):
    p = list(p)
    while p and bool(F.is_zero(p[-1])):
        p.pop()
    return p


def _poly_mod(F, a, b):
    a, b = _poly_trim(F, a), _poly_trim(F, b)
    inv_lead = F.inv(b[-1])
    db = len(b) - 1
    while len(a) - 1 >= db:
        coef = F.mul(a[-1], inv_lead)
        shift = len(a) - 1 - db
        for i in range(db + 1):
            a[shift + i] = F.sub(a[shift + i], F.mul(coef, b[i]))
        a = _poly_trim(F, a)
    return a


def _poly_gcd_degree(F, a, b):
    a, b = _poly_trim(F, a), _poly_trim(F, b)
    while b:
        a, b = b, _poly_mod(F, a, b)
    return len(a) - 1


def ext_is_irreducible(base, low):
    """Rabin's test for x^d + sum low[i] x^i over ``base``."""
    d = low.shape[0]
    if d == 1:
        return True
    R = ExtensionField(base, low, check=False)
    X = R.monomial(1)
    Q = base.order

    def qpow(h, times):
        for _ in range(times):
            # x -> x^Q is a composition of squarings since Q = 2^s
            for _ in range(Q.bit_length() - 1):
                h = R.mul(h, h)
        return h

    if not bool(R.eq(qpow(X, d), X)):
        return False
    f_full = [low[i] for i in range(d)] + [base.one()]
    for p in _prime_factors(d):
        h = R.sub(qpow(X, d // p), X)
        if _poly_gcd_degree(base, [h[i] for i in range(d)], f_full) != 0:
            return False
    return True


def lex_smallest_ext(base, d, limit=1 << 20):
    """Lexicographically smallest monic irreducible of degree d over ``base``,
    comparing (c_0, .., c_{d-1}) with base elements ordered by their integer
    encoding.  Returns the coefficient integers."""
    # c_0 runs from 1 upward, the last coefficient moves fastest
    count = 0
    digits = [1] + [0] * (d - 1)
    while count < limit:
        low = np.stack([base.from_int(v) for v in digits])
        if ext_is_irreducible(base, low):
            return digits
        count += 1
        i = d - 1
        while True:
            digits[i] += 1
            if digits[i] < base.order:
                break
            digits[i] = 0
            i -= 1
    raise ValueError("search limit reached")


# ---------------------------------------------------------------------------


class FieldTower:
    """F_q, F_{q^m} and F_{q^{m eta}} for q in {2, 256}.

    mod_q: degree-8 modulus for q = 256 (int); mod_qm: integer modulus (q = 2)
    or list of m integer coefficients f_0..f_{m-1} (q = 256); mod_qme: list of
    eta integer coefficients over F_{q^m}, or None when eta = 1.
    """

    def __init__(self, q, m, eta, mod_qm, mod_qme=None, mod_q=None):
        if q not in (2, 256):
            raise ValueError("q must be 2 or 256")
        self.q, self.m, self.eta = q, m, eta
        if q == 2:
            self.Fq = BinaryField(1, 0b11)
            self.Fqm = BinaryField(m, mod_qm)
        else:
            self.Fq = BinaryField(8, mod_q, q=256)
            low = np.array(mod_qm, dtype=np.uint8)
            self.Fqm = ExtensionField(self.Fq, low)
        if eta == 1:
            self.Fqme = self.Fqm
        else:
            low = np.stack([self.Fqm.from_int(v) for v in mod_qme])
            self.Fqme = ExtensionField(self.Fqm, low)
        self.log2q = 1 if q == 2 else 8

    def embed(self, x):
        """F_{q^m} -> F_{q^{m eta}}."""
        x = np.asarray(x, dtype=self.Fqm.dtype)
        if self.eta == 1:
            return x.copy()
        nb = x.ndim - self.Fqm.elem_ndim
        out = self.Fqme.zeros(x.shape[:nb])
        out[(Ellipsis, 0) + (slice(None),) * self.Fqm.elem_ndim] = x
        return out

    def mul_base(self, a, b):
        """a in F_{q^{m eta}} times b in F_{q^m}."""
        if self.eta == 1:
            return self.Fqm.mul(a, b)
        b = np.asarray(b)
        return self.Fqm.mul(a, np.expand_dims(b, b.ndim - self.Fqm.elem_ndim))

    def scale(self, F, s, x):
        """Multiply elements x of F by scalars s in F_q (s broadcast over batch)."""
        s = np.asarray(s, dtype=np.uint8)
        s = s.reshape(s.shape + (1,) * F.elem_ndim)
        if self.q == 2:
            return x * s.astype(F.dtype)
        return self.Fq.MUL[s, x]
