"""Rank-SD MPC-in-the-Head signatures (hypercube and threshold variants)."""
from .params import PARAMS, HYPERCUBE, RankSdParams, get_params, toy_params
from .keys import PublicKey, SecretKey, keygen, public_key
from .hypercube import Hypercube
from .threshold import Threshold

__version__ = "0.1.0"


def scheme(params, threads=1):
    """Signer/verifier object for a parameter set."""
    if params.variant == HYPERCUBE:
        return Hypercube(params, threads)
    if not params.signing:
        raise ValueError("%s is estimator-only (no signing)" % params.name)
    return Threshold(params, threads)


def sign(sk, msg, rand=b"", threads=1):
    """Detached signature bytes."""
    pk = public_key(sk)
    s = scheme(sk.params, threads)
    return s.encode(s.sign(sk, pk, msg, rand))


def verify(pk, msg, sig):
    return scheme(pk.params).verify(pk, msg, bytes(sig))


__all__ = ["PARAMS", "RankSdParams", "get_params", "toy_params", "PublicKey", "SecretKey",
           "keygen", "public_key", "Hypercube", "Threshold", "scheme", "sign", "verify"]
