"""Known-answer vectors: generation, parsing and checking.

Sign records use a NIST-like text layout, one `key = value` per line and a
blank line between records.  Every input is derived from SHAKE256 over a
label, so regeneration is bit-exact.
"""
import hashlib
import json
from importlib import resources

from .keys import keygen, PublicKey
from .params import PARAMS, get_params
from .symmetric import Symmetric, be32

FIELDS = ("count", "seed", "rand", "mlen", "msg", "pk", "sk", "smlen", "sig")


def kat_inputs(params, count):
    """(seed_sk, rand, msg) for record `count`."""
    x = hashlib.shake_256(b"ranksd-kat" + params.name.encode() + be32(count)).digest(
        2 * params.seed_bytes + 33 * (count + 1))
    sb = params.seed_bytes
    return x[:sb], x[sb:2 * sb], x[2 * sb:]


def sign_record(params, count):
    from . import scheme
    seed, rand, msg = kat_inputs(params, count)
    pk, sk = keygen(seed, params)
    s = scheme(params)
    sig = s.encode(s.sign(sk, pk, msg, rand))
    return {"count": count, "seed": seed.hex(), "rand": rand.hex(), "mlen": len(msg),
            "msg": msg.hex(), "pk": pk.to_bytes().hex(), "sk": sk.to_bytes().hex(),
            "smlen": len(sig), "sig": sig.hex()}


def format_records(name, records):
    out = ["# %s" % name, ""]
    for rec in records:
        out += ["%s = %s" % (f, rec[f]) for f in FIELDS] + [""]
    return "\n".join(out)


def parse_records(text):
    """-> (name, [record dicts])."""
    name, recs, cur = None, [], {}
    for line in text.splitlines():
        line = line.strip()
        if line.startswith("#"):
            name = name or line[1:].strip()
            continue
        if not line:
            if cur:
                recs.append(cur)
                cur = {}
            continue
        key, _, val = line.partition("=")
        key, val = key.strip(), val.strip()
        cur[key] = int(val) if key in ("count", "mlen", "smlen") else val
    if cur:
        recs.append(cur)
    return name, recs


def check_record(params, rec):
    """List of problems (empty when the record reproduces and verifies)."""
    from . import scheme
    errs = []
    seed, rand, msg = (bytes.fromhex(rec[f]) for f in ("seed", "rand", "msg"))
    pk, sk = keygen(seed, params)
    if pk.to_bytes().hex() != rec["pk"]:
        errs.append("pk mismatch")
    if sk.to_bytes().hex() != rec["sk"]:
        errs.append("sk mismatch")
    s = scheme(params)
    sig = bytes.fromhex(rec["sig"])
    if len(sig) != rec["smlen"]:
        errs.append("smlen mismatch")
    stored_pk = PublicKey.from_bytes(bytes.fromhex(rec["pk"]))
    if not s.verify(stored_pk, msg, sig):
        errs.append("stored signature rejected")
    if s.encode(s.sign(sk, pk, msg, rand)) != sig:
        errs.append("signature mismatch")
    return errs


# -- symmetric vectors ------------------------------------------------------


GGM_ROOT = bytes(range(16))
GGM_SALT = bytes(range(32))


def symmetric_vectors():
    out = {"empty_digest": {}, "ggm": {}}
    for lam in (128, 192, 256):
        sym = Symmetric(lam)
        out["empty_digest"][str(lam)] = [sym.digest(d).hex() for d in range(15)]
    sym = Symmetric(128)
    for N in (4, 256):
        _, leaves = sym.ggm_expand(GGM_ROOT, GGM_SALT, N)
        out["ggm"][str(N)] = [[s.hex(), r.hex()] for s, r in leaves]
    return out


def check_symmetric(ref):
    return symmetric_vectors() == ref


# -- shipped files ------------------------------------------------------------


def shipped_names():
    return [n for n, p in PARAMS.items() if p.signing]


def data_file(name):
    return resources.files("ranksd") / "data" / name


def load_shipped(name):
    _, recs = parse_records(data_file("kat_%s.rsp" % name).read_text())
    return get_params(name), recs


def load_symmetric():
    return json.loads(data_file("symmetric_kat.json").read_text())
