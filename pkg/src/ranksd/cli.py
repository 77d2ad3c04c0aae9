"""Command-line front end.

    ranksd keygen   --params NAME --out PREFIX [--seed HEX]
    ranksd sign     --sk FILE --in MSG --out SIG [--seed HEX] [--threads T]
    ranksd verify   --pk FILE --in MSG --sig SIG
    ranksd kat-gen  --params NAME [--count C] --out FILE
    ranksd kat-check [--in FILE] [--params NAME]
    ranksd estimate [--level I|III|V] [--params NAME] [--omega W] [--format text|csv|json]

Exit status: 0 success/accept, 1 reject or failure, 2 usage error.
"""
import argparse
import hashlib
import json
import os
import sys
from dataclasses import asdict

from . import scheme
from .estimator import attack_costs, signature_size, table_report
from .kat import (FIELDS, check_record, check_symmetric, format_records, load_shipped,
                  load_symmetric, parse_records, shipped_names, sign_record)
from .keys import PublicKey, SecretKey, keygen, public_key
from .params import LEVELS, PARAMS, get_params


class CliError(Exception):
    pass


def _seed_bytes(hexstr, n, label):
    """Exactly n bytes from a hex seed; other lengths are hashed down."""
    try:
        raw = bytes.fromhex(hexstr)
    except ValueError:
        raise CliError("--seed must be hex") from None
    if len(raw) == n:
        return raw
    return hashlib.shake_256(label + raw).digest(n)


def _write(path, data, fmt):
    blob = (data.hex() + "\n").encode() if fmt == "hex" else data
    if path == "-":
        sys.stdout.buffer.write(blob)
    else:
        with open(path, "wb") as f:
            f.write(blob)


def _read(path, fmt):
    try:
        with open(path, "rb") as f:
            data = f.read()
    except OSError as e:
        raise CliError(str(e)) from None
    if fmt == "hex":
        try:
            return bytes.fromhex(data.decode().strip())
        except (UnicodeDecodeError, ValueError):
            raise CliError("%s is not valid hex" % path) from None
    return data


def _read_msg(path):
    if path in (None, "-"):
        return sys.stdin.buffer.read()
    try:
        with open(path, "rb") as f:
            return f.read()
    except OSError as e:
        raise CliError(str(e)) from None


# -- subcommands ----------------------------------------------------------------


def cmd_keygen(a):
    p = get_params(a.params)
    seed = _seed_bytes(a.seed, p.seed_bytes, b"keygen") if a.seed else os.urandom(p.seed_bytes)
    pk, sk = keygen(seed, p)
    _write(a.out + ".pk", pk.to_bytes(), a.format)
    _write(a.out + ".sk", sk.to_bytes(), a.format)
    return 0


def cmd_sign(a):
    try:
        sk = SecretKey.from_bytes(_read(a.sk, a.format))
    except ValueError as e:
        raise CliError("bad secret key: %s" % e) from None
    p = sk.params
    msg = _read_msg(a.inp)
    rand = _seed_bytes(a.seed, p.seed_bytes, b"sign") if a.seed else os.urandom(p.seed_bytes)
    s = scheme(p, a.threads)
    sig = s.encode(s.sign(sk, public_key(sk), msg, rand))
    _write(a.out, sig, a.format)
    return 0


def cmd_verify(a):
    try:
        pk = PublicKey.from_bytes(_read(a.pk, a.format))
    except ValueError as e:
        raise CliError("bad public key: %s" % e) from None
    msg = _read_msg(a.inp)
    sig = _read(a.sig, a.format)
    ok = scheme(pk.params).verify(pk, msg, sig)
    print("accept" if ok else "reject")
    return 0 if ok else 1


def cmd_kat_gen(a):
    p = get_params(a.params)
    if not p.signing:
        raise CliError("%s has no signing algorithm" % p.name)
    recs = [sign_record(p, i) for i in range(a.count)]
    text = format_records(p.name, recs)
    if a.out == "-":
        sys.stdout.write(text)
    else:
        with open(a.out, "w") as f:
            f.write(text)
    return 0


def cmd_kat_check(a):
    bad = 0
    if a.inp:
        try:
            with open(a.inp) as f:
                name, recs = parse_records(f.read())
        except OSError as e:
            raise CliError(str(e)) from None
        if not recs or any(set(FIELDS) - set(r) for r in recs):
            raise CliError("malformed KAT file")
        sets = [(get_params(a.params or name), recs)]
    else:
        names = [a.params] if a.params else shipped_names()
        sets = [load_shipped(n) for n in names]
        if not check_symmetric(load_symmetric()):
            print("symmetric vectors: FAIL")
            bad += 1
        else:
            print("symmetric vectors: ok")
    for p, recs in sets:
        for rec in recs:
            errs = check_record(p, rec)
            bad += bool(errs)
            print("%s #%d: %s" % (p.name, rec["count"], ", ".join(errs) or "ok"))
    return 1 if bad else 0


def cmd_estimate(a):
    if a.params:
        p = get_params(a.params)
        rep = asdict(attack_costs(p, a.omega))
        rep["sig_bytes"] = signature_size(p)
        if a.format == "json":
            print(json.dumps(rep, indent=2, default=str))
        else:
            for k, v in rep.items():
                print("%-15s %s" % (k, "%.2f" % v if isinstance(v, float) else v))
        return 0
    levels = [a.level] if a.level else list(LEVELS)
    for lv in levels:
        if a.format == "text":
            print("Level %s" % lv)
        sys.stdout.write(table_report(lv, a.format, a.omega))
    return 0


def build_parser():
    ap = argparse.ArgumentParser(prog="ranksd", description="Rank-SD MPC-in-the-Head signatures")
    sub = ap.add_subparsers(dest="cmd", required=True)
    names = sorted(PARAMS)

    def io_fmt(sp):
        sp.add_argument("--format", choices=["bin", "hex"], default="bin")

    sp = sub.add_parser("keygen", help="generate a key pair")
    sp.add_argument("--params", required=True, choices=names)
    sp.add_argument("--out", required=True, help="output prefix (writes PREFIX.pk, PREFIX.sk)")
    sp.add_argument("--seed", help="hex seed for deterministic keys")
    io_fmt(sp)
    sp.set_defaults(fn=cmd_keygen)

    sp = sub.add_parser("sign", help="sign a message file")
    sp.add_argument("--sk", required=True)
    sp.add_argument("--in", dest="inp", default="-")
    sp.add_argument("--out", required=True)
    sp.add_argument("--seed", help="hex seed replacing the fresh signing randomness")
    sp.add_argument("--threads", type=int, default=1)
    io_fmt(sp)
    sp.set_defaults(fn=cmd_sign)

    sp = sub.add_parser("verify", help="verify a detached signature")
    sp.add_argument("--pk", required=True)
    sp.add_argument("--in", dest="inp", default="-")
    sp.add_argument("--sig", required=True)
    io_fmt(sp)
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("kat-gen", help="write deterministic sign vectors")
    sp.add_argument("--params", required=True, choices=names)
    sp.add_argument("--count", type=int, default=2)
    sp.add_argument("--out", default="-")
    sp.set_defaults(fn=cmd_kat_gen)

    sp = sub.add_parser("kat-check", help="check vectors (default: the shipped ones)")
    sp.add_argument("--in", dest="inp")
    sp.add_argument("--params", choices=names)
    sp.set_defaults(fn=cmd_kat_check)

    sp = sub.add_parser("estimate", help="attack costs and sizes")
    sp.add_argument("--level", choices=list(LEVELS))
    sp.add_argument("--params", choices=names)
    sp.add_argument("--omega", type=float, default=2.0)
    sp.add_argument("--format", choices=["text", "csv", "json"], default="text")
    sp.set_defaults(fn=cmd_estimate)
    return ap


def run(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:  # argparse: usage errors exit 2, --help exits 0
        return e.code if isinstance(e.code, int) else 2
    try:
        return args.fn(args)
    except (CliError, ValueError, KeyError) as e:
        print("ranksd: error: %s" % e, file=sys.stderr)
        return 1


def main(argv=None):
    sys.exit(run(argv))
