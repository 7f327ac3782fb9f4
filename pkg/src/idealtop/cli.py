"""Command-line front end: ``idealtop <verb> [flags]``.

Exit codes: 0 In / true / found, 1 Out / false / none found, 2 undecided or
horizon-limited, 3 usage errors.  JSON output is a run record whose
``result`` part depends only on the inputs.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .charsub import fsd_consistency, member_s, scan_csv, subgroup_scan_finite, tb_evidence
from .convergence import CACHE, extract_convergent_cofinite, iconverges
from .dsl import parse_sequence_spec
from .errors import (ChainNotAscending, CycleNotDetected, GroupTooLarge, HorizonLimit, IdealTopError,
                     NoExtraction, ParseError, ShapeMismatch, WindowOverflow, ZeroDenominator)
from .groups import CirclePoint, Outcome, parse_point
from .ideals import analysis
from .ideals.catalog import exh_member, parse_ideal
from .ideals.descriptors import count, parse_descriptor
from .ideals.submeasures import BUILTIN
from .tseq import (RefutationCertificate, cover_index, decode_element, encode_element, element_key,
                   nbhd_stage, t_refute, verify_refutation)
from .verdict import jsonable

SCHEMA_VERSION = 1
EXIT = {Outcome.IN: 0, Outcome.OUT: 1, Outcome.UNDECIDED: 2}
USAGE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


# ------------------------------------------------------------------- verbs

def _outcome(v) -> dict:
    return v.to_dict()


def cmd_iconv(a):
    u, I = parse_sequence_spec(a.seq), parse_ideal(a.ideal)
    x = parse_point(a.point)
    v = iconverges(u, x, I, a.kmax, a.horizon)
    result = _outcome(v)
    if a.extract:
        try:
            result["extraction"] = str(extract_convergent_cofinite(u, x, I, a.horizon))
        except NoExtraction as e:
            result["extraction"] = None
            result["extraction_error"] = str(e)
    return result, EXIT[v.outcome]


def cmd_member(a):
    u, I = parse_sequence_spec(a.seq), parse_ideal(a.ideal)
    v = member_s(parse_point(a.point), u, I, a.kmax, a.horizon)
    return _outcome(v), EXIT[v.outcome]


def _shape(text: str) -> tuple:
    try:
        orders = tuple(int(n) for n in text.split(","))
    except ValueError:
        raise ParseError(text, 0, ["n1,n2,..."]) from None
    if not orders or any(n < 2 for n in orders):
        raise UsageError("group orders must all be >= 2")
    return orders


def cmd_scan_finite(a):
    fam, rows = subgroup_scan_finite(_shape(a.shape), parse_sequence_spec(a.seq), parse_ideal(a.ideal),
                                     workers=a.workers, with_rows=True)
    return {"family": fam.to_dict(), "_rows": rows}, 0


def cmd_tb_scan(a):
    rep = tb_evidence(parse_sequence_spec(a.seq), parse_ideal(a.ideal), a.qmax, workers=a.workers)
    out = rep.to_dict()
    out["_rows"] = list(rep.rows)
    return out, 0 if rep.evidence else 1


def cmd_refute_t(a):
    u = parse_sequence_spec(a.seq)
    exclude = parse_descriptor(a.descriptor) if a.descriptor else None
    cert = t_refute(u, a.kmax, a.m, a.horizon, a.window, exclude)
    if cert is None:
        return {"found": False, "kmax": a.kmax, "M": a.m}, 1
    if a.cert_out:
        Path(a.cert_out).write_text(cert.to_json() + "\n")
    return {"found": True, "certificate": cert.to_dict()}, 0


def cmd_verify_cert(a):
    try:
        cert = RefutationCertificate.from_json(Path(a.cert).read_text())
    except OSError as e:
        raise UsageError(f"cannot read certificate: {e}") from None
    except (ValueError, KeyError, TypeError) as e:
        return {"valid": False, "reason": f"malformed certificate: {e}"}, 1
    text = a.seq or cert.seq
    if not text:
        raise UsageError("the certificate names no sequence; pass --seq")
    ok = verify_refutation(cert, parse_sequence_spec(text))
    return {"valid": ok, "seq": text, "g": encode_element(cert.g), "k": cert.k, "M": cert.M}, 0 if ok else 1


def cmd_nbhd(a):
    chain = [parse_descriptor(c) for c in a.chain]
    S = nbhd_stage(parse_sequence_spec(a.seq), chain, a.horizon, a.window)
    return {"size": len(S), "elements": [encode_element(g) for g in sorted(S, key=element_key)]}, 0


def cmd_cover(a):
    u = parse_sequence_spec(a.seq)
    g = decode_element(json.loads(a.g)) if a.g.strip().startswith(("{", "[")) else int(a.g)
    I = parse_descriptor(a.descriptor) if a.descriptor else None
    m = cover_index(g, u, I, a.mmax, a.horizon, a.window)
    return {"covered": m is not None, "m": m}, 0 if m is not None else 1


def cmd_density(a):
    A = parse_descriptor(a.descriptor)
    lo, hi, exact = analysis.density_bounds(A)
    out = {"descriptor": str(A), "lower": str(lo), "upper": str(hi), "exact": exact,
           "infinite": analysis.is_infinite(A)}
    if a.n is not None:
        out["count"] = count(A, a.n)
    return out, 0


def cmd_exh(a):
    v = exh_member(BUILTIN[a.submeasure], parse_descriptor(a.descriptor))
    return _outcome(v), EXIT[v.outcome]


def cmd_fsd(a):
    x = parse_point(a.point)
    if not isinstance(x, CirclePoint):
        raise UsageError("fsd needs an exact rational point")
    rep = fsd_consistency(x, parse_sequence_spec(a.seq), BUILTIN[a.submeasure], a.kmax, a.mmax, a.nmax, a.jmax)
    return rep.to_dict(), 0 if rep.consistent else 1


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="idealtop", description="Exact ideal-convergence toolkit.", allow_abbrev=False)
    p.add_argument("--version", action="version", version=f"idealtop {__version__}")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, fn, help_):
        sp = sub.add_parser(name, help=help_, allow_abbrev=False)
        sp.set_defaults(fn=fn)
        sp.add_argument("--out", choices=["json", "csv", "text"], default="json")
        sp.add_argument("--no-cache", action="store_true", help="bypass the residue cache")
        return sp

    sp = verb("iconv", cmd_iconv, "ideal convergence of u(n)x")
    _seq_point_ideal(sp)
    sp.add_argument("--extract", action="store_true", help="also extract a density-zero J")

    sp = verb("member", cmd_member, "membership in the characterized subgroup")
    _seq_point_ideal(sp)

    sp = verb("scan-finite", cmd_scan_finite, "exhaustive scan of a finite group")
    sp.add_argument("--shape", required=True, help="orders n1,n2,...")
    sp.add_argument("--seq", required=True)
    sp.add_argument("--ideal", required=True)
    sp.add_argument("--workers", type=int)

    sp = verb("tb-scan", cmd_tb_scan, "scan rationals p/q with q <= qmax")
    sp.add_argument("--seq", required=True)
    sp.add_argument("--ideal", required=True)
    sp.add_argument("--qmax", type=_pos, required=True)
    sp.add_argument("--workers", type=int)

    sp = verb("refute-t", cmd_refute_t, "search for a refutation of the T-sequence criterion")
    sp.add_argument("--seq", required=True)
    sp.add_argument("--kmax", type=_pos, required=True)
    sp.add_argument("--m", type=_nat, required=True)
    sp.add_argument("--horizon", type=_nat)
    sp.add_argument("--window", type=_pos, default=1000)
    sp.add_argument("--descriptor", help="indices to exclude")
    sp.add_argument("--cert-out", help="write the certificate here")

    sp = verb("verify-cert", cmd_verify_cert, "check a refutation certificate")
    sp.add_argument("--cert", required=True)
    sp.add_argument("--seq")

    sp = verb("nbhd", cmd_nbhd, "truncated neighbourhood stage")
    sp.add_argument("--seq", required=True)
    sp.add_argument("--chain", action="append", default=[], help="ascending descriptors, repeatable")
    sp.add_argument("--horizon", type=_nat, default=20)
    sp.add_argument("--window", type=_pos, default=1000)

    sp = verb("cover", cmd_cover, "least m with g in m(.)u_I")
    sp.add_argument("--g", required=True)
    sp.add_argument("--seq", required=True)
    sp.add_argument("--descriptor")
    sp.add_argument("--mmax", type=_nat, default=8)
    sp.add_argument("--horizon", type=_nat, default=20)
    sp.add_argument("--window", type=_pos, default=1000)

    sp = verb("density", cmd_density, "natural density of a descriptor")
    sp.add_argument("--descriptor", required=True)
    sp.add_argument("--n", type=_nat, help="also count members up to n")

    sp = verb("exh", cmd_exh, "membership in Exh(phi)")
    sp.add_argument("--descriptor", required=True)
    sp.add_argument("--submeasure", choices=sorted(BUILTIN), default="density")

    sp = verb("fsd", cmd_fsd, "truncated F_sigma_delta decomposition against the direct verdict")
    sp.add_argument("--seq", required=True)
    sp.add_argument("--point", required=True)
    sp.add_argument("--submeasure", choices=sorted(BUILTIN), default="density")
    sp.add_argument("--kmax", type=_pos, default=3)
    sp.add_argument("--mmax", type=_pos, default=3)
    sp.add_argument("--nmax", type=_nat, default=10)
    sp.add_argument("--jmax", type=_pos, default=200)
    return p


def _seq_point_ideal(sp):
    sp.add_argument("--seq", required=True)
    sp.add_argument("--point", required=True)
    sp.add_argument("--ideal", required=True)
    sp.add_argument("--kmax", type=_pos, default=8)
    sp.add_argument("--horizon", type=_pos, default=1 << 20)


def _nat(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("expected a natural number")
    return v


def _pos(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


# ----------------------------------------------------------------- running

def _params(a) -> dict:
    return {k: v for k, v in sorted(vars(a).items()) if k not in ("fn", "verb", "out", "no_cache")}


def _text(result: dict) -> str:
    lines = []
    for k, v in result.items():
        if not k.startswith("_"):
            lines.append(f"{k}: {json.dumps(jsonable(v), sort_keys=True)}")
    return "\n".join(lines)


def run_command(argv) -> tuple[dict, int, str]:
    """Parse and dispatch; returns (run record, exit code, output format).

    Usage errors raise SystemExit(3)."""
    a = build_parser().parse_args(argv)
    CACHE.enabled = not a.no_cache
    started = time.perf_counter()
    result, code = a.fn(a)
    record = {"schema_version": SCHEMA_VERSION, "command": a.verb, "version": __version__,
              "params": _params(a), "wall_time": round(time.perf_counter() - started, 6), "result": result}
    return record, code, a.out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        record, code, out = run_command(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else USAGE
    except (ParseError, ZeroDenominator, ShapeMismatch, GroupTooLarge, ChainNotAscending,
            UsageError, ValueError) as e:
        print(f"idealtop: {e}", file=sys.stderr)
        return USAGE
    except (WindowOverflow, HorizonLimit, CycleNotDetected) as e:
        print(f"idealtop: horizon limit: {e}", file=sys.stderr)
        return 2
    except IdealTopError as e:
        print(f"idealtop: {e}", file=sys.stderr)
        return USAGE
    result = record["result"]
    rows = result.pop("_rows", None)
    if out == "csv":
        if rows is None:
            print("idealtop: csv output is only available for scans", file=sys.stderr)
            return USAGE
        sys.stdout.write(scan_csv(rows))
    elif out == "text":
        print(_text(result))
    else:
        print(json.dumps(jsonable(record), indent=2, sort_keys=True))
    return code


if __name__ == "__main__":
    sys.exit(main())
