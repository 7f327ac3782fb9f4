"""Recursive-descent parser for the sequence language.

    seq := "pow:" INT | "fact" | "poly:" INT ("," INT)* | "list:" PATH
         | "affine(" seq "," INT "," INT ")" | "interleave(" seq "," seq ")"
         | "plant(" seq "," seq "," descriptor ")" | "vec(" seq ("," seq)* ")"

Polynomial coefficients are read greedily, so a ``poly`` inside ``affine``
has to be the only coefficient list in sight (wrap it in ``vec`` or use a
list file otherwise).
"""

from __future__ import annotations

from ._scan import Scanner
from .convergence.sequences import Affine, Fact, Interleave, ListSeq, Plant, Poly, Pow, Vec
from .ideals.descriptors import parse_descriptor_at

_STARTS = ["pow:", "fact", "poly:", "list:", "affine(", "interleave(", "plant(", "vec("]


def _seq(sc: Scanner):
    if sc.accept("pow:"):
        return Pow(sc.integer())
    if sc.accept("fact"):
        return Fact()
    if sc.accept("poly:"):
        coeffs = [sc.integer()]
        while sc.peek(",") and _int_follows(sc):
            sc.accept(",")
            coeffs.append(sc.integer())
        return Poly(tuple(coeffs))
    if sc.accept("list:"):
        start = sc.pos
        path = sc.until(",)")
        if not path:
            sc.pos = start
            sc.fail(["PATH"])
        try:
            return ListSeq.from_file(path)
        except OSError:
            sc.pos = start
            sc.fail(["readable PATH"])
        except ValueError:
            sc.pos = start
            sc.fail(["file of integers"])
    if sc.accept("affine("):
        s = _seq(sc)
        sc.expect(",")
        a = sc.integer()
        sc.expect(",")
        b = sc.integer()
        sc.expect(")")
        return Affine(s, a, b)
    if sc.accept("interleave("):
        s = _seq(sc)
        sc.expect(",")
        t = _seq(sc)
        sc.expect(")")
        return Interleave(s, t)
    if sc.accept("plant("):
        s = _seq(sc)
        sc.expect(",")
        t = _seq(sc)
        sc.expect(",")
        d = parse_descriptor_at(sc)
        sc.expect(")")
        return Plant(s, t, d)
    if sc.accept("vec("):
        parts = [_seq(sc)]
        while sc.accept(","):
            parts.append(_seq(sc))
        sc.expect(")")
        return Vec(tuple(parts))
    sc.fail(_STARTS)


def _int_follows(sc: Scanner) -> bool:
    rest = sc.text[sc.pos + 1:]
    return bool(rest) and (rest[0].isdigit() or (rest[0] in "+-" and rest[1:2].isdigit()))


def parse_sequence_spec(text: str):
    sc = Scanner(text.strip())
    u = _seq(sc)
    sc.end()
    return u
