"""Exception sets E_k = {n : u(n)x not in T_k} and ideal-convergence verdicts."""

from __future__ import annotations

from fractions import Fraction

from ..errors import CycleNotDetected, HorizonLimit, NoExtraction, UnsupportedSequence
from ..groups import CirclePoint, NumericCirclePoint, Outcome, SparseSum, in_Tk
from ..ideals import analysis
from ..ideals.catalog import DENSITY, ideal_member
from ..ideals.descriptors import EMPTY, EvPeriodic, Finite, diff, inter, union
from ..verdict import IN, OUT, ExceptionSets, Verdict, undecided
from .residues import DEFAULT_HORIZON, ResidueCycle, residue_tree
from .sequences import SparseSumSeq, is_integer_valued


def _value_norm(r: int, p: int, q: int) -> Fraction:
    m = r * p % q
    return Fraction(min(m, q - m), q)


def critical_k(v: Fraction) -> int:
    """Least k with v outside T_k, for a norm value v > 0."""
    return int(1 / (4 * v)) + 1


def _bits_descriptor(tree, bad):
    if isinstance(tree, ResidueCycle):
        return EvPeriodic("".join("1" if bad(r) else "0" for r in tree.preperiod),
                          "".join("1" if bad(r) else "0" for r in tree.period))
    a = _bits_descriptor(tree.inside, bad)
    b = _bits_descriptor(tree.outside, bad)
    if a == b:
        return a
    return union(inter(tree.where, a), diff(b, tree.where))


def _tree(u, q: int, horizon: int):
    if not is_integer_valued(u):
        raise UnsupportedSequence(f"{u} is not integer valued")
    return residue_tree(u, q, horizon)


def exception_set(u, x: CirclePoint, k: int, horizon: int = DEFAULT_HORIZON):
    """Exact descriptor of {n : ||u(n) x|| > 1/(4k)}."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    p, q = x.numerator, x.denominator
    if q == 1:
        return EMPTY
    bound = Fraction(1, 4 * k)
    return _bits_descriptor(_tree(u, q, horizon), lambda r: _value_norm(r, p, q) > bound)


def critical_scales(u, x: CirclePoint, horizon: int = DEFAULT_HORIZON) -> list[int]:
    """Sorted scales k at which E_k grows; past the last one E_k is constant."""
    p, q = x.numerator, x.denominator
    if q == 1:
        return []
    vals = {_value_norm(r, p, q) for r in _tree(u, q, horizon).residues()}
    return sorted({critical_k(v) for v in vals if v > 0})


def iconverges(u, x, I, kmax: int = 8, horizon: int = DEFAULT_HORIZON) -> Verdict:
    """Does u(n) x tend to 0 along the ideal I?

    On the exact path every scale is covered: E_k only changes at the
    critical scales, so ``kmax`` matters for numeric points alone.
    """
    if isinstance(x, NumericCirclePoint):
        return _numeric_verdict(u, x, I, kmax, horizon)
    try:
        ks = critical_scales(u, x, horizon)
    except CycleNotDetected as e:
        return undecided(seq=str(u), point=str(x), horizon=e.horizon, reason=str(e))
    except UnsupportedSequence as e:
        return undecided(seq=str(u), point=str(x), reason=str(e))
    sets = tuple((k, exception_set(u, x, k, horizon)) for k in ks)
    top = ks[-1] if ks else 1
    biggest = sets[-1][1] if sets else EMPTY
    v = ideal_member(I, biggest, top)
    if v.outcome is IN:
        return Verdict(IN, ExceptionSets(sets, top))
    if v.outcome is Outcome.UNDECIDED:
        return v
    for k, E in sets:
        w = ideal_member(I, E, k)
        if w.outcome is OUT:
            return w
    return v


def _numeric_verdict(u, x: NumericCirclePoint, I, kmax: int, horizon: int) -> Verdict:
    """Prefix estimates only: a finite sample never certifies a tail."""
    n_max = min(horizon, 4096)
    estimates = {}
    for k in range(1, kmax + 1):
        out = unsure = 0
        for n in range(n_max):
            try:
                r = in_Tk(u.at(n) * x, k)
            except HorizonLimit:
                n_max = n
                break
            out += r is Outcome.OUT
            unsure += r is Outcome.UNDECIDED
        estimates[k] = {"violations": out, "undecided": unsure, "sampled": n_max}
    return undecided(seq=str(u), point=str(x), ideal=str(I), kmax=kmax, horizon=n_max,
                     estimates=estimates, reason="numeric point: prefix estimates only")


def extract_convergent_cofinite(u, x: CirclePoint, I=DENSITY, horizon: int = DEFAULT_HORIZON):
    """A density-zero J with every E_k minus J finite."""
    v = iconverges(u, x, I, horizon=horizon)
    if v.outcome is OUT:
        raise NoExtraction(f"{u} does not converge at {x} along {I}")
    if v.outcome is Outcome.UNDECIDED:
        raise HorizonLimit(f"no exact verdict for {u} at {x}")
    sets = v.certificate.sets
    if not sets:
        return EMPTY
    biggest = sets[-1][1]
    J = EMPTY if analysis.is_infinite(biggest) is False else biggest
    assert analysis.density(J) == 0
    assert all(analysis.is_infinite(diff(E, J)) is False for _, E in sets)
    return J


def sparse_sum_exception_set(u: SparseSumSeq, scale: int, avoid: SparseSum):
    """{n : scale * u(n) == avoid}, the exceptions to the neighbourhood G minus {avoid}."""
    if avoid == SparseSum():
        raise ValueError("a neighbourhood of 0 cannot omit 0")
    hits = lambda h: (scale * h - avoid.head) % avoid.head_mod == 0
    if scale % 2 == 0:
        if avoid.tail:
            return EMPTY
        on, off = hits(u.c), hits(0)
        if on and off:
            return EvPeriodic("", "1")
        if on:
            return u.marked
        return diff(EvPeriodic("", "1"), u.marked) if off else EMPTY
    if len(avoid.tail) != 1:
        return EMPTY
    (n,) = avoid.tail
    return Finite((n,)) if hits(u.c if u.marked.contains(n) else 0) else EMPTY
