"""Finite-support fuzzy languages and their controllability lattice.

A language maps event strings to degrees and is zero outside a finite
support.  On top of the pointwise lattice (Zadeh min/max) this module
implements prefix closure, the controllability test with respect to a
prefix-closed bound M̃ and uncontrollability attributes, and the two
closure operations:

* the supremal controllable sublanguage K̃^< — computed by *iterated
  repair*: while some (s, σ) violates the controllability inequality,
  cap every member of the support extending s at pr(f)(s·σ).  Every
  controllable sublanguage survives each cap, the capped language stays
  inside the original, and values only move down a finite value lattice,
  so the fixpoint is exactly the supremum of the family.
* the infimal prefix-closed controllable superlanguage K̃^> — computed by
  *iterated raise* starting from pr(K̃): lift g(s·σ) to
  min(g(s), Σ̃uc(σ), M̃(s·σ)) whenever that exceeds it.  Raises never
  break prefix monotonicity (the new value is ≤ g(s)), never leave M̃,
  and every member of the family dominates every raise, so the fixpoint
  is exactly the infimum.

All quantification "for all s ∈ Σ̃*" collapses to the finite supports:
outside them the left side of every inequality is 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, NamedTuple, Optional, Tuple

from .algebra import ZERO, ONE, parse_degree
from .errors import AlphabetMismatch, KNotContainedInM, MNotPrefixClosed

EventString = Tuple[str, ...]


def _uc_map(attrs) -> Mapping[str, Fraction]:
    """Accept either a plain mapping event → degree or an EventAttributes."""
    return getattr(attrs, "uncontrollability", attrs)


@dataclass(frozen=True)
class FiniteSupportFuzzyLanguage:
    alphabet: Tuple[str, ...]
    degrees: Mapping[EventString, Fraction]

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        clean: Dict[EventString, Fraction] = {}
        for s, d in self.degrees.items():
            s = tuple(s)
            for e in s:
                if e not in self.alphabet:
                    raise AlphabetMismatch(f"string {s} uses undeclared event {e!r}")
            d = parse_degree(d)
            if d != ZERO:
                clean[s] = d
        object.__setattr__(self, "degrees", clean)

    def __call__(self, s: Iterable[str]) -> Fraction:
        return self.degrees.get(tuple(s), ZERO)

    def support(self) -> Tuple[EventString, ...]:
        return tuple(sorted(self.degrees, key=lambda s: (len(s), s)))

    def with_degrees(self, degrees: Mapping[EventString, Fraction]) -> "FiniteSupportFuzzyLanguage":
        return FiniteSupportFuzzyLanguage(self.alphabet, degrees)

    def __eq__(self, other):
        if not isinstance(other, FiniteSupportFuzzyLanguage):
            return NotImplemented
        return set(self.alphabet) == set(other.alphabet) and dict(self.degrees) == dict(other.degrees)

    def __hash__(self):
        return hash((frozenset(self.alphabet), frozenset(self.degrees.items())))


def zero_language(alphabet: Iterable[str]) -> FiniteSupportFuzzyLanguage:
    return FiniteSupportFuzzyLanguage(tuple(alphabet), {})


def prefix_closure(l: FiniteSupportFuzzyLanguage) -> FiniteSupportFuzzyLanguage:
    """pr(l)(s) = max degree of any member extending s; idempotent."""
    out: Dict[EventString, Fraction] = {}
    for s, d in l.degrees.items():
        for i in range(len(s) + 1):
            p = s[:i]
            if d > out.get(p, ZERO):
                out[p] = d
    return l.with_degrees(out)


def is_prefix_closed(l: FiniteSupportFuzzyLanguage) -> bool:
    return prefix_closure(l) == l


def _require_same_alphabet(a: FiniteSupportFuzzyLanguage, b: FiniteSupportFuzzyLanguage):
    if set(a.alphabet) != set(b.alphabet):
        raise AlphabetMismatch(f"alphabets differ: {sorted(a.alphabet)} vs {sorted(b.alphabet)}")


def fuzzy_and(a: FiniteSupportFuzzyLanguage, b: FiniteSupportFuzzyLanguage) -> FiniteSupportFuzzyLanguage:
    """Pointwise Zadeh AND (min)."""
    _require_same_alphabet(a, b)
    return a.with_degrees({s: min(d, b(s)) for s, d in a.degrees.items()})


def fuzzy_or(a: FiniteSupportFuzzyLanguage, b: FiniteSupportFuzzyLanguage) -> FiniteSupportFuzzyLanguage:
    """Pointwise Zadeh OR (max)."""
    _require_same_alphabet(a, b)
    merged = dict(a.degrees)
    for s, d in b.degrees.items():
        if d > merged.get(s, ZERO):
            merged[s] = d
    return a.with_degrees(merged)


def is_sublanguage(a: FiniteSupportFuzzyLanguage, b: FiniteSupportFuzzyLanguage) -> bool:
    return all(d <= b(s) for s, d in a.degrees.items())


class ControllabilityWitness(NamedTuple):
    s: EventString
    sigma: str
    lhs: Fraction
    rhs: Fraction


def _violation(
    domain: Iterable[EventString],
    alphabet: Tuple[str, ...],
    uc: Mapping[str, Fraction],
    bound,
    value_at,
) -> Optional[ControllabilityWitness]:
    for s in sorted(domain, key=lambda t: (len(t), t)):
        for sigma in alphabet:
            lhs = min(value_at(s), uc.get(sigma, ZERO), bound(s + (sigma,)))
            rhs = value_at(s + (sigma,))
            if lhs > rhs:
                return ControllabilityWitness(s, sigma, lhs, rhs)
    return None


def is_controllable_wrt(
    k: FiniteSupportFuzzyLanguage,
    m: FiniteSupportFuzzyLanguage,
    attrs,
) -> Tuple[bool, Optional[ControllabilityWitness]]:
    """min(pr(k)(s), Σ̃uc(σ), m(s·σ)) ≤ pr(k)(s·σ) for all s, σ.

    m must be prefix-closed.  The scan ranges over pr(k)'s support only:
    elsewhere the left side is 0.
    """
    _require_same_alphabet(k, m)
    if not is_prefix_closed(m):
        raise MNotPrefixClosed("the bounding language M̃ must be prefix-closed")
    uc = _uc_map(attrs)
    prk = prefix_closure(k)
    witness = _violation(prk.degrees, k.alphabet, uc, m, prk)
    return witness is None, witness


def value_lattice(
    k: FiniteSupportFuzzyLanguage, m: FiniteSupportFuzzyLanguage, attrs
) -> Tuple[Fraction, ...]:
    """Every value the fixpoints can produce: inputs plus the bounds 0 and 1."""
    uc = _uc_map(attrs)
    values = {ZERO, ONE}
    values.update(k.degrees.values())
    values.update(m.degrees.values())
    values.update(uc.values())
    return tuple(sorted(values))


def supremal_controllable_sublanguage(
    k: FiniteSupportFuzzyLanguage,
    m: FiniteSupportFuzzyLanguage,
    attrs,
) -> FiniteSupportFuzzyLanguage:
    """K̃^<: the union of all controllable sublanguages of k (iterated repair)."""
    _require_same_alphabet(k, m)
    if not is_prefix_closed(m):
        raise MNotPrefixClosed("the bounding language M̃ must be prefix-closed")
    uc = _uc_map(attrs)
    f = dict(k.degrees)
    while True:
        pr_f = prefix_closure(k.with_degrees(f))
        witness = _violation(pr_f.degrees, k.alphabet, uc, m, pr_f)
        if witness is None:
            break
        cap = witness.rhs  # pr(f)(s·σ)
        s = witness.s
        for t in list(f):
            if t[: len(s)] == s and f[t] > cap:
                f[t] = cap
        f = {t: d for t, d in f.items() if d != ZERO}
    return k.with_degrees(f)


def infimal_prefix_closed_superlanguage(
    k: FiniteSupportFuzzyLanguage,
    m: FiniteSupportFuzzyLanguage,
    attrs,
) -> FiniteSupportFuzzyLanguage:
    """K̃^>: the smallest prefix-closed controllable language between k and m
    (iterated raise from pr(k))."""
    _require_same_alphabet(k, m)
    if not is_prefix_closed(m):
        raise MNotPrefixClosed("the bounding language M̃ must be prefix-closed")
    if not is_sublanguage(k, m):
        raise KNotContainedInM("K̃ must be a sublanguage of M̃")
    uc = _uc_map(attrs)
    g = dict(prefix_closure(k).degrees)
    while True:
        lang = k.with_degrees(g)
        witness = _violation(g, k.alphabet, uc, m, lang)
        if witness is None:
            break
        g[witness.s + (witness.sigma,)] = witness.lhs
    return k.with_degrees(g)
