"""Exact arithmetic in the hyperrings ``Z_X`` over the integers.

``a o b = {a*x*b : x in X}``. Principal hyperideals are read as ``mZ``: the
hyperideal generated by ``m`` contains every multiple of ``m`` by additive
closure, and ``r o m`` stays inside ``mZ``, so no other element is added.

The bounded checks below scan a finite box of integers. A clean scan is
evidence for a claim about ``Z``, never a proof.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

IntSet = frozenset

EVIDENCE_NOTE = "evidence, not proof: only |x|, |y| <= bound were scanned"


def _check_X(X) -> tuple[int, ...]:
    Xs = tuple(sorted(set(X)))
    if not Xs:
        raise ValueError("X must be nonempty")
    return Xs


def zx_product(A, B, X) -> IntSet:
    A, B = IntSet(A), IntSet(B)
    if not A or not B:
        raise ValueError("hyperproduct of an empty set")
    Xs = _check_X(X)
    return IntSet(a * x * b for a in A for x in Xs for b in B)


@lru_cache(maxsize=None)
def _x_products(Xs: tuple[int, ...], k: int) -> IntSet:
    """All products of ``k`` factors from ``X`` (``{1}`` for ``k = 0``)."""
    if k == 0:
        return IntSet({1})
    prev = _x_products(Xs, k - 1)
    return IntSet(p * x for p in prev for x in Xs)


def zx_power(a: int, k: int, X) -> IntSet:
    """``a^k``: ``a o a o ... o a`` with ``k`` factors."""
    if k < 1:
        raise ValueError("power exponent must be >= 1")
    Xs = _check_X(X)
    ak = a**k
    return IntSet(ak * s for s in _x_products(Xs, k - 1))


def zx_power_times(a: int, k: int, b: int, X) -> IntSet:
    """``a^k o b``."""
    Xs = _check_X(X)
    base = a**k * b
    return IntSet(base * s for s in _x_products(Xs, k))


def in_principal(m: int, S) -> bool:
    """Whether every member of ``S`` lies in ``mZ``."""
    if m == 0:
        raise ValueError("modulus must be nonzero")
    return all(s % m == 0 for s in S)


CLAIMS = ("closed", "prime", "weakly")


def is_counterexample(claim: str, modulus: int, X, alpha: int, beta: int, x: int, y: int = 0) -> bool:
    """Whether ``(x, y)`` refutes the claim exactly, with no residue shortcuts."""
    m = modulus
    if claim == "closed":
        return in_principal(m, zx_power(x, alpha, X)) and not in_principal(m, zx_power(x, beta, X))
    if claim not in CLAIMS:
        raise ValueError(f"unknown claim {claim!r}")
    prod = zx_power_times(x, alpha, y, X)
    if claim == "weakly" and 0 in prod:
        return False
    return in_principal(m, prod) and not in_principal(m, zx_power(x, beta, X)) and y % m != 0


@dataclass
class BoundedVerdict:
    claim: str
    modulus: int
    X: tuple[int, ...]
    alpha: int
    beta: int
    bound: int
    counterexamples: list = field(default_factory=list)
    note: str = EVIDENCE_NOTE

    @property
    def no_counterexample(self) -> bool:
        return not self.counterexamples

    @property
    def first(self):
        return self.counterexamples[0] if self.counterexamples else None

    def summary(self) -> str:
        head = f"<{self.modulus}> with X={set(self.X)} ({self.alpha},{self.beta})-{self.claim}"
        if self.no_counterexample:
            return f"{head}: no counterexample for |x|,|y| <= {self.bound} ({self.note})"
        return f"{head}: counterexample {self.first} (of {len(self.counterexamples)} found)"


def _scan_order(bound: int):
    return sorted(range(-bound, bound + 1), key=lambda v: (abs(v), v < 0))


def bounded_claim_check(
    claim: str,
    modulus: int,
    X,
    alpha: int,
    beta: int,
    bound: int = 200,
    max_counterexamples: int = 50,
) -> BoundedVerdict:
    """Scan ``|x|, |y| <= bound`` for counterexamples to a claim about ``<modulus>``.

    ``closed``: ``x^alpha in mZ`` forces ``x^beta in mZ`` (``y`` unused).
    ``prime``: ``x^alpha o y in mZ`` forces ``x^beta in mZ`` or ``y in mZ``.
    ``weakly``: as ``prime`` but only when ``0`` is not in ``x^alpha o y``.
    Pairs are visited by increasing ``|x| + |y|``, positives first.
    """
    if claim not in CLAIMS:
        raise ValueError(f"unknown claim {claim!r}; expected one of {CLAIMS}")
    if alpha < 1 or beta < 1:
        raise ValueError("exponents must be positive")
    Xs = _check_X(X)
    m = modulus
    out = BoundedVerdict(claim, m, Xs, alpha, beta, bound)
    order = _scan_order(bound)
    if claim == "closed":
        for x in order:
            if in_principal(m, zx_power(x, alpha, Xs)) and not in_principal(m, zx_power(x, beta, Xs)):
                out.counterexamples.append((x,))
                if len(out.counterexamples) >= max_counterexamples:
                    break
        return out
    # residues suffice for membership in mZ; the sets themselves stay exact
    sa = [s % m for s in _x_products(Xs, alpha)]
    pairs = sorted(itertools.product(order, order), key=lambda p: (abs(p[0]) + abs(p[1]), abs(p[0]), p[0] < 0, abs(p[1]), p[1] < 0))
    beta_in = {x: in_principal(m, zx_power(x, beta, Xs)) for x in order}
    for x, y in pairs:
        if beta_in[x] or y % m == 0:
            continue
        base = (x**alpha * y) % m
        if any(base * s % m for s in sa):
            continue
        if claim == "weakly" and (x == 0 or y == 0 or 0 in _x_products(Xs, alpha)):
            continue
        out.counterexamples.append((x, y))
        if len(out.counterexamples) >= max_counterexamples:
            break
    return out
