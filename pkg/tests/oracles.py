"""Slow, independent reference implementations over plain Python sets.

Nothing here touches the bitmask tables of the package; rings are given by
closures computing hyperproducts directly.
"""

from __future__ import annotations

import itertools
from functools import reduce


class NaiveRing:
    def __init__(self, n, add, mul):
        self.n = n
        self.add = add
        self.mul = mul
        self.H = frozenset(range(n))
        self.zero = next(z for z in range(n) if all(add(z, a) == a for a in range(n)))

    @classmethod
    def zx(cls, n, X):
        X = tuple(X)
        return cls(n, lambda a, b: (a + b) % n, lambda a, b: frozenset(a * x * b % n for x in X))

    def neg(self, a):
        return next(b for b in range(self.n) if self.add(a, b) == self.zero)

    def setmul(self, A, B):
        return frozenset(c for a in A for b in B for c in self.mul(a, b))

    def setadd(self, A, B):
        return frozenset(self.add(a, b) for a in A for b in B)

    def power(self, x, k):
        return reduce(lambda acc, _: self.setmul(acc, {x}), range(k - 1), frozenset({x}))

    def is_ideal(self, S):
        S = frozenset(S)
        if self.zero not in S:
            return False
        if any(self.add(a, self.neg(b)) not in S for a in S for b in S):
            return False
        return all(self.mul(r, s) <= S for r in self.H for s in S)

    def ideals(self):
        rest = [e for e in range(self.n) if e != self.zero]
        out = []
        for k in range(len(rest) + 1):
            for comb in itertools.combinations(rest, k):
                S = frozenset(comb) | {self.zero}
                if self.is_ideal(S):
                    out.append(S)
        return out

    def proper_ideals(self):
        return [I for I in self.ideals() if I != self.H]

    def ab_prime(self, P, a, b, weakly=False):
        for x in self.H:
            xa = self.power(x, a)
            for y in self.H:
                prod = self.setmul(xa, {y})
                if weakly and self.zero in prod:
                    continue
                if prod <= P and not self.power(x, b) <= P and y not in P:
                    return False
        return True

    def ab_closed(self, P, a, b):
        return all(not self.power(x, a) <= P or self.power(x, b) <= P for x in self.H)

    def prime(self, P):
        return P != self.H and all(
            not self.mul(x, y) <= P or x in P or y in P for x in self.H for y in self.H
        )

    def maximal(self, P):
        return P != self.H and not any(P < I < self.H for I in self.ideals())

    def rad_primes(self, P):
        ps = [Q for Q in self.ideals() if P <= Q and self.prime(Q)]
        return reduce(frozenset.intersection, ps, self.H)

    def rad_powers(self, P):
        return frozenset(x for x in self.H if any(self.power(x, k) <= P for k in range(1, self.n + 2)))

    def products(self, min_length=1):
        """All sets ``z_1 o ... o z_k``, ``k >= min_length``, by breadth-first search."""
        level = {frozenset({z}) for z in self.H}
        seen = set(level) if min_length == 1 else set()
        while level:
            nxt = set()
            for A in level:
                for z in self.H:
                    B = self.setmul(A, {z})
                    if B not in seen:
                        nxt.add(B)
            seen |= nxt
            level = nxt
        return seen

    def sums_of_products(self):
        prods = self.products()
        fam = set(prods)
        frontier = set(prods)
        while frontier:
            new = set()
            for A in frontier:
                for B in prods:
                    S = self.setadd(A, B)
                    if S not in fam:
                        new.add(S)
            fam |= new
            frontier = new
        return fam

    def is_C(self, P):
        return all(A <= P for A in self.products() if A & P)

    def is_strong_C(self, P):
        return all(A <= P for A in self.sums_of_products() if A & P)

    def residual(self, P, B):
        return frozenset(r for r in self.H if self.setmul({r}, B) <= P)

    def identities(self):
        return frozenset(e for e in self.H if all(a in self.mul(a, e) for a in self.H))

    def scalar_identities(self):
        return frozenset(e for e in self.H if all(self.mul(a, e) == {a} for a in self.H))


def naive_gamma_classes(R: NaiveRing):
    """Connected components of ``x ~ y`` iff both lie in one sum of products."""
    parent = list(range(R.n))

    def find(i):
        while parent[i] != i:
            i = parent[i]
        return i

    for S in R.sums_of_products():
        items = sorted(S)
        for e in items[1:]:
            ra, rb = find(items[0]), find(e)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups = {}
    for e in range(R.n):
        groups.setdefault(find(e), set()).add(e)
    return sorted((frozenset(g) for g in groups.values()), key=min)
