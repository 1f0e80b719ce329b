"""Finite commutative multiplicative hyperrings.

Elements of a carrier of size ``n`` are the indices ``0..n-1``. Subsets are
stored as Python ints used as bitmasks; :class:`ElemSet` is the public,
immutable wrapper around such a mask. Addition is a single-valued table,
multiplication a table of masks.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence


class HyperRingError(ValueError):
    """Raised for malformed tables or violated construction preconditions."""


class CarrierTooLarge(HyperRingError):
    pass


def bits_of(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(items: Iterable[int]) -> int:
    m = 0
    for i in items:
        m |= 1 << i
    return m


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


class ElemSet:
    """An immutable subset of a carrier ``{0, ..., n-1}``."""

    __slots__ = ("bits", "n")

    def __init__(self, n: int, bits: int = 0):
        if bits < 0 or bits >> n:
            raise HyperRingError(f"mask {bits:#x} has members outside 0..{n - 1}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "bits", bits)

    def __setattr__(self, name, value):
        raise AttributeError("ElemSet is immutable")

    @classmethod
    def of(cls, n: int, items: Iterable[int]) -> "ElemSet":
        items = list(items)
        for i in items:
            if not 0 <= i < n:
                raise HyperRingError(f"element {i} outside carrier of size {n}")
        return cls(n, mask_of(items))

    @classmethod
    def full(cls, n: int) -> "ElemSet":
        return cls(n, (1 << n) - 1)

    def _check(self, other: "ElemSet") -> None:
        if not isinstance(other, ElemSet):
            raise TypeError(f"expected ElemSet, got {type(other).__name__}")
        if other.n != self.n:
            raise HyperRingError("ElemSets over different carriers")

    def __contains__(self, i: object) -> bool:
        return isinstance(i, int) and 0 <= i < self.n and bool(self.bits >> i & 1)

    def __iter__(self) -> Iterator[int]:
        return bits_of(self.bits)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def __or__(self, other: "ElemSet") -> "ElemSet":
        self._check(other)
        return ElemSet(self.n, self.bits | other.bits)

    def __and__(self, other: "ElemSet") -> "ElemSet":
        self._check(other)
        return ElemSet(self.n, self.bits & other.bits)

    def __sub__(self, other: "ElemSet") -> "ElemSet":
        self._check(other)
        return ElemSet(self.n, self.bits & ~other.bits)

    def __le__(self, other: "ElemSet") -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def __lt__(self, other: "ElemSet") -> bool:
        return self <= other and self.bits != other.bits

    def __ge__(self, other: "ElemSet") -> bool:
        return other <= self

    def __gt__(self, other: "ElemSet") -> bool:
        return other < self

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ElemSet) and self.n == other.n and self.bits == other.bits

    def __hash__(self) -> int:
        return hash((self.n, self.bits))

    def issubset(self, other: "ElemSet") -> bool:
        return self <= other

    def isdisjoint(self, other: "ElemSet") -> bool:
        self._check(other)
        return self.bits & other.bits == 0

    def sort_key(self) -> tuple:
        return (len(self), tuple(self))

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self)) + "}"


@dataclass(frozen=True)
class RingFlags:
    is_commutative_group: bool
    is_semihypergroup: bool
    distributive_inclusion: bool
    strongly_distributive: bool
    sign_rule: bool
    mul_commutative: bool
    identities: ElemSet
    scalar_identities: ElemSet

    @property
    def is_hyperring(self) -> bool:
        return (
            self.is_commutative_group
            and self.is_semihypergroup
            and self.distributive_inclusion
            and self.sign_rule
            and self.mul_commutative
        )

    def as_dict(self) -> dict:
        return {
            "is_commutative_group": self.is_commutative_group,
            "is_semihypergroup": self.is_semihypergroup,
            "distributive_inclusion": self.distributive_inclusion,
            "strongly_distributive": self.strongly_distributive,
            "sign_rule": self.sign_rule,
            "mul_commutative": self.mul_commutative,
            "identities": list(self.identities),
            "scalar_identities": list(self.scalar_identities),
        }


class HyperRing:
    """A finite structure ``(H, +, o)`` given by tables.

    ``add[a][b]`` is an element index, ``mul[a][b]`` a nonempty bitmask.
    ``flags`` records exactly which multiplicative-hyperring axioms hold;
    construction never rejects a table that merely fails an axiom unless
    ``strict`` is set.
    """

    def __init__(
        self,
        n: int,
        add: Sequence[Sequence[int]],
        mul: Sequence[Sequence[int]],
        labels: Sequence[str] | None = None,
        name: str = "",
        strict: bool = False,
        check: bool = True,
    ):
        if n < 1:
            raise HyperRingError("carrier must be nonempty")
        if len(add) != n or any(len(r) != n for r in add):
            raise HyperRingError(f"addition table must be {n}x{n}")
        if len(mul) != n or any(len(r) != n for r in mul):
            raise HyperRingError(f"multiplication table must be {n}x{n}")
        full = (1 << n) - 1
        for a in range(n):
            for b in range(n):
                if not 0 <= add[a][b] < n:
                    raise HyperRingError(f"add {a} {b} = {add[a][b]} outside carrier")
                m = mul[a][b]
                if m == 0:
                    raise HyperRingError(f"mul {a} {b} is empty")
                if m & ~full:
                    raise HyperRingError(f"mul {a} {b} has members outside carrier")
        self.n = n
        self.name = name
        self.add = tuple(tuple(r) for r in add)
        self.mul = tuple(tuple(r) for r in mul)
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        self.full_mask = full
        self.zero, self.neg = self._find_zero_and_neg()
        self._pow: dict[int, list[int]] = {}
        # memo for derived data (families, ideal lists, ...); never affects semantics
        self.cache: dict = {}
        if strict and not self._group_ok():
            raise HyperRingError("(H,+) is not a commutative group")
        if check:
            _ = self.flags

    # -- additive structure -------------------------------------------------

    def _find_zero_and_neg(self) -> tuple[int, tuple[int, ...]]:
        n, add = self.n, self.add
        zero = next((z for z in range(n) if all(add[z][a] == a == add[a][z] for a in range(n))), -1)
        neg = []
        for a in range(n):
            inv = next((b for b in range(n) if zero >= 0 and add[a][b] == zero), -1)
            neg.append(inv)
        return zero, tuple(neg)

    def _group_ok(self) -> bool:
        n, add = self.n, self.add
        if self.zero < 0 or any(b < 0 for b in self.neg):
            return False
        for a in range(n):
            for b in range(n):
                if add[a][b] != add[b][a]:
                    return False
                for c in range(n):
                    if add[add[a][b]][c] != add[a][add[b][c]]:
                        return False
        return True

    def sub(self, a: int, b: int) -> int:
        return self.add[a][self.neg[b]]

    def neg_mask(self, A: int) -> int:
        m = 0
        for a in bits_of(A):
            m |= 1 << self.neg[a]
        return m

    def translate(self, A: int, t: int) -> int:
        row = self.add[t]
        m = 0
        for a in bits_of(A):
            m |= 1 << row[a]
        return m

    def sumset(self, A: int, B: int) -> int:
        """``A + B = {a + b}`` on masks."""
        if A.bit_count() > B.bit_count():
            A, B = B, A
        m = 0
        for a in bits_of(A):
            m |= self.translate(B, a)
        return m

    # -- multiplicative structure ------------------------------------------

    def prod(self, A: int, B: int) -> int:
        """Set-extended hyperproduct on masks."""
        mul = self.mul
        m = 0
        for a in bits_of(A):
            row = mul[a]
            for b in bits_of(B):
                m |= row[b]
        return m

    def power_mask(self, x: int, k: int) -> int:
        if k < 1:
            raise HyperRingError("power exponent must be >= 1")
        seq = self._pow.get(x)
        if seq is None:
            seq = self._pow[x] = [0, 1 << x]
        while len(seq) <= k:
            prev = seq[-1]
            m = 0
            mul = self.mul
            for a in bits_of(prev):
                m |= mul[a][x]
            seq.append(m)
        return seq[k]

    def set_power_mask(self, A: int, k: int) -> int:
        if k < 1:
            raise HyperRingError("power exponent must be >= 1")
        m = A
        for _ in range(k - 1):
            m = self.prod(m, A)
        return m

    def power_cycle(self, x: int) -> list[int]:
        """Distinct masks ``x, x^2, ...`` up to the first repetition.

        The sequence is determined by its previous term, so every power of
        ``x`` appears in the returned list.
        """
        seen: set[int] = set()
        out = []
        k = 1
        while True:
            m = self.power_mask(x, k)
            if m in seen:
                return out
            seen.add(m)
            out.append(m)
            k += 1

    # -- ElemSet API --------------------------------------------------------

    def elems(self, mask: int) -> ElemSet:
        return ElemSet(self.n, mask)

    def subset(self, items: Iterable[int]) -> ElemSet:
        return ElemSet.of(self.n, items)

    @property
    def carrier(self) -> ElemSet:
        return ElemSet.full(self.n)

    def subset_product(self, A: ElemSet, B: ElemSet) -> ElemSet:
        if not A or not B:
            raise HyperRingError("hyperproduct of an empty set")
        return ElemSet(self.n, self.prod(A.bits, B.bits))

    def power(self, x: int, k: int) -> ElemSet:
        return ElemSet(self.n, self.power_mask(x, k))

    def label_set(self, mask: int) -> list[str]:
        return [self.labels[i] for i in bits_of(mask)]

    # -- axioms ---------------------------------------------------------------

    @cached_property
    def flags(self) -> RingFlags:
        return verify_axioms(self)

    @cached_property
    def absorb(self) -> tuple[int, ...]:
        """``absorb[a]`` is ``H o a``."""
        out = []
        for a in range(self.n):
            m = 0
            for r in range(self.n):
                m |= self.mul[r][a]
            out.append(m)
        return tuple(out)

    def __repr__(self) -> str:
        tag = f" {self.name}" if self.name else ""
        return f"<{type(self).__name__}{tag} n={self.n}>"


def verify_axioms(H: HyperRing) -> RingFlags:
    """Exhaustively check every axiom of a commutative multiplicative hyperring."""
    n, add, mul = H.n, H.add, H.mul
    group = H._group_ok()

    assoc = True
    for a in range(n):
        for b in range(n):
            ab = mul[a][b]
            for c in range(n):
                if H.prod(ab, 1 << c) != H.prod(1 << a, mul[b][c]):
                    assoc = False
                    break
            if not assoc:
                break
        if not assoc:
            break

    dist_incl = True
    dist_eq = True
    sign = group
    if group:
        for a in range(n):
            for b in range(n):
                ab = mul[a][b]
                for c in range(n):
                    lhs = mul[a][add[b][c]]
                    rhs = H.sumset(ab, mul[a][c])
                    if lhs & ~rhs:
                        dist_incl = False
                    if lhs != rhs:
                        dist_eq = False
                    rl = mul[add[b][c]][a]
                    rr = H.sumset(mul[b][a], mul[c][a])
                    if rl & ~rr:
                        dist_incl = False
                    if rl != rr:
                        dist_eq = False
                if sign:
                    neg_ab = H.neg_mask(ab)
                    if mul[a][H.neg[b]] != neg_ab or mul[H.neg[a]][b] != neg_ab:
                        sign = False
    else:
        dist_incl = dist_eq = False
    dist_eq = dist_eq and dist_incl

    comm = all(mul[a][b] == mul[b][a] for a in range(n) for b in range(a + 1, n))

    ident = 0
    scalar = 0
    for e in range(n):
        if all(mul[a][e] >> a & 1 for a in range(n)):
            ident |= 1 << e
            if all(mul[a][e] == 1 << a for a in range(n)):
                scalar |= 1 << e
    return RingFlags(
        is_commutative_group=group,
        is_semihypergroup=assoc,
        distributive_inclusion=dist_incl,
        strongly_distributive=dist_eq,
        sign_rule=sign,
        mul_commutative=comm,
        identities=ElemSet(n, ident),
        scalar_identities=ElemSet(n, scalar),
    )


def build_from_tables(
    n: int,
    add_table: Sequence[Sequence[int]],
    mul_table: Sequence[Sequence[Iterable[int]]],
    *,
    strict: bool = False,
    name: str = "",
    labels: Sequence[str] | None = None,
) -> HyperRing:
    """Build a :class:`HyperRing` from an addition table and a table of sets."""
    if len(mul_table) != n or any(len(r) != n for r in mul_table):
        raise HyperRingError(f"multiplication table must be {n}x{n}")
    masks = []
    for a, row in enumerate(mul_table):
        out = []
        for b, entry in enumerate(row):
            entry = list(entry)
            if not entry:
                raise HyperRingError(f"mul {a} {b} is empty")
            for k in entry:
                if not 0 <= k < n:
                    raise HyperRingError(f"mul {a} {b} contains {k}, outside carrier")
            out.append(mask_of(entry))
        masks.append(out)
    return HyperRing(n, add_table, masks, labels=labels, name=name, strict=strict)


def build_template_zx_mod(n: int, X: Iterable[int], *, name: str = "", check: bool = True) -> HyperRing:
    """``Z_n`` with ``a o b = {a*x*b mod n : x in X}``.

    Pass ``check=False`` for large moduli used only for arithmetic; the axiom
    flags are then computed on first access.
    """
    Xs = sorted({x % n for x in X})
    if not Xs:
        raise HyperRingError("X must be nonempty")
    add = [[(a + b) % n for b in range(n)] for a in range(n)]
    mul = [[mask_of((a * x * b) % n for x in Xs) for b in range(n)] for a in range(n)]
    return HyperRing(n, add, mul, name=name or f"zx_mod({n},{{{','.join(map(str, Xs))}}})", check=check)


# -- hyperideals -----------------------------------------------------------


def is_hyperideal(H: HyperRing, mask: int) -> bool:
    if mask == 0:
        return False
    members = list(bits_of(mask))
    for a in members:
        if H.absorb[a] & ~mask:
            return False
        for b in members:
            if not mask >> H.sub(a, b) & 1:
                return False
    return True


class Hyperideal:
    """A subset of ``ring`` validated as a hyperideal."""

    __slots__ = ("ring", "set")

    def __init__(self, ring: HyperRing, s: ElemSet | int | Iterable[int]):
        if isinstance(s, ElemSet):
            es = s
        elif isinstance(s, int):
            es = ElemSet(ring.n, s)
        else:
            es = ElemSet.of(ring.n, s)
        if es.n != ring.n:
            raise HyperRingError("set and ring carriers differ")
        if not is_hyperideal(ring, es.bits):
            raise HyperRingError(f"{es!r} is not a hyperideal of {ring!r}")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "set", es)

    def __setattr__(self, name, value):
        raise AttributeError("Hyperideal is immutable")

    @property
    def mask(self) -> int:
        return self.set.bits

    @property
    def is_proper(self) -> bool:
        return self.set.bits != self.ring.full_mask

    def __contains__(self, x: object) -> bool:
        return x in self.set

    def __iter__(self):
        return iter(self.set)

    def __len__(self) -> int:
        return len(self.set)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Hyperideal) and other.ring is self.ring and other.set == self.set

    def __hash__(self) -> int:
        return hash((id(self.ring), self.set.bits))

    def __le__(self, other: "Hyperideal") -> bool:
        return self.set <= other.set

    def __lt__(self, other: "Hyperideal") -> bool:
        return self.set < other.set

    def __repr__(self) -> str:
        return f"Hyperideal({self.set!r})"


def subgroup_closure(H: HyperRing, mask: int) -> int:
    """Smallest additive subgroup containing ``mask``."""
    S = 1 << H.zero
    for g in bits_of(mask):
        if S >> g & 1:
            continue
        # <S, g> = S + <g>, since the group is abelian
        acc, t = S, g
        while not S >> t & 1:
            acc |= H.translate(S, t)
            t = H.add[t][g]
        S = acc
    return S


def _generate_mask(H: HyperRing, mask: int) -> int:
    cur = mask
    while True:
        nxt = cur
        for a in bits_of(cur):
            nxt |= H.absorb[a]
        nxt = subgroup_closure(H, nxt)
        if nxt == cur:
            return cur
        cur = nxt


def ideal_generate(H: HyperRing, S: ElemSet | Iterable[int]) -> Hyperideal:
    """Least hyperideal containing ``S``."""
    mask = S.bits if isinstance(S, ElemSet) else mask_of(S)
    if mask == 0:
        raise HyperRingError("cannot generate from the empty set")
    return Hyperideal(H, _generate_mask(H, mask))


DEFAULT_ENUM_BOUND = 16


def additive_subgroups(H: HyperRing) -> list[int]:
    seen = {1 << H.zero}
    frontier = [1 << H.zero]
    while frontier:
        nxt = []
        for S in frontier:
            rest = H.full_mask & ~S
            done = 0
            for g in bits_of(rest):
                if done >> g & 1:
                    continue
                T = subgroup_closure(H, S | (1 << g))
                # every element of the coset g + S yields the same subgroup
                done |= H.translate(S, g)
                if T not in seen:
                    seen.add(T)
                    nxt.append(T)
        frontier = nxt
    return sorted(seen, key=lambda m: (m.bit_count(), tuple(bits_of(m))))


def enumerate_hyperideals(H: HyperRing, bound: int = DEFAULT_ENUM_BOUND) -> list[Hyperideal]:
    """All hyperideals, sorted by size then lexicographically."""
    if H.n > bound:
        raise CarrierTooLarge(f"carrier of size {H.n} exceeds enumeration bound {bound}")
    key = "ideals"
    if key not in H.cache:
        out = []
        for S in additive_subgroups(H):
            if all(not H.absorb[a] & ~S for a in bits_of(S)):
                out.append(Hyperideal(H, S))
        H.cache[key] = out
    return list(H.cache[key])


def residual(P: Hyperideal, B: ElemSet) -> Hyperideal:
    """``(P : B) = {x : x o B subset of P}``."""
    H = P.ring
    out = 0
    for x in range(H.n):
        if not H.prod(1 << x, B.bits) & ~P.mask:
            out |= 1 << x
    return Hyperideal(H, out)


def ideal_sum(I: Hyperideal, J: Hyperideal) -> Hyperideal:
    if I.ring is not J.ring:
        raise HyperRingError("ideals of different rings")
    H = I.ring
    return Hyperideal(H, _generate_mask(H, I.mask | J.mask | H.sumset(I.mask, J.mask)))


def ideal_intersect(I: Hyperideal, J: Hyperideal) -> Hyperideal:
    if I.ring is not J.ring:
        raise HyperRingError("ideals of different rings")
    return Hyperideal(I.ring, I.mask & J.mask)
