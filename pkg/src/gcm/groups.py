"""Small finite groups stored as explicit multiplication tables.

Elements are integers ``0..n-1`` with the identity always at index 0, so the
all-identity tuple of ``G^m`` is vertex 0 downstream.  Groups are built from a
short spec string (``"C4"``, ``"S3"``, ``"C2xC4"``, ``"table:path.csv"``) by
:func:`build_group`.
"""

from __future__ import annotations

import csv
import itertools
import math
import re
from dataclasses import dataclass, field
from functools import cached_property, reduce
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

from . import config
from .errors import NotAbelian, NotAGroup, ParseError, TooLarge


@dataclass(frozen=True, eq=False)
class GroupTable:
    mult: np.ndarray
    names: tuple[str, ...]
    label: str = "G"

    def __post_init__(self):
        mult = np.ascontiguousarray(self.mult, dtype=np.int64)
        mult.setflags(write=False)
        object.__setattr__(self, "mult", mult)
        _validate(mult)
        inv = np.argmax(mult == 0, axis=1).astype(np.int64)
        inv.setflags(write=False)
        object.__setattr__(self, "inv", inv)

    inv: np.ndarray = field(init=False, repr=False)

    @property
    def order(self) -> int:
        return self.mult.shape[0]

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"GroupTable({self.label}, order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return int(self.mult[a, b])

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = int(self.inv[g]), -k
        out = 0
        for _ in range(k):
            out = int(self.mult[out, g])
        return out

    @cached_property
    def elem_orders(self) -> tuple[int, ...]:
        orders = []
        for g in range(self.order):
            k, x = 1, g
            while x != 0:
                x = int(self.mult[x, g])
                k += 1
            orders.append(k)
        return tuple(orders)

    @cached_property
    def exponent(self) -> int:
        return reduce(math.lcm, self.elem_orders, 1)

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mult, self.mult.T))

    def center(self) -> frozenset[int]:
        commutes = self.mult == self.mult.T
        return frozenset(int(z) for z in np.flatnonzero(commutes.all(axis=1)))

    @cached_property
    def involution_count(self) -> int:
        return sum(1 for o in self.elem_orders if o == 2)

    @cached_property
    def class_sizes(self) -> tuple[int, ...]:
        """Size of the conjugacy class of each element."""
        conj = self.mult[self.mult[self.inv[:, None], np.arange(self.order)[None, :]], np.arange(self.order)[:, None]]
        # conj[h, g] = h^-1 g h
        return tuple(len(set(conj[:, g].tolist())) for g in range(self.order))

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ParseError(f"unknown element {name!r} in {self.label}") from None

    def subgroup(self, gens: Sequence[int]) -> frozenset[int]:
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = int(self.mult[a, g])
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
        return frozenset(seen)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily by descending element order."""
        by_order = sorted(range(1, self.order), key=lambda g: (-self.elem_orders[g], g))
        gens: list[int] = []
        span = frozenset([0])
        for g in by_order:
            if len(span) == self.order:
                break
            if g not in span:
                gens.append(g)
                span = self.subgroup(gens)
        return tuple(gens)


def _validate(mult: np.ndarray) -> None:
    n = mult.shape[0]
    if mult.ndim != 2 or mult.shape != (n, n) or n < 1:
        raise NotAGroup("table must be square")
    if mult.min() < 0 or mult.max() >= n:
        raise NotAGroup("table entries out of range")
    ar = np.arange(n)
    if not (np.array_equal(mult[0], ar) and np.array_equal(mult[:, 0], ar)):
        raise NotAGroup("index 0 is not a two-sided identity")
    for row in mult:
        if len(np.unique(row)) != n:
            raise NotAGroup("table is not a Latin square")
    if not np.array_equal(mult[mult], mult[:, mult]):
        # mult[mult][a,b,c] = (ab)c ; mult[:, mult][a,b,c] = a(bc)
        raise NotAGroup("operation is not associative")
    inv = np.argmax(mult == 0, axis=1)
    if not np.all(mult[inv, ar] == 0):
        raise NotAGroup("left and right inverses differ")


# --- constructors -----------------------------------------------------------


def _power_name(sym: str, k: int) -> str:
    if k == 0:
        return "e"
    return sym if k == 1 else f"{sym}^{k}"


def cyclic(n: int, sym: str = "x") -> GroupTable:
    ar = np.arange(n)
    mult = (ar[:, None] + ar[None, :]) % n
    return GroupTable(mult, tuple(_power_name(sym, k) for k in range(n)), f"C{n}")


def dihedral(n: int) -> GroupTable:
    """Dihedral group of order 2n; element r^a s^f stored at index a + n*f."""
    if n < 1:
        raise ParseError("dihedral parameter must be positive")
    elems = [(a, f) for f in range(2) for a in range(n)]
    pos = {e: i for i, e in enumerate(elems)}
    mult = np.empty((2 * n, 2 * n), dtype=np.int64)
    for i, (a, f) in enumerate(elems):
        for j, (b, g) in enumerate(elems):
            mult[i, j] = pos[((a + (-1) ** f * b) % n, (f + g) % 2)]
    names = []
    for a, f in elems:
        r = _power_name("r", a)
        names.append(r if not f else ("s" if a == 0 else f"{r}s"))
    return GroupTable(mult, tuple(names), f"D{n}")


def _cycle_name(p: tuple[int, ...]) -> str:
    seen, cycles = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(str(j + 1))
            j = p[j]
        cycles.append("(" + " ".join(cyc) + ")")
    return "".join(cycles) or "e"


def _perm_group(perms: list[tuple[int, ...]], label: str) -> GroupTable:
    pos = {p: i for i, p in enumerate(perms)}
    k = len(perms)
    mult = np.empty((k, k), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            # apply p first, then q
            mult[i, j] = pos[tuple(q[p[x]] for x in range(len(p)))]
    return GroupTable(mult, tuple(_cycle_name(p) for p in perms), label)


def _parity(p: tuple[int, ...]) -> int:
    inversions = sum(1 for i, j in itertools.combinations(range(len(p)), 2) if p[i] > p[j])
    return inversions % 2


def symmetric(n: int) -> GroupTable:
    return _perm_group(list(itertools.permutations(range(n))), f"S{n}")


def alternating(n: int) -> GroupTable:
    perms = [p for p in itertools.permutations(range(n)) if _parity(p) == 0]
    return _perm_group(perms, f"A{n}")


def quaternion() -> GroupTable:
    # unit quaternions as (sign, basis) with basis in 1,i,j,k -> 0..3
    table = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    elems = [(1, 0), (-1, 0), (1, 1), (-1, 1), (1, 2), (-1, 2), (1, 3), (-1, 3)]
    pos = {e: i for i, e in enumerate(elems)}
    mult = np.empty((8, 8), dtype=np.int64)
    for i, (s, a) in enumerate(elems):
        for j, (t, b) in enumerate(elems):
            u, c = table[a, b]
            mult[i, j] = pos[(s * t * u, c)]
    names = ("e", "-1", "i", "-i", "j", "-j", "k", "-k")
    return GroupTable(mult, names, "Q8")


def direct_product(*factors: GroupTable) -> GroupTable:
    if len(factors) == 1:
        return factors[0]
    sizes = [f.order for f in factors]
    # first factor varies fastest; index 0 stays the identity
    coords = list(itertools.product(*[range(s) for s in reversed(sizes)]))
    coords = [tuple(reversed(c)) for c in coords]
    pos = {c: i for i, c in enumerate(coords)}
    n = len(coords)
    mult = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(coords):
        for j, b in enumerate(coords):
            mult[i, j] = pos[tuple(int(f.mult[x, y]) for f, x, y in zip(factors, a, b))]
    names = []
    for c in coords:
        if not any(c):
            names.append("e")
        else:
            names.append("(" + ",".join(f.names[x] for f, x in zip(factors, c)) + ")")
    label = "x".join(f.label for f in factors)
    return GroupTable(mult, tuple(names), label)


def from_table(rows: Sequence[Sequence[int]], names: Sequence[str] | None = None, label: str = "G") -> GroupTable:
    """Ingest an explicit table; the identity is relabelled to index 0."""
    try:
        mult = np.array(rows, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad table: {exc}") from None
    n = mult.shape[0] if mult.ndim == 2 else 0
    if mult.ndim != 2 or mult.shape[1] != n or n == 0:
        raise NotAGroup("table must be square")
    if mult.min() < 0 or mult.max() >= n:
        raise NotAGroup("table entries out of range")
    ar = np.arange(n)
    ids = [e for e in range(n) if np.array_equal(mult[e], ar) and np.array_equal(mult[:, e], ar)]
    if not ids:
        raise NotAGroup("no two-sided identity")
    e = ids[0]
    perm = np.arange(n)
    perm[0], perm[e] = e, 0  # new index -> old index
    old_to_new = np.argsort(perm)
    mult = old_to_new[mult[np.ix_(perm, perm)]]
    if names is None:
        names = ["e"] + [f"g{i}" for i in range(1, n)]
    else:
        names = [names[p] for p in perm]
    return GroupTable(mult, tuple(names), label)


def read_table_csv(path: str | Path) -> GroupTable:
    with open(path, newline="") as fh:
        rows = [[int(x) for x in row] for row in csv.reader(fh) if row]
    return from_table(rows, label=f"table:{Path(path).name}")


_ATOM = re.compile(r"^(C|D|S|A)(\d+)$|^Q8$")


def _atom(tok: str) -> GroupTable:
    m = _ATOM.match(tok)
    if not m:
        raise ParseError(f"cannot parse group factor {tok!r}")
    if tok == "Q8":
        return quaternion()
    kind, n = m.group(1), int(m.group(2))
    if n < 1:
        raise ParseError(f"bad parameter in {tok!r}")
    if kind == "C":
        return cyclic(n)
    if kind == "D":
        return dihedral(n)
    if n > 5:
        raise TooLarge(f"{tok} exceeds the desk-scale group cap")
    return symmetric(n) if kind == "S" else alternating(n)


def build_group(spec: str | GroupTable | Sequence[Sequence[int]], cap: int = config.GROUP_CAP) -> GroupTable:
    """Build and validate a group from a spec string, a table, or a GroupTable."""
    if isinstance(spec, GroupTable):
        G = spec
    elif isinstance(spec, str):
        s = spec.strip()
        if s.startswith("table:"):
            G = read_table_csv(s[len("table:"):])
        else:
            if not s:
                raise ParseError("empty group spec")
            tokens = s.split("x")
            G = direct_product(*[_atom(t) for t in tokens])
            if len(tokens) > 1:
                # single-letter names read better for products of cyclic groups
                G = _rename_cyclic_product(G, tokens)
    else:
        G = from_table(spec)
    if G.order > cap:
        raise TooLarge(f"|G| = {G.order} exceeds cap {cap}")
    return G


def _rename_cyclic_product(G: GroupTable, tokens: list[str]) -> GroupTable:
    if not all(t.startswith("C") for t in tokens) or len(tokens) > 4:
        return G
    syms = "abcd"
    sizes = [int(t[1:]) for t in tokens]
    names = []
    for idx in range(G.order):
        parts = []
        for f, size in enumerate(sizes):
            k = idx % size
            idx //= size
            if k:
                parts.append(_power_name(syms[f], k))
        names.append("".join(parts) or "e")
    return GroupTable(G.mult, tuple(names), G.label)


# --- maps between groups ------------------------------------------------------


@dataclass(frozen=True)
class GroupMap:
    domain: GroupTable
    codomain: GroupTable
    image: tuple[int, ...]

    def __call__(self, g: int) -> int:
        return self.image[g]

    def is_homomorphism(self) -> bool:
        img = np.asarray(self.image)
        return bool(np.array_equal(img[self.domain.mult], self.codomain.mult[np.ix_(img, img)]))

    def is_bijective(self) -> bool:
        return self.domain.order == self.codomain.order and len(set(self.image)) == self.domain.order

    def then(self, other: "GroupMap") -> "GroupMap":
        return GroupMap(self.domain, other.codomain, tuple(other.image[x] for x in self.image))

    def inverse(self) -> "GroupMap":
        inv = [0] * len(self.image)
        for a, b in enumerate(self.image):
            inv[b] = a
        return GroupMap(self.codomain, self.domain, tuple(inv))

    def is_identity(self) -> bool:
        return self.image == tuple(range(len(self.image)))


def _extend(G: GroupTable, H: GroupTable, gens: Sequence[int], imgs: Sequence[int]) -> list[int] | None:
    """Extend generator images to a homomorphism G -> H, or None on conflict."""
    f = [-1] * G.order
    f[0] = 0
    frontier = [0]
    while frontier:
        nxt = []
        for a in frontier:
            for g, h in zip(gens, imgs):
                b = int(G.mult[a, g])
                fb = int(H.mult[f[a], h])
                if f[b] < 0:
                    f[b] = fb
                    nxt.append(b)
                elif f[b] != fb:
                    return None
        frontier = nxt
    return f


def _iso_search(G: GroupTable, H: GroupTable, first_only: bool) -> Iterator[GroupMap]:
    if G.order != H.order or G.is_abelian != H.is_abelian:
        return
    if sorted(G.elem_orders) != sorted(H.elem_orders):
        return
    gens = G.generators
    profile_G = [(G.elem_orders[g], G.class_sizes[g]) for g in gens]
    candidates = [
        [h for h in range(H.order) if (H.elem_orders[h], H.class_sizes[h]) == prof]
        for prof in profile_G
    ]

    def rec(i: int, chosen: list[int]) -> Iterator[GroupMap]:
        if i == len(gens):
            f = _extend(G, H, gens, chosen)
            if f is not None and len(set(f)) == G.order:
                gm = GroupMap(G, H, tuple(f))
                if gm.is_homomorphism():
                    yield gm
            return
        for h in candidates[i]:
            if h in chosen:
                continue
            chosen.append(h)
            # prune early: the partial map on the generated subgroup must be consistent
            if _extend_partial_ok(G, H, gens[: i + 1], chosen):
                yield from rec(i + 1, chosen)
            chosen.pop()

    yield from rec(0, [])


def _extend_partial_ok(G: GroupTable, H: GroupTable, gens: Sequence[int], imgs: Sequence[int]) -> bool:
    sub = G.subgroup(gens)
    f = {0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for a in frontier:
            for g, h in zip(gens, imgs):
                b = int(G.mult[a, g])
                fb = int(H.mult[f[a], h])
                if b not in f:
                    f[b] = fb
                    nxt.append(b)
                elif f[b] != fb:
                    return False
        frontier = nxt
    return len(set(f.values())) == len(sub)


def automorphism_group(G: GroupTable, cap: int = config.GROUP_CAP) -> list[GroupMap]:
    """All automorphisms of G, identity first."""
    if G.order > cap:
        raise TooLarge(f"|G| = {G.order} exceeds cap {cap}")
    auts = list(_iso_search(G, G, first_only=False))
    auts.sort(key=lambda f: (not f.is_identity(), f.image))
    return auts


def aut_generators(G: GroupTable, auts: Sequence[GroupMap] | None = None) -> list[GroupMap]:
    """A small generating set of Aut(G)."""
    if auts is None:
        auts = automorphism_group(G)
    gens: list[GroupMap] = []
    span = {tuple(range(G.order))}
    for f in auts:
        if f.image in span:
            continue
        gens.append(f)
        frontier = list(span)
        while frontier:
            nxt = []
            for img in frontier:
                for g in gens:
                    new = tuple(g.image[x] for x in img)
                    if new not in span:
                        span.add(new)
                        nxt.append(new)
            frontier = nxt
    return gens


def groups_isomorphic(G: GroupTable, H: GroupTable, cap: int = config.GROUP_CAP) -> GroupMap | None:
    if max(G.order, H.order) > cap:
        raise TooLarge("group exceeds cap")
    return next(_iso_search(G, H, first_only=True), None)


# --- characters of abelian groups -------------------------------------------


@dataclass(frozen=True)
class AbelianCharacter:
    """A linear character, stored as residues against the invariant factors.

    The value at ``g`` with basis coordinates ``k`` is ``exp(2 pi i * sum r_j k_j / n_j)``;
    only the argument is ever computed.
    """

    residues: tuple[int, ...]
    moduli: tuple[int, ...]

    def __mul__(self, other: "AbelianCharacter") -> "AbelianCharacter":
        return AbelianCharacter(
            tuple((a + b) % n for a, b, n in zip(self.residues, other.residues, self.moduli)),
            self.moduli,
        )

    @property
    def is_trivial(self) -> bool:
        return not any(self.residues)

    def argument(self, coords: Sequence[int], exponent: int) -> int:
        """Numerator ``a`` of the value ``exp(2 pi i a / exponent)`` at the given coordinates."""
        return sum(r * k * (exponent // n) for r, k, n in zip(self.residues, coords, self.moduli)) % exponent


@dataclass(frozen=True)
class AbelianDecomposition:
    moduli: tuple[int, ...]  # invariant factors n_1 | n_2 | ...
    basis: tuple[int, ...]
    coords: tuple[tuple[int, ...], ...]  # coordinates of every element


def invariant_factors(G: GroupTable) -> AbelianDecomposition:
    if not G.is_abelian:
        raise NotAbelian(f"{G.label} is not abelian")
    n = G.order
    if n == 1:
        return AbelianDecomposition((), (), ((),))

    def cyc(g: int) -> list[int]:
        return [G.power(g, k) for k in range(G.elem_orders[g])]

    def rec(basis: list[int], span: frozenset[int], prev: int) -> list[int] | None:
        if len(span) == n:
            return basis
        for d in sorted((d for d in range(2, prev + 1) if prev % d == 0), reverse=True):
            if len(span) * d > n or n % (len(span) * d):
                continue
            for g in range(1, n):
                if G.elem_orders[g] != d or g in span:
                    continue
                c = cyc(g)
                if set(c) & span != {0}:
                    continue
                new = frozenset(int(G.mult[a, b]) for a in span for b in c)
                found = rec(basis + [g], new, d)
                if found is not None:
                    return found
        return None

    basis = rec([], frozenset([0]), G.exponent)
    assert basis is not None
    basis = basis[::-1]
    moduli = tuple(G.elem_orders[b] for b in basis)
    coords: list[tuple[int, ...] | None] = [None] * n
    for ks in itertools.product(*[range(m) for m in moduli]):
        g = 0
        for b, k in zip(basis, ks):
            g = int(G.mult[g, G.power(b, k)])
        coords[g] = ks
    return AbelianDecomposition(moduli, tuple(basis), tuple(coords))  # type: ignore[arg-type]


def abelian_characters(G: GroupTable) -> list[AbelianCharacter]:
    dec = invariant_factors(G)
    return [AbelianCharacter(r, dec.moduli) for r in itertools.product(*[range(m) for m in dec.moduli])]


def _cyclotomic(n: int) -> list[int]:
    """Integer coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _polydiv_exact(num, _cyclotomic(d))
    return num


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    num = num[:]
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1] // den[-1]
        q[i] = c
        for j, dj in enumerate(den):
            num[i + j] -= c * dj
    return q


def _reduce_mod(poly: list[int], mod: list[int]) -> list[int]:
    poly = poly[:]
    deg = len(mod) - 1
    for i in range(len(poly) - 1, deg - 1, -1):
        c = poly[i]
        if c:
            for j, mj in enumerate(mod):
                poly[i - deg + j] -= c * mj
    out = poly[:deg] if deg else [0]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def character_sum(chi: AbelianCharacter, G: GroupTable, skip_identity: bool = True) -> int:
    """Exact value of sum_g chi(g), over G^x by default.

    Values are powers of a primitive N-th root of unity (N = exponent); the
    sum is reduced modulo the N-th cyclotomic polynomial with integer
    arithmetic and must come out as a rational integer.
    """
    dec = invariant_factors(G)
    N = G.exponent
    counts = [0] * N
    for g in range(1 if skip_identity else 0, G.order):
        counts[chi.argument(dec.coords[g], N)] += 1
    reduced = _reduce_mod(counts, _cyclotomic(N))
    if any(reduced[1:]):
        raise ArithmeticError("character sum is not rational")
    return reduced[0]
