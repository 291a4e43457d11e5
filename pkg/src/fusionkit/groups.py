"""Exact arithmetic for finite groups given by multiplication tables.

Elements are indices 0..order-1 with index 0 the identity.  Conjugation is
the right action x^g = g^-1 x g, and homomorphisms compose left to right
(apply ``f`` first in ``f.then(g)``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import CapExceeded, NotAGroup, NotNormal

DEFAULT_GROUP_CAP = 500
DEFAULT_LATTICE_CAP = 20000


class _Caps:
    """Process-wide size limits, adjustable from the CLI."""

    __slots__ = ("group", "lattice")

    def __init__(self) -> None:
        self.group = DEFAULT_GROUP_CAP
        self.lattice = DEFAULT_LATTICE_CAP


active_caps = _Caps()


def p_part(n: int, p: int) -> int:
    """Largest power of p dividing n."""
    m = 1
    while n % p == 0:
        n //= p
        m *= p
    return m


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class FiniteGroup:
    """Finite group backed by a full multiplication table."""

    __slots__ = ("name", "order", "_mul", "_inv", "_orders", "_cache", "degree",
                 "perm_images", "generator_indices")

    def __init__(self, name: str, mul_table: Sequence[Sequence[int]],
                 degree: Optional[int] = None,
                 perm_images: Optional[Sequence[tuple[int, ...]]] = None,
                 check: bool = True) -> None:
        n = len(mul_table)
        if n == 0:
            raise NotAGroup("empty multiplication table")
        self.name = name
        self.order = n
        self._mul = tuple(tuple(int(x) for x in row) for row in mul_table)
        if check:
            self._validate()
        inv = [0] * n
        for a in range(n):
            row = self._mul[a]
            for b in range(n):
                if row[b] == 0:
                    inv[a] = b
                    break
            else:
                raise NotAGroup(f"element {a} has no inverse")
        self._inv = tuple(inv)
        orders = [0] * n
        for a in range(n):
            x, k = a, 1
            while x != 0:
                x = self._mul[x][a]
                k += 1
            orders[a] = k
        self._orders = tuple(orders)
        self.degree = degree
        self.perm_images = tuple(perm_images) if perm_images is not None else None
        self.generator_indices: Optional[tuple[int, ...]] = None
        self._cache: dict = {}

    def _validate(self) -> None:
        n = self.order
        rng = range(n)
        for a in rng:
            row = self._mul[a]
            if len(row) != n:
                raise NotAGroup(f"row {a} has length {len(row)}, expected {n}")
            if sorted(row) != list(rng):
                raise NotAGroup(f"row {a} is not a permutation of 0..{n-1}")
            if row[0] != a or self._mul[0][a] != a:
                raise NotAGroup("index 0 is not a two-sided identity")
        for a in rng:
            col = [self._mul[x][a] for x in rng]
            if sorted(col) != list(rng):
                raise NotAGroup(f"column {a} is not a permutation of 0..{n-1}")
        # Latin square plus identity does not force associativity.  Check all
        # triples up to order 128; above that, a fixed strided sample.
        step = 1 if n <= 128 else max(1, n // 64)
        picks = list(range(0, n, step))
        for a in picks:
            for b in picks:
                ab = self._mul[a][b]
                for c in picks:
                    if self._mul[ab][c] != self._mul[a][self._mul[b][c]]:
                        raise NotAGroup(f"associativity fails at ({a},{b},{c})")

    # -- basic arithmetic ---------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def conj(self, x: int, g: int) -> int:
        """Right conjugation x^g = g^-1 x g."""
        return self._mul[self._mul[self._inv[g]][x]][g]

    def commutator(self, x: int, y: int) -> int:
        """[x, y] = x^-1 y^-1 x y."""
        return self._mul[self._mul[self._mul[self._inv[x]][self._inv[y]]][x]][y]

    def element_order(self, a: int) -> int:
        return self._orders[a]

    def word(self, letters: Iterable[int]) -> int:
        x = 0
        for a in letters:
            x = self._mul[x][a]
        return x

    def power(self, a: int, k: int) -> int:
        if k < 0:
            return self.power(self._inv[a], -k)
        x = 0
        for _ in range(k):
            x = self._mul[x][a]
        return x

    @property
    def is_abelian(self) -> bool:
        flag = self._cache.get("abelian")
        if flag is None:
            flag = all(self._mul[a][b] == self._mul[b][a]
                       for a in range(self.order) for b in range(a))
            self._cache["abelian"] = flag
        return flag

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"

    # -- subgroups ----------------------------------------------------------

    def subgroup(self, members: Iterable[int], check: bool = True) -> "Subgroup":
        return Subgroup(self, tuple(sorted(set(members))), check=check)

    @property
    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, (0,), check=False)

    @property
    def full_subgroup(self) -> "Subgroup":
        sub = self._cache.get("full")
        if sub is None:
            sub = Subgroup(self, tuple(range(self.order)), check=False)
            self._cache["full"] = sub
        return sub

    def closure(self, seed: Iterable[int]) -> tuple[int, ...]:
        """Subgroup generated by ``seed``, as a sorted index tuple."""
        elems = {0}
        frontier = [0]
        gens = sorted(set(seed))
        for g in gens:
            if g not in elems:
                elems.add(g)
                frontier.append(g)
        mul = self._mul
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = mul[x][g]
                    if y not in elems:
                        elems.add(y)
                        new.append(y)
                    y = mul[g][x]
                    if y not in elems:
                        elems.add(y)
                        new.append(y)
            frontier = new
        return tuple(sorted(elems))

    def generated_subgroup(self, seed: Iterable[int]) -> "Subgroup":
        return Subgroup(self, self.closure(seed), check=False)

    def conjugacy_classes(self) -> tuple[tuple[int, ...], ...]:
        classes = self._cache.get("classes")
        if classes is None:
            seen = [False] * self.order
            out = []
            for x in range(self.order):
                if seen[x]:
                    continue
                orbit = sorted({self.conj(x, g) for g in range(self.order)})
                for y in orbit:
                    seen[y] = True
                out.append(tuple(orbit))
            classes = tuple(out)
            self._cache["classes"] = classes
        return classes


@dataclass(frozen=True, eq=False)
class Subgroup:
    """Canonical subgroup of a FiniteGroup: a sorted member index tuple."""

    parent: FiniteGroup
    members: tuple[int, ...]
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.check:
            mem = set(self.members)
            if 0 not in mem:
                raise NotAGroup("subgroup must contain the identity")
            mul, inv = self.parent._mul, self.parent._inv
            for a in self.members:
                if inv[a] not in mem:
                    raise NotAGroup(f"subgroup not closed under inversion at {a}")
                row = mul[a]
                for b in self.members:
                    if row[b] not in mem:
                        raise NotAGroup(f"subgroup not closed at ({a},{b})")

    # Identity is (parent, members); the check flag is construction detail.
    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Subgroup) and self.parent is other.parent
                and self.members == other.members)

    def __hash__(self) -> int:
        return hash((id(self.parent), self.members))

    def __len__(self) -> int:
        return len(self.members)

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return x in self.member_set

    @property
    def member_set(self) -> frozenset[int]:
        ms = self.__dict__.get("_member_set")
        if ms is None:
            ms = frozenset(self.members)
            object.__setattr__(self, "_member_set", ms)
        return ms

    def __le__(self, other: "Subgroup") -> bool:
        return self.member_set <= other.member_set

    def __lt__(self, other: "Subgroup") -> bool:
        return self.member_set < other.member_set

    def is_trivial(self) -> bool:
        return len(self.members) == 1

    def conjugate(self, g: int) -> "Subgroup":
        conj = self.parent.conj
        return Subgroup(self.parent, tuple(sorted(conj(x, g) for x in self.members)),
                        check=False)

    def join(self, other: "Subgroup") -> "Subgroup":
        """Subgroup generated by both."""
        if self.parent is not other.parent:
            raise NotAGroup("join of subgroups of different groups")
        if other.member_set <= self.member_set:
            return self
        if self.member_set <= other.member_set:
            return other
        return self.parent.generated_subgroup(self.members + other.members)

    def meet(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.parent, tuple(sorted(self.member_set & other.member_set)),
                        check=False)

    def product_set(self, other: "Subgroup") -> tuple[int, ...]:
        """The set self*other (not necessarily a subgroup), sorted."""
        mul = self.parent._mul
        return tuple(sorted({mul[a][b] for a in self.members for b in other.members}))

    def product(self, other: "Subgroup") -> "Subgroup":
        """self*other when one normalizes the other (validated)."""
        return Subgroup(self.parent, self.product_set(other))

    def is_normal_in(self, other: "Subgroup") -> bool:
        mem = self.member_set
        conj = self.parent.conj
        return all(conj(x, g) in mem for x in self.members for g in other.members)

    def is_p_group(self, p: int) -> bool:
        return p_part(self.order, p) == self.order

    def is_elementwise_commuting(self, other: "Subgroup") -> bool:
        mul = self.parent._mul
        return all(mul[a][b] == mul[b][a] for a in self.members for b in other.members)

    def sort_key(self) -> tuple:
        """Canonical lattice position: descending order, then lexicographic."""
        return (-len(self.members), self.members)

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, members={list(self.members)})"


class Hom:
    """Homomorphism between subgroups, stored as a total image list.

    ``images[i]`` is the image of ``domain.members[i]``.  The domain and
    codomain may live in different parent groups (projections, embeddings);
    fusion-system morphisms always stay inside one parent and are injective.
    """

    __slots__ = ("domain", "codomain", "images", "witness", "_map", "_key", "_image_sub")

    def __init__(self, domain: Subgroup, codomain: Subgroup,
                 images: Sequence[int], witness: Optional[int] = None,
                 check: bool = True) -> None:
        self.domain = domain
        self.codomain = codomain
        self.images = tuple(images)
        self.witness = witness
        self._map = dict(zip(domain.members, self.images))
        self._key = (id(domain.parent), id(codomain.parent), domain.members,
                     codomain.members, self.images)
        self._image_sub: Optional[Subgroup] = None
        if check:
            self.validate()

    def validate(self) -> "Hom":
        cod = self.codomain.member_set
        if len(self.images) != len(self.domain.members):
            raise NotAGroup("image list length mismatch")
        for y in self.images:
            if y not in cod:
                raise NotAGroup("image leaves the codomain")
        mul_d = self.domain.parent._mul
        mul_c = self.codomain.parent._mul
        mp = self._map
        for a in self.domain.members:
            fa = mp[a]
            for b in self.domain.members:
                if mp[mul_d[a][b]] != mul_c[fa][mp[b]]:
                    raise NotAGroup(f"map is not multiplicative at ({a},{b})")
        return self

    # -- identity and ordering ----------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Hom) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def sort_key(self) -> tuple:
        return (self.domain.sort_key(), self.codomain.sort_key(), self.images)

    def __repr__(self) -> str:
        pairs = ", ".join(f"{a}->{b}" for a, b in zip(self.domain.members, self.images))
        return f"Hom({pairs})"

    # -- queries -------------------------------------------------------------

    def __call__(self, x: int) -> int:
        return self._map[x]

    def apply_set(self, xs: Iterable[int]) -> tuple[int, ...]:
        mp = self._map
        return tuple(sorted(mp[x] for x in xs))

    @property
    def image(self) -> Subgroup:
        img = self._image_sub
        if img is None:
            img = Subgroup(self.codomain.parent, tuple(sorted(set(self.images))),
                           check=False)
            self._image_sub = img
        return img

    @property
    def is_injective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    @property
    def is_surjective(self) -> bool:
        return set(self.images) == self.codomain.member_set

    def is_identity(self) -> bool:
        return (self.domain == self.codomain
                and self.domain.parent is self.codomain.parent
                and self.images == self.domain.members)

    def is_automorphism_of(self, P: Subgroup) -> bool:
        return self.domain == P and self.image == P

    def fixes_pointwise(self, X: Subgroup) -> bool:
        mp = self._map
        return all(mp[x] == x for x in X.members)

    def maps_onto(self, Q: Subgroup) -> bool:
        return self.image == Q

    def subgroup_image(self, P: Subgroup) -> Subgroup:
        return Subgroup(self.codomain.parent, self.apply_set(P.members), check=False)

    # -- constructions -------------------------------------------------------

    def then(self, other: "Hom") -> "Hom":
        """Composite: apply self first, then other (left-to-right order)."""
        mp = other._map
        return Hom(self.domain, other.codomain,
                   tuple(mp[y] for y in self.images), check=False)

    def restrict(self, P: Subgroup) -> "Hom":
        """Restriction to P <= domain, keeping the codomain."""
        mp = self._map
        return Hom(P, self.codomain, tuple(mp[x] for x in P.members),
                   witness=self.witness, check=False)

    def cores(self) -> "Hom":
        """Corestriction onto the image (the canonical iso form)."""
        img = self.image
        if img == self.codomain:
            return self
        return Hom(self.domain, img, self.images, witness=self.witness, check=False)

    def restrict_cores(self, P: Subgroup) -> "Hom":
        mp = self._map
        imgs = tuple(mp[x] for x in P.members)
        cod = Subgroup(self.codomain.parent, tuple(sorted(imgs)), check=False)
        return Hom(P, cod, imgs, witness=self.witness, check=False)

    def into(self, Q: Subgroup) -> "Hom":
        """Retarget the codomain to Q >= image."""
        if not set(self.images) <= Q.member_set:
            raise NotAGroup("codomain does not contain the image")
        return Hom(self.domain, Q, self.images, witness=self.witness, check=False)

    def inverse(self) -> "Hom":
        if not self.is_injective or self.image != self.codomain:
            raise NotAGroup("only isomorphisms onto the codomain invert")
        pairs = sorted(zip(self.images, self.domain.members))
        return Hom(self.codomain, self.domain, tuple(b for _, b in pairs), check=False)

    @staticmethod
    def identity(P: Subgroup) -> "Hom":
        return Hom(P, P, P.members, witness=0, check=False)

    @staticmethod
    def inclusion(P: Subgroup, Q: Subgroup) -> "Hom":
        if not P.member_set <= Q.member_set:
            raise NotAGroup("inclusion requires P <= Q")
        return Hom(P, Q, P.members, witness=0, check=False)

    @staticmethod
    def conjugation(P: Subgroup, g: int, codomain: Optional[Subgroup] = None) -> "Hom":
        """c_g restricted to P: x -> g^-1 x g, corestricted unless a codomain is given."""
        conj = P.parent.conj
        imgs = tuple(conj(x, g) for x in P.members)
        cod = codomain if codomain is not None else Subgroup(
            P.parent, tuple(sorted(imgs)), check=False)
        return Hom(P, cod, imgs, witness=g, check=False)

    @staticmethod
    def from_generator_images(domain: Subgroup, codomain: Subgroup,
                              gens: Sequence[int], images: Sequence[int]) -> "Hom":
        """Extend gen -> image multiplicatively over <gens> = domain (validated)."""
        G, H = domain.parent, codomain.parent
        if len(gens) != len(images):
            raise NotAGroup("generator and image counts differ")
        mp = {0: 0}
        frontier = [0]
        while frontier:
            new = []
            for x in frontier:
                for g, h in zip(gens, images):
                    y = G.mul(x, g)
                    fy = H.mul(mp[x], h)
                    if y in mp:
                        if mp[y] != fy:
                            raise NotAGroup("generator images are inconsistent")
                    else:
                        mp[y] = fy
                        new.append(y)
            frontier = new
        if set(mp) != domain.member_set:
            raise NotAGroup("generators do not generate the domain")
        return Hom(domain, codomain, tuple(mp[x] for x in domain.members), check=True)


# -- classical operators ------------------------------------------------------


def normalizer(ambient: Subgroup, H: Subgroup) -> Subgroup:
    """N_ambient(H) by direct membership test."""
    G = ambient.parent
    mem = H.member_set
    out = [g for g in ambient.members
           if all(G.conj(x, g) in mem for x in H.members)]
    return Subgroup(G, tuple(out), check=False)


def centralizer(ambient: Subgroup, H: Subgroup) -> Subgroup:
    G = ambient.parent
    mul = G._mul
    out = [g for g in ambient.members
           if all(mul[g][x] == mul[x][g] for x in H.members)]
    return Subgroup(G, tuple(out), check=False)


def center(ambient: Subgroup) -> Subgroup:
    return centralizer(ambient, ambient)


def sylow_subgroup(ambient: Subgroup, p: int) -> Subgroup:
    """A Sylow p-subgroup of ``ambient``; canonical smallest member tuple."""
    G = ambient.parent
    target = p_part(ambient.order, p)
    P = Subgroup(G, (0,), check=False)
    while P.order < target:
        N = normalizer(ambient, P)
        for g in N.members:
            if g in P or G.element_order(g) % p != 0:
                continue
            # Use the p-power part of g so the closure stays a p-group.
            k = G.element_order(g)
            gp = G.power(g, k // p_part(k, p))
            if gp in P:
                continue
            Q = G.generated_subgroup(P.members + (gp,))
            if Q.order == p_part(Q.order, p) and Q.order > P.order:
                P = Q
                break
        else:
            raise NotAGroup("Sylow search stalled; ambient is not a group?")
    best = min((P.conjugate(g).members for g in ambient.members))
    return Subgroup(G, best, check=False)


def o_p(ambient: Subgroup, p: int) -> Subgroup:
    """O_p: the intersection of all Sylow p-subgroups."""
    P = sylow_subgroup(ambient, p)
    core = set(P.members)
    for g in ambient.members:
        core &= {ambient.parent.conj(x, g) for x in P.members}
        if len(core) == 1:
            break
    return Subgroup(ambient.parent, tuple(sorted(core)), check=False)


def o_p_prime(ambient: Subgroup, p: int) -> Subgroup:
    """O_{p'}: the largest normal subgroup of order coprime to p."""
    best = Subgroup(ambient.parent, (0,), check=False)
    for N in normal_subgroups(ambient):
        if N.order % p != 0 and N.order > best.order:
            best = N
    return best


def o_upper_p(ambient: Subgroup, p: int) -> Subgroup:
    """O^p: the subgroup generated by all p'-elements."""
    G = ambient.parent
    gens = [g for g in ambient.members if G.element_order(g) % p != 0]
    sub = G.generated_subgroup(gens) if gens else Subgroup(G, (0,), check=False)
    return sub


def derived_subgroup(ambient: Subgroup) -> Subgroup:
    G = ambient.parent
    comms = {G.commutator(x, y) for x in ambient.members for y in ambient.members}
    return G.generated_subgroup(comms)


def commutator_span(A: Subgroup, homs: Iterable[Hom]) -> Subgroup:
    """<x^-1 * x^phi : x in A, phi in homs>, inside the parent group."""
    G = A.parent
    gens = set()
    for phi in homs:
        for x in A.members:
            gens.add(G.mul(G.inv(x), phi(x)))
    return G.generated_subgroup(gens)


@dataclass(frozen=True)
class QuotientGroup:
    """G/N with a deterministic coset labeling (minimal representatives)."""

    group: FiniteGroup
    projection: Hom
    kernel: Subgroup


def quotient(ambient: Subgroup, N: Subgroup) -> QuotientGroup:
    """Quotient of ``ambient`` by a normal subgroup N."""
    G = ambient.parent
    if not N.member_set <= ambient.member_set or not N.is_normal_in(ambient):
        raise NotNormal(f"subgroup of order {N.order} is not normal")
    mul = G._mul
    nset = N.members
    coset_of: dict[int, int] = {}
    reps: list[int] = []
    for g in ambient.members:
        if g in coset_of:
            continue
        rep_index = len(reps)
        members = sorted(mul[g][n] for n in nset)
        for x in members:
            coset_of[x] = rep_index
        reps.append(members[0])
    m = len(reps)
    table = [[coset_of[mul[reps[i]][reps[j]]] for j in range(m)] for i in range(m)]
    qname = f"{G.name}/{N.order}"
    Q = FiniteGroup(qname, table, check=False)
    # Index 0 really is the identity coset: reps[0] is the minimal element of N.
    if coset_of[0] != 0:
        raise NotAGroup("identity coset mislabeled")
    proj = Hom(ambient, Q.full_subgroup,
               tuple(coset_of[g] for g in ambient.members), check=False)
    return QuotientGroup(Q, proj, N)


def as_group(H: Subgroup, name: Optional[str] = None) -> tuple[FiniteGroup, Hom]:
    """Materialize a subgroup as a standalone FiniteGroup plus the embedding."""
    G = H.parent
    index_of = {g: i for i, g in enumerate(H.members)}
    table = [[index_of[G.mul(a, b)] for b in H.members] for a in H.members]
    grp = FiniteGroup(name or f"{G.name}|{H.order}", table, check=False)
    embed = Hom(grp.full_subgroup, H, H.members, check=False)
    return grp, embed


def product_group(A: FiniteGroup, B: FiniteGroup, cap: Optional[int] = None,
                  name: Optional[str] = None) -> tuple[FiniteGroup, Hom, Hom, Hom, Hom]:
    """Direct product AxB: returns (group, incl_A, incl_B, proj_A, proj_B).

    Element (a, b) has index a*|B| + b, so the identity is index 0.
    """
    if cap is None:
        cap = active_caps.group
    n = A.order * B.order
    if n > cap:
        raise CapExceeded(f"product order {n} exceeds cap {cap}")
    nb = B.order
    table = [[0] * n for _ in range(n)]
    for a1 in range(A.order):
        for b1 in range(B.order):
            i = a1 * nb + b1
            row = table[i]
            for a2 in range(A.order):
                pa = A.mul(a1, a2) * nb
                mb = B._mul[b1]
                base = a2 * nb
                for b2 in range(B.order):
                    row[base + b2] = pa + mb[b2]
    P = FiniteGroup(name or f"{A.name}x{B.name}", table, check=False)
    full = P.full_subgroup
    iota_a = Hom(A.full_subgroup, full, tuple(a * nb for a in range(A.order)), check=False)
    iota_b = Hom(B.full_subgroup, full, tuple(range(B.order)), check=False)
    proj_a = Hom(full, A.full_subgroup, tuple(i // nb for i in range(n)), check=False)
    proj_b = Hom(full, B.full_subgroup, tuple(i % nb for i in range(n)), check=False)
    return P, iota_a, iota_b, proj_a, proj_b


# -- subgroup enumeration ------------------------------------------------------


def subgroup_lattice(H: Subgroup, cap: Optional[int] = None) -> tuple[Subgroup, ...]:
    """All subgroups of H in the canonical order (descending size, then lex).

    This order is the iteration order used by every other module.
    """
    if cap is None:
        cap = active_caps.lattice
    G = H.parent
    key = ("lattice", H.members, cap)
    cached = G._cache.get(key)
    if cached is not None:
        return cached
    seen: dict[tuple[int, ...], Subgroup] = {}
    trivial = (0,)
    seen[trivial] = Subgroup(G, trivial, check=False)
    cyclics: list[tuple[int, ...]] = []
    for g in H.members:
        mem = G.closure((g,))
        if mem not in seen:
            sub = Subgroup(G, mem, check=False)
            seen[mem] = sub
            cyclics.append(mem)
    frontier = list(seen.values())
    while frontier:
        new: list[Subgroup] = []
        for sub in frontier:
            for cyc in cyclics:
                if set(cyc) <= sub.member_set:
                    continue
                mem = G.closure(sub.members + cyc)
                if len(mem) <= H.order and mem not in seen:
                    bigger = Subgroup(G, mem, check=False)
                    seen[mem] = bigger
                    new.append(bigger)
                    if len(seen) > cap:
                        raise CapExceeded(
                            f"subgroup lattice exceeds cap {cap}")
        frontier = new
    out = tuple(sorted(seen.values(), key=Subgroup.sort_key))
    G._cache[key] = out
    return out


def subgroup_lattice_bruteforce(H: Subgroup) -> tuple[Subgroup, ...]:
    """Independent oracle: test every subset.  Only viable for tiny groups."""
    G = H.parent
    if H.order > 16:
        raise CapExceeded("brute-force subset oracle limited to order 16")
    rest = [x for x in H.members if x != 0]
    out = []
    for r in range(len(rest) + 1):
        for combo in itertools.combinations(rest, r):
            mem = (0,) + combo
            mset = set(mem)
            if all(G.inv(a) in mset and G.mul(a, b) in mset
                   for a in mem for b in mem):
                out.append(Subgroup(G, tuple(sorted(mem)), check=False))
    return tuple(sorted(out, key=Subgroup.sort_key))


def conjugacy_classes_of_subgroups(ambient: Subgroup,
                                   subs: Sequence[Subgroup]) -> tuple[tuple[Subgroup, ...], ...]:
    """Orbits of ``subs`` under conjugation by ``ambient``."""
    pending = {sub.members: sub for sub in subs}
    out = []
    while pending:
        mem = min(pending)
        sub = pending.pop(mem)
        orbit = {sub.members: sub}
        frontier = [sub]
        while frontier:
            new = []
            for cur in frontier:
                for g in ambient.members:
                    cg = cur.conjugate(g)
                    if cg.members not in orbit:
                        orbit[cg.members] = cg
                        new.append(cg)
            frontier = new
        for m in orbit:
            pending.pop(m, None)
        out.append(tuple(orbit[m] for m in sorted(orbit)))
    return tuple(sorted(out, key=lambda orb: orb[0].sort_key()))


def normal_subgroups(ambient: Subgroup) -> tuple[Subgroup, ...]:
    """All normal subgroups of ``ambient``, canonical order."""
    G = ambient.parent
    key = ("normals", ambient.members)
    cached = G._cache.get(key)
    if cached is not None:
        return cached
    # Atoms: normal closures of single elements; normal subgroups are joins.
    atoms: dict[tuple[int, ...], Subgroup] = {}
    for g in ambient.members:
        if g == 0:
            continue
        orbit = {G.conj(g, h) for h in ambient.members}
        mem = G.closure(orbit)
        if mem not in atoms:
            atoms[mem] = Subgroup(G, mem, check=False)
    found: dict[tuple[int, ...], Subgroup] = {(0,): Subgroup(G, (0,), check=False)}
    frontier = list(found.values())
    atom_list = list(atoms.values())
    while frontier:
        new = []
        for sub in frontier:
            for atom in atom_list:
                j = sub.join(atom)
                if j.members not in found:
                    found[j.members] = j
                    new.append(j)
        frontier = new
    out = tuple(sorted(found.values(), key=Subgroup.sort_key))
    G._cache[key] = out
    return out


def maximal_subgroups(H: Subgroup, subs_of: Optional[Sequence[Subgroup]] = None) -> tuple[Subgroup, ...]:
    """Maximal proper subgroups of H (within a precomputed lattice if given)."""
    lattice = subs_of if subs_of is not None else subgroup_lattice(H)
    proper = [K for K in lattice if K.order < H.order and K.member_set <= H.member_set]
    out = []
    for K in proper:
        if not any(K < L and L.member_set <= H.member_set and L.order < H.order
                   for L in proper):
            out.append(K)
    return tuple(sorted(out, key=Subgroup.sort_key))


# -- permutation input ---------------------------------------------------------


def group_from_permutations(name: str, generators: Sequence[Sequence[int]],
                            cap: Optional[int] = None) -> FiniteGroup:
    """Build the full multiplication table from 1-based permutation images."""
    if cap is None:
        cap = active_caps.group
    if not generators:
        raise NotAGroup("at least one generator is required")
    degree = len(generators[0])
    gens: list[tuple[int, ...]] = []
    for images in generators:
        if len(images) != degree:
            raise NotAGroup("generators act on different point sets")
        perm = tuple(int(x) - 1 for x in images)
        if sorted(perm) != list(range(degree)):
            raise NotAGroup(f"{list(images)} is not a permutation of 1..{degree}")
        gens.append(perm)
    ident = tuple(range(degree))

    def compose(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        # Apply a first, then b (right action on points).
        return tuple(b[a[i]] for i in range(degree))

    elems = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in elems:
                    elems.add(y)
                    new.append(y)
                    if len(elems) > cap:
                        raise CapExceeded(
                            f"group generated exceeds cap {cap}")
        frontier = new
    ordered = [ident] + sorted(p for p in elems if p != ident)
    index_of = {p: i for i, p in enumerate(ordered)}
    table = [[index_of[compose(a, b)] for b in ordered] for a in ordered]
    grp = FiniteGroup(name, table, degree=degree, perm_images=ordered, check=False)
    grp.generator_indices = tuple(index_of[g] for g in gens)
    return grp


def group_from_table(name: str, table: Sequence[Sequence[int]],
                     cap: Optional[int] = None) -> FiniteGroup:
    if cap is None:
        cap = active_caps.group
    if len(table) > cap:
        raise CapExceeded(f"group order {len(table)} exceeds cap {cap}")
    return FiniteGroup(name, table, check=True)
