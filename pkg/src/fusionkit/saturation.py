"""Saturation machinery: classification flags, the extension axiom,
saturation checking, conjugation families and Alperin decomposition."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import NotSaturated
from .fusion import FusionSystem, MorphismGroup
from .groups import Hom, Subgroup, centralizer, normalizer, o_p, p_part


@dataclass(frozen=True)
class SubgroupClassification:
    """Per-subgroup saturation-theoretic flags for one fusion system."""

    system: FusionSystem
    fully_normalized: frozenset[tuple[int, ...]]
    fully_centralized: frozenset[tuple[int, ...]]
    fully_automized: frozenset[tuple[int, ...]]
    centric: frozenset[tuple[int, ...]]
    radical: frozenset[tuple[int, ...]]

    def is_fully_normalized(self, P: Subgroup) -> bool:
        return P.members in self.fully_normalized

    def is_fully_centralized(self, P: Subgroup) -> bool:
        return P.members in self.fully_centralized

    def is_fully_automized(self, P: Subgroup) -> bool:
        return P.members in self.fully_automized

    def is_centric(self, P: Subgroup) -> bool:
        return P.members in self.centric

    def is_radical(self, P: Subgroup) -> bool:
        return P.members in self.radical

    def is_centric_radical(self, P: Subgroup) -> bool:
        return P.members in self.centric and P.members in self.radical

    def f_set(self) -> tuple[Subgroup, ...]:
        return tuple(P for P in self.system.subgroups()
                     if P.members in self.fully_normalized)

    def cr_set(self) -> tuple[Subgroup, ...]:
        return tuple(P for P in self.system.subgroups()
                     if P.members in self.centric and P.members in self.radical)

    def crf_set(self) -> tuple[Subgroup, ...]:
        return tuple(P for P in self.cr_set()
                     if P.members in self.fully_normalized)


def aut_group(F: FusionSystem, P: Subgroup) -> MorphismGroup:
    key = ("autgrp", P.members)
    got = F._cache.get(key)
    if got is None:
        got = MorphismGroup(F.automorphisms(P))
        F._cache[key] = got
    return got


def o_upper_p_automorphisms(F: FusionSystem, P: Subgroup) -> tuple[Hom, ...]:
    """O^p(Aut_F(P)) as a set of morphisms."""
    from .groups import o_upper_p
    mg = aut_group(F, P)
    sub = o_upper_p(mg.group.full_subgroup, F.p)
    return mg.homs_of(sub)


def classify(F: FusionSystem) -> SubgroupClassification:
    got = F._cache.get("classification")
    if got is not None:
        return got
    S = F.support
    n_of: dict[tuple[int, ...], int] = {}
    c_of: dict[tuple[int, ...], int] = {}
    for P in F.subgroups():
        n_of[P.members] = normalizer(S, P).order
        c_of[P.members] = centralizer(S, P).order
    fully_n, fully_c, fully_a, centric, radical = set(), set(), set(), set(), set()
    for cls in F.classes():
        max_n = max(n_of[Q.members] for Q in cls)
        max_c = max(c_of[Q.members] for Q in cls)
        cls_centric = all(c_of[Q.members] <= Q.order
                          and centralizer(S, Q).member_set <= Q.member_set
                          for Q in cls)
        for Q in cls:
            if n_of[Q.members] == max_n:
                fully_n.add(Q.members)
            if c_of[Q.members] == max_c:
                fully_c.add(Q.members)
            if cls_centric:
                centric.add(Q.members)
    for P in F.subgroups():
        auts = F.automorphisms(P)
        aut_s = F.automizer_in(S, P)
        if len(aut_s) == p_part(len(auts), F.p):
            fully_a.add(P.members)
        mg = aut_group(F, P)
        core = o_p(mg.group.full_subgroup, F.p)
        inner = mg.subgroup_from_homs(F.inner_automorphisms(P))
        if core == inner:
            radical.add(P.members)
    got = SubgroupClassification(F, frozenset(fully_n), frozenset(fully_c),
                                 frozenset(fully_a), frozenset(centric),
                                 frozenset(radical))
    F._cache["classification"] = got
    return got


# -- extension axiom -----------------------------------------------------------


def extension_group(F: FusionSystem, phi: Hom) -> Subgroup:
    """N_phi = {g in N_S(P) : phi^-1 c_g phi in Aut_S(P^phi)}."""
    phi = phi.cores()
    P, Q = phi.domain, phi.codomain
    S = F.support
    phi_inv = phi.inverse()
    aut_s_keys = {h.images for h in F.automizer_in(S, Q)}
    out = []
    for g in normalizer(S, P).members:
        c = Hom.conjugation(P, g, codomain=P)
        if phi_inv.then(c).then(phi).images in aut_s_keys:
            out.append(g)
    return Subgroup(F.universe, tuple(out), check=False)


def extend_morphism(F: FusionSystem, phi: Hom, U: Subgroup) -> Optional[Hom]:
    """Some psi in Hom_F(U, S) with psi|_P = phi, or None (Absent)."""
    target = {x: phi(x) for x in phi.domain.members}
    for psi in F.isos_from(U):
        if all(psi(x) == y for x, y in target.items()):
            return psi
    return None


@dataclass(frozen=True)
class SaturationReport:
    ok: bool
    failures: tuple[dict, ...]

    def __bool__(self) -> bool:
        return self.ok


def is_saturated(F: FusionSystem) -> SaturationReport:
    """Sylow axiom plus extension axiom, checked exhaustively.

    Saturated iff every fully normalized subgroup is fully automized and
    fully centralized, and every isomorphism onto a fully centralized
    subgroup extends over its extension group.
    """
    got = F._cache.get("saturation")
    if got is not None:
        return got
    failures: list[dict] = []
    cls = classify(F)
    for P in F.subgroups():
        if not cls.is_fully_normalized(P):
            continue
        if not cls.is_fully_automized(P):
            failures.append({"axiom": "sylow", "kind": "not_fully_automized",
                             "subgroup": list(P.members)})
        if not cls.is_fully_centralized(P):
            failures.append({"axiom": "sylow", "kind": "not_fully_centralized",
                             "subgroup": list(P.members)})
    for P in F.subgroups():
        for phi in F.isos_from(P):
            if not cls.is_fully_centralized(phi.codomain):
                continue
            nphi = extension_group(F, phi)
            if extend_morphism(F, phi, nphi) is None:
                failures.append({"axiom": "extension",
                                 "subgroup": list(P.members),
                                 "images": list(phi.images),
                                 "n_phi": list(nphi.members)})
    got = SaturationReport(not failures, tuple(failures))
    F._cache["saturation"] = got
    return got


def find_fully_normalized_conjugator(F: FusionSystem, X: Subgroup) -> Hom:
    """Some alpha in Hom_F(N_S(X), S) with X^alpha fully normalized.

    Exists for every subgroup of a saturated system; searched in canonical
    order so runs are reproducible.
    """
    cls = classify(F)
    N = normalizer(F.support, X)
    for alpha in F.isos_from(N):
        if alpha.subgroup_image(X).members in cls.fully_normalized:
            return alpha
    raise NotSaturated(
        f"no morphism on N_S(P) takes {list(X.members)} fully normalized")


# -- conjugation families --------------------------------------------------------


@dataclass(frozen=True)
class FactorStep:
    """One factor: an automorphism of a family member, applied on stage."""

    member: Subgroup
    automorphism: Hom
    stage: Subgroup          # P_{i-1}, contained in member

    def applied(self) -> Hom:
        return self.automorphism.restrict_cores(self.stage)


@dataclass(frozen=True)
class Factorization:
    """phi = (phi_1|_{P_0}) . (phi_2|_{P_1}) . ... through a conjugation family."""

    domain: Subgroup
    steps: tuple[FactorStep, ...]

    def recompose(self) -> Hom:
        cur = Hom.identity(self.domain)
        for step in self.steps:
            cur = cur.then(step.automorphism.restrict_cores(cur.codomain))
        return cur


def _reachable(F: FusionSystem, P: Subgroup, family: Sequence[Subgroup],
               record_paths: bool = False):
    """Morphisms from P reachable by composing restrictions of family automorphisms."""
    start = Hom.identity(P)
    reached: dict[tuple[int, ...], Hom] = {start.images: start}
    paths: dict[tuple[int, ...], tuple[Optional[tuple[int, ...]], Optional[FactorStep]]] = {
        start.images: (None, None)}
    queue: deque[Hom] = deque([start])
    while queue:
        h = queue.popleft()
        cur = h.codomain
        for R in family:
            if not cur.member_set <= R.member_set:
                continue
            for a in F.automorphisms(R):
                nh = h.then(a.restrict_cores(cur))
                if nh.images not in reached:
                    reached[nh.images] = nh
                    if record_paths:
                        paths[nh.images] = (h.images, FactorStep(R, a, cur))
                    queue.append(nh)
    return (reached, paths) if record_paths else (reached, None)


def is_conjugation_family(F: FusionSystem, family: Sequence[Subgroup]) -> bool:
    """Exhaustive test: every morphism factors through the family."""
    fam = sorted(family, key=Subgroup.sort_key)
    for P in F.subgroups():
        reached, _ = _reachable(F, P, fam)
        if not F._keys_from(P) <= set(reached):
            return False
    return True


def canonical_family(F: FusionSystem) -> tuple[Subgroup, ...]:
    """The centric radical fully normalized subgroups, canonical order."""
    return classify(F).crf_set()


def alperin_decompose(F: FusionSystem, phi: Hom) -> Factorization:
    """A factorization of phi through the centric-radical-fully-normalized
    family, found breadth-first (shortest certificate, deterministic)."""
    if not is_saturated(F):
        raise NotSaturated("Alperin decomposition needs a saturated system")
    phi = phi.cores()
    family = canonical_family(F)
    reached, paths = _reachable(F, phi.domain, family, record_paths=True)
    key = phi.images
    if key not in reached:
        raise NotSaturated("morphism does not factor through the family")
    steps: list[FactorStep] = []
    while True:
        prev, step = paths[key]
        if step is None:
            break
        steps.append(step)
        key = prev
    return Factorization(phi.domain, tuple(reversed(steps)))
