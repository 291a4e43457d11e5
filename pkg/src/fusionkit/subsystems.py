"""Closure and normality theory: strongly/weakly closed subgroups, the
invariance conditions, local subsystems N_F(Q) and C_F(X), normality
reports, and normal subsystems arising from normal subgroups."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import NotStronglyClosed, NotSylow, VerificationFailed
from .fusion import (FusionSystem, conjugate_morphism, conjugate_subsystem,
                     full_subcategory, fusion_of_group, generated_subsystem,
                     realized_subsystem, subsystem_equal)
from .groups import (FiniteGroup, Hom, Subgroup, center, centralizer,
                     normalizer, p_part, subgroup_lattice)
from .saturation import classify, is_conjugation_family, is_saturated


def is_strongly_closed(F: FusionSystem, T: Subgroup) -> bool:
    """No element of T has an F-conjugate outside T."""
    tset = T.member_set
    for P in F.subgroups():
        cut = P.member_set & tset
        if not cut:
            continue
        for h in F.isos_from(P):
            if not {h(x) for x in cut} <= tset:
                return False
    return True


def is_weakly_closed(F: FusionSystem, T: Subgroup) -> bool:
    """T has no F-conjugate other than itself."""
    return all(h.codomain == T for h in F.isos_from(T))


def weakly_closed_subgroups_in(F: FusionSystem, R: Subgroup) -> tuple[Subgroup, ...]:
    return tuple(P for P in subgroup_lattice(R) if is_weakly_closed(F, P))


# -- local subsystems -------------------------------------------------------------


def centralizer_subsystem(F: FusionSystem, X: Subgroup) -> FusionSystem:
    """C_F(X) over C_S(X): morphisms extending to PX acting as the identity on X.

    Witness filtering when F is group-realized, extension search otherwise;
    the two agree morphism-for-morphism on realized systems.
    """
    key = ("CF", X.members)
    got = F._cache.get(key)
    if got is None:
        support = centralizer(F.support, X)
        if F.realized:
            wit = centralizer(F.witness, X)
            got = FusionSystem(support, F.p, witness=wit, ambient=F.top(),
                               name=f"C_{F.name}({X.order})")
        else:
            got = centralizer_subsystem_by_extension(F, X)
        F._cache[key] = got
    return got


def centralizer_subsystem_by_extension(F: FusionSystem, X: Subgroup) -> FusionSystem:
    support = centralizer(F.support, X)
    explicit: dict[tuple[int, ...], tuple[Hom, ...]] = {}
    for P in subgroup_lattice(support):
        PX = P.parent.generated_subgroup(P.members + X.members)
        found: dict[tuple, Hom] = {}
        for psi in F.isos_from(PX):
            if not psi.fixes_pointwise(X):
                continue
            h = psi.restrict_cores(P)
            found.setdefault(h.images, h)
        explicit[P.members] = tuple(sorted(found.values(), key=Hom.sort_key))
    return FusionSystem(support, F.p, explicit=explicit, ambient=F.top(),
                        name=f"C_{F.name}({X.order})")


def normalizer_subsystem(F: FusionSystem, Q: Subgroup) -> FusionSystem:
    """N_F(Q) over N_S(Q): morphisms extending to PQ and mapping Q onto Q."""
    key = ("NF", Q.members)
    got = F._cache.get(key)
    if got is None:
        support = normalizer(F.support, Q)
        if F.realized:
            wit = normalizer(F.witness, Q)
            got = FusionSystem(support, F.p, witness=wit, ambient=F.top(),
                               name=f"N_{F.name}({Q.order})")
        else:
            got = normalizer_subsystem_by_extension(F, Q)
        F._cache[key] = got
    return got


def normalizer_subsystem_by_extension(F: FusionSystem, Q: Subgroup) -> FusionSystem:
    support = normalizer(F.support, Q)
    qset = Q.member_set
    explicit: dict[tuple[int, ...], tuple[Hom, ...]] = {}
    for P in subgroup_lattice(support):
        PQ = P.parent.generated_subgroup(P.members + Q.members)
        found: dict[tuple, Hom] = {}
        for psi in F.isos_from(PQ):
            if {psi(x) for x in Q.members} != qset:
                continue
            h = psi.restrict_cores(P)
            found.setdefault(h.images, h)
        explicit[P.members] = tuple(sorted(found.values(), key=Hom.sort_key))
    return FusionSystem(support, F.p, explicit=explicit, ambient=F.top(),
                        name=f"N_{F.name}({Q.order})")


local_subsystem = normalizer_subsystem  # N_E(Q) is the same operation run on E.


# -- invariance conditions ---------------------------------------------------------


def _stability(F: FusionSystem, E: FusionSystem) -> bool:
    """E^alpha = E for every alpha in Aut_F(T)."""
    T = E.support
    for alpha in F.automorphisms(T):
        if not subsystem_equal(conjugate_subsystem(E, alpha), E):
            return False
    return True


def _aut_sets_normal(F: FusionSystem, E: FusionSystem, P: Subgroup) -> bool:
    """Aut_E(P) is a subgroup of Aut_F(P) normalized by it."""
    aut_e = E.automorphisms(P)
    keys_e = {h.images for h in aut_e}
    keys_f = {h.images for h in F.automorphisms(P)}
    if not keys_e <= keys_f:
        return False
    if P.members not in keys_e:
        return False
    for a in aut_e:
        for b in aut_e:
            if a.then(b).images not in keys_e:
                return False
    for chi in F.automorphisms(P):
        for a in aut_e:
            if conjugate_morphism(a, chi).images not in keys_e:
                return False
    return True


def _condition_f(F: FusionSystem, E: FusionSystem) -> Optional[dict]:
    """Strong invariant condition; returns a counterexample or None."""
    T = E.support
    tset = T.member_set
    for Q in E.subgroups():
        for psi in F.isos_from(Q):
            if not set(psi.images) <= tset:
                return {"kind": "leaves_T", "images": list(psi.images)}
            for P in subgroup_lattice(Q):
                for phi in E.isos_from(P):
                    if not phi.image.member_set <= Q.member_set:
                        continue
                    moved = conjugate_morphism(phi, psi)
                    if not E.contains_morphism(moved):
                        return {"kind": "twist_escapes", "P": list(P.members),
                                "phi": list(phi.images), "psi": list(psi.images)}
    return None


def _generation_identity(F: FusionSystem, E: FusionSystem) -> bool:
    """F restricted to subgroups of T equals <Aut_F(T), E>_T."""
    T = E.support
    gens = list(F.automorphisms(T)) + [h for P in E.subgroups()
                                       for h in E.isos_from(P)]
    gen_sys = generated_subsystem(F, T, gens, check_inside=False)
    return subsystem_equal(gen_sys, full_subcategory(F, T))


def invariance_condition(F: FusionSystem, E: FusionSystem, which: str) -> bool:
    """Evaluate one of the six equivalent invariance conditions literally."""
    T = E.support
    if not is_strongly_closed(F, T):
        raise NotStronglyClosed(f"support of order {T.order} is not strongly closed")
    if which == "f":
        return _condition_f(F, E) is None
    if which == "a":
        return _condition_f(F, E) is None and _generation_identity(F, E)
    if not _stability(F, E):
        return False
    if which == "b":
        return all(_aut_sets_normal(F, E, P) for P in E.subgroups())
    cls = classify(F)
    if which == "c":
        return all(_aut_sets_normal(F, E, P) for P in E.subgroups()
                   if cls.is_fully_normalized(P))
    tset = T.member_set
    if which == "d":
        for R in cls.cr_set():
            RT = Subgroup(F.universe, tuple(sorted(R.member_set & tset)),
                          check=False)
            if cls.is_fully_normalized(RT) and not _aut_sets_normal(F, E, RT):
                return False
        return True
    if which == "e":
        candidates = [cls.crf_set(),
                      tuple(R for R in cls.cr_set()
                            if classify(F).is_fully_normalized(
                                Subgroup(F.universe,
                                         tuple(sorted(R.member_set & tset)),
                                         check=False)))]
        for fam in candidates:
            if not fam or not is_conjugation_family(F, fam):
                continue
            ok = True
            for R in fam:
                RT = Subgroup(F.universe, tuple(sorted(R.member_set & tset)),
                              check=False)
                if not _aut_sets_normal(F, E, RT):
                    ok = False
                    break
            if ok:
                return True
        return False
    raise ValueError(f"unknown invariance condition {which!r}")


# -- normality ---------------------------------------------------------------------


@dataclass(frozen=True)
class NormalityReport:
    """Outcome of the normality test for a subsystem, with counterexamples.

    ``extension_z`` demands [C_S(T), ext] <= Z(T) (the definition);
    ``extension_t`` relaxes that to <= T.  The two agree on all honest
    corpus instances; a mismatch is surfaced, never silently resolved.
    """

    strongly_closed: bool
    invariant: bool
    saturated: bool
    frattini: bool
    extension_z: bool
    extension_t: bool
    counterexamples: tuple[tuple[str, str], ...]

    @property
    def weakly_normal(self) -> bool:
        return self.strongly_closed and self.invariant and self.saturated

    @property
    def normal(self) -> bool:
        return self.weakly_normal and self.extension_z

    def __bool__(self) -> bool:
        return self.normal

    def to_json(self) -> dict:
        return {
            "strongly_closed": self.strongly_closed,
            "invariant": self.invariant,
            "saturated": self.saturated,
            "frattini_property": self.frattini,
            "extension_property_z": self.extension_z,
            "extension_property_t": self.extension_t,
            "weakly_normal": self.weakly_normal,
            "normal": self.normal,
            "counterexamples": [list(c) for c in self.counterexamples],
        }


def _frattini_property(F: FusionSystem, E: FusionSystem) -> Optional[dict]:
    """Every F-morphism on P <= T splits as an E-morphism then an Aut_F(T) part."""
    T = E.support
    auts_T = F.automorphisms(T)
    for P in E.subgroups():
        for phi in F.isos_from(P):
            hit = False
            for alpha in auts_T:
                alpha_inv = alpha.inverse()
                maybe = tuple(alpha_inv(y) for y in phi.images)
                if maybe in E._keys_from(P):
                    hit = True
                    break
            if not hit:
                return {"P": list(P.members), "phi": list(phi.images)}
    return None


def _extension_property(F: FusionSystem, E: FusionSystem,
                        bound: Subgroup) -> Optional[dict]:
    """Each alpha in Aut_E(T) extends to TC_S(T) with [C_S(T), ext] <= bound."""
    T = E.support
    C = centralizer(F.support, T)
    V = F.universe.generated_subgroup(T.members + C.members)
    bset = bound.member_set
    mul, inv = F.universe._mul, F.universe._inv
    for alpha in E.automorphisms(T):
        found = False
        for ext in F.automorphisms(V):
            if not all(ext(x) == alpha(x) for x in T.members):
                continue
            if all(mul[inv[c]][ext(c)] in bset for c in C.members):
                found = True
                break
        if not found:
            return {"alpha": list(alpha.images), "bound": list(bound.members)}
    return None


def is_normal(F: FusionSystem, E: FusionSystem) -> NormalityReport:
    """Full normality report: strong closure, invariance (strong invariant
    condition), saturation, Frattini property and both extension variants."""
    T = E.support
    counterexamples: list[tuple[str, str]] = []
    sc = is_strongly_closed(F, T)
    if not sc:
        counterexamples.append(("strongly_closed", f"T={list(T.members)}"))
        return NormalityReport(False, False, False, False, False, False,
                               tuple(counterexamples))
    bad_f = _condition_f(F, E)
    if bad_f is not None:
        counterexamples.append(("invariant", str(bad_f)))
    sat = is_saturated(E)
    if not sat.ok:
        counterexamples.append(("saturated", str(sat.failures[0])))
    bad_fr = _frattini_property(F, E)
    if bad_fr is not None:
        counterexamples.append(("frattini", str(bad_fr)))
    bad_z = _extension_property(F, E, center(T))
    if bad_z is not None:
        counterexamples.append(("extension_z", str(bad_z)))
    bad_t = _extension_property(F, E, T)
    if bad_t is not None:
        counterexamples.append(("extension_t", str(bad_t)))
    if (bad_z is None) != (bad_t is None):
        counterexamples.append(("extension_variants_disagree",
                                f"z={bad_z is None} t={bad_t is None}"))
    return NormalityReport(sc, bad_f is None, sat.ok, bad_fr is None,
                           bad_z is None, bad_t is None, tuple(counterexamples))


def normal_subsystem_from_group(G: FiniteGroup, N: Subgroup, S: Subgroup,
                                p: int) -> FusionSystem:
    """E = F_{S n N}(N) embedded in F_S(G), post-verified normal."""
    W = G.full_subgroup
    if not N.is_normal_in(W):
        raise NotSylow(f"subgroup of order {N.order} is not normal in G")
    F = fusion_of_group(G, S, p)
    return normal_subsystem_in(F, N)


def normal_subsystem_in(F: FusionSystem, N: Subgroup) -> FusionSystem:
    """F_{S n N}(N) inside an already-built realized system, verified normal."""
    if not F.realized:
        raise VerificationFailed("normal subsystems from groups need a realized F")
    if not N.is_normal_in(F.witness):
        raise NotSylow(f"subgroup of order {N.order} is not normal in the witness")
    T = F.support.meet(N)
    if p_part(N.order, F.p) != T.order:
        raise NotSylow("S n N is not a Sylow p-subgroup of N")
    E = realized_subsystem(F, N, T)
    report = is_normal(F, E)
    if not report.normal:
        raise VerificationFailed(
            f"F_T(N) failed the normality report: {report.counterexamples}")
    return E
