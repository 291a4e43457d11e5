"""Products of fusion systems: morphisms induced by group homomorphisms,
direct products, the centralize-each-other predicate, central products, and
the verification bundle for the product theorems."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import NotCentralizing, VerificationFailed
from .fusion import (FusionSystem, generated_fusion_system, generated_subsystem,
                     subsystem_contains, transport_isos)
from .groups import (DEFAULT_GROUP_CAP, FiniteGroup, Hom, Subgroup, as_group,
                     centralizer, product_group, subgroup_lattice)
from .saturation import is_saturated
from .subsystems import centralizer_subsystem


@dataclass(frozen=True)
class DirectProduct:
    """F1 x F2 over a concrete product group, with embeddings materialized."""

    system: FusionSystem
    group: FiniteGroup
    iota1: Hom                 # S1 -> S1 x S2
    iota2: Hom
    pi1: Hom                   # S1 x S2 -> S1
    pi2: Hom
    hat1: FusionSystem         # canonical image of F1
    hat2: FusionSystem


def direct_product(F1: FusionSystem, F2: FusionSystem,
                   cap: int = DEFAULT_GROUP_CAP) -> DirectProduct:
    """The fusion system generated by all maps phi1 x phi2 over S1 x S2."""
    if F1.p != F2.p:
        raise VerificationFailed("direct product of systems at different primes")
    A1, e1 = as_group(F1.support, name="S1")
    A2, e2 = as_group(F2.support, name="S2")
    back1 = {g: i for i, g in enumerate(F1.support.members)}
    back2 = {g: i for i, g in enumerate(F2.support.members)}
    PG, _, _, _, _ = product_group(A1, A2, cap=cap,
                                   name=f"{F1.name}x{F2.name}")
    nb = A2.order
    full = PG.full_subgroup

    def pack(x1: int, x2: int) -> int:
        return back1[x1] * nb + back2[x2]

    gens: list[Hom] = []
    for P1 in F1.subgroups():
        for h1 in F1.isos_from(P1):
            for P2 in F2.subgroups():
                for h2 in F2.isos_from(P2):
                    members = tuple(sorted(pack(x1, x2)
                                           for x1 in P1.members
                                           for x2 in P2.members))
                    dom = Subgroup(PG, members, check=False)
                    pairs = {pack(x1, x2): pack(h1(x1), h2(x2))
                             for x1 in P1.members for x2 in P2.members}
                    imgs = tuple(pairs[m] for m in members)
                    cod = Subgroup(PG, tuple(sorted(set(imgs))), check=False)
                    gens.append(Hom(dom, cod, imgs, check=False))
    system = generated_fusion_system(full, F1.p, gens,
                                     name=f"{F1.name}x{F2.name}")
    iota1 = Hom(F1.support, full, tuple(pack(x, 0) for x in F1.support.members),
                check=False)
    iota2 = Hom(F2.support, full, tuple(pack(0, x) for x in F2.support.members),
                check=False)
    pi1 = Hom(full, F1.support,
              tuple(F1.support.members[i // nb] for i in range(PG.order)),
              check=False)
    pi2 = Hom(full, F2.support,
              tuple(F2.support.members[i % nb] for i in range(PG.order)),
              check=False)
    hat1 = FusionSystem(iota1.image, F1.p, explicit=transport_isos(F1, iota1),
                        ambient=system, name="hat1")
    hat2 = FusionSystem(iota2.image, F2.p, explicit=transport_isos(F2, iota2),
                        ambient=system, name="hat2")
    return DirectProduct(system, PG, iota1, iota2, pi1, pi2, hat1, hat2)


def direct_product_structure_ok(dp: DirectProduct,
                                F1: FusionSystem, F2: FusionSystem) -> bool:
    """Every product-system morphism is (phi1 x phi2) restricted."""
    pi1, pi2 = dp.pi1, dp.pi2
    for P in dp.system.subgroups():
        for h in dp.system.isos_from(P):
            comp1 = {}
            comp2 = {}
            ok = True
            for x in P.members:
                y = h(x)
                for pi, comp in ((pi1, comp1), (pi2, comp2)):
                    key, val = pi(x), pi(y)
                    if comp.setdefault(key, val) != val:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                return False
            for F_i, comp, pi in ((F1, comp1, pi1), (F2, comp2, pi2)):
                dom = Subgroup(F_i.universe, tuple(sorted(comp)), check=False)
                imgs = tuple(comp[m] for m in dom.members)
                cod = Subgroup(F_i.universe, tuple(sorted(set(imgs))), check=False)
                cand = Hom(dom, cod, imgs, check=False)
                if not F_i.contains_morphism(cand):
                    return False
            for x in P.members:
                if not (pi1(h(x)) == comp1[pi1(x)] and pi2(h(x)) == comp2[pi2(x)]):
                    return False
    return True


# -- induced functors ----------------------------------------------------------


@dataclass(frozen=True)
class InducedFunctor:
    """A group homomorphism of supports inducing a functor between systems."""

    alpha: Hom
    source: FusionSystem
    target: FusionSystem

    def apply(self, h: Hom) -> Hom:
        alpha = self.alpha
        members = tuple(sorted({alpha(x) for x in h.domain.members}))
        parent = alpha.codomain.parent
        dom = Subgroup(parent, members, check=False)
        pairs = {alpha(x): alpha(h(x)) for x in h.domain.members}
        imgs = tuple(pairs[m] for m in members)
        cod = Subgroup(parent, tuple(sorted(set(imgs))), check=False)
        return Hom(dom, cod, imgs, check=False)

    def subgroup_image(self, P: Subgroup) -> Subgroup:
        return Subgroup(self.alpha.codomain.parent,
                        tuple(sorted({self.alpha(x) for x in P.members})),
                        check=False)


def induces_morphism(alpha: Hom, F: FusionSystem,
                     target: FusionSystem) -> Optional[InducedFunctor]:
    """The functor induced by alpha, or None when some hom-set fails to push.

    For each morphism the pushed map must be well defined (kernel
    compatible), injective, and a morphism of the target system.
    """
    functor = InducedFunctor(alpha, F, target)
    for P in F.subgroups():
        for h in F.isos_from(P):
            pairs: dict[int, int] = {}
            ok = True
            for x in P.members:
                key, val = alpha(x), alpha(h(x))
                if pairs.setdefault(key, val) != val:
                    ok = False
                    break
            if not ok:
                return None
            if len(set(pairs.values())) != len(pairs):
                return None
            if not target.contains_morphism(functor.apply(h)):
                return None
    return functor


def is_epimorphism(functor: InducedFunctor) -> bool:
    """alpha surjective onto the target support and the image system equals
    the target: every target morphism is induced from some preimage pair."""
    alpha, F, D = functor.alpha, functor.source, functor.target
    if {alpha(x) for x in F.support.members} != D.support.member_set:
        return False
    preimages: dict[tuple[int, ...], list[Subgroup]] = {}
    for P in F.subgroups():
        preimages.setdefault(functor.subgroup_image(P).members, []).append(P)
    for Pd in D.subgroups():
        sources = preimages.get(Pd.members, [])
        induced: set[tuple[int, ...]] = set()
        for P in sources:
            for h in F.isos_from(P):
                induced.add(functor.apply(h).images)
        if not D._keys_from(Pd) <= induced:
            return False
    return True


def image_equals(functor: InducedFunctor, sub: FusionSystem,
                 expect: FusionSystem) -> bool:
    """The functor image of ``sub`` equals ``expect`` hom-set-wise."""
    img_support = functor.subgroup_image(sub.support)
    if img_support != expect.support:
        return False
    got: dict[tuple[int, ...], set] = {}
    for P in sub.subgroups():
        mem = functor.subgroup_image(P).members
        got.setdefault(mem, set())
        for h in sub.isos_from(P):
            got[mem].add(functor.apply(h).images)
    for Pe in expect.subgroups():
        if got.get(Pe.members, set()) != set(expect._keys_from(Pe)):
            return False
    return True


# -- central products -----------------------------------------------------------


def centralize_each_other(F: FusionSystem, F1: FusionSystem,
                          F2: FusionSystem) -> bool:
    """F1 <= C_F(S2) and F2 <= C_F(S1)."""
    return (subsystem_contains(centralizer_subsystem(F, F2.support), F1)
            and subsystem_contains(centralizer_subsystem(F, F1.support), F2))


def star_generators(F: FusionSystem, F1: FusionSystem,
                    F2: FusionSystem) -> list[Hom]:
    """Morphisms on P1 P2 landing in S1 S2 whose restrictions lie in the factors."""
    T = F.universe.generated_subgroup(F1.support.members + F2.support.members)
    tset = T.member_set
    gens: list[Hom] = []
    seen: set[tuple] = set()
    for P1 in F1.subgroups():
        for P2 in F2.subgroups():
            P = F.universe.generated_subgroup(P1.members + P2.members)
            for psi in F.isos_from(P):
                if not set(psi.images) <= tset:
                    continue
                if psi.restrict_cores(P1).images not in F1._keys_from(P1):
                    continue
                if psi.restrict_cores(P2).images not in F2._keys_from(P2):
                    continue
                key = (P.members, psi.images)
                if key not in seen:
                    seen.add(key)
                    gens.append(psi)
    return gens


def central_product_subsystem(F: FusionSystem, F1: FusionSystem,
                              F2: FusionSystem, verify: bool = True) -> FusionSystem:
    """F1 * F2 over S1 S2; post-verified saturated and a central product."""
    if not centralize_each_other(F, F1, F2):
        raise NotCentralizing("factors do not centralize each other")
    T = F.universe.generated_subgroup(F1.support.members + F2.support.members)
    D = generated_subsystem(F, T, star_generators(F, F1, F2))
    D.name = f"{F1.name}*{F2.name}"
    if verify:
        if not is_saturated(D).ok:
            raise VerificationFailed("central product is not saturated")
        if not is_central_product(D, F1, F2):
            raise VerificationFailed("generated subsystem is not a central product")
    return D


def fusion_center(F: FusionSystem) -> Subgroup:
    from .centralizers import z_of
    return z_of(F)


def _push_product_pair(D: FusionSystem, phi1: Hom, phi2: Hom) -> Optional[Hom]:
    """Image of phi1 x phi2 under the multiplication map, or None when the
    pushed map is ill-defined or non-injective."""
    G = D.universe
    mul = G._mul
    pairs: dict[int, int] = {}
    for x1 in phi1.domain.members:
        fx1 = phi1(x1)
        for x2 in phi2.domain.members:
            key = mul[x1][x2]
            val = mul[fx1][phi2(x2)]
            if pairs.setdefault(key, val) != val:
                return None
    if len(set(pairs.values())) != len(pairs):
        return None
    members = tuple(sorted(pairs))
    dom = Subgroup(G, members, check=False)
    imgs = tuple(pairs[m] for m in members)
    cod = Subgroup(G, tuple(sorted(set(imgs))), check=False)
    return Hom(dom, cod, imgs, check=False)


def _induced_by_some_pair(D: FusionSystem, F1: FusionSystem, F2: FusionSystem,
                          psi: Hom) -> bool:
    """Is psi the multiplication-map image of some (phi1 x phi2) restriction?

    Every product-system morphism is such a restriction, so the image
    hom-sets come down to pairs (phi1, phi2) together with the largest
    compatible preimage: {(x1,x2) : x1 x2 in dom(psi), psi(x1 x2) =
    phi1(x1) phi2(x2)} is a subgroup, and psi is induced exactly when its
    multiplication image covers dom(psi)."""
    G = D.universe
    mul, inv = G._mul, G._inv
    Pp = psi.domain
    s2set = F2.support.member_set
    cand1 = tuple(sorted(x1 for x1 in F1.support.members
                         if any(mul[inv[x1]][p] in s2set for p in Pp.members)))
    P1max = Subgroup(G, cand1, check=False)
    s1set = F1.support.member_set
    cand2 = tuple(sorted(x2 for x2 in F2.support.members
                         if any(mul[p][inv[x2]] in s1set for p in Pp.members)))
    P2max = Subgroup(G, cand2, check=False)
    pset = Pp.member_set
    for P1 in subgroup_lattice(P1max):
        for phi1 in F1.isos_from(P1):
            for P2 in subgroup_lattice(P2max):
                for phi2 in F2.isos_from(P2):
                    covered = set()
                    for x1 in P1.members:
                        fx1 = phi1(x1)
                        for x2 in P2.members:
                            t = mul[x1][x2]
                            if t in pset and psi(t) == mul[fx1][phi2(x2)]:
                                covered.add(t)
                    if pset <= covered:
                        return True
    return False


def is_central_product(D: FusionSystem, F1: FusionSystem,
                       F2: FusionSystem) -> bool:
    """The clauses of the definition, checked literally for the
    multiplication map: central intersection, the map induces a functor
    from F1 x F2 into D (on pairs, via the product structure theorem),
    the functor is surjective on every hom-set of D, and it carries the
    canonical factor images onto F1 and F2 (automatic for multiplication,
    still asserted through the factor containments)."""
    S1, S2 = F1.support, F2.support
    meet = S1.meet(S2)
    for Fi in (F1, F2):
        if not meet.member_set <= fusion_center(Fi).member_set:
            return False
    if not S1.is_elementwise_commuting(S2):
        return False
    T = D.universe.generated_subgroup(S1.members + S2.members)
    if D.support != T:
        return False
    if not (subsystem_contains(D, F1) and subsystem_contains(D, F2)):
        return False
    for P1 in F1.subgroups():
        for phi1 in F1.isos_from(P1):
            for P2 in F2.subgroups():
                for phi2 in F2.isos_from(P2):
                    pushed = _push_product_pair(D, phi1, phi2)
                    if pushed is None or not D.contains_morphism(pushed):
                        return False
    for Pp in D.subgroups():
        for psi in D.isos_from(Pp):
            if not _induced_by_some_pair(D, F1, F2, psi):
                return False
    return True


# -- the product-theorem verification bundle ----------------------------------------


@dataclass(frozen=True)
class ProductReport:
    """Verification results for one pair of normal subsystems with [S1,S2]=1."""

    centralize: bool
    central_in_z1: bool
    central_in_z2: bool
    iff_holds: bool
    star_saturated: Optional[bool]
    star_central_product: Optional[bool]
    star_normal: Optional[bool]
    radical_intersect: bool
    z_centralize_witnesses: bool
    alarms: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return (self.iff_holds and self.radical_intersect
                and self.z_centralize_witnesses
                and self.star_saturated is not False
                and self.star_central_product is not False
                and self.star_normal is not False)

    def to_json(self) -> dict:
        return {
            "centralize_each_other": self.centralize,
            "meet_in_Z(F1)": self.central_in_z1,
            "meet_in_Z(F2)": self.central_in_z2,
            "iff": self.iff_holds,
            "star_saturated": self.star_saturated,
            "star_central_product": self.star_central_product,
            "star_normal": self.star_normal,
            "radical_intersect": self.radical_intersect,
            "z_centralize": self.z_centralize_witnesses,
            "alarms": list(self.alarms),
        }


def radical_intersect_failure(F: FusionSystem, S1: Subgroup, S2: Subgroup,
                              cr_list: Optional[Sequence[Subgroup]] = None
                              ) -> Optional[list[int]]:
    """First centric radical R with R n S1S2 != (R n S1)(R n S2), if any."""
    from .saturation import classify
    T = F.universe.generated_subgroup(S1.members + S2.members)
    for R in (cr_list if cr_list is not None else classify(F).cr_set()):
        lhs = R.member_set & T.member_set
        rs1 = Subgroup(F.universe, tuple(sorted(R.member_set & S1.member_set)),
                       check=False)
        rs2 = Subgroup(F.universe, tuple(sorted(R.member_set & S2.member_set)),
                       check=False)
        if lhs != set(rs1.product_set(rs2)):
            return list(R.members)
    return None


def zcentralize_witnesses(F: FusionSystem, Fi: FusionSystem,
                          Fj: FusionSystem) -> bool:
    """Extension witnesses: each beta in Aut_{Fi}(Si) extends to an
    automorphism of Si C_S(Si) moving C_S(Si) into Si and fixing Sj."""
    Si, Sj = Fi.support, Fj.support
    C = centralizer(F.support, Si)
    V = F.universe.generated_subgroup(Si.members + C.members)
    mul, inv = F.universe._mul, F.universe._inv
    for beta in Fi.automorphisms(Si):
        hit = False
        for ext in F.automorphisms(V):
            if not all(ext(x) == beta(x) for x in Si.members):
                continue
            if not all(mul[inv[c]][ext(c)] in Si.member_set for c in C.members):
                continue
            if ext.fixes_pointwise(Sj):
                hit = True
                break
        if not hit:
            return False
    return True


def verify_product_theorems(F: FusionSystem, F1: FusionSystem,
                            F2: FusionSystem) -> ProductReport:
    """Clauses: the centralize/center iff, saturation + normality + central
    product of F1*F2 when centralizing, the radical intersection identity,
    and the extension witnesses."""
    from .subsystems import is_normal

    alarms: list[str] = []
    S1, S2 = F1.support, F2.support
    meet = S1.meet(S2)
    z1 = meet.member_set <= fusion_center(F1).member_set
    z2 = meet.member_set <= fusion_center(F2).member_set
    ce = centralize_each_other(F, F1, F2)
    iff_holds = ce == (z1 and z2)
    if not iff_holds:
        alarms.append(f"centralize={ce} but center conditions=({z1},{z2})")

    star_sat = star_cp = star_normal = None
    if ce:
        D = central_product_subsystem(F, F1, F2, verify=False)
        star_sat = is_saturated(D).ok
        star_cp = is_central_product(D, F1, F2)
        star_normal = is_normal(F, D).normal
        for flag, label in ((star_sat, "saturated"), (star_cp, "central product"),
                            (star_normal, "normal")):
            if not flag:
                alarms.append(f"F1*F2 is not {label}")
    elif z1 and z2:
        # Central intersection fine yet not centralizing: any candidate over
        # S1 S2 would witness (ii) without (i); test the canonical one.
        T = F.universe.generated_subgroup(S1.members + S2.members)
        cand = generated_subsystem(F, T, star_generators(F, F1, F2))
        if is_central_product(cand, F1, F2):
            alarms.append("central product exists although factors do not centralize")
            star_cp = True
    # When the central-intersection clause already fails, no subsystem can
    # be a central product of the factors, so (ii) is false with (i).

    radical_bad = None
    if S1.is_elementwise_commuting(S2):
        radical_bad = radical_intersect_failure(F, S1, S2)
        if radical_bad is not None:
            alarms.append(f"radical intersection fails at R={radical_bad}")
    radical_ok = radical_bad is None

    zc = True
    for Fi, Fj, zi in ((F1, F2, z1), (F2, F1, z2)):
        if zi and not zcentralize_witnesses(F, Fi, Fj):
            zc = False
            alarms.append(f"extension witnesses missing for factor over "
                          f"{Fi.support.order}")
    return ProductReport(ce, z1, z2, iff_holds, star_sat, star_cp, star_normal,
                         radical_ok, zc, tuple(alarms))
