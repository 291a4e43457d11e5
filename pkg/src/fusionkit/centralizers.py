"""The centralizer of a normal subsystem: the family of centralized
subgroups, C_S(E) as its join, the factorization subgroups of the Frattini
argument, R* via models, focal and hyperfocal subgroups, the centralizer
subsystem C_F(E), and the coincidence formula for its automorphism groups."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import FactorizationMissing, TheoremViolation, VerificationFailed
from .fusion import FusionSystem, generated_subsystem, subsystem_contains
from .groups import Hom, Subgroup, centralizer, normalizer, subgroup_lattice
from .models import Model, model_of, normal_model, script_G
from .saturation import classify, o_upper_p_automorphisms
from .subsystems import (centralizer_subsystem, is_normal, is_strongly_closed,
                         weakly_closed_subgroups_in)


def contained_in_centralizer(F: FusionSystem, E: FusionSystem, X: Subgroup,
                             path: str = "both") -> bool:
    """E <= C_F(X), the membership test behind the centralized-subgroup family.

    ``path`` selects the full hom-set test ("full"), the generating-set test
    on the centric radical fully normalized classes of E ("generators"), or
    both with an agreement assertion ("both", the default).  The generating
    path is only sound for saturated E.
    """
    C = centralizer_subsystem(F, X)
    if not E.support.member_set <= C.support.member_set:
        return False
    full = None
    if path in ("full", "both"):
        full = subsystem_contains(C, E)
    gen = None
    if path in ("generators", "both"):
        gen = True
        for Q in classify(E).crf_set():
            if not {h.images for h in E.automorphisms(Q)} <= C._keys_from(Q):
                gen = False
                break
    if path == "full":
        return full
    if path == "generators":
        return gen
    if full != gen:
        raise VerificationFailed(
            f"generating-set and full containment tests disagree at X={list(X.members)}")
    return full


def centralized_set(F: FusionSystem, E: FusionSystem,
                    path: str = "both") -> tuple[Subgroup, ...]:
    """All X <= C_S(T) with E <= C_F(X), in canonical order."""
    T = E.support
    CST = centralizer(F.support, T)
    return tuple(X for X in subgroup_lattice(CST)
                 if contained_in_centralizer(F, E, X, path=path))


def c_s_of(F: FusionSystem, E: FusionSystem,
           X_set: Optional[tuple[Subgroup, ...]] = None) -> Subgroup:
    """C_S(E): the join of the centralized-subgroup family.

    Post-verified: the join is itself a member (hence the unique largest
    one) and strongly closed.  Failures raise TheoremViolation alarms.
    """
    if X_set is None:
        X_set = centralized_set(F, E)
    R = F.universe.trivial_subgroup
    for X in X_set:
        R = R.join(X)
    if not contained_in_centralizer(F, E, R):
        raise TheoremViolation("join of the centralized family is not a member")
    for X in X_set:
        if not X.member_set <= R.member_set:
            raise TheoremViolation("centralized family member escapes the join")
    if not is_strongly_closed(F, R):
        raise TheoremViolation("C_S(E) is not strongly closed")
    return R


# -- the two automorphism subgroups of the Frattini factorization ---------------


def a_circle(F: FusionSystem, E: FusionSystem, P: Subgroup) -> tuple[Hom, ...]:
    """Automorphisms moving P only inside P n T and restricting into E there.

    Verified to form a subgroup normal in Aut_F(P).
    """
    T = E.support
    G = F.universe
    PT = Subgroup(G, tuple(sorted(P.member_set & T.member_set)), check=False)
    out = []
    for phi in F.automorphisms(P):
        if not all(G.mul(G.inv(x), phi(x)) in PT.member_set for x in P.members):
            continue
        if phi.restrict_cores(PT).images not in E._keys_from(PT):
            continue
        out.append(phi)
    keys = {h.images for h in out}
    for a in out:
        for b in out:
            if a.then(b).images not in keys:
                raise VerificationFailed("A-circle is not closed under composition")
    from .fusion import conjugate_morphism
    for chi in F.automorphisms(P):
        for a in out:
            if conjugate_morphism(a, chi).images not in keys:
                raise VerificationFailed("A-circle is not normal in Aut_F(P)")
    return tuple(sorted(out, key=Hom.sort_key))


def h_group(F: FusionSystem, E: FusionSystem, P: Subgroup) -> tuple[Hom, ...]:
    """Automorphisms of P extending to P N_T(P); verified to form a subgroup."""
    T = E.support
    NT = normalizer(T, P)
    PN = F.universe.generated_subgroup(P.members + NT.members)
    ext_autos = [h for h in F.isos_from(PN) if h.codomain == PN]
    out = []
    for phi in F.automorphisms(P):
        if any(all(psi(x) == phi(x) for x in P.members) for psi in ext_autos):
            out.append(phi)
    keys = {h.images for h in out}
    for a in out:
        for b in out:
            if a.then(b).images not in keys:
                raise VerificationFailed("H(P) is not closed under composition")
    return tuple(sorted(out, key=Hom.sort_key))


def frattini_factorize(F: FusionSystem, E: FusionSystem, P: Subgroup,
                       phi: Hom) -> tuple[Hom, Hom]:
    """Write phi in Aut_F(P) as gamma then beta with gamma in H(P), beta in
    A-circle(P); exhaustive search, alarm if the factorization is missing."""
    acirc = {h.images: h for h in a_circle(F, E, P)}
    for gamma in h_group(F, E, P):
        beta = gamma.inverse().then(phi)
        hit = acirc.get(beta.images)
        if hit is not None:
            return gamma, hit
    raise FactorizationMissing(
        f"Aut_F(P) element admits no H(P)*A-circle factorization at P={list(P.members)}")


# -- R* via models ----------------------------------------------------------------


def r_star(F: FusionSystem, E: FusionSystem,
           check_characterization: bool = True) -> tuple[Subgroup, FusionSystem, Model, Subgroup]:
    """R* = C_S(N) computed in a model of the constrained local system.

    Returns (R*, the local system, its model, the normal model of N_E(T)).
    Post-verified against the definitional characterization: for X <= C_S(T),
    N_E(T) <= C_F(X) exactly when X <= R*.
    """
    Gsys, NET = script_G(F, E)
    model = model_of(Gsys)
    N = normal_model(Gsys, model, NET)
    sigma = model.sigma
    CSN = centralizer(model.sylow_image, N)
    members = tuple(x for x in F.support.members if sigma(x) in CSN.member_set)
    Rstar = Subgroup(F.universe, members, check=False)
    if check_characterization:
        T = E.support
        CST = centralizer(F.support, T)
        if not Rstar.member_set <= CST.member_set:
            raise TheoremViolation("R* leaves C_S(T)")
        for X in subgroup_lattice(CST):
            inside = X.member_set <= Rstar.member_set
            centr = contained_in_centralizer(F, NET, X)
            if inside != centr:
                raise TheoremViolation(
                    f"R* characterization fails at X={list(X.members)}: "
                    f"inside={inside} centralizes={centr}")
    return Rstar, Gsys, model, N


# -- focal and hyperfocal subgroups --------------------------------------------------


def focal_subgroup(F: FusionSystem) -> Subgroup:
    """foc(F) = <[P, Aut_F(P)] : P <= S>."""
    G = F.universe
    gens: set[int] = set()
    for P in F.subgroups():
        for phi in F.automorphisms(P):
            for x in P.members:
                gens.add(G.mul(G.inv(x), phi(x)))
    return G.generated_subgroup(gens)


def hyperfocal_subgroup(F: FusionSystem) -> Subgroup:
    """hyp(F) = <[P, O^p(Aut_F(P))] : P <= S>."""
    G = F.universe
    gens: set[int] = set()
    for P in F.subgroups():
        for phi in o_upper_p_automorphisms(F, P):
            for x in P.members:
                gens.add(G.mul(G.inv(x), phi(x)))
    return G.generated_subgroup(gens)


# -- the centralizer subsystem ---------------------------------------------------


@dataclass(frozen=True)
class CentralizerData:
    """Everything the centralizer construction produces for one normal pair."""

    E: FusionSystem
    X_set: tuple[Subgroup, ...]
    C_S_E: Subgroup
    R_star: Subgroup
    local_system: FusionSystem
    model: Model
    N: Subgroup

    def to_json(self) -> dict:
        return {
            "T": list(self.E.support.members),
            "X_set": [list(X.members) for X in self.X_set],
            "C_S_E": list(self.C_S_E.members),
            "R_star": list(self.R_star.members),
            "model_order": self.model.group.order,
            "normal_model_order": self.N.order,
        }


def compute_centralizer_data(F: FusionSystem, E: FusionSystem) -> CentralizerData:
    key = ("centralizer-data", E.cache_token)
    got = F._cache.get(key)
    if got is None:
        X_set = centralized_set(F, E)
        CSE = c_s_of(F, E, X_set)
        Rstar, Gsys, model, N = r_star(F, E)
        if not CSE.member_set <= Rstar.member_set:
            raise TheoremViolation("C_S(E) is not contained in R*")
        got = CentralizerData(E, X_set, CSE, Rstar, Gsys, model, N)
        F._cache[key] = got
    return got


def c_F_of(F: FusionSystem, E: FusionSystem,
           C_S_E: Optional[Subgroup] = None) -> FusionSystem:
    """C_F(E): the subsystem over C_S(E) generated by the p'-parts of the
    C_F(T)-automorphism groups; post-verified normal in F.

    The focal precondition foc(C_F(T)) <= C_S(E) is checked before any
    construction; it cannot fail on honest input, so a failure aborts.
    """
    R = C_S_E if C_S_E is not None else c_s_of(F, E)
    CFT = centralizer_subsystem(F, E.support)
    foc = focal_subgroup(CFT)
    if not foc.member_set <= R.member_set:
        raise TheoremViolation(
            "focal subgroup of C_F(T) is not contained in C_S(E)")
    gens: list[Hom] = []
    for P in subgroup_lattice(R):
        gens.extend(o_upper_p_automorphisms(CFT, P))
    CFE = generated_subsystem(F, R, gens)
    CFE.name = f"C_{F.name}(E_{E.support.order})"
    report = is_normal(F, CFE)
    if not report.normal:
        raise TheoremViolation(
            f"C_F(E) failed the normality report: {report.counterexamples}")
    return CFE


def coincide_check(F: FusionSystem, E: FusionSystem,
                   CFE: Optional[FusionSystem] = None,
                   C_S_E: Optional[Subgroup] = None) -> bool:
    """Aut_{C_F(E)}(P) = O^p(Aut_{C_F(T)}(P)) * Aut_{C_S(E)}(P) for every
    P fully normalized and centric in C_F(E)."""
    R = C_S_E if C_S_E is not None else c_s_of(F, E)
    cfe = CFE if CFE is not None else c_F_of(F, E, C_S_E=R)
    CFT = centralizer_subsystem(F, E.support)
    cls = classify(cfe)
    for P in cfe.subgroups():
        if not (cls.is_fully_normalized(P) and cls.is_centric(P)):
            continue
        lhs = {h.images for h in cfe.automorphisms(P)}
        op_part = o_upper_p_automorphisms(CFT, P)
        aut_r = cfe.automizer_in(R, P)
        rhs = {a.then(b).images for a in op_part for b in aut_r}
        if lhs != rhs:
            return False
    return True


def z_of(F: FusionSystem) -> Subgroup:
    """Z(F): the largest subgroup X with F <= C_F(X) (F run self-ambient)."""
    key = "center"
    got = F._cache.get(key)
    if got is None:
        got = c_s_of(F, F)
        F._cache[key] = got
    return got


def weakly_closed_analysis(F: FusionSystem, E: FusionSystem,
                           data: CentralizerData) -> dict:
    """Theorem-A(c) payload: closure properties of subgroups of R*."""
    wc = weakly_closed_subgroups_in(F, data.R_star)
    sc = tuple(P for P in subgroup_lattice(data.R_star) if is_strongly_closed(F, P))
    largest_wc = max(wc, key=lambda P: (P.order, P.members))
    largest_sc = max(sc, key=lambda P: (P.order, P.members))
    in_family = all(any(X == W for X in data.X_set) for W in wc)
    return {
        "weakly_closed": wc,
        "strongly_closed": sc,
        "largest_weakly_closed": largest_wc,
        "largest_strongly_closed": largest_sc,
        "all_weakly_closed_in_family": in_family,
    }
