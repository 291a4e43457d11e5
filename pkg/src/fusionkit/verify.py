"""Theorem-by-theorem verification across a corpus entry.

Every claim of the underlying theory maps to exactly one named check;
proof-internal lemmas are first-class checks so a regression localizes to
the earliest failing one.  A failing check carries a minimal counterexample
payload; an exception inside a check is recorded as a failure, never
propagated (corrupted inputs from mutation self-tests must fail cleanly).
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

from .centralizers import (CentralizerData, a_circle, c_F_of, c_s_of,
                           centralized_set, coincide_check,
                           compute_centralizer_data, contained_in_centralizer,
                           focal_subgroup, h_group, hyperfocal_subgroup,
                           weakly_closed_analysis)
from .corpus import Config
from .errors import FusionkitError
from .fusion import (FusionSystem, Hom, conjugate_morphism, fusion_of_group,
                     inner_system, subsystem_contains)
from .groups import (FiniteGroup, Subgroup, centralizer, derived_subgroup,
                     normal_subgroups, subgroup_lattice)
from .centralizers import r_star
from .models import (Model, model_of, models_isomorphic_over_s,
                     normal_in_system, normal_model, script_G)
from .saturation import classify, is_saturated
from .subsystems import (centralizer_subsystem, invariance_condition,
                         is_normal, is_strongly_closed, local_subsystem,
                         normal_subsystem_in, normalizer_subsystem,
                         realized_subsystem)

CHECK_ORDER: tuple[str, ...] = (
    "saturation",
    "Finvariant.equiv",
    "FfEf",
    "Wellknown",
    "LocalNormalSubsystems",
    "PropHelp",
    "EasyCentralizer",
    "FrattiniCons",
    "XInvariant",
    "WeaklyClosedCentralized",
    "GN",
    "CFCG0",
    "FirstCharacterization",
    "MainCSE.a",
    "MainCSE.b",
    "MainCSE.c",
    "FocProp",
    "ShowWeaklyNormal",
    "CFENormal",
    "MainCFE",
    "Coincide",
    "Model1.a",
    "Model1.b",
    "Model1.c",
    "RadicalIntersect",
    "ZCentralize",
    "NormalCentralizeEachOther",
    "L:F1F2Centralize",
    "P:F1F2Centralize",
    "MainCentralProduct",
    "focal-oracle",
    "centralizer-oracle",
)


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    status: str                      # "pass" | "fail"
    millis: float
    counterexample: Optional[dict] = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self, timings: bool = False) -> dict:
        out: dict = {"id": self.check_id, "status": self.status}
        if timings:
            out["millis"] = round(self.millis, 3)
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


def _sub(P: Subgroup) -> list[int]:
    return list(P.members)


# -- entry context -----------------------------------------------------------------


class EntryContext:
    """One corpus entry: the realized system and everything derived from it."""

    def __init__(self, label: str, group: FiniteGroup, p: int,
                 config: Optional[Config] = None,
                 system_mutator: Optional[Callable[[FusionSystem], FusionSystem]] = None
                 ) -> None:
        self.label = label
        self.group = group
        self.p = p
        self.config = config or Config()
        from .groups import sylow_subgroup
        self.S = sylow_subgroup(group.full_subgroup, p)
        self.F = fusion_of_group(group, self.S, p)
        if system_mutator is not None:
            self.F = system_mutator(self.F)
        self._pairs: Optional[tuple[tuple[Subgroup, FusionSystem], ...]] = None
        self._data: dict[tuple, CentralizerData] = {}
        self._cfe: dict[tuple, FusionSystem] = {}

    def normal_pairs(self) -> tuple[tuple[Subgroup, FusionSystem], ...]:
        """(N, E) per normal subgroup of G, deduplicated by the subsystem."""
        if self._pairs is None:
            seen: dict[tuple, tuple[Subgroup, FusionSystem]] = {}
            for N in normal_subgroups(self.group.full_subgroup):
                E = normal_subsystem_in(self.F, N)
                key = tuple(sorted(
                    (P.members, tuple(sorted(E._keys_from(P))))
                    for P in E.subgroups()))
                if key not in seen:
                    seen[key] = (N, E)
            self._pairs = tuple(sorted(seen.values(),
                                       key=lambda pair: pair[0].sort_key()))
        return self._pairs

    def data_for(self, E: FusionSystem) -> CentralizerData:
        key = E.cache_token
        got = self._data.get(key)
        if got is None:
            got = compute_centralizer_data(self.F, E)
            self._data[key] = got
        return got

    def cfe_for(self, E: FusionSystem) -> FusionSystem:
        key = E.cache_token
        got = self._cfe.get(key)
        if got is None:
            got = c_F_of(self.F, E, C_S_E=self.data_for(E).C_S_E)
            self._cfe[key] = got
        return got

    def candidate_subsystems(self) -> tuple[FusionSystem, ...]:
        """Saturated subsystems built from subgroups and normal subgroups."""
        got = getattr(self, "_candidates", None)
        if got is None:
            cands: list[FusionSystem] = []
            for P in self.F.subgroups():
                D = inner_system(self.F, P)
                if is_saturated(D).ok:
                    cands.append(D)
            cands.extend(E for _, E in self.normal_pairs())
            got = tuple(cands)
            self._candidates = got
        return got

    def commuting_pairs(self) -> tuple[tuple[FusionSystem, FusionSystem], ...]:
        pairs = []
        es = [E for _, E in self.normal_pairs()]
        for i, E1 in enumerate(es):
            for E2 in es[i:]:
                if E1.support.is_elementwise_commuting(E2.support):
                    pairs.append((E1, E2))
        return tuple(pairs)

    def alternative_sylow_element(self) -> Optional[int]:
        """Smallest g with S^g != S, or None when S is the unique Sylow."""
        for g in range(self.group.order):
            if self.S.conjugate(g) != self.S:
                return g
        return None


# -- per-claim verifiers (return a counterexample dict or None) ----------------------


def verify_ffef(F: FusionSystem, E: FusionSystem) -> Optional[dict]:
    """Fully F-normalized subgroups of T are fully E-normalized."""
    cls_f = classify(F)
    cls_e = classify(E)
    for P in E.subgroups():
        if cls_f.is_fully_normalized(P) and not cls_e.is_fully_normalized(P):
            return {"P": _sub(P)}
    return None


def verify_wellknown(F: FusionSystem, E: FusionSystem) -> Optional[dict]:
    """E^cr is invariant under F-conjugation."""
    cls_e = classify(E)
    cr = {P.members for P in cls_e.cr_set()}
    for P in E.subgroups():
        if P.members not in cr:
            continue
        for h in F.isos_from(P):
            if h.codomain.members not in cr:
                return {"P": _sub(P), "image": list(h.codomain.members)}
    return None


def verify_local_normal(F: FusionSystem, E: FusionSystem,
                        triples: Optional[Sequence] = None) -> Optional[dict]:
    """Per fully normalized Q <= T: Q in E^f, both locals saturated, and
    N_E(Q) normal in N_F(Q)."""
    cls_f = classify(F)
    cls_e = classify(E)
    if triples is None:
        triples = []
        for Q in E.subgroups():
            if not cls_f.is_fully_normalized(Q):
                continue
            triples.append((Q, normalizer_subsystem(F, Q), local_subsystem(E, Q)))
    for Q, NFQ, NEQ in triples:
        if not cls_e.is_fully_normalized(Q):
            return {"Q": _sub(Q), "kind": "not fully E-normalized"}
        if not is_saturated(NFQ).ok:
            return {"Q": _sub(Q), "kind": "N_F(Q) not saturated"}
        if not is_saturated(NEQ).ok:
            return {"Q": _sub(Q), "kind": "N_E(Q) not saturated"}
        if not subsystem_contains(NFQ, NEQ):
            return {"Q": _sub(Q), "kind": "N_E(Q) not inside N_F(Q)"}
        report = is_normal(NFQ, NEQ)
        if not report.normal:
            return {"Q": _sub(Q), "kind": "N_E(Q) not normal in N_F(Q)",
                    "detail": [list(c) for c in report.counterexamples]}
    return None


def verify_prophelp(F: FusionSystem, E: FusionSystem,
                    locals_override: Optional[dict] = None) -> Optional[dict]:
    """For X fully normalized with X n T fully normalized and E-centric and
    X <= (X n T) C_S(T): the local system at X is constrained and saturated
    and N_E(X n T) is normal in it."""
    cls_f = classify(F)
    cls_e = classify(E)
    T = E.support
    CST = centralizer(F.support, T)
    from .models import is_constrained
    for X in F.subgroups():
        if not cls_f.is_fully_normalized(X):
            continue
        Q = Subgroup(F.universe, tuple(sorted(X.member_set & T.member_set)),
                     check=False)
        if not (cls_f.is_fully_normalized(Q) and cls_e.is_centric(Q)):
            continue
        bound = set(Q.product_set(CST))
        if not X.member_set <= bound:
            continue
        CSX = centralizer(F.support, X)
        V = F.universe.generated_subgroup(X.members + CSX.members)
        FX = normalizer_subsystem(normalizer_subsystem(F, X), V)
        if locals_override is not None:
            FX = locals_override.get(X.members, FX)
        if not is_saturated(FX).ok:
            return {"X": _sub(X), "kind": "local system not saturated"}
        constrained, _ = is_constrained(FX)
        if not constrained:
            return {"X": _sub(X), "kind": "local system not constrained"}
        NEQ = local_subsystem(E, Q)
        if not subsystem_contains(FX, NEQ):
            return {"X": _sub(X), "Q": _sub(Q),
                    "kind": "N_E(X n T) not inside the local system"}
        if not is_normal(FX, NEQ).normal:
            return {"X": _sub(X), "Q": _sub(Q),
                    "kind": "N_E(X n T) not normal in the local system"}
    return None


def verify_easy_centralizer(F: FusionSystem, E: FusionSystem,
                            X_set: Optional[Sequence[Subgroup]] = None) -> Optional[dict]:
    """Conjugating along morphisms defined on XT preserves centralizing:
    the membership equivalence, the family, and the N_E(T) condition."""
    T = E.support
    CST = centralizer(F.support, T)
    if X_set is None:
        X_set = centralized_set(F, E)
    family = {X.members for X in X_set}
    NET = local_subsystem(E, T)
    net_centralized = {X.members: contained_in_centralizer(F, NET, X)
                       for X in subgroup_lattice(CST)}
    for X in subgroup_lattice(CST):
        XT = F.universe.generated_subgroup(X.members + T.members)
        C_X = centralizer_subsystem(F, X)
        for phi in F.isos_from(XT):
            Xphi = phi.subgroup_image(X)
            if not Xphi.member_set <= CST.member_set:
                return {"clause": "a", "X": _sub(X), "phi": list(phi.images),
                        "kind": "image leaves C_S(T)"}
            C_Xphi = centralizer_subsystem(F, Xphi)
            for P in E.subgroups():
                for beta in E.isos_from(P):
                    lhs = C_X.contains_morphism(beta)
                    moved = conjugate_morphism(beta, phi)
                    rhs = C_Xphi.contains_morphism(moved)
                    if lhs != rhs:
                        return {"clause": "a", "X": _sub(X), "P": _sub(P),
                                "beta": list(beta.images), "phi": list(phi.images)}
            if X.members in family and Xphi.members not in family:
                return {"clause": "b", "X": _sub(X), "image": _sub(Xphi)}
            if net_centralized[X.members]:
                moved_ok = net_centralized.get(Xphi.members)
                if moved_ok is None:
                    moved_ok = contained_in_centralizer(F, NET, Xphi)
                if not moved_ok:
                    return {"clause": "c", "X": _sub(X), "image": _sub(Xphi)}
    return None


def verify_frattini_cons(F: FusionSystem, E: FusionSystem,
                         h_sets: Optional[dict] = None,
                         a_sets: Optional[dict] = None) -> Optional[dict]:
    """Aut_F(P) = H(P) A-circle(P) for every fully normalized P."""
    cls = classify(F)
    for P in F.subgroups():
        if not cls.is_fully_normalized(P):
            continue
        hs = (h_sets or {}).get(P.members) or h_group(F, E, P)
        asets = (a_sets or {}).get(P.members) or a_circle(F, E, P)
        product = {g.then(b).images for g in hs for b in asets}
        want = {h.images for h in F.automorphisms(P)}
        if product != want:
            return {"P": _sub(P), "missing": sorted(want - product)[:1]}
    return None


def verify_x_invariant(F: FusionSystem, E: FusionSystem,
                       X_set: Optional[Sequence[Subgroup]] = None) -> Optional[dict]:
    """The centralized family is invariant under taking F-conjugates."""
    if X_set is None:
        X_set = centralized_set(F, E)
    family = {X.members for X in X_set}
    for X in X_set:
        for phi in F.isos_from(X):
            if phi.codomain.members not in family:
                return {"X": _sub(X), "image": list(phi.codomain.members)}
    return None


def verify_weakly_closed_centralized(F: FusionSystem, E: FusionSystem,
                                     X_set: Optional[Sequence[Subgroup]] = None
                                     ) -> Optional[dict]:
    """Weakly closed R <= C_S(T) centralized by Aut_E(T) lie in the family."""
    T = E.support
    CST = centralizer(F.support, T)
    if X_set is None:
        X_set = centralized_set(F, E)
    family = {X.members for X in X_set}
    for R in subgroup_lattice(CST):
        if not is_weakly_closed_cached(F, R):
            continue
        C_R = centralizer_subsystem(F, R)
        if not all(C_R.contains_morphism(a) for a in E.automorphisms(T)):
            continue
        if R.members not in family:
            return {"R": _sub(R)}
    return None


def is_weakly_closed_cached(F: FusionSystem, P: Subgroup) -> bool:
    key = ("wc", P.members)
    got = F._cache.get(key)
    if got is None:
        from .subsystems import is_weakly_closed
        got = is_weakly_closed(F, P)
        F._cache[key] = got
    return got


def verify_gn(F: FusionSystem, E: FusionSystem) -> Optional[dict]:
    """The R*-local system is constrained over S with N_E(T) normal in it."""
    try:
        Gsys, NET = script_G(F, E, check=True)
    except FusionkitError as exc:
        return {"kind": str(exc)}
    if Gsys.support != F.support:
        return {"kind": "local system is not over S"}
    if not is_saturated(Gsys).ok:
        return {"kind": "local system not saturated"}
    return None


def verify_cfcg0(F: FusionSystem, E: FusionSystem,
                 auts: Optional[Sequence[Hom]] = None) -> Optional[dict]:
    """Aut_E(T) extends to TC_S(T) moving it only inside T and fixing any X
    whose centralizer contains N_E(T)."""
    T = E.support
    CST = centralizer(F.support, T)
    V = F.universe.generated_subgroup(T.members + CST.members)
    NET = local_subsystem(E, T)
    mul, inv = F.universe._mul, F.universe._inv
    targets = [X for X in subgroup_lattice(CST)
               if contained_in_centralizer(F, NET, X)]
    alphas = tuple(auts) if auts is not None else E.automorphisms(T)
    for X in targets:
        for alpha in alphas:
            hit = False
            for ext in F.automorphisms(V):
                if not all(ext(x) == alpha(x) for x in T.members):
                    continue
                if not all(mul[inv[v]][ext(v)] in T.member_set for v in V.members):
                    continue
                if ext.fixes_pointwise(X):
                    hit = True
                    break
            if not hit:
                return {"X": _sub(X), "alpha": list(alpha.images)}
    return None


def verify_first_characterization(F: FusionSystem, E: FusionSystem,
                                  R_star: Optional[Subgroup] = None,
                                  data: Optional[CentralizerData] = None
                                  ) -> Optional[dict]:
    """Exact set equality {X <= C_S(T): N_E(T) <= C_F(X)} = subgroups of R*."""
    if R_star is None:
        if data is None:
            try:
                R_star = r_star(F, E, check_characterization=False)[0]
            except FusionkitError as exc:
                return {"kind": str(exc)}
        else:
            R_star = data.R_star
    T = E.support
    CST = centralizer(F.support, T)
    NET = local_subsystem(E, T)
    for X in subgroup_lattice(CST):
        inside = X.member_set <= R_star.member_set
        centralizes = contained_in_centralizer(F, NET, X)
        if inside != centralizes:
            return {"X": _sub(X), "inside_R_star": inside,
                    "centralizes": centralizes}
    return None


def verify_main_cse_a(F: FusionSystem, E: FusionSystem,
                      X_set: Optional[Sequence[Subgroup]] = None,
                      C_S_E: Optional[Subgroup] = None) -> Optional[dict]:
    """C_S(E) is a member of the family, its unique largest element, and
    strongly closed."""
    if X_set is None:
        X_set = centralized_set(F, E)
    if C_S_E is None:
        R = F.universe.trivial_subgroup
        for X in X_set:
            R = R.join(X)
        C_S_E = R
    if not contained_in_centralizer(F, E, C_S_E):
        return {"kind": "join is not centralized", "C_S_E": _sub(C_S_E)}
    for X in X_set:
        if not X.member_set <= C_S_E.member_set:
            return {"kind": "family member escapes the join", "X": _sub(X)}
    if not is_strongly_closed(F, C_S_E):
        return {"kind": "not strongly closed", "C_S_E": _sub(C_S_E)}
    return None


def verify_main_cse_b(ctx: EntryContext, E: FusionSystem,
                      data: Optional[CentralizerData] = None) -> Optional[dict]:
    """R* characterization plus model-choice independence via an
    alternative Sylow conjugate when one exists."""
    F = ctx.F
    if data is None:
        data = ctx.data_for(E)
    bad = verify_first_characterization(F, E, R_star=data.R_star)
    if bad is not None:
        bad["kind"] = "characterization"
        return bad
    g = ctx.alternative_sylow_element()
    if g is None:
        return None
    G = ctx.group
    S2 = ctx.S.conjugate(g)
    F2 = fusion_of_group(G, S2, ctx.p)
    wit = E.witness
    T2 = E.support.conjugate(g)
    E2 = realized_subsystem(F2, wit, T2)
    try:
        R2 = r_star(F2, E2, check_characterization=False)[0]
    except FusionkitError as exc:
        return {"kind": "alternative model failed", "detail": str(exc)}
    ginv = G.inv(g)
    pulled = tuple(sorted(G.conj(x, ginv) for x in R2.members))
    if pulled != data.R_star.members:
        return {"kind": "model dependence", "R_star": _sub(data.R_star),
                "transported": list(pulled)}
    return None


def verify_main_cse_c(F: FusionSystem, E: FusionSystem,
                      data: CentralizerData) -> Optional[dict]:
    """Weakly closed subgroups of R* are in the family; C_S(E) is the
    largest weakly closed and the largest strongly closed subgroup of R*."""
    info = weakly_closed_analysis(F, E, data)
    if not info["all_weakly_closed_in_family"]:
        bad = [W for W in info["weakly_closed"]
               if all(W != X for X in data.X_set)]
        return {"kind": "weakly closed outside family", "R": _sub(bad[0])}
    if info["largest_weakly_closed"] != data.C_S_E:
        return {"kind": "largest weakly closed differs",
                "got": _sub(info["largest_weakly_closed"]),
                "C_S_E": _sub(data.C_S_E)}
    if info["largest_strongly_closed"] != data.C_S_E:
        return {"kind": "largest strongly closed differs",
                "got": _sub(info["largest_strongly_closed"]),
                "C_S_E": _sub(data.C_S_E)}
    return None


def verify_focprop(F: FusionSystem, E: FusionSystem,
                   C_S_E: Optional[Subgroup] = None) -> Optional[dict]:
    """foc(C_F(T)) <= C_S(E), and hence hyp(C_F(T)) <= C_S(E)."""
    if C_S_E is None:
        C_S_E = c_s_of(F, E)
    CFT = centralizer_subsystem(F, E.support)
    foc = focal_subgroup(CFT)
    if not foc.member_set <= C_S_E.member_set:
        return {"kind": "focal", "foc": _sub(foc), "C_S_E": _sub(C_S_E)}
    hyp = hyperfocal_subgroup(CFT)
    if not hyp.member_set <= C_S_E.member_set:
        return {"kind": "hyperfocal", "hyp": _sub(hyp), "C_S_E": _sub(C_S_E)}
    return None


def verify_show_weakly_normal(F: FusionSystem, E: FusionSystem,
                              CFE: FusionSystem) -> Optional[dict]:
    report = is_normal(F, CFE)
    if not report.weakly_normal:
        return {"kind": "not weakly normal",
                "detail": [list(c) for c in report.counterexamples]}
    return None


def verify_cfe_normal(F: FusionSystem, E: FusionSystem,
                      CFE: FusionSystem) -> Optional[dict]:
    report = is_normal(F, CFE)
    if not report.normal:
        return {"kind": "not normal",
                "detail": [list(c) for c in report.counterexamples]}
    return None


def verify_main_cfe(F: FusionSystem, E: FusionSystem, CFE: FusionSystem,
                    candidates: Sequence[FusionSystem]) -> Optional[dict]:
    """D <= C_F(E) iff D and E centralize each other, over all saturated
    candidate subsystems (plus C_F(E) itself)."""
    from .products import centralize_each_other
    for D in list(candidates) + [CFE]:
        inside = subsystem_contains(CFE, D)
        cen = centralize_each_other(F, D, E)
        if inside != cen:
            return {"D_support": _sub(D.support), "D": D.name,
                    "inside": inside, "centralize": cen}
    return None


def verify_coincide(F: FusionSystem, E: FusionSystem, CFE: FusionSystem,
                    C_S_E: Subgroup) -> Optional[dict]:
    if not coincide_check(F, E, CFE=CFE, C_S_E=C_S_E):
        return {"kind": "automorphism product formula fails"}
    return None


def verify_finvariant_equiv(F: FusionSystem, E: FusionSystem,
                            conditions: str = "abcdef") -> Optional[dict]:
    values = {w: invariance_condition(F, E, w) for w in conditions}
    if len(set(values.values())) > 1:
        return {"conditions": values, "T": _sub(E.support)}
    return None


def verify_model1a(ctx: EntryContext, E: FusionSystem) -> Optional[dict]:
    """Models over alternative Sylow choices are isomorphic over the common S."""
    g = ctx.alternative_sylow_element()
    if g is None:
        return None
    F, G = ctx.F, ctx.group
    data = ctx.data_for(E)
    S2 = ctx.S.conjugate(g)
    F2 = fusion_of_group(G, S2, ctx.p)
    E2 = realized_subsystem(F2, E.witness, E.support.conjugate(g))
    try:
        Gsys2, NET2 = script_G(F2, E2, check=False)
        model2 = model_of(Gsys2)
    except FusionkitError as exc:
        return {"kind": "alternative model failed", "detail": str(exc)}
    conj = Hom.conjugation(ctx.S, g)
    sigma2 = conj.then(model2.sigma)
    transported = Model(model2.group, sigma2, provenance="sylow-conjugate")
    if not models_isomorphic_over_s(data.local_system, data.model, transported):
        return {"kind": "no isomorphism over S between model choices"}
    return None


def verify_model1b(F_of_model: FusionSystem, model: Model) -> Optional[dict]:
    """Subgroups of S are normal in the system iff normal in the model;
    normal centric subgroups are self-centralizing in the model."""
    from .saturation import classify as _classify
    M, sigma = model.group, model.sigma
    model_normals = {N.members for N in normal_subgroups(M.full_subgroup)}
    cls = _classify(F_of_model)
    for P in F_of_model.subgroups():
        Pm = sigma.subgroup_image(P)
        in_sys = normal_in_system(F_of_model, P)
        in_model = Pm.members in model_normals
        if in_sys != in_model:
            return {"P": _sub(P), "normal_in_system": in_sys,
                    "normal_in_model": in_model}
        if in_sys and cls.is_centric(P):
            CM = centralizer(M.full_subgroup, Pm)
            if not CM.member_set <= Pm.member_set:
                return {"P": _sub(P), "kind": "C_M(P) leaves P"}
    return None


def verify_model1c(ctx: EntryContext, E: FusionSystem) -> Optional[dict]:
    """The normal model exists and is unique (alarm types become failures)."""
    data = ctx.data_for(E)
    try:
        NET = local_subsystem(E, E.support)
        N = normal_model(data.local_system, data.model, NET)
    except FusionkitError as exc:
        return {"kind": str(exc)}
    if N != data.N:
        return {"kind": "normal model differs from recorded one"}
    return None


# -- product checks -------------------------------------------------------------


def product_report_for(ctx: EntryContext, E1: FusionSystem,
                       E2: FusionSystem):
    from .products import verify_product_theorems
    key = ("product-report", E1.cache_token, E2.cache_token)
    got = ctx.F._cache.get(key)
    if got is None:
        got = verify_product_theorems(ctx.F, E1, E2)
        ctx.F._cache[key] = got
    return got


def verify_l_f1f2(F: FusionSystem, E1: FusionSystem, E2: FusionSystem,
                  z_values: Optional[dict] = None) -> Optional[dict]:
    """F_i <= C_F(S_{3-i}) forces S1 n S2 <= Z(F_i), directionally."""
    from .centralizers import z_of
    meet = E1.support.meet(E2.support)
    for Fi, Fj in ((E1, E2), (E2, E1)):
        contained = subsystem_contains(centralizer_subsystem(F, Fj.support), Fi)
        z = (z_values or {}).get(Fi.support.members) or z_of(Fi)
        if contained and not meet.member_set <= z.member_set:
            return {"factor": _sub(Fi.support), "meet": _sub(meet)}
    return None


# -- the registry ------------------------------------------------------------------


def _per_pair(verifier: Callable) -> Callable:
    def run(ctx: EntryContext) -> Optional[dict]:
        for N, E in ctx.normal_pairs():
            bad = verifier(ctx.F, E)
            if bad is not None:
                bad["pair"] = {"N_order": N.order, "T": _sub(E.support)}
                return bad
        return None
    return run


def _check_saturation(ctx: EntryContext) -> Optional[dict]:
    report = is_saturated(ctx.F)
    if not report.ok:
        return dict(report.failures[0])
    for _, E in ctx.normal_pairs():
        rep = is_saturated(E)
        if not rep.ok:
            out = dict(rep.failures[0])
            out["pair"] = {"T": _sub(E.support)}
            return out
    return None


def _check_finvariant(ctx: EntryContext) -> Optional[dict]:
    F = ctx.F
    candidates: list[FusionSystem] = []
    for _, E in ctx.normal_pairs():
        candidates.append(E)
        candidates.append(inner_system(F, E.support))
    seen = set()
    for E in candidates:
        key = E.cache_token
        if key in seen:
            continue
        seen.add(key)
        bad = verify_finvariant_equiv(F, E)
        if bad is not None:
            return bad
    return None


def _check_main_cse_a(ctx: EntryContext) -> Optional[dict]:
    for N, E in ctx.normal_pairs():
        data = ctx.data_for(E)
        bad = verify_main_cse_a(ctx.F, E, X_set=data.X_set, C_S_E=data.C_S_E)
        if bad is not None:
            bad["pair"] = {"N_order": N.order}
            return bad
    return None


def _check_main_cse_b(ctx: EntryContext) -> Optional[dict]:
    for N, E in ctx.normal_pairs():
        bad = verify_main_cse_b(ctx, E)
        if bad is not None:
            bad["pair"] = {"N_order": N.order}
            return bad
    return None


def _check_main_cse_c(ctx: EntryContext) -> Optional[dict]:
    for N, E in ctx.normal_pairs():
        bad = verify_main_cse_c(ctx.F, E, ctx.data_for(E))
        if bad is not None:
            bad["pair"] = {"N_order": N.order}
            return bad
    return None


def _check_cfe(verifier) -> Callable:
    def run(ctx: EntryContext) -> Optional[dict]:
        for N, E in ctx.normal_pairs():
            data = ctx.data_for(E)
            cfe = ctx.cfe_for(E)
            bad = verifier(ctx, E, data, cfe)
            if bad is not None:
                bad["pair"] = {"N_order": N.order}
                return bad
        return None
    return run


def _check_products(clause: str) -> Callable:
    def run(ctx: EntryContext) -> Optional[dict]:
        if clause == "L":
            for E1, E2 in ctx.commuting_pairs():
                bad = verify_l_f1f2(ctx.F, E1, E2)
                if bad is not None:
                    return bad
            return None
        for E1, E2 in ctx.commuting_pairs():
            rep = product_report_for(ctx, E1, E2)
            payload = {"S1": _sub(E1.support), "S2": _sub(E2.support)}
            if clause == "iff" and not rep.iff_holds:
                return payload
            if clause == "radical" and not rep.radical_intersect:
                return payload
            if clause == "zext" and not rep.z_centralize_witnesses:
                return payload
            if clause == "star" and rep.centralize:
                if rep.star_saturated is not True or rep.star_central_product is not True:
                    payload["saturated"] = rep.star_saturated
                    payload["central_product"] = rep.star_central_product
                    return payload
            if clause == "star" and not rep.centralize and rep.star_central_product:
                payload["kind"] = "central product without centralizing factors"
                return payload
            if clause == "normal" and rep.centralize and rep.star_normal is not True:
                return payload
        return None
    return run


def _check_model1a(ctx: EntryContext) -> Optional[dict]:
    for N, E in ctx.normal_pairs():
        bad = verify_model1a(ctx, E)
        if bad is not None:
            bad["pair"] = {"N_order": N.order}
            return bad
    return None


def _check_model1b(ctx: EntryContext) -> Optional[dict]:
    for N, E in ctx.normal_pairs():
        data = ctx.data_for(E)
        bad = verify_model1b(data.local_system, data.model)
        if bad is not None:
            bad["pair"] = {"N_order": N.order}
            return bad
    return None


def _check_model1c(ctx: EntryContext) -> Optional[dict]:
    for N, E in ctx.normal_pairs():
        bad = verify_model1c(ctx, E)
        if bad is not None:
            bad["pair"] = {"N_order": N.order}
            return bad
    return None


def _check_focal_oracle(ctx: EntryContext) -> Optional[dict]:
    """Independent group-theoretic oracle: foc(F_S(G)) = S n [G,G]."""
    foc = focal_subgroup(ctx.F)
    oracle = ctx.S.meet(derived_subgroup(ctx.group.full_subgroup))
    if foc != oracle:
        return {"focal": _sub(foc), "oracle": _sub(oracle)}
    return None


def _check_centralizer_oracle(ctx: EntryContext) -> Optional[dict]:
    """Brute-force family recomputation (full hom-sets) matches the
    generating-set route, subgroup by subgroup."""
    for N, E in ctx.normal_pairs():
        brute = centralized_set(ctx.F, E, path="full")
        structured = centralized_set(ctx.F, E, path="generators")
        if [X.members for X in brute] != [X.members for X in structured]:
            return {"pair": {"N_order": N.order},
                    "brute": [_sub(X) for X in brute],
                    "structured": [_sub(X) for X in structured]}
        data = ctx.data_for(E)
        if [X.members for X in brute] != [X.members for X in data.X_set]:
            return {"pair": {"N_order": N.order}, "kind": "family drifted"}
    return None


CHECKS: dict[str, Callable[[EntryContext], Optional[dict]]] = {
    "saturation": _check_saturation,
    "Finvariant.equiv": _check_finvariant,
    "FfEf": _per_pair(verify_ffef),
    "Wellknown": _per_pair(verify_wellknown),
    "LocalNormalSubsystems": _per_pair(verify_local_normal),
    "PropHelp": _per_pair(verify_prophelp),
    "EasyCentralizer": _per_pair(verify_easy_centralizer),
    "FrattiniCons": _per_pair(verify_frattini_cons),
    "XInvariant": _per_pair(verify_x_invariant),
    "WeaklyClosedCentralized": _per_pair(verify_weakly_closed_centralized),
    "GN": _per_pair(verify_gn),
    "CFCG0": _per_pair(verify_cfcg0),
    "FirstCharacterization": _per_pair(verify_first_characterization),
    "MainCSE.a": _check_main_cse_a,
    "MainCSE.b": _check_main_cse_b,
    "MainCSE.c": _check_main_cse_c,
    "FocProp": _per_pair(verify_focprop),
    "ShowWeaklyNormal": _check_cfe(
        lambda ctx, E, data, cfe: verify_show_weakly_normal(ctx.F, E, cfe)),
    "CFENormal": _check_cfe(
        lambda ctx, E, data, cfe: verify_cfe_normal(ctx.F, E, cfe)),
    "MainCFE": _check_cfe(
        lambda ctx, E, data, cfe: verify_main_cfe(
            ctx.F, E, cfe, ctx.candidate_subsystems())),
    "Coincide": _check_cfe(
        lambda ctx, E, data, cfe: verify_coincide(ctx.F, E, cfe, data.C_S_E)),
    "Model1.a": _check_model1a,
    "Model1.b": _check_model1b,
    "Model1.c": _check_model1c,
    "RadicalIntersect": _check_products("radical"),
    "ZCentralize": _check_products("zext"),
    "NormalCentralizeEachOther": _check_products("iff"),
    "L:F1F2Centralize": _check_products("L"),
    "P:F1F2Centralize": _check_products("star"),
    "MainCentralProduct": _check_products("normal"),
    "focal-oracle": _check_focal_oracle,
    "centralizer-oracle": _check_centralizer_oracle,
}


def run_suite(label: str, group: FiniteGroup, p: int,
              check_ids: Optional[Iterable[str]] = None,
              config: Optional[Config] = None,
              system_mutator: Optional[Callable[[FusionSystem], FusionSystem]] = None
              ) -> list[CheckResult]:
    """Run the named checks (all by default) on one corpus entry.

    Results come back in canonical id order; exceptions inside a check are
    recorded as failures carrying the error, so corrupted inputs cannot pass.
    ``system_mutator`` lets the self-tests corrupt the built system.
    """
    ids = list(check_ids) if check_ids is not None else list(CHECK_ORDER)
    unknown = [i for i in ids if i not in CHECKS]
    if unknown:
        raise KeyError(f"unknown check ids: {unknown}")
    ctx = EntryContext(label, group, p, config=config, system_mutator=system_mutator)
    results: list[CheckResult] = []
    for check_id in CHECK_ORDER:
        if check_id not in ids:
            continue
        start = time.perf_counter()
        try:
            bad = CHECKS[check_id](ctx)
        except Exception as exc:  # corrupted data must fail, not crash
            bad = {"error": f"{type(exc).__name__}: {exc}"}
        millis = (time.perf_counter() - start) * 1000.0
        results.append(CheckResult(check_id, "pass" if bad is None else "fail",
                                   millis, bad))
    return results


def suite_report(label: str, p: int, results: Sequence[CheckResult],
                 timings: bool = False) -> dict:
    return {"entry": label, "prime": p,
            "checks": [r.to_json(timings=timings) for r in results]}


# -- mutation helpers (self-tests of the harness) -------------------------------------


def with_replaced_isos(F: FusionSystem, P: Subgroup, homs: Sequence[Hom],
                       keep_witness: bool = False) -> FusionSystem:
    """A structurally-identical system with the iso-set at P replaced.

    ``keep_witness`` keeps the realizing group attached (hom-sets still come
    from the explicit tables), so group-level constructions stay available
    while the fusion data is corrupted."""
    explicit = dict(F.materialize())
    explicit[P.members] = tuple(sorted((h.cores() for h in homs), key=Hom.sort_key))
    return FusionSystem(F.support, F.p, explicit=explicit, ambient=F.ambient,
                        witness=F.witness if keep_witness else None,
                        name=f"{F.name}~mutated")


def with_removed_iso(F: FusionSystem, P: Subgroup, index: int,
                     keep_witness: bool = False) -> FusionSystem:
    homs = list(F.isos_from(P))
    del homs[index]
    return with_replaced_isos(F, P, homs, keep_witness=keep_witness)


def with_added_iso(F: FusionSystem, hom: Hom, close: bool = True,
                   keep_witness: bool = False) -> FusionSystem:
    """Adjoin a morphism; by default take the closure so the result is a
    structurally valid (if wrong) fusion system."""
    if not close:
        homs = list(F.isos_from(hom.domain)) + [hom.cores()]
        return with_replaced_isos(F, hom.domain, homs, keep_witness=keep_witness)
    from .fusion import close_morphisms
    seeds = [h for Q in F.subgroups() for h in F.isos_from(Q)] + [hom.cores()]
    explicit = close_morphisms(F.support, seeds)
    return FusionSystem(F.support, F.p, explicit=explicit, ambient=F.ambient,
                        witness=F.witness if keep_witness else None,
                        name=f"{F.name}+mutated")


def inner_only_shadow(F: FusionSystem) -> FusionSystem:
    """The inner fusion of S posing as F (witness kept): a corrupted system
    whose group-level data is honest but whose hom-sets forget all fusion."""
    from .fusion import close_morphisms
    explicit = close_morphisms(F.support, [])
    return FusionSystem(F.support, F.p, explicit=explicit, witness=F.witness,
                        ambient=F.ambient, name=f"{F.name}~inner-shadow")
