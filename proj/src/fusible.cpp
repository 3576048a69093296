#include "fusalg/fusible.hpp"

namespace fusalg {

std::optional<std::pair<int, int>> fusible_witness(const FiniteModule& mod, const ModuleAnalysis& a, int m) {
    if (m <= 0 || m >= mod.order())
        throw input_error("fusible_witness: fusibility is defined for nonzero elements");
    for (int x = a.torsion.first(); x >= 0; x = a.torsion.next(x)) {
        int y = mod.sub(m, x);
        if (a.torsion_free.test(y)) return std::make_pair(x, y);
    }
    return std::nullopt;
}

std::optional<std::pair<int, int>> fusible_witness(const FiniteModule& mod, int m) {
    return fusible_witness(mod, analyze_module(mod), m);
}

std::optional<FusibleWitness> regular_fusible_witness(const FiniteModule& mod, const ModuleAnalysis& a, int m) {
    if (m <= 0 || m >= mod.order())
        throw input_error("regular_fusible_witness: defined for nonzero elements");
    // Torsion-free elements are already fusible: m*1 = 0 + m.
    if (a.torsion_free.test(m)) return FusibleWitness{mod.ring().one(), 0, m};
    auto try_multiplier = [&](int r) -> std::optional<FusibleWitness> {
        int mr = mod.act(m, r);
        // r outside Zd(M) cannot kill the nonzero m.
        if (mr == 0) throw internal_error("regular_fusible_witness: non-zero-divisor annihilated a nonzero element");
        for (int x = a.torsion.first(); x >= 0; x = a.torsion.next(x)) {
            int y = mod.sub(mr, x);
            if (a.torsion_free.test(y)) return FusibleWitness{r, x, y};
        }
        return std::nullopt;
    };
    const int one = mod.ring().one();
    if (a.non_zd.test(one))
        if (auto w = try_multiplier(one)) return w;
    for (int r = a.non_zd.first(); r >= 0; r = a.non_zd.next(r)) {
        if (r == one) continue;
        if (auto w = try_multiplier(r)) return w;
    }
    return std::nullopt;
}

std::optional<FusibleWitness> regular_fusible_witness(const FiniteModule& mod, int m) {
    return regular_fusible_witness(mod, analyze_module(mod), m);
}

bool verify_fusible_witness(const FiniteModule& mod, int m, const FusibleWitness& w) {
    const int n = mod.ring().order();
    if (m <= 0 || m >= mod.order()) return false;
    if (w.multiplier < 0 || w.multiplier >= n) return false;
    if (w.torsion_part < 0 || w.torsion_part >= mod.order()) return false;
    if (w.free_part < 0 || w.free_part >= mod.order()) return false;
    // multiplier not in Zd(M): no nonzero element is killed by it.
    for (int k = 1; k < mod.order(); ++k)
        if (mod.act(k, w.multiplier) == 0) return false;
    // torsion_part in T(M): some nonzero ring element kills it.
    bool torsion = false;
    for (int r = 1; r < n; ++r)
        if (mod.act(w.torsion_part, r) == 0) torsion = true;
    if (!torsion) return false;
    // free_part in T*(M): only zero kills it.
    for (int r = 1; r < n; ++r)
        if (mod.act(w.free_part, r) == 0) return false;
    return mod.act(m, w.multiplier) == mod.add(w.torsion_part, w.free_part);
}

FusibleVerdict is_fusible_module(const FiniteModule& mod) {
    auto a = analyze_module(mod);
    FusibleVerdict v;
    v.fusible = true;
    v.witnesses.assign(mod.order(), std::nullopt);
    for (int m = 1; m < mod.order(); ++m) {
        v.witnesses[m] = fusible_witness(mod, a, m);
        if (!v.witnesses[m]) v.fusible = false;
    }
    return v;
}

RegularFusibleVerdict is_regular_fusible_module(const FiniteModule& mod) {
    auto a = analyze_module(mod);
    RegularFusibleVerdict v;
    v.regular_fusible = true;
    v.witnesses.assign(mod.order(), std::nullopt);
    v.failing_elements = SubsetMask(mod.order());
    for (int m = 1; m < mod.order(); ++m) {
        v.witnesses[m] = regular_fusible_witness(mod, a, m);
        if (!v.witnesses[m]) {
            v.regular_fusible = false;
            v.failing_elements.set(m);
        }
    }
    return v;
}

bool is_regular_fusible_submodule(const FiniteModule& mod, const SubsetMask& submodule) {
    if (!is_submodule(mod, submodule))
        throw input_error("is_regular_fusible_submodule: the given set is not a submodule");
    auto a = analyze_module(mod);
    for (int m = submodule.first(); m >= 0; m = submodule.next(m)) {
        if (m == 0) continue;
        if (!regular_fusible_witness(mod, a, m)) return false;
    }
    return true;
}

ModuleClassification classify(const FiniteModule& mod) {
    ModuleClassification c;
    c.predicates = module_predicates(mod);
    auto a = analyze_module(mod);
    c.partition.torsion = a.torsion;
    c.partition.torsion_free = a.torsion_free;
    c.zd = a.zd;
    c.singular = singular_submodule(mod);

    c.fusible = true;
    c.witnesses.assign(mod.order(), std::nullopt);
    c.failing_elements = SubsetMask(mod.order());
    for (int m = 1; m < mod.order(); ++m) {
        if (!fusible_witness(mod, a, m)) c.fusible = false;
        c.witnesses[m] = regular_fusible_witness(mod, a, m);
        if (c.witnesses[m]) {
            if (!verify_fusible_witness(mod, m, *c.witnesses[m]))
                throw internal_error("classify: witness for element " + std::to_string(m) + " of " + mod.label() +
                                     " failed independent re-verification");
        } else {
            c.failing_elements.set(m);
        }
    }
    c.regular_fusible = c.failing_elements.none();

    // torsion_free => fusible and fusible => regular_fusible hold over any
    // ring; the nonsingular link needs commutativity.
    if (c.predicates.torsion_free && !c.fusible)
        throw internal_error("classify: torsion-free module " + mod.label() + " came out non-fusible");
    if (c.fusible && !c.regular_fusible)
        throw internal_error("classify: fusible module " + mod.label() + " came out not regular fusible");
    if (is_commutative(mod.ring()) && c.regular_fusible && !c.predicates.nonsingular) {
        int offender = c.singular.any_beyond_zero() ? c.singular.next(0) : -1;
        throw internal_error("classify: regular fusible module " + mod.label() +
                             " over a commutative ring is singular at element " + std::to_string(offender));
    }
    return c;
}

} // namespace fusalg
