#include "fusalg/theorems.hpp"

#include <algorithm>
#include <array>

namespace fusalg {

// ---------------------------------------------------------------------------
// Statement tables
// ---------------------------------------------------------------------------

namespace {

struct StatementMeta {
    StatementId id;
    const char* name;
    InstanceShape shape;
    StatementForm form;
};

const std::array<StatementMeta, kStatementCount>& statement_table() {
    static const std::array<StatementMeta, kStatementCount> table = {{
        {StatementId::ex1_torsionfree, "ex1_torsionfree", InstanceShape::module,
         {{}, "torsion_free", "regular_fusible", false}},
        {StatementId::ex1_torsion, "ex1_torsion", InstanceShape::module,
         {{"nonzero_module"}, "torsion_module", "not_regular_fusible", false}},
        {StatementId::ex2_local, "ex2_local", InstanceShape::module,
         {{"ring_local", "ring_not_division"}, "simple_module", "torsion_and_not_regular_fusible", false}},
        {StatementId::ex2_field, "ex2_field", InstanceShape::module,
         {{}, "ring_field", "torsion_free_and_regular_fusible", false}},
        {StatementId::fusible_implies_regular, "fusible_implies_regular", InstanceShape::module,
         {{}, "fusible", "regular_fusible", false}},
        {StatementId::prop1, "prop1", InstanceShape::module,
         {{"torsion_is_submodule"}, "torsion_free", "regular_fusible", true}},
        {StatementId::cor1, "cor1", InstanceShape::module,
         {{"ring_integral_domain"}, "torsion_free", "regular_fusible", true}},
        {StatementId::prop2, "prop2", InstanceShape::module,
         {{"annihilator_comparability", "nonzd_in_center"}, "regular_fusible", "torsion_free", true}},
        {StatementId::prop3, "prop3", InstanceShape::module,
         {{"nonzd_in_center"}, "regular_fusible", "nonsingular", false}},
        {StatementId::cor12_i, "cor12_i", InstanceShape::module,
         {{"ring_right_duo"}, "regular_fusible", "nonsingular", false}},
        {StatementId::cor12_ii, "cor12_ii", InstanceShape::module,
         {{"ring_commutative"}, "regular_fusible", "nonsingular", false}},
        {StatementId::prop4, "prop4", InstanceShape::module,
         {{"ring_integral_domain"}, "nonsingular", "fusible", false}},
        {StatementId::cor11, "cor11", InstanceShape::module,
         {{"ring_integral_domain"}, "always", "four_predicates_agree", false}},
        {StatementId::lem1, "lem1", InstanceShape::localization,
         {{"ring_commutative", "s_regular"}, "always", "torsion_correspondence_all_pairs", false}},
        {StatementId::th2_i, "th2_i", InstanceShape::localization,
         {{"ring_commutative", "s_regular"}, "regular_fusible", "localized_regular_fusible", false}},
        {StatementId::th2_ii, "th2_ii", InstanceShape::localization,
         {{"ring_commutative", "s_in_nonzd", "faithful"}, "localized_regular_fusible", "regular_fusible", false}},
        {StatementId::tlocalization, "tlocalization", InstanceShape::module,
         {{"ring_commutative", "faithful"}, "always", "localization_three_agree", false}},
        {StatementId::treduced, "treduced", InstanceShape::module,
         {{"ring_right_duo"}, "regular_fusible", "reduced", false}},
        {StatementId::thm3_i, "thm3_i", InstanceShape::module,
         {{"ring_right_duo"}, "fusible", "reduced", false}},
        {StatementId::thm3_ii, "thm3_ii", InstanceShape::module,
         {{"ring_commutative"}, "regular_fusible", "reduced", false}},
        {StatementId::th6, "th6", InstanceShape::pair,
         {{}, "product_regular_fusible", "components_regular_fusible", true}},
        {StatementId::cor13, "cor13", InstanceShape::triple,
         {{}, "product_regular_fusible", "components_regular_fusible", true}},
        {StatementId::lem2, "lem2", InstanceShape::bimodule,
         {{"annl_in_annr"}, "always", "zd_characterization_all_match", false}},
        {StatementId::thm5, "thm5", InstanceShape::bimodule,
         {{"annl_in_annr"}, "trivext_left_fusible", "base_left_fusible_and_module_zero", true}},
        {StatementId::trivext_regular, "trivext_regular", InstanceShape::bimodule,
         {{"annl_in_annr", "zdl_in_zdla"}, "trivext_regular_left_fusible",
          "base_regular_left_fusible_and_module_zero", false}},
        {StatementId::trivext_corollary, "trivext_corollary", InstanceShape::bimodule,
         {{"annl_in_annr", "zdl_in_zdla"}, "trivext_regular_left_fusible",
          "base_regular_left_fusible_and_module_zero", true}},
        {StatementId::division, "division", InstanceShape::ring,
         {{"ring_right_duo"}, "all_probe_modules_fusible", "ring_division", true}},
        {StatementId::division_commutative, "division_commutative", InstanceShape::ring,
         {{"ring_commutative"}, "all_probe_modules_fusible", "ring_field", true}},
    }};
    return table;
}

const StatementMeta& meta(StatementId id) { return statement_table()[std::size_t(id)]; }

} // namespace

const char* statement_name(StatementId id) { return meta(id).name; }

std::optional<StatementId> statement_from_name(std::string_view name) {
    for (const auto& m : statement_table())
        if (name == m.name) return m.id;
    return std::nullopt;
}

InstanceShape statement_shape(StatementId id) { return meta(id).shape; }

const StatementForm& statement_form(StatementId id) { return meta(id).form; }

InstanceShape instance_shape(const AnyInstance& instance) {
    return std::visit(
        [](const auto& inst) -> InstanceShape {
            using T = std::decay_t<decltype(inst)>;
            if constexpr (std::is_same_v<T, RingInstance>) return InstanceShape::ring;
            if constexpr (std::is_same_v<T, ModuleInstance>) return InstanceShape::module;
            if constexpr (std::is_same_v<T, PairInstance>) return InstanceShape::pair;
            if constexpr (std::is_same_v<T, TripleInstance>) return InstanceShape::triple;
            if constexpr (std::is_same_v<T, BimoduleInstance>) return InstanceShape::bimodule;
            if constexpr (std::is_same_v<T, LocalizationInstance>) return InstanceShape::localization;
        },
        instance);
}

std::string instance_provenance(const AnyInstance& instance) {
    return std::visit([](const auto& inst) { return inst.provenance; }, instance);
}

const char* verdict_name(Verdict verdict) {
    switch (verdict) {
    case Verdict::holds: return "holds";
    case Verdict::vacuous: return "vacuous";
    case Verdict::violated: return "violated";
    case Verdict::anomaly: return "anomaly";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Cache
// ---------------------------------------------------------------------------

const ModuleClassification& HarnessCache::classification(const ModulePtr& mod) {
    auto it = classifications_.find(mod);
    if (it == classifications_.end()) it = classifications_.emplace(mod, classify(*mod)).first;
    return it->second;
}

const RingPredicates& HarnessCache::predicates(const RingPtr& ring) {
    auto it = predicates_.find(ring);
    if (it == predicates_.end()) it = predicates_.emplace(ring, ring_predicates(*ring)).first;
    return it->second;
}

const ElementRoles& HarnessCache::roles(const RingPtr& ring) {
    auto it = roles_.find(ring);
    if (it == roles_.end()) it = roles_.emplace(ring, element_roles(*ring)).first;
    return it->second;
}

const LocalizedModule& HarnessCache::localization(const LocalizationInstance& instance) {
    auto key = std::make_pair(instance.module, instance.denominators);
    auto it = localizations_.find(key);
    if (it == localizations_.end())
        it = localizations_.emplace(key, localize_module(instance.module, instance.denominators)).first;
    return it->second;
}

const LocalizedModule& HarnessCache::quotient_module_of(const ModulePtr& mod) {
    auto it = quotients_.find(mod);
    if (it == quotients_.end()) it = quotients_.emplace(mod, total_quotient(mod)).first;
    return it->second;
}

// ---------------------------------------------------------------------------
// Independent re-checkers (definitional loops, no shared precomputation)
// ---------------------------------------------------------------------------

namespace independent {

bool is_zd(const FiniteModule& M, int r) {
    for (int m = 1; m < M.order(); ++m)
        if (M.act(m, r) == 0) return true;
    return false;
}

bool is_torsion(const FiniteModule& M, int m) {
    for (int r = 1; r < M.ring().order(); ++r)
        if (M.act(m, r) == 0) return true;
    return false;
}

bool regular_fusible_elem(const FiniteModule& M, int m) {
    for (int r = 0; r < M.ring().order(); ++r) {
        if (is_zd(M, r)) continue;
        int mr = M.act(m, r);
        for (int x = 0; x < M.order(); ++x) {
            if (!is_torsion(M, x)) continue;
            int y = M.sub(mr, x);
            if (!is_torsion(M, y)) return true;
        }
    }
    return false;
}

bool fusible_elem(const FiniteModule& M, int m) {
    for (int x = 0; x < M.order(); ++x) {
        if (!is_torsion(M, x)) continue;
        if (!is_torsion(M, M.sub(m, x))) return true;
    }
    return false;
}

bool module_torsion_free(const FiniteModule& M) {
    for (int m = 1; m < M.order(); ++m)
        if (is_torsion(M, m)) return false;
    return true;
}

bool module_fusible(const FiniteModule& M) {
    for (int m = 1; m < M.order(); ++m)
        if (!fusible_elem(M, m)) return false;
    return true;
}

bool module_regular_fusible(const FiniteModule& M) {
    for (int m = 1; m < M.order(); ++m)
        if (!regular_fusible_elem(M, m)) return false;
    return true;
}

/// Definitional essentiality: quantified over the full right ideal lattice,
/// not the cyclic reduction the production path uses.
bool module_nonsingular(const FiniteModule& M) {
    auto ideals = enumerate_right_ideals(M.ring());
    for (int m = 1; m < M.order(); ++m) {
        SubsetMask ann(M.ring().order());
        for (int r = 0; r < M.ring().order(); ++r)
            if (M.act(m, r) == 0) ann.set(r);
        bool essential = true;
        for (const auto& ideal : ideals) {
            if (!ideal.any_beyond_zero()) continue;
            if (!(ann & ideal).any_beyond_zero()) essential = false;
        }
        if (essential) return false;
    }
    return true;
}

bool module_reduced(const FiniteModule& M) {
    const int n = M.ring().order();
    for (int m = 0; m < M.order(); ++m)
        for (int r = 0; r < n; ++r) {
            if (M.act(m, r) != 0) continue;
            for (int s = 0; s < n; ++s)
                for (int k = 0; k < M.order(); ++k)
                    if (M.act(m, s) == M.act(k, r) && M.act(m, s) != 0) return false;
        }
    return true;
}

} // namespace independent

// ---------------------------------------------------------------------------
// Named predicate evaluation
// ---------------------------------------------------------------------------

namespace {

/// Derived-structure stores shared across the checks of one run. All keys are
/// structure identities (shared-pointer addresses), never instance addresses:
/// instances are copied into variants whose lifetimes end with each check.
struct DerivedStore {
    using TripleKey = std::tuple<ModulePtr, ModulePtr, ModulePtr>;
    std::map<std::pair<ModulePtr, ModulePtr>, ModulePtr> pair_products;
    std::map<TripleKey, std::array<ModulePtr, 2>> triple_products;
    std::map<BimodulePtr, RingPtr> trivexts;
    std::map<BimodulePtr, TrivialExtZdReport> zd_reports;
    std::map<RingPtr, ProbeResult> probes;
};

struct EvalCtx {
    HarnessCache& cache;
    DerivedStore* store;
};

const ModulePtr& pair_product(EvalCtx& ctx, const PairInstance& p) {
    auto key = std::make_pair(p.left, p.right);
    auto it = ctx.store->pair_products.find(key);
    if (it == ctx.store->pair_products.end())
        it = ctx.store->pair_products.emplace(key, build_product_module(p.left, p.right)).first;
    return it->second;
}

const std::array<ModulePtr, 2>& triple_product(EvalCtx& ctx, const TripleInstance& t) {
    DerivedStore::TripleKey key{t.a, t.b, t.c};
    auto it = ctx.store->triple_products.find(key);
    if (it == ctx.store->triple_products.end()) {
        ModulePtr p12 = build_product_module(t.a, t.b);
        ModulePtr p123 = build_product_module(p12, t.c);
        it = ctx.store->triple_products.emplace(key, std::array<ModulePtr, 2>{p12, p123}).first;
    }
    return it->second;
}

const RingPtr& trivext_ring(EvalCtx& ctx, const BimoduleInstance& b) {
    auto it = ctx.store->trivexts.find(b.bimodule);
    if (it == ctx.store->trivexts.end())
        it = ctx.store->trivexts.emplace(b.bimodule, build_trivial_extension(b.bimodule).ring).first;
    return it->second;
}

const TrivialExtZdReport& zd_report(EvalCtx& ctx, const BimoduleInstance& b) {
    auto it = ctx.store->zd_reports.find(b.bimodule);
    if (it == ctx.store->zd_reports.end())
        it = ctx.store->zd_reports.emplace(b.bimodule, trivial_ext_zero_divisor_check(*b.bimodule)).first;
    return it->second;
}

const ProbeResult& probe_for(EvalCtx& ctx, const RingPtr& ring) {
    auto it = ctx.store->probes.find(ring);
    if (it == ctx.store->probes.end()) it = ctx.store->probes.emplace(ring, division_ring_probe(ring)).first;
    return it->second;
}

[[noreturn]] void unknown_predicate(const std::string& name) {
    throw internal_error("unknown statement predicate \"" + name + "\"");
}

/// Evaluates one named predicate on an instance. `witness` (optional) is
/// filled when the predicate is false and a concrete offender exists.
bool eval_pred(const std::string& name, const AnyInstance& instance, EvalCtx& ctx, Witness* witness) {
    auto& cache = ctx.cache;
    if (name == "always") return true;

    if (const auto* inst = std::get_if<ModuleInstance>(&instance)) {
        const ModulePtr& M = inst->module;
        const RingPtr& R = M->ring_ptr();
        auto first_failing = [&](const SubsetMask& mask, const std::string& what) {
            if (witness && mask.any_beyond_zero()) *witness = {what, {mask.next(0)}};
        };
        if (name == "nonzero_module") return M->order() >= 2;
        if (name == "ring_local") return cache.predicates(R).local;
        if (name == "ring_not_division") return !cache.predicates(R).division;
        if (name == "ring_field") return cache.predicates(R).field;
        if (name == "ring_commutative") return cache.predicates(R).commutative;
        if (name == "ring_right_duo") return cache.predicates(R).right_duo;
        if (name == "ring_integral_domain") {
            const auto& p = cache.predicates(R);
            return p.commutative && p.domain;
        }
        if (name == "simple_module")
            return M->order() >= 2 && enumerate_submodules(*M).size() == 2;
        const auto& c = cache.classification(M);
        if (name == "torsion_free") {
            if (!c.predicates.torsion_free) first_failing(c.partition.torsion, "nonzero torsion element");
            return c.predicates.torsion_free;
        }
        if (name == "torsion_module") return c.predicates.torsion_module;
        if (name == "fusible") {
            if (!c.fusible && witness) {
                auto v = is_fusible_module(*M);
                for (int m = 1; m < M->order(); ++m)
                    if (!v.witnesses[m]) {
                        *witness = {"element without fusible decomposition", {m}};
                        break;
                    }
            }
            return c.fusible;
        }
        if (name == "regular_fusible") {
            if (!c.regular_fusible) first_failing(c.failing_elements, "element without regular fusible witness");
            return c.regular_fusible;
        }
        if (name == "not_regular_fusible") return !c.regular_fusible;
        if (name == "nonsingular") {
            if (!c.predicates.nonsingular) first_failing(c.singular, "nonzero element of Z(M)");
            return c.predicates.nonsingular;
        }
        if (name == "reduced") {
            if (!c.predicates.reduced && witness) {
                for (int m = 0; m < M->order(); ++m)
                    for (int r = 0; r < R->order(); ++r) {
                        if (M->act(m, r) != 0) continue;
                        for (int s = 0; s < R->order(); ++s)
                            for (int k = 0; k < M->order(); ++k)
                                if (M->act(m, s) == M->act(k, r) && M->act(m, s) != 0) {
                                    *witness = {"mR n Mr nonzero despite mr = 0", {m, r}};
                                    return false;
                                }
                    }
            }
            return c.predicates.reduced;
        }
        if (name == "faithful") return c.predicates.faithful;
        if (name == "torsion_is_submodule") return c.predicates.torsion_set_is_submodule;
        if (name == "annihilator_comparability") return c.predicates.annihilator_comparability;
        if (name == "nonzd_in_center") return c.zd.complement().is_subset_of(cache.roles(R).center);
        if (name == "torsion_and_not_regular_fusible") return c.predicates.torsion_module && !c.regular_fusible;
        if (name == "torsion_free_and_regular_fusible") return c.predicates.torsion_free && c.regular_fusible;
        if (name == "four_predicates_agree") {
            bool f = c.fusible, rf = c.regular_fusible, ns = c.predicates.nonsingular,
                 tf = c.predicates.torsion_free;
            return f == rf && rf == ns && ns == tf;
        }
        if (name == "localization_three_agree") {
            // Inapplicable without a total quotient module; counts as false
            // when probed outside the statement's side conditions.
            if (!is_commutative(*R) || !c.predicates.faithful) return false;
            const auto& q = cache.quotient_module_of(M);
            bool rf = c.regular_fusible;
            bool qf = is_fusible_module(*q.module).fusible;
            bool qrf = is_regular_fusible_module(*q.module).regular_fusible;
            return rf == qf && qf == qrf;
        }
        unknown_predicate(name);
    }

    if (const auto* inst = std::get_if<PairInstance>(&instance)) {
        if (name == "product_regular_fusible")
            return cache.classification(pair_product(ctx, *inst)).regular_fusible;
        if (name == "components_regular_fusible")
            return cache.classification(inst->left).regular_fusible &&
                   cache.classification(inst->right).regular_fusible;
        unknown_predicate(name);
    }

    if (const auto* inst = std::get_if<TripleInstance>(&instance)) {
        const auto& prods = triple_product(ctx, *inst);
        if (name == "product_regular_fusible") return cache.classification(prods[1]).regular_fusible;
        if (name == "components_regular_fusible")
            return cache.classification(inst->a).regular_fusible && cache.classification(inst->b).regular_fusible &&
                   cache.classification(inst->c).regular_fusible;
        if (name == "iterated_pairing_consistent") {
            bool rf_ab = cache.classification(prods[0]).regular_fusible;
            bool rf_abc = cache.classification(prods[1]).regular_fusible;
            bool a = cache.classification(inst->a).regular_fusible;
            bool b = cache.classification(inst->b).regular_fusible;
            bool c = cache.classification(inst->c).regular_fusible;
            return rf_ab == (a && b) && rf_abc == (rf_ab && c);
        }
        unknown_predicate(name);
    }

    if (const auto* inst = std::get_if<BimoduleInstance>(&instance)) {
        const FiniteBimodule& B = *inst->bimodule;
        auto ann = bimodule_annihilators(B);
        if (name == "annl_in_annr") return ann.ann_l.is_subset_of(ann.ann_r);
        if (name == "zdl_in_zdla")
            return ann.zd_l.is_subset_of(cache.roles(inst->bimodule->ring_ptr()).left_zero_divisors);
        if (name == "zd_characterization_all_match") {
            const auto& report = zd_report(ctx, *inst);
            if (!report.all_match && witness && !report.mismatches.empty())
                *witness = {"zero-divisor characterization mismatch at (a,m)",
                            {report.mismatches.front().a, report.mismatches.front().m}};
            return report.all_match;
        }
        if (name == "trivext_left_fusible") return cache.predicates(trivext_ring(ctx, *inst)).left_fusible;
        if (name == "trivext_regular_left_fusible")
            return cache.predicates(trivext_ring(ctx, *inst)).regular_left_fusible;
        if (name == "base_left_fusible_and_module_zero")
            return cache.predicates(inst->bimodule->ring_ptr()).left_fusible && B.order() == 1;
        if (name == "base_regular_left_fusible_and_module_zero")
            return cache.predicates(inst->bimodule->ring_ptr()).regular_left_fusible && B.order() == 1;
        unknown_predicate(name);
    }

    if (const auto* inst = std::get_if<LocalizationInstance>(&instance)) {
        const ModulePtr& M = inst->module;
        const RingPtr& R = M->ring_ptr();
        if (name == "ring_commutative") return cache.predicates(R).commutative;
        if (name == "s_regular") return inst->denominators.is_subset_of(cache.roles(R).regular);
        if (name == "s_in_nonzd")
            return inst->denominators.is_subset_of(cache.classification(M).zd.complement());
        if (name == "faithful") return cache.classification(M).predicates.faithful;
        if (name == "regular_fusible") return cache.classification(M).regular_fusible;
        if (name == "localized_regular_fusible")
            return cache.classification(cache.localization(*inst).module).regular_fusible;
        if (name == "torsion_correspondence_all_pairs") {
            const auto& loc = cache.localization(*inst);
            auto base_part = torsion_partition(*M);
            auto loc_part = torsion_partition(*loc.module);
            for (int m = 0; m < M->order(); ++m)
                for (int s : loc.ring.denom_list) {
                    bool base_torsion = base_part.torsion.test(m);
                    bool loc_torsion = loc_part.torsion.test(loc.class_of(m, s));
                    if (base_torsion != loc_torsion) {
                        if (witness) *witness = {"torsion correspondence fails at (m, s)", {m, s}};
                        return false;
                    }
                }
            return true;
        }
        unknown_predicate(name);
    }

    if (const auto* inst = std::get_if<RingInstance>(&instance)) {
        const RingPtr& R = inst->ring;
        if (name == "ring_right_duo") return cache.predicates(R).right_duo;
        if (name == "ring_commutative") return cache.predicates(R).commutative;
        if (name == "ring_division") return cache.predicates(R).division;
        if (name == "ring_field") return cache.predicates(R).field;
        if (name == "all_probe_modules_fusible") {
            const auto& probe = probe_for(ctx, R);
            if (probe.non_fusible_module && witness) *witness = {"non-fusible module: " + *probe.non_fusible_module, {}};
            return !probe.non_fusible_module.has_value();
        }
        unknown_predicate(name);
    }
    unknown_predicate(name);
}

/// Independent confirmation of a named predicate where a genuinely separate
/// code path exists; falls back to a fresh cached evaluation otherwise.
bool eval_pred_independent(const std::string& name, const AnyInstance& instance) {
    if (const auto* inst = std::get_if<ModuleInstance>(&instance)) {
        const FiniteModule& M = *inst->module;
        if (name == "torsion_free") return independent::module_torsion_free(M);
        if (name == "fusible") return independent::module_fusible(M);
        if (name == "regular_fusible") return independent::module_regular_fusible(M);
        if (name == "not_regular_fusible") return !independent::module_regular_fusible(M);
        if (name == "nonsingular") return independent::module_nonsingular(M);
        if (name == "reduced") return independent::module_reduced(M);
        if (name == "torsion_and_not_regular_fusible") {
            bool all_torsion = true;
            for (int m = 1; m < M.order(); ++m)
                if (!independent::is_torsion(M, m)) all_torsion = false;
            return all_torsion && !independent::module_regular_fusible(M);
        }
        if (name == "torsion_free_and_regular_fusible")
            return independent::module_torsion_free(M) && independent::module_regular_fusible(M);
        if (name == "four_predicates_agree") {
            bool f = independent::module_fusible(M), rf = independent::module_regular_fusible(M),
                 ns = independent::module_nonsingular(M), tf = independent::module_torsion_free(M);
            return f == rf && rf == ns && ns == tf;
        }
    }
    HarnessCache fresh;
    DerivedStore store;
    EvalCtx ctx{fresh, &store};
    return eval_pred(name, instance, ctx, nullptr);
}

} // namespace

// ---------------------------------------------------------------------------
// check_statement
// ---------------------------------------------------------------------------

namespace {

CheckOutcome check_statement_impl(StatementId id, const AnyInstance& instance, EvalCtx& ctx) {
    const auto& m = meta(id);
    if (instance_shape(instance) != m.shape)
        throw input_error(std::string("check_statement: statement ") + m.name +
                          " expects a different instance shape");
    CheckOutcome out;
    out.statement = id;
    out.instance = instance_provenance(instance);
    auto start = std::chrono::steady_clock::now();
    auto finish = [&](CheckOutcome& o) -> CheckOutcome& {
        o.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start);
        return o;
    };

    // The division statements delegate to the probe (their reverse direction
    // is contrapositive search, not plain predicate evaluation).
    if (id == StatementId::division || id == StatementId::division_commutative) {
        const auto& inst = std::get<RingInstance>(instance);
        bool side = eval_pred(m.form.sides[0], instance, ctx, nullptr);
        if (!side) {
            out.verdict = Verdict::vacuous;
            return finish(out);
        }
        const auto& probe = probe_for(ctx, inst.ring);
        out.verdict = probe.outcome.verdict;
        out.witness = probe.outcome.witness;
        out.note = probe.outcome.note;
        return finish(out);
    }

    for (const auto& side : m.form.sides)
        if (!eval_pred(side, instance, ctx, nullptr)) {
            out.verdict = Verdict::vacuous;
            out.note = "hypothesis unmet: " + side;
            return finish(out);
        }

    if (m.form.biconditional) {
        Witness w;
        bool a = eval_pred(m.form.antecedent, instance, ctx, nullptr);
        bool c = eval_pred(m.form.consequent, instance, ctx, &w);
        bool consistent = a == c;
        if (consistent && id == StatementId::cor13)
            consistent = eval_pred("iterated_pairing_consistent", instance, ctx, nullptr);
        if (consistent) {
            out.verdict = Verdict::holds;
        } else {
            out.verdict = Verdict::violated;
            out.witness = Witness{std::string(m.form.antecedent) + " = " + (a ? "true" : "false") + " but " +
                                      m.form.consequent + " = " + (c ? "true" : "false"),
                                  w.elements};
        }
        return finish(out);
    }

    if (!eval_pred(m.form.antecedent, instance, ctx, nullptr)) {
        out.verdict = Verdict::vacuous;
        out.note = "hypothesis unmet: " + m.form.antecedent;
        return finish(out);
    }
    Witness w;
    if (eval_pred(m.form.consequent, instance, ctx, &w)) {
        out.verdict = Verdict::holds;
    } else {
        out.verdict = Verdict::violated;
        if (w.description.empty()) w.description = "conclusion " + m.form.consequent + " fails";
        out.witness = w;
    }
    return finish(out);
}

/// A violated outcome must survive an independent re-check of its conclusion;
/// anything else is an implementation bug, not a theorem failure.
void reverify_violation(StatementId id, const AnyInstance& instance, const CheckOutcome& outcome) {
    if (outcome.verdict != Verdict::violated) return;
    const auto& m = meta(id);
    if (id == StatementId::division || id == StatementId::division_commutative) return; // probe output
    if (m.form.biconditional) {
        bool a = eval_pred_independent(m.form.antecedent, instance);
        bool c = eval_pred_independent(m.form.consequent, instance);
        if (a == c)
            throw internal_error(std::string("violation witness for ") + m.name + " on " + outcome.instance +
                                 " failed independent re-verification");
        return;
    }
    if (eval_pred_independent(m.form.consequent, instance))
        throw internal_error(std::string("violation witness for ") + m.name + " on " + outcome.instance +
                             " failed independent re-verification");
}

} // namespace

CheckOutcome check_statement(StatementId id, const AnyInstance& instance, HarnessCache& cache) {
    DerivedStore store;
    EvalCtx ctx{cache, &store};
    CheckOutcome out = check_statement_impl(id, instance, ctx);
    reverify_violation(id, instance, out);
    return out;
}

CheckOutcome check_statement(StatementId id, const AnyInstance& instance) {
    HarnessCache cache;
    return check_statement(id, instance, cache);
}

// ---------------------------------------------------------------------------
// Division probe
// ---------------------------------------------------------------------------

ProbeResult division_ring_probe(const RingPtr& ring) {
    ProbeResult out;
    auto rp = ring_predicates(*ring);
    out.ring_is_division = rp.division;
    out.outcome.statement = StatementId::division;
    out.outcome.instance = ring->label();
    if (!rp.right_duo) {
        out.outcome.verdict = Verdict::vacuous;
        out.outcome.note = "ring is not right duo";
        return out;
    }
    const int n = ring->order();
    auto reg = build_regular_module(ring);
    std::vector<std::pair<std::string, ModulePtr>> candidates;
    for (int a = 1; a < n; ++a) {
        auto ann = annihilator(*reg, a);
        if (ann.any_beyond_zero())
            candidates.push_back({ring->label() + "/ann(" + ring->element_name(a) + ")",
                                  build_quotient_module(ring, ann)});
    }
    for (int a = 1; a < n; ++a) {
        int a2 = ring->mul(a, a);
        int gens[1] = {a2};
        auto j = right_ideal_closure(*ring, gens);
        if (j.count() == n) continue;       // R/J would be the zero module
        if (!j.any_beyond_zero()) continue; // J = 0: R itself, probed below
        candidates.push_back({ring->label() + "/(" + ring->element_name(a) + "^2)R",
                              build_quotient_module(ring, j)});
    }
    candidates.push_back({ring->label() + " (regular)", reg});

    for (const auto& [label, mod] : candidates) {
        out.modules_checked.push_back(label);
        if (!is_fusible_module(*mod).fusible && !out.non_fusible_module) out.non_fusible_module = label;
    }
    if (out.ring_is_division) {
        if (out.non_fusible_module) {
            out.outcome.verdict = Verdict::violated;
            out.outcome.witness = Witness{"non-fusible module over a division ring: " + *out.non_fusible_module, {}};
        } else {
            out.outcome.verdict = Verdict::holds;
            out.outcome.note = "division ring; all probe modules fusible";
        }
    } else {
        if (out.non_fusible_module) {
            out.outcome.verdict = Verdict::holds;
            out.outcome.note = "non-fusible module: " + *out.non_fusible_module;
        } else {
            out.outcome.verdict = Verdict::anomaly;
            out.outcome.note = "no non-fusible module in the proof-guided set";
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Corpus generation
// ---------------------------------------------------------------------------

namespace {

bool family_on(const CorpusBudget& b, const char* name) {
    if (b.families.empty()) return true;
    return std::find(b.families.begin(), b.families.end(), name) != b.families.end();
}

Json cyclic_spec(int n) { return Json{{"kind", "cyclic"}, {"n", n}}; }

Json product_spec(const Json& left, const Json& right) {
    return Json{{"kind", "product"}, {"left", left}, {"right", right}};
}

Json pattern_spec(int p, int k, const std::vector<std::vector<int>>& pattern) {
    Json rows = Json::array();
    for (const auto& r : pattern) {
        Json row = Json::array();
        for (int v : r) row.push_back(v);
        rows.push_back(std::move(row));
    }
    return Json{{"kind", "pattern_matrix"}, {"p", p}, {"k", k}, {"pattern", rows}};
}

Json regular_module_spec(const Json& ring) { return Json{{"kind", "regular_module"}, {"ring", ring}}; }

Json quotient_module_spec(const Json& ring, const SubsetMask& ideal) {
    return Json{{"kind", "cyclic_quotient_module"}, {"ring", ring}, {"ideal", mask_to_json(ideal)}};
}

Json submodule_spec(const Json& module, const SubsetMask& elements) {
    return Json{{"kind", "submodule"}, {"module", module}, {"elements", mask_to_json(elements)}};
}

Json localization_module_spec(const Json& module, const SubsetMask& denoms) {
    return Json{{"kind", "localization"}, {"module", module}, {"denominators", mask_to_json(denoms)}};
}

struct RingEntry {
    RingPtr ring;
    Json spec;
    std::string provenance;
};

void require_valid(const RingPtr& ring, const std::string& provenance) {
    if (!verify_ring_axioms(*ring).ok)
        throw internal_error("corpus: ring instance failed axiom verification: " + provenance);
}

void require_valid(const ModulePtr& mod, const std::string& provenance) {
    if (!verify_module_axioms(*mod).ok)
        throw internal_error("corpus: module instance failed axiom verification: " + provenance);
}

} // namespace

Corpus generate_corpus(const CorpusBudget& budget) {
    Corpus corpus;
    corpus.budget = budget;
    const int ring_cap = std::min(budget.max_ring_order, kMaxRingOrder);
    const int module_cap = std::min(budget.max_module_order, kMaxRingOrder);

    // --- shared ring registry -------------------------------------------
    std::map<int, RingEntry> cyclic; // n -> entry
    auto cyclic_entry = [&](int n) -> const RingEntry& {
        auto it = cyclic.find(n);
        if (it == cyclic.end())
            it = cyclic.emplace(n, RingEntry{build_cyclic_ring(n), cyclic_spec(n), "ring/cyclic/Z" + std::to_string(n)})
                     .first;
        return it->second;
    };

    std::vector<RingEntry> rings; // in corpus order

    if (family_on(budget, "cyclic"))
        for (int n = 2; n <= std::min(budget.max_cyclic_order, ring_cap); ++n) rings.push_back(cyclic_entry(n));

    std::vector<RingEntry> pattern_rings;
    if (family_on(budget, "pattern")) {
        struct Pat {
            int p, k;
            std::vector<std::vector<int>> pattern;
        };
        const std::vector<Pat> pats = {
            {2, 2, {{1, 0}, {1, 1}}},            // lower triangular over Z2, order 8
            {2, 2, {{1, 1}, {1, 1}}},            // full M2(Z2), order 16
            {3, 2, {{1, 0}, {1, 1}}},            // lower triangular over Z3, order 27
            {2, 3, {{1, 0, 0}, {0, 1, 0}, {1, 1, 1}}}, // order 32
        };
        for (const auto& pat : pats) {
            auto ring = build_pattern_matrix_ring(pat.p, pat.k, pat.pattern);
            if (ring->order() > ring_cap) continue;
            pattern_rings.push_back({ring, pattern_spec(pat.p, pat.k, pat.pattern), "ring/pattern/" + ring->label()});
        }
        for (const auto& e : pattern_rings) rings.push_back(e);
    }

    if (family_on(budget, "quotients"))
        for (int n = 4; n <= std::min({budget.max_cyclic_order, ring_cap, 12}); ++n) {
            const auto& base = cyclic_entry(n);
            for (int d = 2; d < n; ++d) {
                if (n % d != 0) continue;
                SubsetMask ideal(n);
                for (int x = 0; x < n; x += d) ideal.set(x);
                Json spec{{"kind", "quotient"}, {"ring", base.spec}, {"ideal", mask_to_json(ideal)}};
                rings.push_back({build_quotient_ring(base.ring, ideal).ring, spec,
                                 "ring/quotient/Z" + std::to_string(n) + "/" + ideal.to_string()});
            }
        }

    std::vector<std::pair<int, int>> product_orders;
    std::map<std::pair<int, int>, RingEntry> products;
    if (family_on(budget, "products"))
        for (int a = 2; a * a <= std::min(budget.max_product_order, ring_cap); ++a)
            for (int b = a; a * b <= std::min(budget.max_product_order, ring_cap); ++b) {
                const auto& ra = cyclic_entry(a);
                const auto& rb = cyclic_entry(b);
                RingEntry e{build_product_ring(ra.ring, rb.ring), product_spec(ra.spec, rb.spec),
                            "ring/product/Z" + std::to_string(a) + "xZ" + std::to_string(b)};
                product_orders.push_back({a, b});
                products.emplace(std::make_pair(a, b), e);
                rings.push_back(e);
            }

    // --- bimodules (also feed the trivial extension rings) ----------------
    std::vector<BimoduleInstance> bimodules;
    if (family_on(budget, "bimodules")) {
        auto add_bim = [&](BimodulePtr bim, const std::string& provenance) {
            if (long(bim->ring().order()) * bim->order() > std::min(budget.max_trivext_order, ring_cap)) return;
            if (!verify_bimodule_axioms(*bim).ok)
                throw internal_error("corpus: bimodule instance failed axiom verification: " + provenance);
            bimodules.push_back({bim, provenance, bimodule_to_spec(*bim)});
        };
        auto regular_bim = [&](int n, const char* tag) {
            add_bim(build_regular_bimodule(cyclic_entry(n).ring), std::string("bimodule/") + tag);
        };
        regular_bim(2, "Z2-regular");
        add_bim(build_zero_bimodule(cyclic_entry(2).ring), "bimodule/Z2-zero");
        {
            // Z2 as a Z4-bimodule through reduction mod 2 on both sides.
            std::vector<int> hom = {0, 1, 0, 1};
            add_bim(build_hom_bimodule(cyclic_entry(4).ring, cyclic_entry(2).ring, hom, hom, "Z2 via mod2"),
                    "bimodule/Z4-Z2-mod2");
        }
        regular_bim(3, "Z3-regular");
        regular_bim(4, "Z4-regular");
        add_bim(build_zero_bimodule(cyclic_entry(6).ring), "bimodule/Z6-zero");
        regular_bim(6, "Z6-regular");
        {
            std::vector<int> hom = {0, 1, 2, 0, 1, 2};
            add_bim(build_hom_bimodule(cyclic_entry(6).ring, cyclic_entry(3).ring, hom, hom, "Z3 via mod3"),
                    "bimodule/Z6-Z3-mod3");
        }
        regular_bim(8, "Z8-regular");
        if (!pattern_rings.empty()) {
            const auto& t = pattern_rings.front(); // lower triangular 2x2 over Z2
            add_bim(build_regular_bimodule(t.ring), "bimodule/T2-regular");
            // Z2 as a T-bimodule: left through the (0,0) entry, right through
            // the (1,1) entry. ann_l(M) is not contained in ann_r(M) here.
            std::vector<int> lhom(t.ring->order()), rhom(t.ring->order());
            for (int i = 0; i < t.ring->order(); ++i) {
                lhom[i] = i & 1;        // cell (0,0)
                rhom[i] = (i >> 2) & 1; // cell (1,1)
            }
            add_bim(build_hom_bimodule(t.ring, cyclic_entry(2).ring, lhom, rhom, "Z2 via corners"),
                    "bimodule/T2-Z2-corners");
        }
        if (auto it = products.find({2, 2}); it != products.end()) {
            std::vector<int> hom(4);
            for (int i = 0; i < 4; ++i) hom[i] = i >> 1; // first projection
            add_bim(build_hom_bimodule(it->second.ring, cyclic_entry(2).ring, hom, hom, "Z2 via proj1"),
                    "bimodule/Z2xZ2-Z2-proj1");
        }
    }
    corpus.bimodules = bimodules;

    if (family_on(budget, "trivial_extensions"))
        for (const auto& b : bimodules) {
            auto ext = build_trivial_extension(b.bimodule);
            if (ext.ring->order() > std::min(budget.max_trivext_order, ring_cap)) continue;
            Json spec{{"kind", "trivial_extension"}, {"bimodule", b.spec}};
            rings.push_back({ext.ring, spec, "ring/trivext/" + b.provenance});
        }

    for (const auto& e : rings) {
        require_valid(e.ring, e.provenance);
        corpus.rings.push_back({e.ring, e.provenance, e.spec});
    }

    // --- modules ----------------------------------------------------------
    std::map<int, ModulePtr> cyclic_regular;
    auto cyclic_regular_module = [&](int n) {
        auto it = cyclic_regular.find(n);
        if (it == cyclic_regular.end()) it = cyclic_regular.emplace(n, build_regular_module(cyclic_entry(n).ring)).first;
        return it->second;
    };
    auto add_module = [&](ModulePtr mod, const std::string& provenance, Json spec) {
        if (mod->ring().order() > ring_cap || mod->order() > module_cap) return false;
        require_valid(mod, provenance);
        corpus.modules.push_back({std::move(mod), provenance, std::move(spec)});
        return true;
    };

    // Worked examples first; this order is load bearing for the documented
    // counterexample searches (the 2x2 ring precedes the 3x3 ring).
    if (family_on(budget, "fixtures")) {
        if (6 <= ring_cap) add_module(cyclic_regular_module(6), "fixture/Z6-regular", regular_module_spec(cyclic_spec(6)));
        if (8 <= ring_cap) {
            SubsetMask n48(8, {0, 4});
            add_module(build_submodule_as_module(cyclic_regular_module(8), n48), "fixture/4Z8",
                       submodule_spec(regular_module_spec(cyclic_spec(8)), n48));
        }
        for (const auto& e : pattern_rings) {
            std::string tag = e.ring->order() == 8 ? "fixture/pmat2-regular"
                              : e.ring->order() == 32 ? "fixture/pmat3-regular"
                                                      : "";
            if (!tag.empty()) add_module(build_regular_module(e.ring), tag, regular_module_spec(e.spec));
        }
        if (auto it = products.find({4, 18}); it != products.end()) {
            const auto& e = it->second;
            auto reg = build_regular_module(e.ring);
            Json reg_spec = regular_module_spec(e.spec);
            add_module(reg, "fixture/Z4xZ18-regular", reg_spec);
            auto sub = [&](std::initializer_list<int> elems, const char* tag) {
                SubsetMask mask(72);
                for (int x : elems) mask.set(x);
                add_module(build_submodule_as_module(reg, mask), std::string("fixture/Z4xZ18-") + tag,
                           submodule_spec(reg_spec, mask));
            };
            sub({0, 9}, "sub-0x{0,9}");
            sub({0, 3, 6, 9, 12, 15}, "sub-0x3Z18");
            sub({0, 9, 36, 45}, "sub-{0,2}x{0,9}");
        }
    }

    const int derived_cap = std::min(budget.derived_max_ring, ring_cap);
    if (family_on(budget, "modules")) {
        for (int n = 2; n <= std::min(budget.max_cyclic_order, ring_cap); ++n) {
            add_module(cyclic_regular_module(n), "module/cyclic/Z" + std::to_string(n) + "/regular",
                       regular_module_spec(cyclic_spec(n)));
            if (n > derived_cap) continue;
            auto ideals = enumerate_right_ideals(*cyclic_entry(n).ring);
            for (const auto& ideal : ideals)
                add_module(build_quotient_module(cyclic_entry(n).ring, ideal),
                           "module/cyclic/Z" + std::to_string(n) + "/quotient/" + ideal.to_string(),
                           quotient_module_spec(cyclic_spec(n), ideal));
            auto subs = enumerate_submodules(*cyclic_regular_module(n));
            for (const auto& sub : subs)
                add_module(build_submodule_as_module(cyclic_regular_module(n), sub),
                           "module/cyclic/Z" + std::to_string(n) + "/submodule/" + sub.to_string(),
                           submodule_spec(regular_module_spec(cyclic_spec(n)), sub));
        }
        for (const auto& e : pattern_rings) {
            add_module(build_regular_module(e.ring), "module/pattern/" + e.ring->label() + "/regular",
                       regular_module_spec(e.spec));
            if (e.ring->order() > derived_cap) continue;
            for (const auto& ideal : enumerate_right_ideals(*e.ring))
                add_module(build_quotient_module(e.ring, ideal),
                           "module/pattern/" + e.ring->label() + "/quotient/" + ideal.to_string(),
                           quotient_module_spec(e.spec, ideal));
        }
        for (auto [a, b] : product_orders) {
            const auto& e = products.at({a, b});
            add_module(build_regular_module(e.ring), "module/product/" + e.ring->label() + "/regular",
                       regular_module_spec(e.spec));
            if (e.ring->order() > 12) continue;
            for (const auto& ideal : enumerate_right_ideals(*e.ring))
                add_module(build_quotient_module(e.ring, ideal),
                           "module/product/" + e.ring->label() + "/quotient/" + ideal.to_string(),
                           quotient_module_spec(e.spec, ideal));
        }
        for (const auto& r : corpus.rings) {
            if (r.provenance.rfind("ring/trivext/", 0) != 0) continue;
            add_module(build_regular_module(r.ring), "module/" + r.provenance.substr(5) + "/regular",
                       regular_module_spec(r.spec));
            if (r.ring->order() > 16) continue;
            for (const auto& ideal : enumerate_right_ideals(*r.ring))
                add_module(build_quotient_module(r.ring, ideal),
                           "module/" + r.provenance.substr(5) + "/quotient/" + ideal.to_string(),
                           quotient_module_spec(r.spec, ideal));
        }
    }

    // --- pairs and triples -------------------------------------------------
    if (family_on(budget, "pairs")) {
        for (auto [a, b] : product_orders) {
            if (long(a) * b > module_cap) continue;
            corpus.pairs.push_back({cyclic_regular_module(a), cyclic_regular_module(b),
                                    "pair/Z" + std::to_string(a) + ",Z" + std::to_string(b),
                                    regular_module_spec(cyclic_spec(a)), regular_module_spec(cyclic_spec(b))});
        }
        if (4 <= ring_cap && 6 <= ring_cap) {
            SubsetMask i42(4, {0, 2});
            auto z4q = build_quotient_module(cyclic_entry(4).ring, i42);
            Json z4q_spec = quotient_module_spec(cyclic_spec(4), i42);
            corpus.pairs.push_back({cyclic_regular_module(6), z4q, "pair/Z6,Z4/{0,2}",
                                    regular_module_spec(cyclic_spec(6)), z4q_spec});
            corpus.pairs.push_back({z4q, cyclic_regular_module(3), "pair/Z4/{0,2},Z3", z4q_spec,
                                    regular_module_spec(cyclic_spec(3))});
        }
        if (8 <= ring_cap) {
            SubsetMask n48(8, {0, 4});
            corpus.pairs.push_back({cyclic_regular_module(2),
                                    build_submodule_as_module(cyclic_regular_module(8), n48), "pair/Z2,4Z8",
                                    regular_module_spec(cyclic_spec(2)),
                                    submodule_spec(regular_module_spec(cyclic_spec(8)), n48)});
        }
    }

    if (family_on(budget, "triples")) {
        const std::vector<std::array<int, 3>> triples = {{2, 3, 5}, {2, 2, 2}, {4, 2, 3}, {6, 2, 2}, {2, 4, 2}};
        for (auto [a, b, c] : triples) {
            if (long(a) * b * c > std::min(module_cap, ring_cap)) continue;
            corpus.triples.push_back({cyclic_regular_module(a), cyclic_regular_module(b), cyclic_regular_module(c),
                                      "triple/Z" + std::to_string(a) + ",Z" + std::to_string(b) + ",Z" +
                                          std::to_string(c),
                                      regular_module_spec(cyclic_spec(a)), regular_module_spec(cyclic_spec(b)),
                                      regular_module_spec(cyclic_spec(c))});
        }
    }

    // --- localizations ------------------------------------------------------
    if (family_on(budget, "localizations")) {
        auto add_loc = [&](ModulePtr base, Json base_spec, std::initializer_list<int> denoms,
                           const std::string& provenance) {
            if (base->ring().order() > ring_cap || base->order() > module_cap) return;
            require_valid(base, provenance);
            SubsetMask s(base->ring().order());
            for (int d : denoms) s.set(d);
            corpus.localizations.push_back({base, s, provenance + "/S=" + s.to_string(), base_spec});
            // The localized module doubles as a standalone corpus module.
            if (family_on(budget, "modules")) {
                auto loc = localize_module(base, s);
                add_module(loc.module, "module/localized/" + provenance + "/S=" + s.to_string(),
                           localization_module_spec(base_spec, s));
            }
        };
        if (6 <= ring_cap) {
            auto z6 = cyclic_regular_module(6);
            Json z6_spec = regular_module_spec(cyclic_spec(6));
            add_loc(z6, z6_spec, {1}, "localization/Z6");
            add_loc(z6, z6_spec, {1, 5}, "localization/Z6");
            add_loc(z6, z6_spec, {1, 2, 4}, "localization/Z6");
            add_loc(z6, z6_spec, {1, 3}, "localization/Z6");
            SubsetMask i63(6, {0, 3});
            add_loc(build_quotient_module(cyclic_entry(6).ring, i63), quotient_module_spec(cyclic_spec(6), i63),
                    {1, 5}, "localization/Z6mod{0,3}");
        }
        if (12 <= ring_cap) {
            auto z12 = cyclic_regular_module(12);
            Json z12_spec = regular_module_spec(cyclic_spec(12));
            add_loc(z12, z12_spec, {1}, "localization/Z12");
            add_loc(z12, z12_spec, {1, 5, 7, 11}, "localization/Z12");
            add_loc(z12, z12_spec, {1, 4}, "localization/Z12");
            add_loc(z12, z12_spec, {1, 3, 9}, "localization/Z12");
            add_loc(z12, z12_spec, {1, 2, 4, 8}, "localization/Z12");
            add_loc(z12, z12_spec, {1, 9}, "localization/Z12");
        }
    }

    return corpus;
}

// ---------------------------------------------------------------------------
// Corpus manifests
// ---------------------------------------------------------------------------

namespace {

Json budget_to_json(const CorpusBudget& b) {
    Json fams = Json::array();
    for (const auto& f : b.families) fams.push_back(f);
    return Json{{"max_ring_order", b.max_ring_order},
                {"max_cyclic_order", b.max_cyclic_order},
                {"max_product_order", b.max_product_order},
                {"max_trivext_order", b.max_trivext_order},
                {"max_module_order", b.max_module_order},
                {"derived_max_ring", b.derived_max_ring},
                {"families", fams}};
}

CorpusBudget budget_from_json(const Json& j) {
    CorpusBudget b;
    b.max_ring_order = j.at("max_ring_order").get<int>();
    b.max_cyclic_order = j.at("max_cyclic_order").get<int>();
    b.max_product_order = j.at("max_product_order").get<int>();
    b.max_trivext_order = j.at("max_trivext_order").get<int>();
    b.max_module_order = j.at("max_module_order").get<int>();
    b.derived_max_ring = j.at("derived_max_ring").get<int>();
    for (const auto& f : j.at("families")) b.families.push_back(f.get<std::string>());
    return b;
}

} // namespace

Json corpus_manifest(const Corpus& corpus) {
    Json out;
    out["tool"] = kToolVersion;
    out["budget"] = budget_to_json(corpus.budget);
    auto dump = [](const auto& list, auto&& entry) {
        Json arr = Json::array();
        for (const auto& e : list) arr.push_back(entry(e));
        return arr;
    };
    out["rings"] = dump(corpus.rings, [](const RingInstance& e) {
        return Json{{"provenance", e.provenance}, {"spec", e.spec}};
    });
    out["modules"] = dump(corpus.modules, [](const ModuleInstance& e) {
        return Json{{"provenance", e.provenance}, {"spec", e.spec}};
    });
    out["pairs"] = dump(corpus.pairs, [](const PairInstance& e) {
        return Json{{"provenance", e.provenance}, {"left", e.left_spec}, {"right", e.right_spec}};
    });
    out["triples"] = dump(corpus.triples, [](const TripleInstance& e) {
        return Json{{"provenance", e.provenance}, {"a", e.a_spec}, {"b", e.b_spec}, {"c", e.c_spec}};
    });
    out["bimodules"] = dump(corpus.bimodules, [](const BimoduleInstance& e) {
        return Json{{"provenance", e.provenance}, {"spec", e.spec}};
    });
    out["localizations"] = dump(corpus.localizations, [](const LocalizationInstance& e) {
        return Json{{"provenance", e.provenance},
                    {"module", e.module_spec},
                    {"denominators", mask_to_json(e.denominators)}};
    });
    return out;
}

Corpus corpus_from_manifest(const Json& manifest) {
    Corpus corpus;
    corpus.budget = budget_from_json(manifest.at("budget"));
    for (const auto& e : manifest.at("rings"))
        corpus.rings.push_back(
            {build_ring_from_spec(e.at("spec")), e.at("provenance").get<std::string>(), e.at("spec")});
    for (const auto& e : manifest.at("modules"))
        corpus.modules.push_back(
            {build_module_from_spec(e.at("spec")), e.at("provenance").get<std::string>(), e.at("spec")});
    for (const auto& e : manifest.at("pairs"))
        corpus.pairs.push_back({build_module_from_spec(e.at("left")), build_module_from_spec(e.at("right")),
                                e.at("provenance").get<std::string>(), e.at("left"), e.at("right")});
    for (const auto& e : manifest.at("triples"))
        corpus.triples.push_back({build_module_from_spec(e.at("a")), build_module_from_spec(e.at("b")),
                                  build_module_from_spec(e.at("c")), e.at("provenance").get<std::string>(),
                                  e.at("a"), e.at("b"), e.at("c")});
    for (const auto& e : manifest.at("bimodules"))
        corpus.bimodules.push_back(
            {build_bimodule_from_spec(e.at("spec")), e.at("provenance").get<std::string>(), e.at("spec")});
    for (const auto& e : manifest.at("localizations")) {
        auto mod = build_module_from_spec(e.at("module"));
        SubsetMask s(mod->ring().order());
        for (const auto& d : e.at("denominators")) s.set(d.get<int>());
        corpus.localizations.push_back({mod, s, e.at("provenance").get<std::string>(), e.at("module")});
    }
    return corpus;
}

// ---------------------------------------------------------------------------
// Suite runner
// ---------------------------------------------------------------------------

TheoremReport run_suite(const Corpus& corpus, const std::vector<StatementId>& statements) {
    TheoremReport report;
    HarnessCache cache;
    DerivedStore store;
    EvalCtx ctx{cache, &store};
    auto start = std::chrono::steady_clock::now();

    std::vector<StatementId> ordered = statements;
    std::sort(ordered.begin(), ordered.end(), [](StatementId a, StatementId b) { return int(a) < int(b); });
    ordered.erase(std::unique(ordered.begin(), ordered.end()), ordered.end());

    for (StatementId id : ordered) {
        StatementTally tally;
        tally.id = id;
        auto run_one = [&](const AnyInstance& instance) {
            CheckOutcome outcome = check_statement_impl(id, instance, ctx);
            reverify_violation(id, instance, outcome);
            ++report.total_checks;
            switch (outcome.verdict) {
            case Verdict::holds: ++tally.holds; break;
            case Verdict::vacuous: ++tally.vacuous; break;
            case Verdict::violated:
                ++tally.violated;
                report.violations.push_back(outcome);
                break;
            case Verdict::anomaly:
                ++tally.anomalies;
                report.anomalies.push_back(outcome);
                break;
            }
        };
        switch (statement_shape(id)) {
        case InstanceShape::ring:
            for (const auto& e : corpus.rings) run_one(e);
            break;
        case InstanceShape::module:
            for (const auto& e : corpus.modules) run_one(e);
            break;
        case InstanceShape::pair:
            for (const auto& e : corpus.pairs) run_one(e);
            break;
        case InstanceShape::triple:
            for (const auto& e : corpus.triples) run_one(e);
            break;
        case InstanceShape::bimodule:
            for (const auto& e : corpus.bimodules) run_one(e);
            break;
        case InstanceShape::localization:
            for (const auto& e : corpus.localizations) run_one(e);
            break;
        }
        report.tallies.push_back(tally);
    }
    report.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start);
    return report;
}

TheoremReport run_suite(const Corpus& corpus) {
    std::vector<StatementId> all;
    for (int i = 0; i < kStatementCount; ++i) all.push_back(StatementId(i));
    return run_suite(corpus, all);
}

Json theorem_report_to_json(const TheoremReport& report, bool with_timing) {
    Json out;
    Json stats = Json::array();
    for (const auto& t : report.tallies)
        stats.push_back(Json{{"name", statement_name(t.id)},
                             {"holds", t.holds},
                             {"vacuous", t.vacuous},
                             {"violated", t.violated},
                             {"anomalies", t.anomalies}});
    out["statements"] = std::move(stats);
    auto outcomes = [](const std::vector<CheckOutcome>& list) {
        Json arr = Json::array();
        for (const auto& o : list) {
            Json e{{"statement", statement_name(o.statement)},
                   {"instance", o.instance},
                   {"verdict", verdict_name(o.verdict)}};
            if (o.witness) {
                Json elems = Json::array();
                for (int x : o.witness->elements) elems.push_back(x);
                e["witness"] = Json{{"description", o.witness->description}, {"elements", elems}};
            }
            if (!o.note.empty()) e["note"] = o.note;
            arr.push_back(std::move(e));
        }
        return arr;
    };
    out["violations"] = outcomes(report.violations);
    out["anomalies"] = outcomes(report.anomalies);
    out["total"] = Json{{"checks", report.total_checks},
                        {"violations", Json::number_integer_t(report.violations.size())},
                        {"anomalies", Json::number_integer_t(report.anomalies.size())}};
    if (with_timing) out["elapsed_us"] = report.elapsed.count();
    return out;
}

// ---------------------------------------------------------------------------
// Counterexample search
// ---------------------------------------------------------------------------

SearchResult search_counterexample(StatementId id, const std::string& dropped_hypothesis, const Corpus& corpus) {
    const auto& m = meta(id);
    std::vector<std::string> known = m.form.sides;
    known.push_back(m.form.antecedent);
    known.push_back(m.form.consequent);
    if (dropped_hypothesis != "none" &&
        std::find(known.begin(), known.end(), dropped_hypothesis) == known.end())
        throw input_error("search_counterexample: \"" + dropped_hypothesis + "\" is not a hypothesis of " +
                          m.name);

    // Converse search per the source's own counterexample program: the
    // original consequent becomes the hypothesis (side conditions are not
    // imposed), the original antecedent becomes the conclusion.
    std::vector<std::string> hypotheses;
    if (m.form.consequent != dropped_hypothesis) hypotheses.push_back(m.form.consequent);

    HarnessCache cache;
    DerivedStore store;
    EvalCtx ctx{cache, &store};

    auto try_instance = [&](const AnyInstance& instance) -> bool {
        for (const auto& h : hypotheses)
            if (!eval_pred(h, instance, ctx, nullptr)) return false;
        return !eval_pred(m.form.antecedent, instance, ctx, nullptr);
    };

    auto found_at = [&](const AnyInstance& instance) -> SearchResult {
        SearchResult r;
        r.found = true;
        r.instance = instance_provenance(instance);
        std::string held;
        for (const auto& h : hypotheses) held += (held.empty() ? "" : ", ") + h;
        r.explanation = (held.empty() ? std::string("no hypotheses") : held + " holds") + " but " +
                        m.form.antecedent + " fails";
        // Re-check through independent predicate evaluations.
        r.recheck_passed = true;
        for (const auto& h : hypotheses)
            if (!eval_pred_independent(h, instance)) r.recheck_passed = false;
        if (eval_pred_independent(m.form.antecedent, instance)) r.recheck_passed = false;
        if (!r.recheck_passed)
            throw internal_error("search_counterexample: result " + r.instance +
                                 " failed independent re-verification");
        return r;
    };

    switch (m.shape) {
    case InstanceShape::ring:
        for (const auto& e : corpus.rings)
            if (try_instance(e)) return found_at(e);
        break;
    case InstanceShape::module:
        for (const auto& e : corpus.modules)
            if (try_instance(e)) return found_at(e);
        break;
    case InstanceShape::pair:
        for (const auto& e : corpus.pairs)
            if (try_instance(e)) return found_at(e);
        break;
    case InstanceShape::triple:
        for (const auto& e : corpus.triples)
            if (try_instance(e)) return found_at(e);
        break;
    case InstanceShape::bimodule:
        for (const auto& e : corpus.bimodules)
            if (try_instance(e)) return found_at(e);
        break;
    case InstanceShape::localization:
        for (const auto& e : corpus.localizations)
            if (try_instance(e)) return found_at(e);
        break;
    }
    return {};
}

} // namespace fusalg
