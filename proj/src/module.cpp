#include "fusalg/module.hpp"

#include <algorithm>
#include <unordered_set>

namespace fusalg {

FiniteModule::FiniteModule(RingPtr ring, int order, std::vector<std::uint16_t> add,
                           std::vector<std::uint16_t> action, std::string label,
                           std::vector<std::string> element_names)
    : ring_(std::move(ring)), order_(order), add_(std::move(add)), action_(std::move(action)),
      label_(std::move(label)) {
    if (!ring_) throw input_error("FiniteModule: null ring");
    if (order < 1) throw input_error("FiniteModule: order must be >= 1");
    if (order > kMaxRingOrder) throw budget_error("FiniteModule: order exceeds the constructible cap");
    if (add_.size() != std::size_t(order) * order) throw input_error("FiniteModule: add table size mismatch");
    if (action_.size() != std::size_t(order) * ring_->order())
        throw input_error("FiniteModule: action table size mismatch");
    for (auto v : add_)
        if (v >= order) throw input_error("FiniteModule: add entry is not an element index");
    for (auto v : action_)
        if (v >= order) throw input_error("FiniteModule: action entry is not an element index");
    neg_.assign(order, -1);
    for (int m = 0; m < order; ++m)
        for (int n = 0; n < order; ++n)
            if (this->add(m, n) == 0) neg_[m] = n;
    for (int m = 0; m < order; ++m)
        if (neg_[m] < 0) throw input_error("FiniteModule: element " + std::to_string(m) + " has no additive inverse");
    if (element_names.empty()) {
        names_.reserve(order);
        for (int m = 0; m < order; ++m) names_.push_back(std::to_string(m));
    } else {
        if (int(element_names.size()) != order) throw input_error("FiniteModule: element name count mismatch");
        names_ = std::move(element_names);
        structured_names_ = true;
    }
}

AxiomReport verify_module_axioms(const FiniteRing& ring, int order,
                                 const std::vector<std::uint16_t>& add,
                                 const std::vector<std::uint16_t>& action) {
    AxiomReport report;
    auto fail = [&](std::string axiom, int a, int b = -1, int c = -1) {
        report.ok = false;
        report.failures.push_back({std::move(axiom), {a, b, c}});
    };
    const int n = ring.order();
    bool shaped = order >= 1 && add.size() == std::size_t(order) * order &&
                  action.size() == std::size_t(order) * n;
    for (std::size_t i = 0; shaped && i < add.size(); ++i)
        if (add[i] >= order) shaped = false;
    for (std::size_t i = 0; shaped && i < action.size(); ++i)
        if (action[i] >= order) shaped = false;
    if (!shaped) {
        fail("table_shape", -1);
        return report;
    }
    auto padd = [&](int a, int b) { return int(add[std::size_t(a) * order + b]); };
    auto pact = [&](int m, int r) { return int(action[std::size_t(m) * n + r]); };

    for (int m = 0; m < order; ++m)
        if (padd(m, 0) != m || padd(0, m) != m) {
            fail("add_identity", m);
            break;
        }
    for (int m = 0; m < order; ++m) {
        bool inv = false;
        for (int k = 0; k < order; ++k)
            if (padd(m, k) == 0) inv = true;
        if (!inv) {
            fail("add_inverse", m);
            break;
        }
    }
    [&] {
        for (int a = 0; a < order; ++a)
            for (int b = 0; b < order; ++b)
                if (padd(a, b) != padd(b, a)) return fail("add_commutativity", a, b);
    }();
    [&] {
        for (int a = 0; a < order; ++a)
            for (int b = 0; b < order; ++b)
                for (int c = 0; c < order; ++c)
                    if (padd(padd(a, b), c) != padd(a, padd(b, c))) return fail("add_associativity", a, b, c);
    }();
    [&] {
        for (int m = 0; m < order; ++m)
            for (int k = 0; k < order; ++k)
                for (int r = 0; r < n; ++r)
                    if (pact(padd(m, k), r) != padd(pact(m, r), pact(k, r)))
                        return fail("additivity_in_module", m, k, r);
    }();
    [&] {
        for (int m = 0; m < order; ++m)
            for (int r = 0; r < n; ++r)
                for (int s = 0; s < n; ++s)
                    if (pact(m, ring.add(r, s)) != padd(pact(m, r), pact(m, s)))
                        return fail("additivity_in_ring", m, r, s);
    }();
    [&] {
        for (int m = 0; m < order; ++m)
            for (int r = 0; r < n; ++r)
                for (int s = 0; s < n; ++s)
                    if (pact(m, ring.mul(r, s)) != pact(pact(m, r), s))
                        return fail("action_associativity", m, r, s);
    }();
    for (int m = 0; m < order; ++m)
        if (pact(m, ring.one()) != m) {
            fail("unital_action", m);
            break;
        }
    return report;
}

AxiomReport verify_module_axioms(const FiniteModule& mod) {
    return verify_module_axioms(mod.ring(), mod.order(), mod.add_table(), mod.action_table());
}

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

ModulePtr build_regular_module(const RingPtr& ring) {
    const int n = ring->order();
    std::vector<std::uint16_t> action = ring->mul_table();
    std::vector<std::string> names;
    if (ring->has_structured_names()) {
        names.reserve(n);
        for (int a = 0; a < n; ++a) names.push_back(ring->element_name(a));
    }
    return std::make_shared<FiniteModule>(ring, n, ring->add_table(), std::move(action), ring->label(),
                                          std::move(names));
}

ModulePtr build_quotient_module(const RingPtr& ring, const SubsetMask& ideal) {
    const FiniteRing& R = *ring;
    if (ideal.carrier_size() != R.order()) throw input_error("build_quotient_module: ideal carrier mismatch");
    if (!is_right_ideal(R, ideal)) throw input_error("build_quotient_module: the given set is not a right ideal");
    const int n = R.order();
    std::vector<int> rep(n);
    for (int a = 0; a < n; ++a) {
        int least = a;
        for (int i = ideal.first(); i >= 0; i = ideal.next(i)) least = std::min(least, R.add(a, i));
        rep[a] = least;
    }
    std::vector<int> reps, index_of(n, -1);
    for (int a = 0; a < n; ++a)
        if (rep[a] == a) {
            index_of[a] = int(reps.size());
            reps.push_back(a);
        }
    const int q = int(reps.size());
    std::vector<std::uint16_t> add(std::size_t(q) * q), action(std::size_t(q) * n);
    std::vector<std::string> names(q);
    for (int i = 0; i < q; ++i) {
        names[i] = R.element_name(reps[i]) + "+I";
        for (int j = 0; j < q; ++j)
            add[std::size_t(i) * q + j] = std::uint16_t(index_of[rep[R.add(reps[i], reps[j])]]);
        for (int r = 0; r < n; ++r)
            action[std::size_t(i) * n + r] = std::uint16_t(index_of[rep[R.mul(reps[i], r)]]);
    }
    return std::make_shared<FiniteModule>(ring, q, std::move(add), std::move(action),
                                          R.label() + "/" + ideal.to_string(), std::move(names));
}

ModulePtr build_submodule_as_module(const ModulePtr& mod, const SubsetMask& submodule) {
    const FiniteModule& M = *mod;
    if (submodule.carrier_size() != M.order())
        throw input_error("build_submodule_as_module: carrier mismatch");
    if (!is_submodule(M, submodule)) throw input_error("build_submodule_as_module: the given set is not a submodule");
    std::vector<int> elems = submodule.to_indices(); // increasing original index order
    const int q = int(elems.size());
    std::vector<int> index_of(M.order(), -1);
    for (int i = 0; i < q; ++i) index_of[elems[i]] = i;
    const int n = M.ring().order();
    std::vector<std::uint16_t> add(std::size_t(q) * q), action(std::size_t(q) * n);
    std::vector<std::string> names(q);
    for (int i = 0; i < q; ++i) {
        names[i] = M.element_name(elems[i]);
        for (int j = 0; j < q; ++j) add[std::size_t(i) * q + j] = std::uint16_t(index_of[M.add(elems[i], elems[j])]);
        for (int r = 0; r < n; ++r) action[std::size_t(i) * n + r] = std::uint16_t(index_of[M.act(elems[i], r)]);
    }
    return std::make_shared<FiniteModule>(mod->ring_ptr(), q, std::move(add), std::move(action),
                                          "sub(" + M.label() + ";" + submodule.to_string() + ")", std::move(names));
}

ModulePtr build_product_module(const ModulePtr& m1, const ModulePtr& m2, const RingPtr& product_ring) {
    const FiniteModule &A = *m1, &B = *m2;
    const int n1 = A.ring().order(), n2 = B.ring().order();
    if (product_ring->order() != n1 * n2) throw input_error("build_product_module: ring order mismatch");
    const int q1 = A.order(), q2 = B.order();
    const long q = long(q1) * q2;
    if (q > kMaxRingOrder) throw budget_error("build_product_module: order exceeds the constructible cap");
    const int n = n1 * n2;
    std::vector<std::uint16_t> add(std::size_t(q) * q), action(std::size_t(q) * n);
    std::vector<std::string> names(q);
    for (int a1 = 0; a1 < q1; ++a1)
        for (int a2 = 0; a2 < q2; ++a2) {
            int a = a1 * q2 + a2;
            names[a] = "(" + A.element_name(a1) + "," + B.element_name(a2) + ")";
            for (int b1 = 0; b1 < q1; ++b1)
                for (int b2 = 0; b2 < q2; ++b2)
                    add[std::size_t(a) * q + (b1 * q2 + b2)] = std::uint16_t(A.add(a1, b1) * q2 + B.add(a2, b2));
            for (int r1 = 0; r1 < n1; ++r1)
                for (int r2 = 0; r2 < n2; ++r2)
                    action[std::size_t(a) * n + (r1 * n2 + r2)] = std::uint16_t(A.act(a1, r1) * q2 + B.act(a2, r2));
        }
    return std::make_shared<FiniteModule>(product_ring, int(q), std::move(add), std::move(action),
                                          A.label() + "x" + B.label(), std::move(names));
}

ModulePtr build_product_module(const ModulePtr& m1, const ModulePtr& m2) {
    return build_product_module(m1, m2, build_product_ring(m1->ring_ptr(), m2->ring_ptr()));
}

ModulePtr build_table_module(const RingPtr& ring, int order, const std::vector<std::vector<int>>& add,
                             const std::vector<std::vector<int>>& action, std::string label) {
    if (order < 1) throw input_error("build_table_module: order must be >= 1");
    const int n = ring->order();
    std::vector<std::uint16_t> fadd(std::size_t(order) * order), faction(std::size_t(order) * n);
    if (int(add.size()) != order || int(action.size()) != order)
        throw input_error("build_table_module: table row count mismatch");
    for (int i = 0; i < order; ++i) {
        if (int(add[i].size()) != order || int(action[i].size()) != n)
            throw input_error("build_table_module: table row length mismatch");
        for (int j = 0; j < order; ++j) {
            if (add[i][j] < 0 || add[i][j] >= order) throw input_error("build_table_module: add entry out of range");
            fadd[std::size_t(i) * order + j] = std::uint16_t(add[i][j]);
        }
        for (int r = 0; r < n; ++r) {
            if (action[i][r] < 0 || action[i][r] >= order)
                throw input_error("build_table_module: action entry out of range");
            faction[std::size_t(i) * n + r] = std::uint16_t(action[i][r]);
        }
    }
    auto report = verify_module_axioms(*ring, order, fadd, faction);
    if (!report.ok) throw input_error("build_table_module: " + render_axiom_failures(report));
    return std::make_shared<FiniteModule>(ring, order, std::move(fadd), std::move(faction), std::move(label));
}

ModulePtr build_zero_module(const RingPtr& ring) {
    std::vector<std::uint16_t> add(1, 0), action(ring->order(), 0);
    return std::make_shared<FiniteModule>(ring, 1, std::move(add), std::move(action), "0");
}

// ---------------------------------------------------------------------------
// Annihilators and friends
// ---------------------------------------------------------------------------

SubsetMask annihilator(const FiniteModule& mod, int m) {
    if (m < 0 || m >= mod.order()) throw input_error("annihilator: module index out of range");
    const int n = mod.ring().order();
    SubsetMask ann(n);
    for (int r = 0; r < n; ++r)
        if (mod.act(m, r) == 0) ann.set(r);
    return ann;
}

SubsetMask annihilator_of_set(const FiniteModule& mod, const SubsetMask& subset) {
    if (subset.carrier_size() != mod.order()) throw input_error("annihilator_of_set: carrier mismatch");
    SubsetMask ann = SubsetMask::full(mod.ring().order());
    for (int m = subset.first(); m >= 0; m = subset.next(m)) ann &= annihilator(mod, m);
    return ann;
}

bool is_faithful(const FiniteModule& mod) {
    return annihilator_of_set(mod, SubsetMask::full(mod.order())) == SubsetMask::single(mod.ring().order(), 0);
}

TorsionPartition torsion_partition(const FiniteModule& mod) {
    TorsionPartition part{SubsetMask(mod.order()), SubsetMask(mod.order())};
    for (int m = 0; m < mod.order(); ++m) {
        if (annihilator(mod, m).any_beyond_zero())
            part.torsion.set(m);
        else
            part.torsion_free.set(m);
    }
    return part;
}

SubsetMask module_zero_divisors(const FiniteModule& mod) {
    const int n = mod.ring().order();
    SubsetMask zd(n);
    for (int r = 0; r < n; ++r)
        for (int m = 1; m < mod.order(); ++m)
            if (mod.act(m, r) == 0) {
                zd.set(r);
                break;
            }
    return zd;
}

SubsetMask singular_set(const FiniteModule& mod, Sidedness side) {
    const auto cyclic = cyclic_ideals(mod.ring(), side);
    SubsetMask z(mod.order());
    for (int m = 0; m < mod.order(); ++m)
        if (is_essential_ideal(mod.ring(), annihilator(mod, m), side, cyclic)) z.set(m);
    return z;
}

SubsetMask singular_submodule(const FiniteModule& mod) {
    SubsetMask z = singular_set(mod, Sidedness::right);
    if (!is_submodule(mod, z))
        throw internal_error("singular_submodule: Z(M) failed the submodule closure check on " + mod.label());
    return z;
}

// ---------------------------------------------------------------------------
// Submodules
// ---------------------------------------------------------------------------

bool is_submodule(const FiniteModule& mod, const SubsetMask& set) {
    if (set.carrier_size() != mod.order() || !set.test(0)) return false;
    for (int a = set.first(); a >= 0; a = set.next(a)) {
        for (int b = set.first(); b >= 0; b = set.next(b))
            if (!set.test(mod.add(a, b))) return false;
        for (int r = 0; r < mod.ring().order(); ++r)
            if (!set.test(mod.act(a, r))) return false;
    }
    return true;
}

namespace {

SubsetMask submodule_closure_seeded(const FiniteModule& mod, std::span<const int> generators,
                                    const SubsetMask* seed) {
    SubsetMask mask(mod.order());
    std::vector<int> members;
    auto push = [&](int x) {
        if (!mask.test(x)) {
            mask.set(x);
            members.push_back(x);
        }
    };
    push(0);
    if (seed)
        for (int x = seed->first(); x >= 0; x = seed->next(x)) push(x);
    for (int g : generators) {
        if (g < 0 || g >= mod.order()) throw input_error("submodule_closure: generator index out of range");
        push(g);
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
        int x = members[i];
        for (std::size_t j = 0; j <= i; ++j) push(mod.add(x, members[j]));
        for (int r = 0; r < mod.ring().order(); ++r) push(mod.act(x, r));
    }
    return mask;
}

} // namespace

SubsetMask submodule_closure(const FiniteModule& mod, std::span<const int> generators) {
    return submodule_closure_seeded(mod, generators, nullptr);
}

std::vector<SubsetMask> enumerate_submodules(const FiniteModule& mod, const IdealBudget& budget) {
    if (mod.order() > budget.max_ring_order)
        throw budget_error("enumerate_submodules: module order " + std::to_string(mod.order()) +
                           " exceeds the enumeration cap " + std::to_string(budget.max_ring_order));
    std::unordered_set<SubsetMask, SubsetMaskHash> seen;
    std::vector<SubsetMask> out;
    SubsetMask zero(mod.order());
    zero.set(0);
    seen.insert(zero);
    out.push_back(zero);
    for (std::size_t i = 0; i < out.size(); ++i) {
        SubsetMask current = out[i];
        for (int a = 0; a < mod.order(); ++a) {
            if (current.test(a)) continue;
            int gens[1] = {a};
            SubsetMask grown = submodule_closure_seeded(mod, gens, &current);
            if (seen.insert(grown).second) {
                out.push_back(std::move(grown));
                if (long(out.size()) > budget.max_ideals)
                    throw budget_error("enumerate_submodules: more than " + std::to_string(budget.max_ideals) +
                                       " submodules (cap exceeded)");
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const SubsetMask& a, const SubsetMask& b) {
        if (a.count() != b.count()) return a.count() < b.count();
        return a < b;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Predicates
// ---------------------------------------------------------------------------

ModulePredicates module_predicates(const FiniteModule& mod) {
    ModulePredicates p;
    const int q = mod.order(), n = mod.ring().order();
    p.faithful = is_faithful(mod);
    auto part = torsion_partition(mod);
    p.torsion_free = part.torsion == SubsetMask::single(q, 0);
    p.torsion_module = part.torsion == SubsetMask::full(q);
    SubsetMask z = singular_submodule(mod);
    p.nonsingular = z == SubsetMask::single(q, 0);
    p.singular = z == SubsetMask::full(q);
    p.torsion_set_is_submodule = is_submodule(mod, part.torsion);

    // Reduced: mr = 0 implies mR n Mr = 0.
    std::vector<SubsetMask> mR(q, SubsetMask(q)), Mr(n, SubsetMask(q));
    for (int m = 0; m < q; ++m)
        for (int r = 0; r < n; ++r) {
            mR[m].set(mod.act(m, r));
            Mr[r].set(mod.act(m, r));
        }
    p.reduced = true;
    for (int m = 0; m < q && p.reduced; ++m)
        for (int r = 0; r < n; ++r)
            if (mod.act(m, r) == 0 && (mR[m] & Mr[r]).any_beyond_zero()) {
                p.reduced = false;
                break;
            }

    p.annihilator_comparability = true;
    std::vector<SubsetMask> ann;
    ann.reserve(q);
    for (int m = 0; m < q; ++m) ann.push_back(annihilator(mod, m));
    for (int a = 0; a < q && p.annihilator_comparability; ++a)
        for (int b = a + 1; b < q; ++b)
            if (!ann[a].is_subset_of(ann[b]) && !ann[b].is_subset_of(ann[a])) {
                p.annihilator_comparability = false;
                break;
            }
    return p;
}

ModuleAnalysis analyze_module(const FiniteModule& mod) {
    ModuleAnalysis a{{}, SubsetMask(mod.order()), SubsetMask(mod.order()), SubsetMask(mod.ring().order()),
                     SubsetMask(mod.ring().order())};
    a.ann.reserve(mod.order());
    for (int m = 0; m < mod.order(); ++m) {
        a.ann.push_back(annihilator(mod, m));
        if (a.ann.back().any_beyond_zero())
            a.torsion.set(m);
        else
            a.torsion_free.set(m);
    }
    for (int r = 0; r < mod.ring().order(); ++r)
        for (int m = 1; m < mod.order(); ++m)
            if (mod.act(m, r) == 0) {
                a.zd.set(r);
                break;
            }
    a.non_zd = a.zd.complement();
    return a;
}

} // namespace fusalg
