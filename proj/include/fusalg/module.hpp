#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fusalg/ring.hpp"

namespace fusalg {

/// A finite right module over a FiniteRing, given by a module addition table
/// and an action table M x R -> M. Index 0 is the module zero. The zero
/// module (order 1) is allowed. Immutable after construction.
class FiniteModule {
public:
    FiniteModule(RingPtr ring, int order, std::vector<std::uint16_t> add,
                 std::vector<std::uint16_t> action, std::string label,
                 std::vector<std::string> element_names = {});

    const FiniteRing& ring() const { return *ring_; }
    const RingPtr& ring_ptr() const { return ring_; }
    int order() const { return order_; }
    int zero() const { return 0; }
    const std::string& label() const { return label_; }

    int add(int m, int n) const { return add_[std::size_t(m) * order_ + n]; }
    int act(int m, int r) const { return action_[std::size_t(m) * ring_->order() + r]; }
    int neg(int m) const { return neg_[m]; }
    int sub(int m, int n) const { return add(m, neg_[n]); }

    const std::string& element_name(int m) const { return names_[m]; }
    bool has_structured_names() const { return structured_names_; }

    const std::vector<std::uint16_t>& add_table() const { return add_; }
    const std::vector<std::uint16_t>& action_table() const { return action_; }

private:
    RingPtr ring_;
    int order_;
    std::vector<std::uint16_t> add_;
    std::vector<std::uint16_t> action_;
    std::vector<int> neg_;
    std::string label_;
    std::vector<std::string> names_;
    bool structured_names_ = false;
};

using ModulePtr = std::shared_ptr<const FiniteModule>;

/// Exhaustive right-module axiom check with first-failure witnesses.
/// Axioms: abelian add with identity 0; (m+n)r = mr+nr; m(r+s) = mr+ms;
/// m(rs) = (mr)s; m*1 = m.
AxiomReport verify_module_axioms(const FiniteRing& ring, int order,
                                 const std::vector<std::uint16_t>& add,
                                 const std::vector<std::uint16_t>& action);
AxiomReport verify_module_axioms(const FiniteModule& mod);

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

/// The ring as a right module over itself.
ModulePtr build_regular_module(const RingPtr& ring);

/// R/I for a right ideal I, with the induced action; canonical representative
/// is the least element index of each coset.
ModulePtr build_quotient_module(const RingPtr& ring, const SubsetMask& ideal);

/// A submodule N of M as a standalone module; carrier re-indexed in increasing
/// original index order.
ModulePtr build_submodule_as_module(const ModulePtr& mod, const SubsetMask& submodule);

/// Componentwise module over build_product_ring(R1,R2); pair (m1,m2) has
/// index m1*|M2| + m2.
ModulePtr build_product_module(const ModulePtr& m1, const ModulePtr& m2);
ModulePtr build_product_module(const ModulePtr& m1, const ModulePtr& m2, const RingPtr& product_ring);

/// From raw tables, validating every axiom.
ModulePtr build_table_module(const RingPtr& ring, int order, const std::vector<std::vector<int>>& add,
                             const std::vector<std::vector<int>>& action, std::string label = "table");

/// The zero module over a ring.
ModulePtr build_zero_module(const RingPtr& ring);

// ---------------------------------------------------------------------------
// Annihilators, torsion, zero divisors
// ---------------------------------------------------------------------------

/// ann_R(m) = { r : m*r = 0 }, a right ideal of R.
SubsetMask annihilator(const FiniteModule& mod, int m);

/// Intersection of ann_R(m) over the elements of a subset.
SubsetMask annihilator_of_set(const FiniteModule& mod, const SubsetMask& subset);

/// ann_R(M) = 0.
bool is_faithful(const FiniteModule& mod);

/// T(M) = torsion elements (ann != 0), T*(M) = torsion-free elements (ann = 0).
/// The two masks partition the carrier; 0 is always torsion.
struct TorsionPartition {
    SubsetMask torsion;
    SubsetMask torsion_free;
};

TorsionPartition torsion_partition(const FiniteModule& mod);

/// Zd(M) = { r : m*r = 0 for some nonzero m }. 1 is never in Zd(M).
SubsetMask module_zero_divisors(const FiniteModule& mod);

/// Z(M) = { m : ann(m) essential }. The right-ideal quantification is the
/// default; the result is checked to be a submodule (internal_error if not).
SubsetMask singular_submodule(const FiniteModule& mod);

/// Sidedness-parameterized variant; the two-sided result is returned as a
/// plain set without the submodule assertion (it can fail to be one on
/// noncommutative rings).
SubsetMask singular_set(const FiniteModule& mod, Sidedness side);

// ---------------------------------------------------------------------------
// Submodules
// ---------------------------------------------------------------------------

bool is_submodule(const FiniteModule& mod, const SubsetMask& set);

SubsetMask submodule_closure(const FiniteModule& mod, std::span<const int> generators);

std::vector<SubsetMask> enumerate_submodules(const FiniteModule& mod,
                                             const IdealBudget& budget = global_ideal_budget());

// ---------------------------------------------------------------------------
// Predicates
// ---------------------------------------------------------------------------

struct ModulePredicates {
    bool faithful = false;
    bool torsion_free = false;   // T(M) = {0}
    bool torsion_module = false; // T(M) = M
    bool nonsingular = false;    // Z(M) = {0}
    bool singular = false;       // Z(M) = M
    bool reduced = false;        // mr = 0 implies mR n Mr = 0
    bool torsion_set_is_submodule = false;
    bool annihilator_comparability = false; // ann(m1), ann(m2) comparable for all pairs
};

ModulePredicates module_predicates(const FiniteModule& mod);

/// Per-module precomputation shared by the fusibility searches: annihilator
/// masks, the torsion partition and Zd(M) are computed once, not per query.
struct ModuleAnalysis {
    std::vector<SubsetMask> ann; // per module element, over the ring carrier
    SubsetMask torsion;
    SubsetMask torsion_free;
    SubsetMask zd;     // over the ring carrier
    SubsetMask non_zd; // complement
};

ModuleAnalysis analyze_module(const FiniteModule& mod);

} // namespace fusalg
