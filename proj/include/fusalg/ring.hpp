#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fusalg/mask.hpp"

namespace fusalg {

/// A finite ring with identity, given by full operation tables over element
/// indices 0..order-1. Index 0 is always the additive zero. Immutable after
/// construction; all operations on it are pure.
class FiniteRing {
public:
    FiniteRing(int order, std::vector<std::uint16_t> add, std::vector<std::uint16_t> mul,
               int one, std::string label, std::vector<std::string> element_names = {});

    int order() const { return order_; }
    int zero() const { return 0; }
    int one() const { return one_; }
    const std::string& label() const { return label_; }

    int add(int a, int b) const { return add_[std::size_t(a) * order_ + b]; }
    int mul(int a, int b) const { return mul_[std::size_t(a) * order_ + b]; }
    int neg(int a) const { return neg_[a]; }
    int sub(int a, int b) const { return add(a, neg_[b]); }

    /// Human-readable element names; plain decimal indices unless the
    /// constructor supplied structured names (pairs, matrices, cosets).
    const std::string& element_name(int a) const { return names_[a]; }
    bool has_structured_names() const { return structured_names_; }

    const std::vector<std::uint16_t>& add_table() const { return add_; }
    const std::vector<std::uint16_t>& mul_table() const { return mul_; }

private:
    int order_;
    int one_;
    std::vector<std::uint16_t> add_;
    std::vector<std::uint16_t> mul_;
    std::vector<int> neg_;
    std::string label_;
    std::vector<std::string> names_;
    bool structured_names_ = false;
};

using RingPtr = std::shared_ptr<const FiniteRing>;

/// Largest constructible carrier. Enumeration budgets are tighter (see IdealBudget).
inline constexpr int kMaxRingOrder = 1024;

/// One failed axiom with the first witness triple found (unused slots are -1).
struct AxiomFailure {
    std::string axiom;
    std::array<int, 3> witness{-1, -1, -1};
};

struct AxiomReport {
    bool ok = true;
    std::vector<AxiomFailure> failures;
};

/// Exhaustively checks every ring axiom on candidate tables and reports the
/// first failing witness per axiom. O(order^3) for associativity/distributivity.
AxiomReport verify_ring_axioms(int order, const std::vector<std::uint16_t>& add,
                               const std::vector<std::uint16_t>& mul, int one);
AxiomReport verify_ring_axioms(const FiniteRing& ring);

/// "axiom fails at (a,b,c); ..." one clause per failure.
std::string render_axiom_failures(const AxiomReport& report);

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

/// Z_n with add/mul mod n; element index i is the residue i.
RingPtr build_cyclic_ring(int n);

/// Componentwise product; index of (i,j) is i*|R2|+j.
RingPtr build_product_ring(const RingPtr& r1, const RingPtr& r2);

/// The subring of k x k matrices over Z_p supported on a boolean pattern.
/// The pattern must contain the diagonal and be closed under matrix
/// multiplication. Element index enumerates allowed cells row-major,
/// least-significant digit first, base p.
RingPtr build_pattern_matrix_ring(int p, int k, const std::vector<std::vector<int>>& pattern);

struct QuotientRing {
    RingPtr ring;
    std::vector<int> projection; // parent element index -> quotient index
};

/// Ring on cosets of a two-sided ideal; coset representative is the least
/// element index in the coset.
QuotientRing build_quotient_ring(const RingPtr& ring, const SubsetMask& ideal);

/// Builds from raw tables, validating every axiom (throws input_error with the
/// axiom report rendered into the message on failure).
RingPtr build_table_ring(int order, const std::vector<std::vector<int>>& add,
                         const std::vector<std::vector<int>>& mul, int one,
                         std::string label = "table");

// ---------------------------------------------------------------------------
// Element roles and predicates
// ---------------------------------------------------------------------------

/// Zero is counted as a zero divisor on both sides, so that a = 0 + a is a
/// fusible decomposition of any regular a.
struct ElementRoles {
    SubsetMask units;
    SubsetMask left_zero_divisors;
    SubsetMask right_zero_divisors;
    SubsetMask regular; // complement(left u right); equals units in finite rings
    SubsetMask center;
};

ElementRoles element_roles(const FiniteRing& ring);

struct RingPredicates {
    bool commutative = false;
    bool right_duo = false; // Ra subseteq aR for all a
    bool domain = false;
    bool division = false;
    bool field = false;
    bool reduced_ring = false; // a^2 = 0 implies a = 0
    bool local = false;        // non-units form an ideal
    bool left_fusible = false;
    bool fusible = false; // left and right fusible
    bool regular_left_fusible = false;
};

RingPredicates ring_predicates(const FiniteRing& ring);

bool is_commutative(const FiniteRing& ring);

// ---------------------------------------------------------------------------
// Ideals and essentiality
// ---------------------------------------------------------------------------

enum class Sidedness { right, two_sided };

/// Smallest right ideal containing the generators: worklist closure under
/// addition and right multiplication by every ring element.
SubsetMask right_ideal_closure(const FiniteRing& ring, std::span<const int> generators);

/// Two-sided variant (also closes under left multiplication).
SubsetMask two_sided_ideal_closure(const FiniteRing& ring, std::span<const int> generators);

bool is_right_ideal(const FiniteRing& ring, const SubsetMask& set);
bool is_two_sided_ideal(const FiniteRing& ring, const SubsetMask& set);

struct IdealBudget {
    long max_ideals = 100000;
    int max_ring_order = 512;
};

/// Process-wide default enumeration budget; the CLI lets environment
/// variables override it.
IdealBudget& global_ideal_budget();

/// All right (or two-sided) ideals by lattice generation: start from {0},
/// repeatedly close X u {a} for each known ideal X and element a not in X,
/// deduplicating by mask. Output sorted by (size, lexicographic).
std::vector<SubsetMask> enumerate_right_ideals(const FiniteRing& ring, bool two_sided = false,
                                               const IdealBudget& budget = global_ideal_budget());

/// The cyclic ideals aR (or RaR) for every a, indexed by a. Shared by the
/// essentiality tests so singular-submodule scans stay O(|M|*|R|).
std::vector<SubsetMask> cyclic_ideals(const FiniteRing& ring, Sidedness side);

/// True iff I meets every nonzero right ideal nontrivially. Decided via the
/// cyclic reduction: I n aR != 0 for every nonzero a.
bool is_essential_right_ideal(const FiniteRing& ring, const SubsetMask& ideal);

/// Sidedness-parameterized variant. The paper's examples are inconsistent
/// about which quantification they use, so both are exposed.
bool is_essential_ideal(const FiniteRing& ring, const SubsetMask& ideal, Sidedness side);
bool is_essential_ideal(const FiniteRing& ring, const SubsetMask& ideal, Sidedness side,
                        const std::vector<SubsetMask>& cyclic);

} // namespace fusalg
