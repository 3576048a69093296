#pragma once

#include <optional>

#include "fusalg/module.hpp"

namespace fusalg {

/// Certifies that m is regular fusible: m * multiplier = torsion_part +
/// free_part with multiplier outside Zd(M), torsion_part in T(M) and
/// free_part in T*(M). Plain fusibility witnesses have multiplier = 1.
struct FusibleWitness {
    int multiplier;
    int torsion_part;
    int free_part;
};

/// A fusible decomposition m = x + y with x torsion and y torsion-free,
/// searched in increasing x order. Absent if none exists.
std::optional<std::pair<int, int>> fusible_witness(const FiniteModule& mod, const ModuleAnalysis& a, int m);
std::optional<std::pair<int, int>> fusible_witness(const FiniteModule& mod, int m);

/// A regular fusible witness: the multiplier iterates over R - Zd(M) with 1
/// first and then increasing index, the torsion part in increasing index
/// order. Elements of T*(M) short-circuit to (1, 0, m).
std::optional<FusibleWitness> regular_fusible_witness(const FiniteModule& mod, const ModuleAnalysis& a, int m);
std::optional<FusibleWitness> regular_fusible_witness(const FiniteModule& mod, int m);

/// Re-verifies a witness from scratch, independently of the search path: the
/// multiplier's action column is scanned for a nonzero kernel, both parts'
/// annihilators are recomputed by direct loops, and the sum is re-evaluated.
bool verify_fusible_witness(const FiniteModule& mod, int m, const FusibleWitness& w);

struct FusibleVerdict {
    bool fusible = false;
    std::vector<std::optional<std::pair<int, int>>> witnesses; // indexed by m; [0] unused
};

/// True iff every nonzero element has a fusible decomposition.
FusibleVerdict is_fusible_module(const FiniteModule& mod);

struct ModuleClassification {
    ModulePredicates predicates;
    bool fusible = false;
    bool regular_fusible = false;
    std::vector<std::optional<FusibleWitness>> witnesses; // regular fusible witnesses per element
    SubsetMask failing_elements;                          // nonzero elements without a witness
    TorsionPartition partition;
    SubsetMask zd;
    SubsetMask singular;
};

struct RegularFusibleVerdict {
    bool regular_fusible = false;
    std::vector<std::optional<FusibleWitness>> witnesses;
    SubsetMask failing_elements;
};

RegularFusibleVerdict is_regular_fusible_module(const FiniteModule& mod);

/// True iff every nonzero element of the submodule is regular fusible *in M*.
bool is_regular_fusible_submodule(const FiniteModule& mod, const SubsetMask& submodule);

/// Full classification. Every emitted witness is re-verified through
/// verify_fusible_witness, and on commutative rings the implication chain
/// torsion_free => fusible => regular_fusible => nonsingular is asserted;
/// a violation of either raises internal_error naming the offending element.
ModuleClassification classify(const FiniteModule& mod);

} // namespace fusalg
