#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <variant>

#include "fusalg/spec_io.hpp"

namespace fusalg {

/// Every checkable statement of the underlying theory, one checker each.
/// Names are stable across releases.
enum class StatementId {
    ex1_torsionfree,
    ex1_torsion,
    ex2_local,
    ex2_field,
    fusible_implies_regular,
    prop1,
    cor1,
    prop2,
    prop3,
    cor12_i,
    cor12_ii,
    prop4,
    cor11,
    lem1,
    th2_i,
    th2_ii,
    tlocalization,
    treduced,
    thm3_i,
    thm3_ii,
    th6,
    cor13,
    lem2,
    thm5,
    trivext_regular,
    trivext_corollary,
    division,
    division_commutative,
};

inline constexpr int kStatementCount = 28;

enum class InstanceShape { ring, module, pair, triple, bimodule, localization };

enum class Verdict { holds, vacuous, violated, anomaly };

const char* statement_name(StatementId id);
std::optional<StatementId> statement_from_name(std::string_view name);
InstanceShape statement_shape(StatementId id);

/// Hypothesis/conclusion decomposition used by the counterexample searcher:
/// side conditions, antecedent and consequent, and whether the statement is
/// a biconditional between antecedent and consequent.
struct StatementForm {
    std::vector<std::string> sides;
    std::string antecedent;
    std::string consequent;
    bool biconditional;
};

const StatementForm& statement_form(StatementId id);

// ---------------------------------------------------------------------------
// Instances
// ---------------------------------------------------------------------------

struct RingInstance {
    RingPtr ring;
    std::string provenance;
    Json spec;
};

struct ModuleInstance {
    ModulePtr module;
    std::string provenance;
    Json spec;
};

struct PairInstance {
    ModulePtr left, right;
    std::string provenance;
    Json left_spec, right_spec;
};

struct TripleInstance {
    ModulePtr a, b, c;
    std::string provenance;
    Json a_spec, b_spec, c_spec;
};

struct BimoduleInstance {
    BimodulePtr bimodule;
    std::string provenance;
    Json spec;
};

struct LocalizationInstance {
    ModulePtr module;
    SubsetMask denominators;
    std::string provenance;
    Json module_spec;
};

using AnyInstance = std::variant<RingInstance, ModuleInstance, PairInstance, TripleInstance,
                                 BimoduleInstance, LocalizationInstance>;

InstanceShape instance_shape(const AnyInstance& instance);
std::string instance_provenance(const AnyInstance& instance);

// ---------------------------------------------------------------------------
// Outcomes
// ---------------------------------------------------------------------------

struct Witness {
    std::string description;
    std::vector<int> elements;
};

struct CheckOutcome {
    StatementId statement;
    std::string instance;
    Verdict verdict = Verdict::vacuous;
    std::optional<Witness> witness; // carried by violations
    std::string note;               // e.g. the module found by the division probe
    std::chrono::microseconds elapsed{0};
};

const char* verdict_name(Verdict verdict);

// ---------------------------------------------------------------------------
// Corpus
// ---------------------------------------------------------------------------

struct CorpusBudget {
    int max_ring_order = 72;     // global cap on any generated carrier
    int max_cyclic_order = 30;   // Z_n family
    int max_product_order = 72;  // |R1|*|R2| for cyclic pairs
    int max_trivext_order = 64;  // |A|*|M|
    int max_module_order = 72;
    int derived_max_ring = 30;   // quotient/submodule module families run on rings up to this order
    std::vector<std::string> families; // empty = all; names as documented in the README
};

struct Corpus {
    CorpusBudget budget;
    std::vector<RingInstance> rings;
    std::vector<ModuleInstance> modules;
    std::vector<PairInstance> pairs;
    std::vector<TripleInstance> triples;
    std::vector<BimoduleInstance> bimodules;
    std::vector<LocalizationInstance> localizations;

    std::size_t size() const {
        return rings.size() + modules.size() + pairs.size() + triples.size() + bimodules.size() +
               localizations.size();
    }
};

/// Deterministic corpus: the worked examples first (their order is load
/// bearing for counterexample searches), then the systematic families.
/// Every instance passes axiom verification before inclusion.
Corpus generate_corpus(const CorpusBudget& budget = {});

Json corpus_manifest(const Corpus& corpus);
Corpus corpus_from_manifest(const Json& manifest);

// ---------------------------------------------------------------------------
// Checking
// ---------------------------------------------------------------------------

/// Memoizes per-structure computations across statements. Keys are the
/// owning shared pointers: entries keep their structures alive, so a key
/// address can never be reused by a different structure.
class HarnessCache {
public:
    const ModuleClassification& classification(const ModulePtr& mod);
    const RingPredicates& predicates(const RingPtr& ring);
    const ElementRoles& roles(const RingPtr& ring);
    const LocalizedModule& localization(const LocalizationInstance& instance);
    const LocalizedModule& quotient_module_of(const ModulePtr& mod); // total quotient, keyed by module

private:
    std::map<ModulePtr, ModuleClassification> classifications_;
    std::map<RingPtr, RingPredicates> predicates_;
    std::map<RingPtr, ElementRoles> roles_;
    std::map<std::pair<ModulePtr, SubsetMask>, LocalizedModule> localizations_;
    std::map<ModulePtr, LocalizedModule> quotients_;
};

/// Evaluates hypotheses first (vacuous when unmet), then the conclusion.
/// Violations carry a witness that re-verifies through an independent path.
CheckOutcome check_statement(StatementId id, const AnyInstance& instance, HarnessCache& cache);
CheckOutcome check_statement(StatementId id, const AnyInstance& instance);

struct StatementTally {
    StatementId id;
    int holds = 0, vacuous = 0, violated = 0, anomalies = 0;
};

struct TheoremReport {
    std::vector<StatementTally> tallies; // one per requested statement, in enum order
    std::vector<CheckOutcome> violations;
    std::vector<CheckOutcome> anomalies;
    long total_checks = 0;
    std::chrono::microseconds elapsed{0};
};

/// Runs every (statement, instance) pair of compatible shape.
TheoremReport run_suite(const Corpus& corpus, const std::vector<StatementId>& statements);
TheoremReport run_suite(const Corpus& corpus);

Json theorem_report_to_json(const TheoremReport& report, bool with_timing = false);

// ---------------------------------------------------------------------------
// Counterexample search
// ---------------------------------------------------------------------------

struct SearchResult {
    bool found = false;
    std::string instance;   // provenance of the first hit
    std::string explanation; // which hypotheses held, which conclusion failed
    bool recheck_passed = false;
};

/// Searches the *converse* of a statement over the corpus: instances where
/// the original consequent holds but the antecedent fails. Side conditions
/// are not imposed, matching how the underlying counterexamples are stated;
/// dropped_hypothesis may name any hypothesis of the statement ("none" drops
/// nothing) and removes it from the search hypotheses when present.
/// Results are re-checked through independent predicate evaluations.
SearchResult search_counterexample(StatementId id, const std::string& dropped_hypothesis,
                                   const Corpus& corpus);

// ---------------------------------------------------------------------------
// Division probe
// ---------------------------------------------------------------------------

struct ProbeResult {
    CheckOutcome outcome;
    bool ring_is_division = false;
    std::optional<std::string> non_fusible_module; // label when found
    std::vector<std::string> modules_checked;
};

/// Probes "every module fusible iff division": for a division ring, every
/// module in the proof-guided set {R, R/ann(a), R/a^2 R} must be fusible; for
/// a non-division ring a non-fusible member is searched for. Not finding one
/// is an anomaly, not a violation (the guided set is proof-derived, not
/// exhaustive). Rings that are not right duo give a vacuous outcome.
ProbeResult division_ring_probe(const RingPtr& ring);

} // namespace fusalg
