#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "fusalg/constructions.hpp"
#include "fusalg/fusible.hpp"

namespace fusalg {

/// Reports and structure specs use insertion-ordered JSON so that emitted
/// documents are byte-identical across runs.
using Json = nlohmann::ordered_json;

/// FNV-1a 64-bit digest, hex encoded. Used for input digests and for the
/// structural identity checks in the corpus round-trip.
std::string fnv1a_hex(std::string_view bytes);

/// Canonical digests over the full operation tables.
std::string ring_digest(const FiniteRing& ring);
std::string module_digest(const FiniteModule& mod);
std::string bimodule_digest(const FiniteBimodule& bim);

// ---------------------------------------------------------------------------
// Structure specs
// ---------------------------------------------------------------------------
//
// A spec is a strict JSON document with a "kind" discriminator:
//
//   ring kinds:   cyclic, product, pattern_matrix, quotient, table,
//                 trivial_extension, localization (with "ring")
//   module kinds: regular_module, cyclic_quotient_module, submodule,
//                 product_module, table (with "ring"/"action"),
//                 localization (with "module")
//   bimodule:     bimodule
//
// Unknown kinds and unknown keys are rejected with a path-carrying error.

enum class SpecShape { ring, module, bimodule };

/// Parses just far enough to decide whether the spec denotes a ring, a module
/// or a bimodule. Throws input_error on malformed or unknown kinds.
SpecShape spec_shape(const Json& spec);

RingPtr build_ring_from_spec(const Json& spec);
ModulePtr build_module_from_spec(const Json& spec);
BimodulePtr build_bimodule_from_spec(const Json& spec);

/// Parses a JSON text and validates it as a structure spec (any shape).
/// Malformed JSON errors carry the byte position reported by the parser.
Json parse_spec_text(const std::string& text);

/// Serializes a bimodule to the raw-table "bimodule" spec (the general form
/// every bimodule can round-trip through).
Json bimodule_to_spec(const FiniteBimodule& bim);

// ---------------------------------------------------------------------------
// Report fragments
// ---------------------------------------------------------------------------

/// Sorted index array; when the carrier has structured element names a
/// parallel "<key>_names" array is added by the callers via named_set().
Json mask_to_json(const SubsetMask& mask);

/// Appends "key" (sorted indices) and, when names are structured, "key_names".
void put_ring_set(Json& out, const std::string& key, const SubsetMask& mask, const FiniteRing& ring);
void put_module_set(Json& out, const std::string& key, const SubsetMask& mask, const FiniteModule& mod);

Json axiom_report_to_json(const AxiomReport& report);

/// `ring check` payload: axioms + roles + predicates.
Json ring_check_report(const FiniteRing& ring);

/// `module classify` payload: torsion data, predicates, classification and
/// (optionally) the per-element witness table.
Json module_classify_report(const FiniteModule& mod, bool with_witnesses);

/// Envelope shared by every command: tool version, command name, input digest.
Json report_envelope(const std::string& command, const std::string& input_digest);

extern const char* const kToolVersion;

} // namespace fusalg
