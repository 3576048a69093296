#include "fusalg/spec_io.hpp"

#include <algorithm>

namespace fusalg {

const char* const kToolVersion = "fusalg 0.1.0";

std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[h & 15];
        h >>= 4;
    }
    return out;
}

namespace {

void append_tables(std::string& buf, const std::vector<std::uint16_t>& t) {
    for (auto v : t) {
        buf.push_back(char(v & 0xff));
        buf.push_back(char(v >> 8));
    }
}

} // namespace

std::string ring_digest(const FiniteRing& ring) {
    std::string buf = "ring:" + std::to_string(ring.order()) + ":" + std::to_string(ring.one()) + ":";
    append_tables(buf, ring.add_table());
    append_tables(buf, ring.mul_table());
    return fnv1a_hex(buf);
}

std::string module_digest(const FiniteModule& mod) {
    std::string buf = "module:" + std::to_string(mod.order()) + ":" + ring_digest(mod.ring()) + ":";
    append_tables(buf, mod.add_table());
    append_tables(buf, mod.action_table());
    return fnv1a_hex(buf);
}

std::string bimodule_digest(const FiniteBimodule& bim) {
    std::string buf = "bimodule:" + std::to_string(bim.order()) + ":" + ring_digest(bim.ring()) + ":";
    for (int m = 0; m < bim.order(); ++m)
        for (int k = 0; k < bim.order(); ++k) buf += std::to_string(bim.add(m, k)) + ",";
    for (int a = 0; a < bim.ring().order(); ++a)
        for (int m = 0; m < bim.order(); ++m) buf += std::to_string(bim.left(a, m)) + ",";
    for (int m = 0; m < bim.order(); ++m)
        for (int a = 0; a < bim.ring().order(); ++a) buf += std::to_string(bim.right(m, a)) + ",";
    return fnv1a_hex(buf);
}

// ---------------------------------------------------------------------------
// Spec parsing
// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void spec_error(const std::string& path, const std::string& message) {
    throw input_error("spec error at " + (path.empty() ? "/" : path) + ": " + message);
}

void check_keys(const Json& j, const std::string& path, std::initializer_list<const char*> required,
                std::initializer_list<const char*> optional) {
    if (!j.is_object()) spec_error(path, "expected an object");
    for (const char* k : required)
        if (!j.contains(k)) spec_error(path, std::string("missing required key \"") + k + "\"");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : required)
            if (it.key() == k) known = true;
        for (const char* k : optional)
            if (it.key() == k) known = true;
        if (!known) spec_error(path, "unknown key \"" + it.key() + "\" (strict mode)");
    }
}

int get_int(const Json& j, const std::string& path, const char* key) {
    const auto& v = j.at(key);
    if (!v.is_number_integer()) spec_error(path + "/" + key, "expected an integer");
    return v.get<int>();
}

std::string get_label(const Json& j, const std::string& path) {
    if (!j.contains("label")) return {};
    if (!j.at("label").is_string()) spec_error(path + "/label", "expected a string");
    return j.at("label").get<std::string>();
}

std::vector<int> get_int_list(const Json& j, const std::string& path, const char* key) {
    const auto& v = j.at(key);
    if (!v.is_array()) spec_error(path + "/" + key, "expected an array of integers");
    std::vector<int> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!e.is_number_integer()) spec_error(path + "/" + key, "expected an array of integers");
        out.push_back(e.get<int>());
    }
    return out;
}

std::vector<std::vector<int>> get_matrix(const Json& j, const std::string& path, const char* key) {
    const auto& v = j.at(key);
    if (!v.is_array()) spec_error(path + "/" + key, "expected an array of rows");
    std::vector<std::vector<int>> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_array()) spec_error(path + "/" + key + "/" + std::to_string(i), "expected a row array");
        std::vector<int> row;
        for (const auto& e : v[i]) {
            if (!e.is_number_integer())
                spec_error(path + "/" + key + "/" + std::to_string(i), "expected integer entries");
            row.push_back(e.get<int>());
        }
        out.push_back(std::move(row));
    }
    return out;
}

std::string kind_of(const Json& j, const std::string& path) {
    if (!j.is_object()) spec_error(path, "expected an object");
    if (!j.contains("kind")) spec_error(path, "missing required key \"kind\"");
    if (!j.at("kind").is_string()) spec_error(path + "/kind", "expected a string");
    return j.at("kind").get<std::string>();
}

RingPtr build_ring_at(const Json& j, const std::string& path);
ModulePtr build_module_at(const Json& j, const std::string& path);
BimodulePtr build_bimodule_at(const Json& j, const std::string& path);

SubsetMask mask_from_list(const std::vector<int>& elems, int carrier, const std::string& path) {
    SubsetMask m(carrier);
    for (int e : elems) {
        if (e < 0 || e >= carrier) spec_error(path, "element index " + std::to_string(e) + " out of range");
        m.set(e);
    }
    return m;
}

RingPtr relabel(RingPtr ring, const std::string& label) {
    if (label.empty()) return ring;
    std::vector<std::string> names;
    if (ring->has_structured_names())
        for (int a = 0; a < ring->order(); ++a) names.push_back(ring->element_name(a));
    return std::make_shared<FiniteRing>(ring->order(), ring->add_table(), ring->mul_table(), ring->one(), label,
                                        std::move(names));
}

ModulePtr relabel(ModulePtr mod, const std::string& label) {
    if (label.empty()) return mod;
    std::vector<std::string> names;
    if (mod->has_structured_names())
        for (int m = 0; m < mod->order(); ++m) names.push_back(mod->element_name(m));
    return std::make_shared<FiniteModule>(mod->ring_ptr(), mod->order(), mod->add_table(), mod->action_table(),
                                          label, std::move(names));
}

RingPtr build_ring_at(const Json& j, const std::string& path) {
    const std::string kind = kind_of(j, path);
    if (kind == "cyclic") {
        check_keys(j, path, {"kind", "n"}, {"label"});
        return relabel(build_cyclic_ring(get_int(j, path, "n")), get_label(j, path));
    }
    if (kind == "product") {
        check_keys(j, path, {"kind", "left", "right"}, {"label"});
        return relabel(build_product_ring(build_ring_at(j.at("left"), path + "/left"),
                                          build_ring_at(j.at("right"), path + "/right")),
                       get_label(j, path));
    }
    if (kind == "pattern_matrix") {
        check_keys(j, path, {"kind", "p", "k", "pattern"}, {"label"});
        return relabel(build_pattern_matrix_ring(get_int(j, path, "p"), get_int(j, path, "k"),
                                                 get_matrix(j, path, "pattern")),
                       get_label(j, path));
    }
    if (kind == "quotient") {
        check_keys(j, path, {"kind", "ring", "ideal"}, {"label"});
        auto base = build_ring_at(j.at("ring"), path + "/ring");
        auto ideal = mask_from_list(get_int_list(j, path, "ideal"), base->order(), path + "/ideal");
        return relabel(build_quotient_ring(base, ideal).ring, get_label(j, path));
    }
    if (kind == "table") {
        check_keys(j, path, {"kind", "order", "add", "mul", "one"}, {"label"});
        std::string label = get_label(j, path);
        return build_table_ring(get_int(j, path, "order"), get_matrix(j, path, "add"), get_matrix(j, path, "mul"),
                                get_int(j, path, "one"), label.empty() ? "table" : label);
    }
    if (kind == "trivial_extension") {
        check_keys(j, path, {"kind", "bimodule"}, {"label"});
        auto bim = build_bimodule_at(j.at("bimodule"), path + "/bimodule");
        return relabel(build_trivial_extension(bim).ring, get_label(j, path));
    }
    if (kind == "localization") {
        check_keys(j, path, {"kind", "ring", "denominators"}, {"label"});
        auto base = build_ring_at(j.at("ring"), path + "/ring");
        auto s = mask_from_list(get_int_list(j, path, "denominators"), base->order(), path + "/denominators");
        return relabel(localize_ring(base, s).ring, get_label(j, path));
    }
    spec_error(path + "/kind", "\"" + kind + "\" is not a ring kind");
}

ModulePtr build_module_at(const Json& j, const std::string& path) {
    const std::string kind = kind_of(j, path);
    if (kind == "regular_module") {
        check_keys(j, path, {"kind", "ring"}, {"label"});
        return relabel(build_regular_module(build_ring_at(j.at("ring"), path + "/ring")), get_label(j, path));
    }
    if (kind == "cyclic_quotient_module") {
        check_keys(j, path, {"kind", "ring"}, {"label", "ideal", "generators"});
        auto ring = build_ring_at(j.at("ring"), path + "/ring");
        bool has_ideal = j.contains("ideal"), has_gens = j.contains("generators");
        if (has_ideal == has_gens)
            spec_error(path, "exactly one of \"ideal\" or \"generators\" is required");
        SubsetMask ideal(ring->order());
        if (has_ideal) {
            ideal = mask_from_list(get_int_list(j, path, "ideal"), ring->order(), path + "/ideal");
        } else {
            auto gens = get_int_list(j, path, "generators");
            for (int g : gens)
                if (g < 0 || g >= ring->order()) spec_error(path + "/generators", "generator index out of range");
            ideal = right_ideal_closure(*ring, gens);
        }
        return relabel(build_quotient_module(ring, ideal), get_label(j, path));
    }
    if (kind == "submodule") {
        check_keys(j, path, {"kind", "module"}, {"label", "elements", "generators"});
        auto base = build_module_at(j.at("module"), path + "/module");
        bool has_elems = j.contains("elements"), has_gens = j.contains("generators");
        if (has_elems == has_gens)
            spec_error(path, "exactly one of \"elements\" or \"generators\" is required");
        SubsetMask sub(base->order());
        if (has_elems) {
            sub = mask_from_list(get_int_list(j, path, "elements"), base->order(), path + "/elements");
        } else {
            auto gens = get_int_list(j, path, "generators");
            for (int g : gens)
                if (g < 0 || g >= base->order()) spec_error(path + "/generators", "generator index out of range");
            sub = submodule_closure(*base, gens);
        }
        return relabel(build_submodule_as_module(base, sub), get_label(j, path));
    }
    if (kind == "product_module") {
        check_keys(j, path, {"kind", "left", "right"}, {"label"});
        return relabel(build_product_module(build_module_at(j.at("left"), path + "/left"),
                                            build_module_at(j.at("right"), path + "/right")),
                       get_label(j, path));
    }
    if (kind == "table") {
        check_keys(j, path, {"kind", "ring", "order", "add", "action"}, {"label"});
        auto ring = build_ring_at(j.at("ring"), path + "/ring");
        std::string label = get_label(j, path);
        return build_table_module(ring, get_int(j, path, "order"), get_matrix(j, path, "add"),
                                  get_matrix(j, path, "action"), label.empty() ? "table" : label);
    }
    if (kind == "localization") {
        check_keys(j, path, {"kind", "module", "denominators"}, {"label"});
        auto base = build_module_at(j.at("module"), path + "/module");
        auto s = mask_from_list(get_int_list(j, path, "denominators"), base->ring().order(),
                                path + "/denominators");
        return relabel(localize_module(base, s).module, get_label(j, path));
    }
    spec_error(path + "/kind", "\"" + kind + "\" is not a module kind");
}

BimodulePtr build_bimodule_at(const Json& j, const std::string& path) {
    const std::string kind = kind_of(j, path);
    if (kind != "bimodule") spec_error(path + "/kind", "\"" + kind + "\" is not a bimodule kind");
    check_keys(j, path, {"kind", "ring", "order", "add", "left_action", "right_action"}, {"label"});
    auto ring = build_ring_at(j.at("ring"), path + "/ring");
    std::string label = get_label(j, path);
    return build_bimodule(ring, get_int(j, path, "order"), get_matrix(j, path, "add"),
                          get_matrix(j, path, "left_action"), get_matrix(j, path, "right_action"),
                          label.empty() ? "bimodule" : label);
}

} // namespace

SpecShape spec_shape(const Json& spec) {
    const std::string kind = kind_of(spec, "");
    if (kind == "cyclic" || kind == "product" || kind == "pattern_matrix" || kind == "quotient" ||
        kind == "trivial_extension")
        return SpecShape::ring;
    if (kind == "regular_module" || kind == "cyclic_quotient_module" || kind == "submodule" ||
        kind == "product_module")
        return SpecShape::module;
    if (kind == "bimodule") return SpecShape::bimodule;
    if (kind == "table") return spec.contains("mul") ? SpecShape::ring : SpecShape::module;
    if (kind == "localization") return spec.contains("ring") ? SpecShape::ring : SpecShape::module;
    spec_error("/kind", "unknown kind \"" + kind + "\"");
}

RingPtr build_ring_from_spec(const Json& spec) { return build_ring_at(spec, ""); }
ModulePtr build_module_from_spec(const Json& spec) { return build_module_at(spec, ""); }
BimodulePtr build_bimodule_from_spec(const Json& spec) { return build_bimodule_at(spec, ""); }

Json parse_spec_text(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw input_error(std::string("malformed JSON: ") + e.what());
    }
    spec_shape(j); // validates the kind discriminator
    return j;
}

Json bimodule_to_spec(const FiniteBimodule& bim) {
    // Bimodules round-trip through the raw-table form; the base ring must be
    // reconstructible, so we emit it as a table ring.
    const FiniteRing& A = bim.ring();
    Json ring;
    ring["kind"] = "table";
    ring["order"] = A.order();
    Json add = Json::array(), mul = Json::array();
    for (int a = 0; a < A.order(); ++a) {
        Json ra = Json::array(), rm = Json::array();
        for (int b = 0; b < A.order(); ++b) {
            ra.push_back(A.add(a, b));
            rm.push_back(A.mul(a, b));
        }
        add.push_back(std::move(ra));
        mul.push_back(std::move(rm));
    }
    ring["add"] = std::move(add);
    ring["mul"] = std::move(mul);
    ring["one"] = A.one();
    ring["label"] = A.label();

    Json out;
    out["kind"] = "bimodule";
    out["ring"] = std::move(ring);
    out["order"] = bim.order();
    Json badd = Json::array(), left = Json::array(), right = Json::array();
    for (int m = 0; m < bim.order(); ++m) {
        Json row = Json::array();
        for (int k = 0; k < bim.order(); ++k) row.push_back(bim.add(m, k));
        badd.push_back(std::move(row));
    }
    for (int a = 0; a < A.order(); ++a) {
        Json row = Json::array();
        for (int m = 0; m < bim.order(); ++m) row.push_back(bim.left(a, m));
        left.push_back(std::move(row));
    }
    for (int m = 0; m < bim.order(); ++m) {
        Json row = Json::array();
        for (int a = 0; a < A.order(); ++a) row.push_back(bim.right(m, a));
        right.push_back(std::move(row));
    }
    out["add"] = std::move(badd);
    out["left_action"] = std::move(left);
    out["right_action"] = std::move(right);
    out["label"] = bim.label();
    return out;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

Json mask_to_json(const SubsetMask& mask) {
    Json arr = Json::array();
    for (int i = mask.first(); i >= 0; i = mask.next(i)) arr.push_back(i);
    return arr;
}

void put_ring_set(Json& out, const std::string& key, const SubsetMask& mask, const FiniteRing& ring) {
    out[key] = mask_to_json(mask);
    if (ring.has_structured_names()) {
        Json names = Json::array();
        for (int i = mask.first(); i >= 0; i = mask.next(i)) names.push_back(ring.element_name(i));
        out[key + "_names"] = std::move(names);
    }
}

void put_module_set(Json& out, const std::string& key, const SubsetMask& mask, const FiniteModule& mod) {
    out[key] = mask_to_json(mask);
    if (mod.has_structured_names()) {
        Json names = Json::array();
        for (int i = mask.first(); i >= 0; i = mask.next(i)) names.push_back(mod.element_name(i));
        out[key + "_names"] = std::move(names);
    }
}

Json axiom_report_to_json(const AxiomReport& report) {
    Json out;
    out["ok"] = report.ok;
    Json failures = Json::array();
    for (const auto& f : report.failures) {
        Json e;
        e["axiom"] = f.axiom;
        Json witness = Json::array();
        for (int w : f.witness)
            if (w >= 0) witness.push_back(w);
        e["witness"] = std::move(witness);
        failures.push_back(std::move(e));
    }
    out["failures"] = std::move(failures);
    return out;
}

Json ring_check_report(const FiniteRing& ring) {
    Json out;
    out["ring"] = Json{{"label", ring.label()}, {"order", ring.order()}, {"one", ring.one()}};
    out["axioms"] = axiom_report_to_json(verify_ring_axioms(ring));
    auto roles = element_roles(ring);
    Json jroles;
    put_ring_set(jroles, "units", roles.units, ring);
    put_ring_set(jroles, "left_zero_divisors", roles.left_zero_divisors, ring);
    put_ring_set(jroles, "right_zero_divisors", roles.right_zero_divisors, ring);
    put_ring_set(jroles, "regular", roles.regular, ring);
    put_ring_set(jroles, "center", roles.center, ring);
    out["roles"] = std::move(jroles);
    auto p = ring_predicates(ring);
    out["predicates"] = Json{{"commutative", p.commutative},
                             {"right_duo", p.right_duo},
                             {"domain", p.domain},
                             {"division", p.division},
                             {"field", p.field},
                             {"reduced_ring", p.reduced_ring},
                             {"local", p.local},
                             {"left_fusible", p.left_fusible},
                             {"fusible", p.fusible},
                             {"regular_left_fusible", p.regular_left_fusible}};
    return out;
}

Json module_classify_report(const FiniteModule& mod, bool with_witnesses) {
    Json out;
    out["module"] = Json{{"label", mod.label()},
                         {"order", mod.order()},
                         {"ring", Json{{"label", mod.ring().label()}, {"order", mod.ring().order()}}}};
    auto c = classify(mod);
    put_module_set(out, "torsion", c.partition.torsion, mod);
    put_module_set(out, "torsion_free", c.partition.torsion_free, mod);
    put_ring_set(out, "zd", c.zd, mod.ring());
    put_ring_set(out, "non_zd", c.zd.complement(), mod.ring());
    put_module_set(out, "singular_submodule", c.singular, mod);
    out["predicates"] = Json{{"faithful", c.predicates.faithful},
                             {"torsion_free", c.predicates.torsion_free},
                             {"torsion_module", c.predicates.torsion_module},
                             {"nonsingular", c.predicates.nonsingular},
                             {"singular", c.predicates.singular},
                             {"reduced", c.predicates.reduced},
                             {"torsion_set_is_submodule", c.predicates.torsion_set_is_submodule},
                             {"annihilator_comparability", c.predicates.annihilator_comparability}};
    out["fusible"] = c.fusible;
    out["regular_fusible"] = c.regular_fusible;
    put_module_set(out, "failing_elements", c.failing_elements, mod);
    if (with_witnesses) {
        Json witnesses = Json::array();
        for (int m = 1; m < mod.order(); ++m) {
            Json e;
            e["element"] = m;
            if (c.witnesses[m]) {
                e["multiplier"] = c.witnesses[m]->multiplier;
                e["torsion_part"] = c.witnesses[m]->torsion_part;
                e["free_part"] = c.witnesses[m]->free_part;
            } else {
                e["witness"] = nullptr;
            }
            witnesses.push_back(std::move(e));
        }
        out["witnesses"] = std::move(witnesses);
    }
    return out;
}

Json report_envelope(const std::string& command, const std::string& input_digest) {
    Json out;
    out["tool"] = kToolVersion;
    out["command"] = command;
    out["input_digest"] = input_digest;
    return out;
}

} // namespace fusalg
