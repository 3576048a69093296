// fusalg: command-line frontend for the finite ring/module workbench.
//
// Exit codes: 0 success (holds / search completed), 1 theorem violation or
// internal consistency failure, 2 input or parse error, 3 budget exceeded.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "fusalg/theorems.hpp"

using namespace fusalg;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void emit(const Json& report, const std::string& out_path) {
    std::string text = report.dump(2);
    text += "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw input_error("cannot open output file: " + out_path);
        out << text;
    }
}

void apply_env_budget_overrides(CorpusBudget& budget) {
    if (const char* v = std::getenv("FUSALG_MAX_RING_ORDER")) {
        budget.max_ring_order = std::atoi(v);
        global_ideal_budget().max_ring_order = std::atoi(v);
    }
    if (const char* v = std::getenv("FUSALG_MAX_MODULE_ORDER")) budget.max_module_order = std::atoi(v);
    if (const char* v = std::getenv("FUSALG_MAX_IDEALS")) global_ideal_budget().max_ideals = std::atol(v);
}

struct VerifyOptions {
    std::string statement = "all";
    std::string corpus = "default";
    std::string instance_file;
    bool timing = false;
    std::string out;
};

std::vector<StatementId> resolve_statements(const std::string& name) {
    std::vector<StatementId> ids;
    if (name == "all") {
        for (int i = 0; i < kStatementCount; ++i) ids.push_back(StatementId(i));
        return ids;
    }
    auto id = statement_from_name(name);
    if (!id) throw input_error("unknown statement: " + name);
    ids.push_back(*id);
    return ids;
}

Corpus load_corpus(const std::string& corpus_arg, std::string& digest) {
    if (corpus_arg == "default") {
        CorpusBudget budget;
        apply_env_budget_overrides(budget);
        Corpus corpus = generate_corpus(budget);
        digest = fnv1a_hex(corpus_manifest(corpus).dump());
        return corpus;
    }
    std::string text = read_file(corpus_arg);
    digest = fnv1a_hex(text);
    Json manifest;
    try {
        manifest = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw input_error(std::string("malformed corpus manifest: ") + e.what());
    }
    return corpus_from_manifest(manifest);
}

/// Builds the instance a statement needs from a spec document, or nullopt
/// when the shapes are incompatible (used to filter `--statement all`).
/// product_module specs satisfy both module- and pair-shaped statements;
/// localization specs satisfy module-shaped statements (the localized module)
/// and localization-shaped ones (the base module with its denominators).
std::optional<AnyInstance> try_instance_for(StatementId id, const Json& spec, const std::string& provenance) {
    const std::string kind = spec.value("kind", "");
    switch (statement_shape(id)) {
    case InstanceShape::ring:
        if (spec_shape(spec) != SpecShape::ring) return std::nullopt;
        return AnyInstance{RingInstance{build_ring_from_spec(spec), provenance, spec}};
    case InstanceShape::module:
        if (spec_shape(spec) != SpecShape::module) return std::nullopt;
        return AnyInstance{ModuleInstance{build_module_from_spec(spec), provenance, spec}};
    case InstanceShape::bimodule:
        if (spec_shape(spec) != SpecShape::bimodule) return std::nullopt;
        return AnyInstance{BimoduleInstance{build_bimodule_from_spec(spec), provenance, spec}};
    case InstanceShape::pair: {
        if (kind != "product_module") return std::nullopt;
        return AnyInstance{PairInstance{build_module_from_spec(spec.at("left")),
                                        build_module_from_spec(spec.at("right")), provenance, spec.at("left"),
                                        spec.at("right")}};
    }
    case InstanceShape::localization: {
        if (kind != "localization" || !spec.contains("module")) return std::nullopt;
        auto mod = build_module_from_spec(spec.at("module"));
        SubsetMask s(mod->ring().order());
        for (const auto& d : spec.at("denominators")) s.set(d.get<int>());
        return AnyInstance{LocalizationInstance{mod, s, provenance, spec.at("module")}};
    }
    case InstanceShape::triple:
        return std::nullopt; // triples are only checked over a corpus
    }
    return std::nullopt;
}

int run_ring_check(const std::string& file, bool timing, const std::string& out) {
    std::string text = read_file(file);
    auto spec = parse_spec_text(text);
    auto started = std::chrono::steady_clock::now();
    auto ring = build_ring_from_spec(spec);
    Json report = report_envelope("ring check", fnv1a_hex(text));
    Json payload = ring_check_report(*ring);
    for (auto& [key, value] : payload.items()) report[key] = value;
    if (timing)
        report["elapsed_us"] = std::chrono::duration_cast<std::chrono::microseconds>(
                                   std::chrono::steady_clock::now() - started)
                                   .count();
    emit(report, out);
    return 0;
}

int run_module_classify(const std::string& file, bool witnesses, bool timing, const std::string& out) {
    std::string text = read_file(file);
    auto spec = parse_spec_text(text);
    auto started = std::chrono::steady_clock::now();
    auto mod = build_module_from_spec(spec);
    Json report = report_envelope("module classify", fnv1a_hex(text));
    Json payload = module_classify_report(*mod, witnesses);
    for (auto& [key, value] : payload.items()) report[key] = value;
    if (timing)
        report["elapsed_us"] = std::chrono::duration_cast<std::chrono::microseconds>(
                                   std::chrono::steady_clock::now() - started)
                                   .count();
    emit(report, out);
    return 0;
}

int run_verify(const VerifyOptions& opt) {
    auto statements = resolve_statements(opt.statement);
    Json report;
    long violations = 0;

    if (!opt.instance_file.empty()) {
        std::string text = read_file(opt.instance_file);
        auto spec = parse_spec_text(text);
        report = report_envelope("verify", fnv1a_hex(text));
        report["statement"] = opt.statement;
        Json outcomes = Json::array();
        HarnessCache cache;
        bool any_compatible = false;
        for (StatementId id : statements) {
            auto inst = try_instance_for(id, spec, opt.instance_file);
            if (!inst) {
                if (statements.size() == 1)
                    throw input_error(std::string("statement ") + statement_name(id) +
                                      " cannot run on this instance shape");
                continue;
            }
            any_compatible = true;
            auto outcome = check_statement(id, *inst, cache);
            Json o{{"statement", statement_name(id)}, {"verdict", verdict_name(outcome.verdict)}};
            if (outcome.witness) {
                Json elems = Json::array();
                for (int x : outcome.witness->elements) elems.push_back(x);
                o["witness"] = Json{{"description", outcome.witness->description}, {"elements", elems}};
            }
            if (!outcome.note.empty()) o["note"] = outcome.note;
            if (opt.timing) o["elapsed_us"] = outcome.elapsed.count();
            if (outcome.verdict == Verdict::violated) ++violations;
            outcomes.push_back(std::move(o));
        }
        if (!any_compatible) throw input_error("no requested statement matches this instance shape");
        report["outcomes"] = std::move(outcomes);
    } else {
        std::string digest;
        Corpus corpus = load_corpus(opt.corpus, digest);
        report = report_envelope("verify", digest);
        report["statement"] = opt.statement;
        report["corpus"] = Json{{"source", opt.corpus}, {"instances", Json::number_integer_t(corpus.size())}};
        auto suite = run_suite(corpus, statements);
        Json payload = theorem_report_to_json(suite, opt.timing);
        for (auto& [key, value] : payload.items()) report[key] = value;
        violations = long(suite.violations.size());
    }
    emit(report, opt.out);
    return violations ? 1 : 0;
}

int run_search(const std::string& statement, const std::string& drop, const std::string& corpus_arg,
               const std::string& out) {
    auto id = statement_from_name(statement);
    if (!id) throw input_error("unknown statement: " + statement);
    std::string digest;
    Corpus corpus = load_corpus(corpus_arg, digest);
    auto result = search_counterexample(*id, drop, corpus);
    Json report = report_envelope("search", digest);
    report["statement"] = statement;
    report["mode"] = "converse";
    report["dropped"] = drop;
    report["found"] = result.found;
    if (result.found) {
        report["instance"] = result.instance;
        report["explanation"] = result.explanation;
        report["recheck"] = result.recheck_passed ? "ok" : "failed";
    }
    emit(report, out);
    return 0; // found or not found is data, not an error
}

int run_corpus_generate(CorpusBudget budget, const std::string& families, const std::string& out) {
    apply_env_budget_overrides(budget);
    if (!families.empty()) {
        std::stringstream ss(families);
        std::string f;
        while (std::getline(ss, f, ','))
            if (!f.empty()) budget.families.push_back(f);
    }
    Corpus corpus = generate_corpus(budget);
    Json manifest = corpus_manifest(corpus);
    Json report = report_envelope("corpus generate", fnv1a_hex(manifest.dump()));
    report["instances"] = Json::number_integer_t(corpus.size());
    if (out.empty()) {
        emit(manifest, "");
    } else {
        emit(manifest, out);
        report["out"] = out;
        emit(report, "");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fusalg: a finite ring and module workbench for torsion, fusibility and singularity analysis"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    // ring check <file>
    auto* ring_cmd = app.add_subcommand("ring", "ring-level analyses");
    ring_cmd->require_subcommand(1);
    auto* ring_check = ring_cmd->add_subcommand("check", "verify axioms, element roles and ring predicates");
    std::string ring_file, ring_out;
    bool ring_timing = false;
    ring_check->add_option("file", ring_file, "ring spec (JSON)")->required();
    ring_check->add_flag("--timing", ring_timing, "include wall-clock timings (breaks byte-stability)");
    ring_check->add_option("--out", ring_out, "write the report to a file instead of stdout");

    // module classify <file>
    auto* module_cmd = app.add_subcommand("module", "module-level analyses");
    module_cmd->require_subcommand(1);
    auto* module_classify = module_cmd->add_subcommand("classify", "full torsion/fusibility classification");
    std::string module_file, module_out;
    bool module_witnesses = false, module_timing = false;
    module_classify->add_option("file", module_file, "module spec (JSON)")->required();
    module_classify->add_flag("--witnesses", module_witnesses, "include the per-element witness table");
    module_classify->add_flag("--timing", module_timing, "include wall-clock timings (breaks byte-stability)");
    module_classify->add_option("--out", module_out, "write the report to a file instead of stdout");

    // verify
    auto* verify = app.add_subcommand("verify", "run registered statements over a corpus or one instance");
    VerifyOptions vopt;
    verify->add_option("--statement", vopt.statement, "statement name or 'all'")->capture_default_str();
    verify->add_option("--corpus", vopt.corpus, "'default' or a corpus manifest file")->capture_default_str();
    verify->add_option("--instance", vopt.instance_file, "check against a single instance spec");
    verify->add_flag("--timing", vopt.timing, "include wall-clock timings (breaks byte-stability)");
    verify->add_option("--out", vopt.out, "write the report to a file instead of stdout");

    // search
    auto* search = app.add_subcommand("search", "search a corpus for converse counterexamples");
    std::string search_statement, search_drop = "none", search_corpus = "default", search_out;
    search->add_option("--converse", search_statement, "statement whose converse to probe")->required();
    search->add_option("--drop", search_drop, "hypothesis to drop, or 'none'")->capture_default_str();
    search->add_option("--corpus", search_corpus, "'default' or a corpus manifest file")->capture_default_str();
    search->add_option("--out", search_out, "write the report to a file instead of stdout");

    // corpus generate
    auto* corpus_cmd = app.add_subcommand("corpus", "corpus management");
    corpus_cmd->require_subcommand(1);
    auto* corpus_generate = corpus_cmd->add_subcommand("generate", "emit a deterministic corpus manifest");
    CorpusBudget budget;
    std::string corpus_families, corpus_out;
    corpus_generate->add_option("--max-ring-order", budget.max_ring_order)->capture_default_str();
    corpus_generate->add_option("--max-cyclic-order", budget.max_cyclic_order)->capture_default_str();
    corpus_generate->add_option("--max-product-order", budget.max_product_order)->capture_default_str();
    corpus_generate->add_option("--max-trivext-order", budget.max_trivext_order)->capture_default_str();
    corpus_generate->add_option("--max-module-order", budget.max_module_order)->capture_default_str();
    corpus_generate->add_option("--families", corpus_families, "comma-separated family list (default: all)");
    corpus_generate->add_option("--out", corpus_out, "write the manifest to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*ring_check) return run_ring_check(ring_file, ring_timing, ring_out);
        if (*module_classify) return run_module_classify(module_file, module_witnesses, module_timing, module_out);
        if (*verify) return run_verify(vopt);
        if (*search) return run_search(search_statement, search_drop, search_corpus, search_out);
        if (*corpus_generate) return run_corpus_generate(budget, corpus_families, corpus_out);
    } catch (const budget_error& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 3;
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
