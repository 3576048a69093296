// Python bindings for the finite ring/module workbench.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fusalg/theorems.hpp"

namespace py = pybind11;
using namespace fusalg;

namespace {

std::vector<int> mask_list(const SubsetMask& mask) { return mask.to_indices(); }

SubsetMask mask_from(const std::vector<int>& elems, int carrier) {
    return SubsetMask::from_indices(carrier, elems);
}

py::object json_to_py(const Json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

py::dict roles_dict(const ElementRoles& roles) {
    py::dict d;
    d["units"] = mask_list(roles.units);
    d["left_zero_divisors"] = mask_list(roles.left_zero_divisors);
    d["right_zero_divisors"] = mask_list(roles.right_zero_divisors);
    d["regular"] = mask_list(roles.regular);
    d["center"] = mask_list(roles.center);
    return d;
}

py::dict ring_predicates_dict(const RingPredicates& p) {
    py::dict d;
    d["commutative"] = p.commutative;
    d["right_duo"] = p.right_duo;
    d["domain"] = p.domain;
    d["division"] = p.division;
    d["field"] = p.field;
    d["reduced_ring"] = p.reduced_ring;
    d["local"] = p.local;
    d["left_fusible"] = p.left_fusible;
    d["fusible"] = p.fusible;
    d["regular_left_fusible"] = p.regular_left_fusible;
    return d;
}

py::dict module_predicates_dict(const ModulePredicates& p) {
    py::dict d;
    d["faithful"] = p.faithful;
    d["torsion_free"] = p.torsion_free;
    d["torsion_module"] = p.torsion_module;
    d["nonsingular"] = p.nonsingular;
    d["singular"] = p.singular;
    d["reduced"] = p.reduced;
    d["torsion_set_is_submodule"] = p.torsion_set_is_submodule;
    d["annihilator_comparability"] = p.annihilator_comparability;
    return d;
}

py::object witness_tuple(const std::optional<FusibleWitness>& w) {
    if (!w) return py::none();
    return py::make_tuple(w->multiplier, w->torsion_part, w->free_part);
}

Sidedness side_from(const std::string& side) {
    if (side == "right") return Sidedness::right;
    if (side == "two_sided") return Sidedness::two_sided;
    throw input_error("sidedness must be 'right' or 'two_sided'");
}

} // namespace

PYBIND11_MODULE(_fusalg, m) {
    m.doc() = "Finite ring and module workbench: torsion, fusibility, singularity and theorem checking "
              "over operation tables.";
    m.attr("__version__") = kToolVersion;

    py::register_exception<input_error>(m, "InputError", PyExc_ValueError);
    py::register_exception<budget_error>(m, "BudgetError", PyExc_RuntimeError);
    py::register_exception<internal_error>(m, "InternalError", PyExc_RuntimeError);

    py::class_<FiniteRing, std::shared_ptr<FiniteRing>>(m, "Ring")
        .def_property_readonly("order", &FiniteRing::order)
        .def_property_readonly("one", &FiniteRing::one)
        .def_property_readonly("label", [](const FiniteRing& r) { return r.label(); })
        .def("add", &FiniteRing::add)
        .def("mul", &FiniteRing::mul)
        .def("neg", &FiniteRing::neg)
        .def("element_name", [](const FiniteRing& r, int a) { return r.element_name(a); })
        .def("__repr__", [](const FiniteRing& r) {
            return "<Ring " + r.label() + " of order " + std::to_string(r.order()) + ">";
        });

    py::class_<FiniteModule, std::shared_ptr<FiniteModule>>(m, "Module")
        .def_property_readonly("order", &FiniteModule::order)
        .def_property_readonly("label", [](const FiniteModule& mod) { return mod.label(); })
        .def_property_readonly("ring", [](const FiniteModule& mod) { return mod.ring_ptr(); })
        .def("add", &FiniteModule::add)
        .def("act", &FiniteModule::act)
        .def("element_name", [](const FiniteModule& mod, int x) { return mod.element_name(x); })
        .def("__repr__", [](const FiniteModule& mod) {
            return "<Module " + mod.label() + " of order " + std::to_string(mod.order()) + " over " +
                   mod.ring().label() + ">";
        });

    py::class_<FiniteBimodule, std::shared_ptr<FiniteBimodule>>(m, "Bimodule")
        .def_property_readonly("order", &FiniteBimodule::order)
        .def_property_readonly("label", [](const FiniteBimodule& b) { return b.label(); })
        .def_property_readonly("ring", [](const FiniteBimodule& b) { return b.ring_ptr(); })
        .def("left", &FiniteBimodule::left)
        .def("right", &FiniteBimodule::right);

    py::class_<Corpus>(m, "Corpus")
        .def_property_readonly("size", [](const Corpus& c) { return c.size(); })
        .def_property_readonly("rings", [](const Corpus& c) {
            py::list out;
            for (const auto& e : c.rings) out.append(py::make_tuple(e.provenance, e.ring));
            return out;
        })
        .def_property_readonly("modules", [](const Corpus& c) {
            py::list out;
            for (const auto& e : c.modules) out.append(py::make_tuple(e.provenance, e.module));
            return out;
        })
        .def("manifest", [](const Corpus& c) { return json_to_py(corpus_manifest(c)); })
        .def("__len__", [](const Corpus& c) { return c.size(); });

    // Constructors.
    m.def("cyclic_ring", &build_cyclic_ring, py::arg("n"));
    m.def("product_ring", &build_product_ring, py::arg("left"), py::arg("right"));
    m.def("pattern_matrix_ring", &build_pattern_matrix_ring, py::arg("p"), py::arg("k"), py::arg("pattern"));
    m.def(
        "quotient_ring",
        [](const RingPtr& ring, const std::vector<int>& ideal) {
            auto q = build_quotient_ring(ring, mask_from(ideal, ring->order()));
            return py::make_tuple(q.ring, q.projection);
        },
        py::arg("ring"), py::arg("ideal"), "Returns (quotient ring, projection list).");
    m.def("table_ring", &build_table_ring, py::arg("order"), py::arg("add"), py::arg("mul"), py::arg("one"),
          py::arg("label") = "table");
    m.def("regular_module", &build_regular_module, py::arg("ring"));
    m.def(
        "quotient_module",
        [](const RingPtr& ring, const std::vector<int>& ideal) {
            return build_quotient_module(ring, mask_from(ideal, ring->order()));
        },
        py::arg("ring"), py::arg("ideal"));
    m.def(
        "submodule_as_module",
        [](const ModulePtr& mod, const std::vector<int>& elements) {
            return build_submodule_as_module(mod, mask_from(elements, mod->order()));
        },
        py::arg("module"), py::arg("elements"));
    m.def("product_module", py::overload_cast<const ModulePtr&, const ModulePtr&>(&build_product_module),
          py::arg("left"), py::arg("right"));
    m.def("zero_module", &build_zero_module, py::arg("ring"));
    m.def("table_module", &build_table_module, py::arg("ring"), py::arg("order"), py::arg("add"),
          py::arg("action"), py::arg("label") = "table");
    m.def("regular_bimodule", &build_regular_bimodule, py::arg("ring"));
    m.def("zero_bimodule", &build_zero_bimodule, py::arg("ring"));
    m.def("bimodule", &build_bimodule, py::arg("ring"), py::arg("order"), py::arg("add"),
          py::arg("left_action"), py::arg("right_action"), py::arg("label") = "bimodule");
    m.def(
        "trivial_extension",
        [](const BimodulePtr& bim) {
            auto ext = build_trivial_extension(bim);
            return py::make_tuple(ext.ring, ext.embed_ring, ext.embed_module);
        },
        py::arg("bimodule"), "Returns (ring, ring embedding, module embedding).");

    // Ring analyses.
    m.def("verify_ring_axioms", [](const RingPtr& ring) {
        auto report = verify_ring_axioms(*ring);
        py::list failures;
        for (const auto& f : report.failures) {
            py::dict e;
            e["axiom"] = f.axiom;
            std::vector<int> witness;
            for (int w : f.witness)
                if (w >= 0) witness.push_back(w);
            e["witness"] = witness;
            failures.append(e);
        }
        py::dict d;
        d["ok"] = report.ok;
        d["failures"] = failures;
        return d;
    });
    m.def("element_roles", [](const RingPtr& ring) { return roles_dict(element_roles(*ring)); });
    m.def("ring_predicates", [](const RingPtr& ring) { return ring_predicates_dict(ring_predicates(*ring)); });
    m.def("right_ideal_closure", [](const RingPtr& ring, const std::vector<int>& generators) {
        return mask_list(right_ideal_closure(*ring, generators));
    });
    m.def(
        "enumerate_right_ideals",
        [](const RingPtr& ring, bool two_sided) {
            py::list out;
            for (const auto& ideal : enumerate_right_ideals(*ring, two_sided)) out.append(mask_list(ideal));
            return out;
        },
        py::arg("ring"), py::arg("two_sided") = false);
    m.def(
        "is_essential_ideal",
        [](const RingPtr& ring, const std::vector<int>& ideal, const std::string& side) {
            return is_essential_ideal(*ring, mask_from(ideal, ring->order()), side_from(side));
        },
        py::arg("ring"), py::arg("ideal"), py::arg("side") = "right");

    // Module analyses.
    m.def("verify_module_axioms", [](const ModulePtr& mod) { return verify_module_axioms(*mod).ok; });
    m.def("annihilator", [](const ModulePtr& mod, int x) { return mask_list(annihilator(*mod, x)); });
    m.def("annihilator_of_set", [](const ModulePtr& mod, const std::vector<int>& elements) {
        return mask_list(annihilator_of_set(*mod, mask_from(elements, mod->order())));
    });
    m.def("submodule_closure", [](const ModulePtr& mod, const std::vector<int>& generators) {
        return mask_list(submodule_closure(*mod, generators));
    });
    m.def("is_faithful", [](const ModulePtr& mod) { return is_faithful(*mod); });
    m.def("torsion_partition", [](const ModulePtr& mod) {
        auto part = torsion_partition(*mod);
        return py::make_tuple(mask_list(part.torsion), mask_list(part.torsion_free));
    });
    m.def("module_zero_divisors", [](const ModulePtr& mod) { return mask_list(module_zero_divisors(*mod)); });
    m.def(
        "singular_submodule",
        [](const ModulePtr& mod, const std::string& side) {
            if (side == "right") return mask_list(singular_submodule(*mod));
            return mask_list(singular_set(*mod, side_from(side)));
        },
        py::arg("module"), py::arg("side") = "right");
    m.def("enumerate_submodules", [](const ModulePtr& mod) {
        py::list out;
        for (const auto& sub : enumerate_submodules(*mod)) out.append(mask_list(sub));
        return out;
    });
    m.def("module_predicates", [](const ModulePtr& mod) { return module_predicates_dict(module_predicates(*mod)); });

    // Fusibility.
    m.def("fusible_witness", [](const ModulePtr& mod, int x) -> py::object {
        auto w = fusible_witness(*mod, x);
        if (!w) return py::none();
        return py::make_tuple(w->first, w->second);
    });
    m.def("regular_fusible_witness",
          [](const ModulePtr& mod, int x) { return witness_tuple(regular_fusible_witness(*mod, x)); });
    m.def("is_fusible_module", [](const ModulePtr& mod) { return is_fusible_module(*mod).fusible; });
    m.def("is_regular_fusible_module", [](const ModulePtr& mod) {
        auto v = is_regular_fusible_module(*mod);
        return py::make_tuple(v.regular_fusible, mask_list(v.failing_elements));
    });
    m.def("is_regular_fusible_submodule", [](const ModulePtr& mod, const std::vector<int>& elements) {
        return is_regular_fusible_submodule(*mod, mask_from(elements, mod->order()));
    });
    m.def("classify", [](const ModulePtr& mod) {
        auto c = classify(*mod);
        py::dict d;
        d["predicates"] = module_predicates_dict(c.predicates);
        d["fusible"] = c.fusible;
        d["regular_fusible"] = c.regular_fusible;
        d["torsion"] = mask_list(c.partition.torsion);
        d["torsion_free"] = mask_list(c.partition.torsion_free);
        d["zd"] = mask_list(c.zd);
        d["non_zd"] = mask_list(c.zd.complement());
        d["singular_submodule"] = mask_list(c.singular);
        d["failing_elements"] = mask_list(c.failing_elements);
        py::dict witnesses;
        for (int x = 1; x < mod->order(); ++x) witnesses[py::int_(x)] = witness_tuple(c.witnesses[x]);
        d["witnesses"] = witnesses;
        return d;
    });
    m.def("verify_fusible_witness", [](const ModulePtr& mod, int x, int multiplier, int torsion_part,
                                       int free_part) {
        return verify_fusible_witness(*mod, x, FusibleWitness{multiplier, torsion_part, free_part});
    });

    // Constructions.
    m.def("bimodule_annihilators", [](const BimodulePtr& bim) {
        auto ann = bimodule_annihilators(*bim);
        py::dict d;
        d["ann_l"] = mask_list(ann.ann_l);
        d["ann_r"] = mask_list(ann.ann_r);
        d["zd_l"] = mask_list(ann.zd_l);
        py::list per_element;
        for (const auto& mask : ann.ann_rm) per_element.append(mask_list(mask));
        d["ann_rm"] = per_element;
        return d;
    });
    m.def("trivial_ext_zero_divisor_check", [](const BimodulePtr& bim) {
        auto report = trivial_ext_zero_divisor_check(*bim);
        py::dict d;
        d["hypothesis_met"] = report.hypothesis_met;
        d["all_match"] = report.all_match;
        d["mismatches"] = py::int_(report.mismatches.size());
        return d;
    });
    m.def(
        "localize_ring",
        [](const RingPtr& ring, const std::vector<int>& denominators) {
            auto loc = localize_ring(ring, mask_from(denominators, ring->order()));
            py::dict d;
            d["ring"] = loc.ring;
            d["canonical_map"] = loc.canonical_map;
            d["class_reps"] = loc.class_reps;
            return d;
        },
        py::arg("ring"), py::arg("denominators"));
    m.def(
        "localize_module",
        [](const ModulePtr& mod, const std::vector<int>& denominators) {
            auto loc = localize_module(mod, mask_from(denominators, mod->ring().order()));
            py::dict d;
            d["module"] = loc.module;
            d["ring"] = loc.ring.ring;
            d["canonical_map"] = loc.canonical_map;
            d["ring_canonical_map"] = loc.ring.canonical_map;
            return d;
        },
        py::arg("module"), py::arg("denominators"));
    m.def("total_quotient", [](const ModulePtr& mod) {
        auto loc = total_quotient(mod);
        py::dict d;
        d["module"] = loc.module;
        d["ring"] = loc.ring.ring;
        d["denominators"] = mask_list(loc.ring.denominators);
        return d;
    });

    // Spec ingestion and reports.
    m.def("ring_from_spec", [](const std::string& text) { return build_ring_from_spec(parse_spec_text(text)); });
    m.def("module_from_spec",
          [](const std::string& text) { return build_module_from_spec(parse_spec_text(text)); });
    m.def(
        "ring_check_report", [](const RingPtr& ring) { return json_to_py(ring_check_report(*ring)); },
        py::arg("ring"));
    m.def(
        "module_classify_report",
        [](const ModulePtr& mod, bool witnesses) { return json_to_py(module_classify_report(*mod, witnesses)); },
        py::arg("module"), py::arg("witnesses") = false);

    // Theorem harness.
    m.def(
        "generate_corpus",
        [](int max_ring_order, int max_cyclic_order, int max_product_order, int max_trivext_order,
           int max_module_order, const std::vector<std::string>& families) {
            CorpusBudget budget;
            budget.max_ring_order = max_ring_order;
            budget.max_cyclic_order = max_cyclic_order;
            budget.max_product_order = max_product_order;
            budget.max_trivext_order = max_trivext_order;
            budget.max_module_order = max_module_order;
            budget.families = families;
            return generate_corpus(budget);
        },
        py::arg("max_ring_order") = 72, py::arg("max_cyclic_order") = 30, py::arg("max_product_order") = 72,
        py::arg("max_trivext_order") = 64, py::arg("max_module_order") = 72,
        py::arg("families") = std::vector<std::string>{});
    m.def("statement_names", []() {
        std::vector<std::string> names;
        for (int i = 0; i < kStatementCount; ++i) names.push_back(statement_name(StatementId(i)));
        return names;
    });
    m.def(
        "run_suite",
        [](const Corpus& corpus, const std::vector<std::string>& statements) {
            std::vector<StatementId> ids;
            if (statements.empty()) {
                for (int i = 0; i < kStatementCount; ++i) ids.push_back(StatementId(i));
            } else {
                for (const auto& name : statements) {
                    auto id = statement_from_name(name);
                    if (!id) throw input_error("unknown statement: " + name);
                    ids.push_back(*id);
                }
            }
            return json_to_py(theorem_report_to_json(run_suite(corpus, ids)));
        },
        py::arg("corpus"), py::arg("statements") = std::vector<std::string>{});
    m.def(
        "search_counterexample",
        [](const std::string& statement, const std::string& drop, const Corpus& corpus) {
            auto id = statement_from_name(statement);
            if (!id) throw input_error("unknown statement: " + statement);
            auto result = search_counterexample(*id, drop, corpus);
            py::dict d;
            d["found"] = result.found;
            d["instance"] = result.instance;
            d["explanation"] = result.explanation;
            return d;
        },
        py::arg("statement"), py::arg("drop") = "none", py::arg("corpus"));
    m.def("division_ring_probe", [](const RingPtr& ring) {
        auto probe = division_ring_probe(ring);
        py::dict d;
        d["verdict"] = verdict_name(probe.outcome.verdict);
        d["division"] = probe.ring_is_division;
        d["non_fusible_module"] =
            probe.non_fusible_module ? py::object(py::str(*probe.non_fusible_module)) : py::object(py::none());
        d["modules_checked"] = probe.modules_checked;
        return d;
    });
}
