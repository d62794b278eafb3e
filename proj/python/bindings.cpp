#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "epsfree/error.hpp"
#include "epsfree/io.hpp"
#include "epsfree/verify.hpp"

namespace py = pybind11;
using namespace epsfree;
using io::json;

namespace {

CoverStrategy strategy_from(const std::string& name) {
    if (name == "max-cliques") return CoverStrategy::maximal_cliques;
    if (name == "greedy") return CoverStrategy::greedy;
    if (name == "edges-and-vertices") return CoverStrategy::edges_and_vertices;
    throw ValidationError("unknown strategy " + name);
}

std::string model(const std::string& eps_json, const std::string& strategy) {
    const auto eps = io::epsilon_from_json(json::parse(eps_json));
    const auto a = strategy == "model-a" ? model_a(eps) : model_b(eps, strategy_from(strategy));
    return io::to_json(a).dump();
}

std::string check_word(const std::string& word_json, const std::string& eps_json) {
    const auto word = io::word_from_json(json::parse(word_json));
    const auto eps = io::epsilon_from_json(json::parse(eps_json));
    json out = {{"in_I_eps", word_in_I_eps(word, eps)}};
    if (const auto w = reduction_witness(word, eps))
        out["witness"] = {{"j", w->first + 1}, {"l", w->second + 1}};
    else
        out["witness"] = nullptr;
    return out.dump();
}

std::string wg_table(int k, std::int64_t n, const std::string& group, bool allow_large) {
    if (group == "unitary") return io::to_json(unitary_wg_table(k, n, allow_large)).dump();
    if (group == "orthogonal") return io::to_json(orthogonal_wg_table(k, n, allow_large)).dump();
    throw ValidationError("group must be unitary or orthogonal");
}

std::string moment(const std::string& word_json, const std::string& assignment_json, const std::string& operands_json,
                   std::int64_t n, bool allow_large) {
    const auto word = io::word_from_json(json::parse(word_json));
    const auto as = io::assignment_from_json(json::parse(assignment_json));
    const auto ops = io::operands_from_json(json::parse(operands_json));
    const ExactOptions options{kTraceConvention, allow_large};
    if (ops.exact) {
        auto r = exact_moment<GaussRational>(word, as, ops.exact_operands, n, options);
        return io::to_json(r).dump();
    }
    auto r = exact_moment<Complex>(word, as, ops.float_operands, n, options);
    r.mode = MomentMode::floating;
    return io::to_json(r).dump();
}

std::string simulate(const std::string& word_json, const std::string& assignment_json,
                     const std::string& operands_json, std::int64_t n, std::uint64_t trials, std::uint64_t seed,
                     const std::string& group, int workers) {
    const auto word = io::word_from_json(json::parse(word_json));
    const auto as = io::assignment_from_json(json::parse(assignment_json));
    McOptions options;
    options.workers = workers;
    const Rng rng(seed);
    if (group == "gue") return io::to_json(mc_gue_moment(word, as, n, trials, rng, options)).dump();
    if (group != "unitary" && group != "orthogonal") throw ValidationError("group must be unitary, orthogonal or gue");
    const auto ops = io::operands_from_json(json::parse(operands_json));
    const auto g = group == "orthogonal" ? HaarGroup::orthogonal : HaarGroup::unitary;
    return io::to_json(mc_moment(word, as, ops.float_operands, n, trials, rng, g, options)).dump();
}

py::list run_criteria(const std::vector<int>& ids, std::uint64_t seed) {
    verify::Options options;
    options.seed = seed;
    std::vector<verify::CriterionResult> results;
    {
        py::gil_scoped_release release;
        results = verify::run_criteria(ids, options);
    }
    py::list out;
    for (const auto& r : results) {
        py::dict d;
        d["id"] = r.id;
        d["title"] = r.title;
        d["passed"] = r.passed;
        d["detail"] = r.detail;
        out.append(d);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_epsfree, m) {
    m.doc() = "JSON-level bindings; see the epsfree package for the Python API.";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<ResourceError>(m, "ResourceError", PyExc_MemoryError);
    py::register_exception<json::exception>(m, "JsonError", PyExc_ValueError);

    m.def("model", &model, py::arg("eps_json"), py::arg("strategy"));
    m.def("check_word", &check_word, py::arg("word_json"), py::arg("eps_json"));
    m.def("wg_table", &wg_table, py::arg("k"), py::arg("n"), py::arg("group"), py::arg("allow_large") = false);
    m.def("moment", &moment, py::arg("word_json"), py::arg("assignment_json"), py::arg("operands_json"), py::arg("n"),
          py::arg("allow_large") = false);
    m.def("simulate", &simulate, py::arg("word_json"), py::arg("assignment_json"), py::arg("operands_json"),
          py::arg("n"), py::arg("trials"), py::arg("seed"), py::arg("group"), py::arg("workers") = 1,
          py::call_guard<py::gil_scoped_release>());
    m.def("run_criteria", &run_criteria, py::arg("ids"), py::arg("seed") = verify::Options{}.seed);
    m.attr("criterion_count") = verify::kCriterionCount;
}
