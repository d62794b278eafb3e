// epsfree: command-line front end.
//
// Exit codes: 0 ok, 1 validation error, 2 verification failure, 3 resource cap.
// Errors are reported on stderr as {"error": {"kind": ..., "message": ...}}.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "epsfree/epsmodel.hpp"
#include "epsfree/error.hpp"
#include "epsfree/io.hpp"
#include "epsfree/moments.hpp"
#include "epsfree/randmat.hpp"
#include "epsfree/verify.hpp"
#include "epsfree/weingarten.hpp"

namespace {

using namespace epsfree;
using io::json;

constexpr std::uint64_t kDefaultSeed = 20240611;

struct VerificationFailure : std::runtime_error {
    json report;
    explicit VerificationFailure(json r) : std::runtime_error("verification failed"), report(std::move(r)) {}
};

struct Config {
    std::string eps_path;
    std::string assignment_path;
    std::string word_path;
    std::string operands_path;
    std::string powers_path;
    std::vector<std::int64_t> ns;
    std::uint64_t trials = 0;
    std::optional<std::uint64_t> seed;
    std::string group = "unitary";
    std::string strategy = "max-cliques";
    std::string phi = "deterministic";
    std::string inputs = "operands";
    std::string out;
    std::string format = "json";
    int workers = 1;
    int k = 0;
    bool allow_large = false;
    std::vector<int> criteria;
};

void require_path(const std::string& path, const char* flag) {
    if (path.empty()) throw ValidationError(std::string("missing required flag ") + flag);
}

std::int64_t single_n(const Config& c) {
    if (c.ns.size() != 1) throw ValidationError("this subcommand takes exactly one --n");
    return c.ns.front();
}

HaarGroup parse_group(const std::string& g) {
    if (g == "unitary") return HaarGroup::unitary;
    if (g == "orthogonal") return HaarGroup::orthogonal;
    throw ValidationError("--group must be unitary or orthogonal");
}

CoverStrategy parse_strategy(const std::string& s) {
    if (s == "max-cliques") return CoverStrategy::maximal_cliques;
    if (s == "greedy") return CoverStrategy::greedy;
    if (s == "model-a" || s == "edges-and-vertices") return CoverStrategy::edges_and_vertices;
    throw ValidationError("--strategy must be model-a, max-cliques, greedy or edges-and-vertices");
}

std::string cycles_1based(const Permutation& p) { return p.to_string(); }

McOptions mc_options(const Config& c) {
    McOptions mo;
    mo.workers = c.workers;
    mo.allow_large = c.allow_large;
    return mo;
}

// model ---------------------------------------------------------------------

json cmd_model(const Config& c) {
    require_path(c.eps_path, "--eps");
    const auto eps = io::epsilon_from_json(io::read_json_file(c.eps_path));
    const auto assignment =
        c.strategy == "model-a" ? model_a(eps) : model_b(eps, parse_strategy(c.strategy));
    if (epsilon_of(assignment) != eps) throw std::logic_error("model does not recover epsilon");
    return io::to_json(assignment);
}

// check-word ----------------------------------------------------------------

json cmd_check_word(const Config& c) {
    require_path(c.word_path, "--word");
    require_path(c.eps_path, "--eps");
    const auto eps = io::epsilon_from_json(io::read_json_file(c.eps_path));
    const auto word = io::word_from_json(io::read_json_file(c.word_path));
    if (word.max_label() >= eps.size()) throw ValidationError("word label exceeds the epsilon size");
    const auto witness = reduction_witness(word, eps);
    const std::string space = "I^eps_" + std::to_string(word.size());
    json out = {{"word", io::to_json(word)}, {"in_I_eps", !witness}};
    out["verdict"] = witness ? "not in " + space : "in " + space;
    out["witness"] = witness ? json{{"j", witness->first + 1}, {"l", witness->second + 1}} : json(nullptr);
    return out;
}

// wg ------------------------------------------------------------------------

json cmd_wg(const Config& c) {
    if (c.ns.empty()) throw ValidationError("missing required flag --n");
    const auto group = parse_group(c.group);
    json tables = json::array();
    for (auto n : c.ns) {
        if (group == HaarGroup::unitary) {
            json t = io::to_json(unitary_wg_table(c.k, n, c.allow_large));
            json mu = json::object();
            for (const auto& type : integer_partitions(c.k)) mu[type.to_string()] = mobius_mu(type);
            t["mobius_mu"] = mu;
            tables.push_back(t);
        } else {
            tables.push_back(io::to_json(orthogonal_wg_table(c.k, n, c.allow_large)));
        }
    }
    return tables.size() == 1 ? tables[0] : tables;
}

// moment --------------------------------------------------------------------

struct Inputs {
    Word word;
    LegAssignment assignment;
};

Inputs read_inputs(const Config& c) {
    require_path(c.word_path, "--word");
    require_path(c.assignment_path, "--assignment");
    return {io::word_from_json(io::read_json_file(c.word_path)),
            io::assignment_from_json(io::read_json_file(c.assignment_path))};
}

io::OperandSet read_operands(const Config& c) {
    require_path(c.operands_path, "--operands");
    return io::operands_from_json(io::read_json_file(c.operands_path));
}

json cmd_moment(const Config& c) {
    const auto in = read_inputs(c);
    const auto ops = read_operands(c);
    const auto n = single_n(c);
    ExactOptions options;
    options.allow_large = c.allow_large;
    if (ops.exact) return io::to_json(exact_moment<GaussRational>(in.word, in.assignment, ops.exact_operands, n, options));
    json out = io::to_json(exact_moment<Complex>(in.word, in.assignment, ops.float_operands, n, options));
    out["precision"] = "double; float operands carry rounding error";
    return out;
}

// asymptotic ----------------------------------------------------------------

template <typename T>
LimitFunctional<T> make_phi(const Config& c, const std::vector<Operand<T>>& ops) {
    if (c.phi == "deterministic") return deterministic_functional<T>(ops);
    if (c.phi == "semicircular") return semicircular_functional<T>();
    if (c.phi == "haar-unitary") {
        require_path(c.powers_path, "--powers");
        return haar_unitary_functional<T>(io::read_json_file(c.powers_path).get<std::vector<int>>());
    }
    throw ValidationError("--phi must be deterministic, semicircular or haar-unitary");
}

json cmd_asymptotic(const Config& c) {
    const auto in = read_inputs(c);
    if (c.phi != "deterministic") {
        const auto r = asymptotic_moment<GaussRational>(in.word, in.assignment, make_phi<GaussRational>(c, {}));
        json out = io::to_json(r);
        out["phi"] = c.phi;
        return out;
    }
    const auto ops = read_operands(c);
    json out;
    if (ops.exact) {
        out = io::to_json(asymptotic_moment<GaussRational>(in.word, in.assignment, make_phi(c, ops.exact_operands)));
    } else {
        out = io::to_json(asymptotic_moment<Complex>(in.word, in.assignment, make_phi(c, ops.float_operands)));
    }
    out["phi"] = c.phi;
    return out;
}

// simulate ------------------------------------------------------------------

std::vector<io::ConvergenceRow> simulate_rows(const Config& c, const Inputs& in) {
    if (!c.seed) throw ValidationError("simulate needs --seed");
    if (c.ns.empty()) throw ValidationError("missing required flag --n");
    const Rng rng(*c.seed);
    const std::uint64_t trials = c.trials ? c.trials : 10'000;
    std::vector<io::ConvergenceRow> rows;
    if (c.inputs == "gue") {
        const auto limit = asymptotic_moment<Complex>(in.word, in.assignment, semicircular_functional<Complex>()).value;
        for (auto n : c.ns) {
            const auto est = mc_gue_moment(in.word, in.assignment, n, trials, rng, mc_options(c));
            rows.push_back({n, est.trials, est.mean, est.std_error, std::nullopt, limit});
        }
        return rows;
    }
    if (c.inputs != "operands") throw ValidationError("--inputs must be operands or gue");
    const auto ops = read_operands(c);
    const auto n = single_n(c);
    const auto est = mc_moment(in.word, in.assignment, ops.float_operands, n, trials, rng, parse_group(c.group),
                               mc_options(c));
    std::optional<Complex> exact;
    if (parse_group(c.group) == HaarGroup::unitary) {
        ExactOptions eo;
        eo.allow_large = c.allow_large;
        exact = ops.exact
                    ? exact_moment<GaussRational>(in.word, in.assignment, ops.exact_operands, n, eo).value.to_complex()
                    : exact_moment<Complex>(in.word, in.assignment, ops.float_operands, n, eo).value;
    }
    const auto limit =
        asymptotic_moment<Complex>(in.word, in.assignment, deterministic_functional<Complex>(ops.float_operands)).value;
    rows.push_back({n, est.trials, est.mean, est.std_error, exact, limit});
    return rows;
}

// example -------------------------------------------------------------------

json cmd_example(const Config& c, std::vector<io::ConvergenceRow>& csv_rows) {
    const auto eps = verify::example_epsilon();
    const auto word = verify::example_word();
    const auto assignment = verify::example_assignment();
    const auto g = complement_graph(eps);

    json edges = json::array();
    for (auto [i, j] : g.edges()) edges.push_back({i + 1, j + 1});

    json strings = json::array();
    const auto js = j_sets(word, assignment);
    for (int s = 0; s < assignment.num_strings(); ++s) {
        json families = json::array();
        for (int f = 0; f < assignment.num_families(); ++f)
            if (assignment.has_leg(f, s)) families.push_back(f + 1);
        const auto& J = js[static_cast<std::size_t>(s)];
        strings.push_back({{"string", assignment.strings()[static_cast<std::size_t>(s)]},
                           {"families", families},
                           {"J", io::to_json(J)},
                           {"k", J.size()},
                           {"Z", cycles_1based(induced_full_cycle(J, word.size()))}});
    }

    const auto stabilizer = enumerate_block_stabilizer(word.blocks());
    json stab = json::array();
    for (const auto& p : stabilizer) {
        json restricted = json::object();
        for (int s = 0; s < assignment.num_strings(); ++s)
            restricted[assignment.strings()[static_cast<std::size_t>(s)]] =
                cycles_1based(restrict(p, js[static_cast<std::size_t>(s)]).extended());
        stab.push_back({{"sigma", cycles_1based(p)}, {"restrictions", restricted}});
    }

    const auto fp = fixed_point_verify(word, assignment);
    const auto limit = asymptotic_moment<Complex>(word, assignment, semicircular_functional<Complex>()).value;

    json exact_study = json::array();
    const std::vector<std::int64_t> exact_ns = c.ns.empty() ? std::vector<std::int64_t>{2, 3, 4, 5, 6} : c.ns;
    for (auto n : exact_ns) {
        const auto centered = exact_moment<GaussRational>(word, assignment, verify::example_operands(n, true), n);
        const auto nearly = exact_moment<GaussRational>(word, assignment, verify::example_operands(n, false), n);
        exact_study.push_back({{"N", n},
                               {"traceless", io::to_json(centered.value)},
                               {"singletons_tr_1_over_d", io::to_json(nearly.value)}});
    }

    json gue_study = json::array();
    const Rng rng(c.seed.value_or(kDefaultSeed));
    const std::uint64_t trials = c.trials ? c.trials : 200;
    for (std::int64_t n : {2, 4, 8, 16}) {
        McOptions mo = mc_options(c);
        // Dense chains on 4096 x 4096 are needlessly slow; probes are unbiased.
        if (full_dimension(assignment.num_strings(), n) > 512) mo.trace = TraceMode::stochastic, mo.probes = 8;
        const auto est = mc_gue_moment(word, assignment, n, trials, rng, mo);
        json row = io::to_json(io::ConvergenceRow{n, est.trials, est.mean, est.std_error, std::nullopt, limit});
        row["trace"] = to_string(est.trace);
        gue_study.push_back(row);
        csv_rows.push_back({n, est.trials, est.mean, est.std_error, std::nullopt, limit});
    }

    return {{"epsilon", io::to_json(eps)},
            {"complement_edges", edges},
            {"maximal_anti_cliques", assignment.strings()},
            {"assignment", io::to_json(assignment)},
            {"word", io::to_json(word)},
            {"in_I_eps", word_in_I_eps(word, eps)},
            {"strings", strings},
            {"stabilizer", stab},
            {"fixed_point", io::to_json(fp)},
            {"semicircular_limit", io::to_json(limit)},
            {"exact_study", exact_study},
            {"gue_study", gue_study},
            {"seed", c.seed.value_or(kDefaultSeed)}};
}

// verify --------------------------------------------------------------------

json cmd_verify(const Config& c) {
    verify::Options options;
    options.seed = c.seed.value_or(kDefaultSeed);
    options.workers = c.workers;
    options.ns = c.ns;
    if (c.trials) options.trials = c.trials;
    std::vector<int> ids = c.criteria;
    if (ids.empty())
        for (int id = 1; id <= verify::kCriterionCount; ++id) ids.push_back(id);
    json criteria = json::array();
    bool all = true;
    for (const auto& r : verify::run_criteria(ids, options)) {
        all = all && r.passed;
        criteria.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}});
    }
    json report = {{"passed", all}, {"seed", options.seed}, {"criteria", criteria}};
    if (!all) throw VerificationFailure(report);
    return report;
}

// output --------------------------------------------------------------------

void emit(const Config& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out);
    if (!f) throw ValidationError("cannot write " + c.out);
    f << text;
}

std::string render_json(const json& j) { return j.dump(2) + "\n"; }

std::string render_csv(const std::vector<io::ConvergenceRow>& rows) {
    std::ostringstream s;
    io::write_csv(s, rows);
    return s.str();
}

int fail(const char* kind, const std::string& message, int code, const json& extra = nullptr) {
    json err = {{"error", {{"kind", kind}, {"message", message}}}};
    if (!extra.is_null()) err["report"] = extra;
    std::cerr << err.dump() << '\n';
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"epsilon-independent tensor random matrix models: construction, exact and asymptotic moments, "
                 "Monte Carlo checks"};
    app.require_subcommand(1);
    Config c;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", c.out, "Output path (default stdout)");
    };
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", c.format, "json or csv (convergence rows)")->check(CLI::IsMember({"json", "csv"}));
    };
    auto add_inputs = [&](CLI::App* sub) {
        sub->add_option("--word", c.word_path, "Word file (JSON array of 1-based labels)");
        sub->add_option("--assignment", c.assignment_path, "Leg assignment file");
    };
    auto add_mc = [&](CLI::App* sub) {
        sub->add_option("--trials", c.trials, "Monte Carlo trials");
        sub->add_option("--seed", c.seed, "Master seed");
        sub->add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);
    };

    auto* model = app.add_subcommand("model", "Leg assignment realizing an epsilon matrix");
    model->add_option("--eps", c.eps_path, "Epsilon file");
    model->add_option("--strategy", c.strategy, "model-a, max-cliques, greedy or edges-and-vertices")
        ->check(CLI::IsMember({"model-a", "max-cliques", "greedy", "edges-and-vertices"}));
    add_common(model);

    auto* check = app.add_subcommand("check-word", "Membership of a word in I^eps");
    check->add_option("--word", c.word_path, "Word file");
    check->add_option("--eps", c.eps_path, "Epsilon file");
    add_common(check);

    auto* wg = app.add_subcommand("wg", "Weingarten table");
    wg->add_option("--k", c.k, "Order")->required();
    wg->add_option("--n", c.ns, "Dimension (repeatable)");
    wg->add_option("--group", c.group, "unitary or orthogonal");
    wg->add_flag("--allow-large", c.allow_large, "Lift the default order bound");
    add_common(wg);

    auto* moment = app.add_subcommand("moment", "Exact expected trace at finite N");
    add_inputs(moment);
    moment->add_option("--operands", c.operands_path, "Operands file");
    moment->add_option("--n", c.ns, "Dimension N");
    moment->add_flag("--allow-large", c.allow_large, "Lift the default Weingarten order bound");
    add_common(moment);

    auto* asym = app.add_subcommand("asymptotic", "Large-N limit of the expected trace");
    add_inputs(asym);
    asym->add_option("--phi", c.phi, "deterministic, semicircular or haar-unitary")
        ->check(CLI::IsMember({"deterministic", "semicircular", "haar-unitary"}));
    asym->add_option("--operands", c.operands_path, "Operands file (deterministic phi)");
    asym->add_option("--powers", c.powers_path, "Exponent per position (haar-unitary phi)");
    add_common(asym);

    auto* sim = app.add_subcommand("simulate", "Monte Carlo estimate");
    add_inputs(sim);
    sim->add_option("--operands", c.operands_path, "Operands file (operands inputs)");
    sim->add_option("--inputs", c.inputs, "operands (Haar-conjugated) or gue")
        ->check(CLI::IsMember({"operands", "gue"}));
    sim->add_option("--n", c.ns, "Dimension (repeatable for gue inputs)");
    sim->add_option("--group", c.group, "unitary or orthogonal");
    sim->add_flag("--allow-large", c.allow_large, "Use the stochastic trace above the dimension cap");
    add_mc(sim);
    add_common(sim);
    add_format(sim);

    auto* ver = app.add_subcommand("verify", "Run the acceptance campaign");
    ver->add_option("--n", c.ns, "Restrict exact-vs-Monte-Carlo cases to these N (repeatable)");
    ver->add_option("--criteria", c.criteria, "Criterion ids to run (default all)")->delimiter(',');
    add_mc(ver);
    add_common(ver);

    auto* ex = app.add_subcommand("example", "Worked 5-family example end to end");
    ex->add_option("--n", c.ns, "Dimensions for the exact decay study (repeatable)");
    add_mc(ex);
    add_common(ex);
    add_format(ex);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("validation", e.what(), 1);
    }

    try {
        const bool csv = c.format == "csv";
        if (model->parsed()) {
            emit(c, render_json(cmd_model(c)));
        } else if (check->parsed()) {
            emit(c, render_json(cmd_check_word(c)));
        } else if (wg->parsed()) {
            emit(c, render_json(cmd_wg(c)));
        } else if (moment->parsed()) {
            emit(c, render_json(cmd_moment(c)));
        } else if (asym->parsed()) {
            emit(c, render_json(cmd_asymptotic(c)));
        } else if (sim->parsed()) {
            const auto in = read_inputs(c);
            const auto rows = simulate_rows(c, in);
            if (csv) {
                emit(c, render_csv(rows));
            } else {
                json out = json::array();
                for (const auto& r : rows) out.push_back(io::to_json(r));
                emit(c, render_json({{"group", c.inputs == "gue" ? "gue" : c.group},
                                     {"seed", *c.seed},
                                     {"rows", out}}));
            }
        } else if (ver->parsed()) {
            emit(c, render_json(cmd_verify(c)));
        } else if (ex->parsed()) {
            std::vector<io::ConvergenceRow> rows;
            const json out = cmd_example(c, rows);
            emit(c, csv ? render_csv(rows) : render_json(out));
        }
    } catch (const VerificationFailure& e) {
        emit(c, render_json(e.report));
        return fail("verification", e.what(), 2, e.report);
    } catch (const ResourceError& e) {
        return fail("resource", e.what(), 3);
    } catch (const ValidationError& e) {
        return fail("validation", e.what(), 1);
    } catch (const json::exception& e) {
        return fail("validation", e.what(), 1);
    } catch (const std::exception& e) {
        return fail("internal", e.what(), 1);
    }
    return 0;
}
