#include "epsfree/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>

#include "epsfree/error.hpp"

namespace epsfree::io {

namespace {

int label_from_json(const json& v, const char* what) {
    if (!v.is_number_integer()) throw ValidationError(std::string(what) + " must be an integer");
    const auto label = v.get<long long>();
    if (label < 1) throw ValidationError(std::string(what) + " must be >= 1");
    return static_cast<int>(label - 1);
}

struct Entry {
    bool exact = true;
    GaussRational value;
    Complex approx;
};

Rational rational_from_scalar(const json& v, bool& exact, double& approx) {
    if (v.is_number_integer()) {
        const Rational r(v.get<long>());
        approx = r.get_d();
        return r;
    }
    if (v.is_number_float()) {
        approx = v.get<double>();
        if (std::isfinite(approx) && std::trunc(approx) == approx && std::abs(approx) < 0x1p53)
            return Rational(approx);
        exact = false;
        return Rational(0);
    }
    if (v.is_string()) {
        const Rational r = parse_rational(v.get<std::string>());
        approx = r.get_d();
        return r;
    }
    throw ValidationError("operand entry must be a number, a \"p/q\" string or a [re, im] pair");
}

Entry entry_from_json(const json& v) {
    Entry e;
    double re = 0;
    double im = 0;
    if (v.is_array()) {
        if (v.size() != 2) throw ValidationError("complex operand entry must be [re, im]");
        Rational r = rational_from_scalar(v[0], e.exact, re);
        Rational i = rational_from_scalar(v[1], e.exact, im);
        e.value = GaussRational(std::move(r), std::move(i));
    } else {
        e.value = GaussRational(rational_from_scalar(v, e.exact, re));
    }
    e.approx = Complex(re, im);
    return e;
}

}  // namespace

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

EpsilonMatrix epsilon_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rows")) throw ValidationError("epsilon file needs a \"rows\" array");
    std::vector<std::vector<int>> rows;
    for (const auto& row : j.at("rows")) {
        if (!row.is_array()) throw ValidationError("epsilon rows must be arrays");
        std::vector<int> r;
        for (const auto& v : row) {
            if (!v.is_number_integer()) throw ValidationError("epsilon entries must be 0 or 1");
            r.push_back(v.get<int>());
        }
        rows.push_back(std::move(r));
    }
    if (j.contains("n") && j.at("n").get<std::size_t>() != rows.size())
        throw ValidationError("epsilon \"n\" does not match the number of rows");
    return validate_epsilon(rows);
}

json to_json(const EpsilonMatrix& eps) { return {{"n", eps.size()}, {"rows", eps.rows()}}; }

LegAssignment assignment_from_json(const json& j) {
    if (!j.is_object() || !j.contains("strings") || !j.contains("legs"))
        throw ValidationError("assignment file needs \"strings\" and \"legs\"");
    const auto strings = j.at("strings").get<std::vector<std::string>>();
    std::map<int, std::vector<std::string>> by_family;
    for (const auto& [key, ids] : j.at("legs").items()) {
        int family = 0;
        const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), family);
        if (ec != std::errc() || ptr != key.data() + key.size() || family < 1)
            throw ValidationError("leg family key \"" + key + "\" is not a positive integer");
        by_family[family - 1] = ids.get<std::vector<std::string>>();
    }
    std::vector<std::vector<std::string>> legs;
    for (const auto& [family, ids] : by_family) {
        if (family != static_cast<int>(legs.size()))
            throw ValidationError("leg families must be numbered 1..n without gaps");
        legs.push_back(ids);
    }
    return LegAssignment(strings, legs);
}

json to_json(const LegAssignment& assignment) {
    json legs = json::object();
    for (int f = 0; f < assignment.num_families(); ++f) {
        json ids = json::array();
        for (int s : assignment.legs(f)) ids.push_back(assignment.strings()[static_cast<std::size_t>(s)]);
        legs[std::to_string(f + 1)] = ids;
    }
    return {{"strings", assignment.strings()}, {"legs", legs}};
}

Word word_from_json(const json& j) {
    if (!j.is_array()) throw ValidationError("word must be a JSON array of labels");
    std::vector<int> labels;
    for (const auto& v : j) labels.push_back(label_from_json(v, "word label"));
    return Word(labels);
}

json to_json(const Word& word) {
    json out = json::array();
    for (int label : word.labels()) out.push_back(label + 1);
    return out;
}

Permutation permutation_from_json(const json& j) {
    if (!j.is_array()) throw ValidationError("permutation must be a JSON image array");
    std::vector<int> images;
    for (const auto& v : j) images.push_back(label_from_json(v, "permutation image"));
    return Permutation(images);
}

json to_json(const Permutation& p) {
    json out = json::array();
    for (int x : p.images()) out.push_back(x + 1);
    return out;
}

json to_json(const CycleType& type) { return type.parts(); }

json to_json(const OrderedSubset& subset) {
    json out = json::array();
    for (int x : subset.elements()) out.push_back(x + 1);
    return out;
}

json rational_json(const Rational& value) { return to_string(value); }

json to_json(const WgTable& table) {
    json values = json::object();
    for (const auto& [type, value] : table.values) values[type.to_string()] = to_string(value);
    return {{"group", "unitary"}, {"k", table.k}, {"N", table.dimension}, {"values", values}};
}

json to_json(const OrthWgTable& table) {
    json values = json::object();
    for (const auto& [type, value] : table.by_type) values[type.to_string()] = to_string(value);
    return {{"group", "orthogonal"}, {"k", table.k}, {"N", table.dimension}, {"key", "coset_type"}, {"values", values}};
}

json to_json(const GaussRational& value) {
    return {{"re", to_string(value.real())}, {"im", to_string(value.imag())}, {"approx", to_json(value.to_complex())}};
}

json to_json(const Complex& value) { return json::array({value.real(), value.imag()}); }

OperandSet operands_from_json(const json& j) {
    if (!j.is_array()) throw ValidationError("operands file must be a JSON array");
    OperandSet set;
    for (const auto& item : j) {
        if (!item.is_object() || !item.contains("family") || !item.contains("rows"))
            throw ValidationError("each operand needs \"family\" and \"rows\"");
        const int family = label_from_json(item.at("family"), "operand family");
        const auto& rows = item.at("rows");
        const std::size_t n = rows.size();
        Matrix<GaussRational> ex(n, n);
        Matrix<Complex> fl(n, n);
        for (std::size_t r = 0; r < n; ++r) {
            if (!rows[r].is_array() || rows[r].size() != n) throw ValidationError("operand rows must form a square matrix");
            for (std::size_t c = 0; c < n; ++c) {
                const Entry e = entry_from_json(rows[r][c]);
                set.exact = set.exact && e.exact;
                ex(r, c) = e.value;
                fl(r, c) = e.approx;
            }
        }
        set.exact_operands.push_back({family, std::move(ex)});
        set.float_operands.push_back({family, std::move(fl)});
    }
    if (!set.exact) set.exact_operands.clear();
    return set;
}

json to_json(std::span<const ExactOperand> operands) {
    json out = json::array();
    for (const auto& op : operands) {
        json rows = json::array();
        for (std::size_t r = 0; r < op.local.rows(); ++r) {
            json row = json::array();
            for (std::size_t c = 0; c < op.local.cols(); ++c) {
                const auto& v = op.local(r, c);
                if (sgn(v.imag()) == 0)
                    row.push_back(to_string(v.real()));
                else
                    row.push_back(json::array({to_string(v.real()), to_string(v.imag())}));
            }
            rows.push_back(row);
        }
        out.push_back({{"family", op.family + 1}, {"rows", rows}});
    }
    return out;
}

json to_json(std::span<const FloatOperand> operands) {
    json out = json::array();
    for (const auto& op : operands) {
        json rows = json::array();
        for (std::size_t r = 0; r < op.local.rows(); ++r) {
            json row = json::array();
            for (std::size_t c = 0; c < op.local.cols(); ++c) row.push_back(to_json(op.local(r, c)));
            rows.push_back(row);
        }
        out.push_back({{"family", op.family + 1}, {"rows", rows}});
    }
    return out;
}

template <typename T>
json to_json(const MomentReport<T>& report) {
    json out = {{"value", to_json(report.value)},
                {"mode", to_string(report.mode)},
                {"stabilizer_size", report.stabilizer_size},
                {"terms", report.terms},
                {"geodesic_terms", report.geodesic_terms},
                {"convention", to_string(report.convention)}};
    out["N"] = report.n ? json(*report.n) : json(nullptr);
    return out;
}

template json to_json(const MomentReport<GaussRational>&);
template json to_json(const MomentReport<Complex>&);

json to_json(const McEstimate& estimate) {
    return {{"mode", "monte_carlo"},
            {"mean", to_json(estimate.mean)},
            {"stderr", estimate.std_error},
            {"trials", estimate.trials},
            {"trace", to_string(estimate.trace)}};
}

json to_json(const FixedPointResult& result) {
    json out = {{"ok", result.ok},
                {"stabilizer_size", result.stabilizer_size},
                {"noncrossing_elements", result.noncrossing_elements}};
    out["counterexample"] = result.counterexample ? to_json(*result.counterexample) : json(nullptr);
    return out;
}

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

namespace {

std::string format_complex(const std::optional<Complex>& v) {
    if (!v) return "";
    if (v->imag() == 0.0) return format_double(v->real());
    return format_double(v->real()) + (v->imag() < 0 ? "" : "+") + format_double(v->imag()) + "i";
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows) {
    out << kConvergenceHeader << '\n';
    for (const auto& r : rows)
        out << r.n << ',' << r.trials << ',' << format_double(r.mean.real()) << ',' << format_double(r.mean.imag())
            << ',' << format_double(r.std_error) << ',' << format_complex(r.exact_value) << ','
            << format_complex(r.asymptotic_value) << '\n';
}

json to_json(const ConvergenceRow& row) {
    json out = {{"N", row.n}, {"trials", row.trials}, {"mean", to_json(row.mean)}, {"stderr", row.std_error}};
    out["exact_value"] = row.exact_value ? to_json(*row.exact_value) : json(nullptr);
    out["asymptotic_value"] = row.asymptotic_value ? to_json(*row.asymptotic_value) : json(nullptr);
    return out;
}

}  // namespace epsfree::io
