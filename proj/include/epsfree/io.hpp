#pragma once

// JSON and CSV forms of the library's data. Labels, positions and
// permutation images are 1-based in every external format.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "epsfree/epsmodel.hpp"
#include "epsfree/moments.hpp"
#include "epsfree/randmat.hpp"
#include "epsfree/weingarten.hpp"

namespace epsfree::io {

using nlohmann::json;

/// Parses a file as JSON; ValidationError on I/O or syntax errors.
json read_json_file(const std::string& path);

/// {"n": int, "rows": [[0/1, ...], ...]}
EpsilonMatrix epsilon_from_json(const json& j);
json to_json(const EpsilonMatrix& eps);

/// {"strings": [id, ...], "legs": {"1": [id, ...], ...}} with families 1..n.
LegAssignment assignment_from_json(const json& j);
json to_json(const LegAssignment& assignment);

/// [label, ...], 1-based.
Word word_from_json(const json& j);
json to_json(const Word& word);

/// One-line image array [p(1), ..., p(k)], 1-based.
Permutation permutation_from_json(const json& j);
json to_json(const Permutation& p);
json to_json(const CycleType& type);
json to_json(const OrderedSubset& subset);

json to_json(const WgTable& table);
json to_json(const OrthWgTable& table);

json rational_json(const Rational& value);
json to_json(const GaussRational& value);
json to_json(const Complex& value);

/// [{"family": 1-based, "rows": [[entry, ...], ...]}, ...]. An entry is an
/// integer, a rational string "p/q", a float, or a [re, im] pair of those.
struct OperandSet {
    /// True when no entry is a non-integral JSON float.
    bool exact = true;
    std::vector<ExactOperand> exact_operands;
    std::vector<FloatOperand> float_operands;
};
OperandSet operands_from_json(const json& j);
json to_json(std::span<const ExactOperand> operands);
json to_json(std::span<const FloatOperand> operands);

template <typename T>
json to_json(const MomentReport<T>& report);
extern template json to_json(const MomentReport<GaussRational>&);
extern template json to_json(const MomentReport<Complex>&);

json to_json(const McEstimate& estimate);
json to_json(const FixedPointResult& result);

/// Convergence table row; exact/asymptotic columns are left empty when absent.
struct ConvergenceRow {
    std::int64_t n = 0;
    std::uint64_t trials = 0;
    Complex mean{};
    double std_error = 0.0;
    std::optional<Complex> exact_value;
    std::optional<Complex> asymptotic_value;
};
inline constexpr const char* kConvergenceHeader = "N,trials,mean_re,mean_im,stderr,exact_value,asymptotic_value";
void write_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows);
json to_json(const ConvergenceRow& row);

/// Shortest round-trip decimal for a double.
std::string format_double(double value);

}  // namespace epsfree::io
