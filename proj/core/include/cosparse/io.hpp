#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "cosparse/certify.hpp"
#include "cosparse/sensing.hpp"
#include "cosparse/signals.hpp"
#include "cosparse/solvers.hpp"

namespace cosparse::io {

/// Raised for unreadable or malformed input files.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest text that parses back to exactly `value`.
std::string format_double(double value);

// Dense matrices: header "# rows=<r> cols=<c> complex=1", then one line per
// row with each entry written as two adjacent columns "re,im".
void write_matrix_csv(std::ostream& out, const CMatrix& matrix);
CMatrix read_matrix_csv(std::istream& in);

// Signals: header "# n=<len> sample_rate=<r|none>", then one "re,im" line per
// sample.
void write_signal_csv(std::ostream& out, const Signal& signal);
Signal read_signal_csv(std::istream& in);

/// {"kind", "m", "n", "seed"}
std::string descriptor_to_json(const SensingDescriptor& descriptor);
SensingDescriptor descriptor_from_json(std::string_view text);

/// {method, n, d, m, eps, objective, feasibility, iterations, converged,
///  cone_slack, tube_norm, relative_error?, tail_lhs, tail_rhs, tail_holds}
/// in that order; diagnostics are null when no audit was attached.
std::string report_to_json(const RecoveryReport& report);

/// "# iteration,objective,feasibility" then one row per iteration.
void write_history_csv(std::ostream& out, const std::vector<IterationRecord>& history);

std::string estimate_to_json(const DripEstimate& estimate);
std::string constants_to_json(const ConstantsReport& constants);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace cosparse::io
