#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "cosparse/io.hpp"

namespace cosparse::io {
namespace {

double parse_double(std::string_view token) {
  while (!token.empty() && (token.front() == ' ' || token.front() == '\t')) token.remove_prefix(1);
  while (!token.empty() && (token.back() == ' ' || token.back() == '\t' || token.back() == '\r')) {
    token.remove_suffix(1);
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError("not a number: '" + std::string(token) + "'");
  }
  return value;
}

std::vector<double> parse_row(const std::string& line) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= line.size()) {
    const std::size_t comma = line.find(',', start);
    const std::size_t stop = comma == std::string::npos ? line.size() : comma;
    values.push_back(parse_double(std::string_view(line).substr(start, stop - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return values;
}

/// Value of `key=` in a "# a=1 b=2" header line.
std::string header_field(const std::string& header, const std::string& key) {
  std::istringstream words(header.substr(1));
  std::string word;
  while (words >> word) {
    if (word.rfind(key + "=", 0) == 0) return word.substr(key.size() + 1);
  }
  throw ParseError("header is missing '" + key + "=': " + header);
}

Index header_index(const std::string& header, const std::string& key) {
  const std::string text = header_field(header, key);
  Index value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value < 0) {
    throw ParseError("header field '" + key + "' is not a non-negative integer: " + text);
  }
  return value;
}

std::string read_header(std::istream& in) {
  std::string header;
  if (!std::getline(in, header) || header.empty() || header[0] != '#') {
    throw ParseError("expected a '#' header line");
  }
  return header;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

void write_matrix_csv(std::ostream& out, const CMatrix& matrix) {
  out << "# rows=" << matrix.rows() << " cols=" << matrix.cols() << " complex=1\n";
  for (Index i = 0; i < matrix.rows(); ++i) {
    for (Index j = 0; j < matrix.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_double(matrix(i, j).real()) << ',' << format_double(matrix(i, j).imag());
    }
    out << '\n';
  }
}

CMatrix read_matrix_csv(std::istream& in) {
  const std::string header = read_header(in);
  const Index rows = header_index(header, "rows");
  const Index cols = header_index(header, "cols");
  if (header_field(header, "complex") != "1") throw ParseError("only complex=1 matrices are supported");
  CMatrix m(rows, cols);
  std::string line;
  for (Index i = 0; i < rows; ++i) {
    if (!std::getline(in, line)) throw ParseError("matrix ends after " + std::to_string(i) + " rows");
    const std::vector<double> values = parse_row(line);
    if (static_cast<Index>(values.size()) != 2 * cols) {
      throw ParseError("row " + std::to_string(i) + " has " + std::to_string(values.size()) +
                       " fields, expected " + std::to_string(2 * cols));
    }
    for (Index j = 0; j < cols; ++j) {
      m(i, j) = Complex(values[static_cast<std::size_t>(2 * j)],
                        values[static_cast<std::size_t>(2 * j + 1)]);
    }
  }
  return m;
}

void write_signal_csv(std::ostream& out, const Signal& signal) {
  out << "# n=" << signal.size() << " sample_rate="
      << (signal.sample_rate ? format_double(*signal.sample_rate) : std::string("none")) << '\n';
  for (Index i = 0; i < signal.size(); ++i) {
    out << format_double(signal.samples[i].real()) << ',' << format_double(signal.samples[i].imag())
        << '\n';
  }
}

Signal read_signal_csv(std::istream& in) {
  const std::string header = read_header(in);
  const Index n = header_index(header, "n");
  Signal s;
  const std::string rate = header_field(header, "sample_rate");
  if (rate != "none") s.sample_rate = parse_double(rate);
  s.samples.resize(n);
  std::string line;
  for (Index i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw ParseError("signal ends after " + std::to_string(i) + " samples");
    const std::vector<double> values = parse_row(line);
    if (values.size() != 2) {
      throw ParseError("sample " + std::to_string(i) + " must be 're,im'");
    }
    s.samples[i] = Complex(values[0], values[1]);
  }
  return s;
}

void write_history_csv(std::ostream& out, const std::vector<IterationRecord>& history) {
  out << "# iteration,objective,feasibility\n";
  for (std::size_t k = 0; k < history.size(); ++k) {
    out << (k + 1) << ',' << format_double(history[k].objective) << ','
        << format_double(history[k].feasibility) << '\n';
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

}  // namespace cosparse::io
