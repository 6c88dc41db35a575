#include "qgeom/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include "json.hpp"
#include <sstream>

#include "qgeom/errors.hpp"

namespace qgeom {
namespace {

using nlohmann::json;

void append_pair(std::string& out, cplx z) {
  out += '[';
  out += format_double(z.real());
  out += ',';
  out += format_double(z.imag());
  out += ']';
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(),
                     "byte " + std::to_string(e.byte));
  } catch (const json::out_of_range& e) {
    // number overflow, e.g. 1e999; locate the literal quoted in the message
    const std::string msg = e.what();
    const auto open = msg.find('\''), close = msg.rfind('\'');
    std::string where = "number";
    if (open != std::string::npos && close > open) {
      const auto at = text.find(msg.substr(open + 1, close - open - 1));
      if (at != std::string_view::npos) where = "byte " + std::to_string(at);
    }
    throw ParseError("non-finite number: " + msg, where);
  }
}

double read_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ParseError("expected a number", path);
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ParseError("non-finite number", path);
  return x;
}

cplx read_pair(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) throw ParseError("expected [re, im] pair", path);
  return {read_number(v[0], path + "[0]"), read_number(v[1], path + "[1]")};
}

// Returns (dim, row-major entries) for rows of `cols(n)` pairs each.
template <class Cols>
std::pair<std::size_t, std::vector<cplx>> read_grid(std::string_view text, Cols cols) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("expected a JSON object", "$");
  if (!doc.contains("dim") || !doc["dim"].is_number_integer() || doc["dim"].get<long long>() < 1)
    throw ParseError("\"dim\" must be a positive integer", "dim");
  if (!doc.contains("data") || !doc["data"].is_array()) throw ParseError("missing \"data\" array", "data");
  const auto n = static_cast<std::size_t>(doc["dim"].get<long long>());
  const json& rows = doc["data"];
  if (rows.size() != n) {
    throw ParseError("expected " + std::to_string(n) + " rows, got " + std::to_string(rows.size()),
                     "data");
  }
  const std::size_t width = cols(n);
  std::vector<cplx> entries;
  entries.reserve(n * width);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string row_path = "data[" + std::to_string(i) + "]";
    const json& row = rows[i];
    if (!row.is_array() || row.size() != width) {
      throw ParseError("row must hold " + std::to_string(width) + " [re, im] pairs", row_path);
    }
    for (std::size_t j = 0; j < width; ++j)
      entries.push_back(read_pair(row[j], row_path + "[" + std::to_string(j) + "]"));
  }
  return {n, std::move(entries)};
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string serialize_matrix(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  std::string out = "{\"dim\":" + std::to_string(n) + ",\"data\":[";
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out += ',';
    out += '[';
    for (std::size_t j = 0; j < n; ++j) {
      if (j) out += ',';
      append_pair(out, m(i, j));
    }
    out += ']';
  }
  out += "]}";
  return out;
}

ComplexMatrix parse_matrix(std::string_view text) {
  auto [n, entries] = read_grid(text, [](std::size_t dim) { return dim; });
  return ComplexMatrix(n, std::move(entries));
}

std::string serialize_state(const StateVector& v) {
  std::string out = "{\"dim\":" + std::to_string(v.dim()) + ",\"data\":[";
  for (std::size_t k = 0; k < v.dim(); ++k) {
    if (k) out += ',';
    out += '[';
    append_pair(out, v[k]);
    out += ']';
  }
  out += "]}";
  return out;
}

StateVector parse_state(std::string_view text) {
  auto [n, entries] = read_grid(text, [](std::size_t) { return std::size_t{1}; });
  (void)n;
  return StateVector(std::move(entries));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace qgeom
