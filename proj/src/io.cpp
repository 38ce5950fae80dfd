#include "hypokit/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hypokit {

std::string fmt17(double x) {
  if (x == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void dump_rec(const json& j, int indent, int depth, std::string& out) {
  const std::string pad = indent > 0 ? std::string(std::size_t(indent) * (depth + 1), ' ') : "";
  const std::string pad_end = indent > 0 ? std::string(std::size_t(indent) * depth, ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case json::value_t::number_float: {
      double x = j.get<double>();
      out += std::isfinite(x) ? fmt17(x) : "null";
      break;
    }
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        break;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad;
        out += json(it.key()).dump();
        out += indent > 0 ? ": " : ":";
        dump_rec(it.value(), indent, depth + 1, out);
      }
      out += nl;
      out += pad_end;
      out += "}";
      break;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        break;
      }
      // short arrays of scalars stay on one line
      bool flat = j.size() <= 4;
      for (const auto& e : j) flat = flat && !e.is_structured();
      out += "[";
      if (!flat) out += nl;
      bool first = true;
      for (const auto& e : j) {
        if (!first) {
          out += ",";
          if (flat && indent > 0) out += " ";
          if (!flat) out += nl;
        }
        first = false;
        if (!flat) out += pad;
        dump_rec(e, indent, depth + 1, out);
      }
      if (!flat) {
        out += nl;
        out += pad_end;
      }
      out += "]";
      break;
    }
    default:
      out += j.dump();
  }
}

double entry_real(const json& v) {
  if (!v.is_number()) throw InvalidEntryError("matrix entry is not a number");
  return v.get<double>();
}

}  // namespace

std::string dump_json(const json& j, int indent) {
  std::string out;
  dump_rec(j, indent, 0, out);
  return out;
}

json matrix_to_json(const Matrix& A) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index k = 0; k < A.cols(); ++k)
      entries.push_back(json::array({A(i, k).real(), A(i, k).imag()}));
  return json{{"n_rows", A.rows()}, {"n_cols", A.cols()}, {"entries", entries}};
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_object()) throw InvalidEntryError("matrix JSON must be an object");
  for (const char* key : {"n_rows", "n_cols", "entries"})
    if (!j.contains(key)) throw InvalidEntryError(std::string("matrix JSON lacks \"") + key + "\"");
  if (!j["n_rows"].is_number_integer() || !j["n_cols"].is_number_integer())
    throw InvalidEntryError("n_rows/n_cols must be integers");
  const long long r = j["n_rows"].get<long long>();
  const long long c = j["n_cols"].get<long long>();
  if (r <= 0 || c <= 0) throw DimensionError("n_rows and n_cols must be positive");
  const json& e = j["entries"];
  if (!e.is_array()) throw InvalidEntryError("entries must be an array");
  if (static_cast<long long>(e.size()) != r * c) {
    std::ostringstream os;
    os << "entries has " << e.size() << " values, expected " << r * c;
    throw DimensionError(os.str());
  }
  Matrix A(r, c);
  std::size_t idx = 0;
  for (long long i = 0; i < r; ++i)
    for (long long k = 0; k < c; ++k, ++idx) {
      const json& v = e[idx];
      if (v.is_array()) {
        if (v.size() != 2) throw InvalidEntryError("complex entry must be [re, im]");
        A(i, k) = cplx(entry_real(v[0]), entry_real(v[1]));
      } else {
        A(i, k) = cplx(entry_real(v), 0.0);
      }
    }
  require_finite(A, "matrix");
  return A;
}

json vector_to_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(json::array({v(i).real(), v(i).imag()}));
  return a;
}

Vector vector_from_json(const json& j) {
  if (!j.is_array()) throw InvalidEntryError("vector JSON must be an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& e = j[i];
    if (e.is_array()) {
      if (e.size() != 2) throw InvalidEntryError("complex entry must be [re, im]");
      v(Eigen::Index(i)) = cplx(entry_real(e[0]), entry_real(e[1]));
    } else {
      v(Eigen::Index(i)) = cplx(entry_real(e), 0.0);
    }
  }
  require_finite(v, "vector");
  return v;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot write " + path);
  out << text;
}

}  // namespace hypokit
