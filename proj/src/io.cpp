#include "fermigap/io.hpp"

#include "fermigap/errors.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace fermigap {

namespace {

const Json& field(const Json& doc, const char* key) {
  if (!doc.is_object()) throw InputError("expected a JSON object");
  auto it = doc.find(key);
  if (it == doc.end()) throw InputError(std::string("missing field \"") + key + "\"");
  return *it;
}

int positive_int(const Json& doc, const char* key) {
  const Json& v = field(doc, key);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw InputError(std::string("field \"") + key + "\" must be a positive integer");
  }
  return v.get<int>();
}

std::vector<double> number_array(const Json& doc, const char* key,
                                 std::size_t expected) {
  const Json& v = field(doc, key);
  if (!v.is_array()) throw InputError(std::string("field \"") + key + "\" must be an array");
  if (v.size() != expected) {
    throw InputError(std::string("field \"") + key + "\" has " +
                     std::to_string(v.size()) + " entries, expected " +
                     std::to_string(expected));
  }
  std::vector<double> out;
  out.reserve(expected);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) {
      throw InputError(std::string("field \"") + key + "\" entry " +
                       std::to_string(i) + " is not a number");
    }
    out.push_back(v[i].get<double>());
  }
  return out;
}

Matrix square_from(const std::vector<double>& flat, int n) {
  Matrix m(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) m(j, k) = flat[static_cast<std::size_t>(j) * n + k];
  }
  return m;
}

Json flatten(const Matrix& m) {
  Json arr = Json::array();
  for (Eigen::Index j = 0; j < m.rows(); ++j) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) arr.push_back(m(j, k));
  }
  return arr;
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
  if (!out) throw InputError("write failed for " + path.string());
}

Json pair_to_json(const CoefficientPair& pair) {
  return {{"n", pair.n()}, {"a", flatten(pair.a())}, {"b", flatten(pair.b())}};
}

CoefficientPair pair_from_json(const Json& doc) {
  const int n = positive_int(doc, "n");
  const auto nn = static_cast<std::size_t>(n) * n;
  Matrix a = square_from(number_array(doc, "a", nn), n);
  Matrix b = square_from(number_array(doc, "b", nn), n);
  try {
    return CoefficientPair::from_parts(std::move(a), std::move(b));
  } catch (const DomainError& e) {
    throw InputError(e.what());
  }
}

Json w_to_json(const Matrix& w) {
  return {{"n", w.rows()}, {"w", flatten(w)}};
}

Matrix w_from_json(const Json& doc) {
  const int n = positive_int(doc, "n");
  Matrix w = square_from(number_array(doc, "w", static_cast<std::size_t>(n) * n), n);
  if (!w.allFinite()) throw InputError("field \"w\" has non-finite entries");
  return w;
}

Json structured_to_json(const StructuredSpec& spec) {
  return {{"kind", to_string(spec.kind())},
          {"dims", spec.dims()},
          {"a_root", spec.a_root()},
          {"b_root", spec.b_root()}};
}

bool is_structured_json(const Json& doc) {
  return doc.is_object() && doc.contains("kind");
}

StructuredSpec structured_from_json(const Json& doc) {
  const Json& kind_field = field(doc, "kind");
  if (!kind_field.is_string()) throw InputError("field \"kind\" must be a string");
  const auto kind = kind_field.get<std::string>();
  const Json& dims_field = field(doc, "dims");
  if (!dims_field.is_array()) throw InputError("field \"dims\" must be an array");
  std::vector<int> dims;
  std::size_t n = 1;
  for (const Json& d : dims_field) {
    if (!d.is_number_integer() || d.get<long long>() < 1 || d.get<long long>() > (1LL << 30)) {
      throw InputError("field \"dims\" must hold positive integers");
    }
    dims.push_back(d.get<int>());
    n *= static_cast<std::size_t>(dims.back());
  }
  const std::size_t expected_rank = kind == "circulant" ? 1 : kind == "bccb" ? 2
                                  : kind == "bc2cb"     ? 3 : 0;
  if (expected_rank == 0) {
    throw InputError("unknown lattice kind \"" + kind +
                     "\" (expected circulant, bccb or bc2cb)");
  }
  if (dims.size() != expected_rank) {
    throw InputError("kind " + kind + " needs " + std::to_string(expected_rank) +
                     " dims, got " + std::to_string(dims.size()));
  }
  auto a = number_array(doc, "a_root", n);
  auto b = number_array(doc, "b_root", n);
  try {
    switch (expected_rank) {
      case 1:
        return StructuredSpec::circulant(std::move(a), std::move(b));
      case 2:
        return StructuredSpec::bccb(dims[0], dims[1], std::move(a), std::move(b));
      default:
        return StructuredSpec::bc2cb(dims[0], dims[1], dims[2], std::move(a), std::move(b));
    }
  } catch (const DomainError& e) {
    throw InputError(e.what());
  } catch (const DimensionError& e) {
    throw InputError(e.what());
  }
}

Json gap_report_to_json(const GapReport& report) {
  return {{"gap", report.gap},
          {"ground_energy", report.ground_energy},
          {"degenerate", report.degenerate},
          {"num_zero_modes", report.num_zero_modes},
          {"tolerance", report.zero_tolerance}};
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace fermigap
