#include "stein/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "stein/errors.hpp"

namespace stein {
namespace {

Vector json_vector(const Json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw DomainError(std::string(what) + " must be a non-empty array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw DomainError(std::string(what) + " must contain numbers");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

Matrix json_matrix(const Json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw DomainError(std::string(what) + " must be a 2-D array");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  Matrix m;
  for (std::size_t i = 0; i < rows; ++i) {
    const Vector r = json_vector(j[i], what);
    if (i == 0) {
      cols = static_cast<std::size_t>(r.size());
      m.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    } else if (static_cast<std::size_t>(r.size()) != cols) {
      throw DomainError(std::string(what) + " rows have different lengths");
    }
    m.row(static_cast<Eigen::Index>(i)) = r.transpose();
  }
  return m;
}

double json_number(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw DomainError(std::string("parameter JSON: '") + key + "' must be a number");
  return j[key].get<double>();
}

Vector direction(const Json& j) {
  if (j.contains("mu")) return json_vector(j["mu"], "mu");
  if (j.contains("d") && j["d"].is_number_integer()) {
    const int d = j["d"].get<int>();
    if (d < 2) throw DomainError("parameter JSON: d must be at least 2");
    return Vector::Constant(d, 1.0 / std::sqrt(static_cast<double>(d)));
  }
  throw DomainError("parameter JSON: 'mu' (or 'd') is required");
}

}  // namespace

Params params_from_json(const Json& j) {
  if (!j.is_object()) throw DomainError("parameter JSON must be an object");
  if (!j.contains("family") || !j["family"].is_string())
    throw DomainError("parameter JSON: 'family' is required");
  Params p;
  switch (parse_family(j["family"].get<std::string>())) {
    case Family::fb: {
      if (!j.contains("mu")) throw DomainError("parameter JSON: fb requires 'mu'");
      if (!j.contains("A")) throw DomainError("parameter JSON: fb requires 'A'");
      p = FisherBinghamParams{json_vector(j["mu"], "mu"), json_matrix(j["A"], "A")};
      break;
    }
    case Family::vmf: p = VmfParams{direction(j), json_number(j, "kappa")}; break;
    case Family::watson: p = WatsonParams{direction(j), json_number(j, "kappa")}; break;
  }
  validate(p);
  return p;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(vector_to_json(m.row(i).transpose()));
  return out;
}

Json params_to_json(const Params& p) {
  Json out;
  out["family"] = family_name(family_of(p));
  switch (family_of(p)) {
    case Family::fb: {
      const auto& f = std::get<FisherBinghamParams>(p);
      out["mu"] = vector_to_json(f.mu);
      out["A"] = matrix_to_json(f.A);
      break;
    }
    case Family::vmf: {
      const auto& v = std::get<VmfParams>(p);
      out["mu"] = vector_to_json(v.mu);
      out["kappa"] = v.kappa;
      break;
    }
    case Family::watson: {
      const auto& w = std::get<WatsonParams>(p);
      out["mu"] = vector_to_json(w.mu);
      out["kappa"] = w.kappa;
      break;
    }
  }
  return out;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const Matrix& rows, bool header) {
  if (header) {
    for (Eigen::Index j = 0; j < rows.cols(); ++j) os << (j ? ",x" : "x") << j + 1;
    os << '\n';
  }
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    for (Eigen::Index j = 0; j < rows.cols(); ++j) {
      if (j) os << ',';
      os << format_double(rows(i, j));
    }
    os << '\n';
  }
}

Matrix read_csv(std::istream& is) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || cell.find_first_not_of(" \t", static_cast<std::size_t>(end - cell.c_str())) != std::string::npos) {
        numeric = false;
        break;
      }
      row.push_back(v);
    }
    if (!numeric) {
      if (rows.empty() && line_no == 1) continue;  // header
      throw DomainError("csv: non-numeric value on line " + std::to_string(line_no));
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw DomainError("csv: line " + std::to_string(line_no) + " has " +
                        std::to_string(row.size()) + " columns, expected " +
                        std::to_string(rows.front().size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DomainError("csv: no data rows");
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return m;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw DomainError("invalid JSON in '" + path + "': " + e.what());
  }
}

}  // namespace stein
