#include "hfactor/matrix_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace hfactor {

nlohmann::ordered_json matrix_to_json(const SquareMatrix& m) {
  nlohmann::ordered_json j;
  j["n"] = m.dim();
  j["field"] = m.is_real() ? "real" : "complex";
  nlohmann::ordered_json data = nlohmann::ordered_json::array();
  for (Eigen::Index r = 0; r < m.dim(); ++r) {
    for (Eigen::Index c = 0; c < m.dim(); ++c) {
      const Complex v = m.values()(r, c);
      if (m.is_real()) {
        data.push_back(v.real());
      } else {
        data.push_back(nlohmann::ordered_json::array({v.real(), v.imag()}));
      }
    }
  }
  j["data"] = std::move(data);
  return j;
}

SquareMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("field") ||
      !j.contains("data")) {
    throw ParseError("matrix JSON must contain 'n', 'field' and 'data'");
  }
  const auto n = j.at("n").get<Eigen::Index>();
  if (n <= 0) throw ParseError("matrix dimension must be positive");
  const std::string field_name = j.at("field").get<std::string>();
  Field field;
  if (field_name == "real") {
    field = Field::Real;
  } else if (field_name == "complex") {
    field = Field::Complex;
  } else {
    throw ParseError("matrix field must be 'real' or 'complex'");
  }
  const auto& data = j.at("data");
  if (!data.is_array() ||
      data.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw ParseError("matrix data must hold n*n entries in row-major order");
  }
  ComplexMatrix m(n, n);
  std::size_t idx = 0;
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c, ++idx) {
      const auto& e = data[idx];
      if (e.is_number()) {
        m(r, c) = Complex(e.get<double>(), 0.0);
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() &&
                 e[1].is_number()) {
        m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        throw ParseError("matrix entries must be numbers or [re, im] pairs");
      }
    }
  }
  if (field == Field::Real && !m.imag().isZero(0.0)) {
    throw ParseError("matrix tagged 'real' carries nonzero imaginary parts");
  }
  return SquareMatrix::from_values(m, field);
}

SquareMatrix read_matrix_market(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) {
    throw ParseError("Matrix Market: empty input");
  }
  std::istringstream hs(header);
  std::string banner, object, format, scalar, symmetry;
  hs >> banner >> object >> format >> scalar >> symmetry;
  auto lower = [](std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
  };
  if (banner != "%%MatrixMarket" || lower(object) != "matrix") {
    throw ParseError("Matrix Market: missing %%MatrixMarket matrix banner");
  }
  if (lower(format) != "array") {
    throw ParseError("Matrix Market: only the dense array format is accepted");
  }
  const std::string sc = lower(scalar);
  if (sc != "real" && sc != "complex" && sc != "integer") {
    throw ParseError("Matrix Market: scalar type must be real, integer or "
                     "complex");
  }
  if (lower(symmetry) != "general") {
    throw ParseError("Matrix Market: only general symmetry is accepted");
  }

  std::string line;
  Eigen::Index rows = 0, cols = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '%') continue;
    std::istringstream ls(line);
    if (!(ls >> rows >> cols)) {
      throw ParseError("Matrix Market: malformed size line");
    }
    break;
  }
  if (rows <= 0 || cols <= 0) throw ParseError("Matrix Market: bad dimensions");
  if (rows != cols) throw ParseError("Matrix Market: matrix must be square");

  ComplexMatrix m(rows, cols);
  const bool complex_entries = sc == "complex";
  // Array format stores entries column-major.
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      double re = 0.0, im = 0.0;
      if (!(in >> re)) throw ParseError("Matrix Market: missing entries");
      if (complex_entries && !(in >> im)) {
        throw ParseError("Matrix Market: missing imaginary part");
      }
      m(r, c) = Complex(re, im);
    }
  }
  return SquareMatrix::from_values(
      m, complex_entries ? Field::Complex : Field::Real);
}

SquareMatrix read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open matrix file: " + path.string());
  const std::string ext = path.extension().string();
  if (ext == ".mtx") return read_matrix_market(in);
  if (ext == ".json") {
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("invalid JSON in " + path.string() + ": " + e.what());
    }
    return matrix_from_json(j);
  }
  // Unknown extension: sniff the first non-space character.
  char first = 0;
  in >> std::ws;
  in.get(first);
  in.seekg(0);
  if (first == '%') return read_matrix_market(in);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("unrecognized matrix format in " + path.string());
  }
  return matrix_from_json(j);
}

void write_matrix(const std::filesystem::path& path, const SquareMatrix& m) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write matrix file: " + path.string());
  out << matrix_to_json(m).dump(2) << "\n";
}

}  // namespace hfactor
