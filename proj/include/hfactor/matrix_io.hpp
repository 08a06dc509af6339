#ifndef HFACTOR_MATRIX_IO_HPP
#define HFACTOR_MATRIX_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "hfactor/types.hpp"

namespace hfactor {

/// JSON matrix schema: {"n": int, "field": "real"|"complex",
/// "data": row-major array of numbers or [re, im] pairs}.
nlohmann::ordered_json matrix_to_json(const SquareMatrix& m);
SquareMatrix matrix_from_json(const nlohmann::json& j);

/// Matrix Market array format (real or complex, general), column-major.
SquareMatrix read_matrix_market(std::istream& in);

/// Reads .json or .mtx by extension; content is sniffed when the extension
/// is unknown.
SquareMatrix read_matrix(const std::filesystem::path& path);
void write_matrix(const std::filesystem::path& path, const SquareMatrix& m);

}  // namespace hfactor

#endif  // HFACTOR_MATRIX_IO_HPP
