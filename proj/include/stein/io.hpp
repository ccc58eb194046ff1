#pragma once

// CSV samples and JSON parameter files.
//
// Parameter JSON: {"family": "fb"|"vmf"|"watson", "mu": [...],
//                  "A": [[...], ...] (fb), "kappa": x (vmf, watson)}.
// For vmf/watson, "mu" may be omitted when "d" is given; it then defaults
// to (1, ..., 1)/√d.

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "stein/models.hpp"
#include "stein/sample.hpp"

namespace stein {

using Json = nlohmann::json;

/// Throws DomainError on schema violations and invalid parameters.
Params params_from_json(const Json& j);
Json params_to_json(const Params& p);

Json vector_to_json(const Vector& v);
Json matrix_to_json(const Matrix& m);

/// Shortest round-trip text for a double (17 significant digits).
std::string format_double(double v);

/// One row per sample point, comma separated.
void write_csv(std::ostream& os, const Matrix& rows, bool header = false);
/// Reads numeric rows; a non-numeric first line is taken as a header.
/// Throws DomainError on ragged or non-numeric content.
Matrix read_csv(std::istream& is);

Json read_json_file(const std::string& path);

}  // namespace stein
