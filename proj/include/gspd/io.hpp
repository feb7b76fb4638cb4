#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>

#include "gspd/linalg.hpp"
#include "gspd/matgen.hpp"

namespace gspd {

/// Shortest decimal string that parses back to exactly x ("nan", "inf" for
/// non-finite values).
std::string format_double(double x);
/// Full-string parse; IoError on trailing garbage or empty input.
double parse_double(std::string_view text);
long long parse_int(std::string_view text);

enum class MatrixMarketLayout { Auto, Coordinate, Array };

/// Writes m as "real symmetric" Matrix Market, lower triangle in
/// column-major order. Auto picks coordinate when at most half of the lower
/// triangle is nonzero, array otherwise.
void write_matrix_market(std::ostream& out, const SymMatrix& m,
                         MatrixMarketLayout layout = MatrixMarketLayout::Auto);
/// Reads coordinate or array, real or integer, symmetric or general (general
/// input must be exactly symmetric). IoError on malformed input.
SymMatrix read_matrix_market(std::istream& in);

void save_matrix_market(const std::string& path, const SymMatrix& m,
                        MatrixMarketLayout layout = MatrixMarketLayout::Auto);
SymMatrix load_matrix_market(const std::string& path);

/// Ordered "key = value" sidecar; '#' starts a comment.
using Manifest = std::map<std::string, std::string>;

void write_manifest(std::ostream& out, const Manifest& manifest);
Manifest read_manifest(std::istream& in);

/// Manifest entries describing how a result was generated.
Manifest describe_result(const SpdResult& result, const SimConfig& cfg,
                         const std::string& graph_ref);

}  // namespace gspd
