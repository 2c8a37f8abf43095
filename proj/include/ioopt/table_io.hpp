// CSV structure tables and trajectory export.
//
// Table layout (row i lists what one unit of product i consumes):
//
//   product,Agriculture,Manufacturing
//   Agriculture,0.25,0.14
//   Manufacturing,0.4,0.12
//
// Numbers are read as exact decimals ("0.14" is 14/100); "p/q" fractions are
// accepted too so exact tables round-trip.
#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "ioopt/stability.hpp"

namespace ioopt {

/// Throws ParseError (with 1-based line/field) or IoError.
StructureMatrix parse_table(const std::filesystem::path& path);
StructureMatrix parse_table_text(std::string_view text);

std::string serialize_table(const StructureMatrix& a);

/// "step,label_1,...,label_d" then one row per step.
std::string trajectory_csv(const Trajectory& t, const std::vector<std::string>& labels);

/// Comma-separated exact numbers ("44.344,20").
std::vector<Rational> parse_exact_list(std::string_view text);
std::vector<double> parse_double_list(std::string_view text);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace ioopt
