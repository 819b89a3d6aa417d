#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "symplan/value_solver.hpp"

namespace symplan {

/// Formats a double with 17 significant digits (round-trips exactly).
std::string format_double(double v);

/// Writes the table as a single JSON document. Numbers use 17 significant
/// digits so reading the file back reproduces every coefficient bit for bit.
/// A non-null provenance object is stored under "provenance".
void write_value_table(std::ostream& out, const ValueTable& table,
                       const nlohmann::json& provenance = nullptr);
void write_value_table_file(const std::string& path, const ValueTable& table,
                            const nlohmann::json& provenance = nullptr);

/// Throws std::runtime_error on malformed documents.
ValueTable read_value_table(std::istream& in);
ValueTable read_value_table_file(const std::string& path);

}  // namespace symplan
