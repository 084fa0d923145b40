#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qsym/report/report.hpp"

namespace qsym::cli {

using nlohmann::json;

inline constexpr const char* kToolName = "qsym";
inline constexpr const char* kToolVersion = "1.0.0";

enum class ColumnKind { Integer, String, IntegerList };

struct Column {
  std::string key;
  ColumnKind kind;
};

// Columns of the emitted tables.
const std::vector<Column>& rigid_table_columns();
const std::vector<Column>& central_table_columns();
const std::vector<Column>& check_columns();

// Markdown pipe table of an array of flat objects. Integer lists render as "(1,2,3)";
// '|' and '\' are escaped.
std::string to_markdown(const std::vector<Column>& columns, const json& rows);
// Inverse of to_markdown. Lines that do not start with '|' are skipped, so a rendered
// document with headings parses back to its table.
json from_markdown(const std::vector<Column>& columns, std::string_view text);

// Checks as JSON objects {id, claim, status, witness}, plus elapsed_ms when timings are
// requested (timings make the output non-reproducible).
json checks_json(const report::VerificationReport& rep, bool timings);

}  // namespace qsym::cli
