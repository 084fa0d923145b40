#include "qsym/cli/render.hpp"

#include <charconv>
#include <stdexcept>

namespace qsym::cli {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '\\' || c == '|') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out;
}

long parse_integer(std::string_view s) {
  long v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::invalid_argument("expected an integer cell, got '" + std::string(s) + "'");
  return v;
}

std::string render_cell(const Column& col, const json& v) {
  switch (col.kind) {
    case ColumnKind::Integer:
      return std::to_string(v.get<long>());
    case ColumnKind::String:
      return escape(v.get<std::string>());
    case ColumnKind::IntegerList: {
      std::string s = "(";
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i].get<long>());
      return s + ")";
    }
  }
  throw std::logic_error("unknown column kind");
}

json parse_cell(const Column& col, const std::string& cell) {
  switch (col.kind) {
    case ColumnKind::Integer:
      return parse_integer(cell);
    case ColumnKind::String:
      return cell;
    case ColumnKind::IntegerList: {
      if (cell.size() < 2 || cell.front() != '(' || cell.back() != ')')
        throw std::invalid_argument("expected a parenthesized list, got '" + cell + "'");
      json out = json::array();
      std::string_view body(cell.data() + 1, cell.size() - 2);
      while (!body.empty()) {
        auto comma = body.find(',');
        out.push_back(parse_integer(body.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        body.remove_prefix(comma + 1);
      }
      return out;
    }
  }
  throw std::logic_error("unknown column kind");
}

// Splits "| a | b\|c |" into unescaped, trimmed cells.
std::vector<std::string> split_row(std::string_view line) {
  std::vector<std::string> cells;
  std::string cur;
  bool open = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (c == '\\' && i + 1 < line.size()) {
      char n = line[++i];
      cur += n == 'n' ? '\n' : n;
      continue;
    }
    if (c == '|') {
      if (open) cells.push_back(cur);
      cur.clear();
      open = true;
      continue;
    }
    cur += c;
  }
  for (auto& s : cells) {
    // cells are rendered as "| value |"; strip exactly the padding spaces
    if (!s.empty() && s.front() == ' ') s.erase(0, 1);
    if (!s.empty() && s.back() == ' ') s.pop_back();
  }
  return cells;
}

}  // namespace

const std::vector<Column>& rigid_table_columns() {
  static const std::vector<Column> cols{{"n", ColumnKind::Integer},    {"q", ColumnKind::IntegerList},
                                        {"k", ColumnKind::Integer},    {"r", ColumnKind::Integer},
                                        {"kbar", ColumnKind::Integer}, {"status", ColumnKind::String}};
  return cols;
}

const std::vector<Column>& central_table_columns() {
  static const std::vector<Column> cols{
      {"row", ColumnKind::Integer}, {"set", ColumnKind::String}, {"k", ColumnKind::Integer}, {"status", ColumnKind::String}};
  return cols;
}

const std::vector<Column>& check_columns() {
  static const std::vector<Column> cols{{"id", ColumnKind::String},
                                        {"status", ColumnKind::String},
                                        {"claim", ColumnKind::String},
                                        {"witness", ColumnKind::String}};
  return cols;
}

std::string to_markdown(const std::vector<Column>& columns, const json& rows) {
  std::string out = "|";
  for (const auto& c : columns) out += " " + c.key + " |";
  out += "\n|";
  for (std::size_t i = 0; i < columns.size(); ++i) out += " --- |";
  out += "\n";
  for (const auto& row : rows) {
    out += "|";
    for (const auto& c : columns) out += " " + render_cell(c, row.at(c.key)) + " |";
    out += "\n";
  }
  return out;
}

json from_markdown(const std::vector<Column>& columns, std::string_view text) {
  json rows = json::array();
  bool header_seen = false, separator_seen = false;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (line.empty() || line.front() != '|') continue;
    auto cells = split_row(line);
    if (cells.size() != columns.size()) throw std::invalid_argument("markdown row has the wrong number of cells");
    if (!header_seen) {
      for (std::size_t i = 0; i < cells.size(); ++i)
        if (cells[i] != columns[i].key) throw std::invalid_argument("unexpected markdown header '" + cells[i] + "'");
      header_seen = true;
      continue;
    }
    if (!separator_seen) {
      separator_seen = true;
      continue;
    }
    json row = json::object();
    for (std::size_t i = 0; i < cells.size(); ++i) row[columns[i].key] = parse_cell(columns[i], cells[i]);
    rows.push_back(std::move(row));
  }
  return rows;
}

json checks_json(const report::VerificationReport& rep, bool timings) {
  json out = json::array();
  for (const auto& c : rep.checks) {
    json j = {{"id", c.id}, {"claim", c.claim}, {"status", report::to_string(c.status)}, {"witness", c.witness}};
    if (timings) j["elapsed_ms"] = c.elapsed_ms;
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace qsym::cli
