#pragma once

// Tabular report output: CSV with 17 significant digits and JSON with the
// same column names.

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace angdil::cli {

/// Empty cell, number, boolean or text.
using Cell = std::variant<std::monostate, double, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

std::string format_number(double x);
std::string to_csv(const Table& table);
/// Array of objects keyed by column name; empty cells and non-finite numbers become null.
nlohmann::json to_json(const Table& table);

/// Writes `text` to `path`; throws std::runtime_error naming the path on failure.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace angdil::cli
