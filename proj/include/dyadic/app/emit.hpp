#pragma once

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace dyadic::app {

enum class Format { Csv, Json };

Format parse_format(const std::string& s);
const char* to_string(Format f);

/// Doubles print at 17 significant digits; strings carry exact rationals.
using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string format_double(double x);
std::string to_csv(const Table& t);
nlohmann::json to_json(const Table& t);
/// Pretty JSON with a trailing newline.
std::string dump_json(const nlohmann::json& j);

/// Writes bytes verbatim (LF line endings, no locale). Throws
/// std::runtime_error with the OS message on failure.
void write_file(const std::filesystem::path& path, const std::string& bytes);
/// Writes the table as `stem.csv` or `stem.json`; returns the file name.
std::string write_table(const std::filesystem::path& dir, const std::string& stem, const Table& t, Format f);
std::string write_json(const std::filesystem::path& dir, const std::string& name, const nlohmann::json& j);

}  // namespace dyadic::app
