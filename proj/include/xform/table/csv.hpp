#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "xform/table/cell.hpp"

namespace xform {

using CsvRecord = std::vector<std::string>;

/// RFC-4180 reader: `"` quoting with `""` escapes, `\n` or `\r\n` record ends.
/// Lines with no bytes at all are skipped; write `""` for an empty value.
/// Throws MalformedCsv on unbalanced quotes or invalid UTF-8.
std::vector<CsvRecord> parse_csv(std::string_view text);

std::string write_csv(const std::vector<CsvRecord>& records);

struct CsvOptions {
  std::size_t column = 0;
  bool header = false;
};

Column load_column_file(const std::filesystem::path& path, const CsvOptions& options = {});

/// Two fields per record, source then target. Throws WrongArity otherwise.
std::vector<ExamplePair> load_example_file(const std::filesystem::path& path, bool header = false);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace xform
