#include "xform/table/csv.hpp"

#include <fstream>
#include <sstream>

#include "xform/error.hpp"
#include "xform/table/utf8.hpp"

namespace xform {

std::vector<CsvRecord> parse_csv(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  if (!utf8::is_valid(text)) throw Error(ErrorCode::MalformedCsv, "input is not valid UTF-8");

  std::vector<CsvRecord> records;
  CsvRecord record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  bool closed_quote = false;
  bool record_has_bytes = false;
  std::size_t line = 1;

  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
    closed_quote = false;
  };
  auto end_record = [&] {
    if (record_has_bytes) {
      end_field();
      records.push_back(std::move(record));
    }
    record.clear();
    field.clear();
    field_started = false;
    closed_quote = false;
    record_has_bytes = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
          closed_quote = true;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field_started) {
          throw Error(ErrorCode::MalformedCsv, "stray quote inside unquoted field on line " + std::to_string(line));
        }
        in_quotes = true;
        field_started = true;
        record_has_bytes = true;
        break;
      case ',':
        end_field();
        record_has_bytes = true;
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') break;
        if (closed_quote) throw Error(ErrorCode::MalformedCsv, "text after closing quote on line " + std::to_string(line));
        field.push_back(c);
        field_started = record_has_bytes = true;
        break;
      case '\n':
        end_record();
        ++line;
        break;
      default:
        // Text after a closing quote, e.g. "a"b, is malformed.
        if (closed_quote) {
          throw Error(ErrorCode::MalformedCsv, "text after closing quote on line " + std::to_string(line));
        }
        field.push_back(c);
        field_started = record_has_bytes = true;
    }
  }
  if (in_quotes) throw Error(ErrorCode::MalformedCsv, "unbalanced quote starting before line " + std::to_string(line));
  end_record();
  return records;
}

std::string write_csv(const std::vector<CsvRecord>& records) {
  std::string out;
  for (const auto& rec : records) {
    for (std::size_t k = 0; k < rec.size(); ++k) {
      if (k > 0) out.push_back(',');
      const std::string& f = rec[k];
      const bool quote = f.empty() || f.find_first_of(",\"\r\n") != std::string::npos || f.front() == ' ' ||
                         f.back() == ' ';
      if (!quote) {
        out += f;
        continue;
      }
      out.push_back('"');
      for (char c : f) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
      }
      out.push_back('"');
    }
    out.push_back('\n');
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::IoError, "read failed for " + path.string());
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

Column load_column_file(const std::filesystem::path& path, const CsvOptions& options) {
  auto records = parse_csv(read_text_file(path));
  Column out;
  for (std::size_t r = options.header ? 1 : 0; r < records.size(); ++r) {
    if (records[r].size() <= options.column) {
      throw Error(ErrorCode::WrongArity, path.string() + ": record " + std::to_string(r + 1) + " has no column " +
                                             std::to_string(options.column));
    }
    out.emplace_back(std::move(records[r][options.column]));
  }
  return out;
}

std::vector<ExamplePair> load_example_file(const std::filesystem::path& path, bool header) {
  auto records = parse_csv(read_text_file(path));
  std::vector<ExamplePair> out;
  for (std::size_t r = header ? 1 : 0; r < records.size(); ++r) {
    if (records[r].size() != 2) {
      throw Error(ErrorCode::WrongArity, path.string() + ": record " + std::to_string(r + 1) + " has " +
                                             std::to_string(records[r].size()) + " fields, expected 2");
    }
    out.emplace_back(std::move(records[r][0]), std::move(records[r][1]));
  }
  return out;
}

}  // namespace xform
