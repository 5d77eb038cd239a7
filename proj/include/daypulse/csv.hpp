#pragma once

#include <fstream>
#include <istream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace daypulse {

// RFC-4180 style reader: quoted fields may contain commas, escaped quotes
// and newlines. One call consumes one record.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(&in) {}
  explicit CsvReader(const std::string& path);  // throws if unreadable

  // next record, or nullopt at end of input
  std::optional<std::vector<std::string>> next();

 private:
  std::unique_ptr<std::ifstream> owned_;
  std::istream* in_;
};

std::string csv_escape(const std::string& field);

// joins fields with commas, quoting where needed, appends '\n'
std::string csv_row(const std::vector<std::string>& fields);

}  // namespace daypulse
