#pragma once

// Line-oriented scenario documents:
//
//   [section]            or   [section name]
//   key = value
//   # comment, ; comment
//
// No nesting beyond one level. Parsing keeps source positions so that later
// resolution errors can point at the offending value.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dispersion::app {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int column);
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string message_;
  int line_;
  int column_;
};

struct Entry {
  std::string key;
  std::string value;
  int line = 0;
  int column = 0;  // column of the first character of the value
};

struct Section {
  std::string kind;  // e.g. "material"
  std::string name;  // e.g. "gold"; empty for anonymous sections
  int line = 0;
  std::vector<Entry> entries;

  const Entry* find(const std::string& key) const;
  // Replaces the value of `key` or appends it.
  void set(const std::string& key, const std::string& value);
};

class Document {
 public:
  std::vector<Section> sections;

  const Section* find(const std::string& kind, const std::string& name = {}) const;
  Section* find(const std::string& kind, const std::string& name = {});
  std::vector<const Section*> all(const std::string& kind) const;
  Section& require(const std::string& kind, const std::string& name = {});

  // Normalized text: comments and blank lines dropped, "key = value" with one
  // space around '=', sections in original order separated by blank lines.
  std::string canonical() const;
};

Document parse_document(const std::string& text);

// Accepts either a scenario file or a table written by the tool, in which
// case the embedded scenario block of the metadata header is used.
Document parse_scenario_text(const std::string& text);

std::string read_file(const std::string& path);

// Typed value access with positioned errors.
double as_double(const Entry& e);
long as_integer(const Entry& e);
bool as_bool(const Entry& e);
std::vector<std::string> split_list(const std::string& s, char sep);
std::string trim(const std::string& s);

}  // namespace dispersion::app
