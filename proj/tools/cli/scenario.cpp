#include "scenario.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <fstream>
#include <sstream>

namespace dispersion::app {

ParseError::ParseError(const std::string& message, int line, int column)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + message),
      message_(message),
      line_(line),
      column_(column) {}

const Entry* Section::find(const std::string& key) const {
  for (const auto& e : entries)
    if (e.key == key) return &e;
  return nullptr;
}

void Section::set(const std::string& key, const std::string& value) {
  for (auto& e : entries)
    if (e.key == key) {
      e.value = value;
      return;
    }
  entries.push_back(Entry{key, value, 0, 0});
}

const Section* Document::find(const std::string& kind, const std::string& name) const {
  for (const auto& s : sections)
    if (s.kind == kind && s.name == name) return &s;
  return nullptr;
}

Section* Document::find(const std::string& kind, const std::string& name) {
  for (auto& s : sections)
    if (s.kind == kind && s.name == name) return &s;
  return nullptr;
}

std::vector<const Section*> Document::all(const std::string& kind) const {
  std::vector<const Section*> out;
  for (const auto& s : sections)
    if (s.kind == kind) out.push_back(&s);
  return out;
}

Section& Document::require(const std::string& kind, const std::string& name) {
  if (Section* s = find(kind, name)) return *s;
  sections.push_back(Section{kind, name, 0, {}});
  return sections.back();
}

std::string Document::canonical() const {
  std::string out;
  for (std::size_t i = 0; i < sections.size(); ++i) {
    const Section& s = sections[i];
    if (i) out += '\n';
    out += '[' + s.kind + (s.name.empty() ? "" : " " + s.name) + "]\n";
    for (const auto& e : s.entries) out += e.key + " = " + e.value + '\n';
  }
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

namespace {

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.'))
      return false;
  return true;
}

// Strips an unquoted trailing comment introduced by " #" or " ;".
std::string strip_comment(const std::string& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    if ((s[i] == '#' || s[i] == ';') && (i == 0 || s[i - 1] == ' ' || s[i - 1] == '\t'))
      return s.substr(0, i);
  return s;
}

}  // namespace

Document parse_document(const std::string& text) {
  Document doc;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  Section* current = nullptr;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = strip_comment(raw);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const int col = static_cast<int>(first) + 1;
    if (line[first] == '[') {
      const auto close = line.find(']', first);
      if (close == std::string::npos)
        throw ParseError("unterminated section header", line_no, col);
      if (!trim(line.substr(close + 1)).empty())
        throw ParseError("unexpected text after section header", line_no,
                         static_cast<int>(close) + 2);
      const std::string inner = trim(line.substr(first + 1, close - first - 1));
      const auto space = inner.find_first_of(" \t");
      Section s;
      s.kind = inner.substr(0, space);
      s.name = space == std::string::npos ? "" : trim(inner.substr(space));
      s.line = line_no;
      if (!valid_identifier(s.kind))
        throw ParseError("invalid section name '" + s.kind + "'", line_no, col + 1);
      if (!s.name.empty() && !valid_identifier(s.name))
        throw ParseError("invalid section label '" + s.name + "'", line_no, col + 1);
      if (doc.find(s.kind, s.name))
        throw ParseError("duplicate section [" + inner + "]", line_no, col);
      doc.sections.push_back(std::move(s));
      current = &doc.sections.back();
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected 'key = value'", line_no, col);
    if (!current) throw ParseError("entry outside of any section", line_no, col);
    Entry e;
    e.key = trim(line.substr(0, eq));
    if (!valid_identifier(e.key)) throw ParseError("invalid key", line_no, col);
    if (current->find(e.key))
      throw ParseError("duplicate key '" + e.key + "'", line_no, col);
    const auto vstart = line.find_first_not_of(" \t", eq + 1);
    e.value = trim(line.substr(eq + 1));
    e.line = line_no;
    e.column = static_cast<int>(vstart == std::string::npos ? eq + 1 : vstart) + 1;
    if (e.value.empty()) throw ParseError("missing value for '" + e.key + "'", line_no, e.column);
    current->entries.push_back(std::move(e));
  }
  return doc;
}

Document parse_scenario_text(const std::string& text) {
  if (text.rfind("# dispersion", 0) != 0) return parse_document(text);
  // Table header: the scenario sits between "# scenario:" and "# end".
  std::istringstream in(text);
  std::string line, body;
  bool inside = false;
  int skipped = 0;
  while (std::getline(in, line)) {
    if (!inside) {
      ++skipped;
      if (line == "# scenario:") inside = true;
      continue;
    }
    if (line == "# end") return parse_document(body);
    if (line.rfind("# ", 0) == 0)
      body += line.substr(2);
    else if (line == "#")
      body += "";
    else
      throw ParseError("malformed embedded scenario", skipped + 1, 1);
    body += '\n';
  }
  throw ParseError("table header has no embedded scenario block", 1, 1);
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

double as_double(const Entry& e) {
  double v = 0.0;
  const char* b = e.value.data();
  const char* end = b + e.value.size();
  const auto [p, ec] = std::from_chars(b, end, v);
  if (ec != std::errc() || p != end) {
    if (e.value == "inf" || e.value == "infinity") return std::numeric_limits<double>::infinity();
    throw ParseError("'" + e.key + "' expects a number, got '" + e.value + "'", e.line,
                     e.column);
  }
  return v;
}

long as_integer(const Entry& e) {
  long v = 0;
  const char* b = e.value.data();
  const char* end = b + e.value.size();
  const auto [p, ec] = std::from_chars(b, end, v);
  if (ec != std::errc() || p != end)
    throw ParseError("'" + e.key + "' expects an integer, got '" + e.value + "'", e.line,
                     e.column);
  return v;
}

bool as_bool(const Entry& e) {
  if (e.value == "true" || e.value == "yes" || e.value == "1") return true;
  if (e.value == "false" || e.value == "no" || e.value == "0") return false;
  throw ParseError("'" + e.key + "' expects true or false", e.line, e.column);
}

std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

}  // namespace dispersion::app
