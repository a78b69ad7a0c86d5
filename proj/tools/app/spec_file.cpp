#include "spec_file.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace circgeo::app {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && end == s.data() + s.size() && !s.empty();
}

bool parse_interval(std::string_view s, Interval& out) {
  const auto comma = s.find(',');
  if (comma == std::string_view::npos) return false;
  return parse_double(s.substr(0, comma), out.first) && parse_double(s.substr(comma + 1), out.second);
}

struct Entry {
  std::string value;
  std::size_t line;
  std::size_t column;  // of the opening quote
};

}  // namespace

Box parse_box(std::string_view text) {
  Box box{};
  std::size_t k = 0;
  std::size_t start = 0;
  while (k < 3) {
    const auto semi = text.find(';', start);
    const auto part = text.substr(start, semi == std::string_view::npos ? std::string_view::npos : semi - start);
    if (!parse_interval(part, box[k]) || !(box[k].first < box[k].second))
      throw UsageError("parse_box", "expected \"lo,hi;lo,hi;lo,hi\" with lo < hi, got \"" +
                                        std::string(text) + "\"");
    ++k;
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  if (k != 3) throw UsageError("parse_box", "box needs three intervals");
  return box;
}

ManifoldSpec parse_spec(std::string_view text, std::string default_name) {
  std::map<std::string, std::map<std::string, Entry>> sections;
  std::vector<std::string> domain_order;
  std::string section;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    std::size_t i = 0;
    auto col = [&] { return i + 1; };
    auto skip_ws = [&] {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) ++i;
    };
    skip_ws();
    if (i == raw.size() || raw[i] == '#') continue;

    if (raw[i] == '[') {
      const auto close = raw.find(']', i);
      if (close == std::string_view::npos) throw SpecError(line_no, col(), "unterminated section header");
      section = std::string(trim(raw.substr(i + 1, close - i - 1)));
      if (section != "metric" && section != "domain" && section != "sample")
        throw SpecError(line_no, col() + 1, "unknown section [" + section + "]");
      i = close + 1;
      skip_ws();
      if (i < raw.size() && raw[i] != '#') throw SpecError(line_no, col(), "unexpected text after section header");
      continue;
    }

    const std::size_t key_start = i;
    while (i < raw.size() && (std::isalnum(static_cast<unsigned char>(raw[i])) || raw[i] == '_' || raw[i] == '-')) ++i;
    if (i == key_start) throw SpecError(line_no, col(), "expected a key");
    const std::string key(raw.substr(key_start, i - key_start));
    skip_ws();
    if (i == raw.size() || raw[i] != '=') throw SpecError(line_no, col(), "expected '=' after key '" + key + "'");
    ++i;
    skip_ws();
    if (i == raw.size() || raw[i] != '"') throw SpecError(line_no, col(), "expected a quoted string");
    const std::size_t quote_col = col();
    ++i;
    std::string value;
    bool closed = false;
    while (i < raw.size()) {
      const char c = raw[i++];
      if (c == '"') {
        closed = true;
        break;
      }
      if (c == '\\') {
        if (i == raw.size()) break;
        const char e = raw[i++];
        if (e != '"' && e != '\\') throw SpecError(line_no, i, std::string("unsupported escape '\\") + e + "'");
        value.push_back(e);
      } else {
        value.push_back(c);
      }
    }
    if (!closed) throw SpecError(line_no, quote_col, "unterminated string");
    skip_ws();
    if (i < raw.size() && raw[i] != '#') throw SpecError(line_no, col(), "unexpected text after value");

    auto& table = sections[section];
    if (table.count(key)) throw SpecError(line_no, key_start + 1, "duplicate key '" + key + "'");
    table[key] = Entry{value, line_no, quote_col};
    if (section == "domain") domain_order.push_back(key);
  }

  // Expression errors are reported at the column inside the file.
  auto expression = [](const Entry& e) {
    try {
      return ScalarFieldExpr::parse(e.value);
    } catch (const ParseError& pe) {
      throw SpecError(e.line, e.column + 1 + pe.offset(), "invalid expression: " + std::string(pe.what()));
    }
  };
  auto require = [&](const std::string& sec, const std::string& key) -> const Entry& {
    const auto s = sections.find(sec);
    if (s == sections.end() || !s->second.count(key))
      throw SpecError(line_no, 1, "missing required key '" + key + "' in [" + sec + "]");
    return s->second.at(key);
  };

  ManifoldSpec spec;
  spec.name = std::move(default_name);
  for (const auto& [key, entry] : sections[""]) {
    if (key != "name") throw SpecError(entry.line, 1, "unknown top-level key '" + key + "'");
    spec.name = entry.value;
  }
  for (const auto& [key, entry] : sections["metric"])
    if (key != "A" && key != "B") throw SpecError(entry.line, 1, "unknown key '" + key + "' in [metric]");

  spec.metric.A = expression(require("metric", "A"));
  spec.metric.B = expression(require("metric", "B"));
  for (const auto& key : domain_order) spec.metric.domain_constraints.push_back(expression(sections["domain"].at(key)));

  if (sections.count("sample")) {
    Box box{};
    for (std::size_t k = 0; k < 3; ++k) {
      const std::string key = "x" + std::to_string(k + 1);
      const Entry& e = require("sample", key);
      if (!parse_interval(e.value, box[k]) || !(box[k].first < box[k].second))
        throw SpecError(e.line, e.column, "expected \"lo, hi\" with lo < hi");
    }
    for (const auto& [key, entry] : sections["sample"])
      if (key != "x1" && key != "x2" && key != "x3")
        throw SpecError(entry.line, 1, "unknown key '" + key + "' in [sample]");
    spec.sample_box = box;
  }
  return spec;
}

ManifoldSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "load_spec", "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str(), path.stem().string());
}

ManifoldSpec example_m5_spec() { return parse_spec(kExampleM5Text); }

}  // namespace circgeo::app
