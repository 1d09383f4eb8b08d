#include "dicke/toml_lite.hpp"

#include <cctype>
#include <charconv>
#include <limits>

#include "dicke/errors.hpp"

namespace dicke::toml {
namespace {

struct Cursor {
  std::string_view s;
  std::size_t pos = 0;
  int line = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError("config line " + std::to_string(line) + ": " + msg);
  }
  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= s.size() || s[pos] == '#';
  }
  char peek() const { return pos < s.size() ? s[pos] : '\0'; }
};

std::string parse_string(Cursor& c) {
  const char quote = c.peek();
  ++c.pos;
  std::string out;
  while (c.pos < c.s.size() && c.s[c.pos] != quote) {
    char ch = c.s[c.pos++];
    if (quote == '"' && ch == '\\') {
      if (c.pos >= c.s.size()) c.fail("unterminated escape");
      const char e = c.s[c.pos++];
      switch (e) {
        case 'n': ch = '\n'; break;
        case 't': ch = '\t'; break;
        case '"': ch = '"'; break;
        case '\\': ch = '\\'; break;
        default: c.fail(std::string("unsupported escape \\") + e);
      }
    }
    out += ch;
  }
  if (c.pos >= c.s.size()) c.fail("unterminated string");
  ++c.pos;
  return out;
}

Scalar parse_scalar(Cursor& c) {
  c.skip_ws();
  const char ch = c.peek();
  if (ch == '"' || ch == '\'') return parse_string(c);
  std::size_t end = c.pos;
  while (end < c.s.size() && c.s[end] != ',' && c.s[end] != ']' && c.s[end] != '#' && c.s[end] != ' ' &&
         c.s[end] != '\t')
    ++end;
  std::string tok(c.s.substr(c.pos, end - c.pos));
  c.pos = end;
  if (tok.empty()) c.fail("missing value");
  if (tok == "true") return true;
  if (tok == "false") return false;
  if (tok == "inf" || tok == "+inf") return std::numeric_limits<double>::infinity();
  if (tok == "-inf") return -std::numeric_limits<double>::infinity();
  if (tok == "nan" || tok == "+nan" || tok == "-nan") return std::numeric_limits<double>::quiet_NaN();
  std::string digits;
  for (char d : tok)
    if (d != '_') digits += d;
  const bool is_float = digits.find_first_of(".eE") != std::string::npos;
  const char* first = digits.data() + (digits[0] == '+' ? 1 : 0);
  const char* last = digits.data() + digits.size();
  if (!is_float) {
    std::int64_t v{};
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec == std::errc() && p == last) return v;
  } else {
    double v{};
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec == std::errc() && p == last) return v;
  }
  c.fail("cannot parse value '" + tok + "'");
}

Value parse_value(Cursor& c) {
  c.skip_ws();
  if (c.peek() != '[') {
    return std::visit([](auto&& v) -> Value { return v; }, parse_scalar(c));
  }
  ++c.pos;
  std::vector<Scalar> items;
  for (;;) {
    c.skip_ws();
    if (c.peek() == ']') {
      ++c.pos;
      break;
    }
    if (c.pos >= c.s.size()) c.fail("unterminated array (arrays must fit on one line)");
    items.push_back(parse_scalar(c));
    c.skip_ws();
    if (c.peek() == ',') {
      ++c.pos;
    } else if (c.peek() != ']') {
      c.fail("expected ',' or ']' in array");
    }
  }
  return items;
}

bool bare_key_char(char ch) {
  return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-' || ch == '.';
}

}  // namespace

Table parse(std::string_view text) {
  Table table;
  std::string prefix;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    start = nl + 1;
    ++line_no;

    Cursor c{line, 0, line_no};
    if (c.done()) continue;
    if (c.peek() == '[') {
      const std::size_t close = line.find(']', c.pos);
      if (close == std::string_view::npos) c.fail("unterminated table header");
      std::string name(line.substr(c.pos + 1, close - c.pos - 1));
      while (!name.empty() && name.back() == ' ') name.pop_back();
      while (!name.empty() && name.front() == ' ') name.erase(name.begin());
      if (name.empty()) c.fail("empty table name");
      prefix = name + ".";
      c.pos = close + 1;
      if (!c.done()) c.fail("trailing characters after table header");
      continue;
    }
    const std::size_t key_start = c.pos;
    while (c.pos < line.size() && bare_key_char(line[c.pos])) ++c.pos;
    std::string key(line.substr(key_start, c.pos - key_start));
    if (key.empty()) c.fail("expected key");
    c.skip_ws();
    if (c.peek() != '=') c.fail("expected '=' after key '" + key + "'");
    ++c.pos;
    Value v = parse_value(c);
    if (!c.done()) c.fail("trailing characters after value");
    const std::string full = prefix + key;
    if (!table.emplace(full, std::move(v)).second) c.fail("duplicate key '" + full + "'");
    if (nl == text.size()) break;
  }
  return table;
}

}  // namespace dicke::toml
