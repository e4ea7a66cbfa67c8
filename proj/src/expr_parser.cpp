#include "expr_parser.hpp"

#include <cctype>
#include <string>

namespace frobdyn::detail {
namespace {

using Value = std::map<int, Digits>;

class Parser {
 public:
  Parser(const FieldSpec& field, std::string_view text, int trunc)
      : f_(field), s_(text), trunc_(trunc) {}

  ParsedSeries run() {
    ParsedSeries out;
    out.terms = expr(true);
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    out.prec = prec_;
    if (prec_) {
      for (auto it = out.terms.begin(); it != out.terms.end();) {
        it = it->first >= *prec_ ? out.terms.erase(it) : std::next(it);
      }
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::ParseError,
                "at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "': " + msg);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool starts_factor() {
    skip_ws();
    if (pos_ >= s_.size()) return false;
    const char c = s_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == 'a' || c == 't' || c == '(' ||
           c == 'O';
  }

  long integer() {
    skip_ws();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      fail("expected integer");
    }
    long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      if (v > 1'000'000'000L) fail("integer too large");
      ++pos_;
    }
    return v;
  }

  void add_into(Value& acc, const Value& v, bool negate) {
    for (const auto& [k, c] : v) {
      auto it = acc.find(k);
      Digits term = negate ? f_.neg(c) : c;
      if (it == acc.end()) {
        acc.emplace(k, std::move(term));
      } else {
        f_.add_to(it->second, term);
        if (f_.is_zero(it->second)) acc.erase(it);
      }
    }
  }

  Value mul(const Value& x, const Value& y) {
    Value out;
    for (const auto& [i, a] : x) {
      for (const auto& [j, b] : y) {
        if (trunc_ > 0 && i + j >= trunc_) continue;
        add_into(out, Value{{i + j, f_.mul(a, b)}}, false);
      }
    }
    return out;
  }

  Value expr(bool top) {
    Value acc;
    bool negate = false;
    skip_ws();
    if (peek('+')) {
      ++pos_;
    } else if (peek('-')) {
      ++pos_;
      negate = true;
    }
    add_into(acc, term(top), negate);
    while (true) {
      if (peek('+')) {
        ++pos_;
        negate = false;
      } else if (peek('-')) {
        ++pos_;
        negate = true;
      } else {
        break;
      }
      add_into(acc, term(top), negate);
    }
    return acc;
  }

  Value term(bool top) {
    Value v = factor(top);
    while (true) {
      if (peek('*')) {
        ++pos_;
        v = mul(v, factor(top));
      } else if (starts_factor()) {
        v = mul(v, factor(top));
      } else {
        break;
      }
    }
    return v;
  }

  Value factor(bool top) {
    Value base = primary(top);
    if (peek('^')) {
      ++pos_;
      const long e = integer();
      Value r{{0, f_.one()}};
      for (long i = 0; i < e; ++i) {
        r = mul(r, base);
        if (r.empty()) break;
      }
      return r;
    }
    return base;
  }

  Value primary(bool top) {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const long v = integer();
      Digits d = f_.constant(v);
      if (f_.is_zero(d)) return {};
      return Value{{0, d}};
    }
    if (c == 'a') {
      ++pos_;
      return Value{{0, f_.generator()}};
    }
    if (c == 't') {
      ++pos_;
      if (trunc_ > 0 && trunc_ <= 1) return {};
      return Value{{1, f_.one()}};
    }
    if (c == '(') {
      ++pos_;
      Value v = expr(false);
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return v;
    }
    if (c == 'O') {
      if (!top) fail("O(t^n) is only allowed as a top-level term");
      ++pos_;
      if (!peek('(')) fail("expected '(' after O");
      ++pos_;
      if (!peek('t')) fail("expected t in O(t^n)");
      ++pos_;
      long n = 1;
      if (peek('^')) {
        ++pos_;
        n = integer();
      }
      if (!peek(')')) fail("expected ')' closing O(t^n)");
      ++pos_;
      if (n < 1) fail("precision must be at least 1");
      if (prec_ && *prec_ != n) fail("conflicting O(t^n) markers");
      prec_ = static_cast<int>(n);
      return {};
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  const FieldSpec& f_;
  std::string_view s_;
  std::size_t pos_ = 0;
  int trunc_;
  std::optional<int> prec_;
};

std::optional<int> scan_precision(std::string_view text) {
  const auto at = text.find("O(");
  if (at == std::string_view::npos) return std::nullopt;
  std::size_t i = at + 2;
  while (i < text.size() && (text[i] == ' ' || text[i] == 't' || text[i] == '^')) ++i;
  long n = 0;
  bool any = false;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    n = n * 10 + (text[i] - '0');
    any = true;
    if (n > 1'000'000'000L) return std::nullopt;
    ++i;
  }
  if (!any) return 1;
  return static_cast<int>(n);
}

}  // namespace

ParsedSeries parse_series_expr(const FieldSpec& field, std::string_view text, int truncate_at) {
  int trunc = truncate_at;
  if (auto marked = scan_precision(text); marked && *marked > 0) trunc = *marked;
  return Parser(field, text, trunc).run();
}

}  // namespace frobdyn::detail
