#pragma once

// Parsers for exact user input.
//
//   point     := [polygon ':'] expr ',' expr
//   expr      := term (('+' | '-') term)*
//   term      := unary (('*' | '/') unary)*
//   unary     := ('+' | '-') unary | primary
//   primary   := number | ('cos' | 'sin') '(' angle ')' | '(' expr ')'
//   angle     := ['-'] [number ['/' number]] ['*'] 'pi' ['/' number]
//   number    := digits ['.' digits]
//
// '·', '−' and 'π' are accepted as '*', '-' and 'pi'.

#include <cctype>
#include <sstream>
#include <string>

#include "ward/flows.hpp"

namespace ward {

namespace detail {

inline std::string normalize_spec(std::string s) {
  auto replace = [&s](const std::string& from, const std::string& to) {
    for (std::size_t pos = 0; (pos = s.find(from, pos)) != std::string::npos; pos += to.size()) {
      s.replace(pos, from.size(), to);
    }
  };
  replace("\xC2\xB7", "*");      // middle dot
  replace("\xE2\x8B\x85", "*");  // dot operator
  replace("\xC3\x97", "*");      // multiplication sign
  replace("\xE2\x88\x92", "-");  // minus sign
  replace("\xCF\x80", "pi");     // pi
  return s;
}

class SpecParser {
 public:
  SpecParser(const Context& ctx, std::string text) : ctx_(ctx), s_(normalize_spec(std::move(text))) {}

  FieldElement parse_expression_only() {
    FieldElement v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

  std::pair<std::optional<int>, Vec2> parse_point() {
    std::optional<int> polygon;
    skip();
    const std::size_t colon = s_.find(':');
    if (colon != std::string::npos) {
      const std::string head = s_.substr(0, colon);
      std::size_t used = 0;
      int p = -1;
      try {
        p = std::stoi(head, &used);
      } catch (const std::exception&) {
        fail("bad polygon index before ':'");
      }
      if (head.find_first_not_of(" \t", used) != std::string::npos || p < 0) fail("bad polygon index before ':'");
      polygon = p;
      pos_ = colon + 1;
    }
    FieldElement x = expr();
    skip();
    if (!eat(',')) fail("expected ',' between coordinates");
    FieldElement y = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return {polygon, Vec2{x, y}};
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at position " + std::to_string(pos_) + " in \"" + s_ + "\"");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool eat_word(const char* w) {
    skip();
    const std::string word(w);
    if (s_.compare(pos_, word.size(), word) != 0) return false;
    const std::size_t end = pos_ + word.size();
    if (end < s_.size() && std::isalpha(static_cast<unsigned char>(s_[end]))) return false;
    pos_ = end;
    return true;
  }

  bool at_digit() {
    skip();
    return pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.');
  }

  mpq_class number() {
    skip();
    const std::size_t start = pos_;
    std::string digits;
    std::size_t frac = 0;
    bool dot = false;
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits += c;
        if (dot) ++frac;
      } else if (c == '.' && !dot) {
        dot = true;
      } else {
        break;
      }
      ++pos_;
    }
    if (digits.empty()) {
      pos_ = start;
      fail("expected a number");
    }
    mpz_class den = 1;
    for (std::size_t i = 0; i < frac; ++i) den *= 10;
    mpq_class q(mpz_class(digits, 10), den);
    q.canonicalize();
    return q;
  }

  FieldElement expr() {
    FieldElement v = term();
    for (;;) {
      if (eat('+')) {
        v += term();
      } else if (eat('-')) {
        v -= term();
      } else {
        return v;
      }
    }
  }

  FieldElement term() {
    FieldElement v = unary();
    for (;;) {
      if (eat('*')) {
        v *= unary();
      } else if (eat('/')) {
        const FieldElement d = unary();
        if (d.is_zero()) fail("division by zero");
        v = v / d;
      } else {
        return v;
      }
    }
  }

  FieldElement unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return primary();
  }

  FieldElement primary() {
    if (eat('(')) {
      FieldElement v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (eat_word("cos")) return trig(true);
    if (eat_word("sin")) return trig(false);
    if (at_digit()) return ctx_.rational(number());
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    fail("unexpected '" + std::string(1, s_[pos_]) + "'");
  }

  // Angle as a rational multiple of pi.
  mpq_class angle() {
    mpq_class q = 1;
    const bool neg = eat('-');
    bool coefficient = false;
    if (at_digit()) {
      q = number();
      coefficient = true;
      if (eat('/')) {
        const mpq_class d = number();
        if (d == 0) fail("division by zero");
        q /= d;
      }
      eat('*');
    }
    if (!eat_word("pi")) {
      fail(coefficient ? "expected 'pi' after angle coefficient" : "expected an angle of the form a/b pi");
    }
    if (eat('/')) {
      const mpq_class d = number();
      if (d == 0) fail("division by zero");
      q /= d;
    }
    q.canonicalize();
    return neg ? mpq_class(-q) : q;
  }

  FieldElement trig(bool cosine) {
    if (!eat('(')) fail("expected '(' after cos/sin");
    const mpq_class q = angle();
    if (!eat(')')) fail("expected ')'");
    const mpz_class& num = q.get_num();
    const mpz_class& den = q.get_den();
    if (!num.fits_slong_p() || !den.fits_slong_p()) fail("angle too large");
    return cosine ? trig_cos(ctx_, num.get_si(), den.get_si()) : trig_sin(ctx_, num.get_si(), den.get_si());
  }

  Context ctx_;
  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses one exact real expression in the field of ctx.
inline FieldElement parse_expression(const Context& ctx, const std::string& text) {
  return detail::SpecParser(ctx, text).parse_expression_only();
}

/// Parses "[P:]x,y"; the default polygon is 0 (the 2n-gon for Ward surfaces).
inline SurfacePoint parse_point(const Surface& s, const std::string& text) {
  auto [polygon, v] = detail::SpecParser(s.context(), text).parse_point();
  const int p = polygon.value_or(0);
  if (p >= s.polygon_count()) throw InvalidInput("polygon index " + std::to_string(p) + " out of range");
  return s.locate(p, v);
}

/// "horizontal", "vertical", or "rot k" (the horizontal rotated by k pi / n).
inline Direction parse_direction(const Context& ctx, const std::string& text) {
  std::istringstream in(text);
  std::string word;
  in >> word;
  for (auto& c : word) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  std::string rest;
  if (word == "horizontal" || word == "h") {
    if (in >> rest) throw ParseError("unexpected text after direction: \"" + rest + "\"");
    return Direction::horizontal(ctx);
  }
  if (word == "vertical" || word == "v") {
    if (in >> rest) throw ParseError("unexpected text after direction: \"" + rest + "\"");
    return Direction::vertical(ctx);
  }
  if (word == "rot") {
    long k = 0;
    if (!(in >> k)) throw ParseError("expected an integer after \"rot\"");
    if (in >> rest) throw ParseError("unexpected text after direction: \"" + rest + "\"");
    return Direction::from_angle(ctx, k, ctx.n());
  }
  throw ParseError("unknown direction \"" + text + "\" (expected horizontal, vertical or \"rot k\")");
}

}  // namespace ward
