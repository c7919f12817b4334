#include "iwasawa/poly_parser.hpp"

#include <cctype>
#include <map>

#include "iwasawa/errors.hpp"

namespace iwasawa {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const std::string& field) : text_(text), field_(field) {}

  std::map<int, i64> run(i64 q) {
    std::map<int, i64> terms;
    skip();
    if (at_end()) fail("empty polynomial");
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = take() == '-' ? -1 : 1;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      auto [c, k] = term();
      terms[k] = mod_reduce(terms[k] + mod_reduce(sign * mod_reduce(c, q), q), q);
      skip();
    }
    return terms;
  }

 private:
  std::pair<i64, int> term() {
    i64 c = 1;
    bool has_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      c = number();
      has_coeff = true;
      skip();
      if (peek() != '*') return {c, 0};
      take();
      skip();
    }
    if (peek() != 'X' && peek() != 'x') fail(has_coeff ? "expected X after '*'" : "expected a coefficient or X");
    take();
    skip();
    int k = 1;
    if (peek() == '^') {
      take();
      skip();
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an exponent after '^'");
      const i64 e = number();
      if (e > 1 << 20) fail("exponent too large");
      k = static_cast<int>(e);
    }
    return {c, k};
  }

  i64 number() {
    i64 v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      if (v > (i64{1} << 58)) fail("integer too large");
      v = v * 10 + (take() - '0');
    }
    return v;
  }

  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  char take() { return text_[pos_++]; }
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("field '" + field_ + "': " + what + " at position " + std::to_string(pos_));
  }

  std::string_view text_;
  std::string field_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const RingParams& R, std::string_view text, const std::string& field) {
  const auto terms = Parser(text, field).run(R.modulus());
  Poly f;
  for (const auto& [k, c] : terms) {
    if (static_cast<int>(f.size()) <= k) f.resize(static_cast<std::size_t>(k) + 1);
    f[static_cast<std::size_t>(k)] = R.from_int(c);
  }
  return trimmed(std::move(f));
}

std::string format_poly(const Poly& f) {
  std::string out;
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (f[k].im != 0) throw PreconditionError("format_poly: extension coefficients");
    if (f[k].re == 0) continue;
    if (!out.empty()) out += " + ";
    if (k == 0) {
      out += std::to_string(f[k].re);
      continue;
    }
    if (f[k].re != 1) out += std::to_string(f[k].re) + "*";
    out += "X";
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

}  // namespace iwasawa
