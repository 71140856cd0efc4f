#include "powerpos/parse.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "powerpos/errors.hpp"

namespace powerpos {

namespace {

constexpr unsigned kMaxExponent = 100000;

class Parser {
 public:
  Parser(std::string_view text, std::size_t nvars) : text_(text), nvars_(nvars) {}

  Polynomial run() {
    skip_ws();
    if (at_end()) throw ParseError("empty expression", pos_);
    Polynomial p = expr();
    skip_ws();
    if (!at_end()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return p;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string_view digits() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  Polynomial expr() {
    skip_ws();
    bool negate = false;
    if (peek() == '-' || peek() == '+') {
      negate = peek() == '-';
      ++pos_;
    }
    Polynomial acc = term();
    if (negate) acc = -acc;
    for (;;) {
      skip_ws();
      if (peek() == '+') {
        ++pos_;
        acc += term();
      } else if (peek() == '-') {
        ++pos_;
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  Polynomial factor() {
    Polynomial b = base();
    if (accept('^')) {
      skip_ws();
      const std::size_t at = pos_;
      if (peek() == '-') throw ParseError("negative exponent", at);
      const auto d = digits();
      if (d.empty()) throw ParseError("expected a nonnegative integer exponent", at);
      if (peek() == '.' || peek() == '/') throw ParseError("non-integer exponent", pos_);
      if (d.size() > 6 || std::stoul(std::string(d)) > kMaxExponent) {
        throw ParseError("exponent too large", at);
      }
      return pow(b, static_cast<unsigned>(std::stoul(std::string(d))));
    }
    return b;
  }

  Polynomial base() {
    skip_ws();
    const std::size_t at = pos_;
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const auto num = digits();
      BigInt n(std::string(num), 10);
      BigInt d = 1;
      if (peek() == '/') {
        ++pos_;
        const std::size_t den_at = pos_;
        const auto den = digits();
        if (den.empty()) throw ParseError("expected denominator", den_at);
        d = BigInt(std::string(den), 10);
        if (d == 0) throw ParseError("zero denominator", den_at);
      }
      if (peek() == '.') throw ParseError("decimal literals are not supported", pos_);
      Rational q(n, d);
      q.canonicalize();
      return Polynomial::constant(nvars_, q);
    }
    if (c == 'x' || c == 's') {
      if (letter_ != '\0' && letter_ != c) throw ParseError("mixed variable letters", at);
      letter_ = c;
      ++pos_;
      const auto idx = digits();
      if (idx.empty()) throw ParseError("expected variable number", pos_);
      const unsigned long k = idx.size() > 9 ? 0 : std::stoul(std::string(idx));
      if (k < 1 || k > nvars_) {
        throw ParseError("unknown variable '" + std::string(1, c) + std::string(idx) + "'", at);
      }
      return Polynomial::variable(nvars_, k - 1);
    }
    if (at_end()) throw ParseError("unexpected end of input", at);
    throw ParseError(std::string("unexpected '") + c + "'", at);
  }

  std::string_view text_;
  std::size_t nvars_;
  std::size_t pos_ = 0;
  char letter_ = '\0';
};

}  // namespace

std::size_t infer_nvars(std::string_view text) {
  std::size_t best = 0;
  for (std::size_t i = 0; i + 1 < text.size(); ++i) {
    if ((text[i] != 'x' && text[i] != 's') || !std::isdigit(static_cast<unsigned char>(text[i + 1]))) continue;
    std::size_t v = 0, j = i + 1;
    for (; j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])); ++j) {
      v = std::min<std::size_t>(v * 10 + static_cast<std::size_t>(text[j] - '0'), 1'000'000);
    }
    best = std::max(best, v);
    i = j - 1;
  }
  return std::max<std::size_t>(best, 1);
}

Polynomial parse(std::string_view text, std::size_t nvars) {
  if (nvars == 0) throw DomainError("nvars must be positive");
  return Parser(text, nvars).run();
}

std::string serialize(const Polynomial& p, char var) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    const bool negative = sgn(c) < 0;
    const Rational mag = abs(c);
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < p.nvars(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += var;
      mono += std::to_string(i + 1);
      if (e[i] > 1) mono += '^' + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out += to_string(mag);
    } else if (mag == 1) {
      out += mono;
    } else {
      out += to_string(mag) + '*' + mono;
    }
  }
  return out;
}

nlohmann::json to_json(const Polynomial& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : p.terms()) {
    terms.push_back({{"exp", std::vector<unsigned>(e.exponents().begin(), e.exponents().end())},
                     {"coef", to_fraction_string(c)}});
  }
  return {{"nvars", p.nvars()}, {"terms", terms}};
}

Polynomial polynomial_from_json(const nlohmann::json& j) {
  try {
    const auto nvars = j.at("nvars").get<std::size_t>();
    if (nvars == 0) throw DomainError("nvars must be positive");
    Polynomial p(nvars);
    for (const auto& t : j.at("terms")) {
      auto exps = t.at("exp").get<std::vector<unsigned>>();
      if (exps.size() != nvars) throw DimensionError("term exponent length does not match nvars");
      p.add_term(MultiIndex(std::move(exps)), parse_rational(t.at("coef").get<std::string>()));
    }
    return p;
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("malformed polynomial JSON: ") + ex.what(), 0);
  }
}

}  // namespace powerpos
