#include "jwvie/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

#include "jwvie/errors.hpp"

namespace jwvie {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expression parse() {
    Expression e = sum();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw DomainError("expression '" + std::string(text_) + "': " + why +
                      " at offset " + std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expression sum() {
    Expression lhs = product();
    for (;;) {
      if (accept('+')) {
        lhs = [a = lhs, b = product()](double t, double x) { return a(t, x) + b(t, x); };
      } else if (accept('-')) {
        lhs = [a = lhs, b = product()](double t, double x) { return a(t, x) - b(t, x); };
      } else {
        return lhs;
      }
    }
  }

  Expression product() {
    Expression lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = [a = lhs, b = unary()](double t, double x) { return a(t, x) * b(t, x); };
      } else if (accept('/')) {
        lhs = [a = lhs, b = unary()](double t, double x) { return a(t, x) / b(t, x); };
      } else {
        return lhs;
      }
    }
  }

  Expression unary() {
    if (accept('-')) {
      return [a = unary()](double t, double x) { return -a(t, x); };
    }
    if (accept('+')) return unary();
    return power();
  }

  Expression power() {
    Expression base = primary();
    if (accept('^')) {
      return [a = base, b = unary()](double t, double x) {
        return std::pow(a(t, x), b(t, x));
      };
    }
    return base;
  }

  Expression primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (accept('(')) {
      Expression inner = sum();
      if (!accept(')')) fail("missing ')'");
      return inner;
    }
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double value = 0.0;
      const char* begin = text_.data() + pos_;
      const auto [end, ec] =
          std::from_chars(begin, text_.data() + text_.size(), value);
      if (ec != std::errc()) fail("bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      return [value](double, double) { return value; };
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      if (name == "t") return [](double t, double) { return t; };
      if (name == "x") return [](double, double x) { return x; };
      if (name == "pi") return [](double, double) { return std::numbers::pi; };
      pos_ = start;
      fail("unknown identifier '" + std::string(name) + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression compile_expression(std::string_view text) {
  return Parser(text).parse();
}

}  // namespace jwvie
