#include "licnet/cli/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "licnet/error.hpp"

namespace licnet::cli {
namespace {

class Parser {
 public:
  Parser(std::string_view text, std::optional<double> alpha) : text_(text), alpha_(alpha) {}

  double parse() {
    const double v = sum();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  double sum() {
    double v = product();
    while (true) {
      if (accept('+')) {
        v += product();
      } else if (accept('-')) {
        v -= product();
      } else {
        return v;
      }
    }
  }

  double product() {
    double v = unary();
    while (true) {
      if (accept('*')) {
        v *= unary();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        const double d = unary();
        if (d == 0.0) {
          throw Error(ErrorCode::ValidationError, "expression \"" + std::string(text_) + "\" column " +
                                                      std::to_string(at + 1) + ": division by zero");
        }
        v /= d;
      } else {
        return v;
      }
    }
  }

  double unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return primary();
  }

  double primary() {
    skip_space();
    if (accept('(')) {
      const double v = sum();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (pos_ < text_.size() && text_[pos_] == '$') {
      constexpr std::string_view kName = "$alpha";
      if (text_.substr(pos_, kName.size()) != kName) fail("unknown variable");
      if (!alpha_) {
        throw Error(ErrorCode::ValidationError,
                    "expression uses $alpha but no alpha was given (document \"alpha\" or --alpha)");
      }
      pos_ += kName.size();
      return *alpha_;
    }
    return number();
  }

  double number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
      ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    if (pos_ == start) fail_at(start, pos_ < text_.size() ? "expected a number" : "unexpected end");
    double v = 0.0;
    const auto [end, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (ec != std::errc() || end != text_.data() + pos_) fail_at(start, "malformed number");
    return v;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) { fail_at(pos_, what); }

  [[noreturn]] void fail_at(std::size_t at, const std::string& what) {
    throw Error(ErrorCode::SyntaxError, "expression \"" + std::string(text_) + "\" column " +
                                            std::to_string(at + 1) + ": " + what);
  }

  std::string_view text_;
  std::optional<double> alpha_;
  std::size_t pos_ = 0;
};

}  // namespace

double evaluate_expression(std::string_view text, std::optional<double> alpha) {
  const double v = Parser(text, alpha).parse();
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::ValidationError, "expression \"" + std::string(text) + "\" is not finite");
  }
  return v;
}

bool uses_alpha(std::string_view text) { return text.find("$alpha") != std::string_view::npos; }

}  // namespace licnet::cli
