#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nzf/parse_error.hpp"

namespace nzf::detail {

struct Token {
  enum class Kind { Ident, Int, Symbol, End };
  Kind kind = Kind::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

inline std::vector<Token> tokenize(std::string_view src) {
  static constexpr std::string_view kTwoChar[] = {"->", "<=", ">=", "==", "&&", "||", "!="};
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '.')) ++j;
      t.kind = Token::Kind::Ident;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Token::Kind::Int;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else {
      t.kind = Token::Kind::Symbol;
      t.text = std::string(1, c);
      for (auto two : kTwoChar)
        if (src.substr(i, 2) == two) t.text = std::string(two);
      if (std::string_view("(){};:,<>=!-").find(c) == std::string_view::npos && t.text.size() == 1)
        throw ParseError("unexpected character '" + std::string(1, c) + "'", line, col);
      advance(t.text.size());
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  Token next() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool at_end() const { return peek().kind == Token::Kind::End; }
  bool is(std::string_view text) const {
    const auto& t = peek();
    return t.kind != Token::Kind::End && t.kind != Token::Kind::Int && t.text == text;
  }
  bool accept(std::string_view text) {
    if (!is(text)) return false;
    next();
    return true;
  }
  void expect(std::string_view text) {
    if (!accept(text)) fail("expected '" + std::string(text) + "'");
  }
  std::string ident() {
    if (peek().kind != Token::Kind::Ident) fail("expected identifier");
    return next().text;
  }
  std::int32_t integer() {
    bool neg = accept("-");
    if (peek().kind != Token::Kind::Int) fail("expected integer");
    auto t = next();
    std::int64_t v = std::stoll(t.text);
    if (v > 1'000'000) throw ParseError("constant too large", t.line, t.column);
    return static_cast<std::int32_t>(neg ? -v : v);
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const auto& t = peek();
    std::string found = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(msg + ", found " + found, t.line, t.column);
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace nzf::detail
