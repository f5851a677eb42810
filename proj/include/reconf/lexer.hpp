#pragma once

// Tokenizer shared by the path, property and temporal-formula languages.
// `#` starts a comment that runs to the end of the line.

#include <algorithm>
#include <cctype>
#include <string>
#include <vector>

#include "reconf/error.hpp"

namespace reconf {

enum class token_kind { identifier, integer, string, symbol, end };

struct token {
  token_kind kind = token_kind::end;
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;

  bool is(token_kind k, const char* t) const { return kind == k && text == t; }
  bool is_symbol(const char* t) const { return is(token_kind::symbol, t); }
  bool is_word(const char* t) const { return is(token_kind::identifier, t); }
};

inline std::string describe(const token& t) {
  switch (t.kind) {
  case token_kind::end: return "end of input";
  case token_kind::string: return "string \"" + t.text + "\"";
  default: return "'" + t.text + "'";
  }
}

inline std::vector<token> tokenize(const std::string& text) {
  std::vector<token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n = 1) {
    for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto is_ident_start = [](char ch) {
    return std::isalpha(static_cast<unsigned char>(ch)) || ch == '_';
  };
  auto is_ident_char = [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
  };

  while (i < text.size()) {
    const char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      advance();
      continue;
    }
    if (ch == '#') {
      while (i < text.size() && text[i] != '\n') advance();
      continue;
    }
    token t;
    t.line = line;
    t.column = col;
    if (is_ident_start(ch)) {
      std::size_t j = i;
      while (j < text.size() && is_ident_char(text[j])) ++j;
      t.kind = token_kind::identifier;
      t.text = text.substr(i, j - i);
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(ch)) ||
               (ch == '-' && i + 1 < text.size() &&
                std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
      std::size_t j = i + 1;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      t.kind = token_kind::integer;
      t.text = text.substr(i, j - i);
      advance(j - i);
    } else if (ch == '"') {
      std::size_t j = i + 1;
      while (j < text.size() && text[j] != '"' && text[j] != '\n') ++j;
      if (j >= text.size() || text[j] != '"')
        throw parse_error("unterminated string literal", line, col);
      t.kind = token_kind::string;
      t.text = text.substr(i + 1, j - i - 1);
      advance(j - i + 1);
    } else {
      static const char* const two_char[] = {":=", "!=", "<=", ">="};
      t.kind = token_kind::symbol;
      for (const char* s : two_char)
        if (text.compare(i, 2, s) == 0) t.text = s;
      if (t.text.empty()) {
        if (std::string("()|?*+,.:=<>").find(ch) == std::string::npos)
          throw parse_error(std::string("unexpected character '") + ch + "'", line, col);
        t.text = std::string(1, ch);
      }
      advance(t.text.size());
    }
    out.push_back(std::move(t));
  }
  token eof;
  eof.line = line;
  eof.column = col;
  out.push_back(eof);
  return out;
}

/// Cursor over a token vector with the usual expect/accept helpers.
class token_stream {
public:
  explicit token_stream(std::vector<token> tokens) : tokens_(std::move(tokens)) {}

  const token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const token& next() {
    const token& t = peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
  }
  bool at_end() const { return peek().kind == token_kind::end; }

  bool accept_symbol(const char* s) {
    if (!peek().is_symbol(s)) return false;
    next();
    return true;
  }
  bool accept_word(const char* w) {
    if (!peek().is_word(w)) return false;
    next();
    return true;
  }
  const token& expect_symbol(const char* s) {
    if (!peek().is_symbol(s)) fail(std::string("expected '") + s + "' but found " + describe(peek()));
    return next();
  }
  const token& expect_identifier(const char* what) {
    if (peek().kind != token_kind::identifier)
      fail(std::string("expected ") + what + " but found " + describe(peek()));
    return next();
  }

  [[noreturn]] void fail(const std::string& msg) const { fail_at(peek(), msg); }
  [[noreturn]] static void fail_at(const token& t, const std::string& msg) {
    throw parse_error(msg, t.line, t.column);
  }

private:
  std::vector<token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace reconf
