#pragma once

// Lexer for the Java subset understood by minijavac.

#include <cctype>
#include <cstring>
#include <string>
#include <vector>

namespace minijavac {

enum class Tok {
  End,
  Ident,
  Keyword,
  IntLit,
  LongLit,
  FloatLit,
  DoubleLit,
  CharLit,
  StringLit,
  Punct,   // operators and punctuation, text carries the spelling
  Error,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;  // 1-based
  int col = 1;   // 1-based
};

inline bool is_java_keyword(const std::string& s) {
  static const char* kw[] = {
      "abstract", "assert",   "boolean",    "break",      "byte",
      "case",     "catch",    "char",       "class",      "const",
      "continue", "default",  "do",         "double",     "else",
      "enum",     "extends",  "final",      "finally",    "float",
      "for",      "goto",     "if",         "implements", "import",
      "instanceof", "int",    "interface",  "long",       "native",
      "new",      "package",  "private",    "protected",  "public",
      "return",   "short",    "static",     "strictfp",   "super",
      "switch",   "synchronized", "this",   "throw",      "throws",
      "transient", "try",     "void",       "volatile",   "while",
      "true",     "false",    "null"};
  for (const char* k : kw)
    if (s == k) return true;
  return false;
}

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) {}

  // Tokenizes the whole input. Lexical errors become Tok::Error tokens.
  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_ws_and_comments();
      Token t = next();
      out.push_back(t);
      if (t.kind == Tok::End) break;
    }
    return out;
  }

 private:
  const std::string& src_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;

  char peek(size_t off = 0) const {
    return pos_ + off < src_.size() ? src_[pos_ + off] : '\0';
  }
  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      line_++;
      col_ = 1;
    } else {
      col_++;
    }
    return c;
  }
  bool at_end() const { return pos_ >= src_.size(); }

  void skip_ws_and_comments() {
    while (!at_end()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n') advance();
      } else if (c == '/' && peek(1) == '*') {
        advance();
        advance();
        while (!at_end() && !(peek() == '*' && peek(1) == '/')) advance();
        if (!at_end()) {
          advance();
          advance();
        }
      } else {
        break;
      }
    }
  }

  Token make(Tok k, std::string text, int line, int col) {
    Token t;
    t.kind = k;
    t.text = std::move(text);
    t.line = line;
    t.col = col;
    return t;
  }

  Token next() {
    if (at_end()) return make(Tok::End, "", line_, col_);
    int l = line_, c = col_;
    char ch = peek();

    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_' || ch == '$') {
      std::string s;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                           peek() == '_' || peek() == '$'))
        s.push_back(advance());
      return make(is_java_keyword(s) ? Tok::Keyword : Tok::Ident, s, l, c);
    }

    if (std::isdigit(static_cast<unsigned char>(ch)) ||
        (ch == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      return lex_number(l, c);
    }

    if (ch == '"') return lex_string(l, c);
    if (ch == '\'') return lex_char(l, c);

    // Punctuation, longest first.
    static const char* puncts[] = {
        ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "==", "!=", "<=",
        ">=",  "&&",  "||",  "++",  "--",  "+=", "-=", "*=", "/=", "%=",
        "&=",  "|=",  "^=",  "<<",  ">>",  "(",  ")",  "{",  "}",  "[",
        "]",   ";",   ",",   ".",   "=",   "<",  ">",  "+",  "-",  "*",
        "/",   "%",   "!",   "~",   "&",   "|",  "^",  "?",  ":",  "@"};
    for (const char* p : puncts) {
      size_t n = std::strlen(p);
      if (src_.compare(pos_, n, p) == 0) {
        for (size_t i = 0; i < n; i++) advance();
        return make(Tok::Punct, p, l, c);
      }
    }
    advance();
    return make(Tok::Error, std::string(1, ch), l, c);
  }

  Token lex_number(int l, int c) {
    std::string s;
    bool is_fp = false;
    if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
      s.push_back(advance());
      s.push_back(advance());
      while (!at_end() && std::isxdigit(static_cast<unsigned char>(peek())))
        s.push_back(advance());
    } else {
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
        s.push_back(advance());
      if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
        is_fp = true;
        s.push_back(advance());
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
          s.push_back(advance());
      }
      if (peek() == 'e' || peek() == 'E') {
        is_fp = true;
        s.push_back(advance());
        if (peek() == '+' || peek() == '-') s.push_back(advance());
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
          s.push_back(advance());
      }
    }
    if (peek() == 'l' || peek() == 'L') {
      s.push_back(advance());
      return make(Tok::LongLit, s, l, c);
    }
    if (peek() == 'f' || peek() == 'F') {
      s.push_back(advance());
      return make(Tok::FloatLit, s, l, c);
    }
    if (peek() == 'd' || peek() == 'D') {
      s.push_back(advance());
      return make(Tok::DoubleLit, s, l, c);
    }
    return make(is_fp ? Tok::DoubleLit : Tok::IntLit, s, l, c);
  }

  Token lex_string(int l, int c) {
    std::string s;
    advance();  // opening quote
    while (!at_end() && peek() != '"' && peek() != '\n') {
      if (peek() == '\\') {
        s.push_back(advance());
        if (!at_end()) s.push_back(advance());
      } else {
        s.push_back(advance());
      }
    }
    if (peek() == '"') advance();
    return make(Tok::StringLit, s, l, c);
  }

  Token lex_char(int l, int c) {
    std::string s;
    advance();
    while (!at_end() && peek() != '\'' && peek() != '\n') {
      if (peek() == '\\') {
        s.push_back(advance());
        if (!at_end()) s.push_back(advance());
      } else {
        s.push_back(advance());
      }
    }
    if (peek() == '\'') advance();
    return make(Tok::CharLit, s, l, c);
  }
};

}  // namespace minijavac
