#pragma once

// Lightweight lexical scan of Java text: identifiers, keywords, literals,
// punctuation, with 1-based positions. Comments and whitespace are dropped.
// This is deliberately not a parser; shape classification and token-level
// edits only need token runs.

#include <string>
#include <string_view>
#include <vector>

#include "jstitch/detail/strings.hpp"

namespace jstitch::detail {

enum class JTok { Ident, Keyword, Punct, Number, String, Char };

struct JToken {
  JTok kind;
  std::string text;
  int line;  // 1-based
  int col;   // 1-based
};

inline bool is_java_keyword(std::string_view s) {
  static const char* kw[] = {
      "abstract", "assert", "boolean", "break", "byte", "case", "catch",
      "char", "class", "const", "continue", "default", "do", "double",
      "else", "enum", "extends", "final", "finally", "float", "for", "goto",
      "if", "implements", "import", "instanceof", "int", "interface", "long",
      "native", "new", "package", "private", "protected", "public", "return",
      "short", "static", "strictfp", "super", "switch", "synchronized",
      "this", "throw", "throws", "transient", "try", "void", "volatile",
      "while", "true", "false", "null"};
  for (const char* k : kw)
    if (s == k) return true;
  return false;
}

inline bool is_modifier_keyword(std::string_view s) {
  return s == "public" || s == "private" || s == "protected" || s == "static" ||
         s == "final" || s == "abstract" || s == "synchronized" ||
         s == "native" || s == "transient" || s == "volatile" ||
         s == "strictfp";
}

inline bool is_primitive_name(std::string_view s) {
  return s == "int" || s == "long" || s == "short" || s == "byte" ||
         s == "char" || s == "boolean" || s == "float" || s == "double";
}

inline std::vector<JToken> java_lex(std::string_view src) {
  std::vector<JToken> out;
  size_t i = 0;
  int line = 1, col = 1;
  auto advance = [&](size_t n = 1) {
    for (size_t k = 0; k < n && i < src.size(); k++) {
      if (src[i] == '\n') {
        line++;
        col = 1;
      } else {
        col++;
      }
      i++;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance();
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance();
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '*') {
      advance(2);
      while (i + 1 < src.size() && !(src[i] == '*' && src[i + 1] == '/'))
        advance();
      advance(2);
      continue;
    }
    int tl = line, tc = col;
    if (is_ident_start(c)) {
      std::string s;
      while (i < src.size() && is_ident_char(src[i])) {
        s.push_back(src[i]);
        advance();
      }
      out.push_back({is_java_keyword(s) ? JTok::Keyword : JTok::Ident,
                     std::move(s), tl, tc});
      continue;
    }
    if (c >= '0' && c <= '9') {
      std::string s;
      while (i < src.size() &&
             (is_ident_char(src[i]) || src[i] == '.' ||
              ((src[i] == '+' || src[i] == '-') && !s.empty() &&
               (s.back() == 'e' || s.back() == 'E')))) {
        s.push_back(src[i]);
        advance();
      }
      out.push_back({JTok::Number, std::move(s), tl, tc});
      continue;
    }
    if (c == '"' || c == '\'') {
      char quote = c;
      std::string s;
      advance();
      while (i < src.size() && src[i] != quote && src[i] != '\n') {
        if (src[i] == '\\') {
          s.push_back(src[i]);
          advance();
          if (i < src.size()) {
            s.push_back(src[i]);
            advance();
          }
        } else {
          s.push_back(src[i]);
          advance();
        }
      }
      if (i < src.size() && src[i] == quote) advance();
      out.push_back({quote == '"' ? JTok::String : JTok::Char, std::move(s),
                     tl, tc});
      continue;
    }
    out.push_back({JTok::Punct, std::string(1, c), tl, tc});
    advance();
  }
  return out;
}

// Number of top-level statement terminators; a cheap statement-count proxy.
inline int count_statements(std::string_view src) {
  int n = 0;
  for (const JToken& t : java_lex(src))
    if (t.kind == JTok::Punct && t.text == ";") n++;
  return n;
}

}  // namespace jstitch::detail
