#pragma once

// Structured view of javac error output. parse_diagnostics is total: any
// text degrades to Unrecognized diagnostics instead of failing. All
// functions here are pure; safe for unrestricted concurrent use.

#include <cstdlib>
#include <cstring>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jstitch/detail/strings.hpp"

namespace jstitch {

enum class ErrorKind {
  CannotFindSymbol,
  ArrayRequired,
  MethodNotApplicable,
  OperatorNotApplicable,
  IncompatibleTypes,
  InconvertibleTypes,
  ReturnTypeRequired,
  NonStaticFromStatic,
  ForEachNotApplicable,
  ExceptionNeverThrown,
  Unrecognized,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::CannotFindSymbol: return "CannotFindSymbol";
    case ErrorKind::ArrayRequired: return "ArrayRequired";
    case ErrorKind::MethodNotApplicable: return "MethodNotApplicable";
    case ErrorKind::OperatorNotApplicable: return "OperatorNotApplicable";
    case ErrorKind::IncompatibleTypes: return "IncompatibleTypes";
    case ErrorKind::InconvertibleTypes: return "InconvertibleTypes";
    case ErrorKind::ReturnTypeRequired: return "ReturnTypeRequired";
    case ErrorKind::NonStaticFromStatic: return "NonStaticFromStatic";
    case ErrorKind::ForEachNotApplicable: return "ForEachNotApplicable";
    case ErrorKind::ExceptionNeverThrown: return "ExceptionNeverThrown";
    case ErrorKind::Unrecognized: return "Unrecognized";
  }
  return "?";
}

enum class SymbolKind { Class, Interface, Method, Constructor, Variable, Package };

inline const char* to_string(SymbolKind k) {
  switch (k) {
    case SymbolKind::Class: return "class";
    case SymbolKind::Interface: return "interface";
    case SymbolKind::Method: return "method";
    case SymbolKind::Constructor: return "constructor";
    case SymbolKind::Variable: return "variable";
    case SymbolKind::Package: return "package";
  }
  return "?";
}

struct SourceLocation {
  std::string file;
  int line = 1;
  int column = 1;
};

struct SymbolRef {
  SymbolKind kind = SymbolKind::Variable;
  std::string name;
  // parameter type names; present only for methods/constructors
  std::optional<std::vector<std::string>> signature;
  // type named on the "location:" detail line, when one exists
  std::optional<std::string> owner;
};

struct Diagnostic {
  SourceLocation location;
  ErrorKind kind = ErrorKind::Unrecognized;
  std::string message;  // headline text after "error: "
  std::optional<SymbolRef> symbol;
  std::optional<std::string> required_type;
  std::optional<std::string> found_type;
  std::vector<std::string> detail_lines;  // raw auxiliary lines

  // conveniences derived while parsing
  std::string source_excerpt;             // echoed source line, if present
  bool location_is_class_qualified = false;  // "location: class C"
};

// ---------------------------------------------------------------------------
// Message-pattern table. Ordered data, not logic: new compiler phrasings are
// new rows. classify() picks the longest matching pattern.

struct MessagePattern {
  std::string pattern;
  ErrorKind kind;
};

inline const std::vector<MessagePattern>& default_pattern_table() {
  static const std::vector<MessagePattern> table = {
      {"cannot find symbol", ErrorKind::CannotFindSymbol},
      {"array required", ErrorKind::ArrayRequired},
      {"cannot be applied to given types", ErrorKind::MethodNotApplicable},
      {"no suitable method found", ErrorKind::MethodNotApplicable},
      {"no suitable constructor found", ErrorKind::MethodNotApplicable},
      {"bad operand type", ErrorKind::OperatorNotApplicable},
      {"incomparable types", ErrorKind::OperatorNotApplicable},
      {"cannot be applied", ErrorKind::OperatorNotApplicable},
      {"incompatible types", ErrorKind::IncompatibleTypes},
      {"inconvertible types", ErrorKind::InconvertibleTypes},
      {"invalid method declaration; return type required",
       ErrorKind::ReturnTypeRequired},
      {"cannot be referenced from a static context",
       ErrorKind::NonStaticFromStatic},
      {"for-each not applicable", ErrorKind::ForEachNotApplicable},
      {"is never thrown in body", ErrorKind::ExceptionNeverThrown},
  };
  return table;
}

// One "pattern => KindName" row per line; '#' comments and blanks skipped.
inline std::vector<MessagePattern> load_pattern_table(std::istream& in) {
  std::vector<MessagePattern> table;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view v = detail::trim(line);
    if (v.empty() || v[0] == '#') continue;
    size_t sep = v.find("=>");
    if (sep == std::string_view::npos) continue;
    std::string pattern(detail::trim(v.substr(0, sep)));
    std::string kind_name(detail::trim(v.substr(sep + 2)));
    static const std::pair<const char*, ErrorKind> kinds[] = {
        {"CannotFindSymbol", ErrorKind::CannotFindSymbol},
        {"ArrayRequired", ErrorKind::ArrayRequired},
        {"MethodNotApplicable", ErrorKind::MethodNotApplicable},
        {"OperatorNotApplicable", ErrorKind::OperatorNotApplicable},
        {"IncompatibleTypes", ErrorKind::IncompatibleTypes},
        {"InconvertibleTypes", ErrorKind::InconvertibleTypes},
        {"ReturnTypeRequired", ErrorKind::ReturnTypeRequired},
        {"NonStaticFromStatic", ErrorKind::NonStaticFromStatic},
        {"ForEachNotApplicable", ErrorKind::ForEachNotApplicable},
        {"ExceptionNeverThrown", ErrorKind::ExceptionNeverThrown},
    };
    for (const auto& [name, kind] : kinds) {
      if (kind_name == name) {
        table.push_back({pattern, kind});
        break;
      }
    }
  }
  return table;
}

inline ErrorKind classify(std::string_view first_line,
                          const std::vector<MessagePattern>& table) {
  const MessagePattern* best = nullptr;
  for (const MessagePattern& p : table) {
    if (detail::contains(first_line, p.pattern)) {
      if (!best || p.pattern.size() > best->pattern.size()) best = &p;
    }
  }
  return best ? best->kind : ErrorKind::Unrecognized;
}

inline ErrorKind classify(std::string_view first_line) {
  return classify(first_line, default_pattern_table());
}

// ---------------------------------------------------------------------------
// Detail-line extraction

namespace detail {

inline std::optional<SymbolKind> symbol_kind_from_word(std::string_view w) {
  if (w == "class") return SymbolKind::Class;
  if (w == "interface") return SymbolKind::Interface;
  if (w == "method") return SymbolKind::Method;
  if (w == "constructor") return SymbolKind::Constructor;
  if (w == "variable") return SymbolKind::Variable;
  if (w == "package") return SymbolKind::Package;
  return std::nullopt;
}

// "doB(int)" -> name doB, signature {int}; "doA()" -> name doA, signature {}
inline void parse_name_and_signature(std::string_view text, SymbolRef& ref) {
  size_t paren = text.find('(');
  if (paren == std::string_view::npos) {
    ref.name = std::string(trim(text));
    return;
  }
  ref.name = std::string(trim(text.substr(0, paren)));
  size_t close = text.rfind(')');
  if (close == std::string_view::npos || close < paren) close = text.size();
  std::string_view args = text.substr(paren + 1, close - paren - 1);
  if (trim(args) == "no arguments")
    ref.signature = std::vector<std::string>{};
  else
    ref.signature = split_csv(args);
}

}  // namespace detail

// Parses "symbol:" / "location:" detail lines. Absent if no symbol line.
inline std::optional<SymbolRef> extract_symbol(
    const std::vector<std::string>& detail_lines) {
  std::optional<SymbolRef> ref;
  for (const std::string& raw : detail_lines) {
    std::string_view line = detail::trim(raw);
    if (detail::starts_with(line, "symbol:")) {
      std::string_view rest = detail::trim(line.substr(7));
      size_t sp = rest.find(' ');
      if (sp == std::string_view::npos) continue;
      auto kind = detail::symbol_kind_from_word(rest.substr(0, sp));
      if (!kind) continue;
      SymbolRef r;
      r.kind = *kind;
      std::string_view what = detail::trim(rest.substr(sp + 1));
      if (r.kind == SymbolKind::Method || r.kind == SymbolKind::Constructor)
        detail::parse_name_and_signature(what, r);
      else
        r.name = std::string(what);
      ref = std::move(r);
    } else if (detail::starts_with(line, "location:") && ref) {
      std::string_view rest = detail::trim(line.substr(9));
      if (detail::starts_with(rest, "class ")) {
        ref->owner = std::string(detail::trim(rest.substr(6)));
      } else if (detail::starts_with(rest, "variable ")) {
        size_t of = rest.find(" of type ");
        if (of != std::string_view::npos)
          ref->owner = std::string(detail::trim(rest.substr(of + 9)));
      } else if (detail::starts_with(rest, "package ")) {
        // package locations carry no owner type
      }
    }
  }
  return ref;
}

// ---------------------------------------------------------------------------
// Full parse of one compiler invocation's error stream.

namespace detail {

struct HeadlineParts {
  std::string file;
  int line = 0;
  std::string severity;  // "error" | "warning"
  std::string message;
};

inline std::optional<HeadlineParts> match_headline(std::string_view s) {
  // <path>:<line>: error: <message>
  for (const char* sev : {": error: ", ": warning: "}) {
    size_t at = s.find(sev);
    if (at == std::string_view::npos) continue;
    // walk back over the line number
    size_t colon = s.rfind(':', at - 1);
    if (colon == std::string_view::npos || colon + 1 >= at) continue;
    std::string_view num = s.substr(colon + 1, at - colon - 1);
    if (num.empty()) continue;
    bool digits = true;
    for (char c : num)
      if (c < '0' || c > '9') digits = false;
    if (!digits) continue;
    HeadlineParts h;
    h.file = std::string(s.substr(0, colon));
    h.line = std::atoi(std::string(num).c_str());
    h.severity = sev[2] == 'e' ? "error" : "warning";
    h.message = std::string(s.substr(at + std::strlen(sev)));
    return h;
  }
  return std::nullopt;
}

inline bool is_summary_line(std::string_view s) {
  std::string_view t = trim(s);
  size_t sp = t.find(' ');
  if (sp == std::string_view::npos) return false;
  std::string_view n = t.substr(0, sp);
  std::string_view word = t.substr(sp + 1);
  if (n.empty()) return false;
  for (char c : n)
    if (c < '0' || c > '9') return false;
  return word == "error" || word == "errors" || word == "warning" ||
         word == "warnings";
}

inline bool is_caret_line(std::string_view s) {
  bool seen = false;
  for (char c : s) {
    if (c == '^') {
      if (seen) return false;
      seen = true;
    } else if (c != ' ' && c != '\t') {
      return false;
    }
  }
  return seen;
}

inline bool is_keyed_detail(std::string_view s) {
  std::string_view t = trim(s);
  for (const char* key :
       {"symbol:", "location:", "required:", "found:", "reason:",
        "first type:", "second type:", "method ", "constructor ", "("}) {
    if (starts_with(t, key)) return true;
  }
  return false;
}

inline std::optional<std::string> keyed_value(std::string_view raw,
                                              std::string_view key) {
  std::string_view t = trim(raw);
  if (!starts_with(t, key)) return std::nullopt;
  return std::string(trim(t.substr(key.size())));
}

}  // namespace detail

inline std::vector<Diagnostic> parse_diagnostics(
    std::string_view raw, const std::vector<MessagePattern>& table);

inline std::vector<Diagnostic> parse_diagnostics(std::string_view raw) {
  return parse_diagnostics(raw, default_pattern_table());
}

namespace detail {

inline void fill_from_details(Diagnostic& d) {
  for (const std::string& line : d.detail_lines) {
    if (auto v = keyed_value(line, "required:")) {
      if (*v == "no arguments") *v = "";
      if (!d.required_type) d.required_type = *v;
    } else if (auto f = keyed_value(line, "found:")) {
      if (*f == "no arguments") *f = "";
      if (!d.found_type) d.found_type = *f;
    } else if (auto ft = keyed_value(line, "first type:")) {
      if (!d.found_type) d.found_type = *ft;
    } else if (auto st = keyed_value(line, "second type:")) {
      if (!d.required_type) d.required_type = *st;
    }
    std::string_view t = trim(line);
    if (starts_with(t, "location: class ")) d.location_is_class_qualified = true;
  }
}

inline void fill_from_headline(Diagnostic& d) {
  std::string_view msg = d.message;
  switch (d.kind) {
    case ErrorKind::CannotFindSymbol:
      d.symbol = extract_symbol(d.detail_lines);
      break;
    case ErrorKind::MethodNotApplicable: {
      // method m in class C cannot be applied to given types;
      // constructor C in class C cannot be applied to given types;
      // no suitable method found for m(args)
      SymbolRef r;
      if (starts_with(msg, "method ") || starts_with(msg, "constructor ")) {
        bool ctor = starts_with(msg, "constructor ");
        r.kind = ctor ? SymbolKind::Constructor : SymbolKind::Method;
        std::string_view rest = msg.substr(ctor ? 12 : 7);
        size_t in_at = rest.find(" in class ");
        if (in_at != std::string_view::npos) {
          r.name = std::string(trim(rest.substr(0, in_at)));
          std::string_view owner = rest.substr(in_at + 10);
          size_t cut = owner.find(' ');
          r.owner = std::string(owner.substr(0, cut));
        }
        if (d.found_type)
          r.signature = d.found_type->empty() ? std::vector<std::string>{}
                                              : split_csv(*d.found_type);
        d.symbol = std::move(r);
      } else if (contains(msg, "no suitable method found for ") ||
                 contains(msg, "no suitable constructor found for ")) {
        bool ctor = contains(msg, "constructor");
        size_t at = msg.find("found for ");
        std::string_view rest = msg.substr(at + 10);
        r.kind = ctor ? SymbolKind::Constructor : SymbolKind::Method;
        parse_name_and_signature(rest, r);
        d.symbol = std::move(r);
      }
      break;
    }
    case ErrorKind::NonStaticFromStatic: {
      // non-static variable lbl cannot ... / non-static method m(int) cannot ...
      size_t at = msg.find("non-static ");
      if (at == std::string_view::npos) break;
      std::string_view rest = msg.substr(at + 11);
      size_t sp = rest.find(' ');
      if (sp == std::string_view::npos) break;
      auto kind = symbol_kind_from_word(rest.substr(0, sp));
      if (!kind) break;
      std::string_view what = rest.substr(sp + 1);
      size_t cannot = what.find(" cannot");
      if (cannot != std::string_view::npos) what = what.substr(0, cannot);
      SymbolRef r;
      r.kind = *kind;
      if (r.kind == SymbolKind::Method)
        parse_name_and_signature(what, r);
      else
        r.name = std::string(trim(what));
      d.symbol = std::move(r);
      break;
    }
    case ErrorKind::ExceptionNeverThrown: {
      // exception C is never thrown in body of corresponding try statement
      if (starts_with(msg, "exception ")) {
        std::string_view rest = msg.substr(10);
        size_t sp = rest.find(' ');
        SymbolRef r;
        r.kind = SymbolKind::Class;
        r.name = std::string(rest.substr(0, sp));
        d.symbol = std::move(r);
      }
      break;
    }
    case ErrorKind::ArrayRequired: {
      // array required, but X found
      size_t but = msg.find("but ");
      size_t found = msg.rfind(" found");
      if (but != std::string_view::npos && found != std::string_view::npos &&
          found > but + 4) {
        d.found_type = std::string(msg.substr(but + 4, found - but - 4));
      }
      break;
    }
    case ErrorKind::IncompatibleTypes:
    case ErrorKind::InconvertibleTypes: {
      // incompatible types: A cannot be converted to B
      size_t colon = msg.find(": ");
      size_t conv = msg.find(" cannot be converted to ");
      if (colon != std::string_view::npos && conv != std::string_view::npos &&
          conv > colon) {
        d.found_type = std::string(msg.substr(colon + 2, conv - colon - 2));
        d.required_type = std::string(msg.substr(conv + 24));
      }
      break;
    }
    case ErrorKind::OperatorNotApplicable: {
      // incomparable types: A and B
      size_t inc = msg.find("incomparable types: ");
      if (inc != std::string_view::npos) {
        std::string_view rest = msg.substr(inc + 20);
        size_t and_at = rest.find(" and ");
        if (and_at != std::string_view::npos) {
          d.found_type = std::string(rest.substr(0, and_at));
          d.required_type = std::string(rest.substr(and_at + 5));
        }
      }
      // bad operand type X for unary operator 'op'
      size_t bad = msg.find("bad operand type ");
      if (bad != std::string_view::npos && !contains(msg, "bad operand types")) {
        std::string_view rest = msg.substr(bad + 17);
        size_t for_at = rest.find(" for unary");
        if (for_at != std::string_view::npos)
          d.found_type = std::string(rest.substr(0, for_at));
      }
      break;
    }
    default:
      break;
  }
}

}  // namespace detail

inline std::vector<Diagnostic> parse_diagnostics(
    std::string_view raw, const std::vector<MessagePattern>& table) {
  std::vector<Diagnostic> out;
  std::vector<std::string> lines = detail::split_lines(raw);

  size_t i = 0;
  while (i < lines.size()) {
    auto head = detail::match_headline(lines[i]);
    if (!head) {
      i++;
      continue;
    }
    // collect the block
    size_t j = i + 1;
    std::vector<std::string> block;
    while (j < lines.size() && !detail::match_headline(lines[j]) &&
           !detail::is_summary_line(lines[j])) {
      block.push_back(lines[j]);
      j++;
    }
    i = j;
    if (head->severity != "error") continue;  // warnings parsed over, dropped

    Diagnostic d;
    d.location.file = head->file;
    d.location.line = head->line > 0 ? head->line : 1;
    d.message = head->message;
    d.kind = classify(d.message, table);
    d.detail_lines = std::move(block);

    // source echo + caret give the column
    bool have_excerpt = false;
    for (size_t k = 0; k < d.detail_lines.size(); k++) {
      const std::string& ln = d.detail_lines[k];
      if (!have_excerpt && !detail::is_caret_line(ln) &&
          !detail::is_keyed_detail(ln)) {
        d.source_excerpt = ln;
        have_excerpt = true;
        continue;
      }
      if (have_excerpt && detail::is_caret_line(ln)) {
        d.location.column = static_cast<int>(ln.find('^')) + 1;
        break;
      }
    }

    detail::fill_from_details(d);
    detail::fill_from_headline(d);
    out.push_back(std::move(d));
  }
  return out;
}

// Parses the trailing "N error(s)" summary; absent when the text has none.
inline std::optional<int> parse_error_summary(std::string_view raw) {
  std::optional<int> count;
  for (const std::string& line : detail::split_lines(raw)) {
    std::string_view t = detail::trim(line);
    size_t sp = t.find(' ');
    if (sp == std::string_view::npos) continue;
    std::string_view word = t.substr(sp + 1);
    if (word != "error" && word != "errors") continue;
    std::string_view n = t.substr(0, sp);
    bool digits = !n.empty();
    for (char c : n)
      if (c < '0' || c > '9') digits = false;
    if (digits) count = std::atoi(std::string(n).c_str());
  }
  return count;
}

}  // namespace jstitch
