#pragma once

// Per-pass error fixing: maps each classified Diagnostic onto one FixAction
// and applies the pass's actions in compiler-reported order. Dispatch is a
// pure function of (document state, diagnostic); livelock shows up as a pass
// with zero newly applied actions, which the driver treats as terminal.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "jstitch/diagnostics.hpp"
#include "jstitch/source_model.hpp"

namespace jstitch {

struct PassOutcome {
  int applied = 0;
  int deduped = 0;
  int deferred = 0;
  std::vector<std::string> defer_reasons;
};

namespace engine {

inline std::pair<std::string, int> split_type(std::string_view t) {
  std::string s(detail::trim(t));
  int dims = 0;
  while (s.size() >= 2 && s.compare(s.size() - 2, 2, "[]") == 0) {
    dims++;
    s.resize(s.size() - 2);
  }
  return {s, dims};
}

inline std::string with_dims(const std::string& base, int dims) {
  std::string s = base;
  for (int i = 0; i < dims; i++) s += "[]";
  return s;
}

// ---------------- lexical site analysis ----------------

struct ExprSite {
  enum Kind { None, BareName, Member, CallUnqualified, CallMember, Indexed };
  Kind kind = None;
  std::string name;      // identifier of interest
  std::string receiver;  // identifier immediately left of the dot, if any
  int arg_count = -1;    // calls
  bool via_index = false;
};

inline bool ident_at(const std::string& s, size_t i) {
  return i < s.size() && detail::is_ident_char(s[i]);
}

inline std::string read_ident_fwd(const std::string& s, size_t i, size_t* end) {
  size_t j = i;
  while (j < s.size() && detail::is_ident_char(s[j])) j++;
  if (end) *end = j;
  return s.substr(i, j - i);
}

inline std::string read_ident_back(const std::string& s, size_t i, size_t* start) {
  // i points at the last char of the identifier
  size_t j = i;
  while (j > 0 && detail::is_ident_char(s[j - 1])) j--;
  if (detail::is_ident_char(s[j])) {
    if (start) *start = j;
    size_t end = i + 1;
    return s.substr(j, end - j);
  }
  return "";
}

inline size_t skip_ws_fwd(const std::string& s, size_t i) {
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) i++;
  return i;
}

inline int count_args(const std::string& s, size_t open_paren) {
  int depth = 0, args = 0;
  bool any = false;
  for (size_t i = open_paren; i < s.size(); i++) {
    char c = s[i];
    if (c == '(' || c == '[') depth++;
    else if (c == ')' || c == ']') {
      depth--;
      if (depth == 0) return any ? args + 1 : 0;
    } else if (c == ',' && depth == 1) {
      args++;
      any = true;
    } else if (depth == 1 && c != ' ' && c != '\t') {
      any = true;
    }
  }
  return any ? args + 1 : 0;
}

// Reads the primary expression that starts at (or contains) column `col`
// (1-based) of `line`. Handles the caret anchors javac uses: identifier
// start, member-select dot, '[' of an index, call names.
inline ExprSite site_at(const std::string& line, int col) {
  ExprSite site;
  if (col < 1) return site;
  size_t i = static_cast<size_t>(col - 1);
  if (i >= line.size()) return site;

  if (line[i] == '.') {
    // caret on the dot of recv.name / recv.name(...)
    size_t start = 0;
    site.receiver = i > 0 ? read_ident_back(line, i - 1, &start) : "";
    size_t end = 0;
    size_t j = skip_ws_fwd(line, i + 1);
    site.name = read_ident_fwd(line, j, &end);
    if (site.name.empty()) return site;
    size_t k = skip_ws_fwd(line, end);
    if (k < line.size() && line[k] == '(') {
      site.kind = ExprSite::CallMember;
      site.arg_count = count_args(line, k);
    } else {
      site.kind = ExprSite::Member;
    }
    return site;
  }

  if (line[i] == '[') {
    // caret on an index bracket: scan left for the indexed primary
    size_t j = i;
    while (j > 0) {
      char c = line[j - 1];
      if (c == ' ' || c == '\t') { j--; continue; }
      if (c == ']') {  // earlier index group
        int depth = 0;
        while (j > 0) {
          char d = line[j - 1];
          if (d == ']') depth++;
          if (d == '[') {
            depth--;
            if (depth == 0) { j--; break; }
          }
          j--;
        }
        continue;
      }
      break;
    }
    if (j == 0 || !detail::is_ident_char(line[j - 1])) return site;
    size_t start = 0;
    site.name = read_ident_back(line, j - 1, &start);
    site.kind = ExprSite::Indexed;
    site.via_index = true;
    if (start > 0 && line[start - 1] == '.') {
      size_t rstart = 0;
      site.receiver =
          start >= 2 ? read_ident_back(line, start - 2, &rstart) : "";
    }
    return site;
  }

  if (detail::is_ident_start(line[i])) {
    size_t end = 0;
    site.name = read_ident_fwd(line, i, &end);
    // a dotted chain: resolve to its final member
    size_t k = skip_ws_fwd(line, end);
    while (k < line.size() && line[k] == '.' &&
           ident_at(line, skip_ws_fwd(line, k + 1))) {
      site.receiver = site.name;
      size_t j = skip_ws_fwd(line, k + 1);
      site.name = read_ident_fwd(line, j, &end);
      k = skip_ws_fwd(line, end);
    }
    if (k < line.size() && line[k] == '(') {
      site.kind = site.receiver.empty() ? ExprSite::CallUnqualified
                                        : ExprSite::CallMember;
      site.arg_count = count_args(line, k);
    } else if (k < line.size() && line[k] == '[') {
      site.kind = ExprSite::Indexed;
      site.via_index = true;
    } else {
      site.kind = site.receiver.empty() ? ExprSite::BareName : ExprSite::Member;
    }
    return site;
  }
  return site;
}

// Primary ending immediately left of column `col` (operator position).
inline ExprSite site_left_of(const std::string& line, int col) {
  ExprSite site;
  if (col < 2) return site;
  size_t i = static_cast<size_t>(col - 1);  // char at col-1 is the operator
  size_t j = i;
  while (j > 0 && (line[j - 1] == ' ' || line[j - 1] == '\t')) j--;
  if (j == 0) return site;
  char c = line[j - 1];
  if (c == ')') {
    int depth = 0;
    while (j > 0) {
      char d = line[j - 1];
      if (d == ')') depth++;
      if (d == '(') {
        depth--;
        if (depth == 0) { j--; break; }
      }
      j--;
    }
    size_t open = j;  // index of '('
    while (j > 0 && (line[j - 1] == ' ' || line[j - 1] == '\t')) j--;
    if (j == 0 || !detail::is_ident_char(line[j - 1])) return site;
    size_t start = 0;
    site.name = read_ident_back(line, j - 1, &start);
    site.arg_count = count_args(line, open);
    if (start > 0 && line[start - 1] == '.') {
      size_t rs = 0;
      site.receiver = start >= 2 ? read_ident_back(line, start - 2, &rs) : "";
      site.kind = ExprSite::CallMember;
    } else {
      site.kind = ExprSite::CallUnqualified;
    }
    return site;
  }
  if (c == ']') {
    int depth = 0;
    while (j > 0) {
      char d = line[j - 1];
      if (d == ']') depth++;
      if (d == '[') {
        depth--;
        if (depth == 0) { j--; break; }
      }
      j--;
    }
    if (j == 0 || !detail::is_ident_char(line[j - 1])) return site;
    size_t start = 0;
    site.name = read_ident_back(line, j - 1, &start);
    site.kind = ExprSite::Indexed;
    site.via_index = true;
    if (start > 0 && line[start - 1] == '.') {
      size_t rs = 0;
      site.receiver = start >= 2 ? read_ident_back(line, start - 2, &rs) : "";
    }
    return site;
  }
  if (detail::is_ident_char(c)) {
    size_t start = 0;
    site.name = read_ident_back(line, j - 1, &start);
    if (detail::is_java_keyword(site.name) || site.name.empty()) return site;
    site.kind = ExprSite::BareName;
    if (start > 0 && line[start - 1] == '.') {
      size_t rs = 0;
      site.receiver = start >= 2 ? read_ident_back(line, start - 2, &rs) : "";
      site.kind = ExprSite::Member;
    }
    return site;
  }
  return site;
}

struct EnclosingCall {
  std::string callee;
  std::string receiver;
  int arg_index = -1;
  int arg_count = -1;
};

// For a caret sitting on an argument: find the call it belongs to.
inline std::optional<EnclosingCall> enclosing_call(const std::string& line,
                                                   int col) {
  if (col < 1) return std::nullopt;
  int depth = 0;
  int commas = 0;
  size_t i = static_cast<size_t>(col - 1);
  if (i > line.size()) return std::nullopt;
  size_t j = i;
  while (j > 0) {
    char c = line[j - 1];
    if (c == ')' || c == ']') depth++;
    else if (c == '[') depth--;
    else if (c == ',' && depth == 0) commas++;
    else if (c == '(') {
      if (depth == 0) {
        size_t k = j - 1;
        while (k > 0 && (line[k - 1] == ' ' || line[k - 1] == '\t')) k--;
        if (k == 0 || !detail::is_ident_char(line[k - 1])) return std::nullopt;
        size_t start = 0;
        EnclosingCall call;
        call.callee = read_ident_back(line, k - 1, &start);
        if (detail::is_java_keyword(call.callee)) return std::nullopt;
        call.arg_index = commas;
        call.arg_count = count_args(line, j - 1);
        if (start > 0 && line[start - 1] == '.') {
          size_t rs = 0;
          call.receiver =
              start >= 2 ? read_ident_back(line, start - 2, &rs) : "";
        }
        return call;
      }
      depth--;
    }
    j--;
  }
  return std::nullopt;
}

// ---------------- declaration-slot resolution ----------------

struct SlotTarget {
  bool original = false;
  // synthetic slot
  std::string owner;
  std::string name;
  FixAction::Slot slot = FixAction::Slot::None;
  int param_index = -1;
  std::vector<std::string> member_params;  // identifies the overload
  int current_dims = 0;
  std::string current_base;
  // original-region slot
  int line = 0;
  int col = 0;
  std::string type_text;  // full declared type span, with [] suffixes
};

struct OriginalDecl {
  int line = 0;
  int col = 0;
  std::string type_text;
  int dims = 0;
};

inline std::optional<OriginalDecl> find_original_declaration(
    const SnippetDocument& doc, const std::string& name, int near_line) {
  std::string text;
  for (int i = 1; i <= doc.original_line_count(); i++) {
    text += doc.current_line(i);
    text += "\n";
  }
  std::vector<detail::JToken> toks = detail::java_lex(text);
  std::vector<OriginalDecl> candidates;
  for (size_t i = 0; i + 1 < toks.size(); i++) {
    const detail::JToken& t = toks[i];
    bool typeish = (t.kind == detail::JTok::Ident &&
                    !detail::is_java_keyword(t.text)) ||
                   (t.kind == detail::JTok::Keyword &&
                    detail::is_primitive_name(t.text));
    if (!typeish) continue;
    if (i > 0 && toks[i - 1].kind == detail::JTok::Keyword &&
        toks[i - 1].text == "new")
      continue;
    if (i > 0 && toks[i - 1].kind == detail::JTok::Punct &&
        toks[i - 1].text == ".")
      continue;
    // optional dotted tail and [] pairs
    size_t j = i + 1;
    while (j + 1 < toks.size() && toks[j].kind == detail::JTok::Punct &&
           toks[j].text == "." && toks[j + 1].kind == detail::JTok::Ident)
      j += 2;
    int dims = 0;
    while (j + 1 < toks.size() && toks[j].kind == detail::JTok::Punct &&
           toks[j].text == "[" && toks[j + 1].kind == detail::JTok::Punct &&
           toks[j + 1].text == "]") {
      dims++;
      j += 2;
    }
    if (j >= toks.size()) break;
    const detail::JToken& n = toks[j];
    if (n.kind != detail::JTok::Ident || n.text != name) continue;
    if (j + 1 >= toks.size()) continue;
    const detail::JToken& after = toks[j + 1];
    if (after.kind != detail::JTok::Punct) continue;
    if (after.text != ";" && after.text != "=" && after.text != "," &&
        after.text != ")" && after.text != ":")
      continue;
    if (toks[j - (dims * 2)].line != t.line) continue;  // same-line type+name
    OriginalDecl d;
    d.line = t.line;
    d.col = t.col;
    d.dims = dims;
    const std::string& line_text = doc.current_line(t.line);
    const detail::JToken& last_type_tok = toks[j - 1];
    size_t end_col = last_type_tok.col + last_type_tok.text.size() - 1;
    if (last_type_tok.kind == detail::JTok::Punct && last_type_tok.text == "]")
      end_col = last_type_tok.col;
    d.type_text =
        line_text.substr(t.col - 1, end_col - (t.col - 1));
    candidates.push_back(std::move(d));
  }
  if (candidates.empty()) return std::nullopt;
  const OriginalDecl* best = nullptr;
  for (const OriginalDecl& c : candidates) {
    if (c.line <= near_line && (!best || c.line > best->line)) best = &c;
  }
  if (!best) {
    for (const OriginalDecl& c : candidates)
      if (!best || c.line < best->line) best = &c;
  }
  return *best;
}

inline std::optional<OriginalDecl> find_original_method_decl(
    const SnippetDocument& doc, const std::string& name) {
  std::string text;
  for (int i = 1; i <= doc.original_line_count(); i++) {
    text += doc.current_line(i);
    text += "\n";
  }
  std::vector<detail::JToken> toks = detail::java_lex(text);
  for (size_t i = 0; i + 2 < toks.size(); i++) {
    const detail::JToken& t = toks[i];
    bool typeish = (t.kind == detail::JTok::Ident &&
                    !detail::is_java_keyword(t.text)) ||
                   (t.kind == detail::JTok::Keyword &&
                    (detail::is_primitive_name(t.text) || t.text == "void"));
    if (!typeish) continue;
    size_t j = i + 1;
    while (j + 1 < toks.size() && toks[j].kind == detail::JTok::Punct &&
           toks[j].text == "[" && toks[j + 1].kind == detail::JTok::Punct &&
           toks[j + 1].text == "]")
      j += 2;
    if (j + 1 >= toks.size()) break;
    if (toks[j].kind != detail::JTok::Ident || toks[j].text != name) continue;
    if (!(toks[j + 1].kind == detail::JTok::Punct && toks[j + 1].text == "("))
      continue;
    OriginalDecl d;
    d.line = t.line;
    d.col = t.col;
    d.type_text = t.text;
    return d;
  }
  return std::nullopt;
}

inline std::optional<SlotTarget> synth_member_slot(const SnippetDocument& doc,
                                                   const ExprSite& site) {
  if (site.kind == ExprSite::CallUnqualified ||
      site.kind == ExprSite::CallMember) {
    auto methods = doc.members_named(site.name, DeclKind::Method);
    const SynthesizedDeclaration* match = nullptr;
    int matches = 0;
    for (const SynthesizedDeclaration* m : methods) {
      if (site.arg_count >= 0 &&
          static_cast<int>(m->param_types.size()) != site.arg_count)
        continue;
      match = m;
      matches++;
    }
    if (matches != 1) return std::nullopt;
    SlotTarget t;
    t.owner = match->owner;
    t.name = match->name;
    t.slot = FixAction::Slot::ReturnType;
    t.member_params = match->param_types;
    t.current_base = match->return_or_field_type;
    t.current_dims = match->array_dims;
    return t;
  }
  // fields: wrapper first, then UNKNOWN, then unique anywhere
  auto make = [&](const SynthesizedDeclaration* f) {
    SlotTarget t;
    t.owner = f->owner;
    t.name = f->name;
    t.slot = FixAction::Slot::FieldType;
    t.current_base = f->return_or_field_type;
    t.current_dims = f->array_dims;
    return t;
  };
  if (doc.has_wrapper()) {
    if (const SynthesizedDeclaration* f =
            doc.find_member(doc.wrapper_name(), DeclKind::Field, site.name, -1))
      return make(f);
  }
  if (const SynthesizedDeclaration* f = doc.find_member(
          doc.unknown_class_name(), DeclKind::Field, site.name, -1))
    return make(f);
  auto fields = doc.members_named(site.name, DeclKind::Field);
  if (fields.size() == 1) return make(fields[0]);
  return std::nullopt;
}

// Resolves the declaration slot behind the expression at `site`; falls back
// to a user-declared variable in the original region when the document has
// one and the diagnostic points at original text.
inline std::optional<SlotTarget> resolve_slot(const SnippetDocument& doc,
                                              const ExprSite& site,
                                              int original_line_hint) {
  if (site.kind == ExprSite::None || site.name.empty()) return std::nullopt;
  if (auto t = synth_member_slot(doc, site)) return t;
  if (site.kind == ExprSite::CallUnqualified || site.kind == ExprSite::CallMember)
    return std::nullopt;  // user-declared methods keep their concrete types
  if (auto d =
          find_original_declaration(doc, site.name, original_line_hint)) {
    SlotTarget t;
    t.original = true;
    t.line = d->line;
    t.col = d->col;
    t.type_text = d->type_text;
    t.current_dims = d->dims;
    return t;
  }
  return std::nullopt;
}

}  // namespace engine

// ---------------------------------------------------------------------------

class FixEngine {
 public:
  explicit FixEngine(SnippetDocument& doc) : doc_(doc) {}

  // fix_error: deterministic rule dispatch for one diagnostic. Returns a
  // Defer action when no rule applies to the current document state.
  FixAction fix_error(const Diagnostic& d, const LineOrigin& origin) const {
    switch (d.kind) {
      case ErrorKind::CannotFindSymbol: return rule_cannot_find_symbol(d);
      case ErrorKind::ArrayRequired: return rule_array_required(d, origin);
      case ErrorKind::MethodNotApplicable: return rule_not_applicable(d);
      case ErrorKind::OperatorNotApplicable: return rule_operator(d, origin);
      case ErrorKind::IncompatibleTypes:
      case ErrorKind::InconvertibleTypes: return rule_incompatible(d, origin);
      case ErrorKind::ReturnTypeRequired: return rule_return_type_required(d);
      case ErrorKind::NonStaticFromStatic: return rule_non_static(d, origin);
      case ErrorKind::ForEachNotApplicable: return rule_for_each(d, origin);
      case ErrorKind::ExceptionNeverThrown: return rule_never_thrown(d);
      case ErrorKind::Unrecognized: break;
    }
    return defer(d, "unrecognized diagnostic");
  }

  // fix_all: applies one pass worth of fixes in reported order.
  PassOutcome fix_all(const std::vector<Diagnostic>& diags,
                      const Rendered& rendered) {
    PassOutcome out;
    std::set<std::string> touched_slots;
    for (const Diagnostic& d : diags) {
      LineOrigin origin;
      int idx = d.location.line - 1;
      if (idx >= 0 && idx < static_cast<int>(rendered.lines.size()))
        origin = rendered.lines[idx];
      FixAction action = d.kind == ErrorKind::Unrecognized
                             ? defer(d, "unrecognized diagnostic")
                             : fix_error(d, origin);
      if (action.kind != FixAction::Kind::Defer) {
        std::string slot_key = slot_guard_key(action);
        if (!slot_key.empty() && touched_slots.count(slot_key)) {
          action = defer(d, "slot already modified this pass");
        } else {
          ApplyResult res = doc_.apply_fix(action);
          switch (res) {
            case ApplyResult::Applied:
              out.applied++;
              if (!slot_key.empty()) touched_slots.insert(slot_key);
              break;
            case ApplyResult::Duplicate:
              out.deduped++;
              break;
            case ApplyResult::Conflict:
            case ApplyResult::Stale:
              out.deferred++;
              out.defer_reasons.push_back(doc_.ledger().back().reason);
              break;
            case ApplyResult::Deferred:
              out.deferred++;
              break;
          }
          continue;
        }
      }
      doc_.apply_fix(action);
      out.deferred++;
      out.defer_reasons.push_back(action.reason);
    }
    return out;
  }

 private:
  SnippetDocument& doc_;

  static FixAction defer(const Diagnostic& d, std::string reason) {
    FixAction a;
    a.kind = FixAction::Kind::Defer;
    a.reason = std::move(reason);
    a.provenance = d.message;
    return a;
  }

  static std::string slot_guard_key(const FixAction& a) {
    using K = FixAction::Kind;
    if (a.kind != K::SetType && a.kind != K::AddArrayDim &&
        a.kind != K::AddStaticModifier)
      return "";
    if (a.original)
      return "orig:" + std::to_string(a.line) + ":" + std::to_string(a.col);
    std::string k = "synth:" + a.owner + "." + a.name + "/";
    for (const std::string& p : a.param_types) k += p + ",";
    k += ":" + std::to_string(static_cast<int>(a.slot)) + ":" +
         std::to_string(a.param_index);
    return k;
  }

  static std::string normalize_type(const std::string& t) {
    if (t == "<null>" || t == "<nulltype>" || t == "<error>" || t == "<any>" ||
        t.empty())
      return "";  // substituted by the caller
    return t;
  }

  std::vector<std::string> normalize_params(
      const std::vector<std::string>& in) const {
    std::vector<std::string> out;
    for (const std::string& p : in) {
      std::string n = normalize_type(p);
      out.push_back(n.empty() ? doc_.unknown_class_name() : n);
    }
    return out;
  }

  bool owner_synthesizable(const std::string& owner) const {
    if (owner.empty()) return false;
    if (doc_.is_wrapper_name(owner)) return true;
    if (doc_.is_synth_class(owner)) return true;
    if (owner == doc_.unknown_class_name()) return true;
    if (doc_.user_class(owner)) return true;
    return false;
  }

  std::string fallback_owner() const {
    return doc_.has_wrapper() ? doc_.wrapper_name() : doc_.unknown_class_name();
  }

  bool is_unknown_base(const std::string& type_text) const {
    return engine::split_type(type_text).first == doc_.unknown_class_name();
  }

  // ---------------- rules ----------------

  FixAction rule_cannot_find_symbol(const Diagnostic& d) const {
    if (!d.symbol) return defer(d, "symbol detail missing");
    const SymbolRef& sym = *d.symbol;
    FixAction a;
    a.provenance = d.message;
    switch (sym.kind) {
      case SymbolKind::Class:
      case SymbolKind::Interface: {
        a.kind = FixAction::Kind::AddClass;
        a.name = sym.name;
        return a;
      }
      case SymbolKind::Variable: {
        std::string owner = sym.owner ? *sym.owner : fallback_owner();
        if (!owner_synthesizable(owner))
          return defer(d, "owner not synthesizable: " + owner);
        a.kind = FixAction::Kind::AddField;
        a.owner = owner;
        a.name = sym.name;
        a.type_text = doc_.unknown_class_name();
        // wrapper fields are always static; class-qualified access on a
        // synthesized class implies a static member
        a.make_static = doc_.is_wrapper_name(owner) ||
                        (d.location_is_class_qualified &&
                         doc_.is_synth_class(owner));
        return a;
      }
      case SymbolKind::Method:
      case SymbolKind::Constructor: {
        std::string owner = sym.owner ? *sym.owner : fallback_owner();
        if (sym.kind == SymbolKind::Constructor) owner = sym.name;
        if (!owner_synthesizable(owner))
          return defer(d, "owner not synthesizable: " + owner);
        a.kind = sym.kind == SymbolKind::Method
                     ? FixAction::Kind::AddMethod
                     : FixAction::Kind::AddConstructor;
        a.owner = owner;
        a.name = sym.name;
        a.param_types =
            normalize_params(sym.signature.value_or(std::vector<std::string>{}));
        a.type_text = doc_.unknown_class_name();
        a.make_static = doc_.is_wrapper_name(owner) ||
                        (d.location_is_class_qualified &&
                         doc_.is_synth_class(owner));
        return a;
      }
      case SymbolKind::Package:
        return defer(d, "packages are not synthesizable");
    }
    return defer(d, "unhandled symbol kind");
  }

  FixAction rule_array_required(const Diagnostic& d,
                                const LineOrigin& origin) const {
    engine::ExprSite site = engine::site_at(d.source_excerpt, d.location.column);
    if (site.kind == engine::ExprSite::None)
      return defer(d, "indexed expression not recognized");
    int hint = origin.region == LineRegion::Original ? origin.original_index : 0;
    auto slot = engine::resolve_slot(doc_, site, hint);
    if (!slot) return defer(d, "indexed declaration not found: " + site.name);
    return make_add_dim(*slot, d);
  }

  FixAction make_add_dim(const engine::SlotTarget& slot,
                         const Diagnostic& d) const {
    FixAction a;
    a.provenance = d.message;
    a.kind = FixAction::Kind::AddArrayDim;
    if (slot.original) {
      a.original = true;
      a.line = slot.line;
      a.col = slot.col;
      a.expected = slot.type_text;
      a.replacement = slot.type_text + "[]";
    } else {
      a.owner = slot.owner;
      a.name = slot.name;
      a.slot = slot.slot;
      a.param_index = slot.param_index;
      a.param_types = slot.member_params;
    }
    return a;
  }

  FixAction make_set_type(const engine::SlotTarget& slot,
                          const std::string& base, int extra_dims,
                          const Diagnostic& d) const {
    FixAction a;
    a.provenance = d.message;
    a.kind = FixAction::Kind::SetType;
    if (slot.original) {
      a.original = true;
      a.line = slot.line;
      a.col = slot.col;
      a.expected = slot.type_text;
      a.replacement = engine::with_dims(base, slot.current_dims + extra_dims);
    } else {
      a.owner = slot.owner;
      a.name = slot.name;
      a.slot = slot.slot;
      a.param_index = slot.param_index;
      a.param_types = slot.member_params;
      a.type_text = engine::with_dims(base, extra_dims);
    }
    return a;
  }

  FixAction rule_not_applicable(const Diagnostic& d) const {
    if (!d.symbol) return defer(d, "invocation symbol missing");
    const SymbolRef& sym = *d.symbol;
    std::string owner = sym.owner ? *sym.owner : "";
    bool ctor = sym.kind == SymbolKind::Constructor;
    if (owner.empty()) owner = ctor ? sym.name : fallback_owner();
    if (!owner_synthesizable(owner))
      return defer(d, "declaration is user-written: " + owner);
    std::vector<std::string> found =
        normalize_params(sym.signature.value_or(std::vector<std::string>{}));
    int arity = static_cast<int>(found.size());

    DeclKind mkind = ctor ? DeclKind::Constructor : DeclKind::Method;
    const SynthesizedDeclaration* existing =
        doc_.find_member(owner, mkind, ctor ? owner : sym.name, arity);
    if (!existing) {
      // no overload of this arity: synthesize one keyed by (name, arity)
      if (!ctor && doc_.user_class(owner) &&
          !doc_.find_member(owner, DeclKind::Method, sym.name, -1) &&
          doc_.members_named(sym.name, DeclKind::Method).empty()) {
        // method lives in user-written code; adapting it would edit the
        // original region
        return defer(d, "declaration is user-written: " + sym.name);
      }
      FixAction a;
      a.provenance = d.message;
      a.kind = ctor ? FixAction::Kind::AddConstructor : FixAction::Kind::AddMethod;
      a.owner = owner;
      a.name = ctor ? owner : sym.name;
      a.param_types = found;
      a.type_text = doc_.unknown_class_name();
      if (!ctor) {
        auto overloads = doc_.members_named(sym.name, DeclKind::Method);
        a.make_static = !overloads.empty() ? overloads[0]->is_static
                                           : doc_.is_wrapper_name(owner);
      }
      return a;
    }
    // same arity exists: refine the first UNKNOWN parameter slot
    for (int i = 0; i < arity; i++) {
      if (is_unknown_base(existing->param_types[i]) &&
          !is_unknown_base(found[i])) {
        engine::SlotTarget slot;
        slot.owner = existing->owner;
        slot.name = existing->name;
        slot.slot = FixAction::Slot::Param;
        slot.param_index = i;
        slot.member_params = existing->param_types;
        auto [base, dims] = engine::split_type(found[i]);
        return make_set_type(slot, base, dims, d);
      }
    }
    return defer(d, "no adaptable parameter slot");
  }

  FixAction rule_operator(const Diagnostic& d, const LineOrigin& origin) const {
    std::string found = d.found_type.value_or("");
    std::string required = d.required_type.value_or("");
    int hint = origin.region == LineRegion::Original ? origin.original_index : 0;

    // unary form: single operand type in `found`
    if (!found.empty() && required.empty()) {
      if (!is_unknown_base(found)) return defer(d, "operand type is concrete");
      std::string target = unary_target_type(d.message);
      if (target.empty()) return defer(d, "operator has no inferable type");
      engine::ExprSite site =
          engine::site_at(d.source_excerpt, d.location.column + 1);
      if (site.kind == engine::ExprSite::None)
        site = engine::site_left_of(d.source_excerpt, d.location.column);
      auto slot = engine::resolve_slot(doc_, site, hint);
      if (!slot) return defer(d, "operand declaration not found");
      return make_set_type(*slot, target, 0, d);
    }

    if (found.empty() || required.empty())
      return defer(d, "operand types missing");
    bool left_unknown = is_unknown_base(found);
    bool right_unknown = is_unknown_base(required);
    if (left_unknown == right_unknown)
      return defer(d, "no single unknown operand");

    engine::ExprSite site =
        left_unknown
            ? engine::site_left_of(d.source_excerpt, d.location.column)
            : engine::site_at(d.source_excerpt,
                              after_operator_col(d.source_excerpt,
                                                 d.location.column));
    auto slot = engine::resolve_slot(doc_, site, hint);
    if (!slot) return defer(d, "operand declaration not found");
    auto [base, dims] =
        engine::split_type(left_unknown ? required : found);
    auto [ubase, udims] = engine::split_type(left_unknown ? found : required);
    (void)ubase;
    int extra = dims - udims;
    if (extra < 0) return defer(d, "operand has more dimensions than target");
    return make_set_type(*slot, base, extra, d);
  }

  static int after_operator_col(const std::string& line, int col) {
    size_t i = static_cast<size_t>(col - 1);
    while (i < line.size() && !detail::is_ident_char(line[i]) &&
           line[i] != '(')
      i++;
    return static_cast<int>(i) + 1;
  }

  static std::string unary_target_type(const std::string& message) {
    size_t q = message.find("operator '");
    if (q == std::string::npos) return "";
    char op = q + 10 < message.size() ? message[q + 10] : '\0';
    switch (op) {
      case '!': return "boolean";
      case '~':
      case '+':
      case '-': return "int";
      default: return "";
    }
  }

  FixAction rule_incompatible(const Diagnostic& d,
                              const LineOrigin& origin) const {
    std::string found = d.found_type.value_or("");
    std::string required = d.required_type.value_or("");
    if (found.empty() || required.empty())
      return defer(d, "conversion endpoints missing");
    int hint = origin.region == LineRegion::Original ? origin.original_index : 0;

    // a synthesized plain class flowing into Throwable marks a missing
    // exception declaration
    if ((required == "Throwable" || required == "java.lang.Throwable") &&
        doc_.is_synth_class(found) && !doc_.synth_class_is_exception(found)) {
      FixAction a;
      a.provenance = d.message;
      a.kind = FixAction::Kind::PromoteToException;
      a.name = found;
      return a;
    }

    bool found_unknown = is_unknown_base(found);
    bool required_unknown = is_unknown_base(required);
    if (found_unknown == required_unknown)
      return defer(d, "no single unknown side");

    if (found_unknown) {
      // the expression at the caret has the UNKNOWN-typed declaration
      engine::ExprSite site =
          engine::site_at(d.source_excerpt, d.location.column);
      auto slot = engine::resolve_slot(doc_, site, hint);
      if (!slot) return defer(d, "expression declaration not found");
      auto [base, rdims] = engine::split_type(required);
      auto [fbase, fdims] = engine::split_type(found);
      (void)fbase;
      int extra = rdims - fdims;
      if (extra < 0) return defer(d, "dimension mismatch");
      return make_set_type(*slot, base, extra, d);
    }

    // required side is UNKNOWN: the conversion target slot needs the type
    auto [base, fdims] = engine::split_type(found);
    auto [rbase, rdims] = engine::split_type(required);
    (void)rbase;
    int extra = fdims - rdims;
    if (extra < 0) return defer(d, "dimension mismatch");

    if (auto call = engine::enclosing_call(d.source_excerpt, d.location.column)) {
      auto methods = doc_.members_named(call->callee, DeclKind::Method);
      const SynthesizedDeclaration* match = nullptr;
      int matches = 0;
      for (const SynthesizedDeclaration* m : methods) {
        if (static_cast<int>(m->param_types.size()) != call->arg_count) continue;
        match = m;
        matches++;
      }
      if (matches == 0 && !call->receiver.empty()) {
        // constructor argument: new Foo(arg)
        auto ctors = doc_.members_named(call->callee, DeclKind::Constructor);
        for (const SynthesizedDeclaration* m : ctors) {
          if (static_cast<int>(m->param_types.size()) != call->arg_count)
            continue;
          match = m;
          matches++;
        }
      }
      if (matches == 1 && call->arg_index >= 0 &&
          call->arg_index < static_cast<int>(match->param_types.size()) &&
          is_unknown_base(match->param_types[call->arg_index])) {
        engine::SlotTarget slot;
        slot.owner = match->owner;
        slot.name = match->name;
        slot.slot = FixAction::Slot::Param;
        slot.param_index = call->arg_index;
        slot.member_params = match->param_types;
        return make_set_type(slot, base, extra, d);
      }
    }

    // assignment target: lhs of `=` left of the caret
    size_t eq = find_assign_eq(d.source_excerpt, d.location.column);
    if (eq != std::string::npos) {
      engine::ExprSite lhs =
          engine::site_left_of(d.source_excerpt, static_cast<int>(eq) + 1);
      auto slot = engine::resolve_slot(doc_, lhs, hint);
      if (slot) return make_set_type(*slot, base, extra, d);
    }
    return defer(d, "conversion target slot not found");
  }

  static size_t find_assign_eq(const std::string& line, int caret_col) {
    size_t limit = caret_col > 0 &&
                           static_cast<size_t>(caret_col - 1) <= line.size()
                       ? static_cast<size_t>(caret_col - 1)
                       : line.size();
    for (size_t i = limit; i-- > 0;) {
      if (line[i] != '=') continue;
      if (i > 0 && (line[i - 1] == '=' || line[i - 1] == '!' ||
                    line[i - 1] == '<' || line[i - 1] == '>' ||
                    line[i - 1] == '+' || line[i - 1] == '-' ||
                    line[i - 1] == '*' || line[i - 1] == '/' ||
                    line[i - 1] == '%' || line[i - 1] == '&' ||
                    line[i - 1] == '|' || line[i - 1] == '^'))
        continue;
      if (i + 1 < line.size() && line[i + 1] == '=') continue;
      return i;
    }
    return std::string::npos;
  }

  FixAction rule_return_type_required(const Diagnostic& d) const {
    if (!doc_.has_wrapper())
      return defer(d, "enclosing class is user-written");
    // member name: identifier preceding '(' on the echoed line
    const std::string& line = d.source_excerpt;
    size_t paren = line.find('(');
    if (paren == std::string::npos) return defer(d, "member name not found");
    size_t j = paren;
    while (j > 0 && (line[j - 1] == ' ' || line[j - 1] == '\t')) j--;
    if (j == 0 || !detail::is_ident_char(line[j - 1]))
      return defer(d, "member name not found");
    size_t start = 0;
    std::string name = engine::read_ident_back(line, j - 1, &start);
    if (name.empty()) return defer(d, "member name not found");
    FixAction a;
    a.provenance = d.message;
    a.kind = FixAction::Kind::RenameEnclosingToConstructor;
    a.name = name;
    return a;
  }

  FixAction rule_non_static(const Diagnostic& d, const LineOrigin& origin) const {
    if (!d.symbol) return defer(d, "member symbol missing");
    const SymbolRef& sym = *d.symbol;
    if (sym.name == "this") return defer(d, "'this' in a static context");
    int hint = origin.region == LineRegion::Original ? origin.original_index : 0;

    if (sym.kind == SymbolKind::Variable) {
      auto fields = doc_.members_named(sym.name, DeclKind::Field);
      if (fields.size() == 1) {
        FixAction a;
        a.provenance = d.message;
        a.kind = FixAction::Kind::AddStaticModifier;
        a.owner = fields[0]->owner;
        a.name = fields[0]->name;
        a.slot = FixAction::Slot::FieldType;
        return a;
      }
      if (auto decl = engine::find_original_declaration(doc_, sym.name, hint)) {
        FixAction a;
        a.provenance = d.message;
        a.kind = FixAction::Kind::AddStaticModifier;
        a.original = true;
        a.line = decl->line;
        a.col = decl->col;
        a.expected = decl->type_text;
        a.replacement = "static ";
        return a;
      }
      return defer(d, "declaration not found: " + sym.name);
    }

    if (sym.kind == SymbolKind::Method) {
      int arity = sym.signature ? static_cast<int>(sym.signature->size()) : -1;
      auto methods = doc_.members_named(sym.name, DeclKind::Method);
      const SynthesizedDeclaration* match = nullptr;
      int matches = 0;
      for (const SynthesizedDeclaration* m : methods) {
        if (arity >= 0 && static_cast<int>(m->param_types.size()) != arity)
          continue;
        match = m;
        matches++;
      }
      if (matches == 1) {
        FixAction a;
        a.provenance = d.message;
        a.kind = FixAction::Kind::AddStaticModifier;
        a.owner = match->owner;
        a.name = match->name;
        a.param_types = match->param_types;
        a.slot = FixAction::Slot::ReturnType;
        return a;
      }
      if (auto decl = engine::find_original_method_decl(doc_, sym.name)) {
        FixAction a;
        a.provenance = d.message;
        a.kind = FixAction::Kind::AddStaticModifier;
        a.original = true;
        a.line = decl->line;
        a.col = decl->col;
        a.expected = decl->type_text;
        a.replacement = "static ";
        return a;
      }
      return defer(d, "declaration not found: " + sym.name);
    }
    return defer(d, "unhandled non-static symbol");
  }

  FixAction rule_for_each(const Diagnostic& d, const LineOrigin& origin) const {
    engine::ExprSite site = engine::site_at(d.source_excerpt, d.location.column);
    if (site.kind == engine::ExprSite::None)
      return defer(d, "iterable expression not recognized");
    int hint = origin.region == LineRegion::Original ? origin.original_index : 0;
    auto slot = engine::resolve_slot(doc_, site, hint);
    if (!slot) return defer(d, "iterable declaration not found: " + site.name);
    return make_add_dim(*slot, d);
  }

  FixAction rule_never_thrown(const Diagnostic& d) const {
    if (!d.symbol) return defer(d, "exception class missing");
    const std::string& name = d.symbol->name;
    if (doc_.is_synth_class(name) && !doc_.synth_class_is_exception(name)) {
      FixAction a;
      a.provenance = d.message;
      a.kind = FixAction::Kind::PromoteToException;
      a.name = name;
      return a;
    }
    return defer(d, "exception class is user-declared or already promoted");
  }
};

// Free-function forms of the module operations.
inline FixAction fix_error(SnippetDocument& doc, const Diagnostic& d,
                           const LineOrigin& origin = {}) {
  return FixEngine(doc).fix_error(d, origin);
}

inline PassOutcome fix_all(SnippetDocument& doc,
                           const std::vector<Diagnostic>& diags,
                           const Rendered& rendered) {
  return FixEngine(doc).fix_all(diags, rendered);
}

}  // namespace jstitch
