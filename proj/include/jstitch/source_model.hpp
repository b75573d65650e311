#pragma once

// Two-region snippet document: the original lines are preserved (token-level
// overlay edits only), every generated declaration lives in a synthetic
// region appended after them. Rendering is deterministic and replaying a
// ledger over the same input reproduces the final text byte for byte.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "jstitch/detail/java_lex.hpp"
#include "jstitch/detail/strings.hpp"
#include "jstitch/errors.hpp"

namespace jstitch {

enum class SnippetShape { CompilationUnit, MemberSet, StatementBlock };

inline const char* to_string(SnippetShape s) {
  switch (s) {
    case SnippetShape::CompilationUnit: return "CompilationUnit";
    case SnippetShape::MemberSet: return "MemberSet";
    case SnippetShape::StatementBlock: return "StatementBlock";
  }
  return "?";
}

enum class DeclKind { Class, Field, Method, Constructor, ExceptionClass };

inline const char* to_string(DeclKind k) {
  switch (k) {
    case DeclKind::Class: return "class";
    case DeclKind::Field: return "field";
    case DeclKind::Method: return "method";
    case DeclKind::Constructor: return "constructor";
    case DeclKind::ExceptionClass: return "exception_class";
  }
  return "?";
}

struct SynthesizedDeclaration {
  std::string owner;  // owning class name ("" for top-level classes)
  DeclKind kind = DeclKind::Field;
  std::string name;
  std::vector<std::string> param_types;   // methods/constructors
  std::string return_or_field_type = "UNKNOWN";  // base name, no dims
  int array_dims = 0;                     // dims on the field/return slot
  bool is_static = false;
};

struct FixAction {
  enum class Kind {
    AddClass,
    AddField,
    AddMethod,
    AddConstructor,
    SetType,
    AddArrayDim,
    AddStaticModifier,
    PromoteToException,
    RenameEnclosingToConstructor,
    Defer,
  };
  enum class Slot { None, FieldType, ReturnType, Param };

  Kind kind = Kind::Defer;
  std::string owner;
  std::string name;
  std::vector<std::string> param_types;
  Slot slot = Slot::None;
  int param_index = -1;
  bool make_static = false;
  std::string type_text;  // SetType payload: base type, may carry [] suffixes

  // original-region target (token splice against the line's current text)
  bool original = false;
  int line = 0;             // 1-based original line index
  int col = 0;              // 1-based column in the line's current text
  std::string expected;     // token that must sit at (line, col)
  std::string replacement;  // spliced text ("" means insert `expected` stays)

  std::string reason;       // Defer
  std::string provenance;   // first line of the diagnostic that produced this

  // Identity used for deduplication and idempotence.
  std::string key() const {
    std::string k = std::to_string(static_cast<int>(kind));
    k += "|" + owner + "|" + name + "|";
    for (const std::string& p : param_types) k += p + ",";
    k += "|" + std::to_string(static_cast<int>(slot));
    k += "|" + std::to_string(param_index);
    k += "|" + type_text;
    k += "|" + std::to_string(make_static ? 1 : 0);
    if (original)
      k += "|@" + std::to_string(line) + ":" + std::to_string(col) + ":" +
           expected + ">" + replacement;
    if (kind == Kind::Defer) k += "|" + reason + "|" + provenance;
    return k;
  }
};

inline const char* to_string(FixAction::Kind k) {
  switch (k) {
    case FixAction::Kind::AddClass: return "add_class";
    case FixAction::Kind::AddField: return "add_field";
    case FixAction::Kind::AddMethod: return "add_method";
    case FixAction::Kind::AddConstructor: return "add_constructor";
    case FixAction::Kind::SetType: return "set_type";
    case FixAction::Kind::AddArrayDim: return "add_array_dim";
    case FixAction::Kind::AddStaticModifier: return "add_static_modifier";
    case FixAction::Kind::PromoteToException: return "promote_to_exception";
    case FixAction::Kind::RenameEnclosingToConstructor: return "rename_enclosing";
    case FixAction::Kind::Defer: return "defer";
  }
  return "?";
}

enum class ApplyResult { Applied, Duplicate, Conflict, Stale, Deferred };

// ---------------------------------------------------------------------------
// Shape classification

namespace detail {

struct Chunk {
  size_t first = 0, last = 0;  // token index range [first, last]
};

inline std::vector<Chunk> top_level_chunks(const std::vector<JToken>& toks) {
  std::vector<Chunk> chunks;
  int brace = 0, paren = 0;
  size_t start = 0;
  for (size_t i = 0; i < toks.size(); i++) {
    const JToken& t = toks[i];
    if (t.kind != JTok::Punct) continue;
    if (t.text == "(") paren++;
    else if (t.text == ")") paren = paren > 0 ? paren - 1 : 0;
    else if (t.text == "{") brace++;
    else if (t.text == "}") {
      brace = brace > 0 ? brace - 1 : 0;
      if (brace == 0 && paren == 0) {
        // close of a top-level body; also swallow a trailing ';'
        size_t end = i;
        if (i + 1 < toks.size() && toks[i + 1].kind == JTok::Punct &&
            toks[i + 1].text == ";")
          end = ++i;
        chunks.push_back({start, end});
        start = i + 1;
      }
    } else if (t.text == ";" && brace == 0 && paren == 0) {
      chunks.push_back({start, i});
      start = i + 1;
    }
  }
  if (start < toks.size()) chunks.push_back({start, toks.size() - 1});
  return chunks;
}

enum class ChunkClass { TypeDecl, MemberOnly, StatementOnly, Ambiguous };

inline ChunkClass classify_chunk(const std::vector<JToken>& toks,
                                 const Chunk& ch) {
  size_t i = ch.first;
  auto at = [&](size_t k) -> const JToken* {
    return k <= ch.last && k < toks.size() ? &toks[k] : nullptr;
  };
  // skip annotations and modifiers
  bool saw_member_modifier = false;
  while (const JToken* t = at(i)) {
    if (t->kind == JTok::Punct && t->text == "@") {
      i++;
      if (at(i) && at(i)->kind == JTok::Ident) i++;
      continue;
    }
    if (t->kind == JTok::Keyword && is_modifier_keyword(t->text)) {
      if (t->text != "final") saw_member_modifier = true;
      i++;
      continue;
    }
    break;
  }
  const JToken* t = at(i);
  if (!t) return ChunkClass::Ambiguous;
  if (t->kind == JTok::Keyword &&
      (t->text == "class" || t->text == "interface" || t->text == "enum"))
    return ChunkClass::TypeDecl;
  if (t->kind == JTok::Keyword &&
      (t->text == "package" || t->text == "import"))
    return ChunkClass::TypeDecl;  // compilation-unit prologue

  // constructor-like: Ident '(' ... ')' ... '{'
  if (t->kind == JTok::Ident && at(i + 1) && at(i + 1)->kind == JTok::Punct &&
      at(i + 1)->text == "(") {
    int paren = 0;
    for (size_t k = i + 1; k <= ch.last; k++) {
      const JToken* p = at(k);
      if (!p) break;
      if (p->kind != JTok::Punct) continue;
      if (p->text == "(") paren++;
      else if (p->text == ")") {
        paren--;
        if (paren == 0) {
          for (size_t m = k + 1; m <= ch.last; m++) {
            const JToken* q = at(m);
            if (!q) break;
            if (q->kind == JTok::Punct && q->text == "{")
              return ChunkClass::MemberOnly;
            if (q->kind == JTok::Punct && q->text == ";")
              return ChunkClass::StatementOnly;  // plain call statement
            if (q->kind == JTok::Keyword && q->text == "throws") continue;
            if (q->kind == JTok::Ident || (q->kind == JTok::Punct && q->text == ","))
              continue;
            break;
          }
          break;
        }
      }
    }
    return ChunkClass::StatementOnly;
  }

  // type-led: (prim | Ident)(.Ident)*([])* Ident ...
  bool typeish = (t->kind == JTok::Ident) ||
                 (t->kind == JTok::Keyword &&
                  (is_primitive_name(t->text) || t->text == "void"));
  if (!typeish) return ChunkClass::StatementOnly;
  size_t j = i + 1;
  while (at(j) && at(j)->kind == JTok::Punct && at(j)->text == "." &&
         at(j + 1) && at(j + 1)->kind == JTok::Ident)
    j += 2;
  while (at(j) && at(j)->kind == JTok::Punct && at(j)->text == "[" &&
         at(j + 1) && at(j + 1)->kind == JTok::Punct && at(j + 1)->text == "]")
    j += 2;
  const JToken* name = at(j);
  if (!name || name->kind != JTok::Ident) return ChunkClass::StatementOnly;
  const JToken* after = at(j + 1);
  if (after && after->kind == JTok::Punct && after->text == "(") {
    // method declaration: look for '{' or ';' after the parameter list
    int paren = 0;
    for (size_t k = j + 1; k <= ch.last; k++) {
      const JToken* p = at(k);
      if (!p) break;
      if (p->kind != JTok::Punct) continue;
      if (p->text == "(") paren++;
      else if (p->text == ")") {
        paren--;
        if (paren == 0) {
          for (size_t m = k + 1; m <= ch.last; m++) {
            const JToken* q = at(m);
            if (!q) return ChunkClass::MemberOnly;  // abstract-ish tail
            if (q->kind == JTok::Punct && (q->text == "{" || q->text == ";"))
              return ChunkClass::MemberOnly;
          }
          return ChunkClass::MemberOnly;
        }
      }
    }
    return ChunkClass::MemberOnly;
  }
  // bare declaration `T x ...;` — valid as field and as local statement
  return saw_member_modifier ? ChunkClass::MemberOnly : ChunkClass::Ambiguous;
}

}  // namespace detail

inline SnippetShape classify_snippet_shape(std::string_view text) {
  std::vector<detail::JToken> toks = detail::java_lex(text);
  if (toks.empty())
    throw UnclassifiableInput("input has no tokens (empty or comments only)");
  std::vector<detail::Chunk> chunks = detail::top_level_chunks(toks);
  if (chunks.empty())
    throw UnclassifiableInput("input has no top-level constructs");

  detail::ChunkClass first = detail::classify_chunk(toks, chunks[0]);
  if (first == detail::ChunkClass::TypeDecl) return SnippetShape::CompilationUnit;

  bool any_member = false;
  for (const detail::Chunk& ch : chunks) {
    switch (detail::classify_chunk(toks, ch)) {
      case detail::ChunkClass::StatementOnly:
        return SnippetShape::StatementBlock;
      case detail::ChunkClass::MemberOnly:
        any_member = true;
        break;
      case detail::ChunkClass::TypeDecl:
        any_member = true;
        break;
      case detail::ChunkClass::Ambiguous:
        break;
    }
  }
  return any_member ? SnippetShape::MemberSet : SnippetShape::StatementBlock;
}

// ---------------------------------------------------------------------------
// Rendered-line provenance

enum class LineRegion {
  WrapperOpen,
  PlaceholderOpen,
  Original,
  PlaceholderClose,
  WrapperMember,
  WrapperClose,
  UserInsertion,
  Synthetic,
};

struct LineOrigin {
  LineRegion region = LineRegion::Synthetic;
  int original_index = 0;  // 1-based when region == Original
  std::string owner;       // class owning WrapperMember/UserInsertion/Synthetic
};

struct Rendered {
  std::string text;
  std::vector<LineOrigin> lines;  // parallel to text's lines
};

// ---------------------------------------------------------------------------

class SnippetDocument {
 public:
  // preprocess(): builds the document, wrapping non-compilation-unit shapes.
  static SnippetDocument preprocess(std::string_view input) {
    SnippetDocument doc;
    doc.shape_ = classify_snippet_shape(input);
    doc.original_lines_ = detail::split_lines(input);
    doc.current_lines_ = doc.original_lines_;

    std::set<std::string> idents;
    for (const detail::JToken& t : detail::java_lex(input))
      if (t.kind == detail::JTok::Ident) idents.insert(t.text);
    auto pick = [&](const char* base) {
      std::string n = base;
      for (int i = 1; idents.count(n); i++)
        n = std::string(base) + "_" + std::to_string(i);
      return n;
    };
    doc.unknown_name_ = pick("UNKNOWN");
    if (doc.shape_ != SnippetShape::CompilationUnit) {
      doc.wrapper_present_ = true;
      doc.wrapper_name_ = pick("JStitchWrapper");
      doc.wrapper_past_names_.insert(doc.wrapper_name_);
      doc.placeholder_method_ = pick("jstitchRun");
      doc.placeholder_present_ = doc.shape_ == SnippetShape::StatementBlock;
    } else {
      doc.scan_user_classes();
    }
    return doc;
  }

  SnippetShape shape() const { return shape_; }
  bool has_wrapper() const { return wrapper_present_; }
  const std::string& wrapper_name() const { return wrapper_name_; }
  const std::string& placeholder_method_name() const { return placeholder_method_; }
  const std::string& unknown_class_name() const { return unknown_name_; }
  const std::vector<FixAction>& ledger() const { return ledger_; }
  const std::vector<std::string>& original_lines() const { return original_lines_; }

  bool is_wrapper_name(std::string_view n) const {
    return wrapper_present_ && wrapper_past_names_.count(std::string(n)) > 0;
  }

  struct UserClass {
    std::string name;
    int decl_line = 0;   // 1-based line of the `class` keyword
    int close_line = 0;  // 1-based line of the matching '}'
    bool close_alone = false;  // '}' is the first non-blank char on its line
  };

  const std::vector<UserClass>& user_classes() const { return user_classes_; }

  const UserClass* user_class(std::string_view name) const {
    for (const UserClass& c : user_classes_)
      if (c.name == name) return &c;
    return nullptr;
  }

  bool is_synth_class(std::string_view name) const {
    return synth_class_index(name) >= 0;
  }

  bool unknown_class_present() const {
    if (!synth_classes_.empty()) {
      for (const SynthClass& c : synth_classes_)
        if (c.name == unknown_name_) return true;
    }
    for (const SynthesizedDeclaration& d : all_members())
      if (references_unknown(d)) return true;
    return false;
  }

  // find a synthesized member; arity < 0 matches fields/any
  const SynthesizedDeclaration* find_member(std::string_view owner,
                                            DeclKind kind,
                                            std::string_view name,
                                            int arity) const {
    const std::vector<SynthesizedDeclaration>* members = members_of(owner);
    if (!members) return nullptr;
    for (const SynthesizedDeclaration& d : *members) {
      if (d.kind != kind || d.name != name) continue;
      if (kind == DeclKind::Method || kind == DeclKind::Constructor) {
        if (static_cast<int>(d.param_types.size()) != arity) continue;
      }
      return &d;
    }
    return nullptr;
  }

  // All synthesized members named `name`, any owner (lexical fallback).
  std::vector<const SynthesizedDeclaration*> members_named(
      std::string_view name, DeclKind kind) const {
    std::vector<const SynthesizedDeclaration*> out;
    for (const SynthClass& c : synth_classes_)
      for (const SynthesizedDeclaration& d : c.members)
        if (d.kind == kind && d.name == name) out.push_back(&d);
    for (const SynthesizedDeclaration& d : wrapper_members_)
      if (d.kind == kind && d.name == name) out.push_back(&d);
    for (const auto& [cls, members] : user_insert_members_)
      for (const SynthesizedDeclaration& d : members)
        if (d.kind == kind && d.name == name) out.push_back(&d);
    return out;
  }

  bool synth_class_is_exception(std::string_view name) const {
    int i = synth_class_index(name);
    return i >= 0 && synth_classes_[i].is_exception;
  }

  // Snapshot of every synthesized declaration (all owners).
  std::vector<SynthesizedDeclaration> declarations() const {
    return all_members();
  }

  // (name, is_exception) for each synthesized top-level class.
  std::vector<std::pair<std::string, bool>> synthesized_classes() const {
    std::vector<std::pair<std::string, bool>> out;
    for (const SynthClass& c : synth_classes_)
      out.emplace_back(c.name, c.is_exception);
    return out;
  }

  const std::string& current_line(int idx) const {  // 1-based
    return current_lines_[idx - 1];
  }
  int original_line_count() const {
    return static_cast<int>(current_lines_.size());
  }

  // ---------------- rendering ----------------

  Rendered render_with_map() const {
    Rendered r;
    auto emit = [&](const std::string& line, LineOrigin origin) {
      r.text += line;
      r.text += "\n";
      r.lines.push_back(std::move(origin));
    };

    if (wrapper_present_) {
      emit("class " + wrapper_name_ + " {", {LineRegion::WrapperOpen, 0, ""});
      if (placeholder_present_)
        emit("    static void " + placeholder_method_ + "() {",
             {LineRegion::PlaceholderOpen, 0, ""});
    }
    for (size_t i = 0; i < current_lines_.size(); i++) {
      int line_no = static_cast<int>(i) + 1;
      for (const UserClass& c : user_classes_) {
        if (c.close_line != line_no) continue;
        auto it = user_insert_members_.find(c.name);
        if (it == user_insert_members_.end()) continue;
        for (const SynthesizedDeclaration& d : it->second)
          emit("    " + member_text(d, c.name),
               {LineRegion::UserInsertion, 0, c.name});
      }
      emit(current_lines_[i], {LineRegion::Original, line_no, ""});
    }
    if (wrapper_present_) {
      if (placeholder_present_)
        emit("    }", {LineRegion::PlaceholderClose, 0, ""});
      for (const SynthesizedDeclaration& d : wrapper_members_)
        emit("    " + member_text(d, wrapper_name_),
             {LineRegion::WrapperMember, 0, wrapper_name_});
      emit("}", {LineRegion::WrapperClose, 0, ""});
    }

    bool need_unknown = unknown_class_present();
    auto emit_class = [&](const SynthClass& c) {
      std::string head = "class " + c.name;
      if (c.is_exception) head += " extends RuntimeException";
      head += " {";
      if (c.members.empty()) {
        emit(head + " }", {LineRegion::Synthetic, 0, c.name});
        return;
      }
      emit(head, {LineRegion::Synthetic, 0, c.name});
      for (const SynthesizedDeclaration& d : c.members)
        emit("    " + member_text(d, c.name), {LineRegion::Synthetic, 0, c.name});
      emit("}", {LineRegion::Synthetic, 0, c.name});
    };
    for (const SynthClass& c : synth_classes_) {
      if (c.name == unknown_name_) continue;  // always last
      emit_class(c);
    }
    if (need_unknown) {
      int i = synth_class_index(unknown_name_);
      if (i >= 0) {
        emit_class(synth_classes_[i]);
      } else {
        SynthClass u;
        u.name = unknown_name_;
        emit_class(u);
      }
    }
    return r;
  }

  std::string render() const { return render_with_map().text; }

  // ---------------- edits ----------------

  ApplyResult apply_fix(const FixAction& action) {
    if (action.kind == FixAction::Kind::Defer) {
      ledger_.push_back(action);
      return ApplyResult::Deferred;
    }
    for (const FixAction& a : ledger_)
      if (a.key() == action.key()) return ApplyResult::Duplicate;

    ApplyResult res = apply_inner(action);
    if (res == ApplyResult::Applied) {
      ledger_.push_back(action);
    } else if (res == ApplyResult::Conflict || res == ApplyResult::Stale) {
      FixAction defer;
      defer.kind = FixAction::Kind::Defer;
      defer.reason = (res == ApplyResult::Conflict ? "conflict: " : "stale: ") +
                     std::string(to_string(action.kind)) + " " + action.owner +
                     (action.owner.empty() ? "" : ".") + action.name;
      defer.provenance = action.provenance;
      ledger_.push_back(defer);
    }
    return res;
  }

  // Re-applies a serialized ledger (Defer entries are recorded, not applied).
  void replay(const std::vector<FixAction>& actions) {
    for (const FixAction& a : actions) apply_fix(a);
  }

 private:
  SnippetShape shape_ = SnippetShape::CompilationUnit;
  std::vector<std::string> original_lines_;
  std::vector<std::string> current_lines_;  // originals + overlay splices
  bool wrapper_present_ = false;
  bool placeholder_present_ = false;
  std::string wrapper_name_;
  std::string placeholder_method_;
  std::set<std::string> wrapper_past_names_;
  std::string unknown_name_ = "UNKNOWN";
  std::vector<UserClass> user_classes_;

  struct SynthClass {
    std::string name;
    bool is_exception = false;
    std::vector<SynthesizedDeclaration> members;
  };
  std::vector<SynthClass> synth_classes_;                    // insertion order
  std::vector<SynthesizedDeclaration> wrapper_members_;      // insertion order
  std::map<std::string, std::vector<SynthesizedDeclaration>> user_insert_members_;
  std::vector<FixAction> ledger_;

  int synth_class_index(std::string_view name) const {
    for (size_t i = 0; i < synth_classes_.size(); i++)
      if (synth_classes_[i].name == name) return static_cast<int>(i);
    return -1;
  }

  const std::vector<SynthesizedDeclaration>* members_of(
      std::string_view owner) const {
    if (is_wrapper_name(owner)) return &wrapper_members_;
    int i = synth_class_index(owner);
    if (i >= 0) return &synth_classes_[i].members;
    auto it = user_insert_members_.find(std::string(owner));
    if (it != user_insert_members_.end()) return &it->second;
    return nullptr;
  }

  std::vector<SynthesizedDeclaration>* members_of_mut(std::string_view owner) {
    if (is_wrapper_name(owner)) return &wrapper_members_;
    int i = synth_class_index(owner);
    if (i >= 0) return &synth_classes_[i].members;
    auto it = user_insert_members_.find(std::string(owner));
    if (it != user_insert_members_.end()) return &it->second;
    return nullptr;
  }

  std::vector<SynthesizedDeclaration> all_members() const {
    std::vector<SynthesizedDeclaration> out;
    for (const SynthClass& c : synth_classes_)
      out.insert(out.end(), c.members.begin(), c.members.end());
    out.insert(out.end(), wrapper_members_.begin(), wrapper_members_.end());
    for (const auto& [cls, members] : user_insert_members_)
      out.insert(out.end(), members.begin(), members.end());
    return out;
  }

  bool references_unknown(const SynthesizedDeclaration& d) const {
    if (d.owner == unknown_name_) return true;
    if (d.return_or_field_type == unknown_name_) return true;
    for (const std::string& p : d.param_types) {
      std::string base = p.substr(0, p.find('['));
      if (base == unknown_name_) return true;
    }
    return false;
  }

  std::string member_text(const SynthesizedDeclaration& d,
                          const std::string& owner_display) const {
    std::string type = d.return_or_field_type;
    for (int i = 0; i < d.array_dims; i++) type += "[]";
    switch (d.kind) {
      case DeclKind::Field: {
        std::string s;
        if (d.is_static) s += "static ";
        return s + type + " " + d.name + ";";
      }
      case DeclKind::Method: {
        std::string s;
        if (d.is_static) s += "static ";
        s += type + " " + d.name + "(";
        for (size_t i = 0; i < d.param_types.size(); i++) {
          if (i) s += ", ";
          s += d.param_types[i] + " p" + std::to_string(i);
        }
        s += ") { throw new UnsupportedOperationException(); }";
        return s;
      }
      case DeclKind::Constructor: {
        std::string s = owner_display + "(";
        for (size_t i = 0; i < d.param_types.size(); i++) {
          if (i) s += ", ";
          s += d.param_types[i] + " p" + std::to_string(i);
        }
        s += ") { }";
        return s;
      }
      default:
        return "";
    }
  }

  void scan_user_classes() {
    std::vector<detail::JToken> toks = detail::java_lex(join_lines());
    int depth = 0;
    std::vector<int> open_stack;
    std::vector<UserClass*> pending;  // class awaiting its matching close
    std::string next_class;
    int next_line = 0;
    bool expecting_body = false;
    for (const detail::JToken& t : toks) {
      if (t.kind == detail::JTok::Keyword && t.text == "class" && depth == 0) {
        next_class.clear();
        next_line = t.line;
        expecting_body = true;
        continue;
      }
      if (expecting_body && t.kind == detail::JTok::Ident && next_class.empty()) {
        next_class = t.text;
        continue;
      }
      if (t.kind == detail::JTok::Punct && t.text == "{") {
        depth++;
        if (expecting_body && depth == 1 && !next_class.empty()) {
          user_classes_.push_back({next_class, next_line, 0, false});
          pending.push_back(&user_classes_.back());
          expecting_body = false;
        }
        continue;
      }
      if (t.kind == detail::JTok::Punct && t.text == "}") {
        depth--;
        if (depth == 0 && !pending.empty()) {
          UserClass* c = pending.back();
          pending.pop_back();
          c->close_line = t.line;
          const std::string& line = original_lines_[t.line - 1];
          size_t first = line.find_first_not_of(" \t");
          c->close_alone = first != std::string::npos &&
                           line[first] == '}' && t.col == static_cast<int>(first) + 1;
        }
      }
    }
  }

  std::string join_lines() const {
    std::string s;
    for (const std::string& l : original_lines_) {
      s += l;
      s += "\n";
    }
    return s;
  }

  ApplyResult apply_inner(const FixAction& a) {
    using K = FixAction::Kind;
    switch (a.kind) {
      case K::AddClass: {
        if (synth_class_index(a.name) >= 0) return ApplyResult::Duplicate;
        if (user_class(a.name) || is_wrapper_name(a.name))
          return ApplyResult::Conflict;
        SynthClass c;
        c.name = a.name;
        synth_classes_.push_back(std::move(c));
        return ApplyResult::Applied;
      }
      case K::AddField:
      case K::AddMethod:
      case K::AddConstructor: {
        DeclKind kind = a.kind == K::AddField ? DeclKind::Field
                        : a.kind == K::AddMethod ? DeclKind::Method
                                                 : DeclKind::Constructor;
        int arity = static_cast<int>(a.param_types.size());
        if (find_member(a.owner, kind, a.name, arity))
          return ApplyResult::Duplicate;
        if (a.owner == unknown_name_ && synth_class_index(a.owner) < 0) {
          SynthClass u;
          u.name = unknown_name_;
          synth_classes_.push_back(std::move(u));
        }
        std::vector<SynthesizedDeclaration>* members = members_of_mut(a.owner);
        if (!members) {
          // owner is a user class: members become tracked insertions
          const UserClass* uc = user_class(a.owner);
          if (!uc) return ApplyResult::Conflict;
          if (!uc->close_alone) return ApplyResult::Conflict;
          members = &user_insert_members_[a.owner];
        }
        SynthesizedDeclaration d;
        d.owner = a.owner;
        d.kind = kind;
        d.name = a.name;
        d.param_types = a.param_types;
        d.is_static = a.make_static;
        if (kind == DeclKind::Constructor) d.return_or_field_type.clear();
        if (!a.type_text.empty()) set_decl_type(d, a.type_text);
        members->push_back(std::move(d));
        return ApplyResult::Applied;
      }
      case K::SetType:
      case K::AddArrayDim: {
        if (a.original) return apply_original_edit(a);
        SynthesizedDeclaration* d = find_member_mut(a);
        if (!d) return ApplyResult::Conflict;
        if (a.kind == K::AddArrayDim) {
          if (a.slot == FixAction::Slot::Param) {
            if (a.param_index < 0 ||
                a.param_index >= static_cast<int>(d->param_types.size()))
              return ApplyResult::Conflict;
            d->param_types[a.param_index] += "[]";
          } else {
            d->array_dims++;
          }
          return ApplyResult::Applied;
        }
        // SetType: UNKNOWN -> concrete only; concrete conflicts are kept as-is
        std::string base = a.type_text.substr(0, a.type_text.find('['));
        int extra = count_dims(a.type_text);
        if (a.slot == FixAction::Slot::Param) {
          if (a.param_index < 0 ||
              a.param_index >= static_cast<int>(d->param_types.size()))
            return ApplyResult::Conflict;
          std::string& p = d->param_types[a.param_index];
          std::string pbase = p.substr(0, p.find('['));
          if (pbase == base && p == a.type_text) return ApplyResult::Duplicate;
          if (pbase != unknown_name_) return ApplyResult::Conflict;
          int pdims = count_dims(p);
          p = base;
          for (int i = 0; i < pdims + extra; i++) p += "[]";
          return ApplyResult::Applied;
        }
        if (d->return_or_field_type == base && extra == 0)
          return ApplyResult::Duplicate;
        if (d->return_or_field_type != unknown_name_)
          return ApplyResult::Conflict;
        d->return_or_field_type = base;
        d->array_dims += extra;
        return ApplyResult::Applied;
      }
      case K::AddStaticModifier: {
        if (a.original) return apply_original_edit(a);
        SynthesizedDeclaration* d = find_member_mut(a);
        if (!d) return ApplyResult::Conflict;
        if (d->is_static) return ApplyResult::Duplicate;
        d->is_static = true;
        return ApplyResult::Applied;
      }
      case K::PromoteToException: {
        int i = synth_class_index(a.name);
        if (i < 0) return ApplyResult::Conflict;
        if (synth_classes_[i].is_exception) return ApplyResult::Duplicate;
        synth_classes_[i].is_exception = true;
        return ApplyResult::Applied;
      }
      case K::RenameEnclosingToConstructor: {
        if (!wrapper_present_) return ApplyResult::Conflict;
        if (wrapper_name_ == a.name) return ApplyResult::Duplicate;
        if (wrapper_renamed_) return ApplyResult::Conflict;
        if (synth_class_index(a.name) >= 0 || user_class(a.name))
          return ApplyResult::Conflict;
        wrapper_name_ = a.name;
        wrapper_past_names_.insert(a.name);
        wrapper_renamed_ = true;
        return ApplyResult::Applied;
      }
      case K::Defer:
        return ApplyResult::Deferred;
    }
    return ApplyResult::Conflict;
  }

  bool wrapper_renamed_ = false;

  static int count_dims(std::string_view type_text) {
    int n = 0;
    size_t at = type_text.find("[]");
    while (at != std::string_view::npos) {
      n++;
      at = type_text.find("[]", at + 2);
    }
    return n;
  }

  static void set_decl_type(SynthesizedDeclaration& d, const std::string& t) {
    d.return_or_field_type = t.substr(0, t.find('['));
    d.array_dims = count_dims(t);
  }

  SynthesizedDeclaration* find_member_mut(const FixAction& a) {
    DeclKind kind =
        a.slot == FixAction::Slot::FieldType ? DeclKind::Field
        : a.slot == FixAction::Slot::ReturnType || a.slot == FixAction::Slot::Param
            ? DeclKind::Method
            : DeclKind::Field;
    int arity = a.param_types.empty() && kind == DeclKind::Field
                    ? -1
                    : static_cast<int>(a.param_types.size());
    std::vector<SynthesizedDeclaration>* members = members_of_mut(a.owner);
    if (!members) return nullptr;
    for (SynthesizedDeclaration& d : *members) {
      if (d.name != a.name) continue;
      if (kind == DeclKind::Field && d.kind != DeclKind::Field) continue;
      if (kind == DeclKind::Method && d.kind != DeclKind::Method &&
          d.kind != DeclKind::Constructor)
        continue;
      if (arity >= 0 && (d.kind == DeclKind::Method || d.kind == DeclKind::Constructor) &&
          static_cast<int>(d.param_types.size()) != arity)
        continue;
      return &d;
    }
    return nullptr;
  }

  ApplyResult apply_original_edit(const FixAction& a) {
    if (a.line < 1 || a.line > static_cast<int>(current_lines_.size()))
      return ApplyResult::Stale;
    std::string& text = current_lines_[a.line - 1];
    if (a.col < 1 || a.col - 1 + a.expected.size() > text.size())
      return ApplyResult::Stale;
    if (text.compare(a.col - 1, a.expected.size(), a.expected) != 0)
      return ApplyResult::Stale;
    if (a.kind == FixAction::Kind::AddStaticModifier) {
      text.insert(static_cast<size_t>(a.col - 1), a.replacement);
    } else {
      text.replace(static_cast<size_t>(a.col - 1), a.expected.size(),
                   a.replacement);
    }
    return ApplyResult::Applied;
  }
};

}  // namespace jstitch
