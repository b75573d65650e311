#pragma once

// Recursive-descent parser for the minijavac Java subset.
// On a syntax error it records one javac-style diagnostic and aborts the
// file (the snippets this compiler serves are expected to parse).

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "ast.hpp"
#include "diag.hpp"
#include "lexer.hpp"

namespace minijavac {

struct ParseAbort {};

class Parser {
 public:
  Parser(std::vector<Token> toks, DiagSink& sink)
      : toks_(std::move(toks)), sink_(sink) {}

  // Returns false if a syntax error was reported.
  bool run(CompilationUnit& unit) {
    try {
      parse_unit(unit);
      return true;
    } catch (const ParseAbort&) {
      return false;
    }
  }

 private:
  std::vector<Token> toks_;
  size_t i_ = 0;
  DiagSink& sink_;

  const Token& cur() const { return toks_[i_]; }
  const Token& peek(size_t off = 1) const {
    size_t j = i_ + off;
    return j < toks_.size() ? toks_[j] : toks_.back();
  }
  Pos pos() const { return Pos{cur().line, cur().col}; }
  bool at_end() const { return cur().kind == Tok::End; }

  bool is_kw(const char* k) const {
    return cur().kind == Tok::Keyword && cur().text == k;
  }
  bool is_punct(const char* p) const {
    return cur().kind == Tok::Punct && cur().text == p;
  }
  bool peek_punct(size_t off, const char* p) const {
    return peek(off).kind == Tok::Punct && peek(off).text == p;
  }

  Token take() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }

  [[noreturn]] void fail(Pos p, const std::string& msg) {
    sink_.error(p, msg);
    throw ParseAbort{};
  }

  void expect_punct(const char* p) {
    if (!is_punct(p)) fail(pos(), std::string("'") + p + "' expected");
    take();
  }

  std::string expect_ident() {
    if (cur().kind != Tok::Ident) fail(pos(), "<identifier> expected");
    return take().text;
  }

  // ---------------- unit ----------------

  void parse_unit(CompilationUnit& unit) {
    if (is_kw("package")) {
      take();
      parse_dotted();
      expect_punct(";");
    }
    while (is_kw("import")) {
      take();
      TypeExpr t;
      t.pos = pos();
      t.parts.push_back(expect_ident());
      while (is_punct(".")) {
        take();
        if (is_punct("*")) {
          take();
          t.parts.push_back("*");
          break;
        }
        t.parts.push_back(expect_ident());
      }
      expect_punct(";");
      unit.imports.push_back(std::move(t));
    }
    while (!at_end()) {
      skip_annotations();
      unit.classes.push_back(parse_class());
    }
  }

  void parse_dotted() {
    expect_ident();
    while (is_punct(".")) {
      take();
      expect_ident();
    }
  }

  void skip_annotations() {
    while (is_punct("@")) {
      take();
      expect_ident();
      if (is_punct("(")) skip_balanced("(", ")");
    }
  }

  void skip_balanced(const char* open, const char* close) {
    expect_punct(open);
    int depth = 1;
    while (depth > 0 && !at_end()) {
      if (is_punct(open)) depth++;
      if (is_punct(close)) depth--;
      take();
    }
  }

  Modifiers parse_modifiers() {
    Modifiers m;
    while (true) {
      skip_annotations();
      if (is_kw("static")) { m.is_static = true; take(); }
      else if (is_kw("public")) { m.is_public = true; take(); }
      else if (is_kw("private")) { m.is_private = true; take(); }
      else if (is_kw("protected")) { m.is_protected = true; take(); }
      else if (is_kw("final")) { m.is_final = true; take(); }
      else if (is_kw("abstract")) { m.is_abstract = true; take(); }
      else if (is_kw("synchronized") || is_kw("native") || is_kw("transient") ||
               is_kw("volatile") || is_kw("strictfp")) { take(); }
      else break;
    }
    return m;
  }

  ClassDecl parse_class() {
    ClassDecl cd;
    cd.mods = parse_modifiers();
    if (is_kw("interface") || is_kw("enum"))
      fail(pos(), std::string(cur().text) + " declarations are not supported");
    if (!is_kw("class")) fail(pos(), "class, interface, or enum expected");
    take();
    cd.name_pos = pos();
    cd.name = expect_ident();
    if (is_punct("<")) fail(pos(), "generic type declarations are not supported");
    if (is_kw("extends")) {
      take();
      cd.extends_type = parse_type_ref();
      cd.has_extends = true;
    }
    if (is_kw("implements")) {
      take();
      cd.implements_types.push_back(parse_type_ref());
      while (is_punct(",")) {
        take();
        cd.implements_types.push_back(parse_type_ref());
      }
    }
    expect_punct("{");
    while (!is_punct("}")) {
      if (at_end()) fail(pos(), "'}' expected");
      cd.members.push_back(parse_member(cd.name));
    }
    take();  // }
    if (is_punct(";")) take();
    return cd;
  }

  // Parses a type reference: primitive or dotted name, optional <...> args
  // (recorded, rejected later), optional [] dims.
  TypeExpr parse_type_ref() {
    TypeExpr t;
    t.pos = pos();
    if (cur().kind == Tok::Keyword && is_prim_name(cur().text)) {
      t.prim = take().text;
    } else if (is_kw("void")) {
      t.prim = take().text;
    } else if (cur().kind == Tok::Ident) {
      t.parts.push_back(take().text);
      while (is_punct(".") && peek(1).kind == Tok::Ident) {
        take();
        t.parts.push_back(take().text);
      }
      if (is_punct("<")) {
        t.has_type_args = true;
        skip_type_args();
      }
    } else {
      fail(pos(), "<identifier> expected");
    }
    while (is_punct("[") && peek_punct(1, "]")) {
      take();
      take();
      t.dims++;
    }
    return t;
  }

  static bool is_prim_name(const std::string& s) {
    return s == "int" || s == "long" || s == "short" || s == "byte" ||
           s == "char" || s == "boolean" || s == "float" || s == "double";
  }

  void skip_type_args() {
    // consume balanced <...>
    int depth = 0;
    do {
      if (is_punct("<")) depth++;
      else if (is_punct(">")) depth--;
      else if (is_punct(">>")) depth -= 2;
      else if (at_end()) fail(pos(), "'>' expected");
      take();
    } while (depth > 0);
  }

  MemberDecl parse_member(const std::string& class_name) {
    MemberDecl m;
    m.mods = parse_modifiers();
    if (is_kw("class") || is_kw("interface") || is_kw("enum"))
      fail(pos(), "nested type declarations are not supported");

    // Constructor-like: Ident '(' with no preceding type.
    if (cur().kind == Tok::Ident && peek_punct(1, "(")) {
      m.ctor_like = true;
      m.kind = (cur().text == class_name) ? MemberDecl::Ctor : MemberDecl::Method;
      m.name_pos = pos();
      m.name = take().text;
      parse_params_and_body(m);
      return m;
    }

    m.type = parse_type_ref();
    m.name_pos = pos();
    m.name = expect_ident();
    if (is_punct("(")) {
      m.kind = MemberDecl::Method;
      parse_params_and_body(m);
      return m;
    }
    // field
    m.kind = MemberDecl::Field;
    VarDeclarator first;
    first.name = m.name;
    first.pos = m.name_pos;
    parse_declarator_rest(first);
    m.declarators.push_back(std::move(first));
    while (is_punct(",")) {
      take();
      VarDeclarator v;
      v.pos = pos();
      v.name = expect_ident();
      parse_declarator_rest(v);
      m.declarators.push_back(std::move(v));
    }
    expect_punct(";");
    return m;
  }

  void parse_declarator_rest(VarDeclarator& v) {
    while (is_punct("[") && peek_punct(1, "]")) {
      take();
      take();
      v.extra_dims++;
    }
    if (is_punct("=")) {
      take();
      v.init = is_punct("{") ? parse_array_init() : parse_expr();
    }
  }

  void parse_params_and_body(MemberDecl& m) {
    expect_punct("(");
    if (!is_punct(")")) {
      while (true) {
        MemberDecl::Param p;
        skip_annotations();
        if (is_kw("final")) take();
        p.type = parse_type_ref();
        if (is_punct("...")) fail(pos(), "varargs are not supported");
        p.pos = pos();
        p.name = expect_ident();
        while (is_punct("[") && peek_punct(1, "]")) {
          take();
          take();
          p.type.dims++;
        }
        m.params.push_back(std::move(p));
        if (is_punct(",")) { take(); continue; }
        break;
      }
    }
    expect_punct(")");
    if (is_kw("throws")) {
      take();
      m.throws_types.push_back(parse_type_ref());
      while (is_punct(",")) {
        take();
        m.throws_types.push_back(parse_type_ref());
      }
    }
    if (is_punct(";")) {
      take();  // abstract/native
      return;
    }
    m.body = parse_block();
  }

  // ---------------- statements ----------------

  StmtPtr parse_block() {
    auto s = std::make_unique<Stmt>();
    s->kind = Stmt::Block;
    s->pos = pos();
    expect_punct("{");
    while (!is_punct("}")) {
      if (at_end()) fail(pos(), "'}' expected");
      s->stmts.push_back(parse_stmt());
    }
    s->end_pos = pos();
    take();
    return s;
  }

  StmtPtr parse_stmt() {
    Pos p = pos();
    if (is_punct("{")) return parse_block();
    if (is_punct(";")) {
      take();
      auto s = std::make_unique<Stmt>();
      s->kind = Stmt::Empty;
      s->pos = p;
      return s;
    }
    if (is_kw("if")) return parse_if();
    if (is_kw("while")) return parse_while();
    if (is_kw("do")) return parse_do();
    if (is_kw("for")) return parse_for();
    if (is_kw("return")) {
      take();
      auto s = std::make_unique<Stmt>();
      s->kind = Stmt::Return;
      s->pos = p;
      if (!is_punct(";")) s->expr = parse_expr();
      expect_punct(";");
      return s;
    }
    if (is_kw("throw")) {
      take();
      auto s = std::make_unique<Stmt>();
      s->kind = Stmt::Throw;
      s->pos = p;
      s->expr = parse_expr();
      expect_punct(";");
      return s;
    }
    if (is_kw("break") || is_kw("continue")) {
      auto s = std::make_unique<Stmt>();
      s->kind = is_kw("break") ? Stmt::Break : Stmt::Continue;
      s->pos = p;
      take();
      if (cur().kind == Tok::Ident) take();  // label, ignored
      expect_punct(";");
      return s;
    }
    if (is_kw("try")) return parse_try();
    if (is_kw("switch") || is_kw("synchronized") || is_kw("assert"))
      fail(p, std::string("'") + cur().text + "' statements are not supported");

    if (starts_local_decl()) return parse_local_decl();

    auto s = std::make_unique<Stmt>();
    s->kind = Stmt::ExprStmt;
    s->pos = p;
    s->expr = parse_expr();
    expect_punct(";");
    return s;
  }

  // Lookahead: does a local variable declaration start here?
  // Type forms: prim dims? | Ident(.Ident)* <args>? dims?  followed by Ident.
  bool starts_local_decl() {
    if (cur().kind == Tok::Keyword && is_prim_name(cur().text)) return true;
    if (is_kw("final")) return true;
    if (cur().kind != Tok::Ident) return false;
    size_t j = i_ + 1;
    auto tk = [&](size_t k) -> const Token& {
      return k < toks_.size() ? toks_[k] : toks_.back();
    };
    // dotted name
    while (tk(j).kind == Tok::Punct && tk(j).text == "." &&
           tk(j + 1).kind == Tok::Ident)
      j += 2;
    // generic args: only treat as type when balanced <...> is followed by
    // an identifier or []
    if (tk(j).kind == Tok::Punct && tk(j).text == "<") {
      int depth = 0;
      size_t k = j;
      while (k < toks_.size()) {
        const Token& t = tk(k);
        if (t.kind == Tok::Punct && t.text == "<") depth++;
        else if (t.kind == Tok::Punct && t.text == ">") depth--;
        else if (t.kind == Tok::Punct && t.text == ">>") depth -= 2;
        else if (t.kind == Tok::End || (t.kind == Tok::Punct && t.text == ";"))
          return false;
        k++;
        if (depth <= 0) break;
      }
      j = k;
    }
    while (tk(j).kind == Tok::Punct && tk(j).text == "[" &&
           tk(j + 1).kind == Tok::Punct && tk(j + 1).text == "]")
      j += 2;
    return tk(j).kind == Tok::Ident;
  }

  StmtPtr parse_local_decl() {
    auto s = std::make_unique<Stmt>();
    s->kind = Stmt::LocalVar;
    s->pos = pos();
    if (is_kw("final")) take();
    s->type_expr = parse_type_ref();
    while (true) {
      VarDeclarator v;
      v.pos = pos();
      v.name = expect_ident();
      parse_declarator_rest(v);
      s->vars.push_back(std::move(v));
      if (is_punct(",")) { take(); continue; }
      break;
    }
    expect_punct(";");
    return s;
  }

  StmtPtr parse_if() {
    auto s = std::make_unique<Stmt>();
    s->kind = Stmt::If;
    s->pos = pos();
    take();
    expect_punct("(");
    s->expr = parse_expr();
    expect_punct(")");
    s->then_stmt = parse_stmt();
    if (is_kw("else")) {
      take();
      s->else_stmt = parse_stmt();
    }
    return s;
  }

  StmtPtr parse_while() {
    auto s = std::make_unique<Stmt>();
    s->kind = Stmt::While;
    s->pos = pos();
    take();
    expect_punct("(");
    s->expr = parse_expr();
    expect_punct(")");
    s->then_stmt = parse_stmt();
    return s;
  }

  StmtPtr parse_do() {
    auto s = std::make_unique<Stmt>();
    s->kind = Stmt::DoWhile;
    s->pos = pos();
    take();
    s->then_stmt = parse_stmt();
    if (!is_kw("while")) fail(pos(), "'while' expected");
    take();
    expect_punct("(");
    s->expr = parse_expr();
    expect_punct(")");
    expect_punct(";");
    return s;
  }

  StmtPtr parse_for() {
    Pos p = pos();
    take();
    expect_punct("(");
    // for-each: Type Ident ':' expr
    size_t save = i_;
    if (!is_punct(";") && starts_local_decl()) {
      if (is_kw("final")) take();
      TypeExpr t = parse_type_ref();
      if (cur().kind == Tok::Ident && peek_punct(1, ":")) {
        auto s = std::make_unique<Stmt>();
        s->kind = Stmt::ForEach;
        s->pos = p;
        s->type_expr = std::move(t);
        s->name_pos = pos();
        s->name = take().text;
        take();  // :
        s->expr = parse_expr();
        expect_punct(")");
        s->then_stmt = parse_stmt();
        return s;
      }
      i_ = save;
    }
    auto s = std::make_unique<Stmt>();
    s->kind = Stmt::For;
    s->pos = p;
    if (!is_punct(";")) {
      if (starts_local_decl()) {
        s->init_stmt = parse_local_decl();  // consumes ';'
      } else {
        auto e = std::make_unique<Stmt>();
        e->kind = Stmt::ExprStmt;
        e->pos = pos();
        e->expr = parse_expr();
        while (is_punct(",")) {  // extra init exprs, checked but folded
          take();
          s->exprs.push_back(parse_expr());
        }
        s->init_stmt = std::move(e);
        expect_punct(";");
      }
    } else {
      take();
    }
    if (!is_punct(";")) s->expr = parse_expr();
    expect_punct(";");
    if (!is_punct(")")) {
      s->exprs.push_back(parse_expr());
      while (is_punct(",")) {
        take();
        s->exprs.push_back(parse_expr());
      }
    }
    expect_punct(")");
    s->then_stmt = parse_stmt();
    return s;
  }

  StmtPtr parse_try() {
    auto s = std::make_unique<Stmt>();
    s->kind = Stmt::Try;
    s->pos = pos();
    take();
    if (is_punct("(")) fail(pos(), "try-with-resources is not supported");
    s->then_stmt = parse_block();
    while (is_kw("catch")) {
      take();
      expect_punct("(");
      Stmt::Catch c;
      if (is_kw("final")) take();
      c.type = parse_type_ref();
      if (is_punct("|")) fail(pos(), "multi-catch is not supported");
      c.var_pos = pos();
      c.var = expect_ident();
      expect_punct(")");
      c.body = parse_block();
      s->catches.push_back(std::move(c));
    }
    if (is_kw("finally")) {
      take();
      s->finally_stmt = parse_block();
    }
    if (s->catches.empty() && !s->finally_stmt)
      fail(s->pos, "'catch' or 'finally' expected");
    return s;
  }

  // ---------------- expressions ----------------

  ExprPtr parse_expr() { return parse_assign(); }

  ExprPtr mk(Expr::Kind k, Pos p) {
    auto e = std::make_unique<Expr>();
    e->kind = k;
    e->pos = p;
    return e;
  }

  ExprPtr parse_assign() {
    ExprPtr lhs = parse_ternary();
    static const char* ops[] = {"=",  "+=", "-=", "*=",  "/=",  "%=",
                                "&=", "|=", "^=", "<<=", ">>=", ">>>="};
    for (const char* op : ops) {
      if (is_punct(op)) {
        Pos opp = pos();
        take();
        auto e = mk(Expr::Assign, lhs->pos);
        e->op_pos = opp;
        e->text = op;
        e->lhs = std::move(lhs);
        e->rhs = parse_assign();
        return e;
      }
    }
    return lhs;
  }

  ExprPtr parse_ternary() {
    ExprPtr c = parse_binary(0);
    if (is_punct("?")) {
      Pos opp = pos();
      take();
      auto e = mk(Expr::Ternary, c->pos);
      e->op_pos = opp;
      e->cond = std::move(c);
      e->lhs = parse_expr();
      expect_punct(":");
      e->rhs = parse_ternary();
      return e;
    }
    return c;
  }

  struct Level {
    int prec;
    const char* ops[5];
  };

  ExprPtr parse_binary(int level) {
    static const Level levels[] = {
        {0, {"||", nullptr}},
        {1, {"&&", nullptr}},
        {2, {"|", nullptr}},
        {3, {"^", nullptr}},
        {4, {"&", nullptr}},
        {5, {"==", "!=", nullptr}},
        {6, {"<", ">", "<=", ">=", nullptr}},  // + instanceof
        {7, {"<<", ">>", ">>>", nullptr}},
        {8, {"+", "-", nullptr}},
        {9, {"*", "/", "%", nullptr}},
    };
    constexpr int kLast = 9;
    if (level > kLast) return parse_unary();
    ExprPtr lhs = parse_binary(level + 1);
    while (true) {
      if (level == 6 && is_kw("instanceof")) {
        Pos opp = pos();
        take();
        auto e = mk(Expr::InstanceOf, lhs->pos);
        e->op_pos = opp;
        e->lhs = std::move(lhs);
        e->type_expr = parse_type_ref();
        lhs = std::move(e);
        continue;
      }
      const char* matched = nullptr;
      for (const char* const* op = levels[level].ops; *op; op++) {
        if (is_punct(*op)) {
          matched = *op;
          break;
        }
      }
      if (!matched) break;
      Pos opp = pos();
      take();
      auto e = mk(Expr::Binary, lhs->pos);
      e->op_pos = opp;
      e->text = matched;
      e->lhs = std::move(lhs);
      e->rhs = parse_binary(level + 1);
      lhs = std::move(e);
    }
    return lhs;
  }

  ExprPtr parse_unary() {
    Pos p = pos();
    if (is_punct("+") || is_punct("-") || is_punct("!") || is_punct("~")) {
      std::string op = take().text;
      auto e = mk(Expr::Unary, p);
      e->op_pos = p;
      e->text = op;
      e->rhs = parse_unary();
      return e;
    }
    if (is_punct("++") || is_punct("--")) {
      std::string op = take().text;
      auto e = mk(Expr::PreIncDec, p);
      e->op_pos = p;
      e->text = op;
      e->rhs = parse_unary();
      return e;
    }
    // cast: '(' Type ')' unary — only when contents form a type and the next
    // token can begin an operand
    if (is_punct("(") && looks_like_cast()) {
      take();
      auto e = mk(Expr::Cast, p);
      e->type_expr = parse_type_ref();
      expect_punct(")");
      e->rhs = parse_unary();
      return e;
    }
    return parse_postfix();
  }

  bool looks_like_cast() {
    size_t j = i_ + 1;
    auto tk = [&](size_t k) -> const Token& {
      return k < toks_.size() ? toks_[k] : toks_.back();
    };
    bool prim = tk(j).kind == Tok::Keyword && is_prim_name(tk(j).text);
    if (!prim && tk(j).kind != Tok::Ident) return false;
    j++;
    while (tk(j).kind == Tok::Punct && tk(j).text == "." &&
           tk(j + 1).kind == Tok::Ident)
      j += 2;
    while (tk(j).kind == Tok::Punct && tk(j).text == "[" &&
           tk(j + 1).kind == Tok::Punct && tk(j + 1).text == "]")
      j += 2;
    if (!(tk(j).kind == Tok::Punct && tk(j).text == ")")) return false;
    const Token& after = tk(j + 1);
    if (prim) return true;
    // (Name) x | (Name) "s" | (Name) ( ... — treat as cast when followed by
    // an operand-opening token
    switch (after.kind) {
      case Tok::Ident:
      case Tok::StringLit:
      case Tok::CharLit:
      case Tok::IntLit:
      case Tok::LongLit:
      case Tok::FloatLit:
      case Tok::DoubleLit:
        return true;
      case Tok::Keyword:
        return after.text == "new" || after.text == "this" ||
               after.text == "null" || after.text == "true" ||
               after.text == "false";
      case Tok::Punct:
        return after.text == "(";
      default:
        return false;
    }
  }

  ExprPtr parse_postfix() {
    ExprPtr e = parse_primary();
    while (true) {
      if (is_punct(".")) {
        Pos dot = pos();
        take();
        if (cur().kind != Tok::Ident) fail(pos(), "<identifier> expected");
        Pos idp = pos();
        std::string name = take().text;
        if (is_punct("(")) {
          auto call = mk(Expr::Call, dot);  // javac anchors member errors at '.'
          call->op_pos = idp;
          call->text = name;
          call->lhs = std::move(e);
          parse_args(call->args);
          e = std::move(call);
        } else {
          auto sel = mk(Expr::FieldSel, dot);
          sel->op_pos = idp;
          sel->text = name;
          sel->lhs = std::move(e);
          e = std::move(sel);
        }
      } else if (is_punct("[")) {
        Pos bracket = pos();
        take();
        auto idx = mk(Expr::Index, e->pos);
        idx->op_pos = bracket;
        idx->lhs = std::move(e);
        idx->rhs = parse_expr();
        expect_punct("]");
        e = std::move(idx);
      } else if (is_punct("++") || is_punct("--")) {
        auto post = mk(Expr::PostIncDec, e->pos);
        post->op_pos = pos();
        post->text = take().text;
        post->lhs = std::move(e);
        e = std::move(post);
      } else if (is_punct("::")) {
        fail(pos(), "method references are not supported");
      } else {
        break;
      }
    }
    return e;
  }

  void parse_args(std::vector<ExprPtr>& out) {
    expect_punct("(");
    if (!is_punct(")")) {
      out.push_back(parse_expr());
      while (is_punct(",")) {
        take();
        out.push_back(parse_expr());
      }
    }
    expect_punct(")");
  }

  ExprPtr parse_array_init() {
    Pos p = pos();
    expect_punct("{");
    auto e = mk(Expr::ArrayInit, p);
    if (!is_punct("}")) {
      while (true) {
        e->args.push_back(is_punct("{") ? parse_array_init() : parse_expr());
        if (is_punct(",")) {
          take();
          if (is_punct("}")) break;  // trailing comma
          continue;
        }
        break;
      }
    }
    expect_punct("}");
    return e;
  }

  ExprPtr parse_primary() {
    Pos p = pos();
    switch (cur().kind) {
      case Tok::IntLit: {
        auto e = mk(Expr::IntLit, p);
        e->text = take().text;
        return e;
      }
      case Tok::LongLit: {
        auto e = mk(Expr::LongLit, p);
        e->text = take().text;
        return e;
      }
      case Tok::FloatLit: {
        auto e = mk(Expr::FloatLit, p);
        e->text = take().text;
        return e;
      }
      case Tok::DoubleLit: {
        auto e = mk(Expr::DoubleLit, p);
        e->text = take().text;
        return e;
      }
      case Tok::CharLit: {
        auto e = mk(Expr::CharLit, p);
        e->text = take().text;
        return e;
      }
      case Tok::StringLit: {
        auto e = mk(Expr::StringLit, p);
        e->text = take().text;
        return e;
      }
      default:
        break;
    }
    if (is_kw("true") || is_kw("false")) {
      auto e = mk(Expr::BoolLit, p);
      e->text = take().text;
      return e;
    }
    if (is_kw("null")) {
      take();
      return mk(Expr::NullLit, p);
    }
    if (is_kw("this")) {
      take();
      return mk(Expr::This, p);
    }
    if (is_kw("super")) fail(p, "'super' is not supported");
    if (is_kw("new")) return parse_new();
    if (is_punct("(")) {
      take();
      if (is_punct(")")) fail(pos(), "illegal start of expression");
      auto e = mk(Expr::Paren, p);
      e->lhs = parse_expr();
      expect_punct(")");
      if (is_punct("->")) fail(pos(), "lambda expressions are not supported");
      return e;
    }
    if (cur().kind == Tok::Ident) {
      std::string name = take().text;
      if (is_punct("(")) {
        auto call = mk(Expr::Call, p);
        call->op_pos = p;
        call->text = name;
        parse_args(call->args);
        return call;
      }
      if (is_punct("->")) fail(pos(), "lambda expressions are not supported");
      auto e = mk(Expr::Name, p);
      e->text = name;
      return e;
    }
    fail(p, "illegal start of expression");
  }

  ExprPtr parse_new() {
    Pos p = pos();
    take();  // new
    TypeExpr t;
    t.pos = pos();
    if (cur().kind == Tok::Keyword && is_prim_name(cur().text)) {
      t.prim = take().text;
    } else {
      t.parts.push_back(expect_ident());
      while (is_punct(".") && peek(1).kind == Tok::Ident) {
        take();
        t.parts.push_back(take().text);
      }
      if (is_punct("<")) {
        t.has_type_args = true;
        skip_type_args();
      }
    }
    if (is_punct("(")) {
      if (!t.prim.empty()) fail(t.pos, "unexpected type");
      auto e = mk(Expr::New, p);
      e->type_expr = std::move(t);
      parse_args(e->args);
      if (is_punct("{")) fail(pos(), "anonymous classes are not supported");
      return e;
    }
    if (is_punct("[")) {
      auto e = mk(Expr::NewArray, p);
      bool saw_empty = false;
      while (is_punct("[")) {
        take();
        if (is_punct("]")) {
          take();
          e->extra_dims++;
          saw_empty = true;
        } else {
          if (saw_empty) fail(pos(), "']' expected");
          e->args.push_back(parse_expr());
          expect_punct("]");
        }
      }
      e->type_expr = std::move(t);
      if (is_punct("{")) {
        if (e->args.empty()) {
          e->lhs = parse_array_init();
        } else {
          fail(pos(), "illegal initializer");
        }
      } else if (e->args.empty()) {
        fail(pos(), "array dimension missing");
      }
      return e;
    }
    fail(pos(), "'(' or '[' expected");
  }
};

}  // namespace minijavac
