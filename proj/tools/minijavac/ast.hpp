#pragma once

// AST and type model for minijavac.

#include <memory>
#include <string>
#include <vector>

namespace minijavac {

struct Pos {
  int line = 0;
  int col = 0;
};

// ---------------- types ----------------

enum class Prim { Int, Long, Short, Byte, Char, Boolean, Float, Double };

struct ClassSym;

struct Type {
  enum Kind { KPrim, KClass, KArray, KNull, KVoid, KError } kind = KError;
  Prim prim = Prim::Int;
  const ClassSym* cls = nullptr;
  const Type* elem = nullptr;  // arrays

  bool is_error() const { return kind == KError; }
  bool is_void() const { return kind == KVoid; }
  bool is_prim() const { return kind == KPrim; }
  bool is_class() const { return kind == KClass; }
  bool is_array() const { return kind == KArray; }
  bool is_null() const { return kind == KNull; }
  bool is_numeric() const {
    return kind == KPrim && prim != Prim::Boolean;
  }
  bool is_integral() const {
    return kind == KPrim && (prim == Prim::Int || prim == Prim::Long ||
                             prim == Prim::Short || prim == Prim::Byte ||
                             prim == Prim::Char);
  }
  bool is_boolean() const { return kind == KPrim && prim == Prim::Boolean; }
  bool is_reference() const { return kind == KClass || kind == KArray || kind == KNull; }

  std::string name() const;
};

// ---------------- syntax ----------------

// Unresolved type as written: dotted name or primitive/void, plus array dims
// and any generic argument spans (recorded only to diagnose their use).
struct TypeExpr {
  std::vector<std::string> parts;  // e.g. {"java","io","IOException"}; empty for prim
  std::string prim;                // "int", ..., or "void"; empty for class types
  int dims = 0;
  bool has_type_args = false;
  Pos pos;

  std::string written() const {
    std::string s;
    if (!prim.empty()) {
      s = prim;
    } else {
      for (size_t i = 0; i < parts.size(); i++) {
        if (i) s += ".";
        s += parts[i];
      }
    }
    for (int i = 0; i < dims; i++) s += "[]";
    return s;
  }
  std::string simple() const { return prim.empty() ? parts.back() : prim; }
};

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
  enum Kind {
    IntLit, LongLit, FloatLit, DoubleLit, CharLit, StringLit, BoolLit, NullLit,
    Name,        // text
    This,
    FieldSel,    // lhs.text
    Call,        // callee name in text; recv in lhs (null for unqualified); args
    New,         // type_expr + args
    NewArray,    // type_expr (elem) + dim exprs in args + extra_dims
    Index,       // lhs[rhs]
    Unary,       // text = op; rhs
    PostIncDec,  // text = op; lhs
    PreIncDec,   // text = op; rhs
    Binary,      // text = op; lhs, rhs
    Assign,      // text = op (=, +=, ...); lhs, rhs
    Ternary,     // cond, lhs, rhs
    Cast,        // type_expr, rhs
    InstanceOf,  // lhs, type_expr
    ArrayInit,   // args = elements
    Paren,       // lhs
  } kind;
  Pos pos;          // primary position (javac-style anchor)
  Pos op_pos;       // operator / dot position where relevant
  std::string text;
  ExprPtr lhs, rhs, cond;
  TypeExpr type_expr;
  std::vector<ExprPtr> args;
  int extra_dims = 0;

  // filled by sema
  const Type* type = nullptr;
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct VarDeclarator {
  std::string name;
  Pos pos;
  int extra_dims = 0;  // C-style trailing dims: int a[];
  ExprPtr init;
};

struct Stmt {
  enum Kind {
    Block,      // stmts
    LocalVar,   // type_expr + vars
    ExprStmt,   // expr
    If,         // expr, then_stmt, else_stmt
    While,      // expr, then_stmt
    DoWhile,    // then_stmt, expr
    For,        // init_stmt, expr, update exprs in exprs, then_stmt
    ForEach,    // type_expr var (name,pos), expr iterable, then_stmt
    Return,     // expr optional
    Throw,      // expr
    Break, Continue,
    Try,        // then_stmt = try block; catches; finally_stmt
    Empty,
  } kind;
  Pos pos;
  Pos end_pos;  // closing brace of blocks
  TypeExpr type_expr;
  std::vector<VarDeclarator> vars;
  ExprPtr expr;
  StmtPtr then_stmt, else_stmt, init_stmt, finally_stmt;
  std::vector<ExprPtr> exprs;
  std::vector<StmtPtr> stmts;
  std::string name;  // for-each variable
  Pos name_pos;

  struct Catch {
    TypeExpr type;
    std::string var;
    Pos var_pos;
    StmtPtr body;
  };
  std::vector<Catch> catches;
};

struct Modifiers {
  bool is_static = false;
  bool is_public = false, is_private = false, is_protected = false;
  bool is_final = false, is_abstract = false;
};

struct MemberDecl {
  enum Kind { Field, Method, Ctor } kind;
  Modifiers mods;
  TypeExpr type;                 // field type or method return type
  bool ctor_like = false;        // no return type written
  std::string name;
  Pos name_pos;
  std::vector<VarDeclarator> declarators;  // fields
  struct Param {
    TypeExpr type;
    std::string name;
    Pos pos;
  };
  std::vector<Param> params;     // methods/ctors
  std::vector<TypeExpr> throws_types;
  StmtPtr body;                  // null for abstract/native
};

struct ClassDecl {
  Modifiers mods;
  std::string name;
  Pos name_pos;
  TypeExpr extends_type;  // parts empty if none
  bool has_extends = false;
  std::vector<TypeExpr> implements_types;
  std::vector<MemberDecl> members;
};

struct CompilationUnit {
  std::string file;
  std::vector<std::string> lines;  // source lines for echoing
  std::vector<TypeExpr> imports;   // dotted, last part may be "*"
  std::vector<ClassDecl> classes;
};

}  // namespace minijavac
