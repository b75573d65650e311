#pragma once

// Type checker for the minijavac Java subset. Mirrors OpenJDK 8 javac
// behavior for the constructs it accepts: resolution errors poison the
// enclosing expression (no cascades), diagnostics use javac's wording, and
// checked-exception flow (unreported / never-thrown) is enforced.

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "ast.hpp"
#include "diag.hpp"

namespace minijavac {

struct MethodSym;

struct FieldSym {
  std::string name;
  const Type* type = nullptr;
  bool is_static = false;
  Pos pos;
};

struct ClassSym {
  std::string name;        // simple name
  std::string package;     // "java.lang", "java.io", or "" for user classes
  const ClassSym* super = nullptr;
  std::vector<FieldSym> fields;
  std::vector<MethodSym> methods;  // ctors carry is_ctor
  bool is_user = false;
  Pos pos;

  bool derives_from(const ClassSym* c) const {
    for (const ClassSym* s = this; s; s = s->super)
      if (s == c) return true;
    return false;
  }
};

struct MethodSym {
  std::string name;
  const Type* ret = nullptr;
  std::vector<const Type*> params;
  std::vector<const ClassSym*> throws_classes;
  bool is_static = false;
  bool is_ctor = false;
  Pos pos;
  const MemberDecl* decl = nullptr;
};

inline std::string Type::name() const {
  switch (kind) {
    case KPrim:
      switch (prim) {
        case Prim::Int: return "int";
        case Prim::Long: return "long";
        case Prim::Short: return "short";
        case Prim::Byte: return "byte";
        case Prim::Char: return "char";
        case Prim::Boolean: return "boolean";
        case Prim::Float: return "float";
        case Prim::Double: return "double";
      }
      return "?";
    case KClass: return cls->name;
    case KArray: return elem->name() + "[]";
    case KNull: return "<null>";
    case KVoid: return "void";
    case KError: return "<error>";
  }
  return "?";
}

// Owns every ClassSym and Type for one compile.
class World {
 public:
  World() { build_builtins(); }

  const Type* prim(Prim p) {
    auto it = prims_.find(p);
    if (it != prims_.end()) return it->second;
    auto* t = new_type();
    t->kind = Type::KPrim;
    t->prim = p;
    prims_[p] = t;
    return t;
  }
  const Type* class_type(const ClassSym* c) {
    auto it = class_types_.find(c);
    if (it != class_types_.end()) return it->second;
    auto* t = new_type();
    t->kind = Type::KClass;
    t->cls = c;
    class_types_[c] = t;
    return t;
  }
  const Type* array_of(const Type* elem) {
    auto it = arrays_.find(elem);
    if (it != arrays_.end()) return it->second;
    auto* t = new_type();
    t->kind = Type::KArray;
    t->elem = elem;
    arrays_[elem] = t;
    return t;
  }
  const Type* array_of(const Type* elem, int dims) {
    const Type* t = elem;
    for (int i = 0; i < dims; i++) t = array_of(t);
    return t;
  }
  const Type* null_type() { return singleton(null_, Type::KNull); }
  const Type* void_type() { return singleton(void_, Type::KVoid); }
  const Type* error_type() { return singleton(error_, Type::KError); }

  ClassSym* make_class(std::string name, std::string package,
                       const ClassSym* super, bool is_user) {
    auto c = std::make_unique<ClassSym>();
    c->name = std::move(name);
    c->package = std::move(package);
    c->super = super;
    c->is_user = is_user;
    ClassSym* raw = c.get();
    classes_.push_back(std::move(c));
    if (!raw->package.empty())
      builtin_by_qualified_[raw->package + "." + raw->name] = raw;
    if (raw->package == "java.lang") lang_by_simple_[raw->name] = raw;
    else if (!raw->package.empty()) nonlang_by_simple_[raw->name] = raw;
    return raw;
  }

  const ClassSym* lang_class(const std::string& simple) const {
    auto it = lang_by_simple_.find(simple);
    return it == lang_by_simple_.end() ? nullptr : it->second;
  }
  const ClassSym* qualified_class(const std::string& q) const {
    auto it = builtin_by_qualified_.find(q);
    return it == builtin_by_qualified_.end() ? nullptr : it->second;
  }
  const ClassSym* nonlang_class(const std::string& simple) const {
    auto it = nonlang_by_simple_.find(simple);
    return it == nonlang_by_simple_.end() ? nullptr : it->second;
  }
  bool package_exists(const std::string& p) const {
    return p == "java.lang" || p == "java.io" || p == "java.util";
  }

  const ClassSym* object_ = nullptr;
  const ClassSym* string_ = nullptr;
  const ClassSym* throwable_ = nullptr;
  const ClassSym* exception_ = nullptr;
  const ClassSym* runtime_exception_ = nullptr;
  const ClassSym* error_cls_ = nullptr;

  bool is_checked_exception(const ClassSym* c) const {
    return c->derives_from(throwable_) && !c->derives_from(runtime_exception_) &&
           !c->derives_from(error_cls_);
  }

 private:
  std::vector<std::unique_ptr<ClassSym>> classes_;
  std::vector<std::unique_ptr<Type>> types_;
  std::map<Prim, const Type*> prims_;
  std::map<const ClassSym*, const Type*> class_types_;
  std::map<const Type*, const Type*> arrays_;
  const Type* null_ = nullptr;
  const Type* void_ = nullptr;
  const Type* error_ = nullptr;
  std::map<std::string, const ClassSym*> lang_by_simple_;
  std::map<std::string, const ClassSym*> nonlang_by_simple_;
  std::map<std::string, const ClassSym*> builtin_by_qualified_;

  Type* new_type() {
    types_.push_back(std::make_unique<Type>());
    return types_.back().get();
  }
  const Type* singleton(const Type*& slot, Type::Kind k) {
    if (!slot) {
      auto* t = new_type();
      t->kind = k;
      slot = t;
    }
    return slot;
  }

  void add_method(ClassSym* c, const char* name, const Type* ret,
                  std::vector<const Type*> params, bool is_static = false) {
    MethodSym m;
    m.name = name;
    m.ret = ret;
    m.params = std::move(params);
    m.is_static = is_static;
    c->methods.push_back(std::move(m));
  }
  void add_ctor(ClassSym* c, std::vector<const Type*> params) {
    MethodSym m;
    m.name = c->name;
    m.ret = class_type(c);
    m.params = std::move(params);
    m.is_ctor = true;
    c->methods.push_back(std::move(m));
  }
  void add_field(ClassSym* c, const char* name, const Type* t,
                 bool is_static = false) {
    FieldSym f;
    f.name = name;
    f.type = t;
    f.is_static = is_static;
    c->fields.push_back(std::move(f));
  }

  void build_builtins() {
    const Type* ti = prim(Prim::Int);
    const Type* tl = prim(Prim::Long);
    const Type* td = prim(Prim::Double);
    const Type* tf = prim(Prim::Float);
    const Type* tc = prim(Prim::Char);
    const Type* tb = prim(Prim::Boolean);
    const Type* tv = void_type();

    ClassSym* object = make_class("Object", "java.lang", nullptr, false);
    object_ = object;
    const Type* tobj = class_type(object);

    ClassSym* string = make_class("String", "java.lang", object, false);
    string_ = string;
    const Type* tstr = class_type(string);

    add_method(object, "toString", tstr, {});
    add_method(object, "equals", tb, {tobj});
    add_method(object, "hashCode", ti, {});

    add_method(string, "length", ti, {});
    add_method(string, "charAt", tc, {ti});
    add_method(string, "substring", tstr, {ti});
    add_method(string, "substring", tstr, {ti, ti});
    add_method(string, "indexOf", ti, {tstr});
    add_method(string, "isEmpty", tb, {});
    add_method(string, "equalsIgnoreCase", tb, {tstr});
    add_method(string, "toUpperCase", tstr, {});
    add_method(string, "toLowerCase", tstr, {});
    add_method(string, "trim", tstr, {});
    add_method(string, "concat", tstr, {tstr});
    add_method(string, "contains", tb, {tstr});
    add_method(string, "split", array_of(tstr), {tstr});
    add_method(string, "replace", tstr, {tc, tc});
    add_method(string, "startsWith", tb, {tstr});
    add_method(string, "endsWith", tb, {tstr});
    add_method(string, "compareTo", ti, {tstr});
    add_method(string, "toCharArray", array_of(tc), {});
    add_method(string, "valueOf", tstr, {ti}, true);
    add_method(string, "valueOf", tstr, {td}, true);
    add_method(string, "valueOf", tstr, {tobj}, true);

    ClassSym* sb = make_class("StringBuilder", "java.lang", object, false);
    const Type* tsb = class_type(sb);
    add_ctor(sb, {});
    add_ctor(sb, {tstr});
    for (const Type* at : {tstr, ti, tl, td, tobj})
      add_method(sb, "append", tsb, {at});
    add_method(sb, "append", tsb, {tc});
    add_method(sb, "append", tsb, {tb});
    add_method(sb, "toString", tstr, {});
    add_method(sb, "length", ti, {});
    add_method(sb, "reverse", tsb, {});
    add_method(sb, "charAt", tc, {ti});

    ClassSym* ps = make_class("PrintStream", "java.io", object, false);
    const Type* tps = class_type(ps);
    add_method(ps, "println", tv, {});
    for (const Type* at : {tstr, ti, tl, td, tf, tc, tb, tobj}) {
      add_method(ps, "println", tv, {at});
      add_method(ps, "print", tv, {at});
    }
    add_method(ps, "flush", tv, {});

    ClassSym* system = make_class("System", "java.lang", object, false);
    add_field(system, "out", tps, true);
    add_field(system, "err", tps, true);
    add_method(system, "currentTimeMillis", tl, {}, true);
    add_method(system, "arraycopy", tv, {tobj, ti, tobj, ti, ti}, true);
    add_method(system, "exit", tv, {ti}, true);

    ClassSym* math = make_class("Math", "java.lang", object, false);
    add_field(math, "PI", td, true);
    add_field(math, "E", td, true);
    add_method(math, "abs", ti, {ti}, true);
    add_method(math, "abs", tl, {tl}, true);
    add_method(math, "abs", td, {td}, true);
    add_method(math, "max", ti, {ti, ti}, true);
    add_method(math, "max", tl, {tl, tl}, true);
    add_method(math, "max", td, {td, td}, true);
    add_method(math, "min", ti, {ti, ti}, true);
    add_method(math, "min", td, {td, td}, true);
    add_method(math, "sqrt", td, {td}, true);
    add_method(math, "pow", td, {td, td}, true);
    add_method(math, "floor", td, {td}, true);
    add_method(math, "ceil", td, {td}, true);
    add_method(math, "random", td, {}, true);
    add_method(math, "round", tl, {td}, true);

    ClassSym* integer = make_class("Integer", "java.lang", object, false);
    add_method(integer, "parseInt", ti, {tstr}, true);
    add_method(integer, "valueOf", class_type(integer), {ti}, true);
    add_method(integer, "valueOf", class_type(integer), {tstr}, true);
    add_method(integer, "toString", tstr, {ti}, true);
    add_method(integer, "intValue", ti, {});
    add_field(integer, "MAX_VALUE", ti, true);
    add_field(integer, "MIN_VALUE", ti, true);

    ClassSym* longc = make_class("Long", "java.lang", object, false);
    add_method(longc, "parseLong", tl, {tstr}, true);
    add_method(longc, "longValue", tl, {});
    add_field(longc, "MAX_VALUE", tl, true);
    add_field(longc, "MIN_VALUE", tl, true);

    ClassSym* dbl = make_class("Double", "java.lang", object, false);
    add_method(dbl, "parseDouble", td, {tstr}, true);
    add_method(dbl, "doubleValue", td, {});
    add_method(dbl, "isNaN", tb, {td}, true);
    add_field(dbl, "MAX_VALUE", td, true);
    add_field(dbl, "MIN_VALUE", td, true);

    ClassSym* boolc = make_class("Boolean", "java.lang", object, false);
    add_method(boolc, "parseBoolean", tb, {tstr}, true);
    add_method(boolc, "booleanValue", tb, {});

    ClassSym* ch = make_class("Character", "java.lang", object, false);
    add_method(ch, "isDigit", tb, {tc}, true);
    add_method(ch, "isLetter", tb, {tc}, true);
    add_method(ch, "isWhitespace", tb, {tc}, true);
    add_method(ch, "isUpperCase", tb, {tc}, true);
    add_method(ch, "isLowerCase", tb, {tc}, true);
    add_method(ch, "toUpperCase", tc, {tc}, true);
    add_method(ch, "toLowerCase", tc, {tc}, true);
    add_method(ch, "charValue", tc, {});

    auto make_throwable = [&](const char* name, const char* pkg,
                              const ClassSym* super) {
      ClassSym* c = make_class(name, pkg, super, false);
      add_ctor(c, {});
      add_ctor(c, {tstr});
      return c;
    };

    ClassSym* throwable = make_throwable("Throwable", "java.lang", object);
    throwable_ = throwable;
    add_method(throwable, "getMessage", tstr, {});
    add_method(throwable, "printStackTrace", tv, {});

    ClassSym* exception = make_throwable("Exception", "java.lang", throwable);
    exception_ = exception;
    ClassSym* rte = make_throwable("RuntimeException", "java.lang", exception);
    runtime_exception_ = rte;
    ClassSym* errc = make_throwable("Error", "java.lang", throwable);
    error_cls_ = errc;

    ClassSym* iae = make_throwable("IllegalArgumentException", "java.lang", rte);
    make_throwable("IllegalStateException", "java.lang", rte);
    make_throwable("UnsupportedOperationException", "java.lang", rte);
    make_throwable("NullPointerException", "java.lang", rte);
    make_throwable("ArithmeticException", "java.lang", rte);
    make_throwable("ClassCastException", "java.lang", rte);
    make_throwable("NumberFormatException", "java.lang", iae);
    ClassSym* ioobe = make_throwable("IndexOutOfBoundsException", "java.lang", rte);
    make_throwable("ArrayIndexOutOfBoundsException", "java.lang", ioobe);

    ClassSym* ioe = make_throwable("IOException", "java.io", exception);
    make_throwable("FileNotFoundException", "java.io", ioe);
  }
};

// ---------------- checker ----------------

class Sema {
 public:
  Sema(CompilationUnit& unit, World& world, DiagSink& sink)
      : unit_(unit), world_(world), sink_(sink) {}

  void run() {
    enter_classes();
    resolve_signatures();
    for (size_t i = 0; i < unit_.classes.size(); i++)
      check_class(unit_.classes[i], user_classes_[i]);
  }

 private:
  CompilationUnit& unit_;
  World& world_;
  DiagSink& sink_;
  std::vector<ClassSym*> user_classes_;
  std::map<std::string, ClassSym*> user_by_name_;

  struct Thrown {
    const ClassSym* cls;
    Pos pos;
  };

  // context for body checking
  ClassSym* cur_class_ = nullptr;
  const MethodSym* cur_method_ = nullptr;
  bool static_ctx_ = false;
  std::vector<std::map<std::string, const Type*>> scopes_;

  // ---------- declarations ----------

  void enter_classes() {
    for (ClassDecl& cd : unit_.classes) {
      if (user_by_name_.count(cd.name)) {
        sink_.error(cd.name_pos, "duplicate class: " + cd.name);
        user_classes_.push_back(user_by_name_[cd.name]);
        continue;
      }
      ClassSym* c = world_.make_class(cd.name, "", nullptr, true);
      c->pos = cd.name_pos;
      user_by_name_[cd.name] = c;
      user_classes_.push_back(c);
    }
  }

  void resolve_signatures() {
    for (size_t i = 0; i < unit_.classes.size(); i++) {
      ClassDecl& cd = unit_.classes[i];
      ClassSym* c = user_classes_[i];
      c->super = world_.object_;
      if (cd.has_extends) {
        const ClassSym* s = resolve_class_ref(cd.extends_type, true);
        if (s) {
          if (s == c) {
            sink_.error(cd.extends_type.pos, "cyclic inheritance involving " + c->name);
          } else {
            c->super = s;
          }
        }
      }
      for (const TypeExpr& t : cd.implements_types) resolve_class_ref(t, true);
    }
    for (size_t i = 0; i < unit_.classes.size(); i++)
      resolve_members(unit_.classes[i], user_classes_[i]);
  }

  void resolve_members(ClassDecl& cd, ClassSym* c) {
    for (MemberDecl& m : cd.members) {
      if (m.kind == MemberDecl::Field) {
        const Type* ft = resolve_type(m.type, true);
        for (VarDeclarator& v : m.declarators) {
          if (find_own_field(c, v.name)) {
            sink_.error(v.pos, "variable " + v.name +
                                   " is already defined in class " + c->name);
            continue;
          }
          FieldSym f;
          f.name = v.name;
          f.type = world_.array_of(ft, v.extra_dims);
          f.is_static = m.mods.is_static;
          f.pos = v.pos;
          c->fields.push_back(std::move(f));
        }
        continue;
      }

      MethodSym ms;
      ms.decl = &m;
      ms.pos = m.name_pos;
      ms.is_static = m.mods.is_static;
      if (m.kind == MemberDecl::Ctor) {
        ms.is_ctor = true;
        ms.name = m.name;
        ms.ret = world_.class_type(c);
      } else if (m.ctor_like) {
        // method without a return type that does not match the class name
        sink_.error(m.name_pos, "invalid method declaration; return type required");
        ms.name = m.name;
        ms.ret = world_.void_type();
      } else {
        ms.name = m.name;
        ms.ret = resolve_type(m.type, true);
      }
      for (MemberDecl::Param& p : m.params)
        ms.params.push_back(resolve_type(p.type, true));
      for (const TypeExpr& t : m.throws_types) {
        const ClassSym* tc = resolve_class_ref(t, true);
        if (!tc) continue;
        if (!tc->derives_from(world_.throwable_)) {
          sink_.error(t.pos, "incompatible types: " + tc->name +
                                 " cannot be converted to Throwable");
          continue;
        }
        ms.throws_classes.push_back(tc);
      }
      if (find_method_exact(c, ms.name, ms.params, ms.is_ctor)) {
        sink_.error(ms.pos, (ms.is_ctor ? "constructor " : "method ") + ms.name +
                                "(" + type_csv(ms.params) +
                                ") is already defined in class " + c->name);
        continue;
      }
      c->methods.push_back(std::move(ms));
    }
  }

  static const FieldSym* find_own_field(const ClassSym* c, const std::string& n) {
    for (const FieldSym& f : c->fields)
      if (f.name == n) return &f;
    return nullptr;
  }

  const MethodSym* find_method_exact(const ClassSym* c, const std::string& n,
                                     const std::vector<const Type*>& params,
                                     bool ctor) const {
    for (const MethodSym& m : c->methods)
      if (m.is_ctor == ctor && m.name == n && m.params == params) return &m;
    return nullptr;
  }

  // ---------- type resolution ----------

  // Resolves a class-type reference to a ClassSym. Reports (optionally) and
  // returns null on failure.
  const ClassSym* resolve_class_ref(const TypeExpr& t, bool report) {
    if (!t.prim.empty()) return nullptr;
    const ClassSym* c = nullptr;
    if (t.parts.size() == 1) {
      const std::string& n = t.parts[0];
      auto it = user_by_name_.find(n);
      if (it != user_by_name_.end()) c = it->second;
      if (!c) c = world_.lang_class(n);
      if (!c) c = resolve_import(n);
      if (!c) {
        if (report)
          sink_.error(t.pos, "cannot find symbol",
                      {"  symbol:   class " + n, location_detail()});
        return nullptr;
      }
    } else {
      std::string pkg;
      for (size_t i = 0; i + 1 < t.parts.size(); i++) {
        if (i) pkg += ".";
        pkg += t.parts[i];
      }
      std::string q = pkg + "." + t.parts.back();
      c = world_.qualified_class(q);
      if (!c) {
        if (report) {
          if (world_.package_exists(pkg))
            sink_.error(t.pos, "cannot find symbol",
                        {"  symbol:   class " + t.parts.back(),
                         "  location: package " + pkg});
          else
            sink_.error(t.pos, "package " + pkg + " does not exist");
        }
        return nullptr;
      }
    }
    if (t.has_type_args && report)
      sink_.error(t.pos, "type " + c->name + " does not take parameters");
    return c;
  }

  const ClassSym* resolve_import(const std::string& simple) {
    for (const TypeExpr& imp : unit_.imports) {
      if (imp.parts.empty()) continue;
      if (imp.parts.back() == "*") {
        std::string pkg;
        for (size_t i = 0; i + 1 < imp.parts.size(); i++) {
          if (i) pkg += ".";
          pkg += imp.parts[i];
        }
        const ClassSym* c = world_.qualified_class(pkg + "." + simple);
        if (c) return c;
      } else if (imp.parts.back() == simple) {
        std::string q;
        for (size_t i = 0; i < imp.parts.size(); i++) {
          if (i) q += ".";
          q += imp.parts[i];
        }
        const ClassSym* c = world_.qualified_class(q);
        if (c) return c;
      }
    }
    return nullptr;
  }

  const Type* resolve_type(const TypeExpr& t, bool report) {
    const Type* base = nullptr;
    if (!t.prim.empty()) {
      if (t.prim == "void") base = world_.void_type();
      else base = world_.prim(prim_of(t.prim));
    } else {
      const ClassSym* c = resolve_class_ref(t, report);
      if (!c) return world_.error_type();
      base = world_.class_type(c);
    }
    return world_.array_of(base, t.dims);
  }

  static Prim prim_of(const std::string& s) {
    if (s == "int") return Prim::Int;
    if (s == "long") return Prim::Long;
    if (s == "short") return Prim::Short;
    if (s == "byte") return Prim::Byte;
    if (s == "char") return Prim::Char;
    if (s == "boolean") return Prim::Boolean;
    if (s == "float") return Prim::Float;
    return Prim::Double;
  }

  std::string location_detail() const {
    std::string n = "?";
    if (cur_class_) n = cur_class_->name;
    else if (!unit_.classes.empty()) n = unit_.classes[0].name;
    return "  location: class " + n;
  }

  // ---------- conversions ----------

  bool widens(Prim from, Prim to) const {
    if (from == to) return true;
    auto rank = [](Prim p) {
      switch (p) {
        case Prim::Byte: return 1;
        case Prim::Short: return 2;
        case Prim::Char: return 2;
        case Prim::Int: return 3;
        case Prim::Long: return 4;
        case Prim::Float: return 5;
        case Prim::Double: return 6;
        case Prim::Boolean: return 0;
      }
      return 0;
    };
    if (from == Prim::Boolean || to == Prim::Boolean) return false;
    if (to == Prim::Char) return false;  // nothing widens to char
    if (from == Prim::Char && to == Prim::Short) return false;
    return rank(from) < rank(to);
  }

  bool assignable(const Type* from, const Type* to) const {
    if (from->is_error() || to->is_error()) return true;
    if (from == to) return true;
    if (from->is_prim() && to->is_prim()) return widens(from->prim, to->prim);
    if (from->is_null()) return to->is_class() || to->is_array();
    if (from->is_class() && to->is_class())
      return from->cls->derives_from(to->cls);
    if (from->is_array() && to->is_class()) return to->cls == world_object();
    if (from->is_array() && to->is_array()) {
      const Type* fe = from->elem;
      const Type* te = to->elem;
      if (fe->is_prim() || te->is_prim()) return fe == te;
      return assignable(fe, te);
    }
    return false;
  }

  bool castable(const Type* from, const Type* to) const {
    if (from->is_error() || to->is_error()) return true;
    if (assignable(from, to) || assignable(to, from)) return true;
    if (from->is_prim() && to->is_prim())
      return !from->is_boolean() && !to->is_boolean();
    return false;
  }

  const ClassSym* world_object() const { return world_.object_; }

  const Type* promote(const Type* a, const Type* b) {
    auto wide = [&](Prim p) {
      return p == Prim::Double || p == Prim::Float || p == Prim::Long;
    };
    (void)wide;
    Prim pa = a->prim, pb = b->prim;
    if (pa == Prim::Double || pb == Prim::Double) return world_.prim(Prim::Double);
    if (pa == Prim::Float || pb == Prim::Float) return world_.prim(Prim::Float);
    if (pa == Prim::Long || pb == Prim::Long) return world_.prim(Prim::Long);
    return world_.prim(Prim::Int);
  }

  static std::string type_csv(const std::vector<const Type*>& ts) {
    std::string s;
    for (size_t i = 0; i < ts.size(); i++) {
      if (i) s += ",";
      s += ts[i]->name();
    }
    return s;
  }

  // ---------- bodies ----------

  void check_class(ClassDecl& cd, ClassSym* c) {
    cur_class_ = c;
    for (MemberDecl& m : cd.members) {
      if (m.kind == MemberDecl::Field) {
        static_ctx_ = m.mods.is_static;
        cur_method_ = nullptr;
        scopes_.clear();
        scopes_.emplace_back();
        for (VarDeclarator& v : m.declarators) {
          if (!v.init) continue;
          const FieldSym* f = find_own_field(c, v.name);
          if (!f) continue;
          std::vector<Thrown> thrown;
          check_initializer(v.init.get(), f->type, &thrown);
          for (const Thrown& t : thrown)
            sink_.error(t.pos, "unreported exception " + t.cls->name +
                                   "; must be caught or declared to be thrown");
        }
        continue;
      }
      const MethodSym* ms = method_sym_for(c, &m);
      if (!ms || !m.body) continue;
      cur_method_ = ms;
      static_ctx_ = ms->is_static;
      scopes_.clear();
      scopes_.emplace_back();
      for (size_t i = 0; i < m.params.size() && i < ms->params.size(); i++)
        scopes_.back()[m.params[i].name] = ms->params[i];
      std::vector<Thrown> thrown;
      check_stmt(m.body.get(), &thrown);
      for (const Thrown& t : thrown) {
        bool declared = false;
        for (const ClassSym* d : ms->throws_classes)
          if (t.cls->derives_from(d)) declared = true;
        if (!declared)
          sink_.error(t.pos, "unreported exception " + t.cls->name +
                                 "; must be caught or declared to be thrown");
      }
      if (!ms->is_ctor && !ms->ret->is_void() && !ms->ret->is_error() &&
          !completes_abruptly(m.body.get())) {
        sink_.error(m.body->end_pos, "missing return statement");
      }
    }
    cur_class_ = nullptr;
    cur_method_ = nullptr;
  }

  const MethodSym* method_sym_for(const ClassSym* c, const MemberDecl* m) const {
    for (const MethodSym& ms : c->methods)
      if (ms.decl == m) return &ms;
    return nullptr;
  }

  // conservative: a block completes abruptly if its last statement does
  bool completes_abruptly(const Stmt* s) const {
    switch (s->kind) {
      case Stmt::Return:
      case Stmt::Throw:
        return true;
      case Stmt::Block:
        return !s->stmts.empty() && completes_abruptly(s->stmts.back().get());
      case Stmt::If:
        return s->else_stmt && completes_abruptly(s->then_stmt.get()) &&
               completes_abruptly(s->else_stmt.get());
      case Stmt::Try: {
        if (!completes_abruptly(s->then_stmt.get())) return false;
        for (const Stmt::Catch& c : s->catches)
          if (!completes_abruptly(c.body.get())) return false;
        return true;
      }
      case Stmt::While:
        // while(true) without break — treat as abrupt
        return s->expr && s->expr->kind == Expr::BoolLit && s->expr->text == "true";
      default:
        return false;
    }
  }

  void declare_local(const std::string& name, Pos pos, const Type* t) {
    for (const auto& scope : scopes_) {
      if (scope.count(name)) {
        std::string where = "method ";
        if (cur_method_) {
          where += cur_method_->name + "(" + type_csv(cur_method_->params) + ")";
        } else {
          where += "?";
        }
        sink_.error(pos, "variable " + name + " is already defined in " + where);
        return;
      }
    }
    scopes_.back()[name] = t;
  }

  const Type* lookup_local(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto f = it->find(name);
      if (f != it->end()) return f->second;
    }
    return nullptr;
  }

  const FieldSym* lookup_field(const ClassSym* c, const std::string& n) const {
    for (const ClassSym* s = c; s; s = s->super) {
      for (const FieldSym& f : s->fields)
        if (f.name == n) return &f;
    }
    return nullptr;
  }

  std::vector<const MethodSym*> lookup_methods(const ClassSym* c,
                                               const std::string& n) const {
    std::vector<const MethodSym*> out;
    for (const ClassSym* s = c; s; s = s->super)
      for (const MethodSym& m : s->methods)
        if (!m.is_ctor && m.name == n) out.push_back(&m);
    return out;
  }

  // ---------- statement checking ----------

  void check_stmt(Stmt* s, std::vector<Thrown>* thrown) {
    switch (s->kind) {
      case Stmt::Block: {
        scopes_.emplace_back();
        for (StmtPtr& c : s->stmts) check_stmt(c.get(), thrown);
        scopes_.pop_back();
        break;
      }
      case Stmt::LocalVar: {
        const Type* t = resolve_type(s->type_expr, true);
        for (VarDeclarator& v : s->vars) {
          const Type* vt = world_.array_of(t, v.extra_dims);
          declare_local(v.name, v.pos, vt);
          if (v.init) check_initializer(v.init.get(), vt, thrown);
        }
        break;
      }
      case Stmt::ExprStmt: {
        const Type* t = check_expr(s->expr.get(), thrown);
        Expr::Kind k = s->expr->kind;
        if (!t->is_error() && k != Expr::Call && k != Expr::Assign &&
            k != Expr::PreIncDec && k != Expr::PostIncDec && k != Expr::New) {
          sink_.error(s->expr->pos, "not a statement");
        }
        break;
      }
      case Stmt::If:
        check_condition(s->expr.get(), thrown);
        check_stmt(s->then_stmt.get(), thrown);
        if (s->else_stmt) check_stmt(s->else_stmt.get(), thrown);
        break;
      case Stmt::While:
        check_condition(s->expr.get(), thrown);
        check_stmt(s->then_stmt.get(), thrown);
        break;
      case Stmt::DoWhile:
        check_stmt(s->then_stmt.get(), thrown);
        check_condition(s->expr.get(), thrown);
        break;
      case Stmt::For: {
        scopes_.emplace_back();
        if (s->init_stmt) check_stmt(s->init_stmt.get(), thrown);
        if (s->expr) check_condition(s->expr.get(), thrown);
        for (ExprPtr& e : s->exprs) check_expr(e.get(), thrown);
        check_stmt(s->then_stmt.get(), thrown);
        scopes_.pop_back();
        break;
      }
      case Stmt::ForEach: {
        scopes_.emplace_back();
        const Type* vt = resolve_type(s->type_expr, true);
        const Type* it = check_expr(s->expr.get(), thrown);
        if (!it->is_error()) {
          if (it->is_array()) {
            if (!assignable(it->elem, vt) && !vt->is_error()) {
              sink_.error(s->expr->pos,
                          "incompatible types: " + it->elem->name() +
                              " cannot be converted to " + vt->name());
            }
          } else {
            sink_.error(s->expr->pos, "for-each not applicable to expression type",
                        {"  required: array or java.lang.Iterable",
                         "  found:    " + it->name()});
          }
        }
        declare_local(s->name, s->name_pos, vt);
        check_stmt(s->then_stmt.get(), thrown);
        scopes_.pop_back();
        break;
      }
      case Stmt::Return: {
        const Type* ret =
            cur_method_ ? cur_method_->ret : world_.void_type();
        if (cur_method_ && cur_method_->is_ctor) ret = world_.void_type();
        if (s->expr) {
          const Type* t = check_expr(s->expr.get(), thrown);
          if (ret->is_void()) {
            sink_.error(s->expr->pos,
                        "cannot return a value from method whose result type is void");
          } else if (!t->is_error() && !ret->is_error() && !assignable(t, ret)) {
            sink_.error(s->expr->pos, "incompatible types: " + t->name() +
                                          " cannot be converted to " + ret->name());
          }
        } else if (!ret->is_void() && !ret->is_error()) {
          sink_.error(s->pos, "missing return value");
        }
        break;
      }
      case Stmt::Throw: {
        const Type* t = check_expr(s->expr.get(), thrown);
        if (!t->is_error()) {
          if (!t->is_class() || !t->cls->derives_from(world_.throwable_)) {
            sink_.error(s->expr->pos, "incompatible types: " + t->name() +
                                          " cannot be converted to Throwable");
          } else if (world_.is_checked_exception(t->cls)) {
            thrown->push_back({t->cls, s->pos});
          }
        }
        break;
      }
      case Stmt::Try: {
        std::vector<Thrown> body_thrown;
        check_stmt(s->then_stmt.get(), &body_thrown);
        std::vector<const ClassSym*> catch_classes;
        for (Stmt::Catch& c : s->catches) {
          const ClassSym* cc = resolve_class_ref(c.type, true);
          const Type* ct = world_.error_type();
          if (cc) {
            if (!cc->derives_from(world_.throwable_)) {
              sink_.error(c.type.pos, "incompatible types: " + cc->name +
                                          " cannot be converted to Throwable");
              cc = nullptr;
            } else {
              ct = world_.class_type(cc);
            }
          }
          if (cc) {
            catch_classes.push_back(cc);
            if (world_.is_checked_exception(cc) && cc != world_.exception_ &&
                cc != world_.throwable_) {
              bool may_throw = false;
              for (const Thrown& t : body_thrown)
                if (t.cls->derives_from(cc) || cc->derives_from(t.cls))
                  may_throw = true;
              if (!may_throw)
                sink_.error(c.type.pos,
                            "exception " + cc->name +
                                " is never thrown in body of corresponding try statement");
            }
          }
          scopes_.emplace_back();
          declare_local(c.var, c.var_pos, ct);
          check_stmt(c.body.get(), thrown);
          scopes_.pop_back();
        }
        for (const Thrown& t : body_thrown) {
          bool caught = false;
          for (const ClassSym* cc : catch_classes)
            if (t.cls->derives_from(cc)) caught = true;
          if (!caught) thrown->push_back(t);
        }
        if (s->finally_stmt) check_stmt(s->finally_stmt.get(), thrown);
        break;
      }
      case Stmt::Break:
      case Stmt::Continue:
      case Stmt::Empty:
        break;
    }
  }

  void check_condition(Expr* e, std::vector<Thrown>* thrown) {
    const Type* t = check_expr(e, thrown);
    if (!t->is_error() && !t->is_boolean()) {
      sink_.error(e->pos, "incompatible types: " + t->name() +
                              " cannot be converted to boolean");
    }
  }

  void check_initializer(Expr* init, const Type* target,
                         std::vector<Thrown>* thrown) {
    if (init->kind == Expr::ArrayInit) {
      if (!target->is_array()) {
        if (!target->is_error())
          sink_.error(init->pos, "illegal initializer for " + target->name());
        return;
      }
      for (ExprPtr& el : init->args)
        check_initializer(el.get(), target->elem, thrown);
      init->type = target;
      return;
    }
    const Type* t = check_expr(init, thrown);
    if (!t->is_error() && !target->is_error() && !assignable(t, target)) {
      sink_.error(init->pos, "incompatible types: " + t->name() +
                                 " cannot be converted to " + target->name());
    }
  }

  // ---------- expression checking ----------

  const Type* err() { return world_.error_type(); }

  const Type* check_expr(Expr* e, std::vector<Thrown>* thrown) {
    const Type* t = check_expr_inner(e, thrown);
    e->type = t;
    return t;
  }

  const Type* check_expr_inner(Expr* e, std::vector<Thrown>* thrown) {
    switch (e->kind) {
      case Expr::IntLit: return world_.prim(Prim::Int);
      case Expr::LongLit: return world_.prim(Prim::Long);
      case Expr::FloatLit: return world_.prim(Prim::Float);
      case Expr::DoubleLit: return world_.prim(Prim::Double);
      case Expr::CharLit: return world_.prim(Prim::Char);
      case Expr::BoolLit: return world_.prim(Prim::Boolean);
      case Expr::StringLit: return world_.class_type(world_.string_);
      case Expr::NullLit: return world_.null_type();
      case Expr::Paren: return check_expr(e->lhs.get(), thrown);
      case Expr::This: {
        if (static_ctx_) {
          sink_.error(e->pos,
                      "non-static variable this cannot be referenced from a static context");
          return err();
        }
        return cur_class_ ? world_.class_type(cur_class_) : err();
      }
      case Expr::Name: return check_name(e);
      case Expr::FieldSel: return check_field_sel(e, thrown);
      case Expr::Call: return check_call(e, thrown);
      case Expr::New: return check_new(e, thrown);
      case Expr::NewArray: return check_new_array(e, thrown);
      case Expr::Index: return check_index(e, thrown);
      case Expr::Unary: return check_unary(e, thrown);
      case Expr::PreIncDec:
      case Expr::PostIncDec: return check_incdec(e, thrown);
      case Expr::Binary: return check_binary(e, thrown);
      case Expr::Assign: return check_assign(e, thrown);
      case Expr::Ternary: return check_ternary(e, thrown);
      case Expr::Cast: return check_cast(e, thrown);
      case Expr::InstanceOf: {
        const Type* t = check_expr(e->lhs.get(), thrown);
        resolve_class_ref(e->type_expr, true);
        if (!t->is_error() && !t->is_reference()) {
          sink_.error(e->lhs->pos, "unexpected type",
                      {"  required: reference", "  found:    " + t->name()});
        }
        return world_.prim(Prim::Boolean);
      }
      case Expr::ArrayInit:
        sink_.error(e->pos, "illegal initializer");
        return err();
    }
    return err();
  }

  const Type* check_name(Expr* e) {
    const std::string& n = e->text;
    if (const Type* t = lookup_local(n)) return t;
    if (cur_class_) {
      if (const FieldSym* f = lookup_field(cur_class_, n)) {
        if (static_ctx_ && !f->is_static) {
          sink_.error(e->pos, "non-static variable " + n +
                                  " cannot be referenced from a static context");
          return err();
        }
        return f->type;
      }
    }
    sink_.error(e->pos, "cannot find symbol",
                {"  symbol:   variable " + n, location_detail()});
    return err();
  }

  // Receiver of a field select / qualified call: either a value or a class.
  struct Receiver {
    const Type* value = nullptr;        // null if class reference
    const ClassSym* cls_ref = nullptr;  // static access
    std::string var_name;               // for "variable v of type C" locations
    bool bad = false;
  };

  Receiver check_receiver(Expr* e, std::vector<Thrown>* thrown) {
    Receiver r;
    if (e->kind == Expr::Name) {
      const std::string& n = e->text;
      if (const Type* t = lookup_local(n)) {
        if (t->is_error()) {
          r.bad = true;
          return r;
        }
        r.value = t;
        r.var_name = n;
        e->type = t;
        return r;
      }
      if (cur_class_) {
        if (const FieldSym* f = lookup_field(cur_class_, n)) {
          if (static_ctx_ && !f->is_static) {
            sink_.error(e->pos, "non-static variable " + n +
                                    " cannot be referenced from a static context");
            r.bad = true;
            return r;
          }
          if (f->type->is_error()) {
            r.bad = true;
            return r;
          }
          r.value = f->type;
          r.var_name = n;
          e->type = f->type;
          return r;
        }
      }
      TypeExpr te;
      te.parts.push_back(n);
      te.pos = e->pos;
      if (const ClassSym* c = resolve_class_ref(te, false)) {
        r.cls_ref = c;
        return r;
      }
      sink_.error(e->pos, "cannot find symbol",
                  {"  symbol:   variable " + n, location_detail()});
      r.bad = true;
      return r;
    }
    const Type* t = check_expr(e, thrown);
    if (t->is_error()) {
      r.bad = true;
      return r;
    }
    r.value = t;
    return r;
  }

  std::string member_location(const Receiver& r) const {
    if (r.cls_ref) return "  location: class " + r.cls_ref->name;
    if (!r.var_name.empty())
      return "  location: variable " + r.var_name + " of type " +
             r.value->name();
    if (r.value && r.value->is_class())
      return "  location: class " + r.value->cls->name;
    return location_detail();
  }

  const Type* check_field_sel(Expr* e, std::vector<Thrown>* thrown) {
    Receiver r = check_receiver(e->lhs.get(), thrown);
    if (r.bad) return err();
    const std::string& n = e->text;

    if (r.cls_ref) {
      if (const FieldSym* f = lookup_field(r.cls_ref, n)) {
        if (!f->is_static) {
          sink_.error(e->pos, "non-static variable " + n +
                                  " cannot be referenced from a static context");
          return err();
        }
        return f->type;
      }
      sink_.error(e->pos, "cannot find symbol",
                  {"  symbol:   variable " + n,
                   "  location: class " + r.cls_ref->name});
      return err();
    }

    const Type* t = r.value;
    if (t->is_array()) {
      if (n == "length") return world_.prim(Prim::Int);
      sink_.error(e->pos, "cannot find symbol",
                  {"  symbol:   variable " + n, member_location(r)});
      return err();
    }
    if (t->is_prim() || t->is_null() || t->is_void()) {
      sink_.error(e->pos, t->name() + " cannot be dereferenced");
      return err();
    }
    if (const FieldSym* f = lookup_field(t->cls, n)) return f->type;
    sink_.error(e->pos, "cannot find symbol",
                {"  symbol:   variable " + n, member_location(r)});
    return err();
  }

  const Type* check_args(std::vector<ExprPtr>& args,
                         std::vector<const Type*>& out,
                         std::vector<Thrown>* thrown) {
    bool bad = false;
    for (ExprPtr& a : args) {
      const Type* t = check_expr(a.get(), thrown);
      if (t->is_error()) bad = true;
      out.push_back(t);
    }
    return bad ? err() : nullptr;
  }

  // Shared overload resolution; emits javac-style diagnostics.
  // kind_word: "method" or "constructor"; cname used for ctor messages.
  const MethodSym* resolve_invocation(
      const std::vector<const MethodSym*>& candidates,
      const std::vector<const Type*>& args, std::vector<ExprPtr>& arg_exprs,
      Pos err_pos, const std::string& name, const ClassSym* owner, bool ctor) {
    std::string what = ctor ? "constructor" : "method";
    std::string shown = ctor ? owner->name : name;
    for (const MethodSym* m : candidates) {
      if (m->params.size() != args.size()) continue;
      bool ok = true;
      for (size_t i = 0; i < args.size(); i++)
        if (!assignable(args[i], m->params[i])) ok = false;
      if (ok) return m;
    }
    if (candidates.size() == 1) {
      const MethodSym* m = candidates[0];
      if (m->params.size() != args.size()) {
        sink_.error(err_pos,
                    what + " " + shown + " in class " + owner->name +
                        " cannot be applied to given types;",
                    {"  required: " + (m->params.empty() ? "no arguments"
                                                         : type_csv(m->params)),
                     "  found: " + (args.empty() ? "no arguments" : type_csv(args)),
                     "  reason: actual and formal argument lists differ in length"});
        return nullptr;
      }
      for (size_t i = 0; i < args.size(); i++) {
        if (!assignable(args[i], m->params[i])) {
          sink_.error(arg_exprs[i]->pos,
                      "incompatible types: " + args[i]->name() +
                          " cannot be converted to " + m->params[i]->name());
          return nullptr;
        }
      }
      return m;
    }
    std::vector<std::string> details;
    for (const MethodSym* m : candidates) {
      details.push_back("    " + std::string(ctor ? "constructor " : "method ") +
                        owner->name + "." + m->name + "(" + type_csv(m->params) +
                        ") is not applicable");
      if (m->params.size() != args.size())
        details.push_back("      (actual and formal argument lists differ in length)");
      else
        details.push_back("      (argument mismatch)");
    }
    sink_.error(err_pos,
                "no suitable " + what + " found for " + shown + "(" +
                    type_csv(args) + ")",
                details);
    return nullptr;
  }

  void record_throws(const MethodSym* m, Pos pos, std::vector<Thrown>* thrown) {
    for (const ClassSym* c : m->throws_classes)
      if (world_.is_checked_exception(c)) thrown->push_back({c, pos});
  }

  const Type* check_call(Expr* e, std::vector<Thrown>* thrown) {
    std::vector<const Type*> args;
    bool args_bad = check_args(e->args, args, thrown) != nullptr;

    if (!e->lhs) {
      // unqualified call
      if (!cur_class_) return err();
      if (args_bad) return err();
      auto candidates = lookup_methods(cur_class_, e->text);
      if (candidates.empty()) {
        sink_.error(e->pos, "cannot find symbol",
                    {"  symbol:   method " + e->text + "(" + type_csv(args) + ")",
                     location_detail()});
        return err();
      }
      const MethodSym* m = resolve_invocation(candidates, args, e->args, e->pos,
                                              e->text, cur_class_, false);
      if (!m) return err();
      if (static_ctx_ && !m->is_static) {
        sink_.error(e->pos, "non-static method " + m->name + "(" +
                                type_csv(m->params) +
                                ") cannot be referenced from a static context");
        return err();
      }
      record_throws(m, e->pos, thrown);
      return m->ret;
    }

    Receiver r = check_receiver(e->lhs.get(), thrown);
    if (r.bad || args_bad) return err();

    const ClassSym* search = nullptr;
    if (r.cls_ref) {
      search = r.cls_ref;
    } else {
      const Type* t = r.value;
      if (t->is_array()) {
        search = world_.object_;
      } else if (t->is_prim() || t->is_null() || t->is_void()) {
        sink_.error(e->pos, t->name() + " cannot be dereferenced");
        return err();
      } else {
        search = t->cls;
      }
    }
    auto candidates = lookup_methods(search, e->text);
    if (candidates.empty()) {
      sink_.error(e->pos, "cannot find symbol",
                  {"  symbol:   method " + e->text + "(" + type_csv(args) + ")",
                   member_location(r)});
      return err();
    }
    const MethodSym* m = resolve_invocation(candidates, args, e->args, e->pos,
                                            e->text, search, false);
    if (!m) return err();
    if (r.cls_ref && !m->is_static) {
      sink_.error(e->pos, "non-static method " + m->name + "(" +
                              type_csv(m->params) +
                              ") cannot be referenced from a static context");
      return err();
    }
    record_throws(m, e->pos, thrown);
    return m->ret;
  }

  const Type* check_new(Expr* e, std::vector<Thrown>* thrown) {
    std::vector<const Type*> args;
    bool args_bad = check_args(e->args, args, thrown) != nullptr;
    const ClassSym* c = resolve_class_ref(e->type_expr, true);
    if (!c || args_bad) return err();

    std::vector<const MethodSym*> ctors;
    for (const MethodSym& m : c->methods)
      if (m.is_ctor) ctors.push_back(&m);
    if (ctors.empty()) {
      // implicit default constructor
      if (!args.empty()) {
        sink_.error(e->pos,
                    "constructor " + c->name + " in class " + c->name +
                        " cannot be applied to given types;",
                    {"  required: no arguments", "  found: " + type_csv(args),
                     "  reason: actual and formal argument lists differ in length"});
        return err();
      }
      return world_.class_type(c);
    }
    const MethodSym* m =
        resolve_invocation(ctors, args, e->args, e->pos, c->name, c, true);
    if (!m) return err();
    record_throws(m, e->pos, thrown);
    return world_.class_type(c);
  }

  const Type* check_new_array(Expr* e, std::vector<Thrown>* thrown) {
    const Type* base = resolve_type(e->type_expr, true);
    if (base->is_error()) {
      for (ExprPtr& d : e->args) check_expr(d.get(), thrown);
      return err();
    }
    for (ExprPtr& d : e->args) {
      const Type* t = check_expr(d.get(), thrown);
      if (!t->is_error() && !assignable(t, world_.prim(Prim::Int))) {
        sink_.error(d->pos, "incompatible types: " + t->name() +
                                " cannot be converted to int");
      }
    }
    int dims = static_cast<int>(e->args.size()) + e->extra_dims;
    const Type* result = world_.array_of(base, dims);
    if (e->lhs) {  // new T[] { ... }
      std::vector<Thrown> tmp;
      check_initializer_elements(e->lhs.get(), result, thrown);
      (void)tmp;
    }
    return result;
  }

  void check_initializer_elements(Expr* init, const Type* arr_type,
                                  std::vector<Thrown>* thrown) {
    for (ExprPtr& el : init->args) {
      if (el->kind == Expr::ArrayInit) {
        if (arr_type->elem->is_array()) {
          check_initializer_elements(el.get(), arr_type->elem, thrown);
        } else {
          sink_.error(el->pos, "illegal initializer for " + arr_type->elem->name());
        }
      } else {
        const Type* t = check_expr(el.get(), thrown);
        if (!t->is_error() && !assignable(t, arr_type->elem)) {
          sink_.error(el->pos, "incompatible types: " + t->name() +
                                   " cannot be converted to " +
                                   arr_type->elem->name());
        }
      }
    }
  }

  const Type* check_index(Expr* e, std::vector<Thrown>* thrown) {
    const Type* arr = check_expr(e->lhs.get(), thrown);
    const Type* idx = check_expr(e->rhs.get(), thrown);
    if (!idx->is_error() && !assignable(idx, world_.prim(Prim::Int))) {
      sink_.error(e->rhs->pos, "incompatible types: " + idx->name() +
                                   " cannot be converted to int");
    }
    if (arr->is_error()) return err();
    if (!arr->is_array()) {
      sink_.error(e->op_pos.line ? e->op_pos : e->pos,
                  "array required, but " + arr->name() + " found");
      return err();
    }
    return arr->elem;
  }

  const Type* check_unary(Expr* e, std::vector<Thrown>* thrown) {
    const Type* t = check_expr(e->rhs.get(), thrown);
    if (t->is_error()) return err();
    const std::string& op = e->text;
    if (op == "!") {
      if (t->is_boolean()) return t;
    } else if (op == "~") {
      if (t->is_integral()) return unary_promote(t);
    } else {  // + -
      if (t->is_numeric()) return unary_promote(t);
    }
    sink_.error(e->op_pos, "bad operand type " + t->name() +
                               " for unary operator '" + op + "'");
    return err();
  }

  const Type* unary_promote(const Type* t) {
    if (t->prim == Prim::Byte || t->prim == Prim::Short || t->prim == Prim::Char)
      return world_.prim(Prim::Int);
    return t;
  }

  const Type* check_incdec(Expr* e, std::vector<Thrown>* thrown) {
    Expr* operand = e->kind == Expr::PreIncDec ? e->rhs.get() : e->lhs.get();
    const Type* t = check_expr(operand, thrown);
    if (t->is_error()) return err();
    if (!t->is_numeric()) {
      sink_.error(e->op_pos, "bad operand type " + t->name() +
                                 " for unary operator '" + e->text + "'");
      return err();
    }
    return t;
  }

  const Type* check_binary(Expr* e, std::vector<Thrown>* thrown) {
    const Type* a = check_expr(e->lhs.get(), thrown);
    const Type* b = check_expr(e->rhs.get(), thrown);
    if (a->is_error() || b->is_error()) return err();
    const std::string& op = e->text;
    const Type* tstr = world_.class_type(world_.string_);

    auto bad = [&]() {
      sink_.error(e->op_pos, "bad operand types for binary operator '" + op + "'",
                  {"  first type:  " + a->name(), "  second type: " + b->name()});
      return err();
    };

    if (op == "+") {
      if ((a == tstr || b == tstr) && !a->is_void() && !b->is_void())
        return tstr;
      if (a->is_numeric() && b->is_numeric()) return promote(a, b);
      return bad();
    }
    if (op == "-" || op == "*" || op == "/" || op == "%") {
      if (a->is_numeric() && b->is_numeric()) return promote(a, b);
      return bad();
    }
    if (op == "<" || op == "<=" || op == ">" || op == ">=") {
      if (a->is_numeric() && b->is_numeric()) return world_.prim(Prim::Boolean);
      return bad();
    }
    if (op == "==" || op == "!=") {
      if (a->is_numeric() && b->is_numeric()) return world_.prim(Prim::Boolean);
      if (a->is_boolean() && b->is_boolean()) return world_.prim(Prim::Boolean);
      if (a->is_reference() && b->is_reference()) {
        if (a->is_null() || b->is_null() || castable(a, b))
          return world_.prim(Prim::Boolean);
      }
      sink_.error(e->op_pos, "incomparable types: " + a->name() + " and " + b->name());
      return err();
    }
    if (op == "&&" || op == "||") {
      if (a->is_boolean() && b->is_boolean()) return world_.prim(Prim::Boolean);
      return bad();
    }
    if (op == "&" || op == "|" || op == "^") {
      if (a->is_boolean() && b->is_boolean()) return world_.prim(Prim::Boolean);
      if (a->is_integral() && b->is_integral()) return promote(a, b);
      return bad();
    }
    if (op == "<<" || op == ">>" || op == ">>>") {
      if (a->is_integral() && b->is_integral()) return unary_promote(a);
      return bad();
    }
    return bad();
  }

  bool is_lvalue(const Expr* e) const {
    return e->kind == Expr::Name || e->kind == Expr::FieldSel ||
           e->kind == Expr::Index;
  }

  const Type* check_assign(Expr* e, std::vector<Thrown>* thrown) {
    const Type* lhs = check_expr(e->lhs.get(), thrown);
    const Type* rhs = check_expr(e->rhs.get(), thrown);
    if (!is_lvalue(e->lhs.get()) && !lhs->is_error()) {
      sink_.error(e->lhs->pos, "unexpected type",
                  {"  required: variable", "  found:    value"});
      return err();
    }
    if (lhs->is_error() || rhs->is_error()) return err();
    if (e->text == "=") {
      if (!assignable(rhs, lhs)) {
        sink_.error(e->rhs->pos, "incompatible types: " + rhs->name() +
                                     " cannot be converted to " + lhs->name());
        return err();
      }
      return lhs;
    }
    // compound assignment
    std::string op = e->text.substr(0, e->text.size() - 1);
    const Type* tstr = world_.class_type(world_.string_);
    if (op == "+" && lhs == tstr && !rhs->is_void()) return lhs;
    bool ok;
    if (op == "&" || op == "|" || op == "^")
      ok = (lhs->is_boolean() && rhs->is_boolean()) ||
           (lhs->is_integral() && rhs->is_integral());
    else if (op == "<<" || op == ">>" || op == ">>>")
      ok = lhs->is_integral() && rhs->is_integral();
    else
      ok = lhs->is_numeric() && rhs->is_numeric();
    if (!ok) {
      sink_.error(e->op_pos, "bad operand types for binary operator '" + op + "'",
                  {"  first type:  " + lhs->name(),
                   "  second type: " + rhs->name()});
      return err();
    }
    return lhs;
  }

  const Type* check_ternary(Expr* e, std::vector<Thrown>* thrown) {
    check_condition(e->cond.get(), thrown);
    const Type* a = check_expr(e->lhs.get(), thrown);
    const Type* b = check_expr(e->rhs.get(), thrown);
    if (a->is_error() || b->is_error()) return err();
    if (a == b) return a;
    if (a->is_numeric() && b->is_numeric()) return promote(a, b);
    if (a->is_null() && b->is_reference()) return b;
    if (b->is_null() && a->is_reference()) return a;
    if (a->is_reference() && b->is_reference()) {
      if (assignable(a, b)) return b;
      if (assignable(b, a)) return a;
      return world_.class_type(world_.object_);
    }
    sink_.error(e->op_pos, "incompatible types: bad type in conditional expression");
    return err();
  }

  const Type* check_cast(Expr* e, std::vector<Thrown>* thrown) {
    const Type* target = resolve_type(e->type_expr, true);
    const Type* from = check_expr(e->rhs.get(), thrown);
    if (target->is_error() || from->is_error()) return target;
    if (!castable(from, target)) {
      sink_.error(e->rhs->pos, "incompatible types: " + from->name() +
                                   " cannot be converted to " + target->name());
      return err();
    }
    return target;
  }
};

}  // namespace minijavac
