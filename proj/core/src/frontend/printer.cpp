#include "qmod/frontend/printer.hpp"

#include <sstream>

namespace qmod::frontend {

namespace {

int precedence(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Number:
    case ExprKind::PathRef:
    case ExprKind::Call:
      return 12;
    case ExprKind::Unary:
      return 11;
    case ExprKind::Binary:
      switch (e.binary_op) {
        case BinaryOp::LogOr: return 1;
        case BinaryOp::LogAnd: return 2;
        case BinaryOp::BitOr: return 3;
        case BinaryOp::BitXor: return 4;
        case BinaryOp::BitAnd: return 5;
        case BinaryOp::Lt:
        case BinaryOp::Le:
        case BinaryOp::Gt:
        case BinaryOp::Ge:
        case BinaryOp::Eq:
        case BinaryOp::Ne: return 6;
        case BinaryOp::Shl:
        case BinaryOp::Shr: return 7;
        case BinaryOp::Add:
        case BinaryOp::Sub: return 8;
        case BinaryOp::Mul:
        case BinaryOp::Div: return 9;
        case BinaryOp::Pow: return 10;
      }
  }
  return 0;
}

void print_expr(std::ostream& os, const Expr& e);

void print_child(std::ostream& os, const Expr& child, bool parens) {
  if (parens) os << '(';
  print_expr(os, child);
  if (parens) os << ')';
}

void print_path(std::ostream& os, const Path& p) {
  os << p.root;
  for (const auto& el : p.elems) {
    if (el.kind == PathElem::Kind::Field) {
      os << '.' << el.field;
    } else {
      os << '[';
      print_expr(os, *el.index);
      os << ']';
    }
  }
}

void print_expr(std::ostream& os, const Expr& e) {
  switch (e.kind) {
    case ExprKind::Number:
      os << e.number_text;
      return;
    case ExprKind::PathRef:
      print_path(os, e.path);
      return;
    case ExprKind::Call:
      os << e.callee << '(';
      for (std::size_t i = 0; i < e.operands.size(); ++i) {
        if (i) os << ", ";
        print_expr(os, *e.operands[i]);
      }
      os << ')';
      return;
    case ExprKind::Unary:
      os << spelling(e.unary_op);
      print_child(os, *e.operands[0], precedence(*e.operands[0]) < 11);
      return;
    case ExprKind::Binary: {
      int p = precedence(e);
      const Expr& l = *e.operands[0];
      const Expr& r = *e.operands[1];
      if (e.binary_op == BinaryOp::Pow) {
        print_child(os, l, precedence(l) <= p);
        os << " ** ";
        print_child(os, r, precedence(r) < p);
      } else {
        print_child(os, l, precedence(l) < p);
        os << ' ' << spelling(e.binary_op) << ' ';
        print_child(os, r, precedence(r) <= p);
      }
      return;
    }
  }
}

void print_qtype(std::ostream& os, const QTypeExpr& t) {
  switch (t.kind) {
    case QTypeExpr::Kind::Bit:
      os << "qbit";
      return;
    case QTypeExpr::Kind::Num:
      os << "qnum";
      if (t.size) {
        os << '[';
        print_expr(os, *t.size);
        if (t.is_signed) {
          os << ", " << (*t.is_signed ? "signed" : "unsigned") << ", ";
          print_expr(os, *t.fraction_digits);
        }
        os << ']';
      }
      return;
    case QTypeExpr::Kind::Array:
      os << "qarray[";
      print_qtype(os, *t.element);
      if (t.length) {
        os << ", ";
        print_expr(os, *t.length);
      }
      os << ']';
      return;
    case QTypeExpr::Kind::Named:
      os << t.name;
      return;
  }
}

void print_ctype(std::ostream& os, const CTypeExpr& t) {
  switch (t.kind) {
    case CTypeExpr::Kind::Int:
      os << "int";
      return;
    case CTypeExpr::Kind::Real:
      os << "real";
      return;
    case CTypeExpr::Kind::Array:
      os << "array[";
      print_ctype(os, *t.element);
      if (t.length) {
        os << ", ";
        print_expr(os, *t.length);
      }
      os << ']';
      return;
  }
}

void indent(std::ostream& os, int depth) {
  for (int i = 0; i < depth; ++i) os << "  ";
}

void print_block(std::ostream& os, const Block& b, int depth);

void print_stmt(std::ostream& os, const Stmt& s, int depth) {
  indent(os, depth);
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, DeclStmt>) {
          os << n.name << ": ";
          print_qtype(os, n.type);
          os << ";\n";
        } else if constexpr (std::is_same_v<T, AllocateStmt>) {
          os << "allocate(";
          if (n.size) {
            print_expr(os, *n.size);
            os << ", ";
          }
          print_path(os, n.target);
          os << ");\n";
        } else if constexpr (std::is_same_v<T, AssignStmt>) {
          print_path(os, n.target);
          os << ' ' << spelling(n.op) << ' ';
          print_expr(os, *n.value);
          os << ";\n";
        } else if constexpr (std::is_same_v<T, PhaseStmt>) {
          os << "phase(";
          print_expr(os, *n.expr);
          os << ", ";
          print_expr(os, *n.angle);
          os << ");\n";
        } else if constexpr (std::is_same_v<T, AmplitudeStmt>) {
          os << "assign_amplitude(";
          print_expr(os, *n.expr);
          os << ", ";
          print_path(os, n.indicator);
          os << ");\n";
        } else if constexpr (std::is_same_v<T, ControlStmt>) {
          os << "control(";
          print_expr(os, *n.condition);
          os << ") ";
          print_block(os, n.body, depth);
        } else if constexpr (std::is_same_v<T, RepeatStmt>) {
          os << "repeat(" << n.iterator << ", ";
          print_expr(os, *n.count);
          os << ") ";
          print_block(os, n.body, depth);
        } else if constexpr (std::is_same_v<T, WithinApplyStmt>) {
          os << "within ";
          std::ostringstream inner;
          print_block(inner, n.within, depth);
          std::string w = inner.str();
          w.pop_back();  // keep `} apply {` on one line
          os << w << " apply ";
          print_block(os, n.apply, depth);
        } else if constexpr (std::is_same_v<T, InvertStmt>) {
          os << "invert ";
          print_block(os, n.body, depth);
        } else if constexpr (std::is_same_v<T, PowerStmt>) {
          os << "power(";
          print_expr(os, *n.exponent);
          os << ") ";
          print_block(os, n.body, depth);
        } else if constexpr (std::is_same_v<T, CallStmt>) {
          os << n.callee << '(';
          for (std::size_t i = 0; i < n.args.size(); ++i) {
            if (i) os << ", ";
            if (const Expr* e = n.args[i].expr()) {
              print_expr(os, *e);
            } else {
              const Lambda& lam = *n.args[i].lambda();
              os << '|';
              for (std::size_t j = 0; j < lam.params.size(); ++j) {
                if (j) os << ", ";
                os << lam.params[j];
              }
              os << "| ";
              std::ostringstream inner;
              print_block(inner, lam.body, depth);
              std::string b = inner.str();
              b.pop_back();
              os << b;
            }
          }
          os << ");\n";
        }
      },
      s.node);
}

void print_block(std::ostream& os, const Block& b, int depth) {
  os << "{\n";
  for (const auto& s : b) print_stmt(os, s, depth + 1);
  indent(os, depth);
  os << "}\n";
}

// ---- dump -----------------------------------------------------------------

void dump_expr(std::ostream& os, const Expr& e);

void dump_path(std::ostream& os, const Path& p) {
  os << p.root;
  for (const auto& el : p.elems) {
    if (el.kind == PathElem::Kind::Field) {
      os << '.' << el.field;
    } else {
      os << '[';
      dump_expr(os, *el.index);
      os << ']';
    }
  }
}

void dump_expr(std::ostream& os, const Expr& e) {
  switch (e.kind) {
    case ExprKind::Number:
      os << qmod::to_string(e.number);
      return;
    case ExprKind::PathRef:
      dump_path(os, e.path);
      return;
    case ExprKind::Call:
    case ExprKind::Unary:
    case ExprKind::Binary:
      os << (e.kind == ExprKind::Call    ? e.callee
             : e.kind == ExprKind::Unary ? std::string(to_string(e.unary_op))
                                         : std::string(to_string(e.binary_op)))
         << '(';
      for (std::size_t i = 0; i < e.operands.size(); ++i) {
        if (i) os << ", ";
        dump_expr(os, *e.operands[i]);
      }
      os << ')';
      return;
  }
}

void dump_qtype(std::ostream& os, const QTypeExpr& t) {
  // The surface form is already canonical and span-free.
  std::ostringstream tmp;
  print_qtype(tmp, t);
  os << tmp.str();
}

void dump_block(std::ostream& os, const Block& b);

void dump_stmt(std::ostream& os, const Stmt& s) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, DeclStmt>) {
          os << "decl(" << n.name << ", ";
          dump_qtype(os, n.type);
          os << ')';
        } else if constexpr (std::is_same_v<T, AllocateStmt>) {
          os << "allocate(";
          if (n.size) {
            dump_expr(os, *n.size);
            os << ", ";
          }
          dump_path(os, n.target);
          os << ')';
        } else if constexpr (std::is_same_v<T, AssignStmt>) {
          os << (n.op == AssignOp::OutOfPlace   ? "assign("
                 : n.op == AssignOp::InplaceXor ? "inplace_xor("
                                                : "inplace_add(");
          dump_path(os, n.target);
          os << ", ";
          dump_expr(os, *n.value);
          os << ')';
        } else if constexpr (std::is_same_v<T, PhaseStmt>) {
          os << "phase(";
          dump_expr(os, *n.expr);
          os << ", ";
          dump_expr(os, *n.angle);
          os << ')';
        } else if constexpr (std::is_same_v<T, AmplitudeStmt>) {
          os << "assign_amplitude(";
          dump_expr(os, *n.expr);
          os << ", ";
          dump_path(os, n.indicator);
          os << ')';
        } else if constexpr (std::is_same_v<T, ControlStmt>) {
          os << "control(";
          dump_expr(os, *n.condition);
          os << ", ";
          dump_block(os, n.body);
          os << ')';
        } else if constexpr (std::is_same_v<T, RepeatStmt>) {
          os << "repeat(" << n.iterator << ", ";
          dump_expr(os, *n.count);
          os << ", ";
          dump_block(os, n.body);
          os << ')';
        } else if constexpr (std::is_same_v<T, WithinApplyStmt>) {
          os << "within_apply(";
          dump_block(os, n.within);
          os << ", ";
          dump_block(os, n.apply);
          os << ')';
        } else if constexpr (std::is_same_v<T, InvertStmt>) {
          os << "invert(";
          dump_block(os, n.body);
          os << ')';
        } else if constexpr (std::is_same_v<T, PowerStmt>) {
          os << "power(";
          dump_expr(os, *n.exponent);
          os << ", ";
          dump_block(os, n.body);
          os << ')';
        } else if constexpr (std::is_same_v<T, CallStmt>) {
          os << "call(" << n.callee;
          for (const auto& a : n.args) {
            os << ", ";
            if (const Expr* e = a.expr()) {
              dump_expr(os, *e);
            } else {
              const Lambda& lam = *a.lambda();
              os << "lambda(";
              for (const auto& p : lam.params) os << p << ", ";
              dump_block(os, lam.body);
              os << ')';
            }
          }
          os << ')';
        }
      },
      s.node);
}

void dump_block(std::ostream& os, const Block& b) {
  os << '[';
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i) os << "; ";
    dump_stmt(os, b[i]);
  }
  os << ']';
}

}  // namespace

std::string pretty_print(const Expr& expr) {
  std::ostringstream os;
  print_expr(os, expr);
  return os.str();
}

std::string pretty_print(const Path& path) {
  std::ostringstream os;
  print_path(os, path);
  return os.str();
}

std::string pretty_print(const Program& program) {
  std::ostringstream os;
  bool first = true;
  for (const auto& r : program.records) {
    if (!first) os << '\n';
    first = false;
    os << "qstruct " << r.name << " {\n";
    for (const auto& f : r.fields) {
      os << "  " << f.name << ": ";
      print_qtype(os, f.type);
      os << ";\n";
    }
    os << "}\n";
  }
  for (const auto& f : program.funcs) {
    if (!first) os << '\n';
    first = false;
    os << "qfunc " << f.name << '(';
    for (std::size_t i = 0; i < f.params.size(); ++i) {
      const Param& p = f.params[i];
      if (i) os << ", ";
      os << p.name << ": ";
      if (p.is_output) os << "output ";
      std::visit(
          [&](const auto& t) {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, QTypeExpr>) {
              print_qtype(os, t);
            } else if constexpr (std::is_same_v<T, CTypeExpr>) {
              print_ctype(os, t);
            } else {
              os << "qfunc(";
              for (std::size_t j = 0; j < t.params.size(); ++j) {
                if (j) os << ", ";
                print_qtype(os, t.params[j]);
              }
              os << ')';
            }
          },
          p.type);
    }
    os << ") ";
    print_block(os, f.body, 0);
  }
  return os.str();
}

std::string dump(const Expr& expr) {
  std::ostringstream os;
  dump_expr(os, expr);
  return os.str();
}

std::string dump(const Program& program) {
  std::ostringstream os;
  for (const auto& r : program.records) {
    os << "record(" << r.name;
    for (const auto& f : r.fields) {
      os << ", " << f.name << ": ";
      dump_qtype(os, f.type);
    }
    os << ")\n";
  }
  for (const auto& f : program.funcs) {
    os << "func(" << f.name;
    for (const auto& p : f.params) {
      os << ", " << p.name << (p.is_output ? ": output " : ": ");
      std::visit(
          [&](const auto& t) {
            using T = std::decay_t<decltype(t)>;
            std::ostringstream tmp;
            if constexpr (std::is_same_v<T, QTypeExpr>) {
              print_qtype(tmp, t);
            } else if constexpr (std::is_same_v<T, CTypeExpr>) {
              print_ctype(tmp, t);
            } else {
              tmp << "qfunc(";
              for (const auto& q : t.params) {
                print_qtype(tmp, q);
                tmp << ';';
              }
              tmp << ')';
            }
            os << tmp.str();
          },
          p.type);
    }
    os << ", ";
    dump_block(os, f.body);
    os << ")\n";
  }
  return os.str();
}

}  // namespace qmod::frontend
