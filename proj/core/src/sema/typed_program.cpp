#include "qmod/sema/typed_program.hpp"

#include <sstream>

namespace qmod::sema {

namespace {

const char* kind_name(TStmt::Kind k) {
  switch (k) {
    case TStmt::Kind::Allocate: return "allocate";
    case TStmt::Kind::Assign: return "assign";
    case TStmt::Kind::InplaceXor: return "xor";
    case TStmt::Kind::InplaceAdd: return "add";
    case TStmt::Kind::Gate: return "gate";
    case TStmt::Kind::Phase: return "phase";
    case TStmt::Kind::Amplitude: return "amplitude";
    case TStmt::Kind::Control: return "control";
    case TStmt::Kind::WithinApply: return "within";
    case TStmt::Kind::Invert: return "invert";
    case TStmt::Kind::Power: return "power";
    case TStmt::Kind::Scope: return "scope";
  }
  return "?";
}

void dump_block(std::ostringstream& os, const TypedProgram& p, const std::vector<TStmt>& body, int indent);

void dump_stmt(std::ostringstream& os, const TypedProgram& p, const TStmt& s, int indent) {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  os << pad << kind_name(s.kind);
  switch (s.kind) {
    case TStmt::Kind::Allocate:
      os << ' ' << p.var(s.target).name << ": " << s.type.to_string();
      break;
    case TStmt::Kind::Assign:
      os << ' ' << p.var(s.target).name << ": " << s.type.to_string() << " = " << types::to_string(*s.expr);
      break;
    case TStmt::Kind::InplaceXor:
    case TStmt::Kind::InplaceAdd:
      os << ' ' << s.lhs->text << " <- " << types::to_string(*s.expr);
      break;
    case TStmt::Kind::Gate:
      os << ' ' << ir::to_string(s.gate);
      if (s.theta != 0.0) os << '(' << s.theta << ')';
      for (const auto& q : s.qubits) os << ' ' << q.text;
      break;
    case TStmt::Kind::Phase:
      os << ' ' << types::to_string(*s.expr) << " * " << s.theta;
      break;
    case TStmt::Kind::Amplitude:
      os << ' ' << types::to_string(*s.expr) << " -> " << s.lhs->text;
      break;
    case TStmt::Kind::Control:
      os << ' ' << (s.expr ? types::to_string(*s.expr) : s.lhs->text);
      break;
    case TStmt::Kind::Power:
      os << ' ' << s.exponent;
      break;
    case TStmt::Kind::Scope:
      os << ' ' << s.function;
      for (VarId o : s.outputs) os << " out:" << p.var(o).name;
      for (const auto& r : s.inputs) os << " in:" << r.text;
      break;
    default:
      break;
  }
  os << '\n';
  dump_block(os, p, s.body, indent + 1);
  if (s.kind == TStmt::Kind::WithinApply) {
    os << pad << "apply\n";
    dump_block(os, p, s.apply, indent + 1);
  }
}

void dump_block(std::ostringstream& os, const TypedProgram& p, const std::vector<TStmt>& body, int indent) {
  for (const auto& s : body) dump_stmt(os, p, s, indent);
}

}  // namespace

std::string dump(const TypedProgram& p) {
  std::ostringstream os;
  for (VarId o : p.outputs) os << "output " << p.var(o).name << ": " << (p.var(o).type ? p.var(o).type->to_string() : "?") << '\n';
  dump_block(os, p, p.body, 0);
  return os.str();
}

types::FormatMap ref_formats(const TStmt& s) {
  types::FormatMap m;
  for (const auto& r : s.refs) m[r.text] = r.view.numeric_view();
  return m;
}

types::ExprPlan plan_statement_expr(const TStmt& s, int machine_precision,
                                    std::optional<int> needed_fraction_digits) {
  types::PlanOptions opts;
  opts.machine_precision = machine_precision;
  opts.needed_fraction_digits = needed_fraction_digits;
  return types::plan_expression(*s.expr, ref_formats(s), {}, opts);
}

}  // namespace qmod::sema
