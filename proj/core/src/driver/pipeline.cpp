#include "qmod/driver/pipeline.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qmod/frontend/parser.hpp"
#include "qmod/ir/transform.hpp"
#include "qmod/sema/analyze.hpp"
#include "qmod/synth/synth.hpp"

namespace qmod::driver {

Compilation compile(std::string_view source, const CompileOptions& options) {
  Compilation c;
  try {
    c.ast = frontend::parse_source(source);
  } catch (const Error& e) {
    c.diagnostics.add(e.to_diagnostic());
    return c;
  }
  sema::AnalysisOptions ao;
  ao.machine_precision = options.machine_precision;
  ao.constants = options.constants;
  ao.arguments = options.arguments;
  sema::AnalysisResult r = sema::analyze(c.ast, ao);
  c.program = std::move(r.program);
  c.diagnostics = std::move(r.diagnostics);
  if (!c.ok()) return c;
  try {
    synth::SynthOptions so;
    so.recycle = options.recycle;
    so.markers = options.markers;
    c.circuit = synth::synthesize(c.program, so).circuit;
    ir::validate_or_throw(c.circuit);
    c.lowered = ir::decompose_multicontrol(c.circuit, options.recycle);
  } catch (const Error& e) {
    c.diagnostics.add(e.to_diagnostic());
  }
  return c;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

frontend::ClassicalValue parse_value(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (!text.empty() && text.front() == '[') {
    if (text.back() != ']') throw std::invalid_argument("unterminated array value '" + std::string(text) + "'");
    std::string_view body = trim(text.substr(1, text.size() - 2));
    std::vector<frontend::ClassicalValue> elems;
    if (body.empty()) return elems;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= body.size(); ++i) {
      if (i == body.size() || (body[i] == ',' && depth == 0)) {
        elems.push_back(parse_value(body.substr(start, i - start)));
        start = i + 1;
      } else if (body[i] == '[' || body[i] == '(') {
        ++depth;
      } else if (body[i] == ']' || body[i] == ')') {
        --depth;
      }
    }
    return elems;
  }
  frontend::MapEnv env;
  return frontend::eval_classical(*frontend::parse_expression(text), env);
}

std::pair<std::string, frontend::ClassicalValue> parse_binding(std::string_view text) {
  auto eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0)
    throw std::invalid_argument("expected name=value, got '" + std::string(text) + "'");
  return {std::string(text.substr(0, eq)), parse_value(text.substr(eq + 1))};
}

sim::RunResult simulate(const Compilation& c, const sim::RunOptions& options) { return sim::run(c.lowered, options); }

std::pair<double, double> linear_coefs(const std::function<double(double)>& f, double lo, double hi,
                                       bool chebyshev) {
  if (!(lo < hi)) throw DegenerateSegment("segment [" + std::to_string(lo) + ", " + std::to_string(hi) + "] is empty");
  double x0 = lo, x1 = hi;
  if (chebyshev) {
    double mid = (lo + hi) / 2, half = (hi - lo) / 2;
    x0 = mid - half * std::cos(M_PI / 4);
    x1 = mid + half * std::cos(M_PI / 4);
  }
  double a = (f(x1) - f(x0)) / (x1 - x0);
  return {a, f(x0) - a * x0};
}

std::pair<std::vector<double>, std::vector<double>> segment_coefs(const std::function<double(double)>& f,
                                                                  int segments, double lo, double hi,
                                                                  bool chebyshev) {
  if (segments < 1) throw DegenerateSegment("need at least one segment");
  std::vector<double> a, b;
  for (int i = 0; i < segments; ++i) {
    auto [ai, bi] = linear_coefs(f, lo + (hi - lo) * i / segments, lo + (hi - lo) * (i + 1) / segments, chebyshev);
    a.push_back(ai);
    b.push_back(bi);
  }
  return {a, b};
}

std::function<double(double)> named_function(const std::string& name) {
  static const std::map<std::string, double (*)(double)> fns = {
      {"tanh", [](double x) { return std::tanh(x); }}, {"sin", [](double x) { return std::sin(x); }},
      {"cos", [](double x) { return std::cos(x); }},   {"exp", [](double x) { return std::exp(x); }},
      {"sqrt", [](double x) { return std::sqrt(x); }}, {"identity", [](double x) { return x; }}};
  auto it = fns.find(name);
  if (it == fns.end()) throw std::invalid_argument("unknown function '" + name + "'");
  return it->second;
}

}  // namespace qmod::driver
