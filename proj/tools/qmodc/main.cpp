// qmodc: compile, simulate and inspect mini-Qmod programs.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qmod/driver/corpus.hpp"
#include "qmod/driver/pipeline.hpp"
#include "qmod/ir/qasm.hpp"
#include "qmod/ir/report.hpp"
#include "qmod/sim/sampling.hpp"

namespace {

using namespace qmod;

enum Exit { kOk = 0, kDiagnostics = 1, kRuntime = 2, kUsage = 3 };

struct Config {
  std::string input;
  std::string output;
  std::uint64_t shots = 1024;
  std::uint64_t seed = 1;
  int precision = 8;
  std::size_t max_qubits = sim::kMaxPositions;
  std::vector<std::string> args;
  std::vector<std::string> consts;
  std::string linear_coefs;
  bool chebyshev = false;
  bool no_recycle = false;
};

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

int write_out(const Config& cfg, const std::string& text) {
  if (cfg.output.empty() || cfg.output == "-") {
    std::cout << text;
    return kOk;
  }
  std::ofstream out(cfg.output);
  if (!out) {
    std::cerr << "qmodc: cannot write '" << cfg.output << "'\n";
    return kUsage;
  }
  out << text;
  return kOk;
}

driver::CompileOptions options(const Config& cfg) {
  driver::CompileOptions o;
  o.machine_precision = cfg.precision;
  o.recycle = !cfg.no_recycle;
  for (const auto& a : cfg.args) o.arguments.insert(driver::parse_binding(a));
  for (const auto& c : cfg.consts) o.constants.insert(driver::parse_binding(c));
  if (!cfg.linear_coefs.empty()) {
    driver::LinearCoefsBinding b;
    auto colon = cfg.linear_coefs.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("--linear-coefs expects FUNC:SEGMENTS");
    b.function = cfg.linear_coefs.substr(0, colon);
    b.segments = std::stoi(cfg.linear_coefs.substr(colon + 1));
    b.chebyshev = cfg.chebyshev;
    driver::bind_linear_coefs(o, b);
  }
  return o;
}

std::string table_run(const driver::Compilation& c, const sim::RunResult& r, const Config& cfg) {
  auto res = sim::sample(r.state, c.lowered.outputs, cfg.shots, cfg.seed);
  std::ostringstream os;
  for (const auto& v : res.variables) {
    os << "# " << v.name << "\n";
    for (const auto& [value, count] : v.counts)
      os << value << '\t' << count << '\t' << fmt(static_cast<double>(count) / static_cast<double>(res.shots)) << '\n';
  }
  return os.str();
}

std::string table_statevector(const driver::Compilation& c, const sim::RunResult& r) {
  std::ostringstream os;
  os << "# outputs\tre\tim\tprob\n";
  for (const auto& e : r.state.sorted_entries()) {
    if (std::norm(e.amp) < 1e-24) continue;
    os << driver::tuple_key(sim::decode_outputs(r.state, e.key, c.lowered.outputs)) << '\t' << fmt(e.amp.real()) << '\t'
       << fmt(e.amp.imag()) << '\t' << fmt(std::norm(e.amp)) << '\n';
  }
  return os.str();
}

std::string table_phases(const driver::Compilation& c, const sim::RunResult& r) {
  auto entries = r.state.sorted_entries();
  std::ostringstream os;
  os << "# outputs\tphase\n";
  if (entries.empty()) return os.str();
  for (const auto& [key, phase] : sim::relative_phases(r.state, entries.front().key))
    os << driver::tuple_key(sim::decode_outputs(r.state, key, c.lowered.outputs)) << '\t' << fmt(phase) << '\n';
  return os.str();
}

int execute(const std::string& command, const Config& cfg) {
  driver::Compilation c;
  try {
    c = driver::compile(driver::read_file(cfg.input), options(cfg));
  } catch (const std::exception& e) {
    std::cerr << "qmodc: " << e.what() << '\n';
    return kUsage;
  }
  if (!c.diagnostics.empty()) std::cerr << c.diagnostics.format(cfg.input);
  if (!c.ok()) return kDiagnostics;

  if (command == "compile") {
    try {
      return write_out(cfg, ir::emit_qasm3(c.lowered));
    } catch (const Error& e) {
      std::cerr << e.what() << '\n';
      return kDiagnostics;
    }
  }
  if (command == "report") {
    auto r = ir::resource_report(c.lowered);
    return write_out(cfg, r.to_string());
  }
  sim::RunResult r;
  try {
    sim::RunOptions ro;
    ro.max_qubits = cfg.max_qubits;
    r = driver::simulate(c, ro);
  } catch (const Error& e) {
    std::cerr << cfg.input << ':' << e.span().line << ':' << e.span().column << ": error: " << e.what() << '\n';
    return kRuntime;
  }
  if (command == "run") return write_out(cfg, table_run(c, r, cfg));
  if (command == "statevector") return write_out(cfg, table_statevector(c, r));
  return write_out(cfg, table_phases(c, r));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mini-Qmod compiler and simulator"};
  app.require_subcommand(1);
  Config cfg;
  const char* commands[][2] = {{"compile", "Emit OpenQASM 3"},
                               {"run", "Sample outputs (value, count, probability)"},
                               {"statevector", "Print the final amplitudes"},
                               {"phases", "Print phases relative to the first basis state"},
                               {"report", "Print gate counts, depth and width"}};
  for (auto& [name, desc] : commands) {
    auto* sub = app.add_subcommand(name, desc);
    sub->add_option("input", cfg.input, "Source file")->required()->check(CLI::ExistingFile);
    sub->add_option("-o,--out", cfg.output, "Output file (default stdout)");
    sub->add_option("--precision", cfg.precision, "Machine precision in fraction digits")
        ->check(CLI::PositiveNumber);
    sub->add_option("--arg", cfg.args, "Classical argument of main, name=value or name=[v1,v2]");
    sub->add_option("--const", cfg.consts, "Compile-time constant, NAME=value");
    sub->add_option("--linear-coefs", cfg.linear_coefs,
                    "Bind a_coefs/b_coefs from FUNC:SEGMENTS (tanh, sin, cos, exp, sqrt, identity on [0,1))");
    sub->add_flag("--chebyshev", cfg.chebyshev, "Fit segments through Chebyshev nodes");
    sub->add_flag("--no-recycle", cfg.no_recycle, "Never reuse released qubits");
    if (std::string(name) == "run") {
      sub->add_option("--shots", cfg.shots, "Number of samples")->check(CLI::PositiveNumber);
      sub->add_option("--seed", cfg.seed, "Sampler seed");
    }
    if (std::string(name) != "compile" && std::string(name) != "report")
      sub->add_option("--max-qubits", cfg.max_qubits, "Simulator width limit")
          ->check(CLI::Range(std::size_t{1}, sim::kMaxPositions));
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  return execute(app.get_subcommands().front()->get_name(), cfg);
}
