#include "qmod/driver/corpus.hpp"

#include <filesystem>

#include <nlohmann/json.hpp>

namespace qmod::driver {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::map<std::string, std::string> string_map(const json& j, const char* key) {
  std::map<std::string, std::string> m;
  if (!j.contains(key)) return m;
  for (auto& [k, v] : j.at(key).items()) m[k] = v.is_string() ? v.get<std::string>() : v.dump();
  return m;
}

Expectation expectation(const json& j) {
  Expectation e;
  e.kind = j.at("kind").get<std::string>();
  if (j.contains("values"))
    for (auto& [k, v] : j.at("values").items()) e.values[k] = v.get<double>();
  e.reference = j.value("reference", "");
  e.variable = j.value("variable", "");
  e.value = j.value("value", "");
  e.probability = j.value("probability", 0.0);
  e.oracle = j.value("oracle", "");
  return e;
}

}  // namespace

std::vector<CorpusEntry> load_manifest(const std::string& path) {
  json doc = json::parse(read_file(path));
  fs::path dir = fs::absolute(path).parent_path();
  std::vector<CorpusEntry> out;
  for (const auto& j : doc.at("programs")) {
    CorpusEntry e;
    e.name = j.at("name").get<std::string>();
    e.file = (dir / j.at("file").get<std::string>()).string();
    if (j.contains("golden")) e.golden = (dir / j.at("golden").get<std::string>()).string();
    e.machine_precision = j.value("machine_precision", 8);
    e.constants = string_map(j, "constants");
    e.arguments = string_map(j, "arguments");
    if (j.contains("linear_coefs")) {
      const auto& l = j.at("linear_coefs");
      LinearCoefsBinding b;
      b.function = l.at("function").get<std::string>();
      b.segments = l.at("segments").get<int>();
      b.chebyshev = l.value("chebyshev", false);
      b.a_name = l.value("a", b.a_name);
      b.b_name = l.value("b", b.b_name);
      e.linear_coefs = b;
    }
    e.expect = expectation(j.at("expect"));
    out.push_back(std::move(e));
  }
  return out;
}

void bind_linear_coefs(CompileOptions& o, const LinearCoefsBinding& b) {
  auto [a, c] = segment_coefs(named_function(b.function), b.segments, 0.0, 1.0, b.chebyshev);
  std::vector<frontend::ClassicalValue> av, cv;
  for (double x : a) av.emplace_back(from_double(x));
  for (double x : c) cv.emplace_back(from_double(x));
  o.arguments[b.a_name] = av;
  o.arguments[b.b_name] = cv;
}

CompileOptions entry_options(const CorpusEntry& e) {
  CompileOptions o;
  o.machine_precision = e.machine_precision;
  for (const auto& [k, v] : e.constants) o.constants[k] = parse_value(v);
  for (const auto& [k, v] : e.arguments) o.arguments[k] = parse_value(v);
  if (e.linear_coefs) bind_linear_coefs(o, *e.linear_coefs);
  return o;
}

std::string tuple_key(const std::vector<std::string>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "; " : "") + values[i];
  return s;
}

}  // namespace qmod::driver
