#include "aqg/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "aqg/constructors.hpp"

namespace aqg {

namespace {

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorCode::Schema, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema(std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const json& j, const char* what) {
  if (!j.is_number()) schema(std::string(what) + " must be a number");
  return j.get<double>();
}

int integer(const json& j, const char* what) {
  if (!j.is_number_integer()) schema(std::string(what) + " must be an integer");
  return j.get<int>();
}

FiniteGroupTable group_from_json(const json& j, std::string* name) {
  if (j.is_string()) {
    *name = j.get<std::string>();
    return named_group(*name);
  }
  if (!j.is_object()) schema("group must be a name such as \"S3\" or an object with a cayley table");
  *name = "custom";
  const json& c = field(j, "cayley");
  if (!c.is_array()) schema("cayley must be an array of rows");
  if (c.size() > size_t(kMaxGroupOrder)) schema("cayley table is too large");
  std::vector<std::vector<int>> table;
  for (const auto& row : c) {
    if (!row.is_array()) schema("cayley must be an array of rows");
    std::vector<int> r;
    for (const auto& x : row) r.push_back(integer(x, "cayley entry"));
    table.push_back(std::move(r));
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    for (const auto& l : j.at("labels")) {
      if (!l.is_string()) schema("labels must be strings");
      labels.push_back(l.get<std::string>());
    }
  }
  try {
    return group_from_cayley(std::move(table), std::move(labels));
  } catch (const Error& e) {
    schema(std::string("invalid cayley table: ") + e.what());
  }
}

json nullable(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    schema("complex numbers must be [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

json vector_to_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

Vec vector_from_json(const json& j, Eigen::Index size) {
  if (!j.is_array() || Eigen::Index(j.size()) != size)
    schema("expected a vector of " + std::to_string(size) + " [re, im] pairs");
  Vec v(size);
  for (Eigen::Index i = 0; i < size; ++i) v(i) = complex_from_json(j[i]);
  return v;
}

json matrix_to_json(const Mat& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(vector_to_json(m.row(r).transpose()));
  return out;
}

Mat matrix_from_json(const json& j, Eigen::Index rows, Eigen::Index cols) {
  if (!j.is_array() || Eigen::Index(j.size()) != rows)
    schema("expected a " + std::to_string(rows) + " x " + std::to_string(cols) + " matrix");
  Mat m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) m.row(r) = vector_from_json(j[r], cols).transpose();
  return m;
}

json presentation_to_json(const QuantumGroupPresentation& p) {
  const auto& a = p.algebra;
  json j;
  j["kind"] = "structure_constants";
  j["schema"] = kPresentationSchema;
  j["dim"] = a.dim;
  if (!a.labels.empty()) j["labels"] = a.labels;
  j["mult"] = matrix_to_json(a.mult);
  j["involution"] = matrix_to_json(a.involution);
  j["unit"] = vector_to_json(a.unit);
  j["comul"] = matrix_to_json(p.comul);
  j["counit"] = vector_to_json(p.counit.transpose());
  if (p.antipode) j["antipode"] = matrix_to_json(*p.antipode);
  return j;
}

QuantumGroupPresentation presentation_from_json(const json& j) {
  const int n = integer(field(j, "dim"), "dim");
  if (n <= 0) schema("dim must be positive");
  if (n > kMaxInputDim) schema("dim above " + std::to_string(kMaxInputDim) + " is not supported");
  QuantumGroupPresentation p;
  auto& a = p.algebra;
  a.dim = n;
  if (j.contains("labels")) {
    const json& l = j.at("labels");
    if (!l.is_array() || int(l.size()) != n) schema("labels must have dim entries");
    for (const auto& s : l) {
      if (!s.is_string()) schema("labels must be strings");
      a.labels.push_back(s.get<std::string>());
    }
  }
  a.mult = matrix_from_json(field(j, "mult"), n, Eigen::Index(n) * n);
  a.involution = matrix_from_json(field(j, "involution"), n, n);
  a.unit = vector_from_json(field(j, "unit"), n);
  p.comul = matrix_from_json(field(j, "comul"), Eigen::Index(n) * n, n);
  p.counit = vector_from_json(field(j, "counit"), n).transpose();
  if (j.contains("antipode")) p.antipode = matrix_from_json(j.at("antipode"), n, n);
  return p;
}

InputSpec parse_input(const json& j) {
  if (!j.is_object()) schema("input must be a JSON object");
  InputSpec in;
  const json& kind = field(j, "kind");
  if (!kind.is_string()) schema("kind must be a string");
  in.kind = kind.get<std::string>();
  if (in.kind == "structure_constants") {
    in.pres = presentation_from_json(j);
  } else if (in.kind == "group_algebra" || in.kind == "function_algebra" || in.kind == "drinfeld_double") {
    FiniteGroupTable g = group_from_json(field(j, "group"), &in.group);
    const long dim = in.kind == "drinfeld_double" ? long(g.order) * g.order : g.order;
    if (dim > kMaxInputDim) schema("dimension " + std::to_string(dim) + " exceeds the input budget");
    if (in.kind == "group_algebra") in.pres = group_algebra(g);
    if (in.kind == "function_algebra") in.pres = function_algebra(g);
    if (in.kind == "drinfeld_double") in.pres = drinfeld_double(g);
  } else if (in.kind == "dual_suq2") {
    in.q = number(field(j, "q"), "q");
    if (j.contains("spin_cap2")) in.spin_cap2 = integer(j.at("spin_cap2"), "spin_cap2");
    if (!(in.q > 0.0 && in.q < 1.0)) schema("q must lie in (0, 1)");
    if (in.spin_cap2 < 0) schema("spin_cap2 must be non-negative");
  } else {
    schema("unknown kind '" + in.kind + "'");
  }
  if (j.contains("tolerance")) {
    in.tolerance = number(j.at("tolerance"), "tolerance");
    if (!(*in.tolerance > 0.0)) schema("tolerance must be positive");
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) schema("seed must be a non-negative integer");
    in.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("dense_threshold")) in.dense_threshold = integer(j.at("dense_threshold"), "dense_threshold");

  const Eigen::Index n = in.pres ? in.pres->dim() : 0;
  if ((j.contains("automorphisms") || j.contains("grouplikes")) && !in.pres)
    schema("automorphisms and grouplikes are only supported for finite-dimensional kinds");
  if (j.contains("automorphisms")) {
    for (const auto& a : j.at("automorphisms")) {
      AutomorphismInput ai;
      ai.label = a.contains("label") ? a.at("label").get<std::string>() : "automorphism";
      ai.alpha = matrix_from_json(field(a, "alpha"), n, n);
      ai.beta = a.contains("beta") ? matrix_from_json(a.at("beta"), n, n) : ai.alpha;
      in.automorphisms.push_back(std::move(ai));
    }
  }
  if (j.contains("grouplikes")) {
    for (const auto& u : j.at("grouplikes")) {
      std::string label = u.contains("label") ? u.at("label").get<std::string>() : "grouplike";
      in.grouplikes.emplace_back(label, vector_from_json(field(u, "element"), n));
    }
  }
  return in;
}

InputSpec load_input(const std::string& path) {
  std::ifstream f(path);
  if (!f) schema("cannot read " + path);
  json j;
  try {
    f >> j;
  } catch (const json::exception& e) {
    schema(std::string("malformed JSON: ") + e.what());
  }
  try {
    return parse_input(j);
  } catch (const json::exception& e) {
    schema(std::string("invalid input: ") + e.what());
  }
}

json check_to_json(const Check& c) {
  json j;
  j["group"] = c.group;
  j["name"] = c.name;
  j["identity"] = c.identity;
  j["kind"] = c.kind;
  j["value"] = nullable(c.value);
  j["threshold"] = c.threshold;
  j["pass"] = c.pass;
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

json checks_to_json(const CheckList& checks) {
  json out = json::array();
  for (const auto& c : checks) out.push_back(check_to_json(c));
  return out;
}

json report_to_json(const InputSpec& in, const RunParameters& run, const MnwReport& r) {
  json j;
  j["schema"] = kReportSchema;
  j["command"] = "verify";
  json input;
  input["kind"] = in.kind;
  if (!in.group.empty()) input["group"] = in.group;
  if (in.pres) input["dim"] = in.pres->dim();
  if (in.is_block()) {
    input["q"] = in.q;
    input["spin_cap2"] = run.spin_cap2;
  }
  j["input"] = input;
  j["engine"] = r.engine;
  json params;
  params["tolerance"] = r.tol;
  params["seed"] = run.seed;
  if (!in.is_block()) params["dense_threshold"] = run.dense_threshold;
  j["parameters"] = params;

  auto count_failed = [](const CheckList& c) {
    long k = 0;
    for (const auto& x : c) k += !x.pass;
    return k;
  };
  json summary;
  summary["pass"] = r.pass();
  summary["axiom_entries"] = r.axioms.size();
  summary["axioms_failed"] = count_failed(r.axioms);
  summary["suite_entries"] = r.suites.size();
  summary["suites_failed"] = count_failed(r.suites);
  j["summary"] = summary;

  json scalars;
  scalars["mu"] = complex_to_json(r.mu);
  scalars["nu"] = nullable(r.nu);
  scalars["gamma"] = nullable(r.gamma);
  json rs = json::array(), ls = json::array();
  for (const auto& a : r.automorphisms) rs.push_back({{"label", a.label}, {"r", nullable(a.r)}});
  for (const auto& u : r.grouplikes) ls.push_back({{"label", u.label}, {"lambda", nullable(u.lambda)}});
  scalars["r"] = rs;
  scalars["lambda"] = ls;
  j["scalars"] = scalars;

  j["axioms"] = checks_to_json(r.axioms);
  json autos = json::array();
  for (const auto& a : r.automorphisms)
    autos.push_back({{"label", a.label}, {"r", nullable(a.r)}, {"checks", checks_to_json(a.checks)}});
  j["automorphisms"] = autos;
  json gls = json::array();
  for (const auto& u : r.grouplikes)
    gls.push_back({{"label", u.label},
                   {"lambda", nullable(u.lambda)},
                   {"exact", u.exact},
                   {"checks", checks_to_json(u.checks)}});
  j["grouplikes"] = gls;
  j["suites"] = checks_to_json(r.suites);
  return j;
}

std::string text_summary(const InputSpec& in, const MnwReport& r) {
  std::ostringstream os;
  auto count = [](const CheckList& c) {
    long ok = 0;
    for (const auto& x : c) ok += x.pass;
    return ok;
  };
  os << "input: " << in.kind;
  if (!in.group.empty()) os << " (" << in.group << ")";
  if (in.pres) os << ", dim " << in.pres->dim();
  if (in.is_block()) os << ", q " << in.q;
  os << ", engine " << r.engine << "\n";
  os << "axioms: " << count(r.axioms) << "/" << r.axioms.size() << " pass\n";
  os << "suites: " << count(r.suites) << "/" << r.suites.size() << " pass\n";
  os << "scalars: mu = " << r.mu.real() << (r.mu.imag() < 0 ? " - " : " + ") << std::abs(r.mu.imag())
     << "i, nu = " << r.nu << ", gamma = " << r.gamma << "\n";
  for (const auto& a : r.automorphisms) os << "automorphism " << a.label << ": r = " << a.r << "\n";
  for (const auto& u : r.grouplikes) os << "grouplike " << u.label << ": lambda = " << u.lambda << "\n";
  auto failures = [&](const std::string& where, const CheckList& c) {
    for (const auto& x : c)
      if (!x.pass)
        os << "FAIL " << where << " " << x.group << "/" << x.name << ": value " << x.value << ", threshold "
           << x.threshold << (x.note.empty() ? "" : " (" + x.note + ")") << "\n";
  };
  failures("axiom", r.axioms);
  failures("suite", r.suites);
  for (const auto& a : r.automorphisms) failures("automorphism " + a.label, a.checks);
  for (const auto& u : r.grouplikes) failures("grouplike " + u.label, u.checks);
  os << "result: " << (r.pass() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace aqg
