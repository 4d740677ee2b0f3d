#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "aqg/commands.hpp"
#include "aqg/constructors.hpp"
#include "aqg/duality.hpp"

using namespace aqg;
namespace fs = std::filesystem;

namespace {

const std::string kData = AQG_DATA_DIR;
const std::string kGolden = AQG_GOLDEN_DIR;

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "aqg_cli_tests";
  fs::create_directories(dir);
  fs::path p = dir / name;
  fs::remove(p);
  return p;
}

json read_json(const fs::path& p) {
  std::ifstream f(p);
  return json::parse(f);
}

const json* find_entry(const json& list, const std::string& name) {
  for (const auto& e : list)
    if (e.at("name") == name) return &e;
  return nullptr;
}

// Same keys, strings and booleans; numbers equal within tol (last-bit noise differs across compilers).
void compare_json(const json& got, const json& want, const std::string& path, double tol) {
  INFO(path);
  REQUIRE(got.type() == want.type());
  if (got.is_object()) {
    REQUIRE(got.size() == want.size());
    for (const auto& [key, value] : want.items()) {
      REQUIRE(got.contains(key));
      compare_json(got.at(key), value, path + "/" + key, tol);
    }
  } else if (got.is_array()) {
    REQUIRE(got.size() == want.size());
    for (size_t i = 0; i < got.size(); ++i) compare_json(got[i], want[i], path + "/" + std::to_string(i), tol);
  } else if (got.is_number()) {
    CHECK(std::abs(got.get<double>() - want.get<double>()) <= tol);
  } else {
    CHECK(got == want);
  }
}

}  // namespace

TEST_CASE("reports of the bundled examples match the golden files") {
  for (const std::string name : {"cz2", "cs3", "fs3"}) {
    VerifyArgs a;
    a.input = kData + "/" + name + ".json";
    a.report = scratch(name + "-golden.json").string();
    a.quiet = true;
    std::ostringstream out, err;
    REQUIRE(cmd_verify(a, out, err) == 0);
    compare_json(read_json(a.report), read_json(kGolden + "/" + name + "-report.json"), name, 1e-12);
  }
}

TEST_CASE("verify on D(S3) passes and writes the report") {
  VerifyArgs a;
  a.input = kData + "/ds3.json";
  a.report = scratch("ds3.json").string();
  a.quiet = true;
  std::ostringstream out, err;
  REQUIRE(cmd_verify(a, out, err) == 0);
  json r = read_json(a.report);
  CHECK(r.at("schema") == kReportSchema);
  CHECK(r.at("engine") == "finite");
  CHECK(r.at("summary").at("pass") == true);
  CHECK(r.at("input").at("dim") == 36);
  CHECK(r.at("axioms").size() == mnw_catalogue().size());
}

TEST_CASE("verify on the block model reports a nontrivial delta") {
  VerifyArgs a;
  a.input = kData + "/suq2_q05.json";
  a.report = scratch("suq2.json").string();
  a.spin_cap2 = 2;
  a.quiet = true;
  std::ostringstream out, err;
  REQUIRE(cmd_verify(a, out, err) == 0);
  json r = read_json(a.report);
  CHECK(r.at("engine") == "block");
  CHECK(r.at("input").at("spin_cap2") == 2);
  const json* d = find_entry(r.at("suites"), "delta_nontrivial");
  REQUIRE(d != nullptr);
  CHECK(d->at("pass") == true);
  const json* dual = find_entry(r.at("suites"), "dual_unsupported");
  REQUIRE(dual != nullptr);
  CHECK(dual->at("kind") == "note");
}

TEST_CASE("flags override the input file") {
  InputSpec in = parse_input(json::parse(R"({"kind":"group_algebra","group":"Z2","tolerance":1e-6,"seed":7})"));
  VerifyArgs a;
  RunParameters run = resolve_parameters(in, a);
  CHECK(run.tolerance == 1e-6);
  CHECK(run.seed == 7);
  CHECK(run.dense_threshold == 128);
  a.seed = 9;
  CHECK(resolve_parameters(in, a).seed == 9);
}

TEST_CASE("malformed input exits 2 without a report") {
  fs::path bad = scratch("bad.json");
  std::ofstream(bad) << "{\"kind\": \"group_algebra\", ";
  VerifyArgs a;
  a.input = bad.string();
  a.report = scratch("bad-report.json").string();
  std::ostringstream out, err;
  CHECK(cmd_verify(a, out, err) == 2);
  CHECK(!fs::exists(a.report));
  CHECK(err.str().find("Schema") != std::string::npos);

  for (const char* text : {R"({"kind":"nope"})", R"({"kind":"group_algebra","group":"S9"})",
                           R"({"kind":"group_algebra","group":"Zx"})", R"({"kind":"drinfeld_double","group":"Z13"})",
                           R"({"kind":"dual_suq2","q":1.5})", R"({"kind":"structure_constants","dim":2})",
                           R"({"kind":"group_algebra","group":"Z2","tolerance":"small"})"}) {
    INFO(text);
    std::ofstream(bad) << text;
    std::ostringstream o, e;
    CHECK(cmd_verify(a, o, e) == 2);
    CHECK(!fs::exists(a.report));
  }
}

TEST_CASE("a failing presentation exits 1 and still writes the report") {
  json j = presentation_to_json(with_antipode(group_algebra(symmetric_group(3))));
  j["involution"][0][1][0] = 0.1;
  fs::path in = scratch("corrupt.json");
  std::ofstream(in) << j.dump();
  VerifyArgs a;
  a.input = in.string();
  a.report = scratch("corrupt-report.json").string();
  a.quiet = true;
  std::ostringstream out, err;
  CHECK(cmd_verify(a, out, err) == 1);
  REQUIRE(fs::exists(a.report));
  CHECK(read_json(a.report).at("summary").at("pass") == false);
}

TEST_CASE("presentation JSON round trip") {
  auto p = with_antipode(drinfeld_double(symmetric_group(3)));
  auto back = presentation_from_json(json::parse(presentation_to_json(p).dump()));
  CHECK((back.algebra.mult - p.algebra.mult).norm() == 0.0);
  CHECK((back.comul - p.comul).norm() == 0.0);
  CHECK((back.counit - p.counit).norm() == 0.0);
  REQUIRE(back.antipode.has_value());
  CHECK((*back.antipode - *p.antipode).norm() == 0.0);
}

TEST_CASE("dual of C[S3] is F(S3) through g -> g^-1") {
  fs::path in = scratch("cs3.json"), outp = scratch("cs3-dual.json");
  std::ofstream(in) << R"({"kind":"group_algebra","group":"S3"})";
  DualArgs a;
  a.input = in.string();
  a.output = outp.string();
  std::ostringstream out, err;
  REQUIRE(cmd_dual(a, out, err) == 0);
  auto dual = presentation_from_json(read_json(outp));
  auto g = symmetric_group(3);
  auto f = function_algebra(g);
  // e_g phi evaluates to 1 exactly on g^-1.
  Mat map = Mat::Zero(6, 6);
  for (int x = 0; x < 6; ++x) map(g.inverse[x], x) = 1.0;
  CHECK(hopf_morphism_residual(dual, with_antipode(f), map) <= 1e-12);
}

TEST_CASE("dual --check on D(S3); the block model has no finite dual") {
  DualArgs a;
  a.input = kData + "/ds3.json";
  a.output = scratch("ds3-dual.json").string();
  a.check = true;
  std::ostringstream out, err;
  CHECK(cmd_dual(a, out, err) == 0);
  CHECK(out.str().find("biduality residual") != std::string::npos);

  DualArgs b;
  b.input = kData + "/suq2_q05.json";
  b.output = scratch("suq2-dual.json").string();
  std::ostringstream o2, e2;
  CHECK(cmd_dual(b, o2, e2) == 2);
  CHECK(e2.str().find("Unsupported") != std::string::npos);
  CHECK(!fs::exists(b.output));
}

TEST_CASE("info strings") {
  auto info = [](const std::string& file) {
    InfoArgs a;
    a.input = kData + "/" + file;
    std::ostringstream out, err;
    CHECK(cmd_info(a, out, err) == 0);
    return out.str();
  };
  CHECK(info("cz2.json").find("dim 2, commutative, cocommutative, delta = 1") != std::string::npos);
  CHECK(info("fs3.json").find("dim 6, commutative, noncocommutative, delta = 1") != std::string::npos);
  CHECK(info("ds3.json").find("dim 36, noncommutative, noncocommutative") != std::string::npos);
  CHECK(info("suq2_q05.json").find("block engine, q 0.5, spin_cap2 3, delta nontrivial") != std::string::npos);
}

TEST_CASE("example input with automorphism and grouplike") {
  VerifyArgs a;
  a.input = kData + "/cs3.json";
  a.report = scratch("cs3-report.json").string();
  a.quiet = true;
  std::ostringstream out, err;
  REQUIRE(cmd_verify(a, out, err) == 0);
  json r = read_json(a.report);
  REQUIRE(r.at("automorphisms").size() == 1);
  CHECK(r.at("automorphisms")[0].at("r").get<double>() == doctest::Approx(1.0));
  CHECK(r.at("grouplikes").size() == 2);
}
