#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fpgcli/commands.hpp"

using namespace fpg::cli;

namespace {

const std::string data = FPG_DATA_DIR;

struct Run {
  int code;
  std::string out, err;
};

template <class F>
Run run(F&& f) {
  std::ostringstream out, err;
  const int code = f(out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("fpg_test_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string p = temp_path(name);
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("examples: decompose") {
    const auto ok = run([](auto& o, auto& e) { return cmd_decompose(data + "/sys_a.json", {}, o, e); });
    CHECK(ok.code == kOk);
    const Json cert = Json::parse(ok.out);
    CHECK(cert["factors"][0]["reps"] == Json::array({"", "1:1"}));
    CHECK(cert["factors"][0]["free_basis"] == Json::array());
    CHECK(cert["factors"][1]["h_gens"] == Json::array());
    CHECK(ok.out.back() == '\n');
    CHECK(ok.err.find("verdict: pass") != std::string::npos);

    Options tight;
    tight.bounds.max_cosets = 1;
    const auto bound = run([&](auto& o, auto& e) { return cmd_decompose(data + "/sys_a.json", tight, o, e); });
    CHECK(bound.code == kBoundExceeded);
    CHECK(bound.err.find("IndexBoundExceeded") != std::string::npos);

    const auto bad = run([](auto& o, auto& e) { return cmd_decompose(data + "/not_surjective.json", {}, o, e); });
    CHECK(bad.code == kInvalidInput);
    const auto onto = run([](auto& o, auto& e) { return cmd_decompose(data + "/image_not_onto.json", {}, o, e); });
    CHECK(onto.code == kInvalidInput);
    CHECK(onto.err.find("ThetaNotSurjectiveOntoB") != std::string::npos);
  }

  TEST_CASE("bounds from the file and from flags") {
    const std::string p = write_temp("bounds.json", R"({"factors_G": ["cyclic 2", "cyclic 2"],
      "factors_B": ["cyclic 2", "trivial"], "theta": [[0, 1], [0, 0]],
      "subgroup": ["0:1", "1:1 0:1 1:1"], "bounds": {"max_cosets": 1}})");
    CHECK(run([&](auto& o, auto& e) { return cmd_decompose(p, {}, o, e); }).code == kBoundExceeded);
    Options wide;
    wide.bounds.max_cosets = 5;
    CHECK(run([&](auto& o, auto& e) { return cmd_decompose(p, wide, o, e); }).code == kOk);
  }

  TEST_CASE("examples: kurosh") {
    const auto b = run([](auto& o, auto& e) { return cmd_kurosh(data + "/sys_b.json", {}, o, e); });
    CHECK(b.code == kOk);
    const Json d = Json::parse(b.out);
    CHECK(d["pieces"].size() == 3);
    for (const auto& p : d["pieces"]) {
      CHECK(p["lambda"] == 0);
      CHECK(p["stabilizer"].size() == 2);
    }
    CHECK(d["free_rank"] == 0);

    const std::string whole = write_temp("whole.json", R"({"factors_G": ["cyclic 2", "sym 3"], "subgroup": ["0:1", "1:1", "1:3"]})");
    const Json w = Json::parse(run([&](auto& o, auto& e) { return cmd_kurosh(whole, {}, o, e); }).out);
    REQUIRE(w["pieces"].size() == 2);
    CHECK(w["pieces"][0]["rep"] == "");
    CHECK(w["pieces"][1]["rep"] == "");

    const auto inf = run([](auto& o, auto& e) { return cmd_kurosh(data + "/trivial_subgroup.json", {}, o, e); });
    CHECK(inf.code == kBoundExceeded);
    CHECK(inf.err.find("IndexBoundExceeded") != std::string::npos);
  }

  TEST_CASE("certificate round trip") {
    Options o1;
    o1.output = temp_path("cert.json");
    CHECK(run([&](auto& o, auto& e) { return cmd_decompose(data + "/s3_z4.json", o1, o, e); }).code == kOk);
    const std::string first = slurp(o1.output);
    const auto v = run([&](auto& o, auto& e) { return cmd_verify(data + "/s3_z4.json", o1.output, {}, o, e); });
    CHECK(v.code == kOk);
    CHECK(v.out.find("verdict: pass") != std::string::npos);
    Options js;
    js.json = true;
    const auto vj = run([&](auto& o, auto& e) { return cmd_verify(data + "/s3_z4.json", o1.output, js, o, e); });
    CHECK(Json::parse(vj.out)["verdict"] == "pass");
    CHECK(Json::parse(vj.out)["checks"].size() == 7);

    // Re-serializing the parsed certificate reproduces the bytes.
    const fpg::FreeProduct g(read_system_file(data + "/s3_z4.json").g_factors);
    CHECK(dump(to_json(certificate_from_json(g, Json::parse(first)))) == first);

    // Wrong system: hash mismatch.
    const auto wrong = run([&](auto& o, auto& e) { return cmd_verify(data + "/sys_a.json", o1.output, {}, o, e); });
    CHECK(wrong.code == kInvalidInput);

    // A certificate that parses but is false.
    Json cert = Json::parse(first);
    cert["factors"][0]["vertex_groups"][0] = Json::array();
    const std::string broken = write_temp("broken.json", dump(cert));
    CHECK(run([&](auto& o, auto& e) { return cmd_verify(data + "/s3_z4.json", broken, {}, o, e); }).code ==
          kVerificationFailed);
    const std::string garbage = write_temp("garbage.json", "{\"index\": 1}");
    CHECK(run([&](auto& o, auto& e) { return cmd_verify(data + "/s3_z4.json", garbage, {}, o, e); }).code ==
          kInvalidInput);
  }

  TEST_CASE("examples: normalform") {
    const std::string z22 = write_temp("z22.json", R"({"factors_G": ["cyclic 2", "cyclic 2"]})");
    auto nf = [](const std::string& sys, const std::string& w) {
      return run([&](auto& o, auto& e) { return cmd_normalform(sys, w, {}, o, e); });
    };
    CHECK(nf(z22, "0:1 0:1").out == "\n");
    CHECK(nf(data + "/sys_b.json", "0:1 1:1 1:2").out == "0:1\n");
    CHECK(nf(z22, "").out == "\n");
    CHECK(nf(z22, "0:7").code == kInvalidInput);
  }

  TEST_CASE("member and graph") {
    auto member = [](const std::string& w) {
      return run([&](auto& o, auto& e) { return cmd_member(data + "/sys_a.json", w, {}, o, e); }).out;
    };
    CHECK(member("1:1 0:1 1:1") == "true\n");
    CHECK(member("1:1") == "false\n");
    CHECK(member("") == "true\n");
    Options dot;
    dot.dot = temp_path("g.dot");
    const auto gr = run([&](auto& o, auto& e) { return cmd_graph(data + "/sys_a.json", dot, o, e); });
    CHECK(gr.code == kOk);
    CHECK(gr.out.rfind("digraph", 0) == 0);
    CHECK(slurp(dot.dot) == gr.out);
  }

  TEST_CASE("input validation") {
    auto code = [](const std::string& text) {
      const std::string p = write_temp("input.json", text);
      return run([&](auto& o, auto& e) { return cmd_decompose(p, {}, o, e); }).code;
    };
    CHECK(code("not json") == kInvalidInput);
    CHECK(code("{}") == kInvalidInput);
    CHECK(code(R"({"factors_G": ["cyclic 2"], "factors_B": ["cyclic 2"], "theta": [[0, 1]], "subgroup": ["0:1"], "bounds": {"bogus": 1}})") == kInvalidInput);
    CHECK(code(R"({"factors_G": ["dihedral 4"], "factors_B": ["cyclic 2"], "theta": [[0, 1]]})") == kInvalidInput);
    CHECK(code(R"({"factors_G": [[[0, 1], [1, 1]]], "factors_B": ["cyclic 2"], "theta": [[0, 1]]})") == kInvalidInput);
    CHECK(code(R"({"factors_G": ["cyclic 2"], "subgroup": ["0:1"]})") == kInvalidInput);
    CHECK(code(R"({"factors_G": ["cyclic 2"], "factors_B": ["cyclic 2"], "theta": [[0, 1]], "subgroup": ["0:1"]})") == kOk);
    CHECK(run([](auto& o, auto& e) { return cmd_decompose("/nonexistent/x.json", {}, o, e); }).code == kInvalidInput);
  }
}
