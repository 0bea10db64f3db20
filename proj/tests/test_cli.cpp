#include "catch_amalgamated.hpp"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <misere.hpp>

#include "support.hpp"

namespace {

  struct Run {
    int         code;
    std::string out;
  };

  Run run(std::string const& args) {
    auto const cmd  = std::string(MISERE_CLI) + " " + args + " 2>&1";
    FILE*      pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string            out;
    std::array<char, 4096> buf{};
    while (auto n = std::fread(buf.data(), 1, buf.size(), pipe)) {
      out.append(buf.data(), n);
    }
    auto const status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
  }

  std::string scratch(std::string const& name) {
    auto dir = std::filesystem::temp_directory_path() / "misere-cli-test";
    std::filesystem::create_directories(dir);
    return (dir / name).string();
  }

  bool contains(std::string const& s, std::string const& part) {
    return s.find(part) != std::string::npos;
  }

}  // namespace

TEST_CASE("analyze, certify and query 0.123", "[cli]") {
  auto const path = scratch("q0123.json");
  auto const a    = run("analyze 0.123 -n 20 --certify 6,5 --out " + path);
  INFO(a.out);
  REQUIRE(a.code == 0);
  CHECK(contains(a.out, "20 elements"));
  CHECK(contains(a.out, "P: x xa z^2 zb b^2"));
  CHECK(contains(a.out, "passed"));

  auto const o = run("outcome " + path + " '[1,3,4,8,9,21]'");
  INFO(o.out);
  CHECK(o.code == 0);
  CHECK(contains(o.out, "element zb^2, N"));
  CHECK(contains(o.out, "remove heap 3 entirely, leaving [1,4,8,9,21] = b^2"));

  auto const p = run("outcome " + path + " '[1,4,8,9,21]'");
  CHECK(contains(p.out, "element b^2, P"));

  auto const v = run("verify " + path + " -n 19 --engine naive");
  CHECK(v.code == 0);
  CHECK(contains(v.out, "passed"));

  auto const s = run("structure " + path + " --out " + scratch("structure.json"));
  CHECK(s.code == 0);
  auto const j = misere::parse_json(misere::read_file(scratch("structure.json")));
  CHECK(j["idempotents"] == misere::json::array({"e", "z^2", "b^2"}));
  CHECK(j["verified"] == true);
}

TEST_CASE("analysis and report files", "[cli]") {
  auto const first  = scratch("first.json");
  auto const second = scratch("second.json");
  auto const report = scratch("report.json");
  REQUIRE(run("analyze 0.123 -n 12 --out " + first).code == 0);
  REQUIRE(run("certify " + first + " --certify 6,5 --out " + second).code == 0);
  auto const a = misere::load_analysis(first);
  auto const b = misere::load_analysis(second);
  CHECK(a.monoid.names() == b.monoid.names());
  CHECK(a.verified_to == 12);
  CHECK(b.certified_period == misere::PeriodCertificate{6, 5});
  CHECK(misere::read_file(first) == misere::canonical_dump(misere::to_json(a)));
  CHECK(misere::read_file(second) == misere::canonical_dump(misere::to_json(b)));

  REQUIRE(run("verify " + second + " -n 19 --out " + report).code == 0);
  auto const r = misere::parse_json(misere::read_file(report));
  CHECK(r["passed"] == true);
  CHECK(r["n"] == 19);
  CHECK(r["np_failures"].empty());
}

TEST_CASE("reduce and genus", "[cli]") {
  auto const r = run("reduce " + test_support::data_path("q0123.pres") + " 'x z^2 a b^3'");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "zb^2"));
  CHECK(contains(r.out, "[ a*b, z*b ]"));

  auto const k = run("reduce " + test_support::data_path("kayles.pres") + " 'z*v'");
  CHECK(contains(k.out, "zw"));

  CHECK(contains(run("genus 0.123 '[8]'").out, "2^{1420}"));
  CHECK(contains(run("genus 0.123 '[9]'").out, "1^{20}"));
  CHECK(contains(run("genus 0.77 '[11]'").out, "6^{46}"));

  std::ofstream(scratch("t.tree")) << "{{{2},3},{{2},2,0},3,1}\n";
  auto const t = run("genus 0.123 '[11]' --tree " + scratch("t.tree"));
  CHECK(contains(t.out, "0^{0520}"));
}

TEST_CASE("kayles from its presentation", "[cli]") {
  auto const path = scratch("kayles.json");
  auto const a    = run("analyze --presentation " + test_support::data_path("kayles.pres")
                        + " -n 24 --out " + path);
  INFO(a.out);
  REQUIRE(a.code == 0);
  CHECK(contains(a.out, "40 elements"));
  auto const o = run("outcome " + path + " '[5,4,1,1]'");
  CHECK(contains(o.out, "element xw, P"));
}

TEST_CASE("exit codes", "[cli]") {
  CHECK(run("analyze 0.8 -n 5").code == 4);
  CHECK(run("analyze 0.123").code == 4);
  CHECK(run("outcome " + scratch("nope.json") + " '[1]'").code == 4);
  CHECK(run("reduce " + test_support::data_path("q0123.pres") + " 'q'").code == 4);
  CHECK(run("frobnicate").code != 0);

  auto const path = scratch("short.json");
  REQUIRE(run("analyze 0.123 -n 12 --out " + path).code == 0);
  CHECK(run("outcome " + path + " '[40]'").code == 4);
  CHECK(run("certify " + path + " --certify 1,1").code == 4);
  CHECK(run("certify " + path).code == 4);

  // a corrupted partition fails verification
  auto j                 = misere::parse_json(misere::read_file(path));
  j["p_set"]             = misere::json::array({1, 6, 8, 10});
  auto const broken_path = scratch("broken.json");
  misere::write_file_atomic(broken_path, misere::canonical_dump(j));
  auto const v = run("verify " + broken_path + " -n 12");
  CHECK(v.code == 2);
  CHECK(contains(v.out, "FAILED"));

  CHECK(run("genus 0.77 '[30,31]' --budget 50").code == 3);
}
