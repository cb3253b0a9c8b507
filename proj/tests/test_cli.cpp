#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

namespace {

using Json = nlohmann::ordered_json;

struct Run {
  int status;
  std::string out;
};

Run cli(const std::string& args, bool merge_stderr = false) {
  std::string cmd = std::string(MFOUR_CLI_PATH) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int st = pclose(pipe);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("verdict exit codes") {
    CHECK(cli("verify keythm --q 3 --d 1").status == 0);
    CHECK(cli("verify propDmod3 --chi 1/2 --n 2 --window 6").status == 0);
    CHECK(cli("verify propB3-diagnostic --q 3 --n 1").status == 2);
    CHECK(cli("verify gauss-g-diagnostic --q 5 --n 2").status == 2);
  }

  TEST_CASE("errors exit with 3 and a JSON message on stderr") {
    auto r = cli("reduce --algebra shift \"s + +\"", true);
    CHECK(r.status == 3);
    Json j = Json::parse(r.out);
    CHECK(j["error"] == "syntax");
    CHECK(j["offset"] == 4);
    CHECK(cli("verify no-such-check").status == 3);
    CHECK(cli("verify keythm --q 6").status == 3);
    CHECK(cli("trace --q 5 --object Z").status == 3);
  }

  TEST_CASE("usage errors are reported by the argument parser") {
    auto r = cli("reduce --algebra matrix x");
    CHECK(r.status != 0);
    CHECK(r.status != 1);
    CHECK(r.status != 2);
    CHECK(cli("").status != 0);
  }

  TEST_CASE("transform subcommands print JSON") {
    auto r = cli("reduce --algebra weyl \"dx*(x-1)\"");
    REQUIRE(r.status == 0);
    CHECK(Json::parse(r.out)["normal_form"] == "1 - dx + x*dx");
    auto m = Json::parse(cli("mellin \"dx*(x-1)\"").out);
    CHECK(m["mellin"] == "-Ti*s + 1 + s");
    auto f = Json::parse(cli("fourier --rank 1 \"x^2\"").out);
    CHECK(f["fourier"] == "dx^2");
    auto t = Json::parse(cli("trace --q 7 --object I0:3").out);
    CHECK(t["values"]["1"] == "3");
    CHECK(t["values"]["3"] == "0");
    auto red = Json::parse(cli("reduce --algebra shift --modulo \"(s+1) - Ti*s\" \"Ti*s\"").out);
    CHECK(red["remainder"] == "1 + s");
  }

  TEST_CASE("verify JSON matches the report schema") {
    auto r = cli("verify fbneq --q 5 --no-timings");
    REQUIRE(r.status == 0);
    Json j = Json::parse(r.out);
    for (const char* k : {"check", "parameters", "verdict", "witness", "window", "citation"}) CHECK(j.contains(k));
    CHECK(!j.contains("timings"));
  }

  TEST_CASE("pretty output is a table, not JSON") {
    auto r = cli("--pretty verify keythm --q 2 --d 1");
    CHECK(r.status == 0);
    CHECK(r.out.rfind("keythm", 0) == 0);
    CHECK(r.out.find("pass") != std::string::npos);
    auto c = cli("--pretty checks");
    CHECK(c.out.find("appendix-tensor\n") != std::string::npos);
  }
}
