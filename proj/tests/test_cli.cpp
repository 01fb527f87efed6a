#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "latkit/cli.hpp"
#include "latkit/json_io.hpp"

using namespace latkit;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args, const std::string& stdin_text = {}) {
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    const int code = run_cli(args, in, out, err);
    return {code, out.str(), err.str()};
}

/// Writes `gen <family>` output to a scratch file and returns its path.
std::string gen_file(const std::string& family) {
    const auto dir = std::filesystem::temp_directory_path() / "latkit_cli_test";
    std::filesystem::create_directories(dir);
    const auto path = (dir / (family + ".json")).string();
    std::ofstream(path) << run({"gen", family}).out;
    return path;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("gen") {
    const auto m3 = run({"gen", "M3"});
    CHECK(m3.code == 0);
    CHECK(json::parse(m3.out)["elements"].size() == 5);
    CHECK(json::parse(run({"gen", "Bn", "--n", "2"}).out)["elements"].size() == 4);
    const auto r1 = run({"--seed", "42", "gen", "random", "--size", "6"});
    const auto r2 = run({"gen", "random", "--size", "6", "--seed", "42"});
    CHECK(r1.code == 0);
    CHECK(r1.out == r2.out);
    CHECK(json::parse(r1.out)["elements"].size() == 6);
    CHECK(run({"gen", "Q7"}).code == 2);
}

TEST_CASE("op") {
    const auto m3 = gen_file("M3");
    const auto c2 = gen_file("C2");
    const auto c3 = gen_file("C3");
    const auto n5 = gen_file("N5");
    const auto t = run({"op", "tensor", m3, c2});
    REQUIRE(t.code == 0);
    CHECK(json::parse(t.out)["elements"].size() == 5);
    const auto con = run({"op", "con", c3});
    REQUIRE(con.code == 0);
    CHECK(json::parse(con.out)["elements"].size() == 4);
    const auto ml = run({"op", "mL", n5});
    REQUIRE(ml.code == 0);
    CHECK(json::parse(ml.out)["lattice"] == true);
    const auto stdin_dual = run({"op", "dual", "-"}, run({"gen", "N5"}).out);
    CHECK(stdin_dual.code == 0);
    CHECK(run({"op", "tensor", m3}).code == 2);
    CHECK(run({"op", "frobnicate", m3}).code == 2);
    const auto b3 = gen_file("B3");
    const auto guarded = run({"op", "tensor", b3, b3});
    CHECK(guarded.code == 2);
    CHECK(guarded.err.find("size limit") != std::string::npos);
    CHECK(run({"--guard", "64", "op", "tensor", b3, b3}).code == 0);
}

TEST_CASE("check exit codes and witnesses") {
    const auto m3 = gen_file("M3");
    const auto n5 = gen_file("N5");
    const auto w7 = gen_file("W7");
    const auto am = run({"check", "amenable", m3});
    CHECK(am.code == 1);
    CHECK(json::parse(am.out)["verdict"] == false);
    CHECK(run({"check", "amenable", n5}).code == 0);
    const auto w = run({"check", "whitman", w7});
    CHECK(w.code == 1);
    CHECK(json::parse(w.out)["witness"]["ids"].size() == 4);
    const auto iso = run({"check", "iso", n5, n5});
    CHECK(iso.code == 0);
    CHECK(json::parse(iso.out)["mapping"].size() == 5);
    CHECK(run({"check", "iso", n5, m3}).code == 1);
    CHECK(run({"check", "simple", m3}).code == 0);
    CHECK(run({"check", "embedding", n5, "--kind", "j_s", "--s", "a"}).code == 0);
    CHECK(run({"check", "representable", m3}).code == 2);
    std::ofstream(std::filesystem::temp_directory_path() / "latkit_cli_test" / "bad.json") << "{ nope";
    CHECK(run({"check", "lattice", (std::filesystem::temp_directory_path() / "latkit_cli_test" / "bad.json").string()})
              .code == 2);
}

TEST_CASE("verify reports are deterministic JSON lines") {
    const auto a = run({"verify", "box-closure", "--max-size", "3", "--samples", "2", "--threads", "1"});
    const auto b = run({"verify", "box-closure", "--max-size", "3", "--samples", "2", "--threads", "3"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    std::istringstream lines(a.out);
    std::string line, last;
    std::size_t count = 0;
    while (std::getline(lines, line)) {
        last = line;
        ++count;
    }
    CHECK(count > 1);
    const auto agg = json::parse(last);
    CHECK(agg["aggregate"] == true);
    CHECK(agg["pass"] == true);
    CHECK(run({"verify", "no-such-theorem"}).code == 2);
    CHECK(run({"verify"}).code == 2);
}

}  // TEST_SUITE
