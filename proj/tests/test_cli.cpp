#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hyperreg/cli.hpp"
#include "hyperreg/report.hpp"

using namespace hyperreg;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = 0;
    std::string out, err;
    json report() const { return json::parse(out); }
};

Run cli(std::vector<std::string> args) {
    args.insert(args.begin(), "hyperreg");
    std::ostringstream out, err;
    Run r;
    r.code = run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

fs::path scratch() {
    const auto dir = fs::temp_directory_path() / "hyperreg_cli_tests";
    fs::create_directories(dir);
    return dir;
}

std::string write(const std::string& name, const std::string& text) {
    const auto p = scratch() / name;
    std::ofstream(p) << text;
    return p.string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), {}};
}

const char* kK3 = "k 3\nclass 0 1\nclass 1 1\nclass 2 1\nedge 0 0 1 0\nedge 0 0 2 0\nedge 1 0 2 0\ntri 0 0 1 0 2 0\n";

std::string edges_222() {
    std::string s = "k 3\nclass 0 2\nclass 1 2\nclass 2 2\n";
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            for (int u = 0; u < 2; ++u)
                for (int v = 0; v < 2; ++v)
                    s += "edge " + std::to_string(i) + " " + std::to_string(u) + " " + std::to_string(j) + " " +
                         std::to_string(v) + "\n";
    return s;
}

}  // namespace

TEST_SUITE("cli") {
TEST_CASE("usage errors exit with code 2") {
    CHECK(cli({}).code == 2);
    CHECK(cli({"no-such-command"}).code == 2);
    CHECK(cli({"count", "--pattern", "/nonexistent/p.txt", "--host", "/nonexistent/h.txt"}).code == 2);
    const auto bad = write("bad.txt", "k 3\nclass 0 1\nclass 1 1\nclass 2 1\ntri 0 0 1 0 2 0\n");
    const auto r = cli({"count", "--pattern", bad, "--host", bad});
    CHECK(r.code == 2);
    CHECK(r.err.find("error") != std::string::npos);
}

TEST_CASE("count and graph-only count") {
    const auto k3 = write("k3.txt", kK3);
    const auto host = write("edges222.txt", edges_222());
    const auto g = cli({"count", "--pattern", k3, "--host", host, "--graph-only"});
    REQUIRE(g.code == 0);
    CHECK(g.report()["result"]["count"] == 8);
    const auto h = cli({"count", "--pattern", k3, "--host", host});
    CHECK(h.report()["result"]["count"] == 0);
    const auto s = cli({"count", "--pattern", k3, "--host", host, "--graph-only", "--serial"});
    CHECK(s.report()["result"] == g.report()["result"]);
    CHECK(s.report()["manifest"]["execution"] == "serial");
}

TEST_CASE("predict") {
    const auto k3 = write("k3.txt", kK3);
    const auto r = cli({"predict", "--pattern", k3, "--n", "30", "--d2", "0.5", "--d3", "0.5"});
    REQUIRE(r.code == 0);
    CHECK(r.report()["result"]["predicted"].get<double>() == doctest::Approx(1687.5));
}

TEST_CASE("report envelope") {
    const auto k3 = write("k3.txt", kK3);
    const auto j = cli({"predict", "--pattern", k3, "--n", "10"}).report();
    CHECK(j["schema_version"] == kSchemaVersion);
    CHECK(j["tool"] == "hyperreg");
    CHECK(j["manifest"]["subcommand"] == "predict");
    CHECK(j["manifest"]["version"] == kToolVersion);
    CHECK(j["manifest"].contains("seed"));
    CHECK(j["pass"] == true);
    CHECK_FALSE(j["manifest"].contains("wall_clock_s"));
}

TEST_CASE("verdict failure exits with code 1") {
    const auto r = cli({"verify-counting", "--n", "8", "--seeds", "2", "--tolerance", "0"});
    CHECK(r.code == 1);
    CHECK(r.report()["pass"] == false);
}

TEST_CASE("gen writes the file and a sidecar; reruns are byte-identical") {
    const auto a = (scratch() / "host_a.txt").string(), b = (scratch() / "host_b.txt").string();
    REQUIRE(cli({"gen", "--kind", "host", "--k", "3", "--n", "6", "--seed", "11", "--out", a}).code == 0);
    REQUIRE(cli({"gen", "--kind", "host", "--k", "3", "--n", "6", "--seed", "11", "--out", b}).code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(fs::exists(a + ".json"));
    const auto c = (scratch() / "host_c.txt").string();
    REQUIRE(cli({"gen", "--kind", "host", "--k", "3", "--n", "6", "--seed", "12", "--out", c}).code == 0);
    CHECK(slurp(a) != slurp(c));
}

TEST_CASE("reports are byte-identical across reruns; wall clock goes to the manifest file") {
    const auto host = (scratch() / "host_r.txt").string();
    REQUIRE(cli({"gen", "--kind", "host", "--k", "3", "--n", "7", "--seed", "3", "--out", host}).code == 0);
    const auto k3 = write("k3.txt", kK3);
    const auto m = (scratch() / "manifest.json").string();
    const auto x = cli({"count", "--pattern", k3, "--host", host, "--manifest-out", m});
    const auto y = cli({"count", "--pattern", k3, "--host", host});
    CHECK(x.out == y.out);
    const auto man = json::parse(slurp(m));
    CHECK(man.contains("wall_clock_s"));
    CHECK(man.contains("argv"));
}

TEST_CASE("json-out redirects the report") {
    const auto k3 = write("k3.txt", kK3);
    const auto path = (scratch() / "predict.json").string();
    const auto r = cli({"predict", "--pattern", k3, "--n", "5", "--json-out", path});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(json::parse(slurp(path))["result"]["predicted"].get<double>() == doctest::Approx(125.0 / 16));
}

TEST_CASE("ramsey and embed subcommands") {
    const auto k3 = write("k3.txt", kK3);
    const auto r = cli({"ramsey", "--pattern", k3});
    REQUIRE(r.code == 0);
    CHECK(r.report()["result"]["exact"] == 3);

    const auto host = (scratch() / "host_e.txt").string();
    REQUIRE(cli({"gen", "--kind", "host", "--k", "3", "--n", "6", "--d2", "1", "--d3", "1", "--out", host}).code == 0);
    const auto map = (scratch() / "map.txt").string();
    const auto e = cli({"embed", "--pattern", k3, "--host", host, "--map-out", map});
    CHECK(e.code == 0);
    CHECK(slurp(map).rfind("map ", 0) == 0);
}
}
