#include <cmath>
#include <cstdlib>
#include <doctest.h>
#include <filesystem>
#include <unistd.h>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(CHAOS_MWU_BIN) + " " + args;
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::vector<std::string> data_rows(const std::string& csv) {
    std::vector<std::string> rows;
    std::istringstream in(csv);
    std::string line;
    bool seen_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!seen_header) {
            seen_header = true;  // header row
            continue;
        }
        rows.push_back(line);
    }
    return rows;
}

struct TmpDir {
    fs::path path;
    TmpDir() : path(fs::temp_directory_path() /
                    ("chaos-mwu-test-" + std::to_string(::getpid()))) {
        fs::create_directories(path);
    }
    ~TmpDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("simulate row-count contract and manifest embedding") {
    TmpDir tmp;
    const auto out = tmp.path / "trace.csv";
    REQUIRE(run("simulate --b 0.4 --a 25 --x0 0.3 --n 1000 --out " +
                out.string()) == 0);
    const std::string csv = slurp(out);
    CHECK(data_rows(csv).size() == 1000);
    CHECK(csv.find("# command = simulate") != std::string::npos);
    CHECK(csv.find("# a = 25") != std::string::npos);
    CHECK(csv.find("# seed = 1") != std::string::npos);
    CHECK(csv.find("step,x,a,r") != std::string::npos);
    // sidecar manifest parses
    const auto manifest = nlohmann::json::parse(slurp(out.string() + ".manifest.json"));
    CHECK(manifest["command"] == "simulate");
    CHECK(manifest["version"] == "0.1.0");
}

TEST_CASE("simulate at the fixed point is constant") {
    TmpDir tmp;
    const auto out = tmp.path / "fp.csv";
    REQUIRE(run("simulate --b 0.4 --a 25 --x0 0.4 --n 200 --out " +
                out.string()) == 0);
    for (const auto& row : data_rows(slurp(out))) {
        CHECK(row.find(",0.40000000000000002,") != std::string::npos);
    }
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run("simulate --b 0.4 --n 10 > /dev/null 2>&1") == 2);  // no rate flags
    CHECK(run("simulate --b 0.4 --a 25 --amin 20 --amax 30 --n 10 "
              "> /dev/null 2>&1") == 2);
    CHECK(run("bifurcation --a 6 --grid-lo 0.9 --grid-hi 0.1 "
              "> /dev/null 2>&1") == 2);
    CHECK(run("frobnicate > /dev/null 2>&1") == 2);
}

TEST_CASE("unwritable output path exits with code 4") {
    CHECK(run("simulate --b 0.4 --a 25 --n 10 --out /nonexistent-dir/x.csv "
              "2> /dev/null") == 4);
}

TEST_CASE("byte-identical reruns") {
    TmpDir tmp;
    const auto out1 = tmp.path / "r1.csv";
    const auto out2 = tmp.path / "r2.csv";
    const std::string flags =
        "simulate --b 0.4 --amin 20 --amax 30 --kappa 10 --x0 0.3 --n 5000 --out ";
    REQUIRE(run(flags + out1.string()) == 0);
    REQUIRE(run(flags + out2.string()) == 0);
    CHECK(slurp(out1) == slurp(out2));
}

TEST_CASE("config file mirrors flags, flags override") {
    TmpDir tmp;
    const auto cfg = tmp.path / "run.cfg";
    {
        std::ofstream out(cfg);
        out << "b = 0.4\na = 25\nx0 = 0.3\nn = 500\n";
    }
    const auto out1 = tmp.path / "from-config.csv";
    const auto out2 = tmp.path / "from-flags.csv";
    REQUIRE(run("simulate --config " + cfg.string() + " --out " +
                out1.string()) == 0);
    REQUIRE(run("simulate --b 0.4 --a 25 --x0 0.3 --n 500 --out " +
                out2.string()) == 0);
    CHECK(data_rows(slurp(out1)) == data_rows(slurp(out2)));

    // flag wins over the config value
    const auto out3 = tmp.path / "override.csv";
    REQUIRE(run("simulate --config " + cfg.string() + " --n 100 --out " +
                out3.string()) == 0);
    CHECK(data_rows(slurp(out3)).size() == 100);
}

TEST_CASE("embedded manifest replays byte-identically") {
    TmpDir tmp;
    const auto out1 = tmp.path / "orig.csv";
    REQUIRE(run("simulate --b 0.4 --a 25 --x0 0.3 --n 300 --seed 7 --out " +
                out1.string()) == 0);
    const auto cfg = tmp.path / "replay.cfg";
    {
        std::ofstream cfg_out(cfg);
        std::istringstream in(slurp(out1));
        std::string line;
        while (std::getline(in, line)) {
            if (line.rfind("#", 0) == 0) cfg_out << line << '\n';
        }
    }
    const auto out2 = tmp.path / "replayed.csv";
    REQUIRE(run("simulate --config " + cfg.string() + " --out " +
                out2.string()) == 0);
    CHECK(slurp(out1) == slurp(out2));
}

TEST_CASE("bifurcation row count and counts comments") {
    TmpDir tmp;
    const auto out = tmp.path / "scan.csv";
    REQUIRE(run("bifurcation --axis equilibrium_b --a 6 --grid-lo 0.2 "
                "--grid-hi 0.8 --points 7 --keep 50 --burn-in 2000 --x0 0.3 "
                "--out " +
                out.string()) == 0);
    const std::string csv = slurp(out);
    CHECK(data_rows(csv).size() == 7 * 50);
    int count_lines = 0;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("# count ", 0) == 0) ++count_lines;
    }
    CHECK(count_lines == 7);
}

TEST_CASE("cobweb converges to the diagonal in the monotone regime") {
    TmpDir tmp;
    const auto out = tmp.path / "cobweb.csv";
    REQUIRE(run("cobweb --b 0.4 --a 3 --x0 0.9 --n 400 --out " +
                out.string()) == 0);
    std::string last_cobweb;
    for (const auto& row : data_rows(slurp(out))) {
        if (row.find(",cobweb") != std::string::npos) last_cobweb = row;
    }
    REQUIRE(!last_cobweb.empty());
    std::istringstream in(last_cobweb);
    std::string tok;
    std::vector<double> vals;
    for (int i = 0; i < 4; ++i) {
        std::getline(in, tok, ',');
        vals.push_back(std::strtod(tok.c_str(), nullptr));
    }
    const double dx = vals[2] - vals[0];
    const double dy = vals[3] - vals[1];
    CHECK(std::sqrt(dx * dx + dy * dy) < 1e-6);
}

TEST_CASE("analyze records NoCriticalPoints at a = 3 and still exits 0") {
    TmpDir tmp;
    const auto out = tmp.path / "bundle.json";
    REQUIRE(run("analyze --b 0.4 --a 3 --suite fixed --out " + out.string()) ==
            0);
    const auto bundle = nlohmann::json::parse(slurp(out));
    CHECK(bundle["entries"]["envelope"]["type"] == "NoCriticalPoints");
    // convergence diagnostics pass in the contracting regime
    const auto& conv = bundle["entries"]["convergence"];
    REQUIRE(conv.contains("cesaro_mean"));
    CHECK(conv["cesaro_mean"].back()["sup"].get<double>() <= 1e-3);
}

TEST_CASE("analyze fixed suite finds the chaotic structure at (30, 0.4)") {
    TmpDir tmp;
    const auto out = tmp.path / "chaotic.json";
    REQUIRE(run("analyze --b 0.4 --a 30 --suite fixed --out " + out.string()) ==
            0);
    const auto bundle = nlohmann::json::parse(slurp(out));
    CHECK(bundle["entries"]["perpetual"]["forward_invariant"] == true);
    CHECK(bundle["entries"]["perpetual"]["surjective"] == true);
    CHECK(bundle["entries"]["period3"]["found"] == true);
    CHECK(bundle["entries"]["turbulent_pair"]["found"] == true);
    CHECK(bundle["entries"]["lyapunov"]["value"].get<double>() > 0.0);
}

TEST_CASE("analyze flags tracking at the symmetric split") {
    TmpDir tmp;
    const auto out = tmp.path / "half.json";
    REQUIRE(run("analyze --b 0.5 --amin 20 --amax 30 --suite chaos --depth 2 "
                "--out " +
                out.string()) == 0);
    const auto bundle = nlohmann::json::parse(slurp(out));
    CHECK(bundle["entries"]["tracking"].contains("flagged"));
}

TEST_CASE("thresholds command emits the eight names") {
    TmpDir tmp;
    const auto out = tmp.path / "thresholds.json";
    REQUIRE(run("thresholds --b 0.4 --scan-lo 4.5 --scan-hi 6.5 --scan-step 0.5 "
                "--format json --out " +
                out.string()) == 0);
    const auto bundle = nlohmann::json::parse(slurp(out));
    CHECK(bundle["thresholds"].size() == 8);
}

TEST_CASE("svg output is produced") {
    TmpDir tmp;
    const auto out = tmp.path / "plot.svg";
    REQUIRE(run("bifurcation --axis equilibrium_b --a 6 --grid-lo 0.2 "
                "--grid-hi 0.8 --points 5 --keep 20 --burn-in 500 "
                "--format svg --out " +
                out.string()) == 0);
    const std::string svg = slurp(out);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("<circle") != std::string::npos);
}
