#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "levywave/cli.hpp"
#include "levywave/config.hpp"
#include "levywave/errors.hpp"

using namespace levywave;
namespace fs = std::filesystem;

namespace {

const fs::path source_dir{LEVYWAVE_SOURCE_DIR};

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("levywave_cli_" + name);
    fs::remove_all(p);
    return p;
}

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "levy-wave");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string config(const std::string& name) { return (source_dir / "configs" / name).string(); }

}  // namespace

TEST_CASE("check-condition verdicts for the shipped configs") {
    const fs::path a = scratch("alpha");
    const Run ra = run({"check-condition", "--config", config("alpha_stable.json"), "--out", a.string()});
    CHECK(ra.code == 0);
    CHECK(ra.out.find("verdict: HOLDS") != std::string::npos);
    const auto rep = nlohmann::json::parse(slurp(a / "report.json"));
    CHECK(rep["verdict"] == "HOLDS");
    CHECK(rep.contains("config_hash"));
    CHECK(fs::exists(a / "condition.csv"));

    const fs::path g = scratch("gamma");
    const Run rg = run({"check-condition", "--config", config("gamma.json"), "--out", g.string()});
    CHECK(rg.code == 0);
    CHECK(rg.out.find("verdict: FAILS") != std::string::npos);
}

TEST_CASE("simulate is deterministic under a fixed seed") {
    const fs::path a = scratch("sim_a"), b = scratch("sim_b");
    REQUIRE(run({"simulate", "--config", config("quick.json"), "--seed", "7", "--out", a.string()}).code == 0);
    REQUIRE(run({"simulate", "--config", config("quick.json"), "--seed", "7", "--threads", "2", "--out", b.string()}).code == 0);
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(a)) {
        const fs::path other = b / e.path().filename();
        REQUIRE(fs::exists(other));
        if (e.path().filename() == "report.json") continue;  // records the thread count
        CHECK(slurp(e.path()) == slurp(other));
        ++files;
    }
    CHECK(files == 6);

    const fs::path c = scratch("sim_c");
    REQUIRE(run({"simulate", "--config", config("quick.json"), "--seed", "8", "--out", c.string()}).code == 0);
    CHECK(slurp(a / "jumps_path0.csv") != slurp(c / "jumps_path0.csv"));
}

TEST_CASE("config errors exit with code 2") {
    const fs::path dir = scratch("bad");
    fs::create_directories(dir);
    {
        std::ofstream(dir / "broken.json") << "{\n  \"T\": 1.0,\n  \"L\": ,\n}\n";
        std::ofstream(dir / "family.json") << R"({"measure": {"family": "cauchy", "epsilon": 1.0}})";
        std::ofstream(dir / "negative.json") << R"({"lattice_spacing": -1.0})";
    }
    const Run broken = run({"check-condition", "--config", (dir / "broken.json").string(), "--out", dir.string()});
    CHECK(broken.code == 2);
    CHECK(broken.err.find("line 3") != std::string::npos);
    CHECK(run({"simulate", "--config", (dir / "family.json").string(), "--out", dir.string()}).code == 2);
    CHECK(run({"simulate", "--config", (dir / "negative.json").string(), "--out", dir.string()}).code == 2);
    CHECK(run({"simulate", "--config", (dir / "missing.json").string(), "--out", dir.string()}).code == 2);
    CHECK(run({"simulate"}).code == 2);
    CHECK(run({"launch"}).code == 2);
}

TEST_CASE("hermite and compare commands write their reports") {
    const fs::path h = scratch("hermite");
    const Run rh = run({"hermite", "--config", config("quick.json"), "--out", h.string()});
    CHECK(rh.code == 0);
    CHECK(fs::exists(h / "hermite.csv"));
    const auto rep = nlohmann::json::parse(slurp(h / "report.json"));
    CHECK(rep["dual_norm"].get<double>() > 0.0);

    const fs::path c = scratch("compare");
    const Run rc = run({"compare", "--config", config("quick.json"), "--out", c.string()});
    CHECK((rc.code == 0 || rc.code == 1));
    const auto cr = nlohmann::json::parse(slurp(c / "report.json"));
    CHECK(cr["result"]["rows"].size() == 3);
}

TEST_CASE("config round trip") {
    ExperimentConfig c;
    c.measure = LevyMeasureSpec{Table{{{0.5, 1.0}, {-0.25, 3.0}}}, 1.0};
    c.seed = 123456789012345ull;
    c.epsilon_schedule = {0.5, 0.05};
    c.expectations = {{"ks_min_all", 0.1}};
    const ExperimentConfig back = config_from_json(config_to_json(c));
    CHECK(config_to_json(back) == config_to_json(c));
    CHECK(config_hash(back) == config_hash(c));
    c.seed += 1;
    CHECK(config_hash(back) != config_hash(c));

    const ExperimentConfig partial = parse_config(R"({"paths": 10})");
    CHECK(partial.paths == 10);
    CHECK(partial.T == 1.0);
    CHECK_THROWS_AS(parse_config(R"({"paths": 1})"), Error);
    CHECK_THROWS_AS(parse_config(R"({"epsilon_schedule": [0.1, 0.2]})"), Error);
}
