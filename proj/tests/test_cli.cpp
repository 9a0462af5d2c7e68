#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "commands.hpp"

using namespace parlives::app;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cfg(const RunConfig& c) {
    std::ostringstream out, err;
    const int code = run(c, out, err);
    return {code, out.str(), err.str()};
}

RunConfig cfg(std::string command, std::optional<std::uint64_t> seed = std::nullopt, Format f = Format::json) {
    RunConfig c;
    c.command = std::move(command);
    c.seed = seed;
    c.format = f;
    return c;
}

}  // namespace

TEST_CASE("report pass flag is the conjunction of checks") {
    Report r;
    CHECK(r.pass());
    r.add(make_check("a", 1.0, 1.0, 0.0));
    CHECK(r.pass());
    r.add(make_check("b", 0.5, 1.0, 0.1));
    CHECK_FALSE(r.pass());
    CHECK(r.failing() == std::vector<std::string>{"b"});
    CHECK_FALSE(make_check("nan", std::nan(""), 0.0, 1.0).pass);
    CHECK(make_check("ge", 5.0, 3.0, 0.0, Comparison::at_least).pass);
    CHECK_FALSE(make_check("ge", 2.0, 3.0, 0.5, Comparison::at_least).pass);
}

TEST_CASE("mixtures: json report") {
    const auto r = run_cfg(cfg("mixtures"));
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("schema_version") == 1);
    CHECK(j.at("pass") == true);
    CHECK(j.at("checks").size() == 5);
    for (const auto& c : j.at("checks")) {
        CHECK(c.contains("expected"));
        CHECK(c.contains("tolerance"));
    }
    CHECK(j.at("config").at("command") == "mixtures");
}

TEST_CASE("mixtures: zero tolerance fails with a named check") {
    auto c = cfg("mixtures");
    c.tol = 0.0;
    const auto r = run_cfg(c);
    CHECK(r.code == 1);
    CHECK(r.err.find("FAIL ") != std::string::npos);
}

TEST_CASE("sampled commands need a seed") {
    for (const char* name : {"singlet", "chsh", "parallel-lives", "audit", "all"}) CHECK(run_cfg(cfg(name)).code == 2);
    auto c = cfg("choose");
    c.option_a = "hike";
    c.option_b = "bath";
    CHECK(run_cfg(c).code == 2);
}

TEST_CASE("usage errors") {
    CHECK(run_cfg(cfg("nope")).code == 2);
    auto c = cfg("singlet", 1);
    c.trials = 0;
    CHECK(run_cfg(c).code == 2);
    auto t = cfg("mixtures");
    t.tol = -1.0;
    CHECK(run_cfg(t).code == 2);
    auto ch = cfg("choose", 1);
    ch.option_a = "";
    ch.option_b = "bath";
    CHECK(run_cfg(ch).code == 2);
}

TEST_CASE("singlet: zero equal outcomes") {
    const auto r = run_cfg(cfg("singlet", 42));
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("data").at("equal_outcomes") == 0);
    CHECK(j.at("data").at("bases").size() == 50);
}

TEST_CASE("chsh: csv projection") {
    const auto r = run_cfg(cfg("chsh", 42, Format::csv));
    CHECK(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "name,value,expected,tolerance,comparison,pass");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 5);
        CHECK(line.substr(line.size() - 4) == "true");
    }
    CHECK(rows > 10);
}

TEST_CASE("chsh: hierarchy table") {
    const auto r = run_cfg(cfg("chsh", 42));
    const auto j = nlohmann::json::parse(r.out);
    const auto& t = j.at("table");
    REQUIRE(t.size() == 3);
    CHECK(t[0].at("class") == "lhv");
    CHECK(t[0].at("S") == "2.000000");
    CHECK(t[0].at("success") == "0.750000");
    CHECK(t[1].at("S") == "2.828427");
    CHECK(t[1].at("success") == "0.853553");
    CHECK(t[2].at("S") == "4.000000");
    CHECK(t[2].at("success") == "1.000000");
}

TEST_CASE("choose is deterministic per seed and returns one of the options") {
    auto c = cfg("choose", 7, Format::text);
    c.option_a = "hike";
    c.option_b = "bath";
    const auto a = run_cfg(c), b = run_cfg(c);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK((a.out.find("choice: hike") != std::string::npos || a.out.find("choice: bath") != std::string::npos));

    bool saw_a = false, saw_b = false;
    for (std::uint64_t s = 0; s < 32; ++s) {
        c.seed = s;
        const auto out = run_cfg(c).out;
        saw_a |= out.find("choice: hike") != std::string::npos;
        saw_b |= out.find("choice: bath") != std::string::npos;
    }
    CHECK(saw_a);
    CHECK(saw_b);
}

TEST_CASE("audit: export a log, then audit it, then audit a corrupted copy") {
    const std::string path = "cli_test_events.json";
    auto c = cfg("audit", 3);
    c.trials = 20;
    c.events_out = path;
    CHECK(run_cfg(c).code == 0);

    auto check = cfg("audit");
    check.log_in = path;
    CHECK(run_cfg(check).code == 0);

    auto log = nlohmann::json::parse(std::ifstream(path));
    for (auto& e : log)
        if (e.at("kind") == "meet") e["time"] = 0.0;
    std::ofstream(path) << log.dump();
    CHECK(run_cfg(check).code == 1);

    std::ofstream(path) << "{ not json";
    CHECK(run_cfg(check).code == 2);
    std::remove(path.c_str());

    check.log_in = "does/not/exist.json";
    CHECK(run_cfg(check).code == 2);
}

TEST_CASE("reports are byte-identical across runs") {
    for (auto f : {Format::json, Format::csv, Format::text}) {
        auto c = cfg("parallel-lives", 11, f);
        c.trials = 50;
        CHECK(run_cfg(c).out == run_cfg(c).out);
    }
}

TEST_CASE("--out writes the report to a file") {
    auto c = cfg("mixtures");
    c.out = "cli_test_out.json";
    const auto r = run_cfg(c);
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(c.out);
    CHECK(nlohmann::json::parse(in).at("pass") == true);
    std::remove(c.out.c_str());
}
