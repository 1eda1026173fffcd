#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "nambu/cli.hpp"
#include "test_support.hpp"

using namespace nambu;

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    return out;
}

struct TempPath {
    std::string path;
    explicit TempPath(const std::string& name) : path("cli_test_" + name) {}
    ~TempPath() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("run config validation happens before any output", "[cli]") {
    RunConfig cfg;
    cfg.nsteps = -1;
    CHECK_THROWS_AS(validate(cfg), DomainError);
    cfg = RunConfig{};
    cfg.stride = 0;
    CHECK_THROWS_AS(validate(cfg), DomainError);
    cfg = RunConfig{};
    cfg.scheme = "TVT";
    CHECK_THROWS_AS(validate(cfg), UnknownScheme);
    cfg = RunConfig{};
    cfg.h = 2.5;
    CHECK_THROWS_AS(validate(cfg), DomainError);
    cfg = RunConfig{};
    cfg.m = -1;
    CHECK_THROWS_AS(validate(cfg), DomainError);
    CHECK_NOTHROW(validate(RunConfig{}));
}

TEST_CASE("csv output shape and determinism", "[cli]") {
    RunConfig cfg;
    cfg.nsteps = 0;
    std::ostringstream empty_run;
    write_run_csv(cfg, empty_run);
    {
        std::istringstream in(empty_run.str());
        std::string header, row, extra;
        REQUIRE(std::getline(in, header));
        CHECK(header == "t,x1,x2,x3,H,G,Hc,Gc,x3o,x3c,x3s,do,dc,ds");
        REQUIRE(std::getline(in, row));
        CHECK(split_csv_line(row).size() == 14);
        CHECK(!std::getline(in, extra));
    }

    cfg.nsteps = 500;
    cfg.stride = 50;
    std::ostringstream a, b;
    write_run_csv(cfg, a);
    write_run_csv(cfg, b);
    CHECK(a.str() == b.str());  // bit-identical reruns
    std::istringstream in(a.str());
    std::string line;
    long rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 1 + 11);  // header + samples at steps 0, 50, ..., 500
}

TEST_CASE("csv columns carry the advertised series", "[cli]") {
    RunConfig cfg;
    cfg.scheme = "12321";
    cfg.nsteps = 2000;
    cfg.stride = 10;
    std::ostringstream os;
    write_run_csv(cfg, os);
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);  // header
    double h0 = 0;
    bool first = true;
    while (std::getline(in, line)) {
        const auto f = split_csv_line(line);
        REQUIRE(f.size() == 14);
        const double t = std::stod(f[0]);
        const double hval = std::stod(f[4]);
        const double x3 = std::stod(f[3]);
        const double x3o = std::stod(f[8]);
        const double d_o = std::stod(f[11]);
        if (first) {
            h0 = hval;
            CHECK(t == 0.0);
            CHECK(d_o == 0.0);
            first = false;
        }
        CHECK(std::abs(hval - h0) <= 1e-9);     // H is conserved by 12321
        CHECK(std::abs(d_o - (x3o - x3)) <= 1e-12);
    }
}

TEST_CASE("cmd_run writes the file and reports the path", "[cli]") {
    TempPath tmp("run.csv");
    RunConfig cfg;
    cfg.nsteps = 10;
    cfg.stride = 1;
    cfg.out_path = tmp.path;
    CHECK(cmd_run(cfg) == tmp.path);
    std::ifstream in(tmp.path);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == csv_header());
}

TEST_CASE("shadow column flat for 32123", "[cli]") {
    RunConfig cfg;
    cfg.nsteps = 1000;
    cfg.stride = 1;
    std::ostringstream os;
    write_run_csv(cfg, os);
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    double max_ds = 0, max_dc = 0;
    while (std::getline(in, line)) {
        const auto f = split_csv_line(line);
        max_ds = std::max(max_ds, std::abs(std::stod(f[13])));
        max_dc = std::max(max_dc, std::abs(std::stod(f[12])));
    }
    CHECK(max_ds <= 1e-9);
    CHECK(max_dc > max_ds);
}

TEST_CASE("derive report for the ternary composition", "[cli]") {
    const std::string report = cmd_derive("12321", Rational(1), Rational(1), Rational(1));
    CHECK(report.find("v0 = ") != std::string::npos);
    CHECK(report.find("1/4*x2^2") != std::string::npos);
    CHECK(report.find("pair.0.member = yes") != std::string::npos);
    CHECK(report.find("pair.1.member = yes") != std::string::npos);
    CHECK(report.find("verdict = consistent at order h^2") != std::string::npos);

    // a nontrivial homogeneous dimension is reported
    const auto pos = report.find("dimension = ");
    REQUIRE(pos != std::string::npos);
    CHECK(std::stoi(report.substr(pos + 12)) >= 1);
}

TEST_CASE("derive report for the Verlet baselines", "[cli]") {
    const std::string report = cmd_derive("TVT", Rational(1), Rational(1), Rational(1));
    CHECK(report.find("dH = 1/12*x1^2 - 1/24*x2^2") != std::string::npos);
    CHECK(report.find("v2_matches_dH_field = yes") != std::string::npos);
    const std::string vtv = cmd_derive("VTV", Rational(1), Rational(1), Rational(1));
    CHECK(vtv.find("v2_matches_dH_field = yes") != std::string::npos);
    CHECK_THROWS_AS(cmd_derive("nope", Rational(1), Rational(1), Rational(1)), UnknownScheme);
}

TEST_CASE("table rows and drifts", "[cli]") {
    const std::string table = cmd_table(20000);
    CHECK(table.find("12321 | 1/2*x2^2 + 1/2*x3 | ") != std::string::npos);

    // identical-evolution pairs print identical formula columns
    const auto formula_cols = [&](const std::string& label) {
        const auto pos = table.find(label + " | ");
        REQUIRE(pos != std::string::npos);
        const auto end = table.find('\n', pos);
        std::string row = table.substr(pos + label.size() + 3, end - pos - label.size() - 3);
        // keep the two formula columns, drop the measured drifts
        const auto second_bar = row.find(" | ", row.find(" | ") + 3);
        return row.substr(0, second_bar);
    };
    CHECK(formula_cols("12321") == formula_cols("13231"));
    CHECK(formula_cols("21312") == formula_cols("23132"));
    CHECK(table.find("31213 | ") != std::string::npos);

    // every measured drift column is at rounding level
    std::istringstream in(table);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        const auto last = line.rfind(" | ");
        const auto prev = line.rfind(" | ", last - 1);
        CHECK(std::stod(line.substr(last + 3)) <= 1e-9);
        CHECK(std::stod(line.substr(prev + 3, last - prev - 3)) <= 1e-9);
    }
}

TEST_CASE("verify quick level passes", "[cli]") {
    std::ostringstream os;
    CHECK(cmd_verify("quick", os) == 0);
    CHECK(os.str().find("[FAIL]") == std::string::npos);
    CHECK_THROWS_AS(cmd_verify("bogus", os), DomainError);
}

TEST_CASE("a corrupted registry entry is caught", "[cli]") {
    // negative control for the drift check that backs the table and suite
    ConservedPair good = conserved_pair("32123", Rational(1), Rational(1));
    const FlowParams p{1.0, 1.0, 0.1};
    const State s0{1.0, 1.0, 1.0, 0.0};
    const SplitScheme scheme = SplitScheme::from_label("32123");
    CHECK(check_conserved_drift(good, scheme, s0, p, 2000, 1e-9).pass);

    ConservedPair corrupted = good;
    corrupted.g_c = corrupted.g_c + Poly::var(Var::h) * Poly::var(Var::h) *
                                        Poly::var(Var::x2) * Poly::var(Var::x2) / Rational(4);
    CHECK(!check_conserved_drift(corrupted, scheme, s0, p, 2000, 1e-9).pass);
}
