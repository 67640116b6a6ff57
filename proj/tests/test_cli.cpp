#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qforge/cli.hpp"
#include "qforge/matrix_io.hpp"
#include "qforge/recipe_io.hpp"

using namespace qforge;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

class CliTest : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("qforge_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

bool one_line(const std::string& s) { return !s.empty() && s.find('\n') == s.size() - 1; }

}  // namespace

TEST_F(CliTest, FamiliesWerner) {
    CliRun r = run({"families", "werner", "0.3333333333", "-o", path("w.txt")});
    ASSERT_EQ(r.code, 0) << r.err;
    Mat4 m = read_matrix_file(path("w.txt"));
    EXPECT_NEAR(m(0, 0).real(), 1.0 / 3, 1e-9);
    EXPECT_NEAR(m(1, 1).real(), 1.0 / 6, 1e-9);
    EXPECT_NEAR(m(2, 2).real(), 1.0 / 6, 1e-9);
    EXPECT_NEAR(m(3, 3).real(), 1.0 / 3, 1e-9);
}

TEST_F(CliTest, FamiliesErrors) {
    CliRun r = run({"families", "werner", "2.0"});
    EXPECT_EQ(r.code, 2);
    EXPECT_TRUE(one_line(r.err));
    EXPECT_NE(r.err.find("[0, 1]"), std::string::npos);
    EXPECT_EQ(run({"families", "bogus", "1"}).code, 2);
    EXPECT_EQ(run({"families", "mems"}).code, 2);
}

TEST_F(CliTest, FamiliesMemsOne) {
    ASSERT_EQ(run({"families", "mems", "1.0", "-o", path("m.txt")}).code, 0);
    Mat4 m = read_matrix_file(path("m.txt"));
    Vec4 phi = bell_phi_plus();
    EXPECT_LT(max_abs_diff(m, phi * phi.adjoint()), 1e-15);
}

TEST_F(CliTest, RandomIsSeeded) {
    ASSERT_EQ(run({"families", "random", "--seed", "7", "-o", path("a.txt")}).code, 0);
    ASSERT_EQ(run({"--seed", "7", "families", "random", "-o", path("b.txt")}).code, 0);
    ASSERT_EQ(run({"families", "random", "--seed", "8", "-o", path("c.txt")}).code, 0);
    EXPECT_EQ(slurp(path("a.txt")), slurp(path("b.txt")));
    EXPECT_NE(slurp(path("a.txt")), slurp(path("c.txt")));
}

TEST_F(CliTest, CompileSchemeOneWerner) {
    CliRun r = run({"compile", "I", "werner:0.5", "-o", path("w.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    Recipe rec = read_recipe_file(path("w.json"));
    ASSERT_EQ(rec.branches.size(), 4u);
    EXPECT_NEAR(rec.branches[0].weight, 0.625, 1e-12);
    EXPECT_NE(r.out.find("0.625"), std::string::npos);
    EXPECT_NE(r.out.find("0.125"), std::string::npos);
    EXPECT_NE(r.out.find("NLC"), std::string::npos);
}

TEST_F(CliTest, CompileSchemeFourBell) {
    CliRun r = run({"compile", "IV", "bell:0.4,0.3,0.2,0.1", "-o", path("b.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    Recipe rec = read_recipe_file(path("b.json"));
    ASSERT_EQ(rec.branches.size(), 2u);
    EXPECT_NEAR(rec.branches[1].weight, 0.1, 1e-15);
}

TEST_F(CliTest, CompileUnsupportedPairings) {
    ASSERT_EQ(run({"families", "random", "--seed", "3", "-o", path("r.txt")}).code, 0);
    CliRun r = run({"compile", "III", path("r.txt"), "-o", path("x.json")});
    EXPECT_EQ(r.code, 3);
    EXPECT_TRUE(one_line(r.err));
    EXPECT_EQ(run({"compile", "IV", path("r.txt"), "-o", path("x.json")}).code, 3);
    EXPECT_EQ(run({"compile", "III", "bell:0.4,0.3,0.2,0.1", "-o", path("x.json")}).code, 3);
    EXPECT_EQ(run({"compile", "I", path("missing.txt"), "-o", path("x.json")}).code, 2);
    EXPECT_EQ(run({"compile", "VII", "werner:0.5", "-o", path("x.json")}).code, 2);
}

TEST_F(CliTest, CompileSchemeFourAcceptsBellDiagonalMatrix) {
    ASSERT_EQ(run({"families", "werner", "0.5", "-o", path("w.txt")}).code, 0);
    ASSERT_EQ(run({"compile", "IV", path("w.txt"), "-o", path("w.json")}).code, 0);
    ASSERT_EQ(run({"simulate", "--analytic", path("w.json"), "-o", path("s.txt")}).code, 0);
    EXPECT_EQ(run({"verify", path("w.txt"), path("s.txt"), "--min-fidelity", "0.999999999"}).code, 0);
}

TEST_F(CliTest, SimulateMemsTwoThirds) {
    ASSERT_EQ(run({"compile", "III", "mems:0.6666666666666666", "-o", path("m.json")}).code, 0);
    ASSERT_EQ(run({"simulate", path("m.json"), "-o", path("m.txt")}).code, 0);
    Mat4 m = read_matrix_file(path("m.txt"));
    Mat4 expect = Mat4::Zero();
    expect(0, 0) = expect(1, 1) = expect(3, 3) = 1.0 / 3;
    Mat4 mag = m.cwiseAbs().cast<Complex>();
    EXPECT_LT(max_abs_diff(mag, expect + (Mat4() << 0, 0, 0, 1.0 / 3, 0, 0, 0, 0, 0, 0, 0, 0, 1.0 / 3, 0, 0, 0).finished()),
              1e-4);
}

TEST_F(CliTest, SimulateGridConvergence) {
    ASSERT_EQ(run({"compile", "III", "werner:0.4", "-o", path("w.json")}).code, 0);
    ASSERT_EQ(run({"simulate", path("w.json"), "-o", path("a.txt"), "--grid-n", "2049"}).code, 0);
    ASSERT_EQ(run({"simulate", path("w.json"), "-o", path("b.txt"), "--grid-n", "4097"}).code, 0);
    EXPECT_LT(max_abs_diff(read_matrix_file(path("a.txt")), read_matrix_file(path("b.txt"))), 1e-7);
    EXPECT_EQ(run({"simulate", path("w.json"), "--grid-n", "100"}).code, 2);
}

TEST_F(CliTest, SimulateEmptyStagePureRecipe) {
    std::ofstream(path("p.json")) << R"({"version": 1, "scheme": "I",
      "spectral_model": {"delta_eps": 2.99792458e12, "omega": 5.3e15, "delta_n": 0.009},
      "branches": [{"weight": 1.0, "timing_tag": 0, "seed": {"amps": [[0,0],[0.6,0],[0,0.8],[0,0]]}, "stages": []}]})";
    CliRun r = run({"simulate", path("p.json"), "-o", path("p.txt")});
    ASSERT_EQ(r.code, 0) << r.err;
    Vec4 v(0, 0.6, Complex(0, 0.8), 0);
    EXPECT_LT(max_abs_diff(read_matrix_file(path("p.txt")), v * v.adjoint()), 1e-9);
}

TEST_F(CliTest, SimulateErrors) {
    std::ofstream(path("bad.json")) << "{\"version\": 1";
    EXPECT_EQ(run({"simulate", path("bad.json")}).code, 2);
    std::ofstream(path("clash.json")) << R"({"version": 1, "scheme": "I",
      "spectral_model": {"delta_eps": 2.99792458e12, "omega": 5.3e15, "delta_n": 0.009},
      "branches": [{"weight": 0.5, "timing_tag": 0, "seed": {"theta": 0, "phi": 0}, "stages": []},
                   {"weight": 0.5, "timing_tag": 0, "seed": {"theta": 1, "phi": 0}, "stages": []}]})";
    CliRun r = run({"simulate", path("clash.json")});
    EXPECT_EQ(r.code, 4);
    EXPECT_NE(r.err.find("TimingCollision"), std::string::npos);
}

TEST_F(CliTest, Verify) {
    ASSERT_EQ(run({"families", "werner", "0.5", "-o", path("w.txt")}).code, 0);
    CliRun same = run({"verify", path("w.txt"), path("w.txt")});
    EXPECT_EQ(same.code, 0);
    EXPECT_NE(same.out.find("fidelity 1"), std::string::npos);

    ASSERT_EQ(run({"families", "d1", "1", "0", "0", "0", "1", "-o", path("hh.txt")}).code, 0);
    ASSERT_EQ(run({"families", "d1", "0", "0", "0", "1", "1", "-o", path("vv.txt")}).code, 0);
    EXPECT_EQ(run({"verify", path("hh.txt"), path("vv.txt"), "--min-fidelity", "0.5"}).code, 1);

    ASSERT_EQ(run({"compile", "I", path("w.txt"), "-o", path("w.json")}).code, 0);
    ASSERT_EQ(run({"simulate", path("w.json"), "-o", path("s.txt")}).code, 0);
    EXPECT_EQ(run({"verify", path("w.txt"), path("s.txt"), "--min-fidelity", "0.999999"}).code, 0);
    EXPECT_EQ(run({"verify", path("w.txt"), path("nope.txt")}).code, 2);
}

TEST_F(CliTest, Metrics) {
    ASSERT_EQ(run({"families", "mems", "0.6666666666666666", "-o", path("m.txt")}).code, 0);
    CliRun r = run({"metrics", path("m.txt")});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("tangle 0.444444"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("linear_entropy 0.592593"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("purity 0.555556"), std::string::npos) << r.out;
}

TEST_F(CliTest, Plane) {
    CliRun r = run({"plane", "mems", "--steps", "101", "-o", path("p.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream csv(slurp(path("p.csv")));
    std::string line;
    std::getline(csv, line);
    EXPECT_EQ(line, "param,tangle,linear_entropy");
    int rows = 0;
    bool seen = false;
    while (std::getline(csv, line)) {
        ++rows;
        double p = 0, t = 0, s = 0;
        ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf,%lf", &p, &t, &s), 3);
        if (std::abs(p - 2.0 / 3) < 0.006) {
            seen = true;
            EXPECT_NEAR(t, 0.4444, 0.01);
            EXPECT_NEAR(s, 0.5926, 0.01);
        }
    }
    EXPECT_EQ(rows, 101);
    EXPECT_TRUE(seen);

    CliRun w = run({"plane", "werner", "--steps", "2"});
    double p0, t0, s0, p1, t1, s1;
    ASSERT_EQ(std::sscanf(w.out.c_str(), "param,tangle,linear_entropy\n%lf,%lf,%lf\n%lf,%lf,%lf", &p0, &t0, &s0, &p1,
                          &t1, &s1),
              6);
    EXPECT_EQ(p0, 0.0);
    EXPECT_NEAR(t0, 0.0, 1e-12);
    EXPECT_NEAR(s0, 1.0, 1e-12);
    EXPECT_EQ(p1, 1.0);
    EXPECT_NEAR(t1, 1.0, 1e-12);
    EXPECT_NEAR(s1, 0.0, 1e-12);
    EXPECT_EQ(run({"plane", "mems", "--steps", "1"}).code, 2);
    EXPECT_EQ(run({"plane", "unknown", "--steps", "5"}).code, 2);
}

TEST_F(CliTest, Cost) {
    ASSERT_EQ(run({"compile", "III", "werner:0.5", "-o", path("w.json")}).code, 0);
    CliRun r = run({"cost", path("w.json")});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("recipe III  2"), std::string::npos) << r.out;
}

TEST_F(CliTest, PhysicalFlags) {
    ASSERT_EQ(run({"compile", "III", "werner:0.5", "-o", path("a.json"), "--delta-n", "0.02", "--l-si", "50"}).code, 0);
    Recipe r = read_recipe_file(path("a.json"));
    EXPECT_EQ(r.config.delta_n, 0.02);
    EXPECT_NEAR(r.config.spectral.coherence_length(), 50.0, 1e-12);
    ASSERT_EQ(run({"simulate", "--analytic", path("a.json"), "-o", path("a.txt")}).code, 0);
    ASSERT_EQ(run({"families", "werner", "0.5", "-o", path("w.txt")}).code, 0);
    EXPECT_EQ(run({"verify", path("w.txt"), path("a.txt"), "--min-fidelity", "0.999999999"}).code, 0);
    EXPECT_EQ(run({"compile", "III", "werner:0.5", "-o", path("b.json"), "--l-si", "-3"}).code, 2);
}

TEST_F(CliTest, BadArguments) {
    CliRun r = run({});
    EXPECT_EQ(r.code, 2);
    EXPECT_TRUE(one_line(r.err));
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, BinaryIsDeterministic) {
    std::string exe = QFORGE_CLI_PATH;
    for (const char* name : {"a", "b"}) {
        std::string cmd = exe + " families random --seed 99 -o " + path(std::string(name) + ".txt") + " && " + exe +
                          " compile II " + path(std::string(name) + ".txt") + " -o " + path(std::string(name) + ".json") +
                          " > /dev/null && " + exe + " simulate " + path(std::string(name) + ".json") + " -o " +
                          path(std::string(name) + ".out");
        ASSERT_EQ(std::system(cmd.c_str()), 0);
    }
    EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
    EXPECT_EQ(slurp(path("a.out")), slurp(path("b.out")));
    EXPECT_NE(std::system((exe + " families werner 2 2> /dev/null").c_str()), 0);
}
