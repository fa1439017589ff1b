#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gbq/experiments.hpp"

using namespace gbq;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempRoot {
    std::string path;
    TempRoot(const char* name) {
        path = (fs::temp_directory_path() / name).string();
        fs::remove_all(path);
    }
    ~TempRoot() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("simulate: smooth short run passes and is reproducible") {
    TempRoot root("gbq_exp_sim");
    auto c = cfg::Config::parse_text(
        "M = 256\nL = 80\nk = 1\ndt = 2e-3\nT = 0.2\ndata = gaussian\n"
        "amplitude = 1.0\nwidth = 4\nobserver_stride = 10\nN_list = 8\n");
    const auto r1 = exp::cmd_simulate(c, root.path);
    CHECK(r1.exit_code == 0);
    CHECK(r1.record["pass"].get<bool>());

    const std::string series1 = slurp(r1.run_dir + "/series.csv");
    CHECK(series1.rfind("t,E,E_rel_drift,H1,Hs0.9,L2kp2,EIu_N8\n", 0) == 0);

    // re-run from the embedded config echo: bit-identical CSV
    const auto echoed = cfg::Config::parse_file(r1.run_dir + "/config.echo");
    const auto r2 = exp::cmd_simulate(echoed, root.path);
    CHECK(r2.run_dir != r1.run_dir);
    CHECK(slurp(r2.run_dir + "/series.csv") == series1);
}

TEST_CASE("simulate: zero data exits cleanly") {
    TempRoot root("gbq_exp_zero");
    auto c = cfg::Config::parse_text(
        "M = 64\nL = 80\ndt = 0.01\nT = 0.05\ndata = gaussian\namplitude = 0\n");
    const auto r = exp::cmd_simulate(c, root.path);
    CHECK(r.exit_code == 0);
}

TEST_CASE("drift-scaling validates its N list") {
    TempRoot root("gbq_exp_drift");
    auto bad = cfg::Config::parse_text("M = 256\nL = 16\nN_list = 8,12,32,64\n");
    CHECK_THROWS_AS((void)exp::cmd_drift_scaling(bad, root.path),
                    std::invalid_argument);
    auto few = cfg::Config::parse_text("M = 256\nL = 16\nN_list = 8,16\n");
    CHECK_THROWS_AS((void)exp::cmd_drift_scaling(few, root.path),
                    std::invalid_argument);
    auto big = cfg::Config::parse_text("M = 256\nL = 16\nN_list = 8,16,32,64\n");
    // Nyquist/8 = 6.3 here: every N is out of range
    CHECK_THROWS_AS((void)exp::cmd_drift_scaling(big, root.path),
                    std::invalid_argument);
}

TEST_CASE("drift-scaling: synthetic-size smoke run produces the record shape") {
    TempRoot root("gbq_exp_drift2");
    auto c = cfg::Config::parse_text(
        "M = 512\nL = 8\nk = 1\ns = 0.9\namplitude = 4\nxi_cut = 24\n"
        "dt = 2e-4\nT = 0.05\nensemble = 2\nN_list = 2,4,8,16\n"
        "observer_stride = 10\nseed = 1\n");
    const auto r = exp::cmd_drift_scaling(c, root.path);
    CHECK(fs::exists(r.run_dir + "/drift.csv"));
    CHECK(r.record.contains("median_fit"));
    CHECK(r.record["members"].size() == 2);
    const std::string csv = slurp(r.run_dir + "/drift.csv");
    CHECK(csv.rfind("member,N,drift\n", 0) == 0);
}

TEST_CASE("unknown experiment is rejected") {
    TempRoot root("gbq_exp_unknown");
    cfg::Config c;
    CHECK_THROWS_AS((void)exp::run_command("made-up", c, root.path),
                    std::invalid_argument);
}

TEST_CASE("GBQ_SEED overrides the configured seed") {
    TempRoot root("gbq_exp_envseed");
    auto c = cfg::Config::parse_text(
        "M = 128\nL = 16\ndata = rough\namplitude = 1\ndt = 1e-2\nT = 0.02\n"
        "seed = 1\nenergy_drift_tol = 1\n");
    setenv("GBQ_SEED", "12345", 1);
    const auto r = exp::run_command("simulate", c, root.path);
    unsetenv("GBQ_SEED");
    CHECK(r.record["config"]["seed"] == "12345");
    const auto r2 = exp::run_command("simulate", c, root.path);
    CHECK(r2.record["config"]["seed"] == "1");
    CHECK(slurp(r.run_dir + "/series.csv") != slurp(r2.run_dir + "/series.csv"));
}

TEST_CASE("growth-study formula cross-checks always hold") {
    TempRoot root("gbq_exp_growth");
    auto c = cfg::Config::parse_text(
        "M = 256\nL = 16\nk = 1\ns = 0.9\namplitude = 2\nxi_cut = 24\n"
        "dt = 1e-3\nT = 0.5\nobserver_stride = 25\n");
    const auto r = exp::cmd_growth_study(c, root.path);
    bool found = false;
    for (const auto& cr : r.record["criteria"]) {
        if (cr["name"] == "exponent_formula_s0.9_k1") {
            CHECK(cr["pass"].get<bool>());
            CHECK(cr["value"].get<double>() == doctest::Approx(0.1 / 1.4));
            found = true;
        }
    }
    CHECK(found);
    CHECK(fs::exists(r.run_dir + "/growth.csv"));
}

TEST_CASE("acl-check smoke: N = 8 passes on a small grid") {
    TempRoot root("gbq_exp_acl");
    auto c = cfg::Config::parse_text(
        "M = 256\nL = 16\nk = 1\ns = 0.9\namplitude = 4\nline_amp = 0.2\n"
        "band = 6\nN_list = 8\nfd_h = 1e-4\ndt = 2.5e-5\nsamples = 32\nseed = 2\n");
    const auto r = exp::cmd_acl_check(c, root.path);
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(r.run_dir + "/acl.csv"));
}
