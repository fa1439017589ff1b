#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "gbq/config.hpp"
#include "gbq/runio.hpp"

using namespace gbq;
namespace fs = std::filesystem;

TEST_CASE("config parsing: sections, comments, types, lists") {
    const auto c = cfg::Config::parse_text(
        "# a comment\n"
        "[grid]\n"
        "M = 1024\n"
        "L = 80.0\n"
        "[run]\n"
        "dt = 1e-3   # trailing comment\n"
        "N_list = 8, 16, 32, 64\n"
        "traveling = true\n");
    CHECK(c.get_int("M") == 1024);
    CHECK(c.get_f64("L") == 80.0);
    CHECK(c.get_f64("dt") == 1e-3);
    CHECK(c.get_bool("traveling", false));
    CHECK(c.get_list("N_list") == std::vector<double>{8, 16, 32, 64});
    CHECK(c.get_f64("missing", 2.5) == 2.5);
    CHECK_THROWS_AS((void)c.get_str("missing"), std::runtime_error);
}

TEST_CASE("config rejects duplicates and malformed lines") {
    CHECK_THROWS_AS((void)cfg::Config::parse_text("a = 1\na = 2\n"),
                    std::runtime_error);
    CHECK_THROWS_AS((void)cfg::Config::parse_text("justtext\n"),
                    std::runtime_error);
    CHECK_THROWS_AS((void)cfg::Config::parse_text("x = abc\n").get_f64("x"),
                    std::runtime_error);
}

TEST_CASE("echo round trip") {
    auto c = cfg::Config::parse_text("b = two words\na = 1\n");
    c.set("c", "3");
    const auto c2 = cfg::Config::parse_text(c.echo());
    CHECK(c2.get_str("a") == "1");
    CHECK(c2.get_str("b") == "two words");
    CHECK(c2.get_str("c") == "3");
    CHECK(c.echo() == c2.echo());
}

TEST_CASE("csv writer emits 17 significant digits") {
    io::CsvWriter w({"a", "b"});
    w.add_row({1.0 / 3.0, 2.0});
    const std::string t = w.text();
    CHECK(t.find("a,b\n") == 0);
    CHECK(t.find("0.33333333333333331") != std::string::npos);
    CHECK_THROWS_AS(w.add_row({1.0}), std::invalid_argument);
}

TEST_CASE("run directories are versioned, never reused") {
    const std::string root =
        (fs::temp_directory_path() / "gbq_runio_test").string();
    fs::remove_all(root);
    const std::string d1 = io::make_run_dir(root);
    const std::string d2 = io::make_run_dir(root);
    CHECK(d1 != d2);
    CHECK(fs::exists(d1));
    CHECK(fs::exists(d2));
    CHECK(d1.find("run-001") != std::string::npos);
    CHECK(d2.find("run-002") != std::string::npos);
    fs::remove_all(root);
}

TEST_CASE("format_g17 round trips doubles") {
    for (double x : {1.0 / 3.0, 1e-17, 123456.789, -0.0, 2.0}) {
        const std::string s = io::format_g17(x);
        CHECK(std::stod(s) == x);
    }
}
