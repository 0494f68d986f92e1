#include <catch2/catch_amalgamated.hpp>
#include <filesystem>
#include <fstream>
#include <random>

#include "ssfilt/config.hpp"

using namespace ssfilt;
namespace fs = std::filesystem;

namespace {

struct TempConfig {
    fs::path path;
    explicit TempConfig(const std::string& body) {
        path = fs::temp_directory_path() /
               ("ssfilt_cfg_" + std::to_string(std::random_device{}()) + ".cfg");
        std::ofstream out(path);
        out << body;
    }
    ~TempConfig() {
        std::error_code ec;
        fs::remove(path, ec);
    }
};

}  // namespace

TEST_CASE("empty config file keeps all defaults") {
    TempConfig f("");
    const PipelineConfig cfg = parse_config(f.path.string());
    const PipelineConfig def;
    CHECK(cfg.filter.radius == def.filter.radius);
    CHECK(cfg.filter.epsilon == def.filter.epsilon);
    CHECK(cfg.filter.kappa == def.filter.kappa);
    CHECK(cfg.nlt.kappa_min == def.nlt.kappa_min);
    CHECK(cfg.entropy_window == def.entropy_window);
}

TEST_CASE("flash-fusion preset file parses to the documented parameters") {
    TempConfig f(
        "# flash/no-flash fusion preset\n"
        "r = 25\n"
        "epsilon = 1e-6\n"
        "iters = 10\n"
        "scale = 1\n"
        "kappa = 10\n");
    const PipelineConfig cfg = parse_config(f.path.string());
    CHECK(cfg.filter.radius == 25);
    CHECK(cfg.filter.epsilon == 1e-6);
    CHECK(cfg.filter.iterations == 10);
    CHECK(cfg.filter.scale == 1.0);
    CHECK(cfg.filter.kappa == 10.0);
}

TEST_CASE("invariant violations name the offending keys") {
    TempConfig f("kappa_min = 2\nkappa_max = 1\n");
    try {
        parse_config(f.path.string());
        FAIL("expected invalid_argument");
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        CHECK(msg.find("kappa_min") != std::string::npos);
        CHECK(msg.find("kappa_max") != std::string::npos);
    }
}

TEST_CASE("unknown keys and type mismatches are named") {
    {
        TempConfig f("no_such_key = 3\n");
        try {
            parse_config(f.path.string());
            FAIL("expected invalid_argument");
        } catch (const std::invalid_argument& e) {
            CHECK(std::string(e.what()).find("no_such_key") != std::string::npos);
        }
    }
    {
        TempConfig f("radius = abc\n");
        try {
            parse_config(f.path.string());
            FAIL("expected invalid_argument");
        } catch (const std::invalid_argument& e) {
            CHECK(std::string(e.what()).find("radius") != std::string::npos);
        }
    }
    {
        TempConfig f("radius = 2.5\n");
        CHECK_THROWS_AS(parse_config(f.path.string()), std::invalid_argument);
    }
    {
        TempConfig f("weights = sometimes\n");
        try {
            parse_config(f.path.string());
            FAIL("expected invalid_argument");
        } catch (const std::invalid_argument& e) {
            CHECK(std::string(e.what()).find("weights") != std::string::npos);
        }
    }
}

TEST_CASE("comments, aliases and later-wins overriding") {
    TempConfig f(
        "radius = 3   # inline comment\n"
        "eps = 0.5\n"
        "t0 = 0.25\n"
        "c = 8\n"
        "weights = uniform\n"
        "color = hsv\n"
        "radius = 7\n");
    const PipelineConfig cfg = parse_config(f.path.string());
    CHECK(cfg.filter.radius == 7);
    CHECK(cfg.filter.epsilon == 0.5);
    CHECK(cfg.nlt.midpoint == 0.25);
    CHECK(cfg.nlt.growth == 8.0);
    CHECK(cfg.filter.weights == WeightMode::Uniform);
    CHECK(cfg.filter.color_mode == ColorMode::HsvValue);
}

TEST_CASE("missing config file raises io_error") {
    CHECK_THROWS_AS(parse_config("/nonexistent/f.cfg"), io_error);
}

TEST_CASE("epsilon <= 0 is rejected at validation") {
    TempConfig f("epsilon = 0\n");
    CHECK_THROWS_AS(parse_config(f.path.string()), std::invalid_argument);
}
