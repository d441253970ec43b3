#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include <siegel/cli/cli.hpp>
#include <siegel/cli/run_config.hpp>

using namespace siegel::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path temp_file(const std::string& name, const std::string& content) {
    const fs::path p = fs::temp_directory_path() / name;
    std::ofstream(p, std::ios::binary) << content;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

TEST(Cli, VerifyExamplesSucceeds) {
    const auto r = run({"verify-examples"});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(run({}).code, kExitUsage);
    EXPECT_EQ(run({"no-such-command"}).code, kExitUsage);
    EXPECT_EQ(run({"tune", "--c", "not-a-number"}).code, kExitUsage);
    EXPECT_EQ(run({"--theta", "1.5", "tune"}).code, kExitUsage);
    EXPECT_EQ(run({"render", "--c", "inf"}).code, kExitUsage);
    EXPECT_EQ(run({"boundary", "--n", "-3"}).code, kExitUsage);
}

TEST(Cli, HelpExitsZero) {
    const auto r = run({"--help"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("verify-examples"), std::string::npos);
}

TEST(Cli, DomainErrorsExitOne) {
    const auto r = run({"tune", "--c", "0,0"});
    EXPECT_EQ(r.code, kExitDomain);
    EXPECT_FALSE(r.err.empty());
    EXPECT_EQ(run({"boundary", "--c", "0.5", "--n", "1000"}).code, kExitDomain);
    EXPECT_EQ(run({"thurston-check", "--signature", "1,2"}).code, kExitDomain);
}

TEST(Cli, BoundaryCsvAndJson) {
    const auto csv = run({"boundary", "--c", "inf", "--n", "3"});
    ASSERT_EQ(csv.code, kExitOk);
    EXPECT_EQ(csv.out.substr(0, 18), "angle,re,im\n0,1,0\n");
    const auto json = run({"--json", "boundary", "--c", "inf", "--n", "2"});
    ASSERT_EQ(json.code, kExitOk);
    EXPECT_NE(json.out.find("\"samples\""), std::string::npos);
}

TEST(Cli, ThurstonCheckFromFile) {
    const auto spec = temp_file("siegel_cli_swap.json", R"({"n": 2, "preimages": [[1, 2, 1], [2, 1, 1]]})");
    const auto r = run({"--json", "thurston-check", "--spec", spec.string(), "--signature", "2,2,2,3"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("\"verdict\": \"obstruction\""), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("-1/6"), std::string::npos) << r.out;
    fs::remove(spec);
    EXPECT_EQ(run({"thurston-check", "--spec", "/nonexistent/spec.json"}).code, kExitDomain);
}

TEST(Cli, XiScanFromGridFile) {
    const auto grid = temp_file("siegel_cli_grid.csv", "re,im\ninf\n10,0\n0.5,0\n");
    const auto out = fs::temp_directory_path() / "siegel_cli_xi.csv";
    const auto r = run({"xi-scan", "--grid-file", grid.string(), "--n", "500", "--out", out.string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const std::string text = slurp(out);
    EXPECT_EQ(text.substr(0, 22), "re,im,distance,status\n");
    EXPECT_NE(text.find("infinite"), std::string::npos);
    EXPECT_NE(text.find("escaped"), std::string::npos);
    fs::remove(grid);
    fs::remove(out);
}

TEST(Cli, RenderWritesPpm) {
    const auto out = fs::temp_directory_path() / "siegel_cli_render.ppm";
    const auto r = run({"render", "--c", "inf", "--px", "16x12", "--iters", "50", "--out", out.string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const std::string bytes = slurp(out);
    EXPECT_EQ(bytes.substr(0, 13), "P6\n16 12\n255\n");
    EXPECT_EQ(bytes.size(), 13u + 16 * 12 * 3);
    fs::remove(out);
}

TEST(Cli, SeededRunsAreDeterministic) {
    const std::vector<std::string> args{"--seed", "42", "crossratio", "--c", "inf", "--n", "500", "--trials", "2000"};
    const auto a = run(args);
    const auto b = run(args);
    ASSERT_EQ(a.code, kExitOk);
    EXPECT_EQ(a.out, b.out);
    auto other = args;
    other[1] = "43";
    EXPECT_NE(run(other).out, a.out);
}

TEST(Cli, ConfigFileSuppliesDefaults) {
    RunConfig config;
    config.c = "2";
    config.samples = 7;
    config.json = true;
    const auto path = temp_file("siegel_cli_config.json", to_json(config));
    const auto from_file = run({"--config", path.string(), "boundary"});
    const auto explicit_flags = run({"--json", "boundary", "--c", "2", "--n", "7"});
    ASSERT_EQ(from_file.code, kExitOk) << from_file.err;
    EXPECT_EQ(from_file.out, explicit_flags.out);
    const auto overridden = run({"--config", path.string(), "boundary", "--n", "3"});
    EXPECT_EQ(overridden.out, run({"--json", "boundary", "--c", "2", "--n", "3"}).out);
    fs::remove(path);
    const auto bad = temp_file("siegel_cli_bad_config.json", R"({"unknown_key": 1})");
    EXPECT_EQ(run({"--config", bad.string(), "boundary"}).code, kExitUsage);
    fs::remove(bad);
}

TEST(RunConfig, JsonRoundTrip) {
    RunConfig config;
    config.theta = "0.3819660112501051";
    config.c = "3,1";
    config.tol = 1e-6;
    config.seed = 99;
    config.pixels = "64x32";
    config.trap_radius = 0.01;
    config.signature = "2,3,7";
    config.json = true;
    EXPECT_EQ(config_from_json(to_json(config)), config);
    EXPECT_EQ(config_from_json("{}"), RunConfig{});
    EXPECT_THROW(config_from_json(R"({"seed": "x"})"), UsageError);
    EXPECT_THROW(config_from_json("[1, 2]"), UsageError);
}

TEST(RunConfig, Parsers) {
    EXPECT_TRUE(parse_parameter("inf").is_infinite());
    EXPECT_EQ(parse_parameter("3,1"), siegel::SpherePoint(siegel::Complex(3.0, 1.0)));
    EXPECT_EQ(parse_complex("-2"), siegel::Complex(-2.0, 0.0));
    EXPECT_EQ(parse_pixels("64x32"), (std::pair<std::size_t, std::size_t>{64, 32}));
    EXPECT_THROW(parse_pixels("64"), UsageError);
    EXPECT_THROW(parse_pixels("0x4"), UsageError);
    EXPECT_THROW(parse_theta("0"), UsageError);
    EXPECT_NEAR(parse_theta("golden").value(), 0.6180339887498949, 1e-15);
}
