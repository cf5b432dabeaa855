#include "cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

namespace fs = std::filesystem;
using namespace polytour;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "polytour");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(int(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(POLYTOUR_DATA_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& content) {
    const fs::path p = fs::temp_directory_path() / ("polytour_test_" + name);
    std::ofstream(p) << content;
    return p.string();
}

} // namespace

TEST(Check, ExitCodes) {
    auto r = run({"check", data("2x2.txt")});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("even, simply-connected, S = 1 cell"), std::string::npos);
    r = run({"check", data("3x2.txt")});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("not even"), std::string::npos);
    r = run({"check", data("ring.txt")});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("not simply connected"), std::string::npos);
    EXPECT_EQ(run({"check", temp_file("bad.txt", "#?\n")}).code, 2);
    EXPECT_EQ(run({"check", "/nonexistent/region.txt"}).code, 2);
    EXPECT_EQ(run({"check"}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
}

TEST(Improve, IrregularTour) {
    const std::string path = data("4x4-irregular.tour");
    const Pseudotour in = parse_tour(cli::read_file(path));
    ASSERT_FALSE(is_regular(in));
    auto r = run({"improve", path, "--trace"});
    ASSERT_EQ(r.code, 0) << r.err;
    const Pseudotour out = parse_tour(r.out);
    EXPECT_TRUE(is_regular(out));
    EXPECT_LE(turn_count(out), turn_count(in) - 2);
    EXPECT_TRUE(r.err.starts_with("start s=1"));
    EXPECT_EQ(run({"improve", path}).out, r.out);
}

TEST(Improve, RegularTourUnchanged) {
    const std::string path = data("4x4-regular.tour");
    auto r = run({"improve", path});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(parse_tour(r.out), parse_tour(cli::read_file(path)));
    EXPECT_NE(r.err.find("already regular"), std::string::npos);
}

TEST(Improve, Errors) {
    EXPECT_EQ(run({"improve", temp_file("bad.tour", "0,0 1,0 x\n")}).code, 2);
    EXPECT_EQ(run({"improve", data("two-rings.tour")}).code, 1);
}

TEST(MinTour, Methods) {
    auto r = run({"min-tour", data("2x4.txt")});
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.starts_with("# t_min 4\n"));
    auto oracle = run({"min-tour", data("4x4.txt"), "--method", "oracle"});
    auto regular = run({"min-tour", data("4x4.txt"), "--method", "regular"});
    ASSERT_EQ(oracle.code, 0);
    ASSERT_EQ(regular.code, 0);
    EXPECT_EQ(oracle.out.substr(0, oracle.out.find('\n')), regular.out.substr(0, regular.out.find('\n')));
    const Pseudotour e = parse_tour(regular.out);
    EXPECT_TRUE(is_regular(e));
    EXPECT_EQ(e.region(), parse_region(cli::read_file(data("4x4.txt"))));
}

TEST(MinTour, LargeRegion) {
    const std::string path = data("10x10.txt");
    auto r = run({"min-tour", path, "--method", "regular"});
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(is_tour(parse_tour(r.out)));
    EXPECT_EQ(run({"min-tour", path, "--method", "oracle"}).code, 3);
    EXPECT_EQ(run({"min-tour", data("ring.txt")}).code, 1);
}

TEST(Verify, SmallCorpus) {
    const std::string json = (fs::temp_directory_path() / "polytour_test_summary.json").string();
    auto r = run({"verify", "--max-cells", "2", "--out", json});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("instances 2 passed 2 failed 0"), std::string::npos);
    EXPECT_TRUE(fs::exists(json));
    const auto summary = nlohmann::json::parse(cli::read_file(json));
    EXPECT_EQ(summary["instances"], 2);
    EXPECT_EQ(run({"verify", "--max-cells", "50"}).code, 3);
}

TEST(Render, Outputs) {
    auto r = run({"render", data("2x2.tour")});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "┌┐\n└┘\n");
    r = run({"render", data("two-rings.tour"), "--format", "svg", "--layers", "tour,turn-graph"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("<svg"), std::string::npos);
    EXPECT_EQ(run({"render", data("two-rings.tour"), "--layers", ""}).code, 2);
    EXPECT_EQ(run({"render", data("4x4.txt"), "--layers", "tour"}).code, 2);
    EXPECT_EQ(run({"render", data("4x4.txt"), "--layers", "region"}).code, 0);
}

TEST(TurnGraph, Output) {
    auto r = run({"turn-graph", data("2x2.tour")});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "diag 0 0 2 2\ndiag 0 4 2 2\ndiag 2 2 4 0\ndiag 2 2 4 4\n");
}

TEST(RoundTrip, OutputsReparse) {
    for (const char* f : {"4x4-irregular.tour", "4x4-regular.tour", "2x2.tour"}) {
        auto r = run({"improve", data(f)});
        ASSERT_EQ(r.code, 0);
        const Pseudotour once = parse_tour(r.out);
        EXPECT_EQ(parse_tour(write_tour(once)), once);
    }
}
