#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "magtool_app.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = magtool::run_magtool(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("magtool_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write_mag(const std::string& name, const mag::SimpleMag& g) const {
    magtool::write_file(path(name), mag::write_mcs(g));
  }

  fs::path dir_;
};

nlohmann::json last_error(const std::string& err) {
  return nlohmann::json::parse(err.substr(0, err.find('\n')));
}

}  // namespace

TEST_F(Cli, GenIsDeterministic) {
  const auto a = path("a.mcs"), b = path("b.mcs");
  ASSERT_EQ(run({"--seed", "7", "-o", a, "gen", "--aspects", "3,2"}).code, 0);
  ASSERT_EQ(run({"gen", "--aspects", "3,2", "--seed", "7", "-o", b}).code, 0);
  const auto g = mag::read_mcs(magtool::read_file(a));
  EXPECT_EQ(magtool::read_file(a), magtool::read_file(b));
  EXPECT_EQ(g, mag::generate({mag::CompanionTuple{3, 2}, 1, 2, 7}));
}

TEST_F(Cli, GenOptions) {
  const auto out = path("s.mcs");
  ASSERT_EQ(run({"--seed", "1", "-o", out, "gen", "--aspects", "6,4", "--p-edge", "1/1",
                 "--spatial"})
                .code,
            0);
  const auto g = mag::read_mcs(magtool::read_file(out));
  EXPECT_EQ(g.edge_count(), mag::spatial_position_count(6, 4));
}

TEST_F(Cli, GenRequiresSeed) {
  const auto r = run({"-o", path("x.mcs"), "gen", "--aspects", "3,2"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(last_error(r.err)["exitCode"], 2);
  EXPECT_FALSE(fs::exists(path("x.mcs")));
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"--seed", "1", "-o", path("x.mcs"), "gen", "--aspects", "3,-2"}).code, 2);
  EXPECT_EQ(run({"--seed", "1", "-o", path("x.mcs"), "gen", "--aspects", "3,2", "--p-edge",
                 "3/2"})
                .code,
            2);
  EXPECT_EQ(run({"--seed", "1", "-o", path("x.mcs"), "gen", "--aspects", "3,2,2", "--spatial"})
                .code,
            2);
  EXPECT_EQ(run({"info-gap", "--vertices", "0", "--times", "3"}).code, 2);
  EXPECT_EQ(run({"--format", "xml", "info-gap", "--vertices", "3", "--times", "3"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(Cli, MissingFileIsIoError) {
  const auto r = run({"analyze", path("nope.mcs")});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(last_error(r.err)["error"], "io");
}

TEST_F(Cli, MalformedInputIsUsageError) {
  magtool::write_file(path("bad.mcs"), std::string("MCS1\x02\x03\x02\x80", 8));
  const auto r = run({"analyze", path("bad.mcs")});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(last_error(r.err)["error"], "length");
  magtool::write_file(path("bad.magt"), std::string("mag 2 3 2\ne 0 0 0 0\n"));
  EXPECT_EQ(run({"analyze", path("bad.magt")}).code, 2);
}

TEST_F(Cli, SnapshotRoundTrip) {
  const auto g = magtest::random_spatial_tvg(9, 5, 3);
  write_mag("tvg.mcs", g);
  ASSERT_EQ(run({"-o", path("tvg.msc"), "encode-snapshot", path("tvg.mcs")}).code, 0);
  ASSERT_EQ(run({"-o", path("back.mcs"), "decode-snapshot", path("tvg.msc")}).code, 0);
  EXPECT_EQ(mag::read_mcs(magtool::read_file(path("back.mcs"))), g);
  EXPECT_EQ(8 * magtool::read_file(path("tvg.msc")).size(), mag::msc_size_bits(9, 5));
}

TEST_F(Cli, NonSpatialEdgeExitsThreeAndNamesEdge) {
  mag::SimpleMag g({3, 2});
  g.set_edge({{0, 0}, {1, 1}});
  write_mag("g.mcs", g);
  const auto r = run({"-o", path("g.msc"), "encode-snapshot", path("g.mcs")});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("\ne 0 0 1 1\n"), std::string::npos);
  EXPECT_EQ(last_error(r.err)["edge"], "e 0 0 1 1");
  EXPECT_EQ(run({"-o", path("g.msc"), "encode-snapshot", "--strip", path("g.mcs")}).code, 0);
}

TEST_F(Cli, CouplingsFlag) {
  mag::SimpleMag g({2, 3});
  for (mag::Index t = 0; t < 2; ++t)
    for (mag::Index u = 0; u < 2; ++u) g.set_edge({{u, t}, {u, t + 1}});
  write_mag("c.mcs", g);
  EXPECT_EQ(run({"-o", path("c.msc"), "encode-snapshot", path("c.mcs")}).code, 3);
  ASSERT_EQ(run({"-o", path("c.msc"), "encode-snapshot", "--couplings", path("c.mcs")}).code, 0);
  ASSERT_EQ(run({"-o", path("d.mcs"), "decode-snapshot", path("c.msc")}).code, 0);
  EXPECT_EQ(mag::read_mcs(magtool::read_file(path("d.mcs"))), g);
}

TEST_F(Cli, AnalyzeReport) {
  mag::SimpleMag g({3, 2});
  g.set_edge({{0, 0}, {1, 0}});
  g.set_edge({{1, 0}, {2, 0}});
  magtool::write_file(path("g.magt"), mag::write_magt(g));
  const auto r = run({"analyze", path("g.magt")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["edgeCount"], 2);
  EXPECT_EQ(j["diameter"], "disconnected");
  EXPECT_EQ(j["snapshotLike"], true);
  EXPECT_EQ(j["aspectSizes"], nlohmann::json::array({3, 2}));
  EXPECT_EQ(j["degrees"], nlohmann::json::array({1, 2, 1, 0, 0, 0}));

  const auto text = run({"--format", "text", "analyze", path("g.magt")});
  ASSERT_EQ(text.code, 0);
  EXPECT_NE(text.out.find("edgeCount: 2\n"), std::string::npos);
  EXPECT_NE(text.out.find("multiplexCouplings.diagonal: true\n"), std::string::npos);

  EXPECT_EQ(run({"analyze", path("g.magt"), "--aspect", "3"}).code, 2);
}

TEST_F(Cli, AnalyzeToFile) {
  write_mag("g.mcs", mag::SimpleMag({2, 2}));
  ASSERT_EQ(run({"-o", path("r.json"), "analyze", path("g.mcs")}).code, 0);
  const auto bytes = magtool::read_file(path("r.json"));
  const auto j = nlohmann::json::parse(bytes.begin(), bytes.end());
  EXPECT_EQ(j["vertexCount"], 4);
}

TEST_F(Cli, InfoGap) {
  const auto r = run({"info-gap", "--vertices", "32", "--times", "32"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["theoreticalGapBits"], 507904);
  EXPECT_TRUE(j["compressor"].is_null());
}

TEST_F(Cli, CompareInfo) {
  write_mag("g.mcs", mag::generate({mag::CompanionTuple{8, 8}, 1, 2, 2}));
  write_mag("s.mcs", magtest::random_spatial_tvg(8, 8, 2));
  write_mag("o.mcs", mag::SimpleMag({8, 7}));
  mag::SimpleMag bad({8, 8});
  bad.set_edge({{0, 0}, {1, 5}});
  write_mag("bad.mcs", bad);

  const auto r = run({"compare-info", path("g.mcs"), path("s.mcs"), "--compressor", "lzma"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["compressor"], "lzma");
  EXPECT_EQ(run({"compare-info", path("g.mcs"), path("s.mcs")}).code, 0);
  EXPECT_EQ(run({"compare-info", path("g.mcs"), path("s.mcs"), "--compressor", "bzip2"}).code, 2);
  EXPECT_EQ(run({"compare-info", path("g.mcs"), path("o.mcs")}).code, 2);
  EXPECT_EQ(run({"compare-info", path("g.mcs"), path("bad.mcs")}).code, 3);
}

TEST_F(Cli, Convert) {
  const auto g = magtest::random_mag({3, 3, 2}, 4, 0.2);
  write_mag("g.mcs", g);
  ASSERT_EQ(run({"-o", path("g.magt"), "convert", path("g.mcs")}).code, 0);
  ASSERT_EQ(run({"-o", path("h.mcs"), "convert", path("g.magt")}).code, 0);
  EXPECT_EQ(magtool::read_file(path("g.mcs")), magtool::read_file(path("h.mcs")));
  EXPECT_EQ(run({"-o", path("g.txt"), "convert", path("g.mcs")}).code, 2);
  EXPECT_EQ(run({"convert", path("g.mcs")}).code, 2);
}
