#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "kup/cli.hpp"
#include "kup/io.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code;
    std::string out, err;
};

CliResult run(std::vector<std::string> args) {
    args.insert(args.begin(), "kup");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = kup::run_cli(int(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(KUP_DATA_DIR) + "/" + name; }

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir = fs::temp_directory_path() / ("kup_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }
    std::string tmp(const std::string& n) const { return (dir / n).string(); }
    fs::path dir;
};

}  // namespace

TEST_F(CliTest, VerifyT4OnUnknot) {
    CliResult r = run({"verify", "t4", "--link", data("unknot0.json"), "--group", "cyclic:2"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "lhs = rhs = 2\n");
}

TEST_F(CliTest, VerifyOtherRelations) {
    for (const char* rel : {"t2", "t3", "corollary"}) {
        CliResult r = run({"verify", rel, "--link", data("hopf00.json"), "--group", "cyclic:2"});
        EXPECT_EQ(r.code, 0) << rel << ": " << r.err;
        EXPECT_EQ(r.out.rfind("lhs = rhs = ", 0), 0u) << r.out;
    }
    EXPECT_EQ(run({"verify", "t9", "--link", data("hopf00.json"), "--group", "cyclic:2"}).code, 1);
}

TEST_F(CliTest, KuperbergOfLens41) {
    CliResult r = run({"invariant", "kuperberg", data("lens_4_1.json"), data("z4.json")});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "4\n");
}

TEST_F(CliTest, CorruptedAlgebraNamesTheAxiom) {
    CliResult r = run({"algebra", "check", data("corrupted.json")});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE((r.out + r.err).find("left antipode"), std::string::npos) << r.out << r.err;
}

TEST_F(CliTest, CheckPassesOnShippedAlgebras) {
    for (const char* f : {"z2.json", "z3.json", "z4.json", "s3.json", "z3_f7.json"}) {
        CliResult r = run({"algebra", "check", data(f)});
        EXPECT_EQ(r.code, 0) << f << ": " << r.err;
    }
}

TEST_F(CliTest, WrongCharacteristicIsAnObstruction) {
    CliResult r = run({"algebra", "group", "--cyclic", "2", "--field", "2", "--out", tmp("bad.json")});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("NotNormalizable"), std::string::npos) << r.err;
}

TEST_F(CliTest, GroupAlgebraRoundTrip) {
    ASSERT_EQ(run({"algebra", "group", "--symmetric", "3", "--out", tmp("s3.json")}).code, 0);
    EXPECT_EQ(slurp(tmp("s3.json")), slurp(data("s3.json")));
    auto loaded = kup::io::load_algebra(kup::io::read_json_file(tmp("s3.json")));
    EXPECT_EQ(kup::io::to_json(loaded.h, loaded.group ? &*loaded.group : nullptr).dump(2) + "\n", slurp(tmp("s3.json")));
    // product and table specs
    ASSERT_EQ(run({"algebra", "group", "--table", data("klein_table.json"), "--out", tmp("k.json")}).code, 0);
    EXPECT_EQ(run({"algebra", "check", tmp("k.json")}).code, 0);
}

TEST_F(CliTest, DoubleFileRoundTripAndUse) {
    ASSERT_EQ(run({"algebra", "double", data("z2.json"), "--out", tmp("d2.json")}).code, 0);
    ASSERT_EQ(run({"algebra", "double", data("z2.json"), "--out", tmp("d2b.json")}).code, 0);
    EXPECT_EQ(slurp(tmp("d2.json")), slurp(tmp("d2b.json")));
    CliResult h = run({"invariant", "hennings", data("hopf00.json"), tmp("d2.json")});
    EXPECT_EQ(h.code, 0) << h.err;
    auto j = nlohmann::ordered_json::parse(h.out);
    CliResult b = run({"invariant", "bracket", data("hopf00_diagram.json"), data("z2.json")});
    EXPECT_EQ(b.code, 0) << b.err;
    EXPECT_EQ(j["value"].get<std::string>() + "\n", b.out);
    EXPECT_EQ(j["components"], 2);
    EXPECT_EQ(j["signature"], 0);
}

TEST_F(CliTest, DiagramPipeline) {
    ASSERT_EQ(run({"diagram", "from-link", data("hopf00.json"), "--out", tmp("h.json")}).code, 0);
    EXPECT_EQ(slurp(tmp("h.json")), slurp(data("hopf00_diagram.json")));
    EXPECT_EQ(run({"diagram", "validate", tmp("h.json")}).code, 0);
    ASSERT_EQ(run({"diagram", "move", tmp("h.json"), "--move", "stabilize", "--move", "basepoint:b0:1", "--out",
                   tmp("h2.json")})
                  .code,
              0);
    CliResult b1 = run({"invariant", "bracket", tmp("h.json"), data("z2.json")});
    CliResult b2 = run({"invariant", "bracket", tmp("h2.json"), data("z2.json")});
    EXPECT_EQ(b1.out, b2.out);
    ASSERT_EQ(run({"diagram", "surgery", tmp("h2.json"), "--out", tmp("m.json")}).code, 0);
    CliResult k = run({"invariant", "kuperberg", tmp("m.json"), data("z2.json")});
    EXPECT_EQ(k.code, 0) << k.err;
    EXPECT_EQ(k.out, b1.out);
    // one component only: a link remains, so kuperberg refuses
    ASSERT_EQ(run({"diagram", "surgery", tmp("h.json"), "--component", "0", "--out", tmp("m1.json")}).code, 0);
    EXPECT_EQ(run({"invariant", "kuperberg", tmp("m1.json"), data("z2.json")}).code, 1);
}

TEST_F(CliTest, DiagramJsonRoundTrip) {
    for (const char* f : {"lens_4_1.json", "hopf00_diagram.json", "unknot0_diagram.json"}) {
        auto j = kup::io::read_json_file(data(f));
        EXPECT_EQ(kup::io::to_json(kup::io::diagram_from(j)), j) << f;
    }
    for (const char* f : {"unknot0.json", "trefoil_p1.json", "unlink_2_0.json"}) {
        auto j = kup::io::read_json_file(data(f));
        EXPECT_EQ(kup::io::to_json(kup::io::planar_from(j)), j) << f;
    }
}

TEST_F(CliTest, InvalidInputs) {
    EXPECT_EQ(run({"diagram", "validate", data("z2.json")}).code, 1);
    EXPECT_EQ(run({"invariant", "kuperberg", data("nope.json"), data("z2.json")}).code, 1);
    EXPECT_EQ(run({"diagram", "move", data("lens_4_1.json"), "--move", "cancel:0:1", "--out", tmp("x.json")}).code, 1);
    EXPECT_EQ(run({"frobnicate"}).code, 1);
}

TEST_F(CliTest, ColoredTableAndSum) {
    CliResult t = run({"invariant", "colored", data("hopf00_diagram.json"), data("z2.json"), "--palette", data("z2_irreps.json")});
    EXPECT_EQ(t.code, 0) << t.err;
    std::istringstream lines(t.out);
    std::string line;
    int n = 0;
    while (std::getline(lines, line)) {
        ++n;
        const std::string v = line.substr(line.rfind(' ') + 1);
        EXPECT_TRUE(v == "1" || v == "-1") << line;
    }
    EXPECT_EQ(n, 16);
    CliResult s = run({"invariant", "colored", data("hopf00_diagram.json"), data("z2.json"), "--palette", data("z2_irreps.json"), "--sum"});
    EXPECT_EQ(s.code, 0) << s.err;
    CliResult c = run({"invariant", "bracket", data("hopf00_diagram.json"), data("z2.json"), "--colors", data("hopf_colors.json")});
    EXPECT_EQ(c.code, 0) << c.err;
}
