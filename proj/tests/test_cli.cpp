#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "io.hpp"
#include "support.hpp"
#include "vcell/excess.hpp"

namespace vcell::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("vcell_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    std::string write(const std::string& name, const std::string& contents) const {
        std::ofstream(path(name)) << contents;
        return path(name);
    }

    static std::string slurp(const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }

    int invoke(std::vector<std::string> args) {
        args.insert(args.begin(), "vcell");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        out_.str({});
        err_.str({});
        return run_command_line(static_cast<int>(argv.size()), argv.data(), out_, err_);
    }

    std::string lattice_file() const {
        std::string text = "# lattice patch\n";
        for (const Point& p : test::lattice_patch19()) text += format_real(p.x) + "," + format_real(p.y) + "\n";
        return write("lattice.txt", text);
    }

    fs::path dir_;
    std::ostringstream out_;
    std::ostringstream err_;
};

TEST(PointsIo, ParsesTextWithCommentsAndFullPrecision) {
    const auto pts = parse_points_text("# header\n\n 0.1,-2.5e3\r\n+1, 1.25e-1\n", "mem");
    ASSERT_EQ(pts.size(), 2u);
    EXPECT_EQ(pts[0].x, 0.1);
    EXPECT_EQ(pts[0].y, -2500.0);
    EXPECT_EQ(pts[1].x, 1.0);
}

TEST(PointsIo, ReportsBadLine) {
    try {
        parse_points_text("0,0\n1;2\n", "pts.txt");
        FAIL();
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("pts.txt:2"), std::string::npos) << e.what();
    }
    EXPECT_THROW(parse_points_text("0,0,0\n", "x"), InputError);
    EXPECT_THROW(parse_points_text("nan,0\n", "x"), InputError);
}

TEST(PointsIo, ParsesJsonPairs) {
    const auto pts = parse_points_json("[[0, 0], [2.5, -1]]", "mem.json");
    ASSERT_EQ(pts.size(), 2u);
    EXPECT_EQ(pts[1].x, 2.5);
    EXPECT_THROW(parse_points_json("[[0, 0, 1]]", "x"), InputError);
    EXPECT_THROW(parse_points_json("{", "x"), InputError);
}

TEST(PointsIo, FormatRoundTrips) {
    for (double v : {0.1, 1.0 / 3.0, -2.0 / 3.0 * 1e-300, 123456789.123456789}) {
        EXPECT_EQ(std::stod(format_real(v)), v);
    }
}

TEST_F(CliTest, VerifyLatticePasses) {
    EXPECT_EQ(invoke({"verify", "--input", lattice_file()}), kExitSuccess) << err_.str();
    EXPECT_NE(out_.str().find("0 site(s) failed"), std::string::npos);
}

TEST_F(CliTest, InadmissibleInputNamesThePair) {
    const std::string f = write("bad.txt", "0,0\n1.5,0\n");
    EXPECT_EQ(invoke({"cells", "--input", f}), kExitValidation);
    EXPECT_NE(err_.str().find("points 0 and 1"), std::string::npos) << err_.str();
    EXPECT_NE(err_.str().find("distance 1.5"), std::string::npos) << err_.str();
}

TEST_F(CliTest, ValidationErrors) {
    EXPECT_EQ(invoke({"cells", "--input", path("missing.txt")}), kExitValidation);
    EXPECT_EQ(invoke({"cells"}), kExitValidation);
    EXPECT_EQ(invoke({"decompose", "--input", lattice_file(), "--site", "99"}), kExitValidation);
    EXPECT_EQ(invoke({"decompose", "--input", lattice_file(), "--site", "10"}), kExitValidation);
    EXPECT_EQ(invoke({"counterexample", "--budget", "0.32"}), kExitValidation);
    EXPECT_EQ(invoke({"nonsense"}), kExitValidation);
    EXPECT_EQ(invoke({"--help"}), kExitSuccess);
}

TEST_F(CliTest, DecomposeWritesCsvAndSvg) {
    const std::string csv = path("w.csv"), svg = path("w.svg");
    EXPECT_EQ(invoke({"decompose", "--input", lattice_file(), "--csv", csv, "--svg", svg}),
              kExitSuccess);
    const std::string table = slurp(csv);
    EXPECT_EQ(table.rfind("wedge,vx,vy,r,", 0), 0u);
    EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 7);
    EXPECT_NE(slurp(svg).find("<polygon"), std::string::npos);
    EXPECT_NE(out_.str().find("extremal 1"), std::string::npos);
}

TEST_F(CliTest, CellsCsvIsByteDeterministic) {
    std::mt19937_64 rng(1);
    std::string text;
    for (const Point& p : test::random_packing(rng, 14.0, 200)) {
        text += format_real(p.x) + "," + format_real(p.y) + "\n";
    }
    const std::string f = write("rand.txt", text);
    ASSERT_EQ(invoke({"cells", "--input", f, "--csv", path("a.csv"), "--svg", path("a.svg")}), 0);
    ASSERT_EQ(invoke({"cells", "--input", f, "--csv", path("b.csv"), "--svg", path("b.svg")}), 0);
    EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
    EXPECT_EQ(slurp(path("a.svg")), slurp(path("b.svg")));
}

TEST_F(CliTest, JsonInput) {
    const std::string f = write("pts.json", "[[0,0],[2.2,0],[0,2.2],[-2.2,0],[0,-2.2]]");
    EXPECT_EQ(invoke({"cells", "--input", f}), kExitSuccess);
    EXPECT_NE(out_.str().find("1 bounded cells"), std::string::npos) << out_.str();
}

TEST_F(CliTest, CounterexampleRoundTrip) {
    const std::string points = path("ce.txt"), csv = path("ce.csv");
    const int status = invoke({"counterexample", "--restarts", "3", "--seed", "5", "--output",
                               points, "--csv", csv});
    EXPECT_TRUE(status == kExitSuccess || status == kExitNotFound) << err_.str();
    const auto pts = read_points(points);
    const Packing pk(pts);
    const double reported = excess(pk, 0).excess;
    const std::string table = slurp(csv);
    const auto at = table.find("# excess,");
    ASSERT_NE(at, std::string::npos);
    EXPECT_NEAR(std::stod(table.substr(at + 9)), reported, 1e-9);

    ASSERT_EQ(invoke({"cells", "--input", points, "--csv", path("cells.csv")}), kExitSuccess);
    const std::string cells = slurp(path("cells.csv"));
    const auto row = cells.find("\n0,");
    ASSERT_NE(row, std::string::npos);
    std::istringstream fields(cells.substr(row + 1));
    std::string field;
    for (int k = 0; k < 7; ++k) std::getline(fields, field, ',');
    EXPECT_NEAR(std::stod(field), reported, 1e-9);
}

TEST_F(CliTest, LooseCounterexampleExitsZero) {
    EXPECT_EQ(invoke({"counterexample", "--threshold", "2.0", "--budget", "10"}), kExitSuccess);
}

TEST_F(CliTest, TightBudgetIsNotFound) {
    EXPECT_EQ(invoke({"counterexample", "--restarts", "2", "--budget", "0.323"}), kExitNotFound);
    EXPECT_NE(out_.str().find("not found"), std::string::npos);
}

TEST_F(CliTest, MinimizeAndTheorem) {
    EXPECT_EQ(invoke({"minimize", "--n", "4", "--restarts", "2"}), kExitSuccess);
    EXPECT_NE(out_.str().find("best area 4"), std::string::npos) << out_.str();
    EXPECT_EQ(invoke({"theorem", "--max-n", "6", "--restarts", "2", "--csv", path("t.csv")}),
              kExitSuccess);
    const std::string t = slurp(path("t.csv"));
    EXPECT_NE(t.find("\n6,3.46410161513775"), std::string::npos) << t;
}

}  // namespace
}  // namespace vcell::cli
