#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "hodgegauss/cli/commands.hpp"

namespace fs = std::filesystem;
using hodgegauss::verify::json;

namespace {

struct Run {
    int exit = -1;
    std::string output; // stdout and stderr
};

Run cli(const std::string& args)
{
    std::string cmd = std::string(HODGEGAUSS_CLI) + " " + args + " 2>&1";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p)
        return r;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0)
        r.output.append(buf.data(), n);
    int status = pclose(p);
    r.exit = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override
    {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir = fs::temp_directory_path() / (std::string("hodgegauss_cli_") + info->name());
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    std::string out(const std::string& sub = "o") const { return "--out " + (dir / sub).string(); }
    json read(const std::string& sub, const std::string& file) const
    {
        std::ifstream in(dir / sub / file);
        return json::parse(in);
    }
    std::string slurp(const std::string& sub, const std::string& file) const
    {
        std::ifstream in(dir / sub / file, std::ios::binary);
        std::stringstream s;
        s << in.rdbuf();
        return s.str();
    }
    std::string write_config(const std::string& name, const std::string& text) const
    {
        auto p = dir / name;
        std::ofstream(p) << text;
        return p.string();
    }

    fs::path dir;
};

} // namespace

TEST_F(Cli, IkDimensions)
{
    auto r = cli("ik --backend p1 --degree 3 --k 2 " + out());
    ASSERT_EQ(r.exit, 0) << r.output;
    auto j = read("o", "ik.json");
    EXPECT_EQ(j["schema_version"], 1);
    EXPECT_EQ(j["relation_dimension"], 3);
    EXPECT_EQ(j["basis"].size(), 3u);

    r = cli("ik --backend torus --tau 0+1i --degree 3 --k 2 " + out("t"));
    ASSERT_EQ(r.exit, 0) << r.output;
    auto t = read("t", "ik.json");
    EXPECT_EQ(t["relation_dimension"], 0);
    EXPECT_EQ(t["diagnostics"]["rank"], 6);

    r = cli("ik --backend p1 --degree 1 --k 2 " + out("z"));
    ASSERT_EQ(r.exit, 0);
    EXPECT_EQ(read("z", "ik.json")["relation_dimension"], 0);
}

TEST_F(Cli, RhoConicFixture)
{
    auto r = cli("rho --backend p1 --degree 2 --point 0 " + out());
    ASSERT_EQ(r.exit, 0) << r.output;
    auto j = read("o", "rho.json");
    EXPECT_EQ(j["image"]["coordinates"], json::array({"1/2"}));
}

TEST_F(Cli, RhoOnEmptyRelationSpace)
{
    auto r = cli("rho --backend p1 --degree 1 " + out());
    EXPECT_EQ(r.exit, 1);
    EXPECT_NE(r.output.find("relation space is zero"), std::string::npos) << r.output;
}

TEST_F(Cli, TorusRhoRecordsClosednessAndIsReproducible)
{
    auto a = cli("rho --backend torus --degree 4 --grid 128 " + out("a"));
    auto b = cli("rho --backend torus --degree 4 --grid 128 " + out("b"));
    ASSERT_EQ(a.exit, 0) << a.output;
    ASSERT_EQ(b.exit, 0);
    auto j = read("a", "rho.json");
    EXPECT_TRUE(j["image"].contains("closedness_residual"));
    EXPECT_EQ(slurp("a", "rho.json"), slurp("b", "rho.json"));
}

TEST_F(Cli, VerifyLiftP1RecordsConstant)
{
    auto r = cli("verify --suite lift --backend p1 --degree 2 " + out());
    ASSERT_EQ(r.exit, 0) << r.output;
    auto j = read("o", "verify.json");
    EXPECT_EQ(j["status"], "PASS");
    EXPECT_EQ(j["reports"][0]["measured"]["constant"], "1/2");
    EXPECT_FALSE(j["reports"][0].contains("wall_seconds"));
    auto csv = slurp("o", "verify.csv");
    EXPECT_EQ(csv.rfind("check,backend,d,N,q_index,point,quantity,value\r\n", 0), 0u);
}

TEST_F(Cli, P1OutputIsByteIdentical)
{
    ASSERT_EQ(cli("verify --suite all --backend p1 --degree 3 " + out("a")).exit, 0);
    ASSERT_EQ(cli("verify --suite all --backend p1 --degree 3 " + out("b")).exit, 0);
    EXPECT_EQ(slurp("a", "verify.json"), slurp("b", "verify.json"));
    EXPECT_EQ(slurp("a", "verify.csv"), slurp("b", "verify.csv"));
}

TEST_F(Cli, WallTimeOnlyWhenRequested)
{
    ASSERT_EQ(cli("verify --suite dimensions --backend p1 --with-time " + out()).exit, 0);
    EXPECT_TRUE(read("o", "verify.json")["reports"][0].contains("wall_seconds"));
}

TEST_F(Cli, VerifyAllTorus)
{
    auto r = cli("verify --suite all --backend torus --degree 4 --grid 256 " + out());
    EXPECT_EQ(r.exit, 0) << r.output;
    auto j = read("o", "verify.json");
    EXPECT_EQ(j["status"], "PASS");
}

TEST_F(Cli, ConvergenceTable)
{
    auto r = cli("verify --suite convergence --backend torus --degree 4 --grid 64,128,256 " + out());
    ASSERT_EQ(r.exit, 0) << r.output;
    auto m = read("o", "verify.json")["reports"][0]["measured"];
    EXPECT_EQ(m["table"].size(), 3u);
    EXPECT_EQ(m["monotone"], true);
}

TEST_F(Cli, ExitCodeForFailAndInconclusive)
{
    auto fail = cli("verify --suite lift --backend torus --degree 4 --grid 64 --tol lift_spread=1e-15 " + out("f"));
    EXPECT_EQ(fail.exit, 2) << fail.output;
    auto inc = cli("verify --suite lift --backend p1 --degree 1 " + out("i"));
    EXPECT_EQ(inc.exit, 3) << inc.output;
    auto rep = cli("report " + (dir / "f" / "verify.json").string());
    EXPECT_EQ(rep.exit, 2);
    EXPECT_NE(rep.output.find("FAIL  lift (torus)"), std::string::npos);
}

TEST_F(Cli, ReportPrettyPrints)
{
    ASSERT_EQ(cli("verify --suite lift --backend p1 --degree 3 " + out()).exit, 0);
    auto r = cli("report " + (dir / "o" / "verify.json").string());
    EXPECT_EQ(r.exit, 0);
    EXPECT_NE(r.output.find("PASS  lift (p1)"), std::string::npos);
    EXPECT_NE(r.output.find("constant: \"1/2\""), std::string::npos);
}

TEST_F(Cli, ValidationErrorsNameTheConstraint)
{
    struct Case {
        std::string args, needle;
    };
    for (const auto& c : std::vector<Case>{
             {"ik --backend torus --tau 0-1i", "tau must have positive imaginary part"},
             {"ik --backend torus --grid 100", "grid N must be a power of two"},
             {"ik --backend p1 --points 0.5", "p1 points must be exact rationals"},
             {"ik --backend torus --points 1.5+0.5i", "outside the open fundamental cell"},
             {"ik --backend torus --bump-radius 0.3 --points 0.5+0.5i", "touches the chart boundary"},
             {"ik --backend spheres", "backend must be 'p1' or 'torus'"},
             {"ik --degree 0", "degree must be >= 1"},
             {"rho --k 2 --m 3", "m must satisfy 0 < m <= k"},
             {"verify --suite nope", "unknown suite 'nope'"},
             {"verify --suite twisted --backend p1", "suite 'twisted' needs backend torus"},
             {"ik --backend p1 --character 0.5,0", "character must be [0, 0] on the p1 backend"},
             {"ik --tol lift_spread=abc", "non-numeric value"},
             {"ik --tol nonsense=1", "unknown tolerance 'nonsense'"},
             {"rho --backend p1 --degree 3 --q 7", "q = 7 is out of range"},
             {"ik --backend p1 --points 1,1", "points must be distinct"},
             {"pair --backend torus", "pair command needs backend p1"},
         }) {
        auto r = cli(c.args + " " + out());
        EXPECT_EQ(r.exit, 1) << c.args;
        EXPECT_NE(r.output.find(c.needle), std::string::npos) << c.args << "\n" << r.output;
    }
}

TEST_F(Cli, ConfigFileAndFlagPrecedence)
{
    auto cfg = write_config("run.yaml", "backend: p1\ndegree: 3\nk: 2\n");
    auto r = cli("ik --config " + cfg + " " + out("a"));
    ASSERT_EQ(r.exit, 0) << r.output;
    EXPECT_EQ(read("a", "ik.json")["relation_dimension"], 3);
    r = cli("ik --config " + cfg + " --degree 2 " + out("b"));
    ASSERT_EQ(r.exit, 0);
    EXPECT_EQ(read("b", "ik.json")["relation_dimension"], 1);
}

TEST_F(Cli, ConfigErrors)
{
    auto bad_key = write_config("a.yaml", "backend: p1\ncolour: blue\n");
    auto r = cli("ik --config " + bad_key + " " + out());
    EXPECT_EQ(r.exit, 1);
    EXPECT_NE(r.output.find("unknown key 'colour'"), std::string::npos);

    auto bad_type = write_config("b.yaml", "degree: three\n");
    r = cli("ik --config " + bad_type + " " + out());
    EXPECT_EQ(r.exit, 1);
    EXPECT_NE(r.output.find("'degree' must be an integer"), std::string::npos);

    r = cli("ik --config " + (dir / "missing.yaml").string() + " " + out());
    EXPECT_EQ(r.exit, 1);
    EXPECT_NE(r.output.find("cannot read file"), std::string::npos);
}

TEST_F(Cli, PairCommand)
{
    auto r = cli("pair --E 2,3 --F 3 --point 1/2 " + out());
    ASSERT_EQ(r.exit, 0) << r.output;
    auto j = read("o", "pair.json");
    EXPECT_EQ(j["relation_dimension"], 1 * 2 + 2 * 2);
    EXPECT_EQ(j["rho"]["closed_form_agrees"], true);
}

TEST(CliConfigs, ShippedConfigsResolve)
{
    int n = 0;
    for (const auto& e : fs::directory_iterator(HODGEGAUSS_CONFIGS)) {
        if (e.path().extension() != ".yaml")
            continue;
        ++n;
        EXPECT_NO_THROW(hodgegauss::cli::resolve(hodgegauss::cli::load_config_file(e.path().string())))
            << e.path();
    }
    EXPECT_GE(n, 5);
}
