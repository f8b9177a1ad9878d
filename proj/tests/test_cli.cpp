#include "pda/csv.hpp"
#include "pda/grid_field.hpp"
#include "pda/hje_solver.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace pda;

namespace {

struct RunResult {
    int code = 0;
    std::string out;
};

RunResult run(const std::string& args)
{
    const std::string cmd = std::string(PDA_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    RunResult r;
    if (pipe == nullptr) {
        r.code = -1;
        return r;
    }
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        r.out.append(buf.data(), got);
    }
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir_ = std::filesystem::temp_directory_path() /
               ("pda_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        std::filesystem::create_directories(dir_);
    }
    void TearDown() override { std::filesystem::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    std::filesystem::path dir_;
};

CsvTable read_table(const std::string& file)
{
    std::ifstream in(file);
    return read_csv_table(in);
}

std::string slurp(const std::string& file)
{
    std::ifstream in(file);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_F(CliTest, SortFourPointExample)
{
    std::ofstream(path("p.csv")) << "x1,x2\n0,0\n1,0\n0,1\n1,1\n";
    const auto r = run("sort -i " + path("p.csv") + " -o " + path("d.csv"));
    ASSERT_EQ(r.code, 0) << r.out;
    const auto t = read_table(path("d.csv"));
    ASSERT_EQ(t.rows.size(), 4u);
    const auto depth = t.column("depth");
    EXPECT_EQ(t.number(0, depth), 1.0);
    EXPECT_EQ(t.number(1, depth), 2.0);
    EXPECT_EQ(t.number(2, depth), 2.0);
    EXPECT_EQ(t.number(3, depth), 3.0);
    ASSERT_EQ(t.metadata.size(), 1u);
    const auto brute = run("sort -i " + path("p.csv") + " --method brute -o " + path("b.csv"));
    ASSERT_EQ(brute.code, 0) << brute.out;
    EXPECT_EQ(read_table(path("b.csv")).rows, t.rows);
}

TEST_F(CliTest, SolvedGridsReloadInBothFormats)
{
    const auto expected = solve_hje(GridField(20, 1.0)).u;
    for (const char* name : {"u.csv", "u.bin"}) {
        const auto r = run("solve-hje -u 20 -o " + path(name));
        ASSERT_EQ(r.code, 0) << r.out;
        EXPECT_EQ(load_grid(path(name)), expected) << name;
    }
    EXPECT_TRUE(std::filesystem::exists(path("u.bin.json")));
    EXPECT_EQ(run("solve-v -u 20 -o " + path("v.csv")).code, 0);
    EXPECT_EQ(run("solve-w -u 20 -o " + path("w.csv")).code, 0);
    EXPECT_EQ(load_grid(path("w.csv"))(20, 5), 1.0);
}

TEST_F(CliTest, DensityOfDyadsIntegratesToOne)
{
    std::ofstream out(path("dy.csv"));
    out << "c1,c2\n";
    for (int i = 0; i < 100; ++i) {
        out << (i % 10) / 10.0 + 0.05 << "," << (i / 10) / 10.0 + 0.05 << "\n";
    }
    out.close();
    const auto r = run("density -i " + path("dy.csv") + " -K 10 -o " + path("f.csv"));
    ASSERT_EQ(r.code, 0) << r.out;
    const auto f = load_grid(path("f.csv"));
    EXPECT_EQ(f.resolution(), 10u);
    for (std::size_t i = 0; i < 10; ++i) {
        for (std::size_t j = 0; j < 10; ++j) {
            EXPECT_NEAR(f(i, j), 1.0, 1e-12);
        }
    }
}

TEST_F(CliTest, PdeAndExactVerdictFilesShareAHeader)
{
    ASSERT_EQ(run("generate --length 80 --change-step 40 --seed 3 -o " + path("s.jsonl")).code, 0);
    const auto a = run("stream -i " + path("s.jsonl") + " --generator uniform -T 20 -K 10 --classify-all -o " +
                       path("pde.csv"));
    ASSERT_EQ(a.code, 0) << a.out;
    const auto b = run("stream -i " + path("s.jsonl") + " --generator uniform -T 20 -K 10 --classify-all --exact -o " +
                       path("exact.csv"));
    ASSERT_EQ(b.code, 0) << b.out;
    const auto pde = read_table(path("pde.csv"));
    const auto exact = read_table(path("exact.csv"));
    EXPECT_EQ(pde.header, exact.header);
    EXPECT_EQ(pde.header, (std::vector<std::string>{"t", "nu", "is_anomaly", "mu", "label", "I_size"}));
    EXPECT_EQ(pde.rows.size(), 60u);
    EXPECT_EQ(exact.rows.size(), 60u);
    EXPECT_EQ(pde.number(0, 0), 20.0);

    std::ofstream(path("m.json")) << R"([{"id":"abs_diff","component":0},{"id":"abs_diff","component":1}])";
    std::ofstream(path("plain.jsonl")) << "[0.1,0.2]\n{\"x\":[0.3,0.4]}\n[0.5,0.1]\n[0.9,0.9]\n";
    const auto c = run("stream -i " + path("plain.jsonl") + " --measures " + path("m.json") + " -T 3 -K 4");
    EXPECT_EQ(c.code, 0) << c.out;
    EXPECT_NE(c.out.find("\n3,"), std::string::npos) << c.out;
}

TEST_F(CliTest, RocFromScoredCsv)
{
    std::ofstream(path("sc.csv")) << "score,label\n0.1,0\n0.2,0\n0.8,1\n0.9,1\n";
    const auto r = run("roc -i " + path("sc.csv") + " --score score --label label -o " + path("roc.csv"));
    ASSERT_EQ(r.code, 0) << r.out;
    const auto t = read_table(path("roc.csv"));
    EXPECT_EQ(t.header, (std::vector<std::string>{"fpr", "tpr"}));
    EXPECT_NE(slurp(path("roc.csv")).find("\"auc\":1"), std::string::npos);
}

TEST_F(CliTest, ExperimentOutputsReparse)
{
    const auto r = run("experiment --length 300 --change-step 150 -T 60 -K 20 --eval-every 30 --exact -o " +
                       path("auc.csv") + " --roc-output " + path("roc.csv") + " --verdicts-output " +
                       path("v.csv"));
    ASSERT_EQ(r.code, 0) << r.out;
    for (const char* name : {"auc.csv", "roc.csv", "v.csv"}) {
        const std::string text = slurp(path(name));
        std::stringstream in(text);
        const auto t = read_csv_table(in);
        EXPECT_FALSE(t.rows.empty()) << name;
        std::stringstream again;
        write_csv_table(again, t);
        EXPECT_EQ(again.str(), text) << name;
    }
    EXPECT_EQ(read_table(path("auc.csv")).rows.size(), 8u);

    std::ofstream(path("cfg.json")) << R"({"generator":"categorical","length":260,"change_step":130,"window":60,
        "resolution":20,"eval_every":50,"test_nominal":60,"test_anomalous":20})";
    const auto c = run("experiment --config " + path("cfg.json") + " -o " + path("cat.csv"));
    ASSERT_EQ(c.code, 0) << c.out;
    EXPECT_NE(slurp(path("cat.csv")).find("\"k_counts\":[10,10]"), std::string::npos);
}

TEST_F(CliTest, ConvergenceAndTimingCommands)
{
    ASSERT_EQ(run("converge-hje -n 2000 --resolutions 10 20 -o " + path("h.csv")).code, 0);
    EXPECT_EQ(read_table(path("h.csv")).rows.size(), 2u);
    ASSERT_EQ(run("converge-vn --sizes 100 1000 10000 --trials 1 -o " + path("v.csv")).code, 0);
    EXPECT_EQ(read_table(path("v.csv")).header,
              (std::vector<std::string>{"n", "err_l1_v", "err_linf_v", "err_l1_w", "err_linf_w"}));
    ASSERT_EQ(run("timing --windows 30 60 -K 10 --pde-steps 5 --exact-steps 2 -o " + path("t.csv")).code, 0);
    EXPECT_EQ(read_table(path("t.csv")).rows.size(), 2u);
}

TEST_F(CliTest, ErrorsExitNonZero)
{
    const auto missing = run("sort -i " + path("nope.csv"));
    EXPECT_EQ(missing.code, 1);
    EXPECT_EQ(missing.out.rfind("pda: ", 0), 0u) << missing.out;
    EXPECT_NE(run("").code, 0);
    EXPECT_NE(run("sort").code, 0);
    EXPECT_NE(run("solve-hje").code, 0);
    EXPECT_NE(run("converge-vn --sizes 100 1000 --trials 1").code, 0);
    std::ofstream(path("bad.csv")) << "x1,x2\n0,abc\n";
    EXPECT_EQ(run("sort -i " + path("bad.csv")).code, 1);
}
