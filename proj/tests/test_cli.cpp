#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include <tcmnet/dataio.hpp>
#include <tcmnet/graph.hpp>

using namespace tcmnet;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("tcmnet_cli_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const {
        return (path / name).string();
    }
};

struct RunResult {
    int exit_code = -1;
    std::string output; // stdout and stderr interleaved
};

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    fs::path cap = fs::temp_directory_path() /
                   ("tcmnet_cli_out_" + std::to_string(++counter) + ".txt");
    std::string cmd = std::string(TCMNET_CLI_PATH) + " " + args + " > " +
                      cap.string() + " 2>&1";
    int status = std::system(cmd.c_str());
    RunResult res;
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(cap);
    res.output = {std::istreambuf_iterator<char>(in),
                  std::istreambuf_iterator<char>()};
    fs::remove(cap);
    return res;
}

std::string read_text(const std::string& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Value of "key=<number>" in a key=value output line.
double value_of(const std::string& text, const std::string& key) {
    std::size_t pos = text.find(key + "=");
    REQUIRE(pos != std::string::npos);
    return std::stod(text.substr(pos + key.size() + 1));
}

} // namespace

TEST_CASE("generate writes a network of about the right size") {
    TempDir dir;
    std::string out = dir.file("g.edges");
    RunResult res = run_cli("generate --n 1000 --degree poisson:6 --seed 1 --out " + out);
    REQUIRE(res.exit_code == 0);
    Graph g = read_edge_list(out);
    CHECK(g.node_count() == 1000);
    CHECK(g.edge_count() > 2700);
    CHECK(g.edge_count() < 3300);

    RunResult tiny = run_cli("generate --n 2 --degree const:1 --seed 1 --out " +
                             dir.file("tiny.edges"));
    REQUIRE(tiny.exit_code == 0);
    CHECK(read_edge_list(dir.file("tiny.edges")).edge_count() == 1);

    RunResult odd = run_cli("generate --n 3 --degree const:1 --seed 1 --out " +
                            dir.file("odd.edges"));
    REQUIRE(odd.exit_code == 0);
    CHECK(odd.output.find("degree sum was odd") != std::string::npos);
}

TEST_CASE("a frozen sequence estimates at one") {
    TempDir dir;
    std::string edges = dir.file("g.edges");
    std::string tel = dir.file("seq.tel");
    REQUIRE(run_cli("generate --n 200 --degree poisson:6 --seed 5 --out " + edges)
                .exit_code == 0);
    REQUIRE(run_cli("evolve --input " + edges + " --model m1:1.0 --steps 4 "
                    "--seed 6 --out " + tel)
                .exit_code == 0);
    RunResult est = run_cli("estimate --input " + tel + " --model m1");
    REQUIRE(est.exit_code == 0);
    CHECK(value_of(est.output, "z1") == doctest::Approx(1.0));
    CHECK(value_of(est.output, "zbar") == doctest::Approx(1.0));
}

TEST_CASE("same seed, same bytes") {
    TempDir dir;
    std::string a = dir.file("a.tel"), b = dir.file("b.tel"), c = dir.file("c.tel");
    std::string edges = dir.file("g.edges");
    run_cli("generate --n 300 --degree poisson:6 --seed 9 --out " + edges);
    run_cli("evolve --input " + edges + " --model m2:1,4:2 --steps 10 --seed 4 --out " + a);
    run_cli("evolve --input " + edges + " --model m2:1,4:2 --steps 10 --seed 4 --out " + b);
    run_cli("evolve --input " + edges + " --model m2:1,4:2 --steps 10 --seed 5 --out " + c);
    CHECK(read_text(a) == read_text(b));
    CHECK(read_text(a) != read_text(c));
}

TEST_CASE("distance of a distribution to itself is zero") {
    TempDir dir;
    std::string edges = dir.file("g.edges");
    run_cli("generate --n 100 --degree poisson:4 --seed 2 --out " + edges);
    std::string deg = dir.file("g.deg");
    write_degree_distribution(degree_distribution(read_edge_list(edges)), deg);
    RunResult via_deg = run_cli("distance --a " + deg + " --b " + deg + " --metric tv");
    REQUIRE(via_deg.exit_code == 0);
    CHECK(std::stod(via_deg.output) == 0.0);
    // edge lists are accepted directly and can mix with distribution files
    RunResult mixed = run_cli("distance --a " + edges + " --b " + deg +
                              " --metric hellinger");
    REQUIRE(mixed.exit_code == 0);
    CHECK(std::stod(mixed.output) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("analytic numbers come out on stdout") {
    RunResult res = run_cli("rstar --degree poisson:6 --beta 0.05 --gamma 0.2 --p 1");
    REQUIRE(res.exit_code == 0);
    double tau = value_of(res.output, "tau");
    CHECK(tau == doctest::Approx(0.05 / 0.24));
    CHECK(value_of(res.output, "rstar") == doctest::Approx(tau * 6.0));
    CHECK(value_of(res.output, "r0") == doctest::Approx(tau * 6.0));
}

TEST_CASE("sir writes the declared trace files") {
    TempDir dir;
    std::string counts = dir.file("counts.csv"), nodes = dir.file("nodes.csv");
    RunResult res = run_cli(
        "sir --n 500 --degree poisson:6 --model m1:0.8 --beta 0.3 --gamma 0.2 "
        "--seed 11 --counts " + counts + " --nodes " + nodes);
    REQUIRE(res.exit_code == 0);
    std::string counts_text = read_text(counts);
    CHECK(counts_text.rfind("step,S,I,R\n", 0) == 0);
    CHECK(read_text(nodes).rfind("node,infected_at,recovered_at,infector\n", 0) == 0);
    CHECK(value_of(res.output, "total_infected") >= 1.0);
}

TEST_CASE("exit codes sort errors by kind") {
    TempDir dir;
    CHECK(run_cli("estimate --input " + dir.file("nope.tel") + " --model m1")
              .exit_code == 2);
    CHECK(run_cli("evolve --input x --model m9 --steps 1").exit_code == 1);
    CHECK(run_cli("nonsense").exit_code == 1);
    CHECK(run_cli("generate --n 10").exit_code == 1); // missing --degree
    CHECK(run_cli("").exit_code == 1);                // subcommand required

    // a frozen sequence has moments on the feasibility boundary
    std::ofstream(dir.file("frozen.tel"))
        << "# nodes=4 steps=2\n0\t0\t1\n0\t2\t3\n1\t0\t1\n1\t2\t3\n2\t0\t1\n2\t2\t3\n";
    RunResult inf = run_cli("estimate --input " + dir.file("frozen.tel") +
                            " --model m2");
    CHECK(inf.exit_code == 3);
    CHECK(inf.output.find("error:") != std::string::npos);
}

TEST_CASE("reproduce emits the drift trace csv") {
    TempDir dir;
    RunResult res = run_cli("reproduce figure1 --seed 7 --out-dir " +
                            (dir.path / "fresh" / "nested").string());
    REQUIRE(res.exit_code == 0);
    std::string csv = read_text(dir.path / "fresh" / "nested" / "figure1.csv");
    CHECK(csv.find("step,alive,min,q1,median,q3,max") != std::string::npos);
    CHECK(csv.find("seed=7") != std::string::npos);
    double first = value_of(res.output, "median_first_step");
    double last = value_of(res.output, "median_last_step");
    CHECK(last > first);

    RunResult rerun = run_cli("reproduce figure1 --seed 7 --out-dir " +
                              (dir.path / "fresh" / "nested").string());
    REQUIRE(rerun.exit_code == 0);
    CHECK(read_text(dir.path / "fresh" / "nested" / "figure1.csv") == csv);
}

TEST_CASE("reproduce refuses table4 without data") {
    RunResult res = run_cli("reproduce table4");
    CHECK(res.exit_code == 1);
    CHECK(res.output.find("--pings") != std::string::npos);
}

TEST_CASE("config file fills flags that the command line omits") {
    TempDir dir;
    std::string cfg = dir.file("run.toml");
    std::ofstream(cfg) << "[rstar]\ndegree=\"poisson:6\"\nbeta=0.05\ngamma=0.2\np=0\n";
    RunResult res = run_cli("--config " + cfg + " rstar");
    REQUIRE(res.exit_code == 0);
    CHECK(value_of(res.output, "rstar") == doctest::Approx(1.7));
}
