#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "spreadrank/graph.hpp"
#include "spreadrank/io.hpp"

namespace fs = std::filesystem;

namespace {

std::string g_cli;

std::string fx(const std::string& name) {
    return std::string(SPREADRANK_FIXTURE_DIR) + "/" + name;
}

std::string slurp_or_empty(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) return {};
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() /
               ("spreadrank_cli_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string sub(const std::string& name) const { return (path / name).string(); }
};

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

// Runs the CLI with the given argument string, capturing streams. `env`
// prefixes the command (e.g. a cache-dir override).
RunResult run_cli(const std::string& args, const TempDir& tmp, const std::string& env = {}) {
    const std::string out_f = tmp.sub("last_stdout.txt");
    const std::string err_f = tmp.sub("last_stderr.txt");
    const std::string cmd =
        (env.empty() ? "" : env + " ") + g_cli + " " + args + " >" + out_f + " 2>" + err_f;
    const int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp_or_empty(out_f);
    r.err = slurp_or_empty(err_f);
    return r;
}

int count_lines(const std::string& text) {
    int n = 0;
    for (char c : text)
        if (c == '\n') ++n;
    return n;
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
}

}  // namespace

TEST_CASE("stats subcommand") {
    TempDir tmp("stats");
    SUBCASE("triangle statistics land in both files and on stdout") {
        const auto r =
            run_cli("stats --graph " + fx("triangle.edges") + " --out " + tmp.sub("o"), tmp);
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("n=3 m=3") != std::string::npos);
        const std::string csv = slurp_or_empty(tmp.sub("o") + "/triangle.stats.csv");
        CHECK(csv == "n,m,avg_degree,transitivity,lambda_th\n3,3,2,1,1\n");
        const std::string json = slurp_or_empty(tmp.sub("o") + "/triangle.stats.json");
        CHECK(json.find("\"lambda_th\": 1.0") != std::string::npos);
    }
    SUBCASE("partition adds community figures") {
        const auto r = run_cli("stats --graph " + fx("two_triangles_bridge.edges") +
                                   " --partition " + fx("two_triangles_bridge.part") +
                                   " --out " + tmp.sub("o"),
                               tmp);
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("communities=2") != std::string::npos);
        const std::string json = slurp_or_empty(tmp.sub("o") + "/two_triangles_bridge.stats.json");
        CHECK(json.find("\"partition_provenance\": \"file\"") != std::string::npos);
    }
    SUBCASE("unreadable graph exits 2") {
        const auto r = run_cli("stats --graph /nonexistent/xx.edges --out " + tmp.sub("o"), tmp);
        CHECK(r.exit_code == 2);
        CHECK(r.err.find("error:") != std::string::npos);
    }
    SUBCASE("unparseable graph exits 2 with the line number") {
        const auto r =
            run_cli("stats --graph " + fx("bad_tokens.edges") + " --out " + tmp.sub("o"), tmp);
        CHECK(r.exit_code == 2);
        CHECK(r.err.find("line 2") != std::string::npos);
    }
}

TEST_CASE("centrality subcommand") {
    TempDir tmp("centrality");
    SUBCASE("partition required: exit 3 with guidance") {
        const auto r = run_cli(
            "centrality --graph " + fx("triangle.edges") + " --out " + tmp.sub("o"), tmp);
        CHECK(r.exit_code == 3);
        CHECK(r.err.find("--fallback-detect") != std::string::npos);
    }
    SUBCASE("unknown measure exits 2 and lists the known ids") {
        const auto r = run_cli("centrality --graph " + fx("triangle.edges") + " --partition " +
                                   fx("triangle.part") + " --measures degree --out " +
                                   tmp.sub("o"),
                               tmp);
        CHECK(r.exit_code == 2);
        CHECK(r.err.find("chb") != std::string::npos);
        CHECK(r.err.find("ksc") != std::string::npos);
    }
    SUBCASE("single community collapses cbc to plain degree") {
        write_text(tmp.sub("all.part"), "a X\nb X\nc X\nd X\ne X\nf X\n");
        const auto r = run_cli("centrality --graph " + fx("two_triangles_bridge.edges") +
                                   " --partition " + tmp.sub("all.part") +
                                   " --measures cbc --out " + tmp.sub("o"),
                               tmp);
        CHECK(r.exit_code == 0);
        const auto rows =
            spreadrank::read_centrality_csv(tmp.sub("o") + "/two_triangles_bridge.cbc.csv");
        REQUIRE(rows.size() == 6);
        for (const auto& row : rows) {
            if (row.node == "c" || row.node == "d") CHECK(row.score == 3.0);
            else CHECK(row.score == 2.0);
        }
    }
    SUBCASE("every default measure writes a file") {
        const auto r = run_cli("centrality --graph " + fx("two_cliques10.edges") +
                                   " --partition " + fx("two_cliques10.part") + " --out " +
                                   tmp.sub("o"),
                               tmp);
        CHECK(r.exit_code == 0);
        for (const char* id : {"chb", "pc", "cbm", "comm", "mv", "cbc", "ksc"})
            CHECK(fs::exists(tmp.sub("o") + "/two_cliques10." + std::string(id) + ".csv"));
        CHECK(count_lines(r.out) == 7);  // one "wrote ..." line each
    }
    SUBCASE("fallback detection fills in a partition and says so") {
        const auto r = run_cli("centrality --graph " + fx("two_cliques10.edges") +
                                   " --fallback-detect --measures pc --out " + tmp.sub("o"),
                               tmp);
        CHECK(r.exit_code == 0);
        CHECK(r.err.find("label-propagation fallback (2 communities)") != std::string::npos);
    }
}

TEST_CASE("sir subcommand") {
    TempDir tmp("sir");
    SUBCASE("lambda 0 pins every mean outbreak at 1") {
        const auto r = run_cli("sir --graph " + fx("triangle.edges") +
                                   " --lambda 0 --runs 40 --out " + tmp.sub("o"),
                               tmp);
        CHECK(r.exit_code == 0);
        const std::string csv = slurp_or_empty(tmp.sub("o") + "/triangle.spread.csv");
        CHECK(csv.find("a,1,0,0,40") != std::string::npos);
        CHECK(csv.find("b,1,0,0,40") != std::string::npos);
    }
    SUBCASE("lambda 1 floods the triangle") {
        const auto r = run_cli("sir --graph " + fx("triangle.edges") +
                                   " --lambda 1 --runs 40 --out " + tmp.sub("o"),
                               tmp);
        CHECK(r.exit_code == 0);
        const std::string csv = slurp_or_empty(tmp.sub("o") + "/triangle.spread.csv");
        CHECK(csv.find("a,3,0,1,40") != std::string::npos);
    }
    SUBCASE("undefined threshold without --lambda exits 2") {
        write_text(tmp.sub("edge.edges"), "a b\n");
        const auto r =
            run_cli("sir --graph " + tmp.sub("edge.edges") + " --out " + tmp.sub("o"), tmp);
        CHECK(r.exit_code == 2);
        CHECK(r.err.find("--lambda") != std::string::npos);
    }
    SUBCASE("second run reuses the cache unless forced") {
        const std::string args = "sir --graph " + fx("two_cliques10.edges") +
                                 " --lambda 0.3 --runs 100 --out " + tmp.sub("o");
        const auto first = run_cli(args, tmp);
        CHECK(first.exit_code == 0);
        CHECK(first.err.find("reusing cached") == std::string::npos);
        const auto second = run_cli(args, tmp);
        CHECK(second.exit_code == 0);
        CHECK(second.err.find("reusing cached") != std::string::npos);
        const auto forced = run_cli(args + " --force", tmp);
        CHECK(forced.exit_code == 0);
        CHECK(forced.err.find("reusing cached") == std::string::npos);
    }
    SUBCASE("corrupt cache entry is refused, --force heals it") {
        const std::string cache = tmp.sub("cache");
        fs::create_directories(cache);
        spreadrank::Graph g = spreadrank::load_edge_list_file(fx("triangle.edges"), {}, nullptr);
        spreadrank::SirConfig cfg;
        cfg.lambda = 0.5;
        cfg.runs = 30;
        cfg.master_seed = 1;  // the CLI default seed
        const std::string entry =
            cache + "/" + spreadrank::spread_cache_name(g.content_hash(), cfg);
        write_text(entry, "not a cache file");
        const std::string env = "SPREADRANK_CACHE_DIR=" + cache;
        const std::string args = "sir --graph " + fx("triangle.edges") +
                                 " --lambda 0.5 --runs 30 --out " + tmp.sub("o");
        const auto broken = run_cli(args, tmp, env);
        CHECK(broken.exit_code == 1);
        CHECK(broken.err.find("--force") != std::string::npos);
        const auto healed = run_cli(args + " --force", tmp, env);
        CHECK(healed.exit_code == 0);
        const auto reused = run_cli(args, tmp, env);
        CHECK(reused.exit_code == 0);
        CHECK(reused.err.find("reusing cached") != std::string::npos);
    }
}

TEST_CASE("evaluate subcommand") {
    TempDir tmp("evaluate");
    const std::string net1 = fx("two_cliques10.edges");
    const std::string part1 = fx("two_cliques10.part");
    SUBCASE("no graph and no aggregate exits 4") {
        const auto r = run_cli("evaluate --out " + tmp.sub("o"), tmp);
        CHECK(r.exit_code == 4);
        CHECK(r.err.find("run `stats`/`centrality`/`sir` first") != std::string::npos);
    }
    SUBCASE("aggregate without inputs exits 4") {
        const auto r = run_cli("evaluate --aggregate --out " + tmp.sub("o"), tmp);
        CHECK(r.exit_code == 4);
    }
    SUBCASE("aggregate with a missing file exits 4 and names it") {
        const auto r =
            run_cli("evaluate --aggregate " + tmp.sub("absent.csv") + " --out " + tmp.sub("o"),
                    tmp);
        CHECK(r.exit_code == 4);
        CHECK(r.err.find("absent.csv") != std::string::npos);
    }
    SUBCASE("single rate evaluation emits the full factorial") {
        const auto r = run_cli("evaluate --graph " + net1 + " --partition " + part1 +
                                   " --lambda 0.3 --runs 150 --p-grid 0.1,0.5 --out " +
                                   tmp.sub("o"),
                               tmp);
        CHECK(r.exit_code == 0);
        const auto rows =
            spreadrank::read_long_csv(tmp.sub("o") + "/two_cliques10.imprecision.csv");
        REQUIRE(rows.size() == 7 * 2);
        for (const auto& row : rows) {
            CHECK(row.network == "two_cliques10");
            CHECK(row.lambda == 0.3);
            CHECK(row.epsilon >= 0.0);
            CHECK(row.epsilon <= 1.0);
        }
    }
    SUBCASE("sweep mode covers five rates and the three report fractions") {
        const auto r = run_cli("evaluate --graph " + net1 + " --partition " + part1 +
                                   " --sweep --lambda 0.2 --runs 100 --measures pc --out " +
                                   tmp.sub("o"),
                               tmp);
        CHECK(r.exit_code == 0);
        const auto rows =
            spreadrank::read_long_csv(tmp.sub("o") + "/two_cliques10.imprecision.csv");
        REQUIRE(rows.size() == 5 * 3);
        std::vector<double> lambdas;
        for (const auto& row : rows)
            if (lambdas.empty() || lambdas.back() != row.lambda) lambdas.push_back(row.lambda);
        CHECK(lambdas.size() == 5);
        CHECK(lambdas[2] == 0.2);
        CHECK(rows[0].p == 0.02);
        CHECK(rows[2].p == 0.2);
    }
    SUBCASE("bad p grid exits 2") {
        const auto r = run_cli("evaluate --graph " + net1 + " --partition " + part1 +
                                   " --lambda 0.3 --p-grid 0,0.5 --out " + tmp.sub("o"),
                               tmp);
        CHECK(r.exit_code == 2);
    }
    SUBCASE("aggregation across two networks") {
        const std::string net2 = fx("two_triangles_bridge.edges");
        const std::string part2 = fx("two_triangles_bridge.part");
        const std::string common =
            " --lambda 0.3 --runs 100 --p-grid 0.1,0.2 --out " + tmp.sub("o");
        CHECK(run_cli("evaluate --graph " + net1 + " --partition " + part1 + common, tmp)
                  .exit_code == 0);
        CHECK(run_cli("evaluate --graph " + net2 + " --partition " + part2 + common, tmp)
                  .exit_code == 0);
        const auto agg = run_cli("evaluate --aggregate " + tmp.sub("o") +
                                     "/two_cliques10.imprecision.csv " + tmp.sub("o") +
                                     "/two_triangles_bridge.imprecision.csv --out " +
                                     tmp.sub("agg"),
                                 tmp);
        CHECK(agg.exit_code == 0);
        const std::string csv = slurp_or_empty(tmp.sub("agg") + "/aggregate.csv");
        CHECK(count_lines(csv) == 1 + 7 * 2);
        CHECK(csv.find("measure,p,mean_eps,q1,median,q3,min,max") == 0);
        CHECK(csv.find("\nmv,") != std::string::npos);
    }
    SUBCASE("aggregate refuses mixed rates within one curve") {
        write_text(tmp.sub("mixed.csv"),
                   "network,measure,lambda,p,epsilon\n"
                   "x,pc,0.1,0.02,0.5\n"
                   "x,pc,0.2,0.1,0.5\n");
        const auto r = run_cli(
            "evaluate --aggregate " + tmp.sub("mixed.csv") + " --out " + tmp.sub("o"), tmp);
        CHECK(r.exit_code == 1);
        CHECK(r.err.find("one rate at a time") != std::string::npos);
    }
}

TEST_CASE("outputs are byte-identical across repeated runs and thread counts") {
    TempDir tmp("determinism");
    const std::string base = "evaluate --graph " + fx("two_cliques10.edges") + " --partition " +
                             fx("two_cliques10.part") + " --lambda 0.25 --runs 120 --seed 7";
    CHECK(run_cli(base + " --threads 1 --out " + tmp.sub("d1"), tmp).exit_code == 0);
    CHECK(run_cli(base + " --threads 4 --out " + tmp.sub("d2"), tmp).exit_code == 0);
    const std::string a = slurp_or_empty(tmp.sub("d1") + "/two_cliques10.imprecision.csv");
    const std::string b = slurp_or_empty(tmp.sub("d2") + "/two_cliques10.imprecision.csv");
    REQUIRE(!a.empty());
    CHECK(a == b);

    const std::string cent = "centrality --graph " + fx("two_cliques10.edges") + " --partition " +
                             fx("two_cliques10.part");
    CHECK(run_cli(cent + " --threads 1 --out " + tmp.sub("c1"), tmp).exit_code == 0);
    CHECK(run_cli(cent + " --threads 4 --out " + tmp.sub("c2"), tmp).exit_code == 0);
    for (const char* id : {"chb", "pc", "cbm", "comm", "mv", "cbc", "ksc"}) {
        const std::string f1 =
            slurp_or_empty(tmp.sub("c1") + "/two_cliques10." + std::string(id) + ".csv");
        const std::string f2 =
            slurp_or_empty(tmp.sub("c2") + "/two_cliques10." + std::string(id) + ".csv");
        REQUIRE(!f1.empty());
        CHECK(f1 == f2);
    }
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <path-to-cli> [doctest args]\n", argv[0]);
        return 1;
    }
    g_cli = argv[1];
    std::vector<char*> args{argv[0]};
    for (int i = 2; i < argc; ++i) args.push_back(argv[i]);
    doctest::Context ctx;
    ctx.applyCommandLine(static_cast<int>(args.size()), args.data());
    return ctx.run();
}
