#include "spreadrank/io.hpp"

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace spreadrank {

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp" + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw std::runtime_error("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("cannot move " + tmp + " into place");
    }
}

std::string stats_json(const StatsReport& r) {
    nlohmann::ordered_json j;
    j["n"] = r.stats.n;
    j["m"] = r.stats.m;
    j["avg_degree"] = r.stats.avg_degree;
    j["second_moment"] = r.stats.second_moment;
    if (r.stats.transitivity_defined) j["transitivity"] = r.stats.transitivity;
    else j["transitivity"] = nullptr;
    if (r.stats.threshold_defined) j["lambda_th"] = r.stats.epidemic_threshold;
    else j["lambda_th"] = nullptr;
    j["lcc_applied"] = r.lcc_applied;
    j["load"] = {{"lines_total", r.load.lines_total},
                 {"comment_lines", r.load.comment_lines},
                 {"blank_lines", r.load.blank_lines},
                 {"self_loops_dropped", r.load.self_loops_dropped},
                 {"duplicate_edges_dropped", r.load.duplicate_edges_dropped}};
    if (r.has_partition) {
        j["mixing"] = r.mixing;
        j["modularity"] = r.modularity_value;
        j["community_count"] = r.community_count;
        j["partition_provenance"] = r.partition_provenance;
    }
    return j.dump(2) + "\n";
}

std::string stats_csv(const GraphStats& s) {
    std::string out = "n,m,avg_degree,transitivity,lambda_th\n";
    out += std::to_string(s.n) + "," + std::to_string(s.m) + "," + format_double(s.avg_degree) +
           "," + format_double(s.transitivity) + "," + format_double(s.epidemic_threshold) +
           "\n";
    return out;
}

namespace {

// Node rows are always emitted in ascending original-label order.
std::vector<NodeId> label_order(const Graph& g) {
    std::vector<NodeId> order(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u) order[u] = u;
    std::sort(order.begin(), order.end(),
              [&](NodeId a, NodeId b) { return label_less(g.label(a), g.label(b)); });
    return order;
}

std::vector<std::vector<std::string>> read_csv_rows(const std::string& path,
                                                    const std::string& expect_header) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    std::vector<std::vector<std::string>> rows;
    bool saw_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!saw_header) {
            if (line != expect_header)
                throw std::runtime_error(path + ": expected header \"" + expect_header +
                                         "\", got \"" + line + "\"");
            saw_header = true;
            continue;
        }
        std::vector<std::string> cells;
        std::size_t pos = 0;
        while (true) {
            const std::size_t comma = line.find(',', pos);
            if (comma == std::string::npos) {
                cells.push_back(line.substr(pos));
                break;
            }
            cells.push_back(line.substr(pos, comma - pos));
            pos = comma + 1;
        }
        rows.push_back(std::move(cells));
    }
    if (!saw_header) throw std::runtime_error(path + ": empty file");
    return rows;
}

double parse_double(const std::string& s, const std::string& context) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error(context + ": bad number \"" + s + "\"");
    }
}

}  // namespace

std::string centrality_csv(const Graph& g, const CentralityVector& v, const Ranking& r) {
    std::vector<std::int64_t> rank_of(g.node_count());
    for (std::size_t i = 0; i < r.order.size(); ++i)
        rank_of[r.order[i]] = static_cast<std::int64_t>(i) + 1;
    std::string out = "node,score,rank\n";
    for (NodeId u : label_order(g)) {
        out += g.label(u);
        out += ',';
        out += format_double(v.scores[u]);
        out += ',';
        out += std::to_string(rank_of[u]);
        out += '\n';
    }
    return out;
}

std::vector<CentralityRow> read_centrality_csv(const std::string& path) {
    std::vector<CentralityRow> rows;
    for (const auto& cells : read_csv_rows(path, "node,score,rank")) {
        if (cells.size() != 3)
            throw std::runtime_error(path + ": expected 3 columns, got " +
                                     std::to_string(cells.size()));
        CentralityRow row;
        row.node = cells[0];
        row.score = parse_double(cells[1], path);
        row.rank = std::stoll(cells[2]);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string spread_csv(const Graph& g, const SpreadScores& s) {
    std::string out = "node,mean_outbreak,std_error,lambda,runs\n";
    const std::string lambda = format_double(s.config.lambda);
    const std::string runs = std::to_string(s.config.runs);
    for (NodeId u : label_order(g)) {
        out += g.label(u);
        out += ',';
        out += format_double(s.mean_outbreak[u]);
        out += ',';
        out += format_double(s.std_error[u]);
        out += ',';
        out += lambda;
        out += ',';
        out += runs;
        out += '\n';
    }
    return out;
}

std::string long_csv(const std::vector<LongRow>& rows) {
    std::string out = "network,measure,lambda,p,epsilon\n";
    for (const auto& r : rows) {
        out += r.network;
        out += ',';
        out += r.measure;
        out += ',';
        out += format_double(r.lambda);
        out += ',';
        out += format_double(r.p);
        out += ',';
        out += format_double(r.epsilon);
        out += '\n';
    }
    return out;
}

std::vector<LongRow> read_long_csv(const std::string& path) {
    std::vector<LongRow> rows;
    for (const auto& cells : read_csv_rows(path, "network,measure,lambda,p,epsilon")) {
        if (cells.size() != 5)
            throw std::runtime_error(path + ": expected 5 columns, got " +
                                     std::to_string(cells.size()));
        rows.push_back({cells[0], cells[1], parse_double(cells[2], path),
                        parse_double(cells[3], path), parse_double(cells[4], path)});
    }
    return rows;
}

std::vector<LongRow> to_long_rows(const std::vector<ImprecisionCurve>& curves) {
    std::vector<LongRow> rows;
    for (const auto& c : curves)
        for (std::size_t i = 0; i < c.p_grid.size(); ++i)
            rows.push_back({c.network, c.measure, c.lambda, c.p_grid[i], c.epsilon[i]});
    return rows;
}

std::string aggregate_csv(const std::vector<AggregateCurve>& aggs) {
    std::string out = "measure,p,mean_eps,q1,median,q3,min,max\n";
    for (const auto& a : aggs) {
        for (std::size_t i = 0; i < a.p_grid.size(); ++i) {
            out += a.measure;
            out += ',';
            out += format_double(a.p_grid[i]);
            out += ',';
            out += format_double(a.mean[i]);
            out += ',';
            out += format_double(a.q1[i]);
            out += ',';
            out += format_double(a.median[i]);
            out += ',';
            out += format_double(a.q3[i]);
            out += ',';
            out += format_double(a.min[i]);
            out += ',';
            out += format_double(a.max[i]);
            out += '\n';
        }
    }
    return out;
}

namespace {

constexpr char kCacheMagic[4] = {'S', 'R', 'S', 'C'};
constexpr std::uint32_t kCacheVersion = 1;

struct CacheHeader {
    char magic[4];
    std::uint32_t version;
    std::uint64_t graph_hash;
    double lambda;
    double gamma;
    std::int64_t runs;
    std::uint64_t master_seed;
    std::int64_t n;
};

std::string lambda_bits_hex(double lambda) {
    std::uint64_t bits;
    std::memcpy(&bits, &lambda, sizeof(bits));
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(bits));
    return buf;
}

}  // namespace

std::string spread_cache_name(std::uint64_t graph_hash, const SirConfig& cfg) {
    char head[17];
    std::snprintf(head, sizeof(head), "%016llx", static_cast<unsigned long long>(graph_hash));
    return std::string("spread_") + head + "_l" + lambda_bits_hex(cfg.lambda) + "_r" +
           std::to_string(cfg.runs) + "_s" + std::to_string(cfg.master_seed) + ".bin";
}

std::optional<SpreadScores> read_spread_cache(const std::string& path,
                                              std::uint64_t graph_hash, const SirConfig& cfg,
                                              std::int64_t n) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    CacheHeader h{};
    in.read(reinterpret_cast<char*>(&h), sizeof(h));
    if (!in || std::memcmp(h.magic, kCacheMagic, 4) != 0 || h.version != kCacheVersion)
        throw std::runtime_error(path +
                                 " is not a spread cache file; rerun with --force to "
                                 "overwrite it");
    if (h.graph_hash != graph_hash || h.lambda != cfg.lambda || h.gamma != cfg.gamma ||
        h.runs != cfg.runs || h.master_seed != cfg.master_seed || h.n != n)
        throw std::runtime_error(path +
                                 " was produced by a different configuration; rerun with "
                                 "--force to overwrite it");
    SpreadScores s;
    s.config = cfg;
    s.mean_outbreak.resize(static_cast<std::size_t>(h.n));
    s.std_error.resize(static_cast<std::size_t>(h.n));
    for (std::int64_t i = 0; i < h.n; ++i) {
        double pair[2];
        in.read(reinterpret_cast<char*>(pair), sizeof(pair));
        if (!in)
            throw std::runtime_error(path +
                                     " is truncated; rerun with --force to overwrite it");
        s.mean_outbreak[static_cast<std::size_t>(i)] = pair[0];
        s.std_error[static_cast<std::size_t>(i)] = pair[1];
    }
    return s;
}

void write_spread_cache(const std::string& path, std::uint64_t graph_hash,
                        const SpreadScores& scores) {
    CacheHeader h{};
    std::memcpy(h.magic, kCacheMagic, 4);
    h.version = kCacheVersion;
    h.graph_hash = graph_hash;
    h.lambda = scores.config.lambda;
    h.gamma = scores.config.gamma;
    h.runs = scores.config.runs;
    h.master_seed = scores.config.master_seed;
    h.n = static_cast<std::int64_t>(scores.mean_outbreak.size());
    std::string blob(reinterpret_cast<const char*>(&h), sizeof(h));
    for (std::size_t i = 0; i < scores.mean_outbreak.size(); ++i) {
        const double pair[2] = {scores.mean_outbreak[i], scores.std_error[i]};
        blob.append(reinterpret_cast<const char*>(pair), sizeof(pair));
    }
    atomic_write(path, blob);
}

}  // namespace spreadrank
