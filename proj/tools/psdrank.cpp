#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "psdrank/psdrank.hpp"

using namespace psdrank;
using nlohmann::json;

namespace {

struct RunConfig {
    std::string source;
    int trials = 5;
    std::uint64_t seed = 0;
    double tol = 1e-6;
    std::string format = "json";
    std::string output;
};

Graph load_graph(const std::string& source) {
    // generator token first; anything else is a file path
    try {
        return generate(source);
    } catch (const std::invalid_argument&) {
    }
    std::ifstream in(source);
    if (!in) throw std::invalid_argument("cannot open graph source '" + source + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return graph_from_edge_list(buf.str());
}

void emit(const RunConfig& cfg, const std::string& body) {
    if (cfg.output.empty()) {
        std::cout << body << "\n";
        return;
    }
    std::ofstream out(cfg.output);
    if (!out) throw std::runtime_error("cannot open output path '" + cfg.output + "'");
    out << body << "\n";
}

std::string render(const RunConfig& cfg, const json& j, const std::string& text) {
    if (cfg.format == "text") return text;
    return j.dump(2);
}

int cmd_invariants(const RunConfig& cfg) {
    Graph g = load_graph(cfg.source);
    auto tree = clique_separator_decomposition(g);
    json atoms = json::array();
    for (const auto& a : tree.atoms) atoms.push_back(a.vertices);
    json cores = json::object();
    for (int k = 1; k <= g.num_vertices(); ++k) {
        auto [kept, sub] = k_core(g, k);
        (void)sub;
        cores[std::to_string(k)] = kept.size();
        if (kept.empty()) break;
    }
    json j{{"n", g.num_vertices()},
           {"edges", g.num_edges()},
           {"clique_number", clique_number(g)},
           {"chordal", is_chordal(g)},
           {"treewidth_upper_bound", treewidth_upper_bound(g)},
           {"k_core_sizes", cores},
           {"atoms", atoms}};
    std::ostringstream t;
    t << "n " << g.num_vertices() << "\nedges " << g.num_edges() << "\nclique_number " << clique_number(g)
      << "\nchordal " << (is_chordal(g) ? "yes" : "no") << "\ntreewidth_upper_bound " << treewidth_upper_bound(g)
      << "\natoms " << tree.atoms.size();
    emit(cfg, render(cfg, j, t.str()));
    return 0;
}

int cmd_gcr(const RunConfig& cfg) {
    Graph g = load_graph(cfg.source);
    auto rep = gcr_dispatch(g, cfg.trials, cfg.seed);
    std::ostringstream t;
    if (rep.exact())
        t << "gcr " << rep.lo;
    else
        t << "gcr in [" << rep.lo << ", " << rep.hi << "]";
    t << " (method " << rep.method << ", seed " << rep.seed << ")";
    emit(cfg, render(cfg, to_json(rep), t.str()));
    return 0;
}

int cmd_mlt(const RunConfig& cfg, bool monte_carlo) {
    Graph g = load_graph(cfg.source);
    auto rep = mlt_dispatch(g, cfg.trials, cfg.seed);
    if (monte_carlo) {
        auto mc = mlt_monte_carlo(g, cfg.trials, cfg.seed, std::max(1, rep.lower), std::max(1, rep.upper), cfg.tol);
        rep.frequencies = mc.exists_frequency;
    }
    std::ostringstream t;
    if (rep.exact)
        t << "mlt " << *rep.exact;
    else
        t << "mlt in [" << rep.lower << ", " << rep.upper << "]";
    t << " (method " << rep.method << ", seed " << rep.seed << ")";
    emit(cfg, render(cfg, to_json(rep), t.str()));
    return 0;
}

int cmd_table(const RunConfig& cfg, int m_max, int n_max) {
    if (m_max < 2 || n_max < 2) throw std::invalid_argument("table: bounds must be >= 2");
    std::ostringstream out;
    out << "m,n,gcr_closed,gcr_randomized,mlt_closed,mc_frequency_at_mlt,mc_frequency_below\n";
    for (int m = 2; m <= m_max; ++m)
        for (int n = m; n <= n_max; ++n) {
            int gc = gcr_bipartite(m, n);
            int gr = gcr_randomized(complete_bipartite(m, n), cfg.trials, cfg.seed);
            int ml = mlt_bipartite(m, n);
            auto mc = mlt_monte_carlo(complete_bipartite(m, n), cfg.trials, cfg.seed, std::max(1, ml - 1), ml, cfg.tol);
            double at = mc.exists_frequency.count(ml) ? mc.exists_frequency[ml] : 0.0;
            double below = mc.exists_frequency.count(ml - 1) ? mc.exists_frequency[ml - 1] : 1.0;
            out << m << "," << n << "," << gc << "," << gr << "," << ml << "," << at << "," << below << "\n";
        }
    std::string body = out.str();
    body.pop_back();  // drop trailing newline; emit adds one
    emit(cfg, body);
    return 0;
}

int cmd_mle_check(const RunConfig& cfg) {
    std::ifstream in(cfg.source);
    if (!in) throw std::invalid_argument("cannot open partial matrix file '" + cfg.source + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
    }
    GPartialMatrix p = partial_from_json(j);
    p.validate();
    auto verdict = pd_completion_exists(p, cfg.tol, 20000, cfg.seed);
    emit(cfg, render(cfg, to_json(verdict), "verdict " + to_string(verdict.status)));
    switch (verdict.status) {
        case ExistenceStatus::Exists: return 0;
        case ExistenceStatus::NotExists: return 1;
        default: return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"PSD matrix completion toolkit: generic completion rank, maximum likelihood threshold"};
    app.require_subcommand(1);

    RunConfig cfg;
    bool monte_carlo = false;
    int m_max = 5, n_max = 12;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--trials", cfg.trials, "randomized trials per decision")->capture_default_str();
        sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
        sub->add_option("--tol", cfg.tol, "numerical tolerance")->capture_default_str();
        sub->add_option("--format", cfg.format, "json | csv | text")->capture_default_str();
        sub->add_option("--output", cfg.output, "output path (default stdout)");
    };

    auto* inv = app.add_subcommand("invariants", "graph invariants and clique-sum atoms");
    inv->add_option("source", cfg.source, "graph file or generator token")->required();
    add_common(inv);

    auto* gcr = app.add_subcommand("gcr", "generic completion rank");
    gcr->add_option("source", cfg.source, "graph file or generator token")->required();
    add_common(gcr);

    auto* mlt = app.add_subcommand("mlt", "maximum likelihood threshold");
    mlt->add_option("source", cfg.source, "graph file or generator token")->required();
    mlt->add_flag("--monte-carlo", monte_carlo, "attach Monte Carlo existence frequencies");
    add_common(mlt);

    auto* table = app.add_subcommand("table", "K_{m,n} rank/threshold table (CSV)");
    table->add_option("--m-max", m_max, "largest m")->capture_default_str();
    table->add_option("--n-max", n_max, "largest n")->capture_default_str();
    add_common(table);

    auto* mle = app.add_subcommand("mle-check", "MLE existence for a partial matrix (JSON file)");
    mle->add_option("source", cfg.source, "partial matrix JSON file")->required();
    add_common(mle);

    CLI11_PARSE(app, argc, argv);

    try {
        if (inv->parsed()) return cmd_invariants(cfg);
        if (gcr->parsed()) return cmd_gcr(cfg);
        if (mlt->parsed()) return cmd_mlt(cfg, monte_carlo);
        if (table->parsed()) return cmd_table(cfg, m_max, n_max);
        if (mle->parsed()) return cmd_mle_check(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: input: " << e.what() << "\n";
        return 10;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
