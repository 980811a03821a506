// gammadeg: mapping degrees of canonical squaring maps on compact symmetric
// spaces, computed exactly from restricted-root data.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "gammadeg/calculus.hpp"
#include "gammadeg/cohomology.hpp"
#include "gammadeg/oracle.hpp"
#include "gammadeg/report_json.hpp"

namespace gd = gammadeg;

namespace {

struct CliConfig {
    std::string catalog_path;
    std::uint64_t seed = 0;
    std::string format = "md";
    bool verbose = false;
    bool force_full = false;
    int threads = 1;
};

gd::EngineOptions engine_options(const CliConfig& cfg) {
    gd::EngineOptions o;
    o.threads = cfg.threads;
    o.force_full = cfg.force_full;
    o.collect_preimages = cfg.verbose;
    return o;
}

gd::Catalog load_catalog(const CliConfig& cfg) {
    std::string path = cfg.catalog_path;
    if (path.empty()) {
        if (const char* env = std::getenv("GAMMADEG_CATALOG")) path = env;
    }
    gd::Catalog cat = path.empty() ? gd::builtin_catalog() : gd::load(path);
    if (const auto bad = gd::validate(cat); !bad.empty()) {
        std::string msg = "catalog validation failed:";
        for (const auto& b : bad) msg += "\n  " + b;
        throw gd::DataError(msg);
    }
    return cat;
}

std::string mult_summary(const gd::SpaceDescriptor& d) {
    std::vector<int> mults;
    for (const auto& r : d.system.roots)
        if (std::find(mults.begin(), mults.end(), r.multiplicity) == mults.end())
            mults.push_back(r.multiplicity);
    std::sort(mults.begin(), mults.end());
    if (mults.empty()) return "-";
    std::string s;
    for (std::size_t i = 0; i < mults.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(mults[i]);
    }
    return s;
}

int cmd_list(const CliConfig& cfg) {
    const auto cat = load_catalog(cfg);
    std::cout << "| name | family | rank | dim |\n|---|---|---|---|\n";
    for (const auto& e : cat.entries)
        std::cout << "| " << e.name << " | " << gd::family_name(e.family) << " | " << e.rank
                  << " | " << e.dimension << " |\n";
    return 0;
}

int cmd_info(const CliConfig& cfg, const std::string& name) {
    const auto cat = load_catalog(cfg);
    const auto* e = cat.find(name);
    if (!e) {
        std::cerr << "unknown space '" << name << "'\n";
        return 2;
    }
    std::cout << "name: " << e->name << "\n"
              << "family: " << gd::family_name(e->family) << "\n"
              << "rank: " << e->rank << "\n"
              << "dimension: " << e->dimension << "\n"
              << "parity: " << (e->parity == gd::ParityType::Inner ? "inner" : "outer") << "\n"
              << "connected_isotropy: " << (e->connected_isotropy ? "true" : "false") << "\n"
              << "oriented: " << (e->oriented ? "true" : "false") << "\n"
              << "free_rule: " << gd::free_rule_name(e->free_rule) << "\n";
    if (e->rho) std::cout << "rho: " << *e->rho << "\n";
    if (e->total_dim) std::cout << "total_dim: " << *e->total_dim << "\n";
    std::cout << "roots (" << e->system.roots.size() << "):\n";
    for (const auto& r : e->system.roots) {
        std::cout << "  ";
        for (std::size_t i = 0; i < r.form.size(); ++i)
            std::cout << (i ? " " : "") << r.form.coeffs[i].str();
        std::cout << " | " << r.multiplicity << "\n";
    }
    std::cout << "lattice:\n";
    for (const auto& g : e->system.lattice.generators) {
        std::cout << "  ";
        for (std::size_t i = 0; i < g.size(); ++i)
            std::cout << (i ? " " : "") << g[i].str();
        std::cout << "\n";
    }
    std::cout << "provenance: " << e->provenance << "\n";
    if (!e->caveat.empty()) std::cout << "caveat: " << e->caveat << "\n";
    return 0;
}

void print_degree_md(const gd::DegreeReport& rep, bool verbose) {
    std::cout << "space: " << rep.space << "\n"
              << "degree: " << rep.degree << "\n"
              << "rank: " << rep.rank << "\n"
              << "is_gamma: " << (rep.degree != 0 ? "true" : "false") << "\n"
              << "fastpath: " << (rep.fastpath_used ? "true" : "false") << "\n"
              << "theta_p_degree: " << rep.theta_p_degree << "\n"
              << "attempts: " << rep.generic_point.attempts << "\n";
    if (!rep.generic_point.y.coords.empty()) {
        std::cout << "y:";
        for (const auto& c : rep.generic_point.y.coords) std::cout << " " << c.str();
        std::cout << "\n";
    }
    if (rep.parity_sum != rep.degree)
        std::cout << "parity_sum: " << rep.parity_sum << "\n";
    if (!rep.caveat.empty()) std::cout << "caveat: " << rep.caveat << "\n";
    if (verbose && !rep.preimages.empty()) {
        std::cout << "preimages:\n";
        for (const auto& p : rep.preimages) {
            std::cout << "  delta=";
            for (auto b : p.delta) std::cout << (b ? '1' : '0');
            std::cout << " v=(";
            for (std::size_t i = 0; i < p.v.size(); ++i)
                std::cout << (i ? " " : "") << p.v[i].str();
            std::cout << ") epsilon=" << p.epsilon << " sign=" << (p.sign > 0 ? "+1" : "-1")
                      << "\n";
        }
    }
}

int cmd_degree(const CliConfig& cfg, const std::string& expr_text) {
    const auto cat = load_catalog(cfg);
    const auto rep = gd::evaluate_expression(expr_text, cat, cfg.seed, engine_options(cfg));
    if (cfg.format == "json") {
        std::cout << gd::to_json(rep, cfg.verbose).dump(2) << "\n";
    } else if (cfg.format == "csv") {
        std::cout << "space,degree,rank,fastpath,theta_p_degree,attempts\n"
                  << '"' << rep.space << "\"," << rep.degree << "," << rep.rank << ","
                  << rep.fastpath_used << "," << rep.theta_p_degree << ","
                  << rep.generic_point.attempts << "\n";
    } else {
        print_degree_md(rep, cfg.verbose);
    }
    return 0;
}

int cmd_table(const CliConfig& cfg) {
    const auto cat = load_catalog(cfg);
    const auto opts = engine_options(cfg);
    struct Row {
        std::string name, mults;
        int rank, dim;
        bool splitting, free, gamma;
        long long degree;
    };
    std::vector<Row> rows;
    for (const auto& e : cat.entries) {
        Row row;
        row.name = e.name;
        row.rank = e.rank;
        row.dim = e.dimension;
        row.mults = mult_summary(e);
        row.splitting = gd::splitting_rank(e);
        gd::EngineOptions o = opts;
        o.collect_preimages = false;
        row.degree = gd::mapping_degree(e, cfg.seed, o).degree;
        row.free = gd::free_cohomology(e);
        row.gamma = row.degree != 0;
        rows.push_back(std::move(row));
    }
    const char* tf[] = {"false", "true"};
    if (cfg.format == "json") {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& r : rows)
            out.push_back({{"name", r.name},
                           {"rank", r.rank},
                           {"dim", r.dim},
                           {"mults", r.mults},
                           {"splitting_rank", r.splitting},
                           {"degree", r.degree},
                           {"free", r.free},
                           {"gamma", r.gamma}});
        std::cout << out.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        std::cout << "name,rank,dim,mults,splitting_rank,degree,free,gamma\n";
        for (const auto& r : rows)
            std::cout << '"' << r.name << "\"," << r.rank << "," << r.dim << ",\"" << r.mults
                      << "\"," << tf[r.splitting] << "," << r.degree << "," << tf[r.free] << ","
                      << tf[r.gamma] << "\n";
    } else {
        std::cout << "| name | rank | dim | mults | splitting_rank | degree | free | gamma |\n"
                  << "|---|---|---|---|---|---|---|---|\n";
        for (const auto& r : rows)
            std::cout << "| " << r.name << " | " << r.rank << " | " << r.dim << " | " << r.mults
                      << " | " << tf[r.splitting] << " | " << r.degree << " | " << tf[r.free]
                      << " | " << tf[r.gamma] << " |\n";
    }
    return 0;
}

int verify_classification(const CliConfig& cfg) {
    const auto cat = load_catalog(cfg);
    gd::EngineOptions o = engine_options(cfg);
    o.collect_preimages = false;
    const auto rep = gd::verify_classification(cat, cfg.seed, o);
    if (cfg.format == "json") {
        std::cout << gd::to_json(rep).dump(2) << "\n";
    } else if (cfg.format == "csv") {
        std::cout << "name,degree,is_gamma,free,agrees\n";
        for (const auto& r : rep.rows)
            std::cout << '"' << r.name << "\"," << r.degree << "," << r.is_gamma << "," << r.free
                      << "," << r.agrees << "\n";
    } else {
        std::cout << "| name | degree | is_gamma | free | agrees |\n|---|---|---|---|---|\n";
        for (const auto& r : rep.rows)
            std::cout << "| " << r.name << " | " << r.degree << " | " << (r.is_gamma ? "true" : "false")
                      << " | " << (r.free ? "true" : "false") << " | "
                      << (r.agrees ? "true" : "false") << " |\n";
        std::cout << "agreement: " << rep.agree_count << "/" << rep.agree_count + rep.disagree_count
                  << "\n";
    }
    if (!rep.all_agree()) {
        for (const auto& r : rep.rows)
            if (!r.agrees) {
                std::cerr << "FAIL classification: '" << r.name << "' disagrees\n";
                return 1;
            }
    }
    return 0;
}

int verify_invariants(const CliConfig& cfg) {
    const auto cat = load_catalog(cfg);
    gd::EngineOptions o = engine_options(cfg);
    o.collect_preimages = false;

    auto is_power_of_two_or_zero = [](long long d) {
        const long long a = d < 0 ? -d : d;
        return a == 0 || (a & (a - 1)) == 0;
    };

    for (const auto& e : cat.entries) {
        const long long base = gd::mapping_degree(e, 0, o).degree;
        if (!is_power_of_two_or_zero(base)) {
            std::cerr << "FAIL power-of-two: " << e.name << " degree " << base << "\n";
            return 1;
        }
        // Y-invariance across seeds
        const int seeds = e.rank <= 9 ? 100 : 3;
        for (int s = 1; s < seeds; ++s) {
            if (gd::mapping_degree(e, s, o).degree != base) {
                std::cerr << "FAIL Y-invariance: " << e.name << " at seed " << s << "\n";
                return 1;
            }
        }
        // fast path vs full enumeration
        if (gd::splitting_rank(e) && e.rank <= 12) {
            gd::EngineOptions full = o;
            full.force_full = true;
            if (gd::mapping_degree(e, 0, full).degree != (1LL << e.rank)) {
                std::cerr << "FAIL splitting-rank consistency: " << e.name << "\n";
                return 1;
            }
        }
    }
    std::cout << "invariants: all checks passed over " << cat.entries.size() << " entries\n";
    return 0;
}

int verify_oracle(const CliConfig& cfg) {
    const auto cat = load_catalog(cfg);
    gd::EngineOptions o = engine_options(cfg);
    o.collect_preimages = false;
    for (int n = 2; n <= 7; ++n) {
        const auto* s = cat.find("S(" + std::to_string(n) + ")");
        if (!s) continue;
        const long long engine = gd::mapping_degree(*s, cfg.seed, o).degree;
        const int model = gd::oracle::sphere_degree(n);
        if (engine != model) {
            std::cerr << "FAIL sphere oracle: n=" << n << " engine " << engine << " oracle "
                      << model << "\n";
            return 1;
        }
    }
    for (const auto& e : cat.entries) {
        if (e.rank > 8) continue;
        const long long engine = gd::mapping_degree(e, cfg.seed, o).degree;
        const long long naive = gd::oracle::naive_degree(e, cfg.seed);
        if (engine != naive) {
            std::cerr << "FAIL naive oracle: " << e.name << " engine " << engine << " naive "
                      << naive << "\n";
            return 1;
        }
    }
    std::cout << "oracle: sphere model and naive recomputation agree with the engine\n";
    return 0;
}

int cmd_oracle_sphere(const CliConfig& cfg, int n) {
    const auto cat = load_catalog(cfg);
    const int model = gd::oracle::sphere_degree(n);
    long long engine = 0;
    if (const auto* s = cat.find("S(" + std::to_string(n) + ")"))
        engine = gd::mapping_degree(*s, cfg.seed, engine_options(cfg)).degree;
    else
        engine = gd::mapping_degree(gd::make_sphere(n), cfg.seed, engine_options(cfg)).degree;
    std::cout << "sphere_model: " << model << "\nengine: " << engine << "\n"
              << (model == engine ? "agree" : "DISAGREE") << "\n";
    return model == engine ? 0 : 1;
}

int cmd_oracle_naive(const CliConfig& cfg, const std::string& name) {
    const auto cat = load_catalog(cfg);
    const auto* e = cat.find(name);
    if (!e) {
        std::cerr << "unknown space '" << name << "'\n";
        return 2;
    }
    gd::EngineOptions o = engine_options(cfg);
    o.collect_preimages = false;
    const long long naive = gd::oracle::naive_degree(*e, cfg.seed);
    const long long engine = gd::mapping_degree(*e, cfg.seed, o).degree;
    std::cout << "naive: " << naive << "\nengine: " << engine << "\n"
              << (naive == engine ? "agree" : "DISAGREE") << "\n";
    return naive == engine ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact mapping degrees of canonical squaring maps on symmetric spaces"};
    app.require_subcommand(1);
    app.fallthrough(); // global options may follow the subcommand

    CliConfig cfg;
    app.add_option("--catalog", cfg.catalog_path, "catalog file (overrides builtin)");
    app.add_option("--seed", cfg.seed, "generic-point seed");
    app.add_option("--format", cfg.format, "output format: md|csv|json")
        ->check(CLI::IsMember({"md", "csv", "json"}));
    app.add_flag("--verbose", cfg.verbose, "include preimage witnesses");
    app.add_flag("--force-full", cfg.force_full, "skip the splitting-rank fast path");
    app.add_option("--threads", cfg.threads, "worker threads for enumeration")
        ->check(CLI::PositiveNumber);

    auto* list_cmd = app.add_subcommand("list", "list catalog entries");
    std::string info_name;
    auto* info_cmd = app.add_subcommand("info", "show one catalog entry in full");
    info_cmd->add_option("name", info_name)->required();
    std::string degree_expr;
    auto* degree_cmd = app.add_subcommand("degree", "degree of a space expression");
    degree_cmd->add_option("expr", degree_expr)->required();
    std::string verify_which = "all";
    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    verify_cmd->add_option("which", verify_which)
        ->check(CLI::IsMember({"classification", "invariants", "oracle", "all"}));
    auto* table_cmd = app.add_subcommand("table", "summary table over the whole catalog");
    auto* oracle_cmd = app.add_subcommand("oracle", "cross-validation oracles");
    int oracle_n = 3;
    std::string oracle_space;
    auto* oracle_sphere = oracle_cmd->add_subcommand("sphere", "floating-point sphere model");
    oracle_sphere->add_option("n", oracle_n)->required()->check(CLI::Range(2, 64));
    auto* oracle_naive = oracle_cmd->add_subcommand("naive", "exhaustive recomputation");
    oracle_naive->add_option("space", oracle_space)->required();
    oracle_cmd->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (*list_cmd) return cmd_list(cfg);
        if (*info_cmd) return cmd_info(cfg, info_name);
        if (*degree_cmd) return cmd_degree(cfg, degree_expr);
        if (*table_cmd) return cmd_table(cfg);
        if (*verify_cmd) {
            if (verify_which == "classification") return verify_classification(cfg);
            if (verify_which == "invariants") return verify_invariants(cfg);
            if (verify_which == "oracle") return verify_oracle(cfg);
            int rc = verify_classification(cfg);
            if (rc == 0) rc = verify_invariants(cfg);
            if (rc == 0) rc = verify_oracle(cfg);
            return rc;
        }
        if (*oracle_cmd) {
            if (*oracle_sphere) return cmd_oracle_sphere(cfg, oracle_n);
            if (*oracle_naive) return cmd_oracle_naive(cfg, oracle_space);
        }
    } catch (const gd::ParseError& e) {
        std::cerr << "parse error: " << e.what() << " (at " << e.where << ")\n";
        return 2;
    } catch (const gd::UnknownSpace& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const gd::Error& e) {
        std::cerr << "engine error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
