#include "nqg/cli.hpp"

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "nqg/bounds.hpp"
#include "nqg/census4.hpp"
#include "nqg/constructions.hpp"
#include "nqg/enumerate.hpp"
#include "nqg/json_io.hpp"
#include "nqg/trades.hpp"
#include "nqg/verify.hpp"

namespace nqg {

namespace {

std::pair<Symbol, Symbol> parse_pair(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw usage_error("pair must be given as a,b");
    const int a = std::stoi(s.substr(0, comma));
    const int b = std::stoi(s.substr(comma + 1));
    if (a < 0 || b < 0 || a > 255 || b > 255) throw usage_error("pair out of range");
    return {static_cast<Symbol>(a), static_cast<Symbol>(b)};
}

void emit(std::ostream& out, const std::string& path, const json& j) {
    if (path.empty())
        out << j.dump(2) << '\n';
    else
        save_json(path, j);
}

FamilyStrategy parse_strategy(const std::string& s) {
    if (s == "pair_partition") return FamilyStrategy::pair_partition;
    if (s == "greedy") return FamilyStrategy::greedy;
    if (s == "exact") return FamilyStrategy::exact;
    throw usage_error("unknown strategy: " + s);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact counting, constructions and switching machinery for n-ary quasigroups"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand

    RunConfig cfg;
    if (const char* env = std::getenv("NQG_WORKERS")) cfg.workers = std::max(1, std::atoi(env));
    auto* workers_opt = app.add_option("--workers", cfg.workers, "worker threads for counting");
    app.add_option("--cell-cap", cfg.cell_cap, "refuse enumeration beyond this many cells");
    app.add_option("--mat-cap", cfg.mat_cap, "refuse materialization beyond this many cells");
    app.add_option("--seed", cfg.seed, "seed for randomized suites");
    app.add_option("--format", cfg.format, "output format: json, csv or text");

    // count
    int cnt_n = 0, cnt_k = 0;
    bool cnt_loops = false;
    auto* count_cmd = app.add_subcommand("count", "count quasigroups or loops exactly");
    count_cmd->add_option("--n", cnt_n, "arity")->required();
    count_cmd->add_option("--k", cnt_k, "order")->required();
    count_cmd->add_flag("--loops", cnt_loops, "count loops (identity 0) instead");

    // recur4
    int rec_max = 8;
    bool rec_inter = false;
    auto* recur_cmd = app.add_subcommand("recur4", "order-4 count ledger via the recurrence");
    recur_cmd->add_option("--max-n", rec_max, "last arity to compute")->required();
    recur_cmd->add_flag("--intermediates", rec_inter, "include all ledger columns");

    // census
    int census_n = 3;
    auto* census_cmd = app.add_subcommand("census", "exhaustive order-4 loop classification");
    census_cmd->add_option("--n", census_n, "arity (3 or 4)")->required();

    // construct
    auto* construct_cmd = app.add_subcommand("construct", "emit construction tables");
    construct_cmd->require_subcommand(1);
    int con_m = 0, con_n = 0, con_k = 0;
    std::string con_phi, con_out;
    auto* idem_cmd = construct_cmd->add_subcommand("idempotent", "idempotent binary table");
    idem_cmd->add_option("--m", con_m, "order")->required();
    idem_cmd->add_option("-o,--output", con_out, "output file (default stdout)");
    auto* psi_cmd = construct_cmd->add_subcommand("psi", "order 2m+1 switch-rich table");
    psi_cmd->add_option("--m", con_m, "half order")->required();
    psi_cmd->add_option("--phi", con_phi, "idempotent table file (default: built in)");
    psi_cmd->add_option("-o,--output", con_out, "output file (default stdout)");
    auto* bigpsi_cmd = construct_cmd->add_subcommand("big-psi", "materialized n-ary tower");
    bigpsi_cmd->add_option("--n", con_n, "arity")->required();
    bigpsi_cmd->add_option("--m", con_m, "half order")->required();
    bigpsi_cmd->add_option("-o,--output", con_out, "output file (default stdout)");
    auto* inter_cmd = construct_cmd->add_subcommand("interleaved", "even-order paired-box table");
    inter_cmd->add_option("--n", con_n, "arity")->required();
    inter_cmd->add_option("--k", con_k, "order (even)")->required();
    inter_cmd->add_option("-o,--output", con_out, "output file (default stdout)");

    // components
    std::string comp_input, comp_pair;
    auto* comp_cmd = app.add_subcommand("components", "minimal switchable classes of a value pair");
    comp_cmd->add_option("--input", comp_input, "table JSON file")->required();
    comp_cmd->add_option("--pair", comp_pair, "value pair a,b")->required();

    // switch
    std::string sw_input, sw_family;
    std::uint64_t sw_mask = 0;
    auto* switch_cmd = app.add_subcommand("switch", "swap value pairs on masked family members");
    switch_cmd->add_option("--input", sw_input, "table JSON file")->required();
    switch_cmd->add_option("--family", sw_family, "component list JSON file")->required();
    switch_cmd->add_option("--mask", sw_mask, "bit per family member")->required();
    switch_cmd->add_option("-o,--output", con_out, "output file (default stdout)");

    // family
    std::string fam_input, fam_strategy = "pair_partition";
    auto* family_cmd = app.add_subcommand("family", "pairwise-disjoint component family");
    family_cmd->add_option("--input", fam_input, "table JSON file")->required();
    family_cmd->add_option("--strategy", fam_strategy, "pair_partition, greedy or exact");

    // bounds
    int bnd_n = 0, bnd_k = 0;
    std::string bnd_grid;
    auto* bounds_cmd = app.add_subcommand("bounds", "bound report for one (n,k) or a grid");
    bounds_cmd->add_option("--n", bnd_n, "arity");
    bounds_cmd->add_option("--k", bnd_k, "order");
    bounds_cmd->add_option("--grid", bnd_grid, "sweep nmin:nmax:kmin:kmax into CSV");

    // verify-paper
    std::vector<std::string> skip;
    std::string data_dir;
    auto* verify_cmd = app.add_subcommand("verify-paper", "run the full verification suite");
    verify_cmd->add_option("--skip", skip, "named groups to skip (only: slow)");
    verify_cmd->add_option("--data", data_dir, "fixture directory (default: built in)");

    try {
        std::vector<const char*> argv;
        argv.push_back("nqg");
        for (const auto& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 2;
    }

    EnumOptions eo{cfg.cell_cap, cfg.workers};

    try {
        if (*count_cmd) {
            out << decimal(count_quasigroups(cnt_n, cnt_k,
                                             cnt_loops ? EnumMode::loops : EnumMode::all, eo))
                << '\n';
        } else if (*recur_cmd) {
            const auto rows = q4_recurrence(rec_max);
            if (cfg.format == "json")
                out << recurrence_to_json(rows).dump(2) << '\n';
            else
                out << recurrence_to_csv(rows, rec_inter);
        } else if (*census_cmd) {
            out << to_json(census(census_n, eo)).dump(2) << '\n';
        } else if (*idem_cmd) {
            emit(out, con_out, to_json(idempotent_quasigroup(con_m)));
        } else if (*psi_cmd) {
            const Hypercube table =
                con_phi.empty() ? psi(con_m) : psi(con_m, load_hypercube(con_phi));
            emit(out, con_out, to_json(table));
        } else if (*bigpsi_cmd) {
            emit(out, con_out, to_json(big_psi(con_n, con_m).materialize(cfg.mat_cap)));
        } else if (*inter_cmd) {
            emit(out, con_out, to_json(interleaved_group(con_n, con_k, cfg.mat_cap)));
        } else if (*comp_cmd) {
            const Hypercube f = load_hypercube(comp_input);
            const auto [a, b] = parse_pair(comp_pair);
            out << to_json(find_components(f, a, b)).dump(2) << '\n';
        } else if (*switch_cmd) {
            const Hypercube f = load_hypercube(sw_input);
            const auto family = components_from_json(load_json(sw_family));
            emit(out, con_out, to_json(switch_family(f, family, sw_mask)));
        } else if (*family_cmd) {
            const Hypercube f = load_hypercube(fam_input);
            const FamilyStrategy strategy = parse_strategy(fam_strategy);
            out << family_report(f, disjoint_family(f, strategy), strategy).dump(2) << '\n';
        } else if (*bounds_cmd) {
            if (!bnd_grid.empty()) {
                int nmin, nmax, kmin, kmax;
                if (std::sscanf(bnd_grid.c_str(), "%d:%d:%d:%d", &nmin, &nmax, &kmin, &kmax) != 4)
                    throw usage_error("--grid wants nmin:nmax:kmin:kmax");
                out << "n,k,c_k,upper_log2,lower_log2_exponent,trd_upper,trd_lower,trd_lower_generic\n";
                for (int n = nmin; n <= nmax; ++n)
                    for (int k = kmin; k <= kmax; ++k) {
                        out << n << ',' << k << ',';
                        try {
                            const BoundsReport rep = bounds_report(n, k, cfg.mat_cap);
                            if (rep.c_k) out << *rep.c_k;
                            out << ',';
                            if (rep.upper_log2) out << *rep.upper_log2;
                            out << ',';
                            if (rep.lower_log2_exponent) out << decimal(*rep.lower_log2_exponent);
                            out << ',' << decimal(rep.trd_upper) << ',';
                            if (rep.trd_lower) out << decimal(*rep.trd_lower);
                            out << ',' << (rep.trd_lower_generic ? "yes" : "no") << '\n';
                        } catch (const resource_error&) {
                            out << ",,,,,capped\n";
                        }
                    }
            } else {
                if (bnd_n <= 0 || bnd_k <= 0) throw usage_error("bounds wants --n and --k (or --grid)");
                out << to_json(bounds_report(bnd_n, bnd_k, cfg.mat_cap)).dump(2) << '\n';
            }
        } else if (*verify_cmd) {
            VerifyOptions vo;
            for (const auto& s : skip) {
                if (s != "slow") throw usage_error("unknown skip group: " + s);
                vo.skip_slow = true;
            }
            vo.seed = cfg.seed;
            // verification defaults to one worker per hardware thread
            vo.workers = (workers_opt->count() > 0 || std::getenv("NQG_WORKERS")) ? cfg.workers : 0;
            vo.data_dir = data_dir;
            const auto results = verify_paper(vo, &out);
            return all_passed(results) ? 0 : 1;
        }
    } catch (const usage_error& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const resource_error& e) {
        err << "resource error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}

}  // namespace nqg
