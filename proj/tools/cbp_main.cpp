// Command line surface for colorful bin packing games: solve, dynamics,
// oracle, generate, ratios, verify. Exit codes: 0 ok, 2 check failure,
// 3 cap exceeded, 4 bad input.
#include "cbp/dynamics.hpp"
#include "cbp/equilibria.hpp"
#include "cbp/errors.hpp"
#include "cbp/instances.hpp"
#include "cbp/json_io.hpp"
#include "cbp/model.hpp"
#include "cbp/oracle.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace cbp;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 2;
constexpr int kExitCapExceeded = 3;
constexpr int kExitBadInput = 4;

int env_cap(const char* name, int fallback) {
    const char* value = std::getenv(name);
    if (value == nullptr) {
        return fallback;
    }
    try {
        return std::stoi(value);
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string(name) + " is not an integer");
    }
}

// Instance files and generated case files are both accepted wherever an
// instance is expected.
GameInstance load_instance(const std::string& path) {
    const Json j = read_json_file(path);
    if (j.contains("instance")) {
        return instance_from_json(j.at("instance"));
    }
    return instance_from_json(j);
}

void emit(const Json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << '\n';
    } else {
        write_json_file(out_path, j);
    }
}

Profile all_singletons(const GameInstance& game) {
    std::vector<std::vector<ItemId>> bins;
    for (ItemId id = 1; id <= game.n(); ++id) {
        bins.push_back({id});
    }
    return make_profile(game, std::move(bins));
}

int cmd_solve(const std::string& path, const std::string& algorithm,
              const std::string& out_path) {
    const GameInstance game = load_instance(path);
    EquilibriumBuild build;
    if (algorithm == "alg1") {
        build = greedy_packing_equilibrium(game);
    } else if (algorithm == "alg2") {
        build = uniform_greedy_equilibrium(game);
    } else {
        throw std::invalid_argument("unknown algorithm '" + algorithm + "'");
    }
    emit(build_to_json(build, game, algorithm), out_path);
    return is_nash(build.profile, game) ? kExitOk : kExitCheckFailed;
}

int cmd_dynamics(const std::string& path, const std::string& policy_name, std::uint64_t seed,
                 std::size_t max_steps, const std::string& start_path, bool allow_nonvalid,
                 bool cycle_search, std::size_t state_cap, int scan_cap,
                 const std::string& out_path) {
    const GameInstance game = load_instance(path);
    const Profile start = start_path.empty()
                              ? all_singletons(game)
                              : profile_from_json(read_json_file(start_path), game);
    if (allow_nonvalid || cycle_search) {
        std::vector<Profile> starts;
        if (game.n() <= scan_cap) {
            for_each_profile(game, [&](const Profile& p) { starts.push_back(p); });
        } else {
            starts.push_back(start);
        }
        const CycleSearchResult result =
            find_deviation_cycle(game, starts, allow_nonvalid, state_cap);
        Json j = cycle_to_json(result);
        j["allow_nonvalid"] = allow_nonvalid;
        j["scanned_all_starts"] = game.n() <= scan_cap;
        emit(j, out_path);
        return result.status == CycleSearchStatus::Inconclusive ? kExitCapExceeded : kExitOk;
    }
    const DynamicsTrace trace =
        run_valid_dynamics(game, start, policy_from_name(policy_name, seed), max_steps);
    Json j = trace_to_json(trace);
    j["policy"] = policy_name;
    j["seed"] = seed;
    emit(j, out_path);
    if (!trace.terminated) {
        std::cerr << "dynamics hit the step cap without converging\n";
        return kExitCheckFailed;
    }
    return kExitOk;
}

int cmd_oracle(const std::string& path, int opt_cap, bool with_ne, int ne_cap,
               const std::string& out_path) {
    const GameInstance game = load_instance(path);
    const OptResult result = optimal_bins(game, opt_cap);
    Json j = opt_to_json(result);
    if (with_ne) {
        const RatioReport report = exact_ratios(game, opt_cap, ne_cap);
        j["ne_count"] = report.ne_count;
        j["best_ne"] = report.best_ne;
        j["worst_ne"] = report.worst_ne;
        j["pos"] = report.pos.str();
        j["poa"] = report.poa.str();
    }
    emit(j, out_path);
    return kExitOk;
}

SizeFamily family_from_name(const std::string& name) {
    if (name == "uniform") {
        return SizeFamily::Uniform;
    }
    if (name == "grid") {
        return SizeFamily::Grid;
    }
    if (name == "zero-heavy") {
        return SizeFamily::ZeroHeavy;
    }
    throw std::invalid_argument("unknown size family '" + name + "'");
}

struct GenerateArgs {
    std::string family;
    int m = 3;
    int h = 2;
    int k = 4;
    int n = 8;
    bool odd = false;
    std::string random_family = "grid";
    long long kappa = 2;
    long long grid_denom = 8;
    std::string model = "egalitarian";
    std::uint64_t seed = 0;
};

GeneratedCase run_generator(const GenerateArgs& args) {
    if (args.family == "improvement-cycle") {
        return gen_improvement_cycle();
    }
    if (args.family == "pos-multicolor-egalitarian") {
        return gen_pos_multicolor_egalitarian(args.m, args.h, args.k);
    }
    if (args.family == "pos-multicolor-proportional") {
        return gen_pos_multicolor_proportional(args.n);
    }
    if (args.family == "pos-bw-egalitarian") {
        return gen_pos_bw_egalitarian(args.k);
    }
    if (args.family == "pos-bw-proportional") {
        return gen_pos_bw_proportional(args.k);
    }
    if (args.family == "pos-uniform-even") {
        return gen_pos_uniform_even(args.k);
    }
    if (args.family == "poa-uniform-multicolor") {
        return gen_poa_uniform_multicolor(args.k, args.odd);
    }
    if (args.family == "poa-bw-odd") {
        return gen_poa_bw_odd(args.k);
    }
    if (args.family == "random") {
        RandomSpec spec;
        spec.n = args.n;
        spec.m = args.m;
        spec.family = family_from_name(args.random_family);
        spec.kappa = args.kappa;
        spec.grid_denom = args.grid_denom;
        spec.cost_model = cost_model_from_name(args.model);
        spec.seed = args.seed;
        GeneratedCase generated{gen_random(spec), {}, {}, {}, "random"};
        generated.params["n"] = args.n;
        generated.params["m"] = args.m;
        generated.params["seed"] = static_cast<long long>(args.seed);
        return generated;
    }
    throw std::invalid_argument("unknown family '" + args.family + "'");
}

void ratio_row(std::ostream& out, const std::string& id, const GameInstance& game,
               const GeneratedCase* generated, int opt_cap, int ne_cap) {
    out << id << ',' << game.n() << ',' << game.colors() << ','
        << cost_model_name(game.cost_model()) << ',';
    try {
        const RatioReport report = exact_ratios(game, opt_cap, ne_cap);
        out << report.opt << ',' << report.best_ne << ',' << report.worst_ne << ','
            << report.pos.str() << ',' << report.poa.str() << ',' << report.pos.to_double()
            << ',' << report.poa.to_double() << ",ok\n";
        return;
    } catch (const CapExceeded&) {
        // Fall back to witness-level values when the case carries them.
    }
    if (generated != nullptr && generated->witnesses.count("sigma") != 0 &&
        generated->expected.count("opt") != 0) {
        const int f_sigma = social_cost(generated->witnesses.at("sigma"));
        const Rational opt = generated->expected.at("opt");
        const Rational ratio = Rational(f_sigma) / opt;
        out << opt.str() << ',' << f_sigma << ',' << f_sigma << ',' << ratio.str() << ','
            << ratio.str() << ',' << ratio.to_double() << ',' << ratio.to_double()
            << ",witness\n";
        return;
    }
    out << ",,,,,,,skipped\n";
}

int cmd_ratios(const std::vector<std::string>& paths, int sweep_count,
               const GenerateArgs& sweep_args, int opt_cap, int ne_cap,
               const std::string& csv_path) {
    std::ostringstream out;
    out << "instance_id,n,m,model,opt,best_ne,worst_ne,pos,poa,pos_dec,poa_dec,status\n";
    for (const std::string& path : paths) {
        const Json j = read_json_file(path);
        const std::string id = std::filesystem::path(path).stem().string();
        if (j.contains("instance")) {
            GeneratedCase generated = case_from_json(j);
            ratio_row(out, id, generated.instance, &generated, opt_cap, ne_cap);
        } else {
            ratio_row(out, id, instance_from_json(j), nullptr, opt_cap, ne_cap);
        }
    }
    for (int i = 0; i < sweep_count; ++i) {
        GenerateArgs args = sweep_args;
        args.family = "random";
        args.seed = sweep_args.seed + static_cast<std::uint64_t>(i);
        GeneratedCase generated = run_generator(args);
        ratio_row(out, "random-" + std::to_string(args.seed), generated.instance, nullptr,
                  opt_cap, ne_cap);
    }
    if (csv_path.empty()) {
        std::cout << out.str();
    } else {
        std::ofstream file(csv_path);
        if (!file) {
            throw std::invalid_argument("cannot write " + csv_path);
        }
        file << out.str();
    }
    return kExitOk;
}

struct CheckLog {
    bool all_passed = true;

    void check(const std::string& name, bool ok) {
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << '\n';
        all_passed = all_passed && ok;
    }
    void skip(const std::string& name, const std::string& why) {
        std::cout << "[SKIP] " << name << " (" << why << ")\n";
    }
};

int cmd_verify(const std::string& path, int opt_cap, int ne_cap) {
    const GeneratedCase generated = case_from_json(read_json_file(path));
    const GameInstance& game = generated.instance;
    CheckLog log;

    for (const auto& [name, profile] : generated.witnesses) {
        if (name == "sigma") {
            log.check("witness sigma is a Nash equilibrium", is_nash(profile, game));
        } else if (name == "sigma_star") {
            log.check("witness sigma_star is feasible", is_feasible(profile, game));
        }
    }
    const auto expect_f = [&](const std::string& key, const std::string& witness) {
        if (generated.expected.count(key) != 0 && generated.witnesses.count(witness) != 0) {
            log.check(key + " matches " + witness,
                      Rational(social_cost(generated.witnesses.at(witness))) ==
                          generated.expected.at(key));
        }
    };
    expect_f("F_sigma", "sigma");
    expect_f("F_sigma_star", "sigma_star");
    if (generated.expected.count("ratio") != 0 && generated.witnesses.count("sigma") != 0 &&
        generated.witnesses.count("sigma_star") != 0) {
        const Rational ratio = Rational(social_cost(generated.witnesses.at("sigma"))) /
                               Rational(social_cost(generated.witnesses.at("sigma_star")));
        log.check("ratio equals F_sigma / F_sigma_star",
                  ratio == generated.expected.at("ratio"));
    }
    if (generated.expected.count("opt") != 0) {
        try {
            log.check("oracle optimum matches expected",
                      Rational(optimal_bins(game, opt_cap).opt) ==
                          generated.expected.at("opt"));
        } catch (const CapExceeded&) {
            log.skip("oracle optimum matches expected", "instance beyond the oracle cap");
        }
    }
    if (game.colors() == 2) {
        try {
            const int opt = optimal_bins(game, opt_cap).opt;
            for (const auto& [name, profile] : generated.witnesses) {
                if (is_feasible(profile, game)) {
                    log.check("singleton surplus bound holds for " + name,
                              bw_singleton_surplus(bw_decompose(profile, game)) <= opt);
                }
                if (name == "sigma") {
                    log.check("equilibrium witness within 3x optimum",
                              social_cost(profile) <= 3 * opt);
                }
            }
        } catch (const CapExceeded&) {
            log.skip("black and white bound checks", "instance beyond the oracle cap");
        }
    }

    const std::string& family = generated.provenance;
    if (family == "improvement-cycle") {
        std::vector<Profile> starts;
        for_each_profile(game, [&](const Profile& p) { starts.push_back(p); });
        log.check("improving deviations admit a cycle",
                  find_deviation_cycle(game, starts, true).status ==
                      CycleSearchStatus::CycleFound);
        log.check("valid deviations form a DAG",
                  find_deviation_cycle(game, starts, false).status ==
                      CycleSearchStatus::NoCycle);
    } else if (family == "pos-multicolor-egalitarian") {
        const EquilibriumBuild build = greedy_packing_equilibrium(game);
        log.check("constructed equilibrium passes is_nash", is_nash(build.profile, game));
        log.check("constructed equilibrium meets the bin lower bound",
                  Rational(social_cost(build.profile)) >=
                      generated.expected.at("ne_bins_lower_bound"));
    } else if (family == "pos-multicolor-proportional") {
        const EquilibriumBuild build = greedy_packing_equilibrium(game);
        log.check("constructed equilibrium passes is_nash", is_nash(build.profile, game));
        const Rational small = Rational(BigInt(1), BigInt(generated.params.at("n")));
        int singleton_small = 0;
        for (const Bin& bin : build.profile.bins) {
            if (bin.count() == 1 && game.size_of(bin.contents.front()) == small) {
                ++singleton_small;
            }
        }
        log.check("equilibrium leaves enough small items in singletons",
                  Rational(singleton_small) >= generated.expected.at("min_singleton_small"));
    } else if (family == "pos-uniform-even") {
        const long long k = generated.params.at("k");
        if (game.n() <= ne_cap) {
            bool all_k = true;
            for (const Profile& ne : enumerate_nash(game, ne_cap)) {
                all_k = all_k && social_cost(ne) == static_cast<int>(k);
            }
            log.check("every Nash equilibrium opens exactly k bins", all_k);
        } else {
            log.skip("every Nash equilibrium opens exactly k bins",
                     "instance beyond the enumeration cap");
        }
    } else if (family == "poa-uniform-multicolor" || family == "poa-bw-odd" ||
               family == "pos-bw-egalitarian" || family == "pos-bw-proportional" ||
               family == "random") {
        // Witness and bound checks above cover these.
    } else if (!family.empty()) {
        throw std::invalid_argument("unknown provenance '" + family + "'");
    }

    std::cout << (log.all_passed ? "VERDICT: pass" : "VERDICT: fail") << '\n';
    return log.all_passed ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"colorful bin packing games toolkit"};
    app.require_subcommand(1);

    int opt_cap = 20;
    int ne_cap = 8;
    int state_cap = 1000000;
    const int scan_cap = 8;

    std::string solve_path;
    std::string solve_alg = "alg1";
    std::string solve_out;
    auto* solve = app.add_subcommand("solve", "compute a Nash equilibrium constructively");
    solve->add_option("instance", solve_path, "instance or case JSON file")->required();
    solve->add_option("--alg", solve_alg, "alg1 (any game) or alg2 (uniform sizes)");
    solve->add_option("--out", solve_out, "output JSON path (default stdout)");

    std::string dyn_path;
    std::string dyn_policy = "first";
    std::uint64_t dyn_seed = 0;
    std::size_t dyn_max_steps = 100000;
    std::string dyn_start;
    bool dyn_allow_nonvalid = false;
    bool dyn_cycle = false;
    std::string dyn_out;
    auto* dynamics = app.add_subcommand(
        "dynamics", "run valid-deviation dynamics or search for improvement cycles");
    dynamics->add_option("instance", dyn_path, "instance or case JSON file")->required();
    dynamics->add_option("--policy", dyn_policy, "first | random | max-gain");
    dynamics->add_option("--seed", dyn_seed, "seed for the random policy");
    dynamics->add_option("--max-steps", dyn_max_steps, "step cap for dynamics runs");
    dynamics->add_option("--start", dyn_start,
                         "starting profile JSON (default: all singletons)");
    dynamics->add_flag("--allow-nonvalid", dyn_allow_nonvalid,
                       "cycle search over all improving deviations");
    dynamics->add_flag("--cycle-search", dyn_cycle,
                       "cycle search restricted to valid deviations");
    dynamics->add_option("--out", dyn_out, "output JSON path (default stdout)");

    std::string oracle_path;
    bool oracle_ne = false;
    std::string oracle_out;
    auto* oracle =
        app.add_subcommand("oracle", "exact social optimum (and equilibria) by brute force");
    oracle->add_option("instance", oracle_path, "instance or case JSON file")->required();
    oracle->add_flag("--ne", oracle_ne, "also enumerate Nash equilibria and report ratios");
    oracle->add_option("--out", oracle_out, "output JSON path (default stdout)");

    GenerateArgs gen_args;
    std::string gen_out;
    auto* generate = app.add_subcommand("generate", "emit a worst-case or random instance");
    generate
        ->add_option("family", gen_args.family,
                     "improvement-cycle | pos-multicolor-egalitarian | "
                     "pos-multicolor-proportional | pos-bw-egalitarian | "
                     "pos-bw-proportional | pos-uniform-even | poa-uniform-multicolor | "
                     "poa-bw-odd | random")
        ->required();
    generate->add_option("--m", gen_args.m, "number of colors");
    generate->add_option("--h-bins", gen_args.h, "feasible-profile bin count h");
    generate->add_option("--k", gen_args.k, "family parameter k");
    generate->add_option("--n", gen_args.n, "number of items");
    generate->add_flag("--odd", gen_args.odd, "odd-kappa variant");
    generate->add_option("--size-family", gen_args.random_family,
                         "uniform | grid | zero-heavy (random family)");
    generate->add_option("--kappa", gen_args.kappa, "uniform size 1/kappa");
    generate->add_option("--grid-d", gen_args.grid_denom, "grid denominator D");
    generate->add_option("--model", gen_args.model, "egalitarian | proportional");
    generate->add_option("--seed", gen_args.seed, "random seed");
    generate->add_option("--out", gen_out, "output JSON path (default stdout)");

    std::vector<std::string> ratio_paths;
    int ratio_sweep = 0;
    GenerateArgs ratio_args;
    std::string ratio_csv;
    auto* ratios = app.add_subcommand("ratios", "emit a CSV of exact PoA/PoS per instance");
    ratios->add_option("files", ratio_paths, "instance or case JSON files");
    ratios->add_option("--sweep-random", ratio_sweep, "additionally sweep N random instances");
    ratios->add_option("--n", ratio_args.n, "sweep: number of items");
    ratios->add_option("--m", ratio_args.m, "sweep: number of colors");
    ratios->add_option("--size-family", ratio_args.random_family,
                       "sweep: uniform | grid | zero-heavy");
    ratios->add_option("--kappa", ratio_args.kappa, "sweep: uniform size 1/kappa");
    ratios->add_option("--grid-d", ratio_args.grid_denom, "sweep: grid denominator D");
    ratios->add_option("--model", ratio_args.model, "sweep: cost model");
    ratios->add_option("--seed", ratio_args.seed, "sweep: base seed");
    ratios->add_option("--csv", ratio_csv, "output CSV path (default stdout)");

    std::string verify_path;
    auto* verify = app.add_subcommand("verify", "re-check every applicable claim of a case");
    verify->add_option("case", verify_path, "generated case JSON file")->required();

    try {
        opt_cap = env_cap("CBP_OPT_CAP", opt_cap);
        ne_cap = env_cap("CBP_NE_CAP", ne_cap);
        state_cap = env_cap("CBP_STATE_CAP", state_cap);
        app.parse(argc, argv);

        if (solve->parsed()) {
            return cmd_solve(solve_path, solve_alg, solve_out);
        }
        if (dynamics->parsed()) {
            return cmd_dynamics(dyn_path, dyn_policy, dyn_seed, dyn_max_steps, dyn_start,
                                dyn_allow_nonvalid, dyn_cycle,
                                static_cast<std::size_t>(state_cap), scan_cap, dyn_out);
        }
        if (oracle->parsed()) {
            return cmd_oracle(oracle_path, opt_cap, oracle_ne, ne_cap, oracle_out);
        }
        if (generate->parsed()) {
            emit(case_to_json(run_generator(gen_args)), gen_out);
            return kExitOk;
        }
        if (ratios->parsed()) {
            return cmd_ratios(ratio_paths, ratio_sweep, ratio_args, opt_cap, ne_cap,
                              ratio_csv);
        }
        if (verify->parsed()) {
            return cmd_verify(verify_path, opt_cap, ne_cap);
        }
        return kExitBadInput;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitBadInput;
    } catch (const CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << '\n';
        return kExitCapExceeded;
    } catch (const std::invalid_argument& e) {
        std::cerr << "bad input: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCheckFailed;
    }
}
