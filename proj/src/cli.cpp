#include "minreach/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "minreach/forest.hpp"
#include "minreach/fpt.hpp"
#include "minreach/generators.hpp"
#include "minreach/oracle.hpp"
#include "minreach/reductions.hpp"
#include "minreach/tgi.hpp"

namespace minreach::cli {

namespace {

using json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + path + "'");
    f << text;
}

json objective_json(const std::optional<Weight>& objective) {
    if (!objective) return nullptr;
    if (*objective == kInfiniteWeight) return "inf";
    return *objective;
}

json witness_json(const std::optional<std::vector<TimeEdgeKey>>& witness) {
    if (!witness) return nullptr;
    json arr = json::array();
    for (const TimeEdgeKey& key : *witness) arr.push_back({key.u, key.v, key.t});
    return arr;
}

json report_json(const tgi::AnyInstance& inst, const std::string& solver, const SolveResult& res,
                 std::int64_t wall_ms) {
    json report;
    report["problem"] = std::string(tgi::kind_name(tgi::kind_of(inst)));
    report["solver"] = solver;
    report["feasible"] = res.feasible;
    report["objective"] = objective_json(res.objective);
    report["witness"] = witness_json(res.witness);
    json stats;
    for (const auto& [key, value] : res.stats) stats[key] = value;
    stats["wall_ms"] = wall_ms;
    report["stats"] = stats;
    report["digest"] = tgi::digest(inst);
    return report;
}

std::vector<TimeEdgeKey> parse_witness_arg(const std::string& arg) {
    std::vector<TimeEdgeKey> keys;
    if (arg.empty()) return keys;
    std::stringstream ss(arg);
    std::string triple;
    while (std::getline(ss, triple, ';')) {
        if (triple.empty()) continue;
        std::replace(triple.begin(), triple.end(), ',', ' ');
        std::istringstream ts(triple);
        long long u, v, t;
        if (!(ts >> u >> v >> t))
            throw std::runtime_error("bad witness triple '" + triple + "'; expected u,v,t");
        VertexId a = static_cast<VertexId>(std::min(u, v));
        VertexId b = static_cast<VertexId>(std::max(u, v));
        keys.push_back(TimeEdgeKey{a, b, static_cast<Time>(t)});
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    return keys;
}

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int solve_command(const std::string& path, std::string solver, bool via_reduction,
                  std::uint64_t cap, std::ostream& out) {
    tgi::AnyInstance inst = tgi::parse_instance(read_file(path));
    const tgi::ProblemKind kind = tgi::kind_of(inst);
    oracle::OracleConfig ocfg;
    if (cap > 0) ocfg.subset_cap = cap;

    if (solver == "auto") {
        switch (kind) {
            case tgi::ProblemKind::Delete:
                solver = red::is_forest(tgi::graph_of(inst)) && !via_reduction ? "forest" : "brute";
                break;
            case tgi::ProblemKind::Delay:
            case tgi::ProblemKind::Slow:
                solver = "fpt";
                break;
            case tgi::ProblemKind::WForest:
                solver = "forest";
                break;
        }
        if (via_reduction) solver = "fpt";
    }

    SolveResult res;
    std::string solver_label = solver;
    const auto start = std::chrono::steady_clock::now();
    switch (kind) {
        case tgi::ProblemKind::Delete: {
            const auto& di = std::get<DeleteInstance>(inst);
            if (solver == "brute") {
                res = oracle::brute_delete(di, ocfg);
            } else if (solver == "forest") {
                res = forest::solve_delete_on_forest(di);
            } else if (solver == "fpt" && via_reduction) {
                auto [delay_inst, receipt] = red::delete_to_delay(di);
                SolveResult inner = fpt::solve_delay(delay_inst);
                res.feasible = inner.feasible;
                res.stats = inner.stats;
                if (inner.feasible) {
                    auto mapped = red::map_delay_witness_to_delete(di, receipt, *inner.witness);
                    if (!verify_delete(di, mapped))
                        throw InternalError("mapped deletion witness fails verification");
                    res.objective = static_cast<Weight>(
                        reachable_set(apply_delete(di.g, mapped), di.s).size());
                    res.witness = std::move(mapped);
                }
                solver_label = "fpt+reduction";
            } else {
                throw UsageError(
                    "no fixed-parameter solver exists for deletion under this parameter; use "
                    "--solver brute, --solver forest (forest inputs), or --via-reduction");
            }
            break;
        }
        case tgi::ProblemKind::Delay: {
            const auto& di = std::get<DelayInstance>(inst);
            if (solver == "brute")
                res = oracle::brute_delay(di, ocfg);
            else if (solver == "fpt")
                res = fpt::solve_delay(di);
            else if (solver == "forest") {
                WeightedForestDelayInstance wf{di.g, WeightFn::uniform(di.g.vertex_count(), 1),
                                               {},   di.s,
                                               di.k, static_cast<Weight>(di.r),
                                               di.delta};
                res = forest::solve_weighted_forest_delay(wf);
            } else
                throw UsageError("solver '" + solver + "' cannot handle problem delay");
            break;
        }
        case tgi::ProblemKind::Slow: {
            const auto& si = std::get<SlowInstance>(inst);
            if (solver == "brute")
                res = oracle::brute_slow(si, ocfg);
            else if (solver == "fpt")
                res = fpt::solve_slow(si);
            else
                throw UsageError("solver '" + solver + "' cannot handle problem slow");
            break;
        }
        case tgi::ProblemKind::WForest: {
            const auto& wi = std::get<WeightedForestDelayInstance>(inst);
            if (solver == "brute")
                res = oracle::brute_weighted_forest(wi, ocfg);
            else if (solver == "forest")
                res = forest::solve_weighted_forest_delay(wi);
            else
                throw UsageError("solver '" + solver + "' cannot handle problem wforest");
            break;
        }
    }
    const auto wall =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
            .count();
    out << report_json(inst, solver_label, res, wall).dump() << "\n";
    return res.feasible ? 0 : 1;
}

int verify_command(const std::string& path, const std::string& witness_arg, std::ostream& out) {
    tgi::AnyInstance inst = tgi::parse_instance(read_file(path));
    std::vector<TimeEdgeKey> witness = parse_witness_arg(witness_arg);
    bool ok = false;
    switch (tgi::kind_of(inst)) {
        case tgi::ProblemKind::Delete:
            ok = verify_delete(std::get<DeleteInstance>(inst), witness);
            break;
        case tgi::ProblemKind::Delay:
            ok = verify_delay(std::get<DelayInstance>(inst), witness);
            break;
        case tgi::ProblemKind::Slow:
            ok = verify_slow(std::get<SlowInstance>(inst), witness);
            break;
        case tgi::ProblemKind::WForest:
            ok = verify_weighted_forest(std::get<WeightedForestDelayInstance>(inst), witness);
            break;
    }
    json report;
    report["problem"] = std::string(tgi::kind_name(tgi::kind_of(inst)));
    report["accepted"] = ok;
    report["witness_size"] = witness.size();
    report["digest"] = tgi::digest(inst);
    out << report.dump() << "\n";
    return ok ? 0 : 1;
}

int reduce_command(const std::string& mode, const std::string& path, const std::string& out_path,
                   std::ostream& out) {
    tgi::AnyInstance inst = tgi::parse_instance(read_file(path));
    tgi::AnyInstance produced;
    if (mode == "delete-to-delay") {
        if (tgi::kind_of(inst) != tgi::ProblemKind::Delete)
            throw UsageError("delete-to-delay expects a delete instance");
        produced = red::delete_to_delay(std::get<DeleteInstance>(inst)).first;
    } else if (mode == "single-source") {
        if (tgi::kind_of(inst) != tgi::ProblemKind::Slow)
            throw UsageError("single-source expects a slow instance");
        produced = red::to_single_source(std::get<SlowInstance>(inst)).first;
    } else if (mode == "unfold") {
        if (tgi::kind_of(inst) != tgi::ProblemKind::WForest)
            throw UsageError("unfold expects a wforest instance");
        produced = red::unfold_degree3(std::get<WeightedForestDelayInstance>(inst)).first;
    } else {
        throw UsageError("unknown reduction '" + mode +
                         "'; expected delete-to-delay, single-source, or unfold");
    }
    write_output(tgi::serialize_instance(produced), out_path, out);
    return 0;
}

int reach_command(const std::string& path, std::ostream& out) {
    tgi::AnyInstance inst = tgi::parse_instance(read_file(path));
    const TemporalGraph& g = tgi::graph_of(inst);
    ArrivalMap m = earliest_arrival(g, tgi::sources_of(inst));
    json arrivals;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (m.at(v) == kNever)
            arrivals[std::to_string(v)] = "never";
        else
            arrivals[std::to_string(v)] = m.at(v);
    }
    json report;
    report["arrival"] = arrivals;
    report["reachable"] = reachable_set(g, tgi::sources_of(inst)).size();
    report["digest"] = tgi::digest(inst);
    out << report.dump() << "\n";
    return 0;
}

int approx_command(const std::string& path, std::ostream& out) {
    tgi::AnyInstance inst = tgi::parse_instance(read_file(path));
    const tgi::ProblemKind kind = tgi::kind_of(inst);
    if (kind != tgi::ProblemKind::Delay && kind != tgi::ProblemKind::Slow)
        throw UsageError("approx handles delay and slow instances only");
    const auto start = std::chrono::steady_clock::now();
    SolveResult res;
    if (kind == tgi::ProblemKind::Delay) {
        const auto& di = std::get<DelayInstance>(inst);
        res = fpt::approx_min_reach(di.g, di.s, di.k, di.delta);
        if (!verify_delay(DelayInstance{di.g, di.s, di.k, *res.objective, di.delta}, *res.witness))
            throw InternalError("approximation witness fails verification");
    } else {
        const auto& si = std::get<SlowInstance>(inst);
        res = fpt::approx_min_reach(si.g, si.s, si.k, si.delta);
        if (!verify_slow(SlowInstance{si.g, si.s, si.k, *res.objective, si.delta}, *res.witness))
            throw InternalError("approximation witness fails verification");
    }
    const auto wall =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
            .count();
    out << report_json(inst, "approx", res, wall).dump() << "\n";
    return 0;
}

gen::GammaChoice gamma_from_name(const std::string& name) {
    if (name == "one") return gen::GammaChoice::One;
    if (name == "01") return gen::GammaChoice::ZeroOne;
    if (name == "1to3") return gen::GammaChoice::OneToThree;
    throw UsageError("unknown gamma choice '" + name + "'; expected one, 01, or 1to3");
}

tgi::AnyInstance wrap_generated(TemporalGraph g, const std::string& problem, int k,
                                std::int64_t r_flag, Time delta, const std::string& sources_arg) {
    std::vector<VertexId> sources;
    {
        std::stringstream ss(sources_arg);
        std::string tok;
        while (std::getline(ss, tok, ',')) sources.push_back(static_cast<VertexId>(std::stoll(tok)));
    }
    SourceSet s = SourceSet::of(std::move(sources), g.vertex_count());
    const std::uint64_t r =
        r_flag < 0 ? static_cast<std::uint64_t>(g.vertex_count()) : static_cast<std::uint64_t>(r_flag);
    if (problem == "delete") {
        DeleteInstance inst{std::move(g), std::move(s), k, r};
        inst.validate();
        return inst;
    }
    if (problem == "delay") {
        DelayInstance inst{std::move(g), std::move(s), k, r, delta};
        inst.validate();
        return inst;
    }
    if (problem == "slow") {
        SlowInstance inst{std::move(g), std::move(s), k, r, delta};
        inst.validate();
        return inst;
    }
    if (problem == "wforest") {
        WeightFn w = WeightFn::uniform(g.vertex_count(), 1);
        WeightedForestDelayInstance inst{std::move(g), std::move(w),          {},
                                         std::move(s), k, static_cast<Weight>(r), delta};
        inst.validate();
        return inst;
    }
    throw UsageError("unknown problem '" + problem + "'");
}

struct CrosscheckTally {
    int instances = 0;
    int mismatches = 0;
    std::vector<std::string> lines;
};

CrosscheckTally crosscheck_range(std::uint64_t seed, int begin, int end, int stride) {
    CrosscheckTally tally;
    gen::CorpusOptions copt;
    gen::WForestOptions wopt;
    for (int i = begin; i < end; i += stride) {
        const std::uint64_t s = seed * 1000003ull + static_cast<std::uint64_t>(i);
        ++tally.instances;
        switch (i % 4) {
            case 0: {
                DelayInstance inst = gen::random_delay_instance(s, copt);
                SolveResult brute = oracle::brute_delay(inst);
                SolveResult fast = fpt::solve_delay(inst);
                bool witness_ok = !fast.feasible || verify_delay(inst, *fast.witness);
                if (brute.feasible != fast.feasible || !witness_ok) {
                    ++tally.mismatches;
                    tally.lines.push_back("mismatch kind=delay seed=" + std::to_string(s));
                }
                break;
            }
            case 1: {
                SlowInstance inst = gen::random_slow_instance(s, copt);
                SolveResult brute = oracle::brute_slow(inst);
                SolveResult fast = fpt::solve_slow(inst);
                bool witness_ok = !fast.feasible || verify_slow(inst, *fast.witness);
                if (brute.feasible != fast.feasible || !witness_ok) {
                    ++tally.mismatches;
                    tally.lines.push_back("mismatch kind=slow seed=" + std::to_string(s));
                }
                break;
            }
            case 2: {
                WeightedForestDelayInstance inst = gen::random_wforest_instance(s, wopt);
                SolveResult brute = oracle::brute_weighted_forest(inst);
                SolveResult dp = forest::solve_weighted_forest_delay(inst);
                if (brute.objective != dp.objective || brute.feasible != dp.feasible) {
                    ++tally.mismatches;
                    tally.lines.push_back("mismatch kind=wforest seed=" + std::to_string(s));
                }
                break;
            }
            default: {
                DeleteInstance inst = gen::random_forest_delete_instance(s, wopt);
                SolveResult brute = oracle::brute_delete(inst);
                SolveResult dp = forest::solve_delete_on_forest(inst);
                if (brute.feasible != dp.feasible || brute.objective != dp.objective) {
                    ++tally.mismatches;
                    tally.lines.push_back("mismatch kind=delete seed=" + std::to_string(s));
                }
                break;
            }
        }
    }
    return tally;
}

int crosscheck_command(int count, std::uint64_t seed, int threads, std::ostream& out) {
    if (count < 1) throw UsageError("--count must be >= 1");
    threads = std::max(1, std::min(threads, count));
    std::vector<CrosscheckTally> tallies(static_cast<std::size_t>(threads));
    if (threads == 1) {
        tallies[0] = crosscheck_range(seed, 0, count, 1);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&, t] { tallies[static_cast<std::size_t>(t)] =
                                           crosscheck_range(seed, t, count, threads); });
        for (auto& th : pool) th.join();
    }
    CrosscheckTally total;
    for (const auto& t : tallies) {
        total.instances += t.instances;
        total.mismatches += t.mismatches;
        total.lines.insert(total.lines.end(), t.lines.begin(), t.lines.end());
    }
    std::sort(total.lines.begin(), total.lines.end());
    for (const auto& line : total.lines) out << line << "\n";
    json report;
    report["instances"] = total.instances;
    report["mismatches"] = total.mismatches;
    report["seed"] = seed;
    out << report.dump() << "\n";
    return total.mismatches == 0 ? 0 : 1;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact, parameterized, and approximate solvers for minimizing temporal reachability"};
    app.name("minreach");
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "solve an instance file");
    std::string solve_file, solver = "auto";
    bool via_reduction = false;
    std::uint64_t cap = 0;
    solve->add_option("file", solve_file, "TGI instance file")->required();
    solve->add_option("--solver", solver, "auto|brute|fpt|forest")
        ->check(CLI::IsMember({"auto", "brute", "fpt", "forest"}));
    solve->add_flag("--via-reduction", via_reduction,
                    "solve deletion through the delay reduction");
    solve->add_option("--cap", cap, "subset cap for the brute-force solver");

    // verify
    auto* verify = app.add_subcommand("verify", "check a witness against an instance");
    std::string verify_file, witness_arg;
    verify->add_option("file", verify_file, "TGI instance file")->required();
    verify->add_option("--witness", witness_arg, "semicolon-separated u,v,t triples");

    // reduce
    auto* reduce = app.add_subcommand("reduce", "apply an instance transformation");
    std::string reduce_mode, reduce_file, reduce_out;
    reduce->add_option("mode", reduce_mode, "delete-to-delay|single-source|unfold")->required();
    reduce->add_option("file", reduce_file, "TGI instance file")->required();
    reduce->add_option("-o,--output", reduce_out, "output file (default stdout)");

    // gen
    auto* genc = app.add_subcommand("gen", "generate instances");
    genc->require_subcommand(1);
    std::string gen_out, gen_problem = "delay", gen_sources = "0", gen_gamma = "one";
    int gen_n = 6, gen_k = 1, gen_epp = 2;
    std::int64_t gen_r = -1;
    Time gen_tau = 3, gen_delta = 1;
    double gen_p = 0.3;
    std::uint64_t gen_seed = 1;
    auto add_instance_flags = [&](CLI::App* sub) {
        sub->add_option("--problem", gen_problem, "delete|delay|slow|wforest");
        sub->add_option("--k", gen_k, "budget");
        sub->add_option("--r", gen_r, "bound (default: n)");
        sub->add_option("--delta", gen_delta, "delay amount");
        sub->add_option("--sources", gen_sources, "comma-separated source ids");
        sub->add_option("-o,--output", gen_out, "output file (default stdout)");
    };
    auto* gen_random = genc->add_subcommand("random", "random temporal graph");
    gen_random->add_option("--n", gen_n, "vertices");
    gen_random->add_option("--tau", gen_tau, "lifetime");
    gen_random->add_option("--p", gen_p, "slot probability");
    gen_random->add_option("--gamma", gen_gamma, "one|01|1to3");
    gen_random->add_option("--seed", gen_seed, "rng seed");
    add_instance_flags(gen_random);
    auto* gen_tree = genc->add_subcommand("tree", "random temporal tree");
    gen_tree->add_option("--n", gen_n, "vertices");
    gen_tree->add_option("--tau", gen_tau, "lifetime");
    gen_tree->add_option("--epp", gen_epp, "max time labels per tree edge");
    gen_tree->add_option("--seed", gen_seed, "rng seed");
    add_instance_flags(gen_tree);
    auto* gen_clique = genc->add_subcommand("clique", "deletion instance from a clique question");
    std::string clique_file;
    int clique_ell = 3;
    gen_clique->add_option("file", clique_file, "TGI file; its underlying graph is the input")
        ->required();
    gen_clique->add_option("--ell", clique_ell, "clique size")->required();
    gen_clique->add_option("-o,--output", gen_out, "output file (default stdout)");

    // reach
    auto* reach = app.add_subcommand("reach", "print the earliest-arrival map");
    std::string reach_file;
    reach->add_option("file", reach_file, "TGI instance file")->required();

    // approx
    auto* approx = app.add_subcommand("approx", "greedy reach minimization under the budget");
    std::string approx_file;
    approx->add_option("file", approx_file, "TGI instance file")->required();

    // crosscheck
    auto* crosscheck = app.add_subcommand("crosscheck", "solvers vs oracles on a random corpus");
    int cc_count = 100, cc_threads = 1;
    std::uint64_t cc_seed = 1;
    crosscheck->add_option("--count", cc_count, "number of instances");
    crosscheck->add_option("--seed", cc_seed, "corpus seed");
    crosscheck->add_option("--threads", cc_threads, "worker threads (results are order-independent)");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (solve->parsed()) return solve_command(solve_file, solver, via_reduction, cap, out);
        if (verify->parsed()) return verify_command(verify_file, witness_arg, out);
        if (reduce->parsed()) return reduce_command(reduce_mode, reduce_file, reduce_out, out);
        if (genc->parsed()) {
            if (gen_clique->parsed()) {
                tgi::AnyInstance h_inst = tgi::parse_instance(read_file(clique_file));
                const TemporalGraph& hg = tgi::graph_of(h_inst);
                std::set<std::pair<VertexId, VertexId>> pairs;
                for (const TimeEdge& e : hg.edges()) pairs.emplace(e.u, e.v);
                red::SimpleGraph h = red::SimpleGraph::of(
                    hg.vertex_count(), {pairs.begin(), pairs.end()});
                red::CliqueDeleteResult built = red::clique_to_delete(h, clique_ell);
                if (built.trivially_infeasible)
                    err << "note: no clique of that size can exist; emitting a canonical "
                           "infeasible instance\n";
                write_output(tgi::serialize_instance(built.inst), gen_out, out);
                return 0;
            }
            TemporalGraph g =
                gen_random->parsed()
                    ? gen::generate_random(static_cast<VertexId>(gen_n), gen_tau, gen_p,
                                           gamma_from_name(gen_gamma), gen_seed)
                    : gen::generate_random_tree(static_cast<VertexId>(gen_n), gen_tau, gen_epp,
                                                gen_seed);
            tgi::AnyInstance inst =
                wrap_generated(std::move(g), gen_problem, gen_k, gen_r, gen_delta, gen_sources);
            write_output(tgi::serialize_instance(inst), gen_out, out);
            return 0;
        }
        if (reach->parsed()) return reach_command(reach_file, out);
        if (approx->parsed()) return approx_command(approx_file, out);
        if (crosscheck->parsed()) return crosscheck_command(cc_count, cc_seed, cc_threads, out);
        err << "error: no subcommand\n";
        return 2;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace minreach::cli
