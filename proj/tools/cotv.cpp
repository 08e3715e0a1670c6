// cotv: command-line front end for the chain-of-thought verification library.
// Exit codes: 0 success, 2 validation/usage error, 3 bound-violation verdict.

#include "cotv/adversary.hpp"
#include "cotv/boosting.hpp"
#include "cotv/class_io.hpp"
#include "cotv/dimensions.hpp"
#include "cotv/families.hpp"
#include "cotv/learners.hpp"
#include "cotv/reductions.hpp"
#include "cotv/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

using namespace cotv;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitViolation = 3;

struct Globals
{
    int threads = 1;
    std::string out;
};

void emit(const Globals& g, const std::string& text)
{
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(g.out, std::ios::binary);
    if (!f)
        throw Error(ErrorCode::InvalidArgument, "cannot write '" + g.out + "'");
    f << text;
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
    f << text;
}

std::string fixed6(double v)
{
    std::ostringstream s;
    s << std::fixed << std::setprecision(6) << v;
    return s.str();
}

struct CostFlags
{
    std::string soundness = "1";
    std::string completeness = "1";
    std::string location = "0";

    void attach(CLI::App* cmd)
    {
        cmd->add_option("--gamma-s", soundness, "soundness cost (rational)")->capture_default_str();
        cmd->add_option("--gamma-c", completeness, "completeness cost (rational)")->capture_default_str();
        cmd->add_option("--gamma-l", location, "location cost (rational)")->capture_default_str();
    }
    [[nodiscard]] CostVector get() const
    {
        return CostVector{ parse_rational(soundness), parse_rational(completeness), parse_rational(location) };
    }
};

Json costs_json(const CostVector& c)
{
    return Json{ { "soundness", to_string(c.soundness) },
                 { "completeness", to_string(c.completeness) },
                 { "location", to_string(c.location) } };
}

std::vector<Edge> parse_edges(const std::string& text)
{
    std::vector<Edge> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            continue;
        const auto dash = item.find('-');
        if (dash == std::string::npos)
            throw Error(ErrorCode::InvalidArgument, "edge '" + item + "' must look like a-b");
        try {
            const int a = std::stoi(item.substr(0, dash));
            const int b = std::stoi(item.substr(dash + 1));
            out.emplace_back(std::min(a, b), std::max(a, b));
        }
        catch (const std::logic_error&) {
            throw Error(ErrorCode::InvalidArgument, "edge '" + item + "' must use integer states 0..15");
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

struct FamiliesCmd
{
    std::string family;
    int L = 2;
    int n = 2;
    int bits = 4;
    std::string revealed;
    bool full = false;
    bool fail_token = false;

    int run(const Globals& g) const
    {
        ClassPtr cls;
        if (family == "singleton-bitstring")
            cls = singleton_bitstring_class(L);
        else if (family == "conjunction")
            cls = conjunction_class(L);
        else if (family == "complement")
            cls = complement_class(n, L);
        else if (family == "indicator")
            cls = indicator_class(bits);
        else
            cls = river_crossing_class(parse_edges(revealed), L, full).cls;
        if (fail_token)
            cls = add_fail_token(*cls);
        emit(g, dump_class(*cls));
        return kExitOk;
    }
};

struct DimCmd
{
    std::string class_path;
    std::string kind = "sc";
    int k = 0;
    CostFlags costs;
    bool no_witness = false;
    std::string dot;

    int run(const Globals& g) const
    {
        const auto cls = load_class(class_path);
        const auto tk = parse_tree_kind(kind);
        if (k < 0)
            throw Error(ErrorCode::InvalidArgument, "--k must be >= 0");
        const DimParams params{ k, costs.get() };
        DimensionEngine engine(cls);
        const auto all = cls->all_verifiers();
        const auto value = engine.value(all, tk, params);
        Json out{ { "kind", to_string(tk) }, { "value", to_string(value) }, { "verifiers", cls->verifier_count() } };
        if (tk == TreeKind::SC)
            out["k"] = k;
        if (tk == TreeKind::WSC || tk == TreeKind::SCL)
            out["costs"] = costs_json(params.costs);
        if (!no_witness) {
            if (value == Rational(0)) {
                out["witness"] = nullptr;
            }
            else {
                const auto tree = engine.extract_witness(all, tk, params);
                out["witness"] = tree_to_json(*cls, tree);
                out["witness_certified_value"] = to_string(certified_value(tree));
                out["witness_shattered"] = verify_shattered(tree, VersionSpace(cls));
                if (!dot.empty())
                    write_file(dot, tree_to_dot(*cls, tree));
            }
        }
        const auto st = engine.stats();
        out["stats"] = Json{ { "memo_hits", st.memo_hits }, { "nodes_expanded", st.nodes_expanded } };
        emit(g, canonical_dump(out));
        return kExitOk;
    }
};

std::vector<PrefixInstance> promise_prefixes(const Oracle& oracle)
{
    std::vector<PrefixInstance> out;
    const auto& cls = oracle.cls();
    for (std::size_t i = 0; i < cls.universe_size(); ++i) {
        const auto p = cls.parent(i);
        if (p == VerifierClass::npos || cls.accepts_all_prefixes(oracle.target(), p))
            out.push_back(cls.universe()[i]);
    }
    return out;
}

struct RunCmd
{
    std::string class_path;
    std::string learner;
    std::size_t target = 0;
    std::string sequence;
    int k = 0;
    CostFlags costs;
    bool via_prefix = false;
    bool via_cot = false;
    std::string mode = "prefix";
    bool no_promise = false;

    int run(const Globals& g) const
    {
        const auto cls = load_class(class_path);
        if (target >= cls->verifier_count())
            throw Error(ErrorCode::InvalidArgument, "--target " + std::to_string(target) + " is not a verifier id");
        const Oracle oracle(cls, target);
        LearnerConfig cfg{ k, costs.get(), std::make_shared<DimensionEngine>(cls) };
        RunOptions opts;
        opts.costs = cfg.costs;
        opts.enforce_promise = !no_promise;
        if (mode == "sequence")
            opts.mode = MistakeMode::SequenceLevel;
        std::optional<Json> seq_json;
        if (!sequence.empty())
            seq_json = load_json_file(sequence);

        const bool prefix_learner = is_prefix_learner_name(learner);
        if (!prefix_learner && !is_cot_learner_name(learner))
            throw Error(ErrorCode::InvalidArgument, "unknown learner '" + learner + "'");
        if (via_prefix && !prefix_learner)
            throw Error(ErrorCode::InvalidArgument, "--via-prefix wraps a prefix learner (sc-soa, wsc-soa)");
        if (via_cot && prefix_learner)
            throw Error(ErrorCode::InvalidArgument, "--via-cot wraps a chain-of-thought learner");

        const bool cot_game = via_prefix || (!prefix_learner && !via_cot);
        Transcript tr;
        std::string shown;
        if (cot_game) {
            std::unique_ptr<CotLearner> l;
            if (via_prefix)
                l = std::make_unique<CotFromPrefix>(cls, make_prefix_learner(learner, cls, cfg));
            else
                l = make_cot_learner(learner, cls, cfg);
            shown = l->name();
            const auto seq = seq_json ? cot_sequence_from_json(*cls, *seq_json) : cls->cot_instances();
            tr = run_cot(*l, oracle, seq, opts);
        }
        else {
            std::unique_ptr<PrefixLearner> l;
            if (via_cot)
                l = std::make_unique<PrefixFromCot>(cls, make_cot_learner(learner, cls, cfg));
            else
                l = make_prefix_learner(learner, cls, cfg);
            shown = l->name();
            const auto seq = seq_json ? prefix_sequence_from_json(*cls, *seq_json) : promise_prefixes(oracle);
            tr = run_prefix(*l, oracle, seq, opts);
        }
        Json out{ { "learner", shown },
                  { "game", cot_game ? "chain-of-thought" : "prefix" },
                  { "target", target },
                  { "costs", costs_json(opts.costs) },
                  { "transcript", transcript_to_json(*cls, tr) } };
        emit(g, canonical_dump(out));
        return kExitOk;
    }
};

struct DuelCmd
{
    std::string class_path;
    std::string learner;
    std::string adversary = "tree";
    std::string kind;
    int k = 0;
    CostFlags costs;

    // "tight" when the learner meets the bound exactly, "bound met" when the
    // lower bound holds with slack, "bound violated" otherwise.
    static std::string verdict(bool lower_ok, bool upper_ok, bool equal)
    {
        if (!lower_ok || !upper_ok)
            return "bound violated";
        return equal ? "tight" : "bound met";
    }

    int run(const Globals& g) const
    {
        const auto cls = load_class(class_path);
        LearnerConfig cfg{ k, costs.get(), std::make_shared<DimensionEngine>(cls) };
        const bool prefix_learner = is_prefix_learner_name(learner);
        if (!prefix_learner && !is_cot_learner_name(learner))
            throw Error(ErrorCode::InvalidArgument, "unknown learner '" + learner + "'");
        Json out{ { "adversary", adversary }, { "learner", learner } };
        std::string v;

        if (adversary == "tree") {
            TreeKind tk = prefix_learner ? (learner == "wsc-soa" ? TreeKind::WSC : TreeKind::SC) : TreeKind::SCL;
            if (!kind.empty())
                tk = parse_tree_kind(kind);
            if ((tk == TreeKind::SCL) == prefix_learner)
                throw Error(ErrorCode::InvalidArgument, "tree kind " + to_string(tk) + " does not fit learner " + learner);
            const DimParams params{ k, cfg.costs };
            auto& engine = *cfg.engine;
            const auto all = cls->all_verifiers();
            const auto dim = engine.value(all, tk, params);
            const VersionSpace vs(cls);
            AdversaryRun run;
            if (dim != Rational(0)) {
                const auto tree = engine.extract_witness(all, tk, params);
                if (prefix_learner) {
                    auto l = make_prefix_learner(learner, cls, cfg);
                    run = play_tree_adversary(tree, vs, *l);
                }
                else {
                    auto l = make_cot_learner(learner, cls, cfg);
                    run = play_tree_adversary(tree, vs, *l);
                }
            }
            const auto& t = run.transcript.totals();
            out["kind"] = to_string(tk);
            out["dimension"] = to_string(dim);
            if (tk == TreeKind::SC || tk == TreeKind::Plain) {
                const auto m = static_cast<std::int64_t>(t.mistakes());
                const bool over_budget = tk == TreeKind::SC && static_cast<int>(t.soundness) > k;
                const bool lower_ok = over_budget || Rational(m) >= dim;
                const bool optimal = tk == TreeKind::SC && learner == "sc-soa";
                const bool upper_ok = !optimal || (!over_budget && Rational(m) <= dim);
                v = verdict(lower_ok, upper_ok, !over_budget && Rational(m) == dim);
                out["mistakes"] = m;
                if (tk == TreeKind::SC)
                    out["k"] = k;
            }
            else {
                const bool optimal = (tk == TreeKind::WSC && learner == "wsc-soa") || (tk == TreeKind::SCL && learner == "scl-soa");
                v = verdict(t.cost >= dim, !optimal || t.cost <= dim, t.cost == dim);
                out["cost"] = to_string(t.cost);
                out["costs"] = costs_json(cfg.costs);
            }
            out["consistent_verifier"] = run.consistent_verifier;
            out["transcript"] = transcript_to_json(*cls, run.transcript);
        }
        else if (adversary == "prop31" || adversary == "prop32") {
            if (prefix_learner)
                throw Error(ErrorCode::InvalidArgument, adversary + " plays against chain-of-thought learners");
            auto l = make_cot_learner(learner, cls, cfg);
            const int L = cls->max_len();
            const auto n = cls->verifier_count();
            if (adversary == "prop31") {
                const auto run = prop31_adversary(cls, *l);
                const auto m = static_cast<std::int64_t>(run.transcript.totals().mistakes());
                const std::int64_t lower = L / 2;
                // Halving-style majority vote never exceeds floor(log2 |H|).
                const auto log2h = static_cast<std::int64_t>(std::floor(std::log2(static_cast<double>(n))));
                const bool upper_ok = learner != "majority" || m <= log2h;
                v = verdict(m >= lower, upper_ok, m == lower);
                out["lower_bound"] = lower;
                out["mistakes"] = m;
                out["consistent_verifier"] = run.consistent_verifier;
                out["transcript"] = transcript_to_json(*cls, run.transcript);
            }
            else {
                const auto run = prop32_adversary(cls, *l);
                const auto& t = run.transcript.totals();
                const auto lower = static_cast<std::int64_t>(n) - 1;
                const auto c = static_cast<std::int64_t>(t.completeness);
                const bool upper_ok = learner != "sound-conservative" || (t.soundness == 0 && c <= lower);
                v = verdict(c >= lower, upper_ok, c == lower && t.soundness == 0);
                out["lower_bound"] = lower;
                out["completeness_mistakes"] = c;
                out["soundness_mistakes"] = t.soundness;
                out["consistent_verifier"] = run.consistent_verifier;
                out["transcript"] = transcript_to_json(*cls, run.transcript);
            }
        }
        else {
            throw Error(ErrorCode::InvalidArgument, "unknown adversary '" + adversary + "' (tree, prop31, prop32)");
        }
        out["verdict"] = v;
        emit(g, canonical_dump(out));
        return v == "bound violated" ? kExitViolation : kExitOk;
    }
};

struct BoostCmd
{
    std::string scenario_path;
    std::optional<std::int64_t> runs;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> eval_trials;
    std::string write_example;

    BoostScenario load() const
    {
        auto s = scenario_from_json(load_json_file(scenario_path));
        if (runs)
            s.runs = *runs;
        if (seed)
            s.seed = *seed;
        if (eval_trials)
            s.eval_trials = *eval_trials;
        if (s.runs < 1)
            throw Error(ErrorCode::InvalidArgument, "--runs must be >= 1");
        return s;
    }

    int run(const Globals& g) const
    {
        if (!write_example.empty()) {
            write_file(write_example, canonical_dump(scenario_to_json(standard_boost_scenario())));
            if (scenario_path.empty())
                return kExitOk;
        }
        if (scenario_path.empty())
            throw Error(ErrorCode::InvalidArgument, "--scenario is required");
        const auto s = load();
        const Oracle oracle(s.cls, s.target);
        const auto alpha = verify_alpha_good(s.provers, oracle, s.distribution);
        const auto bounds = scenario_bounds(s);
        const auto eps_s = bounds.eps_s(s.params.epsilon);
        const auto eps_c = bounds.eps_c(s.params.epsilon);
        const auto abstain_bound = (Rational(1) - alpha.gamma) + eps_c + eps_s + s.params.epsilon_prime;

        std::vector<PipelineRun> results(static_cast<std::size_t>(s.runs));
        const auto workers = static_cast<std::size_t>(std::max(1, std::min<int>(g.threads, static_cast<int>(s.runs))));
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(workers);
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t r = w; r < results.size(); r += workers)
                        results[r] = run_pipeline(s, bounds, static_cast<std::int64_t>(r));
                }
                catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        for (auto& t : pool)
            t.join();
        for (auto& e : errors)
            if (e)
                std::rethrow_exception(e);

        const double se = s.eval_trials > 0
                              ? std::sqrt(to_double(abstain_bound) * std::max(0.0, 1.0 - to_double(abstain_bound)) /
                                          static_cast<double>(s.eval_trials))
                              : 0.0;
        std::int64_t failures = 0, within = 0, incorrect_runs = 0, max_calls = 0;
        bool incorrect_over = false;
        Json runs_json = Json::array();
        for (const auto& r : results) {
            Json rj{ { "run", r.run }, { "build", build_report_to_json(r.build) } };
            max_calls = std::max({ max_calls, r.build.max_calls_process, r.build.max_calls_test });
            if (!r.build.prover)
                ++failures;
            if (r.rates) {
                rj["rates"] = rates_to_json(*r.rates);
                if (to_double(r.rates->abstain_rate()) <= to_double(abstain_bound) + 3 * se)
                    ++within;
                if (r.rates->incorrect_proof > 0)
                    ++incorrect_runs;
                const double inc_se = std::sqrt(to_double(eps_s) * (1 - to_double(eps_s)) / static_cast<double>(r.rates->trials));
                if (to_double(r.rates->incorrect_rate()) > to_double(eps_s) + 3 * inc_se)
                    incorrect_over = true;
            }
            runs_json.push_back(std::move(rj));
        }
        const auto call_bound = oracle_call_bound(s.provers.k(), s.cls->max_len(),
                                                  timeout_budget(s.provers.alpha, s.provers.k(), s.cls->max_len(), s.params.epsilon_prime));
        const bool violated = incorrect_over || max_calls > call_bound;
        Json out{ { "scenario",
                    Json{ { "seed", s.seed },
                          { "runs", s.runs },
                          { "eval_trials", s.eval_trials },
                          { "learner", s.learner },
                          { "k", s.k },
                          { "provers", s.provers.k() },
                          { "L", s.cls->max_len() },
                          { "epsilon", to_string(s.params.epsilon) },
                          { "epsilon_prime", to_string(s.params.epsilon_prime) },
                          { "delta", to_string(s.params.delta) },
                          { "s2_constant", s.params.s2_constant } } },
                  { "alpha_certificate", alpha_report_to_json(alpha, s.provers.alpha) },
                  { "bounds",
                    Json{ { "eps_s", to_string(eps_s) },
                          { "eps_c", to_string(eps_c) },
                          { "abstain", to_string(abstain_bound) },
                          { "incorrect_proof", to_string(eps_s) },
                          { "abstain_standard_error", fixed6(se) },
                          { "oracle_calls_per_example", call_bound } } },
                  { "runs", std::move(runs_json) },
                  { "summary",
                    Json{ { "build_failures", failures },
                          { "runs_abstain_within_bound", within },
                          { "runs_with_incorrect_proof", incorrect_runs },
                          { "max_oracle_calls_per_example", max_calls } } },
                  { "verdict", violated ? "bound violated" : "bound met" } };
        emit(g, canonical_dump(out));
        return violated ? kExitViolation : kExitOk;
    }
};

struct VerifyAlphaCmd
{
    std::string scenario_path;

    int run(const Globals& g) const
    {
        const auto s = scenario_from_json(load_json_file(scenario_path));
        const Oracle oracle(s.cls, s.target);
        const auto rep = verify_alpha_good(s.provers, oracle, s.distribution);
        auto out = alpha_report_to_json(rep, s.provers.alpha);
        const bool ok = rep.declared_violations.empty();
        out["verdict"] = ok ? "certified" : "bound violated";
        emit(g, canonical_dump(out));
        return ok ? kExitOk : kExitViolation;
    }
};

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{ "Online chain-of-thought verification toolkit", "cotv" };
    app.require_subcommand(1);
    // Global options may also follow the subcommand.
    app.fallthrough();
    Globals g;
    app.add_option("--threads", g.threads, "worker threads for independent trials")->check(CLI::PositiveNumber);
    app.add_option("-o,--out", g.out, "write the report to this file instead of stdout");

    FamiliesCmd fam;
    auto* cf = app.add_subcommand("families", "emit a built-in verifier class as a class file");
    cf->add_option("--family", fam.family, "family name")
        ->required()
        ->check(CLI::IsMember({ "singleton-bitstring", "conjunction", "complement", "indicator", "river-crossing" }));
    cf->add_option("--L", fam.L, "trace length")->capture_default_str();
    cf->add_option("--n", fam.n, "number of verifiers (complement)")->capture_default_str();
    cf->add_option("--bits", fam.bits, "vector width (indicator)")->capture_default_str();
    cf->add_option("--revealed", fam.revealed, "revealed river edges, e.g. 0-12,4-12 (river-crossing)");
    cf->add_flag("--full", fam.full, "river-crossing: all legal edges may be hidden");
    cf->add_flag("--fail-token", fam.fail_token, "append a fail token F and its paddings");

    DimCmd dim;
    auto* cd = app.add_subcommand("dim", "compute a dimension and its witness tree");
    cd->add_option("--class", dim.class_path, "class file")->required();
    cd->add_option("--kind", dim.kind, "plain, sc, wsc or scl")->capture_default_str();
    cd->add_option("--k", dim.k, "soundness budget (sc)")->capture_default_str();
    dim.costs.attach(cd);
    cd->add_flag("--no-witness", dim.no_witness, "skip witness extraction");
    cd->add_option("--dot", dim.dot, "also write the witness as Graphviz DOT");

    RunCmd run;
    auto* cr = app.add_subcommand("run", "play a learner against a realizable oracle");
    cr->add_option("--class", run.class_path, "class file")->required();
    cr->add_option("--learner", run.learner, "sc-soa, wsc-soa, scl-soa, majority, sound-conservative, reject-unless-unanimous, river-crossing")
        ->required();
    cr->add_option("--target", run.target, "target verifier id")->capture_default_str();
    cr->add_option("--sequence", run.sequence, "JSON sequence file; default: every in-universe instance");
    cr->add_option("--k", run.k, "soundness budget (sc-soa)")->capture_default_str();
    run.costs.attach(cr);
    auto* vp = cr->add_flag("--via-prefix", run.via_prefix, "play the chain-of-thought game through a prefix learner");
    auto* vc = cr->add_flag("--via-cot", run.via_cot, "play the prefix game through a chain-of-thought learner (needs F)");
    vp->excludes(vc);
    cr->add_option("--mode", run.mode, "mistake taxonomy for chain-of-thought rounds")
        ->check(CLI::IsMember({ "prefix", "sequence" }))
        ->capture_default_str();
    cr->add_flag("--no-promise", run.no_promise, "allow prefix instances outside the promise");

    DuelCmd duel;
    auto* cu = app.add_subcommand("duel", "play a learner against an optimal adversary and judge the bound");
    cu->add_option("--class", duel.class_path, "class file")->required();
    cu->add_option("--learner", duel.learner, "learner name")->required();
    cu->add_option("--adversary", duel.adversary, "tree, prop31 or prop32")
        ->check(CLI::IsMember({ "tree", "prop31", "prop32" }))
        ->capture_default_str();
    cu->add_option("--kind", duel.kind, "tree kind override (plain, sc, wsc, scl)");
    cu->add_option("--k", duel.k, "soundness budget")->capture_default_str();
    duel.costs.attach(cu);

    BoostCmd boost;
    auto* cb = app.add_subcommand("boost", "build and evaluate boosted provers from a scenario file");
    cb->add_option("--scenario", boost.scenario_path, "scenario JSON");
    cb->add_option("--runs", boost.runs, "number of seeded pipeline runs");
    cb->add_option("--seed", boost.seed, "override the scenario seed");
    cb->add_option("--eval-trials", boost.eval_trials, "evaluation trials per run");
    cb->add_option("--write-example", boost.write_example, "write the built-in example scenario to this path");
    VerifyAlphaCmd va;
    auto* cva = cb->add_subcommand("verify-alpha", "check the alpha-goodness certificate of a scenario's provers");
    cva->add_option("--scenario", va.scenario_path, "scenario JSON")->required();

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    }
    catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        if (cf->parsed())
            return fam.run(g);
        if (cd->parsed())
            return dim.run(g);
        if (cr->parsed())
            return run.run(g);
        if (cu->parsed())
            return duel.run(g);
        if (cva->parsed())
            return va.run(g);
        if (cb->parsed())
            return boost.run(g);
    }
    catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitInvalid;
}
