#include "cotv/boosting.hpp"

#include "cotv/dimensions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cotv {

namespace {

void require(bool ok, ErrorCode code, const std::string& what)
{
    if (!ok)
        throw Error(code, what);
}

std::int64_t ceil_clamped(long double v)
{
    const auto c = static_cast<std::int64_t>(std::ceil(v));
    return std::max<std::int64_t>(c, 1);
}

long double ld(const Rational& r)
{
    return static_cast<long double>(r.numerator()) / static_cast<long double>(r.denominator());
}

bool in_open_unit(const Rational& r) { return r > Rational(0) && r < Rational(1); }

PrefixInstance extend(ProblemId x, const Trace& prefix, Token t)
{
    PrefixInstance z{ x, prefix };
    z.steps.push_back(t);
    return z;
}

Token token_of(std::uint32_t v) { return Token{ static_cast<std::uint16_t>(v) }; }

} // namespace

// ---------------------------------------------------------------------------

Categorical::Categorical(std::vector<std::pair<std::uint32_t, Rational>> outcomes) : _outcomes{ std::move(outcomes) }
{
    require(!_outcomes.empty(), ErrorCode::InvalidArgument, "distribution has no outcomes");
    Rational sum(0);
    std::int64_t den = 1;
    for (std::size_t i = 0; i < _outcomes.size(); ++i) {
        const auto& [v, w] = _outcomes[i];
        require(w >= Rational(0), ErrorCode::InvalidArgument, "negative weight " + to_string(w));
        for (std::size_t j = 0; j < i; ++j)
            require(_outcomes[j].first != v, ErrorCode::InvalidArgument,
                    "outcome " + std::to_string(v) + " listed twice");
        sum += w;
        den = std::lcm(den, w.denominator());
    }
    require(sum == Rational(1), ErrorCode::InvalidArgument, "weights sum to " + to_string(sum) + ", not 1");
    _denominator = den;
    std::int64_t acc = 0;
    for (const auto& [v, w] : _outcomes) {
        acc += w.numerator() * (den / w.denominator());
        _cumulative.push_back(acc);
    }
}

Rational Categorical::weight(std::uint32_t value) const
{
    for (const auto& [v, w] : _outcomes)
        if (v == value)
            return w;
    return Rational(0);
}

std::uint32_t Categorical::sample(Rng& rng) const
{
    require(!_outcomes.empty(), ErrorCode::InvalidArgument, "sampling an empty distribution");
    const auto u = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(_denominator)));
    const auto it = std::upper_bound(_cumulative.begin(), _cumulative.end(), u);
    return _outcomes[static_cast<std::size_t>(it - _cumulative.begin())].first;
}

// ---------------------------------------------------------------------------

bool Prover::defines(ProblemId x, const Trace& prefix) const
{
    if (overrides.count({ x.id, prefix }) != 0)
        return true;
    return x.id < steps.size() && prefix.size() < steps[x.id].size() && !steps[x.id][prefix.size()].empty();
}

const Categorical& Prover::next(ProblemId x, const Trace& prefix) const
{
    if (!overrides.empty()) {
        const auto it = overrides.find({ x.id, prefix });
        if (it != overrides.end())
            return it->second;
    }
    require(defines(x, prefix), ErrorCode::InvalidArgument,
            "prover '" + name + "' has no distribution for problem " + std::to_string(x.id) + " after " +
                std::to_string(prefix.size()) + " steps");
    return steps[x.id][prefix.size()];
}

void ProverSet::validate() const
{
    require(!provers.empty(), ErrorCode::InvalidArgument, "prover set is empty");
    require(alpha > Rational(0) && alpha <= Rational(1), ErrorCode::InvalidArgument,
            "alpha must lie in (0,1], got " + to_string(alpha));
}

void BoostParams::validate() const
{
    require(in_open_unit(epsilon), ErrorCode::InvalidArgument, "epsilon must lie in (0,1)");
    require(in_open_unit(epsilon_prime), ErrorCode::InvalidArgument, "epsilon_prime must lie in (0,1)");
    require(in_open_unit(delta), ErrorCode::InvalidArgument, "delta must lie in (0,1)");
    require(s2_constant >= 1, ErrorCode::InvalidArgument, "s2_constant must be >= 1");
}

// ---------------------------------------------------------------------------

std::int64_t timeout_budget(const Rational& alpha, std::size_t k, int L, const Rational& epsilon_prime)
{
    require(alpha > Rational(0) && alpha <= Rational(1), ErrorCode::InvalidArgument, "alpha must lie in (0,1]");
    require(k >= 1 && L >= 1, ErrorCode::InvalidArgument, "k and L must be >= 1");
    require(epsilon_prime > Rational(0), ErrorCode::InvalidArgument, "epsilon_prime must be positive");
    const long double arg = static_cast<long double>(k) * L / ld(epsilon_prime);
    return ceil_clamped(std::log(arg) / ld(alpha));
}

std::int64_t oracle_call_bound(std::size_t k, int L, std::int64_t budget)
{
    return static_cast<std::int64_t>(L) * static_cast<std::int64_t>(k) * budget + L;
}

std::int64_t s1_size(const MistakeBounds& m, const Rational& epsilon, const Rational& delta)
{
    require(m.total() >= 1, ErrorCode::InvalidArgument, "mistake bounds must sum to at least 1");
    return ceil_clamped(8.0L * (static_cast<long double>(m.total()) / ld(epsilon) + std::log(2.0L / ld(delta))));
}

std::int64_t s2_size(const MistakeBounds& m, const Rational& epsilon, const Rational& delta, int s2_constant)
{
    require(m.total() >= 1, ErrorCode::InvalidArgument, "mistake bounds must sum to at least 1");
    const long double total = static_cast<long double>(m.total());
    const long double ratio = total / static_cast<long double>(std::min(m.soundness, m.completeness) + 1);
    return ceil_clamped(s2_constant / ld(epsilon) * ratio * std::log(total / ld(delta)));
}

PrefixLabel CountingOracle::label(const PrefixInstance& z)
{
    require(_oracle != nullptr, ErrorCode::OracleUnavailable, "no labeling oracle configured");
    ++_calls;
    return prefix_label_of(_oracle->prefix_correct(z));
}

std::string to_string(ProcessOutcome o)
{
    switch (o) {
    case ProcessOutcome::MadeMistake: return "made_mistake";
    case ProcessOutcome::Timeout: return "timeout";
    case ProcessOutcome::FullProof: return "full_proof";
    }
    return "?";
}

std::string to_string(HypothesisVerdict v)
{
    switch (v) {
    case HypothesisVerdict::Correct: return "correct";
    case HypothesisVerdict::SoundnessMistake: return "soundness_mistake";
    case HypothesisVerdict::CompletenessMistake: return "completeness_mistake";
    }
    return "?";
}

// ---------------------------------------------------------------------------

ProcessResult process_example(ProblemId x, const ProverSet& provers, const BoostParams& params, int L,
                              PrefixLearner& learner, const Oracle* oracle, Rng& rng)
{
    const auto budget = timeout_budget(provers.alpha, provers.k(), L, params.epsilon_prime);
    CountingOracle orc(oracle);
    ProcessResult out;
    const auto finish = [&](ProcessOutcome o, MistakeKind kind) {
        out.outcome = o;
        out.mistake = kind;
        out.oracle_calls = orc.calls();
        if (out.oracle_calls > oracle_call_bound(provers.k(), L, budget))
            throw std::logic_error("process_example exceeded its oracle-call budget");
        return out;
    };

    Trace prefix;
    std::vector<PrefixInstance> zs(provers.k());
    std::vector<PrefixLabel> guesses(provers.k());
    for (int l = 1; l <= L; ++l) {
        bool advanced = false;
        for (std::int64_t attempt = 0; attempt < budget && !advanced; ++attempt) {
            std::optional<std::size_t> mismatch;
            std::optional<std::size_t> accepted;
            std::vector<PrefixLabel> truths(provers.k());
            for (std::size_t j = 0; j < provers.k(); ++j) {
                zs[j] = extend(x, prefix, token_of(provers.provers[j].next(x, prefix).sample(rng)));
                guesses[j] = learner.predict(zs[j]);
                truths[j] = orc.label(zs[j]);
                if (!mismatch && guesses[j] != truths[j])
                    mismatch = j;
                if (!accepted && guesses[j] == PrefixLabel::Yes)
                    accepted = j;
            }
            if (mismatch) {
                const auto j = *mismatch;
                learner.update(zs[j], truths[j]);
                return finish(ProcessOutcome::MadeMistake, classify_mistake(guesses[j], truths[j]));
            }
            if (accepted) {
                prefix = zs[*accepted].steps;
                advanced = true;
            }
        }
        if (!advanced)
            return finish(ProcessOutcome::Timeout, MistakeKind::None);
    }
    for (int l = 1; l <= L; ++l) {
        PrefixInstance z{ x, Trace(prefix.begin(), prefix.begin() + l) };
        if (orc.label(z) == PrefixLabel::No) {
            const auto guess = learner.predict(z);
            learner.update(z, PrefixLabel::No);
            return finish(ProcessOutcome::MadeMistake, classify_mistake(guess, PrefixLabel::No));
        }
    }
    return finish(ProcessOutcome::FullProof, MistakeKind::None);
}

ProofOutcome weak_to_strong(ProblemId x, const ProverSet& provers, const BoostParams& params, int L,
                            const PrefixLearner& h, Rng& rng, PredictionLog* log)
{
    const auto budget = timeout_budget(provers.alpha, provers.k(), L, params.epsilon_prime);
    ProofOutcome out;
    for (int l = 1; l <= L; ++l) {
        bool advanced = false;
        for (std::int64_t attempt = 0; attempt < budget && !advanced; ++attempt) {
            std::optional<Trace> accepted;
            for (const auto& prover : provers.provers) {
                auto z = extend(x, out.trace, token_of(prover.next(x, out.trace).sample(rng)));
                const auto guess = h.predict(z);
                if (log)
                    log->emplace_back(z, guess);
                if (!accepted && guess == PrefixLabel::Yes)
                    accepted = std::move(z.steps);
            }
            if (accepted) {
                out.trace = std::move(*accepted);
                advanced = true;
            }
        }
        if (!advanced) {
            out.trace.clear();
            return out;
        }
    }
    out.is_proof = true;
    return out;
}

TestResult test_hypothesis(ProblemId x, const ProverSet& provers, const BoostParams& params, int L,
                           const PrefixLearner& h, const Oracle* oracle, Rng& rng)
{
    const auto budget = timeout_budget(provers.alpha, provers.k(), L, params.epsilon_prime);
    CountingOracle orc(oracle);
    PredictionLog log;
    const auto proof = weak_to_strong(x, provers, params, L, h, rng, &log);
    TestResult out;
    if (proof.is_proof) {
        for (int l = 1; l <= L && out.verdict == HypothesisVerdict::Correct; ++l)
            if (orc.label(PrefixInstance{ x, Trace(proof.trace.begin(), proof.trace.begin() + l) }) == PrefixLabel::No)
                out.verdict = HypothesisVerdict::SoundnessMistake;
    }
    else {
        for (const auto& [z, guess] : log) {
            if (guess == PrefixLabel::No && orc.label(z) == PrefixLabel::Yes) {
                out.verdict = HypothesisVerdict::CompletenessMistake;
                break;
            }
        }
    }
    out.oracle_calls = orc.calls();
    if (out.oracle_calls > oracle_call_bound(provers.k(), L, budget))
        throw std::logic_error("test_hypothesis exceeded its oracle-call budget");
    return out;
}

// ---------------------------------------------------------------------------

BuildReport try_build_vhp(const ProverSet& provers, const Categorical& D, const BoostParams& params, int L,
                          std::unique_ptr<PrefixLearner> learner, const MistakeBounds& bounds, const Oracle* oracle,
                          Rng rng)
{
    provers.validate();
    params.validate();
    require(bounds.soundness >= 0 && bounds.completeness >= 0 && bounds.total() >= 1, ErrorCode::InvalidArgument,
            "declared mistake bounds must be nonnegative with M_s + M_c >= 1");
    require(oracle != nullptr, ErrorCode::OracleUnavailable, "building V^P needs a labeling oracle");

    BuildReport rep;
    rep.bounds = bounds;
    rep.budget = timeout_budget(provers.alpha, provers.k(), L, params.epsilon_prime);
    rep.call_bound = oracle_call_bound(provers.k(), L, rep.budget);
    rep.s1 = s1_size(bounds, params.epsilon, params.delta);
    rep.s2 = s2_size(bounds, params.epsilon, params.delta, params.s2_constant);
    const Rational three_quarter_eps = params.epsilon * Rational(3, 4);
    rep.soundness_threshold = three_quarter_eps * Rational(bounds.soundness, bounds.total());
    rep.completeness_threshold = three_quarter_eps * Rational(bounds.completeness, bounds.total());

    ConservativePrefix cons(std::move(learner));
    auto draw1 = rng.split("s1-draw");
    const auto s1_rng = rng.split("s1");
    for (std::int64_t i = 0; i < rep.s1; ++i) {
        const ProblemId x{ D.sample(draw1) };
        auto r = s1_rng.split(static_cast<std::uint64_t>(i));
        const auto res = process_example(x, provers, params, L, cons, oracle, r);
        rep.max_calls_process = std::max(rep.max_calls_process, res.oracle_calls);
        rep.total_calls += res.oracle_calls;
        switch (res.outcome) {
        case ProcessOutcome::MadeMistake: ++rep.mistakes; break;
        case ProcessOutcome::Timeout: ++rep.timeouts; break;
        case ProcessOutcome::FullProof: ++rep.full_proofs; break;
        }
    }

    const auto& snaps = cons.snapshots();
    rep.snapshots.resize(snaps.size());
    for (std::size_t i = 0; i < snaps.size(); ++i) {
        rep.snapshots[i].index = i;
        rep.snapshots[i].fingerprint = snaps[i]->fingerprint();
    }
    auto draw2 = rng.split("s2-draw");
    const auto s2_rng = rng.split("s2");
    for (std::int64_t j = 0; j < rep.s2; ++j) {
        const ProblemId x{ D.sample(draw2) };
        for (std::size_t i = 0; i < snaps.size(); ++i) {
            // Every hypothesis sees the same prover randomness on example j.
            auto r = s2_rng.split(static_cast<std::uint64_t>(j));
            const auto res = test_hypothesis(x, provers, params, L, *snaps[i], oracle, r);
            rep.max_calls_test = std::max(rep.max_calls_test, res.oracle_calls);
            rep.total_calls += res.oracle_calls;
            if (res.verdict == HypothesisVerdict::SoundnessMistake)
                ++rep.snapshots[i].soundness_errors;
            else if (res.verdict == HypothesisVerdict::CompletenessMistake)
                ++rep.snapshots[i].completeness_errors;
        }
    }

    for (auto& s : rep.snapshots) {
        s.qualifies = Rational(s.soundness_errors, rep.s2) <= rep.soundness_threshold &&
                      Rational(s.completeness_errors, rep.s2) <= rep.completeness_threshold;
        if (!s.qualifies)
            continue;
        if (!rep.selected) {
            rep.selected = s.index;
            continue;
        }
        const auto& best = rep.snapshots[*rep.selected];
        if (s.soundness_errors + s.completeness_errors < best.soundness_errors + best.completeness_errors)
            rep.selected = s.index;
    }
    if (rep.selected)
        rep.prover = BoostedProver{ snaps[*rep.selected], provers, params, L };
    return rep;
}

BoostedProver build_vhp(const ProverSet& provers, const Categorical& D, const BoostParams& params, int L,
                        std::unique_ptr<PrefixLearner> learner, const MistakeBounds& bounds, const Oracle* oracle,
                        Rng rng)
{
    auto rep = try_build_vhp(provers, D, params, L, std::move(learner), bounds, oracle, rng);
    if (!rep.prover)
        throw Error(ErrorCode::NoHypothesisQualified,
                    "none of the " + std::to_string(rep.snapshots.size()) + " snapshots met both error thresholds");
    return std::move(*rep.prover);
}

VhpRates evaluate_vhp(const BoostedProver& vhp, const Categorical& D, std::int64_t n_trials, const Oracle& oracle,
                      Rng rng)
{
    require(n_trials >= 1, ErrorCode::InvalidArgument, "n_trials must be >= 1");
    VhpRates out;
    out.trials = n_trials;
    auto draw = rng.split("eval-draw");
    const auto trial_rng = rng.split("eval");
    for (std::int64_t t = 0; t < n_trials; ++t) {
        const ProblemId x{ D.sample(draw) };
        auto r = trial_rng.split(static_cast<std::uint64_t>(t));
        const auto res = vhp.run(x, r);
        if (!res.is_proof)
            ++out.abstain;
        else if (oracle.prefix_correct(PrefixInstance{ x, res.trace }))
            ++out.correct_proof;
        else
            ++out.incorrect_proof;
    }
    return out;
}

// ---------------------------------------------------------------------------

AlphaReport verify_alpha_good(const ProverSet& provers, const Oracle& oracle, const Categorical& D)
{
    provers.validate();
    const auto& cls = oracle.cls();
    const int L = cls.max_len();
    const auto n = cls.problems().size();
    AlphaReport rep;
    rep.per_problem.assign(n, Rational(1));
    rep.good.assign(n, false);

    for (std::uint32_t xi = 0; xi < n; ++xi) {
        const ProblemId x{ xi };
        Rational alpha_x(1);
        std::vector<Trace> stack{ Trace{} };
        while (!stack.empty()) {
            const auto prefix = std::move(stack.back());
            stack.pop_back();
            if (static_cast<int>(prefix.size()) >= L)
                continue;
            Rational best(0);
            std::set<std::uint32_t> correct_reached;
            for (const auto& prover : provers.provers) {
                Rational mass(0);
                for (const auto& [tok, w] : prover.next(x, prefix).outcomes()) {
                    if (w == Rational(0))
                        continue;
                    const auto z = extend(x, prefix, token_of(tok));
                    require(cls.find(z).has_value(), ErrorCode::InvalidArgument,
                            "prover '" + prover.name + "' can emit " + cls.describe(z) + ", which is outside the universe");
                    if (oracle.prefix_correct(z)) {
                        mass += w;
                        correct_reached.insert(tok);
                    }
                }
                best = std::max(best, mass);
            }
            alpha_x = std::min(alpha_x, best);
            for (auto tok : correct_reached) {
                auto next = prefix;
                next.push_back(token_of(tok));
                stack.push_back(std::move(next));
            }
        }
        rep.per_problem[xi] = alpha_x;
        rep.good[xi] = alpha_x >= provers.alpha;
        if (rep.good[xi])
            rep.gamma += D.weight(xi);
    }
    if (provers.declared_good_problems)
        for (auto xi : *provers.declared_good_problems)
            if (xi >= n || !rep.good[xi])
                rep.declared_violations.push_back(xi);
    return rep;
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::uint32_t kStdProblems = 16;
constexpr int kStdLen = 4;
constexpr std::uint32_t kStdVerifiers = 8;

// Which verifier is singled out at step l of problem x; covers all 8 values.
std::uint32_t std_pivot(std::uint32_t x, int l) { return (x * 4 + static_cast<std::uint32_t>(l - 1)) % kStdVerifiers; }

bool std_accepts(std::uint32_t verifier, std::uint32_t x, const Trace& steps)
{
    const int l = static_cast<int>(steps.size());
    const auto pivot = std_pivot(x, l);
    switch (steps.back().id) {
    case 0: return pivot != verifier;
    case 1: return pivot == verifier;
    default: return false;
    }
}

} // namespace

BoostScenario standard_boost_scenario()
{
    VerifierClass::Tables t;
    t.sigma = { "0", "1", "2", "3" };
    for (std::uint32_t x = 0; x < kStdProblems; ++x)
        t.problems.push_back("x" + std::to_string(x));
    t.max_len = kStdLen;
    // Binary histories followed by any token.
    for (std::uint32_t x = 0; x < kStdProblems; ++x) {
        for (int l = 1; l <= kStdLen; ++l) {
            for (std::uint32_t bits = 0; bits < (1u << (l - 1)); ++bits) {
                for (std::uint16_t last = 0; last < 4; ++last) {
                    Trace steps;
                    for (int i = l - 2; i >= 0; --i)
                        steps.push_back(Token{ static_cast<std::uint16_t>((bits >> i) & 1u) });
                    steps.push_back(Token{ last });
                    t.universe.push_back(PrefixInstance{ ProblemId{ x }, std::move(steps) });
                }
            }
        }
    }
    t.rows.assign(kStdVerifiers, std::vector<bool>(t.universe.size()));
    for (std::uint32_t v = 0; v < kStdVerifiers; ++v) {
        t.verifier_names.push_back("h" + std::to_string(v));
        for (std::size_t i = 0; i < t.universe.size(); ++i)
            t.rows[v][i] = std_accepts(v, t.universe[i].problem.id, t.universe[i].steps);
    }

    BoostScenario s;
    s.cls = std::make_shared<const VerifierClass>(std::move(t));
    s.target = 0;
    s.provers.alpha = Rational(1, 2);
    std::set<std::uint32_t> good;
    Prover p1{ "P1", {}, {} };
    Prover p2{ "P2", {}, {} };
    for (std::uint32_t x = 0; x < kStdProblems; ++x) {
        const bool is_good = x < 12;
        if (is_good)
            good.insert(x);
        const Rational hit = is_good ? Rational(1, 2) : Rational(1, 4);
        const Categorical c1({ { 0, hit }, { 2, Rational(1) - hit } });
        const Categorical c2({ { 1, hit }, { 3, Rational(1) - hit } });
        p1.steps.emplace_back(kStdLen, c1);
        p2.steps.emplace_back(kStdLen, c2);
    }
    s.provers.provers = { std::move(p1), std::move(p2) };
    s.provers.declared_good_problems = std::move(good);
    std::vector<std::pair<std::uint32_t, Rational>> d;
    for (std::uint32_t x = 0; x < kStdProblems; ++x)
        d.emplace_back(x, Rational(1, kStdProblems));
    s.distribution = Categorical(std::move(d));
    s.params = BoostParams{ Rational(1, 5), Rational(1, 20), Rational(1, 5), 32 };
    s.learner = "sc-soa";
    s.k = 0;
    s.seed = 2024;
    s.runs = 1;
    s.eval_trials = 1000;
    return s;
}

// ---------------------------------------------------------------------------

namespace {

Json dist_to_json(const Categorical& c)
{
    Json out = Json::array();
    for (const auto& [v, w] : c.outcomes())
        out.push_back(Json::array({ v, to_string(w) }));
    return out;
}

[[noreturn]] void schema_fail(const std::string& field, const std::string& what)
{
    throw Error(ErrorCode::SchemaError, field + ": " + what);
}

const Json& field(const Json& j, const std::string& key, const std::string& path)
{
    if (!j.is_object() || !j.contains(key))
        schema_fail(path + key, "missing");
    return j.at(key);
}

Rational rational_field(const Json& j, const std::string& path)
{
    try {
        if (j.is_string())
            return parse_rational(j.get<std::string>());
        if (j.is_number_integer())
            return Rational(j.get<std::int64_t>());
    }
    catch (const Error& e) {
        schema_fail(path, e.what());
    }
    schema_fail(path, "expected a rational such as \"1/2\"");
}

std::int64_t int_field(const Json& j, const std::string& path)
{
    if (!j.is_number_integer())
        schema_fail(path, "expected an integer");
    return j.get<std::int64_t>();
}

Categorical dist_from_json(const Json& j, const std::string& path)
{
    if (!j.is_array())
        schema_fail(path, "expected [[value, \"p/q\"], ...]");
    std::vector<std::pair<std::uint32_t, Rational>> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto p = path + "[" + std::to_string(i) + "]";
        if (!j[i].is_array() || j[i].size() != 2)
            schema_fail(p, "expected [value, \"p/q\"]");
        const auto v = int_field(j[i][0], p + "[0]");
        if (v < 0)
            schema_fail(p + "[0]", "must be nonnegative");
        out.emplace_back(static_cast<std::uint32_t>(v), rational_field(j[i][1], p + "[1]"));
    }
    try {
        return Categorical(std::move(out));
    }
    catch (const Error& e) {
        schema_fail(path, e.what());
    }
}

} // namespace

Json scenario_to_json(const BoostScenario& s)
{
    Json j;
    j["class"] = class_to_json(*s.cls);
    j["target"] = s.target;
    j["alpha"] = to_string(s.provers.alpha);
    if (s.provers.declared_good_problems)
        j["declared_good_problems"] = Json(*s.provers.declared_good_problems);
    Json provers = Json::array();
    for (const auto& p : s.provers.provers) {
        Json pj;
        pj["name"] = p.name;
        Json steps = Json::array();
        for (const auto& per_problem : p.steps) {
            Json row = Json::array();
            for (const auto& c : per_problem)
                row.push_back(dist_to_json(c));
            steps.push_back(std::move(row));
        }
        pj["steps"] = std::move(steps);
        Json ov = Json::array();
        for (const auto& [key, c] : p.overrides) {
            Json prefix = Json::array();
            for (auto t : key.second)
                prefix.push_back(t.id);
            ov.push_back(Json{ { "problem", key.first }, { "prefix", std::move(prefix) }, { "dist", dist_to_json(c) } });
        }
        pj["overrides"] = std::move(ov);
        provers.push_back(std::move(pj));
    }
    j["provers"] = std::move(provers);
    j["distribution"] = dist_to_json(s.distribution);
    j["params"] = Json{ { "epsilon", to_string(s.params.epsilon) },
                        { "epsilon_prime", to_string(s.params.epsilon_prime) },
                        { "delta", to_string(s.params.delta) },
                        { "s2_constant", s.params.s2_constant } };
    j["learner"] = Json{ { "name", s.learner }, { "k", s.k } };
    j["seed"] = s.seed;
    j["runs"] = s.runs;
    j["eval_trials"] = s.eval_trials;
    return j;
}

BoostScenario scenario_from_json(const Json& j)
{
    if (!j.is_object())
        schema_fail("scenario", "expected an object");
    BoostScenario s;
    s.cls = class_from_json(field(j, "class", ""));
    const auto target = int_field(field(j, "target", ""), "target");
    if (target < 0 || static_cast<std::size_t>(target) >= s.cls->verifier_count())
        schema_fail("target", "no verifier with id " + std::to_string(target));
    s.target = static_cast<std::size_t>(target);
    s.provers.alpha = rational_field(field(j, "alpha", ""), "alpha");
    if (j.contains("declared_good_problems")) {
        std::set<std::uint32_t> good;
        const auto& g = j["declared_good_problems"];
        if (!g.is_array())
            schema_fail("declared_good_problems", "expected an array");
        for (std::size_t i = 0; i < g.size(); ++i)
            good.insert(static_cast<std::uint32_t>(int_field(g[i], "declared_good_problems[" + std::to_string(i) + "]")));
        s.provers.declared_good_problems = std::move(good);
    }
    const auto& provers = field(j, "provers", "");
    if (!provers.is_array() || provers.empty())
        schema_fail("provers", "expected a nonempty array");
    for (std::size_t pi = 0; pi < provers.size(); ++pi) {
        const auto path = "provers[" + std::to_string(pi) + "].";
        const auto& pj = provers[pi];
        Prover p;
        const auto& name = field(pj, "name", path);
        if (!name.is_string())
            schema_fail(path + "name", "expected a string");
        p.name = name.get<std::string>();
        const auto& steps = field(pj, "steps", path);
        if (!steps.is_array())
            schema_fail(path + "steps", "expected an array per problem");
        for (std::size_t x = 0; x < steps.size(); ++x) {
            const auto sp = path + "steps[" + std::to_string(x) + "]";
            if (!steps[x].is_array())
                schema_fail(sp, "expected an array per position");
            std::vector<Categorical> row;
            for (std::size_t l = 0; l < steps[x].size(); ++l)
                row.push_back(dist_from_json(steps[x][l], sp + "[" + std::to_string(l) + "]"));
            p.steps.push_back(std::move(row));
        }
        if (pj.contains("overrides")) {
            const auto& ov = pj["overrides"];
            if (!ov.is_array())
                schema_fail(path + "overrides", "expected an array");
            for (std::size_t oi = 0; oi < ov.size(); ++oi) {
                const auto op = path + "overrides[" + std::to_string(oi) + "].";
                const auto x = int_field(field(ov[oi], "problem", op), op + "problem");
                const auto& prefix = field(ov[oi], "prefix", op);
                if (!prefix.is_array())
                    schema_fail(op + "prefix", "expected an array of token ids");
                Trace tr;
                for (std::size_t ti = 0; ti < prefix.size(); ++ti)
                    tr.push_back(token_of(static_cast<std::uint32_t>(
                        int_field(prefix[ti], op + "prefix[" + std::to_string(ti) + "]"))));
                p.overrides[{ static_cast<std::uint32_t>(x), std::move(tr) }] =
                    dist_from_json(field(ov[oi], "dist", op), op + "dist");
            }
        }
        s.provers.provers.push_back(std::move(p));
    }
    s.distribution = dist_from_json(field(j, "distribution", ""), "distribution");
    for (const auto& [x, w] : s.distribution.outcomes())
        if (x >= s.cls->problems().size())
            schema_fail("distribution", "problem " + std::to_string(x) + " does not exist");

    const auto& params = field(j, "params", "");
    s.params.epsilon = rational_field(field(params, "epsilon", "params."), "params.epsilon");
    s.params.epsilon_prime = rational_field(field(params, "epsilon_prime", "params."), "params.epsilon_prime");
    s.params.delta = rational_field(field(params, "delta", "params."), "params.delta");
    if (params.contains("s2_constant"))
        s.params.s2_constant = static_cast<int>(int_field(params["s2_constant"], "params.s2_constant"));
    try {
        s.params.validate();
        s.provers.validate();
    }
    catch (const Error& e) {
        schema_fail("scenario", e.what());
    }

    if (j.contains("learner")) {
        const auto& lj = j["learner"];
        if (lj.contains("name")) {
            if (!lj["name"].is_string())
                schema_fail("learner.name", "expected a string");
            s.learner = lj["name"].get<std::string>();
        }
        if (lj.contains("k"))
            s.k = static_cast<int>(int_field(lj["k"], "learner.k"));
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
            schema_fail("seed", "expected an integer");
        s.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("runs"))
        s.runs = int_field(j["runs"], "runs");
    if (j.contains("eval_trials"))
        s.eval_trials = int_field(j["eval_trials"], "eval_trials");
    if (s.runs < 1)
        schema_fail("runs", "must be >= 1");
    if (s.eval_trials < 0)
        schema_fail("eval_trials", "must be >= 0");
    return s;
}

MistakeBounds scenario_bounds(const BoostScenario& s)
{
    if (s.learner != "sc-soa")
        throw Error(ErrorCode::InvalidArgument,
                    "boosting needs a learner with declared (M_s, M_c) bounds; only sc-soa is supported, got '" +
                        s.learner + "'");
    if (s.k < 0)
        throw Error(ErrorCode::InvalidArgument, "learner.k must be >= 0");
    DimensionEngine engine(s.cls);
    const auto m = engine.sc_ldim(s.cls->all_verifiers(), s.k);
    return MistakeBounds{ std::min<std::int64_t>(s.k, m), m };
}

PipelineRun run_pipeline(const BoostScenario& s, const MistakeBounds& bounds, std::int64_t run_index)
{
    const Oracle oracle(s.cls, s.target);
    const auto rng = Rng(s.seed).split(static_cast<std::uint64_t>(run_index));
    LearnerConfig cfg;
    cfg.k = s.k;
    auto learner = make_prefix_learner(s.learner, s.cls, cfg);
    PipelineRun out;
    out.run = run_index;
    out.build = try_build_vhp(s.provers, s.distribution, s.params, s.cls->max_len(), std::move(learner), bounds,
                              &oracle, rng.split("build"));
    if (out.build.prover && s.eval_trials > 0)
        out.rates = evaluate_vhp(*out.build.prover, s.distribution, s.eval_trials, oracle, rng.split("eval"));
    return out;
}

} // namespace cotv
