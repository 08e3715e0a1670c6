#pragma once

#include "cotv/class_io.hpp"
#include "cotv/core.hpp"
#include "cotv/learners.hpp"
#include "cotv/rng.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace cotv {

// Finite distribution with exact rational weights. Weights must be
// nonnegative and sum to exactly 1. Sampling is exact: a uniform integer
// below the common denominator picks the outcome.
class Categorical
{
    std::vector<std::pair<std::uint32_t, Rational>> _outcomes;
    std::vector<std::int64_t> _cumulative;
    std::int64_t _denominator = 1;

public:
    Categorical() = default;
    // Throws InvalidArgument on negative weights, a sum other than 1, or duplicates.
    explicit Categorical(std::vector<std::pair<std::uint32_t, Rational>> outcomes);

    [[nodiscard]] const std::vector<std::pair<std::uint32_t, Rational>>& outcomes() const { return _outcomes; }
    [[nodiscard]] bool empty() const { return _outcomes.empty(); }
    [[nodiscard]] Rational weight(std::uint32_t value) const;
    [[nodiscard]] std::uint32_t sample(Rng& rng) const;

    friend bool operator==(const Categorical& a, const Categorical& b) { return a._outcomes == b._outcomes; }
};

// Table-driven stochastic prover. The next-step distribution for (problem,
// prefix) comes from `overrides` when present, else from the per-position
// default `steps[problem][prefix length]`.
struct Prover
{
    std::string name;
    std::vector<std::vector<Categorical>> steps;
    std::map<std::pair<std::uint32_t, Trace>, Categorical> overrides;

    // Throws InvalidArgument when no distribution is defined.
    [[nodiscard]] const Categorical& next(ProblemId x, const Trace& prefix) const;
    [[nodiscard]] bool defines(ProblemId x, const Trace& prefix) const;
};

struct ProverSet
{
    std::vector<Prover> provers;
    Rational alpha{ 1 };
    std::optional<std::set<std::uint32_t>> declared_good_problems;

    [[nodiscard]] std::size_t k() const { return provers.size(); }
    // Throws InvalidArgument unless k >= 1 and alpha in (0,1].
    void validate() const;
};

struct BoostParams
{
    Rational epsilon{ 1, 5 };
    Rational epsilon_prime{ 1, 20 };
    Rational delta{ 1, 5 };
    int s2_constant = 32;

    // Throws InvalidArgument unless epsilon, epsilon_prime, delta in (0,1) and s2_constant >= 1.
    void validate() const;
};

struct MistakeBounds
{
    std::int64_t soundness = 0;
    std::int64_t completeness = 0;

    [[nodiscard]] std::int64_t total() const { return soundness + completeness; }
    [[nodiscard]] Rational eps_s(const Rational& eps) const { return eps * Rational(soundness, total()); }
    [[nodiscard]] Rational eps_c(const Rational& eps) const { return eps * Rational(completeness, total()); }
};

// ceil((1/alpha) * ln(k*L/epsilon_prime)), clamped to >= 1.
std::int64_t timeout_budget(const Rational& alpha, std::size_t k, int L, const Rational& epsilon_prime);
// Maximum oracle calls a single process_example or test_hypothesis may issue: L*k*B + L.
std::int64_t oracle_call_bound(std::size_t k, int L, std::int64_t budget);

std::int64_t s1_size(const MistakeBounds& m, const Rational& epsilon, const Rational& delta);
std::int64_t s2_size(const MistakeBounds& m, const Rational& epsilon, const Rational& delta, int s2_constant);

// Counts every label request. Throws OracleUnavailable when built without an oracle.
class CountingOracle
{
    const Oracle* _oracle;
    std::int64_t _calls = 0;

public:
    explicit CountingOracle(const Oracle* oracle) : _oracle{ oracle } {}

    // YES iff every step of z is correct under the target.
    PrefixLabel label(const PrefixInstance& z);
    [[nodiscard]] std::int64_t calls() const { return _calls; }
};

enum class ProcessOutcome : std::uint8_t { MadeMistake, Timeout, FullProof };
std::string to_string(ProcessOutcome o);

struct ProcessResult
{
    ProcessOutcome outcome = ProcessOutcome::Timeout;
    MistakeKind mistake = MistakeKind::None;
    std::int64_t oracle_calls = 0;
};

// One online-learning pass over problem x. The learner should be conservative-wrapped; exactly one update
// is issued on MadeMistake and none otherwise.
ProcessResult process_example(ProblemId x, const ProverSet& provers, const BoostParams& params, int L,
                              PrefixLearner& learner, const Oracle* oracle, Rng& rng);

struct ProofOutcome
{
    bool is_proof = false;
    Trace trace;
};

using PredictionLog = std::vector<std::pair<PrefixInstance, PrefixLabel>>;

// Verifier-guided rejection sampling with frozen h. Optionally logs every
// prediction of h.
ProofOutcome weak_to_strong(ProblemId x, const ProverSet& provers, const BoostParams& params, int L,
                            const PrefixLearner& h, Rng& rng, PredictionLog* log = nullptr);

enum class HypothesisVerdict : std::uint8_t { Correct, SoundnessMistake, CompletenessMistake };
std::string to_string(HypothesisVerdict v);

struct TestResult
{
    HypothesisVerdict verdict = HypothesisVerdict::Correct;
    std::int64_t oracle_calls = 0;
};

// Runs weak_to_strong with h and grades the outcome with the oracle.
TestResult test_hypothesis(ProblemId x, const ProverSet& provers, const BoostParams& params, int L,
                           const PrefixLearner& h, const Oracle* oracle, Rng& rng);

struct BoostedProver
{
    std::shared_ptr<const PrefixLearner> verifier;
    ProverSet provers;
    BoostParams params;
    int max_len = 1;

    [[nodiscard]] ProofOutcome run(ProblemId x, Rng& rng) const
    {
        return weak_to_strong(x, provers, params, max_len, *verifier, rng);
    }
};

struct SnapshotReport
{
    std::size_t index = 0;
    std::string fingerprint;
    std::int64_t soundness_errors = 0;
    std::int64_t completeness_errors = 0;
    bool qualifies = false;
};

struct BuildReport
{
    MistakeBounds bounds;
    std::int64_t budget = 0;
    std::int64_t call_bound = 0;
    std::int64_t s1 = 0;
    std::int64_t s2 = 0;
    std::int64_t mistakes = 0;
    std::int64_t timeouts = 0;
    std::int64_t full_proofs = 0;
    std::int64_t max_calls_process = 0;
    std::int64_t max_calls_test = 0;
    std::int64_t total_calls = 0;
    Rational soundness_threshold{ 0 };
    Rational completeness_threshold{ 0 };
    std::vector<SnapshotReport> snapshots;
    std::optional<std::size_t> selected;
    std::optional<BoostedProver> prover;
};

// Builds the boosted prover without the failure exception: `prover` is empty when no
// snapshot qualifies.
BuildReport try_build_vhp(const ProverSet& provers, const Categorical& D, const BoostParams& params, int L,
                          std::unique_ptr<PrefixLearner> learner, const MistakeBounds& bounds, const Oracle* oracle,
                          Rng rng);
// Throws NoHypothesisQualified when no snapshot qualifies.
BoostedProver build_vhp(const ProverSet& provers, const Categorical& D, const BoostParams& params, int L,
                        std::unique_ptr<PrefixLearner> learner, const MistakeBounds& bounds, const Oracle* oracle,
                        Rng rng);

struct VhpRates
{
    std::int64_t trials = 0;
    std::int64_t abstain = 0;
    std::int64_t incorrect_proof = 0;
    std::int64_t correct_proof = 0;

    [[nodiscard]] Rational abstain_rate() const { return Rational(abstain, trials); }
    [[nodiscard]] Rational incorrect_rate() const { return Rational(incorrect_proof, trials); }
    [[nodiscard]] Rational correct_rate() const { return Rational(correct_proof, trials); }
};

// The oracle grades the outputs only.
VhpRates evaluate_vhp(const BoostedProver& vhp, const Categorical& D, std::int64_t n_trials, const Oracle& oracle,
                      Rng rng);

struct AlphaReport
{
    // alpha_x: minimum over reachable correct prefixes of the best prover's correct mass.
    std::vector<Rational> per_problem;
    std::vector<bool> good;
    Rational gamma{ 0 };
    // Declared good problems that are not alpha-good.
    std::vector<std::uint32_t> declared_violations;
};

// Exhaustive scan of the prover tables over every correct prefix the provers reach.
AlphaReport verify_alpha_good(const ProverSet& provers, const Oracle& oracle, const Categorical& D);

// A complete, self-describing pipeline configuration.
struct BoostScenario
{
    ClassPtr cls;
    std::size_t target = 0;
    ProverSet provers;
    Categorical distribution;
    BoostParams params;
    std::string learner = "sc-soa";
    int k = 0;
    std::uint64_t seed = 1;
    std::int64_t runs = 1;
    std::int64_t eval_trials = 1000;
};

// Indicator-style 8-verifier class, 16 problems, L = 4, two provers that are
// 1/2-good on 12 problems and 1/4-good on the rest, uniform D.
BoostScenario standard_boost_scenario();

Json scenario_to_json(const BoostScenario& s);
// Throws SchemaError naming the offending field.
BoostScenario scenario_from_json(const Json& j);

// Mistake bounds of the scenario's learner: (min(k, m), m) with m = sc_ldim(H, k).
MistakeBounds scenario_bounds(const BoostScenario& s);

struct PipelineRun
{
    std::int64_t run = 0;
    BuildReport build;
    std::optional<VhpRates> rates;
};

// One seeded build plus evaluation; stream = seed split by run index.
PipelineRun run_pipeline(const BoostScenario& s, const MistakeBounds& bounds, std::int64_t run_index);

} // namespace cotv
