#pragma once

#include "cotv/core.hpp"
#include "cotv/dimensions.hpp"
#include "cotv/families.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cotv {

// Step interface for prefix verification. predict must not change state;
// update receives the truth every round and decides itself whether to learn.
class PrefixLearner
{
public:
    virtual ~PrefixLearner() = default;

    [[nodiscard]] virtual PrefixLabel predict(const PrefixInstance& z) const = 0;
    virtual void update(const PrefixInstance& z, PrefixLabel truth) = 0;

    [[nodiscard]] virtual std::unique_ptr<PrefixLearner> clone() const = 0;
    // Equal fingerprints imply identical future behaviour.
    [[nodiscard]] virtual std::string fingerprint() const = 0;
    [[nodiscard]] virtual std::string name() const = 0;
    // Mistakes of a wrapped learner, for reductions.
    [[nodiscard]] virtual std::optional<MistakeTotals> inner_totals() const { return std::nullopt; }
};

// Step interface for chain-of-thought verification.
class CotLearner
{
public:
    virtual ~CotLearner() = default;

    [[nodiscard]] virtual Label predict(const CotInstance& z) const = 0;
    virtual void update(const CotInstance& z, Label truth) = 0;

    [[nodiscard]] virtual std::unique_ptr<CotLearner> clone() const = 0;
    [[nodiscard]] virtual std::string fingerprint() const = 0;
    [[nodiscard]] virtual std::string name() const = 0;
    [[nodiscard]] virtual std::optional<MistakeTotals> inner_totals() const { return std::nullopt; }
};

std::string fingerprint_of(const VerifierSet& s);

// Budgeted standard optimal algorithm: predicts the label whose version
// space keeps the larger sc dimension. Predicts NO on ties.
class ScSoa final : public PrefixLearner
{
    VersionSpace _vs;
    int _k;
    std::shared_ptr<DimensionEngine> _engine;

public:
    ScSoa(ClassPtr cls, int k, std::shared_ptr<DimensionEngine> engine = nullptr);

    PrefixLabel predict(const PrefixInstance& z) const override;
    void update(const PrefixInstance& z, PrefixLabel truth) override;
    std::unique_ptr<PrefixLearner> clone() const override { return std::make_unique<ScSoa>(*this); }
    std::string fingerprint() const override;
    std::string name() const override { return "sc-soa"; }

    [[nodiscard]] int budget() const { return _k; }
    [[nodiscard]] const VersionSpace& version_space() const { return _vs; }
};

// Weighted standard optimal algorithm over wsc dimensions. Predicts NO on ties.
class WscSoa final : public PrefixLearner
{
    VersionSpace _vs;
    CostVector _costs;
    std::shared_ptr<DimensionEngine> _engine;

public:
    WscSoa(ClassPtr cls, CostVector costs, std::shared_ptr<DimensionEngine> engine = nullptr);

    PrefixLabel predict(const PrefixInstance& z) const override;
    void update(const PrefixInstance& z, PrefixLabel truth) override;
    std::unique_ptr<PrefixLearner> clone() const override { return std::make_unique<WscSoa>(*this); }
    std::string fingerprint() const override;
    std::string name() const override { return "wsc-soa"; }

    [[nodiscard]] const VersionSpace& version_space() const { return _vs; }
};

// Three-cost standard optimal algorithm over scl dimensions; argmin ties go
// to the smallest label.
class SclSoa final : public CotLearner
{
    VersionSpace _vs;
    CostVector _costs;
    std::shared_ptr<DimensionEngine> _engine;

public:
    SclSoa(ClassPtr cls, CostVector costs, std::shared_ptr<DimensionEngine> engine = nullptr);

    Label predict(const CotInstance& z) const override;
    void update(const CotInstance& z, Label truth) override;
    std::unique_ptr<CotLearner> clone() const override { return std::make_unique<SclSoa>(*this); }
    std::string fingerprint() const override;
    std::string name() const override { return "scl-soa"; }

    [[nodiscard]] const VersionSpace& version_space() const { return _vs; }
};

// Halving over chain-of-thought labels: rejects at the first prefix that at
// most half of the version space accepts. Learns only on mistakes.
class MajorityVote final : public CotLearner
{
    VersionSpace _vs;

public:
    explicit MajorityVote(ClassPtr cls);

    Label predict(const CotInstance& z) const override;
    void update(const CotInstance& z, Label truth) override;
    std::unique_ptr<CotLearner> clone() const override { return std::make_unique<MajorityVote>(*this); }
    std::string fingerprint() const override;
    std::string name() const override { return "majority"; }

    [[nodiscard]] const VersionSpace& version_space() const { return _vs; }
};

// Accepts only what every consistent verifier accepts; never unsound.
class SoundConservative final : public CotLearner
{
    VersionSpace _vs;

public:
    explicit SoundConservative(ClassPtr cls);

    Label predict(const CotInstance& z) const override;
    void update(const CotInstance& z, Label truth) override;
    std::unique_ptr<CotLearner> clone() const override { return std::make_unique<SoundConservative>(*this); }
    std::string fingerprint() const override;
    std::string name() const override { return "sound-conservative"; }

    [[nodiscard]] const VersionSpace& version_space() const { return _vs; }
};

// Predicts the unanimous label, else FaultAt(1).
class RejectUnlessUnanimous final : public CotLearner
{
    VersionSpace _vs;

public:
    explicit RejectUnlessUnanimous(ClassPtr cls);

    Label predict(const CotInstance& z) const override;
    void update(const CotInstance& z, Label truth) override;
    std::unique_ptr<CotLearner> clone() const override { return std::make_unique<RejectUnlessUnanimous>(*this); }
    std::string fingerprint() const override;
    std::string name() const override { return "reject-unless-unanimous"; }

    [[nodiscard]] const VersionSpace& version_space() const { return _vs; }
};

// Accepts walks over E_0 ∪ Ē and adds an edge to Ē on each completeness mistake.
class RiverCrossingSound final : public CotLearner
{
    RiverCrossingLayout _layout;
    std::vector<Edge> _learned; // Ē, sorted

public:
    // Throws ClassMismatch unless cls was built by river_crossing_class.
    explicit RiverCrossingSound(const ClassPtr& cls);
    explicit RiverCrossingSound(RiverCrossingLayout layout);

    Label predict(const CotInstance& z) const override;
    void update(const CotInstance& z, Label truth) override;
    std::unique_ptr<CotLearner> clone() const override { return std::make_unique<RiverCrossingSound>(*this); }
    std::string fingerprint() const override;
    std::string name() const override { return "river-crossing"; }

    [[nodiscard]] const std::vector<Edge>& learned_edges() const { return _learned; }
};

// Passes updates to the inner learner only on mistakes and keeps a frozen copy
// of every hypothesis it has held (the initial one plus one per mistake).
class ConservativePrefix final : public PrefixLearner
{
    std::shared_ptr<PrefixLearner> _inner;
    std::vector<std::shared_ptr<const PrefixLearner>> _snapshots;

public:
    explicit ConservativePrefix(std::unique_ptr<PrefixLearner> inner);

    PrefixLabel predict(const PrefixInstance& z) const override { return _inner->predict(z); }
    void update(const PrefixInstance& z, PrefixLabel truth) override;
    std::unique_ptr<PrefixLearner> clone() const override;
    std::string fingerprint() const override { return _inner->fingerprint(); }
    std::string name() const override { return _inner->name(); }

    [[nodiscard]] const std::vector<std::shared_ptr<const PrefixLearner>>& snapshots() const { return _snapshots; }
    [[nodiscard]] const PrefixLearner& current() const { return *_inner; }
};

struct LearnerConfig
{
    int k = 0;
    CostVector costs;
    std::shared_ptr<DimensionEngine> engine;
};

// Names: sc-soa, wsc-soa.
std::unique_ptr<PrefixLearner> make_prefix_learner(const std::string& name, const ClassPtr& cls,
                                                   const LearnerConfig& config);
// Names: scl-soa, majority, sound-conservative, reject-unless-unanimous, river-crossing.
std::unique_ptr<CotLearner> make_cot_learner(const std::string& name, const ClassPtr& cls, const LearnerConfig& config);

bool is_prefix_learner_name(const std::string& name);
bool is_cot_learner_name(const std::string& name);

struct RunOptions
{
    CostVector costs;
    MistakeMode mode = MistakeMode::PrefixLevel;
    // Reject prefix instances whose strict prefix the target does not fully accept.
    bool enforce_promise = true;
};

Transcript run_prefix(PrefixLearner& learner, const Oracle& oracle, const std::vector<PrefixInstance>& sequence,
                      const RunOptions& options = {});
Transcript run_cot(CotLearner& learner, const Oracle& oracle, const std::vector<CotInstance>& sequence,
                   const RunOptions& options = {});

} // namespace cotv
