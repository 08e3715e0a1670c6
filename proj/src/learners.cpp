#include "cotv/learners.hpp"

#include <algorithm>
#include <sstream>

namespace cotv {

std::string fingerprint_of(const VerifierSet& s)
{
    std::string out;
    s.for_each([&](std::size_t i) {
        out += std::to_string(i);
        out += ',';
    });
    return out;
}

namespace {

void require_nonempty(const VersionSpace& vs)
{
    if (vs.empty())
        throw Error(ErrorCode::EmptyVersionSpace, "no verifier is consistent with the feedback");
}

VersionSpace restricted(const VersionSpace& vs, const PrefixInstance& z, PrefixLabel y)
{
    auto next = vs.restrict(z, y);
    require_nonempty(next);
    return next;
}

VersionSpace restricted(const VersionSpace& vs, const CotInstance& z, Label y)
{
    auto next = vs.restrict(z, y);
    require_nonempty(next);
    return next;
}

std::shared_ptr<DimensionEngine> engine_for(const ClassPtr& cls, std::shared_ptr<DimensionEngine> engine)
{
    if (!engine)
        return std::make_shared<DimensionEngine>(cls);
    if (engine->class_ptr() != cls && !(engine->cls() == *cls))
        throw Error(ErrorCode::ClassMismatch, "dimension engine belongs to a different class");
    return engine;
}

} // namespace

// ---------------------------------------------------------------------------

ScSoa::ScSoa(ClassPtr cls, int k, std::shared_ptr<DimensionEngine> engine)
    : _vs{ cls }, _k{ k }, _engine{ engine_for(cls, std::move(engine)) }
{
    if (k < 0)
        throw Error(ErrorCode::InvalidArgument, "soundness budget k must be >= 0");
}

PrefixLabel ScSoa::predict(const PrefixInstance& z) const
{
    require_nonempty(_vs);
    const auto& acc = _vs.cls().acceptors(_vs.cls().index_of(z));
    auto yes = _vs.alive() & acc;
    if (yes == _vs.alive())
        return PrefixLabel::Yes;
    if (_k == 0 || yes.empty())
        return PrefixLabel::No;
    const int m_c = _engine->sc_ldim(yes, _k);
    const int m_s = _engine->sc_ldim(_vs.alive().minus(acc), _k - 1);
    return m_c <= m_s ? PrefixLabel::No : PrefixLabel::Yes;
}

void ScSoa::update(const PrefixInstance& z, PrefixLabel truth)
{
    const auto guess = predict(z);
    _vs = restricted(_vs, z, truth);
    if (guess == PrefixLabel::Yes && truth == PrefixLabel::No)
        --_k;
}

std::string ScSoa::fingerprint() const { return "sc:" + std::to_string(_k) + ":" + fingerprint_of(_vs.alive()); }

// ---------------------------------------------------------------------------

WscSoa::WscSoa(ClassPtr cls, CostVector costs, std::shared_ptr<DimensionEngine> engine)
    : _vs{ cls }, _costs{ std::move(costs) }, _engine{ engine_for(cls, std::move(engine)) }
{
    _costs.require_nonnegative();
}

PrefixLabel WscSoa::predict(const PrefixInstance& z) const
{
    require_nonempty(_vs);
    const auto& acc = _vs.cls().acceptors(_vs.cls().index_of(z));
    auto yes = _vs.alive() & acc;
    if (yes == _vs.alive())
        return PrefixLabel::Yes;
    if (yes.empty())
        return PrefixLabel::No;
    const auto m_c = _costs.completeness + _engine->wsc_ldim(yes, _costs);
    const auto m_s = _costs.soundness + _engine->wsc_ldim(_vs.alive().minus(acc), _costs);
    return m_c <= m_s ? PrefixLabel::No : PrefixLabel::Yes;
}

void WscSoa::update(const PrefixInstance& z, PrefixLabel truth) { _vs = restricted(_vs, z, truth); }

std::string WscSoa::fingerprint() const { return "wsc:" + fingerprint_of(_vs.alive()); }

// ---------------------------------------------------------------------------

SclSoa::SclSoa(ClassPtr cls, CostVector costs, std::shared_ptr<DimensionEngine> engine)
    : _vs{ cls }, _costs{ std::move(costs) }, _engine{ engine_for(cls, std::move(engine)) }
{
    _costs.require_ordered();
}

Label SclSoa::predict(const CotInstance& z) const
{
    require_nonempty(_vs);
    auto parts = partition_by_cot_label(_vs.cls(), _vs.alive(), _vs.cls().prefix_ids(z));
    if (parts.size() == 1)
        return parts.front().label;
    std::vector<Rational> future;
    for (const auto& p : parts)
        future.push_back(_engine->scl_ldim(p.members, _costs));
    std::optional<Rational> best;
    Label choice;
    for (const auto& i : parts) {
        Rational worst{ 0 };
        for (std::size_t j = 0; j < parts.size(); ++j) {
            auto loss = _costs.of(classify_mistake(i.label, parts[j].label, MistakeMode::SequenceLevel));
            worst = std::max(worst, loss + future[j]);
        }
        if (!best || worst < *best) {
            best = worst;
            choice = i.label;
        }
    }
    return choice;
}

void SclSoa::update(const CotInstance& z, Label truth) { _vs = restricted(_vs, z, truth); }

std::string SclSoa::fingerprint() const { return "scl:" + fingerprint_of(_vs.alive()); }

// ---------------------------------------------------------------------------

MajorityVote::MajorityVote(ClassPtr cls) : _vs{ std::move(cls) } {}

Label MajorityVote::predict(const CotInstance& z) const
{
    require_nonempty(_vs);
    const auto n = _vs.size();
    const auto ids = _vs.cls().prefix_ids(z);
    for (std::size_t l = 0; l < ids.size(); ++l) {
        const auto acc = (_vs.alive() & _vs.cls().acceptors(ids[l])).count();
        if (2 * acc <= n)
            return Label::fault_at(static_cast<int>(l + 1));
    }
    return Label::all_correct();
}

void MajorityVote::update(const CotInstance& z, Label truth)
{
    if (predict(z) != truth)
        _vs = restricted(_vs, z, truth);
}

std::string MajorityVote::fingerprint() const { return "maj:" + fingerprint_of(_vs.alive()); }

// ---------------------------------------------------------------------------

SoundConservative::SoundConservative(ClassPtr cls) : _vs{ std::move(cls) } {}

Label SoundConservative::predict(const CotInstance& z) const
{
    require_nonempty(_vs);
    const auto ids = _vs.cls().prefix_ids(z);
    for (std::size_t l = 0; l < ids.size(); ++l)
        if (!_vs.alive().is_subset_of(_vs.cls().acceptors(ids[l])))
            return Label::fault_at(static_cast<int>(l + 1));
    return Label::all_correct();
}

void SoundConservative::update(const CotInstance& z, Label truth) { _vs = restricted(_vs, z, truth); }

std::string SoundConservative::fingerprint() const { return "sound:" + fingerprint_of(_vs.alive()); }

// ---------------------------------------------------------------------------

RejectUnlessUnanimous::RejectUnlessUnanimous(ClassPtr cls) : _vs{ std::move(cls) } {}

Label RejectUnlessUnanimous::predict(const CotInstance& z) const
{
    require_nonempty(_vs);
    auto parts = partition_by_cot_label(_vs.cls(), _vs.alive(), _vs.cls().prefix_ids(z));
    return parts.size() == 1 ? parts.front().label : Label::fault_at(1);
}

void RejectUnlessUnanimous::update(const CotInstance& z, Label truth) { _vs = restricted(_vs, z, truth); }

std::string RejectUnlessUnanimous::fingerprint() const { return "reject:" + fingerprint_of(_vs.alive()); }

// ---------------------------------------------------------------------------

RiverCrossingSound::RiverCrossingSound(const ClassPtr& cls) : _layout{ river_crossing_layout_of(cls) } {}

RiverCrossingSound::RiverCrossingSound(RiverCrossingLayout layout) : _layout{ std::move(layout) }
{
    if (!_layout.cls)
        throw Error(ErrorCode::ClassMismatch, "river-crossing layout has no class");
}

namespace {

Edge step_edge(const CotInstance& z, std::size_t t)
{
    const int a = z.steps[t - 1].id, b = z.steps[t].id;
    return { std::min(a, b), std::max(a, b) };
}

} // namespace

Label RiverCrossingSound::predict(const CotInstance& z) const
{
    if (z.steps.size() != static_cast<std::size_t>(_layout.L))
        throw Error(ErrorCode::UnknownInstance, "trace length differs from L");
    if (z.steps[0].id != _layout.start)
        return Label::fault_at(1);
    for (std::size_t t = 1; t < z.steps.size(); ++t) {
        const auto e = step_edge(z, t);
        const bool known = std::binary_search(_layout.revealed.begin(), _layout.revealed.end(), e) ||
                           std::binary_search(_learned.begin(), _learned.end(), e);
        const bool last = t + 1 == z.steps.size();
        if (!known || (last && z.steps[t].id != _layout.goal))
            return Label::fault_at(static_cast<int>(t + 1));
    }
    return Label::all_correct();
}

void RiverCrossingSound::update(const CotInstance& z, Label truth)
{
    const auto guess = predict(z);
    if (guess.is_all_correct() || guess >= truth)
        return;
    // Completeness mistake: the rejected step's edge is truly allowed.
    const auto t = static_cast<std::size_t>(guess.position() - 1);
    if (t == 0)
        return;
    const auto e = step_edge(z, t);
    auto it = std::lower_bound(_learned.begin(), _learned.end(), e);
    if (it == _learned.end() || *it != e)
        _learned.insert(it, e);
}

std::string RiverCrossingSound::fingerprint() const
{
    std::string out = "river:";
    for (auto e : _learned)
        out += std::to_string(e.first) + "-" + std::to_string(e.second) + ",";
    return out;
}

// ---------------------------------------------------------------------------

ConservativePrefix::ConservativePrefix(std::unique_ptr<PrefixLearner> inner) : _inner{ std::move(inner) }
{
    if (!_inner)
        throw Error(ErrorCode::InvalidArgument, "conservative wrapper needs a learner");
    _snapshots.push_back(std::shared_ptr<const PrefixLearner>(_inner->clone()));
}

void ConservativePrefix::update(const PrefixInstance& z, PrefixLabel truth)
{
    if (_inner->predict(z) == truth)
        return;
    _inner->update(z, truth);
    _snapshots.push_back(std::shared_ptr<const PrefixLearner>(_inner->clone()));
}

std::unique_ptr<PrefixLearner> ConservativePrefix::clone() const
{
    auto copy = std::make_unique<ConservativePrefix>(*this);
    copy->_inner = std::shared_ptr<PrefixLearner>(_inner->clone());
    return copy;
}

// ---------------------------------------------------------------------------

bool is_prefix_learner_name(const std::string& name) { return name == "sc-soa" || name == "wsc-soa"; }

bool is_cot_learner_name(const std::string& name)
{
    return name == "scl-soa" || name == "majority" || name == "sound-conservative" ||
           name == "reject-unless-unanimous" || name == "river-crossing";
}

std::unique_ptr<PrefixLearner> make_prefix_learner(const std::string& name, const ClassPtr& cls,
                                                   const LearnerConfig& config)
{
    if (name == "sc-soa")
        return std::make_unique<ScSoa>(cls, config.k, config.engine);
    if (name == "wsc-soa")
        return std::make_unique<WscSoa>(cls, config.costs, config.engine);
    throw Error(ErrorCode::InvalidArgument, "unknown prefix learner '" + name + "' (sc-soa, wsc-soa)");
}

std::unique_ptr<CotLearner> make_cot_learner(const std::string& name, const ClassPtr& cls, const LearnerConfig& config)
{
    if (name == "scl-soa")
        return std::make_unique<SclSoa>(cls, config.costs, config.engine);
    if (name == "majority")
        return std::make_unique<MajorityVote>(cls);
    if (name == "sound-conservative")
        return std::make_unique<SoundConservative>(cls);
    if (name == "reject-unless-unanimous")
        return std::make_unique<RejectUnlessUnanimous>(cls);
    if (name == "river-crossing")
        return std::make_unique<RiverCrossingSound>(cls);
    throw Error(ErrorCode::InvalidArgument, "unknown chain-of-thought learner '" + name +
                                                "' (scl-soa, majority, sound-conservative, "
                                                "reject-unless-unanimous, river-crossing)");
}

// ---------------------------------------------------------------------------

Transcript run_prefix(PrefixLearner& learner, const Oracle& oracle, const std::vector<PrefixInstance>& sequence,
                      const RunOptions& options)
{
    Transcript tr(options.costs);
    const auto& cls = oracle.cls();
    for (const auto& z : sequence) {
        const auto idx = cls.index_of(z);
        if (options.enforce_promise && cls.parent(idx) != VerifierClass::npos &&
            !cls.accepts_all_prefixes(oracle.target(), cls.parent(idx)))
            throw Error(ErrorCode::InvalidArgument, "promise violated: strict prefix of " + cls.describe(z) +
                                                        " is not fully correct under the target");
        const auto guess = learner.predict(z);
        const auto truth = oracle.prefix_label(idx);
        tr.record(z, guess, truth, classify_mistake(guess, truth));
        learner.update(z, truth);
    }
    tr.inner = learner.inner_totals();
    return tr;
}

Transcript run_cot(CotLearner& learner, const Oracle& oracle, const std::vector<CotInstance>& sequence,
                   const RunOptions& options)
{
    Transcript tr(options.costs);
    for (const auto& z : sequence) {
        const auto guess = learner.predict(z);
        const auto truth = oracle.cot_label(z);
        tr.record(z, guess, truth, classify_mistake(guess, truth, options.mode));
        learner.update(z, truth);
    }
    tr.inner = learner.inner_totals();
    return tr;
}

} // namespace cotv
