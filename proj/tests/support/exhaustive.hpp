#pragma once

// Exhaustive worst case over every realizable sequence up to a given length.
// For a fixed target, the learner's future depends only on its fingerprint,
// so the search memoizes on (fingerprint, remaining rounds).

#include "cotv/learners.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace cotv::testing {

struct Worst
{
    std::size_t soundness = 0;
    std::size_t completeness = 0;
    std::size_t location = 0;
    std::size_t total = 0;
    Rational cost{ 0 };

    void absorb(const Worst& o)
    {
        soundness = std::max(soundness, o.soundness);
        completeness = std::max(completeness, o.completeness);
        location = std::max(location, o.location);
        total = std::max(total, o.total);
        cost = std::max(cost, o.cost);
    }
};

inline Worst step_cost(MistakeKind kind, const CostVector& costs)
{
    Worst w;
    switch (kind) {
    case MistakeKind::None: break;
    case MistakeKind::Soundness: w.soundness = 1; break;
    case MistakeKind::Completeness: w.completeness = 1; break;
    case MistakeKind::Location: w.location = 1; break;
    }
    w.total = w.soundness + w.completeness + w.location;
    w.cost = costs.of(kind);
    return w;
}

inline Worst plus(const Worst& a, const Worst& b)
{
    return Worst{ a.soundness + b.soundness, a.completeness + b.completeness, a.location + b.location,
                  a.total + b.total, a.cost + b.cost };
}

template <typename Learner, typename Instance, typename Label_>
struct RoundHook
{
    using Fn = std::function<void(const Learner& before, const Instance& z, Label_ guess, Label_ truth,
                                  const Learner& after)>;
};

using PrefixHook = RoundHook<PrefixLearner, PrefixInstance, PrefixLabel>::Fn;
using CotHook = RoundHook<CotLearner, CotInstance, Label>::Fn;

// Component-wise maxima over all sequences of at most `depth` rounds drawn
// from `pool` and labeled by the oracle's target.
inline Worst worst_prefix(const PrefixLearner& start, const Oracle& oracle, const std::vector<PrefixInstance>& pool,
                          int depth, const CostVector& costs = {}, const PrefixHook& hook = {})
{
    std::vector<PrefixLabel> truth;
    for (const auto& z : pool)
        truth.push_back(oracle.prefix_label(z));
    std::map<std::pair<std::string, int>, Worst> memo;
    std::function<Worst(const PrefixLearner&, int)> rec = [&](const PrefixLearner& l, int d) -> Worst {
        if (d == 0)
            return {};
        const auto key = std::make_pair(l.fingerprint(), d);
        if (auto it = memo.find(key); it != memo.end())
            return it->second;
        Worst best;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            const auto guess = l.predict(pool[i]);
            auto next = l.clone();
            next->update(pool[i], truth[i]);
            if (hook)
                hook(l, pool[i], guess, truth[i], *next);
            best.absorb(plus(step_cost(classify_mistake(guess, truth[i]), costs), rec(*next, d - 1)));
        }
        return memo[key] = best;
    };
    return rec(start, depth);
}

inline Worst worst_cot(const CotLearner& start, const Oracle& oracle, const std::vector<CotInstance>& pool, int depth,
                       const CostVector& costs = {}, MistakeMode mode = MistakeMode::PrefixLevel,
                       const CotHook& hook = {})
{
    std::vector<Label> truth;
    for (const auto& z : pool)
        truth.push_back(oracle.cot_label(z));
    std::map<std::pair<std::string, int>, Worst> memo;
    std::function<Worst(const CotLearner&, int)> rec = [&](const CotLearner& l, int d) -> Worst {
        if (d == 0)
            return {};
        const auto key = std::make_pair(l.fingerprint(), d);
        if (auto it = memo.find(key); it != memo.end())
            return it->second;
        Worst best;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            const auto guess = l.predict(pool[i]);
            auto next = l.clone();
            next->update(pool[i], truth[i]);
            if (hook)
                hook(l, pool[i], guess, truth[i], *next);
            best.absorb(plus(step_cost(classify_mistake(guess, truth[i], mode), costs), rec(*next, d - 1)));
        }
        return memo[key] = best;
    };
    return rec(start, depth);
}

// Prefix instances whose strict prefix the target fully accepts.
inline std::vector<PrefixInstance> promise_pool(const Oracle& oracle)
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

} // namespace cotv::testing
