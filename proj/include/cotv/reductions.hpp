#pragma once

#include "cotv/learners.hpp"

#include <memory>

namespace cotv {

// Chain-of-thought learner built from a prefix learner: reject at the first
// prefix the inner learner rejects, feed back only the mistaken prefix.
class CotFromPrefix final : public CotLearner
{
    ClassPtr _cls;
    std::shared_ptr<PrefixLearner> _inner;
    MistakeTotals _inner_totals;

public:
    CotFromPrefix(ClassPtr cls, std::unique_ptr<PrefixLearner> inner);

    Label predict(const CotInstance& z) const override;
    void update(const CotInstance& z, Label truth) override;
    std::unique_ptr<CotLearner> clone() const override;
    std::string fingerprint() const override { return "cfp:" + _inner->fingerprint(); }
    std::string name() const override { return "cot-from-prefix(" + _inner->name() + ")"; }
    std::optional<MistakeTotals> inner_totals() const override { return _inner_totals; }

    [[nodiscard]] const PrefixLearner& inner() const { return *_inner; }
};

// Prefix learner built from a chain-of-thought learner over a class with a
// fail token F: the prefix is padded with F up to length L.
class PrefixFromCot final : public PrefixLearner
{
    ClassPtr _cls;
    std::shared_ptr<CotLearner> _inner;
    MistakeTotals _inner_totals;

public:
    // Throws FailTokenRequired / FailTokenInvalid.
    PrefixFromCot(ClassPtr cls, std::unique_ptr<CotLearner> inner);

    PrefixLabel predict(const PrefixInstance& z) const override;
    void update(const PrefixInstance& z, PrefixLabel truth) override;
    std::unique_ptr<PrefixLearner> clone() const override;
    std::string fingerprint() const override { return "pfc:" + _inner->fingerprint(); }
    std::string name() const override { return "prefix-from-cot(" + _inner->name() + ")"; }
    std::optional<MistakeTotals> inner_totals() const override { return _inner_totals; }

    [[nodiscard]] CotInstance pad(const PrefixInstance& z) const;
    // Label the inner learner is taught for prefix z with prefix truth y.
    [[nodiscard]] Label derived_label(const PrefixInstance& z, PrefixLabel truth) const;
    [[nodiscard]] const CotLearner& inner() const { return *_inner; }
};

} // namespace cotv
