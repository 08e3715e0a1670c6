#include "cotv/reductions.hpp"

namespace cotv {

CotFromPrefix::CotFromPrefix(ClassPtr cls, std::unique_ptr<PrefixLearner> inner)
    : _cls{ std::move(cls) }, _inner{ std::move(inner) }
{
    if (!_inner)
        throw Error(ErrorCode::InvalidArgument, "reduction needs an inner learner");
}

Label CotFromPrefix::predict(const CotInstance& z) const
{
    if (z.steps.size() != static_cast<std::size_t>(_cls->max_len()))
        throw Error(ErrorCode::UnknownInstance, "trace length differs from L");
    for (std::size_t l = 1; l <= z.steps.size(); ++l)
        if (_inner->predict(z.prefix(l)) == PrefixLabel::No)
            return Label::fault_at(static_cast<int>(l));
    return Label::all_correct();
}

void CotFromPrefix::update(const CotInstance& z, Label truth)
{
    const auto guess = predict(z);
    if (guess == truth)
        return;
    if (guess < truth) {
        // Rejected a correct step: teach YES at the predicted position.
        _inner->update(z.prefix(static_cast<std::size_t>(guess.position())), PrefixLabel::Yes);
        _inner_totals.add(MistakeKind::Completeness, Rational(0));
    }
    else {
        _inner->update(z.prefix(static_cast<std::size_t>(truth.position())), PrefixLabel::No);
        _inner_totals.add(MistakeKind::Soundness, Rational(0));
    }
}

std::unique_ptr<CotLearner> CotFromPrefix::clone() const
{
    auto copy = std::make_unique<CotFromPrefix>(*this);
    copy->_inner = std::shared_ptr<PrefixLearner>(_inner->clone());
    return copy;
}

// ---------------------------------------------------------------------------

PrefixFromCot::PrefixFromCot(ClassPtr cls, std::unique_ptr<CotLearner> inner)
    : _cls{ std::move(cls) }, _inner{ std::move(inner) }
{
    if (!_inner)
        throw Error(ErrorCode::InvalidArgument, "reduction needs an inner learner");
    validate_fail_token(*_cls);
}

CotInstance PrefixFromCot::pad(const PrefixInstance& z) const
{
    if (z.steps.empty() || z.steps.size() > static_cast<std::size_t>(_cls->max_len()))
        throw Error(ErrorCode::UnknownInstance, "prefix length outside 1..L");
    CotInstance out{ z.problem, z.steps };
    out.steps.resize(static_cast<std::size_t>(_cls->max_len()), *_cls->fail_token());
    return out;
}

Label PrefixFromCot::derived_label(const PrefixInstance& z, PrefixLabel truth) const
{
    const int l = static_cast<int>(z.steps.size());
    if (truth == PrefixLabel::No)
        return Label::fault_at(l);
    return l < _cls->max_len() ? Label::fault_at(l + 1) : Label::all_correct();
}

PrefixLabel PrefixFromCot::predict(const PrefixInstance& z) const
{
    const auto guess = _inner->predict(pad(z));
    const bool reject = !guess.is_all_correct() && guess.position() <= static_cast<int>(z.steps.size());
    return reject ? PrefixLabel::No : PrefixLabel::Yes;
}

void PrefixFromCot::update(const PrefixInstance& z, PrefixLabel truth)
{
    const auto padded = pad(z);
    const auto guess = _inner->predict(padded);
    const auto label = derived_label(z, truth);
    if (guess == label)
        return;
    _inner->update(padded, label);
    _inner_totals.add(classify_mistake(guess, label, MistakeMode::PrefixLevel), Rational(0));
}

std::unique_ptr<PrefixLearner> PrefixFromCot::clone() const
{
    auto copy = std::make_unique<PrefixFromCot>(*this);
    copy->_inner = std::shared_ptr<CotLearner>(_inner->clone());
    return copy;
}

} // namespace cotv
