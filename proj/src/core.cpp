#include "cotv/core.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace cotv {

Trace make_trace(std::initializer_list<int> ids)
{
    Trace t;
    t.reserve(ids.size());
    for (int id : ids)
        t.push_back(Token{ static_cast<std::uint16_t>(id) });
    return t;
}

bool canonical_less(const PrefixInstance& a, const PrefixInstance& b)
{
    if (a.problem != b.problem)
        return a.problem < b.problem;
    if (a.steps.size() != b.steps.size())
        return a.steps.size() < b.steps.size();
    return a.steps < b.steps;
}

std::size_t PrefixInstanceHash::operator()(const PrefixInstance& z) const
{
    std::size_t h = std::hash<std::uint32_t>{}(z.problem.id) * 0x100000001b3ull;
    for (auto t : z.steps)
        h = (h ^ t.id) * 0x100000001b3ull + 0x9e3779b9u;
    return h ^ z.steps.size();
}

PrefixInstance CotInstance::prefix(std::size_t length) const
{
    return PrefixInstance{ problem, Trace(steps.begin(), steps.begin() + static_cast<std::ptrdiff_t>(length)) };
}

Label Label::fault_at(int position)
{
    if (position < 1 || position == all_correct_value)
        throw Error(ErrorCode::InvalidArgument, "fault position must be >= 1");
    return Label{ position };
}

std::string to_string(Label label)
{
    return label.is_all_correct() ? std::string("inf") : std::to_string(label.position());
}

Label parse_label(const std::string& text)
{
    if (text == "inf" || text == "AllCorrect" || text == "all-correct")
        return Label::all_correct();
    try {
        return Label::fault_at(std::stoi(text));
    }
    catch (const std::logic_error&) {
        throw Error(ErrorCode::ParseError, "bad label '" + text + "'");
    }
}

std::string to_string(PrefixLabel label) { return label == PrefixLabel::Yes ? "yes" : "no"; }

std::string to_string(MistakeKind kind)
{
    switch (kind) {
    case MistakeKind::None: return "none";
    case MistakeKind::Soundness: return "soundness";
    case MistakeKind::Completeness: return "completeness";
    case MistakeKind::Location: return "location";
    }
    return "none";
}

std::string to_string(const AnyLabel& label)
{
    return std::visit([](const auto& l) { return to_string(l); }, label);
}

MistakeKind classify_mistake(Label prediction, Label truth, MistakeMode mode)
{
    if (prediction == truth)
        return MistakeKind::None;
    if (mode == MistakeMode::PrefixLevel)
        return prediction > truth ? MistakeKind::Soundness : MistakeKind::Completeness;
    if (prediction.is_all_correct())
        return MistakeKind::Soundness;
    if (truth.is_all_correct())
        return MistakeKind::Completeness;
    return MistakeKind::Location;
}

MistakeKind classify_mistake(PrefixLabel prediction, PrefixLabel truth)
{
    if (prediction == truth)
        return MistakeKind::None;
    return prediction == PrefixLabel::Yes ? MistakeKind::Soundness : MistakeKind::Completeness;
}

Rational CostVector::of(MistakeKind kind) const
{
    switch (kind) {
    case MistakeKind::None: return Rational(0);
    case MistakeKind::Soundness: return soundness;
    case MistakeKind::Completeness: return completeness;
    case MistakeKind::Location: return location;
    }
    return Rational(0);
}

void CostVector::require_nonnegative() const
{
    if (soundness < 0 || completeness < 0 || location < 0)
        throw Error(ErrorCode::InvalidCosts, "costs must be nonnegative");
}

void CostVector::require_ordered() const
{
    require_nonnegative();
    if (!(soundness >= completeness && completeness >= location))
        throw Error(ErrorCode::InvalidCosts, "expected gamma_s >= gamma_c >= gamma_l, got " + to_string(soundness) +
                                                 ", " + to_string(completeness) + ", " + to_string(location));
}

// ---------------------------------------------------------------------------

VerifierClass::VerifierClass(Tables t, ClassCaps caps)
    : _sigma{ std::move(t.sigma) }, _problems{ std::move(t.problems) }, _max_len{ t.max_len },
      _fail_token{ t.fail_token }
{
    if (_sigma.size() < 2)
        throw Error(ErrorCode::SchemaError, "alphabet needs at least two steps");
    if (_sigma.size() > std::numeric_limits<std::uint16_t>::max())
        throw Error(ErrorCode::CapExceeded, "alphabet too large");
    if (_problems.empty())
        throw Error(ErrorCode::SchemaError, "problem set is empty");
    if (_max_len < 1)
        throw Error(ErrorCode::SchemaError, "L must be >= 1");
    if (_fail_token && _fail_token->id >= _sigma.size())
        throw Error(ErrorCode::SchemaError, "fail_token outside the alphabet");
    if (t.rows.empty())
        throw Error(ErrorCode::SchemaError, "class has no verifiers");
    if (t.universe.size() > caps.max_universe)
        throw Error(ErrorCode::CapExceeded, "universe of " + std::to_string(t.universe.size()) +
                                                " instances exceeds cap " + std::to_string(caps.max_universe));
    if (t.rows.size() > caps.max_verifiers)
        throw Error(ErrorCode::CapExceeded, std::to_string(t.rows.size()) + " verifiers exceed cap " +
                                                std::to_string(caps.max_verifiers));

    const std::size_t n = t.universe.size();
    for (const auto& z : t.universe) {
        if (z.problem.id >= _problems.size())
            throw Error(ErrorCode::SchemaError, "universe instance has unknown problem " + std::to_string(z.problem.id));
        if (z.steps.empty() || z.steps.size() > static_cast<std::size_t>(_max_len))
            throw Error(ErrorCode::SchemaError, "universe instance length outside 1..L");
        for (auto tok : z.steps)
            if (tok.id >= _sigma.size())
                throw Error(ErrorCode::SchemaError, "universe instance uses token outside the alphabet");
    }
    for (std::size_t v = 0; v < t.rows.size(); ++v)
        if (t.rows[v].size() != n)
            throw Error(ErrorCode::SchemaError, "verifier " + std::to_string(v) + " has " +
                                                    std::to_string(t.rows[v].size()) + " rows, universe has " +
                                                    std::to_string(n));

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{ 0 });
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return canonical_less(t.universe[a], t.universe[b]); });

    _verifier_count = t.rows.size();
    _universe.reserve(n);
    _acceptors.reserve(n);
    for (std::size_t pos = 0; pos < n; ++pos) {
        const auto src = order[pos];
        if (pos > 0 && _universe.back() == t.universe[src])
            throw Error(ErrorCode::SchemaError, "duplicate universe instance " + describe(t.universe[src]));
        _universe.push_back(std::move(t.universe[src]));
        VerifierSet col(_verifier_count);
        for (std::size_t v = 0; v < _verifier_count; ++v)
            if (t.rows[v][src])
                col.set(v);
        _acceptors.push_back(std::move(col));
    }
    _index.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        _index.emplace(_universe[i], i);

    _parent.assign(n, npos);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& z = _universe[i];
        if (z.steps.size() == 1)
            continue;
        PrefixInstance up{ z.problem, Trace(z.steps.begin(), z.steps.end() - 1) };
        auto it = _index.find(up);
        if (it == _index.end())
            throw Error(ErrorCode::SchemaError, "universe is not prefix-closed: missing " + describe(up));
        _parent[i] = it->second;
    }

    _verifier_names = std::move(t.verifier_names);
    if (_verifier_names.empty())
        for (std::size_t v = 0; v < _verifier_count; ++v)
            _verifier_names.push_back("h" + std::to_string(v));
    if (_verifier_names.size() != _verifier_count)
        throw Error(ErrorCode::SchemaError, "verifier name count does not match verifier count");

    for (const auto& z : _universe)
        if (z.steps.size() == static_cast<std::size_t>(_max_len))
            _cot_instances.push_back(CotInstance{ z.problem, z.steps });
}

std::optional<std::size_t> VerifierClass::find(const PrefixInstance& z) const
{
    auto it = _index.find(z);
    if (it == _index.end())
        return std::nullopt;
    return it->second;
}

std::size_t VerifierClass::index_of(const PrefixInstance& z) const
{
    if (auto i = find(z))
        return *i;
    throw Error(ErrorCode::UnknownInstance, describe(z) + " is not in the universe");
}

std::vector<bool> VerifierClass::row(std::size_t verifier) const
{
    std::vector<bool> out(_universe.size());
    for (std::size_t i = 0; i < _universe.size(); ++i)
        out[i] = accepts(verifier, i);
    return out;
}

std::vector<std::size_t> VerifierClass::prefix_ids(const CotInstance& z) const
{
    if (z.steps.size() != static_cast<std::size_t>(_max_len))
        throw Error(ErrorCode::UnknownInstance, "trace length " + std::to_string(z.steps.size()) + " differs from L=" +
                                                    std::to_string(_max_len));
    std::vector<std::size_t> ids(z.steps.size());
    auto last = index_of(PrefixInstance{ z.problem, z.steps });
    for (std::size_t l = z.steps.size(); l-- > 0;) {
        ids[l] = last;
        last = _parent[last];
    }
    return ids;
}

Label VerifierClass::cot_label(std::size_t verifier, const std::vector<std::size_t>& prefix_ids) const
{
    for (std::size_t l = 0; l < prefix_ids.size(); ++l)
        if (!accepts(verifier, prefix_ids[l]))
            return Label::fault_at(static_cast<int>(l + 1));
    return Label::all_correct();
}

bool VerifierClass::accepts_all_prefixes(std::size_t verifier, std::size_t instance) const
{
    for (auto i = instance; i != npos; i = _parent[i])
        if (!accepts(verifier, i))
            return false;
    return true;
}

std::string VerifierClass::describe(const PrefixInstance& z) const
{
    std::ostringstream out;
    out << (z.problem.id < _problems.size() ? _problems[z.problem.id] : "x" + std::to_string(z.problem.id)) << ":";
    for (std::size_t i = 0; i < z.steps.size(); ++i) {
        if (i > 0)
            out << ",";
        auto id = z.steps[i].id;
        out << (id < _sigma.size() ? _sigma[id] : "?" + std::to_string(id));
    }
    return out.str();
}

std::string VerifierClass::describe(const CotInstance& z) const
{
    return describe(PrefixInstance{ z.problem, z.steps });
}

bool operator==(const VerifierClass& a, const VerifierClass& b)
{
    return a._sigma == b._sigma && a._problems == b._problems && a._max_len == b._max_len &&
           a._fail_token == b._fail_token && a._universe == b._universe && a._acceptors == b._acceptors &&
           a._verifier_names == b._verifier_names;
}

std::vector<LabelPart> partition_by_cot_label(const VerifierClass& cls, const VerifierSet& alive,
                                              const std::vector<std::size_t>& prefix_ids)
{
    std::vector<LabelPart> parts;
    VerifierSet surviving = alive;
    for (std::size_t l = 0; l < prefix_ids.size() && !surviving.empty(); ++l) {
        const auto& acc = cls.acceptors(prefix_ids[l]);
        auto rejecting = surviving.minus(acc);
        if (!rejecting.empty())
            parts.push_back({ Label::fault_at(static_cast<int>(l + 1)), std::move(rejecting) });
        surviving &= acc;
    }
    if (!surviving.empty())
        parts.push_back({ Label::all_correct(), std::move(surviving) });
    return parts;
}

// ---------------------------------------------------------------------------

VersionSpace::VersionSpace(ClassPtr cls) : _cls{ std::move(cls) }, _alive{ _cls->all_verifiers() } {}

VersionSpace::VersionSpace(ClassPtr cls, VerifierSet alive) : _cls{ std::move(cls) }, _alive{ std::move(alive) }
{
    if (_alive.width() != _cls->verifier_count())
        throw Error(ErrorCode::ClassMismatch, "verifier set width does not match class");
}

VersionSpace VersionSpace::restrict(const PrefixInstance& z, PrefixLabel y) const
{
    return restrict(_cls->index_of(z), y);
}

VersionSpace VersionSpace::restrict(std::size_t instance, PrefixLabel y) const
{
    const auto& acc = _cls->acceptors(instance);
    return VersionSpace(_cls, y == PrefixLabel::Yes ? (_alive & acc) : _alive.minus(acc));
}

VersionSpace VersionSpace::restrict(const CotInstance& z, Label y) const
{
    auto ids = _cls->prefix_ids(z);
    for (auto& part : partition_by_cot_label(*_cls, _alive, ids))
        if (part.label == y)
            return VersionSpace(_cls, std::move(part.members));
    return VersionSpace(_cls, VerifierSet(_cls->verifier_count()));
}

// ---------------------------------------------------------------------------

Oracle::Oracle(ClassPtr cls, std::size_t target) : _cls{ std::move(cls) }, _target{ target }
{
    if (!_cls)
        throw Error(ErrorCode::OracleUnavailable, "oracle has no class");
    if (_target >= _cls->verifier_count())
        throw Error(ErrorCode::InvalidArgument, "oracle target " + std::to_string(_target) + " outside the class");
}

PrefixLabel Oracle::prefix_label(const PrefixInstance& z) const { return prefix_label(_cls->index_of(z)); }

PrefixLabel Oracle::prefix_label(std::size_t instance) const
{
    return prefix_label_of(_cls->accepts(_target, instance));
}

bool Oracle::prefix_correct(const PrefixInstance& z) const
{
    return _cls->accepts_all_prefixes(_target, _cls->index_of(z));
}

Label Oracle::cot_label(const CotInstance& z) const { return _cls->cot_label(_target, _cls->prefix_ids(z)); }

std::optional<std::size_t> check_realizable(const VerifierClass& cls, const std::vector<PrefixExample>& labeled)
{
    auto alive = cls.all_verifiers();
    for (const auto& [z, y] : labeled) {
        const auto& acc = cls.acceptors(cls.index_of(z));
        alive = y == PrefixLabel::Yes ? (alive & acc) : alive.minus(acc);
    }
    if (alive.empty())
        return std::nullopt;
    return alive.first();
}

std::optional<std::size_t> check_realizable(const VerifierClass& cls, const std::vector<CotExample>& labeled)
{
    auto alive = cls.all_verifiers();
    for (const auto& [z, y] : labeled) {
        VerifierSet next(cls.verifier_count());
        for (auto& part : partition_by_cot_label(cls, alive, cls.prefix_ids(z)))
            if (part.label == y)
                next = std::move(part.members);
        alive = std::move(next);
    }
    if (alive.empty())
        return std::nullopt;
    return alive.first();
}

// ---------------------------------------------------------------------------

void MistakeTotals::add(MistakeKind kind, const Rational& c)
{
    switch (kind) {
    case MistakeKind::Soundness: ++soundness; break;
    case MistakeKind::Completeness: ++completeness; break;
    case MistakeKind::Location: ++location; break;
    case MistakeKind::None: break;
    }
    cost += c;
}

void Transcript::record(AnyInstance instance, AnyLabel prediction, AnyLabel truth, MistakeKind kind)
{
    auto c = _costs.of(kind);
    _totals.add(kind, c);
    _rounds.push_back(Round{ std::move(instance), prediction, truth, kind, c });
}

bool Transcript::totals_consistent() const
{
    MistakeTotals recomputed;
    for (const auto& r : _rounds) {
        if (r.cost != _costs.of(r.kind))
            return false;
        recomputed.add(r.kind, r.cost);
    }
    auto expected_cost = _costs.soundness * static_cast<std::int64_t>(recomputed.soundness) +
                         _costs.completeness * static_cast<std::int64_t>(recomputed.completeness) +
                         _costs.location * static_cast<std::int64_t>(recomputed.location);
    return recomputed == _totals && expected_cost == _totals.cost;
}

} // namespace cotv
