#pragma once

#include "cotv/error.hpp"
#include "cotv/rational.hpp"
#include "cotv/verifier_set.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace cotv {

struct Token
{
    std::uint16_t id = 0;
    auto operator<=>(const Token&) const = default;
};

struct ProblemId
{
    std::uint32_t id = 0;
    auto operator<=>(const ProblemId&) const = default;
};

using Trace = std::vector<Token>;

Trace make_trace(std::initializer_list<int> ids);

// A problem together with a nonempty reasoning prefix; the verifier judges the last step.
struct PrefixInstance
{
    ProblemId problem;
    Trace steps;

    friend bool operator==(const PrefixInstance&, const PrefixInstance&) = default;
};

// Canonical order: problem id, then length, then tokens lexicographically.
bool canonical_less(const PrefixInstance& a, const PrefixInstance& b);

struct PrefixInstanceHash
{
    std::size_t operator()(const PrefixInstance& z) const;
};

// A problem together with a full length-L trace.
struct CotInstance
{
    ProblemId problem;
    Trace steps;

    friend bool operator==(const CotInstance&, const CotInstance&) = default;

    [[nodiscard]] PrefixInstance prefix(std::size_t length) const;
};

// Chain-of-thought label: position of the first faulty step, or "all correct".
// Ordered FaultAt(1) < ... < FaultAt(L) < AllCorrect.
class Label
{
    static constexpr int all_correct_value = std::numeric_limits<int>::max();
    int _value = all_correct_value;

    explicit constexpr Label(int v) : _value{ v } {}

public:
    constexpr Label() = default;

    static Label fault_at(int position);
    static constexpr Label all_correct() { return Label{ all_correct_value }; }

    [[nodiscard]] constexpr bool is_all_correct() const { return _value == all_correct_value; }
    // 1-based; only meaningful when !is_all_correct().
    [[nodiscard]] constexpr int position() const { return _value; }

    auto operator<=>(const Label&) const = default;
};

std::string to_string(Label label);
Label parse_label(const std::string& text);

enum class PrefixLabel : std::uint8_t { No = 0, Yes = 1 };

inline PrefixLabel prefix_label_of(bool accepted) { return accepted ? PrefixLabel::Yes : PrefixLabel::No; }
std::string to_string(PrefixLabel label);

enum class MistakeKind : std::uint8_t { None, Soundness, Completeness, Location };

std::string to_string(MistakeKind kind);

// PrefixLevel uses the ordering of labels (too late = soundness, too early = completeness).
// SequenceLevel separates accept/reject errors from wrong fault positions.
enum class MistakeMode : std::uint8_t { PrefixLevel, SequenceLevel };

MistakeKind classify_mistake(Label prediction, Label truth, MistakeMode mode);
MistakeKind classify_mistake(PrefixLabel prediction, PrefixLabel truth);

struct CostVector
{
    Rational soundness{ 1 };
    Rational completeness{ 1 };
    Rational location{ 0 };

    [[nodiscard]] Rational of(MistakeKind kind) const;

    // Throws InvalidCosts unless soundness >= completeness >= location >= 0.
    void require_ordered() const;
    // Throws InvalidCosts if any cost is negative.
    void require_nonnegative() const;

    friend bool operator==(const CostVector&, const CostVector&) = default;
};

struct ClassCaps
{
    std::size_t max_verifiers = 4096;
    std::size_t max_universe = 65536;
};

// A finite class of verifiers given as explicit YES/NO tables over an
// enumerated universe of prefix instances. Immutable after construction.
class VerifierClass
{
public:
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

    struct Tables
    {
        std::vector<std::string> sigma;
        std::vector<std::string> problems;
        int max_len = 1;
        std::optional<Token> fail_token;
        std::vector<PrefixInstance> universe;
        // rows[v][i] is verifier v's verdict on universe[i] (in the order given here).
        std::vector<std::vector<bool>> rows;
        std::vector<std::string> verifier_names;
    };

    // Validates, sorts the universe canonically and permutes rows to match.
    explicit VerifierClass(Tables tables, ClassCaps caps = {});

    [[nodiscard]] const std::vector<std::string>& sigma() const { return _sigma; }
    [[nodiscard]] const std::vector<std::string>& problems() const { return _problems; }
    [[nodiscard]] int max_len() const { return _max_len; }
    [[nodiscard]] const std::optional<Token>& fail_token() const { return _fail_token; }
    [[nodiscard]] const std::vector<PrefixInstance>& universe() const { return _universe; }
    [[nodiscard]] std::size_t universe_size() const { return _universe.size(); }
    [[nodiscard]] std::size_t verifier_count() const { return _verifier_count; }
    [[nodiscard]] const std::string& verifier_name(std::size_t v) const { return _verifier_names[v]; }

    [[nodiscard]] std::optional<std::size_t> find(const PrefixInstance& z) const;
    // Throws UnknownInstance.
    [[nodiscard]] std::size_t index_of(const PrefixInstance& z) const;

    // Universe index of the strict prefix of instance i, or npos for length-1 instances.
    [[nodiscard]] std::size_t parent(std::size_t i) const { return _parent[i]; }

    [[nodiscard]] bool accepts(std::size_t verifier, std::size_t instance) const
    {
        return _acceptors[instance].test(verifier);
    }
    [[nodiscard]] const VerifierSet& acceptors(std::size_t instance) const { return _acceptors[instance]; }
    [[nodiscard]] VerifierSet all_verifiers() const { return VerifierSet(_verifier_count, true); }
    [[nodiscard]] std::vector<bool> row(std::size_t verifier) const;

    // Universe indices of the L prefixes of z. Throws UnknownInstance.
    [[nodiscard]] std::vector<std::size_t> prefix_ids(const CotInstance& z) const;
    // Every full-length trace whose prefixes all lie in the universe, canonical order.
    [[nodiscard]] const std::vector<CotInstance>& cot_instances() const { return _cot_instances; }

    // Sequence-level label assigned by one verifier.
    [[nodiscard]] Label cot_label(std::size_t verifier, const std::vector<std::size_t>& prefix_ids) const;
    // True iff the verifier accepts instance i and every strict prefix of it.
    [[nodiscard]] bool accepts_all_prefixes(std::size_t verifier, std::size_t instance) const;

    [[nodiscard]] std::string describe(const PrefixInstance& z) const;
    [[nodiscard]] std::string describe(const CotInstance& z) const;

    friend bool operator==(const VerifierClass& a, const VerifierClass& b);

private:
    std::vector<std::string> _sigma;
    std::vector<std::string> _problems;
    int _max_len = 1;
    std::optional<Token> _fail_token;
    std::vector<PrefixInstance> _universe;
    std::unordered_map<PrefixInstance, std::size_t, PrefixInstanceHash> _index;
    std::vector<std::size_t> _parent;
    std::vector<VerifierSet> _acceptors;
    std::size_t _verifier_count = 0;
    std::vector<std::string> _verifier_names;
    std::vector<CotInstance> _cot_instances;
};

using ClassPtr = std::shared_ptr<const VerifierClass>;

// Labeled partition of a set of verifiers by the sequence-level label they
// assign to one trace. Only nonempty parts, sorted by label.
struct LabelPart
{
    Label label;
    VerifierSet members;
};

std::vector<LabelPart> partition_by_cot_label(const VerifierClass& cls, const VerifierSet& alive,
                                              const std::vector<std::size_t>& prefix_ids);

// The verifiers still consistent with feedback. restrict* return fresh values.
class VersionSpace
{
    ClassPtr _cls;
    VerifierSet _alive;

public:
    explicit VersionSpace(ClassPtr cls);
    VersionSpace(ClassPtr cls, VerifierSet alive);

    [[nodiscard]] const VerifierClass& cls() const { return *_cls; }
    [[nodiscard]] const ClassPtr& class_ptr() const { return _cls; }
    [[nodiscard]] const VerifierSet& alive() const { return _alive; }
    [[nodiscard]] std::size_t size() const { return _alive.count(); }
    [[nodiscard]] bool empty() const { return _alive.empty(); }
    [[nodiscard]] bool contains(std::size_t verifier) const { return _alive.test(verifier); }

    [[nodiscard]] VersionSpace restrict(const PrefixInstance& z, PrefixLabel y) const;
    [[nodiscard]] VersionSpace restrict(std::size_t instance, PrefixLabel y) const;
    [[nodiscard]] VersionSpace restrict(const CotInstance& z, Label y) const;
};

// Realizable labeling oracle backed by a target verifier of the class.
class Oracle
{
    ClassPtr _cls;
    std::size_t _target = 0;

public:
    Oracle(ClassPtr cls, std::size_t target);

    [[nodiscard]] std::size_t target() const { return _target; }
    [[nodiscard]] const VerifierClass& cls() const { return *_cls; }
    [[nodiscard]] const ClassPtr& class_ptr() const { return _cls; }

    // The target's table value at z.
    [[nodiscard]] PrefixLabel prefix_label(const PrefixInstance& z) const;
    [[nodiscard]] PrefixLabel prefix_label(std::size_t instance) const;
    // YES iff every step of z is correct, i.e. the chain-of-thought label of z is AllCorrect.
    [[nodiscard]] bool prefix_correct(const PrefixInstance& z) const;
    [[nodiscard]] Label cot_label(const CotInstance& z) const;
};

using PrefixExample = std::pair<PrefixInstance, PrefixLabel>;
using CotExample = std::pair<CotInstance, Label>;

// Some verifier id consistent with every example, or nullopt.
std::optional<std::size_t> check_realizable(const VerifierClass& cls, const std::vector<PrefixExample>& labeled);
std::optional<std::size_t> check_realizable(const VerifierClass& cls, const std::vector<CotExample>& labeled);

using AnyInstance = std::variant<PrefixInstance, CotInstance>;
using AnyLabel = std::variant<PrefixLabel, Label>;

std::string to_string(const AnyLabel& label);

struct Round
{
    AnyInstance instance;
    AnyLabel prediction;
    AnyLabel truth;
    MistakeKind kind = MistakeKind::None;
    Rational cost{ 0 };
};

struct MistakeTotals
{
    std::size_t soundness = 0;
    std::size_t completeness = 0;
    std::size_t location = 0;
    Rational cost{ 0 };

    [[nodiscard]] std::size_t mistakes() const { return soundness + completeness + location; }
    void add(MistakeKind kind, const Rational& c);

    friend bool operator==(const MistakeTotals&, const MistakeTotals&) = default;
};

class Transcript
{
    CostVector _costs;
    std::vector<Round> _rounds;
    MistakeTotals _totals;

public:
    Transcript() = default;
    explicit Transcript(CostVector costs) : _costs{ std::move(costs) } {}

    void record(AnyInstance instance, AnyLabel prediction, AnyLabel truth, MistakeKind kind);

    [[nodiscard]] const CostVector& costs() const { return _costs; }
    [[nodiscard]] const std::vector<Round>& rounds() const { return _rounds; }
    [[nodiscard]] const MistakeTotals& totals() const { return _totals; }

    // Recomputes the totals from the rounds and compares exactly.
    [[nodiscard]] bool totals_consistent() const;

    // Mistake tallies of the wrapped learner, filled by reduction wrappers.
    std::optional<MistakeTotals> inner;
};

} // namespace cotv
