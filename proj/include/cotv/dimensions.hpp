#pragma once

#include "cotv/core.hpp"

#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

namespace cotv {

enum class TreeKind : std::uint8_t { Plain, SC, WSC, SCL };
enum class EdgeType : std::uint8_t { Straight, Curvy, S, C, L };

std::string to_string(TreeKind kind);
std::string to_string(EdgeType type);
TreeKind parse_tree_kind(const std::string& text);

struct TreeEdge
{
    EdgeType type = EdgeType::Straight;
    AnyLabel label;
    Rational weight{ 1 };
    int child = -1; // -1 marks a leaf
};

struct TreeNode
{
    AnyInstance instance;
    std::vector<TreeEdge> edges;
};

// Weighted binary witness tree. Node 0 is the root; an empty tree certifies 0.
// Plain/SC/WSC edges: Straight carries NO, Curvy carries YES.
struct MistakeTree
{
    TreeKind kind = TreeKind::Plain;
    int budget = 0; // k, SC only
    CostVector costs;
    std::vector<TreeNode> nodes;

    [[nodiscard]] bool empty() const { return nodes.empty(); }
    [[nodiscard]] std::size_t depth() const;
};

struct DimStats
{
    std::uint64_t memo_hits = 0;
    std::uint64_t nodes_expanded = 0;
};

struct DimParams
{
    int k = 0;
    CostVector costs;
};

struct DimResult
{
    Rational value{ 0 };
    std::optional<MistakeTree> witness;
    DimStats stats;
};

struct EngineOptions
{
    bool memoize = true;
    // Entries per memo table; further results are computed but not stored.
    std::size_t memo_cap = 1u << 22;

    // Reads COTV_MEMO_CAP when set.
    static EngineOptions from_env();
};

// Exact minimax over version spaces of one class. Thread-safe; memo tables
// are shared across callers and guarded by a shared mutex.
class DimensionEngine
{
public:
    explicit DimensionEngine(ClassPtr cls, EngineOptions options = EngineOptions::from_env());

    [[nodiscard]] const ClassPtr& class_ptr() const { return _cls; }
    [[nodiscard]] const VerifierClass& cls() const { return *_cls; }

    int ldim(const VerifierSet& alive);
    int sc_ldim(const VerifierSet& alive, int k);
    Rational wsc_ldim(const VerifierSet& alive, const CostVector& costs);
    // Throws InvalidCosts unless γ_s >= γ_c >= γ_l >= 0.
    Rational scl_ldim(const VerifierSet& alive, const CostVector& costs);

    Rational value(const VerifierSet& alive, TreeKind kind, const DimParams& params);

    // Throws NoWitness when the value is 0.
    MistakeTree extract_witness(const VerifierSet& alive, TreeKind kind, const DimParams& params);

    [[nodiscard]] DimStats stats() const;
    void reset_stats();

private:
    struct Split
    {
        std::size_t instance;
        VerifierSet yes;
        VerifierSet no;
    };
    struct CotSplit
    {
        std::size_t cot;
        std::vector<LabelPart> parts;
    };

    std::vector<Split> splits(const VerifierSet& alive) const;
    std::vector<CotSplit> cot_splits(const VerifierSet& alive) const;

    int ldim_rec(const VerifierSet& alive);
    int sc_rec(const VerifierSet& alive, int k);
    Rational wsc_rec(const VerifierSet& alive, const CostVector& costs);
    Rational scl_rec(const VerifierSet& alive, const CostVector& costs);

    // Appends the subtree certifying `alive` (budget k for SC); -1 when its value is 0.
    int build(MistakeTree& tree, const VerifierSet& alive, int k);

    template <typename Map, typename Key>
    std::optional<typename Map::mapped_type> lookup(const Map& map, const Key& key);
    template <typename Map, typename Key, typename Value>
    void store(Map& map, const Key& key, const Value& value);

    struct ScKey
    {
        VerifierSet alive;
        int k;
        friend bool operator==(const ScKey&, const ScKey&) = default;
    };
    struct ScKeyHash
    {
        std::size_t operator()(const ScKey& key) const { return key.alive.hash() * 31 + static_cast<std::size_t>(key.k); }
    };
    using CostKey = std::vector<Rational>;
    struct CostKeyLess
    {
        bool operator()(const CostKey& a, const CostKey& b) const;
    };
    using RationalMemo = std::unordered_map<VerifierSet, Rational, VerifierSetHash>;

    ClassPtr _cls;
    EngineOptions _options;
    mutable std::shared_mutex _mutex;
    std::unordered_map<VerifierSet, int, VerifierSetHash> _ldim_memo;
    std::unordered_map<ScKey, int, ScKeyHash> _sc_memo;
    std::map<CostKey, RationalMemo, CostKeyLess> _wsc_memo;
    std::map<CostKey, RationalMemo, CostKeyLess> _scl_memo;
    std::atomic<std::uint64_t> _hits{ 0 };
    std::atomic<std::uint64_t> _expanded{ 0 };
};

DimResult ldim(const VersionSpace& vs, bool with_witness = false);
DimResult sc_ldim(const VersionSpace& vs, int k, bool with_witness = false);
DimResult wsc_ldim(const VersionSpace& vs, const CostVector& costs, bool with_witness = false);
DimResult scl_ldim(const VersionSpace& vs, const CostVector& costs, bool with_witness = false);

// Structural rules per kind throw MalformedTree; returns false if some
// root-to-leaf path has no consistent verifier in vs (or leaves the universe).
bool verify_shattered(const MistakeTree& tree, const VersionSpace& vs);

// Plain: shortest path length. SC: shortest path among those with at most
// `budget` straight edges. WSC/SCL: lightest path weight.
Rational certified_value(const MistakeTree& tree);

// L(w) = 1 for w <= 0, L(w) = L(w-1) + L(w-d). Saturates at UINT64_MAX.
std::uint64_t min_leaf_recurrence(int w, int d);

} // namespace cotv
