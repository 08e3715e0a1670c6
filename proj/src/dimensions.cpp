#include "cotv/dimensions.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <unordered_set>

namespace cotv {

std::string to_string(TreeKind kind)
{
    switch (kind) {
    case TreeKind::Plain: return "plain";
    case TreeKind::SC: return "sc";
    case TreeKind::WSC: return "wsc";
    case TreeKind::SCL: return "scl";
    }
    return "plain";
}

std::string to_string(EdgeType type)
{
    switch (type) {
    case EdgeType::Straight: return "straight";
    case EdgeType::Curvy: return "curvy";
    case EdgeType::S: return "s";
    case EdgeType::C: return "c";
    case EdgeType::L: return "l";
    }
    return "straight";
}

TreeKind parse_tree_kind(const std::string& text)
{
    if (text == "plain" || text == "ldim")
        return TreeKind::Plain;
    if (text == "sc")
        return TreeKind::SC;
    if (text == "wsc")
        return TreeKind::WSC;
    if (text == "scl")
        return TreeKind::SCL;
    throw Error(ErrorCode::InvalidArgument, "unknown dimension kind '" + text + "' (plain, sc, wsc, scl)");
}

std::size_t MistakeTree::depth() const
{
    std::function<std::size_t(int)> rec = [&](int node) -> std::size_t {
        if (node < 0)
            return 0;
        std::size_t d = 0;
        for (const auto& e : nodes[static_cast<std::size_t>(node)].edges)
            d = std::max(d, rec(e.child));
        return d + 1;
    };
    return nodes.empty() ? 0 : rec(0);
}

EngineOptions EngineOptions::from_env()
{
    EngineOptions o;
    if (const char* cap = std::getenv("COTV_MEMO_CAP")) {
        char* end = nullptr;
        auto v = std::strtoull(cap, &end, 10);
        if (end != cap && *end == '\0')
            o.memo_cap = static_cast<std::size_t>(v);
    }
    return o;
}

bool DimensionEngine::CostKeyLess::operator()(const CostKey& a, const CostKey& b) const
{
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

DimensionEngine::DimensionEngine(ClassPtr cls, EngineOptions options)
    : _cls{ std::move(cls) }, _options{ options }
{
    if (!_cls)
        throw Error(ErrorCode::InvalidArgument, "dimension engine needs a class");
}

DimStats DimensionEngine::stats() const { return DimStats{ _hits.load(), _expanded.load() }; }

void DimensionEngine::reset_stats()
{
    _hits = 0;
    _expanded = 0;
}

template <typename Map, typename Key>
std::optional<typename Map::mapped_type> DimensionEngine::lookup(const Map& map, const Key& key)
{
    if (!_options.memoize)
        return std::nullopt;
    std::shared_lock lock(_mutex);
    auto it = map.find(key);
    if (it == map.end())
        return std::nullopt;
    ++_hits;
    return it->second;
}

template <typename Map, typename Key, typename Value>
void DimensionEngine::store(Map& map, const Key& key, const Value& value)
{
    if (!_options.memoize)
        return;
    std::unique_lock lock(_mutex);
    if (map.size() < _options.memo_cap)
        map.emplace(key, value);
}

std::vector<DimensionEngine::Split> DimensionEngine::splits(const VerifierSet& alive) const
{
    std::vector<Split> out;
    if (alive.count() < 2)
        return out;
    std::unordered_set<VerifierSet, VerifierSetHash> seen;
    for (std::size_t i = 0; i < _cls->universe_size(); ++i) {
        auto yes = alive & _cls->acceptors(i);
        if (yes.empty() || yes == alive)
            continue;
        if (!seen.insert(yes).second)
            continue;
        auto no = alive.minus(yes);
        out.push_back(Split{ i, std::move(yes), std::move(no) });
    }
    return out;
}

std::vector<DimensionEngine::CotSplit> DimensionEngine::cot_splits(const VerifierSet& alive) const
{
    std::vector<CotSplit> out;
    if (alive.count() < 2)
        return out;
    const auto& cots = _cls->cot_instances();
    for (std::size_t c = 0; c < cots.size(); ++c) {
        auto parts = partition_by_cot_label(*_cls, alive, _cls->prefix_ids(cots[c]));
        if (parts.size() >= 2)
            out.push_back(CotSplit{ c, std::move(parts) });
    }
    return out;
}

// ---------------------------------------------------------------------------

int DimensionEngine::ldim(const VerifierSet& alive) { return ldim_rec(alive); }

int DimensionEngine::ldim_rec(const VerifierSet& alive)
{
    if (auto hit = lookup(_ldim_memo, alive))
        return *hit;
    ++_expanded;
    int best = 0;
    for (const auto& s : splits(alive)) {
        const int v = 1 + std::min(ldim_rec(s.yes), ldim_rec(s.no));
        best = std::max(best, v);
    }
    store(_ldim_memo, alive, best);
    return best;
}

int DimensionEngine::sc_ldim(const VerifierSet& alive, int k)
{
    if (k < 0)
        throw Error(ErrorCode::InvalidArgument, "soundness budget k must be >= 0");
    return sc_rec(alive, k);
}

int DimensionEngine::sc_rec(const VerifierSet& alive, int k)
{
    ScKey key{ alive, k };
    if (auto hit = lookup(_sc_memo, key))
        return *hit;
    ++_expanded;
    int best = 0;
    for (const auto& s : splits(alive)) {
        // k = 0 forces the learner to reject, so the adversary answers YES.
        const int v = k == 0 ? 1 + sc_rec(s.yes, 0) : 1 + std::min(sc_rec(s.yes, k), sc_rec(s.no, k - 1));
        best = std::max(best, v);
    }
    store(_sc_memo, key, best);
    return best;
}

Rational DimensionEngine::wsc_ldim(const VerifierSet& alive, const CostVector& costs)
{
    costs.require_nonnegative();
    return wsc_rec(alive, costs);
}

Rational DimensionEngine::wsc_rec(const VerifierSet& alive, const CostVector& costs)
{
    const CostKey ck{ costs.soundness, costs.completeness };
    {
        std::shared_lock lock(_mutex);
        auto table = _wsc_memo.find(ck);
        if (_options.memoize && table != _wsc_memo.end()) {
            auto it = table->second.find(alive);
            if (it != table->second.end()) {
                ++_hits;
                return it->second;
            }
        }
    }
    ++_expanded;
    Rational best{ 0 };
    for (const auto& s : splits(alive)) {
        auto v = std::min(costs.soundness + wsc_rec(s.no, costs), costs.completeness + wsc_rec(s.yes, costs));
        best = std::max(best, v);
    }
    if (_options.memoize) {
        std::unique_lock lock(_mutex);
        auto& table = _wsc_memo[ck];
        if (table.size() < _options.memo_cap)
            table.emplace(alive, best);
    }
    return best;
}

Rational DimensionEngine::scl_ldim(const VerifierSet& alive, const CostVector& costs)
{
    costs.require_ordered();
    return scl_rec(alive, costs);
}

namespace {

// Value of the best two-edge node over a label partition, with the chosen pair.
struct SclChoice
{
    Rational value{ -1 };
    std::size_t a = 0, b = 0;
};

template <typename ValueOf>
SclChoice best_scl_pair(const std::vector<LabelPart>& parts, const CostVector& costs, ValueOf&& value_of)
{
    SclChoice best;
    std::vector<Rational> vals;
    vals.reserve(parts.size());
    for (const auto& p : parts)
        vals.push_back(value_of(p.members));
    for (std::size_t a = 0; a < parts.size(); ++a)
        for (std::size_t b = a + 1; b < parts.size(); ++b) {
            Rational v;
            if (parts[b].label.is_all_correct())
                v = std::min(costs.soundness + vals[a], costs.completeness + vals[b]);
            else
                v = costs.location + std::min(vals[a], vals[b]);
            if (v > best.value)
                best = SclChoice{ v, a, b };
        }
    return best;
}

} // namespace

Rational DimensionEngine::scl_rec(const VerifierSet& alive, const CostVector& costs)
{
    const CostKey ck{ costs.soundness, costs.completeness, costs.location };
    {
        std::shared_lock lock(_mutex);
        auto table = _scl_memo.find(ck);
        if (_options.memoize && table != _scl_memo.end()) {
            auto it = table->second.find(alive);
            if (it != table->second.end()) {
                ++_hits;
                return it->second;
            }
        }
    }
    ++_expanded;
    Rational best{ 0 };
    for (const auto& s : cot_splits(alive)) {
        auto choice = best_scl_pair(s.parts, costs, [&](const VerifierSet& a) { return scl_rec(a, costs); });
        best = std::max(best, choice.value);
    }
    if (_options.memoize) {
        std::unique_lock lock(_mutex);
        auto& table = _scl_memo[ck];
        if (table.size() < _options.memo_cap)
            table.emplace(alive, best);
    }
    return best;
}

Rational DimensionEngine::value(const VerifierSet& alive, TreeKind kind, const DimParams& params)
{
    switch (kind) {
    case TreeKind::Plain: return Rational(ldim(alive));
    case TreeKind::SC: return Rational(sc_ldim(alive, params.k));
    case TreeKind::WSC: return wsc_ldim(alive, params.costs);
    case TreeKind::SCL: return scl_ldim(alive, params.costs);
    }
    return Rational(0);
}

// ---------------------------------------------------------------------------

MistakeTree DimensionEngine::extract_witness(const VerifierSet& alive, TreeKind kind, const DimParams& params)
{
    if (value(alive, kind, params) == Rational(0))
        throw Error(ErrorCode::NoWitness, "dimension is 0; no nonempty witness tree");
    MistakeTree tree;
    tree.kind = kind;
    tree.budget = kind == TreeKind::SC ? params.k : 0;
    tree.costs = params.costs;
    build(tree, alive, params.k);
    return tree;
}

int DimensionEngine::build(MistakeTree& tree, const VerifierSet& alive, int k)
{
    const auto& costs = tree.costs;
    const auto node = static_cast<int>(tree.nodes.size());

    if (tree.kind == TreeKind::SCL) {
        const auto target = scl_rec(alive, costs);
        if (target == Rational(0))
            return -1;
        for (const auto& s : cot_splits(alive)) {
            auto choice = best_scl_pair(s.parts, costs, [&](const VerifierSet& a) { return scl_rec(a, costs); });
            if (choice.value != target)
                continue;
            tree.nodes.push_back(TreeNode{ _cls->cot_instances()[s.cot], {} });
            const auto& pa = s.parts[choice.a];
            const auto& pb = s.parts[choice.b];
            std::vector<TreeEdge> edges;
            if (pb.label.is_all_correct()) {
                edges.push_back(TreeEdge{ EdgeType::S, pa.label, costs.soundness, -1 });
                edges.push_back(TreeEdge{ EdgeType::C, pb.label, costs.completeness, -1 });
            }
            else {
                edges.push_back(TreeEdge{ EdgeType::L, pa.label, costs.location, -1 });
                edges.push_back(TreeEdge{ EdgeType::L, pb.label, costs.location, -1 });
            }
            edges[0].child = build(tree, pa.members, k);
            edges[1].child = build(tree, pb.members, k);
            tree.nodes[static_cast<std::size_t>(node)].edges = std::move(edges);
            return node;
        }
        throw Error(ErrorCode::NoWitness, "internal: no SCL split attains the memoized value");
    }

    const auto target = value(alive, tree.kind, DimParams{ k, costs });
    if (target == Rational(0))
        return -1;
    for (const auto& s : splits(alive)) {
        Rational v;
        switch (tree.kind) {
        case TreeKind::Plain: v = 1 + std::min(ldim_rec(s.yes), ldim_rec(s.no)); break;
        case TreeKind::SC:
            v = k == 0 ? 1 + sc_rec(s.yes, 0) : 1 + std::min(sc_rec(s.yes, k), sc_rec(s.no, k - 1));
            break;
        case TreeKind::WSC:
            v = std::min(costs.soundness + wsc_rec(s.no, costs), costs.completeness + wsc_rec(s.yes, costs));
            break;
        case TreeKind::SCL: break;
        }
        if (v != target)
            continue;
        tree.nodes.push_back(TreeNode{ _cls->universe()[s.instance], {} });
        const bool weighted = tree.kind == TreeKind::WSC;
        TreeEdge straight{ EdgeType::Straight, PrefixLabel::No, weighted ? costs.soundness : Rational(1), -1 };
        TreeEdge curvy{ EdgeType::Curvy, PrefixLabel::Yes, weighted ? costs.completeness : Rational(1), -1 };
        if (tree.kind == TreeKind::SC) {
            curvy.child = build(tree, s.yes, k);
            if (k > 0)
                straight.child = build(tree, s.no, k - 1);
        }
        else {
            curvy.child = build(tree, s.yes, k);
            straight.child = build(tree, s.no, k);
        }
        tree.nodes[static_cast<std::size_t>(node)].edges = { straight, curvy };
        return node;
    }
    throw Error(ErrorCode::NoWitness, "internal: no split attains the memoized value");
}

// ---------------------------------------------------------------------------

namespace {

DimResult finish(DimensionEngine& engine, const VersionSpace& vs, TreeKind kind, const DimParams& params,
                 bool with_witness)
{
    DimResult r;
    r.value = engine.value(vs.alive(), kind, params);
    if (with_witness && r.value != Rational(0))
        r.witness = engine.extract_witness(vs.alive(), kind, params);
    r.stats = engine.stats();
    return r;
}

} // namespace

DimResult ldim(const VersionSpace& vs, bool with_witness)
{
    DimensionEngine engine(vs.class_ptr());
    return finish(engine, vs, TreeKind::Plain, {}, with_witness);
}

DimResult sc_ldim(const VersionSpace& vs, int k, bool with_witness)
{
    DimensionEngine engine(vs.class_ptr());
    return finish(engine, vs, TreeKind::SC, DimParams{ k, {} }, with_witness);
}

DimResult wsc_ldim(const VersionSpace& vs, const CostVector& costs, bool with_witness)
{
    DimensionEngine engine(vs.class_ptr());
    return finish(engine, vs, TreeKind::WSC, DimParams{ 0, costs }, with_witness);
}

DimResult scl_ldim(const VersionSpace& vs, const CostVector& costs, bool with_witness)
{
    DimensionEngine engine(vs.class_ptr());
    return finish(engine, vs, TreeKind::SCL, DimParams{ 0, costs }, with_witness);
}

// ---------------------------------------------------------------------------

namespace {

void check_structure(const MistakeTree& tree)
{
    auto malformed = [](const std::string& what) { return Error(ErrorCode::MalformedTree, what); };
    const auto n = tree.nodes.size();
    std::vector<int> refs(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& node = tree.nodes[i];
        const auto where = "node " + std::to_string(i);
        if (node.edges.size() != 2)
            throw malformed(where + " must have exactly two edges");
        for (const auto& e : node.edges) {
            if (e.child < -1 || e.child >= static_cast<int>(n))
                throw malformed(where + " has a child index out of range");
            if (e.child == 0)
                throw malformed(where + " points back at the root");
            if (e.child > 0)
                ++refs[static_cast<std::size_t>(e.child)];
        }
        const auto& a = node.edges[0];
        const auto& b = node.edges[1];
        if (tree.kind == TreeKind::SCL) {
            if (!std::holds_alternative<CotInstance>(node.instance))
                throw malformed(where + " of an SCL tree must hold a full trace");
            if (!std::holds_alternative<Label>(a.label) || !std::holds_alternative<Label>(b.label))
                throw malformed(where + " of an SCL tree must carry chain-of-thought labels");
            const auto la = std::get<Label>(a.label), lb = std::get<Label>(b.label);
            if (la == lb)
                throw malformed(where + " has two edges with the same label");
            const bool two_l = a.type == EdgeType::L && b.type == EdgeType::L && !la.is_all_correct() &&
                               !lb.is_all_correct() && a.weight == tree.costs.location &&
                               b.weight == tree.costs.location;
            auto sc_pair = [&](const TreeEdge& s, const TreeEdge& c) {
                return s.type == EdgeType::S && c.type == EdgeType::C && !std::get<Label>(s.label).is_all_correct() &&
                       std::get<Label>(c.label).is_all_correct() && s.weight == tree.costs.soundness &&
                       c.weight == tree.costs.completeness;
            };
            if (!two_l && !sc_pair(a, b) && !sc_pair(b, a))
                throw malformed(where + " needs two l-edges or one s-edge and one c-edge");
        }
        else {
            if (!std::holds_alternative<PrefixInstance>(node.instance))
                throw malformed(where + " must hold a prefix instance");
            auto is = [](const TreeEdge& e, EdgeType t, PrefixLabel y) {
                return e.type == t && std::holds_alternative<PrefixLabel>(e.label) && std::get<PrefixLabel>(e.label) == y;
            };
            const TreeEdge* straight = is(a, EdgeType::Straight, PrefixLabel::No) ? &a
                                       : is(b, EdgeType::Straight, PrefixLabel::No) ? &b
                                                                                     : nullptr;
            const TreeEdge* curvy = is(a, EdgeType::Curvy, PrefixLabel::Yes) ? &a
                                    : is(b, EdgeType::Curvy, PrefixLabel::Yes) ? &b
                                                                                : nullptr;
            if (!straight || !curvy)
                throw malformed(where + " needs one straight NO edge and one curvy YES edge");
            const bool weighted = tree.kind == TreeKind::WSC;
            if (straight->weight != (weighted ? tree.costs.soundness : Rational(1)) ||
                curvy->weight != (weighted ? tree.costs.completeness : Rational(1)))
                throw malformed(where + " has an edge weight that does not match its type");
        }
    }
    for (std::size_t i = 1; i < n; ++i)
        if (refs[i] != 1)
            throw malformed("node " + std::to_string(i) + " is not referenced exactly once");
}

bool shattered_from(const MistakeTree& tree, const VerifierClass& cls, int node, const VerifierSet& alive)
{
    const auto& nd = tree.nodes[static_cast<std::size_t>(node)];
    if (tree.kind == TreeKind::SCL) {
        const auto& z = std::get<CotInstance>(nd.instance);
        std::vector<std::size_t> ids;
        try {
            ids = cls.prefix_ids(z);
        }
        catch (const Error&) {
            return false;
        }
        auto parts = partition_by_cot_label(cls, alive, ids);
        for (const auto& e : nd.edges) {
            const auto y = std::get<Label>(e.label);
            auto it = std::find_if(parts.begin(), parts.end(), [&](const LabelPart& p) { return p.label == y; });
            if (it == parts.end())
                return false;
            if (e.child >= 0 && !shattered_from(tree, cls, e.child, it->members))
                return false;
        }
        return true;
    }
    auto idx = cls.find(std::get<PrefixInstance>(nd.instance));
    if (!idx)
        return false;
    const auto& acc = cls.acceptors(*idx);
    for (const auto& e : nd.edges) {
        auto next = std::get<PrefixLabel>(e.label) == PrefixLabel::Yes ? (alive & acc) : alive.minus(acc);
        if (next.empty())
            return false;
        if (e.child >= 0 && !shattered_from(tree, cls, e.child, next))
            return false;
    }
    return true;
}

} // namespace

bool verify_shattered(const MistakeTree& tree, const VersionSpace& vs)
{
    check_structure(tree);
    if (tree.nodes.empty())
        return true;
    return shattered_from(tree, vs.cls(), 0, vs.alive());
}

Rational certified_value(const MistakeTree& tree)
{
    check_structure(tree);
    if (tree.nodes.empty())
        return Rational(0);
    std::optional<Rational> best;
    std::function<void(int, Rational, int)> walk = [&](int node, Rational acc, int straight) {
        for (const auto& e : tree.nodes[static_cast<std::size_t>(node)].edges) {
            const int s = straight + (e.type == EdgeType::Straight ? 1 : 0);
            const Rational w = acc + e.weight;
            if (e.child >= 0) {
                walk(e.child, w, s);
                continue;
            }
            if (tree.kind == TreeKind::SC && s > tree.budget)
                continue;
            if (!best || w < *best)
                best = w;
        }
    };
    walk(0, Rational(0), 0);
    return best.value_or(Rational(0));
}

std::uint64_t min_leaf_recurrence(int w, int d)
{
    if (d < 1)
        throw Error(ErrorCode::InvalidArgument, "recurrence step d must be >= 1");
    if (w <= 0)
        return 1;
    std::vector<std::uint64_t> L(static_cast<std::size_t>(w) + 1);
    auto at = [&](int i) -> std::uint64_t { return i <= 0 ? 1 : L[static_cast<std::size_t>(i)]; };
    L[0] = 1;
    for (int i = 1; i <= w; ++i) {
        const auto a = at(i - 1), b = at(i - d);
        L[static_cast<std::size_t>(i)] = a > UINT64_MAX - b ? UINT64_MAX : a + b;
    }
    return L[static_cast<std::size_t>(w)];
}

} // namespace cotv
