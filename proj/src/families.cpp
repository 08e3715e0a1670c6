#include "cotv/families.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace cotv {

namespace {

std::string bit_string(std::uint64_t value, int width)
{
    std::string s(static_cast<std::size_t>(width), '0');
    for (int i = 0; i < width; ++i)
        if ((value >> (width - 1 - i)) & 1u)
            s[static_cast<std::size_t>(i)] = '1';
    return s;
}

Trace bits_to_trace(std::uint64_t value, int width)
{
    Trace t(static_cast<std::size_t>(width));
    for (int i = 0; i < width; ++i)
        t[static_cast<std::size_t>(i)].id = static_cast<std::uint16_t>((value >> (width - 1 - i)) & 1u);
    return t;
}

void require_count(std::uint64_t verifiers, std::uint64_t universe, const ClassCaps& caps, const char* what)
{
    if (verifiers > caps.max_verifiers)
        throw Error(ErrorCode::CapExceeded, std::string(what) + ": " + std::to_string(verifiers) +
                                                " verifiers exceed cap " + std::to_string(caps.max_verifiers));
    if (universe > caps.max_universe)
        throw Error(ErrorCode::CapExceeded, std::string(what) + ": universe of " + std::to_string(universe) +
                                                " exceeds cap " + std::to_string(caps.max_universe));
}

// All strings over {0..sigma-1} of length 1..L, one problem.
std::vector<PrefixInstance> all_prefixes(int sigma, int L)
{
    std::vector<PrefixInstance> out;
    std::vector<Trace> level{ Trace{} };
    for (int len = 1; len <= L; ++len) {
        std::vector<Trace> next;
        next.reserve(level.size() * static_cast<std::size_t>(sigma));
        for (const auto& t : level)
            for (int s = 0; s < sigma; ++s) {
                auto u = t;
                u.push_back(Token{ static_cast<std::uint16_t>(s) });
                next.push_back(u);
                out.push_back(PrefixInstance{ ProblemId{ 0 }, std::move(u) });
            }
        level = std::move(next);
    }
    return out;
}

std::uint64_t power(std::uint64_t base, int exp, std::uint64_t limit)
{
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        r *= base;
        if (r > limit)
            return limit + 1;
    }
    return r;
}

// Shared by the bitstring and conjunction families: verifier b accepts τ_{1:l} iff τ_l = b_l.
VerifierClass::Tables positional_tables(int L, const ClassCaps& caps, const char* what)
{
    if (L < 1 || L > 16)
        throw Error(ErrorCode::CapExceeded, std::string(what) + ": L must lie in 1..16");
    const auto n = std::uint64_t{ 1 } << L;
    require_count(n, (n - 1) * 2, caps, what);

    VerifierClass::Tables t;
    t.sigma = { "0", "1" };
    t.problems = { "x" };
    t.max_len = L;
    t.universe = all_prefixes(2, L);
    t.rows.assign(n, std::vector<bool>(t.universe.size()));
    for (std::uint64_t b = 0; b < n; ++b)
        for (std::size_t i = 0; i < t.universe.size(); ++i) {
            const auto& steps = t.universe[i].steps;
            const int l = static_cast<int>(steps.size());
            const auto bit = (b >> (L - l)) & 1u;
            t.rows[b][i] = steps.back().id == bit;
        }
    return t;
}

} // namespace

ClassPtr singleton_bitstring_class(int L, ClassCaps caps)
{
    auto t = positional_tables(L, caps, "singleton_bitstring_class");
    for (std::uint64_t b = 0; b < t.rows.size(); ++b)
        t.verifier_names.push_back("h_" + bit_string(b, L));
    return std::make_shared<const VerifierClass>(std::move(t), caps);
}

ClassPtr conjunction_class(int L, ClassCaps caps)
{
    if (L > 12)
        throw Error(ErrorCode::CapExceeded, "conjunction_class: L must be <= 12");
    auto t = positional_tables(L, caps, "conjunction_class");
    for (std::uint64_t b = 0; b < t.rows.size(); ++b) {
        std::string name;
        for (int l = 1; l <= L; ++l) {
            if (l > 1)
                name += "&";
            if (((b >> (L - l)) & 1u) == 0)
                name += "!";
            name += "x" + std::to_string(l);
        }
        t.verifier_names.push_back(std::move(name));
    }
    return std::make_shared<const VerifierClass>(std::move(t), caps);
}

ClassPtr complement_class(int n, int L, ClassCaps caps)
{
    if (n < 2)
        throw Error(ErrorCode::InvalidArgument, "complement_class: n must be >= 2");
    if (L < 1 || L > 16)
        throw Error(ErrorCode::CapExceeded, "complement_class: L must lie in 1..16");
    if (static_cast<std::uint64_t>(n) > (std::uint64_t{ 1 } << L))
        throw Error(ErrorCode::InvalidArgument,
                    "complement_class: only " + std::to_string(1u << L) + " traces of length " + std::to_string(L));
    require_count(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(L), caps,
                  "complement_class");

    VerifierClass::Tables t;
    t.sigma = { "0", "1" };
    t.problems = { "x" };
    t.max_len = L;
    std::set<std::pair<std::size_t, Trace>> seen;
    std::vector<Trace> designated;
    for (int i = 0; i < n; ++i) {
        designated.push_back(bits_to_trace(static_cast<std::uint64_t>(i), L));
        for (int len = 1; len <= L; ++len) {
            Trace p(designated.back().begin(), designated.back().begin() + len);
            if (seen.emplace(static_cast<std::size_t>(len), p).second)
                t.universe.push_back(PrefixInstance{ ProblemId{ 0 }, std::move(p) });
        }
    }
    t.rows.assign(static_cast<std::size_t>(n), std::vector<bool>(t.universe.size(), true));
    for (int v = 0; v < n; ++v) {
        for (std::size_t i = 0; i < t.universe.size(); ++i)
            if (t.universe[i].steps == designated[static_cast<std::size_t>(v)])
                t.rows[static_cast<std::size_t>(v)][i] = false;
        t.verifier_names.push_back("h_" + std::to_string(v));
    }
    return std::make_shared<const VerifierClass>(std::move(t), caps);
}

ClassPtr indicator_class(int n_bits, ClassCaps caps)
{
    if (n_bits < 1 || n_bits > 10)
        throw Error(ErrorCode::CapExceeded, "indicator_class: n_bits must lie in 1..10");
    const auto m = std::uint64_t{ 1 } << n_bits;
    require_count(static_cast<std::uint64_t>(n_bits), m, caps, "indicator_class");

    VerifierClass::Tables t;
    for (std::uint64_t v = 0; v < m; ++v)
        t.sigma.push_back(bit_string(v, n_bits));
    t.problems = { "x" };
    t.max_len = 1;
    for (std::uint64_t v = 0; v < m; ++v)
        t.universe.push_back(PrefixInstance{ ProblemId{ 0 }, Trace{ Token{ static_cast<std::uint16_t>(v) } } });
    for (int i = 1; i <= n_bits; ++i) {
        const auto unit = std::uint64_t{ 1 } << (n_bits - i);
        std::vector<bool> row(m);
        row[unit] = true;
        t.rows.push_back(std::move(row));
        t.verifier_names.push_back("h_" + std::to_string(i));
    }
    return std::make_shared<const VerifierClass>(std::move(t), caps);
}

// ---------------------------------------------------------------------------

std::vector<Edge> RiverCrossingLayout::hidden_set(std::size_t verifier) const
{
    std::vector<Edge> out;
    for (std::size_t b = 0; b < hidden_pool.size(); ++b)
        if ((verifier >> b) & 1u)
            out.push_back(hidden_pool[b]);
    return out;
}

bool river_state_safe(int state)
{
    const int farmer = (state >> 3) & 1, chicken = (state >> 2) & 1, fox = (state >> 1) & 1, corn = state & 1;
    if (chicken != farmer && (chicken == fox || chicken == corn))
        return false;
    return true;
}

std::vector<Edge> river_legal_edges()
{
    std::set<Edge> edges;
    for (int s = 0; s < 16; ++s) {
        if (!river_state_safe(s))
            continue;
        const int farmer = (s >> 3) & 1;
        // Alone, or carrying one item from the farmer's bank.
        for (int cargo = -1; cargo < 3; ++cargo) {
            int t = s ^ 8;
            if (cargo >= 0) {
                if (((s >> cargo) & 1) != farmer)
                    continue;
                t ^= 1 << cargo;
            }
            if (river_state_safe(t))
                edges.insert({ std::min(s, t), std::max(s, t) });
        }
    }
    return { edges.begin(), edges.end() };
}

std::string river_state_name(int state) { return bit_string(static_cast<std::uint64_t>(state), 4); }

namespace {

Edge make_edge(int a, int b) { return { std::min(a, b), std::max(a, b) }; }

bool in_edges(const std::vector<Edge>& sorted, Edge e) { return std::binary_search(sorted.begin(), sorted.end(), e); }

} // namespace

RiverCrossingLayout river_crossing_class(const std::vector<Edge>& revealed, int L, bool full_mode, ClassCaps caps)
{
    if (L < 1 || L > 12)
        throw Error(ErrorCode::CapExceeded, "river_crossing_class: L must lie in 1..12");

    RiverCrossingLayout lay;
    lay.L = L;
    lay.full_mode = full_mode;
    lay.legal_edges = river_legal_edges();
    for (auto e : revealed) {
        e = make_edge(e.first, e.second);
        if (!in_edges(lay.legal_edges, e))
            throw Error(ErrorCode::InvalidArgument, "revealed edge " + river_state_name(e.first) + "-" +
                                                        river_state_name(e.second) + " is not a legal move");
        lay.revealed.push_back(e);
    }
    std::sort(lay.revealed.begin(), lay.revealed.end());
    lay.revealed.erase(std::unique(lay.revealed.begin(), lay.revealed.end()), lay.revealed.end());
    for (auto e : lay.legal_edges)
        if (full_mode || !in_edges(lay.revealed, e))
            lay.hidden_pool.push_back(e);
    if (lay.hidden_pool.size() >= 63 || (std::uint64_t{ 1 } << lay.hidden_pool.size()) > caps.max_verifiers)
        throw Error(ErrorCode::CapExceeded, "river_crossing_class: 2^" + std::to_string(lay.hidden_pool.size()) +
                                                " hidden edge sets exceed cap " + std::to_string(caps.max_verifiers));
    const auto n = std::size_t{ 1 } << lay.hidden_pool.size();

    VerifierClass::Tables t;
    for (int s = 0; s < 16; ++s)
        t.sigma.push_back(river_state_name(s));
    t.problems = { "river" };
    t.max_len = L;

    // Walks over E from the start state, extended by an arbitrary last state.
    std::vector<Trace> walks{ Trace{ Token{ static_cast<std::uint16_t>(lay.start) } } };
    for (int s = 0; s < 16; ++s)
        t.universe.push_back(PrefixInstance{ ProblemId{ 0 }, Trace{ Token{ static_cast<std::uint16_t>(s) } } });
    for (int len = 2; len <= L; ++len) {
        std::vector<Trace> next;
        for (const auto& w : walks)
            for (int s = 0; s < 16; ++s) {
                auto u = w;
                u.push_back(Token{ static_cast<std::uint16_t>(s) });
                if (in_edges(lay.legal_edges, make_edge(w.back().id, s)))
                    next.push_back(u);
                t.universe.push_back(PrefixInstance{ ProblemId{ 0 }, std::move(u) });
            }
        walks = std::move(next);
        if (t.universe.size() > caps.max_universe)
            throw Error(ErrorCode::CapExceeded, "river_crossing_class: universe exceeds cap " +
                                                    std::to_string(caps.max_universe));
    }

    t.rows.assign(n, std::vector<bool>(t.universe.size()));
    for (std::size_t v = 0; v < n; ++v) {
        auto allowed = lay.revealed;
        for (auto e : lay.hidden_set(v))
            allowed.push_back(e);
        std::sort(allowed.begin(), allowed.end());
        for (std::size_t i = 0; i < t.universe.size(); ++i) {
            const auto& steps = t.universe[i].steps;
            const int len = static_cast<int>(steps.size());
            bool yes;
            if (len == 1)
                yes = steps[0].id == lay.start;
            else {
                yes = in_edges(allowed, make_edge(steps[steps.size() - 2].id, steps.back().id));
                if (len == L)
                    yes = yes && steps.back().id == lay.goal;
            }
            t.rows[v][i] = yes;
        }
        std::string name = "h{";
        bool first = true;
        for (auto e : lay.hidden_set(v)) {
            name += (first ? "" : ",") + river_state_name(e.first) + "-" + river_state_name(e.second);
            first = false;
        }
        t.verifier_names.push_back(name + "}");
    }
    lay.cls = std::make_shared<const VerifierClass>(std::move(t), caps);
    return lay;
}

RiverCrossingLayout river_crossing_layout_of(const ClassPtr& cls)
{
    auto mismatch = [] { return Error(ErrorCode::ClassMismatch, "class is not a river-crossing class"); };
    if (!cls || cls->sigma().size() != 16 || cls->problems().size() != 1)
        throw mismatch();
    for (int s = 0; s < 16; ++s)
        if (cls->sigma()[static_cast<std::size_t>(s)] != river_state_name(s))
            throw mismatch();

    const int L = cls->max_len();
    std::vector<Edge> revealed;
    for (auto e : river_legal_edges()) {
        for (std::size_t i = 0; i < cls->universe_size(); ++i) {
            const auto& steps = cls->universe()[i].steps;
            const int len = static_cast<int>(steps.size());
            if (len < 2 || (len == L && steps.back().id != 15))
                continue;
            if (make_edge(steps[steps.size() - 2].id, steps.back().id) != e)
                continue;
            if (cls->acceptors(i).count() == cls->verifier_count())
                revealed.push_back(e);
            break;
        }
    }
    // Edges no walk of length L reaches leave no trace in the tables; the
    // last verifier's name lists every hidden edge.
    std::vector<Edge> named_hidden;
    const auto name = cls->verifier_count() ? cls->verifier_name(cls->verifier_count() - 1) : std::string{};
    if (name.size() >= 3 && name.starts_with("h{") && name.back() == '}') {
        const auto body = name.substr(2, name.size() - 3);
        for (std::size_t pos = 0; pos + 9 <= body.size(); pos += 10)
            if (body[pos + 4] == '-')
                named_hidden.push_back(make_edge(std::stoi(body.substr(pos, 4), nullptr, 2),
                                                 std::stoi(body.substr(pos + 5, 4), nullptr, 2)));
    }
    std::vector<Edge> complement;
    for (auto e : river_legal_edges())
        if (std::find(named_hidden.begin(), named_hidden.end(), e) == named_hidden.end())
            complement.push_back(e);

    for (const auto* candidate : { &revealed, &complement })
        for (bool full : { false, true }) {
            try {
                auto lay = river_crossing_class(*candidate, L, full);
                if (*lay.cls == *cls) {
                    lay.cls = cls;
                    return lay;
                }
            }
            catch (const Error&) {
            }
        }
    throw mismatch();
}

// ---------------------------------------------------------------------------

ClassPtr product_class(int sigma_size, const std::vector<StepClass>& steps, ClassCaps caps)
{
    if (sigma_size < 2)
        throw Error(ErrorCode::InvalidArgument, "product_class: |sigma| must be >= 2");
    if (steps.empty())
        throw Error(ErrorCode::InvalidArgument, "product_class: need at least one step class");
    const int L = static_cast<int>(steps.size());
    std::uint64_t n = 1;
    for (const auto& s : steps) {
        if (s.members.empty())
            throw Error(ErrorCode::InvalidArgument, "product_class: empty step class");
        for (const auto& m : s.members)
            if (m.size() != static_cast<std::size_t>(sigma_size))
                throw Error(ErrorCode::InvalidArgument, "product_class: acceptance set size differs from |sigma|");
        n *= s.members.size();
        if (n > caps.max_verifiers)
            throw Error(ErrorCode::CapExceeded, "product_class: product size exceeds cap " +
                                                    std::to_string(caps.max_verifiers));
    }
    std::uint64_t universe = 0;
    for (int len = 1; len <= L; ++len)
        universe += power(static_cast<std::uint64_t>(sigma_size), len, caps.max_universe);
    require_count(n, universe, caps, "product_class");

    VerifierClass::Tables t;
    for (int s = 0; s < sigma_size; ++s)
        t.sigma.push_back(std::to_string(s));
    t.problems = { "x" };
    t.max_len = L;
    t.universe = all_prefixes(sigma_size, L);
    t.rows.assign(n, std::vector<bool>(t.universe.size()));
    for (std::uint64_t v = 0; v < n; ++v) {
        // Mixed radix, step 1 most significant.
        std::vector<std::size_t> pick(steps.size());
        auto rest = v;
        for (std::size_t l = steps.size(); l-- > 0;) {
            pick[l] = rest % steps[l].members.size();
            rest /= steps[l].members.size();
        }
        for (std::size_t i = 0; i < t.universe.size(); ++i) {
            const auto& z = t.universe[i].steps;
            const auto l = z.size() - 1;
            t.rows[v][i] = steps[l].members[pick[l]][z.back().id];
        }
        std::string name = "h(";
        for (std::size_t l = 0; l < pick.size(); ++l)
            name += (l ? "," : "") + std::to_string(pick[l]);
        t.verifier_names.push_back(name + ")");
    }
    return std::make_shared<const VerifierClass>(std::move(t), caps);
}

ClassPtr add_fail_token(const VerifierClass& cls, ClassCaps caps)
{
    if (cls.fail_token())
        throw Error(ErrorCode::InvalidArgument, "class already declares a fail token");
    VerifierClass::Tables t;
    t.sigma = cls.sigma();
    const Token F{ static_cast<std::uint16_t>(t.sigma.size()) };
    t.sigma.push_back("F");
    t.problems = cls.problems();
    t.max_len = cls.max_len();
    t.fail_token = F;
    t.universe = cls.universe();
    const auto old_size = t.universe.size();

    auto pad_from = [&](ProblemId x, const Trace& base) {
        auto u = base;
        while (static_cast<int>(u.size()) < t.max_len) {
            u.push_back(F);
            t.universe.push_back(PrefixInstance{ x, u });
        }
    };
    for (std::uint32_t x = 0; x < t.problems.size(); ++x)
        pad_from(ProblemId{ x }, Trace{});
    for (std::size_t i = 0; i < old_size; ++i)
        pad_from(t.universe[i].problem, Trace(t.universe[i].steps));

    for (std::size_t v = 0; v < cls.verifier_count(); ++v) {
        auto row = cls.row(v);
        row.resize(t.universe.size(), false);
        t.rows.push_back(std::move(row));
        t.verifier_names.push_back(cls.verifier_name(v));
    }
    return std::make_shared<const VerifierClass>(std::move(t), caps);
}

void validate_fail_token(const VerifierClass& cls)
{
    if (!cls.fail_token())
        throw Error(ErrorCode::FailTokenRequired, "class declares no fail token");
    const auto F = *cls.fail_token();
    for (std::size_t i = 0; i < cls.universe_size(); ++i) {
        const auto& z = cls.universe()[i];
        if (z.steps.back() != F)
            continue;
        bool correct_before = z.steps.size() == 1;
        if (!correct_before)
            for (std::size_t v = 0; v < cls.verifier_count() && !correct_before; ++v)
                correct_before = cls.accepts_all_prefixes(v, cls.parent(i));
        if (correct_before && !cls.acceptors(i).empty())
            throw Error(ErrorCode::FailTokenInvalid, "verifier " + cls.verifier_name(cls.acceptors(i).first()) +
                                                         " accepts fail step " + cls.describe(z));
    }
}

} // namespace cotv
