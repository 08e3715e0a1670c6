#include "cotv/report.hpp"

#include <algorithm>
#include <sstream>

namespace cotv {

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

namespace {

Json steps_to_json(const VerifierClass& cls, const Trace& steps)
{
    Json out = Json::array();
    for (auto t : steps)
        out.push_back(t.id < cls.sigma().size() ? cls.sigma()[t.id] : std::to_string(t.id));
    return out;
}

std::string dot_escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out;
}

[[noreturn]] void schema_fail(const std::string& field, const std::string& what)
{
    throw Error(ErrorCode::SchemaError, field + ": " + what);
}

ProblemId problem_from_json(const VerifierClass& cls, const Json& j, const std::string& path)
{
    if (j.is_number_integer()) {
        const auto v = j.get<std::int64_t>();
        if (v < 0 || static_cast<std::size_t>(v) >= cls.problems().size())
            schema_fail(path, "problem index " + std::to_string(v) + " out of range");
        return ProblemId{ static_cast<std::uint32_t>(v) };
    }
    if (j.is_string()) {
        const auto& names = cls.problems();
        const auto it = std::find(names.begin(), names.end(), j.get<std::string>());
        if (it == names.end())
            schema_fail(path, "unknown problem '" + j.get<std::string>() + "'");
        return ProblemId{ static_cast<std::uint32_t>(it - names.begin()) };
    }
    schema_fail(path, "expected a problem index or name");
}

Trace steps_from_json(const VerifierClass& cls, const Json& j, const std::string& path)
{
    if (!j.is_array())
        schema_fail(path, "expected an array of steps");
    Trace out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto p = path + "[" + std::to_string(i) + "]";
        if (j[i].is_number_integer()) {
            const auto v = j[i].get<std::int64_t>();
            if (v < 0 || static_cast<std::size_t>(v) >= cls.sigma().size())
                schema_fail(p, "token id " + std::to_string(v) + " out of range");
            out.push_back(Token{ static_cast<std::uint16_t>(v) });
        }
        else if (j[i].is_string()) {
            const auto& sigma = cls.sigma();
            const auto it = std::find(sigma.begin(), sigma.end(), j[i].get<std::string>());
            if (it == sigma.end())
                schema_fail(p, "unknown token '" + j[i].get<std::string>() + "'");
            out.push_back(Token{ static_cast<std::uint16_t>(it - sigma.begin()) });
        }
        else {
            schema_fail(p, "expected a token id or name");
        }
    }
    return out;
}

template <typename Instance>
std::vector<Instance> sequence_from_json(const VerifierClass& cls, const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        schema_fail(key, "missing");
    const auto& arr = j.at(key);
    if (!arr.is_array())
        schema_fail(key, "expected an array");
    std::vector<Instance> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto path = std::string(key) + "[" + std::to_string(i) + "]";
        if (!arr[i].is_object() || !arr[i].contains("problem") || !arr[i].contains("steps"))
            schema_fail(path, "expected {\"problem\": ..., \"steps\": [...]}");
        out.push_back(Instance{ problem_from_json(cls, arr[i]["problem"], path + ".problem"),
                                steps_from_json(cls, arr[i]["steps"], path + ".steps") });
    }
    return out;
}

} // namespace

Json instance_to_json(const VerifierClass& cls, const AnyInstance& z)
{
    const auto& [problem, steps] = std::visit(
        [](const auto& v) { return std::pair<ProblemId, const Trace&>(v.problem, v.steps); }, z);
    const auto name = problem.id < cls.problems().size() ? cls.problems()[problem.id] : std::to_string(problem.id);
    return Json{ { "problem", name }, { "steps", steps_to_json(cls, steps) } };
}

Json tree_to_json(const VerifierClass& cls, const MistakeTree& tree)
{
    Json nodes = Json::array();
    for (const auto& n : tree.nodes) {
        Json edges = Json::array();
        for (const auto& e : n.edges)
            edges.push_back(Json{ { "type", to_string(e.type) },
                                  { "label", to_string(e.label) },
                                  { "weight", to_string(e.weight) },
                                  { "child", e.child } });
        nodes.push_back(Json{ { "instance", instance_to_json(cls, n.instance) }, { "edges", std::move(edges) } });
    }
    Json costs{ { "soundness", to_string(tree.costs.soundness) },
                { "completeness", to_string(tree.costs.completeness) },
                { "location", to_string(tree.costs.location) } };
    return Json{ { "kind", to_string(tree.kind) },
                 { "budget", tree.budget },
                 { "costs", std::move(costs) },
                 { "depth", tree.depth() },
                 { "nodes", std::move(nodes) } };
}

std::string tree_to_dot(const VerifierClass& cls, const MistakeTree& tree)
{
    std::ostringstream out;
    out << "digraph mistake_tree {\n  node [shape=box];\n";
    int leaves = 0;
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        const auto& n = tree.nodes[i];
        const auto label = std::visit([&](const auto& z) { return cls.describe(z); }, n.instance);
        out << "  n" << i << " [label=\"" << dot_escape(label) << "\"];\n";
        for (const auto& e : n.edges) {
            std::string target;
            if (e.child >= 0) {
                target = "n" + std::to_string(e.child);
            }
            else {
                target = "leaf" + std::to_string(leaves++);
                out << "  " << target << " [shape=point];\n";
            }
            const bool dashed = e.type == EdgeType::Curvy || e.type == EdgeType::C;
            out << "  n" << i << " -> " << target << " [label=\"" << dot_escape(to_string(e.type)) << " "
                << dot_escape(to_string(e.label)) << " w=" << to_string(e.weight) << "\""
                << (dashed ? ", style=dashed" : "") << "];\n";
        }
    }
    out << "}\n";
    return out.str();
}

Json totals_to_json(const MistakeTotals& t)
{
    return Json{ { "soundness", t.soundness },
                 { "completeness", t.completeness },
                 { "location", t.location },
                 { "mistakes", t.mistakes() },
                 { "cost", to_string(t.cost) } };
}

Json transcript_to_json(const VerifierClass& cls, const Transcript& tr)
{
    Json rounds = Json::array();
    for (const auto& r : tr.rounds())
        rounds.push_back(Json{ { "instance", instance_to_json(cls, r.instance) },
                               { "prediction", to_string(r.prediction) },
                               { "truth", to_string(r.truth) },
                               { "kind", to_string(r.kind) },
                               { "cost", to_string(r.cost) } });
    Json out{ { "rounds", std::move(rounds) }, { "totals", totals_to_json(tr.totals()) } };
    if (tr.inner)
        out["inner_totals"] = totals_to_json(*tr.inner);
    return out;
}

Json build_report_to_json(const BuildReport& rep)
{
    Json snaps = Json::array();
    for (const auto& s : rep.snapshots)
        snaps.push_back(Json{ { "index", s.index },
                              { "fingerprint", s.fingerprint },
                              { "soundness_errors", s.soundness_errors },
                              { "completeness_errors", s.completeness_errors },
                              { "soundness_rate", to_string(Rational(s.soundness_errors, rep.s2)) },
                              { "completeness_rate", to_string(Rational(s.completeness_errors, rep.s2)) },
                              { "qualifies", s.qualifies } });
    Json out{ { "mistake_bounds", Json{ { "soundness", rep.bounds.soundness }, { "completeness", rep.bounds.completeness } } },
              { "timeout_budget", rep.budget },
              { "oracle_call_bound", rep.call_bound },
              { "s1_size", rep.s1 },
              { "s2_size", rep.s2 },
              { "process_outcomes",
                Json{ { "made_mistake", rep.mistakes }, { "timeout", rep.timeouts }, { "full_proof", rep.full_proofs } } },
              { "oracle_calls",
                Json{ { "max_per_process_example", rep.max_calls_process },
                      { "max_per_test_hypothesis", rep.max_calls_test },
                      { "total", rep.total_calls } } },
              { "thresholds",
                Json{ { "soundness", to_string(rep.soundness_threshold) },
                      { "completeness", to_string(rep.completeness_threshold) } } },
              { "snapshots", std::move(snaps) },
              { "selected", rep.selected ? Json(*rep.selected) : Json(nullptr) } };
    return out;
}

Json rates_to_json(const VhpRates& r)
{
    return Json{ { "trials", r.trials },
                 { "abstain", to_string(r.abstain_rate()) },
                 { "incorrect_proof", to_string(r.incorrect_rate()) },
                 { "correct_proof", to_string(r.correct_rate()) } };
}

Json alpha_report_to_json(const AlphaReport& rep, const Rational& alpha)
{
    Json problems = Json::array();
    for (std::size_t x = 0; x < rep.per_problem.size(); ++x)
        problems.push_back(Json{ { "problem", x }, { "alpha", to_string(rep.per_problem[x]) }, { "good", static_cast<bool>(rep.good[x]) } });
    return Json{ { "alpha", to_string(alpha) },
                 { "gamma", to_string(rep.gamma) },
                 { "problems", std::move(problems) },
                 { "declared_violations", Json(rep.declared_violations) },
                 { "certified", rep.declared_violations.empty() } };
}

std::vector<PrefixInstance> prefix_sequence_from_json(const VerifierClass& cls, const Json& j)
{
    return sequence_from_json<PrefixInstance>(cls, j, "prefix");
}

std::vector<CotInstance> cot_sequence_from_json(const VerifierClass& cls, const Json& j)
{
    return sequence_from_json<CotInstance>(cls, j, "cot");
}

} // namespace cotv
