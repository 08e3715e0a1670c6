#include "cotv/adversary.hpp"

#include "cotv/families.hpp"

#include <algorithm>

namespace cotv {

namespace {

CostVector unit_costs() { return CostVector{ Rational(1), Rational(1), Rational(0) }; }

void require_shattered(const MistakeTree& tree, const VersionSpace& vs)
{
    if (!verify_shattered(tree, vs))
        throw Error(ErrorCode::TreeNotShattered, "tree is not shattered by the version space");
}

} // namespace

AdversaryRun play_tree_adversary(const MistakeTree& tree, const VersionSpace& vs, PrefixLearner& learner)
{
    if (tree.kind == TreeKind::SCL)
        throw Error(ErrorCode::InvalidArgument, "SCL trees are played against chain-of-thought learners");
    require_shattered(tree, vs);
    AdversaryRun run{ Transcript(tree.kind == TreeKind::WSC ? tree.costs : unit_costs()), 0 };
    auto alive = vs;
    for (int node = tree.empty() ? -1 : 0; node >= 0;) {
        const auto& nd = tree.nodes[static_cast<std::size_t>(node)];
        const auto& z = std::get<PrefixInstance>(nd.instance);
        const auto guess = learner.predict(z);
        const auto& edge =
            std::get<PrefixLabel>(nd.edges[0].label) != guess ? nd.edges[0] : nd.edges[1];
        const auto truth = std::get<PrefixLabel>(edge.label);
        run.transcript.record(z, guess, truth, classify_mistake(guess, truth));
        learner.update(z, truth);
        alive = alive.restrict(z, truth);
        node = edge.child;
    }
    run.consistent_verifier = alive.alive().first();
    return run;
}

AdversaryRun play_tree_adversary(const MistakeTree& tree, const VersionSpace& vs, CotLearner& learner)
{
    if (tree.kind != TreeKind::SCL)
        throw Error(ErrorCode::InvalidArgument, "prefix-level trees are played against prefix learners");
    require_shattered(tree, vs);
    AdversaryRun run{ Transcript(tree.costs), 0 };
    auto alive = vs;
    for (int node = tree.empty() ? -1 : 0; node >= 0;) {
        const auto& nd = tree.nodes[static_cast<std::size_t>(node)];
        const auto& z = std::get<CotInstance>(nd.instance);
        const auto guess = learner.predict(z);
        const TreeEdge* pick = nullptr;
        const auto& a = nd.edges[0];
        const auto& b = nd.edges[1];
        if (a.type == EdgeType::L) {
            pick = std::get<Label>(a.label) != guess ? &a : &b;
        }
        else {
            // s-edge if the learner accepts, c-edge if it rejects.
            const auto& s = a.type == EdgeType::S ? a : b;
            const auto& c = a.type == EdgeType::S ? b : a;
            pick = guess.is_all_correct() ? &s : &c;
        }
        const auto truth = std::get<Label>(pick->label);
        run.transcript.record(z, guess, truth, classify_mistake(guess, truth, MistakeMode::SequenceLevel));
        learner.update(z, truth);
        alive = alive.restrict(z, truth);
        node = pick->child;
    }
    run.consistent_verifier = alive.alive().first();
    return run;
}

AdversaryRun prop31_adversary(const ClassPtr& cls, CotLearner& learner)
{
    const int L = cls->max_len();
    if (L > 16 || !(*cls == *singleton_bitstring_class(L)))
        throw Error(ErrorCode::ClassMismatch, "prop31 adversary needs a singleton-bitstring class");

    AdversaryRun run{ Transcript(unit_costs()), 0 };
    std::vector<int> bits;
    while (static_cast<int>(bits.size()) < L) {
        const int p = static_cast<int>(bits.size());
        CotInstance z{ ProblemId{ 0 }, Trace(static_cast<std::size_t>(L), Token{ 1 }) };
        for (int i = 0; i < p; ++i)
            z.steps[static_cast<std::size_t>(i)].id = static_cast<std::uint16_t>(bits[static_cast<std::size_t>(i)]);
        const auto guess = learner.predict(z);
        Label truth;
        if (guess != Label::fault_at(p + 1)) {
            truth = Label::fault_at(p + 1);
            bits.push_back(0);
        }
        else if (p + 2 <= L) {
            truth = Label::fault_at(p + 2);
            bits.push_back(1);
            bits.push_back(0);
        }
        else {
            truth = Label::all_correct();
            bits.push_back(1);
        }
        run.transcript.record(z, guess, truth, classify_mistake(guess, truth, MistakeMode::PrefixLevel));
        learner.update(z, truth);
    }
    std::size_t target = 0;
    for (int b : bits)
        target = target * 2 + static_cast<std::size_t>(b);
    run.consistent_verifier = target;
    return run;
}

AdversaryRun prop32_adversary(const ClassPtr& cls, CotLearner& learner)
{
    const int n = static_cast<int>(cls->verifier_count());
    const int L = cls->max_len();
    if (n < 2 || L > 16 || !(*cls == *complement_class(n, L)))
        throw Error(ErrorCode::ClassMismatch, "prop32 adversary needs a complement class");

    // Designated trace i is the unique full trace verifier i rejects.
    std::vector<CotInstance> designated(static_cast<std::size_t>(n));
    for (const auto& z : cls->cot_instances()) {
        const auto ids = cls->prefix_ids(z);
        const auto rejecting = cls->all_verifiers().minus(cls->acceptors(ids.back()));
        if (!rejecting.empty())
            designated[rejecting.first()] = z;
    }

    AdversaryRun run{ Transcript(unit_costs()), 0 };
    auto alive = VersionSpace(cls);
    for (int t = 0; t < n; ++t) {
        const auto& z = designated[static_cast<std::size_t>(t)];
        const auto guess = learner.predict(z);
        if (guess.is_all_correct())
            throw Error(ErrorCode::LearnerNotSound, "learner accepted designated trace " + std::to_string(t) +
                                                        " while verifier " + cls->verifier_name(t) +
                                                        " is still consistent");
        const auto truth = t + 1 < n ? Label::all_correct() : Label::fault_at(L);
        run.transcript.record(z, guess, truth, classify_mistake(guess, truth, MistakeMode::PrefixLevel));
        learner.update(z, truth);
        alive = alive.restrict(z, truth);
    }
    run.consistent_verifier = alive.alive().first();
    return run;
}

} // namespace cotv
