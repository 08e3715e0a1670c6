// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "cotv/adversary.hpp"
#include "cotv/boosting.hpp"
#include "cotv/reductions.hpp"
#include "support/corpus.hpp"
#include "support/exhaustive.hpp"
#include "support/oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace cotv;
using namespace cotv::testing;

namespace {

// Collects failure notes for one criterion.
struct Check
{
    std::vector<std::string> failures;
    std::string info;

    void expect(bool ok, const std::string& what)
    {
        if (!ok && failures.size() < 8)
            failures.push_back(what);
        else if (!ok)
            failures.push_back("");
    }
};

std::string str(const Rational& r) { return to_string(r); }

std::vector<NamedClass> small_corpus(std::size_t max_verifiers)
{
    std::vector<NamedClass> out;
    for (auto& c : corpus())
        if (c.cls->verifier_count() <= max_verifiers)
            out.push_back(std::move(c));
    return out;
}

Rational count(std::size_t n) { return Rational(static_cast<std::int64_t>(n)); }

const std::vector<CostVector> cost_grid{
    { Rational(1), Rational(1), Rational(1) },
    { Rational(2), Rational(1), Rational(1, 2) },
    { Rational(3), Rational(1), Rational(0) },
    { Rational(1), Rational(1, 3), Rational(1, 3) },
};

// ---------------------------------------------------------------------------

void c1(Check& ck)
{
    const auto cls = indicator_class(4);
    const VersionSpace vs(cls);
    const auto masks = to_masks(*cls);
    BruteForce bf(masks);
    const auto sc0 = sc_ldim(vs, 0).value;
    const auto sc1 = sc_ldim(vs, 1).value;
    ck.expect(sc0 == Rational(bf.sc_ldim(full_mask(masks), 0)), "sc_ldim(H,0) differs from brute force");
    ck.expect(sc1 == Rational(bf.sc_ldim(full_mask(masks), 1)), "sc_ldim(H,1) differs from brute force");
    ck.expect(sc0 >= 2, "sc_ldim(H,0) = " + str(sc0) + " < 2");
    ck.expect(sc1 >= 1, "sc_ldim(H,1) = " + str(sc1) + " < 1");
    ck.info = "sc_ldim(H,0)=" + str(sc0) + " sc_ldim(H,1)=" + str(sc1);
}

void c2(Check& ck)
{
    Rng rng(Rng(7001).split("criterion-2"));
    int checked = 0;
    for (int i = 0; i < 200; ++i) {
        RandomClassSpec spec;
        spec.max_verifiers = 8;
        spec.max_universe = 12;
        spec.problems = 1 + i % 2;
        const auto cls = random_class(rng, spec);
        const auto masks = to_masks(*cls);
        const auto all = full_mask(masks);
        const VersionSpace vs(cls);
        BruteForce plain(masks);
        const auto tag = "class " + std::to_string(i);
        ck.expect(ldim(vs).value == Rational(plain.ldim(all)), tag + ": ldim");
        for (int k = 0; k <= 3; ++k)
            ck.expect(sc_ldim(vs, k).value == Rational(plain.sc_ldim(all, k)), tag + ": sc_ldim k=" + std::to_string(k));
        for (const auto& costs : cost_grid) {
            BruteForce bf(masks, costs);
            ck.expect(wsc_ldim(vs, costs).value == bf.wsc_ldim(all), tag + ": wsc_ldim");
        }
        ++checked;
    }
    ck.info = std::to_string(checked) + " random classes";
}

void c3(Check& ck)
{
    int n = 0;
    for (const auto& [name, cls] : corpus()) {
        const VersionSpace vs(cls);
        for (const auto& gl : { Rational(0), Rational(1) }) {
            const auto w = wsc_ldim(vs, CostVector{ Rational(1), Rational(1), gl }).value;
            ck.expect(w == ldim(vs).value, name + ": wsc " + str(w) + " vs ldim " + str(ldim(vs).value));
        }
        ++n;
    }
    ck.info = std::to_string(n) + " corpus classes";
}

void c4(Check& ck)
{
    std::size_t runs = 0;
    for (const auto& [name, cls] : small_corpus(6)) {
        for (int k = 0; k <= 2; ++k) {
            const auto bound = sc_ldim(VersionSpace(cls), k).value;
            for (std::size_t t = 0; t < cls->verifier_count(); ++t) {
                const Oracle o(cls, t);
                const auto w = worst_prefix(ScSoa(cls, k), o, promise_pool(o), 6);
                const auto tag = name + " k=" + std::to_string(k) + " target=" + std::to_string(t);
                ck.expect(w.soundness <= static_cast<std::size_t>(k), tag + ": soundness " + std::to_string(w.soundness));
                ck.expect(count(w.total) <= bound, tag + ": total " + std::to_string(w.total) + " > " + str(bound));
                ++runs;
            }
        }
    }
    ck.info = std::to_string(runs) + " (class, k, target) triples, sequences up to length 6";
}

void c5(Check& ck)
{
    std::size_t rounds = 0;
    for (const auto& [name, cls] : small_corpus(6)) {
        auto engine = std::make_shared<DimensionEngine>(cls);
        for (const auto& costs : cost_grid) {
            for (std::size_t t = 0; t < cls->verifier_count(); ++t) {
                const Oracle o(cls, t);
                const PrefixHook hook = [&](const PrefixLearner& before, const PrefixInstance&, PrefixLabel guess,
                                            PrefixLabel truth, const PrefixLearner& after) {
                    const auto& b = dynamic_cast<const WscSoa&>(before).version_space();
                    const auto& a = dynamic_cast<const WscSoa&>(after).version_space();
                    const auto loss = costs.of(classify_mistake(guess, truth));
                    const auto drop = engine->wsc_ldim(b.alive(), costs) - engine->wsc_ldim(a.alive(), costs);
                    ck.expect(loss <= drop, name + ": loss " + str(loss) + " > potential drop " + str(drop));
                    ++rounds;
                };
                (void)worst_prefix(WscSoa(cls, costs, engine), o, promise_pool(o), 6, costs, hook);
            }
        }
    }
    ck.info = std::to_string(rounds) + " rounds checked";
}

void c6(Check& ck)
{
    const CostVector costs{ Rational(2), Rational(1), Rational(1, 2) };
    int games = 0;
    for (const auto& [name, cls] : corpus()) {
        const VersionSpace vs(cls);
        for (int k = 0; k <= 2; ++k) {
            const auto r = sc_ldim(vs, k, true);
            if (!r.witness)
                continue;
            ScSoa l(cls, k);
            const auto m = count(play_tree_adversary(*r.witness, vs, l).transcript.totals().mistakes());
            ck.expect(m == r.value, name + " sc k=" + std::to_string(k) + ": " + str(m) + " vs " + str(r.value));
            ++games;
        }
        if (const auto r = wsc_ldim(vs, costs, true); r.witness) {
            WscSoa l(cls, costs);
            const auto c = play_tree_adversary(*r.witness, vs, l).transcript.totals().cost;
            ck.expect(c == r.value, name + " wsc: " + str(c) + " vs " + str(r.value));
            ++games;
        }
        if (const auto r = scl_ldim(vs, costs, true); r.witness) {
            SclSoa l(cls, costs);
            const auto c = play_tree_adversary(*r.witness, vs, l).transcript.totals().cost;
            ck.expect(c == r.value, name + " scl: " + str(c) + " vs " + str(r.value));
            ++games;
        }
    }
    ck.info = std::to_string(games) + " games";
}

void c7(Check& ck)
{
    std::ostringstream info;
    for (const auto& [name, cls] : small_corpus(64)) {
        const auto bound = static_cast<std::size_t>(std::floor(std::log2(static_cast<double>(cls->verifier_count()))));
        for (std::size_t t = 0; t < cls->verifier_count(); ++t) {
            const Oracle o(cls, t);
            const auto w = worst_cot(MajorityVote(cls), o, cls->cot_instances(), 6);
            ck.expect(w.total <= bound, name + ": majority made " + std::to_string(w.total));
        }
    }
    const CostVector costs{ Rational(1), Rational(1), Rational(1) };
    for (int L : { 2, 4, 6 }) {
        const auto cls = singleton_bitstring_class(L);
        std::vector<std::unique_ptr<CotLearner>> learners;
        for (const auto* n : { "majority", "sound-conservative", "reject-unless-unanimous", "scl-soa" })
            learners.push_back(make_cot_learner(n, cls, LearnerConfig{ 0, costs, nullptr }));
        learners.push_back(std::make_unique<CotFromPrefix>(cls, std::make_unique<ScSoa>(cls, 1)));
        std::size_t least = SIZE_MAX;
        for (auto& l : learners) {
            const auto m = prop31_adversary(cls, *l).transcript.totals().mistakes();
            least = std::min(least, m);
            ck.expect(m >= static_cast<std::size_t>(L / 2),
                      "prop31 L=" + std::to_string(L) + ": " + l->name() + " made " + std::to_string(m));
        }
        info << "L=" << L << " min " << least << "; ";
    }
    for (int n = 2; n <= 6; ++n) {
        const auto cls = complement_class(n, 3);
        SoundConservative l(cls);
        const auto tot = prop32_adversary(cls, l).transcript.totals();
        ck.expect(tot.completeness == static_cast<std::size_t>(n - 1) && tot.soundness == 0,
                  "prop32 n=" + std::to_string(n) + ": " + std::to_string(tot.completeness) + " completeness, " +
                      std::to_string(tot.soundness) + " soundness");
    }
    ck.info = "prop31 " + info.str() + "prop32 n=2..6";
}

void c8(Check& ck)
{
    std::size_t runs = 0;
    for (const auto& [name, cls] : small_corpus(6)) {
        for (int k = 0; k <= 2; ++k) {
            const auto bound = sc_ldim(VersionSpace(cls), k).value;
            for (std::size_t t = 0; t < cls->verifier_count(); ++t) {
                const Oracle o(cls, t);
                const auto w = worst_cot(CotFromPrefix(cls, std::make_unique<ScSoa>(cls, k)), o, cls->cot_instances(), 6);
                ck.expect(w.soundness <= static_cast<std::size_t>(k) && count(w.total) <= bound,
                          name + ": red1 k=" + std::to_string(k) + " (" + std::to_string(w.soundness) + ", " +
                              std::to_string(w.total) + ")");
                ++runs;
            }
        }
        if (cls->max_len() > 3)
            continue;
        const auto fcls = add_fail_token(*cls);
        // Each outer mistake is an inner mistake of the same kind.
        const PrefixHook charge = [&](const PrefixLearner& before, const PrefixInstance&, PrefixLabel guess,
                                      PrefixLabel truth, const PrefixLearner& after) {
            const auto kind = classify_mistake(guess, truth);
            if (kind == MistakeKind::None)
                return;
            const auto b = *before.inner_totals();
            const auto a = *after.inner_totals();
            const bool ok = kind == MistakeKind::Soundness ? a.soundness == b.soundness + 1
                                                           : a.completeness == b.completeness + 1;
            ck.expect(ok, name + ": red2 outer mistake not charged to the inner learner");
        };
        for (std::size_t t = 0; t < fcls->verifier_count(); ++t) {
            const Oracle o(fcls, t);
            const auto pool = promise_pool(o);
            const auto s = worst_prefix(PrefixFromCot(fcls, std::make_unique<SoundConservative>(fcls)), o, pool, 5, {},
                                        charge);
            ck.expect(s.soundness == 0, name + ": red2 sound inner became unsound");
            const auto m = worst_prefix(PrefixFromCot(fcls, std::make_unique<MajorityVote>(fcls)), o, pool, 5, {}, charge);
            ck.expect(m.total <= static_cast<std::size_t>(std::floor(std::log2(static_cast<double>(fcls->verifier_count())))),
                      name + ": red2 majority bound");
            for (int k = 0; k <= 1; ++k) {
                const auto bound = sc_ldim(VersionSpace(fcls), k).value;
                const auto r = worst_prefix(
                    PrefixFromCot(fcls, std::make_unique<CotFromPrefix>(fcls, std::make_unique<ScSoa>(fcls, k))), o,
                    pool, 5, {}, charge);
                ck.expect(r.soundness <= static_cast<std::size_t>(k) && count(r.total) <= bound,
                          name + ": round trip k=" + std::to_string(k));
            }
            ++runs;
        }
    }
    ck.info = std::to_string(runs) + " exhaustive runs";
}

void c9(Check& ck)
{
    std::ostringstream info;
    const CostVector no_location{ Rational(1), Rational(1), Rational(0) };
    const CostVector unit{ Rational(1), Rational(1), Rational(1) };
    for (int L : { 2, 3, 4 }) {
        const auto cls = conjunction_class(L);
        Rational worst(0);
        for (std::size_t t = 0; t < cls->verifier_count(); ++t) {
            const Oracle o(cls, t);
            const auto depth = static_cast<int>(cls->cot_instances().size()) + 2;
            const auto w = worst_cot(RejectUnlessUnanimous(cls), o, cls->cot_instances(), depth, no_location,
                                     MistakeMode::SequenceLevel);
            worst = std::max(worst, w.cost);
        }
        ck.expect(worst <= Rational(1), "L=" + std::to_string(L) + ": reject-all cost " + str(worst));
        const auto scl = scl_ldim(VersionSpace(cls), unit).value;
        ck.expect(scl >= Rational(L / 2), "L=" + std::to_string(L) + ": scl_ldim " + str(scl));
        info << "L=" << L << " cost " << str(worst) << " scl " << str(scl) << "; ";
    }
    ck.info = info.str();
}

void c10(Check& ck)
{
    for (int d : { 1, 2, 4, 8 })
        for (int w = 0; w <= 40; ++w)
            ck.expect(min_leaf_recurrence(w, d) == unrolled_min_leaf(w, d),
                      "L(" + std::to_string(w) + ") d=" + std::to_string(d));

    auto w_star = [](std::uint64_t n, int d) {
        int w = 0;
        while (min_leaf_recurrence(w + 1, d) <= n)
            ++w;
        return w;
    };
    double C = 0;
    for (int d : { 2, 4, 8 })
        for (std::uint64_t n = 2; n <= 64; ++n)
            C = std::max(C, w_star(n, d) / ((d / std::log(d)) * std::log(static_cast<double>(n))));

    Rng rng(Rng(7010).split("criterion-10"));
    int sampled = 0;
    double tightest = 0;
    while (sampled < 100) {
        RandomClassSpec spec;
        spec.min_verifiers = 2;
        spec.max_verifiers = 64;
        spec.max_universe = 10;
        const auto cls = random_class(rng, spec);
        const VersionSpace vs(cls);
        const auto n = cls->verifier_count();
        for (int d : { 2, 4, 8 }) {
            const auto w = wsc_ldim(vs, CostVector{ Rational(d), Rational(1), Rational(0) }).value;
            const double rhs = C * (d / std::log(d)) * std::log(static_cast<double>(n));
            tightest = std::max(tightest, to_double(w) / rhs);
            ck.expect(to_double(w) <= rhs + 1e-9, "class " + std::to_string(sampled) + " d=" + std::to_string(d) +
                                                      ": wsc " + str(w) + " > " + std::to_string(rhs));
            ck.expect(w <= Rational(w_star(n, d)), "class " + std::to_string(sampled) + ": wsc above W*(|H|)");
        }
        ++sampled;
    }
    std::ostringstream info;
    info.precision(4);
    info << "C=" << C << ", " << sampled << " classes, max wsc/bound=" << tightest;
    ck.info = info.str();
}

void c11(Check& ck)
{
    const auto s = standard_boost_scenario();
    const auto bounds = scenario_bounds(s);
    const Oracle o(s.cls, s.target);
    const auto alpha = verify_alpha_good(s.provers, o, s.distribution);
    ck.expect(alpha.declared_violations.empty() && alpha.gamma == Rational(3, 4), "alpha certificate");
    ck.expect(bounds.soundness == 0, "verifier is not sound");
    const auto eps = s.params.epsilon;
    const auto abstain_bound = (Rational(1) - alpha.gamma) + bounds.eps_c(eps) + bounds.eps_s(eps) +
                               s.params.epsilon_prime;
    const double p = to_double(abstain_bound);
    const int runs = 500;
    int within = 0, built = 0;
    std::int64_t max_calls = 0, call_bound = 0;
    for (int r = 0; r < runs; ++r) {
        const auto run = run_pipeline(s, bounds, r);
        call_bound = run.build.call_bound;
        max_calls = std::max({ max_calls, run.build.max_calls_process, run.build.max_calls_test });
        ck.expect(run.build.max_calls_process <= run.build.call_bound && run.build.max_calls_test <= run.build.call_bound,
                  "run " + std::to_string(r) + ": oracle calls above the budget");
        if (!run.rates)
            continue;
        ++built;
        ck.expect(run.rates->incorrect_proof == 0, "run " + std::to_string(r) + ": incorrect proofs");
        const double se = std::sqrt(p * (1 - p) / static_cast<double>(run.rates->trials));
        within += to_double(run.rates->abstain_rate()) <= p + 3 * se;
    }
    const double need = (1.0 - to_double(s.params.delta)) * runs;
    ck.expect(within >= need, "abstain within bound on " + std::to_string(within) + " runs");
    ck.info = std::to_string(built) + "/" + std::to_string(runs) + " built, abstain ok on " + std::to_string(within) +
              " (need " + std::to_string(static_cast<int>(std::ceil(need))) + "), max calls " +
              std::to_string(max_calls) + "/" + std::to_string(call_bound) + ", abstain bound " + str(abstain_bound);
}

struct Criterion
{
    int id;
    const char* title;
    double limit_seconds;
    std::function<void(Check&)> run;
};

} // namespace

int main()
{
    const std::vector<Criterion> criteria{
        { 1, "indicator class is (0,2)- and (1,1)-difficult", 1, c1 },
        { 2, "dimension engine equals brute force on 200 random classes", 120, c2 },
        { 3, "wsc_ldim with unit costs equals ldim", 60, c3 },
        { 4, "sc-soa upper bounds over all short sequences", 300, c4 },
        { 5, "wsc-soa per-round telescoping", 300, c5 },
        { 6, "tree adversary meets the optimal learners", 60, c6 },
        { 7, "majority, prop31 and prop32 constructions", 60, c7 },
        { 8, "reductions preserve mistake bounds", 300, c8 },
        { 9, "conjunction example with zero location cost", 60, c9 },
        { 10, "min-leaf recurrence and logarithmic wsc bound", 300, c10 },
        { 11, "boosting pipeline over 500 seeded runs", 600, c11 },
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Check ck;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(ck);
        }
        catch (const std::exception& e) {
            ck.failures.push_back(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > c.limit_seconds)
            ck.failures.push_back("runtime " + std::to_string(secs) + "s over the " + std::to_string(c.limit_seconds) +
                                  "s limit");
        const bool ok = ck.failures.empty();
        failed += !ok;
        std::printf("%s [%2d] %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", c.id, c.title, secs, ck.info.empty() ? "" : ": ",
                    ck.info.c_str());
        std::size_t shown = 0;
        for (const auto& f : ck.failures)
            if (!f.empty() && shown++ < 8)
                std::printf("       - %s\n", f.c_str());
        if (ck.failures.size() > shown)
            std::printf("       - ... %zu more\n", ck.failures.size() - shown);
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
