#include "cotv/dimensions.hpp"
#include "cotv/learners.hpp"
#include "support/corpus.hpp"
#include "support/exhaustive.hpp"
#include "support/util.hpp"

#include <doctest.h>

#include <cmath>

using namespace cotv;
using namespace cotv::testing;

namespace {

std::vector<NamedClass> small_corpus()
{
    std::vector<NamedClass> out;
    for (auto& c : corpus())
        if (c.cls->verifier_count() <= 6)
            out.push_back(std::move(c));
    return out;
}

const CostVector weighted{ Rational(2), Rational(1), Rational(1, 2) };

} // namespace

TEST_SUITE("learners")
{
    TEST_CASE("sc-soa stays within its budget and dimension on every short sequence")
    {
        for (const auto& [name, cls] : small_corpus()) {
            CAPTURE(name);
            const VersionSpace vs(cls);
            for (int k = 0; k <= 2; ++k) {
                const auto bound = sc_ldim(vs, k).value;
                for (std::size_t t = 0; t < cls->verifier_count(); ++t) {
                    const Oracle o(cls, t);
                    const auto w = worst_prefix(ScSoa(cls, k), o, promise_pool(o), 4);
                    CHECK(w.soundness <= static_cast<std::size_t>(k));
                    CHECK(Rational(static_cast<std::int64_t>(w.total)) <= bound);
                }
            }
        }
    }

    TEST_CASE("wsc-soa cost is bounded by the weighted dimension")
    {
        for (const auto& [name, cls] : small_corpus()) {
            CAPTURE(name);
            const auto bound = wsc_ldim(VersionSpace(cls), weighted).value;
            for (std::size_t t = 0; t < cls->verifier_count(); ++t) {
                const Oracle o(cls, t);
                const auto w = worst_prefix(WscSoa(cls, weighted), o, promise_pool(o), 4, weighted);
                CHECK(w.cost <= bound);
            }
        }
    }

    TEST_CASE("scl-soa cost is bounded by the three-cost dimension")
    {
        for (const auto& [name, cls] : small_corpus()) {
            CAPTURE(name);
            const auto bound = scl_ldim(VersionSpace(cls), weighted).value;
            for (std::size_t t = 0; t < cls->verifier_count(); ++t) {
                const Oracle o(cls, t);
                const auto w = worst_cot(SclSoa(cls, weighted), o, cls->cot_instances(), 4, weighted,
                                         MistakeMode::SequenceLevel);
                CHECK(w.cost <= bound);
            }
        }
    }

    TEST_CASE("majority vote halves the version space")
    {
        for (const auto& [name, cls] : small_corpus()) {
            CAPTURE(name);
            const auto bound = static_cast<std::size_t>(std::floor(std::log2(static_cast<double>(cls->verifier_count()))));
            for (std::size_t t = 0; t < cls->verifier_count(); ++t) {
                const Oracle o(cls, t);
                const auto w = worst_cot(MajorityVote(cls), o, cls->cot_instances(), 4);
                CHECK(w.total <= bound);
            }
        }
    }

    TEST_CASE("sound-conservative never accepts a fault")
    {
        for (const auto& [name, cls] : small_corpus()) {
            CAPTURE(name);
            for (std::size_t t = 0; t < cls->verifier_count(); ++t) {
                const Oracle o(cls, t);
                const auto w = worst_cot(SoundConservative(cls), o, cls->cot_instances(), 4, {},
                                         MistakeMode::SequenceLevel);
                CHECK(w.soundness == 0);
            }
        }
    }

    TEST_CASE("reject-unless-unanimous predicts the shared label or rejects at step one")
    {
        const auto cls = complement_class(3, 2);
        RejectUnlessUnanimous r(cls);
        CHECK(r.predict(cls->cot_instances()[0]) == Label::fault_at(1));
        const Oracle o(cls, 2);
        r.update(cls->cot_instances()[0], o.cot_label(cls->cot_instances()[0]));
        r.update(cls->cot_instances()[1], o.cot_label(cls->cot_instances()[1]));
        CHECK(r.predict(cls->cot_instances()[2]) == Label::fault_at(2));
    }

    TEST_CASE("sc-soa with no budget only accepts unanimous prefixes")
    {
        const auto cls = indicator_class(2);
        ScSoa l(cls, 0);
        for (const auto& z : cls->universe())
            CHECK(l.predict(z) == PrefixLabel::No);
        CHECK_ERROR_CODE(ScSoa(cls, -1), ErrorCode::InvalidArgument);
        auto engine = std::make_shared<DimensionEngine>(indicator_class(3));
        CHECK_ERROR_CODE(ScSoa(cls, 1, engine), ErrorCode::ClassMismatch);
    }

    TEST_CASE("contradictory feedback empties the version space")
    {
        const auto cls = indicator_class(2);
        ScSoa l(cls, 1);
        const auto z = cls->universe()[0]; // "00": nobody accepts it
        CHECK_ERROR_CODE(l.update(z, PrefixLabel::Yes), ErrorCode::EmptyVersionSpace);
    }

    TEST_CASE("conservative wrapper snapshots once per mistake")
    {
        const auto cls = singleton_bitstring_class(3);
        const Oracle o(cls, 6);
        ConservativePrefix l(std::make_unique<ScSoa>(cls, 3));
        CHECK(l.snapshots().size() == 1);
        const auto tr = run_prefix(l, o, promise_pool(o));
        CHECK(l.snapshots().size() == 1 + tr.totals().mistakes());
        CHECK(l.snapshots().front()->fingerprint() == ScSoa(cls, 3).fingerprint());
        CHECK(l.snapshots().back()->fingerprint() == l.current().fingerprint());
        CHECK_ERROR_CODE(ConservativePrefix(nullptr), ErrorCode::InvalidArgument);
    }

    TEST_CASE("runners enforce the promise and track totals")
    {
        const auto cls = singleton_bitstring_class(2);
        const Oracle o(cls, 0); // h_00
        ScSoa l(cls, 1);
        CHECK_ERROR_CODE(run_prefix(l, o, { pz(0, { 1, 0 }) }), ErrorCode::InvalidArgument);
        RunOptions loose;
        loose.enforce_promise = false;
        CHECK_NOTHROW(run_prefix(l, o, { pz(0, { 1, 0 }) }, loose));
        SclSoa s(cls, weighted);
        RunOptions seq;
        seq.costs = weighted;
        seq.mode = MistakeMode::SequenceLevel;
        const auto tr = run_cot(s, o, cls->cot_instances(), seq);
        CHECK(tr.rounds().size() == 4);
        CHECK(tr.totals_consistent());
        CHECK(tr.totals().cost <= scl_ldim(VersionSpace(cls), weighted).value);
    }

    TEST_CASE("river-crossing learner only learns hidden edges")
    {
        const auto all = river_legal_edges();
        std::vector<Edge> revealed(all.begin(), all.end() - 2);
        const auto lay = river_crossing_class(revealed, 8);
        for (std::size_t t = 0; t < lay.cls->verifier_count(); ++t) {
            CAPTURE(t);
            const Oracle o(lay.cls, t);
            RiverCrossingSound l(lay.cls);
            RunOptions seq;
            seq.mode = MistakeMode::SequenceLevel;
            std::vector<CotInstance> seqs(lay.cls->cot_instances());
            const auto tr = run_cot(l, o, seqs, seq);
            CHECK(tr.totals().soundness == 0);
            CHECK(tr.totals().completeness <= lay.hidden_set(t).size());
            for (auto e : l.learned_edges()) {
                const auto h = lay.hidden_set(t);
                CHECK(std::find(h.begin(), h.end(), e) != h.end());
            }
        }
        CHECK_ERROR_CODE(RiverCrossingSound(indicator_class(2)), ErrorCode::ClassMismatch);
    }

    TEST_CASE("factories and fingerprints")
    {
        const auto cls = indicator_class(2);
        LearnerConfig cfg;
        cfg.k = 1;
        CHECK(make_prefix_learner("sc-soa", cls, cfg)->name() == "sc-soa");
        CHECK(make_prefix_learner("wsc-soa", cls, cfg)->name() == "wsc-soa");
        for (const auto* n : { "scl-soa", "majority", "sound-conservative", "reject-unless-unanimous" })
            CHECK(make_cot_learner(n, cls, cfg)->name() == n);
        CHECK_ERROR_CODE(make_prefix_learner("nope", cls, cfg), ErrorCode::InvalidArgument);
        CHECK_ERROR_CODE(make_cot_learner("nope", cls, cfg), ErrorCode::InvalidArgument);
        CHECK(is_prefix_learner_name("sc-soa"));
        CHECK_FALSE(is_prefix_learner_name("majority"));
        CHECK(is_cot_learner_name("majority"));

        ScSoa a(cls, 1), b(cls, 1);
        CHECK(a.fingerprint() == b.fingerprint());
        a.update(pz(0, { 2 }), PrefixLabel::Yes);
        CHECK(a.fingerprint() != b.fingerprint());
        const auto c = a.clone();
        CHECK(c->fingerprint() == a.fingerprint());
    }
}
