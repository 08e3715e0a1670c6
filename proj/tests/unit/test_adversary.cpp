#include "cotv/adversary.hpp"
#include "support/corpus.hpp"
#include "support/util.hpp"

#include <doctest.h>

#include <cmath>

using namespace cotv;
using namespace cotv::testing;

namespace {

const CostVector weighted{ Rational(2), Rational(1), Rational(1, 2) };

} // namespace

TEST_SUITE("adversary")
{
    TEST_CASE("tree adversary meets the optimal learners exactly")
    {
        for (const auto& [name, cls] : corpus()) {
            CAPTURE(name);
            const VersionSpace vs(cls);
            for (int k = 0; k <= 2; ++k) {
                const auto r = sc_ldim(vs, k, true);
                if (!r.witness)
                    continue;
                ScSoa l(cls, k);
                const auto run = play_tree_adversary(*r.witness, vs, l);
                CHECK(run.transcript.totals().soundness <= static_cast<std::size_t>(k));
                CHECK(Rational(static_cast<std::int64_t>(run.transcript.totals().mistakes())) == r.value);
                CHECK(Oracle(cls, run.consistent_verifier).prefix_label(
                          std::get<PrefixInstance>(run.transcript.rounds().back().instance)) ==
                      std::get<PrefixLabel>(run.transcript.rounds().back().truth));
            }
            if (const auto r = wsc_ldim(vs, weighted, true); r.witness) {
                WscSoa l(cls, weighted);
                CHECK(play_tree_adversary(*r.witness, vs, l).transcript.totals().cost == r.value);
            }
            if (const auto r = scl_ldim(vs, weighted, true); r.witness) {
                SclSoa l(cls, weighted);
                CHECK(play_tree_adversary(*r.witness, vs, l).transcript.totals().cost == r.value);
            }
        }
    }

    TEST_CASE("tree adversary forces every learner up to the dimension")
    {
        const auto cls = singleton_bitstring_class(3);
        const VersionSpace vs(cls);
        const auto r = ldim(vs, true);
        REQUIRE(r.witness);
        // The plain tree forces one mistake per level on any prefix learner.
        ScSoa l(cls, 0);
        const auto run = play_tree_adversary(*r.witness, vs, l);
        CHECK(run.transcript.totals().mistakes() == 3);
    }

    TEST_CASE("tree adversary argument checks")
    {
        const auto cls = indicator_class(3);
        const VersionSpace vs(cls);
        auto tree = *ldim(vs, true).witness;
        SclSoa cot(cls, weighted);
        CHECK_ERROR_CODE(play_tree_adversary(tree, vs, cot), ErrorCode::InvalidArgument);
        tree.nodes[0].instance = pz(0, { 0 });
        ScSoa l(cls, 1);
        CHECK_ERROR_CODE(play_tree_adversary(tree, vs, l), ErrorCode::TreeNotShattered);
        auto scl_tree = *scl_ldim(vs, weighted, true).witness;
        CHECK_ERROR_CODE(play_tree_adversary(scl_tree, vs, l), ErrorCode::InvalidArgument);
    }

    TEST_CASE("prop31: half the bits against any learner, log n against majority")
    {
        for (int L : { 2, 4, 6 }) {
            CAPTURE(L);
            const auto cls = singleton_bitstring_class(L);
            const auto bound = static_cast<std::size_t>(std::floor(std::log2(static_cast<double>(cls->verifier_count()))));
            for (const auto* name : { "majority", "sound-conservative", "reject-unless-unanimous", "scl-soa" }) {
                CAPTURE(name);
                auto l = make_cot_learner(name, cls, LearnerConfig{ 0, weighted, nullptr });
                const auto run = prop31_adversary(cls, *l);
                CHECK(run.transcript.totals().mistakes() >= static_cast<std::size_t>(L / 2));
                // The revealed labels stay realizable.
                const Oracle o(cls, run.consistent_verifier);
                for (const auto& round : run.transcript.rounds())
                    CHECK(o.cot_label(std::get<CotInstance>(round.instance)) == std::get<Label>(round.truth));
                if (std::string(name) == "majority")
                    CHECK(run.transcript.totals().mistakes() <= bound);
            }
        }
        auto l = make_cot_learner("majority", indicator_class(2), {});
        CHECK_ERROR_CODE(prop31_adversary(indicator_class(2), *l), ErrorCode::ClassMismatch);
    }

    TEST_CASE("prop32: sound learners pay n-1 completeness mistakes")
    {
        for (int n = 2; n <= 6; ++n) {
            CAPTURE(n);
            const auto cls = complement_class(n, 3);
            SoundConservative l(cls);
            const auto run = prop32_adversary(cls, l);
            CHECK(run.transcript.totals().completeness == static_cast<std::size_t>(n - 1));
            CHECK(run.transcript.totals().soundness == 0);
            CHECK(run.consistent_verifier == static_cast<std::size_t>(n - 1));
        }
        const auto cls = complement_class(3, 2);
        MajorityVote m(cls);
        CHECK_ERROR_CODE(prop32_adversary(cls, m), ErrorCode::LearnerNotSound);
        CHECK_ERROR_CODE(prop32_adversary(indicator_class(2), m), ErrorCode::ClassMismatch);
    }
}
