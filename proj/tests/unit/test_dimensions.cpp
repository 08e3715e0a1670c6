#include "cotv/dimensions.hpp"
#include "cotv/families.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"
#include "support/util.hpp"

#include <doctest.h>

using namespace cotv;
using namespace cotv::testing;

namespace {

VerifierSet only(std::size_t n, std::size_t v)
{
    VerifierSet s(n);
    s.set(v);
    return s;
}

const std::vector<CostVector> cost_grid{
    { Rational(1), Rational(1), Rational(1) },
    { Rational(2), Rational(1), Rational(1, 2) },
    { Rational(3), Rational(1), Rational(0) },
    { Rational(1), Rational(1, 3), Rational(1, 3) },
};

} // namespace

TEST_SUITE("dimensions")
{
    TEST_CASE("engine values match the brute-force oracles on the corpus")
    {
        for (const auto& [name, cls] : corpus()) {
            if (cls->verifier_count() > 16)
                continue;
            CAPTURE(name);
            const auto masks = to_masks(*cls);
            const auto all = full_mask(masks);
            const VersionSpace vs(cls);
            BruteForce plain(masks);
            CHECK(ldim(vs).value == Rational(plain.ldim(all)));
            for (int k = 0; k <= 3; ++k)
                CHECK(sc_ldim(vs, k).value == Rational(plain.sc_ldim(all, k)));
            for (const auto& costs : cost_grid) {
                CAPTURE(to_string(costs.soundness));
                BruteForce bf(masks, costs);
                CHECK(wsc_ldim(vs, costs).value == bf.wsc_ldim(all));
                CHECK(scl_ldim(vs, costs).value == bf.scl_ldim(all));
            }
        }
    }

    TEST_CASE("worked examples")
    {
        // Bitstrings: binary search over L bits; with no straight budget only
        // all-YES paths count, and a single verifier survives after one split.
        const VersionSpace s3(singleton_bitstring_class(3));
        CHECK(ldim(s3).value == Rational(3));
        CHECK(sc_ldim(s3, 3).value == Rational(3));
        // Indicators: every split isolates one verifier on the YES side.
        const VersionSpace ind(indicator_class(4));
        CHECK(ldim(ind).value == Rational(1));
        CHECK(sc_ldim(ind, 0).value == Rational(1));
        CHECK(sc_ldim(ind, 3).value == Rational(1));
        // Complement class: each split peels one verifier off on the NO side,
        // so without straight budget the YES chain runs through n-1 splits.
        const VersionSpace comp(complement_class(5, 3));
        CHECK(sc_ldim(comp, 0).value == Rational(4));
        CHECK(sc_ldim(comp, 4).value == Rational(1));
        CHECK(ldim(comp).value == Rational(1));
        // Single verifier: nothing to learn.
        const VersionSpace one(singleton_bitstring_class(2), only(4, 2));
        CHECK(ldim(one).value == Rational(0));
        CHECK(wsc_ldim(one, cost_grid[1]).value == Rational(0));
    }

    TEST_CASE("a plain tree certifies the sc dimension once the budget covers its depth")
    {
        for (const auto& [name, cls] : corpus()) {
            CAPTURE(name);
            const VersionSpace vs(cls);
            const auto plain = ldim(vs).value;
            const int d = boost::rational_cast<int>(plain);
            CHECK(sc_ldim(vs, d).value >= plain);
            CHECK(sc_ldim(vs, d + 2).value >= plain);
        }
    }

    TEST_CASE("witness trees certify the value and are shattered")
    {
        for (const auto& [name, cls] : corpus()) {
            CAPTURE(name);
            const VersionSpace vs(cls);
            std::vector<DimResult> results{ ldim(vs, true), sc_ldim(vs, 0, true), sc_ldim(vs, 2, true),
                                            wsc_ldim(vs, cost_grid[1], true), scl_ldim(vs, cost_grid[1], true) };
            for (const auto& r : results) {
                if (r.value == Rational(0)) {
                    CHECK_FALSE(r.witness.has_value());
                    continue;
                }
                REQUIRE(r.witness.has_value());
                CHECK(certified_value(*r.witness) == r.value);
                CHECK(verify_shattered(*r.witness, vs));
            }
        }
    }

    TEST_CASE("engine rejects bad requests")
    {
        const auto cls = indicator_class(2);
        DimensionEngine eng(cls);
        const VerifierSet all(cls->verifier_count(), true);
        CHECK_ERROR_CODE(eng.scl_ldim(all, CostVector{ Rational(1), Rational(2), Rational(0) }), ErrorCode::InvalidCosts);
        CHECK_ERROR_CODE(eng.extract_witness(only(2, 0), TreeKind::Plain, {}), ErrorCode::NoWitness);
        CHECK(parse_tree_kind("sc") == TreeKind::SC);
        CHECK_ERROR_CODE(parse_tree_kind("bogus"), ErrorCode::InvalidArgument);
    }

    TEST_CASE("memoization does not change results")
    {
        const auto cls = complement_class(6, 3);
        EngineOptions off;
        off.memoize = false;
        DimensionEngine a(cls), b(cls, off);
        const VerifierSet all(cls->verifier_count(), true);
        CHECK(a.ldim(all) == b.ldim(all));
        CHECK(a.sc_ldim(all, 2) == b.sc_ldim(all, 2));
        CHECK(a.wsc_ldim(all, cost_grid[1]) == b.wsc_ldim(all, cost_grid[1]));
        (void)a.ldim(all);
        CHECK(a.stats().memo_hits > 0);
        a.reset_stats();
        CHECK(a.stats().memo_hits == 0);
    }

    TEST_CASE("tampered witnesses are caught")
    {
        const auto cls = indicator_class(3);
        const VersionSpace vs(cls);
        auto tree = *ldim(vs, true).witness;
        // No verifier accepts the all-zero vector, so the YES path is empty.
        tree.nodes[0].instance = pz(0, { 0 });
        CHECK_FALSE(verify_shattered(tree, vs));
        auto broken = *ldim(vs, true).witness;
        broken.nodes[0].edges.pop_back();
        CHECK_ERROR_CODE(verify_shattered(broken, vs), ErrorCode::MalformedTree);
    }

    TEST_CASE("min-leaf recurrence")
    {
        CHECK(min_leaf_recurrence(0, 2) == 1);
        CHECK(min_leaf_recurrence(-3, 2) == 1);
        for (int w = 0; w < 20; ++w)
            CHECK(min_leaf_recurrence(w, 1) == (std::uint64_t{ 1 } << w));
        CHECK(min_leaf_recurrence(5, 2) == 13);
        CHECK(min_leaf_recurrence(200, 1) == UINT64_MAX);
        for (int d : { 1, 2, 3, 4, 8 })
            for (int w = 0; w <= 30; ++w) {
                CAPTURE(d);
                CAPTURE(w);
                CHECK(min_leaf_recurrence(w, d) == unrolled_min_leaf(w, d));
            }
    }
}
