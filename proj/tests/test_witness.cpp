#include <doctest.h>

#include <random>

#include "growthforge/witness.hpp"
#include "oracles.hpp"

using namespace growthforge;

namespace {

GroupSpec sol_spec() { return GroupSpec::split_extension(IntMatrix{{2, 1}, {1, 1}}); }

} // namespace

TEST_CASE("classification fixtures for split extensions") {
    CHECK(classify_split_extension(GroupSpec::split_extension(IntMatrix{{1, 1}, {0, 1}}))
              .is_polynomial());
    CHECK(classify_split_extension(GroupSpec::split_extension(IntMatrix{{0, -1}, {1, 0}}))
              .is_polynomial());
    Classification sol = classify_split_extension(sol_spec());
    CHECK_FALSE(sol.is_polynomial());
    REQUIRE(sol.witness.has_value());
    CHECK(word_to_string(sol.witness->word_a) == "t");
    CHECK(word_to_string(sol.witness->word_b) == "t e1");
}

TEST_CASE("standard pair construction fixtures") {
    FreeSemigroupWitness sol = free_pair_standard(IntMatrix{{2, 1}, {1, 1}});
    CHECK(word_to_string(sol.word_a) == "t");
    CHECK(word_to_string(sol.word_b) == "t e1");
    CHECK(sol.max_length == 2);
    CHECK(sol.rate_lower_bound == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(std::get<StandardPairConstruction>(sol.construction).power == 1);

    FreeSemigroupWitness fib = free_pair_standard(IntMatrix{{1, 1}, {1, 0}});
    CHECK(word_to_string(fib.word_a) == "t t");
    CHECK(word_to_string(fib.word_b) == "t t e1");
    CHECK(fib.max_length == 3);
    CHECK(std::get<StandardPairConstruction>(fib.construction).power == 2);

    CHECK_THROWS_AS(free_pair_standard(IntMatrix{{1, 1}, {0, 1}}), AllRootsOfUnity);
}

TEST_CASE("witnesses verify at oracle depth by construction") {
    for (const IntMatrix& a : {IntMatrix{{2, 1}, {1, 1}}, IntMatrix{{1, 1}, {1, 0}},
                               IntMatrix{{3, 2}, {1, 1}}}) {
        GroupSpec spec = GroupSpec::split_extension(a);
        FreeSemigroupWitness w = free_pair_standard(spec);
        CHECK(w.verified_depth == 8);
        VerifyResult deeper = verify_free_semigroup(spec, w.word_a, w.word_b, 10);
        CHECK(deeper.ok);
        CHECK(deeper.distinct_count == 2046);
    }
}

TEST_CASE("brute-force oracle fixtures") {
    GroupSpec spec = sol_spec();
    VerifyResult ok = verify_free_semigroup(spec, parse_word("t"), parse_word("t e1"), 10);
    CHECK(ok.ok);
    CHECK(ok.distinct_count == 2046);

    VerifyResult same = verify_free_semigroup(spec, parse_word("t"), parse_word("t"), 1);
    CHECK_FALSE(same.ok);
    REQUIRE(same.counterexample.has_value());
    CHECK(same.counterexample->first == "a");
    CHECK(same.counterexample->second == "b");

    VerifyResult commuting =
        verify_free_semigroup(spec, parse_word("e1"), parse_word("e2"), 2);
    CHECK_FALSE(commuting.ok);
    REQUIRE(commuting.counterexample.has_value());
    CHECK(commuting.counterexample->first == "ab");
    CHECK(commuting.counterexample->second == "ba");

    CHECK_THROWS_AS(verify_free_semigroup(spec, parse_word("t"), parse_word("e1"), 21),
                    BudgetExceeded);
    CHECK_THROWS_AS(verify_free_semigroup(spec, parse_word("t"), parse_word("e1"), 0),
                    ValidationError);
}

TEST_CASE("witness search on the standard generating set reproduces the standard pair") {
    GroupSpec spec = sol_spec();
    FreeSemigroupWitness w = witness_search(spec, default_generating_set(spec));
    CHECK(word_to_string(w.word_a) == "t");
    CHECK(word_to_string(w.word_b) == "t e1");
    CHECK(w.max_length == 2);
    CHECK(w.max_length <= 7); // 3 + 2r with r = 2
    const auto& sc = std::get<SearchConstruction>(w.construction);
    REQUIRE(sc.levels.size() == 1);
    CHECK(sc.levels[0].branch == "cyclic_vector");
    CHECK(sc.levels[0].invariant_rank == 2);
}

TEST_CASE("witness search over a rewritten generating set") {
    GroupSpec spec = sol_spec();
    GeneratingSet s = generating_set_from_words(
        spec, {{"x", parse_word("t e1")}, {"y", parse_word("e1 e2")}, {"z", parse_word("e2")}});
    FreeSemigroupWitness w = witness_search(spec, s, 8);
    CHECK(w.max_length <= 7);
    CHECK(w.verified_depth == 8);
    VerifyResult check = verify_free_pair(spec, evaluate_over(spec, s, w.word_a),
                                          evaluate_over(spec, s, w.word_b), 8);
    CHECK(check.ok);
}

TEST_CASE("witness search pivots on inverse-flavored generators") {
    // The only generator off the lattice is t^-1; the pivot exponent is -1 and
    // the conjugation power is its action's inverse.
    GroupSpec spec = sol_spec();
    GeneratingSet s = generating_set_from_words(
        spec, {{"u", parse_word("t^-1")}, {"a", parse_word("e1")}, {"b", parse_word("e2")}});
    FreeSemigroupWitness w = witness_search(spec, s, 8);
    CHECK(word_to_string(w.word_a) == "u");
    const auto& sc = std::get<SearchConstruction>(w.construction);
    REQUIRE(sc.levels.size() == 1);
    CHECK(sc.levels[0].pivot_exponent == -1);
    CHECK(verify_free_pair(spec, evaluate_over(spec, s, w.word_a),
                           evaluate_over(spec, s, w.word_b), 8)
              .ok);
}

TEST_CASE("witness search requires a t-exponent somewhere") {
    GroupSpec spec = sol_spec();
    GeneratingSet s = generating_set_from_words(
        spec, {{"a", parse_word("e1")}, {"b", parse_word("e2")}});
    CHECK_THROWS_AS(witness_search(spec, s), DegenerateGeneratingSet);
}

TEST_CASE("witness search refuses polynomial-growth groups") {
    GroupSpec spec = GroupSpec::split_extension(IntMatrix{{1, 1}, {0, 1}});
    CHECK_THROWS_AS(witness_search(spec, default_generating_set(spec)), NotExponential);
}

TEST_CASE("rank-deficient invariant module still carrying the eigenvalue") {
    // e1 is fixed by the action; the expanding block sits on the complement.
    // S = {t, b} with b = ((1,1,0), 1) generates, its only commutator lands in
    // the invariant plane, and the witness comes from that plane.
    IntMatrix a{{1, 0, 0}, {0, 2, 1}, {0, 1, 1}};
    GroupSpec spec = GroupSpec::split_extension(a);
    GeneratingSet s = generating_set_from_words(
        spec, {{"t0", parse_word("t")}, {"b0", parse_word("e1 e2 t")}});
    FreeSemigroupWitness w = witness_search(spec, s, 8);
    const auto& sc = std::get<SearchConstruction>(w.construction);
    REQUIRE(sc.levels.size() == 1);
    CHECK(sc.levels[0].branch == "cyclic_vector");
    CHECK(sc.levels[0].ambient_rank == 3);
    CHECK(sc.levels[0].invariant_rank == 2);
    CHECK(w.max_length <= 9); // 3 + 2r with r = 3
    CHECK(verify_free_pair(spec, evaluate_over(spec, s, w.word_a),
                           evaluate_over(spec, s, w.word_b), 9)
              .ok);
}

TEST_CASE("quotient recursion surfaces non-generating sets") {
    // {t, e1} only reaches the fixed line, so the search projects to the
    // quotient, loses every vector, and reports the violated precondition.
    IntMatrix a{{1, 0, 0}, {0, 2, 1}, {0, 1, 1}};
    GroupSpec spec = GroupSpec::split_extension(a);
    GeneratingSet s = generating_set_from_words(
        spec, {{"t0", parse_word("t")}, {"c0", parse_word("e1")}});
    CHECK_THROWS_AS(witness_search(spec, s), RecursionExhausted);
}

TEST_CASE("classification is invariant under conjugation and inversion") {
    std::mt19937_64 rng(5150);
    const IntMatrix fixtures[] = {IntMatrix{{2, 1}, {1, 1}}, IntMatrix{{1, 1}, {0, 1}},
                                  IntMatrix{{0, -1}, {1, 0}}, IntMatrix{{1, 1}, {1, 0}}};
    for (int trial = 0; trial < 60; ++trial) {
        const IntMatrix& a = fixtures[trial % 4];
        IntMatrix p = oracles::random_unimodular(rng, a.rows());
        bool base = classify_split_extension(GroupSpec::split_extension(a)).is_polynomial();
        CHECK(classify_split_extension(GroupSpec::split_extension(p * a * inverse(p)))
                  .is_polynomial() == base);
        CHECK(classify_split_extension(GroupSpec::split_extension(inverse(a)))
                  .is_polynomial() == base);
    }
}

TEST_CASE("randomized rewritten generating sets always yield verified witnesses") {
    GroupSpec spec = sol_spec();
    std::mt19937_64 rng(900913);
    for (int trial = 0; trial < 8; ++trial) {
        auto rewritten = oracles::random_rewritten_generating_set(rng, spec);
        GeneratingSet s = generating_set_from_words(spec, rewritten.entries);
        // Certified generation: the recovery words evaluate to the standard
        // generators.
        std::vector<std::string> base = spec.base_labels();
        for (std::size_t i = 0; i < base.size(); ++i)
            CHECK(evaluate_over(spec, s, rewritten.standard_certificates[i]) ==
                  spec.generator(base[i]));
        FreeSemigroupWitness w = witness_search(spec, s, 8);
        CHECK(w.verified_depth == 8);
        CHECK(w.rate_lower_bound ==
              doctest::Approx(std::pow(2.0, 1.0 / static_cast<double>(w.max_length))));
    }
}
