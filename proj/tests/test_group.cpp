#include <doctest.h>

#include <numeric>
#include <random>

#include "growthforge/group.hpp"
#include "oracles.hpp"

using namespace growthforge;

namespace {

std::vector<Int> iv(std::initializer_list<long> xs) {
    std::vector<Int> v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

GroupSpec sol_spec() { return GroupSpec::split_extension(IntMatrix{{2, 1}, {1, 1}}); }

GroupElement split(std::vector<Int> v, long long k) {
    return SplitElement{std::move(v), k};
}

} // namespace

TEST_CASE("word parsing and rendering round-trip") {
    Word w = parse_word("t e1^-1 e2");
    REQUIRE(w.size() == 3);
    CHECK(w[0] == Letter{"t", 1});
    CHECK(w[1] == Letter{"e1", -1});
    CHECK(w[2] == Letter{"e2", 1});
    CHECK(word_to_string(w) == "t e1^-1 e2");
    CHECK(parse_word("").empty());
    CHECK_THROWS_AS(parse_word("a^2"), ParseError);
}

TEST_CASE("split extension law against hand computations") {
    GroupSpec spec = sol_spec();
    GroupElement t = spec.generator("t");
    GroupElement a = spec.generator("e1");
    // t * a = ((2,1), 1) because the v-part is A e1.
    CHECK(element_compose(spec, t, a) == split(iv({2, 1}), 1));
    CHECK(element_invert(spec, t) == split(iv({0, 0}), -1));
    CHECK(element_invert(spec, a) == split(iv({-1, 0}), 0));
    CHECK(element_compose(spec, a, element_invert(spec, a)) == spec.identity());
}

TEST_CASE("word evaluation matches conjugation identities") {
    GroupSpec spec = sol_spec();
    CHECK(evaluate_word(spec, parse_word("")) == spec.identity());
    CHECK(evaluate_word(spec, parse_word("t e1 t^-1")) == split(iv({2, 1}), 0));
    CHECK(evaluate_word(spec, parse_word("e1 e1^-1")) == spec.identity());
}

TEST_CASE("commutators in the split model") {
    GroupSpec spec = sol_spec();
    GroupElement t = spec.generator("t");
    GroupElement a = spec.generator("e1");
    GroupElement b = spec.generator("e2");
    // [t, e1] has v-part (A - I) e1 = (1, 1).
    CHECK(commutator(spec, t, a) == split(iv({1, 1}), 0));
    CHECK(commutator(spec, t, t) == spec.identity());
    CHECK(commutator(spec, a, b) == spec.identity());
}

TEST_CASE("conjugation by powers of t scales by powers of the action") {
    GroupSpec spec = sol_spec();
    const IntMatrix& a = spec.split().action;
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        long long k = static_cast<long long>(trial % 17) - 8; // -8..8
        std::vector<Int> v = oracles::random_vector(rng, 2, 20);
        GroupElement tk = split(iv({0, 0}), k);
        GroupElement ve = split(v, 0);
        GroupElement conj = element_compose(
            spec, element_compose(spec, tk, ve), element_invert(spec, tk));
        CHECK(conj == split(pow(a, k).apply(v), 0));
    }
}

TEST_CASE("associativity spot check in both models") {
    std::mt19937_64 rng(99);
    GroupSpec split_spec = sol_spec();
    GroupSpec matrix_spec = GroupSpec::matrix_group(
        2, {{"g", IntMatrix{{1, 1}, {0, 1}}}, {"h", IntMatrix{{1, 0}, {1, 1}}}});
    auto random_split = [&]() {
        std::uniform_int_distribution<long long> kd(-4, 4);
        return split(oracles::random_vector(rng, 2, 9), kd(rng));
    };
    auto random_matrix = [&]() { return GroupElement{MatrixElement{oracles::random_unimodular(rng, 2)}}; };
    for (int trial = 0; trial < 1000; ++trial) {
        GroupElement g = random_split(), h = random_split(), k = random_split();
        CHECK(element_compose(split_spec, element_compose(split_spec, g, h), k) ==
              element_compose(split_spec, g, element_compose(split_spec, h, k)));
        GroupElement m1 = random_matrix(), m2 = random_matrix(), m3 = random_matrix();
        CHECK(element_compose(matrix_spec, element_compose(matrix_spec, m1, m2), m3) ==
              element_compose(matrix_spec, m1, element_compose(matrix_spec, m2, m3)));
    }
}

TEST_CASE("word evaluation is a homomorphism on concatenation") {
    GroupSpec spec = sol_spec();
    std::mt19937_64 rng(123);
    std::vector<std::string> labels = spec.base_labels();
    auto random_word = [&](int len) {
        Word w;
        std::uniform_int_distribution<std::size_t> li(0, labels.size() - 1);
        std::uniform_int_distribution<int> ei(0, 1);
        for (int i = 0; i < len; ++i) w.push_back(Letter{labels[li(rng)], ei(rng) ? 1 : -1});
        return w;
    };
    for (int trial = 0; trial < 1000; ++trial) {
        Word w1 = random_word(trial % 6), w2 = random_word((trial / 2) % 6);
        CHECK(evaluate_word(spec, concat(w1, w2)) ==
              element_compose(spec, evaluate_word(spec, w1), evaluate_word(spec, w2)));
    }
}

TEST_CASE("kind and dimension mismatches are rejected") {
    GroupSpec spec = sol_spec();
    GroupElement m = MatrixElement{IntMatrix::identity(2)};
    CHECK_THROWS_AS(element_compose(spec, spec.identity(), m), KindMismatch);
    CHECK_THROWS_AS(evaluate_word(spec, parse_word("nope")), UnknownLabel);
    GroupElement other = split(iv({1, 0, 0}), 0);
    CHECK_THROWS_AS(element_compose(spec, spec.identity(), other), DimensionMismatch);
}

TEST_CASE("spec validation rejects bad inputs") {
    CHECK_THROWS_AS(GroupSpec::split_extension(IntMatrix{{2, 0}, {0, 1}}), ValidationError);
    CHECK_THROWS_AS(GroupSpec::matrix_group(2, {{"g", IntMatrix{{2, 0}, {0, 1}}}}),
                    ValidationError);
    CHECK_THROWS_AS(GroupSpec::matrix_group(
                        2, {{"g", IntMatrix::identity(2)}, {"g", IntMatrix::identity(2)}}),
                    ValidationError);
    CHECK_THROWS_AS(
        GroupSpec::split_extension(IntMatrix{{1, 0}, {0, 1}}, "t", {"t", "x"}),
        ValidationError);
}

TEST_CASE("canonical encodings separate exactly the distinct elements") {
    GroupSpec spec = sol_spec();
    GroupElement id_product =
        evaluate_word(spec, parse_word("e1 e1^-1"));
    CHECK(canonical_encode(id_product) == canonical_encode(spec.identity()));
    CHECK(canonical_encode(split(iv({2, 1}), 1)) != canonical_encode(split(iv({1, 2}), 1)));
    // Cross-kind separation: matrix identity vs split identity.
    GroupElement mid = MatrixElement{IntMatrix::identity(2)};
    CHECK(canonical_encode(mid) != canonical_encode(spec.identity()));
    // Negative vs positive entries differ.
    CHECK(canonical_encode(split(iv({-1, 0}), 0)) != canonical_encode(split(iv({1, 0}), 0)));
}

TEST_CASE("generating sets from words evaluate and expand") {
    GroupSpec spec = sol_spec();
    GeneratingSet s = generating_set_from_words(
        spec, {{"x", parse_word("t e1")}, {"y", parse_word("e2")}});
    CHECK(s.items[0].element == split(iv({2, 1}), 1));
    Word w{Letter{"x", 1}, Letter{"y", -1}};
    CHECK(evaluate_over(spec, s, w) ==
          evaluate_word(spec, expand_over(s, w)));
    CHECK_THROWS_AS(generating_set_from_words(spec, {}), ValidationError);
}

TEST_CASE("Schreier generators for Z onto Z/d") {
    GroupSpec spec = GroupSpec::matrix_group(2, {{"g", IntMatrix{{1, 1}, {0, 1}}}});
    GeneratingSet s = default_generating_set(spec);

    auto cycle = [](std::size_t d) {
        std::vector<std::size_t> perm(d);
        for (std::size_t i = 0; i < d; ++i) perm[i] = (i + 1) % d;
        return perm;
    };

    SUBCASE("index 2 gives the word g g") {
        CosetAction action{2, {{"g", cycle(2)}}};
        auto words = finite_index_generators(s, action);
        REQUIRE(words.size() == 1);
        CHECK(word_to_string(words[0]) == "g g");
    }

    SUBCASE("index 3 gives the word g g g") {
        CosetAction action{3, {{"g", cycle(3)}}};
        auto words = finite_index_generators(s, action);
        REQUIRE(words.size() == 1);
        CHECK(word_to_string(words[0]) == "g g g");
        CHECK(words[0].size() <= 5);
    }

    SUBCASE("index 1 returns the generators themselves") {
        CosetAction action{1, {{"g", {0}}}};
        auto words = finite_index_generators(s, action);
        REQUIRE(words.size() == 1);
        CHECK(word_to_string(words[0]) == "g");
    }

    SUBCASE("outputs stabilize the base symbol and have bounded length") {
        for (std::size_t d = 2; d <= 6; ++d) {
            CosetAction action{d, {{"g", cycle(d)}}};
            auto words = finite_index_generators(s, action);
            for (const Word& w : words) {
                CHECK(w.size() <= 2 * d - 1);
                CHECK(detail::apply_word(action, 0, w) == 0);
            }
        }
    }
}

TEST_CASE("Schreier generators in a nonabelian coset action") {
    // Two generators acting on three symbols: a = (0 1), b = (1 2) generate S3.
    GroupSpec spec = GroupSpec::matrix_group(
        2, {{"a", IntMatrix{{1, 1}, {0, 1}}}, {"b", IntMatrix{{1, 0}, {1, 1}}}});
    GeneratingSet s = default_generating_set(spec);
    CosetAction action{3, {{"a", {1, 0, 2}}, {"b", {0, 2, 1}}}};
    auto words = finite_index_generators(s, action);
    CHECK(!words.empty());
    for (const Word& w : words) {
        CHECK(w.size() <= 5);
        CHECK(detail::apply_word(action, 0, w) == 0);
    }
}

TEST_CASE("coset action validation") {
    GroupSpec spec = GroupSpec::matrix_group(2, {{"g", IntMatrix{{1, 1}, {0, 1}}}});
    GeneratingSet s = default_generating_set(spec);
    CHECK_THROWS_AS(finite_index_generators(s, CosetAction{2, {{"g", {0, 0}}}}), InvalidTable);
    CHECK_THROWS_AS(finite_index_generators(s, CosetAction{2, {{"h", {1, 0}}}}), InvalidTable);
    // Identity action on two symbols is not transitive.
    CHECK_THROWS_AS(finite_index_generators(s, CosetAction{2, {{"g", {0, 1}}}}), NotTransitive);
}
