#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "growthforge/errors.hpp"
#include "growthforge/group.hpp"
#include "growthforge/lattice.hpp"
#include "growthforge/spectra.hpp"

namespace growthforge {

// ---------------------------------------------------------------------------
// Witness data
// ---------------------------------------------------------------------------

/// Witness built directly from the split-extension structure: the pair
/// (t^n, t^n v) for a cyclic vector v whose annihilator under A^n has a root
/// of modulus >= 2.
struct StandardPairConstruction {
    int power = 1;              // n
    std::string cyclic_vector;  // rendered v
};

/// One level of the generating-set-robust search.
struct SearchLevelTrace {
    std::size_t ambient_rank = 0;    // r at this level
    std::size_t invariant_rank = 0;  // rank of the saturated invariant module
    std::string pivot;               // chosen t-hat as a rendered letter
    long long pivot_exponent = 0;    // its t-exponent (sign included)
    int power = 1;                   // n applied to t-hat
    std::string branch;              // "cyclic_vector" or "quotient"
    std::string cyclic_vector;       // rendered v when the branch found one
};

struct SearchConstruction {
    std::vector<SearchLevelTrace> levels;
};

using WitnessConstruction = std::variant<StandardPairConstruction, SearchConstruction>;

/// Two words certified to generate a free semigroup. Lengths are counted in
/// letters of the generating set the words are written over; the rate lower
/// bound 2^(1/L) applies to that generating set.
struct FreeSemigroupWitness {
    Word word_a;
    Word word_b;
    std::size_t max_length = 0;
    WitnessConstruction construction;
    int verified_depth = 0;
    double rate_lower_bound = 1.0;
};

struct Classification {
    enum class Verdict { polynomial_growth, uniform_exponential_growth };
    Verdict verdict = Verdict::polynomial_growth;
    std::optional<FreeSemigroupWitness> witness; // present iff exponential

    bool is_polynomial() const { return verdict == Verdict::polynomial_growth; }
};

inline const char* verdict_name(Classification::Verdict v) {
    return v == Classification::Verdict::polynomial_growth ? "polynomial_growth"
                                                           : "uniform_exponential_growth";
}

// ---------------------------------------------------------------------------
// Brute-force oracle
// ---------------------------------------------------------------------------

struct VerifyResult {
    bool ok = false;
    std::uint64_t distinct_count = 0;
    // First colliding pair of {a,b}-words in length-then-lex enumeration order
    // (a before b), as strings over the letters 'a' and 'b'.
    std::optional<std::pair<std::string, std::string>> counterexample;
};

/// Evaluates every nonempty product of the two elements up to the given
/// length and checks that all 2^(depth+1) - 2 of them are distinct. This is
/// deliberately independent of the constructions above: it trusts only the
/// group law and the canonical encoding.
inline VerifyResult verify_free_pair(const GroupSpec& spec, const GroupElement& a,
                                     const GroupElement& b, int depth) {
    if (depth < 1) throw ValidationError("verification depth must be at least 1");
    if (depth > 20)
        throw BudgetExceeded("verification depth " + std::to_string(depth) +
                             " exceeds the 2^21-element cap");
    VerifyResult result;
    std::unordered_map<std::string, std::string> first_word; // encoding -> word
    struct Node {
        GroupElement element;
        std::string word;
    };
    std::vector<Node> level{{spec.identity(), ""}};
    for (int len = 1; len <= depth; ++len) {
        std::vector<Node> next;
        next.reserve(level.size() * 2);
        for (const Node& node : level) {
            for (int which = 0; which < 2; ++which) {
                GroupElement child =
                    element_compose(spec, node.element, which == 0 ? a : b);
                std::string word = node.word + (which == 0 ? 'a' : 'b');
                std::string key = canonical_encode(child);
                auto [it, inserted] = first_word.try_emplace(key, word);
                if (!inserted) {
                    result.ok = false;
                    result.distinct_count = first_word.size();
                    result.counterexample = {it->second, word};
                    return result;
                }
                next.push_back(Node{std::move(child), std::move(word)});
            }
        }
        level = std::move(next);
    }
    result.ok = true;
    result.distinct_count = first_word.size();
    return result;
}

inline VerifyResult verify_free_semigroup(const GroupSpec& spec, const Word& word_a,
                                          const Word& word_b, int depth) {
    return verify_free_pair(spec, evaluate_word(spec, word_a),
                            evaluate_word(spec, word_b), depth);
}

// ---------------------------------------------------------------------------
// Constructions
// ---------------------------------------------------------------------------

namespace detail {

inline std::string render_vector(const std::vector<Int>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].get_str();
    }
    return s + ")";
}

inline double lower_bound_from_length(std::size_t max_length) {
    return std::pow(2.0, 1.0 / static_cast<double>(max_length));
}

} // namespace detail

/// Witness pair (t^n, t^n v) in the standard generators of a split extension.
/// n is the smallest power whose characteristic polynomial clears |lambda| >= 2
/// and v is chosen among standard basis vectors (then pairwise sums) whose
/// annihilator under A^n clears the same threshold; the minimal-polynomial
/// factorization guarantees a basis vector works.
inline FreeSemigroupWitness free_pair_standard(const GroupSpec& spec,
                                               int verify_depth = 8, int n_max = 64) {
    const SplitExtensionSpec& se = spec.split();
    const IntMatrix& a = se.action;
    const std::size_t r = a.rows();
    if (kronecker_all_roots_of_unity(char_poly(a)))
        throw AllRootsOfUnity("the action has only root-of-unity eigenvalues");

    const int n = power_for_threshold(a, Rat(2), n_max);
    IntMatrix c = pow(a, n);

    std::vector<std::pair<std::vector<Int>, Word>> candidates;
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<Int> v(r, Int(0));
        v[i] = 1;
        candidates.push_back({std::move(v), Word{Letter{se.basis_labels[i], 1}}});
    }
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j) {
            std::vector<Int> v(r, Int(0));
            v[i] = 1;
            v[j] = 1;
            candidates.push_back(
                {std::move(v),
                 Word{Letter{se.basis_labels[i], 1}, Letter{se.basis_labels[j], 1}}});
        }

    for (const auto& [v, v_word] : candidates) {
        if (!has_modulus_ge(annihilator_poly(c, v), Rat(2))) continue;
        FreeSemigroupWitness w;
        w.word_a = repeat_letter(Letter{se.t_label, 1}, static_cast<std::size_t>(n));
        w.word_b = concat(w.word_a, v_word);
        w.max_length = w.word_b.size();
        w.construction = StandardPairConstruction{n, detail::render_vector(v)};
        w.rate_lower_bound = detail::lower_bound_from_length(w.max_length);
        VerifyResult check = verify_free_semigroup(spec, w.word_a, w.word_b, verify_depth);
        if (!check.ok)
            throw std::logic_error("constructed standard pair failed the oracle at depth " +
                                   std::to_string(verify_depth));
        w.verified_depth = verify_depth;
        return w;
    }
    throw NoCyclicSupport("no standard basis vector or pairwise sum carries the "
                          "large eigenvalue");
}

inline FreeSemigroupWitness free_pair_standard(const IntMatrix& a, int verify_depth = 8,
                                               int n_max = 64) {
    return free_pair_standard(GroupSpec::split_extension(a), verify_depth, n_max);
}

/// The growth alternative for split extensions: polynomial growth exactly when
/// every eigenvalue of the action is a root of unity (Kronecker), uniform
/// exponential growth otherwise, with an explicit verified witness attached.
inline Classification classify_split_extension(const GroupSpec& spec,
                                               int verify_depth = 8) {
    const SplitExtensionSpec& se = spec.split();
    Classification c;
    if (kronecker_all_roots_of_unity(char_poly(se.action))) {
        c.verdict = Classification::Verdict::polynomial_growth;
        return c;
    }
    c.verdict = Classification::Verdict::uniform_exponential_growth;
    c.witness = free_pair_standard(spec, verify_depth);
    return c;
}

// ---------------------------------------------------------------------------
// Generating-set-robust witness search
// ---------------------------------------------------------------------------

namespace detail {

struct SearchGenerator {
    std::string label;
    std::vector<Int> v;
    long long t_exp = 0;
};

struct SearchOutcome {
    Word word_a;
    Word word_b;
};

/// One level of the inductive search. `action` is the defining automorphism at
/// this level, `gens` the generating data (labels refer to the original
/// generating set throughout; quotient levels reuse them verbatim, which is
/// sound because relations project to quotients).
inline SearchOutcome search_level(const IntMatrix& action,
                                  const std::vector<SearchGenerator>& gens,
                                  int n_max, std::vector<SearchLevelTrace>& levels,
                                  std::size_t guard) {
    if (guard == 0)
        throw RecursionExhausted("search recursion exceeded the ambient rank");
    const std::size_t r = action.rows();

    // (1) Pick t-hat in S u S^-1 with nonzero t-exponent: first one whose own
    // action already has a modulus >= 2 eigenvalue, else the first eligible
    // one raised to the smallest sufficient power.
    struct Candidate {
        std::size_t index;
        int sign;
        long long exponent;
    };
    std::vector<Candidate> candidates;
    for (int sign : {1, -1})
        for (std::size_t i = 0; i < gens.size(); ++i)
            if (gens[i].t_exp != 0)
                candidates.push_back({i, sign, sign * gens[i].t_exp});
    if (candidates.empty())
        throw DegenerateGeneratingSet(
            "no generator or inverse has a nonzero t-exponent; the set cannot "
            "generate the extension");

    std::optional<Candidate> chosen;
    int power = 1;
    for (const Candidate& cand : candidates)
        if (has_modulus_ge(char_poly(pow(action, cand.exponent)), Rat(2))) {
            chosen = cand;
            break;
        }
    if (!chosen) {
        chosen = candidates.front();
        power = power_for_threshold(pow(action, chosen->exponent), Rat(2), n_max);
    }
    const Letter pivot_letter{gens[chosen->index].label, chosen->sign};
    const IntMatrix b = pow(action, chosen->exponent);
    const IntMatrix c = pow(b, power);

    // (2) S0: V-members of S plus all pairwise commutators of generators.
    struct Candidate0 {
        std::vector<Int> v;
        Word word;
    };
    std::vector<Candidate0> s0;
    for (const SearchGenerator& g : gens) {
        if (g.t_exp != 0) continue;
        bool zero = true;
        for (const Int& x : g.v)
            if (x != 0) { zero = false; break; }
        if (zero) continue;
        s0.push_back({g.v, Word{Letter{g.label, 1}}});
    }
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = 0; j < gens.size(); ++j) {
            if (i == j) continue;
            // [(u,p),(w,q)] = ((I - A^q) u + (A^p - I) w, 0)
            std::vector<Int> v = gens[i].v;
            {
                std::vector<Int> t = pow(action, gens[j].t_exp).apply(gens[i].v);
                for (std::size_t k = 0; k < v.size(); ++k) v[k] -= t[k];
            }
            {
                std::vector<Int> t = pow(action, gens[i].t_exp).apply(gens[j].v);
                for (std::size_t k = 0; k < v.size(); ++k) v[k] += t[k] - gens[j].v[k];
            }
            bool zero = true;
            for (const Int& x : v)
                if (x != 0) { zero = false; break; }
            if (zero) continue;
            Word w{Letter{gens[i].label, 1}, Letter{gens[j].label, 1},
                   Letter{gens[i].label, -1}, Letter{gens[j].label, -1}};
            s0.push_back({std::move(v), std::move(w)});
        }

    // (3) S1: conjugates of S0 by t-hat^q for 0 <= q < r. Conjugation by
    // (u,k) sends (w,0) to (A^k w, 0), so the vectors are B^q w.
    struct Candidate1 {
        std::vector<Int> v;
        Word word;
    };
    std::vector<Candidate1> s1;
    for (std::size_t q = 0; q < r; ++q) {
        IntMatrix bq = pow(b, static_cast<long long>(q));
        for (const Candidate0& base : s0) {
            Word w = repeat_letter(pivot_letter, q);
            w = concat(std::move(w), base.word);
            w = concat(std::move(w),
                       repeat_letter(Letter{pivot_letter.label, -pivot_letter.exponent}, q));
            s1.push_back({bq.apply(base.v), std::move(w)});
        }
    }

    // (4) The t-hat invariant module generated by S1, saturated so the
    // quotient stays torsion-free.
    std::vector<std::vector<Int>> vectors;
    vectors.reserve(s1.size());
    for (const Candidate1& cand : s1) vectors.push_back(cand.v);
    Lattice v1 = hnf_saturate(vectors, r);

    if (v1.rank() == 0)
        throw RecursionExhausted(
            "the invariant module vanished: all commutators are trivial, so the "
            "set generates an abelian subgroup and cannot generate an exponential "
            "group");

    // (5) Look for a generator of V1 whose cyclic module carries the large
    // eigenvalue. When V1 has full rank this always succeeds: the lcm of the
    // annihilators over a spanning set is the minimal polynomial. When the
    // rank is deficient the eigenvalue may still sit on V1 (commutators force
    // (A - I)V into V1), so the scan runs before any recursion.
    for (const Candidate1& cand : s1) {
        if (!has_modulus_ge(annihilator_poly(c, cand.v), Rat(2))) continue;
        SearchOutcome out;
        out.word_a = repeat_letter(pivot_letter, static_cast<std::size_t>(power));
        out.word_b = concat(out.word_a, cand.word);
        levels.push_back(SearchLevelTrace{r, v1.rank(),
                                          word_to_string(Word{pivot_letter}),
                                          chosen->exponent, power, "cyclic_vector",
                                          render_vector(cand.v)});
        if (power == 1 && out.word_b.size() > 3 + 2 * r)
            throw std::logic_error("base-branch witness exceeded the 3+2r length bound");
        return out;
    }

    if (v1.rank() == r)
        throw std::logic_error(
            "full-rank invariant module but no generator carries the eigenvalue; "
            "the minimal polynomial argument is violated");

    // (6) The eigenvalue lives on the quotient: recurse on Z^r / V1 with the
    // induced action; witness words over the same labels pull back verbatim.
    IntMatrix projection = quotient_projection(v1);
    IntMatrix induced = induced_quotient_action(action, projection);
    std::vector<SearchGenerator> mapped;
    mapped.reserve(gens.size());
    for (const SearchGenerator& g : gens)
        mapped.push_back({g.label, projection.apply(g.v), g.t_exp});
    levels.push_back(SearchLevelTrace{r, v1.rank(), word_to_string(Word{pivot_letter}),
                                      chosen->exponent, power, "quotient", ""});
    return search_level(induced, mapped, n_max, levels, guard - 1);
}

} // namespace detail

/// Full witness search over an arbitrary generating set of a split extension,
/// following the inductive sublattice/quotient procedure. The returned words
/// are over the generating set's labels and are always re-verified by the
/// brute-force oracle before being returned.
inline FreeSemigroupWitness witness_search(const GroupSpec& spec, const GeneratingSet& s,
                                           int verify_depth = 8, int n_max = 64) {
    const SplitExtensionSpec& se = spec.split();
    if (kronecker_all_roots_of_unity(char_poly(se.action)))
        throw NotExponential("the split extension has polynomial growth");
    if (s.items.empty()) throw ValidationError("empty generating set");

    std::vector<detail::SearchGenerator> gens;
    gens.reserve(s.items.size());
    for (const auto& item : s.items) {
        const SplitElement& e = detail::as_split(item.element);
        gens.push_back({item.label, e.v, e.t_exp});
    }

    std::vector<SearchLevelTrace> levels;
    detail::SearchOutcome out =
        detail::search_level(se.action, gens, n_max, levels, se.action.rows() + 1);

    FreeSemigroupWitness w;
    w.word_a = std::move(out.word_a);
    w.word_b = std::move(out.word_b);
    w.max_length = std::max(w.word_a.size(), w.word_b.size());
    w.construction = SearchConstruction{std::move(levels)};
    w.rate_lower_bound = detail::lower_bound_from_length(w.max_length);

    VerifyResult check = verify_free_pair(spec, evaluate_over(spec, s, w.word_a),
                                          evaluate_over(spec, s, w.word_b), verify_depth);
    if (!check.ok)
        throw std::logic_error("witness search produced a pair that failed the oracle");
    w.verified_depth = verify_depth;
    return w;
}

} // namespace growthforge
