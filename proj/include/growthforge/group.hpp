#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "growthforge/errors.hpp"
#include "growthforge/matrix.hpp"
#include "growthforge/numeric.hpp"

namespace growthforge {

// ---------------------------------------------------------------------------
// Words over labeled generators. Inverse letters render as `label^-1`; letters
// are space-separated, labels are case-sensitive tokens.
// ---------------------------------------------------------------------------

struct Letter {
    std::string label;
    int exponent = 1; // +1 or -1

    bool operator==(const Letter& o) const {
        return label == o.label && exponent == o.exponent;
    }
};

using Word = std::vector<Letter>;

inline Word inverse_word(const Word& w) {
    Word r;
    r.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        r.push_back(Letter{it->label, -it->exponent});
    return r;
}

inline Word concat(Word a, const Word& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

inline Word repeat_letter(const Letter& l, std::size_t count) {
    return Word(count, l);
}

inline std::string word_to_string(const Word& w) {
    std::string s;
    for (const Letter& l : w) {
        if (!s.empty()) s += ' ';
        s += l.label;
        if (l.exponent == -1) s += "^-1";
    }
    return s;
}

/// Parse a space-separated word; each token is `label` or `label^-1`.
/// The empty string is the empty word.
inline Word parse_word(const std::string& text) {
    Word w;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && text[i] == ' ') ++i;
        if (i == text.size()) break;
        std::size_t j = i;
        while (j < text.size() && text[j] != ' ') ++j;
        std::string token = text.substr(i, j - i);
        int exponent = 1;
        if (token.size() >= 3 && token.compare(token.size() - 3, 3, "^-1") == 0) {
            exponent = -1;
            token.resize(token.size() - 3);
        }
        if (token.empty() || token.find('^') != std::string::npos)
            throw ParseError("bad word letter '" + text.substr(i, j - i) + "'");
        w.push_back(Letter{std::move(token), exponent});
        i = j;
    }
    return w;
}

/// Free reduction: cancel adjacent l l^-1 pairs.
inline Word freely_reduce(const Word& w) {
    Word out;
    for (const Letter& l : w) {
        if (!out.empty() && out.back().label == l.label &&
            out.back().exponent == -l.exponent)
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Group models: matrix groups over Z and split extensions Z^r x|_A Z.
// ---------------------------------------------------------------------------

/// Element of a split extension: the pair (w, k) with multiplication
/// (w1,k1)(w2,k2) = (w1 + A^k1 w2, k1+k2). The equivalent (r+1)x(r+1) matrix
/// embedding [[A^k, w],[0, 1]] is not used internally; the pair form is
/// smaller and makes conjugation by t a single matrix-vector product.
struct SplitElement {
    std::vector<Int> v;
    long long t_exp = 0;

    bool operator==(const SplitElement& o) const {
        return t_exp == o.t_exp && v == o.v;
    }
};

struct MatrixElement {
    IntMatrix m;
    bool operator==(const MatrixElement& o) const { return m == o.m; }
};

using GroupElement = std::variant<MatrixElement, SplitElement>;

struct SplitExtensionSpec {
    IntMatrix action; // unimodular r x r
    std::string t_label = "t";
    std::vector<std::string> basis_labels; // defaults e1..er
};

struct MatrixGroupSpec {
    std::size_t degree = 0;
    std::vector<std::pair<std::string, IntMatrix>> generators;
};

/// Declarative description of the group plus its labeled base generators.
/// Immutable after construction; construction validates unimodularity and
/// label uniqueness.
class GroupSpec {
public:
    static GroupSpec split_extension(IntMatrix action, std::string t_label = "t",
                                     std::vector<std::string> basis_labels = {}) {
        if (!action.is_square())
            throw ValidationError("split extension action must be square");
        if (action.rows() == 0)
            throw ValidationError("split extension needs positive rank");
        if (!is_unimodular(action))
            throw ValidationError("split extension action must be unimodular, det = " +
                                  det(action).get_str());
        if (basis_labels.empty())
            for (std::size_t i = 1; i <= action.rows(); ++i)
                basis_labels.push_back("e" + std::to_string(i));
        if (basis_labels.size() != action.rows())
            throw ValidationError("expected " + std::to_string(action.rows()) +
                                  " basis labels");
        GroupSpec spec;
        spec.kind_ = SplitExtensionSpec{std::move(action), std::move(t_label),
                                        std::move(basis_labels)};
        spec.check_labels();
        return spec;
    }

    static GroupSpec matrix_group(std::size_t degree,
                                  std::vector<std::pair<std::string, IntMatrix>> gens) {
        if (degree == 0) throw ValidationError("matrix group needs positive degree");
        if (gens.empty()) throw ValidationError("matrix group needs at least one generator");
        for (const auto& [label, m] : gens) {
            if (m.rows() != degree || m.cols() != degree)
                throw ValidationError("generator '" + label + "' is not " +
                                      std::to_string(degree) + "x" + std::to_string(degree));
            if (!is_unimodular(m))
                throw ValidationError("generator '" + label + "' is not unimodular, det = " +
                                      det(m).get_str());
        }
        GroupSpec spec;
        spec.kind_ = MatrixGroupSpec{degree, std::move(gens)};
        spec.check_labels();
        return spec;
    }

    bool is_split() const { return std::holds_alternative<SplitExtensionSpec>(kind_); }

    const SplitExtensionSpec& split() const {
        if (!is_split()) throw KindMismatch("expected a split extension");
        return std::get<SplitExtensionSpec>(kind_);
    }

    const MatrixGroupSpec& matrix() const {
        if (is_split()) throw KindMismatch("expected a matrix group");
        return std::get<MatrixGroupSpec>(kind_);
    }

    /// Ambient rank of the V-part (split) or matrix degree.
    std::size_t dimension() const {
        return is_split() ? split().action.rows() : matrix().degree;
    }

    std::vector<std::string> base_labels() const {
        std::vector<std::string> out;
        if (is_split()) {
            out.push_back(split().t_label);
            for (const auto& l : split().basis_labels) out.push_back(l);
        } else {
            for (const auto& [l, m] : matrix().generators) out.push_back(l);
        }
        return out;
    }

    bool has_label(const std::string& label) const {
        auto labels = base_labels();
        return std::find(labels.begin(), labels.end(), label) != labels.end();
    }

    GroupElement identity() const {
        if (is_split())
            return SplitElement{std::vector<Int>(split().action.rows(), Int(0)), 0};
        return MatrixElement{IntMatrix::identity(matrix().degree)};
    }

    GroupElement generator(const std::string& label) const {
        if (is_split()) {
            const auto& s = split();
            if (label == s.t_label)
                return SplitElement{std::vector<Int>(s.action.rows(), Int(0)), 1};
            for (std::size_t i = 0; i < s.basis_labels.size(); ++i)
                if (s.basis_labels[i] == label) {
                    std::vector<Int> v(s.action.rows(), Int(0));
                    v[i] = 1;
                    return SplitElement{std::move(v), 0};
                }
        } else {
            for (const auto& [l, m] : matrix().generators)
                if (l == label) return MatrixElement{m};
        }
        throw UnknownLabel("no generator labeled '" + label + "'");
    }

private:
    GroupSpec() = default;

    void check_labels() const {
        std::set<std::string> seen;
        for (const auto& l : base_labels()) {
            if (l.empty()) throw ValidationError("empty generator label");
            if (!seen.insert(l).second)
                throw ValidationError("duplicate generator label '" + l + "'");
        }
    }

    std::variant<MatrixGroupSpec, SplitExtensionSpec> kind_;
};

// ---------------------------------------------------------------------------
// Group operations. All exact; elements are immutable values.
// ---------------------------------------------------------------------------

namespace detail {

inline const SplitElement& as_split(const GroupElement& g) {
    if (const auto* s = std::get_if<SplitElement>(&g)) return *s;
    throw KindMismatch("element is not a split-extension pair");
}

inline const MatrixElement& as_matrix(const GroupElement& g) {
    if (const auto* m = std::get_if<MatrixElement>(&g)) return *m;
    throw KindMismatch("element is not a matrix");
}

} // namespace detail

inline GroupElement element_compose(const GroupSpec& spec, const GroupElement& g,
                                    const GroupElement& h) {
    if (spec.is_split()) {
        const SplitElement& a = detail::as_split(g);
        const SplitElement& b = detail::as_split(h);
        if (a.v.size() != b.v.size())
            throw DimensionMismatch("split elements of different rank");
        std::vector<Int> v = pow(spec.split().action, a.t_exp).apply(b.v);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += a.v[i];
        return SplitElement{std::move(v), a.t_exp + b.t_exp};
    }
    const MatrixElement& a = detail::as_matrix(g);
    const MatrixElement& b = detail::as_matrix(h);
    return MatrixElement{a.m * b.m};
}

inline GroupElement element_invert(const GroupSpec& spec, const GroupElement& g) {
    if (spec.is_split()) {
        const SplitElement& a = detail::as_split(g);
        std::vector<Int> v = pow(spec.split().action, -a.t_exp).apply(a.v);
        for (Int& x : v) x = -x;
        return SplitElement{std::move(v), -a.t_exp};
    }
    return MatrixElement{inverse(detail::as_matrix(g).m)};
}

/// [g, h] = g h g^-1 h^-1. The convention is fixed here; the free-semigroup
/// arguments downstream are insensitive to the choice.
inline GroupElement commutator(const GroupSpec& spec, const GroupElement& g,
                               const GroupElement& h) {
    GroupElement gh = element_compose(spec, g, h);
    GroupElement gi = element_invert(spec, g);
    GroupElement hi = element_invert(spec, h);
    return element_compose(spec, element_compose(spec, gh, gi), hi);
}

inline GroupElement evaluate_word(const GroupSpec& spec, const Word& word) {
    GroupElement acc = spec.identity();
    for (const Letter& l : word) {
        GroupElement g = spec.generator(l.label);
        if (l.exponent == -1) g = element_invert(spec, g);
        acc = element_compose(spec, acc, g);
    }
    return acc;
}

inline bool elements_equal(const GroupElement& a, const GroupElement& b) {
    return a == b;
}

// ---------------------------------------------------------------------------
// Canonical byte encoding: the equality/dedup key for ball enumeration.
// Injective per group, stable across runs. Layout: kind tag, dimensions,
// then each integer as sign byte + length-prefixed big-endian magnitude.
// ---------------------------------------------------------------------------

namespace detail {

inline void encode_u32(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>((v >> 24) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>(v & 0xff));
}

inline void encode_int(std::string& out, const Int& v) {
    int s = sgn(v);
    out.push_back(s == 0 ? '\0' : (s > 0 ? '\1' : '\2'));
    if (s == 0) {
        encode_u32(out, 0);
        return;
    }
    std::size_t bytes = (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
    encode_u32(out, static_cast<std::uint32_t>(bytes));
    std::size_t old = out.size();
    out.resize(old + bytes);
    std::size_t written = 0;
    mpz_export(out.data() + old, &written, 1, 1, 1, 0, v.get_mpz_t());
    out.resize(old + written);
}

} // namespace detail

inline std::string canonical_encode(const GroupElement& g) {
    std::string out;
    if (const auto* s = std::get_if<SplitElement>(&g)) {
        out.push_back('S');
        detail::encode_u32(out, static_cast<std::uint32_t>(s->v.size()));
        for (const Int& x : s->v) detail::encode_int(out, x);
        detail::encode_int(out, Int(static_cast<long>(s->t_exp)));
    } else {
        const auto& m = std::get<MatrixElement>(g).m;
        out.push_back('M');
        detail::encode_u32(out, static_cast<std::uint32_t>(m.rows()));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) detail::encode_int(out, m.at(i, j));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Generating sets: labeled words over the spec's base generators. The
// symmetric closure (inverses) is implicit everywhere they are consumed.
// ---------------------------------------------------------------------------

struct GeneratingSet {
    struct Item {
        std::string label;
        Word word; // over base labels
        GroupElement element;
    };

    std::vector<Item> items;

    std::size_t size() const { return items.size(); }

    const Item& find(const std::string& label) const {
        for (const auto& item : items)
            if (item.label == label) return item;
        throw UnknownLabel("no generating-set entry labeled '" + label + "'");
    }
};

inline GeneratingSet default_generating_set(const GroupSpec& spec) {
    GeneratingSet s;
    for (const auto& label : spec.base_labels()) {
        Word w{Letter{label, 1}};
        s.items.push_back({label, w, spec.generator(label)});
    }
    return s;
}

inline GeneratingSet generating_set_from_words(
    const GroupSpec& spec, const std::vector<std::pair<std::string, Word>>& entries) {
    if (entries.empty()) throw ValidationError("generating set must be nonempty");
    GeneratingSet s;
    std::set<std::string> seen;
    for (const auto& [label, word] : entries) {
        if (label.empty()) throw ValidationError("empty generating-set label");
        if (!seen.insert(label).second)
            throw ValidationError("duplicate generating-set label '" + label + "'");
        s.items.push_back({label, word, evaluate_word(spec, word)});
    }
    return s;
}

/// Expand a word over generating-set labels into a word over base labels.
inline Word expand_over(const GeneratingSet& s, const Word& word) {
    Word out;
    for (const Letter& l : word) {
        const auto& item = s.find(l.label);
        Word piece = l.exponent == 1 ? item.word : inverse_word(item.word);
        out.insert(out.end(), piece.begin(), piece.end());
    }
    return out;
}

inline GroupElement evaluate_over(const GroupSpec& spec, const GeneratingSet& s,
                                  const Word& word) {
    GroupElement acc = spec.identity();
    for (const Letter& l : word) {
        GroupElement g = s.find(l.label).element;
        if (l.exponent == -1) g = element_invert(spec, g);
        acc = element_compose(spec, acc, g);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Finite-index subgroups via coset actions (Schreier generators).
// ---------------------------------------------------------------------------

/// Right action of the generators on coset symbols 0..degree-1; the subgroup
/// is the stabilizer of symbol 0 ("symbol 1" in 1-based reports). Each image
/// must be a permutation; labels must match the generating set.
struct CosetAction {
    std::size_t degree = 0;
    std::vector<std::pair<std::string, std::vector<std::size_t>>> images;

    const std::vector<std::size_t>& image(const std::string& label) const {
        for (const auto& [l, perm] : images)
            if (l == label) return perm;
        throw InvalidTable("no permutation image for generator '" + label + "'");
    }
};

namespace detail {

inline void validate_table(const GeneratingSet& s, const CosetAction& action) {
    if (action.degree == 0) throw InvalidTable("coset action needs positive degree");
    for (const auto& item : s.items) action.image(item.label); // must exist
    for (const auto& [label, perm] : action.images) {
        if (perm.size() != action.degree)
            throw InvalidTable("image of '" + label + "' has length " +
                               std::to_string(perm.size()) + ", expected " +
                               std::to_string(action.degree));
        std::vector<bool> hit(action.degree, false);
        for (std::size_t v : perm) {
            if (v >= action.degree || hit[v])
                throw InvalidTable("image of '" + label + "' is not a permutation");
            hit[v] = true;
        }
    }
}

inline std::size_t apply_letter(const CosetAction& action, std::size_t symbol,
                                const Letter& l) {
    const auto& perm = action.image(l.label);
    if (l.exponent == 1) return perm[symbol];
    for (std::size_t i = 0; i < perm.size(); ++i)
        if (perm[i] == symbol) return i;
    throw std::logic_error("permutation preimage missing");
}

inline std::size_t apply_word(const CosetAction& action, std::size_t symbol,
                              const Word& w) {
    for (const Letter& l : w) symbol = apply_letter(action, symbol, l);
    return symbol;
}

} // namespace detail

/// Breadth-first Schreier construction. Coset representatives have length
/// <= degree-1, so every returned generator word has length <= 2*degree - 1,
/// and together they generate the stabilizer subgroup (Schreier's lemma).
/// Words that freely reduce to the identity are dropped.
inline std::vector<Word> finite_index_generators(const GeneratingSet& s,
                                                 const CosetAction& action) {
    detail::validate_table(s, action);
    const std::size_t d = action.degree;

    // BFS over symbols with S and S^-1 for shortest representatives.
    std::vector<std::optional<Word>> rep(d);
    rep[0] = Word{};
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
        std::size_t c = queue.front();
        queue.pop_front();
        for (const auto& item : s.items) {
            for (int e : {1, -1}) {
                Letter l{item.label, e};
                std::size_t next = detail::apply_letter(action, c, l);
                if (rep[next]) continue;
                Word w = *rep[c];
                w.push_back(l);
                rep[next] = std::move(w);
                queue.push_back(next);
            }
        }
    }
    for (std::size_t c = 0; c < d; ++c)
        if (!rep[c])
            throw NotTransitive("coset action does not reach symbol " +
                                std::to_string(c + 1));

    std::vector<Word> out;
    std::set<std::string> seen;
    for (std::size_t c = 0; c < d; ++c) {
        for (const auto& item : s.items) {
            Letter l{item.label, 1};
            std::size_t target = detail::apply_letter(action, c, l);
            Word w = *rep[c];
            w.push_back(l);
            Word gen = freely_reduce(concat(std::move(w), inverse_word(*rep[target])));
            if (gen.empty()) continue;
            if (seen.insert(word_to_string(gen)).second) out.push_back(std::move(gen));
        }
    }
    return out;
}

} // namespace growthforge
