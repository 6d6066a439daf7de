#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "growthforge/errors.hpp"
#include "growthforge/group.hpp"
#include "growthforge/matrix.hpp"
#include "growthforge/numeric.hpp"

namespace growthforge {

// Group specification files are JSON:
//
//   {"kind": "split_extension", "matrix": [[2,1],[1,1]],
//    "t_label": "t", "basis_labels": ["e1","e2"]}        (labels optional)
//
//   {"kind": "matrix_group", "degree": 2,
//    "generators": {"g": [[1,1],[0,1]]}}
//
// Matrix entries are JSON integers, or decimal strings for values beyond
// double-exact range. Parsing then serializing is canonical.

using json = nlohmann::ordered_json;

namespace detail {

inline std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
    int line = 1, column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

inline Int entry_to_int(const json& v, const std::string& where) {
    if (v.is_number_integer()) {
        if (v.is_number_unsigned()) return Int(std::to_string(v.get<std::uint64_t>()));
        return Int(std::to_string(v.get<std::int64_t>()));
    }
    if (v.is_string()) return parse_decimal(v.get<std::string>());
    throw ParseError(where + ": matrix entries must be integers or decimal strings");
}

inline IntMatrix matrix_from_json(const json& v, const std::string& where) {
    if (!v.is_array() || v.empty())
        throw ParseError(where + ": expected a nonempty array of rows");
    const std::size_t rows = v.size();
    if (!v[0].is_array() || v[0].empty())
        throw ParseError(where + ": expected nonempty rows");
    const std::size_t cols = v[0].size();
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!v[i].is_array() || v[i].size() != cols)
            throw ParseError(where + ": ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j)
            m.at(i, j) = entry_to_int(v[i][j], where);
    }
    return m;
}

inline json matrix_to_json(const IntMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Int& x = m.at(i, j);
            // Canonical form: numbers while exact in 64 bits, strings beyond.
            if (x.fits_slong_p())
                row.push_back(static_cast<std::int64_t>(x.get_si()));
            else
                row.push_back(x.get_str());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace detail

inline GroupSpec group_spec_from_json(const json& doc) {
    if (!doc.is_object()) throw ParseError("group spec must be a JSON object");
    if (!doc.contains("kind") || !doc["kind"].is_string())
        throw ParseError("group spec needs a string field 'kind'");
    const std::string kind = doc["kind"].get<std::string>();

    if (kind == "split_extension") {
        if (!doc.contains("matrix")) throw ParseError("split_extension needs 'matrix'");
        IntMatrix a = detail::matrix_from_json(doc["matrix"], "matrix");
        std::string t_label = "t";
        if (doc.contains("t_label")) {
            if (!doc["t_label"].is_string()) throw ParseError("'t_label' must be a string");
            t_label = doc["t_label"].get<std::string>();
        }
        std::vector<std::string> basis;
        if (doc.contains("basis_labels")) {
            if (!doc["basis_labels"].is_array())
                throw ParseError("'basis_labels' must be an array of strings");
            for (const auto& l : doc["basis_labels"]) {
                if (!l.is_string()) throw ParseError("'basis_labels' must be strings");
                basis.push_back(l.get<std::string>());
            }
        }
        return GroupSpec::split_extension(std::move(a), std::move(t_label), std::move(basis));
    }

    if (kind == "matrix_group") {
        if (!doc.contains("degree") || !doc["degree"].is_number_integer())
            throw ParseError("matrix_group needs an integer 'degree'");
        const auto degree = doc["degree"].get<std::int64_t>();
        if (degree <= 0) throw ParseError("'degree' must be positive");
        if (!doc.contains("generators") || !doc["generators"].is_object())
            throw ParseError("matrix_group needs an object 'generators'");
        std::vector<std::pair<std::string, IntMatrix>> gens;
        for (const auto& [label, value] : doc["generators"].items())
            gens.emplace_back(label,
                              detail::matrix_from_json(value, "generator '" + label + "'"));
        return GroupSpec::matrix_group(static_cast<std::size_t>(degree), std::move(gens));
    }

    throw ParseError("unknown group kind '" + kind +
                     "' (expected split_extension or matrix_group)");
}

/// Parse a group spec from JSON text; errors carry line/column positions.
inline GroupSpec parse_group_spec(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        auto [line, column] = detail::line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError(e.what(), line, column);
    }
    return group_spec_from_json(doc);
}

inline json group_spec_to_json(const GroupSpec& spec) {
    json doc;
    if (spec.is_split()) {
        const auto& se = spec.split();
        doc["kind"] = "split_extension";
        doc["matrix"] = detail::matrix_to_json(se.action);
        doc["t_label"] = se.t_label;
        doc["basis_labels"] = se.basis_labels;
    } else {
        const auto& mg = spec.matrix();
        doc["kind"] = "matrix_group";
        doc["degree"] = static_cast<std::int64_t>(mg.degree);
        json gens;
        for (const auto& [label, m] : mg.generators) gens[label] = detail::matrix_to_json(m);
        doc["generators"] = std::move(gens);
    }
    return doc;
}

/// Canonical serialization: fixed key order, compact separators.
inline std::string serialize_group_spec(const GroupSpec& spec) {
    return group_spec_to_json(spec).dump();
}

} // namespace growthforge
