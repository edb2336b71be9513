#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "algebroid/nevanlinna.hpp"
#include "algebroid/verify.hpp"

namespace algebroid {

/// Parsed batch input: the function's coefficient table, target expressions,
/// radius grid, epsilon, monomial degree s, and the RNG seed. Complex
/// numbers are [re, im] pairs throughout; polynomial arrays are ascending
/// degree; bivariate grids are c[i][j] for z^i w^j.
struct SpecFile {
    int version = 1;
    std::vector<Polynomial> raw_function; // cleared coefficient table, t = 0..v
    AlgebroidEquation equation;
    std::vector<SmallFunctionTarget> targets;
    RadiusGrid grid;
    double epsilon = 0.1;
    int s = 1;
    std::uint64_t seed = 42;

    SpecFile() : equation(AlgebroidEquation::from_polynomials(
                     {Polynomial{{0, 0}, {-1, 0}}, Polynomial::constant(1)})) {}
};

struct SpecError : Error {
    explicit SpecError(const std::string& what) : Error(what) {}
};

namespace detail {

inline int line_of_offset(const std::string& text, size_t byte) {
    int line = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

inline int line_of_key(const std::string& text, const std::string& key) {
    size_t pos = text.find("\"" + key + "\"");
    if (pos == std::string::npos) return -1;
    return line_of_offset(text, pos);
}

[[noreturn]] inline void key_error(const std::string& text, const std::string& key,
                                   const std::string& what) {
    int line = line_of_key(text, key);
    std::string loc = (line > 0) ? " (line " + std::to_string(line) + ")" : "";
    throw SpecError("spec error: key '" + key + "'" + loc + ": " + what);
}

inline Complex parse_complex(const std::string& text, const std::string& key,
                             const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        key_error(text, key, "complex numbers are [re, im] pairs");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

inline Polynomial parse_poly(const std::string& text, const std::string& key,
                             const nlohmann::json& j) {
    if (!j.is_array()) key_error(text, key, "expected an array of [re, im] pairs");
    std::vector<Complex> c;
    c.reserve(j.size());
    for (auto& e : j) c.push_back(parse_complex(text, key, e));
    return Polynomial(std::move(c));
}

inline BiPolynomial parse_grid(const std::string& text, const std::string& key,
                               const nlohmann::json& j) {
    if (!j.is_array() || j.empty())
        key_error(text, key, "expected a nonempty grid of [re, im] pairs (rows are z powers)");
    std::vector<std::vector<Complex>> rows;
    for (auto& row : j) {
        if (!row.is_array()) key_error(text, key, "grid rows must be arrays");
        std::vector<Complex> r;
        for (auto& e : row) r.push_back(parse_complex(text, key, e));
        rows.push_back(std::move(r));
    }
    return BiPolynomial::from_grid(rows);
}

} // namespace detail

inline SpecFile parse_spec_text(const std::string& text, const std::string& origin = "spec") {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SpecError("spec error: " + origin + " is not valid JSON (line " +
                        std::to_string(detail::line_of_offset(text, e.byte)) + ")");
    }
    SpecFile out;

    if (!j.contains("version") || !j["version"].is_number_integer())
        detail::key_error(text, "version", "missing integer schema version");
    out.version = j["version"].get<int>();
    if (out.version != 1) detail::key_error(text, "version", "unsupported schema version");

    if (!j.contains("function") || !j["function"].is_array() || j["function"].size() < 2)
        detail::key_error(text, "function",
                          "expected an array of at least two coefficient polynomials");
    for (auto& p : j["function"]) out.raw_function.push_back(detail::parse_poly(text, "function", p));
    try {
        out.equation = AlgebroidEquation::from_polynomials(out.raw_function);
    } catch (const Error& e) {
        detail::key_error(text, "function", e.what());
    }

    if (j.contains("targets")) {
        if (!j["targets"].is_array()) detail::key_error(text, "targets", "expected an array");
        for (auto& t : j["targets"]) {
            if (!t.is_object() || !t.contains("num"))
                detail::key_error(text, "targets", "each target needs at least a 'num' grid");
            BiPolynomial num = detail::parse_grid(text, "num", t["num"]);
            BiPolynomial den = t.contains("den") ? detail::parse_grid(text, "den", t["den"])
                                                 : BiPolynomial::constant(1);
            std::string label =
                t.contains("label") ? t["label"].get<std::string>()
                                    : ("target" + std::to_string(out.targets.size()));
            bool small = t.contains("asserted_small") ? t["asserted_small"].get<bool>() : true;
            try {
                out.targets.push_back({MapExpr(num, den), label, small});
            } catch (const Error& e) {
                detail::key_error(text, "targets", std::string(e.what()) + " in '" + label + "'");
            }
        }
    }

    if (j.contains("grid")) {
        auto& g = j["grid"];
        for (const char* k : {"r_min", "r_max", "points"})
            if (!g.contains(k)) detail::key_error(text, "grid", std::string("missing '") + k + "'");
        bool geometric = true;
        if (g.contains("spacing")) {
            std::string s = g["spacing"].get<std::string>();
            if (s == "geometric") geometric = true;
            else if (s == "linear") geometric = false;
            else detail::key_error(text, "spacing", "must be 'geometric' or 'linear'");
        }
        try {
            out.grid = RadiusGrid::make(g["r_min"].get<double>(), g["r_max"].get<double>(),
                                        g["points"].get<int>(), geometric);
        } catch (const Error& e) {
            detail::key_error(text, "grid", e.what());
        }
    } else {
        out.grid = RadiusGrid::make(4.0, 64.0, 8, true);
    }

    if (j.contains("epsilon")) {
        if (!j["epsilon"].is_number()) detail::key_error(text, "epsilon", "expected a number");
        out.epsilon = j["epsilon"].get<double>();
    }
    if (j.contains("s")) {
        if (!j["s"].is_number_integer() || j["s"].get<int>() < 1)
            detail::key_error(text, "s", "expected a positive integer");
        out.s = j["s"].get<int>();
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
            detail::key_error(text, "seed", "expected an integer");
        out.seed = j["seed"].get<std::uint64_t>();
    }
    return out;
}

inline SpecFile parse_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("spec error: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_spec_text(ss.str(), path);
}

} // namespace algebroid
