#pragma once

#include <limits>
#include <string>

#include <json.hpp>

#include "osclat/classify.hpp"

namespace osclat {

/**
 * Parsed input document.  Two kinds: "standard" holds lattice data already in
 * normalized position (r, lambda, x, y, xi, optional z0); "generators" holds
 * a raw generating set together with the symplectic scale and an arbitrary
 * rational angle, to be normalized first.
 */
struct SpecDocument {
    enum class Kind { standard, generators };

    Kind                           kind;
    std::optional<LatticeSpec>     spec;
    std::optional<RawLatticeInput> raw;
};

namespace detail {

inline const nlohmann::json& field(const nlohmann::json& j, const char* key,
                                   const std::string& path)
{
    if (!j.is_object())
        throw ParseError(path + ": expected an object");
    auto it = j.find(key);
    if (it == j.end())
        throw ParseError(path + "." + key + ": missing");
    return *it;
}

inline std::string string_field(const nlohmann::json& j, const std::string& path)
{
    if (!j.is_string())
        throw ParseError(path + ": expected a string");
    return j.get<std::string>();
}

inline Integer integer_field(const nlohmann::json& j, const std::string& path)
{
    if (j.is_number_integer())
        return Integer(j.get<std::int64_t>());
    if (j.is_string()) {
        Rational q = parse_rational(j.get<std::string>(), path);
        if (!is_integer(q))
            throw ParseError(path + ": expected an integer");
        return to_integer(q);
    }
    throw ParseError(path + ": expected an integer");
}

inline Rational rational_field(const nlohmann::json& j, const std::string& path)
{
    if (j.is_number_integer())
        return Rational(j.get<std::int64_t>());
    if (j.is_string())
        return parse_rational(j.get<std::string>(), path);
    throw ParseError(path + ": expected a rational as integer or \"p/q\" string");
}

inline Scalar scalar_field(const nlohmann::json& j, const std::string& path)
{
    if (j.is_number_integer())
        return Scalar(Integer(j.get<std::int64_t>()));
    if (j.is_string())
        return parse_scalar(j.get<std::string>(), path);
    throw ParseError(path + ": expected a scalar as integer or literal string");
}

// Angle literals: a bare base name, {"base": name, "k": n}, or (when
// free_multiple is set) {"pi_multiple": "p/q"} for angles outside the
// admissible set.  Returns the multiple of pi.
inline Rational angle_field(const nlohmann::json& j, const std::string& path, bool free_multiple)
{
    if (j.is_string()) {
        auto base = angle_base_from_name(j.get<std::string>());
        if (!base)
            throw ParseError(path + ": unknown angle base \"" + j.get<std::string>() + "\"");
        return angle_base_over_pi(*base);
    }
    if (!j.is_object())
        throw ParseError(path + ": expected an angle literal");
    if (j.contains("pi_multiple")) {
        if (!free_multiple)
            throw ParseError(path + ".pi_multiple: only generator documents may carry a "
                                    "free angle multiple");
        Rational q = rational_field(*j.find("pi_multiple"), path + ".pi_multiple");
        if (q <= 0)
            throw ParseError(path + ".pi_multiple: must be positive");
        return q;
    }
    auto base = angle_base_from_name(string_field(field(j, "base", path), path + ".base"));
    if (!base)
        throw ParseError(path + ".base: unknown angle base");
    Integer k = 0;
    if (j.contains("k"))
        k = integer_field(*j.find("k"), path + ".k");
    if (k < 0)
        throw ParseError(path + ".k: must be nonnegative");
    return angle_base_over_pi(*base) + Rational(k);
}

inline Angle admissible_angle_field(const nlohmann::json& j, const std::string& path)
{
    Rational q = angle_field(j, path, false);
    auto     a = angle_from_over_pi(q);
    if (!a)
        throw ParseError(path + ": " + format_rational(q) + "*pi is not an admissible angle");
    return *a;
}

} // namespace detail

inline SpecDocument parse_spec_document(const nlohmann::json& j)
{
    std::string kind = detail::string_field(detail::field(j, "kind", "document"), "kind");
    if (kind == "standard") {
        Integer r = detail::integer_field(detail::field(j, "r", "document"), "r");
        if (r < 1)
            throw ParseError("r: must be at least 1");
        Angle  lambda = detail::admissible_angle_field(detail::field(j, "lambda", "document"),
                                                       "lambda");
        Scalar x = detail::scalar_field(detail::field(j, "x", "document"), "x");
        Scalar y = detail::scalar_field(detail::field(j, "y", "document"), "y");

        const nlohmann::json* xi = nullptr;
        if (j.contains("xi0"))
            xi = &*j.find("xi0");
        else if (j.contains("xi"))
            xi = &*j.find("xi");
        else
            throw ParseError("xi0: missing");
        if (!xi->is_array() || xi->size() != 2)
            throw ParseError("xi0: expected an array of two rationals");
        Rational xi1 = detail::rational_field((*xi)[0], "xi0[0]");
        Rational xi2 = detail::rational_field((*xi)[1], "xi0[1]");

        Scalar z0(0);
        if (j.contains("z0"))
            z0 = detail::scalar_field(*j.find("z0"), "z0");

        SpecDocument doc;
        doc.kind = SpecDocument::Kind::standard;
        try {
            doc.spec = LatticeSpec{r, StructureMatrix(lambda, x, y), xi1, xi2, z0};
        } catch (const std::invalid_argument& e) {
            throw ParseError(std::string("document: ") + e.what());
        }
        return doc;
    }
    if (kind == "generators") {
        RawLatticeInput raw;
        raw.form_scale =
            detail::rational_field(detail::field(j, "form_scale", "document"), "form_scale");
        if (raw.form_scale == 0)
            throw ParseError("form_scale: must be nonzero");
        raw.lambda_over_pi =
            detail::angle_field(detail::field(j, "lambda", "document"), "lambda", true);
        raw.x = detail::scalar_field(detail::field(j, "x", "document"), "x");
        raw.y = detail::scalar_field(detail::field(j, "y", "document"), "y");
        if (raw.y.sign() <= 0)
            throw ParseError("y: must be positive");

        const nlohmann::json& gens = detail::field(j, "generators", "document");
        if (!gens.is_array() || gens.empty())
            throw ParseError("generators: expected a nonempty array");
        for (std::size_t i = 0; i < gens.size(); ++i) {
            std::string path = "generators[" + std::to_string(i) + "]";
            const auto& row  = gens[i];
            if (!row.is_array() || row.size() != 4)
                throw ParseError(path + ": expected [z, xi1, xi2, t]");
            raw.generators.push_back(RawGenerator{
                detail::scalar_field(row[0], path + "[0]"),
                detail::rational_field(row[1], path + "[1]"),
                detail::rational_field(row[2], path + "[2]"),
                detail::rational_field(row[3], path + "[3]")});
        }
        SpecDocument doc;
        doc.kind = SpecDocument::Kind::generators;
        doc.raw  = std::move(raw);
        return doc;
    }
    throw ParseError("kind: expected \"standard\" or \"generators\"");
}

inline SpecDocument parse_spec_text(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("document is not valid JSON: ") + e.what());
    }
    return parse_spec_document(j);
}

inline nlohmann::ordered_json angle_to_json(const Angle& a)
{
    return nlohmann::ordered_json{{"base", angle_base_name(a.base)}, {"k", a.k}};
}

inline nlohmann::ordered_json integer_to_json(const Integer& v)
{
    if (v >= std::numeric_limits<std::int64_t>::min() &&
        v <= std::numeric_limits<std::int64_t>::max())
        return v.convert_to<std::int64_t>();
    return v.str();
}

inline nlohmann::ordered_json xi_to_json(const Rational& a, const Rational& b)
{
    return nlohmann::ordered_json::array({format_rational(a), format_rational(b)});
}

inline nlohmann::ordered_json mat_to_json(const Mat2& m)
{
    return nlohmann::ordered_json::array(
        {nlohmann::ordered_json::array({format_scalar(m.m11), format_scalar(m.m12)}),
         nlohmann::ordered_json::array({format_scalar(m.m21), format_scalar(m.m22)})});
}

// Canonical data serialized so that the output is itself a valid "standard"
// input document.
inline nlohmann::ordered_json data_to_json(const LatticeData& d)
{
    nlohmann::ordered_json out;
    out["kind"]   = "standard";
    out["r"]      = integer_to_json(d.r);
    out["lambda"] = angle_to_json(d.lambda);
    out["x"]      = format_scalar(d.point.x);
    out["y"]      = format_scalar(d.point.y);
    out["xi0"]    = xi_to_json(d.xi1, d.xi2);
    return out;
}

} // namespace osclat
