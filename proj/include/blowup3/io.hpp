#pragma once

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "blowup.hpp"
#include "pseudo_iso.hpp"
#include "variety.hpp"

namespace blowup3 {

// Field order in emitted documents is fixed, so canonical files are
// byte-stable and diffable.
using Json = nlohmann::ordered_json;

struct UnknownLabelError : std::invalid_argument {
    explicit UnknownLabelError(const std::string& lbl)
        : std::invalid_argument("unknown basis label: " + lbl), label(lbl) {}
    std::string label;
};

// ---------------------------------------------------------------------------
// class literals: "2H-E0-E1-E2-E3", "3/2H+L0", "0"
// ---------------------------------------------------------------------------

namespace detail {

inline void skip_ws(std::string_view s, std::size_t& pos) {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
}

/// Identifier: letter, then letters/digits/_/~, optionally ending in one
/// brace group, e.g. "H2", "line_e0", "Sigma~_{0,1}", "E_{0,1}".
inline std::string scan_label(std::string_view s, std::size_t& pos) {
    std::size_t start = pos;
    if (pos >= s.size() || !std::isalpha(static_cast<unsigned char>(s[pos]))) return "";
    ++pos;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_' ||
                              s[pos] == '~'))
        ++pos;
    if (pos < s.size() && s[pos] == '{') {
        while (pos < s.size() && s[pos] != '}') ++pos;
        if (pos == s.size())
            throw std::invalid_argument("unterminated '{' in label: " + std::string(s.substr(start)));
        ++pos;
    }
    return std::string(s.substr(start, pos - start));
}

inline bool scan_rat(std::string_view s, std::size_t& pos, Rat& out) {
    std::size_t p = pos;
    std::size_t digits_start = p;
    while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
    if (p == digits_start) return false;
    BigInt num(std::string(s.substr(digits_start, p - digits_start)));
    BigInt den(1);
    if (p < s.size() && s[p] == '/') {
        std::size_t q = p + 1;
        std::size_t den_start = q;
        while (q < s.size() && std::isdigit(static_cast<unsigned char>(s[q]))) ++q;
        if (q > den_start) {
            den = BigInt(std::string(s.substr(den_start, q - den_start)));
            p = q;
        }
    }
    out = make_rat(std::move(num), std::move(den));
    pos = p;
    return true;
}

}  // namespace detail

/// Parses a linear combination of basis labels with rational coefficients.
/// The single term "0" denotes the zero class; any other bare number is an
/// error. Unknown labels raise UnknownLabelError so callers can retry
/// against the other basis.
inline RatVector parse_linear_combo(const std::vector<std::string>& labels, std::string_view text) {
    RatVector out(labels.size());
    auto index_of = [&](const std::string& lbl) -> std::size_t {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == lbl) return i;
        throw UnknownLabelError(lbl);
    };

    std::size_t pos = 0;
    detail::skip_ws(text, pos);
    if (pos == text.size()) throw std::invalid_argument("empty class literal");
    bool first = true;
    while (pos < text.size()) {
        int sign = 1;
        detail::skip_ws(text, pos);
        if (pos == text.size()) break;
        if (text[pos] == '+' || text[pos] == '-') {
            sign = text[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (!first) {
            throw std::invalid_argument("expected '+' or '-' in class literal at: " +
                                        std::string(text.substr(pos)));
        }
        detail::skip_ws(text, pos);
        Rat coeff(1);
        const bool have_coeff = detail::scan_rat(text, pos, coeff);
        detail::skip_ws(text, pos);
        if (pos < text.size() && text[pos] == '*') {
            ++pos;
            detail::skip_ws(text, pos);
        }
        const std::string label = detail::scan_label(text, pos);
        if (label.empty()) {
            if (!have_coeff)
                throw std::invalid_argument("expected term in class literal at: " +
                                            std::string(text.substr(pos)));
            if (coeff != 0)
                throw std::invalid_argument("numeric term without basis label in class literal");
        } else {
            out[index_of(label)] += sign * coeff;
        }
        first = false;
        detail::skip_ws(text, pos);
    }
    return out;
}

/// Renders a coefficient vector back into literal form, e.g.
/// "2H - E0 - E1 - E2 - E3"; the zero class prints as "0".
inline std::string format_linear_combo(const std::vector<std::string>& labels, const RatVector& v) {
    std::string out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (v[i] == 0) continue;
        const bool neg = v[i] < 0;
        const Rat mag = neg ? Rat(-v[i]) : v[i];
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        if (mag != 1) out += rat_str(mag);
        out += labels[i];
    }
    return out.empty() ? "0" : out;
}

inline H11Class parse_h11(const VarietyModel& m, std::string_view text) {
    return H11Class(parse_linear_combo(m.h11_basis(), text));
}

inline H22Class parse_h22(const VarietyModel& m, std::string_view text) {
    return H22Class(parse_linear_combo(m.h22_basis(), text));
}

inline std::string format_h11(const VarietyModel& m, const H11Class& a) {
    return format_linear_combo(m.h11_basis(), a.c);
}

inline std::string format_h22(const VarietyModel& m, const H22Class& c) {
    return format_linear_combo(m.h22_basis(), c.c);
}

// ---------------------------------------------------------------------------
// JSON schema
// ---------------------------------------------------------------------------

inline Json rat_to_json(const Rat& r) { return rat_str(r); }

inline Rat rat_from_json(const Json& j) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_string()) return rat_parse(j.get<std::string>());
    throw std::invalid_argument("expected a rational string, got: " + j.dump());
}

inline Json vec_to_json(const RatVector& v) {
    Json a = Json::array();
    for (const Rat& x : v) a.push_back(rat_to_json(x));
    return a;
}

inline RatVector vec_from_json(const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("expected an array of rationals");
    RatVector v;
    v.reserve(j.size());
    for (const auto& x : j) v.push_back(rat_from_json(x));
    return v;
}

inline Json matrix_to_json(const RatMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rat_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline RatMatrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("expected a nonempty matrix");
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].size();
    RatMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            throw std::invalid_argument("ragged matrix rows");
        for (std::size_t c = 0; c < cols; ++c) m(i, c) = rat_from_json(j[i][c]);
    }
    return m;
}

inline Json model_to_json(const VarietyModel& m) {
    Json j;
    j["name"] = m.name();
    j["h11_basis"] = m.h11_basis();
    j["h22_basis"] = m.h22_basis();
    j["pairing"] = matrix_to_json(m.pairing_matrix());
    Json cup = Json::array();
    for (std::size_t i = 0; i < m.h11_dim(); ++i)
        for (std::size_t k = i; k < m.h11_dim(); ++k) {
            Json entry;
            entry["i"] = i;
            entry["j"] = k;
            entry["result"] = vec_to_json(m.cup_entry(i, k).c);
            cup.push_back(std::move(entry));
        }
    j["cup"] = std::move(cup);
    j["canonical"] = vec_to_json(m.canonical().c);
    Json curves = Json::object();
    for (const auto& [name, info] : m.curves()) {
        Json c;
        c["class"] = vec_to_json(info.cls.c);
        c["effective"] = info.effective;
        c["nef_generator"] = info.nef_generator;
        c["indeterminacy_eligible"] = info.indeterminacy_eligible;
        c["rational"] = info.rational;
        curves[name] = std::move(c);
    }
    j["curves"] = std::move(curves);
    Json prov = Json::array();
    for (const auto& step : m.provenance()) {
        Json s;
        s["kind"] = step.kind == BlowupStep::Kind::Point ? "point" : "curve";
        s["center"] = step.center_name;
        if (step.kind == BlowupStep::Kind::RationalCurve) {
            s["center_class"] = vec_to_json(step.center_class.c);
            s["normal_degree"] = rat_to_json(step.normal_degree);
        }
        s["new_divisor"] = step.new_divisor;
        s["new_curve"] = step.new_curve;
        prov.push_back(std::move(s));
    }
    j["provenance"] = std::move(prov);
    return j;
}

inline VarietyModel model_from_json(const Json& j, bool enforce_validation = true) {
    const auto h11 = j.at("h11_basis").get<std::vector<std::string>>();
    const auto h22 = j.at("h22_basis").get<std::vector<std::string>>();
    RatMatrix pairing = matrix_from_json(j.at("pairing"));

    std::vector<H22Class> cup(h11.size() * h11.size(), H22Class(h22.size()));
    std::vector<bool> seen(h11.size() * h11.size(), false);
    for (const auto& entry : j.at("cup")) {
        const std::size_t i = entry.at("i").get<std::size_t>();
        const std::size_t k = entry.at("j").get<std::size_t>();
        if (i >= h11.size() || k >= h11.size())
            throw std::invalid_argument("cup entry index out of range");
        H22Class val(vec_from_json(entry.at("result")));
        cup[i * h11.size() + k] = val;
        seen[i * h11.size() + k] = true;
        if (!seen[k * h11.size() + i]) {
            cup[k * h11.size() + i] = std::move(val);
            seen[k * h11.size() + i] = true;
        }
    }
    for (bool s : seen)
        if (!s) throw std::invalid_argument("cup table is missing entries");

    H11Class canonical(vec_from_json(j.at("canonical")));
    std::vector<std::pair<std::string, CurveInfo>> curves;
    for (const auto& [name, c] : j.at("curves").items()) {
        CurveInfo info;
        info.cls = H22Class(vec_from_json(c.at("class")));
        info.effective = c.value("effective", false);
        info.nef_generator = c.value("nef_generator", false);
        info.indeterminacy_eligible = c.value("indeterminacy_eligible", false);
        info.rational = c.value("rational", true);
        curves.emplace_back(name, std::move(info));
    }
    std::vector<BlowupStep> prov;
    for (const auto& s : j.value("provenance", Json::array())) {
        BlowupStep step;
        const std::string kind = s.at("kind").get<std::string>();
        if (kind == "point")
            step.kind = BlowupStep::Kind::Point;
        else if (kind == "curve")
            step.kind = BlowupStep::Kind::RationalCurve;
        else
            throw std::invalid_argument("unknown provenance kind: " + kind);
        step.center_name = s.at("center").get<std::string>();
        if (step.kind == BlowupStep::Kind::RationalCurve) {
            step.center_class = H22Class(vec_from_json(s.at("center_class")));
            step.normal_degree = rat_from_json(s.at("normal_degree"));
        }
        step.new_divisor = s.at("new_divisor").get<std::string>();
        step.new_curve = s.at("new_curve").get<std::string>();
        prov.push_back(std::move(step));
    }

    VarietyModel m(j.at("name").get<std::string>(), h11, h22, std::move(pairing), std::move(cup),
                   std::move(canonical), std::move(curves), std::move(prov));
    if (enforce_validation) {
        const ValidationReport rep = m.validate();
        if (!rep.all_pass()) {
            std::string what = "model file fails validation:";
            for (const auto& c : rep.checks)
                if (!c.pass) what += " [" + c.name + "] " + c.detail;
            throw std::invalid_argument(what);
        }
    }
    return m;
}

inline Json map_to_json(const PseudoIsoModel& f) {
    Json j;
    j["name"] = f.name();
    j["source"] = f.source().name();
    j["target"] = f.target().name();
    j["m11"] = matrix_to_json(f.m11());
    if (f.has_m22()) j["m22"] = matrix_to_json(f.m22());
    j["involution"] = f.involution();
    j["indeterminacy_forward"] = f.indeterminacy_forward();
    j["indeterminacy_backward"] = f.indeterminacy_backward();
    return j;
}

/// Binds a map file to already-loaded source/target models; the file refers
/// to models by name. The PseudoIsoModel constructor enforces the shape and
/// involution invariants.
inline PseudoIsoModel map_from_json(const Json& j, VarietyModel source, VarietyModel target) {
    if (j.at("source").get<std::string>() != source.name())
        throw std::invalid_argument("map file expects source model '" +
                                    j.at("source").get<std::string>() + "', got '" +
                                    source.name() + "'");
    if (j.at("target").get<std::string>() != target.name())
        throw std::invalid_argument("map file expects target model '" +
                                    j.at("target").get<std::string>() + "', got '" +
                                    target.name() + "'");
    std::optional<RatMatrix> m22;
    if (j.contains("m22")) m22 = matrix_from_json(j.at("m22"));
    return PseudoIsoModel(j.at("name").get<std::string>(), std::move(source), std::move(target),
                          matrix_from_json(j.at("m11")), std::move(m22),
                          j.value("involution", false),
                          j.value("indeterminacy_forward", std::vector<std::string>{}),
                          j.value("indeterminacy_backward", std::vector<std::string>{}));
}

/// Canonical on-disk form: two-space indent, trailing newline.
inline std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// built-ins
// ---------------------------------------------------------------------------

inline bool is_builtin_model(std::string_view name) {
    return name == "P3" || name == "X" || name == "Z";
}

inline bool is_builtin_map(std::string_view name) { return name == "JX"; }

inline VarietyModel builtin_model(std::string_view name) {
    if (name == "P3") return projective3();
    if (name == "X") return standard_x();
    if (name == "Z") return standard_z();
    throw std::invalid_argument("unknown built-in model: " + std::string(name));
}

inline PseudoIsoModel builtin_map(std::string_view name) {
    if (name == "JX") return standard_jx();
    throw std::invalid_argument("unknown built-in map: " + std::string(name));
}

/// Serialized built-in model or map file, byte-stable across runs.
inline std::string builtin_file(std::string_view name) {
    if (is_builtin_model(name)) return canonical_dump(model_to_json(builtin_model(name)));
    if (is_builtin_map(name)) return canonical_dump(map_to_json(builtin_map(name)));
    throw std::invalid_argument("unknown built-in: " + std::string(name));
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace blowup3
