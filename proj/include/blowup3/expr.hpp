#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "io.hpp"
#include "ma.hpp"
#include "pseudo_iso.hpp"
#include "variety.hpp"

namespace blowup3 {

/// Syntax / name-resolution failure in an eval expression (CLI exit 2).
struct EvalParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Degree bookkeeping failure, e.g. pair of two divisor classes (CLI exit 3).
struct EvalTypeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Result of an expression: a scalar (degree 0), a divisor class (degree 1)
/// or a curve class (degree 2).
struct EvalValue {
    int degree = 0;
    Rat scalar;
    RatVector coeffs;
};

/// Minimal prefix/functional expression language over one model's named
/// classes:
///   expr    := call | literal
///   call    := name '(' expr { ',' expr } ')'
///   name    := pair | cup | triple | cube | pullback | pushforward
///   literal := linear combination of basis labels ("2H-E0-E1-E2-E3", "0")
/// pair : (1,2) -> 0, cup : (1,1) -> 2, triple : (1,1,1) -> 0,
/// cube(a) = triple(a,a,a); pullback/pushforward apply a map's action in the
/// matching degree and require one. Literals resolve against the divisor
/// basis first, then the curve basis.
class Evaluator {
public:
    explicit Evaluator(const VarietyModel& model, const PseudoIsoModel* map = nullptr)
        : model_(model), map_(map) {}

    EvalValue eval(std::string_view text) const {
        std::size_t pos = 0;
        EvalValue v = parse_expr(text, pos);
        detail::skip_ws(text, pos);
        if (pos != text.size())
            throw EvalParseError("trailing input in expression: " + std::string(text.substr(pos)));
        return v;
    }

    std::string format(const EvalValue& v) const {
        switch (v.degree) {
            case 0: return rat_str(v.scalar);
            case 1: return format_linear_combo(model_.h11_basis(), v.coeffs);
            default: return format_linear_combo(model_.h22_basis(), v.coeffs);
        }
    }

    Json to_json(const EvalValue& v) const {
        Json j;
        j["degree"] = v.degree;
        if (v.degree == 0) {
            j["value"] = rat_str(v.scalar);
        } else {
            j["basis"] = v.degree == 1 ? model_.h11_basis() : model_.h22_basis();
            j["coefficients"] = vec_to_json(v.coeffs);
            j["value"] = format(v);
        }
        return j;
    }

private:
    EvalValue parse_expr(std::string_view s, std::size_t& pos) const {
        detail::skip_ws(s, pos);
        std::size_t probe = pos;
        const std::string name = detail::scan_label(s, probe);
        if (!name.empty()) {
            detail::skip_ws(s, probe);
            if (probe < s.size() && s[probe] == '(' && is_function(name)) {
                pos = probe + 1;
                std::vector<EvalValue> args;
                while (true) {
                    args.push_back(parse_expr(s, pos));
                    detail::skip_ws(s, pos);
                    if (pos < s.size() && s[pos] == ',') {
                        ++pos;
                        continue;
                    }
                    if (pos < s.size() && s[pos] == ')') {
                        ++pos;
                        break;
                    }
                    throw EvalParseError("expected ',' or ')' in arguments of " + name);
                }
                return apply(name, args);
            }
        }
        return parse_literal(s, pos);
    }

    /// A literal runs to the next top-level ',' or ')'; braces inside labels
    /// (e.g. "E_{0,1}") shield their commas.
    EvalValue parse_literal(std::string_view s, std::size_t& pos) const {
        std::size_t end = pos;
        int brace_depth = 0;
        while (end < s.size()) {
            const char c = s[end];
            if (c == '{') ++brace_depth;
            if (c == '}') --brace_depth;
            if (brace_depth == 0 && (c == ',' || c == ')' || c == '(')) break;
            ++end;
        }
        const std::string_view lit = s.substr(pos, end - pos);
        if (end < s.size() && s[end] == '(')
            throw EvalParseError("unknown function in expression: " + std::string(lit));
        pos = end;
        EvalValue v;
        try {
            v.coeffs = parse_linear_combo(model_.h11_basis(), lit);
            v.degree = 1;
            return v;
        } catch (const UnknownLabelError&) {
            // fall through to the curve basis
        } catch (const std::invalid_argument& e) {
            throw EvalParseError(e.what());
        }
        try {
            v.coeffs = parse_linear_combo(model_.h22_basis(), lit);
            v.degree = 2;
            return v;
        } catch (const std::invalid_argument& e) {
            throw EvalParseError(e.what());
        }
    }

    static bool is_function(const std::string& name) {
        return name == "pair" || name == "cup" || name == "triple" || name == "cube" ||
               name == "pullback" || name == "pushforward";
    }

    EvalValue apply(const std::string& name, std::vector<EvalValue>& args) const {
        auto arity = [&](std::size_t n) {
            if (args.size() != n)
                throw EvalParseError(name + " expects " + std::to_string(n) + " argument(s)");
        };
        EvalValue out;
        if (name == "pair") {
            arity(2);
            require_degree(name, args[0], 1);
            require_degree(name, args[1], 2);
            out.degree = 0;
            out.scalar = model_.pair(H11Class(args[0].coeffs), H22Class(args[1].coeffs));
            return out;
        }
        if (name == "cup") {
            arity(2);
            require_degree(name, args[0], 1);
            require_degree(name, args[1], 1);
            out.degree = 2;
            out.coeffs = model_.cup(H11Class(args[0].coeffs), H11Class(args[1].coeffs)).c;
            return out;
        }
        if (name == "triple" || name == "cube") {
            arity(name == "cube" ? 1 : 3);
            for (auto& a : args) require_degree(name, a, 1);
            const H11Class a(args[0].coeffs);
            const H11Class b(args.size() > 1 ? H11Class(args[1].coeffs) : a);
            const H11Class c(args.size() > 2 ? H11Class(args[2].coeffs) : a);
            out.degree = 0;
            out.scalar = model_.triple(a, b, c);
            return out;
        }
        // pullback / pushforward
        arity(1);
        if (map_ == nullptr)
            throw EvalParseError(name + " requires a map (--map)");
        if (args[0].degree == 1) {
            const H11Class t(args[0].coeffs);
            out.degree = 1;
            out.coeffs = (name == "pullback" ? map_->pullback11(t) : map_->pushforward11(t)).c;
            return out;
        }
        if (args[0].degree == 2) {
            const H22Class t(args[0].coeffs);
            out.degree = 2;
            out.coeffs = (name == "pullback" ? map_->pullback22(t) : map_->pushforward22(t)).c;
            return out;
        }
        throw EvalTypeError(name + " expects a class, not a scalar");
    }

    static void require_degree(const std::string& fn, const EvalValue& v, int degree) {
        if (v.degree != degree)
            throw EvalTypeError(fn + " expects a degree-" + std::to_string(degree) +
                                " argument, got degree " + std::to_string(v.degree));
    }

    const VarietyModel& model_;
    const PseudoIsoModel* map_;
};

}  // namespace blowup3
