#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "blowup.hpp"
#include "pseudo_iso.hpp"
#include "variety.hpp"

namespace blowup3 {

/// Outcome of a discrepancy/defect computation: the defect class, the
/// per-curve residual table that governs it, and the vanishing verdict
/// (true exactly when the defect class is zero).
struct DefectReport {
    H22Class defect_class;
    std::vector<std::pair<std::string, Rat>> per_curve_residuals;
    bool vanishes = false;
    std::string context;
};

inline DefectReport make_defect_report(H22Class defect,
                                       std::vector<std::pair<std::string, Rat>> residuals,
                                       std::string context) {
    DefectReport rep;
    rep.vanishes = defect.is_zero();
    rep.defect_class = std::move(defect);
    rep.per_curve_residuals = std::move(residuals);
    rep.context = std::move(context);
    return rep;
}

/// Nef verdict against a model's declared generator list; honestly scoped
/// to that list, not a cone certificate. Carries the first violating
/// generator when negative.
struct NefVerdict {
    bool is_nef_on_generators = false;
    std::optional<std::pair<std::string, Rat>> witness;
};

/// The residuals theta . C over the curves C in I(f^{-1}); the map's
/// Monge-Ampere operator is well-defined independently of the smoothing
/// choice exactly when all of them vanish.
inline std::vector<std::pair<std::string, Rat>> condition_c_residual(const PseudoIsoModel& f,
                                                                     const H11Class& theta) {
    std::vector<std::pair<std::string, Rat>> out;
    out.reserve(f.indeterminacy_backward().size());
    for (const auto& name : f.indeterminacy_backward())
        out.emplace_back(name, f.target().pair(theta, f.target().curve(name).cls));
    return out;
}

inline bool condition_c_holds(const std::vector<std::pair<std::string, Rat>>& residuals) {
    for (const auto& [name, r] : residuals)
        if (r != 0) return false;
    return true;
}

/// Basis of { theta : theta . C = 0 for all C in I(f^{-1}) }, normalized to
/// primitive integer vectors. An empty indeterminacy list leaves the whole
/// space.
inline std::vector<H11Class> condition_c_kernel(const PseudoIsoModel& f) {
    const VarietyModel& y = f.target();
    RatMatrix rows(f.indeterminacy_backward().size(), y.h11_dim());
    for (std::size_t r = 0; r < f.indeterminacy_backward().size(); ++r) {
        const H22Class& c = y.curve(f.indeterminacy_backward()[r]).cls;
        for (std::size_t i = 0; i < y.h11_dim(); ++i)
            rows(r, i) = y.pair(y.basis11(i), c);
    }
    std::vector<H11Class> out;
    for (RatVector& v : kernel_basis(rows)) out.emplace_back(std::move(v));
    return out;
}

/// Blowdown defect of one curve blowup pi : blown -> parent with fiber F and
/// center D:
///   pi_*(pi^* pi_*(alpha) cup beta) - pi_*(alpha cup beta)
///     = (alpha.F)(beta.F) [D].
/// Both sides are computed — the right side from the closed formula, the
/// left through the ring tables — and must agree exactly; a mismatch means
/// the blown-up model was not built from this parent.
inline DefectReport blowdown_defect(const VarietyModel& blown, const VarietyModel& parent,
                                    const H11Class& alpha, const H11Class& beta) {
    if (blown.provenance().empty())
        throw std::invalid_argument("blowdown_defect: blown-up model has no provenance");
    const BlowupStep& step = blown.provenance().back();
    if (step.kind != BlowupStep::Kind::RationalCurve)
        throw std::invalid_argument("blowdown_defect: last step is not a curve blowup");
    if (blown.h11_dim() != parent.h11_dim() + 1 || blown.h22_dim() != parent.h22_dim() + 1)
        throw std::invalid_argument("blowdown_defect: blown-up model is not parent plus one step");
    detail::check_tower(blown, parent);
    if (!parent.has_curve(step.center_name) || parent.curve(step.center_name).cls != step.center_class)
        throw std::invalid_argument("blowdown_defect: step center not registered in parent");

    const H22Class fiber = blown.h22(step.new_curve);
    const Rat af = blown.pair(alpha, fiber);
    const Rat bf = blown.pair(beta, fiber);
    const H22Class formula = (af * bf) * step.center_class;

    const H11Class alpha_down_up =
        blowup_pullback11(blown, parent, blowup_pushforward11(blown, parent, alpha));
    const H22Class ring =
        blowup_pushforward22(blown, parent, blown.cup(alpha_down_up, beta)) -
        blowup_pushforward22(blown, parent, blown.cup(alpha, beta));
    if (ring != formula)
        throw std::logic_error(
            "blowdown_defect: ring computation disagrees with the closed formula; "
            "the blown-up model's tables are inconsistent with this parent");

    return make_defect_report(formula, {{step.center_name, af * bf}}, "blowdown");
}

/// The pullback-product discrepancy
///   f^*(theta1) cup f^*(theta2) - f^*(theta1 cup theta2)
/// as a class on the source, with the Condition (C) residuals of theta1
/// attached: when those all vanish the defect vanishes for every theta2.
inline DefectReport pullback_product_defect(const PseudoIsoModel& f, const H11Class& theta1,
                                            const H11Class& theta2) {
    const H22Class lhs = f.source().cup(f.pullback11(theta1), f.pullback11(theta2));
    const H22Class rhs = f.pullback22(f.target().cup(theta1, theta2));
    return make_defect_report(lhs - rhs, condition_c_residual(f, theta1), "pullback-product");
}

/// Total mass of MA(f^*(theta)): the triple self-intersection of the
/// pulled-back class on the source.
inline Rat ma_total_mass(const PseudoIsoModel& f, const H11Class& theta) {
    const H11Class pulled = f.pullback11(theta);
    return f.source().triple(pulled, pulled, pulled);
}

/// Checks theta . c >= 0 against every declared nef-test generator, in
/// registry order; reports the first violator.
inline NefVerdict nef_check(const VarietyModel& m, const H11Class& theta) {
    bool any = false;
    for (const auto& [name, info] : m.curves()) {
        if (!info.nef_generator) continue;
        any = true;
        const Rat v = m.pair(theta, info.cls);
        if (v < 0) return NefVerdict{false, std::make_pair(name, v)};
    }
    if (!any)
        throw std::invalid_argument("model '" + m.name() + "' declares no nef-test generators");
    return NefVerdict{true, std::nullopt};
}

}  // namespace blowup3
