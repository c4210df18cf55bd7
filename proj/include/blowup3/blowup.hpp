#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "variety.hpp"

namespace blowup3 {

namespace detail {

inline void ensure_fresh_label(const VarietyModel& m, const std::string& label) {
    if (m.has_h11_label(label) || m.has_h22_label(label) || m.has_curve(label))
        throw std::invalid_argument("duplicate label: " + label);
}

inline std::vector<H22Class> copy_cup(const VarietyModel& m) {
    std::vector<H22Class> cup;
    cup.reserve(m.h11_dim() * m.h11_dim());
    for (std::size_t i = 0; i < m.h11_dim(); ++i)
        for (std::size_t j = 0; j < m.h11_dim(); ++j) cup.push_back(m.cup_entry(i, j));
    return cup;
}

inline RatVector extended(const RatVector& v, std::size_t extra) {
    RatVector out = v;
    out.resize(v.size() + extra);
    return out;
}

}  // namespace detail

/// Returns a copy of the model under a new name.
inline VarietyModel with_name(const VarietyModel& m, std::string name) {
    return VarietyModel(std::move(name), m.h11_basis(), m.h22_basis(), m.pairing_matrix(),
                        detail::copy_cup(m), m.canonical(), m.curves(), m.provenance());
}

/// Returns a copy of the model with one more registered curve.
inline VarietyModel register_curve(const VarietyModel& m, const std::string& name, CurveInfo info) {
    if (m.has_curve(name))
        throw std::invalid_argument("duplicate curve name: " + name);
    auto curves = m.curves();
    curves.emplace_back(name, std::move(info));
    return VarietyModel(m.name(), m.h11_basis(), m.h22_basis(), m.pairing_matrix(),
                        detail::copy_cup(m), m.canonical(), std::move(curves), m.provenance());
}

/// Projective 3-space: H^{1,1} = <H>, H^{2,2} = <H^2>, H.H^2 = 1, K = -4H.
/// The generic line is registered as an effective nef-test generator.
inline VarietyModel projective3() {
    RatMatrix pairing(1, 1);
    pairing(0, 0) = 1;
    std::vector<H22Class> cup{H22Class(RatVector{Rat(1)})};
    H11Class canonical(RatVector{Rat(-4)});
    CurveInfo line{H22Class(RatVector{Rat(1)}), true, true, false, true};
    return VarietyModel("P3", {"H"}, {"H2"}, std::move(pairing), std::move(cup),
                        std::move(canonical), {{"line", std::move(line)}}, {});
}

/// Blowup at a smooth point. Appends the exceptional plane E to the divisor
/// basis and a line L in E to the curve basis, with E.L = -1, E cup E = -L,
/// E orthogonal to all pulled-back classes, and K gaining +2E. Old classes
/// are carried over as total transforms (coordinates extended by zero). The
/// returned model keeps the parent's name.
inline VarietyModel blowup_point(const VarietyModel& m, const std::string& center,
                                 std::string divisor_label = "", std::string line_label = "") {
    if (divisor_label.empty()) divisor_label = "E_" + center;
    if (line_label.empty()) line_label = "L_" + center;
    detail::ensure_fresh_label(m, divisor_label);
    detail::ensure_fresh_label(m, line_label);

    const std::size_t n1 = m.h11_dim(), n2 = m.h22_dim();
    auto h11 = m.h11_basis();
    h11.push_back(divisor_label);
    auto h22 = m.h22_basis();
    h22.push_back(line_label);

    RatMatrix pairing(n1 + 1, n2 + 1);
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j) pairing(i, j) = m.pairing_matrix()(i, j);
    pairing(n1, n2) = -1;

    std::vector<H22Class> cup((n1 + 1) * (n1 + 1), H22Class(n2 + 1));
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n1; ++j)
            cup[i * (n1 + 1) + j] = H22Class(detail::extended(m.cup_entry(i, j).c, 1));
    H22Class e_cup_e(n2 + 1);
    e_cup_e.c[n2] = -1;
    cup[n1 * (n1 + 1) + n1] = std::move(e_cup_e);

    H11Class canonical(detail::extended(m.canonical().c, 1));
    canonical.c[n1] = 2;

    std::vector<std::pair<std::string, CurveInfo>> curves;
    curves.reserve(m.curves().size() + 1);
    for (const auto& [nm, info] : m.curves()) {
        CurveInfo carried = info;
        carried.cls = H22Class(detail::extended(info.cls.c, 1));
        curves.emplace_back(nm, std::move(carried));
    }
    H22Class line_cls(n2 + 1);
    line_cls.c[n2] = 1;
    curves.emplace_back(line_label, CurveInfo{std::move(line_cls), true, true, false, true});

    auto provenance = m.provenance();
    provenance.push_back(BlowupStep{BlowupStep::Kind::Point, center, H22Class(), Rat(0),
                                    divisor_label, line_label});

    return VarietyModel(m.name(), std::move(h11), std::move(h22), std::move(pairing),
                        std::move(cup), std::move(canonical), std::move(curves),
                        std::move(provenance));
}

/// Blowup along a registered smooth rational curve with class gamma. Appends
/// the exceptional divisor E and the fiber class F with
///   E.F = -1,   pull(a) cup E = (a.gamma) F,   E cup E = -pull(gamma) + n F,
/// so E^3 = -n, where n = deg N_{C/X}. When no degree is supplied it is
/// derived as n = -K.gamma - 2, valid for rational centers only. K gains +E.
inline VarietyModel blowup_rational_curve(const VarietyModel& m, const std::string& center,
                                          std::string divisor_label = "",
                                          std::string fiber_label = "",
                                          std::optional<Rat> normal_degree = std::nullopt) {
    const CurveInfo& info = m.curve(center);  // throws for unknown centers
    if (!normal_degree) {
        if (!info.rational)
            throw std::invalid_argument("center '" + center +
                                        "' is not flagged rational; supply a normal degree");
        normal_degree = -m.pair(m.canonical(), info.cls) - 2;
    }
    const Rat n = *normal_degree;
    const H22Class gamma = info.cls;

    if (divisor_label.empty()) divisor_label = "E_" + center;
    if (fiber_label.empty()) fiber_label = "F_" + center;
    detail::ensure_fresh_label(m, divisor_label);
    detail::ensure_fresh_label(m, fiber_label);

    const std::size_t n1 = m.h11_dim(), n2 = m.h22_dim();
    auto h11 = m.h11_basis();
    h11.push_back(divisor_label);
    auto h22 = m.h22_basis();
    h22.push_back(fiber_label);

    RatMatrix pairing(n1 + 1, n2 + 1);
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j) pairing(i, j) = m.pairing_matrix()(i, j);
    pairing(n1, n2) = -1;

    std::vector<H22Class> cup((n1 + 1) * (n1 + 1), H22Class(n2 + 1));
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n1; ++j)
            cup[i * (n1 + 1) + j] = H22Class(detail::extended(m.cup_entry(i, j).c, 1));
    for (std::size_t i = 0; i < n1; ++i) {
        H22Class mixed(n2 + 1);
        mixed.c[n2] = m.pair(m.basis11(i), gamma);
        cup[i * (n1 + 1) + n1] = mixed;
        cup[n1 * (n1 + 1) + i] = std::move(mixed);
    }
    H22Class e_cup_e(detail::extended(gamma.c, 1));
    for (Rat& x : e_cup_e.c) x = -x;
    e_cup_e.c[n2] = n;
    cup[n1 * (n1 + 1) + n1] = std::move(e_cup_e);

    H11Class canonical(detail::extended(m.canonical().c, 1));
    canonical.c[n1] = 1;

    std::vector<std::pair<std::string, CurveInfo>> curves;
    curves.reserve(m.curves().size() + 1);
    for (const auto& [nm, ci] : m.curves()) {
        CurveInfo carried = ci;
        carried.cls = H22Class(detail::extended(ci.cls.c, 1));
        curves.emplace_back(nm, std::move(carried));
    }
    H22Class fiber_cls(n2 + 1);
    fiber_cls.c[n2] = 1;
    curves.emplace_back(fiber_label, CurveInfo{std::move(fiber_cls), true, false, false, true});

    auto provenance = m.provenance();
    provenance.push_back(BlowupStep{BlowupStep::Kind::RationalCurve, center, gamma, n,
                                    divisor_label, fiber_label});

    return VarietyModel(m.name(), std::move(h11), std::move(h22), std::move(pairing),
                        std::move(cup), std::move(canonical), std::move(curves),
                        std::move(provenance));
}

namespace detail {

inline const std::pair<int, int> kCoordinateLinePairs[6] = {
    {0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

inline std::string sigma_name(int i, int j) {
    return "Sigma~_{" + std::to_string(i) + "," + std::to_string(j) + "}";
}

/// Parent bases must be label-for-label prefixes of the blown-up model's.
inline void check_tower(const VarietyModel& blown, const VarietyModel& parent) {
    if (blown.h11_dim() < parent.h11_dim() || blown.h22_dim() < parent.h22_dim())
        throw std::invalid_argument("tower mismatch: blown-up model smaller than parent");
    for (std::size_t i = 0; i < parent.h11_dim(); ++i)
        if (blown.h11_basis()[i] != parent.h11_basis()[i])
            throw std::invalid_argument("tower mismatch in divisor basis at " + parent.h11_basis()[i]);
    for (std::size_t j = 0; j < parent.h22_dim(); ++j)
        if (blown.h22_basis()[j] != parent.h22_basis()[j])
            throw std::invalid_argument("tower mismatch in curve basis at " + parent.h22_basis()[j]);
}

}  // namespace detail

/// Total-transform pullback along a tower of blowups: coordinates extended by
/// zero on the exceptional directions.
inline H11Class blowup_pullback11(const VarietyModel& blown, const VarietyModel& parent,
                                  const H11Class& a) {
    detail::check_tower(blown, parent);
    if (a.dim() != parent.h11_dim())
        throw std::invalid_argument("class dimension does not match parent model");
    return H11Class(detail::extended(a.c, blown.h11_dim() - parent.h11_dim()));
}

inline H22Class blowup_pullback22(const VarietyModel& blown, const VarietyModel& parent,
                                  const H22Class& c) {
    detail::check_tower(blown, parent);
    if (c.dim() != parent.h22_dim())
        throw std::invalid_argument("class dimension does not match parent model");
    return H22Class(detail::extended(c.c, blown.h22_dim() - parent.h22_dim()));
}

/// Pushforward along a tower of blowups: exceptional coordinates are dropped.
inline H11Class blowup_pushforward11(const VarietyModel& blown, const VarietyModel& parent,
                                     const H11Class& a) {
    detail::check_tower(blown, parent);
    if (a.dim() != blown.h11_dim())
        throw std::invalid_argument("class dimension does not match blown-up model");
    return H11Class(RatVector(a.c.begin(), a.c.begin() + static_cast<long>(parent.h11_dim())));
}

inline H22Class blowup_pushforward22(const VarietyModel& blown, const VarietyModel& parent,
                                     const H22Class& c) {
    detail::check_tower(blown, parent);
    if (c.dim() != blown.h22_dim())
        throw std::invalid_argument("class dimension does not match blown-up model");
    return H22Class(RatVector(c.c.begin(), c.c.begin() + static_cast<long>(parent.h22_dim())));
}

/// The blowup X of P^3 at the four coordinate points, with the curve registry
/// used throughout: the generic line, the lines L_i in the exceptional
/// planes, the strict transforms of lines through one point (H^2 - L_i), and
/// the strict transforms Sigma~_{i,j} of the coordinate lines {x_i = x_j = 0}.
/// A coordinate line meets exactly the two complementary coordinate points,
/// so its strict transform is H^2 - L_k - L_l with {k,l} = {0..3} - {i,j}.
/// The 15 nef-test generators are the generic line, the L_i, the H^2 - L_i
/// and the six Sigma~ classes.
inline VarietyModel standard_x() {
    VarietyModel m = projective3();
    for (int i = 0; i < 4; ++i)
        m = blowup_point(m, "e" + std::to_string(i), "E" + std::to_string(i),
                         "L" + std::to_string(i));

    for (int i = 0; i < 4; ++i) {
        H22Class cls = m.h22("H2") - m.h22("L" + std::to_string(i));
        m = register_curve(m, "line_e" + std::to_string(i),
                           CurveInfo{std::move(cls), true, true, false, true});
    }
    for (const auto& [i, j] : detail::kCoordinateLinePairs) {
        int k = -1, l = -1;
        for (int c = 0; c < 4; ++c)
            if (c != i && c != j) (k < 0 ? k : l) = c;
        H22Class cls = m.h22("H2") - m.h22("L" + std::to_string(k)) - m.h22("L" + std::to_string(l));
        m = register_curve(m, detail::sigma_name(i, j), CurveInfo{std::move(cls), true, true, true, true});
    }
    return with_name(m, "X");
}

/// X blown up along the six strict transforms Sigma~_{i,j}. The six centers
/// are pairwise disjoint in X: two coordinate lines of P^3 meet only in a
/// coordinate point, which is blown up, so the strict transforms separate.
/// The order of the six blowups therefore does not matter up to relabeling.
inline VarietyModel standard_z() {
    VarietyModel m = standard_x();
    for (const auto& [i, j] : detail::kCoordinateLinePairs) {
        const std::string suffix = "_{" + std::to_string(i) + "," + std::to_string(j) + "}";
        m = blowup_rational_curve(m, detail::sigma_name(i, j), "E" + suffix, "F" + suffix);
    }
    return with_name(m, "Z");
}

}  // namespace blowup3
