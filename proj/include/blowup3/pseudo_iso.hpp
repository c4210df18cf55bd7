#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "blowup.hpp"
#include "linalg.hpp"
#include "variety.hpp"

namespace blowup3 {

/// Cohomological action of a pseudo-isomorphism f : source -> target.
/// m11 is the pullback on H^{1,1}: column j holds the image of the j-th
/// target basis divisor in source coordinates. m22 is the pullback on
/// H^{2,2}; for involutions it is derived from m11 by the duality
/// pair(x, m22 y) = pair(m11 x, y), i.e. m22 = P^{-1} m11^T P.
class PseudoIsoModel {
public:
    PseudoIsoModel(std::string name, VarietyModel source, VarietyModel target, RatMatrix m11,
                   std::optional<RatMatrix> m22, bool involution,
                   std::vector<std::string> indeterminacy_forward,
                   std::vector<std::string> indeterminacy_backward)
        : name_(std::move(name)),
          source_(std::move(source)),
          target_(std::move(target)),
          m11_(std::move(m11)),
          m22_(std::move(m22)),
          involution_(involution),
          indet_fwd_(std::move(indeterminacy_forward)),
          indet_bwd_(std::move(indeterminacy_backward)) {
        if (m11_.rows() != source_.h11_dim() || m11_.cols() != target_.h11_dim())
            throw std::invalid_argument("m11 shape does not match models");
        if (m22_ && (m22_->rows() != source_.h22_dim() || m22_->cols() != target_.h22_dim()))
            throw std::invalid_argument("m22 shape does not match models");
        for (const auto& c : indet_fwd_)
            if (!source_.has_curve(c))
                throw std::invalid_argument("forward indeterminacy curve not registered: " + c);
        for (const auto& c : indet_bwd_)
            if (!target_.has_curve(c))
                throw std::invalid_argument("backward indeterminacy curve not registered: " + c);
        if (involution_) {
            if (source_ != target_)
                throw std::invalid_argument("involution requires source = target");
            if (m11_ * m11_ != RatMatrix::identity(m11_.rows()))
                throw std::invalid_argument("involution requires m11^2 = identity");
            if (!m22_) m22_ = duality_pullback22(source_, m11_);
            if (*m22_ * *m22_ != RatMatrix::identity(m22_->rows()))
                throw std::invalid_argument("involution requires m22^2 = identity");
        }
    }

    const std::string& name() const { return name_; }
    const VarietyModel& source() const { return source_; }
    const VarietyModel& target() const { return target_; }
    const RatMatrix& m11() const { return m11_; }
    bool has_m22() const { return m22_.has_value(); }
    bool involution() const { return involution_; }
    const std::vector<std::string>& indeterminacy_forward() const { return indet_fwd_; }
    const std::vector<std::string>& indeterminacy_backward() const { return indet_bwd_; }

    const RatMatrix& m22() const {
        if (!m22_)
            throw std::domain_error("map '" + name_ + "' carries no H^{2,2} pullback matrix");
        return *m22_;
    }

    /// f^* on H^{1,1}: target class to source class.
    H11Class pullback11(const H11Class& theta) const {
        if (theta.dim() != target_.h11_dim())
            throw std::invalid_argument("pullback11: class dimension does not match target");
        return H11Class(m11_ * theta.c);
    }

    /// f^* on H^{2,2}.
    H22Class pullback22(const H22Class& c) const {
        if (c.dim() != target_.h22_dim())
            throw std::invalid_argument("pullback22: class dimension does not match target");
        return H22Class(m22() * c.c);
    }

    /// f_* = (f^{-1})^*: source class to target class, through the inverse of
    /// the pullback matrix. For involutions this equals the pullback.
    H11Class pushforward11(const H11Class& theta) const {
        if (theta.dim() != source_.h11_dim())
            throw std::invalid_argument("pushforward11: class dimension does not match source");
        if (involution_) return H11Class(m11_ * theta.c);
        return H11Class(mat_inverse(m11_) * theta.c);
    }

    H22Class pushforward22(const H22Class& c) const {
        if (c.dim() != source_.h22_dim())
            throw std::invalid_argument("pushforward22: class dimension does not match source");
        if (involution_) return H22Class(m22() * c.c);
        return H22Class(mat_inverse(m22()) * c.c);
    }

    static RatMatrix duality_pullback22(const VarietyModel& m, const RatMatrix& m11) {
        const RatMatrix& p = m.pairing_matrix();
        return mat_inverse(p) * m11.transpose() * p;
    }

    friend bool operator==(const PseudoIsoModel& a, const PseudoIsoModel& b) {
        return a.name_ == b.name_ && a.source_ == b.source_ && a.target_ == b.target_ &&
               a.m11_ == b.m11_ && a.m22_ == b.m22_ && a.involution_ == b.involution_ &&
               a.indet_fwd_ == b.indet_fwd_ && a.indet_bwd_ == b.indet_bwd_;
    }

private:
    std::string name_;
    VarietyModel source_, target_;
    RatMatrix m11_;
    std::optional<RatMatrix> m22_;
    bool involution_ = false;
    std::vector<std::string> indet_fwd_, indet_bwd_;
};

/// The H^{2,2} pullback forced by duality. Restricted to involutions: the
/// duality argument rests on the map squaring to the identity, so for
/// anything else m22 must be supplied explicitly.
inline RatMatrix derive_pullback22(const PseudoIsoModel& f) {
    if (!f.involution())
        throw std::domain_error("derive_pullback22 is only valid for involutions");
    return PseudoIsoModel::duality_pullback22(f.source(), f.m11());
}

/// The Cremona involution [x0:x1:x2:x3] -> [1/x0:1/x1:1/x2:1/x3] lifted to X.
/// Pullback on divisors: H -> 3H - 2(E0+E1+E2+E3), Ei -> H - sum of the
/// other three E's. Indeterminate exactly along the six Sigma~ curves on
/// both sides.
inline PseudoIsoModel standard_jx() {
    VarietyModel x = standard_x();
    VarietyModel x_copy = x;
    RatMatrix m11 = RatMatrix::from_rows({{3, 1, 1, 1, 1},
                                          {-2, 0, -1, -1, -1},
                                          {-2, -1, 0, -1, -1},
                                          {-2, -1, -1, 0, -1},
                                          {-2, -1, -1, -1, 0}});
    std::vector<std::string> sigmas;
    for (const auto& [i, j] : detail::kCoordinateLinePairs)
        sigmas.push_back(detail::sigma_name(i, j));
    std::vector<std::string> sigmas_copy = sigmas;
    return PseudoIsoModel("JX", std::move(x), std::move(x_copy), std::move(m11), std::nullopt,
                          true, std::move(sigmas), std::move(sigmas_copy));
}

/// Identity pseudo-isomorphism of a model; handy as a degenerate fixture.
inline PseudoIsoModel identity_map(const VarietyModel& m) {
    return PseudoIsoModel("id_" + m.name(), m, m, RatMatrix::identity(m.h11_dim()),
                          RatMatrix::identity(m.h22_dim()), true, {}, {});
}

/// Resolution Z of the graph of f : X -> Y, given by the two pullbacks
/// pi^* : H^{1,1}(X) -> H^{1,1}(Z) and h^* : H^{1,1}(Y) -> H^{1,1}(Z)
/// together with the pi-exceptional divisor labels of Z. The non-exceptional
/// part of Z's divisor basis must be pi^* of X's basis, in order, so that
/// the pushforward killing the exceptional labels inverts pi^*.
struct ResolutionData {
    VarietyModel z;
    RatMatrix pi_pullback;
    RatMatrix h_pullback;
    std::vector<std::string> exceptional_labels;

    void validate() const {
        if (pi_pullback.rows() != z.h11_dim() || h_pullback.rows() != z.h11_dim())
            throw std::invalid_argument("resolution pullbacks must land in H^{1,1}(Z)");
        std::vector<bool> exceptional(z.h11_dim(), false);
        for (const auto& label : exceptional_labels) {
            const std::size_t idx = z.h11_index(label);
            if (exceptional[idx])
                throw std::invalid_argument("duplicate exceptional label: " + label);
            exceptional[idx] = true;
        }
        std::vector<std::size_t> kept;
        for (std::size_t i = 0; i < z.h11_dim(); ++i)
            if (!exceptional[i]) kept.push_back(i);
        if (kept.size() != pi_pullback.cols())
            throw std::invalid_argument("non-exceptional basis size does not match pi^* domain");
        for (std::size_t r = 0; r < kept.size(); ++r)
            for (std::size_t c = 0; c < pi_pullback.cols(); ++c)
                if (pi_pullback(kept[r], c) != Rat(r == c ? 1 : 0))
                    throw std::invalid_argument(
                        "pushforward killing exceptional labels does not invert pi^*");
    }
};

/// Solves pi^*(f^*(theta)) - h^*(theta) = sum_j lambda_j [V_j] over the
/// exceptional divisor classes [V_j] of the resolution, which are linearly
/// independent so the solution is unique. Inconsistency (a difference not
/// supported on the exceptional labels) signals bad resolution data.
inline std::vector<std::pair<std::string, Rat>> exceptional_decomposition(
    const ResolutionData& res, const RatMatrix& f_pullback, const H11Class& theta) {
    res.validate();
    if (f_pullback.rows() != res.pi_pullback.cols())
        throw std::invalid_argument("f pullback does not land in pi^*'s domain");
    if (theta.dim() != f_pullback.cols() || theta.dim() != res.h_pullback.cols())
        throw std::invalid_argument("theta dimension does not match the map pullbacks");

    const RatVector diff =
        vec_sub(res.pi_pullback * (f_pullback * theta.c), res.h_pullback * theta.c);

    RatMatrix span(res.z.h11_dim(), res.exceptional_labels.size());
    for (std::size_t j = 0; j < res.exceptional_labels.size(); ++j)
        span(res.z.h11_index(res.exceptional_labels[j]), j) = 1;
    const LinearSolution sol = solve_linear(span, diff);
    if (!sol.consistent())
        throw std::domain_error(
            "pullback difference is not supported on the exceptional classes; "
            "resolution data is inconsistent");

    std::vector<std::pair<std::string, Rat>> out;
    out.reserve(res.exceptional_labels.size());
    for (std::size_t j = 0; j < res.exceptional_labels.size(); ++j)
        out.emplace_back(res.exceptional_labels[j], sol.solution[j]);
    return out;
}

}  // namespace blowup3
