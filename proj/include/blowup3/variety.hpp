#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "linalg.hpp"
#include "matrix.hpp"
#include "rational.hpp"

namespace blowup3 {

/// A (1,1)-cohomology class as coefficients over a model's divisor basis.
struct H11Class {
    RatVector c;

    H11Class() = default;
    explicit H11Class(RatVector v) : c(std::move(v)) {}
    explicit H11Class(std::size_t dim) : c(dim) {}

    std::size_t dim() const { return c.size(); }
    bool is_zero() const { return blowup3::is_zero(c); }

    friend H11Class operator+(const H11Class& a, const H11Class& b) { return H11Class(vec_add(a.c, b.c)); }
    friend H11Class operator-(const H11Class& a, const H11Class& b) { return H11Class(vec_sub(a.c, b.c)); }
    friend H11Class operator*(const Rat& s, const H11Class& a) { return H11Class(vec_scale(s, a.c)); }
    friend H11Class operator-(const H11Class& a) { return make_rat(-1) * a; }
    friend bool operator==(const H11Class& a, const H11Class& b) { return a.c == b.c; }
    friend bool operator!=(const H11Class& a, const H11Class& b) { return !(a == b); }
};

/// A (2,2)-cohomology class over a model's curve-class basis.
struct H22Class {
    RatVector c;

    H22Class() = default;
    explicit H22Class(RatVector v) : c(std::move(v)) {}
    explicit H22Class(std::size_t dim) : c(dim) {}

    std::size_t dim() const { return c.size(); }
    bool is_zero() const { return blowup3::is_zero(c); }

    friend H22Class operator+(const H22Class& a, const H22Class& b) { return H22Class(vec_add(a.c, b.c)); }
    friend H22Class operator-(const H22Class& a, const H22Class& b) { return H22Class(vec_sub(a.c, b.c)); }
    friend H22Class operator*(const Rat& s, const H22Class& a) { return H22Class(vec_scale(s, a.c)); }
    friend H22Class operator-(const H22Class& a) { return make_rat(-1) * a; }
    friend bool operator==(const H22Class& a, const H22Class& b) { return a.c == b.c; }
    friend bool operator!=(const H22Class& a, const H22Class& b) { return !(a == b); }
};

/// Registry entry for a named curve class. Effectivity, nef-generator
/// membership and indeterminacy eligibility are declared by the model, not
/// verified; rationality gates the normal-degree derivation in curve blowups.
struct CurveInfo {
    H22Class cls;
    bool effective = false;
    bool nef_generator = false;
    bool indeterminacy_eligible = false;
    bool rational = true;

    friend bool operator==(const CurveInfo&, const CurveInfo&) = default;
};

/// One step of blowup provenance. For curve steps, center_class is the
/// center's class in the model *before* the step, and new_curve is the fiber
/// of the exceptional divisor; for point steps it is a line in the
/// exceptional plane.
struct BlowupStep {
    enum class Kind { Point, RationalCurve };

    Kind kind = Kind::Point;
    std::string center_name;
    H22Class center_class;  // curve steps only
    Rat normal_degree;      // curve steps only
    std::string new_divisor;
    std::string new_curve;

    friend bool operator==(const BlowupStep&, const BlowupStep&) = default;
};

struct ValidationReport {
    struct Check {
        std::string name;
        bool pass = false;
        std::string detail;
    };
    std::vector<Check> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

/// Cohomology skeleton of a compact Kahler 3-fold: bases for H^{1,1} and
/// H^{2,2}, the complementary-dimension pairing, the cup product
/// H^{1,1} x H^{1,1} -> H^{2,2}, the canonical class, a named-curve registry
/// and the blowup provenance log. Immutable after construction; the
/// constructor enforces shapes only, semantic checks live in validate().
class VarietyModel {
public:
    VarietyModel(std::string name,
                 std::vector<std::string> h11_basis,
                 std::vector<std::string> h22_basis,
                 RatMatrix pairing,
                 std::vector<H22Class> cup_table,
                 H11Class canonical,
                 std::vector<std::pair<std::string, CurveInfo>> curves,
                 std::vector<BlowupStep> provenance)
        : name_(std::move(name)),
          h11_(std::move(h11_basis)),
          h22_(std::move(h22_basis)),
          pairing_(std::move(pairing)),
          cup_(std::move(cup_table)),
          canonical_(std::move(canonical)),
          curves_(std::move(curves)),
          provenance_(std::move(provenance)) {
        const std::size_t n1 = h11_.size(), n2 = h22_.size();
        if (pairing_.rows() != n1 || pairing_.cols() != n2)
            throw std::invalid_argument("pairing shape does not match bases");
        if (cup_.size() != n1 * n1)
            throw std::invalid_argument("cup table must have h11 x h11 entries");
        for (const auto& v : cup_)
            if (v.dim() != n2) throw std::invalid_argument("cup entry has wrong dimension");
        if (canonical_.dim() != n1)
            throw std::invalid_argument("canonical class has wrong dimension");
        for (std::size_t i = 0; i < n1; ++i)
            if (!h11_index_.emplace(h11_[i], i).second)
                throw std::invalid_argument("duplicate h11 basis label: " + h11_[i]);
        for (std::size_t i = 0; i < n2; ++i)
            if (!h22_index_.emplace(h22_[i], i).second)
                throw std::invalid_argument("duplicate h22 basis label: " + h22_[i]);
        for (std::size_t i = 0; i < curves_.size(); ++i) {
            if (curves_[i].second.cls.dim() != n2)
                throw std::invalid_argument("curve class has wrong dimension: " + curves_[i].first);
            if (!curve_index_.emplace(curves_[i].first, i).second)
                throw std::invalid_argument("duplicate curve name: " + curves_[i].first);
        }
    }

    const std::string& name() const { return name_; }
    const std::vector<std::string>& h11_basis() const { return h11_; }
    const std::vector<std::string>& h22_basis() const { return h22_; }
    std::size_t h11_dim() const { return h11_.size(); }
    std::size_t h22_dim() const { return h22_.size(); }
    const RatMatrix& pairing_matrix() const { return pairing_; }
    const H11Class& canonical() const { return canonical_; }
    const std::vector<std::pair<std::string, CurveInfo>>& curves() const { return curves_; }
    const std::vector<BlowupStep>& provenance() const { return provenance_; }

    bool has_h11_label(std::string_view label) const { return h11_index_.count(std::string(label)) != 0; }
    bool has_h22_label(std::string_view label) const { return h22_index_.count(std::string(label)) != 0; }

    std::size_t h11_index(std::string_view label) const {
        auto it = h11_index_.find(std::string(label));
        if (it == h11_index_.end())
            throw std::out_of_range("no such divisor basis label: " + std::string(label));
        return it->second;
    }

    std::size_t h22_index(std::string_view label) const {
        auto it = h22_index_.find(std::string(label));
        if (it == h22_index_.end())
            throw std::out_of_range("no such curve basis label: " + std::string(label));
        return it->second;
    }

    H11Class h11(std::string_view label) const {
        H11Class v(h11_dim());
        v.c[h11_index(label)] = 1;
        return v;
    }

    H22Class h22(std::string_view label) const {
        H22Class v(h22_dim());
        v.c[h22_index(label)] = 1;
        return v;
    }

    bool has_curve(std::string_view name) const { return curve_index_.count(std::string(name)) != 0; }

    const CurveInfo& curve(std::string_view name) const {
        auto it = curve_index_.find(std::string(name));
        if (it == curve_index_.end())
            throw std::out_of_range("no such registered curve: " + std::string(name));
        return curves_[it->second].second;
    }

    /// Complementary-dimension intersection number a . c  =  a^T P c.
    Rat pair(const H11Class& a, const H22Class& c) const {
        if (a.dim() != h11_dim() || c.dim() != h22_dim())
            throw std::invalid_argument("pair: class dimension does not match model");
        Rat acc = 0;
        for (std::size_t i = 0; i < h11_dim(); ++i) {
            if (a.c[i] == 0) continue;
            for (std::size_t j = 0; j < h22_dim(); ++j)
                if (pairing_(i, j) != 0) acc += a.c[i] * pairing_(i, j) * c.c[j];
        }
        return acc;
    }

    /// Cup product; bilinear extension of the stored basis table.
    H22Class cup(const H11Class& a, const H11Class& b) const {
        if (a.dim() != h11_dim() || b.dim() != h11_dim())
            throw std::invalid_argument("cup: class dimension does not match model");
        H22Class acc(h22_dim());
        for (std::size_t i = 0; i < h11_dim(); ++i) {
            if (a.c[i] == 0) continue;
            for (std::size_t j = 0; j < h11_dim(); ++j) {
                if (b.c[j] == 0) continue;
                const Rat s = a.c[i] * b.c[j];
                const H22Class& e = cup_entry(i, j);
                for (std::size_t k = 0; k < h22_dim(); ++k)
                    if (e.c[k] != 0) acc.c[k] += s * e.c[k];
            }
        }
        return acc;
    }

    /// Top-degree triple product a . b . c = pair(a, cup(b, c)).
    Rat triple(const H11Class& a, const H11Class& b, const H11Class& c) const {
        return pair(a, cup(b, c));
    }

    const H22Class& cup_entry(std::size_t i, std::size_t j) const { return cup_[i * h11_dim() + j]; }

    /// Names of curves flagged as nef-test generators, in registry order.
    std::vector<std::string> nef_generators() const {
        std::vector<std::string> out;
        for (const auto& [nm, info] : curves_)
            if (info.nef_generator) out.push_back(nm);
        return out;
    }

    /// Exceptional divisor labels recorded in provenance, in order.
    std::vector<std::string> exceptional_divisors() const {
        std::vector<std::string> out;
        for (const auto& step : provenance_) out.push_back(step.new_divisor);
        return out;
    }

    /// Semantic checks: cup symmetry, triple-product symmetry on all basis
    /// triples, pairing nondegeneracy, and (when provenance is nonempty)
    /// linear independence of the exceptional divisor classes.
    ValidationReport validate() const {
        ValidationReport rep;
        const std::size_t n = h11_dim();

        {
            ValidationReport::Check chk{"cup symmetry", true, ""};
            for (std::size_t i = 0; i < n && chk.pass; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (cup_entry(i, j) != cup_entry(j, i)) {
                        chk.pass = false;
                        chk.detail = "cup(" + h11_[i] + "," + h11_[j] + ") != cup(" + h11_[j] + "," + h11_[i] + ")";
                        break;
                    }
            rep.checks.push_back(std::move(chk));
        }
        {
            ValidationReport::Check chk{"triple-product symmetry", true, ""};
            for (std::size_t i = 0; i < n && chk.pass; ++i)
                for (std::size_t j = 0; j < n && chk.pass; ++j)
                    for (std::size_t k = 0; k < n; ++k) {
                        const H11Class a = basis11(i), b = basis11(j), c = basis11(k);
                        const Rat t = triple(a, b, c);
                        if (t != triple(a, c, b) || t != triple(b, a, c) || t != triple(b, c, a) ||
                            t != triple(c, a, b) || t != triple(c, b, a)) {
                            chk.pass = false;
                            chk.detail = "asymmetric triple on (" + h11_[i] + "," + h11_[j] + "," + h11_[k] + ")";
                            break;
                        }
                    }
            rep.checks.push_back(std::move(chk));
        }
        {
            ValidationReport::Check chk{"pairing nondegeneracy", true, ""};
            if (pairing_.rows() != pairing_.cols() || rank(pairing_) != pairing_.rows()) {
                chk.pass = false;
                chk.detail = "pairing matrix is singular";
            }
            rep.checks.push_back(std::move(chk));
        }
        if (!provenance_.empty()) {
            ValidationReport::Check chk{"exceptional-class independence", true, ""};
            RatMatrix m(n, provenance_.size());
            for (std::size_t j = 0; j < provenance_.size() && chk.pass; ++j) {
                const std::string& label = provenance_[j].new_divisor;
                if (!has_h11_label(label)) {
                    chk.pass = false;
                    chk.detail = "provenance divisor not in basis: " + label;
                } else {
                    m(h11_index(label), j) = 1;
                }
            }
            if (chk.pass && rank(m) != provenance_.size()) {
                chk.pass = false;
                chk.detail = "exceptional classes are linearly dependent";
            }
            rep.checks.push_back(std::move(chk));
        }
        return rep;
    }

    H11Class basis11(std::size_t i) const {
        H11Class v(h11_dim());
        v.c[i] = 1;
        return v;
    }

    H22Class basis22(std::size_t j) const {
        H22Class v(h22_dim());
        v.c[j] = 1;
        return v;
    }

    friend bool operator==(const VarietyModel& a, const VarietyModel& b) {
        return a.name_ == b.name_ && a.h11_ == b.h11_ && a.h22_ == b.h22_ &&
               a.pairing_ == b.pairing_ && a.cup_ == b.cup_ && a.canonical_ == b.canonical_ &&
               a.curves_ == b.curves_ && a.provenance_ == b.provenance_;
    }
    friend bool operator!=(const VarietyModel& a, const VarietyModel& b) { return !(a == b); }

private:
    std::string name_;
    std::vector<std::string> h11_, h22_;
    RatMatrix pairing_;
    std::vector<H22Class> cup_;  // row-major h11 x h11
    H11Class canonical_;
    std::vector<std::pair<std::string, CurveInfo>> curves_;
    std::vector<BlowupStep> provenance_;
    std::map<std::string, std::size_t> h11_index_, h22_index_, curve_index_;
};

}  // namespace blowup3
