#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "matrix.hpp"

namespace blowup3 {

/// In-place Gauss-Jordan reduction to reduced row echelon form.
/// Returns the pivot column indices in order. Exact, no pivoting heuristics
/// needed over Q.
inline std::vector<std::size_t> rref(RatMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && m(p, col) == 0) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(p, row);
        const Rat pivot = m(row, col);
        for (std::size_t j = col; j < m.cols(); ++j) m(row, j) /= pivot;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == 0) continue;
            const Rat factor = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                m(i, j) -= factor * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline std::size_t rank(const RatMatrix& m) {
    RatMatrix work = m;
    return rref(work).size();
}

/// Scales a rational vector to integer entries with content 1 and a positive
/// leading (first nonzero) entry. The zero vector is returned unchanged.
inline RatVector normalize_integer_primitive(const RatVector& v) {
    BigInt den_lcm = 1;
    for (const Rat& x : v) den_lcm = lcm(den_lcm, rat_den(x));
    BigInt content = 0;
    std::vector<BigInt> ints(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        ints[i] = rat_num(v[i]) * (den_lcm / rat_den(v[i]));
        content = gcd(content, ints[i]);
    }
    if (content == 0) return v;
    int lead = 0;
    for (const BigInt& x : ints) {
        if (x != 0) {
            lead = x > 0 ? 1 : -1;
            break;
        }
    }
    if (lead < 0) content = -content;
    RatVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rat(ints[i] / content);
    return out;
}

/// Basis of the right null space { v : m v = 0 }, one vector per free column,
/// each normalized via normalize_integer_primitive. Empty when the kernel is
/// trivial.
inline std::vector<RatVector> kernel_basis(const RatMatrix& m) {
    RatMatrix work = m;
    const std::vector<std::size_t> pivots = rref(work);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<RatVector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        RatVector v(m.cols());
        v[free] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k)
            v[pivots[k]] = -work(k, free);
        basis.push_back(normalize_integer_primitive(v));
    }
    return basis;
}

struct LinearSolution {
    enum class Kind { Unique, Underdetermined, Inconsistent };
    Kind kind = Kind::Inconsistent;
    /// A solution of m x = b. For underdetermined systems this is the
    /// particular solution with every free variable set to zero.
    RatVector solution;
    std::size_t kernel_dim = 0;

    bool consistent() const { return kind != Kind::Inconsistent; }
};

/// Exact solve of m x = b. Inconsistency is a verdict, not an error.
inline LinearSolution solve_linear(const RatMatrix& m, const RatVector& b) {
    if (m.rows() != b.size())
        throw std::invalid_argument("solve_linear: rhs length does not match rows");
    RatMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    const std::vector<std::size_t> pivots = rref(aug);
    LinearSolution out;
    if (!pivots.empty() && pivots.back() == m.cols()) {
        out.kind = LinearSolution::Kind::Inconsistent;
        return out;
    }
    out.kernel_dim = m.cols() - pivots.size();
    out.kind = out.kernel_dim == 0 ? LinearSolution::Kind::Unique
                                   : LinearSolution::Kind::Underdetermined;
    out.solution.assign(m.cols(), Rat(0));
    for (std::size_t k = 0; k < pivots.size(); ++k)
        out.solution[pivots[k]] = aug(k, m.cols());
    return out;
}

/// Exact inverse. Throws std::domain_error on singular input.
inline RatMatrix mat_inverse(const RatMatrix& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("mat_inverse: matrix not square");
    const std::size_t n = m.rows();
    RatMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    const std::vector<std::size_t> pivots = rref(aug);
    if (pivots.size() != n || pivots.back() != n - 1)
        throw std::domain_error("mat_inverse: singular matrix");
    RatMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

}  // namespace blowup3
