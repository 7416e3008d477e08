#pragma once

#include <stdexcept>
#include <vector>

#include "hodgegauss/exact/gaussian_rational.hpp"

namespace hodgegauss::exact {

class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    GaussianRational& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const GaussianRational& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    std::vector<GaussianRational> apply(const std::vector<GaussianRational>& v) const
    {
        if (static_cast<int>(v.size()) != cols_)
            throw std::invalid_argument("ExactMatrix::apply: size mismatch");
        std::vector<GaussianRational> out(rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if (!(*this)(i, j).is_zero() && !v[j].is_zero())
                    out[i] += (*this)(i, j) * v[j];
        return out;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<GaussianRational> a_;
};

namespace detail {

struct GaussInt {
    Integer re, im;
    bool is_zero() const { return re == 0 && im == 0; }
};

inline GaussInt mul(const GaussInt& a, const GaussInt& b)
{
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline GaussInt sub(const GaussInt& a, const GaussInt& b) { return {a.re - b.re, a.im - b.im}; }

// Exact quotient in Z[i]; the Bareiss recurrence guarantees divisibility.
inline GaussInt exact_div(const GaussInt& a, const GaussInt& b)
{
    Integer n = b.re * b.re + b.im * b.im;
    Integer re = a.re * b.re + a.im * b.im;
    Integer im = a.im * b.re - a.re * b.im;
    if (re % n != 0 || im % n != 0)
        throw std::logic_error("Bareiss: inexact division");
    return {re / n, im / n};
}

struct Echelon {
    std::vector<std::vector<GaussInt>> rows;
    std::vector<int> pivot_cols;
};

// Fraction-free row echelon form over Z[i].
inline Echelon bareiss(const ExactMatrix& m)
{
    const int R = m.rows(), C = m.cols();
    std::vector<std::vector<GaussInt>> a(R, std::vector<GaussInt>(C));
    for (int i = 0; i < R; ++i) {
        Integer l = 1;
        for (int j = 0; j < C; ++j) {
            l = boost::multiprecision::lcm(l, denominator(m(i, j).re()));
            l = boost::multiprecision::lcm(l, denominator(m(i, j).im()));
        }
        for (int j = 0; j < C; ++j) {
            a[i][j].re = numerator(m(i, j).re()) * (l / denominator(m(i, j).re()));
            a[i][j].im = numerator(m(i, j).im()) * (l / denominator(m(i, j).im()));
        }
    }
    Echelon e;
    GaussInt prev{1, 0};
    int row = 0;
    for (int col = 0; col < C && row < R; ++col) {
        int piv = -1;
        for (int i = row; i < R; ++i)
            if (!a[i][col].is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0)
            continue;
        std::swap(a[row], a[piv]);
        for (int i = row + 1; i < R; ++i) {
            for (int j = col + 1; j < C; ++j)
                a[i][j] = exact_div(sub(mul(a[row][col], a[i][j]), mul(a[i][col], a[row][j])), prev);
            a[i][col] = {0, 0};
        }
        prev = a[row][col];
        e.pivot_cols.push_back(col);
        ++row;
    }
    a.resize(row);
    e.rows = std::move(a);
    return e;
}

inline GaussianRational to_gr(const GaussInt& g) { return GaussianRational(Rational(g.re), Rational(g.im)); }

} // namespace detail

inline int exact_rank(const ExactMatrix& m) { return static_cast<int>(detail::bareiss(m).pivot_cols.size()); }

// Kernel basis, one vector per free column (in column order), each scaled so that
// its first nonzero entry is 1.
inline std::vector<std::vector<GaussianRational>> exact_kernel(const ExactMatrix& m)
{
    const int C = m.cols();
    auto e = detail::bareiss(m);
    std::vector<int> is_pivot(C, -1);
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r)
        is_pivot[e.pivot_cols[r]] = static_cast<int>(r);
    std::vector<std::vector<GaussianRational>> basis;
    for (int f = 0; f < C; ++f) {
        if (is_pivot[f] >= 0)
            continue;
        std::vector<GaussianRational> x(C);
        x[f] = 1;
        for (int r = static_cast<int>(e.pivot_cols.size()) - 1; r >= 0; --r) {
            const int pc = e.pivot_cols[r];
            GaussianRational acc;
            for (int j = pc + 1; j < C; ++j)
                if (!x[j].is_zero() && !e.rows[r][j].is_zero())
                    acc += detail::to_gr(e.rows[r][j]) * x[j];
            x[pc] = -acc / detail::to_gr(e.rows[r][pc]);
        }
        for (const auto& v : x)
            if (!v.is_zero()) {
                GaussianRational inv = GaussianRational(1) / v;
                for (auto& w : x)
                    w *= inv;
                break;
            }
        basis.push_back(std::move(x));
    }
    return basis;
}

} // namespace hodgegauss::exact
