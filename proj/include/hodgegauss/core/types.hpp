#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hodgegauss/core/multi_index.hpp"
#include "hodgegauss/exact/gaussian_rational.hpp"

namespace hodgegauss {

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<exact::GaussianRational> {
    using type = exact::GaussianRational;
    static constexpr bool exact = true;
    static type ratio(std::int64_t p, std::int64_t q) { return type::ratio(p, q); }
    static double magnitude(const type& s) { return std::abs(s.to_complex()); }
    static std::complex<double> to_complex(const type& s) { return s.to_complex(); }
};

template <>
struct scalar_traits<std::complex<double>> {
    using type = std::complex<double>;
    static constexpr bool exact = false;
    static type ratio(std::int64_t p, std::int64_t q) { return {static_cast<double>(p) / static_cast<double>(q), 0.0}; }
    static double magnitude(const type& s) { return std::abs(s); }
    static std::complex<double> to_complex(const type& s) { return s; }
};

// A homogeneous polynomial of degree k in r variables, read as a fully symmetric
// tensor a_J on R_k. Sym^k sits inside the k-th tensor power with
// a_J = c_K / multinomial(K), K the exponent of J; for k = 2 the off-diagonal
// entries carry weight 1/2 (x0x2 - x1^2 has a_02 = a_20 = 1/2, a_11 = -1).
template <class S>
class SymmetricTensor {
public:
    SymmetricTensor() = default;
    SymmetricTensor(int r, int k) : r_(r), k_(k) {}

    int rank() const { return r_; }
    int order() const { return k_; }

    void set_monomial(const Exponent& e, S c)
    {
        check(e);
        if (c == S(0))
            c_.erase(e);
        else
            c_[e] = std::move(c);
    }
    S monomial(const Exponent& e) const
    {
        auto it = c_.find(e);
        return it == c_.end() ? S(0) : it->second;
    }
    const std::map<Exponent, S>& monomials() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    // Tensor entry a_J for an ordered tuple J.
    S entry(const Tuple& J) const
    {
        Exponent e = exponent_of(J, r_);
        auto it = c_.find(e);
        if (it == c_.end())
            return S(0);
        return it->second / S(scalar_traits<S>::ratio(multinomial(e), 1));
    }

    // From a symmetric tensor given entrywise on all tuples (symmetry is asserted).
    static SymmetricTensor from_entries(int r, int k, const std::map<Tuple, S>& a)
    {
        SymmetricTensor t(r, k);
        for (const auto& J : all_tuples(r, k)) {
            auto it = a.find(J);
            S v = it == a.end() ? S(0) : it->second;
            Tuple s = J;
            std::sort(s.begin(), s.end());
            auto is = a.find(s);
            S vs = is == a.end() ? S(0) : is->second;
            if (!(v == vs))
                throw std::invalid_argument("SymmetricTensor: entries are not symmetric");
        }
        for (const auto& J : sorted_tuples(r, k)) {
            auto it = a.find(J);
            if (it == a.end())
                continue;
            Exponent e = exponent_of(J, r);
            t.set_monomial(e, it->second * S(scalar_traits<S>::ratio(multinomial(e), 1)));
        }
        return t;
    }

    SymmetricTensor& operator+=(const SymmetricTensor& o)
    {
        same_shape(o);
        for (const auto& [e, c] : o.c_)
            set_monomial(e, monomial(e) + c);
        return *this;
    }
    friend SymmetricTensor operator+(SymmetricTensor a, const SymmetricTensor& b) { return a += b; }
    friend SymmetricTensor operator*(const S& s, const SymmetricTensor& a)
    {
        SymmetricTensor t(a.r_, a.k_);
        for (const auto& [e, c] : a.c_)
            t.set_monomial(e, s * c);
        return t;
    }
    friend bool operator==(const SymmetricTensor& a, const SymmetricTensor& b)
    {
        return a.r_ == b.r_ && a.k_ == b.k_ && a.c_ == b.c_;
    }

private:
    void check(const Exponent& e) const
    {
        int n = 0;
        for (int x : e)
            n += x;
        if (static_cast<int>(e.size()) != r_ || n != k_)
            throw std::invalid_argument("SymmetricTensor: exponent shape mismatch");
    }
    void same_shape(const SymmetricTensor& o) const
    {
        if (o.r_ != r_ || o.k_ != k_)
            throw std::invalid_argument("SymmetricTensor: shape mismatch");
    }

    int r_ = 0;
    int k_ = 0;
    std::map<Exponent, S> c_;
};

struct RankDiagnostics {
    int rank = 0;
    int rows = 0;
    int cols = 0;
    // numeric backends only
    std::vector<double> singular_values;
    double gap_ratio = 0.0;
};

template <class S>
struct RelationSpace {
    int k = 0;
    int r = 0;
    std::vector<SymmetricTensor<S>> basis;
    std::string provenance;
    RankDiagnostics diagnostics;

    int dimension() const { return static_cast<int>(basis.size()); }
};

// Class in H^0(L^power (x) M^chi_sign (x) K), as coordinates in the backend basis.
template <class S>
struct GaussImage {
    int power = 0;
    int character = 0;
    std::vector<S> coordinates;
    double decomposition_residual = 0.0;
    double closedness_residual = 0.0;
    double projection_residual = 0.0;

    bool is_zero() const
    {
        for (const auto& c : coordinates)
            if (!(c == S(0)))
                return false;
        return true;
    }
};

// Section of L^2 (x) K^2 given by coordinates.
template <class S>
struct WahlImage {
    std::vector<S> coordinates;
    double projection_residual = 0.0;
};

template <class F, class H>
struct HarmonicDecomposition {
    F gamma;
    H h;
    double residual = 0.0;
};

} // namespace hodgegauss
