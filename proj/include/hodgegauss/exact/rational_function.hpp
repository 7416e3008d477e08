#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hodgegauss/exact/polynomial.hpp"

namespace hodgegauss::exact {

// num/den in lowest terms with monic denominator.
template <class F>
class RationalFunction {
public:
    using Poly = Polynomial<F>;

    RationalFunction() : num_(), den_(F(1)) {}
    RationalFunction(F c) : num_(std::move(c)), den_(F(1)) {}
    RationalFunction(Poly p) : num_(std::move(p)), den_(F(1)) {}
    RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }

    // c / (z - a)^n
    static RationalFunction pole(const F& a, int n, F c = F(1))
    {
        return RationalFunction(Poly(c), Poly::linear_power(a, n));
    }

    const Poly& numerator() const { return num_; }
    const Poly& denominator() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }
    // deg num - deg den; regular at infinity iff <= 0
    int degree_at_infinity() const { return is_zero() ? -1000000 : num_.degree() - den_.degree(); }

    F operator()(const F& x) const
    {
        F d = den_(x);
        if (d == F(0))
            throw std::domain_error("RationalFunction: evaluation at a pole");
        return num_(x) / d;
    }

    RationalFunction derivative() const
    {
        return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    RationalFunction operator-() const
    {
        RationalFunction r = *this;
        r.num_ = -r.num_;
        return r;
    }
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b)
    {
        if (a.den_ == b.den_)
            return RationalFunction(a.num_ + b.num_, a.den_);
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b)
    {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b)
    {
        if (b.is_zero())
            throw std::domain_error("RationalFunction: division by zero");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }
    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    // Multiplicity of a as a root of the denominator.
    int pole_order(const F& a) const { return den_.order_at(a); }

    std::string str() const
    {
        if (is_polynomial())
            return num_.str();
        return "[" + num_.str() + "] / [" + den_.str() + "]";
    }

private:
    void reduce()
    {
        if (den_.is_zero())
            throw std::domain_error("RationalFunction: zero denominator");
        if (num_.is_zero()) {
            den_ = Poly(F(1));
            return;
        }
        Poly g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = divmod(num_, g).first;
            den_ = divmod(den_, g).first;
        }
        F lead = den_.leading();
        if (!(lead == F(1))) {
            F inv = F(1) / lead;
            num_ *= inv;
            den_ *= inv;
        }
    }

    Poly num_;
    Poly den_;
};

template <class F>
struct PrincipalPart {
    // principal[j-1] is the coefficient of (z - pole)^{-j}
    std::vector<F> principal;
    // constant term of the Laurent expansion at the pole
    F regular_value{0};
    bool is_pole = false;
};

// Laurent data of f at a point: principal part and the constant term.
template <class F>
PrincipalPart<F> partial_fractions(const RationalFunction<F>& f, const F& pole)
{
    using Poly = Polynomial<F>;
    PrincipalPart<F> out;
    const int n = f.pole_order(pole);
    out.is_pole = n > 0;
    if (f.is_zero())
        return out;
    Poly den = f.denominator();
    Poly lin(std::vector<F>{-pole, F(1)});
    for (int k = 0; k < n; ++k)
        den = divmod(den, lin).first;
    // f = N(w+p) / (w^n D1(w+p)); series of N/D1 in w up to w^n
    Poly N = f.numerator().shift(pole);
    Poly D = den.shift(pole);
    std::vector<F> s(n + 1, F(0));
    const F d0 = D.coeff(0);
    for (int j = 0; j <= n; ++j) {
        F acc = N.coeff(j);
        for (int i = 1; i <= j; ++i)
            acc -= D.coeff(i) * s[j - i];
        s[j] = acc / d0;
    }
    out.principal.resize(n);
    for (int j = 1; j <= n; ++j)
        out.principal[j - 1] = s[n - j];
    out.regular_value = s[n];
    return out;
}

// Sum of c_j/(z - pole)^j.
template <class F>
RationalFunction<F> principal_part_function(const PrincipalPart<F>& pp, const F& pole)
{
    const int n = static_cast<int>(pp.principal.size());
    if (n == 0)
        return {};
    // sum c_j (z-p)^{n-j} / (z-p)^n
    Polynomial<F> num;
    Polynomial<F> lin(std::vector<F>{-pole, F(1)});
    Polynomial<F> pw(F(1));
    for (int j = n; j >= 1; --j) {
        num += pw * pp.principal[j - 1];
        pw *= lin;
    }
    return RationalFunction<F>(num, Polynomial<F>::linear_power(pole, n));
}

} // namespace hodgegauss::exact
