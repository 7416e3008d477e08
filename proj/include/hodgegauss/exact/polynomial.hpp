#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hodgegauss::exact {

// Univariate polynomial over a field, coefficients lowest degree first.
template <class F>
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(F constant) : c_{std::move(constant)} { trim(); }
    explicit Polynomial(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Polynomial monomial(int n, F coeff = F(1))
    {
        std::vector<F> c(n + 1, F(0));
        c[n] = std::move(coeff);
        return Polynomial(std::move(c));
    }
    static Polynomial z() { return monomial(1); }
    // (z - a)^n
    static Polynomial linear_power(const F& a, int n)
    {
        Polynomial p(F(1));
        Polynomial lin(std::vector<F>{-a, F(1)});
        for (int k = 0; k < n; ++k)
            p *= lin;
        return p;
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<F>& coefficients() const { return c_; }
    F coeff(int n) const { return n >= 0 && n <= degree() ? c_[n] : F(0); }
    const F& leading() const { return c_.back(); }

    F operator()(const F& x) const
    {
        F acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            acc *= x;
            acc += *it;
        }
        return acc;
    }

    Polynomial derivative() const
    {
        if (c_.size() <= 1)
            return {};
        std::vector<F> d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k)
            d[k - 1] = c_[k] * F(static_cast<std::int64_t>(k));
        return Polynomial(std::move(d));
    }

    // p(z + a)
    Polynomial shift(const F& a) const
    {
        std::vector<F> c = c_;
        const int n = degree();
        for (int i = 0; i < n; ++i)
            for (int j = n - 1; j >= i; --j)
                c[j] += a * c[j + 1];
        return Polynomial(std::move(c));
    }

    Polynomial monic() const
    {
        if (is_zero())
            return {};
        Polynomial p = *this;
        F inv = F(1) / leading();
        for (auto& x : p.c_)
            x *= inv;
        return p;
    }

    Polynomial operator-() const
    {
        Polynomial p = *this;
        for (auto& x : p.c_)
            x = -x;
        return p;
    }
    Polynomial& operator+=(const Polynomial& o)
    {
        if (o.c_.size() > c_.size())
            c_.resize(o.c_.size(), F(0));
        for (std::size_t k = 0; k < o.c_.size(); ++k)
            c_[k] += o.c_[k];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) { return *this += -o; }
    Polynomial& operator*=(const Polynomial& o)
    {
        *this = *this * o;
        return *this;
    }
    Polynomial& operator*=(const F& s)
    {
        for (auto& x : c_)
            x *= s;
        trim();
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<F> c(a.c_.size() + b.c_.size() - 1, F(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(c));
    }
    friend Polynomial operator*(Polynomial a, const F& s) { return a *= s; }
    friend Polynomial operator*(const F& s, Polynomial a) { return a *= s; }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

    // Euclidean division: a = q*b + r, deg r < deg b.
    friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b)
    {
        if (b.is_zero())
            throw std::domain_error("Polynomial: division by zero polynomial");
        if (a.degree() < b.degree())
            return {Polynomial(), a};
        std::vector<F> r = a.c_;
        std::vector<F> q(a.degree() - b.degree() + 1, F(0));
        F inv = F(1) / b.leading();
        for (int k = a.degree() - b.degree(); k >= 0; --k) {
            F t = r[k + b.degree()] * inv;
            if (t == F(0))
                continue;
            q[k] = t;
            for (int j = 0; j <= b.degree(); ++j)
                r[k + j] -= t * b.c_[j];
        }
        r.resize(b.degree());
        return {Polynomial(std::move(q)), Polynomial(std::move(r))};
    }

    friend Polynomial gcd(Polynomial a, Polynomial b)
    {
        while (!b.is_zero()) {
            auto r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    // Order of vanishing at a (infinite for the zero polynomial, reported as -1).
    int order_at(const F& a) const
    {
        if (is_zero())
            return -1;
        Polynomial s = shift(a);
        int n = 0;
        while (s.c_[n] == F(0))
            ++n;
        return n;
    }

    std::string str() const
    {
        if (is_zero())
            return "0";
        std::string out;
        for (int k = 0; k <= degree(); ++k) {
            if (c_[k] == F(0))
                continue;
            if (!out.empty())
                out += " + ";
            out += "(" + c_[k].str() + ")";
            if (k == 1)
                out += "z";
            else if (k > 1)
                out += "z^" + std::to_string(k);
        }
        return out;
    }

private:
    void trim()
    {
        while (!c_.empty() && c_.back() == F(0))
            c_.pop_back();
    }

    std::vector<F> c_;
};

} // namespace hodgegauss::exact
