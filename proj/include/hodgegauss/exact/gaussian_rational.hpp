#pragma once

#include <complex>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace hodgegauss::exact {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& q)
{
    if (denominator(q) == 1)
        return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

// re + im*i with exact rational parts.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(std::int64_t re) : re_(re) {}
    GaussianRational(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational i() { return {0, 1}; }
    static GaussianRational ratio(std::int64_t p, std::int64_t q) { return Rational(p, q); }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    GaussianRational conj() const { return {re_, -im_}; }
    Rational norm() const { return Rational(re_ * re_ + im_ * im_); }

    GaussianRational operator-() const { return {-re_, -im_}; }

    GaussianRational& operator+=(const GaussianRational& o)
    {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o)
    {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o)
    {
        Rational r = re_ * o.re_ - im_ * o.im_;
        Rational s = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(s);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o)
    {
        if (o.is_zero())
            throw std::domain_error("GaussianRational: division by zero");
        Rational n = o.norm();
        Rational r = (re_ * o.re_ + im_ * o.im_) / n;
        Rational s = (im_ * o.re_ - re_ * o.im_) / n;
        re_ = std::move(r);
        im_ = std::move(s);
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    std::complex<double> to_complex() const
    {
        return {static_cast<double>(re_), static_cast<double>(im_)};
    }

    // Canonical text form: "3", "-1/2", "2i", "-i", "1/2+3/4i".
    std::string str() const
    {
        if (im_ == 0)
            return to_string(re_);
        std::string imag;
        if (im_ == 1)
            imag = "i";
        else if (im_ == -1)
            imag = "-i";
        else
            imag = to_string(im_) + "i";
        if (re_ == 0)
            return imag;
        return to_string(re_) + (im_ > 0 ? "+" : "") + imag;
    }

private:
    Rational re_{0};
    Rational im_{0};
};

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& g) { return os << g.str(); }

namespace detail {

// Parses "p", "p/q" or a decimal "a.b" into an exact rational. Returns false on junk.
inline bool parse_real(std::string_view s, bool allow_decimal, Rational& out)
{
    if (s.empty())
        return false;
    bool neg = false;
    if (s.front() == '+' || s.front() == '-') {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty())
        return false;
    auto digits = [](std::string_view t) {
        if (t.empty())
            return false;
        for (char c : t)
            if (c < '0' || c > '9')
                return false;
        return true;
    };
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto p = s.substr(0, slash), q = s.substr(slash + 1);
        if (!digits(p) || !digits(q))
            return false;
        Integer den{std::string(q)};
        if (den == 0)
            return false;
        out = Rational(Integer{std::string(p)}, den);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        if (!allow_decimal)
            return false;
        auto a = s.substr(0, dot), b = s.substr(dot + 1);
        if ((a.empty() && b.empty()) || (!a.empty() && !digits(a)) || (!b.empty() && !digits(b)))
            return false;
        Integer scale = 1;
        for (std::size_t k = 0; k < b.size(); ++k)
            scale *= 10;
        Integer whole = a.empty() ? Integer(0) : Integer(std::string(a));
        Integer frac = b.empty() ? Integer(0) : Integer(std::string(b));
        out = Rational(whole * scale + frac, scale);
    } else {
        if (!digits(s))
            return false;
        out = Rational(Integer(std::string(s)));
    }
    if (neg)
        out = -out;
    return true;
}

} // namespace detail

// Parses complex literals "a+bi", "a-bi", "bi", "a", "i" with integer, fraction or
// (optionally) decimal parts.
inline GaussianRational parse_gaussian(std::string_view text, bool allow_decimal = true)
{
    std::string s;
    for (char c : text)
        if (c != ' ')
            s.push_back(c);
    auto fail = [&]() -> GaussianRational {
        throw std::invalid_argument("malformed complex literal '" + std::string(text) + "'" +
                                    (allow_decimal ? "" : " (exact rationals required)"));
    };
    if (s.empty())
        return fail();
    auto imag_part = [&](std::string_view t, Rational& out) {
        // t ends with 'i'
        t.remove_suffix(1);
        if (t.empty() || t == "+") {
            out = 1;
            return true;
        }
        if (t == "-") {
            out = -1;
            return true;
        }
        return detail::parse_real(t, allow_decimal, out);
    };
    if (s.back() != 'i') {
        Rational re;
        if (!detail::parse_real(s, allow_decimal, re))
            return fail();
        return GaussianRational(re);
    }
    // split at the last sign that is not the leading one and not part of an exponent
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size() - 1; k > 0; --k)
        if (s[k] == '+' || s[k] == '-') {
            split = k;
            break;
        }
    Rational re = 0, im;
    if (split == std::string::npos) {
        if (!imag_part(s, im))
            return fail();
    } else {
        if (!detail::parse_real(std::string_view(s).substr(0, split), allow_decimal, re))
            return fail();
        if (!imag_part(std::string_view(s).substr(split), im))
            return fail();
    }
    return GaussianRational(re, im);
}

} // namespace hodgegauss::exact
