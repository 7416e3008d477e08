#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace hodgegauss {

// Ordered tuple T in R_m = {0..r-1}^m.
using Tuple = std::vector<int>;
// Exponent vector of length r (a multiset of indices).
using Exponent = std::vector<int>;

// All tuples of length m over {0..r-1} in lexicographic order.
inline std::vector<Tuple> all_tuples(int r, int m)
{
    std::vector<Tuple> out;
    Tuple t(m, 0);
    if (m == 0) {
        out.push_back(t);
        return out;
    }
    if (r <= 0)
        return out;
    while (true) {
        out.push_back(t);
        int p = m - 1;
        while (p >= 0 && ++t[p] == r) {
            t[p] = 0;
            --p;
        }
        if (p < 0)
            break;
    }
    return out;
}

// Non-decreasing tuples of length k over {0..r-1}: the monomials of degree k.
// Order: x0^k, x0^{k-1}x1, ..., xr^k.
inline std::vector<Tuple> sorted_tuples(int r, int k)
{
    std::vector<Tuple> out;
    for (auto& t : all_tuples(r, k))
        if (std::is_sorted(t.begin(), t.end()))
            out.push_back(t);
    return out;
}

inline Exponent exponent_of(const Tuple& t, int r)
{
    Exponent e(r, 0);
    for (int j : t)
        ++e[j];
    return e;
}

inline Tuple tuple_of(const Exponent& e)
{
    Tuple t;
    for (int j = 0; j < static_cast<int>(e.size()); ++j)
        for (int c = 0; c < e[j]; ++c)
            t.push_back(j);
    return t;
}

inline std::int64_t factorial(int n)
{
    std::int64_t f = 1;
    for (int k = 2; k <= n; ++k)
        f *= k;
    return f;
}

// Number of orderings of the multiset e: |e|! / prod e_j!.
inline std::int64_t multinomial(const Exponent& e)
{
    int n = 0;
    std::int64_t den = 1;
    for (int c : e) {
        n += c;
        den *= factorial(c);
    }
    return factorial(n) / den;
}

inline std::int64_t exponent_factorial(const Exponent& e)
{
    std::int64_t f = 1;
    for (int c : e)
        f *= factorial(c);
    return f;
}

// All exponent vectors of length r and total degree k, in the order of sorted_tuples.
inline std::vector<Exponent> exponents(int r, int k)
{
    std::vector<Exponent> out;
    for (auto& t : sorted_tuples(r, k))
        out.push_back(exponent_of(t, r));
    return out;
}

} // namespace hodgegauss
