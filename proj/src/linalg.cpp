#include "legn/linalg.hpp"

#include <algorithm>
#include <utility>

namespace legn {

std::vector<int> rref(RatMatrix& m, int cols)
{
    std::vector<int> pivots;
    std::size_t row = 0;
    for (int c = 0; c < cols && row < m.size(); ++c) {
        std::size_t piv = row;
        while (piv < m.size() && m[piv][static_cast<std::size_t>(c)] == 0)
            ++piv;
        if (piv == m.size())
            continue;
        std::swap(m[piv], m[row]);
        const Rat inv = 1 / m[row][static_cast<std::size_t>(c)];
        for (auto& v : m[row])
            v *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row)
                continue;
            const Rat f = m[r][static_cast<std::size_t>(c)];
            if (f == 0)
                continue;
            for (std::size_t j = static_cast<std::size_t>(c); j < static_cast<std::size_t>(cols); ++j)
                if (m[row][j] != 0)
                    m[r][j] -= f * m[row][j];
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

std::vector<std::vector<Rat>> nullspace(RatMatrix m, int cols)
{
    const auto pivots = rref(m, cols);
    std::vector<char> is_pivot(static_cast<std::size_t>(cols), 0);
    for (int c : pivots)
        is_pivot[static_cast<std::size_t>(c)] = 1;
    std::vector<std::vector<Rat>> basis;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)])
            continue;
        std::vector<Rat> v(static_cast<std::size_t>(cols));
        v[static_cast<std::size_t>(f)] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[static_cast<std::size_t>(pivots[r])] = -m[r][static_cast<std::size_t>(f)];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<Rat> primitive_integer(std::vector<Rat> v)
{
    Int l = 1;
    for (const auto& q : v)
        if (q != 0)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    Int g = 0;
    for (auto& q : v) {
        q *= l;
        if (q != 0)
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num_mpz_t());
    }
    if (g == 0)
        return v;
    auto first = std::find_if(v.begin(), v.end(), [](const Rat& q) { return q != 0; });
    if (*first < 0)
        g = -g;
    for (auto& q : v)
        q /= Rat(g);
    return v;
}

} // namespace legn
