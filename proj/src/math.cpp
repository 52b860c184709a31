#include "priomet/math.hpp"

#include <algorithm>
#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

namespace priomet {

bool pow_leq(std::uint64_t a, std::uint64_t x, std::uint64_t b, std::uint64_t y) {
    using boost::multiprecision::cpp_int;
    cpp_int lhs = boost::multiprecision::pow(cpp_int(a), static_cast<unsigned>(x));
    cpp_int rhs = boost::multiprecision::pow(cpp_int(b), static_cast<unsigned>(y));
    return lhs <= rhs;
}

unsigned floor_log2(std::uint64_t x) {
    unsigned r = 0;
    while (x > 1) {
        x >>= 1;
        ++r;
    }
    return r;
}

unsigned ceil_log2(std::uint64_t x) {
    if (x <= 1) return 0;
    return floor_log2(x - 1) + 1;
}

double root_p(double x, double p) {
    if (std::isinf(p)) return 1.0;
    return std::pow(x, 1.0 / p);
}

double lp_distance(const double* a, const double* b, std::size_t dim, double p) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (std::size_t k = 0; k < dim; ++k) m = std::max(m, std::abs(a[k] - b[k]));
        return m;
    }
    if (p == 1.0) {
        double s = 0.0;
        for (std::size_t k = 0; k < dim; ++k) s += std::abs(a[k] - b[k]);
        return s;
    }
    if (p == 2.0) {
        double s = 0.0;
        for (std::size_t k = 0; k < dim; ++k) {
            double d = a[k] - b[k];
            s += d * d;
        }
        return std::sqrt(s);
    }
    double s = 0.0;
    for (std::size_t k = 0; k < dim; ++k) s += std::pow(std::abs(a[k] - b[k]), p);
    return std::pow(s, 1.0 / p);
}

std::uint64_t double_exp_block_end(std::size_t b) {
    // 2^{2^b}
    if (b >= 6) return UINT64_MAX;
    unsigned e = 1u << b;
    if (e >= 64) return UINT64_MAX;
    return std::uint64_t{1} << e;
}

std::size_t double_exp_block(std::uint64_t j) {
    std::size_t b = 0;
    while (double_exp_block_end(b) < j) ++b;
    return b;
}

std::uint64_t triple_exp_block_end(std::size_t b) {
    // 2^{2^{2^b}}
    if (b >= 3) return UINT64_MAX;
    unsigned e = 1u << (1u << b);
    if (e >= 64) return UINT64_MAX;
    return std::uint64_t{1} << e;
}

std::size_t triple_exp_block(std::uint64_t j) {
    std::size_t b = 0;
    while (triple_exp_block_end(b) < j) ++b;
    return b;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace priomet
