#ifndef PRIOMET_MATH_HPP
#define PRIOMET_MATH_HPP

#include <cstddef>
#include <cstdint>
#include <limits>

namespace priomet {

inline constexpr double kRelTol = 1e-9;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// a <= b up to relative tolerance kRelTol.
inline bool approx_le(double a, double b, double rel = kRelTol) {
    return a <= b + rel * (b < 0 ? -b : b);
}

// Exact comparison a^x <= b^y over the integers.
bool pow_leq(std::uint64_t a, std::uint64_t x, std::uint64_t b, std::uint64_t y);

unsigned floor_log2(std::uint64_t x);
unsigned ceil_log2(std::uint64_t x);

// x^{1/p}; p = +inf gives 1.
double root_p(double x, double p);

// ||a - b||_p over `dim` coordinates; p = +inf is the max norm.
double lp_distance(const double* a, const double* b, std::size_t dim, double p);

// Partition of ranks 1..n into the doubly exponential blocks {1,2}, (2,4], (4,16], (16,256], ...
// Returns the block index of rank j.
std::size_t double_exp_block(std::uint64_t j);
// Last rank of block b (saturates at UINT64_MAX).
std::uint64_t double_exp_block_end(std::size_t b);

// Blocks {1..4}, (4,16], (16,65536], ... of the prioritized-dimension embedding.
std::size_t triple_exp_block(std::uint64_t j);
std::uint64_t triple_exp_block_end(std::size_t b);

// Hash mixing used to derive independent seeds.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace priomet

#endif
