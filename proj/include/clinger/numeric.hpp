#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace clinger {

using Int = mpz_class;
using Rat = mpq_class;

// Thrown when an exact computation would exceed its configured size budget.
struct ResourceLimitError : std::runtime_error {
    explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

// base^exp for exp >= 0.
Int pow_nat(const Int& base, unsigned long exp);

// base^exp as an exact rational; exp may be negative. Requires base >= 1.
Rat pow_rat(const Int& base, long exp);

// base^exp, refusing results wider than max_bits.
Int pow_checked(const Int& base, unsigned long exp, std::size_t max_bits);

// Largest k with base^k <= x. Requires x > 0, base >= 2.
long floor_log(const Rat& x, const Int& base);

// Nearest integer to num/den with ties to even. Requires den > 0.
// Sets *tie when num/den is exactly halfway between integers.
Int round_half_even(const Int& num, const Int& den, bool* tie = nullptr);

}  // namespace clinger
