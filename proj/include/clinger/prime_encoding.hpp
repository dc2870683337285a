#pragma once

#include <vector>

#include "clinger/numeric.hpp"

namespace clinger {

/// Ordered pairwise-distinct primes, one per register.
struct PrimeEncoding {
    std::vector<unsigned long> primes;

    // The first `count` primes: 2, 3, 5, ...
    static PrimeEncoding first(unsigned count);
    void validate() const;  // distinct primes
};

// Product of primes[i]^values[i]; the empty product is 1.
Int encode_state(const std::vector<Int>& values, const PrimeEncoding& enc);

struct DecodedState {
    std::vector<Int> values;
    Int leftover;  // cofactor after all encoding primes are divided out
};

// Exponent vector of n over the encoding primes plus the residual cofactor
// (1 exactly when n is a pure product of them). Requires n >= 1.
DecodedState decode_state(const Int& n, const PrimeEncoding& enc);

}  // namespace clinger
