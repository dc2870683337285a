#include "clinger/prime_encoding.hpp"

#include <set>

namespace clinger {

PrimeEncoding PrimeEncoding::first(unsigned count) {
    PrimeEncoding enc;
    Int p = 1;
    for (unsigned i = 0; i < count; ++i) {
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
        enc.primes.push_back(p.get_ui());
    }
    return enc;
}

void PrimeEncoding::validate() const {
    std::set<unsigned long> seen;
    for (unsigned long p : primes) {
        if (mpz_probab_prime_p(Int(p).get_mpz_t(), 30) == 0)
            throw std::invalid_argument("encoding entry " + std::to_string(p) +
                                        " is not prime");
        if (!seen.insert(p).second)
            throw std::invalid_argument("encoding primes must be distinct");
    }
}

Int encode_state(const std::vector<Int>& values, const PrimeEncoding& enc) {
    if (values.size() > enc.primes.size())
        throw std::invalid_argument("more values than encoding primes");
    Int code = 1;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < 0)
            throw std::invalid_argument("register values must be naturals");
        if (!values[i].fits_ulong_p())
            throw std::invalid_argument("register value too large to encode");
        Int factor;
        mpz_ui_pow_ui(factor.get_mpz_t(), enc.primes[i], values[i].get_ui());
        code *= factor;
    }
    return code;
}

DecodedState decode_state(const Int& n, const PrimeEncoding& enc) {
    if (n < 1) throw std::invalid_argument("decode_state: n must be >= 1");
    DecodedState out;
    out.leftover = n;
    for (unsigned long p : enc.primes) {
        Int count = 0;
        while (mpz_divisible_ui_p(out.leftover.get_mpz_t(), p)) {
            mpz_divexact_ui(out.leftover.get_mpz_t(), out.leftover.get_mpz_t(), p);
            ++count;
        }
        out.values.push_back(count);
    }
    return out;
}

}  // namespace clinger
