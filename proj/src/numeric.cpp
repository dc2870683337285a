#include "clinger/numeric.hpp"

#include <cmath>

namespace clinger {

Int pow_nat(const Int& base, unsigned long exp) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

Rat pow_rat(const Int& base, long exp) {
    if (base < 1) throw std::invalid_argument("pow_rat: base must be >= 1");
    Rat r = 1;
    if (exp >= 0) {
        mpz_pow_ui(mpq_numref(r.get_mpq_t()), base.get_mpz_t(),
                   static_cast<unsigned long>(exp));
    } else {
        mpz_pow_ui(mpq_denref(r.get_mpq_t()), base.get_mpz_t(),
                   static_cast<unsigned long>(-exp));
    }
    return r;
}

Int pow_checked(const Int& base, unsigned long exp, std::size_t max_bits) {
    if (base < 2) return pow_nat(base, exp);
    const std::size_t base_bits = mpz_sizeinbase(base.get_mpz_t(), 2);
    if (exp > 0 && base_bits > max_bits / exp)
        throw ResourceLimitError("pow_checked: " + base.get_str() + "^" +
                                 std::to_string(exp) + " exceeds " +
                                 std::to_string(max_bits) + " bits");
    return pow_nat(base, exp);
}

long floor_log(const Rat& x, const Int& base) {
    if (sgn(x) <= 0) throw std::invalid_argument("floor_log: x must be > 0");
    if (base < 2) throw std::invalid_argument("floor_log: base must be >= 2");

    const double num_bits =
        static_cast<double>(mpz_sizeinbase(x.get_num().get_mpz_t(), 2));
    const double den_bits =
        static_cast<double>(mpz_sizeinbase(x.get_den().get_mpz_t(), 2));
    const double base_lg = std::log2(base.get_d());
    long k = static_cast<long>(std::floor((num_bits - den_bits) / base_lg));

    // sizeinbase over-reports by at most one bit; fix up exactly.
    Rat p = pow_rat(base, k);
    while (p > x) {
        --k;
        p /= base;
    }
    Rat next = p * base;
    while (next <= x) {
        ++k;
        p = next;
        next *= base;
    }
    return k;
}

Int round_half_even(const Int& num, const Int& den, bool* tie) {
    if (sgn(den) <= 0) throw std::invalid_argument("round_half_even: den must be > 0");
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    const Int twice_rem = 2 * r;
    bool was_tie = false;
    if (twice_rem > den) {
        ++q;
    } else if (twice_rem == den) {
        was_tie = true;
        if (mpz_odd_p(q.get_mpz_t())) ++q;
    }
    if (tie) *tie = was_tie;
    return q;
}

}  // namespace clinger
