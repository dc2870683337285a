#pragma once

#include <mpfr.h>

#include <optional>
#include <string>

#include "clinger/numeric.hpp"

namespace clinger {

// Thrown when an enclosure cannot be tightened within the precision ceiling.
struct CertificationError : std::runtime_error {
    explicit CertificationError(const std::string& what) : std::runtime_error(what) {}
};

// Working-precision cap in bits; reads CLINGER_PRECISION_CEILING once.
mpfr_prec_t precision_ceiling();

/// An outward-rounded enclosure [lo, hi] at a fixed MPFR precision.
/// Every operation rounds the lower endpoint down and the upper endpoint up,
/// so the true value of any composed expression stays inside.
class Interval {
public:
    explicit Interval(mpfr_prec_t prec);
    Interval(const Interval& other);
    Interval& operator=(const Interval& other);
    ~Interval();

    static Interval from_rat(const Rat& v, mpfr_prec_t prec);
    static Interval point_zero(mpfr_prec_t prec);
    // Natural log of a positive integer.
    static Interval log_nat(const Int& v, mpfr_prec_t prec);
    // Square root of a nonnegative integer.
    static Interval sqrt_nat(const Int& v, mpfr_prec_t prec);

    mpfr_prec_t precision() const { return prec_; }
    const __mpfr_struct* lo() const { return lo_; }
    const __mpfr_struct* hi() const { return hi_; }

    Interval add(const Interval& other) const;
    Interval sub(const Interval& other) const;
    Interval abs() const;
    Interval mul_int(const Int& factor) const;  // factor >= 0
    Interval add_rat(const Rat& offset) const;
    // Quotient; requires both intervals strictly positive.
    Interval div_pos(const Interval& other) const;

    // Floor shared by both endpoints, if they agree.
    std::optional<Int> unambiguous_floor() const;
    // [lo - k, hi - k] for the unambiguous floor k; nullopt when straddling
    // an integer or touching one at an endpoint.
    std::optional<Interval> strict_frac() const;

    bool wholly_less(const Rat& bound) const;     // hi < bound
    bool wholly_greater(const Rat& bound) const;  // lo > bound
    bool strictly_inside(const Rat& lower, const Rat& upper) const;
    bool wholly_outside(const Rat& lower, const Rat& upper) const;
    // Width bounded by the given rational.
    bool width_below(const Rat& bound) const;
    bool contains(const Rat& v) const;

    double mid_approx() const;
    std::string lo_hex() const;  // exact round-trip form
    std::string hi_hex() const;
    std::string lo_dec(int digits = 12) const;  // rounded down
    std::string hi_dec(int digits = 12) const;  // rounded up

    static Interval parse_hex(const std::string& lo_hex, const std::string& hi_hex,
                              mpfr_prec_t prec);
    bool same_bounds(const Interval& other) const;

private:
    mpfr_prec_t prec_;
    mpfr_t lo_, hi_;
};

}  // namespace clinger
