#include "clinger/interval.hpp"

#include <cstdlib>

namespace clinger {

mpfr_prec_t precision_ceiling() {
    static const mpfr_prec_t ceiling = [] {
        const char* env = std::getenv("CLINGER_PRECISION_CEILING");
        if (env) {
            const long v = std::atol(env);
            if (v >= MPFR_PREC_MIN) return static_cast<mpfr_prec_t>(v);
        }
        return static_cast<mpfr_prec_t>(1 << 20);
    }();
    return ceiling;
}

Interval::Interval(mpfr_prec_t prec) : prec_(prec) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& other) : prec_(other.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval& Interval::operator=(const Interval& other) {
    if (this != &other) {
        mpfr_set_prec(lo_, other.prec_);
        mpfr_set_prec(hi_, other.prec_);
        prec_ = other.prec_;
        mpfr_set(lo_, other.lo_, MPFR_RNDD);
        mpfr_set(hi_, other.hi_, MPFR_RNDU);
    }
    return *this;
}

Interval::~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

Interval Interval::from_rat(const Rat& v, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_q(r.lo_, v.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, v.get_mpq_t(), MPFR_RNDU);
    return r;
}

Interval Interval::point_zero(mpfr_prec_t prec) { return Interval(prec); }

Interval Interval::log_nat(const Int& v, mpfr_prec_t prec) {
    if (v <= 0) throw std::invalid_argument("log_nat: v must be > 0");
    Interval r(prec);
    mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
    mpfr_log(r.lo_, r.lo_, MPFR_RNDD);
    mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
    mpfr_log(r.hi_, r.hi_, MPFR_RNDU);
    return r;
}

Interval Interval::sqrt_nat(const Int& v, mpfr_prec_t prec) {
    if (v < 0) throw std::invalid_argument("sqrt_nat: v must be >= 0");
    Interval r(prec);
    mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
    mpfr_sqrt(r.lo_, r.lo_, MPFR_RNDD);
    mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
    mpfr_sqrt(r.hi_, r.hi_, MPFR_RNDU);
    return r;
}

Interval Interval::add(const Interval& other) const {
    Interval r(prec_);
    mpfr_add(r.lo_, lo_, other.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, hi_, other.hi_, MPFR_RNDU);
    return r;
}

Interval Interval::sub(const Interval& other) const {
    Interval r(prec_);
    mpfr_sub(r.lo_, lo_, other.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, hi_, other.lo_, MPFR_RNDU);
    return r;
}

Interval Interval::abs() const {
    Interval r(prec_);
    if (mpfr_sgn(lo_) >= 0) {
        r = *this;
    } else if (mpfr_sgn(hi_) <= 0) {
        mpfr_neg(r.lo_, hi_, MPFR_RNDD);
        mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    } else {
        // straddles zero
        mpfr_set_zero(r.lo_, 1);
        mpfr_neg(r.hi_, lo_, MPFR_RNDU);
        if (mpfr_cmp(r.hi_, hi_) < 0) mpfr_set(r.hi_, hi_, MPFR_RNDU);
    }
    return r;
}

Interval Interval::mul_int(const Int& factor) const {
    if (factor < 0) throw std::invalid_argument("mul_int: factor must be >= 0");
    Interval r(prec_);
    mpfr_mul_z(r.lo_, lo_, factor.get_mpz_t(), MPFR_RNDD);
    mpfr_mul_z(r.hi_, hi_, factor.get_mpz_t(), MPFR_RNDU);
    return r;
}

Interval Interval::add_rat(const Rat& offset) const {
    Interval r(prec_);
    mpfr_add_q(r.lo_, lo_, offset.get_mpq_t(), MPFR_RNDD);
    mpfr_add_q(r.hi_, hi_, offset.get_mpq_t(), MPFR_RNDU);
    return r;
}

Interval Interval::div_pos(const Interval& other) const {
    if (mpfr_sgn(lo_) <= 0 || mpfr_sgn(other.lo_) <= 0)
        throw std::invalid_argument("div_pos: intervals must be positive");
    Interval r(prec_);
    mpfr_div(r.lo_, lo_, other.hi_, MPFR_RNDD);
    mpfr_div(r.hi_, hi_, other.lo_, MPFR_RNDU);
    return r;
}

std::optional<Int> Interval::unambiguous_floor() const {
    mpfr_t flo, fhi;
    mpfr_init2(flo, prec_);
    mpfr_init2(fhi, prec_);
    mpfr_floor(flo, lo_);
    mpfr_floor(fhi, hi_);
    std::optional<Int> result;
    if (mpfr_equal_p(flo, fhi)) {
        Int k;
        mpfr_get_z(k.get_mpz_t(), flo, MPFR_RNDN);
        result = k;
    }
    mpfr_clear(flo);
    mpfr_clear(fhi);
    return result;
}

std::optional<Interval> Interval::strict_frac() const {
    const auto k = unambiguous_floor();
    if (!k) return std::nullopt;
    Interval r(prec_);
    mpfr_sub_z(r.lo_, lo_, k->get_mpz_t(), MPFR_RNDD);
    mpfr_sub_z(r.hi_, hi_, k->get_mpz_t(), MPFR_RNDU);
    // reject enclosures touching an integer
    if (mpfr_sgn(r.lo_) <= 0) return std::nullopt;
    if (mpfr_cmp_ui(r.hi_, 1) >= 0) return std::nullopt;
    return r;
}

bool Interval::wholly_less(const Rat& bound) const {
    return mpfr_cmp_q(hi_, const_cast<mpq_ptr>(bound.get_mpq_t())) < 0;
}

bool Interval::wholly_greater(const Rat& bound) const {
    return mpfr_cmp_q(lo_, const_cast<mpq_ptr>(bound.get_mpq_t())) > 0;
}

bool Interval::strictly_inside(const Rat& lower, const Rat& upper) const {
    return wholly_greater(lower) && wholly_less(upper);
}

bool Interval::wholly_outside(const Rat& lower, const Rat& upper) const {
    return wholly_less(lower) || wholly_greater(upper);
}

bool Interval::width_below(const Rat& bound) const {
    mpfr_t w;
    mpfr_init2(w, prec_);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    const bool ok = mpfr_cmp_q(w, const_cast<mpq_ptr>(bound.get_mpq_t())) < 0;
    mpfr_clear(w);
    return ok;
}

bool Interval::contains(const Rat& v) const {
    return mpfr_cmp_q(lo_, const_cast<mpq_ptr>(v.get_mpq_t())) <= 0 &&
           mpfr_cmp_q(hi_, const_cast<mpq_ptr>(v.get_mpq_t())) >= 0;
}

double Interval::mid_approx() const {
    return (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN)) / 2.0;
}

static std::string format_one(const mpfr_t v, const char* fmt) {
    char* s = nullptr;
    mpfr_asprintf(&s, fmt, v);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

std::string Interval::lo_hex() const { return format_one(lo_, "%Ra"); }
std::string Interval::hi_hex() const { return format_one(hi_, "%Ra"); }

std::string Interval::lo_dec(int digits) const {
    const std::string fmt = "%." + std::to_string(digits) + "RDf";
    return format_one(lo_, fmt.c_str());
}

std::string Interval::hi_dec(int digits) const {
    const std::string fmt = "%." + std::to_string(digits) + "RUf";
    return format_one(hi_, fmt.c_str());
}

Interval Interval::parse_hex(const std::string& lo_hex, const std::string& hi_hex,
                             mpfr_prec_t prec) {
    Interval r(prec);
    if (mpfr_set_str(r.lo_, lo_hex.c_str(), 0, MPFR_RNDD) != 0 ||
        mpfr_set_str(r.hi_, hi_hex.c_str(), 0, MPFR_RNDU) != 0)
        throw std::invalid_argument("parse_hex: malformed interval endpoint");
    return r;
}

bool Interval::same_bounds(const Interval& other) const {
    return mpfr_equal_p(lo_, other.lo_) && mpfr_equal_p(hi_, other.hi_);
}

}  // namespace clinger
