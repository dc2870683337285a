#include "clinger/exact_radix.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "clinger/interval.hpp"

namespace clinger {

namespace {

// Size cap for exact powers reached through language membership; keeps a
// runaway exponent from exhausting memory before a caller can report it.
constexpr std::size_t kPowerBitLimit = std::size_t{1} << 26;

}  // namespace

DigitString::DigitString(std::vector<unsigned> ds, Radix r, DigitOrder o)
    : digits(std::move(ds)), radix(r), order(o) {
    for (unsigned dgt : digits)
        if (dgt >= radix.base)
            throw std::invalid_argument("digit " + std::to_string(dgt) +
                                        " out of range for base " +
                                        std::to_string(radix.base));
}

DigitString reverse(const DigitString& z) {
    std::vector<unsigned> ds(z.digits.rbegin(), z.digits.rend());
    const DigitOrder flipped = z.order == DigitOrder::LSD_FIRST
                                   ? DigitOrder::MSD_FIRST
                                   : DigitOrder::LSD_FIRST;
    return DigitString(std::move(ds), z.radix, flipped);
}

Int value_lsd(const DigitString& z) {
    if (z.order != DigitOrder::LSD_FIRST)
        throw std::invalid_argument("value_lsd: string is not LSD-first");
    Int v = 0;
    for (auto it = z.digits.rbegin(); it != z.digits.rend(); ++it)
        v = v * z.radix.base + *it;
    return v;
}

Int value_msd(const DigitString& z) {
    if (z.order != DigitOrder::MSD_FIRST)
        throw std::invalid_argument("value_msd: string is not MSD-first");
    Int v = 0;
    for (unsigned dgt : z.digits) v = v * z.radix.base + dgt;
    return v;
}

DigitString repeat_digit(unsigned digit, std::size_t count, Radix radix,
                         DigitOrder order) {
    if (digit >= radix.base)
        throw std::invalid_argument("repeat_digit: digit out of range");
    return DigitString(std::vector<unsigned>(count, digit), radix, order);
}

std::string digits_to_string(const DigitString& z) {
    const char* alphabet = "0123456789abcdef";
    std::ostringstream out;
    if (z.radix.base <= 16) {
        for (unsigned dgt : z.digits) out << alphabet[dgt];
    } else {
        for (std::size_t i = 0; i < z.digits.size(); ++i) {
            if (i) out << ',';
            out << z.digits[i];
        }
    }
    return out.str();
}

DigitString parse_digit_string(const std::string& text, Radix radix,
                               DigitOrder order) {
    std::vector<unsigned> ds;
    if (text.find(',') != std::string::npos) {
        std::istringstream in(text);
        std::string item;
        while (std::getline(in, item, ','))
            ds.push_back(static_cast<unsigned>(std::stoul(item)));
    } else {
        for (char c : text) {
            unsigned v;
            if (c >= '0' && c <= '9')
                v = static_cast<unsigned>(c - '0');
            else if (c >= 'a' && c <= 'z')
                v = static_cast<unsigned>(c - 'a') + 10;
            else if (c >= 'A' && c <= 'Z')
                v = static_cast<unsigned>(c - 'A') + 10;
            else
                throw std::invalid_argument(std::string("bad digit character '") + c +
                                            "'");
            ds.push_back(v);
        }
    }
    return DigitString(std::move(ds), radix, order);
}

namespace {

std::map<unsigned long, unsigned long> factorize(unsigned long v) {
    std::map<unsigned long, unsigned long> factors;
    for (unsigned long p = 2; p * p <= v; p += (p == 2 ? 1 : 2)) {
        while (v % p == 0) {
            ++factors[p];
            v /= p;
        }
    }
    if (v > 1) ++factors[v];
    return factors;
}

}  // namespace

std::optional<CommensurableWitness> is_commensurable(Radix d, Radix D) {
    const auto fd = factorize(d.base);
    const auto fD = factorize(D.base);
    if (fd.size() != fD.size()) return std::nullopt;

    // Same prime support with proportional exponent vectors.
    auto it_d = fd.begin();
    auto it_D = fD.begin();
    const unsigned long a0 = it_d->second;
    const unsigned long b0 = it_D->second;
    for (; it_d != fd.end(); ++it_d, ++it_D) {
        if (it_d->first != it_D->first) return std::nullopt;
        // a_i / b_i must equal a0 / b0
        if (Int(it_d->second) * b0 != Int(it_D->second) * a0) return std::nullopt;
    }
    const unsigned long g = std::gcd(a0, b0);
    CommensurableWitness w;
    w.p = b0 / g;
    w.q = a0 / g;
    return w;
}

BestApprox best_approx_of(const Rat& value, Radix d, unsigned n) {
    if (sgn(value) <= 0)
        throw std::invalid_argument("best_approx: value must be positive");
    if (n < 1) throw std::invalid_argument("best_approx: n must be >= 1");

    const Int base = d.base;
    long q = floor_log(value, base) - static_cast<long>(n - 1);
    // scaled = value / d^q lies in [d^{n-1}, d^n)
    const Rat scaled = value / pow_rat(base, q);

    bool tie = false;
    Int m = round_half_even(scaled.get_num(), scaled.get_den(), &tie);

    const Int top = pow_nat(base, n);
    if (m == top) {
        // Rounded past the digit range: renormalize one position up. The
        // boundary rule eps >= -1/(2d) holds by construction here.
        m = pow_nat(base, n - 1);
        ++q;
    }

    BestApprox out;
    out.m = m;
    out.q = q;
    out.n = n;
    out.tie = tie ? Tie::HALF_RESOLVED_TO_EVEN : Tie::NONE;
    return out;
}

BestApprox best_approx(const ConversionInput& in, Radix d, unsigned n) {
    if (in.f < 1) throw std::invalid_argument("best_approx: f must be >= 1");
    const unsigned long mag =
        in.e >= 0 ? static_cast<unsigned long>(in.e) : static_cast<unsigned long>(-in.e);
    const Int power = pow_checked(Int(in.input_radix.base), mag, kPowerBitLimit);
    Rat value(in.f);
    if (in.e >= 0)
        value *= power;
    else
        value /= power;
    return best_approx_of(value, d, n);
}

void LanguageSpec::validate() const {
    if (kind == LanguageKind::P) {
        if (d.base == 2 && n < 2)
            throw std::invalid_argument("language spec: n >= 2 required when d = 2");
        if (n < 1) throw std::invalid_argument("language spec: n must be >= 1");
        const Int low = pow_nat(d.base, n - 1);
        const Int high = pow_nat(d.base, n);
        if (target < low || target >= high)
            throw std::invalid_argument("language spec: target significand out of range");
    } else {
        const unsigned required_n = d.base == 2 ? 2 : 1;
        if (n != required_n)
            throw std::invalid_argument("language spec: n must be " +
                                        std::to_string(required_n) + " for base " +
                                        std::to_string(d.base));
        if (target <= 0 || target >= Int(d.base))
            throw std::invalid_argument("language spec: target digit out of range");
    }
}

bool language_member(const DigitString& z, const LanguageSpec& spec) {
    spec.validate();
    if (z.radix.base != spec.b.base)
        throw std::invalid_argument("language_member: digit radix does not match spec");

    if (spec.kind == LanguageKind::P) {
        if (z.digits.empty() || z.digits.front() != 1)
            throw MalformedPatternError("P-pattern input must start with digit 1");
        for (std::size_t i = 1; i < z.digits.size(); ++i)
            if (z.digits[i] != 0)
                throw MalformedPatternError("P-pattern input must be 1 followed by zeros");
        const unsigned long p = z.digits.size() - 1;
        const Int exponent = pow_checked(Int(spec.b.base), p, kPowerBitLimit);
        if (!exponent.fits_slong_p())
            throw ResourceLimitError("language_member: exponent b^p too large");
        const BestApprox approx =
            best_approx({Int(1), exponent.get_si(), spec.D}, spec.d, spec.n);
        return approx.m == spec.target;
    }

    const Int exponent =
        spec.kind == LanguageKind::L ? value_lsd(z) : value_msd(z);
    if (!exponent.fits_slong_p())
        throw ResourceLimitError("language_member: exponent value too large");
    const BestApprox approx =
        best_approx({Int(1), exponent.get_si(), spec.D}, spec.d, spec.n);
    // For d = 2 the first significand digit is always 1; the information is
    // in the second digit, so the tested significand is binary "1 target".
    const Int expected = spec.d.base == 2 ? Int(2) + spec.target : spec.target;
    return approx.m == expected;
}

bool clinger_inequality(Radix b, Radix d, unsigned n, LogKind log_kind) {
    if (n < 1) throw std::invalid_argument("clinger_inequality: n must be >= 1");
    const Rat lhs = Rat(Int(b.base) * Int(b.base), Int(b.base) - 1);
    const Int scale = 2 * pow_nat(Int(d.base), n - 1);

    // When the selected log is rational the two sides can be exactly equal,
    // so compare exactly instead of refining forever.
    const unsigned log_base =
        log_kind == LogKind::BASE_B ? b.base : (log_kind == LogKind::BASE_10 ? 10u : 0u);
    if (log_base != 0) {
        if (const auto w = is_commensurable(d, Radix(log_base))) {
            // d^p == base^q, so log_base d = q / p.
            const Rat rhs = Rat(scale) * Rat(Int(w->q), Int(w->p));
            return lhs < rhs;
        }
    }

    for (mpfr_prec_t prec = 128; prec <= precision_ceiling(); prec *= 2) {
        Interval log_term = Interval::log_nat(Int(d.base), prec);
        if (log_base != 0)
            log_term = log_term.div_pos(Interval::log_nat(Int(log_base), prec));
        const Interval rhs = log_term.mul_int(scale);
        if (rhs.wholly_greater(lhs)) return true;
        if (rhs.wholly_less(lhs)) return false;
    }
    throw CertificationError("clinger_inequality: interval straddles the bound at ceiling precision");
}

}  // namespace clinger
