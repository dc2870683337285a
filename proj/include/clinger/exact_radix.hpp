#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clinger/numeric.hpp"

namespace clinger {

enum class DigitOrder { LSD_FIRST, MSD_FIRST };

// A positional radix, >= 2.
struct Radix {
    unsigned base;
    explicit Radix(unsigned b) : base(b) {
        if (b < 2) throw std::invalid_argument("radix must be >= 2");
    }
    friend bool operator==(Radix a, Radix b) { return a.base == b.base; }
};

/// A finite digit sequence with a declared significance order. The empty
/// sequence is valid and has value 0; leading/trailing zeros are preserved
/// as given.
struct DigitString {
    std::vector<unsigned> digits;
    Radix radix;
    DigitOrder order;

    DigitString(std::vector<unsigned> ds, Radix r, DigitOrder o);
};

// Flips the digit sequence together with its significance tag; value is
// preserved.
DigitString reverse(const DigitString& z);

// Sum of digits[i] * base^i. Requires LSD_FIRST.
Int value_lsd(const DigitString& z);

// Conventional radix value. Requires MSD_FIRST.
Int value_msd(const DigitString& z);

// count copies of the given digit. Requires digit < radix.base.
DigitString repeat_digit(unsigned digit, std::size_t count, Radix radix,
                         DigitOrder order);

// Render a string like "321" (or comma-separated for bases > 16).
std::string digits_to_string(const DigitString& z);
DigitString parse_digit_string(const std::string& text, Radix radix, DigitOrder order);

struct CommensurableWitness {
    unsigned long p = 0;  // d^p == D^q, minimal
    unsigned long q = 0;
};

// log_d D is rational exactly when such a witness exists.
std::optional<CommensurableWitness> is_commensurable(Radix d, Radix D);

// The value f * D^e with f >= 1; e may be negative.
struct ConversionInput {
    Int f;
    long e;
    Radix input_radix;
};

enum class Tie { NONE, HALF_RESOLVED_TO_EVEN };

/// The best n-digit approximation m * d^q of a positive value r, defined by
/// r = (m + eps) * d^q with d^{n-1} <= m < d^n, |eps| <= 1/2, and
/// m = d^{n-1} admitted only when eps >= -1/(2d). Exact halves resolve to
/// even and are flagged.
struct BestApprox {
    Int m;
    long q = 0;
    unsigned n = 1;
    Tie tie = Tie::NONE;
};

BestApprox best_approx(const ConversionInput& in, Radix d, unsigned n);
// Same, for an arbitrary positive rational.
BestApprox best_approx_of(const Rat& value, Radix d, unsigned n);

enum class LanguageKind { P, L, M };

/// Membership parameters: for kind P the target is the full significand of
/// the best n-digit approximation of D^{b^p}; for kinds L and M the target
/// is a single output digit per the n = 1 (d > 2) / n = 2 (d = 2) convention.
struct LanguageSpec {
    LanguageKind kind;
    Radix b;
    Radix D;
    Radix d;
    unsigned n;
    Int target;

    void validate() const;
};

// A kind-P input that is not of the shape 1 0{p}.
struct MalformedPatternError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

bool language_member(const DigitString& z, const LanguageSpec& spec);

enum class LogKind { NATURAL, BASE_B, BASE_10 };

// Decides b^2/(b-1) < 2 d^{n-1} log d with outward-rounded directed
// evaluation, widening precision until the interval separates from the
// bound; rational log cases (commensurable bases) are compared exactly.
bool clinger_inequality(Radix b, Radix d, unsigned n,
                        LogKind log_kind = LogKind::NATURAL);

}  // namespace clinger
