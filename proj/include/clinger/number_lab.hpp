#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clinger/exact_radix.hpp"
#include "clinger/interval.hpp"
#include "clinger/numeric.hpp"

namespace clinger {

/// An angle whose fractional-part orbit is studied: log_d D for an
/// incommensurable pair (checked at construction), the square root of a
/// non-square natural, or an explicit rational (exact arithmetic; meant for
/// tests). Every query returns an outward-rounded enclosure.
class AngleTheta {
public:
    static AngleTheta log_ratio(Radix d, Radix D);
    static AngleTheta sqrt_nat(unsigned long v);
    static AngleTheta rational(const Rat& v);

    bool is_rational() const { return kind_ == Kind::RATIONAL; }
    const Rat& rational_value() const { return rational_; }
    Interval enclosure(mpfr_prec_t prec) const;
    std::string describe() const;

    friend bool operator==(const AngleTheta& a, const AngleTheta& b) {
        return a.kind_ == b.kind_ && a.d_ == b.d_ && a.num_ == b.num_ &&
               a.rational_ == b.rational_;
    }

private:
    enum class Kind { LOG_RATIO, SQRT, RATIONAL };
    AngleTheta() = default;
    Kind kind_ = Kind::RATIONAL;
    unsigned long d_ = 0;    // log base
    unsigned long num_ = 0;  // log argument or sqrt argument
    Rat rational_;
};

AngleTheta parse_theta(const std::vector<std::string>& tokens);

/// Certified enclosure of {offset + coeff * theta}: width below max_width
/// and strictly inside (0,1) for irrational angles, exact for rational
/// ones. Precision doubles from 128 bits up to the ceiling.
Interval certified_frac(const AngleTheta& theta, const Rat& offset,
                        const Int& coeff, const Rat& max_width = Rat(1, 1000000));

// Enclosure of {K * C^m * theta}, the scaled-orbit query.
Interval frac_scaled(const AngleTheta& theta, const Int& K, const Int& C,
                     unsigned long m);

struct DensityReport {
    std::string theta;
    unsigned long n = 0;
    unsigned bins = 0;
    std::vector<unsigned long> occupancy;
    unsigned long occupied = 0;
    double min_gap = 0;  // between circularly consecutive fractional parts
    double max_gap = 0;
    friend bool operator==(const DensityReport&, const DensityReport&) = default;
};

// Histogram of {k*theta}, k = 1..n, over equal bins.
DensityReport kronecker_density(const AngleTheta& theta, unsigned long n,
                                unsigned bins);

enum class WitnessStatus { WITNESS, NON_WITNESS, UNKNOWN };

struct WindowEntry {
    unsigned long m = 0;
    WitnessStatus status = WitnessStatus::UNKNOWN;
    std::string diff_lo_hex;  // certified |{C^m theta} - {C^{m+1} theta}|
    std::string diff_hi_hex;
    double diff_approx = 0;
    friend bool operator==(const WindowEntry&, const WindowEntry&) = default;
};

struct WindowReport {
    std::string theta;
    Int C = 0;
    Rat window_lo;  // C^-2
    Rat window_hi;  // 1 - C^-2
    std::vector<WindowEntry> entries;
    std::vector<unsigned long> witnesses;
    friend bool operator==(const WindowReport&, const WindowReport&) = default;
};

/// All m <= m_max whose certified |{C^m theta} - {C^{m+1} theta}| lies
/// strictly inside (C^-2, 1 - C^-2); uncertifiable entries are UNKNOWN,
/// never guessed.
WindowReport window_witnesses(const AngleTheta& theta, const Int& C,
                              unsigned long m_max);

struct BracketMember {
    unsigned long m = 0;
    double value_approx = 0;
    std::string value_lo_hex;
    std::string value_hi_hex;
    friend bool operator==(const BracketMember&, const BracketMember&) = default;
};

struct BracketReport {
    bool found = false;
    std::string theta;
    Int C = 0;
    Int K = 0;                // scaling factor that lands the bracket
    std::string bracket;      // "[1/3,1/2]" or "[1/2,2/3]"
    Rat tolerance;
    std::vector<BracketMember> members;
    std::string note;
    friend bool operator==(const BracketReport&, const BracketReport&) = default;
};

/// Searches K <= K_max for a scaling under which at least min_members of
/// the window witnesses have |{K C^m theta} - {K C^{m+1} theta}| inside one
/// of the two brackets, expanded by the tolerance. Reports which bracket.
BracketReport bracket_search(const AngleTheta& theta, const Int& C,
                             unsigned long m_max, unsigned long K_max,
                             std::size_t min_members = 5,
                             const Rat& tolerance = Rat(1, 1000));

/// A certified value of the form {offset + coeff * theta}; the outputs of
/// the scaled-orbit searches have offset 0 and coeff K * C^m.
struct AnglePoint {
    Rat offset;
    Int coeff = 0;
    friend bool operator==(const AnglePoint&, const AnglePoint&) = default;
};

struct ShiftReport {
    bool found = false;
    unsigned long q = 0;
    std::string note;
    std::vector<double> shifted_diffs;
    friend bool operator==(const ShiftReport&, const ShiftReport&) = default;
};

/// Least q <= q_max such that every pair's |{alpha_i + q theta} -
/// {beta_i + q theta}| lands in [1/3, 1/2] within the tolerance. Vacuously
/// q = 0 for empty input; exhausting q_max is an explicit failure.
ShiftReport normalize_shift(const AngleTheta& theta,
                            const std::vector<AnglePoint>& alphas,
                            const std::vector<AnglePoint>& betas,
                            unsigned long q_max,
                            const Rat& tolerance = Rat(1, 1000));

struct MixingPair {
    Rat alpha;
    Rat beta;
    unsigned long k = 0;
    bool found = false;
    bool difference_preserved = false;
    friend bool operator==(const MixingPair&, const MixingPair&) = default;
};

struct MixingReport {
    std::string theta;
    Rat a;
    Rat b;
    Rat epsilon;
    unsigned long k_ceiling = 0;
    unsigned long n_estimate = 0;  // max k over the sampled pairs
    bool all_found = true;
    std::vector<MixingPair> pairs;
    unsigned long seed = 0;
    friend bool operator==(const MixingReport&, const MixingReport&) = default;
};

/// Empirical joint-placement bound: samples pairs (alpha, beta) with
/// b - a + eps < {alpha} - {beta} < 1 - eps from a deterministic
/// low-discrepancy sequence, finds the least k with {beta + k theta} < a
/// and {alpha + k theta} > b, and verifies the difference is preserved at
/// that k. Pairs exceeding the ceiling are reported, not dropped.
MixingReport mixing_bound(const AngleTheta& theta, const Rat& epsilon,
                          const Rat& a, const Rat& b, unsigned trials,
                          unsigned long k_ceiling = 100000,
                          unsigned long seed = 0);

struct PumpingEntry {
    unsigned long p = 0;
    bool known = false;
    Int significand;  // class index m of the best approximation of D^{b^p}
    friend bool operator==(const PumpingEntry&, const PumpingEntry&) = default;
};

struct DivergenceList {
    unsigned long delta = 0;
    // every p with significand(p) != significand(p + delta)
    std::vector<unsigned long> ps;
    friend bool operator==(const DivergenceList&, const DivergenceList&) = default;
};

struct PumpingReport {
    unsigned b = 0, D = 0, d = 0, n = 0;
    std::vector<PumpingEntry> entries;
    std::vector<DivergenceList> divergences;    // one list per delta
    std::vector<unsigned long> missing_deltas;  // deltas whose list is empty
    friend bool operator==(const PumpingReport&, const PumpingReport&) = default;
};

/// Exact membership table for the pattern language: for each p <= p_max the
/// significand class of D^{b^p}, and for each delta <= delta_max a witness
/// p where classes diverge (anti-pumping evidence). Entries whose exact
/// power exceeds the resource ceiling are marked unknown.
PumpingReport pumping_search(Radix b, Radix D, Radix d, unsigned n,
                             unsigned long p_max, unsigned long delta_max);

// Recomputes a window entry at doubled precision; true when the new
// enclosure still certifies the same status inside the old one.
bool reverify_window_entry(const AngleTheta& theta, const Int& C,
                           const WindowEntry& entry);

}  // namespace clinger
