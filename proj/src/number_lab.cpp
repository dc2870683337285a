#include "clinger/number_lab.hpp"

#include <algorithm>
#include <cmath>

namespace clinger {

AngleTheta AngleTheta::log_ratio(Radix d, Radix D) {
    if (is_commensurable(d, D))
        throw std::invalid_argument("log_" + std::to_string(d.base) + "(" +
                                    std::to_string(D.base) +
                                    ") is rational: the radices are commensurable");
    AngleTheta t;
    t.kind_ = Kind::LOG_RATIO;
    t.d_ = d.base;
    t.num_ = D.base;
    return t;
}

AngleTheta AngleTheta::sqrt_nat(unsigned long v) {
    const Int root = sqrt(Int(v));
    if (root * root == Int(v))
        throw std::invalid_argument("sqrt(" + std::to_string(v) +
                                    ") is an integer, not an irrational angle");
    AngleTheta t;
    t.kind_ = Kind::SQRT;
    t.num_ = v;
    return t;
}

AngleTheta AngleTheta::rational(const Rat& v) {
    AngleTheta t;
    t.kind_ = Kind::RATIONAL;
    t.rational_ = v;
    t.rational_.canonicalize();
    return t;
}

Interval AngleTheta::enclosure(mpfr_prec_t prec) const {
    switch (kind_) {
        case Kind::LOG_RATIO:
            return Interval::log_nat(Int(num_), prec)
                .div_pos(Interval::log_nat(Int(d_), prec));
        case Kind::SQRT:
            return Interval::sqrt_nat(Int(num_), prec);
        case Kind::RATIONAL:
            return Interval::from_rat(rational_, prec);
    }
    throw std::logic_error("unreachable");
}

std::string AngleTheta::describe() const {
    switch (kind_) {
        case Kind::LOG_RATIO:
            return "log" + std::to_string(d_) + "(" + std::to_string(num_) + ")";
        case Kind::SQRT:
            return "sqrt" + std::to_string(num_);
        case Kind::RATIONAL:
            return rational_.get_str();
    }
    return "?";
}

AngleTheta parse_theta(const std::vector<std::string>& tokens) {
    if (tokens.empty()) throw std::invalid_argument("empty theta specification");
    const std::string& head = tokens[0];
    if (head == "log") {
        if (tokens.size() != 3)
            throw std::invalid_argument("expected: log <base> <argument>");
        return AngleTheta::log_ratio(
            Radix(static_cast<unsigned>(std::stoul(tokens[1]))),
            Radix(static_cast<unsigned>(std::stoul(tokens[2]))));
    }
    if (head.rfind("sqrt", 0) == 0) {
        const std::string arg =
            head == "sqrt" ? (tokens.size() > 1 ? tokens[1] : "") : head.substr(4);
        if (arg.empty()) throw std::invalid_argument("expected: sqrt<N> or sqrt N");
        return AngleTheta::sqrt_nat(std::stoul(arg));
    }
    if (tokens.size() == 1) {
        Rat v;
        if (mpq_set_str(v.get_mpq_t(), head.c_str(), 10) != 0)
            throw std::invalid_argument("bad rational angle '" + head + "'");
        v.canonicalize();
        return AngleTheta::rational(v);
    }
    throw std::invalid_argument("unrecognized theta specification");
}

namespace {

Rat exact_frac(const Rat& v) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), v.get_num().get_mpz_t(), v.get_den().get_mpz_t());
    return v - q;
}

constexpr mpfr_prec_t kStartPrec = 128;

}  // namespace

Interval certified_frac(const AngleTheta& theta, const Rat& offset,
                        const Int& coeff, const Rat& max_width) {
    if (coeff < 0) throw std::invalid_argument("certified_frac: coeff must be >= 0");
    if (theta.is_rational() || sgn(coeff) == 0) {
        Rat value = offset;
        if (sgn(coeff) != 0) value += Rat(coeff) * theta.rational_value();
        return Interval::from_rat(exact_frac(value), 192);
    }
    const mpfr_prec_t floor_prec =
        kStartPrec + static_cast<mpfr_prec_t>(mpz_sizeinbase(coeff.get_mpz_t(), 2));
    for (mpfr_prec_t prec = floor_prec; prec <= precision_ceiling(); prec *= 2) {
        const Interval value =
            theta.enclosure(prec).mul_int(coeff).add_rat(offset);
        const auto frac = value.strict_frac();
        if (frac && frac->width_below(max_width)) return *frac;
    }
    throw CertificationError("certified_frac: cannot certify {" + offset.get_str() +
                             " + " + coeff.get_str() + " * " + theta.describe() +
                             "} within the precision ceiling");
}

Interval frac_scaled(const AngleTheta& theta, const Int& K, const Int& C,
                     unsigned long m) {
    if (K < 1 || C < 2)
        throw std::invalid_argument("frac_scaled: need K >= 1 and C >= 2");
    const Int coeff = K * pow_checked(C, m, std::size_t{1} << 22);
    return certified_frac(theta, Rat(0), coeff);
}

DensityReport kronecker_density(const AngleTheta& theta, unsigned long n,
                                unsigned bins) {
    if (bins < 2) throw std::invalid_argument("kronecker_density: bins must be >= 2");
    if (n < 1) throw std::invalid_argument("kronecker_density: n must be >= 1");

    DensityReport report;
    report.theta = theta.describe();
    report.n = n;
    report.bins = bins;
    report.occupancy.assign(bins, 0);

    std::vector<double> points;
    points.reserve(n);
    const mpfr_prec_t prec =
        kStartPrec + static_cast<mpfr_prec_t>(std::log2(static_cast<double>(n)) + 8);
    const Interval enc = theta.enclosure(prec);
    for (unsigned long k = 1; k <= n; ++k) {
        double mid;
        if (theta.is_rational()) {
            mid = exact_frac(Rat(static_cast<unsigned long>(k)) *
                             theta.rational_value())
                      .get_d();
        } else {
            const auto frac = enc.mul_int(Int(k)).strict_frac();
            mid = frac ? frac->mid_approx()
                       : certified_frac(theta, Rat(0), Int(k)).mid_approx();
        }
        points.push_back(mid);
        auto bin = static_cast<std::size_t>(mid * bins);
        if (bin >= bins) bin = bins - 1;
        ++report.occupancy[bin];
    }
    for (unsigned long count : report.occupancy)
        if (count > 0) ++report.occupied;

    std::sort(points.begin(), points.end());
    report.min_gap = 1;
    report.max_gap = 0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const double gap = points[i + 1] - points[i];
        report.min_gap = std::min(report.min_gap, gap);
        report.max_gap = std::max(report.max_gap, gap);
    }
    if (points.size() >= 2) {
        const double wrap = 1.0 - points.back() + points.front();
        report.min_gap = std::min(report.min_gap, wrap);
        report.max_gap = std::max(report.max_gap, wrap);
    } else {
        report.min_gap = report.max_gap = 1;
    }
    return report;
}

namespace {

// Certified |{x} - {y}| for two angle points at matching tightness.
Interval certified_abs_diff(const AngleTheta& theta, const AnglePoint& x,
                            const AnglePoint& y, const Rat& width) {
    const Interval fx = certified_frac(theta, x.offset, x.coeff, width);
    const Interval fy = certified_frac(theta, y.offset, y.coeff, width);
    return fx.sub(fy).abs();
}

const Rat kTightWidths[] = {Rat(Int(1), Int("100000000")),
                            Rat(Int(1), Int("1000000000000")),
                            Rat(Int(1), Int("1000000000000000000"))};

}  // namespace

WindowReport window_witnesses(const AngleTheta& theta, const Int& C,
                              unsigned long m_max) {
    if (C < 2) throw std::invalid_argument("window_witnesses: C must be >= 2");
    WindowReport report;
    report.theta = theta.describe();
    report.C = C;
    report.window_lo = Rat(1) / (C * C);
    report.window_hi = Rat(1) - report.window_lo;

    for (unsigned long m = 0; m <= m_max; ++m) {
        WindowEntry entry;
        entry.m = m;
        const AnglePoint low{Rat(0), pow_checked(C, m, std::size_t{1} << 22)};
        const AnglePoint high{Rat(0), low.coeff * C};

        if (theta.is_rational()) {
            // exact path; a value exactly on the boundary is excluded
            const Rat diff_exact =
                abs(exact_frac(Rat(low.coeff) * theta.rational_value()) -
                    exact_frac(Rat(high.coeff) * theta.rational_value()));
            entry.status = diff_exact > report.window_lo &&
                                   diff_exact < report.window_hi
                               ? WitnessStatus::WITNESS
                               : WitnessStatus::NON_WITNESS;
            const Interval diff = Interval::from_rat(diff_exact, 192);
            entry.diff_lo_hex = diff.lo_hex();
            entry.diff_hi_hex = diff.hi_hex();
            entry.diff_approx = diff.mid_approx();
        } else {
            entry.status = WitnessStatus::UNKNOWN;
            try {
                for (const Rat& width : kTightWidths) {
                    const Interval diff = certified_abs_diff(theta, low, high, width);
                    entry.diff_lo_hex = diff.lo_hex();
                    entry.diff_hi_hex = diff.hi_hex();
                    entry.diff_approx = diff.mid_approx();
                    if (diff.strictly_inside(report.window_lo, report.window_hi)) {
                        entry.status = WitnessStatus::WITNESS;
                        break;
                    }
                    if (diff.wholly_outside(report.window_lo, report.window_hi)) {
                        entry.status = WitnessStatus::NON_WITNESS;
                        break;
                    }
                }
            } catch (const CertificationError&) {
                entry.status = WitnessStatus::UNKNOWN;
            }
        }
        if (entry.status == WitnessStatus::WITNESS) report.witnesses.push_back(m);
        report.entries.push_back(std::move(entry));
    }
    return report;
}

bool reverify_window_entry(const AngleTheta& theta, const Int& C,
                           const WindowEntry& entry) {
    if (entry.diff_lo_hex.empty()) return false;
    const Interval old = Interval::parse_hex(entry.diff_lo_hex, entry.diff_hi_hex, 256);
    const AnglePoint low{Rat(0), pow_checked(C, entry.m, std::size_t{1} << 22)};
    const AnglePoint high{Rat(0), low.coeff * C};
    // tighten well past the recorded enclosure
    const Rat width = kTightWidths[2] / 1000000;
    const Interval fresh = certified_abs_diff(theta, low, high, width);
    if (mpfr_cmp(fresh.lo(), old.lo()) < 0) return false;
    if (mpfr_cmp(fresh.hi(), old.hi()) > 0) return false;
    if (entry.status == WitnessStatus::WITNESS) {
        const Rat lo = Rat(1) / (C * C);
        return fresh.strictly_inside(lo, Rat(1) - lo);
    }
    return true;
}

BracketReport bracket_search(const AngleTheta& theta, const Int& C,
                             unsigned long m_max, unsigned long K_max,
                             std::size_t min_members, const Rat& tolerance) {
    BracketReport report;
    report.theta = theta.describe();
    report.C = C;
    report.tolerance = tolerance;
    if (K_max == 0) {
        report.note = "empty search: K_max is zero";
        return report;
    }

    const auto window = window_witnesses(theta, C, m_max);
    if (window.witnesses.size() < min_members) {
        report.note = "only " + std::to_string(window.witnesses.size()) +
                      " window witnesses below m_max";
        return report;
    }

    const Rat low_lo = Rat(1, 3) - tolerance, low_hi = Rat(1, 2) + tolerance;
    const Rat high_lo = Rat(1, 2) - tolerance, high_hi = Rat(2, 3) + tolerance;

    for (Int K = 1; K <= static_cast<unsigned long>(K_max); ++K) {
        std::vector<BracketMember> low_members, high_members;
        for (unsigned long m : window.witnesses) {
            const Int base = pow_checked(C, m, std::size_t{1} << 22);
            const AnglePoint x{Rat(0), K * base};
            const AnglePoint y{Rat(0), K * base * C};
            Interval diff = certified_abs_diff(theta, x, y, kTightWidths[0]);
            BracketMember member;
            member.m = m;
            member.value_approx = diff.mid_approx();
            member.value_lo_hex = diff.lo_hex();
            member.value_hi_hex = diff.hi_hex();
            if (diff.strictly_inside(low_lo, low_hi)) low_members.push_back(member);
            if (diff.strictly_inside(high_lo, high_hi)) high_members.push_back(member);
        }
        if (low_members.size() >= min_members) {
            report.found = true;
            report.K = K;
            report.bracket = "[1/3,1/2]";
            report.members = std::move(low_members);
            return report;
        }
        if (high_members.size() >= min_members) {
            report.found = true;
            report.K = K;
            report.bracket = "[1/2,2/3]";
            report.members = std::move(high_members);
            return report;
        }
    }
    report.note = "no scaling below K_max brackets " + std::to_string(min_members) +
                  " members";
    return report;
}

ShiftReport normalize_shift(const AngleTheta& theta,
                            const std::vector<AnglePoint>& alphas,
                            const std::vector<AnglePoint>& betas,
                            unsigned long q_max, const Rat& tolerance) {
    if (alphas.size() != betas.size())
        throw std::invalid_argument("normalize_shift: mismatched pair lists");
    ShiftReport report;
    if (alphas.empty()) {  // vacuous
        report.found = true;
        report.q = 0;
        report.note = "no pairs: q = 0 vacuously";
        return report;
    }
    const Rat lo = Rat(1, 3) - tolerance, hi = Rat(1, 2) + tolerance;
    for (unsigned long q = 0; q <= q_max; ++q) {
        bool all = true;
        std::vector<double> diffs;
        for (std::size_t i = 0; i < alphas.size() && all; ++i) {
            AnglePoint x = alphas[i];
            AnglePoint y = betas[i];
            x.coeff += static_cast<unsigned long>(q);
            y.coeff += static_cast<unsigned long>(q);
            const Interval diff = certified_abs_diff(theta, x, y, kTightWidths[0]);
            diffs.push_back(diff.mid_approx());
            all = diff.strictly_inside(lo, hi);
        }
        if (all) {
            report.found = true;
            report.q = q;
            report.shifted_diffs = std::move(diffs);
            return report;
        }
    }
    report.note = "no shift below q_max lands every pair in [1/3,1/2]";
    return report;
}

namespace {

// Deterministic low-discrepancy point in (0,1): the Weyl sequence on the
// inverse golden ratio, with margins away from 0 and 1.
double weyl_point(unsigned long index, double phase) {
    constexpr double kGolden = 0.6180339887498949;
    const double v = std::fmod(phase + static_cast<double>(index) * kGolden, 1.0);
    return 0.02 + 0.96 * v;
}

Rat to_exact(double v) {
    const long scaled = std::lround(v * 1048576.0);
    return Rat(scaled, 1048576);
}

}  // namespace

MixingReport mixing_bound(const AngleTheta& theta, const Rat& epsilon,
                          const Rat& a, const Rat& b, unsigned trials,
                          unsigned long k_ceiling, unsigned long seed) {
    if (!(a > 0 && a < b && b < 1))
        throw std::invalid_argument("mixing_bound: need 0 < a < b < 1");
    if (!(epsilon > 0)) throw std::invalid_argument("mixing_bound: epsilon must be > 0");
    const Rat diff_lo = b - a + epsilon;
    const Rat diff_hi = Rat(1) - epsilon;
    if (!(diff_lo < diff_hi))
        throw std::invalid_argument("mixing_bound: empty hypothesis range");

    MixingReport report;
    report.theta = theta.describe();
    report.a = a;
    report.b = b;
    report.epsilon = epsilon;
    report.k_ceiling = k_ceiling;
    report.seed = seed;

    unsigned long index = seed * 7919;
    while (report.pairs.size() < trials) {
        const double u = weyl_point(index, 0.5);
        const double v = weyl_point(index, 0.25);
        ++index;
        const Rat diff =
            diff_lo + to_exact(u) * (diff_hi - diff_lo);
        const Rat beta = to_exact(v) * (Rat(1) - diff);
        const Rat alpha = beta + diff;
        // hypothesis must hold exactly for the sampled pair
        if (!(beta > 0 && alpha < 1 && diff > diff_lo && diff < diff_hi)) continue;

        MixingPair pair;
        pair.alpha = alpha;
        pair.beta = beta;
        for (unsigned long k = 0; k <= k_ceiling; ++k) {
            Interval fb = certified_frac(theta, beta, Int(k));
            if (fb.contains(a)) fb = certified_frac(theta, beta, Int(k), kTightWidths[1]);
            if (!fb.wholly_less(a)) continue;
            Interval fa = certified_frac(theta, alpha, Int(k));
            if (fa.contains(b)) fa = certified_frac(theta, alpha, Int(k), kTightWidths[1]);
            if (!fa.wholly_greater(b)) continue;
            pair.k = k;
            pair.found = true;
            // the chosen k preserves the difference exactly
            const Interval shifted_diff = fa.sub(fb);
            pair.difference_preserved = shifted_diff.contains(alpha - beta);
            break;
        }
        if (pair.found) report.n_estimate = std::max(report.n_estimate, pair.k);
        report.all_found = report.all_found && pair.found;
        report.pairs.push_back(std::move(pair));
    }
    return report;
}

PumpingReport pumping_search(Radix b, Radix D, Radix d, unsigned n,
                             unsigned long p_max, unsigned long delta_max) {
    if (is_commensurable(d, D))
        throw std::invalid_argument("pumping_search: radices are commensurable");
    if (n < 1 || (d.base == 2 && n < 2))
        throw std::invalid_argument("pumping_search: precision too small for the radix");

    PumpingReport report;
    report.b = b.base;
    report.D = D.base;
    report.d = d.base;
    report.n = n;

    for (unsigned long p = 0; p <= p_max; ++p) {
        PumpingEntry entry;
        entry.p = p;
        try {
            const Int exponent = pow_checked(Int(b.base), p, std::size_t{1} << 22);
            if (!exponent.fits_slong_p())
                throw ResourceLimitError("exponent does not fit");
            entry.significand =
                best_approx({Int(1), exponent.get_si(), D}, d, n).m;
            entry.known = true;
        } catch (const ResourceLimitError&) {
            entry.known = false;
        }
        report.entries.push_back(std::move(entry));
    }

    for (unsigned long delta = 1; delta <= delta_max; ++delta) {
        DivergenceList list;
        list.delta = delta;
        for (unsigned long p = 0; p + delta <= p_max; ++p) {
            const auto& head = report.entries[p];
            const auto& tail = report.entries[p + delta];
            if (!head.known || !tail.known) continue;
            if (head.significand != tail.significand) list.ps.push_back(p);
        }
        if (list.ps.empty()) report.missing_deltas.push_back(delta);
        report.divergences.push_back(std::move(list));
    }
    return report;
}

}  // namespace clinger
