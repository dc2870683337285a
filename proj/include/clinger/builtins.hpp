#pragma once

#include "clinger/exact_radix.hpp"
#include "clinger/machine.hpp"
#include "clinger/prime_encoding.hpp"
#include "clinger/register_machine.hpp"

namespace clinger {

/// A hand-structured two-counter machine that consumes the digits of n
/// most-significant first (then the stop marker) and rests at its wait
/// state with counter1 = n, counter2 = 0. Each digit multiplies the
/// accumulated value by the radix and adds the digit; the stop arm loops
/// back to the wait state, so the counters never change after the marker.
MachineProgram reverse_counter_tcmi(Radix b);

struct ClingerOptions {
    DigitOrder order = DigitOrder::MSD_FIRST;
    unsigned long max_exponent = 1000000;  // guard for unary-exponent growth
};

/// A register program that reads the digits of an exponent e in radix b
/// (significance order per options) and, after every digit, leaves in r3
/// the significand of the best n-digit radix-d approximation of D^e.
/// r1 accumulates e, r2 counts digits; r4..r7 are scratch and rest at zero
/// between digits. The stop arm goes straight to halt.
RegisterProgram clinger_register_program(Radix b, Radix D, Radix d, unsigned n,
                                         const ClingerOptions& options = {});

// Digit symbols of e in radix b in the order the program expects, with the
// stop marker appended. Refuses exponents beyond options.max_exponent.
std::vector<int> clinger_input(unsigned long e, Radix b,
                               const ClingerOptions& options = {});

// Index of the significand register (r3) in the register vector.
constexpr std::size_t kClingerSignificandRegister = 2;

// A prime assignment that keeps the hot scratch registers of
// clinger_register_program on the smallest primes; compiled machines run
// markedly faster under it than under the ascending default.
PrimeEncoding clinger_compiled_encoding();

}  // namespace clinger
