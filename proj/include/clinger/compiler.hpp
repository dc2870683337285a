#pragma once

#include "clinger/machine.hpp"
#include "clinger/prime_encoding.hpp"
#include "clinger/register_machine.hpp"

namespace clinger {

/// Compiles a register program to a two-counter machine holding the
/// prime-exponent code of the registers in counter 1, with counter 2 zero,
/// at every wait state and at halt. Register increments become
/// multiply-by-prime shuttles, decrement-or-branch becomes divide-by-prime
/// with full restoration on the branch path, and input branches map to wait
/// states verbatim. Programs without wait states compile to the input-free
/// class.
MachineProgram compile_to_tcmi(const RegisterProgram& prog, const PrimeEncoding& enc);

}  // namespace clinger
