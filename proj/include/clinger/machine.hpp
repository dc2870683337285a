#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace clinger {

enum class MachineClass { TCM, TCMI, MP1RM, MP1RMI };

// Input symbols are the digits 0..b-1 plus a stop marker that appears
// exactly once, at the end of the input.
constexpr int kStopSymbol = -1;
constexpr int kNoSymbol = -2;

enum class OpCode {
    INC,     // counter += 1
    DEC,     // counter -= 1; decrementing zero is a fault
    JZ,      // jump when the counter is zero
    JMP,
    HALT,
    ADD,     // r += k
    MUL,     // r *= k
    DECJZ,   // if r >= 1 then r -= 1 else jump
    DIVMOD,  // dispatch on r mod k, then r /= k
    WAIT,    // consume one input symbol and dispatch on it
};

struct Instruction {
    OpCode op = OpCode::HALT;
    int counter = 0;                        // 0/1 selects c1/c2
    long k = 0;                             // ADD/MUL/DIVMOD constant
    int target = -1;                        // JZ/JMP/DECJZ
    std::vector<int> dispatch;              // DIVMOD: k targets, by remainder
    std::vector<std::pair<int, int>> arms;  // WAIT: symbol -> target
    int line = 0;                           // source line, for diagnostics
};

/// A validated program: all labels resolve, wait states cover the whole
/// alphabet including the stop marker, and every instruction belongs to the
/// declared machine class.
struct MachineProgram {
    MachineClass cls = MachineClass::TCM;
    unsigned alphabet_radix = 0;  // 0 for the input-free classes
    std::vector<Instruction> code;
    std::vector<std::string> labels;  // per instruction; empty when unnamed

    bool has_input() const {
        return cls == MachineClass::TCMI || cls == MachineClass::MP1RMI;
    }
    bool counter_based() const {
        return cls == MachineClass::TCM || cls == MachineClass::TCMI;
    }
    std::size_t state_count() const { return code.size(); }
};

struct ParseError : std::runtime_error {
    int line;
    ParseError(int ln, const std::string& what)
        : std::runtime_error("line " + std::to_string(ln) + ": " + what),
          line(ln) {}
};

// Line-oriented assembly: optional `LABEL:` prefixes, case-insensitive
// mnemonics, `#` comments, `.class` and `.alphabet` headers. A maximal
// block of consecutive `on SYM goto LABEL` lines forms one wait state.
MachineProgram parse_program(const std::string& text);

// Text form that parses back to an identical program.
std::string emit_program(const MachineProgram& prog);

std::string class_name(MachineClass cls);

}  // namespace clinger
