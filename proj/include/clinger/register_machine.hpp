#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clinger/machine.hpp"
#include "clinger/numeric.hpp"
#include "clinger/vm.hpp"

namespace clinger {

enum class RegOp { INC, DECJZ, JMP, HALT, WAIT };

struct RegisterInstruction {
    RegOp op = RegOp::HALT;
    int reg = 0;  // 0-based register index
    int target = -1;
    std::vector<std::pair<int, int>> arms;  // WAIT: symbol -> target
    int line = 0;
};

/// A k-register program: increments, decrement-or-branch, jumps, halt, and
/// wait states. The assembly mirrors the counter format with `.class REG`,
/// optional `.registers K` and `.alphabet B` headers, and `inc rN` /
/// `decjz rN LABEL` operand forms.
struct RegisterProgram {
    unsigned register_count = 0;
    unsigned alphabet_radix = 0;  // 0 when the program has no wait states
    std::vector<RegisterInstruction> code;
    std::vector<std::string> labels;

    std::size_t state_count() const { return code.size(); }
    bool has_wait() const;
};

RegisterProgram parse_register_program(const std::string& text);
std::string emit_register_program(const RegisterProgram& prog);

struct RegisterTraceStep {
    unsigned long long step = 0;
    int pc = 0;
    std::vector<Int> registers;
    int consumed = kNoSymbol;
};

struct RegisterRunResult {
    std::vector<Int> registers;
    int pc = 0;
    RunStatus status = RunStatus::HALTED;
    Int steps = 0;
    Int work_ops = 0;
    std::optional<bool> online;
    std::vector<RegisterTraceStep> trace;
};

/// Reference interpreter. Programs with wait states take digits plus a
/// trailing stop marker; programs without take an empty input. Acceleration
/// fast-forwards repeated cycles; a cycle is only extrapolated when every
/// register it zero-tests stays above the state-count margin, so branch
/// behaviour is provably unchanged.
RegisterRunResult run_register(const RegisterProgram& prog,
                               const std::vector<int>& input,
                               const RunLimits& limits = {},
                               std::vector<Int> initial = {});

}  // namespace clinger
