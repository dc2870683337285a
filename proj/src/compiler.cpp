#include "clinger/compiler.hpp"

#include "code_builder.hpp"

namespace clinger {

namespace {

using build::CodeBuilder;

// c1 *= p, via a drain through c2 and back. Entered and left with c2 = 0.
void emit_multiply(CodeBuilder& b, unsigned long p) {
    const int loop = b.fresh_label();
    const int back = b.fresh_label();
    const int done = b.fresh_label();
    b.place(loop);
    b.jz(0, back);
    b.dec(0);
    for (unsigned long i = 0; i < p; ++i) b.inc(1);
    b.jmp(loop);
    b.place(back);
    b.jz(1, done);
    b.dec(1);
    b.inc(0);
    b.jmp(back);
    b.place(done);
}

// If p divides c1: c1 /= p and fall through. Otherwise restore c1 and jump
// to fail_label. c2 is zero on entry and on both exits.
void emit_divide_or_branch(CodeBuilder& b, unsigned long p, int fail_label) {
    const int head = b.fresh_label();
    const int exact = b.fresh_label();
    const int done = b.fresh_label();
    std::vector<int> remainder(p, -1);
    for (unsigned long j = 1; j < p; ++j) remainder[j] = b.fresh_label();

    // Take groups of p off c1, counting groups in c2; c1 emptying mid-group
    // exposes the remainder.
    b.place(head);
    b.jz(0, exact);
    for (unsigned long j = 1; j < p; ++j) {
        b.dec(0);
        b.jz(0, remainder[j]);
    }
    b.dec(0);
    b.inc(1);
    b.jmp(head);

    // Divisible: quotient is in c2; move it back.
    b.place(exact);
    b.jz(1, done);
    b.dec(1);
    b.inc(0);
    b.jmp(exact);

    // Remainder j: rebuild c1 = p * c2 + j, then take the branch.
    for (unsigned long j = 1; j < p; ++j) {
        const int rebuild = remainder[j];
        b.place(rebuild);
        const int add = b.fresh_label();
        b.jz(1, add);
        b.dec(1);
        for (unsigned long i = 0; i < p; ++i) b.inc(0);
        b.jmp(rebuild);
        b.place(add);
        for (unsigned long i = 0; i < j; ++i) b.inc(0);
        b.jmp(fail_label);
    }

    b.place(done);
}

}  // namespace

MachineProgram compile_to_tcmi(const RegisterProgram& prog, const PrimeEncoding& enc) {
    enc.validate();
    if (enc.primes.size() < prog.register_count)
        throw std::invalid_argument("encoding has fewer primes than registers");

    CodeBuilder b;
    std::vector<int> entry(prog.code.size() + 1);
    for (auto& label : entry) label = b.fresh_label();

    // encode(0, ..., 0) = 1
    b.name_next("init");
    b.inc(0);

    for (std::size_t i = 0; i < prog.code.size(); ++i) {
        const RegisterInstruction& ins = prog.code[i];
        b.place(entry[i]);
        b.name_next("i" + std::to_string(i));
        const unsigned long p =
            enc.primes[static_cast<std::size_t>(ins.reg < 0 ? 0 : ins.reg)];
        switch (ins.op) {
            case RegOp::INC:
                emit_multiply(b, p);
                break;
            case RegOp::DECJZ:
                emit_divide_or_branch(b, p, entry[static_cast<std::size_t>(ins.target)]);
                break;
            case RegOp::JMP:
                b.jmp(entry[static_cast<std::size_t>(ins.target)]);
                break;
            case RegOp::HALT:
                b.halt();
                break;
            case RegOp::WAIT: {
                std::vector<std::pair<int, int>> arms;
                for (const auto& [sym, target] : ins.arms)
                    arms.emplace_back(sym, entry[static_cast<std::size_t>(target)]);
                b.wait(arms);
                break;
            }
        }
    }
    b.place(entry[prog.code.size()]);
    b.name_next("end");
    b.halt();

    const bool with_input = prog.has_wait();
    return b.finish(with_input ? MachineClass::TCMI : MachineClass::TCM,
                    with_input ? prog.alphabet_radix : 0);
}

}  // namespace clinger
