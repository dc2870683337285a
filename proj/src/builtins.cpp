#include "clinger/builtins.hpp"

#include <functional>
#include <sstream>

#include "code_builder.hpp"

namespace clinger {

MachineProgram reverse_counter_tcmi(Radix b) {
    build::CodeBuilder cb;
    const int wait = cb.fresh_label();
    std::vector<int> digit_block(b.base);
    for (auto& label : digit_block) label = cb.fresh_label();

    cb.place(wait);
    cb.name_next("W");
    std::vector<std::pair<int, int>> arms;
    for (unsigned dgt = 0; dgt < b.base; ++dgt)
        arms.emplace_back(static_cast<int>(dgt), digit_block[dgt]);
    arms.emplace_back(kStopSymbol, wait);  // rest here once input ends
    cb.wait(arms);

    for (unsigned dgt = 0; dgt < b.base; ++dgt) {
        cb.place(digit_block[dgt]);
        cb.name_next("d" + std::to_string(dgt));
        // c1 = b*c1 + digit, via a doubling shuttle through c2
        const int head = cb.fresh_label();
        const int back = cb.fresh_label();
        const int done = cb.fresh_label();
        cb.place(head);
        cb.jz(0, back);
        cb.dec(0);
        for (unsigned i = 0; i < b.base; ++i) cb.inc(1);
        cb.jmp(head);
        cb.place(back);
        cb.jz(1, done);
        cb.dec(1);
        cb.inc(0);
        cb.jmp(back);
        cb.place(done);
        for (unsigned i = 0; i < dgt; ++i) cb.inc(0);
        cb.jmp(wait);
    }
    return cb.finish(MachineClass::TCMI, b.base);
}

namespace {

// Emits register assembly through tiny text macros; labels are suffixed
// with a running counter to stay unique.
class RegAsm {
public:
    void raw(const std::string& s) { text_ += s + "\n"; }
    void op(const std::string& s) { text_ += "        " + s + "\n"; }
    void label(const std::string& name) { text_ += name + ":\n"; }
    std::string fresh(const std::string& stem) {
        return stem + "_" + std::to_string(seq_++);
    }

    // while (r != 0) { r--; body(); }
    void drain(const std::string& r, const std::function<void()>& body) {
        const std::string head = fresh("dr");
        const std::string done = fresh("dn");
        label(head);
        op("decjz " + r + " " + done);
        body();
        op("jmp " + head);
        label(done);
    }
    void zero(const std::string& r) {
        drain(r, [] {});
    }
    void move(const std::string& src, const std::string& dst) {
        drain(src, [&] { op("inc " + dst); });
    }
    // dst += src, src preserved; echo must be zero and becomes zero again.
    void copy(const std::string& src, const std::string& dst,
              const std::string& echo) {
        drain(src, [&] {
            op("inc " + dst);
            op("inc " + echo);
        });
        move(echo, src);
    }
    void add_const(const std::string& r, unsigned long k) {
        for (unsigned long i = 0; i < k; ++i) op("inc " + r);
    }
    // r *= k, tmp must be zero and ends zero.
    void mul_const(const std::string& r, unsigned long k, const std::string& tmp) {
        drain(r, [&] { add_const(tmp, k); });
        move(tmp, r);
    }

    std::string str() const { return text_; }

private:
    std::string text_;
    int seq_ = 0;
};

}  // namespace

RegisterProgram clinger_register_program(Radix b, Radix D, Radix d, unsigned n,
                                         const ClingerOptions& options) {
    if (n < 1) throw std::invalid_argument("precision must be >= 1");
    if (d.base == 2 && n < 2)
        throw std::invalid_argument("precision must be >= 2 when d = 2");

    // r1 exponent, r2 digit count, r3 significand (doubles as scratch
    // inside the recomputation), r4 power, r5 divisor window, r6/r7 scratch.
    const std::string RV = "r1", RC = "r2", RS = "r3", RP = "r4", RT = "r5",
                      RA = "r6", RB = "r7";
    RegAsm a;
    a.raw(".class REG");
    a.raw(".registers 7");
    a.raw(".alphabet " + std::to_string(b.base));
    a.op("jmp SIG");  // initial significand, for D^0

    a.label("W");
    for (unsigned dgt = 0; dgt < b.base; ++dgt)
        a.op("on " + std::to_string(dgt) + " goto DIG" + std::to_string(dgt));
    a.op("on stop goto DONE");

    for (unsigned dgt = 0; dgt < b.base; ++dgt) {
        a.label("DIG" + std::to_string(dgt));
        a.add_const(RA, dgt);  // pending digit value
        a.op("jmp STEP");
    }

    a.label("STEP");
    if (options.order == DigitOrder::MSD_FIRST) {
        // e = b*e + digit
        a.mul_const(RV, b.base, RB);
        a.move(RA, RV);
    } else {
        // e += digit * b^{count}
        a.copy(RC, RT, RP);
        a.op("inc " + RB);  // b^0
        const std::string pow_head = a.fresh("pw");
        const std::string pow_done = a.fresh("pd");
        a.label(pow_head);
        a.op("decjz " + RT + " " + pow_done);
        a.mul_const(RB, b.base, RP);
        a.op("jmp " + pow_head);
        a.label(pow_done);
        a.drain(RA, [&] {  // per digit unit, add b^{count} once
            a.drain(RB, [&] {
                a.op("inc " + RV);
                a.op("inc " + RP);
            });
            a.move(RP, RB);
        });
        a.zero(RB);
    }
    a.op("inc " + RC);
    // falls through into the significand recomputation

    a.label("SIG");
    a.zero(RS);  // the old significand; r3 now serves as scratch
    // P = D^e * d^{n-1}
    a.op("inc " + RP);
    a.copy(RV, RA, RB);
    {
        const std::string head = a.fresh("pow");
        const std::string done = a.fresh("powd");
        a.label(head);
        a.op("decjz " + RA + " " + done);
        a.mul_const(RP, D.base, RB);
        a.op("jmp " + head);
        a.label(done);
    }
    for (unsigned i = 1; i < n; ++i) a.mul_const(RP, d.base, RB);

    // Find the largest T = d^j with T * d^n <= P; then P/T lies in
    // [d^{n-1}, d^n).
    a.op("inc " + RT);
    {
        const std::string head = a.fresh("ft");
        const std::string ge = a.fresh("ftge");
        const std::string lt = a.fresh("ftlt");
        const std::string cmp = a.fresh("ftcmp");
        a.label(head);
        a.copy(RT, RS, RA);
        for (unsigned i = 0; i < n; ++i) a.mul_const(RS, d.base, RA);
        a.label(cmp);
        a.op("decjz " + RS + " " + ge);
        a.op("decjz " + RP + " " + lt);
        a.op("inc " + RA);
        a.op("jmp " + cmp);
        a.label(ge);
        a.move(RA, RP);
        a.mul_const(RT, d.base, RS);
        a.op("jmp " + head);
        a.label(lt);
        a.move(RA, RP);
        a.zero(RS);
    }

    // Quotient of P by T into r7; remainder stays in P.
    {
        const std::string head = a.fresh("dv");
        const std::string subok = a.fresh("dvsub");
        const std::string rem = a.fresh("dvrem");
        const std::string cmp = a.fresh("dvcmp");
        a.label(head);
        a.copy(RT, RS, RA);
        a.label(cmp);
        a.op("decjz " + RS + " " + subok);
        a.op("decjz " + RP + " " + rem);
        a.op("inc " + RA);
        a.op("jmp " + cmp);
        a.label(subok);
        a.zero(RA);
        a.op("inc " + RB);
        a.op("jmp " + head);
        a.label(rem);
        a.move(RA, RP);
        a.zero(RS);
    }

    // Round: compare twice the remainder against T, ties to even.
    {
        const std::string cmp = a.fresh("rd");
        const std::string pz = a.fresh("rdpz");
        const std::string eq = a.fresh("rdeq");
        const std::string par = a.fresh("rdpar");
        const std::string up = a.fresh("rdup");
        const std::string down = a.fresh("rddn");
        a.mul_const(RP, 2, RA);
        a.label(cmp);
        a.op("decjz " + RP + " " + pz);
        a.op("decjz " + RT + " " + up);
        a.op("jmp " + cmp);
        a.label(pz);
        a.op("decjz " + RT + " " + eq);
        a.op("jmp " + down);
        a.label(eq);
        a.copy(RB, RA, RS);
        a.label(par);
        a.op("decjz " + RA + " " + down);
        a.op("decjz " + RA + " " + up);
        a.op("jmp " + par);
        a.label(up);
        a.op("inc " + RB);
        a.label(down);
        a.zero(RP);
        a.zero(RT);
    }

    // Renormalize the boundary case m = d^n down to d^{n-1}.
    {
        const std::string cmp = a.fresh("ov");
        const std::string yes = a.fresh("ovy");
        const std::string no = a.fresh("ovn");
        const std::string set = a.fresh("ovset");
        a.op("inc " + RA);
        for (unsigned i = 0; i < n; ++i) a.mul_const(RA, d.base, RS);
        a.copy(RB, RP, RS);
        a.label(cmp);
        a.op("decjz " + RA + " " + yes);
        a.op("decjz " + RP + " " + no);
        a.op("jmp " + cmp);
        a.label(yes);
        a.zero(RB);
        a.op("inc " + RB);
        for (unsigned i = 1; i < n; ++i) a.mul_const(RB, d.base, RS);
        a.op("jmp " + set);
        a.label(no);
        a.zero(RA);
        a.label(set);
        a.move(RB, RS);
        a.op("jmp W");
    }

    a.label("DONE");
    a.op("halt");

    return parse_register_program(a.str());
}

std::vector<int> clinger_input(unsigned long e, Radix b,
                               const ClingerOptions& options) {
    if (e > options.max_exponent)
        throw ResourceLimitError("exponent " + std::to_string(e) +
                                 " exceeds the configured bound " +
                                 std::to_string(options.max_exponent));
    std::vector<unsigned> digits;
    unsigned long v = e;
    do {
        digits.push_back(static_cast<unsigned>(v % b.base));
        v /= b.base;
    } while (v > 0);
    // digits are LSD-first here
    if (options.order == DigitOrder::MSD_FIRST)
        std::reverse(digits.begin(), digits.end());
    return make_input(digits);
}

PrimeEncoding clinger_compiled_encoding() {
    PrimeEncoding enc;
    enc.primes = {13, 17, 11, 2, 3, 5, 7};  // hot scratch on the small primes
    return enc;
}

}  // namespace clinger
