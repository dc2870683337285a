// clingerlab: exact radix conversions, counter-machine execution and
// analysis, and fractional-part experiments, behind one batch CLI.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "clinger/analysis.hpp"
#include "clinger/builtins.hpp"
#include "clinger/compiler.hpp"
#include "clinger/json_io.hpp"
#include "clinger/number_lab.hpp"

using namespace clinger;
using nlohmann::json;

namespace {

struct CommonFlags {
    bool as_json = false;
    unsigned long seed = 0;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_flag("--json", flags.as_json, "emit a JSON report on stdout");
    cmd->add_option("--seed", flags.seed, "deterministic seed, echoed in reports");
}

json header(const std::string& command, const CommonFlags& flags) {
    return json{{"tool", "clingerlab"}, {"command", command}, {"seed", flags.seed}};
}

void print_report(const std::string& command, const CommonFlags& flags,
                  const json& report) {
    json out = header(command, flags);
    out["report"] = report;
    std::cout << out.dump(2) << "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Rat parse_rat(const std::string& text) {
    Rat v;
    const auto slash = text.find('/');
    const auto dot = text.find('.');
    if (slash != std::string::npos) {
        if (mpq_set_str(v.get_mpq_t(), text.c_str(), 10) != 0)
            throw std::invalid_argument("bad rational '" + text + "'");
        v.canonicalize();
        return v;
    }
    if (dot != std::string::npos) {
        const std::string whole = text.substr(0, dot);
        const std::string frac = text.substr(dot + 1);
        Int den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        const Int num = Int(whole.empty() ? "0" : whole) * den + Int(frac);
        v = Rat(num, den);
        v.canonicalize();
        return v;
    }
    v = Rat(Int(text));
    return v;
}

Configuration parse_start(const std::string& text, bool counters) {
    Configuration conf;
    const auto comma = text.find(',');
    if (counters) {
        if (comma == std::string::npos)
            throw std::invalid_argument("--start takes c1,c2 for counter machines");
        conf.c[0] = Int(text.substr(0, comma));
        conf.c[1] = Int(text.substr(comma + 1));
    } else {
        conf.c[0] = Int(text);
    }
    return conf;
}

std::string status_name(RunStatus status) {
    switch (status) {
        case RunStatus::HALTED: return "halted";
        case RunStatus::INPUT_EXHAUSTED: return "input-exhausted";
        case RunStatus::STEP_LIMIT: return "step-limit";
        case RunStatus::ZERO_DECREMENT_FAULT: return "zero-decrement-fault";
    }
    return "?";
}

std::vector<unsigned> parse_input_digits(const std::string& text, unsigned radix) {
    if (text.empty()) return {};
    return parse_digit_string(text, Radix(radix), DigitOrder::MSD_FIRST).digits;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"counter-machine workbench and exact radix-conversion laboratory"};
    app.require_subcommand(1);

    // ---------- convert ----------
    auto* convert = app.add_subcommand("convert", "best n-digit approximation of f*D^e");
    CommonFlags convert_flags;
    std::string convert_f = "1";
    long convert_e = 0;
    unsigned convert_D = 2, convert_d = 10, convert_n = 1;
    convert->add_option("--f", convert_f, "positive integer factor")->required();
    convert->add_option("--e", convert_e, "integer exponent")->required();
    convert->add_option("--D", convert_D, "input radix")->required();
    convert->add_option("--d", convert_d, "output radix")->required();
    convert->add_option("--n", convert_n, "precision in digits")->required();
    add_common(convert, convert_flags);
    convert->callback([&] {
        const auto result =
            best_approx({Int(convert_f), convert_e, Radix(convert_D)},
                        Radix(convert_d), convert_n);
        if (convert_flags.as_json) {
            print_report("convert", convert_flags, json(result));
        } else {
            std::cout << "m=" << result.m << " q=" << result.q;
            if (result.tie == Tie::HALF_RESOLVED_TO_EVEN) std::cout << " tie=even";
            std::cout << "\n";
        }
    });

    // ---------- member ----------
    auto* member = app.add_subcommand("member", "language membership of a digit string");
    CommonFlags member_flags;
    std::string member_kind = "L", member_z, member_order = "lsd",
                member_target = "1";
    unsigned member_b = 10, member_D = 2, member_d = 10, member_n = 1;
    member->add_option("--kind", member_kind, "P, L, or M")->required();
    member->add_option("--z", member_z, "digit string (value order as declared)");
    member->add_option("--order", member_order, "lsd or msd");
    member->add_option("--b", member_b, "exponent radix")->required();
    member->add_option("--D", member_D, "input radix")->required();
    member->add_option("--d", member_d, "output radix")->required();
    member->add_option("--n", member_n, "precision")->required();
    member->add_option("--target", member_target, "class index")->required();
    add_common(member, member_flags);
    member->callback([&] {
        LanguageSpec spec{member_kind == "P"   ? LanguageKind::P
                          : member_kind == "M" ? LanguageKind::M
                                               : LanguageKind::L,
                          Radix(member_b), Radix(member_D), Radix(member_d),
                          member_n, Int(member_target)};
        const auto order =
            member_order == "msd" ? DigitOrder::MSD_FIRST : DigitOrder::LSD_FIRST;
        const bool result =
            language_member(parse_digit_string(member_z, Radix(member_b), order), spec);
        if (member_flags.as_json)
            print_report("member", member_flags, json{{"member", result}});
        else
            std::cout << "member=" << (result ? "true" : "false") << "\n";
    });

    // ---------- machine ----------
    auto* machine = app.add_subcommand("machine", "run or analyze machine programs");
    machine->require_subcommand(1);

    auto* mrun = machine->add_subcommand("run", "execute a program");
    CommonFlags mrun_flags;
    std::string mrun_file, mrun_input, mrun_start, mrun_max_steps;
    bool mrun_accelerate = false, mrun_trace = false;
    mrun->add_option("file", mrun_file, "assembly file")->required();
    mrun->add_option("--input", mrun_input, "digit symbols; stop marker implied");
    mrun->add_option("--start", mrun_start, "initial c1,c2 (or r)");
    mrun->add_option("--max-steps", mrun_max_steps, "step budget");
    mrun->add_flag("--accelerate", mrun_accelerate, "whole-cycle fast-forwarding");
    mrun->add_flag("--trace", mrun_trace, "emit one JSON line per step");
    add_common(mrun, mrun_flags);
    mrun->callback([&] {
        const auto prog = parse_program(read_file(mrun_file));
        RunLimits limits;
        limits.accelerate = mrun_accelerate;
        if (!mrun_max_steps.empty()) limits.max_steps = Int(mrun_max_steps);
        if (mrun_trace && mrun_accelerate)
            throw std::invalid_argument("--trace requires naive execution");
        limits.record_trace = mrun_trace;

        RunResult result;
        if (prog.has_input()) {
            result = run(prog, make_input(parse_input_digits(
                                   mrun_input, prog.alphabet_radix)),
                         limits);
        } else {
            if (!mrun_input.empty())
                throw std::invalid_argument("class " + class_name(prog.cls) +
                                            " takes --start, not --input");
            result = run(prog,
                         mrun_start.empty()
                             ? Configuration{}
                             : parse_start(mrun_start, prog.counter_based()),
                         limits);
        }

        if (mrun_trace) std::cout << trace_json_lines(result.trace);
        if (mrun_flags.as_json) {
            json report;
            report["final"] = configuration_to_json(result.final_config, prog.cls);
            report["status"] = status_name(result.status);
            report["steps"] = int_to_json(result.steps);
            report["work_ops"] = int_to_json(result.work_ops);
            report["online"] = result.online ? json(*result.online) : json(nullptr);
            print_report("machine run", mrun_flags, report);
        } else {
            if (prog.counter_based())
                std::cout << "c1=" << result.final_config.c[0]
                          << " c2=" << result.final_config.c[1];
            else
                std::cout << "r=" << result.final_config.c[0];
            if (result.online)
                std::cout << " online=" << (*result.online ? "true" : "false");
            std::cout << " status=" << status_name(result.status)
                      << " steps=" << result.steps << "\n";
        }
    });

    auto* manalyze = machine->add_subcommand("analyze", "stages, loops, affine maps");
    CommonFlags manalyze_flags;
    std::string manalyze_file, manalyze_input, manalyze_start;
    std::string manalyze_fbase, manalyze_fstep;
    unsigned manalyze_fcount = 0;
    int manalyze_fcounter = 0;
    manalyze->add_option("file", manalyze_file, "assembly file")->required();
    manalyze->add_option("--input", manalyze_input, "digits for input classes");
    manalyze->add_option("--start", manalyze_start, "start c1,c2");
    manalyze->add_option("--family-base", manalyze_fbase,
                         "fit an affine map over starts base, base+step, ...");
    manalyze->add_option("--family-step", manalyze_fstep, "family progression step");
    manalyze->add_option("--family-count", manalyze_fcount, "family size");
    manalyze->add_option("--family-counter", manalyze_fcounter,
                         "which counter varies (0 or 1)");
    add_common(manalyze, manalyze_flags);
    manalyze->callback([&] {
        const auto prog = parse_program(read_file(manalyze_file));
        if (!prog.counter_based())
            throw std::invalid_argument("analysis applies to the counter classes");
        const Configuration start =
            manalyze_start.empty() ? Configuration{} : parse_start(manalyze_start, true);

        RunResult result;
        if (prog.has_input())
            result = run(prog, make_input(parse_input_digits(manalyze_input,
                                                             prog.alphabet_radix)));
        else
            result = run(prog, start);

        json report;
        report["status"] = status_name(result.status);
        report["stages"] = stages_to_json(segment_stages(result.trace, result.status));

        const Int margin = static_cast<unsigned long>(prog.state_count() + 1);
        if (!prog.has_input() && start.c[0] > margin && start.c[1] > margin) {
            const auto summary = extract_loop(prog, start);
            report["loop"] = loop_to_json(summary);
            const auto prediction = predict_stage_end(prog, summary, start);
            if (prediction.predicted) {
                json p;
                p["config"] = configuration_to_json(prediction.config, prog.cls);
                p["steps"] = int_to_json(prediction.steps);
                report["prediction"] = p;
            } else {
                report["prediction"] = json{{"refused", prediction.refusal}};
            }
        } else {
            report["loop"] =
                json{{"kind", "skipped"},
                     {"note", "loop extraction needs both start counters above "
                              "the state count + 1"}};
        }

        if (manalyze_fcount > 0) {
            if (manalyze_fbase.empty() || manalyze_fstep.empty())
                throw std::invalid_argument(
                    "--family-base and --family-step are required with "
                    "--family-count");
            report["affine"] = affine_to_json(
                fit_affine_map(prog, manalyze_fcounter, Int(manalyze_fbase),
                               Int(manalyze_fstep), manalyze_fcount));
        }

        if (manalyze_flags.as_json) {
            print_report("machine analyze", manalyze_flags, report);
        } else {
            std::cout << "stages=" << report["stages"].size()
                      << " status=" << report["status"].get<std::string>() << "\n";
            std::cout << "loop: " << report["loop"].dump() << "\n";
            if (report.contains("prediction"))
                std::cout << "prediction: " << report["prediction"].dump() << "\n";
            if (report.contains("affine"))
                std::cout << "affine: " << report["affine"].dump() << "\n";
        }
    });

    // ---------- compile ----------
    auto* compile = app.add_subcommand("compile",
                                       "register program to a two-counter machine");
    std::string compile_file, compile_primes, compile_out;
    compile->add_option("file", compile_file, "register assembly file")->required();
    compile->add_option("--primes", compile_primes,
                        "comma-separated prime per register");
    compile->add_option("-o,--output", compile_out, "write the assembly here");
    compile->callback([&] {
        const auto reg = parse_register_program(read_file(compile_file));
        PrimeEncoding enc;
        if (compile_primes.empty()) {
            enc = PrimeEncoding::first(reg.register_count);
        } else {
            std::istringstream in(compile_primes);
            std::string item;
            while (std::getline(in, item, ','))
                enc.primes.push_back(std::stoul(item));
        }
        const std::string text = emit_program(compile_to_tcmi(reg, enc));
        if (compile_out.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(compile_out);
            if (!out) throw std::invalid_argument("cannot write '" + compile_out + "'");
            out << text;
        }
    });

    // ---------- builtin ----------
    auto* builtin = app.add_subcommand("builtin", "emit the built-in machines");
    builtin->require_subcommand(1);

    auto* brev = builtin->add_subcommand("reverse-counter",
                                         "most-significant-first online counter");
    unsigned brev_b = 10;
    brev->add_option("--b", brev_b, "input radix")->required();
    brev->callback(
        [&] { std::cout << emit_program(reverse_counter_tcmi(Radix(brev_b))); });

    auto* bcli = builtin->add_subcommand("clinger",
                                         "register machine for the significand of D^e");
    unsigned bcli_b = 10, bcli_D = 2, bcli_d = 10, bcli_n = 1;
    std::string bcli_order = "msd";
    bcli->add_option("--b", bcli_b, "exponent radix")->required();
    bcli->add_option("--D", bcli_D, "input radix")->required();
    bcli->add_option("--d", bcli_d, "output radix")->required();
    bcli->add_option("--n", bcli_n, "precision")->required();
    bcli->add_option("--order", bcli_order, "digit order: msd or lsd");
    bcli->callback([&] {
        ClingerOptions opt;
        opt.order =
            bcli_order == "lsd" ? DigitOrder::LSD_FIRST : DigitOrder::MSD_FIRST;
        std::cout << emit_register_program(clinger_register_program(
            Radix(bcli_b), Radix(bcli_D), Radix(bcli_d), bcli_n, opt));
    });

    // ---------- lab ----------
    auto* lab = app.add_subcommand("lab", "fractional-part experiments");
    lab->require_subcommand(1);

    auto* kron = lab->add_subcommand("kronecker", "orbit density histogram");
    CommonFlags kron_flags;
    std::vector<std::string> kron_theta;
    unsigned long kron_n = 10000;
    unsigned kron_bins = 100;
    kron->add_option("--theta", kron_theta, "log B A | sqrtN | p/q")
        ->required()
        ->expected(1, 3);
    kron->add_option("--N", kron_n, "orbit length");
    kron->add_option("--bins", kron_bins, "histogram bins");
    add_common(kron, kron_flags);
    kron->callback([&] {
        const auto report = kronecker_density(parse_theta(kron_theta), kron_n, kron_bins);
        if (kron_flags.as_json) {
            print_report("lab kronecker", kron_flags, json(report));
        } else {
            std::cout << "theta=" << report.theta << " N=" << report.n
                      << " occupied=" << report.occupied << "/" << report.bins
                      << " min_gap=" << report.min_gap
                      << " max_gap=" << report.max_gap << "\n";
        }
    });

    auto* window = lab->add_subcommand("window", "orbit-difference window witnesses");
    CommonFlags window_flags;
    std::vector<std::string> window_theta;
    std::string window_C = "10";
    unsigned long window_mmax = 50;
    window->add_option("--theta", window_theta)->required()->expected(1, 3);
    window->add_option("--C", window_C, "orbit base");
    window->add_option("--mmax", window_mmax, "largest m to test");
    add_common(window, window_flags);
    window->callback([&] {
        const auto report =
            window_witnesses(parse_theta(window_theta), Int(window_C), window_mmax);
        if (window_flags.as_json) {
            print_report("lab window", window_flags, json(report));
        } else {
            std::cout << "theta=" << report.theta << " C=" << report.C << " window=("
                      << report.window_lo << "," << report.window_hi << ")\n";
            std::cout << "witnesses:";
            for (unsigned long m : report.witnesses) std::cout << " " << m;
            std::cout << "\n";
            unsigned long unknown = 0;
            for (const auto& entry : report.entries)
                if (entry.status == WitnessStatus::UNKNOWN) ++unknown;
            if (unknown) std::cout << "unknown entries: " << unknown << "\n";
        }
    });

    auto* qrational = lab->add_subcommand(
        "qrational", "scaling that brackets the witness differences");
    CommonFlags qrational_flags;
    std::vector<std::string> qrational_theta;
    std::string qrational_C = "10";
    unsigned long qrational_mmax = 50, qrational_kmax = 100;
    std::size_t qrational_members = 5;
    qrational->add_option("--theta", qrational_theta)->required()->expected(1, 3);
    qrational->add_option("--C", qrational_C, "orbit base");
    qrational->add_option("--mmax", qrational_mmax, "largest m to test");
    qrational->add_option("--kmax", qrational_kmax, "largest scaling to try");
    qrational->add_option("--members", qrational_members, "required bracket members");
    add_common(qrational, qrational_flags);
    qrational->callback([&] {
        const auto report =
            bracket_search(parse_theta(qrational_theta), Int(qrational_C),
                           qrational_mmax, qrational_kmax, qrational_members);
        if (qrational_flags.as_json) {
            print_report("lab qrational", qrational_flags, json(report));
        } else if (report.found) {
            std::cout << "K=" << report.K << " bracket=" << report.bracket
                      << " members=" << report.members.size() << "\n";
        } else {
            std::cout << "not found: " << report.note << "\n";
        }
    });

    auto* mixing = lab->add_subcommand("mixing", "joint-placement iteration bound");
    CommonFlags mixing_flags;
    std::vector<std::string> mixing_theta;
    std::string mixing_eps = "1/20", mixing_a = "1/5", mixing_b = "4/5";
    unsigned mixing_trials = 100;
    unsigned long mixing_ceiling = 100000;
    mixing->add_option("--theta", mixing_theta)->required()->expected(1, 3);
    mixing->add_option("--eps", mixing_eps, "hypothesis margin");
    mixing->add_option("--a", mixing_a, "lower slot bound");
    mixing->add_option("--b", mixing_b, "upper slot bound");
    mixing->add_option("--trials", mixing_trials, "sampled pairs");
    mixing->add_option("--ceiling", mixing_ceiling, "hard iteration cap");
    add_common(mixing, mixing_flags);
    mixing->callback([&] {
        const auto report = mixing_bound(
            parse_theta(mixing_theta), parse_rat(mixing_eps), parse_rat(mixing_a),
            parse_rat(mixing_b), mixing_trials, mixing_ceiling, mixing_flags.seed);
        if (mixing_flags.as_json) {
            print_report("lab mixing", mixing_flags, json(report));
        } else {
            std::cout << "n_estimate=" << report.n_estimate
                      << " pairs=" << report.pairs.size()
                      << " all_found=" << (report.all_found ? "true" : "false")
                      << "\n";
        }
    });

    auto* pumping = lab->add_subcommand("pumping", "exact membership and divergence table");
    CommonFlags pumping_flags;
    unsigned pumping_b = 2, pumping_D = 2, pumping_d = 10, pumping_n = 1;
    unsigned long pumping_pmax = 13, pumping_dmax = 6;
    pumping->add_option("--b", pumping_b, "exponent radix")->required();
    pumping->add_option("--D", pumping_D, "input radix")->required();
    pumping->add_option("--d", pumping_d, "output radix")->required();
    pumping->add_option("--n", pumping_n, "precision")->required();
    pumping->add_option("--pmax", pumping_pmax, "largest p");
    pumping->add_option("--dmax", pumping_dmax, "largest delta");
    add_common(pumping, pumping_flags);
    pumping->callback([&] {
        const auto report =
            pumping_search(Radix(pumping_b), Radix(pumping_D), Radix(pumping_d),
                           pumping_n, pumping_pmax, pumping_dmax);
        if (pumping_flags.as_json) {
            print_report("lab pumping", pumping_flags, json(report));
        } else {
            for (const auto& entry : report.entries) {
                std::cout << "p=" << entry.p << " significand=";
                if (entry.known)
                    std::cout << entry.significand;
                else
                    std::cout << "unknown";
                std::cout << "\n";
            }
            for (const auto& div : report.divergences) {
                if (div.ps.empty()) continue;
                std::cout << "delta=" << div.delta << " diverges at p=";
                for (std::size_t i = 0; i < div.ps.size(); ++i)
                    std::cout << (i ? "," : "") << div.ps[i];
                std::cout << "\n";
            }
            for (unsigned long delta : report.missing_deltas)
                std::cout << "finding: no divergence pair for delta=" << delta
                          << "\n";
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 3;
    } catch (const CertificationError& e) {
        std::cerr << "certification failure: " << e.what() << "\n";
        return 4;
    } catch (const ResourceLimitError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
