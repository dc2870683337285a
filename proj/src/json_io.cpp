#include "clinger/json_io.hpp"

#include <sstream>

namespace clinger {

using nlohmann::json;

std::string int_to_json(const Int& v) { return v.get_str(); }

Int int_from_json(const json& j) { return Int(j.get<std::string>()); }

std::string rat_to_json(const Rat& v) { return v.get_str(); }

Rat rat_from_json(const json& j) {
    Rat v;
    if (mpq_set_str(v.get_mpq_t(), j.get<std::string>().c_str(), 10) != 0)
        throw std::invalid_argument("bad rational: " + j.get<std::string>());
    v.canonicalize();
    return v;
}

void to_json(json& j, const BestApprox& v) {
    j = json{{"m", int_to_json(v.m)},
             {"q", v.q},
             {"n", v.n},
             {"tie", v.tie == Tie::HALF_RESOLVED_TO_EVEN ? "even" : "none"}};
}

void from_json(const json& j, BestApprox& v) {
    v.m = int_from_json(j.at("m"));
    v.q = j.at("q").get<long>();
    v.n = j.at("n").get<unsigned>();
    v.tie = j.at("tie").get<std::string>() == "even" ? Tie::HALF_RESOLVED_TO_EVEN
                                                     : Tie::NONE;
}

void to_json(json& j, const DensityReport& v) {
    j = json{{"theta", v.theta},       {"n", v.n},
             {"bins", v.bins},         {"occupancy", v.occupancy},
             {"occupied", v.occupied}, {"min_gap", v.min_gap},
             {"max_gap", v.max_gap}};
}

void from_json(const json& j, DensityReport& v) {
    j.at("theta").get_to(v.theta);
    j.at("n").get_to(v.n);
    j.at("bins").get_to(v.bins);
    j.at("occupancy").get_to(v.occupancy);
    j.at("occupied").get_to(v.occupied);
    j.at("min_gap").get_to(v.min_gap);
    j.at("max_gap").get_to(v.max_gap);
}

namespace {

std::string status_name(WitnessStatus status) {
    switch (status) {
        case WitnessStatus::WITNESS: return "witness";
        case WitnessStatus::NON_WITNESS: return "non-witness";
        case WitnessStatus::UNKNOWN: return "unknown";
    }
    return "?";
}

WitnessStatus status_from(const std::string& name) {
    if (name == "witness") return WitnessStatus::WITNESS;
    if (name == "non-witness") return WitnessStatus::NON_WITNESS;
    return WitnessStatus::UNKNOWN;
}

}  // namespace

void to_json(json& j, const WindowEntry& v) {
    j = json{{"m", v.m},
             {"status", status_name(v.status)},
             {"diff_lo", v.diff_lo_hex},
             {"diff_hi", v.diff_hi_hex},
             {"diff_approx", v.diff_approx}};
}

void from_json(const json& j, WindowEntry& v) {
    j.at("m").get_to(v.m);
    v.status = status_from(j.at("status").get<std::string>());
    j.at("diff_lo").get_to(v.diff_lo_hex);
    j.at("diff_hi").get_to(v.diff_hi_hex);
    j.at("diff_approx").get_to(v.diff_approx);
}

void to_json(json& j, const WindowReport& v) {
    j = json{{"theta", v.theta},
             {"C", int_to_json(v.C)},
             {"window_lo", rat_to_json(v.window_lo)},
             {"window_hi", rat_to_json(v.window_hi)},
             {"entries", v.entries},
             {"witnesses", v.witnesses}};
}

void from_json(const json& j, WindowReport& v) {
    j.at("theta").get_to(v.theta);
    v.C = int_from_json(j.at("C"));
    v.window_lo = rat_from_json(j.at("window_lo"));
    v.window_hi = rat_from_json(j.at("window_hi"));
    j.at("entries").get_to(v.entries);
    j.at("witnesses").get_to(v.witnesses);
}

void to_json(json& j, const BracketMember& v) {
    j = json{{"m", v.m},
             {"value_approx", v.value_approx},
             {"value_lo", v.value_lo_hex},
             {"value_hi", v.value_hi_hex}};
}

void from_json(const json& j, BracketMember& v) {
    j.at("m").get_to(v.m);
    j.at("value_approx").get_to(v.value_approx);
    j.at("value_lo").get_to(v.value_lo_hex);
    j.at("value_hi").get_to(v.value_hi_hex);
}

void to_json(json& j, const BracketReport& v) {
    j = json{{"found", v.found},
             {"theta", v.theta},
             {"C", int_to_json(v.C)},
             {"K", int_to_json(v.K)},
             {"bracket", v.bracket},
             {"tolerance", rat_to_json(v.tolerance)},
             {"members", v.members},
             {"note", v.note}};
}

void from_json(const json& j, BracketReport& v) {
    j.at("found").get_to(v.found);
    j.at("theta").get_to(v.theta);
    v.C = int_from_json(j.at("C"));
    v.K = int_from_json(j.at("K"));
    j.at("bracket").get_to(v.bracket);
    v.tolerance = rat_from_json(j.at("tolerance"));
    j.at("members").get_to(v.members);
    j.at("note").get_to(v.note);
}

void to_json(json& j, const ShiftReport& v) {
    j = json{{"found", v.found},
             {"q", v.q},
             {"note", v.note},
             {"shifted_diffs", v.shifted_diffs}};
}

void from_json(const json& j, ShiftReport& v) {
    j.at("found").get_to(v.found);
    j.at("q").get_to(v.q);
    j.at("note").get_to(v.note);
    j.at("shifted_diffs").get_to(v.shifted_diffs);
}

void to_json(json& j, const MixingPair& v) {
    j = json{{"alpha", rat_to_json(v.alpha)},
             {"beta", rat_to_json(v.beta)},
             {"k", v.k},
             {"found", v.found},
             {"difference_preserved", v.difference_preserved}};
}

void from_json(const json& j, MixingPair& v) {
    v.alpha = rat_from_json(j.at("alpha"));
    v.beta = rat_from_json(j.at("beta"));
    j.at("k").get_to(v.k);
    j.at("found").get_to(v.found);
    j.at("difference_preserved").get_to(v.difference_preserved);
}

void to_json(json& j, const MixingReport& v) {
    j = json{{"theta", v.theta},
             {"a", rat_to_json(v.a)},
             {"b", rat_to_json(v.b)},
             {"epsilon", rat_to_json(v.epsilon)},
             {"k_ceiling", v.k_ceiling},
             {"n_estimate", v.n_estimate},
             {"all_found", v.all_found},
             {"pairs", v.pairs},
             {"seed", v.seed}};
}

void from_json(const json& j, MixingReport& v) {
    j.at("theta").get_to(v.theta);
    v.a = rat_from_json(j.at("a"));
    v.b = rat_from_json(j.at("b"));
    v.epsilon = rat_from_json(j.at("epsilon"));
    j.at("k_ceiling").get_to(v.k_ceiling);
    j.at("n_estimate").get_to(v.n_estimate);
    j.at("all_found").get_to(v.all_found);
    j.at("pairs").get_to(v.pairs);
    j.at("seed").get_to(v.seed);
}

void to_json(json& j, const PumpingEntry& v) {
    j = json{{"p", v.p}, {"known", v.known}};
    j["significand"] = v.known ? json(int_to_json(v.significand)) : json(nullptr);
}

void from_json(const json& j, PumpingEntry& v) {
    j.at("p").get_to(v.p);
    j.at("known").get_to(v.known);
    v.significand = v.known ? int_from_json(j.at("significand")) : Int(0);
}

void to_json(json& j, const DivergenceList& v) {
    j = json{{"delta", v.delta}, {"ps", v.ps}};
}

void from_json(const json& j, DivergenceList& v) {
    j.at("delta").get_to(v.delta);
    j.at("ps").get_to(v.ps);
}

void to_json(json& j, const PumpingReport& v) {
    j = json{{"b", v.b},
             {"D", v.D},
             {"d", v.d},
             {"n", v.n},
             {"entries", v.entries},
             {"divergences", v.divergences},
             {"missing_deltas", v.missing_deltas}};
}

void from_json(const json& j, PumpingReport& v) {
    j.at("b").get_to(v.b);
    j.at("D").get_to(v.D);
    j.at("d").get_to(v.d);
    j.at("n").get_to(v.n);
    j.at("entries").get_to(v.entries);
    j.at("divergences").get_to(v.divergences);
    j.at("missing_deltas").get_to(v.missing_deltas);
}

namespace {

const char* consumed_name(int sym, std::string& storage) {
    if (sym == kNoSymbol) return nullptr;
    storage = sym == kStopSymbol ? "stop" : std::to_string(sym);
    return storage.c_str();
}

}  // namespace

std::string trace_json_lines(const Trace& trace) {
    const bool registers =
        trace.cls == MachineClass::MP1RM || trace.cls == MachineClass::MP1RMI;
    std::ostringstream out;
    for (const auto& step : trace.steps) {
        json j;
        j["step"] = step.step;
        j["state"] = step.config.pc;
        if (registers) {
            j["r"] = int_to_json(step.config.c[0]);
        } else {
            j["c1"] = int_to_json(step.config.c[0]);
            j["c2"] = int_to_json(step.config.c[1]);
        }
        std::string storage;
        const char* name = consumed_name(step.consumed, storage);
        j["consumed"] = name ? json(storage) : json(nullptr);
        out << j.dump() << "\n";
    }
    return out.str();
}

nlohmann::json configuration_to_json(const Configuration& conf, MachineClass cls) {
    json j;
    j["state"] = conf.pc;
    if (cls == MachineClass::MP1RM || cls == MachineClass::MP1RMI) {
        j["r"] = int_to_json(conf.c[0]);
    } else {
        j["c1"] = int_to_json(conf.c[0]);
        j["c2"] = int_to_json(conf.c[1]);
    }
    j["cursor"] = conf.cursor;
    return j;
}

namespace {

std::string boundary_name(StageBoundary kind) {
    switch (kind) {
        case StageBoundary::INITIAL: return "initial";
        case StageBoundary::ZERO_COUNTER: return "zero-counter";
        case StageBoundary::HALT: return "halt";
        case StageBoundary::INPUT_EXHAUSTED: return "input-exhausted";
        case StageBoundary::STEP_LIMIT: return "step-limit";
        case StageBoundary::FAULT: return "fault";
    }
    return "?";
}

}  // namespace

nlohmann::json stages_to_json(const std::vector<StageRecord>& stages) {
    json out = json::array();
    for (const auto& stage : stages) {
        json j;
        j["start_step"] = stage.start_step;
        j["end_step"] = stage.end_step;
        j["start"] = configuration_to_json(stage.start_config, MachineClass::TCM);
        j["end"] = configuration_to_json(stage.end_config, MachineClass::TCM);
        j["start_kind"] = boundary_name(stage.start_kind);
        j["end_kind"] = boundary_name(stage.end_kind);
        out.push_back(std::move(j));
    }
    return out;
}

nlohmann::json loop_to_json(const LoopSummary& summary) {
    json j;
    switch (summary.kind) {
        case LoopSummary::Kind::CYCLE:
            j["kind"] = "cycle";
            j["omega0"] = summary.entry_length;
            j["omega"] = summary.cycle_length;
            j["omega1"] = summary.delta1;
            j["omega2"] = summary.delta2;
            j["head"] = summary.loop_head_pc;
            break;
        case LoopSummary::Kind::STRAIGHT_LINE:
            j["kind"] = "straight-line";
            j["r1"] = summary.residue1;
            j["r2"] = summary.residue2;
            break;
        case LoopSummary::Kind::INCONCLUSIVE:
            j["kind"] = "inconclusive";
            j["note"] = summary.note;
            break;
    }
    return j;
}

nlohmann::json affine_to_json(const AffineFitResult& fit) {
    json j;
    j["consistent"] = fit.consistent;
    if (fit.consistent) {
        j["P"] = int_to_json(fit.map.P);
        j["Q"] = int_to_json(fit.map.Q);
        j["R"] = int_to_json(fit.map.R);
        j["D"] = int_to_json(fit.map.D);
    } else {
        j["detail"] = fit.detail;
    }
    return j;
}

}  // namespace clinger
