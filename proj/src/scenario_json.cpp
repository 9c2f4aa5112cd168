#include "avss/scenario_json.hpp"

#include <json.hpp>

namespace avss {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ScenarioParseError("scenario: " + msg); }

void expect_keys(const json& obj, std::initializer_list<const char*> allowed, const char* where) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok) fail(std::string("unknown key '") + key + "' in " + where);
    }
}

int get_int(const json& obj, const char* key, bool required, int dflt) {
    if (!obj.contains(key)) {
        if (required) fail(std::string("missing required key '") + key + "'");
        return dflt;
    }
    const json& v = obj.at(key);
    if (!v.is_number_integer()) fail(std::string("'") + key + "' must be an integer");
    return v.get<int>();
}

uint64_t get_u64(const json& obj, const char* key, uint64_t dflt) {
    if (!obj.contains(key)) return dflt;
    const json& v = obj.at(key);
    if (!v.is_number_unsigned() && !v.is_number_integer()) fail(std::string("'") + key + "' must be an integer");
    if (!v.is_number_unsigned() && v.get<int64_t>() < 0) fail(std::string("'") + key + "' must be nonnegative");
    return v.get<uint64_t>();
}

std::string get_str(const json& obj, const char* key, const std::string& dflt) {
    if (!obj.contains(key)) return dflt;
    const json& v = obj.at(key);
    if (!v.is_string()) fail(std::string("'") + key + "' must be a string");
    return v.get<std::string>();
}

std::vector<PartyId> get_parties(const json& obj, const char* key) {
    std::vector<PartyId> out;
    if (!obj.contains(key)) return out;
    const json& v = obj.at(key);
    if (!v.is_array()) fail(std::string("'") + key + "' must be an array of party ids");
    for (const json& e : v) {
        if (!e.is_number_integer() || e.get<int64_t>() < 1 || e.get<int64_t>() > 0xffff)
            fail(std::string("'") + key + "' entries must be party ids");
        out.push_back(PartyId(e.get<int>()));
    }
    return out;
}

template <typename E>
E enum_from(const std::string& s, const char* key, std::initializer_list<E> all, const char* (*name)(E)) {
    for (E e : all)
        if (s == name(e)) return e;
    fail(std::string("'") + key + "': unknown value '" + s + "'");
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail(std::string("not valid JSON: ") + e.what());
    }
    if (!j.is_object()) fail("top level must be an object");
    expect_keys(j,
                {"name", "n", "t", "batch", "seed", "scheduler", "delay_targets", "backend", "dealer_fault",
                 "dealer_targets", "party_faults", "trials", "bug_fixture", "max_steps"},
                "scenario");

    Scenario sc;
    sc.name = get_str(j, "name", "");
    sc.n = get_int(j, "n", true, 0);
    sc.t = get_int(j, "t", true, 0);
    sc.batch = get_int(j, "batch", false, 1);
    sc.seed = get_u64(j, "seed", 0);
    sc.trials = get_int(j, "trials", false, 1);
    sc.bug_fixture = get_str(j, "bug_fixture", "");
    sc.max_steps = get_u64(j, "max_steps", 0);

    sc.scheduler = enum_from<SchedulerKind>(
        get_str(j, "scheduler", "random"), "scheduler",
        {SchedulerKind::Fifo, SchedulerKind::Random, SchedulerKind::AdversarialDelay}, scheduler_name);
    sc.delay_targets = get_parties(j, "delay_targets");
    if (!sc.delay_targets.empty() && sc.scheduler != SchedulerKind::AdversarialDelay)
        fail("'delay_targets' requires the adversarial_delay scheduler");

    sc.backend = enum_from<BackendKind>(get_str(j, "backend", "pairing"), "backend",
                                        {BackendKind::Pairing, BackendKind::DiscreteLog},
                                        [](BackendKind k) { return backend_name(k).data(); });

    sc.dealer_fault = enum_from<DealerFault>(
        get_str(j, "dealer_fault", "honest"), "dealer_fault",
        {DealerFault::Honest, DealerFault::GarbleCiphertexts, DealerFault::WrongShares,
         DealerFault::CrashAfterFirstRound},
        dealer_fault_name);
    sc.dealer_targets = get_parties(j, "dealer_targets");
    if (!sc.dealer_targets.empty() && sc.dealer_fault != DealerFault::GarbleCiphertexts &&
        sc.dealer_fault != DealerFault::WrongShares)
        fail("'dealer_targets' requires a garble_ciphertexts or wrong_shares dealer");

    if (j.contains("party_faults")) {
        const json& pf = j.at("party_faults");
        if (!pf.is_array()) fail("'party_faults' must be an array");
        for (const json& e : pf) {
            if (!e.is_object()) fail("'party_faults' entries must be objects");
            expect_keys(e, {"party", "kind", "after_step"}, "party_faults entry");
            int party = get_int(e, "party", true, 0);
            if (party < 1 || party > 0xffff) fail("'party' out of range");
            PartyFaultSpec spec;
            spec.kind = enum_from<PartyFault>(get_str(e, "kind", ""), "kind",
                                             {PartyFault::Honest, PartyFault::Crash, PartyFault::Silent,
                                              PartyFault::SpuriousImplicate, PartyFault::LieR1, PartyFault::LieR2,
                                              PartyFault::Equivocate},
                                             party_fault_name);
            spec.after_step = get_u64(e, "after_step", 0);
            if (e.contains("after_step") && spec.kind != PartyFault::Crash)
                fail("'after_step' only applies to crash faults");
            if (!sc.party_faults.emplace(PartyId(party), spec).second)
                fail("duplicate party in 'party_faults'");
        }
    }
    return sc;
}

std::string scenario_to_json(const Scenario& sc) {
    json j;
    if (!sc.name.empty()) j["name"] = sc.name;
    j["n"] = sc.n;
    j["t"] = sc.t;
    j["batch"] = sc.batch;
    j["seed"] = sc.seed;
    j["scheduler"] = scheduler_name(sc.scheduler);
    if (!sc.delay_targets.empty()) j["delay_targets"] = sc.delay_targets;
    j["backend"] = std::string(backend_name(sc.backend));
    j["dealer_fault"] = dealer_fault_name(sc.dealer_fault);
    if (!sc.dealer_targets.empty()) j["dealer_targets"] = sc.dealer_targets;
    if (!sc.party_faults.empty()) {
        json pf = json::array();
        for (const auto& [p, spec] : sc.party_faults) {
            json e;
            e["party"] = p;
            e["kind"] = party_fault_name(spec.kind);
            if (spec.kind == PartyFault::Crash) e["after_step"] = spec.after_step;
            pf.push_back(e);
        }
        j["party_faults"] = pf;
    }
    if (sc.trials != 1) j["trials"] = sc.trials;
    if (!sc.bug_fixture.empty()) j["bug_fixture"] = sc.bug_fixture;
    if (sc.max_steps != 0) j["max_steps"] = sc.max_steps;
    return j.dump(2);
}

}  // namespace avss
