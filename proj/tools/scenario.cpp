#include "scenario.hpp"

#include "hk/rootdata.hpp"

#include <algorithm>
#include <limits>
#include <regex>
#include <set>

namespace hktool {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw SchemaError(msg); }

std::int64_t parse_int(const json& v, const std::string& field, std::int64_t lo, std::int64_t hi)
{
    static const std::regex digits("-?[0-9]{1,18}");
    if (!v.is_string()) fail(field + ": integers are written as base-10 strings");
    const std::string s = v.get<std::string>();
    if (!std::regex_match(s, digits)) fail(field + ": not a base-10 integer: \"" + s + "\"");
    const std::int64_t x = std::stoll(s);
    if (x < lo || x > hi) fail(field + ": " + s + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return x;
}

std::vector<int> parse_int_list(const json& v, const std::string& field, int lo, int hi)
{
    if (!v.is_array()) fail(field + ": expected an array of integer strings");
    std::vector<int> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(static_cast<int>(parse_int(v[i], field + "[" + std::to_string(i) + "]", lo, hi)));
    return out;
}

bool parse_bool(const json& v, const std::string& field)
{
    if (!v.is_boolean()) fail(field + ": expected true or false");
    return v.get<bool>();
}

void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed)
{
    if (!obj.is_object()) fail(where + ": expected an object");
    for (const auto& [k, _] : obj.items())
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; }))
            fail(where + ": unknown key \"" + k + "\"");
}

bool is_prime(std::int64_t p)
{
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

bool needs_prime(const std::string& c) { return c != "apartment-filtration" && c != "satake-triangularity"; }
bool type_a_only(const std::string& c) { return needs_prime(c); }

}  // namespace

const std::vector<std::string>& known_commands()
{
    static const std::vector<std::string> c = {"check-koszul",         "lie-cohomology",         "appendix-cocycles",
                                               "apartment-filtration", "satake-triangularity", "build-rep"};
    return c;
}

std::vector<std::string> verdicts_for(const std::string& command)
{
    if (command == "check-koszul") return {"exact", "not-exact"};
    return {"pass", "fail"};
}

std::string default_expect(const std::string& command) { return verdicts_for(command).front(); }

Scenario parse_scenario(const json& j, const std::string& command)
{
    only_keys(j, "scenario",
              {"schema_version", "description", "command", "group", "coefficients", "nabla_subset", "nabla_order",
               "radius", "max_coord", "m", "seed", "samples", "budget_seconds", "expect", "options"});
    if (!j.contains("schema_version")) fail("schema_version is required");
    if (j["schema_version"] != kSchemaVersion) fail("unsupported schema_version (expected \"" + std::string(kSchemaVersion) + "\")");
    if (std::find(known_commands().begin(), known_commands().end(), command) == known_commands().end())
        fail("unknown command " + command);
    if (j.contains("description") && !j["description"].is_string()) fail("description: expected a string");

    Scenario s;
    s.command = command;
    if (j.contains("command")) {
        if (!j["command"].is_string() || j["command"].get<std::string>() != command)
            fail("command field does not match the subcommand " + command);
    }

    if (!j.contains("group")) fail("group is required");
    const json& g = j["group"];
    only_keys(g, "group", {"series", "rank", "p"});
    if (!g.contains("series") || !g["series"].is_string() || g["series"].get<std::string>().size() != 1)
        fail("group.series: expected a one-letter string");
    s.series = g["series"].get<std::string>()[0];
    if (!g.contains("rank")) fail("group.rank is required");
    s.rank = static_cast<int>(parse_int(g["rank"], "group.rank", 1, 8));
    try {
        hk::RootSystem rs(s.series, s.rank);
    } catch (const std::exception& e) {
        fail(std::string("group: unsupported root system: ") + e.what());
    }
    if (type_a_only(command) && s.series != 'A') fail(command + " works with type A only");
    if (needs_prime(command)) {
        if (!g.contains("p")) fail("group.p is required for " + command);
        std::int64_t p = parse_int(g["p"], "group.p", 2, 97);
        if (!is_prime(p)) fail("group.p must be prime");
        s.p = static_cast<std::uint32_t>(p);
    } else if (g.contains("p")) {
        fail("group.p is not used by " + command);
    }

    if (command == "check-koszul" && s.rank > 4) fail("check-koszul: rank must be at most 4");
    if ((command == "lie-cohomology" || command == "build-rep") && s.rank > 3)
        fail(command + ": rank must be at most 3");
    if (command == "appendix-cocycles" && s.rank != 2) fail("appendix-cocycles: the group is PGL_3, rank 2");

    // coefficients
    const bool wants_coeff = command == "check-koszul" || command == "lie-cohomology" || command == "build-rep";
    if (j.contains("coefficients")) {
        if (!wants_coeff) fail("coefficients are not used by " + command);
        const json& c = j["coefficients"];
        only_keys(c, "coefficients", {"kind", "field", "mu"});
        if (!c.contains("kind") || !c["kind"].is_string()) fail("coefficients.kind is required");
        const std::string kind = c["kind"].get<std::string>();
        if (kind == "trivial") {
            if (c.contains("mu")) fail("coefficients.mu is only valid for kind highest_weight");
            if (!c.contains("field") || !c["field"].is_string()) fail("coefficients.field is required for trivial coefficients");
            const std::string f = c["field"].get<std::string>();
            if (f == "Q") {
                s.coeff = CoeffKind::TrivialQ;
            } else if (f == "F_p" || f == "F_" + std::to_string(s.p)) {
                s.coeff = CoeffKind::TrivialFp;
            } else {
                fail("coefficients.field \"" + f + "\" does not match the characteristic of group.p");
            }
        } else if (kind == "highest_weight") {
            if (c.contains("field") && c["field"] != "F_p" && c["field"] != "F_" + std::to_string(s.p))
                fail("coefficients.field must be the residue field F_p for highest_weight coefficients");
            if (!c.contains("mu")) fail("coefficients.mu is required");
            s.mu = parse_int_list(c["mu"], "coefficients.mu", 0, static_cast<int>(s.p) - 1);
            if (static_cast<int>(s.mu.size()) != s.rank) fail("coefficients.mu must have rank entries");
            s.coeff = CoeffKind::HighestWeight;
        } else {
            fail("coefficients.kind must be trivial or highest_weight");
        }
        if (command != "check-koszul" && s.coeff == CoeffKind::TrivialQ)
            fail(command + " works over F_p; trivial coefficients over Q are not available");
        if (s.coeff == CoeffKind::TrivialFp && command != "check-koszul") {
            s.coeff = CoeffKind::HighestWeight;
            s.mu.assign(s.rank, 0);
        }
    } else if (wants_coeff) {
        fail("coefficients are required for " + command);
    }

    if (j.contains("nabla_subset") || j.contains("nabla_order")) {
        if (command != "check-koszul") fail("nabla_subset and nabla_order are check-koszul fields");
    }
    if (j.contains("nabla_subset")) {
        s.subset = parse_int_list(j["nabla_subset"], "nabla_subset", 1, s.rank);
        std::set<int> u(s.subset.begin(), s.subset.end());
        if (u.size() != s.subset.size()) fail("nabla_subset has repeated entries");
        if (s.subset.empty()) fail("nabla_subset must be non-empty");
        std::sort(s.subset.begin(), s.subset.end());
    }
    if (j.contains("nabla_order")) {
        s.order = parse_int_list(j["nabla_order"], "nabla_order", 1, s.rank);
        std::vector<int> sorted = s.order;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < s.rank; ++i)
            if (static_cast<int>(sorted.size()) != s.rank || sorted[i] != i + 1)
                fail("nabla_order must be a permutation of 1..rank");
    }

    if (j.contains("radius")) {
        if (command != "apartment-filtration" && command != "satake-triangularity") fail("radius is not used by " + command);
        s.radius = static_cast<int>(parse_int(j["radius"], "radius", 0, 8));
    }
    if (command == "apartment-filtration" && s.radius < 1) fail("radius must be positive");
    if (command == "apartment-filtration" && s.rank > 3) fail("apartment-filtration: rank must be at most 3");
    if (j.contains("max_coord")) {
        if (command != "satake-triangularity") fail("max_coord is not used by " + command);
        s.max_coord = static_cast<int>(parse_int(j["max_coord"], "max_coord", 0, 4));
    }
    if (command == "satake-triangularity" && s.rank > 3) fail("satake-triangularity: rank must be at most 3");
    if (j.contains("m")) {
        if (command != "appendix-cocycles") fail("m is not used by " + command);
        s.m = static_cast<int>(parse_int(j["m"], "m", 2, 3));
    }
    if (j.contains("seed")) s.seed = static_cast<std::uint64_t>(parse_int(j["seed"], "seed", 0, std::numeric_limits<std::int64_t>::max()));
    if (j.contains("samples")) s.samples = static_cast<std::uint64_t>(parse_int(j["samples"], "samples", 1, 100'000'000));
    if (j.contains("budget_seconds"))
        s.budget_seconds = static_cast<std::uint64_t>(parse_int(j["budget_seconds"], "budget_seconds", 0, 86400));

    if (j.contains("expect")) {
        if (!j["expect"].is_string()) fail("expect: expected a string");
        s.expect = j["expect"].get<std::string>();
    }

    if (j.contains("options")) {
        const json& o = j["options"];
        only_keys(o, "options", {"inheritance", "zeta_non_coboundary", "p3_sampling", "svg"});
        if (o.contains("inheritance")) s.inheritance = parse_bool(o["inheritance"], "options.inheritance");
        if (o.contains("zeta_non_coboundary")) s.zeta_non_coboundary = parse_bool(o["zeta_non_coboundary"], "options.zeta_non_coboundary");
        if (o.contains("p3_sampling")) s.p3_sampling = parse_bool(o["p3_sampling"], "options.p3_sampling");
        if (o.contains("svg")) s.svg = parse_bool(o["svg"], "options.svg");
    }
    if (s.inheritance && command != "check-koszul") fail("options.inheritance is a check-koszul option");
    if (s.svg && (command != "apartment-filtration" || s.rank != 2)) fail("options.svg needs a rank-two apartment-filtration");
    if (command == "appendix-cocycles") {
        if (s.p != 2 && s.p != 3) fail("appendix-cocycles: p must be 2 or 3");
        if (s.p == 3 && !s.p3_sampling) fail("appendix-cocycles at p = 3 samples the cocycle identities; set options.p3_sampling");
        if (s.zeta_non_coboundary && s.p != 2) fail("options.zeta_non_coboundary is available at p = 2 only");
    } else if (s.zeta_non_coboundary || s.p3_sampling) {
        fail("options.zeta_non_coboundary and options.p3_sampling are appendix-cocycles options");
    }
    return s;
}

json scenario_echo(const Scenario& s)
{
    json e;
    e["command"] = s.command;
    e["group"] = {{"series", std::string(1, s.series)}, {"rank", num(s.rank)}};
    if (s.p) e["group"]["p"] = num(s.p);
    switch (s.coeff) {
    case CoeffKind::TrivialQ: e["coefficients"] = {{"kind", "trivial"}, {"field", "Q"}}; break;
    case CoeffKind::TrivialFp: e["coefficients"] = {{"kind", "trivial"}, {"field", "F_" + num(s.p)}}; break;
    case CoeffKind::HighestWeight: {
        json mu = json::array();
        for (int x : s.mu) mu.push_back(num(x));
        e["coefficients"] = {{"kind", "highest_weight"}, {"field", "F_" + num(s.p)}, {"mu", mu}};
        break;
    }
    case CoeffKind::None: break;
    }
    auto list = [](const std::vector<int>& v) {
        json a = json::array();
        for (int x : v) a.push_back(num(x));
        return a;
    };
    if (s.command == "check-koszul") {
        std::vector<int> d = s.subset, o = s.order;
        if (d.empty())
            for (int i = 1; i <= s.rank; ++i) d.push_back(i);
        if (o.empty())
            for (int i = 1; i <= s.rank; ++i) o.push_back(i);
        e["nabla_subset"] = list(d);
        e["nabla_order"] = list(o);
        e["options"]["inheritance"] = s.inheritance;
    }
    if (s.command == "apartment-filtration" || s.command == "satake-triangularity") e["radius"] = num(s.radius);
    if (s.command == "satake-triangularity") e["max_coord"] = num(s.max_coord);
    if (s.command == "apartment-filtration") e["options"]["svg"] = s.svg;
    if (s.command == "appendix-cocycles") {
        e["m"] = num(s.m);
        e["samples"] = num(s.samples);
        e["options"]["zeta_non_coboundary"] = s.zeta_non_coboundary;
        e["options"]["p3_sampling"] = s.p3_sampling;
    }
    e["seed"] = num(s.seed);
    e["budget_seconds"] = num(s.budget_seconds);
    e["expect"] = s.expect.empty() ? default_expect(s.command) : s.expect;
    return e;
}

}  // namespace hktool
