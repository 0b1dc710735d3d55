#pragma once

#include <json.hpp>

#include "scenario.hpp"

#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace csalab {

// Reports are emitted in insertion order so identical inputs give
// byte-identical output.  Every mathematical integer is a decimal string;
// JSON numbers are reserved for bounded metadata (seeds, counts, levels).
using json = nlohmann::ordered_json;

struct cli_overrides {
    std::optional<std::string> mode;
    std::optional<bigint> budget;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples;
    bool json_only = false;
};

namespace cli_detail {

[[noreturn]] inline void fail(const std::string& msg) {
    throw precondition_error("schema: " + msg);
}

inline void check_keys(const json& j, const char* where,
                       std::initializer_list<const char*> allowed) {
    if (!j.is_object()) fail(std::string(where) + " must be a JSON object");
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* k : allowed)
            if (item.key() == k) {
                known = true;
                break;
            }
        if (!known) fail("unknown key \"" + item.key() + "\" in " + where);
    }
}

inline const json* maybe(const json& j, const char* key) {
    auto it = j.find(key);
    return it == j.end() || it->is_null() ? nullptr : &*it;
}

inline const json& require(const json& j, const char* key, const char* where) {
    const json* v = maybe(j, key);
    if (!v) fail(std::string(where) + " needs \"" + key + "\"");
    return *v;
}

inline bigint parse_bigint(const json& j, const char* where) {
    if (j.is_number_unsigned()) return bigint(j.get<std::uint64_t>());
    if (j.is_number_integer()) return bigint(j.get<std::int64_t>());
    if (j.is_string()) {
        try {
            return bigint(j.get<std::string>());
        } catch (const std::runtime_error&) {
            fail(std::string(where) + " is not an integer: \"" + j.get<std::string>() + "\"");
        }
    }
    fail(std::string(where) + " must be an integer or a decimal string");
}

inline std::size_t parse_size(const json& j, const char* where) {
    const bigint v = parse_bigint(j, where);
    if (v < 0 || v > 1000000000) fail(std::string(where) + " is out of range");
    return v.convert_to<std::size_t>();
}

inline rational parse_rational(const json& j, const char* where) {
    if (j.is_string()) return rational::parse(j.get<std::string>());
    return rational(parse_bigint(j, where));
}

inline rational_mod_one parse_invariant(const json& j, const char* where) {
    const rational x = parse_rational(j, where);
    return rational_mod_one(x.num(), x.den());
}

inline place parse_place_text(const std::string& s) {
    if (s == "inf") return place::real();
    try {
        return place(bigint(s));
    } catch (const precondition_error&) {
        throw;
    } catch (const std::runtime_error&) {
        fail("place \"" + s + "\" is neither a prime nor \"inf\"");
    }
}

inline place parse_place(const json& j, const char* where) {
    if (j.is_string()) return parse_place_text(j.get<std::string>());
    return place(parse_bigint(j, where));
}

inline abelian_field parse_field(const json* j, const char* where) {
    if (!j) return abelian_field{};
    check_keys(*j, where, {"conductor", "fixing"});
    const bigint m = parse_bigint(require(*j, "conductor", where), where);
    std::vector<bigint> fixing;
    if (const json* fx = maybe(*j, "fixing")) {
        if (!fx->is_array()) fail(std::string(where) + ".fixing must be an array");
        for (const json& g : *fx) fixing.push_back(parse_bigint(g, where));
    }
    return abelian_field(m, fixing);
}

inline brauer_class parse_class(const json& j, const char* where) {
    check_keys(j, where, {"base", "invariants"});
    abelian_field base = parse_field(maybe(j, "base"), where);
    std::map<place, rational_mod_one> inv;
    auto add = [&](place v, rational_mod_one x) {
        if (!inv.emplace(std::move(v), std::move(x)).second)
            fail(std::string(where) + " repeats a place");
    };
    if (const json* iv = maybe(j, "invariants")) {
        if (iv->is_object()) {
            for (const auto& item : iv->items())
                add(parse_place_text(item.key()), parse_invariant(item.value(), where));
        } else if (iv->is_array()) {
            for (const json& pair : *iv) {
                if (!pair.is_array() || pair.size() != 2)
                    fail(std::string(where) + " invariants need [place, \"num/den\"] pairs");
                add(parse_place(pair[0], where), parse_invariant(pair[1], where));
            }
        } else {
            fail(std::string(where) + ".invariants must be an array or an object");
        }
    }
    return brauer_class(std::move(base), std::move(inv));
}

inline mixed_class parse_mixed(const json& j, const char* where) {
    check_keys(j, where, {"generic", "exponent", "arith", "declared_arith_degree"});
    const json* g = maybe(j, "generic");
    const json* c = maybe(j, "exponent");
    const json* a = maybe(j, "arith");
    std::optional<bigint> declared;
    if (const json* d = maybe(j, "declared_arith_degree")) declared = parse_bigint(*d, where);
    return mixed_class(generic_algebra(g ? parse_bigint(*g, where) : bigint(1)),
                       c ? parse_bigint(*c, where) : bigint(0),
                       a ? parse_class(*a, where) : brauer_class(abelian_field{}),
                       std::move(declared));
}

inline enumeration_mode parse_mode(const std::string& s) {
    if (s == "automatic") return enumeration_mode::automatic;
    if (s == "exhaustive") return enumeration_mode::exhaustive;
    if (s == "sampled") return enumeration_mode::sampled;
    fail("unknown enumeration mode \"" + s + "\"");
}

inline enumeration_options parse_enumeration(const json* j, const cli_overrides& ov) {
    enumeration_options opt;
    if (j) {
        check_keys(*j, "enumeration", {"mode", "budget", "seed", "samples"});
        if (const json* m = maybe(*j, "mode")) {
            if (!m->is_string()) fail("enumeration.mode must be a string");
            opt.mode = parse_mode(m->get<std::string>());
        }
        if (const json* b = maybe(*j, "budget")) opt.budget = parse_bigint(*b, "budget");
        if (const json* s = maybe(*j, "seed")) {
            const bigint v = parse_bigint(*s, "seed");
            if (v < 0 || v > bigint(std::numeric_limits<std::uint64_t>::max()))
                fail("seed is out of range");
            opt.seed = v.convert_to<std::uint64_t>();
        }
        if (const json* s = maybe(*j, "samples")) opt.samples = parse_size(*s, "samples");
    }
    if (ov.mode) opt.mode = parse_mode(*ov.mode);
    if (ov.budget) opt.budget = *ov.budget;
    if (ov.seed) opt.seed = *ov.seed;
    if (ov.samples) opt.samples = *ov.samples;
    return opt;
}

inline bool parse_flag(const json& j, const char* key, bool fallback) {
    const json* v = maybe(j, key);
    if (!v) return fallback;
    if (!v->is_boolean()) fail(std::string(key) + " must be a boolean");
    return v->get<bool>();
}

inline std::string place_key(const place& v) { return v.is_real() ? "inf" : v.prime().str(); }

inline std::string invariant_str(const rational_mod_one& x) {
    return x.num().str() + "/" + x.den().str();
}

inline json field_json(const abelian_field& f) {
    json out;
    out["conductor"] = f.conductor().str();
    json fix = json::array();
    for (std::size_t u : f.fixing_members()) fix.push_back(std::to_string(u));
    out["fixing"] = std::move(fix);
    out["degree"] = f.degree().str();
    return out;
}

inline json class_json(const brauer_class& c) {
    json out;
    out["base"] = field_json(c.base());
    json inv = json::array();
    for (const auto& [v, x] : c.invariants())
        inv.push_back(json::array({place_key(v), invariant_str(x)}));
    out["invariants"] = std::move(inv);
    return out;
}

inline json mixed_json(const mixed_class& e) {
    json out;
    out["generic"] = e.generic().degree().str();
    out["exponent"] = e.exponent().str();
    out["arith"] = class_json(e.arith());
    if (e.declared_arith_degree())
        out["declared_arith_degree"] = e.declared_arith_degree()->str();
    return out;
}

inline json enumeration_json(const reduction_report& r) {
    json out;
    out["mode"] = r.exhaustive ? "exhaustive" : "sampled";
    out["terms"] = r.terms.str();
    if (!r.exhaustive) {
        out["seed"] = r.seed;
        out["samples"] = r.samples;
    }
    return out;
}

inline json coeffs_json(const std::optional<std::vector<bigint>>& w) {
    if (!w) return nullptr;
    json out = json::array();
    for (const bigint& c : *w) out.push_back(c.str());
    return out;
}

inline json certificate_json(const valuation_certificate& c) {
    json out;
    out["p"] = c.p.str();
    switch (c.tag) {
    case certificate_case::unit_sum: out["case"] = "unit_sum"; break;
    case certificate_case::two_coprime_summands: out["case"] = "two_coprime_summands"; break;
    case certificate_case::single_summand: out["case"] = "single_summand"; break;
    }
    out["a"] = c.a.str();
    out["b"] = c.b.str();
    out["s"] = c.s.str();
    out["t1"] = c.t1.str();
    out["t2"] = c.t2.str();
    out["claimed"] = c.claimed.str();
    out["term_valuation"] = c.term_valuation.str();
    if (c.tag == certificate_case::single_summand) {
        out["swapped"] = c.swapped;
        out["s1"] = c.s1.str();
        out["s2"] = c.s2.str();
        out["s3"] = c.s3.str();
        out["u1"] = c.u1.str();
        out["u2"] = c.u2.str();
        out["u3"] = c.u3.str();
        out["u4"] = c.u4.str();
    }
    return out;
}

inline json run_index(const json& sc) {
    check_keys(sc, "scenario", {"command", "class"});
    const brauer_class c = parse_class(require(sc, "class", "scenario"), "class");
    json out;
    out["command"] = "index";
    out["class"] = class_json(c);
    out["index"] = index(c).str();
    return out;
}

inline json run_restrict(const json& sc) {
    check_keys(sc, "scenario", {"command", "class", "field"});
    const brauer_class c = parse_class(require(sc, "class", "scenario"), "class");
    const abelian_field k = parse_field(maybe(sc, "field"), "field");
    const brauer_class r = restrict_to(c, k);
    json out;
    out["command"] = "restrict";
    out["class"] = class_json(c);
    out["field"] = field_json(k);
    out["restricted"] = class_json(r);
    out["index"] = index(r).str();
    return out;
}

inline json run_cyclic(const json& sc) {
    check_keys(sc, "scenario", {"command", "field", "generator", "a"});
    cyclic_data data{parse_field(maybe(sc, "field"), "field"),
                     parse_bigint(require(sc, "generator", "scenario"), "generator"),
                     parse_rational(require(sc, "a", "scenario"), "a")};
    const brauer_class c = cyclic_algebra(data);
    json out;
    out["command"] = "cyclic";
    out["field"] = field_json(data.field);
    out["generator"] = data.generator.str();
    out["a"] = data.a.str();
    out["class"] = class_json(c);
    out["index"] = index(c).str();
    return out;
}

inline json run_embed_check(const json& sc) {
    check_keys(sc, "scenario", {"command", "ambient", "field", "sub"});
    const mixed_class e = parse_mixed(require(sc, "ambient", "scenario"), "ambient");
    const brauer_class d = parse_class(require(sc, "sub", "scenario"), "sub");
    const json* fj = maybe(sc, "field");
    const abelian_field f = fj ? parse_field(fj, "field") : e.arith().base();
    const embed_report rep = embed_check({e, f, d, d.base()});
    json out;
    out["command"] = "embed-check";
    out["ambient"] = mixed_json(e);
    out["field"] = field_json(f);
    out["sub"] = class_json(d);
    out["embeddable"] = rep.embeddable;
    out["ambient_degree"] = rep.ambient_degree.str();
    out["sub_degree"] = rep.sub_degree.str();
    out["relative_degree"] = rep.relative_degree.str();
    out["n"] = rep.n.str();
    out["achieved"] = rep.achieved.str();
    return out;
}

inline json run_counterexample(const json& sc) {
    check_keys(sc, "scenario", {"command", "p1", "p2", "level"});
    const bigint p1 = parse_bigint(require(sc, "p1", "scenario"), "p1");
    const bigint p2 = parse_bigint(require(sc, "p2", "scenario"), "p2");
    const json* lv = maybe(sc, "level");
    const counterexample_report rep = counterexample_run(p1, p2, lv ? parse_size(*lv, "level") : 1);
    json out;
    out["command"] = "counterexample";
    out["p1"] = rep.p1.str();
    out["p2"] = rep.p2.str();
    out["level"] = rep.level;
    out["d1"] = class_json(rep.d1);
    out["d2"] = class_json(rep.d2);
    out["splitting_layer"] = field_json(rep.splitting_layer);
    out["layer_splits_d2"] = rep.d2_splits_over_layer;
    json i1 = json::array(), i2 = json::array();
    for (const bigint& v : rep.d1_indices) i1.push_back(v.str());
    for (const bigint& v : rep.d2_indices) i2.push_back(v.str());
    out["d1_indices"] = std::move(i1);
    out["d2_indices"] = std::move(i2);
    return out;
}

inline json run_reduce(const json& sc, const cli_overrides& ov) {
    check_keys(sc, "scenario", {"command", "group", "subgroup", "r", "n", "oracle", "enumeration"});
    const json& oj = require(sc, "oracle", "scenario");
    if (!oj.is_object() || !oj.contains("kind") || !oj["kind"].is_string())
        fail("oracle needs a string \"kind\"");
    const std::string kind = oj["kind"].get<std::string>();

    group_ptr group;
    std::optional<galois_context> bridge;
    json oracle_echo;
    oracle_echo["kind"] = kind;
    single_oracle oracle;

    if (kind == "unmoved") {
        check_keys(oj, "oracle", {"kind", "algebra", "twist", "field"});
        if (maybe(sc, "group")) fail("the unmoved oracle derives its group from \"field\"");
        const mixed_class algebra = parse_mixed(require(oj, "algebra", "oracle"), "algebra");
        const brauer_class twist = parse_class(require(oj, "twist", "oracle"), "twist");
        const abelian_field k = parse_field(maybe(oj, "field"), "field");
        bridge = k.galois();
        group = bridge->group();
        oracle = unmoved_oracle(algebra, twist, *bridge);
        oracle_echo["algebra"] = mixed_json(algebra);
        oracle_echo["twist"] = class_json(twist);
        oracle_echo["field"] = field_json(k);
    } else {
        const json& gj = require(sc, "group", "scenario");
        check_keys(gj, "group", {"cyclic_orders", "table"});
        if (const json* orders = maybe(gj, "cyclic_orders")) {
            if (!orders->is_array()) fail("group.cyclic_orders must be an array");
            std::vector<std::size_t> ns;
            for (const json& v : *orders) ns.push_back(parse_size(v, "cyclic_orders"));
            group = std::make_shared<const finite_group>(finite_group::abelian(ns));
        } else if (const json* table = maybe(gj, "table")) {
            if (!table->is_array()) fail("group.table must be an array of rows");
            std::vector<std::vector<std::size_t>> rows;
            for (const json& row : *table) {
                if (!row.is_array()) fail("group.table rows must be arrays");
                std::vector<std::size_t> r;
                for (const json& v : row) r.push_back(parse_size(v, "table"));
                rows.push_back(std::move(r));
            }
            group = std::make_shared<const finite_group>(std::move(rows));
        } else {
            fail("group needs \"cyclic_orders\" or \"table\"");
        }
        if (kind == "split") {
            check_keys(oj, "oracle", {"kind", "value"});
            const json* v = maybe(oj, "value");
            const bigint s0 = v ? parse_bigint(*v, "value") : bigint(1);
            oracle = split_oracle(s0);
            oracle_echo["value"] = s0.str();
        } else if (kind == "table") {
            check_keys(oj, "oracle", {"kind", "entries"});
            const json& entries = require(oj, "entries", "oracle");
            if (!entries.is_array()) fail("oracle.entries must be an array");
            std::map<std::vector<bigint>, bigint> table;
            for (const json& e : entries) {
                if (!e.is_array() || e.size() < 2)
                    fail("oracle.entries rows are [coeffs..., value]");
                std::vector<bigint> key;
                for (std::size_t i = 0; i + 1 < e.size(); ++i)
                    key.push_back(parse_bigint(e[i], "entries"));
                table[std::move(key)] = parse_bigint(e[e.size() - 1], "entries");
            }
            oracle = table_oracle(std::move(table));
            oracle_echo["entries"] = entries.size();
        } else {
            fail("unknown oracle kind \"" + kind + "\"");
        }
    }

    std::vector<std::size_t> gens;
    if (const json* sj = maybe(sc, "subgroup")) {
        if (!sj->is_array()) fail("subgroup must be an array of element indices");
        for (const json& v : *sj) gens.push_back(parse_size(v, "subgroup"));
    }
    auto space = std::make_shared<coset_space>(
        gens.empty() ? subgroup::trivial(group) : subgroup::generated(group, gens));
    transfer_setup setup(space, parse_bigint(require(sc, "r", "scenario"), "r"),
                         parse_bigint(require(sc, "n", "scenario"), "n"), bridge);
    const reduction_report rep =
        reduce_single(setup, oracle, parse_enumeration(maybe(sc, "enumeration"), ov));

    json out;
    out["command"] = "reduce";
    out["group_order"] = group->order();
    out["cosets"] = space->count();
    out["r"] = setup.r().str();
    out["n"] = setup.n().str();
    out["oracle"] = std::move(oracle_echo);
    out["enumeration"] = enumeration_json(rep);
    out["gcd"] = rep.gcd_value.str();
    out["witness"] = coeffs_json(rep.witness_alpha);
    return out;
}

struct scenario_inputs {
    brauer_class d1, d2;
    abelian_field k1, k2;
    bigint total;
};

inline scenario_inputs parse_scenario_inputs(const json& sc) {
    return {parse_class(require(sc, "d1", "scenario"), "d1"),
            parse_class(require(sc, "d2", "scenario"), "d2"),
            parse_field(maybe(sc, "k1"), "k1"), parse_field(maybe(sc, "k2"), "k2"),
            parse_bigint(require(sc, "total", "scenario"), "total")};
}

inline void scenario_report(json& out, const scenario_inputs& in, const transfer_scenario& sc,
                            const divisibility_outcome& outcome, bool certified) {
    out["d1"] = class_json(in.d1);
    out["k1"] = field_json(in.k1);
    out["d2"] = class_json(in.d2);
    out["k2"] = field_json(in.k2);
    out["total"] = sc.total().str();
    json sides = json::array();
    for (const scenario_side* side : {&sc.first(), &sc.second()}) {
        json s;
        s["d"] = side->d.str();
        s["e"] = side->e.str();
        s["m"] = side->m.str();
        s["n"] = side->n.str();
        s["r"] = side->r.str();
        sides.push_back(std::move(s));
    }
    out["sides"] = std::move(sides);
    out["enumeration"] = enumeration_json(outcome.report);
    out["gcd"] = outcome.report.gcd_value.str();
    json witness;
    witness["alpha"] = coeffs_json(outcome.report.witness_alpha);
    witness["beta"] = coeffs_json(outcome.report.witness_beta);
    out["witness"] = std::move(witness);
    if (certified) out["certified_pairs"] = outcome.certified_pairs;
    const auto zero1 = sc.first().setup.element(
        std::vector<bigint>(sc.first().setup.space()->count(), 0));
    const auto zero2 = sc.second().setup.element(
        std::vector<bigint>(sc.second().setup.space()->count(), 0));
    json certs = json::array();
    for (const valuation_certificate& c : certify_all(sc, zero1, zero2))
        certs.push_back(certificate_json(c));
    out["certificates"] = std::move(certs);
}

inline json run_thm6(const json& sc, const cli_overrides& ov) {
    check_keys(sc, "scenario",
               {"command", "d1", "k1", "d2", "k2", "total", "certify", "enumeration"});
    const scenario_inputs in = parse_scenario_inputs(sc);
    const bool certify_each = parse_flag(sc, "certify", false);
    transfer_scenario scenario(in.d1, in.k1, in.d2, in.k2, in.total);
    const divisibility_outcome outcome =
        run_divisibility(scenario, parse_enumeration(maybe(sc, "enumeration"), ov), certify_each);
    json out;
    out["command"] = "thm6";
    scenario_report(out, in, scenario, outcome, certify_each);
    return out;
}

inline json run_thm7(const json& sc, const cli_overrides& ov) {
    check_keys(sc, "scenario",
               {"command", "d1", "k1", "d2", "k2", "total", "certify", "enumeration"});
    const scenario_inputs in = parse_scenario_inputs(sc);
    const bool certify_each = parse_flag(sc, "certify", true);
    transfer_scenario scenario(in.d1, in.k1, in.d2, in.k2, in.total);
    const pipeline_report rep =
        run_pipeline(in.d1, in.k1, in.d2, in.k2, in.total,
                     parse_enumeration(maybe(sc, "enumeration"), ov), certify_each);
    json out;
    out["command"] = "thm7";
    scenario_report(out, in, scenario, rep.divisibility, certify_each);
    json hosts = json::array();
    for (const embed_report* host : {&rep.host1, &rep.host2}) {
        json h;
        h["degree"] = host->achieved.str();
        h["n"] = host->n.str();
        h["embeddable"] = host->embeddable;
        hosts.push_back(std::move(h));
    }
    out["hosts"] = std::move(hosts);
    return out;
}

inline std::string text_field(const json& f) {
    const std::string m = f["conductor"].get<std::string>();
    if (m == "1") return "Q";
    std::string out = "Q(zeta_" + m + ")";
    const json& fix = f["fixing"];
    if (fix.size() > 1) {
        out += "^{";
        for (std::size_t i = 0; i < fix.size(); ++i)
            out += (i ? "," : "") + fix[i].get<std::string>();
        out += "}";
    }
    return out + " deg " + f["degree"].get<std::string>();
}

inline std::string text_class(const json& c) {
    std::string out = "{";
    const json& inv = c["invariants"];
    for (std::size_t i = 0; i < inv.size(); ++i) {
        out += (i ? ", " : "") + inv[i][0].get<std::string>() + ": " +
               inv[i][1].get<std::string>();
    }
    return out + "} over " + text_field(c["base"]);
}

inline std::string text_coeffs(const json& w) {
    if (w.is_null()) return "none";
    std::string out = "[";
    for (std::size_t i = 0; i < w.size(); ++i) out += (i ? " " : "") + w[i].get<std::string>();
    return out + "]";
}

inline std::string text_enumeration(const json& e) {
    std::string out = e["mode"].get<std::string>() + ", " + e["terms"].get<std::string>() +
                      " terms";
    if (e.contains("seed"))
        out += ", seed " + std::to_string(e["seed"].get<std::uint64_t>());
    return out;
}

} // namespace cli_detail

inline json run_scenario(const json& sc, const cli_overrides& ov = {}) {
    using namespace cli_detail;
    if (!sc.is_object()) fail("scenario must be a JSON object");
    const json* cmd = maybe(sc, "command");
    if (!cmd || !cmd->is_string()) fail("scenario needs a string \"command\"");
    const std::string name = cmd->get<std::string>();
    if (name == "index") return run_index(sc);
    if (name == "restrict") return run_restrict(sc);
    if (name == "cyclic") return run_cyclic(sc);
    if (name == "embed-check") return run_embed_check(sc);
    if (name == "counterexample") return run_counterexample(sc);
    if (name == "reduce") return run_reduce(sc, ov);
    if (name == "thm6") return run_thm6(sc, ov);
    if (name == "thm7") return run_thm7(sc, ov);
    fail("unknown command \"" + name + "\"");
}

inline std::string render_text(const json& rep) {
    using namespace cli_detail;
    std::ostringstream out;
    const std::string cmd = rep["command"].get<std::string>();
    out << cmd << "\n";
    if (cmd == "index") {
        out << "  class: " << text_class(rep["class"]) << "\n";
        out << "  index: " << rep["index"].get<std::string>() << "\n";
    } else if (cmd == "restrict") {
        out << "  class: " << text_class(rep["class"]) << "\n";
        out << "  field: " << text_field(rep["field"]) << "\n";
        out << "  restricted: " << text_class(rep["restricted"]) << "\n";
        out << "  index: " << rep["index"].get<std::string>() << "\n";
    } else if (cmd == "cyclic") {
        out << "  field: " << text_field(rep["field"]) << "\n";
        out << "  generator: " << rep["generator"].get<std::string>()
            << ", a = " << rep["a"].get<std::string>() << "\n";
        out << "  class: " << text_class(rep["class"]) << "\n";
        out << "  index: " << rep["index"].get<std::string>() << "\n";
    } else if (cmd == "embed-check") {
        out << "  ambient: generic " << rep["ambient"]["generic"].get<std::string>()
            << "^" << rep["ambient"]["exponent"].get<std::string>() << " x "
            << text_class(rep["ambient"]["arith"]) << "\n";
        out << "  sub: " << text_class(rep["sub"]) << "\n";
        out << "  degrees: ambient " << rep["ambient_degree"].get<std::string>() << ", sub "
            << rep["sub_degree"].get<std::string>() << ", relative "
            << rep["relative_degree"].get<std::string>() << "\n";
        out << "  n: " << rep["n"].get<std::string>() << ", achieved: "
            << rep["achieved"].get<std::string>() << "\n";
        out << "  embeddable: " << (rep["embeddable"].get<bool>() ? "yes" : "no") << "\n";
    } else if (cmd == "counterexample") {
        out << "  p1 = " << rep["p1"].get<std::string>() << ", p2 = "
            << rep["p2"].get<std::string>() << ", level " << rep["level"].get<std::size_t>()
            << "\n";
        out << "  d1: " << text_class(rep["d1"]) << "\n";
        out << "  d2: " << text_class(rep["d2"]) << "\n";
        out << "  splitting layer: " << text_field(rep["splitting_layer"]) << "\n";
        out << "  layer splits d2: " << (rep["layer_splits_d2"].get<bool>() ? "yes" : "no")
            << "\n";
        out << "  d1 indices by layer: " << text_coeffs(rep["d1_indices"]) << "\n";
        out << "  d2 indices by layer: " << text_coeffs(rep["d2_indices"]) << "\n";
    } else if (cmd == "reduce") {
        out << "  space: group order " << rep["group_order"].get<std::size_t>() << ", "
            << rep["cosets"].get<std::size_t>() << " cosets\n";
        out << "  r = " << rep["r"].get<std::string>() << ", n = "
            << rep["n"].get<std::string>() << ", oracle "
            << rep["oracle"]["kind"].get<std::string>() << "\n";
        out << "  enumeration: " << text_enumeration(rep["enumeration"]) << "\n";
        out << "  gcd: " << rep["gcd"].get<std::string>() << "\n";
        out << "  witness: " << text_coeffs(rep["witness"]) << "\n";
    } else {
        out << "  d1: " << text_class(rep["d1"]) << " over " << text_field(rep["k1"]) << "\n";
        out << "  d2: " << text_class(rep["d2"]) << " over " << text_field(rep["k2"]) << "\n";
        out << "  N: " << rep["total"].get<std::string>() << "\n";
        for (std::size_t i = 0; i < 2; ++i) {
            const json& s = rep["sides"][i];
            out << "  side " << i + 1 << ": d=" << s["d"].get<std::string>() << " e="
                << s["e"].get<std::string>() << " m=" << s["m"].get<std::string>() << " n="
                << s["n"].get<std::string>() << " r=" << s["r"].get<std::string>() << "\n";
        }
        out << "  enumeration: " << text_enumeration(rep["enumeration"]) << "\n";
        out << "  gcd: " << rep["gcd"].get<std::string>() << "\n";
        out << "  witness: alpha " << text_coeffs(rep["witness"]["alpha"]) << ", beta "
            << text_coeffs(rep["witness"]["beta"]) << "\n";
        if (rep.contains("certified_pairs"))
            out << "  certified pairs: " << rep["certified_pairs"].get<std::size_t>() << "\n";
        out << "  certificates at the witness pair:\n";
        for (const json& c : rep["certificates"]) {
            out << "    p=" << c["p"].get<std::string>() << " case="
                << c["case"].get<std::string>() << " claimed=" << c["claimed"].get<std::string>()
                << " term_valuation=" << c["term_valuation"].get<std::string>() << "\n";
        }
        if (rep.contains("hosts")) {
            for (std::size_t i = 0; i < 2; ++i) {
                const json& h = rep["hosts"][i];
                out << "  host " << i + 1 << ": degree " << h["degree"].get<std::string>()
                    << ", n " << h["n"].get<std::string>() << ", embeddable "
                    << (h["embeddable"].get<bool>() ? "yes" : "no") << "\n";
            }
        }
    }
    return out.str();
}

// Single entry point behind the binary: parse, dispatch, print, map
// exceptions onto exit codes.  Diagnostics go to err; reports to out.
inline int run_scenario_text(const std::string& text, const cli_overrides& ov,
                             std::ostream& out, std::ostream& err) {
    try {
        const json scenario = json::parse(text);
        const json report = run_scenario(scenario, ov);
        if (!ov.json_only) out << render_text(report);
        out << report.dump(2) << "\n";
        return 0;
    } catch (const consistency_error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const precondition_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::detail::exception& e) {
        err << "error: precondition: schema: " << e.what() << "\n";
        return 2;
    }
}

inline int run_scenario_file(const std::string& path, const cli_overrides& ov,
                             std::ostream& out, std::ostream& err) {
    std::ifstream in(path);
    if (!in) {
        err << "error: precondition: cannot read scenario file " << path << "\n";
        return 2;
    }
    std::ostringstream text;
    text << in.rdbuf();
    return run_scenario_text(text.str(), ov, out, err);
}

} // namespace csalab
