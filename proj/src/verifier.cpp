// Independent certificate checker.  Deliberately shares nothing with the
// engine beyond the core key model: bounds are recomputed here from the
// document's own premises, never taken from engine code.

#include "ramsey/verifier.hpp"

#include <map>
#include <optional>
#include <set>

#include <json.hpp>

#include "ramsey/checked.hpp"
#include "ramsey/color_key.hpp"
#include "ramsey/errors.hpp"

namespace ramsey {

namespace {

using nlohmann::json;

struct Ctx {
    std::vector<Violation> violations;
    std::map<ColorKey, Value> values;  // node key -> stated value (first pass)

    void fail(const std::string& node, const std::string& message) {
        violations.push_back({node, message});
    }
};

std::optional<Value> get_int(const json& j) {
    if (!j.is_number_integer())
        return std::nullopt;
    return j.get<Value>();
}

std::optional<ColorKey> parse_key(const std::string& text) {
    try {
        return ColorKey::parse(text);
    } catch (const Error&) {
        return std::nullopt;
    }
}

// Premises of one node: parsed [key, value] pairs.
std::optional<std::vector<std::pair<ColorKey, Value>>> parse_premises(
    Ctx& ctx, const std::string& name, const json& prem) {
    if (!prem.is_array()) {
        ctx.fail(name, "\"premises\" must be an array");
        return std::nullopt;
    }
    std::vector<std::pair<ColorKey, Value>> out;
    std::set<ColorKey> seen;
    for (const json& p : prem) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_string()) {
            ctx.fail(name, "premise must be a [key, bound] pair");
            return std::nullopt;
        }
        auto key = parse_key(p[0].get<std::string>());
        auto val = get_int(p[1]);
        if (!key || !val || *val < 1) {
            ctx.fail(name, "premise has invalid key or bound");
            return std::nullopt;
        }
        if (!seen.insert(*key).second) {
            ctx.fail(name, "duplicate premise " + key->str());
            return std::nullopt;
        }
        out.emplace_back(*key, *val);
    }
    return out;
}

// Recompute 2 - r + sum(multiplicity * bound) for `key` from the stated
// node values, checking that the premise keys are exactly its reductions.
std::optional<Value> recompute_pbound(Ctx& ctx, const std::string& name,
                                      const ColorKey& key,
                                      const std::vector<std::pair<ColorKey, Value>>& premises) {
    std::vector<Reduction> reds = reductions(key);
    if (reds.size() != premises.size()) {
        ctx.fail(name, "premises do not match the reductions of " + key.str());
        return std::nullopt;
    }
    std::map<ColorKey, Value> stated;
    for (const auto& [k, v] : premises)
        stated.emplace(k, v);

    Value h = checked_sub(2, key.num_colors());
    for (const Reduction& red : reds) {
        auto it = stated.find(red.reduced);
        if (it == stated.end()) {
            ctx.fail(name, "missing premise for reduction " + red.reduced.str());
            return std::nullopt;
        }
        // Premise bounds must equal the stated value of the referenced node.
        auto node_it = ctx.values.find(red.reduced);
        if (node_it == ctx.values.end()) {
            ctx.fail(name, "premise " + red.reduced.str() + " has no node");
            return std::nullopt;
        }
        if (node_it->second != it->second) {
            ctx.fail(name, "premise bound for " + red.reduced.str() +
                               " disagrees with its node value");
            return std::nullopt;
        }
        h = checked_add(h, checked_mul(red.multiplicity, it->second));
    }
    return h;
}

// The P-bound of `key` recomputed purely from stated node values (used for
// the tightness side of the mod-3 conditions).
std::optional<Value> pbound_from_values(Ctx& ctx, const std::string& name,
                                        const ColorKey& key) {
    if (key.is_base()) {
        ctx.fail(name, "reduced key " + key.str() + " is a base key");
        return std::nullopt;
    }
    Value h = checked_sub(2, key.num_colors());
    for (const Reduction& red : reductions(key)) {
        auto it = ctx.values.find(red.reduced);
        if (it == ctx.values.end()) {
            ctx.fail(name, "node for " + red.reduced.str() +
                               " needed by the tightness check is missing");
            return std::nullopt;
        }
        h = checked_add(h, checked_mul(red.multiplicity, it->second));
    }
    return h;
}

void check_mod3(Ctx& ctx, const std::string& name, const ColorKey& key, Value h,
                const json& node) {
    if (!node.contains("evidence") || !node["evidence"].is_object()) {
        ctx.fail(name, "Mod3 node lacks evidence");
        return;
    }
    const json& ev = node["evidence"];
    static const std::set<std::string> fields{"i0", "h", "hi_red", "hi_dred",
                                              "tight_sum", "m"};
    for (const auto& [f, _] : ev.items())
        if (!fields.count(f)) {
            ctx.fail(name, "evidence has unknown field \"" + f + "\"");
            return;
        }
    for (const std::string& f : fields)
        if (!ev.contains(f) || !ev[f].is_number_integer()) {
            ctx.fail(name, "evidence field \"" + f + "\" missing or not an integer");
            return;
        }

    Value i0 = ev["i0"].get<Value>();
    Value ev_h = ev["h"].get<Value>();
    Value hi_red = ev["hi_red"].get<Value>();
    Value hi_dred = ev["hi_dred"].get<Value>();
    Value tight_sum = ev["tight_sum"].get<Value>();
    Value m = ev["m"].get<Value>();

    if (i0 < 1 || i0 > key.num_colors()) {
        ctx.fail(name, "evidence i0 out of range");
        return;
    }
    int entry = key.entries()[static_cast<size_t>(i0 - 1)];
    if (entry < 4)
        ctx.fail(name, "evidence i0 points at an entry below 4");
    if (ev_h != h)
        ctx.fail(name, "evidence h differs from the node's P-bound");
    if (mod3(h) == 1)
        ctx.fail(name, "h = " + std::to_string(h) + " is 1 (mod 3)");

    ColorKey red = key.reduce_at(static_cast<int>(i0));
    auto red_it = ctx.values.find(red);
    if (red_it == ctx.values.end()) {
        ctx.fail(name, "reduced key " + red.str() + " has no node");
        return;
    }
    if (hi_red != red_it->second)
        ctx.fail(name, "hi_red differs from the value at " + red.str());
    if (mod3(hi_red) == 1)
        ctx.fail(name, "hi_red = " + std::to_string(hi_red) + " is 1 (mod 3)");

    auto recomputed = pbound_from_values(ctx, name, red);
    if (!recomputed)
        return;
    if (tight_sum != *recomputed)
        ctx.fail(name, "tight_sum differs from the recomputed P-bound of " + red.str());
    if (tight_sum != hi_red)
        ctx.fail(name, "tightness fails: tight_sum != hi_red");

    std::vector<int> raw = key.entries();
    raw[static_cast<size_t>(i0 - 1)] = entry - 2;
    ColorKey dred = ColorKey::canonicalize(raw);
    auto dred_it = ctx.values.find(dred);
    if (dred_it == ctx.values.end()) {
        ctx.fail(name, "doubly reduced key " + dred.str() + " has no node");
        return;
    }
    if (hi_dred != dred_it->second)
        ctx.fail(name, "hi_dred differs from the value at " + dred.str());
    if (mod3(hi_dred) == 1)
        ctx.fail(name, "hi_dred = " + std::to_string(hi_dred) + " is 1 (mod 3)");

    Value product = checked_mul(hi_red - 1, hi_dred - 1);
    if (product % 2 != 0) {
        ctx.fail(name, "(hi_red - 1)(hi_dred - 1) is odd");
        return;
    }
    if (m != product / 2)
        ctx.fail(name, "m != (hi_red - 1)(hi_dred - 1) / 2");
    // The heart of the rule: 3 must divide (h - 1) * m, yet provably cannot.
    if ((mod3(h - 1) * mod3(m)) % 3 == 0)
        ctx.fail(name, "(h - 1) * m is divisible by 3; no contradiction");
}

void check_node(Ctx& ctx, const std::string& name, const ColorKey& key,
                const json& node, const FactsDb& facts) {
    static const std::set<std::string> fields{"rule",     "value",  "h",
                                              "premises", "evidence", "source"};
    for (const auto& [f, _] : node.items())
        if (!fields.count(f)) {
            ctx.fail(name, "unknown field \"" + f + "\"");
            return;
        }
    if (!node.contains("rule") || !node["rule"].is_string()) {
        ctx.fail(name, "missing \"rule\"");
        return;
    }
    std::string rule = node["rule"].get<std::string>();
    Value value = ctx.values.at(key);

    if (rule == "Base") {
        if (!key.is_base()) {
            ctx.fail(name, "Base rule on a non-base key");
            return;
        }
        if (value != key.base_value())
            ctx.fail(name, "base value must be " + std::to_string(key.base_value()));
        for (const char* f : {"h", "premises", "evidence", "source"})
            if (node.contains(f))
                ctx.fail(name, std::string("Base node must not carry \"") + f + "\"");
        return;
    }

    if (key.is_base()) {
        ctx.fail(name, "base key must use rule Base");
        return;
    }
    if (rule != "Fact" && rule != "PBound" && rule != "Parity" && rule != "Mod3") {
        ctx.fail(name, "unknown rule \"" + rule + "\"");
        return;
    }
    if (!node.contains("premises")) {
        ctx.fail(name, "missing \"premises\"");
        return;
    }
    auto premises = parse_premises(ctx, name, node["premises"]);
    if (!premises)
        return;
    auto stated_h = node.contains("h") ? get_int(node["h"]) : std::nullopt;
    if (!stated_h) {
        ctx.fail(name, "missing integer \"h\"");
        return;
    }
    std::optional<Value> h;
    try {
        h = recompute_pbound(ctx, name, key, *premises);
    } catch (const OverflowError&) {
        ctx.fail(name, "arithmetic overflow while recomputing the P-bound");
        return;
    }
    if (!h)
        return;
    if (*stated_h != *h) {
        ctx.fail(name, "h mismatch: stated " + std::to_string(*stated_h) +
                           ", recomputed " + std::to_string(*h));
        return;
    }

    if (node.contains("evidence") && rule != "Mod3")
        ctx.fail(name, "evidence on a non-Mod3 node");
    if (node.contains("source") && rule != "Fact")
        ctx.fail(name, "source on a non-Fact node");

    if (rule == "PBound") {
        if (value != *h)
            ctx.fail(name, "value != h");
    } else if (rule == "Parity") {
        if (value != *h - 1)
            ctx.fail(name, "value != h - 1");
        if (*h % 2 != 0)
            ctx.fail(name, "h is odd; parity rule does not apply");
        bool any_even = false;
        for (const auto& [k, v] : *premises)
            any_even = any_even || (v % 2 == 0);
        if (!any_even)
            ctx.fail(name, "no even term; parity rule does not apply");
    } else if (rule == "Mod3") {
        if (value != *h - 1)
            ctx.fail(name, "value != h - 1");
        try {
            check_mod3(ctx, name, key, *h, node);
        } catch (const OverflowError&) {
            ctx.fail(name, "arithmetic overflow in the mod-3 conditions");
        }
    } else {  // Fact
        if (!node.contains("source") || !node["source"].is_string() ||
            node["source"].get<std::string>().empty()) {
            ctx.fail(name, "Fact node needs a nonempty \"source\"");
            return;
        }
        const BoundInterval* iv = facts.find(key);
        if (!iv || !iv->upper) {
            ctx.fail(name, "no fact for " + key.str() + " in the facts database");
            return;
        }
        if (*iv->upper != value)
            ctx.fail(name, "fact value " + std::to_string(value) +
                               " does not match the database (" +
                               std::to_string(*iv->upper) + ")");
        if (iv->upper_source != node["source"].get<std::string>())
            ctx.fail(name, "fact source does not match the database");
    }
}

} // namespace

std::vector<Violation> verify_certificate(const std::string& document,
                                          const FactsDb& facts) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("certificate: ") + e.what());
    }

    Ctx ctx;
    if (!doc.is_object()) {
        ctx.fail("-", "document is not a JSON object");
        return ctx.violations;
    }
    for (const auto& [f, _] : doc.items())
        if (f != "version" && f != "root" && f != "nodes")
            ctx.fail("-", "unknown field \"" + f + "\"");
    if (!doc.contains("version") || !doc["version"].is_number_integer() ||
        doc["version"].get<int>() != 1)
        ctx.fail("-", "unsupported or missing version");
    if (!doc.contains("nodes") || !doc["nodes"].is_object() || doc["nodes"].empty()) {
        ctx.fail("-", "missing \"nodes\"");
        return ctx.violations;
    }
    if (!doc.contains("root") || !doc["root"].is_string()) {
        ctx.fail("-", "missing \"root\"");
        return ctx.violations;
    }

    // First pass: keys and stated values, so cross-references can be checked.
    std::map<std::string, ColorKey> keys;
    for (const auto& [name, node] : doc["nodes"].items()) {
        auto key = parse_key(name);
        if (!key) {
            ctx.fail(name, "not a canonical key");
            continue;
        }
        if (!node.is_object() || !node.contains("value") ||
            !node["value"].is_number_integer()) {
            ctx.fail(name, "missing integer \"value\"");
            continue;
        }
        Value v = node["value"].get<Value>();
        if (v < 1) {
            ctx.fail(name, "value must be positive");
            continue;
        }
        keys.emplace(name, *key);
        ctx.values.emplace(*key, v);
    }

    auto root = parse_key(doc["root"].get<std::string>());
    if (!root || !ctx.values.count(*root))
        ctx.fail("-", "root is not a node of the document");

    for (const auto& [name, key] : keys)
        check_node(ctx, name, key, doc["nodes"][name], facts);

    return ctx.violations;
}

} // namespace ramsey
