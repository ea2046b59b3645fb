#include "ramsey/engine.hpp"

#include <algorithm>

#include "ramsey/errors.hpp"

namespace ramsey {

const char* rule_name(Rule r) {
    switch (r) {
        case Rule::Base:   return "Base";
        case Rule::Fact:   return "Fact";
        case Rule::PBound: return "PBound";
        case Rule::Parity: return "Parity";
        case Rule::Mod3:   return "Mod3";
    }
    return "?";
}

std::optional<Rule> rule_from_name(const std::string& name) {
    if (name == "Base")   return Rule::Base;
    if (name == "Fact")   return Rule::Fact;
    if (name == "PBound") return Rule::PBound;
    if (name == "Parity") return Rule::Parity;
    if (name == "Mod3")   return Rule::Mod3;
    return std::nullopt;
}

bool parity_refines(const PBoundValue& pb) {
    if (pb.h % 2 != 0)
        return false;
    for (const auto& [red, hi] : pb.terms)
        if (hi % 2 == 0)
            return true;
    return false;
}

const DerivationNode& Engine::evaluate(const ColorKey& key) {
    std::vector<ColorKey> stack{key};
    while (!stack.empty()) {
        const ColorKey& top = stack.back();
        if (memo_.count(top)) {
            stack.pop_back();
            continue;
        }
        if (top.is_base()) {
            DerivationNode node;
            node.key = top;
            node.rule = Rule::Base;
            node.value = top.base_value();
            memo_.emplace(top, std::move(node));
            stack.pop_back();
            continue;
        }
        bool ready = true;
        for (const Reduction& red : reductions(top)) {
            if (!memo_.count(red.reduced)) {
                if (ready)
                    ready = false;
                stack.push_back(red.reduced);
            }
        }
        if (ready) {
            ColorKey done = top;
            stack.pop_back();
            memo_.emplace(done, finalize(done));
        }
    }
    return memo_.at(key);
}

PBoundValue Engine::p_bound(const ColorKey& key) {
    if (key.is_base())
        throw InvalidKeyError("p_bound: " + key.str() + " is a base key");
    evaluate(key);
    PBoundValue pb;
    pb.key = key;
    Value h = checked_sub(2, key.num_colors());
    for (const Reduction& red : reductions(key)) {
        auto it = memo_.find(red.reduced);
        if (it == memo_.end())
            throw std::logic_error("missing reduced bound for " + red.reduced.str());
        Value hi = it->second.value;
        h = checked_add(h, checked_mul(red.multiplicity, hi));
        pb.terms.emplace_back(red, hi);
    }
    pb.h = h;
    return pb;
}

std::optional<Mod3Evidence> Engine::mod3_refines(const PBoundValue& pb) {
    const ColorKey& key = pb.key;
    if (mod3(pb.h) == 1)
        return std::nullopt;
    for (int pos = 1; pos <= key.num_colors(); ++pos) {
        int k = key.entries()[static_cast<size_t>(pos - 1)];
        if (k < 4)
            continue;
        ColorKey red = key.reduce_at(pos);
        const DerivationNode& rn = evaluate(red);
        if (!rn.h)
            continue;  // base reduced key: no P-bound to be tight against
        // Forced tightness: the reduced key's bound must equal its own
        // P-bound, i.e. neither a refinement nor a fact improved on it.
        Value tight_sum = *rn.h;
        Value hi_red = rn.value;
        if (hi_red != tight_sum || mod3(hi_red) == 1)
            continue;

        std::vector<int> raw = key.entries();
        raw[static_cast<size_t>(pos - 1)] = k - 2;
        ColorKey dred = ColorKey::canonicalize(raw);
        Value hi_dred = evaluate(dred).value;
        if (mod3(hi_dred) == 1)
            continue;

        Value product = checked_mul(hi_red - 1, hi_dred - 1);
        if (product % 2 != 0)
            throw std::logic_error("mod3: odd triangle product at " + key.str());
        Mod3Evidence ev;
        ev.i0 = pos;
        ev.h = pb.h;
        ev.hi_red = hi_red;
        ev.hi_dred = hi_dred;
        ev.tight_sum = tight_sum;
        ev.m = product / 2;
        return ev;
    }
    return std::nullopt;
}

DerivationNode Engine::finalize(const ColorKey& key) {
    PBoundValue pb;
    pb.key = key;
    Value h = checked_sub(2, key.num_colors());
    for (const Reduction& red : reductions(key)) {
        auto it = memo_.find(red.reduced);
        if (it == memo_.end())
            throw std::logic_error("missing reduced bound for " + red.reduced.str());
        Value hi = it->second.value;
        h = checked_add(h, checked_mul(red.multiplicity, hi));
        pb.terms.emplace_back(red, hi);
    }
    pb.h = h;

    bool parity = parity_refines(pb);
    std::optional<Mod3Evidence> ev = mod3_refines(pb);
    Value candidate = (parity || ev) ? checked_sub(h, 1) : h;

    DerivationNode node;
    node.key = key;
    node.h = h;
    for (const auto& [red, hi] : pb.terms)
        node.premises.emplace_back(red.reduced, hi);

    std::optional<Value> fact = facts_.upper_at(key);
    if (fact && *fact < candidate) {
        node.rule = Rule::Fact;
        node.value = *fact;
        node.source = facts_.find(key)->upper_source;
    } else {
        node.value = candidate;
        if (ev) {
            node.rule = Rule::Mod3;
            node.evidence = ev;
        } else if (parity) {
            node.rule = Rule::Parity;
        } else {
            node.rule = Rule::PBound;
        }
    }
    return node;
}

Derivation Engine::derivation(const ColorKey& key) {
    evaluate(key);
    Derivation d;
    d.root = key;
    std::vector<ColorKey> frontier{key};
    while (!frontier.empty()) {
        ColorKey k = frontier.back();
        frontier.pop_back();
        if (d.nodes.count(k))
            continue;
        const DerivationNode& node = memo_.at(k);
        d.nodes.emplace(k, node);
        for (const auto& [child, hi] : node.premises)
            frontier.push_back(child);
    }
    return d;
}

std::pair<Value, Derivation> upper_bound(const ColorKey& key, const FactsDb& facts) {
    Engine engine(facts);
    Derivation d = engine.derivation(key);
    return {d.value(), std::move(d)};
}

std::vector<ClosureRow> closure(std::span<const ColorKey> targets, const FactsDb& facts) {
    Engine engine(facts);
    std::vector<ColorKey> base_targets;
    for (const ColorKey& t : targets) {
        engine.evaluate(t);
        if (t.is_base())
            base_targets.push_back(t);
    }
    std::vector<ClosureRow> rows;
    for (const auto& [key, node] : engine.memo()) {
        bool targeted_base =
            std::find(base_targets.begin(), base_targets.end(), key) != base_targets.end();
        if (key.is_base() && !targeted_base)
            continue;
        rows.push_back({key, node.value, node.rule, node.evidence});
    }
    return rows;  // memo is an ordered map: rows are already in canonical order
}

namespace {

void enumerate_keys(int colors, int kmax, int min_entry, std::vector<int>& prefix,
                    std::vector<ColorKey>& out) {
    if (static_cast<int>(prefix.size()) == colors) {
        out.push_back(ColorKey::canonicalize(prefix));
        return;
    }
    for (int k = min_entry; k <= kmax; ++k) {
        prefix.push_back(k);
        enumerate_keys(colors, kmax, k, prefix, out);
        prefix.pop_back();
    }
}

} // namespace

std::vector<ClosureRow> scan(int colors, int kmax, const FactsDb& facts) {
    if (colors < 2 || kmax < 3)
        throw InvalidKeyError("scan needs at least 2 colors and kmax >= 3");
    std::vector<ColorKey> keys;
    std::vector<int> prefix;
    enumerate_keys(colors, kmax, 3, prefix, keys);
    std::sort(keys.begin(), keys.end());

    Engine engine(facts);
    std::vector<ClosureRow> hits;
    for (const ColorKey& key : keys) {
        const DerivationNode& node = engine.evaluate(key);
        if (node.rule == Rule::Mod3)
            hits.push_back({key, node.value, node.rule, node.evidence});
    }
    return hits;
}

std::vector<FactReport> validate_facts(const FactsDb& db) {
    std::vector<FactReport> reports;
    for (const auto& [key, iv] : db.entries()) {
        Engine engine(db.without(key));
        Value derived = engine.evaluate(key).value;
        FactLabel label;
        if (iv.lower > derived)
            label = FactLabel::Conflicting;
        else if (iv.upper && *iv.upper < derived)
            label = FactLabel::Required;
        else
            label = FactLabel::Redundant;
        reports.push_back({key, label, iv, derived});
    }
    return reports;
}

} // namespace ramsey
