#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ramsey/color_key.hpp"
#include "ramsey/facts.hpp"

namespace ramsey {

/// Which step produced a bound.
enum class Rule { Base, Fact, PBound, Parity, Mod3 };

const char* rule_name(Rule r);
std::optional<Rule> rule_from_name(const std::string& name);

/// Witness data for one application of the mod-3 refinement.  Every field is
/// re-checkable by the certificate verifier without the engine:
///   - h, hi_red and hi_dred all have residue != 1 (mod 3),
///   - tight_sum, the P-bound of the singly reduced key recomputed from its
///     own premises, equals hi_red (the forced-tightness hypothesis),
///   - m = (hi_red - 1)(hi_dred - 1) / 2, and (h - 1) * m is not divisible
///     by 3 -- the triangle-count contradiction.
struct Mod3Evidence {
    int i0;           // 1-based position in the canonical key, entry >= 4
    Value h;          // P-bound of the key being refined
    Value hi_red;     // bound used for the singly reduced key at i0
    Value hi_dred;    // bound used for the doubly reduced key at i0
    Value tight_sum;  // 2 - r + sum of bounds over the reduced key's reductions
    Value m;          // (hi_red - 1)(hi_dred - 1) / 2

    bool operator==(const Mod3Evidence&) const = default;
};

/// The P-bound of a key in the current environment: h = 2 - r + sum of
/// multiplicity * bound over the distinct reductions.
struct PBoundValue {
    ColorKey key;
    Value h;
    std::vector<std::pair<Reduction, Value>> terms;
};

/// True iff h is even and at least one term is even; licenses h - 1.
bool parity_refines(const PBoundValue& pb);

/// One node of a derivation: how the bound at `key` was obtained.
struct DerivationNode {
    ColorKey key;
    Rule rule = Rule::Base;
    Value value = 0;
    std::optional<Value> h;                            // absent for Base
    std::vector<std::pair<ColorKey, Value>> premises;  // reduced key -> bound used
    std::optional<Mod3Evidence> evidence;              // present iff rule == Mod3
    std::string source;                                // citation iff rule == Fact
};

/// Tree-shaped proof certificate; shared subtrees stored once, by key.
struct Derivation {
    ColorKey root;
    std::map<ColorKey, DerivationNode> nodes;

    Value value() const { return nodes.at(root).value; }
};

struct ClosureRow {
    ColorKey key;
    Value value;
    Rule rule;
    std::optional<Mod3Evidence> evidence;
};

/// Memoized bottom-up evaluator over the reduction DAG.  Facts only ever
/// tighten: the final bound at a key is min(candidate, fact upper) where
/// candidate is h or h - 1 depending on the parity / mod-3 refinements.
class Engine {
public:
    explicit Engine(FactsDb facts) : facts_(std::move(facts)) {}

    /// Evaluate a key (and everything below it); returns the memo node.
    const DerivationNode& evaluate(const ColorKey& key);

    /// The derivation rooted at `key`, restricted to reachable nodes.
    Derivation derivation(const ColorKey& key);

    /// P-bound of a non-base key in this engine's environment.
    PBoundValue p_bound(const ColorKey& key);

    /// Evidence for the first qualifying position, if the mod-3 rule applies.
    std::optional<Mod3Evidence> mod3_refines(const PBoundValue& pb);

    const FactsDb& facts() const { return facts_; }
    const std::map<ColorKey, DerivationNode>& memo() const { return memo_; }

private:
    DerivationNode finalize(const ColorKey& key);

    FactsDb facts_;
    std::map<ColorKey, DerivationNode> memo_;
};

/// Upper bound for a key with its certificate.  Deterministic.
std::pair<Value, Derivation> upper_bound(const ColorKey& key, const FactsDb& facts);

/// Evaluate all targets plus every key in their reduction DAGs.  Rows are
/// sorted in canonical key order and independent of target order; base keys
/// appear only when explicitly targeted.
std::vector<ClosureRow> closure(std::span<const ColorKey> targets, const FactsDb& facts);

/// Evaluate every canonical key with `colors` entries in [3, kmax] and
/// report those whose final rule is Mod3.
std::vector<ClosureRow> scan(int colors, int kmax, const FactsDb& facts);

/// How each fact relates to what the engine derives without it.
enum class FactLabel { Required, Redundant, Conflicting };

struct FactReport {
    ColorKey key;
    FactLabel label;
    BoundInterval fact;
    Value derived_upper;  // engine bound without this fact
};

std::vector<FactReport> validate_facts(const FactsDb& db);

} // namespace ramsey
