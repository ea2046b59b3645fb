#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ramsey/color_key.hpp"

namespace ramsey {

/// Known lower/upper bounds on R at one key, with provenance.  Degenerate
/// intervals (lower == upper) represent exact values.
struct BoundInterval {
    Value lower = 1;
    std::optional<Value> upper;
    std::string lower_source;
    std::string upper_source;

    bool exact() const { return upper && lower == *upper; }
};

/// Immutable database of externally known values and bounds that seed the
/// recursion.  One merged entry per canonical key; duplicate keys in the
/// input are intersected.
class FactsDb {
public:
    FactsDb() = default;

    /// Parse the facts file format: a JSON array of
    ///   {"key": [ints >= 2], "lower"?: int, "upper"?: int, "source": string}.
    /// Unknown fields are rejected; keys are canonicalized on load.
    static FactsDb load(const std::string& json_text);
    static FactsDb load_file(const std::string& path);

    /// Canonical serialization; load(serialize()) reproduces the database.
    std::string serialize() const;

    std::optional<Value> upper_at(const ColorKey& key) const;
    std::optional<Value> lower_at(const ColorKey& key) const;
    const BoundInterval* find(const ColorKey& key) const;

    /// Database with the entry at `key` dropped entirely.
    FactsDb without(const ColorKey& key) const;

    const std::map<ColorKey, BoundInterval>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    void add(const ColorKey& key, std::optional<Value> lower,
             std::optional<Value> upper, const std::string& source);

private:
    std::map<ColorKey, BoundInterval> entries_;
};

} // namespace ramsey
