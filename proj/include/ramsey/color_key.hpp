#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ramsey/checked.hpp"

namespace ramsey {

/// Canonical argument of a multicolor Ramsey number: the multiset of clique
/// targets, stored sorted non-decreasing with every entry >= 3.  Entries
/// equal to 2 are stripped at construction (a color that forbids K_2 has no
/// edges and contributes nothing), so each number has exactly one key.
///
/// The empty key is legal and denotes the base case left after stripping.
class ColorKey {
public:
    ColorKey() = default;

    /// Canonicalize a raw target list: reject entries < 2, drop 2s, sort.
    static ColorKey canonicalize(std::span<const int> raw);

    /// Parse the textual form, e.g. "(3,3,6)" or "()".  Strict: the string
    /// must already be canonical.
    static ColorKey parse(const std::string& text);

    const std::vector<int>& entries() const { return entries_; }
    int num_colors() const { return static_cast<int>(entries_.size()); }
    bool empty() const { return entries_.empty(); }

    /// Base keys close the recursion: the empty key has value 2, a
    /// singleton (k) has value k.
    bool is_base() const { return entries_.size() <= 1; }
    Value base_value() const;

    Value entry_sum() const;

    /// Key with entry at 1-based position decremented, re-canonicalized.
    ColorKey reduce_at(int position) const;

    /// Textual form: "(3,3,6)", "()" for the empty key.
    std::string str() const;

    /// Total order used everywhere a deterministic order is needed:
    /// by color count, then entry sum, then lexicographic.
    std::strong_ordering operator<=>(const ColorKey& other) const;
    bool operator==(const ColorKey& other) const = default;

private:
    std::vector<int> entries_;
};

/// One distinct decrement of a key.  Positions of the parent that produce
/// the same canonical reduced key are aggregated into one entry.
struct Reduction {
    int position;     // smallest 1-based position yielding this reduced key
    ColorKey reduced;
    int multiplicity;
};

/// The distinct reductions of a non-base key, in canonical order of the
/// reduced keys.  Multiplicities sum to the parent's color count.
/// Throws InvalidKeyError when called on a base key (callers must use the
/// base value instead).
std::vector<Reduction> reductions(const ColorKey& key);

} // namespace ramsey
