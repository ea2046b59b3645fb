#include "ramsey/color_key.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "ramsey/errors.hpp"

namespace ramsey {

ColorKey ColorKey::canonicalize(std::span<const int> raw) {
    ColorKey key;
    key.entries_.reserve(raw.size());
    for (int k : raw) {
        if (k < 2)
            throw InvalidKeyError("clique target " + std::to_string(k) +
                                  " is below 2; Ramsey arguments start at 2");
        if (k > 2)
            key.entries_.push_back(k);
    }
    std::sort(key.entries_.begin(), key.entries_.end());
    return key;
}

ColorKey ColorKey::parse(const std::string& text) {
    if (text.size() < 2 || text.front() != '(' || text.back() != ')')
        throw InvalidKeyError("key must look like \"(3,4,5)\": " + text);
    ColorKey key;
    std::string inner = text.substr(1, text.size() - 2);
    if (inner.empty())
        return key;
    std::stringstream ss(inner);
    std::string part;
    int prev = 0;
    while (std::getline(ss, part, ',')) {
        size_t pos = 0;
        int k;
        try {
            k = std::stoi(part, &pos);
        } catch (const std::exception&) {
            throw InvalidKeyError("bad entry \"" + part + "\" in key " + text);
        }
        if (pos != part.size())
            throw InvalidKeyError("bad entry \"" + part + "\" in key " + text);
        if (k < 3 || k < prev)
            throw InvalidKeyError("key not in canonical form: " + text);
        key.entries_.push_back(k);
        prev = k;
    }
    if (inner.back() == ',')
        throw InvalidKeyError("trailing comma in key " + text);
    return key;
}

Value ColorKey::base_value() const {
    if (entries_.empty())
        return 2;
    if (entries_.size() == 1)
        return entries_[0];
    throw InvalidKeyError("base_value called on non-base key " + str());
}

Value ColorKey::entry_sum() const {
    Value sum = 0;
    for (int k : entries_)
        sum = checked_add(sum, k);
    return sum;
}

ColorKey ColorKey::reduce_at(int position) const {
    if (position < 1 || position > num_colors())
        throw InvalidKeyError("reduce_at: position " + std::to_string(position) +
                              " out of range for " + str());
    std::vector<int> raw = entries_;
    raw[static_cast<size_t>(position - 1)] -= 1;
    return canonicalize(raw);
}

std::string ColorKey::str() const {
    std::string out = "(";
    for (size_t i = 0; i < entries_.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(entries_[i]);
    }
    out += ')';
    return out;
}

std::strong_ordering ColorKey::operator<=>(const ColorKey& other) const {
    if (auto c = entries_.size() <=> other.entries_.size(); c != 0)
        return c;
    // Same color count: entry sum, then lexicographic.
    long long sa = 0, sb = 0;
    for (int k : entries_) sa += k;
    for (int k : other.entries_) sb += k;
    if (auto c = sa <=> sb; c != 0)
        return c;
    return entries_ <=> other.entries_;
}

std::vector<Reduction> reductions(const ColorKey& key) {
    if (key.is_base())
        throw InvalidKeyError("reductions: " + key.str() +
                              " is a base key; use its base value");
    std::map<ColorKey, Reduction> distinct;
    for (int pos = 1; pos <= key.num_colors(); ++pos) {
        ColorKey reduced = key.reduce_at(pos);
        auto it = distinct.find(reduced);
        if (it == distinct.end())
            distinct.emplace(reduced, Reduction{pos, reduced, 1});
        else
            it->second.multiplicity += 1;
    }
    std::vector<Reduction> out;
    out.reserve(distinct.size());
    for (auto& [k, red] : distinct)
        out.push_back(std::move(red));
    return out;
}

} // namespace ramsey
