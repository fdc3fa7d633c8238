#ifndef KBFUSE_TALLY_HPP
#define KBFUSE_TALLY_HPP

#include <cstdint>
#include <map>
#include <string>

namespace kbfuse {

// Ordered key -> count map used for rejection tallies and step reports.
// Serialized one `key<TAB>count` pair per line, keys sorted, so reports are
// byte-stable across runs.
class Tally {
public:
    void add(const std::string& key, uint64_t n = 1) { counts_[key] += n; }
    uint64_t get(const std::string& key) const {
        auto it = counts_.find(key);
        return it == counts_.end() ? 0 : it->second;
    }
    void merge(const Tally& other) {
        for (const auto& [k, v] : other.counts_) counts_[k] += v;
    }
    const std::map<std::string, uint64_t>& counts() const { return counts_; }

    std::string to_string() const;
    static Tally from_string(const std::string& text);
    void save(const std::string& path) const;
    static Tally load(const std::string& path);

private:
    std::map<std::string, uint64_t> counts_;
};

}  // namespace kbfuse

#endif
