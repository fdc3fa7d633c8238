#include "kbfuse/tally.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kbfuse {

std::string Tally::to_string() const {
    std::string out;
    for (const auto& [k, v] : counts_) {
        out += k;
        out += '\t';
        out += std::to_string(v);
        out += '\n';
    }
    return out;
}

Tally Tally::from_string(const std::string& text) {
    Tally t;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        size_t tab = line.find('\t');
        if (tab == std::string::npos) continue;
        t.counts_[line.substr(0, tab)] = std::stoull(line.substr(tab + 1));
    }
    return t;
}

void Tally::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write tally: " + path);
    out << to_string();
}

Tally Tally::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open tally: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_string(ss.str());
}

}  // namespace kbfuse
