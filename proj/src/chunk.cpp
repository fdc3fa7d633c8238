#include "kbfuse/chunk.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace kbfuse {

ChunkPlan plan_chunks(uint64_t fileSizeBytes, unsigned workers) {
    if (workers < 1) workers = 1;
    ChunkPlan plan{fileSizeBytes, workers, {}};
    if (fileSizeBytes == 0) {
        plan.ranges.emplace_back(0, 0);
        return plan;
    }
    for (unsigned i = 1; i <= workers; ++i) {
        uint64_t start = (i - 1) * fileSizeBytes / workers;
        uint64_t end = i * fileSizeBytes / workers;
        plan.ranges.emplace_back(start, end);
    }
    return plan;
}

namespace {

bool is_line_ws(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

// True when everything before `pos` ends in a completed statement
// (ignoring whitespace and comment lines).
bool preceded_by_statement_end(std::string_view data, size_t pos) {
    size_t i = pos;
    while (true) {
        while (i > 0 && is_line_ws(data[i - 1])) --i;
        if (i == 0) return true;
        char c = data[i - 1];
        if (c == '.') return true;
        // Possibly inside a comment line; rewind to the line start and check.
        size_t lineStart = data.rfind('\n', i - 1);
        lineStart = (lineStart == std::string_view::npos) ? 0 : lineStart + 1;
        size_t firstNonWs = lineStart;
        while (firstNonWs < i && (data[firstNonWs] == ' ' || data[firstNonWs] == '\t'))
            ++firstNonWs;
        if (firstNonWs < i && data[firstNonWs] == '#') {
            i = lineStart;
            continue;
        }
        return false;
    }
}

}  // namespace

size_t align_to_item_start(std::string_view data, size_t startByte,
                           std::string_view itemPrefix) {
    size_t pos = startByte;
    // UTF-8 continuation bytes match 10xxxxxx.
    while (pos < data.size() && (static_cast<unsigned char>(data[pos]) & 0xC0) == 0x80)
        ++pos;
    for (; pos + itemPrefix.size() <= data.size(); ++pos) {
        if (pos != 0 && data[pos - 1] != '\n') continue;
        if (data.compare(pos, itemPrefix.size(), itemPrefix) != 0) continue;
        if (preceded_by_statement_end(data, pos)) return pos;
    }
    return data.size();
}

PrefixTable read_prefix_header(std::string_view data, PrefixTable base) {
    size_t firstItem = align_to_item_start(data, 0);
    TurtleParser parser(data.substr(0, firstItem), std::move(base), "hdr");
    parser.parse([](Statement&&) {});
    return parser.prefixes();
}

std::vector<ChunkParseResult> parse_chunked(std::string_view data, unsigned workers,
                                            const PrefixTable& prefixes,
                                            std::string_view itemPrefix) {
    ChunkPlan plan = plan_chunks(data.size(), workers);
    std::vector<size_t> bounds;
    bounds.reserve(plan.ranges.size() + 1);
    for (const auto& r : plan.ranges)
        bounds.push_back(align_to_item_start(data, r.first, itemPrefix));
    bounds.push_back(data.size());

    std::vector<ChunkParseResult> results(plan.ranges.size());
    std::vector<std::thread> threads;
    for (size_t i = 0; i < plan.ranges.size(); ++i) {
        threads.emplace_back([&, i] {
            size_t begin = bounds[i];
            size_t end = std::max(bounds[i + 1], begin);
            TurtleParser parser(data.substr(begin, end - begin), prefixes,
                                "c" + std::to_string(i) + "_");
            parser.parse([&](Statement&& s) { results[i].statements.push_back(std::move(s)); });
            results[i].stats = parser.stats();
        });
    }
    for (auto& t : threads) t.join();
    return results;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

}  // namespace kbfuse
