#ifndef KBFUSE_CHUNK_HPP
#define KBFUSE_CHUNK_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kbfuse/turtle.hpp"

namespace kbfuse {

struct ChunkPlan {
    uint64_t fileSizeBytes = 0;
    unsigned workers = 1;
    // Half-open byte intervals, disjoint, ordered, covering [0, fileSizeBytes).
    std::vector<std::pair<uint64_t, uint64_t>> ranges;
};

// Naive arithmetic split: range i starts at floor((i-1)/n * N). Boundary
// snapping happens lazily in align_to_item_start. An empty file yields a
// single empty range.
ChunkPlan plan_chunks(uint64_t fileSizeBytes, unsigned workers);

// Byte offset of the next item-declaration boundary at or after startByte:
// a line starting at column 0 with `itemPrefix` whose preceding statement is
// terminated. Skips UTF-8 continuation bytes first, so a start offset that
// bisects a multi-byte character is safe. Returns data.size() when no
// boundary follows.
size_t align_to_item_start(std::string_view data, size_t startByte,
                           std::string_view itemPrefix = "wd:Q");

// Prefix directives from the file head (everything before the first item
// declaration), merged over `base`. Chunk workers cannot see the head, so
// the driver collects the table once and shares it.
PrefixTable read_prefix_header(std::string_view data, PrefixTable base = default_prefixes());

struct ChunkParseResult {
    std::vector<Statement> statements;
    ParseStats stats;
};

// Shared-nothing chunked parse: one parser per aligned range, results in
// range order. The union over all chunks equals a sequential parse of the
// item region, each block parsed exactly once.
std::vector<ChunkParseResult> parse_chunked(std::string_view data, unsigned workers,
                                            const PrefixTable& prefixes,
                                            std::string_view itemPrefix = "wd:Q");

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace kbfuse

#endif
