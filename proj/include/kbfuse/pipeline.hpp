#ifndef KBFUSE_PIPELINE_HPP
#define KBFUSE_PIPELINE_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace kbfuse {

// The six steps, in dependency order.
extern const std::vector<std::string> kStepNames;

struct PipelineConfig {
    std::string dumpPath;
    std::string schemaPath;
    std::string outDir;
    unsigned workers = 1;
    std::vector<std::string> steps;  // empty = all six
    uint64_t seed = 42;
    std::string entityPrefix = "wd:Q";  // item-declaration boundary token
    size_t sampleSize = 10;
    uint64_t vizThreshold = 1;  // min direct instances for glued classes in the DOT file
};

// Exit codes: 0 success, 1 configuration error (bad step name, missing
// prerequisite), 2 step failure. Steps whose inputs and outputs match the
// manifest hashes are skipped. Progress and errors go to `log`.
int run_pipeline(const PipelineConfig& config, std::ostream& log);

// FNV-1a 64-bit content hash, as 16 lowercase hex digits.
std::string fnv1a64_hex(const std::string& content);

}  // namespace kbfuse

#endif
