#ifndef KBFUSE_STATS_HPP
#define KBFUSE_STATS_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "kbfuse/schema.hpp"
#include "kbfuse/taxonomy.hpp"
#include "kbfuse/term.hpp"
#include "kbfuse/typecheck.hpp"

namespace kbfuse {

struct QualityReport {
    bool consistency = false;
    uint64_t topLevelClassCount = 0;
    double avgPathsToRoot = 0.0;
    uint64_t disjointnessAxiomCount = 0;
    uint64_t taxonomicLoops = 0;
    uint64_t redundantTaxonomicLinks = 0;
    uint64_t redundantRelations = 0;
    uint64_t classesWithoutInstances = 0;  // glued classes only
    double humanReadableNamePct = 0.0;
    double avgClassesPerInstance = 0.0;
    double avgFactsPerInstance = 0.0;
    uint64_t individualCount = 0;
    uint64_t classCount = 0;
    uint64_t factCount = 0;
    std::vector<std::string> problems;  // first few consistency diagnostics

    // `key: value` per line, byte-stable.
    std::string to_text() const;
};

// Memoizing path counter: number of distinct directed paths from a class
// up to the root (1 for the root itself, 0 for classes not reaching it).
class PathCounter {
public:
    PathCounter(const TaxonomyGraph& taxonomy, const std::string& rootIri);
    uint64_t paths_from_class(int classId) const;
    // Summed over the entity's direct classes.
    uint64_t paths_to_root(const std::set<std::string>& directClasses) const;

private:
    const TaxonomyGraph& taxonomy_;
    int root_;
    mutable std::vector<int64_t> memo_;  // -1 = uncomputed
    uint64_t compute(int id) const;
};

// Edges (a,c) with an alternate directed path a -> ... -> c.
uint64_t count_redundant_links(const TaxonomyGraph& taxonomy);

// Edges that close a directed cycle (0 on any pipeline output).
uint64_t count_taxonomic_loops(const TaxonomyGraph& taxonomy);

QualityReport build_report(const std::vector<Statement>& facts, const EntityRegistry& registry,
                           const TaxonomyGraph& taxonomy, const SchemaDefinition& schema,
                           const std::map<std::string, std::string>& renameMapping);

// DOT rendering of the upper taxonomy plus glued classes with at least
// `threshold` direct instances.
void emit_visualization(const TaxonomyGraph& taxonomy, uint64_t threshold,
                        const std::string& path);

// Reproducible sample of up to k fact subjects with all their facts.
void write_entity_sample(const std::vector<Statement>& facts, size_t k, uint64_t seed,
                         const std::string& path);

}  // namespace kbfuse

#endif
