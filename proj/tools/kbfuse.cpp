// Command-line entry point for the fusion pipeline.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kbfuse/pipeline.hpp"

int main(int argc, char** argv) {
    CLI::App app{"kbfuse: fuse a source dump and a declarative schema into a knowledge base"};

    kbfuse::PipelineConfig cfg;
    std::vector<std::string> steps;

    app.add_option("--dump", cfg.dumpPath, "Source dump in Turtle format");
    app.add_option("--schema", cfg.schemaPath, "Schema definition in Turtle format");
    app.add_option("--out", cfg.outDir, "Output directory")->required();
    app.add_option("--workers", cfg.workers, "Parallel parse workers")
        ->check(CLI::PositiveNumber);
    app.add_option("--step", steps,
                   "Step to run (schema, taxonomy, facts, typecheck, ids, stats); "
                   "repeatable, default: all");
    app.add_option("--seed", cfg.seed, "Seed for the entity sample");
    app.add_option("--entity-prefix", cfg.entityPrefix, "Turtle prefix of entity subjects");
    app.add_option("--sample-size", cfg.sampleSize, "Entities in the quality sample");
    app.add_option("--threshold", cfg.vizThreshold,
                   "Minimum direct instances for a class to appear in the visualization");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    cfg.steps = steps;
    return kbfuse::run_pipeline(cfg, std::cout);
}
