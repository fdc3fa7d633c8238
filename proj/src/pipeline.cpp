#include "kbfuse/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "kbfuse/chunk.hpp"
#include "kbfuse/facts.hpp"
#include "kbfuse/ids.hpp"
#include "kbfuse/schema.hpp"
#include "kbfuse/stats.hpp"
#include "kbfuse/tally.hpp"
#include "kbfuse/taxonomy.hpp"
#include "kbfuse/tsv.hpp"
#include "kbfuse/typecheck.hpp"
#include "kbfuse/vocab.hpp"

namespace fs = std::filesystem;

namespace kbfuse {

const std::vector<std::string> kStepNames = {"schema", "taxonomy", "facts",
                                             "typecheck", "ids", "stats"};

std::string fnv1a64_hex(const std::string& content) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : content) {
        h ^= c;
        h *= 1099511628211ull;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<size_t>(i)] = digits[h & 0xF];
        h >>= 4;
    }
    return out;
}

namespace {

struct ManifestRow {
    std::string role;  // "in" or "out"
    std::string path;  // relative to outDir (or absolute for external inputs)
    std::string hash;
};

class Manifest {
public:
    std::map<std::string, std::vector<ManifestRow>> rows;

    static Manifest load(const fs::path& file) {
        Manifest m;
        std::ifstream in(file, std::ios::binary);
        std::string line;
        while (in && std::getline(in, line)) {
            size_t t1 = line.find('\t');
            size_t t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
            size_t t3 = t2 == std::string::npos ? t2 : line.find('\t', t2 + 1);
            if (t3 == std::string::npos) continue;
            m.rows[line.substr(0, t1)].push_back({line.substr(t1 + 1, t2 - t1 - 1),
                                                  line.substr(t2 + 1, t3 - t2 - 1),
                                                  line.substr(t3 + 1)});
        }
        return m;
    }

    void save(const fs::path& file) const {
        std::ofstream out(file, std::ios::binary | std::ios::trunc);
        for (const auto& [step, list] : rows)
            for (const auto& r : list)
                out << step << '\t' << r.role << '\t' << r.path << '\t' << r.hash << '\n';
    }
};

std::string hash_file(const fs::path& p) { return fnv1a64_hex(read_file(p.string())); }

struct Ctx {
    const PipelineConfig& cfg;
    fs::path out;
    std::ostream& log;
    Manifest manifest;

    fs::path step_dir(size_t i) const {
        return out / "steps" / (std::to_string(i + 1) + "-" + kStepNames[i]);
    }
    std::string rel(const fs::path& p) const {
        auto r = fs::relative(p, out);
        return r.empty() ? p.string() : r.string();
    }
    std::string config_hash() const {
        return fnv1a64_hex(cfg.entityPrefix + "|" + std::to_string(cfg.seed) + "|" +
                           std::to_string(cfg.sampleSize) + "|" +
                           std::to_string(cfg.vizThreshold));
    }
};

std::vector<Statement> read_statements(const fs::path& p) {
    return read_tsv_facts(p.string()).statements;
}

std::set<std::string> read_lines_set(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + p.string());
    std::set<std::string> out;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) out.insert(line);
    return out;
}

void write_lines_set(const std::set<std::string>& lines, const fs::path& p) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    for (const auto& l : lines) out << l << '\n';
}

SchemaDefinition load_step1_schema(const Ctx& ctx) {
    return load_schema_from_statements(read_statements(ctx.step_dir(0) / "schema.tsv"));
}

// Reconstructs the step-4/5 registry from persisted types + taxonomy.
EntityRegistry rebuild_registry(const std::vector<Statement>& types,
                                const TaxonomyGraph& taxonomy,
                                const std::set<std::string>& products) {
    EntityRegistry r = build_registry(types, taxonomy, products);
    for (const auto& s : types)
        if (s.subject.value.rfind(vocab::KB_GENERIC, 0) == 0)
            r.generics[s.object.value] = s.subject.value;
    return r;
}

// ---- steps ---------------------------------------------------------------

void step_schema(Ctx& ctx) {
    SchemaDefinition schema = prune_upper_taxonomy(load_schema(ctx.cfg.schemaPath));
    write_tsv_facts(schema_to_statements(schema), (ctx.step_dir(0) / "schema.tsv").string());
    Tally t;
    t.add("upper_classes", schema.upperClasses.size());
    t.add("shapes", schema.shapes.size());
    t.add("disjoint_pairs", schema.disjointPairs.size());
    t.add("blacklisted_classes", schema.classBlacklist.size());
    t.save((ctx.step_dir(0) / "report.txt").string());
}

void step_taxonomy(Ctx& ctx) {
    SchemaDefinition schema = load_step1_schema(ctx);
    std::string data = read_file(ctx.cfg.dumpPath);
    PrefixTable prefixes = read_prefix_header(data);
    auto chunks = parse_chunked(data, ctx.cfg.workers, prefixes, ctx.cfg.entityPrefix);

    FactsConfig fc = FactsConfig::wikidata();
    SourceGraph source;
    Tally tally;
    for (const auto& c : chunks) {
        merge_into(source, extract_subclass_graph(c.statements,
                                                  fc.truthyPrefix + fc.subclassPid,
                                                  fc.truthyPrefix + fc.instancePid));
        tally.add("parse_skipped", c.stats.skipped);
    }

    TaxonomyGraph graph = build_upper_graph(schema);
    glue(schema, source, graph, tally);
    apply_blacklist(graph, schema.classBlacklist, &tally);
    // Generic-instance category members may only gain instances in step 4
    // (their generic instances), so they are exempt from the emptiness drop
    // here; step 4 re-runs the drop with final counts.
    std::set<std::string> exempt;
    for (const auto& cat : schema.genericInstanceClasses) {
        int id = graph.id_of(cat);
        if (id < 0) continue;
        for (int d : graph.descendants(id)) exempt.insert(graph.node(d).iri);
    }
    drop_uninstantiated(graph, &tally, exempt);
    remove_transitive_edges(graph, &tally);

    save_taxonomy(graph, (ctx.step_dir(1) / "edges.tsv").string(),
                  (ctx.step_dir(1) / "nodes.tsv").string());
    tally.add("classes", graph.size());
    tally.add("subclass_edges", graph.edge_count());
    tally.save((ctx.step_dir(1) / "report.txt").string());
}

void step_facts(Ctx& ctx) {
    SchemaDefinition schema = load_step1_schema(ctx);
    TaxonomyGraph taxonomy = load_taxonomy((ctx.step_dir(1) / "edges.tsv").string(),
                                           (ctx.step_dir(1) / "nodes.tsv").string(), schema);
    std::string data = read_file(ctx.cfg.dumpPath);
    PrefixTable prefixes = read_prefix_header(data);
    auto chunks = parse_chunked(data, ctx.cfg.workers, prefixes, ctx.cfg.entityPrefix);

    FactsConfig fc = FactsConfig::wikidata();
    std::vector<FactExtraction> parts(chunks.size());
    std::vector<std::thread> threads;
    for (size_t i = 0; i < chunks.size(); ++i)
        threads.emplace_back([&, i] {
            parts[i] = extract_facts(chunks[i].statements, schema, taxonomy, fc);
        });
    for (auto& t : threads) t.join();

    FactExtraction merged;
    for (size_t i = 0; i < parts.size(); ++i) {
        merged.tally.add("parse_skipped", chunks[i].stats.skipped);
        merge_into(merged, std::move(parts[i]));
    }

    const fs::path dir = ctx.step_dir(2);
    write_tsv_facts(merged.facts, (dir / "facts.tsv").string());
    write_tsv_facts(merged.labels, (dir / "labels.tsv").string());
    write_tsv_facts(merged.types, (dir / "types.tsv").string());
    save_names(merged.names, (dir / "names.tsv").string());
    write_lines_set(merged.products, dir / "products.txt");
    merged.tally.add("facts_extracted", merged.facts.size());
    merged.tally.save((dir / "report.txt").string());
}

void step_typecheck(Ctx& ctx) {
    SchemaDefinition schema = load_step1_schema(ctx);
    TaxonomyGraph taxonomy = load_taxonomy((ctx.step_dir(1) / "edges.tsv").string(),
                                           (ctx.step_dir(1) / "nodes.tsv").string(), schema);
    const fs::path in = ctx.step_dir(2);
    auto facts = read_statements(in / "facts.tsv");
    auto labels = read_statements(in / "labels.tsv");
    auto types = read_statements(in / "types.tsv");
    auto products = read_lines_set(in / "products.txt");

    TypecheckResult r = run_typecheck(facts, labels, types, products, taxonomy, schema);

    // Final direct-instance counts, then drop glued classes that ended up
    // with no instances at all (entities may have been rejected since the
    // dump-time counts of step 2).
    for (size_t id = 0; id < taxonomy.size(); ++id)
        taxonomy.node(static_cast<int>(id)).directInstances = 0;
    for (const auto& [entity, classes] : r.registry.directClasses) {
        if (r.registry.isClass.count(entity)) continue;
        for (const auto& cls : classes)
            if (int id = taxonomy.id_of(cls); id >= 0) ++taxonomy.node(id).directInstances;
    }
    drop_uninstantiated(taxonomy, &r.tally);
    remove_transitive_edges(taxonomy, &r.tally);

    const fs::path dir = ctx.step_dir(3);
    write_tsv_facts(r.facts, (dir / "facts.tsv").string());
    write_tsv_facts(r.labels, (dir / "labels.tsv").string());
    write_tsv_facts(r.types, (dir / "types.tsv").string());
    save_taxonomy(taxonomy, (dir / "edges.tsv").string(), (dir / "nodes.tsv").string());
    r.tally.add("facts_accepted", r.facts.size());
    r.tally.save((dir / "report.txt").string());
}

void step_ids(Ctx& ctx) {
    SchemaDefinition schema = load_step1_schema(ctx);
    TaxonomyGraph taxonomy = load_taxonomy((ctx.step_dir(3) / "edges.tsv").string(),
                                           (ctx.step_dir(3) / "nodes.tsv").string(), schema);
    const fs::path in = ctx.step_dir(3);
    auto facts = read_statements(in / "facts.tsv");
    auto labels = read_statements(in / "labels.tsv");
    auto types = read_statements(in / "types.tsv");
    auto names = load_names((ctx.step_dir(2) / "names.tsv").string());
    auto products = read_lines_set(ctx.step_dir(2) / "products.txt");

    EntityRegistry registry = rebuild_registry(types, taxonomy, products);
    RenamePlan plan = build_rename_plan(names, registry, taxonomy);

    auto renamedFacts = apply_rename(facts, plan.mapping);
    auto renamedLabels = apply_rename(labels, plan.mapping);
    auto renamedTypes = apply_rename(types, plan.mapping);

    std::vector<Statement> subclassFacts;
    for (const auto& [child, parent] : taxonomy.edges_sorted())
        subclassFacts.push_back(
            {Term::iri(child), Term::iri(vocab::RDFS_SUBCLASSOF), Term::iri(parent)});
    auto renamedSubclass = apply_rename(subclassFacts, plan.mapping);

    const fs::path dir = ctx.step_dir(4);
    write_tsv_facts(renamedFacts, (dir / "facts.tsv").string());
    write_tsv_facts(renamedLabels, (dir / "labels.tsv").string());
    write_tsv_facts(renamedTypes, (dir / "types.tsv").string());
    write_tsv_facts(plan.sameAs, (dir / "sameas.tsv").string());

    // Final five-file split.
    std::set<std::string> titled;  // source IRIs with a Wikipedia page
    for (const auto& n : names)
        if (!n.wikipediaTitle.empty()) titled.insert(n.iri);

    std::ofstream fFacts(ctx.out / "kb-facts.tsv", std::ios::binary | std::ios::trunc);
    std::ofstream fBeyond(ctx.out / "kb-beyond-wikipedia.tsv",
                          std::ios::binary | std::ios::trunc);
    std::ofstream fTaxo(ctx.out / "kb-taxonomy.tsv", std::ios::binary | std::ios::trunc);
    std::ofstream fMeta(ctx.out / "kb-meta.tsv", std::ios::binary | std::ios::trunc);

    // Class-subject labels accompany the subclass facts in the Taxonomy
    // file; individuals split by Wikipedia-page presence of their source id.
    auto emit_entity = [&](const Statement& renamed, const std::string& sourceSubject) {
        Statement bare = renamed;
        bare.startTime.clear();
        bare.endTime.clear();
        bare.pointInTime.clear();
        std::ofstream& target = titled.count(sourceSubject) ? fFacts : fBeyond;
        target << statement_to_tsv_line(bare) << '\n';
        if (renamed.has_time()) {
            std::string quoted = "<< " + to_turtle(renamed.subject) + " " +
                                 to_turtle(renamed.predicate) + " " + to_turtle(renamed.object) +
                                 " >>";
            auto annotate = [&](const std::string& pred, const std::string& value) {
                if (value.empty()) return;
                std::string dt = value.find('T') == std::string::npos ? vocab::XSD_DATE
                                                                      : vocab::XSD_DATETIME;
                fMeta << quoted << '\t' << "<" << pred << ">" << '\t'
                      << to_turtle(Term::literal(value, dt)) << "\t.\n";
            };
            annotate(vocab::KBF_START_TIME, renamed.startTime);
            annotate(vocab::KBF_END_TIME, renamed.endTime);
            annotate(vocab::KBF_POINT_IN_TIME, renamed.pointInTime);
        }
    };

    for (size_t i = 0; i < facts.size(); ++i) emit_entity(renamedFacts[i], facts[i].subject.value);
    for (size_t i = 0; i < labels.size(); ++i) {
        if (registry.isClass.count(labels[i].subject.value))
            fTaxo << statement_to_tsv_line(renamedLabels[i]) << '\n';
        else emit_entity(renamedLabels[i], labels[i].subject.value);
    }
    for (size_t i = 0; i < types.size(); ++i) emit_entity(renamedTypes[i], types[i].subject.value);
    for (const auto& s : renamedSubclass) fTaxo << statement_to_tsv_line(s) << '\n';

    fs::copy_file(ctx.step_dir(0) / "schema.tsv", ctx.out / "kb-schema.tsv",
                  fs::copy_options::overwrite_existing);

    Tally t;
    t.add("renamed", plan.mapping.size());
    t.save((dir / "report.txt").string());
}

void step_stats(Ctx& ctx) {
    SchemaDefinition schema = load_step1_schema(ctx);
    TaxonomyGraph taxonomy = load_taxonomy((ctx.step_dir(3) / "edges.tsv").string(),
                                           (ctx.step_dir(3) / "nodes.tsv").string(), schema);
    auto facts = read_statements(ctx.step_dir(3) / "facts.tsv");
    auto types = read_statements(ctx.step_dir(3) / "types.tsv");
    auto products = read_lines_set(ctx.step_dir(2) / "products.txt");
    auto sameAs = read_statements(ctx.step_dir(4) / "sameas.tsv");

    EntityRegistry registry = rebuild_registry(types, taxonomy, products);
    std::map<std::string, std::string> mapping;  // source -> final
    for (const auto& s : sameAs) mapping[s.object.value] = s.subject.value;

    QualityReport report = build_report(facts, registry, taxonomy, schema, mapping);
    write_file((ctx.out / "report.txt").string(), report.to_text());
    emit_visualization(taxonomy, ctx.cfg.vizThreshold, (ctx.out / "taxonomy.dot").string());

    auto renamedFacts = read_statements(ctx.step_dir(4) / "facts.tsv");
    write_entity_sample(renamedFacts, ctx.cfg.sampleSize, ctx.cfg.seed,
                        (ctx.out / "sample.tsv").string());
}

// ---- orchestration -------------------------------------------------------

struct StepSpec {
    std::vector<fs::path> inputs;
    std::vector<fs::path> outputs;
    void (*run)(Ctx&);
};

StepSpec spec_for(size_t i, const Ctx& ctx) {
    const auto& cfg = ctx.cfg;
    auto d = [&](size_t k) { return ctx.step_dir(k); };
    switch (i) {
        case 0:
            return {{cfg.schemaPath}, {d(0) / "schema.tsv", d(0) / "report.txt"}, step_schema};
        case 1:
            return {{cfg.dumpPath, d(0) / "schema.tsv"},
                    {d(1) / "edges.tsv", d(1) / "nodes.tsv", d(1) / "report.txt"},
                    step_taxonomy};
        case 2:
            return {{cfg.dumpPath, d(0) / "schema.tsv", d(1) / "edges.tsv", d(1) / "nodes.tsv"},
                    {d(2) / "facts.tsv", d(2) / "labels.tsv", d(2) / "types.tsv",
                     d(2) / "names.tsv", d(2) / "products.txt", d(2) / "report.txt"},
                    step_facts};
        case 3:
            return {{d(0) / "schema.tsv", d(1) / "edges.tsv", d(1) / "nodes.tsv",
                     d(2) / "facts.tsv", d(2) / "labels.tsv", d(2) / "types.tsv",
                     d(2) / "products.txt"},
                    {d(3) / "facts.tsv", d(3) / "labels.tsv", d(3) / "types.tsv",
                     d(3) / "edges.tsv", d(3) / "nodes.tsv", d(3) / "report.txt"},
                    step_typecheck};
        case 4:
            return {{d(0) / "schema.tsv", d(2) / "names.tsv", d(2) / "products.txt",
                     d(3) / "facts.tsv", d(3) / "labels.tsv", d(3) / "types.tsv",
                     d(3) / "edges.tsv", d(3) / "nodes.tsv"},
                    {d(4) / "facts.tsv", d(4) / "labels.tsv", d(4) / "types.tsv",
                     d(4) / "sameas.tsv", d(4) / "report.txt", ctx.out / "kb-schema.tsv",
                     ctx.out / "kb-taxonomy.tsv", ctx.out / "kb-facts.tsv",
                     ctx.out / "kb-beyond-wikipedia.tsv", ctx.out / "kb-meta.tsv"},
                    step_ids};
        default:
            return {{d(0) / "schema.tsv", d(2) / "products.txt", d(3) / "facts.tsv",
                     d(3) / "types.tsv", d(3) / "edges.tsv", d(3) / "nodes.tsv",
                     d(4) / "sameas.tsv", d(4) / "facts.tsv"},
                    {ctx.out / "report.txt", ctx.out / "taxonomy.dot", ctx.out / "sample.tsv"},
                    step_stats};
    }
}

bool can_skip(const Ctx& ctx, const std::string& name, const StepSpec& spec,
              const std::string& configHash) {
    auto it = ctx.manifest.rows.find(name);
    if (it == ctx.manifest.rows.end()) return false;
    std::map<std::string, std::string> recorded;
    for (const auto& r : it->second) recorded[r.role + "|" + r.path] = r.hash;
    auto check = [&](const std::string& role, const std::string& path, const std::string& hash) {
        auto f = recorded.find(role + "|" + path);
        return f != recorded.end() && f->second == hash;
    };
    if (!check("in", "<config>", configHash)) return false;
    size_t expected = 1;
    for (const auto& p : spec.inputs) {
        if (!fs::exists(p) || !check("in", ctx.rel(p), hash_file(p))) return false;
        ++expected;
    }
    for (const auto& p : spec.outputs) {
        if (!fs::exists(p) || !check("out", ctx.rel(p), hash_file(p))) return false;
        ++expected;
    }
    return it->second.size() == expected;
}

void record(Ctx& ctx, const std::string& name, const StepSpec& spec,
            const std::string& configHash) {
    auto& list = ctx.manifest.rows[name];
    list.clear();
    list.push_back({"in", "<config>", configHash});
    for (const auto& p : spec.inputs) list.push_back({"in", ctx.rel(p), hash_file(p)});
    for (const auto& p : spec.outputs) list.push_back({"out", ctx.rel(p), hash_file(p)});
    ctx.manifest.save(ctx.out / "manifest.tsv");
}

}  // namespace

int run_pipeline(const PipelineConfig& config, std::ostream& log) {
    std::vector<size_t> selected;
    if (config.steps.empty()) {
        for (size_t i = 0; i < kStepNames.size(); ++i) selected.push_back(i);
    } else {
        std::set<size_t> chosen;
        for (const auto& name : config.steps) {
            auto it = std::find(kStepNames.begin(), kStepNames.end(), name);
            if (it == kStepNames.end()) {
                log << "error: unknown step '" << name << "'\n";
                return 1;
            }
            chosen.insert(static_cast<size_t>(it - kStepNames.begin()));
        }
        selected.assign(chosen.begin(), chosen.end());  // dependency order
    }
    if (config.outDir.empty() || config.workers < 1) {
        log << "error: output directory and workers >= 1 are required\n";
        return 1;
    }

    Ctx ctx{config, fs::path(config.outDir), log, {}};
    std::error_code ec;
    fs::create_directories(ctx.out, ec);
    for (size_t i = 0; i < kStepNames.size(); ++i) fs::create_directories(ctx.step_dir(i), ec);
    if (fs::exists(ctx.out / "manifest.tsv")) ctx.manifest = Manifest::load(ctx.out / "manifest.tsv");
    const std::string configHash = ctx.config_hash();

    for (size_t i : selected) {
        StepSpec spec = spec_for(i, ctx);
        for (const auto& p : spec.inputs)
            if (!fs::exists(p)) {
                log << "error: missing prerequisite for step '" << kStepNames[i] << "': " << p
                    << "\n";
                return 1;
            }
        if (can_skip(ctx, kStepNames[i], spec, configHash)) {
            log << "step " << (i + 1) << " (" << kStepNames[i] << "): up to date, skipped\n";
            continue;
        }
        try {
            spec.run(ctx);
            record(ctx, kStepNames[i], spec, configHash);
            log << "step " << (i + 1) << " (" << kStepNames[i] << "): done\n";
        } catch (const std::exception& e) {
            log << "error: step '" << kStepNames[i] << "' failed: " << e.what() << "\n";
            return 2;
        }
    }
    return 0;
}

}  // namespace kbfuse
