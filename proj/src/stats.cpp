#include "kbfuse/stats.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>

#include "kbfuse/facts.hpp"
#include "kbfuse/tsv.hpp"
#include "kbfuse/vocab.hpp"

namespace kbfuse {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string local_name(const std::string& iri) {
    size_t cut = iri.find_last_of("/#");
    return cut == std::string::npos ? iri : iri.substr(cut + 1);
}

bool is_bare_qid(const std::string& local) {
    if (local.size() < 2 || local[0] != 'Q') return false;
    for (size_t i = 1; i < local.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(local[i]))) return false;
    return true;
}

}  // namespace

std::string QualityReport::to_text() const {
    std::string out;
    out += "consistency: " + std::string(consistency ? "yes" : "no") + "\n";
    out += "topLevelClasses: " + std::to_string(topLevelClassCount) + "\n";
    out += "avgPathsToRoot: " + fmt(avgPathsToRoot) + "\n";
    out += "disjointnessAxioms: " + std::to_string(disjointnessAxiomCount) + "\n";
    out += "taxonomicLoops: " + std::to_string(taxonomicLoops) + "\n";
    out += "redundantTaxonomicLinks: " + std::to_string(redundantTaxonomicLinks) + "\n";
    out += "redundantRelations: " + std::to_string(redundantRelations) + "\n";
    out += "classesWithoutInstances: " + std::to_string(classesWithoutInstances) + "\n";
    out += "humanReadableNamePct: " + fmt(humanReadableNamePct) + "\n";
    out += "avgClassesPerInstance: " + fmt(avgClassesPerInstance) + "\n";
    out += "avgFactsPerInstance: " + fmt(avgFactsPerInstance) + "\n";
    out += "individuals: " + std::to_string(individualCount) + "\n";
    out += "classes: " + std::to_string(classCount) + "\n";
    out += "facts: " + std::to_string(factCount) + "\n";
    for (const auto& p : problems) out += "problem: " + p + "\n";
    return out;
}

PathCounter::PathCounter(const TaxonomyGraph& taxonomy, const std::string& rootIri)
    : taxonomy_(taxonomy),
      root_(taxonomy.id_of(rootIri)),
      memo_(taxonomy.size(), -1) {}

uint64_t PathCounter::compute(int id) const {
    if (memo_[id] >= 0) return static_cast<uint64_t>(memo_[id]);
    uint64_t total = 0;
    if (id == root_) {
        total = 1;
    } else {
        for (int p : taxonomy_.node(id).parents) total += compute(p);
    }
    memo_[id] = static_cast<int64_t>(total);
    return total;
}

uint64_t PathCounter::paths_from_class(int classId) const {
    if (classId < 0 || root_ < 0) return 0;
    return compute(classId);
}

uint64_t PathCounter::paths_to_root(const std::set<std::string>& directClasses) const {
    uint64_t total = 0;
    for (const auto& cls : directClasses) total += paths_from_class(taxonomy_.id_of(cls));
    return total;
}

uint64_t count_redundant_links(const TaxonomyGraph& taxonomy) {
    uint64_t redundant = 0;
    for (const auto& node : taxonomy.nodes()) {
        int a = taxonomy.id_of(node.iri);
        for (int c : node.parents) {
            bool alt = false;
            for (int p : node.parents) {
                if (p == c) continue;
                if (taxonomy.reaches_up(p, c)) {
                    alt = true;
                    break;
                }
            }
            if (alt) ++redundant;
        }
        (void)a;
    }
    return redundant;
}

uint64_t count_taxonomic_loops(const TaxonomyGraph& taxonomy) {
    uint64_t loops = 0;
    for (size_t id = 0; id < taxonomy.size(); ++id)
        for (int p : taxonomy.node(static_cast<int>(id)).parents)
            if (p != static_cast<int>(id) && taxonomy.reaches_up(p, static_cast<int>(id)))
                ++loops;
    return loops;
}

QualityReport build_report(const std::vector<Statement>& facts, const EntityRegistry& registry,
                           const TaxonomyGraph& taxonomy, const SchemaDefinition& schema,
                           const std::map<std::string, std::string>& renameMapping) {
    QualityReport r;
    r.classCount = taxonomy.size();
    r.factCount = facts.size();
    r.disjointnessAxiomCount = schema.disjointPairs.size();
    r.taxonomicLoops = count_taxonomic_loops(taxonomy);
    r.redundantTaxonomicLinks = count_redundant_links(taxonomy);

    if (int root = taxonomy.id_of(schema.rootClass); root >= 0)
        r.topLevelClassCount = taxonomy.node(root).children.size();

    {
        std::map<std::string, std::vector<const PropertyShape*>> bySource;
        for (const auto& s : schema.shapes)
            if (!s.sourceProperty.empty()) bySource[s.sourceProperty].push_back(&s);
        for (const auto& [src, shapes] : bySource)
            for (size_t i = 0; i < shapes.size(); ++i)
                for (size_t j = i + 1; j < shapes.size(); ++j)
                    if (shapes[i]->inverseOfSource != shapes[j]->inverseOfSource)
                        ++r.redundantRelations;
    }

    // Upward-closure memo shared by several metrics.
    std::map<int, std::set<int>> closure;  // class id -> {id} + ancestors
    auto close = [&](int id) -> const std::set<int>& {
        auto it = closure.find(id);
        if (it != closure.end()) return it->second;
        std::set<int> s = taxonomy.ancestors(id);
        s.insert(id);
        return closure.emplace(id, std::move(s)).first->second;
    };

    std::vector<std::string> individuals;
    for (const auto& [entity, classes] : registry.directClasses)
        if (!classes.empty() && !registry.isClass.count(entity)) individuals.push_back(entity);
    r.individualCount = individuals.size();

    PathCounter counter(taxonomy, schema.rootClass);
    uint64_t pathSum = 0, classSum = 0, readable = 0;
    std::set<int> instantiated;
    auto add_problem = [&](const std::string& p) {
        if (r.problems.size() < 10) r.problems.push_back(p);
    };
    bool ok = true;

    std::vector<std::pair<int, int>> disjointIds;
    for (const auto& [a, b] : taxonomy.disjointPairs) {
        int ia = taxonomy.id_of(a), ib = taxonomy.id_of(b);
        if (ia >= 0 && ib >= 0) disjointIds.emplace_back(ia, ib);
    }

    for (const auto& entity : individuals) {
        const auto& classes = registry.directClasses.at(entity);
        pathSum += counter.paths_to_root(classes);
        std::set<int> all;
        for (const auto& cls : classes) {
            int id = taxonomy.id_of(cls);
            if (id < 0) continue;
            const auto& up = close(id);
            all.insert(up.begin(), up.end());
        }
        classSum += all.size();
        instantiated.insert(all.begin(), all.end());
        for (const auto& [ia, ib] : disjointIds)
            if (all.count(ia) && all.count(ib)) {
                ok = false;
                add_problem("entity under disjoint classes: " + entity);
            }
        std::string finalIri = entity;
        if (auto m = renameMapping.find(entity); m != renameMapping.end()) finalIri = m->second;
        if (!is_bare_qid(local_name(finalIri))) ++readable;
    }
    r.avgPathsToRoot =
        individuals.empty() ? 0.0 : static_cast<double>(pathSum) / individuals.size();
    r.avgClassesPerInstance =
        individuals.empty() ? 0.0 : static_cast<double>(classSum) / individuals.size();
    r.avgFactsPerInstance =
        individuals.empty() ? 0.0 : static_cast<double>(facts.size()) / individuals.size();
    r.humanReadableNamePct =
        individuals.empty() ? 100.0 : 100.0 * static_cast<double>(readable) / individuals.size();

    for (const auto& node : taxonomy.nodes())
        if (node.origin == NodeOrigin::Glued && !instantiated.count(taxonomy.id_of(node.iri)))
            ++r.classesWithoutInstances;

    // Class-level disjointness over the taxonomy itself.
    for (size_t id = 0; id < taxonomy.size(); ++id) {
        const auto& up = close(static_cast<int>(id));
        for (const auto& [ia, ib] : disjointIds)
            if (up.count(ia) && up.count(ib)) {
                ok = false;
                add_problem("class under disjoint classes: " +
                            taxonomy.node(static_cast<int>(id)).iri);
            }
    }

    // SHACL revalidation over the final facts.
    std::map<std::string, std::vector<const PropertyShape*>> byPath;
    for (const auto& s : schema.shapes) byPath[s.path].push_back(&s);
    std::map<std::pair<std::string, std::string>, uint64_t> groupCounts;
    for (const auto& f : facts) {
        auto pathIt = byPath.find(f.predicate.value);
        if (pathIt == byPath.end()) {
            ok = false;
            add_problem("fact with undeclared predicate: " + f.predicate.value);
            continue;
        }
        auto clsIt = registry.directClasses.find(f.subject.value);
        const PropertyShape* shape = nullptr;
        if (clsIt != registry.directClasses.end())
            for (const PropertyShape* s : pathIt->second)
                if (check_subject(clsIt->second, *s, taxonomy)) {
                    shape = s;
                    break;
                }
        if (!shape) {
            ok = false;
            add_problem("fact subject fails domain check: " + f.subject.value);
            continue;
        }
        if (!shape->datatype.empty()) {
            Term copy = f.object;
            if (!check_literal(copy, *shape)) {
                ok = false;
                add_problem("literal fails shape: " + to_turtle(f.object));
            }
        } else {
            if (registry.isClass.count(f.object.value) ||
                !registry.is_instance_of(f.object.value, shape->rangeClass, taxonomy)) {
                ok = false;
                add_problem("object fails range check: " + to_turtle(f.object));
            }
        }
        if (shape->maxCount) {
            uint64_t& n = groupCounts[{to_turtle(f.subject), f.predicate.value}];
            if (++n > static_cast<uint64_t>(*shape->maxCount)) {
                ok = false;
                add_problem("cardinality exceeded for " + to_turtle(f.subject) + " " +
                            f.predicate.value);
            }
        }
    }

    if (r.taxonomicLoops || r.redundantTaxonomicLinks) ok = false;
    r.consistency = ok;
    return r;
}

void emit_visualization(const TaxonomyGraph& taxonomy, uint64_t threshold,
                        const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    std::set<std::string> included;
    for (const auto& node : taxonomy.nodes())
        if (node.origin == NodeOrigin::Upper || node.directInstances >= threshold)
            included.insert(node.iri);
    out << "digraph taxonomy {\n  rankdir=BT;\n";
    for (const auto& iri : included) out << "  \"" << local_name(iri) << "\";\n";
    for (const auto& [child, parent] : taxonomy.edges_sorted())
        if (included.count(child) && included.count(parent))
            out << "  \"" << local_name(child) << "\" -> \"" << local_name(parent) << "\";\n";
    out << "}\n";
}

void write_entity_sample(const std::vector<Statement>& facts, size_t k, uint64_t seed,
                         const std::string& path) {
    std::vector<std::string> subjects;
    std::set<std::string> seen;
    std::map<std::string, std::vector<const Statement*>> bySubject;
    for (const auto& f : facts) {
        if (seen.insert(f.subject.value).second) subjects.push_back(f.subject.value);
        bySubject[f.subject.value].push_back(&f);
    }
    std::mt19937_64 rng(seed);
    std::shuffle(subjects.begin(), subjects.end(), rng);
    if (subjects.size() > k) subjects.resize(k);

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    for (const auto& subj : subjects) {
        out << "# " << subj << '\n';
        for (const Statement* f : bySubject[subj]) out << statement_to_tsv_line(*f) << '\n';
    }
}

}  // namespace kbfuse
