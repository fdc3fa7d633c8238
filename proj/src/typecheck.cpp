#include "kbfuse/typecheck.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "kbfuse/facts.hpp"
#include "kbfuse/vocab.hpp"

namespace kbfuse {

bool EntityRegistry::is_instance_of(const std::string& entity, const std::string& cls,
                                    const TaxonomyGraph& taxonomy) const {
    auto it = directClasses.find(entity);
    if (it == directClasses.end()) return false;
    for (const auto& c : it->second)
        if (taxonomy.is_subclass_of(c, cls)) return true;
    return false;
}

EntityRegistry build_registry(const std::vector<Statement>& types, const TaxonomyGraph& taxonomy,
                              const std::set<std::string>& products) {
    EntityRegistry r;
    for (const auto& s : types) {
        if (!s.subject.is_iri() || !s.object.is_iri()) continue;
        r.directClasses[s.subject.value].insert(s.object.value);
    }
    for (const auto& n : taxonomy.nodes()) r.isClass.insert(n.iri);
    r.isProduct = products;
    return r;
}

std::string make_generic(const std::string& classIri, EntityRegistry& registry,
                         const TaxonomyGraph& taxonomy) {
    auto it = registry.generics.find(classIri);
    if (it != registry.generics.end()) return it->second;
    if (!taxonomy.has(classIri))
        throw std::runtime_error("generic instance requested for unretained class: " + classIri);
    size_t cut = classIri.find_last_of("/#");
    std::string local = cut == std::string::npos ? classIri : classIri.substr(cut + 1);
    std::string iri = vocab::KB_GENERIC + local;
    registry.generics.emplace(classIri, iri);
    registry.directClasses[iri] = {classIri};
    return iri;
}

ObjectVerdict check_object(Statement& fact, const PropertyShape& shape, EntityRegistry& registry,
                           const TaxonomyGraph& taxonomy, const SchemaDefinition& schema,
                           Tally& tally) {
    const std::string& obj = fact.object.value;
    if (registry.isClass.count(obj)) {
        bool inCategory = false;
        for (const auto& cat : schema.genericInstanceClasses)
            if (taxonomy.is_subclass_of(obj, cat)) {
                inCategory = true;
                break;
            }
        if (inCategory && taxonomy.is_subclass_of(obj, shape.rangeClass)) {
            fact.object = Term::iri(make_generic(obj, registry, taxonomy));
            return ObjectVerdict::Rewrite;
        }
        tally.add("object_is_class");
        return ObjectVerdict::Reject;
    }
    auto it = registry.directClasses.find(obj);
    if (it == registry.directClasses.end() || it->second.empty()) {
        tally.add("object_unknown");
        return ObjectVerdict::Reject;
    }
    for (const auto& cls : it->second)
        if (taxonomy.is_subclass_of(cls, shape.rangeClass)) return ObjectVerdict::Accept;
    tally.add("object_range_violation");
    return ObjectVerdict::Reject;
}

void demote_products(EntityRegistry& registry, TaxonomyGraph& taxonomy, Tally* tally) {
    std::set<std::string> demoted;
    for (const auto& p : registry.isProduct)
        if (registry.isClass.count(p) && taxonomy.has(p)) demoted.insert(p);
    if (demoted.empty()) return;

    // Nearest non-demoted ancestors, computed before any removal so chains
    // of demoted product lines collapse onto the surviving level.
    std::map<std::string, std::set<std::string>> replacement;
    for (const auto& d : demoted) {
        std::set<std::string>& out = replacement[d];
        std::set<int> seen;
        std::vector<int> frontier{taxonomy.id_of(d)};
        while (!frontier.empty()) {
            int id = frontier.back();
            frontier.pop_back();
            for (int p : taxonomy.node(id).parents) {
                if (!seen.insert(p).second) continue;
                const auto& iri = taxonomy.node(p).iri;
                if (demoted.count(iri)) frontier.push_back(p);
                else out.insert(iri);
            }
        }
    }

    auto substitute = [&](std::set<std::string>& classes) {
        std::set<std::string> out;
        for (const auto& c : classes) {
            if (auto it = replacement.find(c); it != replacement.end())
                out.insert(it->second.begin(), it->second.end());
            else out.insert(c);
        }
        classes = std::move(out);
    };
    for (auto& [entity, classes] : registry.directClasses) substitute(classes);
    for (const auto& d : demoted) {
        registry.isClass.erase(d);
        registry.directClasses[d] = replacement[d];
        if (tally) tally->add("products_demoted");
    }

    std::set<int> removedIds;
    for (const auto& d : demoted) removedIds.insert(taxonomy.id_of(d));
    taxonomy.remove_nodes(removedIds);
}

void resolve_instance_disjointness(EntityRegistry& registry, const TaxonomyGraph& taxonomy,
                                   Tally* tally) {
    if (taxonomy.disjointPairs.empty()) return;
    auto conflicts = [&](const std::string& a, const std::string& b) {
        for (const auto& [x, y] : taxonomy.disjointPairs) {
            if (taxonomy.is_subclass_of(a, x) && taxonomy.is_subclass_of(b, y)) return true;
            if (taxonomy.is_subclass_of(a, y) && taxonomy.is_subclass_of(b, x)) return true;
        }
        return false;
    };
    for (auto& [entity, classes] : registry.directClasses) {
        if (classes.size() < 2) continue;
        std::set<std::string> kept;
        for (const auto& cls : classes) {  // set order = lexicographic
            bool bad = false;
            for (const auto& k : kept)
                if (conflicts(cls, k)) {
                    bad = true;
                    break;
                }
            if (bad) {
                if (tally) tally->add("type_dropped_disjoint");
            } else {
                kept.insert(cls);
            }
        }
        classes = std::move(kept);
    }
}

TypecheckResult run_typecheck(const std::vector<Statement>& facts,
                              const std::vector<Statement>& labels,
                              const std::vector<Statement>& types,
                              const std::set<std::string>& products, TaxonomyGraph& taxonomy,
                              const SchemaDefinition& schema) {
    TypecheckResult r;
    r.registry = build_registry(types, taxonomy, products);
    demote_products(r.registry, taxonomy, &r.tally);
    resolve_instance_disjointness(r.registry, taxonomy, &r.tally);

    std::map<std::string, std::vector<const PropertyShape*>> byPath;
    for (const auto& s : schema.shapes) byPath[s.path].push_back(&s);

    struct Checked {
        Statement fact;
        const PropertyShape* shape;
    };
    std::vector<Checked> accepted;
    for (const auto& input : facts) {
        Statement fact = input;
        auto pathIt = byPath.find(fact.predicate.value);
        if (pathIt == byPath.end() || !fact.subject.is_iri()) {
            r.tally.add("predicate_unknown");
            continue;
        }
        const std::string& subj = fact.subject.value;
        if (r.registry.isClass.count(subj)) {
            r.tally.add("subject_is_class");
            continue;
        }
        auto classIt = r.registry.directClasses.find(subj);
        if (classIt == r.registry.directClasses.end() || classIt->second.empty()) {
            r.tally.add("subject_unretained");
            continue;
        }
        const PropertyShape* shape = nullptr;
        for (const PropertyShape* s : pathIt->second)
            if (check_subject(classIt->second, *s, taxonomy)) {
                shape = s;
                break;
            }
        if (!shape) {
            r.tally.add("subject_type_mismatch");
            continue;
        }
        if (!shape->datatype.empty()) {
            if (!fact.object.is_literal() || !check_literal(fact.object, *shape)) {
                r.tally.add("literal_revalidation_failed");
                continue;
            }
        } else {
            if (!fact.object.is_iri()) {
                r.tally.add("object_not_iri");
                continue;
            }
            ObjectVerdict v = check_object(fact, *shape, r.registry, taxonomy, schema, r.tally);
            if (v == ObjectVerdict::Reject) continue;
            if (v == ObjectVerdict::Rewrite) r.tally.add("object_rewritten_generic");
        }
        accepted.push_back({std::move(fact), shape});
    }

    // Global cardinality pass over the merged fact set.
    std::vector<char> keep(accepted.size(), 1);
    std::map<std::pair<std::string, std::string>, std::vector<size_t>> groups;
    for (size_t i = 0; i < accepted.size(); ++i)
        groups[{to_turtle(accepted[i].fact.subject), accepted[i].fact.predicate.value}]
            .push_back(i);
    for (const auto& [key, idx] : groups) {
        const PropertyShape* shape = accepted[idx.front()].shape;
        if (!shape->maxCount || idx.size() <= static_cast<size_t>(*shape->maxCount)) continue;
        std::vector<std::string> keys;
        for (size_t i : idx) keys.push_back(to_turtle(accepted[i].fact.object));
        std::sort(keys.begin(), keys.end());
        std::multiset<std::string> allow(keys.begin(),
                                         keys.begin() + static_cast<long>(*shape->maxCount));
        for (size_t i : idx) {
            auto k = to_turtle(accepted[i].fact.object);
            auto it = allow.find(k);
            if (it != allow.end()) allow.erase(it);
            else {
                keep[i] = 0;
                r.tally.add("cardinality_dropped");
            }
        }
    }
    for (size_t i = 0; i < accepted.size(); ++i)
        if (keep[i]) r.facts.push_back(std::move(accepted[i].fact));

    for (const auto& l : labels) {
        const std::string& subj = l.subject.value;
        auto it = r.registry.directClasses.find(subj);
        bool retained = (it != r.registry.directClasses.end() && !it->second.empty()) ||
                        r.registry.isClass.count(subj);
        if (retained) r.labels.push_back(l);
        else r.tally.add("label_dropped_subject_unretained");
    }

    for (const auto& [entity, classes] : r.registry.directClasses)
        for (const auto& cls : classes)
            r.types.push_back({Term::iri(entity), Term::iri(vocab::RDF_TYPE), Term::iri(cls)});

    return r;
}

}  // namespace kbfuse
