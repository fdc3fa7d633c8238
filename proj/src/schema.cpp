#include "kbfuse/schema.hpp"

#include <algorithm>
#include <deque>
#include <regex>
#include <stdexcept>

#include "kbfuse/chunk.hpp"
#include "kbfuse/turtle.hpp"
#include "kbfuse/vocab.hpp"

namespace kbfuse {

namespace {

std::pair<std::string, std::string> normalize_pair(std::string a, std::string b) {
    if (b < a) std::swap(a, b);
    return {std::move(a), std::move(b)};
}

}  // namespace

std::vector<std::string> SchemaDefinition::parents_of(const std::string& cls) const {
    std::vector<std::string> out;
    for (const auto& [child, parent] : subclassEdges)
        if (child == cls) out.push_back(parent);
    return out;
}

std::vector<std::string> SchemaDefinition::children_of(const std::string& cls) const {
    std::vector<std::string> out;
    for (const auto& [child, parent] : subclassEdges)
        if (parent == cls) out.push_back(child);
    return out;
}

bool SchemaDefinition::is_subclass_of(const std::string& cls, const std::string& ancestor) const {
    if (cls == ancestor) return true;
    std::set<std::string> seen{cls};
    std::deque<std::string> queue{cls};
    while (!queue.empty()) {
        std::string cur = queue.front();
        queue.pop_front();
        for (const auto& p : parents_of(cur)) {
            if (p == ancestor) return true;
            if (seen.insert(p).second) queue.push_back(p);
        }
    }
    return false;
}

bool SchemaDefinition::are_disjoint(const std::string& a, const std::string& b) const {
    return disjointPairs.count(normalize_pair(a, b)) > 0;
}

const ClassMapping* SchemaDefinition::mapping_of(const std::string& upperClass) const {
    for (const auto& m : classMappings)
        if (m.upperClass == upperClass) return &m;
    return nullptr;
}

std::map<std::string, std::string> SchemaDefinition::source_to_upper() const {
    std::map<std::string, std::string> out;
    for (const auto& m : classMappings)
        for (const auto& src : m.sourceClasses) out[src] = m.upperClass;
    return out;
}

SchemaDefinition load_schema_from_statements(const std::vector<Statement>& statements) {
    using namespace vocab;
    SchemaDefinition schema;

    // Shape nodes keyed by their serialized term (blank label or IRI).
    std::map<std::string, PropertyShape> shapeNodes;
    std::map<std::string, std::string> shapeOwner;  // shape node -> class
    std::vector<std::string> shapeOrder;

    for (const auto& s : statements) {
        const std::string& pred = s.predicate.value;
        if (pred == RDFS_SUBCLASSOF && s.subject.is_iri() && s.object.is_iri()) {
            schema.subclassEdges.emplace(s.subject.value, s.object.value);
            schema.upperClasses.insert(s.subject.value);
            schema.upperClasses.insert(s.object.value);
        } else if (pred == OWL_DISJOINTWITH) {
            schema.disjointPairs.insert(normalize_pair(s.subject.value, s.object.value));
        } else if (pred == SH_PROPERTY) {
            std::string key = to_turtle(s.object);
            if (!shapeNodes.count(key)) shapeOrder.push_back(key);
            shapeOwner[key] = s.subject.value;
            shapeNodes[key].onClass = s.subject.value;
        } else if (pred == KBF_BLACKLIST) {
            schema.classBlacklist.insert(s.object.value);
        } else if (pred == KBF_GENERIC_CLASS) {
            schema.genericInstanceClasses.insert(s.object.value);
        } else if (pred == KBF_LABEL_TARGET) {
            schema.labelMap[s.subject.value] = s.object.value;
        }
    }

    // Mappings and shape attributes need the node sets from the first pass.
    std::map<std::string, std::vector<std::string>> mappings;
    for (const auto& s : statements) {
        const std::string& pred = s.predicate.value;
        if (pred == KBF_FROM_CLASS) {
            mappings[s.subject.value].push_back(s.object.value);
            continue;
        }
        std::string key = to_turtle(s.subject);
        auto it = shapeNodes.find(key);
        if (it == shapeNodes.end()) continue;
        PropertyShape& shape = it->second;
        if (pred == SH_PATH) shape.path = s.object.value;
        else if (pred == SH_CLASS) shape.rangeClass = s.object.value;
        else if (pred == SH_DATATYPE) shape.datatype = s.object.value;
        else if (pred == SH_MAXCOUNT) shape.maxCount = std::stoi(s.object.value);
        else if (pred == SH_PATTERN) shape.pattern = s.object.value;
        else if (pred == KBF_FROM_PROPERTY) shape.sourceProperty = s.object.value;
        else if (pred == KBF_INVERSE) shape.inverseOfSource = (s.object.value == "true");
    }

    // Validation.
    std::set<std::string> sourcesSeen;
    for (auto& [upper, sources] : mappings) {
        std::sort(sources.begin(), sources.end());
        for (const auto& src : sources) {
            if (!sourcesSeen.insert(src).second)
                throw std::runtime_error("schema error: duplicate mapping for source class " + src);
        }
    }
    for (const auto& cls : schema.upperClasses) {
        ClassMapping m;
        m.upperClass = cls;
        auto it = mappings.find(cls);
        if (it != mappings.end()) m.sourceClasses = it->second;
        m.kind = m.sourceClasses.empty() ? MappingKind::OneToNone
                 : m.sourceClasses.size() == 1 ? MappingKind::OneToOne
                                               : MappingKind::OneToMany;
        schema.classMappings.push_back(std::move(m));
    }
    for (const auto& [upper, sources] : mappings) {
        if (!schema.upperClasses.count(upper))
            throw std::runtime_error("schema error: mapping on unknown class " + upper);
    }

    std::set<std::string> sourceProps;
    for (const auto& key : shapeOrder) {
        PropertyShape& shape = shapeNodes[key];
        if (shape.path.empty())
            throw std::runtime_error("schema error: shape without sh:path on " + shape.onClass);
        if (shape.rangeClass.empty() == shape.datatype.empty())
            throw std::runtime_error("schema error: shape " + shape.path +
                                     " must set exactly one of sh:class/sh:datatype");
        if (!schema.upperClasses.count(shape.onClass))
            throw std::runtime_error("schema error: shape on unknown class " + shape.onClass);
        if (!shape.rangeClass.empty() && !schema.upperClasses.count(shape.rangeClass))
            throw std::runtime_error("schema error: shape range references unknown class " +
                                     shape.rangeClass);
        if (!shape.pattern.empty()) {
            try {
                std::regex re(shape.pattern);
            } catch (const std::regex_error&) {
                throw std::runtime_error("schema error: pattern does not compile: " + shape.pattern);
            }
        }
        if (shape.maxCount && *shape.maxCount < 1)
            throw std::runtime_error("schema error: maxCount must be >= 1 on " + shape.path);
        if (!shape.sourceProperty.empty() && !sourceProps.insert(shape.sourceProperty).second)
            throw std::runtime_error("schema error: source property mapped twice: " +
                                     shape.sourceProperty);
        schema.shapes.push_back(shape);
    }

    for (const auto& [a, b] : schema.disjointPairs) {
        if (!schema.upperClasses.count(a) || !schema.upperClasses.count(b))
            throw std::runtime_error("schema error: disjointness references unknown class");
    }

    // Single root, acyclic (Kahn).
    std::vector<std::string> roots;
    for (const auto& cls : schema.upperClasses) {
        bool hasParent = false;
        for (const auto& [child, parent] : schema.subclassEdges)
            if (child == cls) { hasParent = true; break; }
        if (!hasParent) roots.push_back(cls);
    }
    if (roots.size() != 1)
        throw std::runtime_error("schema error: upper taxonomy must have exactly one root, found " +
                                 std::to_string(roots.size()));
    schema.rootClass = roots.front();

    {
        std::map<std::string, int> outDeg;  // edges child->parent, peel from parents down
        for (const auto& cls : schema.upperClasses) outDeg[cls] = 0;
        for (const auto& [child, parent] : schema.subclassEdges) outDeg[child]++;
        std::deque<std::string> queue;
        for (auto& [cls, deg] : outDeg)
            if (deg == 0) queue.push_back(cls);
        size_t visited = 0;
        while (!queue.empty()) {
            std::string cur = queue.front();
            queue.pop_front();
            ++visited;
            for (const auto& [child, parent] : schema.subclassEdges)
                if (parent == cur && --outDeg[child] == 0) queue.push_back(child);
        }
        if (visited != schema.upperClasses.size())
            throw std::runtime_error("schema error: cyclic upper taxonomy");
    }

    return schema;
}

SchemaDefinition load_schema(const std::string& turtleFile) {
    std::string content = read_file(turtleFile);
    ParseStats stats;
    auto statements = parse_turtle(content, default_prefixes(), &stats, "sch");
    if (stats.skipped > 0)
        throw std::runtime_error("schema error: " + std::to_string(stats.skipped) +
                                 " malformed statements in " + turtleFile);
    return load_schema_from_statements(statements);
}

SchemaDefinition prune_upper_taxonomy(const SchemaDefinition& schema) {
    std::set<std::string> keep{schema.rootClass};
    std::deque<std::string> queue;
    auto mark = [&](const std::string& cls) {
        if (keep.insert(cls).second) queue.push_back(cls);
    };
    for (const auto& shape : schema.shapes) {
        mark(shape.onClass);
        if (!shape.rangeClass.empty()) mark(shape.rangeClass);
    }
    // Everything on a path from a marked class up to the root.
    while (!queue.empty()) {
        std::string cur = queue.front();
        queue.pop_front();
        for (const auto& p : schema.parents_of(cur)) mark(p);
    }

    SchemaDefinition out;
    out.rootClass = schema.rootClass;
    out.upperClasses = keep;
    for (const auto& e : schema.subclassEdges)
        if (keep.count(e.first) && keep.count(e.second)) out.subclassEdges.insert(e);
    for (const auto& d : schema.disjointPairs)
        if (keep.count(d.first) && keep.count(d.second)) out.disjointPairs.insert(d);
    out.shapes = schema.shapes;
    for (const auto& m : schema.classMappings)
        if (keep.count(m.upperClass)) out.classMappings.push_back(m);
    out.classBlacklist = schema.classBlacklist;
    for (const auto& g : schema.genericInstanceClasses)
        if (keep.count(g)) out.genericInstanceClasses.insert(g);
    out.labelMap = schema.labelMap;
    return out;
}

const PropertyShape* property_for(const std::string& cls, const std::string& predicate,
                                  const SchemaDefinition& schema) {
    if (!schema.upperClasses.count(cls))
        throw std::runtime_error("property_for: unknown class " + cls);
    // BFS upward; nearest declaring superclass wins, ties broken by IRI order.
    std::set<std::string> seen{cls};
    std::vector<std::string> level{cls};
    while (!level.empty()) {
        std::sort(level.begin(), level.end());
        for (const auto& c : level) {
            for (const auto& shape : schema.shapes)
                if (shape.onClass == c && shape.path == predicate) return &shape;
        }
        std::vector<std::string> next;
        for (const auto& c : level)
            for (const auto& p : schema.parents_of(c))
                if (seen.insert(p).second) next.push_back(p);
        level = std::move(next);
    }
    return nullptr;
}

const PropertyShape* shape_for_source_property(const std::string& sourceProperty,
                                               const SchemaDefinition& schema) {
    for (const auto& shape : schema.shapes)
        if (shape.sourceProperty == sourceProperty) return &shape;
    return nullptr;
}

std::vector<Statement> schema_to_statements(const SchemaDefinition& schema) {
    using namespace vocab;
    std::vector<Statement> out;
    for (const auto& [child, parent] : schema.subclassEdges)
        out.push_back({Term::iri(child), Term::iri(RDFS_SUBCLASSOF), Term::iri(parent)});
    for (const auto& [a, b] : schema.disjointPairs)
        out.push_back({Term::iri(a), Term::iri(OWL_DISJOINTWITH), Term::iri(b)});
    size_t n = 0;
    for (const auto& shape : schema.shapes) {
        Term node = Term::blank("shape" + std::to_string(n++));
        out.push_back({Term::iri(shape.onClass), Term::iri(SH_PROPERTY), node});
        out.push_back({node, Term::iri(SH_PATH), Term::iri(shape.path)});
        if (!shape.rangeClass.empty())
            out.push_back({node, Term::iri(SH_CLASS), Term::iri(shape.rangeClass)});
        if (!shape.datatype.empty())
            out.push_back({node, Term::iri(SH_DATATYPE), Term::iri(shape.datatype)});
        if (shape.maxCount)
            out.push_back({node, Term::iri(SH_MAXCOUNT),
                           Term::literal(std::to_string(*shape.maxCount), XSD_INTEGER)});
        if (!shape.pattern.empty())
            out.push_back({node, Term::iri(SH_PATTERN), Term::literal(shape.pattern)});
        if (!shape.sourceProperty.empty())
            out.push_back({node, Term::iri(KBF_FROM_PROPERTY), Term::iri(shape.sourceProperty)});
        if (shape.inverseOfSource)
            out.push_back({node, Term::iri(KBF_INVERSE), Term::literal("true", XSD_BOOLEAN)});
    }
    for (const auto& m : schema.classMappings)
        for (const auto& src : m.sourceClasses)
            out.push_back({Term::iri(m.upperClass), Term::iri(KBF_FROM_CLASS), Term::iri(src)});
    for (const auto& b : schema.classBlacklist)
        out.push_back({Term::iri(KBF_CONFIG), Term::iri(KBF_BLACKLIST), Term::iri(b)});
    for (const auto& g : schema.genericInstanceClasses)
        out.push_back({Term::iri(KBF_CONFIG), Term::iri(KBF_GENERIC_CLASS), Term::iri(g)});
    for (const auto& [src, dst] : schema.labelMap)
        out.push_back({Term::iri(src), Term::iri(KBF_LABEL_TARGET), Term::iri(dst)});
    return out;
}

}  // namespace kbfuse
