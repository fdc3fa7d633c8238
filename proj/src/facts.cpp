#include "kbfuse/facts.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>
#include <stdexcept>

#include "kbfuse/tsv.hpp"
#include "kbfuse/vocab.hpp"

namespace kbfuse {

FactsConfig FactsConfig::wikidata() {
    using namespace vocab;
    FactsConfig c;
    c.entityNamespace = WD + "Q";
    c.truthyPrefix = WDT;
    c.statementPrefix = WD_P;
    c.statementValuePrefix = WD_PS;
    c.qualifierPrefix = WD_PQ;
    return c;
}

std::optional<std::string> resolve_class(const std::string& sourceClass,
                                         const std::map<std::string, std::string>& sourceToUpper,
                                         const TaxonomyGraph& taxonomy) {
    auto it = sourceToUpper.find(sourceClass);
    if (it != sourceToUpper.end()) return it->second;
    if (taxonomy.has(sourceClass)) return sourceClass;
    return std::nullopt;
}

std::optional<MappedPredicate> map_predicate(const std::string& sourcePredicate,
                                             const SchemaDefinition& schema) {
    const PropertyShape* shape = shape_for_source_property(sourcePredicate, schema);
    if (!shape) return std::nullopt;
    return MappedPredicate{shape, shape->inverseOfSource};
}

bool check_subject(const std::set<std::string>& subjectClasses, const PropertyShape& shape,
                   const TaxonomyGraph& taxonomy) {
    for (const auto& cls : subjectClasses)
        if (taxonomy.is_subclass_of(cls, shape.onClass)) return true;
    return false;
}

namespace {

const std::regex kDateRe(R"(\d{4,}-\d{2}-\d{2}Z?)");
const std::regex kDateTimeRe(R"(\d{4,}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}(?:Z|[+-]\d{2}:\d{2})?)");
const std::regex kIntegerRe(R"([+-]?\d+)");
const std::regex kNumberRe(R"([+-]?\d+(\.\d+)?([eE][+-]?\d+)?)");

// Canonical date lexical: leading '+' stripped, zero time-of-day truncated
// to the date. Returns (lexical, datatype) or nothing when ill-formed.
std::optional<std::pair<std::string, std::string>> normalize_date(std::string lex) {
    if (!lex.empty() && lex.front() == '+') lex.erase(lex.begin());
    if (std::regex_match(lex, kDateRe)) {
        if (lex.back() == 'Z') lex.pop_back();
        return std::make_pair(lex, vocab::XSD_DATE);
    }
    if (std::regex_match(lex, kDateTimeRe)) {
        size_t t = lex.find('T');
        std::string time = lex.substr(t + 1);
        if (time.rfind("00:00:00", 0) == 0)
            return std::make_pair(lex.substr(0, t), vocab::XSD_DATE);
        return std::make_pair(lex, vocab::XSD_DATETIME);
    }
    return std::nullopt;
}

bool datatype_acceptable(Term& object, const std::string& target) {
    using namespace vocab;
    const std::string& dt = object.datatype;
    if (target == XSD_STRING)
        return dt.empty() || dt == XSD_STRING || !object.language.empty() || dt == RDF_LANGSTRING;
    if (target == XSD_ANYURI)
        return object.language.empty() && (dt.empty() || dt == XSD_STRING || dt == XSD_ANYURI);
    if (target == XSD_INTEGER)
        return dt == XSD_INTEGER && std::regex_match(object.value, kIntegerRe);
    if (target == XSD_DECIMAL || target == XSD_DOUBLE)
        return (dt == XSD_INTEGER || dt == XSD_DECIMAL || dt == XSD_DOUBLE) &&
               std::regex_match(object.value, kNumberRe);
    if (target == XSD_DATE) {
        if (dt != XSD_DATE && dt != XSD_DATETIME) return false;
        auto norm = normalize_date(object.value);
        if (!norm || norm->second != XSD_DATE) return false;
        object.value = norm->first;
        object.datatype = XSD_DATE;
        return true;
    }
    if (target == XSD_DATETIME) {
        if (dt != XSD_DATE && dt != XSD_DATETIME) return false;
        auto norm = normalize_date(object.value);
        if (!norm) return false;
        object.value = norm->first;
        object.datatype = norm->second;
        return true;
    }
    return dt == target;
}

}  // namespace

bool check_literal(Term& object, const PropertyShape& shape) {
    if (!object.is_literal()) return false;
    if (!datatype_acceptable(object, shape.datatype)) return false;
    if (!shape.pattern.empty()) {
        std::regex re(shape.pattern);
        if (!std::regex_match(object.value, re)) return false;
    }
    return true;
}

std::vector<Statement> enforce_max_count(std::vector<Statement> facts,
                                         const PropertyShape& shape, Tally* tally) {
    if (!shape.maxCount || facts.size() <= static_cast<size_t>(*shape.maxCount)) return facts;
    // Keep the maxCount lexicographically smallest objects.
    std::vector<std::string> keys;
    for (const auto& f : facts) keys.push_back(to_turtle(f.object));
    std::sort(keys.begin(), keys.end());
    keys.resize(static_cast<size_t>(*shape.maxCount));
    std::vector<Statement> kept;
    for (auto& f : facts) {
        auto key = to_turtle(f.object);
        auto it = std::find(keys.begin(), keys.end(), key);
        if (it != keys.end()) {
            keys.erase(it);  // multiset semantics for duplicate objects
            kept.push_back(std::move(f));
        } else if (tally) {
            tally->add("cardinality_dropped");
        }
    }
    return kept;
}

TimeAnnotation extract_time(const std::vector<std::pair<std::string, Term>>& qualifiers,
                            const FactsConfig& config, Tally* tally) {
    TimeAnnotation out;
    auto slot = [&](const std::string& pid) -> std::string* {
        if (pid == config.startQualifierPid) return &out.start;
        if (pid == config.endQualifierPid) return &out.end;
        if (pid == config.pointQualifierPid) return &out.point;
        return nullptr;
    };
    for (const auto& [pid, value] : qualifiers) {
        std::string* field = slot(pid);
        if (!field || !field->empty()) continue;
        if (!value.is_literal()) {
            if (tally) tally->add("qualifier_bad_date");
            continue;
        }
        auto norm = normalize_date(value.value);
        if (!norm) {
            if (tally) tally->add("qualifier_bad_date");
            continue;
        }
        *field = norm->first;
    }
    return out;
}

namespace {

std::string percent_decode(const std::string& s) {
    std::string out;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '%' && i + 2 < s.size()) {
            auto hex = [](char c) -> int {
                if (c >= '0' && c <= '9') return c - '0';
                if (c >= 'a' && c <= 'f') return c - 'a' + 10;
                if (c >= 'A' && c <= 'F') return c - 'A' + 10;
                return -1;
            };
            int hi = hex(s[i + 1]), lo = hex(s[i + 2]);
            if (hi >= 0 && lo >= 0) {
                out += static_cast<char>(hi * 16 + lo);
                i += 2;
                continue;
            }
        }
        out += s[i];
    }
    return out;
}

struct StmtNode {
    std::string pid;  // from the item -> node link
    std::string psPid;
    std::optional<Term> value;
    std::vector<std::pair<std::string, Term>> qualifiers;
};

struct EntityData {
    std::vector<std::pair<std::string, Term>> truthy;           // (pid, object)
    std::vector<std::pair<std::string, Term>> labelStatements;  // (source pred, literal)
    std::vector<std::string> stmtNodes;
    std::set<std::string> directSourceClasses;
};

}  // namespace

FactExtraction extract_facts(const std::vector<Statement>& statements,
                             const SchemaDefinition& schema, const TaxonomyGraph& taxonomy,
                             const FactsConfig& config) {
    using namespace vocab;
    FactExtraction out;
    const auto sourceToUpper = schema.source_to_upper();

    std::vector<std::string> entityOrder;
    std::map<std::string, EntityData> entities;
    std::map<std::string, StmtNode> stmtNodes;
    std::map<std::string, std::string> titleOf;

    auto entity_of = [&](const std::string& iri) -> EntityData& {
        auto [it, inserted] = entities.try_emplace(iri);
        if (inserted) entityOrder.push_back(iri);
        return it->second;
    };

    for (const auto& s : statements) {
        const std::string& subj = s.subject.value;
        const std::string& pred = s.predicate.value;

        if (s.subject.is_iri() && subj.rfind(ENWIKI, 0) == 0 && pred == SCHEMA_ABOUT &&
            s.object.is_iri()) {
            titleOf[s.object.value] = percent_decode(subj.substr(ENWIKI.size()));
            continue;
        }

        // Statement-node subjects carry the value and the qualifiers.
        std::string subjKey = to_turtle(s.subject);
        if (auto it = stmtNodes.find(subjKey); it != stmtNodes.end()) {
            if (pred.rfind(config.statementValuePrefix, 0) == 0) {
                it->second.psPid = pred.substr(config.statementValuePrefix.size());
                it->second.value = s.object;
            } else if (pred.rfind(config.qualifierPrefix, 0) == 0) {
                it->second.qualifiers.emplace_back(pred.substr(config.qualifierPrefix.size()),
                                                   s.object);
            }
            continue;
        }

        if (!s.subject.is_iri() || subj.rfind(config.entityNamespace, 0) != 0) continue;
        EntityData& e = entity_of(subj);

        if (pred.rfind(config.truthyPrefix, 0) == 0) {
            std::string pid = pred.substr(config.truthyPrefix.size());
            if (pid == config.subclassPid) continue;  // taxonomy step's material
            if (pid == config.instancePid) {
                if (s.object.is_iri()) e.directSourceClasses.insert(s.object.value);
                continue;
            }
            if (pid == config.productPid) out.products.insert(subj);
            e.truthy.emplace_back(std::move(pid), s.object);
        } else if (schema.labelMap.count(pred)) {
            if (s.object.is_literal()) e.labelStatements.emplace_back(pred, s.object);
        } else if (pred.rfind(config.statementValuePrefix, 0) == 0 ||
                   pred.rfind(config.qualifierPrefix, 0) == 0) {
            // Ordering safety: a value/qualifier line before the p: link
            // would be misread as an item property; dumps emit links first.
        } else if (pred.rfind(config.statementPrefix, 0) == 0) {
            std::string nodeKey = to_turtle(s.object);
            stmtNodes[nodeKey].pid = pred.substr(config.statementPrefix.size());
            e.stmtNodes.push_back(nodeKey);
        }
    }

    for (const auto& iri : entityOrder) {
        EntityData& e = entities[iri];
        const bool isClass = taxonomy.has(iri);

        std::set<std::string> resolvedClasses;
        for (const auto& src : e.directSourceClasses) {
            if (auto r = resolve_class(src, sourceToUpper, taxonomy)) resolvedClasses.insert(*r);
            else out.tally.add("type_class_unretained");
        }
        const bool retained = isClass || !resolvedClasses.empty();

        NameSource name;
        name.iri = iri;
        if (auto t = titleOf.find(iri); t != titleOf.end()) name.wikipediaTitle = t->second;
        for (const auto& [pred, literal] : e.labelStatements) {
            if (pred == RDFS_LABEL && !literal.language.empty())
                name.labels.emplace(literal.language, literal.value);
        }
        out.names.push_back(std::move(name));

        if (!retained) {
            if (!e.directSourceClasses.empty() || !e.truthy.empty())
                out.tally.add("entity_dropped_no_retained_class");
            out.tally.add("facts_dropped_subject_unretained", e.truthy.size());
            continue;
        }

        for (const auto& [pred, literal] : e.labelStatements)
            out.labels.push_back({Term::iri(iri), Term::iri(schema.labelMap.at(pred)), literal});

        if (!isClass) {
            for (const auto& cls : resolvedClasses)
                out.types.push_back({Term::iri(iri), Term::iri(RDF_TYPE), Term::iri(cls)});
        }

        for (const auto& [pid, object] : e.truthy) {
            auto mapped = map_predicate(config.truthyPrefix + pid, schema);
            if (!mapped) {
                out.tally.add("predicate_unmapped");
                continue;
            }
            const PropertyShape& shape = *mapped->shape;

            Term factSubject = Term::iri(iri);
            Term factObject = object;
            if (mapped->inverted) {
                if (!object.is_iri()) {
                    out.tally.add("inverse_object_not_iri");
                    continue;
                }
                factSubject = object;
                factObject = Term::iri(iri);
            }

            if (!shape.datatype.empty()) {
                if (!factObject.is_literal()) {
                    out.tally.add("object_iri_where_literal_expected");
                    continue;
                }
                Term checked = factObject;
                if (!datatype_acceptable(checked, shape.datatype)) {
                    out.tally.add("literal_datatype_violation");
                    continue;
                }
                if (!shape.pattern.empty() &&
                    !std::regex_match(checked.value, std::regex(shape.pattern))) {
                    out.tally.add("literal_pattern_violation");
                    continue;
                }
                factObject = std::move(checked);
            } else if (factObject.is_literal()) {
                out.tally.add("object_literal_where_iri_expected");
                continue;
            }

            // Subject checks for class subjects and inverted facts wait for
            // the registry pass; plain entity subjects are filtered now.
            if (!isClass && !mapped->inverted &&
                !check_subject(resolvedClasses, shape, taxonomy)) {
                out.tally.add("subject_type_mismatch");
                continue;
            }

            Statement fact{std::move(factSubject), Term::iri(shape.path), std::move(factObject)};

            // Temporal qualifiers from the matching full statement.
            for (const auto& nodeKey : e.stmtNodes) {
                const StmtNode& node = stmtNodes[nodeKey];
                if (node.psPid != pid || !node.value || !(*node.value == object)) continue;
                TimeAnnotation t = extract_time(node.qualifiers, config, &out.tally);
                fact.startTime = t.start;
                fact.endTime = t.end;
                fact.pointInTime = t.point;
                break;
            }
            out.facts.push_back(std::move(fact));
        }
    }
    return out;
}

void merge_into(FactExtraction& target, FactExtraction&& part) {
    auto append = [](auto& dst, auto&& src) {
        dst.insert(dst.end(), std::make_move_iterator(src.begin()),
                   std::make_move_iterator(src.end()));
    };
    append(target.facts, std::move(part.facts));
    append(target.labels, std::move(part.labels));
    append(target.types, std::move(part.types));
    append(target.names, std::move(part.names));
    target.products.insert(part.products.begin(), part.products.end());
    target.tally.merge(part.tally);
}

namespace {

std::string escape_field(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '\t': out += "\\t"; break;
            case '\n': out += "\\n"; break;
            default: out += c;
        }
    }
    return out;
}

std::string unescape_field(const std::string& s) {
    std::string out;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '\\' && i + 1 < s.size()) {
            ++i;
            if (s[i] == 't') out += '\t';
            else if (s[i] == 'n') out += '\n';
            else out += s[i];
        } else {
            out += s[i];
        }
    }
    return out;
}

}  // namespace

void save_names(const std::vector<NameSource>& names, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    for (const auto& n : names) {
        out << n.iri << "\tE\n";
        if (!n.wikipediaTitle.empty())
            out << n.iri << "\tT\t" << escape_field(n.wikipediaTitle) << '\n';
        for (const auto& [lang, text] : n.labels)
            out << n.iri << "\tL\t" << lang << '\t' << escape_field(text) << '\n';
    }
}

std::vector<NameSource> load_names(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::vector<NameSource> out;
    std::map<std::string, size_t> index;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cols;
        size_t start = 0;
        while (true) {
            size_t tab = line.find('\t', start);
            if (tab == std::string::npos) {
                cols.push_back(line.substr(start));
                break;
            }
            cols.push_back(line.substr(start, tab - start));
            start = tab + 1;
        }
        if (cols.size() < 2) continue;
        auto [it, inserted] = index.try_emplace(cols[0], out.size());
        if (inserted) {
            out.emplace_back();
            out.back().iri = cols[0];
        }
        NameSource& n = out[it->second];
        if (cols[1] == "T" && cols.size() >= 3) n.wikipediaTitle = unescape_field(cols[2]);
        else if (cols[1] == "L" && cols.size() >= 4) n.labels[cols[2]] = unescape_field(cols[3]);
    }
    return out;
}

}  // namespace kbfuse
