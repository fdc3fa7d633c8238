#include "kbfuse/ids.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "kbfuse/vocab.hpp"

namespace kbfuse {

namespace {

// Decodes one UTF-8 codepoint starting at i; advances i. Invalid bytes are
// returned as their own value so sanitize never loses information.
uint32_t next_codepoint(const std::string& s, size_t& i) {
    unsigned char b0 = static_cast<unsigned char>(s[i]);
    size_t len = 1;
    uint32_t cp = b0;
    if ((b0 & 0x80u) == 0) len = 1;
    else if ((b0 & 0xE0u) == 0xC0u) len = 2, cp = b0 & 0x1Fu;
    else if ((b0 & 0xF0u) == 0xE0u) len = 3, cp = b0 & 0x0Fu;
    else if ((b0 & 0xF8u) == 0xF0u) len = 4, cp = b0 & 0x07u;
    else {
        ++i;
        return b0;
    }
    if (i + len > s.size()) {
        ++i;
        return b0;
    }
    for (size_t k = 1; k < len; ++k) {
        unsigned char b = static_cast<unsigned char>(s[i + k]);
        if ((b & 0xC0u) != 0x80u) {
            ++i;
            return b0;
        }
        cp = (cp << 6) | (b & 0x3Fu);
    }
    i += len;
    return cp;
}

void append_utf8(std::string& out, uint32_t cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

std::string hex_escape(uint32_t cp) {
    static const char* digits = "0123456789abcdef";
    std::string hex;
    while (cp) {
        hex += digits[cp & 0xF];
        cp >>= 4;
    }
    while (hex.size() < 4) hex += '0';
    std::reverse(hex.begin(), hex.end());
    return "_u" + hex + "_";
}

std::string local_name(const std::string& iri) {
    size_t cut = iri.find_last_of("/#");
    return cut == std::string::npos ? iri : iri.substr(cut + 1);
}

}  // namespace

std::string sanitize(const std::string& text) {
    std::string out;
    size_t i = 0;
    while (i < text.size()) {
        uint32_t cp = next_codepoint(text, i);
        if (cp == ' ' || cp == '-') out += '_';
        else if (cp == '_' || (cp >= '0' && cp <= '9') || (cp >= 'A' && cp <= 'Z') ||
                 (cp >= 'a' && cp <= 'z'))
            out += static_cast<char>(cp);
        else out += hex_escape(cp);
    }
    return out;
}

std::string desanitize(const std::string& localName) {
    std::string out;
    size_t i = 0;
    while (i < localName.size()) {
        if (localName[i] == '_' && i + 1 < localName.size() && localName[i + 1] == 'u') {
            size_t j = i + 2;
            uint32_t cp = 0;
            bool any = false;
            while (j < localName.size() && std::isxdigit(static_cast<unsigned char>(localName[j]))) {
                char c = localName[j];
                cp = cp * 16 + static_cast<uint32_t>(c <= '9' ? c - '0' : (c | 0x20) - 'a' + 10);
                any = true;
                ++j;
            }
            if (any && j < localName.size() && localName[j] == '_') {
                append_utf8(out, cp);
                i = j + 1;
                continue;
            }
        }
        out += localName[i++];
    }
    return out;
}

std::map<std::string, uint64_t> count_title_claims(const std::vector<NameSource>& names) {
    // Distinct claimants per title: chunked extraction may report the same
    // entity more than once.
    std::map<std::string, std::set<std::string>> claimants;
    for (const auto& n : names)
        if (!n.wikipediaTitle.empty()) claimants[n.wikipediaTitle].insert(n.iri);
    std::map<std::string, uint64_t> claims;
    for (const auto& [title, who] : claimants) claims[title] = who.size();
    return claims;
}

namespace {

std::vector<std::string> identifier_candidates(const NameSource& name,
                                               const std::map<std::string, uint64_t>& titleClaims,
                                               const std::string& qidLocal) {
    std::vector<std::string> out;
    if (!name.wikipediaTitle.empty()) {
        auto it = titleClaims.find(name.wikipediaTitle);
        if (it != titleClaims.end() && it->second == 1) {
            std::string s = sanitize(name.wikipediaTitle);
            if (!s.empty()) out.push_back(s);
        }
    }
    if (auto en = name.labels.find("en"); en != name.labels.end()) {
        std::string s = sanitize(en->second);
        if (!s.empty()) out.push_back(s + "_" + qidLocal);
    }
    if (!name.labels.empty()) {
        std::string s = sanitize(name.labels.begin()->second);  // smallest language tag
        if (!s.empty()) out.push_back(s + "_" + qidLocal);
    }
    out.push_back(qidLocal);
    return out;
}

}  // namespace

std::string assign_identifier(const NameSource& name,
                              const std::map<std::string, uint64_t>& titleClaims,
                              const std::string& qidLocal) {
    return identifier_candidates(name, titleClaims, qidLocal).front();
}

RenamePlan build_rename_plan(const std::vector<NameSource>& names, const EntityRegistry& registry,
                             const TaxonomyGraph& taxonomy) {
    RenamePlan plan;
    // Merge per-chunk rows for the same entity: worker count must not
    // change which name material an entity ends up with.
    std::map<std::string, NameSource> nameOf;
    for (const auto& n : names) {
        NameSource& dst = nameOf[n.iri];
        dst.iri = n.iri;
        if (dst.wikipediaTitle.empty()) dst.wikipediaTitle = n.wikipediaTitle;
        dst.labels.insert(n.labels.begin(), n.labels.end());
    }
    auto titleClaims = count_title_claims(names);
    static const NameSource kEmpty{};

    auto pick = [&](const std::string& iri, std::set<std::string>& used) {
        auto it = nameOf.find(iri);
        const NameSource& n = it == nameOf.end() ? kEmpty : it->second;
        for (const auto& cand : identifier_candidates(n, titleClaims, local_name(iri)))
            if (used.insert(cand).second) return cand;
        return local_name(iri);  // unreachable: the Q-id backstop is unique
    };

    std::set<std::string> genericIris;
    for (const auto& [cls, gen] : registry.generics) genericIris.insert(gen);

    // Glued classes first: generic-instance names derive from class names.
    std::set<std::string> usedClassNames;
    for (const auto& node : taxonomy.nodes())
        if (node.origin == NodeOrigin::Glued)
            plan.mapping[node.iri] = vocab::KB_CLASS + pick(node.iri, usedClassNames);

    std::set<std::string> usedEntityNames;
    for (const auto& [cls, gen] : registry.generics) {
        auto it = plan.mapping.find(cls);
        std::string classLocal = local_name(it == plan.mapping.end() ? cls : it->second);
        std::string candidate = classLocal + "_generic_instance";
        if (!usedEntityNames.insert(candidate).second) candidate = local_name(gen);
        plan.mapping[gen] = vocab::KB_RESOURCE + candidate;
    }

    for (const auto& [entity, classes] : registry.directClasses) {
        if (classes.empty() || genericIris.count(entity)) continue;
        plan.mapping[entity] = vocab::KB_RESOURCE + pick(entity, usedEntityNames);
    }

    for (const auto& [oldIri, newIri] : plan.mapping)
        plan.sameAs.push_back(
            {Term::iri(newIri), Term::iri(vocab::OWL_SAMEAS), Term::iri(oldIri)});
    return plan;
}

std::vector<Statement> apply_rename(const std::vector<Statement>& statements,
                                    const std::map<std::string, std::string>& mapping) {
    std::vector<Statement> out;
    out.reserve(statements.size());
    auto rename = [&](Term t) {
        if (t.is_iri())
            if (auto it = mapping.find(t.value); it != mapping.end()) t.value = it->second;
        return t;
    };
    for (const auto& s : statements) {
        Statement r = s;
        r.subject = rename(r.subject);
        r.object = rename(r.object);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace kbfuse
