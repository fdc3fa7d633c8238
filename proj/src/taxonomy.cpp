#include "kbfuse/taxonomy.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "kbfuse/tsv.hpp"
#include "kbfuse/vocab.hpp"

namespace kbfuse {

SourceGraph extract_subclass_graph(const std::vector<Statement>& statements,
                                   const std::string& subclassPredicate,
                                   const std::string& instancePredicate) {
    SourceGraph g;
    for (const auto& s : statements) {
        if (!s.subject.is_iri() || !s.object.is_iri()) continue;
        if (s.predicate.value == subclassPredicate) {
            g.subclassEdges.emplace(s.subject.value, s.object.value);
        } else if (s.predicate.value == instancePredicate) {
            g.instanceCounts[s.object.value]++;
        }
    }
    return g;
}

void merge_into(SourceGraph& target, const SourceGraph& part) {
    target.subclassEdges.insert(part.subclassEdges.begin(), part.subclassEdges.end());
    for (const auto& [cls, n] : part.instanceCounts) target.instanceCounts[cls] += n;
}

int TaxonomyGraph::intern(const std::string& iri, NodeOrigin origin) {
    auto it = index_.find(iri);
    if (it != index_.end()) return it->second;
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back(Node{iri, origin, 0, {}, {}});
    index_[iri] = id;
    return id;
}

int TaxonomyGraph::id_of(const std::string& iri) const {
    auto it = index_.find(iri);
    return it == index_.end() ? -1 : it->second;
}

size_t TaxonomyGraph::edge_count() const {
    size_t n = 0;
    for (const auto& node : nodes_) n += node.parents.size();
    return n;
}

void TaxonomyGraph::add_edge(int child, int parent) {
    nodes_[child].parents.insert(parent);
    nodes_[parent].children.insert(child);
}

bool TaxonomyGraph::has_edge(int child, int parent) const {
    return nodes_[child].parents.count(parent) > 0;
}

bool TaxonomyGraph::reaches_up(int from, int to) const {
    if (from == to) return true;
    std::vector<int> stack{from};
    std::set<int> seen{from};
    while (!stack.empty()) {
        int cur = stack.back();
        stack.pop_back();
        for (int p : nodes_[cur].parents) {
            if (p == to) return true;
            if (seen.insert(p).second) stack.push_back(p);
        }
    }
    return false;
}

std::set<int> TaxonomyGraph::ancestors(int id) const {
    std::set<int> out;
    std::vector<int> stack{id};
    while (!stack.empty()) {
        int cur = stack.back();
        stack.pop_back();
        for (int p : nodes_[cur].parents)
            if (out.insert(p).second) stack.push_back(p);
    }
    return out;
}

std::set<int> TaxonomyGraph::descendants(int id) const {
    std::set<int> out;
    std::vector<int> stack{id};
    while (!stack.empty()) {
        int cur = stack.back();
        stack.pop_back();
        for (int c : nodes_[cur].children)
            if (out.insert(c).second) stack.push_back(c);
    }
    return out;
}

bool TaxonomyGraph::is_subclass_of(const std::string& cls, const std::string& ancestor) const {
    int a = id_of(cls), b = id_of(ancestor);
    if (a < 0 || b < 0) return false;
    return reaches_up(a, b);
}

bool TaxonomyGraph::is_acyclic() const {
    // Kahn over child->parent edges.
    std::vector<size_t> pending(nodes_.size());
    std::deque<int> queue;
    for (size_t i = 0; i < nodes_.size(); ++i) {
        pending[i] = nodes_[i].parents.size();
        if (pending[i] == 0) queue.push_back(static_cast<int>(i));
    }
    size_t visited = 0;
    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        ++visited;
        for (int c : nodes_[cur].children)
            if (--pending[c] == 0) queue.push_back(c);
    }
    return visited == nodes_.size();
}

void TaxonomyGraph::remove_nodes(const std::set<int>& removed) {
    if (removed.empty()) return;
    // Nearest retained ancestors of a removed node, looking upward through
    // other removed nodes.
    auto nearest_retained_up = [&](int start) {
        std::set<int> result, seen{start};
        std::vector<int> stack{start};
        while (!stack.empty()) {
            int cur = stack.back();
            stack.pop_back();
            for (int p : nodes_[cur].parents) {
                if (!seen.insert(p).second) continue;
                if (removed.count(p)) stack.push_back(p);
                else result.insert(p);
            }
        }
        return result;
    };

    // New parent sets for survivors: retained parents, plus reroutes through
    // removed parents.
    std::vector<std::set<int>> newParents(nodes_.size());
    for (size_t i = 0; i < nodes_.size(); ++i) {
        if (removed.count(static_cast<int>(i))) continue;
        for (int p : nodes_[i].parents) {
            if (!removed.count(p)) {
                newParents[i].insert(p);
            } else {
                auto reroute = nearest_retained_up(p);
                newParents[i].insert(reroute.begin(), reroute.end());
            }
        }
        newParents[i].erase(static_cast<int>(i));
    }

    TaxonomyGraph rebuilt;
    rebuilt.disjointPairs = disjointPairs;
    std::map<int, int> remap;
    for (size_t i = 0; i < nodes_.size(); ++i) {
        if (removed.count(static_cast<int>(i))) continue;
        int nid = rebuilt.intern(nodes_[i].iri, nodes_[i].origin);
        rebuilt.nodes_[nid].directInstances = nodes_[i].directInstances;
        remap[static_cast<int>(i)] = nid;
    }
    for (size_t i = 0; i < nodes_.size(); ++i) {
        if (removed.count(static_cast<int>(i))) continue;
        for (int p : newParents[i]) rebuilt.add_edge(remap[static_cast<int>(i)], remap[p]);
    }
    *this = std::move(rebuilt);
}

std::vector<std::pair<std::string, std::string>> TaxonomyGraph::edges_sorted() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& node : nodes_)
        for (int p : node.parents) out.emplace_back(node.iri, nodes_[p].iri);
    std::sort(out.begin(), out.end());
    return out;
}

TaxonomyGraph build_upper_graph(const SchemaDefinition& schema) {
    TaxonomyGraph g;
    g.disjointPairs = schema.disjointPairs;
    for (const auto& cls : schema.upperClasses) g.intern(cls, NodeOrigin::Upper);
    for (const auto& [child, parent] : schema.subclassEdges)
        g.add_edge(g.id_of(child), g.id_of(parent));
    return g;
}

InsertResult insert_edge_acyclic(TaxonomyGraph& graph, const std::string& subclass,
                                 const std::string& superclass) {
    int sub = graph.intern(subclass, NodeOrigin::Glued);
    int super = graph.intern(superclass, NodeOrigin::Glued);
    if (sub == super || graph.reaches_up(super, sub)) return InsertResult::RejectedLoop;
    if (graph.reaches_up(sub, super)) return InsertResult::RejectedTransitive;

    if (!graph.disjointPairs.empty()) {
        // Ancestor IRIs the edge would add to sub and all its descendants.
        std::set<std::string> added{superclass};
        for (int a : graph.ancestors(super)) added.insert(graph.node(a).iri);
        std::set<int> affected = graph.descendants(sub);
        affected.insert(sub);
        for (int v : affected) {
            std::set<std::string> anc = added;
            anc.insert(graph.node(v).iri);
            for (int a : graph.ancestors(v)) anc.insert(graph.node(a).iri);
            for (const auto& [da, db] : graph.disjointPairs) {
                if (anc.count(da) && anc.count(db)) return InsertResult::RejectedDisjoint;
            }
        }
    }
    graph.add_edge(sub, super);
    return InsertResult::Accepted;
}

void glue(const SchemaDefinition& schema, const SourceGraph& source, TaxonomyGraph& graph,
          Tally& tally) {
    const auto sourceToUpper = schema.source_to_upper();

    std::map<std::string, std::vector<std::string>> childrenOf;
    for (const auto& [child, parent] : source.subclassEdges)
        childrenOf[parent].push_back(child);

    // Downward-reachable glued region, stopping at blacklisted classes and
    // classes that are themselves mapping targets.
    std::set<std::string> glued;
    std::deque<std::string> queue;
    auto enter = [&](const std::string& cls) {
        if (schema.classBlacklist.count(cls)) {
            tally.add("glue_stopped_blacklisted");
            return;
        }
        if (sourceToUpper.count(cls)) return;  // owned by another mapping
        if (glued.insert(cls).second) queue.push_back(cls);
    };
    for (const auto& [src, upper] : sourceToUpper) {
        auto it = childrenOf.find(src);
        if (it == childrenOf.end()) continue;
        for (const auto& child : it->second) enter(child);
    }
    while (!queue.empty()) {
        std::string cur = queue.front();
        queue.pop_front();
        auto it = childrenOf.find(cur);
        if (it == childrenOf.end()) continue;
        for (const auto& child : it->second) enter(child);
    }

    // Candidate edges, deterministic order.
    std::set<std::pair<std::string, std::string>> candidates;
    for (const auto& [child, parent] : source.subclassEdges) {
        if (!glued.count(child)) continue;
        auto mapped = sourceToUpper.find(parent);
        if (mapped != sourceToUpper.end()) {
            candidates.emplace(child, mapped->second);
        } else if (glued.count(parent)) {
            candidates.emplace(child, parent);
        } else {
            tally.add("glue_skipped_parent_outside");
        }
    }

    for (const auto& [sub, super] : candidates) {
        switch (insert_edge_acyclic(graph, sub, super)) {
            case InsertResult::Accepted: tally.add("glue_edges_accepted"); break;
            case InsertResult::RejectedLoop: tally.add("glue_rejected_loop"); break;
            case InsertResult::RejectedDisjoint: tally.add("glue_rejected_disjoint"); break;
            case InsertResult::RejectedTransitive: tally.add("glue_rejected_transitive"); break;
        }
    }

    // Direct instance counts: glued classes keep their own; an upper class
    // absorbs the counts of the source classes mapped onto it.
    for (const auto& cls : glued) {
        int id = graph.id_of(cls);
        if (id < 0) continue;
        auto it = source.instanceCounts.find(cls);
        if (it != source.instanceCounts.end()) graph.node(id).directInstances = it->second;
    }
    for (const auto& [src, upper] : sourceToUpper) {
        auto it = source.instanceCounts.find(src);
        if (it == source.instanceCounts.end()) continue;
        int id = graph.id_of(upper);
        if (id >= 0) graph.node(id).directInstances += it->second;
    }
}

void remove_transitive_edges(TaxonomyGraph& graph, Tally* tally) {
    if (!graph.is_acyclic())
        throw std::runtime_error("remove_transitive_edges: graph has a cycle");

    const size_t n = graph.size();
    // Process each node after all of its parents (Kahn from the roots down).
    std::vector<int> order;
    order.reserve(n);
    {
        std::vector<size_t> pending(n);
        std::deque<int> queue;
        for (size_t i = 0; i < n; ++i) {
            pending[i] = graph.node(static_cast<int>(i)).parents.size();
            if (pending[i] == 0) queue.push_back(static_cast<int>(i));
        }
        while (!queue.empty()) {
            int cur = queue.front();
            queue.pop_front();
            order.push_back(cur);
            for (int c : graph.node(cur).children)
                if (--pending[c] == 0) queue.push_back(c);
        }
    }

    // Upward closure bitsets (ancestors, excluding self).
    std::vector<std::vector<bool>> closure(n, std::vector<bool>(n, false));
    for (int v : order) {
        for (int p : graph.node(v).parents) {
            closure[v][p] = true;
            for (size_t j = 0; j < n; ++j)
                if (closure[p][j]) closure[v][j] = true;
        }
    }

    // An edge (a,c) is redundant iff c is reachable through another parent.
    std::vector<std::pair<int, int>> redundant;
    for (size_t a = 0; a < n; ++a) {
        for (int c : graph.node(static_cast<int>(a)).parents) {
            bool viaOther = false;
            for (int p : graph.node(static_cast<int>(a)).parents) {
                if (p == c) continue;
                if (closure[p][c]) { viaOther = true; break; }
            }
            if (viaOther) redundant.emplace_back(static_cast<int>(a), c);
        }
    }
    for (auto [a, c] : redundant) {
        graph.node(a).parents.erase(c);
        graph.node(c).children.erase(a);
    }
    if (tally) tally->add("transitive_edges_removed", redundant.size());
}

void drop_uninstantiated(TaxonomyGraph& graph, Tally* tally,
                         const std::set<std::string>& exempt) {
    const size_t n = graph.size();
    // instantiated(v) = direct instances, or some descendant has them.
    std::vector<int> state(n, -1);  // -1 unknown, 0 no, 1 yes
    auto instantiated = [&](auto&& self, int v) -> bool {
        if (state[v] != -1) return state[v] == 1;
        state[v] = 0;  // cycle guard; graph is acyclic at this point anyway
        bool result = graph.node(v).directInstances > 0;
        if (!result) {
            for (int c : graph.node(v).children) {
                if (self(self, c)) { result = true; break; }
            }
        }
        state[v] = result ? 1 : 0;
        return result;
    };

    std::set<int> removed;
    for (size_t i = 0; i < n; ++i) {
        int id = static_cast<int>(i);
        if (graph.node(id).origin == NodeOrigin::Upper) continue;
        if (exempt.count(graph.node(id).iri)) continue;
        if (!instantiated(instantiated, id)) removed.insert(id);
    }
    if (tally) tally->add("uninstantiated_classes_removed", removed.size());
    graph.remove_nodes(removed);
}

void apply_blacklist(TaxonomyGraph& graph, const std::set<std::string>& blacklist,
                     Tally* tally) {
    if (blacklist.empty()) return;
    std::set<int> banned;
    for (const auto& iri : blacklist) {
        int id = graph.id_of(iri);
        if (id >= 0) banned.insert(id);
    }

    // A glued node survives iff it reaches an upper class upward without
    // passing through a banned node.
    std::vector<int> clean(graph.size(), -1);
    auto reaches_clean = [&](auto&& self, int v) -> bool {
        if (banned.count(v)) return false;
        if (graph.node(v).origin == NodeOrigin::Upper) return true;
        if (clean[v] != -1) return clean[v] == 1;
        clean[v] = 0;
        bool result = false;
        for (int p : graph.node(v).parents) {
            if (self(self, p)) { result = true; break; }
        }
        clean[v] = result ? 1 : 0;
        return result;
    };

    std::set<int> removed = banned;
    for (size_t i = 0; i < graph.size(); ++i) {
        int id = static_cast<int>(i);
        if (graph.node(id).origin == NodeOrigin::Upper) continue;
        if (!reaches_clean(reaches_clean, id)) removed.insert(id);
    }
    if (tally) tally->add("blacklisted_classes_removed", removed.size());

    // Reroutes must never pass through a banned node, so isolate those
    // completely before rebuilding.
    for (int b : banned) {
        for (int p : graph.node(b).parents) graph.node(p).children.erase(b);
        for (int c : graph.node(b).children) graph.node(c).parents.erase(b);
        graph.node(b).parents.clear();
        graph.node(b).children.clear();
    }
    graph.remove_nodes(removed);
}

void save_taxonomy(const TaxonomyGraph& graph, const std::string& edgesPath,
                   const std::string& nodesPath) {
    std::vector<Statement> edges;
    for (const auto& [child, parent] : graph.edges_sorted())
        edges.push_back({Term::iri(child), Term::iri(vocab::RDFS_SUBCLASSOF), Term::iri(parent)});
    write_tsv_facts(edges, edgesPath);

    std::ofstream out(nodesPath, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file: " + nodesPath);
    std::vector<const TaxonomyGraph::Node*> sorted;
    for (const auto& node : graph.nodes()) sorted.push_back(&node);
    std::sort(sorted.begin(), sorted.end(),
              [](const auto* a, const auto* b) { return a->iri < b->iri; });
    for (const auto* node : sorted) {
        out << node->iri << '\t' << (node->origin == NodeOrigin::Upper ? "upper" : "glued")
            << '\t' << node->directInstances << '\n';
    }
}

TaxonomyGraph load_taxonomy(const std::string& edgesPath, const std::string& nodesPath,
                            const SchemaDefinition& schema) {
    TaxonomyGraph g;
    g.disjointPairs = schema.disjointPairs;

    std::ifstream nodes(nodesPath, std::ios::binary);
    if (!nodes) throw std::runtime_error("cannot open file: " + nodesPath);
    std::string line;
    while (std::getline(nodes, line)) {
        if (line.empty()) continue;
        size_t t1 = line.find('\t');
        size_t t2 = line.find('\t', t1 + 1);
        if (t1 == std::string::npos || t2 == std::string::npos)
            throw std::runtime_error("malformed taxonomy node line: " + line);
        std::string iri = line.substr(0, t1);
        std::string origin = line.substr(t1 + 1, t2 - t1 - 1);
        uint64_t count = std::stoull(line.substr(t2 + 1));
        int id = g.intern(iri, origin == "upper" ? NodeOrigin::Upper : NodeOrigin::Glued);
        g.node(id).directInstances = count;
    }

    auto edges = read_tsv_facts(edgesPath);
    for (const auto& s : edges.statements) {
        if (s.predicate.value != vocab::RDFS_SUBCLASSOF) continue;
        int child = g.id_of(s.subject.value);
        int parent = g.id_of(s.object.value);
        if (child < 0 || parent < 0)
            throw std::runtime_error("taxonomy edge references unknown node: " + s.subject.value);
        g.add_edge(child, parent);
    }
    return g;
}

}  // namespace kbfuse
