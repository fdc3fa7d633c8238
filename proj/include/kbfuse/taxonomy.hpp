#ifndef KBFUSE_TAXONOMY_HPP
#define KBFUSE_TAXONOMY_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "kbfuse/schema.hpp"
#include "kbfuse/tally.hpp"
#include "kbfuse/term.hpp"

namespace kbfuse {

// Raw subclass edges and direct-instance tallies harvested from a dump.
// Cheap to produce per chunk and to merge.
struct SourceGraph {
    std::set<std::pair<std::string, std::string>> subclassEdges;  // (child, parent)
    std::map<std::string, uint64_t> instanceCounts;               // class -> direct P31 count
};

SourceGraph extract_subclass_graph(const std::vector<Statement>& statements,
                                   const std::string& subclassPredicate,
                                   const std::string& instancePredicate);
void merge_into(SourceGraph& target, const SourceGraph& part);

enum class NodeOrigin { Upper, Glued };

enum class InsertResult { Accepted, RejectedLoop, RejectedDisjoint, RejectedTransitive };

// Directed subclass DAG over class nodes. Edges point child -> parent.
class TaxonomyGraph {
public:
    struct Node {
        std::string iri;
        NodeOrigin origin = NodeOrigin::Glued;
        uint64_t directInstances = 0;
        std::set<int> parents;
        std::set<int> children;
    };

    int intern(const std::string& iri, NodeOrigin origin);
    int id_of(const std::string& iri) const;  // -1 when absent
    bool has(const std::string& iri) const { return id_of(iri) >= 0; }

    const std::vector<Node>& nodes() const { return nodes_; }
    Node& node(int id) { return nodes_[id]; }
    const Node& node(int id) const { return nodes_[id]; }
    size_t size() const { return nodes_.size(); }
    size_t edge_count() const;

    void add_edge(int child, int parent);
    bool has_edge(int child, int parent) const;

    bool reaches_up(int from, int to) const;  // reflexive-transitive over parents
    std::set<int> ancestors(int id) const;    // excludes id
    std::set<int> descendants(int id) const;  // excludes id
    bool is_subclass_of(const std::string& cls, const std::string& ancestor) const;
    bool is_acyclic() const;

    // Pairs of class IRIs declared disjoint; consulted by insert_edge_acyclic.
    std::set<std::pair<std::string, std::string>> disjointPairs;

    // Drops a node set; surviving children of removed nodes are rerouted to
    // their nearest retained ancestors. Node ids are reassigned.
    void remove_nodes(const std::set<int>& removed);

    std::vector<std::pair<std::string, std::string>> edges_sorted() const;

private:
    std::vector<Node> nodes_;
    std::map<std::string, int> index_;
};

// Upper taxonomy as a graph (Upper origin, disjointness attached).
TaxonomyGraph build_upper_graph(const SchemaDefinition& schema);

// Inserts (subclass, superclass) unless it would create a loop, make some
// node a transitive subclass of two disjoint classes, or is already implied
// by transitivity. Interns missing endpoints as Glued nodes.
InsertResult insert_edge_acyclic(TaxonomyGraph& graph, const std::string& subclass,
                                 const std::string& superclass);

// Attaches the sub-DAG below every mapped source class under its upper
// class. Traversal neither enters blacklisted classes nor classes that are
// themselves mapping targets. Candidate edges are inserted in lexicographic
// (subclass, superclass) order; rejections are tallied by reason.
void glue(const SchemaDefinition& schema, const SourceGraph& source, TaxonomyGraph& graph,
          Tally& tally);

// Minimal equivalent graph: reachability preserved exactly, no edge with an
// alternate path. Throws if the graph has a cycle.
void remove_transitive_edges(TaxonomyGraph& graph, Tally* tally = nullptr);

// Removes every Glued class with zero direct and zero transitive instances.
// Upper classes always persist, as do classes listed in `exempt` (e.g.
// generic-instance category members, which may gain instances later).
void drop_uninstantiated(TaxonomyGraph& graph, Tally* tally = nullptr,
                         const std::set<std::string>& exempt = {});

// Removes blacklisted classes and their glued subtrees, keeping nodes that
// still reach an upper class by a path avoiding the blacklist.
void apply_blacklist(TaxonomyGraph& graph, const std::set<std::string>& blacklist,
                     Tally* tally = nullptr);

// Persistence: subClassOf facts plus a node metadata table
// (iri TAB origin TAB directInstances).
void save_taxonomy(const TaxonomyGraph& graph, const std::string& edgesPath,
                   const std::string& nodesPath);
TaxonomyGraph load_taxonomy(const std::string& edgesPath, const std::string& nodesPath,
                            const SchemaDefinition& schema);

}  // namespace kbfuse

#endif
