#ifndef KBFUSE_VOCAB_HPP
#define KBFUSE_VOCAB_HPP

#include <string>

// Well-known IRIs used across the pipeline. Kept as inline constants so
// string comparisons stay cheap and typo-proof.
namespace kbfuse::vocab {

inline const std::string RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline const std::string RDFS_SUBCLASSOF = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
inline const std::string RDFS_LABEL = "http://www.w3.org/2000/01/rdf-schema#label";
inline const std::string RDFS_COMMENT = "http://www.w3.org/2000/01/rdf-schema#comment";
inline const std::string OWL_DISJOINTWITH = "http://www.w3.org/2002/07/owl#disjointWith";
inline const std::string OWL_SAMEAS = "http://www.w3.org/2002/07/owl#sameAs";
inline const std::string SKOS_ALTLABEL = "http://www.w3.org/2004/02/skos/core#altLabel";

inline const std::string XSD = "http://www.w3.org/2001/XMLSchema#";
inline const std::string XSD_STRING = XSD + "string";
inline const std::string XSD_INTEGER = XSD + "integer";
inline const std::string XSD_DECIMAL = XSD + "decimal";
inline const std::string XSD_DOUBLE = XSD + "double";
inline const std::string XSD_BOOLEAN = XSD + "boolean";
inline const std::string XSD_DATE = XSD + "date";
inline const std::string XSD_DATETIME = XSD + "dateTime";
inline const std::string XSD_ANYURI = XSD + "anyURI";
inline const std::string RDF_LANGSTRING = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";

// SHACL vocabulary (the subset the schema file uses).
inline const std::string SH = "http://www.w3.org/ns/shacl#";
inline const std::string SH_PROPERTY = SH + "property";
inline const std::string SH_PATH = SH + "path";
inline const std::string SH_CLASS = SH + "class";
inline const std::string SH_DATATYPE = SH + "datatype";
inline const std::string SH_MAXCOUNT = SH + "maxCount";
inline const std::string SH_PATTERN = SH + "pattern";

// Tool namespace: mapping predicates and configuration.
inline const std::string KBF = "http://kbfuse.org/vocab/";
inline const std::string KBF_FROM_CLASS = KBF + "fromClass";
inline const std::string KBF_FROM_PROPERTY = KBF + "fromProperty";
inline const std::string KBF_INVERSE = KBF + "inverse";
inline const std::string KBF_BLACKLIST = KBF + "blacklistClass";
inline const std::string KBF_GENERIC_CLASS = KBF + "genericInstanceClass";
inline const std::string KBF_LABEL_TARGET = KBF + "labelTarget";
inline const std::string KBF_CONFIG = KBF + "Config";
inline const std::string KBF_START_TIME = KBF + "startTime";
inline const std::string KBF_END_TIME = KBF + "endTime";
inline const std::string KBF_POINT_IN_TIME = KBF + "pointInTime";

// Namespaces for the final resource identifiers and added classes.
inline const std::string KB_RESOURCE = "http://kbfuse.org/resource/";
inline const std::string KB_CLASS = "http://kbfuse.org/class/";
inline const std::string KB_GENERIC = "http://kbfuse.org/generic/";

// Source-KB (Wikidata-style) namespaces.
inline const std::string WD = "http://www.wikidata.org/entity/";
inline const std::string WDT = "http://www.wikidata.org/prop/direct/";
inline const std::string WD_P = "http://www.wikidata.org/prop/";
inline const std::string WD_PS = "http://www.wikidata.org/prop/statement/";
inline const std::string WD_PQ = "http://www.wikidata.org/prop/qualifier/";

inline const std::string SCHEMA = "http://schema.org/";
inline const std::string SCHEMA_ABOUT = SCHEMA + "about";
inline const std::string SCHEMA_DESCRIPTION = SCHEMA + "description";
inline const std::string SCHEMA_ALTERNATENAME = SCHEMA + "alternateName";

inline const std::string ENWIKI = "https://en.wikipedia.org/wiki/";

}  // namespace kbfuse::vocab

#endif
