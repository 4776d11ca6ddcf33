#ifndef QSETS_JSON_IO_HPP
#define QSETS_JSON_IO_HPP

#include <json.hpp>
#include <string>

#include "qsets/coloring.hpp"
#include "qsets/opalg.hpp"
#include "qsets/pred.hpp"
#include "qsets/qfun.hpp"
#include "qsets/qrel.hpp"

namespace qsets {

using Json = nlohmann::json;

// Encoders. Decoders throw SchemaError with a JSON-pointer-like path such as
// "$.blocks[2].space.basis[0].data".

Json to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j, const std::string& path = "$");

/// Column vector as a list of [re, im] pairs.
Json vector_to_json(const CVector& v);
CVector vector_from_json(const Json& j, const std::string& path = "$");

Json to_json(const OperatorSubspace& s);
/// The basis need not be orthonormal; it is re-spanned on input.
OperatorSubspace subspace_from_json(const Json& j, const std::string& path = "$");

Json to_json(const QuantumSet& x);
QuantumSet qset_from_json(const Json& j, const std::string& path = "$");

Json to_json(const Relation& r);
Relation relation_from_json(const Json& j, const std::string& path = "$");

Json to_json(const BlockOperator& b);
BlockOperator block_operator_from_json(const Json& j, const std::string& path = "$");

/// {"domain", "codomain", "images": [{"label", "i", "j", "image"}, ...]}.
Json to_json(const Homomorphism& h);
Homomorphism homomorphism_from_json(const Json& j, const std::string& path = "$");

/// {"source", "target", "entries": [{"from", "to", "h", "map"}, ...]}.
Json to_json(const Fission& f);
Fission fission_from_json(const Json& j, const std::string& path = "$");

Json to_json(const Predicate& p);
Predicate predicate_from_json(const Json& j, const std::string& path = "$");

Json to_json(const FunctionWitness& w);

Json to_json(const SpectralResult& s);

Json to_json(const Graph& g);
Graph graph_from_json(const Json& j, const std::string& path = "$");

/// Projection keys are "g|t", split at the last bar.
Json to_json(const ColoringFamily& f);
ColoringFamily family_from_json(const Json& j, const std::string& path = "$");

Json to_json(const ColoringReport& r);

/// Parses a file. Unreadable files and syntax errors become SchemaError.
Json read_json_file(const std::string& file);

}  // namespace qsets

#endif  // QSETS_JSON_IO_HPP
