#pragma once

#include "cellgraph/error.hpp"
#include "cellgraph/graph.hpp"
#include "cellgraph/linkbase.hpp"
#include "cellgraph/semantic_namespace.hpp"

#include "json.hpp"

namespace cellgraph {

// JSON forms shared by the on-disk files and the HTTP API. Decoders throw
// Error with the taxonomy of the record they build.

nlohmann::json cell_to_json(const Cell& cell);
/// `id_hint` is used when the body carries no id (HTTP PUT path ids).
Cell cell_from_json(const nlohmann::json& j, const std::string& id_hint = {});

nlohmann::json component_to_json(const Component& component);
Component component_from_json(const nlohmann::json& j, const std::string& id_hint = {});

nlohmann::json relation_to_json(const Relation& relation);
Relation relation_from_json(const nlohmann::json& j);

nlohmann::json predicate_to_json(const Predicate& where);
Predicate predicate_from_json(const nlohmann::json& j, Errc errc = Errc::invalid_anchor);

nlohmann::json anchor_to_json(const AnchorDef& anchor);
AnchorDef anchor_from_json(const nlohmann::json& j, const std::string& id_hint = {});

nlohmann::json link_to_json(const LinkDef& link);
LinkDef link_from_json(const nlohmann::json& j, const std::string& id_hint = {});

nlohmann::json context_to_json(const LinkContext& context);
LinkContext context_from_json(const nlohmann::json& j, const std::string& id_hint = {});

nlohmann::json chain_to_json(const Graph& graph, const ContextChain& chain);

}  // namespace cellgraph
