#pragma once

// Polynomials as shared expression graphs. Used where the expanded form is
// far too large to build; evaluation stays exact at any integer point.

#include "dioph/term_poly.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dioph {

using NodeId = std::uint32_t;

enum class NodeKind { Const, Var, Add, Mul, Pow, Subst };

const char* node_kind_name(NodeKind kind);

struct DagNode {
  NodeKind kind = NodeKind::Const;
  BigInt value;                 // Const
  std::string name;             // Var
  std::vector<NodeId> args;     // Add, Mul: operands; Pow: {base}; Subst: {body}
  std::uint64_t exponent = 0;   // Pow
  /// Subst: each name is replaced by the value of the node, computed in the
  /// enclosing scope (simultaneous substitution).
  std::vector<std::pair<std::string, NodeId>> bindings;
};

/// Append-only node arena. Children always precede parents, and structurally
/// identical nodes are shared.
class PolyDag {
 public:
  NodeId constant(const BigInt& c);
  NodeId var(const std::string& name);
  NodeId add(std::vector<NodeId> terms);
  NodeId add(NodeId a, NodeId b) { return add(std::vector<NodeId>{a, b}); }
  NodeId sub(NodeId a, NodeId b);
  NodeId neg(NodeId a);
  NodeId mul(std::vector<NodeId> factors);
  NodeId mul(NodeId a, NodeId b) { return mul(std::vector<NodeId>{a, b}); }
  NodeId scale(const BigInt& c, NodeId a) { return mul(constant(c), a); }
  NodeId pow(NodeId base, std::uint64_t e);
  NodeId subst(NodeId body, std::vector<std::pair<std::string, NodeId>> bindings);
  /// Sum of monomials of an expanded polynomial.
  NodeId embed(const TermPoly& poly);
  /// Copies the subgraph under `root` of another arena into this one.
  NodeId import(const PolyDag& other, NodeId root);

  const DagNode& node(NodeId id) const { return nodes_.at(id); }
  std::size_t size() const { return nodes_.size(); }
  std::size_t reachable_count(NodeId root) const;

  /// Free variables under `root`, sorted by name.
  std::vector<std::string> free_variables(NodeId root) const;
  /// Whether some node under `root` is syntactically identical to `probe`.
  bool contains(NodeId root, NodeId probe) const;

  BigInt eval(NodeId root, const Assignment& at) const;
  TermPoly expand(NodeId root, std::size_t budget = kDefaultTermBudget) const;

  /// {"format": "polydag-1", "root": r, "nodes": [...]} with only the nodes
  /// reachable from `root`, renumbered in topological order.
  nlohmann::json to_json(NodeId root) const;
  static std::pair<PolyDag, NodeId> from_json(const nlohmann::json& doc);

 private:
  NodeId intern(DagNode node);
  std::vector<bool> reachable(NodeId root) const;

  std::vector<DagNode> nodes_;
  std::unordered_map<std::string, NodeId> index_;
};

}  // namespace dioph
