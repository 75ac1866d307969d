#include "dioph/poly_dag.hpp"

#include <functional>
#include <map>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <optional>
#include <set>

namespace dioph {

const char* node_kind_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::Const: return "const";
    case NodeKind::Var: return "var";
    case NodeKind::Add: return "add";
    case NodeKind::Mul: return "mul";
    case NodeKind::Pow: return "pow";
    case NodeKind::Subst: return "subst";
  }
  return "?";
}

namespace {

std::string node_key(const DagNode& n) {
  std::string key = node_kind_name(n.kind);
  key += '|';
  switch (n.kind) {
    case NodeKind::Const: key += to_string(n.value); break;
    case NodeKind::Var: key += n.name; break;
    case NodeKind::Pow: key += std::to_string(n.exponent); [[fallthrough]];
    default:
      for (auto a : n.args) key += "," + std::to_string(a);
      for (const auto& [name, id] : n.bindings) key += ";" + name + "=" + std::to_string(id);
  }
  return key;
}

}  // namespace

NodeId PolyDag::intern(DagNode node) {
  std::string key = node_key(node);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  const auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(std::move(node));
  index_.emplace(std::move(key), id);
  return id;
}

NodeId PolyDag::constant(const BigInt& c) {
  DagNode n;
  n.kind = NodeKind::Const;
  n.value = c;
  return intern(std::move(n));
}

NodeId PolyDag::var(const std::string& name) {
  DagNode n;
  n.kind = NodeKind::Var;
  n.name = name;
  return intern(std::move(n));
}

NodeId PolyDag::add(std::vector<NodeId> terms) {
  if (terms.empty()) return constant(0);
  if (terms.size() == 1) return terms.front();
  DagNode n;
  n.kind = NodeKind::Add;
  n.args = std::move(terms);
  return intern(std::move(n));
}

NodeId PolyDag::neg(NodeId a) { return mul(constant(-1), a); }

NodeId PolyDag::sub(NodeId a, NodeId b) { return add(a, neg(b)); }

NodeId PolyDag::mul(std::vector<NodeId> factors) {
  if (factors.empty()) return constant(1);
  if (factors.size() == 1) return factors.front();
  DagNode n;
  n.kind = NodeKind::Mul;
  n.args = std::move(factors);
  return intern(std::move(n));
}

NodeId PolyDag::pow(NodeId base, std::uint64_t e) {
  if (e == 0) return constant(1);
  if (e == 1) return base;
  DagNode n;
  n.kind = NodeKind::Pow;
  n.args = {base};
  n.exponent = e;
  return intern(std::move(n));
}

NodeId PolyDag::subst(NodeId body, std::vector<std::pair<std::string, NodeId>> bindings) {
  if (bindings.empty()) return body;
  for (std::size_t i = 0; i < bindings.size(); ++i) {
    for (std::size_t j = i + 1; j < bindings.size(); ++j) {
      if (bindings[i].first == bindings[j].first) {
        throw DomainError("variable '" + bindings[i].first + "' bound twice");
      }
    }
  }
  DagNode n;
  n.kind = NodeKind::Subst;
  n.args = {body};
  n.bindings = std::move(bindings);
  return intern(std::move(n));
}

NodeId PolyDag::embed(const TermPoly& poly) {
  // Nested Horner form, one variable per level, so evaluation needs about one
  // multiplication per term.
  using Term = std::pair<const Monomial*, const BigInt*>;
  std::vector<Term> all;
  for (const auto& [m, c] : poly.terms()) all.emplace_back(&m, &c);
  const std::size_t nvars = poly.variables().size();
  auto build = [&](auto&& self, const std::vector<Term>& terms, std::size_t level) -> NodeId {
    if (terms.empty()) return constant(0);
    if (level == nvars) {
      BigInt sum = 0;
      for (const auto& t : terms) sum += *t.second;
      return constant(sum);
    }
    std::map<std::uint32_t, std::vector<Term>, std::greater<>> groups;
    for (const auto& t : terms) groups[(*t.first)[nvars - 1 - level]].push_back(t);
    const NodeId x = var(poly.variables()[nvars - 1 - level]);
    NodeId acc = 0;
    bool first = true;
    std::uint32_t prev = 0;
    for (const auto& [e, group] : groups) {
      const NodeId inner = self(self, group, level + 1);
      acc = first ? inner : add(mul(acc, pow(x, prev - e)), inner);
      first = false;
      prev = e;
    }
    return prev == 0 ? acc : mul(acc, pow(x, prev));
  };
  return build(build, all, 0);
}

NodeId PolyDag::import(const PolyDag& other, NodeId root) {
  const auto live = other.reachable(root);
  std::vector<NodeId> map(other.size(), 0);
  for (NodeId i = 0; i <= root; ++i) {
    if (!live[i]) continue;
    DagNode n = other.nodes_[i];
    for (auto& a : n.args) a = map[a];
    for (auto& b : n.bindings) b.second = map[b.second];
    map[i] = intern(std::move(n));
  }
  return map[root];
}

std::vector<bool> PolyDag::reachable(NodeId root) const {
  if (root >= nodes_.size()) throw DomainError("node index out of range");
  std::vector<bool> live(nodes_.size(), false);
  live[root] = true;
  for (NodeId i = root + 1; i-- > 0;) {
    if (!live[i]) continue;
    for (auto a : nodes_[i].args) live[a] = true;
    for (const auto& b : nodes_[i].bindings) live[b.second] = true;
  }
  return live;
}

std::size_t PolyDag::reachable_count(NodeId root) const {
  const auto live = reachable(root);
  return static_cast<std::size_t>(std::count(live.begin(), live.end(), true));
}

bool PolyDag::contains(NodeId root, NodeId probe) const {
  if (probe >= nodes_.size()) return false;
  return reachable(root)[probe];
}

std::vector<std::string> PolyDag::free_variables(NodeId root) const {
  const auto live = reachable(root);
  std::vector<std::set<std::string>> free(root + 1);
  for (NodeId i = 0; i <= root; ++i) {
    if (!live[i]) continue;
    const DagNode& n = nodes_[i];
    auto& out = free[i];
    switch (n.kind) {
      case NodeKind::Const: break;
      case NodeKind::Var: out.insert(n.name); break;
      case NodeKind::Subst: {
        const auto& body = free[n.args[0]];
        out = body;
        for (const auto& [name, id] : n.bindings) {
          if (!body.count(name)) continue;
          out.erase(name);
        }
        for (const auto& [name, id] : n.bindings) {
          if (body.count(name)) out.insert(free[id].begin(), free[id].end());
        }
        break;
      }
      default:
        for (auto a : n.args) out.insert(free[a].begin(), free[a].end());
    }
  }
  return {free[root].begin(), free[root].end()};
}

namespace {

template <typename Value, typename Ops>
class Walker {
 public:
  Walker(const std::vector<DagNode>& nodes, Ops& ops) : nodes_(nodes), ops_(ops) {}

  Value run(NodeId root, const std::map<std::string, Value>& env) {
    std::vector<std::optional<Value>> memo(root + 1);
    return visit(root, env, memo);
  }

 private:
  const std::vector<DagNode>& nodes_;
  Ops& ops_;

  // The memo never reallocates, so returned references stay valid.
  const Value& visit(NodeId id, const std::map<std::string, Value>& env,
                     std::vector<std::optional<Value>>& memo) {
    if (memo[id]) return *memo[id];
    const DagNode& n = nodes_[id];
    Value result;
    switch (n.kind) {
      case NodeKind::Const: result = ops_.constant(n.value); break;
      case NodeKind::Var: {
        auto it = env.find(n.name);
        result = it == env.end() ? ops_.unbound(n.name) : it->second;
        break;
      }
      case NodeKind::Add: {
        result = visit(n.args[0], env, memo);
        for (std::size_t i = 1; i < n.args.size(); ++i) ops_.add_to(result, visit(n.args[i], env, memo));
        break;
      }
      case NodeKind::Mul: {
        result = visit(n.args[0], env, memo);
        for (std::size_t i = 1; i < n.args.size(); ++i) ops_.mul_to(result, visit(n.args[i], env, memo));
        break;
      }
      case NodeKind::Pow: result = ops_.pow(visit(n.args[0], env, memo), n.exponent); break;
      case NodeKind::Subst: {
        std::map<std::string, Value> inner = env;
        for (const auto& [name, bound] : n.bindings) inner[name] = visit(bound, env, memo);
        std::vector<std::optional<Value>> fresh(n.args[0] + 1);
        result = visit(n.args[0], inner, fresh);
        break;
      }
    }
    memo[id] = std::move(result);
    return *memo[id];
  }
};

struct NumericOps {
  BigInt constant(const BigInt& c) { return c; }
  BigInt unbound(const std::string& name) {
    throw DomainError("missing value for variable '" + name + "'");
  }
  void add_to(BigInt& a, const BigInt& b) { a += b; }
  void mul_to(BigInt& a, const BigInt& b) { a *= b; }
  BigInt pow(const BigInt& a, std::uint64_t e) { return dioph::pow(a, e); }
};

struct SymbolicOps {
  std::size_t budget;
  TermPoly constant(const BigInt& c) { return TermPoly::constant(c); }
  TermPoly unbound(const std::string& name) { return TermPoly::variable(name); }
  void add_to(TermPoly& a, const TermPoly& b) { a = a.add(b, budget); }
  void mul_to(TermPoly& a, const TermPoly& b) { a = a.mul(b, budget); }
  TermPoly pow(const TermPoly& a, std::uint64_t e) { return a.pow(e, budget); }
};

}  // namespace

BigInt PolyDag::eval(NodeId root, const Assignment& at) const {
  if (root >= nodes_.size()) throw DomainError("node index out of range");
  NumericOps ops;
  return Walker<BigInt, NumericOps>(nodes_, ops).run(root, at);
}

TermPoly PolyDag::expand(NodeId root, std::size_t budget) const {
  if (root >= nodes_.size()) throw DomainError("node index out of range");
  SymbolicOps ops{budget};
  TermPoly out = Walker<TermPoly, SymbolicOps>(nodes_, ops).run(root, {});
  std::vector<std::string> order = out.occurring_variables();
  std::sort(order.begin(), order.end());
  return out.over(order);
}

nlohmann::json PolyDag::to_json(NodeId root) const {
  const auto live = reachable(root);
  std::vector<std::size_t> renum(nodes_.size(), 0);
  nlohmann::json list = nlohmann::json::array();
  for (NodeId i = 0; i <= root; ++i) {
    if (!live[i]) continue;
    renum[i] = list.size();
    const DagNode& n = nodes_[i];
    nlohmann::json j;
    j["kind"] = node_kind_name(n.kind);
    switch (n.kind) {
      case NodeKind::Const: j["value"] = to_string(n.value); break;
      case NodeKind::Var: j["name"] = n.name; break;
      case NodeKind::Subst: {
        j["body"] = renum[n.args[0]];
        nlohmann::json b = nlohmann::json::array();
        for (const auto& [name, id] : n.bindings) b.push_back({name, renum[id]});
        j["bindings"] = b;
        break;
      }
      default: {
        nlohmann::json args = nlohmann::json::array();
        for (auto a : n.args) args.push_back(renum[a]);
        j["args"] = args;
        if (n.kind == NodeKind::Pow) j["exp"] = n.exponent;
      }
    }
    list.push_back(std::move(j));
  }
  return {{"format", "polydag-1"}, {"root", renum[root]}, {"nodes", list}};
}

std::pair<PolyDag, NodeId> PolyDag::from_json(const nlohmann::json& doc) {
  if (doc.value("format", "") != "polydag-1") throw DomainError("not a polydag-1 document");
  PolyDag dag;
  std::vector<NodeId> ids;
  auto ref = [&](const nlohmann::json& v) {
    const auto k = v.get<std::size_t>();
    if (k >= ids.size()) throw DomainError("node refers forward or out of range");
    return ids[k];
  };
  for (const auto& j : doc.at("nodes")) {
    const std::string kind = j.at("kind");
    NodeId id;
    if (kind == "const") {
      id = dag.constant(big_from_string(j.at("value").get<std::string>()));
    } else if (kind == "var") {
      id = dag.var(j.at("name").get<std::string>());
    } else if (kind == "add" || kind == "mul") {
      std::vector<NodeId> args;
      for (const auto& a : j.at("args")) args.push_back(ref(a));
      if (args.size() < 2) throw DomainError(kind + " node needs two or more operands");
      id = kind == "add" ? dag.add(std::move(args)) : dag.mul(std::move(args));
    } else if (kind == "pow") {
      id = dag.pow(ref(j.at("args").at(0)), j.at("exp").get<std::uint64_t>());
    } else if (kind == "subst") {
      std::vector<std::pair<std::string, NodeId>> bindings;
      for (const auto& b : j.at("bindings")) bindings.emplace_back(b.at(0).get<std::string>(), ref(b.at(1)));
      id = dag.subst(ref(j.at("body")), std::move(bindings));
    } else {
      throw DomainError("unknown node kind '" + kind + "'");
    }
    ids.push_back(id);
  }
  return {std::move(dag), ref(doc.at("root"))};
}

}  // namespace dioph
